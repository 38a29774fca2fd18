//! Thermal loading: a prescribed heat flux on the crack faces induces a
//! temperature trace along the crack line, which enters the integral
//! equation as a position-dependent addition to the load. This example
//! shows the trace for a constant flux (closed form: the center-to-tip
//! drop is 2 ln 2 / pi), then solves a combined mechanical + thermal
//! problem and demonstrates superposition.

use std::f64::consts::PI;
use voidcrack::crack::{crack_opening, CrackProblem};
use voidcrack::kernel::KernelConfig;
use voidcrack::quad::QuadTol;
use voidcrack::symbol::SymbolSpec;
use voidcrack::thermo::{theta_trace, thermo_scf, thermo_solve, FluxProfile, ThermoCrackProblem};

fn main() -> voidcrack::Result<()> {
    let tol = QuadTol::new(1e-11, 1e-13);
    let flux = FluxProfile::constant(1.0, 1.0)?;

    println!("temperature trace for constant unit flux (relative to the center):");
    println!("{:>6} {:>14}", "x", "theta");
    for x in [0.0, 0.25, 0.5, 0.75, 1.0, 1.5] {
        println!("{x:>6.2} {:>14.8}", theta_trace(&flux, x, tol)?);
    }
    let drop = -theta_trace(&flux, 1.0, tol)?;
    println!(
        "center-to-tip drop: {drop:.8} vs 2 ln 2 / pi = {:.8}",
        2.0 * 2.0f64.ln() / PI
    );
    println!(
        "note: this flux has nonzero net heat input (balanced = {}), so the \
         trace is only defined up to a constant",
        flux.is_balanced()
    );

    // A combined problem: mechanical load plus a mild flux.
    let spec = SymbolSpec::new(0.2, 0.5)?;
    let cfg = KernelConfig::new(spec);
    let base = CrackProblem::new(spec, 1.0, 0.5)?;
    let mild = FluxProfile::constant(1.0, 0.2)?;
    let problem = ThermoCrackProblem::from_coupling(base, 0.4, mild.clone())?;
    let n = 200;

    let (solution, scf) = thermo_scf(&problem, cfg, n)?;
    println!();
    println!("combined solve: N = {}, c^2 = {}, B = 0.4, flux = 0.2", spec.coupling, spec.c2);
    println!(
        "k = {:.6}, ratio = {:.6}, routes A/B = {:.6}/{:.6}, flagged = {}",
        scf.k, scf.ratio, scf.route_a, scf.route_b, scf.flagged
    );

    // Superposition: the combined opening equals mechanical + thermal parts.
    let mechanical = crack_opening(&base, cfg, n)?;
    let thermal_only = thermo_solve(
        &ThermoCrackProblem::from_coupling(CrackProblem::new(spec, 1.0, 0.0)?, 0.4, mild)?,
        cfg,
        n,
    )?;
    let raw = |s: &voidcrack::crack::CrackSolution, j: usize| {
        if s.negated {
            -s.solution.g[j]
        } else {
            s.solution.g[j]
        }
    };
    let worst = (0..n)
        .map(|j| (raw(&solution, j) - raw(&mechanical, j) - raw(&thermal_only, j)).abs())
        .fold(0.0f64, f64::max);
    println!(
        "superposition defect max |combined - (mechanical + thermal)| = {worst:.2e}"
    );
    Ok(())
}
