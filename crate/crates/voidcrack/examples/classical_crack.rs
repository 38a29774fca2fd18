//! The classical limit: with coupling N = 0 the porous medium degenerates
//! to ordinary plane-strain elasticity, the regular kernel vanishes, and a
//! pressurized crack opens into the exact ellipse
//!
//!   g(t) = load / (1 - c^2) * sqrt(a^2 - t^2)
//!
//! with stress concentration factor k = a (ratio 1). This example solves the
//! classical case numerically and prints the error against the closed form.

use voidcrack::crack::{solve_scf, CrackProblem};
use voidcrack::kernel::KernelConfig;
use voidcrack::symbol::SymbolSpec;

fn main() -> voidcrack::Result<()> {
    let spec = SymbolSpec::new(0.2, 0.0)?;
    let problem = CrackProblem::new(spec, 1.0, 0.5)?;
    let cfg = KernelConfig::new(spec);
    let n = 400;

    let (solution, scf) = solve_scf(&problem, cfg, n)?;
    let grid = &solution.solution.grid;
    let amplitude = problem.load / (1.0 - spec.c2);

    println!("classical crack, a = {}, load = {}, n = {n}", problem.a, problem.load);
    println!("exact opening amplitude: {amplitude}");
    println!();
    println!("{:>8} {:>14} {:>14} {:>10}", "t", "computed", "exact", "rel err");
    let mut worst_mid = 0.0f64;
    for i in (0..n).step_by(n / 10) {
        let t = grid.collocation(i);
        let exact = amplitude * (problem.a * problem.a - t * t).sqrt();
        let got = solution.solution.g[i];
        let rel = ((got - exact) / exact).abs();
        if t.abs() <= 0.8 * problem.a {
            worst_mid = worst_mid.max(rel);
        }
        println!("{t:>8.3} {got:>14.8} {exact:>14.8} {rel:>10.2e}");
    }
    println!();
    println!(
        "concentration factor: k = {:.6}, k0 = {}, ratio = {:.6} (exact 1)",
        scf.k, scf.k0, scf.ratio
    );
    println!(
        "extraction routes: A = {:.6}, B = {:.6}, flagged = {}",
        scf.route_a, scf.route_b, scf.flagged
    );
    println!("worst mid-crack profile error: {worst_mid:.2e}");
    Ok(())
}
