//! How void coupling changes the stress concentration: sweep the coupling
//! number N at fixed shear ratio and crack length. The concentration ratio
//! k/k0 starts at 1 in the classical limit and rises with N, so a porous
//! material amplifies the tip stress relative to classical elasticity.

use voidcrack::crack::{sweep, CrackProblem, SweepAxis};
use voidcrack::kernel::KernelConfig;
use voidcrack::symbol::SymbolSpec;

fn main() -> voidcrack::Result<()> {
    let spec = SymbolSpec::new(0.2, 0.0)?;
    let base = CrackProblem::new(spec, 1.0, 0.5)?;
    let cfg = KernelConfig::new(spec);
    let values: Vec<f64> = (0..=9).map(|i| i as f64 / 10.0).collect();

    let rows = sweep(&base, cfg, SweepAxis::Coupling, &values, 200)?;

    println!("porosity sweep: c^2 = {}, a = {}, n = 200", spec.c2, base.a);
    println!();
    println!("{:>5} {:>12} {:>12} {:>12} {:>12}", "N", "k", "k/k0", "route A", "route B");
    for row in &rows {
        println!(
            "{:>5.2} {:>12.6} {:>12.6} {:>12.6} {:>12.6}{}",
            row.value,
            row.k,
            row.ratio,
            row.route_a,
            row.route_b,
            if row.flagged { "  FLAGGED" } else { "" }
        );
    }

    let monotone = rows.windows(2).all(|p| p[1].ratio > p[0].ratio);
    println!();
    println!("ratio rises monotonically with N: {monotone}");
    Ok(())
}
