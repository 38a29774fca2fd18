//! The kernel carries an intrinsic length, so unlike classical elasticity
//! the dimensionless concentration ratio depends on the crack size itself:
//! longer cracks sample more of the regular kernel and feel the coupling
//! more strongly. Classical elasticity has no such scale; there the ratio
//! would be exactly 1 for every a.

use voidcrack::crack::{sweep, CrackProblem, SweepAxis};
use voidcrack::kernel::KernelConfig;
use voidcrack::symbol::SymbolSpec;

fn main() -> voidcrack::Result<()> {
    let spec = SymbolSpec::new(0.2, 0.5)?;
    let base = CrackProblem::new(spec, 1.0, 0.5)?;
    let cfg = KernelConfig::new(spec);
    let lengths = [0.25, 0.5, 1.0, 2.0, 4.0, 8.0];

    let rows = sweep(&base, cfg, SweepAxis::HalfLength, &lengths, 200)?;

    println!("size effect: N = {}, c^2 = {}, n = 200", spec.coupling, spec.c2);
    println!();
    println!("{:>6} {:>12} {:>12}", "a", "k", "k/k0");
    for row in &rows {
        println!("{:>6.2} {:>12.6} {:>12.6}", row.value, row.k, row.ratio);
    }

    println!();
    println!(
        "ratio(a=4) / ratio(a=1) = {:.4}: the same material concentrates \
         stress more on the longer crack",
        rows[4].ratio / rows[2].ratio
    );
    Ok(())
}
