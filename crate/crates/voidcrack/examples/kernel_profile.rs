//! Shape of the crack-plane kernel. The full kernel is the finite-part
//! 1/x^2 singularity scaled by the characteristic coefficient plus a
//! regular remainder; the remainder behaves like (c1/c0) ln|x| near the
//! origin, decays at large separations, and vanishes identically in the
//! classical limit N = 0.

use voidcrack::kernel::{characteristic_coefficient, KernelConfig, KernelEvaluator};
use voidcrack::symbol::SymbolSpec;

fn main() -> voidcrack::Result<()> {
    let spec = SymbolSpec::new(0.2, 0.5)?;
    let evaluator = KernelEvaluator::new(KernelConfig::new(spec))?;

    println!(
        "N = {}, c^2 = {}, characteristic coefficient = {:.8}",
        spec.coupling,
        spec.c2,
        evaluator.characteristic_coefficient()
    );
    println!();
    println!("{:>10} {:>16} {:>16}", "x", "regular", "full");
    for exp in -3..=1 {
        for mant in [1.0, 3.0] {
            let x = mant * 10f64.powi(exp);
            if x > 10.0 {
                continue;
            }
            println!(
                "{x:>10.4} {:>16.8e} {:>16.8e}",
                evaluator.regular(x)?,
                evaluator.full(x)?
            );
        }
    }

    // Near the origin the remainder is logarithmic with slope c1/c0.
    let (x0, x1) = (1e-3, 2e-3);
    let slope = (evaluator.regular(x1)? - evaluator.regular(x0)?) / (x1.ln() - x0.ln());
    println!();
    println!("log slope near origin: {slope:.6}");

    let classical = KernelEvaluator::new(KernelConfig::new(SymbolSpec::new(0.2, 0.0)?))?;
    println!(
        "classical check: N = 0 regular kernel at x = 0.5 is {:.3e} and the full kernel is {:.8} vs -c0/(pi x^2) = {:.8}",
        classical.regular(0.5)?,
        classical.full(0.5)?,
        characteristic_coefficient(&SymbolSpec::new(0.2, 0.0)?) / 0.25
    );
    Ok(())
}
