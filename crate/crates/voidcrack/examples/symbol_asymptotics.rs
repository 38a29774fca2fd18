//! The operator symbol L(s) and its large-s expansion. The symbol grows
//! linearly, L(s) = c0 s + c1/s + O(1/s^3); the linear remainder
//! L(s) - c0 s is evaluated through a cancellation-free identity, so it
//! stays accurate even where direct subtraction would lose every digit.

use voidcrack::symbol::{asymptote_c0, asymptote_c1, linear_remainder, symbol_l, SymbolSpec};

fn main() -> voidcrack::Result<()> {
    let spec = SymbolSpec::new(0.2, 0.5)?;
    let c0 = asymptote_c0(&spec);
    let c1 = asymptote_c1(&spec);

    println!("N = {}, c^2 = {}", spec.coupling, spec.c2);
    println!("c0 = {c0:.10}, c1 = {c1:.10}");
    println!();
    println!(
        "{:>10} {:>16} {:>16} {:>16} {:>12}",
        "s", "L(s)", "L - c0 s", "c1 / s", "naive rem"
    );
    for exp in 0..=8 {
        let s = 10f64.powi(exp);
        let l = symbol_l(&spec, s);
        let remainder = linear_remainder(&spec, s);
        // The naive subtraction dies around s ~ 1e8; the identity does not.
        let naive = l - c0 * s;
        println!(
            "{s:>10.0e} {l:>16.8e} {remainder:>16.8e} {:>16.8e} {naive:>12.4e}",
            c1 / s
        );
    }

    println!();
    println!("the remainder times s converges to c1:");
    for s in [1e2, 1e3, 1e4] {
        println!("  s = {s:>8.0e}: s * (L - c0 s) = {:.10}", s * linear_remainder(&spec, s));
    }
    Ok(())
}
