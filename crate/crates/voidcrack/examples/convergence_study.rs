//! Grid refinement on the classical case, where the center opening is known
//! in closed form. The midpoint collocation scheme converges with first
//! order in the panel count at the center; the observed order is estimated
//! from successive error ratios.

use voidcrack::crack::{crack_opening, CrackProblem};
use voidcrack::kernel::KernelConfig;
use voidcrack::symbol::SymbolSpec;

// Cubic interpolation through the four midpoints straddling t = 0. Plain
// averaging of the two inner values contributes its own O(h^2) term and the
// observed order creeps up to 1 from below instead of sitting on it.
fn center(g: &[f64]) -> f64 {
    let n = g.len();
    if n % 2 == 1 {
        g[n / 2]
    } else {
        (-g[n / 2 - 2] + 9.0 * (g[n / 2 - 1] + g[n / 2]) - g[n / 2 + 1]) / 16.0
    }
}

fn main() -> voidcrack::Result<()> {
    let spec = SymbolSpec::new(0.2, 0.0)?;
    let problem = CrackProblem::new(spec, 1.0, 0.5)?;
    let cfg = KernelConfig::new(spec);
    let exact = problem.load * problem.a / (1.0 - spec.c2);

    println!("classical center opening, exact value {exact}");
    println!();
    println!("{:>6} {:>16} {:>12} {:>8}", "n", "g(0)", "error", "order");
    let mut previous: Option<f64> = None;
    for n in [50, 100, 200, 400, 800] {
        let solution = crack_opening(&problem, cfg, n)?;
        let error = (center(&solution.solution.g) - exact).abs();
        let order = match previous {
            Some(p) => format!("{:.2}", (p / error).log2()),
            None => String::from("-"),
        };
        println!("{n:>6} {:>16.10} {error:>12.3e} {order:>8}", center(&solution.solution.g));
        previous = Some(error);
    }
    Ok(())
}
