//! Fourier symbol of the crack-plane operator.
//!
//! The half-plane elimination of the void-elastic field equations leaves a
//! one-dimensional integral operator on the crack line whose Fourier symbol
//! is, for wavenumber `s >= 0`,
//!
//! ```text
//!   q(s) = sqrt(s^2 + 1 - N)
//!   L(s) = (s/q) [ 2 N c2 s^2 (q - s) + (1-N)(1-N-c2) q ]
//! ```
//!
//! For large `s` the symbol is asymptotically linear,
//! `L(s) = c0 s + c1/s + O(1/s^3)` with
//!
//! ```text
//!   c0 = (1-N)^2 (1-c2)
//!   c1 = -(3/4) N c2 (1-N)^2
//! ```
//!
//! `c0` produces the hypersingular `1/x^2` part of the physical-space
//! kernel; everything else is the regular remainder handled in
//! [`crate::kernel`]. The difference `q(s) - s` is always evaluated as
//! `(1-N)/(q+s)`, which is algebraically equal and immune to the
//! cancellation that kills the naive form once `s` is large (\> 1e8).

use crate::error::{Error, Result};

/// The two groups the symbol depends on. Any material with equal
/// `(c2, coupling)` has the identical symbol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolSpec {
    pub c2: f64,
    pub coupling: f64,
}

impl SymbolSpec {
    pub fn new(c2: f64, coupling: f64) -> Result<Self> {
        if !(c2.is_finite() && 0.0 < c2 && c2 < 1.0) {
            return Err(Error::ShearRatioOutOfRange(c2));
        }
        if !(coupling.is_finite() && (0.0..1.0).contains(&coupling)) {
            return Err(Error::CouplingOutOfRange(coupling));
        }
        Ok(SymbolSpec { c2, coupling })
    }
}

/// `q(s) = sqrt(s^2 + 1 - N)` for `s >= 0`.
pub fn q(spec: &SymbolSpec, s: f64) -> f64 {
    debug_assert!(s >= 0.0, "symbol is defined for s >= 0");
    (s * s + 1.0 - spec.coupling).sqrt()
}

/// Stable `q(s) - s`, exact at every scale.
fn q_minus_s(spec: &SymbolSpec, s: f64) -> f64 {
    (1.0 - spec.coupling) / (q(spec, s) + s)
}

/// The symbol `L(s)` for `s >= 0`.
pub fn symbol_l(spec: &SymbolSpec, s: f64) -> f64 {
    debug_assert!(s >= 0.0, "symbol is defined for s >= 0");
    let w = 1.0 - spec.coupling;
    let qs = q(spec, s);
    let bracket = 2.0 * spec.coupling * spec.c2 * s * s * q_minus_s(spec, s)
        + w * (w - spec.c2) * qs;
    s / qs * bracket
}

/// Slope of the linear asymptote: `c0 = (1-N)^2 (1-c2)`, always positive.
pub fn asymptote_c0(spec: &SymbolSpec) -> f64 {
    let w = 1.0 - spec.coupling;
    w * w * (1.0 - spec.c2)
}

/// Coefficient of the `1/s` correction: `c1 = -(3/4) N c2 (1-N)^2`.
pub fn asymptote_c1(spec: &SymbolSpec) -> f64 {
    let w = 1.0 - spec.coupling;
    -0.75 * spec.coupling * spec.c2 * w * w
}

/// `L(s) - c0 s` in a closed form with no cancellation:
///
/// ```text
///   L(s) - c0 s = -N c2 (1-N)^2 s (2s + q) / (q (q + s)^2)
/// ```
///
/// This is an algebraic identity (tested against the literal difference),
/// decays like `c1/s`, and stays accurate from `s = 0` to overflow scale.
pub fn linear_remainder(spec: &SymbolSpec, s: f64) -> f64 {
    debug_assert!(s >= 0.0, "symbol is defined for s >= 0");
    let w = 1.0 - spec.coupling;
    let qs = q(spec, s);
    let qps = qs + s;
    -spec.coupling * spec.c2 * w * w * s * (2.0 * s + qs) / (qs * qps * qps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn spec(c2: f64, n: f64) -> SymbolSpec {
        SymbolSpec::new(c2, n).unwrap()
    }

    #[test]
    fn q_examples() {
        assert_relative_eq!(q(&spec(0.2, 0.36), 0.0), 0.8, max_relative = 1e-15);
        assert_relative_eq!(q(&spec(0.2, 0.5), 2.0), 4.5f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(q(&spec(0.2, 0.0), 1.0), 2.0f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn symbol_zero_at_origin() {
        assert_eq!(symbol_l(&spec(0.2, 0.5), 0.0), 0.0);
    }

    #[test]
    fn symbol_exactly_linear_without_coupling() {
        let sp = spec(0.2, 0.0);
        assert_relative_eq!(symbol_l(&sp, 2.0), 1.6, max_relative = 1e-14);
        for s in [0.1, 1.0, 7.5, 1e3, 1e9] {
            assert_relative_eq!(symbol_l(&sp, s), 0.8 * s, max_relative = 1e-14);
        }
    }

    #[test]
    fn symbol_hand_value() {
        // q = sqrt(1.5); bracket = 0.2 (q-1) + 0.15 q.
        assert_relative_eq!(symbol_l(&spec(0.2, 0.5), 1.0), 0.186_700_8, max_relative = 1e-6);
    }

    #[test]
    fn asymptote_c0_examples() {
        assert_relative_eq!(asymptote_c0(&spec(0.2, 0.5)), 0.2, max_relative = 1e-15);
        assert_relative_eq!(asymptote_c0(&spec(0.2, 0.0)), 0.8, max_relative = 1e-15);
        assert_relative_eq!(asymptote_c0(&spec(0.5, 0.36)), 0.2048, max_relative = 1e-14);
    }

    #[test]
    fn asymptote_c1_examples() {
        assert_eq!(asymptote_c1(&spec(0.2, 0.0)), 0.0);
        assert_relative_eq!(asymptote_c1(&spec(0.2, 0.5)), -0.01875, max_relative = 1e-15);
    }

    /// Literal symbol evaluation, independent of the production code paths:
    /// naive sqrt difference, no rewriting. Accurate enough at moderate s.
    fn l_literal(c2: f64, n: f64, s: f64) -> f64 {
        let q = (s * s + 1.0 - n).sqrt();
        s / q * (2.0 * n * c2 * s * s * (q - s) + (1.0 - n) * (1.0 - n - c2) * q)
    }

    /// Numerical limit of `s (L(s) - c0 s)` by Richardson extrapolation in
    /// `1/s^2` from moderate wavenumbers where the literal form is stable.
    fn c1_numeric(c2: f64, n: f64) -> f64 {
        let c0 = (1.0 - n) * (1.0 - n) * (1.0 - c2);
        let d = |s: f64| s * (l_literal(c2, n, s) - c0 * s);
        let (t1, t2, t3) = (d(40.0), d(80.0), d(160.0));
        let r12 = (4.0 * t2 - t1) / 3.0;
        let r23 = (4.0 * t3 - t2) / 3.0;
        (16.0 * r23 - r12) / 15.0
    }

    #[test]
    fn asymptote_c1_matches_numerical_limit() {
        for n in [0.2, 0.5, 0.8] {
            for c2 in [0.1, 0.2, 0.5] {
                let sym = asymptote_c1(&spec(c2, n));
                let num = c1_numeric(c2, n);
                assert_relative_eq!(sym, num, max_relative = 1e-6);
            }
        }
    }

    #[test]
    fn example_limit_at_large_wavenumber() {
        // |s (L - c0 s) - c1| < 1e-6 at s = 1e4.
        let sp = spec(0.2, 0.5);
        let s = 1e4;
        let d = s * linear_remainder(&sp, s);
        assert!((d - asymptote_c1(&sp)).abs() < 1e-6, "d = {d}");
    }

    #[test]
    fn remainder_is_algebraically_consistent() {
        // L(s) = c0 s + remainder(s), checked where the direct difference
        // is numerically trustworthy.
        for n in [0.1, 0.4, 0.9] {
            for c2 in [0.05, 0.3, 0.7] {
                let sp = spec(c2, n);
                let c0 = asymptote_c0(&sp);
                for s in [0.01, 0.5, 1.0, 3.0, 10.0] {
                    let direct = symbol_l(&sp, s) - c0 * s;
                    let stable = linear_remainder(&sp, s);
                    assert_relative_eq!(direct, stable, max_relative = 1e-11, epsilon = 1e-15);
                }
            }
        }
    }

    #[test]
    fn remainder_stable_at_extreme_wavenumbers() {
        let sp = spec(0.2, 0.5);
        let c1 = asymptote_c1(&sp);
        for s in [1e8, 1e12, 1e100] {
            assert_relative_eq!(linear_remainder(&sp, s), c1 / s, max_relative = 1e-10);
        }
    }

    proptest! {
        #[test]
        fn q_bounds_and_monotone_gap(
            n in 0.0..0.99f64,
            s1 in 0.0..1e6f64,
            ds in 1e-6..1e6f64,
        ) {
            let sp = spec(0.3, n);
            let s2 = s1 + ds;
            prop_assert!(q(&sp, s1) >= s1);
            prop_assert!(q(&sp, s1) >= (1.0 - n).sqrt());
            // q - s decreases monotonically.
            prop_assert!(q_minus_s(&sp, s2) <= q_minus_s(&sp, s1));
        }

        #[test]
        fn asymptote_sandwich(
            n in 0.01..0.95f64,
            c2 in 0.05..0.9f64,
            s in 100.0..1e8f64,
        ) {
            let sp = spec(c2, n);
            let c0 = asymptote_c0(&sp);
            let c1 = asymptote_c1(&sp);
            // Rounding in symbol_l leaves a few-ulp residue of c0 that the
            // 1/s^2 bound cannot see at very large s.
            let dev = (symbol_l(&sp, s) / s - c0).abs();
            prop_assert!(dev <= 1.5 * c1.abs() / (s * s) + 64.0 * f64::EPSILON * c0);
        }

        #[test]
        fn symbol_positive_when_slope_positive(
            n in 0.01..0.9f64,
            s in 1e-3..1e3f64,
        ) {
            // With c2 < 1 - N both terms of the bracket are positive.
            let c2 = (1.0 - n) * 0.8;
            let sp = spec(c2, n);
            prop_assert!(symbol_l(&sp, s) > 0.0);
        }
    }
}
