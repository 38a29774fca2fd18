//! Thermoelastic extension: a prescribed heat flux on the crack faces sets
//! up a temperature field whose trace on the crack line enters the integral
//! equation as an extra, position-dependent load. The kernel itself is
//! unchanged; only the right-hand side moves.
//!
//! The crack-line trace of the temperature is the log convolution
//!
//! ```text
//!   theta(x, 0) = -(1/pi) INT_{-a}^{a} f0(xi) ln|x - xi| d xi + C
//! ```
//!
//! with the additive constant fixed by the convention `theta(0, 0) = 0`.
//! When the net flux over the crack is nonzero the temperature grows
//! logarithmically at infinity and only trace differences carry meaning;
//! [`FluxProfile::is_balanced`] lets callers detect that situation.

use crate::crack::{self, CrackProblem, CrackSolution, ScfResult};
use crate::error::{Error, Result};
use crate::hsie::{self, HsieProblem};
use crate::kernel::{KernelConfig, KernelEvaluator};
use crate::material::DimensionlessGroups;
use crate::quad::{fixed_gk15, integrate_with_breaks, QuadTol};
use std::f64::consts::PI;

/// Normal heat flux prescribed on the crack faces, supported on `[-a, a]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FluxProfile {
    a: f64,
    kind: FluxKind,
}

#[derive(Debug, Clone, PartialEq)]
enum FluxKind {
    Constant(f64),
    /// Knots strictly increasing in position; values are held constant
    /// beyond the first and last knot.
    PiecewiseLinear(Vec<(f64, f64)>),
}

impl FluxProfile {
    pub fn constant(a: f64, value: f64) -> Result<Self> {
        Self::check_half_length(a)?;
        if !value.is_finite() {
            return Err(Error::InvalidProblem(format!("flux value must be finite, got {value}")));
        }
        Ok(FluxProfile { a, kind: FluxKind::Constant(value) })
    }

    pub fn piecewise_linear(a: f64, points: Vec<(f64, f64)>) -> Result<Self> {
        Self::check_half_length(a)?;
        if points.len() < 2 {
            return Err(Error::InvalidProblem(format!(
                "piecewise flux needs at least 2 knots, got {}",
                points.len()
            )));
        }
        for &(xi, v) in &points {
            if !(xi.is_finite() && v.is_finite()) {
                return Err(Error::InvalidProblem(format!("flux knot ({xi}, {v}) must be finite")));
            }
        }
        for pair in points.windows(2) {
            if !(pair[0].0 < pair[1].0) {
                return Err(Error::InvalidProblem(format!(
                    "flux knots must be strictly increasing, got {} then {}",
                    pair[0].0, pair[1].0
                )));
            }
        }
        Ok(FluxProfile { a, kind: FluxKind::PiecewiseLinear(points) })
    }

    fn check_half_length(a: f64) -> Result<()> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidProblem(format!(
                "flux half-length must be positive, got {a}"
            )));
        }
        Ok(())
    }

    pub fn half_length(&self) -> f64 {
        self.a
    }

    /// Flux at `xi`. Zero outside the crack; clamped to the end knots inside.
    pub fn eval(&self, xi: f64) -> f64 {
        if xi.abs() > self.a {
            return 0.0;
        }
        match &self.kind {
            FluxKind::Constant(v) => *v,
            FluxKind::PiecewiseLinear(pts) => {
                if xi <= pts[0].0 {
                    return pts[0].1;
                }
                if xi >= pts[pts.len() - 1].0 {
                    return pts[pts.len() - 1].1;
                }
                let i = pts.partition_point(|p| p.0 <= xi) - 1;
                let (x0, v0) = pts[i];
                let (x1, v1) = pts[i + 1];
                v0 + (v1 - v0) * (xi - x0) / (x1 - x0)
            }
        }
    }

    /// Interior knots, used as quadrature break points.
    fn breaks(&self) -> Vec<f64> {
        match &self.kind {
            FluxKind::Constant(_) => Vec::new(),
            FluxKind::PiecewiseLinear(pts) => {
                pts.iter().map(|p| p.0).filter(|&x| -self.a < x && x < self.a).collect()
            }
        }
    }

    /// Trapezoid sum of `map(flux)` over the knot segments. Exact for the
    /// identity map since the profile is linear between breaks.
    fn segment_sum(&self, map: impl Fn(f64) -> f64) -> f64 {
        let mut xs = vec![-self.a];
        xs.extend(self.breaks());
        xs.push(self.a);
        xs.windows(2)
            .map(|w| 0.5 * (map(self.eval(w[0])) + map(self.eval(w[1]))) * (w[1] - w[0]))
            .sum()
    }

    /// Net flux over the crack.
    pub fn total(&self) -> f64 {
        self.segment_sum(|v| v)
    }

    /// Whether the net flux vanishes relative to the flux magnitude. An
    /// unbalanced flux leaves the far-field temperature logarithmic, so the
    /// trace is meaningful only up to the chosen additive constant.
    pub fn is_balanced(&self) -> bool {
        self.total().abs() <= 1e-12 * self.segment_sum(f64::abs).max(f64::MIN_POSITIVE)
    }
}

/// Quadrature controls for the trace integrals.
fn trace_tol() -> QuadTol {
    QuadTol::new(1e-11, 1e-13)
}

fn log_convolution(flux: &FluxProfile, x: f64, tol: QuadTol) -> Result<f64> {
    let a = flux.half_length();
    let mut breaks = flux.breaks();
    if x.abs() < a {
        breaks.push(x);
    }
    let v = integrate_with_breaks(
        |xi| {
            let d = (x - xi).abs();
            // The log point carries zero measure; the adaptive rule handles
            // the integrable blow-up on either side of the break.
            if d == 0.0 {
                0.0
            } else {
                flux.eval(xi) * d.ln()
            }
        },
        -a,
        a,
        &breaks,
        tol,
    )?;
    Ok(-v / PI)
}

/// Temperature trace `theta(x, 0) - theta(0, 0)` on the crack line.
/// Trace differences are independent of the normalization convention.
pub fn theta_trace(flux: &FluxProfile, x: f64, tol: QuadTol) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::InvalidProblem(format!("trace point must be finite, got {x}")));
    }
    Ok(log_convolution(flux, x, tol)? - log_convolution(flux, 0.0, tol)?)
}

/// Off-line temperature reconstruction
///
/// ```text
///   theta(x, y) = -(1/2 pi) INT f0(xi) ln((x - xi)^2 + y^2) d xi
/// ```
///
/// by a fixed composite rule. A fixed node set makes the reconstruction a
/// finite weighted sum of point-source logs, each harmonic off the crack
/// line, so the field satisfies the heat equation to roundoff regardless of
/// quadrature accuracy. Values within a panel width of the crack line are
/// inaccurate; on the line itself use [`theta_trace`]. Unnormalized: differs
/// from the trace convention by the constant `theta(0, 0)`.
pub fn theta_field(flux: &FluxProfile, x: f64, y: f64) -> Result<f64> {
    if !(x.is_finite() && y.is_finite()) || y == 0.0 {
        return Err(Error::InvalidProblem(format!(
            "field reconstruction needs finite (x, y) with y != 0, got ({x}, {y})"
        )));
    }
    let a = flux.half_length();
    let mut edges = vec![-a];
    edges.extend(flux.breaks());
    edges.push(a);
    let mut total = 0.0;
    for pair in edges.windows(2) {
        total += fixed_gk15(
            |xi| flux.eval(xi) * ((x - xi) * (x - xi) + y * y).ln(),
            pair[0],
            pair[1],
            16,
        );
    }
    Ok(-total / (2.0 * PI))
}

/// Crack under combined mechanical load and crack-face heat flux.
#[derive(Debug, Clone)]
pub struct ThermoCrackProblem {
    pub base: CrackProblem,
    pub groups: DimensionlessGroups,
    pub flux: FluxProfile,
}

impl ThermoCrackProblem {
    /// The groups must carry the thermal coupling `B` (a thermal material)
    /// and agree with the base problem's symbol parameters, and the flux
    /// must live on the same crack.
    pub fn new(
        base: CrackProblem,
        groups: DimensionlessGroups,
        flux: FluxProfile,
    ) -> Result<Self> {
        let b = groups.b.ok_or_else(|| {
            Error::InvalidProblem(
                "thermoelastic problems need the thermal coupling group B".into(),
            )
        })?;
        if !(b.is_finite() && b >= 0.0) {
            return Err(Error::InvalidProblem(format!(
                "thermal coupling B must be finite and non-negative, got {b}"
            )));
        }
        if groups.c2 != base.spec.c2 || groups.coupling != base.spec.coupling {
            return Err(Error::InvalidProblem(
                "material groups disagree with the crack problem's symbol parameters".into(),
            ));
        }
        if flux.half_length() != base.a {
            return Err(Error::InvalidProblem(format!(
                "flux half-length {} differs from the crack half-length {}",
                flux.half_length(),
                base.a
            )));
        }
        Ok(ThermoCrackProblem { base, groups, flux })
    }

    /// Construction from the coupling group alone, for callers that never
    /// had raw material constants. The remaining groups are filled with
    /// placeholders; nothing in the trace pipeline reads them.
    pub fn from_coupling(base: CrackProblem, b: f64, flux: FluxProfile) -> Result<Self> {
        let groups = DimensionlessGroups {
            c2: base.spec.c2,
            h: 0.0,
            l1: None,
            l2: 1.0,
            coupling: base.spec.coupling,
            b: Some(b),
            l3: None,
        };
        Self::new(base, groups, flux)
    }

    /// Thermal contribution to the load at `x`: `B theta(x, 0) / (2 c2)`,
    /// in the same `sigma0 / (2 mu)` units as the mechanical load. Exactly
    /// zero when `B = 0`, so the purely elastic problem is recovered bit for
    /// bit rather than up to quadrature error.
    pub fn thermal_load(&self, x: f64) -> Result<f64> {
        let b = self.groups.b.expect("constructor checked");
        if b == 0.0 {
            return Ok(0.0);
        }
        let theta = theta_trace(&self.flux, x, trace_tol())?;
        Ok(b * theta / (2.0 * self.base.spec.c2))
    }

    /// Full right-hand side of the normalized integral equation at `x`.
    pub fn rhs_at(&self, x: f64) -> Result<f64> {
        Ok(PI * (self.base.load + self.thermal_load(x)?) / (1.0 - self.base.spec.c2))
    }
}

/// Assembled integral equation with the temperature trace folded into the
/// right-hand side. The kernel is the elastic one. A failed trace quadrature
/// poisons its sample with NaN, which the solver's residual check rejects.
pub fn thermo_rhs(
    problem: &ThermoCrackProblem,
    cfg: KernelConfig,
) -> Result<HsieProblem<KernelEvaluator, impl Fn(f64) -> f64 + Sync + '_>> {
    let kernel = crack::evaluator_for(&problem.base, cfg)?;
    HsieProblem::new(problem.base.a, kernel, move |x: f64| {
        problem.rhs_at(x).unwrap_or(f64::NAN)
    })
}

pub fn thermo_solve(
    problem: &ThermoCrackProblem,
    cfg: KernelConfig,
    n: usize,
) -> Result<CrackSolution> {
    if n < 50 {
        return Err(Error::InvalidProblem(format!("crack solves need n >= 50, got {n}")));
    }
    let assembled = thermo_rhs(problem, cfg)?;
    let mut solution = hsie::solve(&assembled, n)?;
    let negated = crack::flip_to_opening(&mut solution.g);
    Ok(CrackSolution { solution, negated })
}

/// Concentration factor for the combined problem, normalized by the
/// mechanical load like the elastic one. Requires a positive mechanical
/// load and a combined load that still opens the crack; contact on closing
/// crack faces is not modeled.
pub fn thermo_scf(
    problem: &ThermoCrackProblem,
    cfg: KernelConfig,
    n: usize,
) -> Result<(CrackSolution, ScfResult)> {
    let solution = thermo_solve(problem, cfg, n)?;
    let result = crack::scf_with_companion(&solution, &problem.base, cfg, |m| {
        thermo_solve(problem, cfg, m)
    })?;
    Ok((solution, result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::material::{derive_groups, pde_residual, FieldSample, MaterialParams};
    use crate::symbol::SymbolSpec;
    use approx::assert_relative_eq;

    fn groups_for(spec: SymbolSpec, b: f64) -> DimensionlessGroups {
        DimensionlessGroups {
            c2: spec.c2,
            h: 0.5,
            l1: Some(1.0),
            l2: 1.0,
            coupling: spec.coupling,
            b: Some(b),
            l3: Some(1.0),
        }
    }

    fn unit_flux(a: f64) -> FluxProfile {
        FluxProfile::constant(a, 1.0).unwrap()
    }

    #[test]
    fn flux_profile_eval_total_and_validation() {
        let c = FluxProfile::constant(2.0, 3.0).unwrap();
        assert_eq!(c.eval(1.5), 3.0);
        assert_eq!(c.eval(2.5), 0.0);
        assert_relative_eq!(c.total(), 12.0, max_relative = 1e-15);
        assert!(!c.is_balanced());
        assert!(FluxProfile::constant(2.0, 0.0).unwrap().is_balanced());

        let p =
            FluxProfile::piecewise_linear(1.0, vec![(-0.5, 1.0), (0.5, 2.0)]).unwrap();
        assert_relative_eq!(p.eval(0.0), 1.5, max_relative = 1e-15);
        // Held constant beyond the end knots, zero beyond the crack.
        assert_eq!(p.eval(0.9), 2.0);
        assert_eq!(p.eval(-0.9), 1.0);
        assert_eq!(p.eval(1.1), 0.0);
        assert_relative_eq!(p.total(), 0.5 + 1.5 + 1.0, max_relative = 1e-15);

        let odd = FluxProfile::piecewise_linear(1.0, vec![(-1.0, -1.0), (1.0, 1.0)]).unwrap();
        assert_eq!(odd.total(), 0.0);
        assert!(odd.is_balanced());

        assert!(FluxProfile::constant(-1.0, 1.0).is_err());
        assert!(FluxProfile::constant(1.0, f64::NAN).is_err());
        assert!(FluxProfile::piecewise_linear(1.0, vec![(0.0, 1.0)]).is_err());
        assert!(FluxProfile::piecewise_linear(1.0, vec![(0.5, 1.0), (0.5, 2.0)]).is_err());
        assert!(FluxProfile::piecewise_linear(1.0, vec![(0.5, 1.0), (0.1, 2.0)]).is_err());
    }

    #[test]
    fn zero_flux_trace_is_exactly_zero() {
        let flux = FluxProfile::constant(1.0, 0.0).unwrap();
        for x in [0.0, 0.3, 0.99, 1.7] {
            assert_eq!(theta_trace(&flux, x, trace_tol()).unwrap(), 0.0);
        }
    }

    // Constant unit flux on a unit crack: the trace difference between the
    // center and the tip is 2 ln 2 / pi. From the closed-form antiderivative
    // u ln u - u of the log kernel.
    #[test]
    fn constant_flux_center_to_tip_drop() {
        let flux = unit_flux(1.0);
        let drop = -theta_trace(&flux, 1.0, trace_tol()).unwrap();
        assert_relative_eq!(drop, 2.0 * 2.0f64.ln() / PI, epsilon = 1e-9);
        // The convention pins the center value itself.
        assert_eq!(theta_trace(&flux, 0.0, trace_tol()).unwrap(), 0.0);
    }

    // Same closed form at points off the special cases: for unit flux
    // theta*(x) = -(L(x+1) - L(x-1))/pi with L(u) = u ln|u| - u.
    #[test]
    fn constant_flux_trace_matches_closed_form() {
        let flux = unit_flux(1.0);
        let antiderivative = |u: f64| if u == 0.0 { 0.0 } else { u * u.abs().ln() - u };
        let exact = |x: f64| {
            let star = -(antiderivative(x + 1.0) - antiderivative(x - 1.0)) / PI;
            let star0 = -(antiderivative(1.0) - antiderivative(-1.0)) / PI;
            star - star0
        };
        for x in [0.25, 0.5, 0.8, 1.5, 3.0] {
            let got = theta_trace(&flux, x, trace_tol()).unwrap();
            assert_relative_eq!(got, exact(x), epsilon = 1e-10);
        }
    }

    #[test]
    fn odd_flux_gives_odd_trace() {
        let flux =
            FluxProfile::piecewise_linear(1.0, vec![(-1.0, -1.0), (1.0, 1.0)]).unwrap();
        assert_eq!(theta_trace(&flux, 0.0, trace_tol()).unwrap(), 0.0);
        for x in [0.2, 0.37, 0.9, 1.4] {
            let plus = theta_trace(&flux, x, trace_tol()).unwrap();
            let minus = theta_trace(&flux, -x, trace_tol()).unwrap();
            assert_relative_eq!(plus, -minus, epsilon = 1e-10);
        }
    }

    #[test]
    fn trace_is_tolerance_stable() {
        let flux = unit_flux(1.0);
        let tight = QuadTol::new(0.5e-11, 0.5e-13);
        for x in [0.6, 1.7] {
            let base = theta_trace(&flux, x, trace_tol()).unwrap();
            let refined = theta_trace(&flux, x, tight).unwrap();
            assert!((base - refined).abs() < 1e-8, "trace drifted {}", base - refined);
        }
    }

    // The fixed-rule reconstruction is a finite sum of point-source logs, so
    // its finite-difference Laplacian vanishes to the stencil's truncation
    // error at any standoff from the crack line.
    #[test]
    fn reconstructed_field_is_harmonic() {
        let material = MaterialParams::new(3.0, 1.0, 2.0, 1.0, 0.5)
            .unwrap()
            .with_thermal(2.5, 1.0)
            .unwrap();
        let groups = derive_groups(&material).unwrap();
        let flux =
            FluxProfile::piecewise_linear(1.0, vec![(-1.0, 0.5), (0.2, 1.5), (1.0, -0.3)])
                .unwrap();
        let field = |x: f64, y: f64| FieldSample {
            ux: 0.0,
            uy: 0.0,
            phi: 0.0,
            theta: Some(theta_field(&flux, x, y).unwrap()),
        };
        for (x, y) in [(0.3, 0.7), (-0.6, -0.9), (1.4, 0.5)] {
            let r = pde_residual(&groups, field, x, y, 1e-4).unwrap();
            let heat = r.heat.expect("field carries a temperature");
            assert!(heat.abs() < 1e-6, "heat residual {heat} at ({x}, {y})");
        }
        assert!(theta_field(&flux, 0.3, 0.0).is_err());
    }

    #[test]
    fn problem_validation() {
        let spec = SymbolSpec::new(0.2, 0.5).unwrap();
        let base = CrackProblem::new(spec, 1.0, 0.5).unwrap();
        let flux = unit_flux(1.0);

        let mut no_b = groups_for(spec, 0.3);
        no_b.b = None;
        assert!(ThermoCrackProblem::new(base, no_b, flux.clone()).is_err());

        let mut wrong = groups_for(spec, 0.3);
        wrong.coupling = 0.4;
        assert!(ThermoCrackProblem::new(base, wrong, flux.clone()).is_err());

        assert!(ThermoCrackProblem::new(base, groups_for(spec, 0.3), unit_flux(2.0)).is_err());
        assert!(ThermoCrackProblem::new(base, groups_for(spec, -1.0), flux.clone()).is_err());
        assert!(ThermoCrackProblem::new(base, groups_for(spec, 0.3), flux).is_ok());
    }

    // With B = 0 the thermal term is the float zero, not a small number, so
    // the right-hand side matches the elastic constant bit for bit. Same for
    // a zero flux with any B.
    #[test]
    fn decoupled_rhs_is_bitwise_elastic() {
        let spec = SymbolSpec::new(0.2, 0.5).unwrap();
        let base = CrackProblem::new(spec, 1.0, 0.5).unwrap();
        let elastic = base.rhs_constant();

        let no_b = ThermoCrackProblem::new(base, groups_for(spec, 0.0), unit_flux(1.0)).unwrap();
        let no_flux = ThermoCrackProblem::new(
            base,
            groups_for(spec, 0.3),
            FluxProfile::constant(1.0, 0.0).unwrap(),
        )
        .unwrap();
        for x in [-0.9, -0.25, 0.0, 0.6, 0.83] {
            assert_eq!(no_b.rhs_at(x).unwrap().to_bits(), elastic.to_bits());
            assert_eq!(no_flux.rhs_at(x).unwrap().to_bits(), elastic.to_bits());
        }
    }

    // Recomposition against the closed-form trace: the rhs excess over the
    // elastic constant must equal pi/(1 - c2) times the thermal load.
    #[test]
    fn rhs_excess_recomposes_the_trace() {
        let spec = SymbolSpec::new(0.2, 0.5).unwrap();
        let base = CrackProblem::new(spec, 0.5, 0.5).unwrap();
        let b = 0.7;
        let problem =
            ThermoCrackProblem::new(base, groups_for(spec, b), unit_flux(0.5)).unwrap();
        let antiderivative = |u: f64| if u == 0.0 { 0.0 } else { u * u.abs().ln() - u };
        for x in [0.1, 0.3, 0.45] {
            let excess = problem.rhs_at(x).unwrap() - base.rhs_constant();
            let star = -(antiderivative(x + 0.5) - antiderivative(x - 0.5)) / PI;
            let star0 = -(antiderivative(0.5) - antiderivative(-0.5)) / PI;
            let expected = PI * (b * (star - star0) / (2.0 * spec.c2)) / (1.0 - spec.c2);
            assert_relative_eq!(excess, expected, epsilon = 1e-10);
        }
    }

    #[test]
    fn even_flux_gives_even_rhs() {
        let spec = SymbolSpec::new(0.2, 0.5).unwrap();
        let base = CrackProblem::new(spec, 1.0, 0.5).unwrap();
        let problem =
            ThermoCrackProblem::new(base, groups_for(spec, 0.3), unit_flux(1.0)).unwrap();
        for x in [0.2, 0.55, 0.9] {
            let plus = problem.rhs_at(x).unwrap();
            let minus = problem.rhs_at(-x).unwrap();
            assert_relative_eq!(plus, minus, epsilon = 1e-10);
        }
    }

    // The discrete operator is linear, so the combined solve must match the
    // sum of the purely mechanical and purely thermal solves panel by panel.
    // Raw solver signs are compared to stay clear of the opening flip.
    #[test]
    fn solutions_superpose() {
        let spec = SymbolSpec::new(0.2, 0.5).unwrap();
        let cfg = KernelConfig::new(spec);
        let groups = groups_for(spec, 0.4);
        let flux = unit_flux(1.0);
        let n = 64;

        let combined = thermo_solve(
            &ThermoCrackProblem::new(
                CrackProblem::new(spec, 1.0, 0.5).unwrap(),
                groups.clone(),
                flux.clone(),
            )
            .unwrap(),
            cfg,
            n,
        )
        .unwrap();
        let mechanical = crack::crack_opening(
            &CrackProblem::new(spec, 1.0, 0.5).unwrap(),
            cfg,
            n,
        )
        .unwrap();
        let thermal = thermo_solve(
            &ThermoCrackProblem::new(
                CrackProblem::new(spec, 1.0, 0.0).unwrap(),
                groups,
                flux,
            )
            .unwrap(),
            cfg,
            n,
        )
        .unwrap();

        let raw = |s: &CrackSolution, j: usize| {
            if s.negated {
                -s.solution.g[j]
            } else {
                s.solution.g[j]
            }
        };
        let scale = combined
            .solution
            .g
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()));
        for j in 0..n {
            let sum = raw(&mechanical, j) + raw(&thermal, j);
            assert!(
                (raw(&combined, j) - sum).abs() <= 1e-9 * scale,
                "panel {j}: {} vs {}",
                raw(&combined, j),
                sum
            );
        }
    }

    #[test]
    fn assembled_kernel_is_the_elastic_one() {
        use crate::hsie::RegularKernel;
        let spec = SymbolSpec::new(0.2, 0.5).unwrap();
        let cfg = KernelConfig::new(spec);
        let problem = ThermoCrackProblem::new(
            CrackProblem::new(spec, 1.0, 0.5).unwrap(),
            groups_for(spec, 0.3),
            unit_flux(1.0),
        )
        .unwrap();
        let assembled = thermo_rhs(&problem, cfg).unwrap();
        let elastic = KernelEvaluator::new(cfg).unwrap();
        for x in [0.3, 1.1] {
            assert_eq!(
                assembled.regular_kernel.value(x).unwrap().to_bits(),
                elastic.regular(x).unwrap().to_bits()
            );
        }
    }

    // B = 0 reproduces the elastic concentration factor exactly: identical
    // rhs bits feed identical linear algebra on both grids.
    #[test]
    fn decoupled_scf_equals_elastic() {
        let spec = SymbolSpec::new(0.2, 0.5).unwrap();
        let cfg = KernelConfig::new(spec);
        let base = CrackProblem::new(spec, 1.0, 0.5).unwrap();
        let problem =
            ThermoCrackProblem::new(base, groups_for(spec, 0.0), unit_flux(1.0)).unwrap();

        let (_, thermo) = thermo_scf(&problem, cfg, 100).unwrap();
        let (_, elastic) = crack::solve_scf(&base, cfg, 100).unwrap();
        assert_eq!(thermo.k.to_bits(), elastic.k.to_bits());
        assert_eq!(thermo.ratio.to_bits(), elastic.ratio.to_bits());
        assert_eq!(thermo.route_a.to_bits(), elastic.route_a.to_bits());
        assert_eq!(thermo.flagged, elastic.flagged);
    }

    // A vanishing flux perturbs the concentration ratio continuously.
    #[test]
    fn small_flux_barely_moves_the_ratio() {
        let spec = SymbolSpec::new(0.2, 0.5).unwrap();
        let cfg = KernelConfig::new(spec);
        let base = CrackProblem::new(spec, 1.0, 0.5).unwrap();
        let (_, elastic) = crack::solve_scf(&base, cfg, 100).unwrap();

        let problem = ThermoCrackProblem::new(
            base,
            groups_for(spec, 1.0),
            FluxProfile::constant(1.0, 1e-3).unwrap(),
        )
        .unwrap();
        let (_, perturbed) = thermo_scf(&problem, cfg, 100).unwrap();
        assert!(
            (perturbed.ratio - elastic.ratio).abs() < 1e-2,
            "ratio moved from {} to {}",
            elastic.ratio,
            perturbed.ratio
        );
        assert!(!perturbed.flagged);
    }
}
