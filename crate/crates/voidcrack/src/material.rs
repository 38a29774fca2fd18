//! Material constants for a linear elastic solid with voids and the
//! dimensionless groups the solver runs on.
//!
//! A medium is described by the Lame constants `lambda`, `mu`, the void
//! constants `alpha`, `beta`, `xi`, and (optionally) the thermal constants
//! `b`, `m`. All field equations in this crate are written in the reduced
//! variables
//!
//! ```text
//!   c2 = mu / (lambda + 2 mu)        shear ratio, in (0, 1)
//!   h  = beta / (lambda + 2 mu)      void-stress ratio
//!   l1 = sqrt(alpha / beta)          void length (absent when beta = 0)
//!   l2 = sqrt(alpha / xi)            void length
//!   N  = (l2/l1)^2 h                 coupling number, in [0, 1)
//!   b  = b / (lambda + 2 mu)         thermal-stress ratio (optional)
//!   l3 = sqrt(alpha / m)             thermal length (optional)
//! ```
//!
//! `N` controls every kernel in this crate; `N = 0` reduces to classical
//! plane-strain elasticity.

use crate::error::{Error, Result};

/// Raw material constants. `b` and `m` are only needed for thermal runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialParams {
    pub lambda: f64,
    pub mu: f64,
    pub alpha: f64,
    pub beta: f64,
    pub xi: f64,
    pub b: Option<f64>,
    pub m: Option<f64>,
}

impl MaterialParams {
    pub fn new(lambda: f64, mu: f64, alpha: f64, beta: f64, xi: f64) -> Result<Self> {
        let p = MaterialParams { lambda, mu, alpha, beta, xi, b: None, m: None };
        p.validate()?;
        Ok(p)
    }

    pub fn with_thermal(mut self, b: f64, m: f64) -> Result<Self> {
        self.b = Some(b);
        self.m = Some(m);
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidMaterial(msg));
        if !self.mu.is_finite() || self.mu <= 0.0 {
            return bad(format!("mu = {} must be positive", self.mu));
        }
        if self.lambda + 2.0 * self.mu <= 0.0 {
            return bad(format!("lambda + 2 mu = {} must be positive", self.lambda + 2.0 * self.mu));
        }
        // lambda + mu > 0 is exactly c2 < 1.
        if self.lambda + self.mu <= 0.0 {
            return Err(Error::ShearRatioOutOfRange(
                self.mu / (self.lambda + 2.0 * self.mu),
            ));
        }
        if !self.alpha.is_finite() || self.alpha <= 0.0 {
            return bad(format!("alpha = {} must be positive", self.alpha));
        }
        if !self.beta.is_finite() || self.beta < 0.0 {
            return bad(format!("beta = {} must be non-negative", self.beta));
        }
        if !self.xi.is_finite() || self.xi <= 0.0 {
            return bad(format!("xi = {} must be positive", self.xi));
        }
        if let Some(m) = self.m {
            if !m.is_finite() || m <= 0.0 {
                return bad(format!("m = {m} must be positive"));
            }
        }
        if let Some(b) = self.b {
            if !b.is_finite() {
                return bad(format!("b = {b} must be finite"));
            }
        }
        Ok(())
    }
}

/// Dimensionless groups derived from [`MaterialParams`].
///
/// `l1` is `None` exactly when `beta = 0` (the void-coupling degenerate
/// case); `b` and `l3` are `None` unless thermal constants were supplied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessGroups {
    pub c2: f64,
    pub h: f64,
    pub l1: Option<f64>,
    pub l2: f64,
    pub coupling: f64,
    pub b: Option<f64>,
    pub l3: Option<f64>,
}

/// Derive the reduced constants, rejecting any material outside the
/// admissible region (`0 < c2 < 1`, `0 <= N < 1`).
pub fn derive_groups(params: &MaterialParams) -> Result<DimensionlessGroups> {
    params.validate()?;
    let pwave = params.lambda + 2.0 * params.mu;
    let c2 = params.mu / pwave;
    if !(0.0 < c2 && c2 < 1.0) {
        return Err(Error::ShearRatioOutOfRange(c2));
    }
    let h = params.beta / pwave;
    let l2 = (params.alpha / params.xi).sqrt();
    let (l1, coupling) = if params.beta > 0.0 {
        let l1 = (params.alpha / params.beta).sqrt();
        // N = (l2/l1)^2 h = beta^2 / (xi (lambda + 2 mu)).
        ((Some(l1)), (l2 / l1).powi(2) * h)
    } else {
        (None, 0.0)
    };
    if !(0.0..1.0).contains(&coupling) {
        return Err(Error::CouplingOutOfRange(coupling));
    }
    let b = params.b.map(|b| b / pwave);
    let l3 = params.m.map(|m| (params.alpha / m).sqrt());
    Ok(DimensionlessGroups { c2, h, l1, l2, coupling, b, l3 })
}

/// Pointwise kinematic state on the crack plane: displacement gradient,
/// volume-fraction change, and (optionally) temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneStrainState {
    /// `grad_u[i][j] = d u_i / d x_j`.
    pub grad_u: [[f64; 2]; 2],
    pub phi: f64,
    pub theta: Option<f64>,
}

/// Normalized plane-strain stresses `(sxx, syy, sxy)`.
///
/// Normal components are divided by `lambda + 2 mu`, the shear component
/// by `mu`:
///
/// ```text
///   sxx = ux,x + (1 - 2 c2) uy,y + h phi - b theta
///   syy = (1 - 2 c2) ux,x + uy,y + h phi - b theta
///   sxy = ux,y + uy,x
/// ```
pub fn stress_plane_strain(groups: &DimensionlessGroups, state: &PlaneStrainState) -> (f64, f64, f64) {
    let uxx = state.grad_u[0][0];
    let uxy = state.grad_u[0][1];
    let uyx = state.grad_u[1][0];
    let uyy = state.grad_u[1][1];
    let off = 1.0 - 2.0 * groups.c2;
    let mut iso = groups.h * state.phi;
    if let (Some(b), Some(theta)) = (groups.b, state.theta) {
        iso -= b * theta;
    }
    let sxx = uxx + off * uyy + iso;
    let syy = off * uxx + uyy + iso;
    let sxy = uxy + uyx;
    (sxx, syy, sxy)
}

/// Field values at a point, used by [`pde_residual`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub ux: f64,
    pub uy: f64,
    pub phi: f64,
    pub theta: Option<f64>,
}

/// Residuals of the reduced field equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdeResidual {
    /// x-momentum: `ux,xx + c2 ux,yy + (1-c2) uy,xy + h phi,x - b theta,x`.
    pub momentum_x: f64,
    /// y-momentum: `uy,yy + c2 uy,xx + (1-c2) ux,xy + h phi,y - b theta,y`.
    pub momentum_y: f64,
    /// Void balance: `l1^2 lap(phi) - (l1/l2)^2 phi - div u + (l1/l3)^2 theta`.
    pub void_balance: f64,
    /// Heat: `lap(theta)`; `None` when the field carries no temperature.
    pub heat: Option<f64>,
}

/// Default finite-difference step for [`pde_residual`].
pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// Check a smooth field against the homogeneous field equations using
/// central second-order differences with step `h`.
///
/// Requires `l1` (so `beta > 0`); the degenerate `beta = 0` system is not
/// expressible in the reduced variables.
pub fn pde_residual<F>(groups: &DimensionlessGroups, field: F, x: f64, y: f64, h: f64) -> Result<PdeResidual>
where
    F: Fn(f64, f64) -> FieldSample,
{
    let l1 = groups.l1.ok_or_else(|| {
        Error::InvalidMaterial("pde_residual needs l1 (material with beta > 0)".into())
    })?;
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidProblem(format!("fd step {h} must be positive")));
    }

    let c = field(x, y);
    let xp = field(x + h, y);
    let xm = field(x - h, y);
    let yp = field(x, y + h);
    let ym = field(x, y - h);
    let pp = field(x + h, y + h);
    let pm = field(x + h, y - h);
    let mp = field(x - h, y + h);
    let mm = field(x - h, y - h);

    let dx = |f: fn(&FieldSample) -> f64| (f(&xp) - f(&xm)) / (2.0 * h);
    let dy = |f: fn(&FieldSample) -> f64| (f(&yp) - f(&ym)) / (2.0 * h);
    let dxx = |f: fn(&FieldSample) -> f64| (f(&xp) - 2.0 * f(&c) + f(&xm)) / (h * h);
    let dyy = |f: fn(&FieldSample) -> f64| (f(&yp) - 2.0 * f(&c) + f(&ym)) / (h * h);
    let dxy = |f: fn(&FieldSample) -> f64| (f(&pp) - f(&pm) - f(&mp) + f(&mm)) / (4.0 * h * h);

    let ux = |s: &FieldSample| s.ux;
    let uy = |s: &FieldSample| s.uy;
    let phi = |s: &FieldSample| s.phi;
    let th = |s: &FieldSample| s.theta.unwrap_or(0.0);

    let c2 = groups.c2;
    let has_theta = c.theta.is_some();
    let b = if has_theta { groups.b.unwrap_or(0.0) } else { 0.0 };

    let momentum_x = dxx(ux) + c2 * dyy(ux) + (1.0 - c2) * dxy(uy) + groups.h * dx(phi) - b * dx(th);
    let momentum_y = dyy(uy) + c2 * dxx(uy) + (1.0 - c2) * dxy(ux) + groups.h * dy(phi) - b * dy(th);

    let l1_sq = l1 * l1;
    let mut void_balance = l1_sq * (dxx(phi) + dyy(phi))
        - (l1 / groups.l2).powi(2) * c.phi
        - (dx(ux) + dy(uy));
    if has_theta {
        if let Some(l3) = groups.l3 {
            void_balance += (l1 / l3).powi(2) * c.theta.unwrap();
        }
    }

    let heat = if has_theta { Some(dxx(th) + dyy(th)) } else { None };

    Ok(PdeResidual { momentum_x, momentum_y, void_balance, heat })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn groups(lambda: f64, mu: f64, alpha: f64, beta: f64, xi: f64) -> DimensionlessGroups {
        derive_groups(&MaterialParams::new(lambda, mu, alpha, beta, xi).unwrap()).unwrap()
    }

    #[test]
    fn derive_groups_hand_case() {
        let g = groups(3.0, 1.0, 2.0, 1.0, 0.5);
        assert_relative_eq!(g.c2, 0.2, max_relative = 1e-15);
        assert_relative_eq!(g.h, 0.2, max_relative = 1e-15);
        assert_relative_eq!(g.l1.unwrap().powi(2), 2.0, max_relative = 1e-15);
        assert_relative_eq!(g.l2.powi(2), 4.0, max_relative = 1e-15);
        assert_relative_eq!(g.coupling, 0.4, max_relative = 1e-14);
    }

    #[test]
    fn derive_groups_degenerate_beta_zero() {
        let g = groups(3.0, 1.0, 2.0, 0.0, 0.5);
        assert_eq!(g.coupling, 0.0);
        assert_eq!(g.h, 0.0);
        assert!(g.l1.is_none());
        assert!(g.l2 > 0.0);
    }

    #[test]
    fn derive_groups_rejects_strong_coupling() {
        let err = derive_groups(&MaterialParams::new(3.0, 1.0, 1.0, 3.0, 1.0).unwrap()).unwrap_err();
        match err {
            Error::CouplingOutOfRange(n) => assert_relative_eq!(n, 1.8, max_relative = 1e-14),
            other => panic!("expected coupling error, got {other}"),
        }
        assert!(err.to_string().contains("coupling number out of range"));
    }

    #[test]
    fn derive_groups_rejects_nonpositive_shear_ratio() {
        // lambda + mu <= 0 makes c2 >= 1.
        let err = MaterialParams::new(-1.5, 1.0, 1.0, 0.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::ShearRatioOutOfRange(_)));
    }

    #[test]
    fn coupling_two_routes_agree() {
        for (lambda, mu, alpha, beta, xi) in [
            (3.0, 1.0, 2.0, 1.0, 0.5),
            (1.0, 2.0, 0.7, 0.9, 0.4),
            (10.0, 3.0, 5.0, 2.0, 1.1),
        ] {
            let g = groups(lambda, mu, alpha, beta, xi);
            let direct = beta * beta / (xi * (lambda + 2.0 * mu));
            assert_relative_eq!(g.coupling, direct, max_relative = 1e-14);
        }
    }

    #[test]
    fn groups_scale_invariant() {
        let g1 = groups(3.0, 1.0, 2.0, 1.0, 0.5);
        for t in [0.25, 2.0, 17.5] {
            let g2 = groups(3.0 * t, t, 2.0 * t, t, 0.5 * t);
            assert_relative_eq!(g1.c2, g2.c2, max_relative = 1e-14);
            assert_relative_eq!(g1.h, g2.h, max_relative = 1e-14);
            assert_relative_eq!(g1.coupling, g2.coupling, max_relative = 1e-14);
            assert_relative_eq!(g1.l1.unwrap(), g2.l1.unwrap(), max_relative = 1e-14);
            assert_relative_eq!(g1.l2, g2.l2, max_relative = 1e-14);
        }
    }

    #[test]
    fn stress_uniaxial_extension_compression() {
        let g = groups(3.0, 1.0, 2.0, 1.0, 0.5); // c2 = 0.2
        let state = PlaneStrainState { grad_u: [[1.0, 0.0], [0.0, -1.0]], phi: 0.0, theta: None };
        let (sxx, syy, sxy) = stress_plane_strain(&g, &state);
        assert_relative_eq!(sxx, 0.4, max_relative = 1e-14);
        assert_relative_eq!(syy, -0.4, max_relative = 1e-14);
        assert_eq!(sxy, 0.0);
    }

    #[test]
    fn stress_pure_void_change_is_isotropic() {
        let g = groups(3.0, 1.0, 2.0, 1.0, 0.5); // h = 0.2
        let state = PlaneStrainState { grad_u: [[0.0; 2]; 2], phi: 2.0, theta: None };
        let (sxx, syy, sxy) = stress_plane_strain(&g, &state);
        assert_relative_eq!(sxx, 0.4, max_relative = 1e-14);
        assert_relative_eq!(syy, 0.4, max_relative = 1e-14);
        assert_eq!(sxy, 0.0);
    }

    #[test]
    fn stress_pure_shear() {
        let g = groups(3.0, 1.0, 2.0, 1.0, 0.5);
        let state = PlaneStrainState { grad_u: [[0.0, 1.0], [1.0, 0.0]], phi: 0.0, theta: None };
        let (sxx, syy, sxy) = stress_plane_strain(&g, &state);
        assert_eq!(sxx, 0.0);
        assert_eq!(syy, 0.0);
        assert_relative_eq!(sxy, 2.0, max_relative = 1e-14);
    }

    #[test]
    fn stress_theta_ignored_without_thermal_groups() {
        let g = groups(3.0, 1.0, 2.0, 1.0, 0.5);
        let with = PlaneStrainState { grad_u: [[0.0; 2]; 2], phi: 0.0, theta: Some(5.0) };
        let without = PlaneStrainState { theta: None, ..with };
        assert_eq!(stress_plane_strain(&g, &with), stress_plane_strain(&g, &without));
    }

    #[test]
    fn stress_theta_enters_normal_components() {
        let p = MaterialParams::new(3.0, 1.0, 2.0, 1.0, 0.5)
            .unwrap()
            .with_thermal(2.5, 1.0)
            .unwrap();
        let g = derive_groups(&p).unwrap();
        let state = PlaneStrainState { grad_u: [[0.0; 2]; 2], phi: 0.0, theta: Some(1.0) };
        let (sxx, syy, sxy) = stress_plane_strain(&g, &state);
        // b = 2.5 / 5 = 0.5
        assert_relative_eq!(sxx, -0.5, max_relative = 1e-14);
        assert_relative_eq!(syy, -0.5, max_relative = 1e-14);
        assert_eq!(sxy, 0.0);
    }

    #[test]
    fn residual_vanishes_for_homogeneous_stretch() {
        let g = groups(3.0, 1.0, 2.0, 1.0, 0.5);
        let field = |x: f64, y: f64| FieldSample { ux: x, uy: -y, phi: 0.0, theta: None };
        let r = pde_residual(&g, field, 0.5, 0.25, 1e-2).unwrap();
        assert!(r.momentum_x.abs() <= 1e-10, "r1 = {}", r.momentum_x);
        assert!(r.momentum_y.abs() <= 1e-10, "r2 = {}", r.momentum_y);
        assert!(r.void_balance.abs() <= 1e-10, "r3 = {}", r.void_balance);
        assert!(r.heat.is_none());
    }

    #[test]
    fn residual_constant_void_fraction() {
        let g = groups(3.0, 1.0, 2.0, 1.0, 0.5); // (l1/l2)^2 = 0.5
        let phi0 = 3.0;
        let field = move |_: f64, _: f64| FieldSample { ux: 0.0, uy: 0.0, phi: phi0, theta: None };
        let r = pde_residual(&g, field, 0.1, 0.2, DEFAULT_FD_STEP).unwrap();
        // Differences of constants are exact, so the residual is exact.
        assert_relative_eq!(r.void_balance, -0.5 * phi0, max_relative = 1e-14);
        assert_eq!(r.momentum_x, 0.0);
        assert_eq!(r.momentum_y, 0.0);
    }

    #[test]
    fn residual_harmonic_theta_forces_momentum() {
        let p = MaterialParams::new(3.0, 1.0, 2.0, 1.0, 0.5)
            .unwrap()
            .with_thermal(2.5, 1.0)
            .unwrap();
        let g = derive_groups(&p).unwrap();
        let b = g.b.unwrap();
        let field = |x: f64, y: f64| FieldSample { ux: 0.0, uy: 0.0, phi: 0.0, theta: Some(x * y) };
        let (x, y) = (0.5, 0.25);
        let r = pde_residual(&g, field, x, y, 1e-2).unwrap();
        assert!(r.heat.unwrap().abs() <= 1e-10, "r4 = {:?}", r.heat);
        assert_relative_eq!(r.momentum_x, -b * y, max_relative = 1e-9);
        assert_relative_eq!(r.momentum_y, -b * x, max_relative = 1e-9);
    }
}
