//! Solvers for the normalized hypersingular crack equation
//!
//! ```text
//!   fp I[g](x) = f(x),   I[g](x) = INT_{-a}^{a} [ 1/(x-t)^2 + K(x-t) ] g(t) dt,
//! ```
//!
//! on `|x| < a`, where `fp` is the Hadamard finite part and `K` is an even,
//! at worst logarithmically singular remainder. Two independent
//! discretizations are provided. Midpoint collocation on a uniform grid
//! integrates the characteristic `1/(x-t)^2` exactly on every panel, so only
//! the remainder needs quadrature. A Chebyshev solver expands
//! `g = sqrt(a^2-t^2) * sum c_k U_k(t/a)`, for which the characteristic
//! operator has the closed form `-pi (k+1) U_k(x/a)`. The two schemes share
//! no discretization machinery; their agreement is the main internal
//! accuracy oracle.

use crate::error::{Error, Result};
use crate::quad::{integrate_with_breaks, integrate_vec, QuadTol};
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI};

/// Uniform panel grid on `[-a, a]` with midpoint collocation. Collocation
/// points never coincide with panel edges, so every characteristic panel
/// integral is finite in closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    a: f64,
    n: usize,
    h: f64,
}

impl Grid {
    pub fn new(a: f64, n: usize) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "half-length must be positive and finite, got {a}"
            )));
        }
        if n < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 panels, got {n}")));
        }
        Ok(Grid { a, n, h: 2.0 * a / n as f64 })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Uniform panel width `2a/n`.
    pub fn h(&self) -> f64 {
        self.h
    }

    /// Panel edge `j = 0..=n`; the first and last edges are exactly `-a`, `a`.
    pub fn node(&self, j: usize) -> f64 {
        debug_assert!(j <= self.n);
        self.a * (2.0 * j as f64 / self.n as f64 - 1.0)
    }

    /// Midpoint of panel `i = 0..n-1`.
    pub fn collocation(&self, i: usize) -> f64 {
        debug_assert!(i < self.n);
        self.a * ((2.0 * i as f64 + 1.0) / self.n as f64 - 1.0)
    }
}

/// Even regular remainder of a separation kernel. `value` may blow up
/// logarithmically at zero separation; `integral` must absorb that
/// singularity internally (it is integrable).
pub trait RegularKernel: Sync {
    fn value(&self, u: f64) -> Result<f64>;

    /// Integral of the kernel over the separation interval `[lo, hi]`,
    /// which may straddle zero.
    fn integral(&self, lo: f64, hi: f64) -> Result<f64>;
}

/// The classical continuum: no regular remainder at all.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroKernel;

impl RegularKernel for ZeroKernel {
    fn value(&self, _u: f64) -> Result<f64> {
        Ok(0.0)
    }

    fn integral(&self, _lo: f64, _hi: f64) -> Result<f64> {
        Ok(0.0)
    }
}

/// Remainder backed by a smooth even function, integrated adaptively.
/// Useful for synthetic kernels in tests and demonstrations.
pub struct FnKernel<F: Fn(f64) -> f64 + Sync>(pub F);

impl<F: Fn(f64) -> f64 + Sync> RegularKernel for FnKernel<F> {
    fn value(&self, u: f64) -> Result<f64> {
        Ok((self.0)(u))
    }

    fn integral(&self, lo: f64, hi: f64) -> Result<f64> {
        integrate_with_breaks(|u| (self.0)(u), lo, hi, &[0.0], QuadTol::new(1e-10, 1e-14))
    }
}

/// A normalized problem instance: half-length, regular remainder, and the
/// right-hand side evaluated at collocation points.
pub struct HsieProblem<K, F> {
    pub a: f64,
    pub regular_kernel: K,
    pub rhs: F,
}

impl<K: RegularKernel, F: Fn(f64) -> f64 + Sync> HsieProblem<K, F> {
    pub fn new(a: f64, regular_kernel: K, rhs: F) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidProblem(format!(
                "half-length must be positive and finite, got {a}"
            )));
        }
        Ok(HsieProblem { a, regular_kernel, rhs })
    }
}

/// Piecewise-constant collocation solution.
#[derive(Debug, Clone)]
pub struct Solution {
    pub grid: Grid,
    /// Density value on each panel.
    pub g: Vec<f64>,
    /// Max-norm of the final collocation residual.
    pub residual_norm: f64,
}

/// Chebyshev-expansion solution `g(t) = sqrt(a^2-t^2) sum c_k U_k(t/a)`.
#[derive(Debug, Clone)]
pub struct ChebSolution {
    pub a: f64,
    pub m: usize,
    pub coeffs: Vec<f64>,
}

impl ChebSolution {
    /// Density `g(t)`; zero outside `[-a, a]`.
    pub fn density(&self, t: f64) -> f64 {
        let w2 = self.a * self.a - t * t;
        if w2 <= 0.0 {
            return 0.0;
        }
        let z = t / self.a;
        let mut acc = 0.0;
        for (k, &c) in self.coeffs.iter().enumerate() {
            acc += c * u_cheb(k, z);
        }
        w2.sqrt() * acc
    }

    /// Last-coefficient magnitude relative to the largest one; small values
    /// indicate the expansion order was sufficient.
    pub fn tail_ratio(&self) -> f64 {
        let max = self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if max == 0.0 {
            return 0.0;
        }
        self.coeffs[self.m - 1].abs() / max
    }
}

/// Dense row-major square matrix; just enough linear algebra for the
/// collocation systems.
#[derive(Debug, Clone)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix { n, data: vec![0.0; n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }

    pub fn add_assign(&mut self, other: &DenseMatrix) {
        assert_eq!(self.n, other.n);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.n, x.len());
        self.data
            .chunks_exact(self.n)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// Exact finite-part panel integrals of the characteristic kernel:
/// entry (i, j) = fp INT over panel j of dt/(x_i - t)^2, from the
/// antiderivative 1/(x - t). Diagonal entries equal -4/h.
pub fn characteristic_matrix(grid: &Grid) -> DenseMatrix {
    let n = grid.n();
    let mut m = DenseMatrix::zeros(n);
    for i in 0..n {
        let x = grid.collocation(i);
        for j in 0..n {
            *m.at_mut(i, j) = 1.0 / (x - grid.node(j + 1)) - 1.0 / (x - grid.node(j));
        }
    }
    m
}

/// Panel integrals of the regular remainder: entry (i, j) =
/// INT over panel j of K(x_i - t) dt. On the uniform grid the entry depends
/// only on i - j, so n distinct integrals fill the whole matrix; this also
/// makes the assembly deterministic under parallelism.
pub fn regular_matrix<K: RegularKernel>(grid: &Grid, kernel: &K) -> Result<DenseMatrix> {
    let n = grid.n();
    let h = grid.h();
    let integrals: Vec<Result<f64>> = (0..n)
        .into_par_iter()
        .map(|m| kernel.integral(h * (m as f64 - 0.5), h * (m as f64 + 0.5)))
        .collect();
    let mut diag = Vec::with_capacity(n);
    for r in integrals {
        diag.push(r?);
    }
    let mut mat = DenseMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            *mat.at_mut(i, j) = diag[(i as isize - j as isize).unsigned_abs()];
        }
    }
    Ok(mat)
}

/// LU factorization with partial pivoting; pivots below `1e-13 * max|A|`
/// are treated as singular.
pub(crate) struct LuFactors {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
}

impl LuFactors {
    pub(crate) fn factor(mut m: DenseMatrix) -> Result<Self> {
        let n = m.n;
        let pivot_floor = 1e-13 * m.max_abs();
        let mut perm = Vec::with_capacity(n);
        for col in 0..n {
            let mut best = col;
            let mut best_abs = m.at(col, col).abs();
            for r in col + 1..n {
                let v = m.at(r, col).abs();
                if v > best_abs {
                    best = r;
                    best_abs = v;
                }
            }
            if !(best_abs > pivot_floor) {
                return Err(Error::SingularMatrix { index: col, pivot: m.at(best, col) });
            }
            if best != col {
                for c in 0..n {
                    m.data.swap(best * n + c, col * n + c);
                }
            }
            perm.push(best);
            let d = m.at(col, col);
            let pivot_row = m.data[col * n + col + 1..(col + 1) * n].to_vec();
            for r in col + 1..n {
                let f = m.data[r * n + col] / d;
                m.data[r * n + col] = f;
                if f != 0.0 {
                    let row = &mut m.data[r * n + col + 1..(r + 1) * n];
                    for (rv, pv) in row.iter_mut().zip(&pivot_row) {
                        *rv -= f * pv;
                    }
                }
            }
        }
        Ok(LuFactors { n, lu: m.data, perm })
    }

    pub(crate) fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x = b.to_vec();
        // Multipliers were swapped along with their rows, so the whole
        // permutation must land on b before elimination starts.
        for col in 0..n {
            x.swap(col, self.perm[col]);
        }
        for col in 0..n {
            let xc = x[col];
            if xc != 0.0 {
                for r in col + 1..n {
                    x[r] -= self.lu[r * n + col] * xc;
                }
            }
        }
        for r in (0..n).rev() {
            let mut acc = x[r];
            for c in r + 1..n {
                acc -= self.lu[r * n + c] * x[c];
            }
            x[r] = acc / self.lu[r * n + r];
        }
        x
    }
}

fn max_abs(v: &[f64]) -> f64 {
    // NaN entries must poison the norm, so no f64::max here.
    v.iter().fold(0.0f64, |m, x| if x.abs() > m || x.is_nan() { x.abs() } else { m })
}

/// residual r = b - A g
fn residual(a: &DenseMatrix, g: &[f64], b: &[f64]) -> Vec<f64> {
    a.mul_vec(g).iter().zip(b).map(|(ag, bi)| bi - ag).collect()
}

/// Solve by midpoint collocation on n uniform panels. One step of iterative
/// refinement keeps the collocation residual near roundoff; anything above
/// `1e-10 * max|b|` is reported as an error rather than returned silently.
pub fn solve<K: RegularKernel, F: Fn(f64) -> f64 + Sync>(
    problem: &HsieProblem<K, F>,
    n: usize,
) -> Result<Solution> {
    if n < 8 {
        return Err(Error::InvalidGrid(format!("collocation needs n >= 8 panels, got {n}")));
    }
    let grid = Grid::new(problem.a, n)?;
    let mut a = characteristic_matrix(&grid);
    let reg = regular_matrix(&grid, &problem.regular_kernel)?;
    a.add_assign(&reg);
    let b: Vec<f64> = (0..n).map(|i| (problem.rhs)(grid.collocation(i))).collect();

    let lu = LuFactors::factor(a.clone())?;
    let mut g = lu.solve(&b);
    let correction = lu.solve(&residual(&a, &g, &b));
    for (gi, ci) in g.iter_mut().zip(&correction) {
        *gi += ci;
    }
    let residual_norm = max_abs(&residual(&a, &g, &b));
    let tolerance = 1e-10 * max_abs(&b);
    // Written so a NaN residual (poisoned rhs sample) fails instead of passing.
    if !(residual_norm <= tolerance) {
        return Err(Error::ResidualTooLarge { residual: residual_norm, tolerance });
    }
    Ok(Solution { grid, g, residual_norm })
}

/// Chebyshev polynomial of the second kind, `U_k(z)` by recurrence.
fn u_cheb(k: usize, z: f64) -> f64 {
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = 2.0 * z;
    for _ in 1..k {
        (prev, cur) = (cur, 2.0 * z * cur - prev);
    }
    cur
}

/// One row of the regular block: INT K(x - t) sqrt(a^2-t^2) U_k(t/a) dt for
/// k = 0..m, all modes from one shared set of kernel evaluations. The
/// substitution t = a sin(psi) removes the square-root endpoint derivatives;
/// the split at t = x isolates the kernel's log point.
fn spectral_regular_row<K: RegularKernel>(
    kernel: &K,
    a: f64,
    x: f64,
    m: usize,
    tol: QuadTol,
) -> Result<Vec<f64>> {
    let mut failure: Option<Error> = None;
    let mut breaks = Vec::new();
    if x.abs() < a {
        breaks.push((x / a).asin());
    }
    let row = integrate_vec(
        |psi, out| {
            let (sp, cp) = psi.sin_cos();
            let kv = match kernel.value(x - a * sp) {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            };
            let w = a * a * cp * cp * kv;
            out[0] = w;
            let mut prev = 1.0;
            let mut cur = 2.0 * sp;
            if m > 1 {
                out[1] = w * cur;
            }
            for slot in out.iter_mut().take(m).skip(2) {
                (prev, cur) = (cur, 2.0 * sp * cur - prev);
                *slot = w * cur;
            }
        },
        -FRAC_PI_2,
        FRAC_PI_2,
        m,
        &breaks,
        tol,
    )?;
    match failure {
        Some(e) => Err(e),
        None => Ok(row),
    }
}

/// Solve with the Chebyshev expansion collocated at the m roots of `U_m(x/a)`.
/// The characteristic block is closed form, so only the regular remainder is
/// integrated numerically. Completely independent of [`solve`].
pub fn spectral_solve<K: RegularKernel, F: Fn(f64) -> f64 + Sync>(
    problem: &HsieProblem<K, F>,
    m: usize,
) -> Result<ChebSolution> {
    if m < 4 {
        return Err(Error::InvalidProblem(format!("spectral order must be at least 4, got {m}")));
    }
    let a = problem.a;
    let nodes: Vec<f64> = (1..=m).map(|i| a * (i as f64 * PI / (m as f64 + 1.0)).cos()).collect();
    let tol = QuadTol::new(1e-9, 1e-13);
    let rows: Vec<Result<Vec<f64>>> = nodes
        .par_iter()
        .map(|&x| spectral_regular_row(&problem.regular_kernel, a, x, m, tol))
        .collect();

    let mut mat = DenseMatrix::zeros(m);
    let mut b = vec![0.0; m];
    for (i, (&x, row)) in nodes.iter().zip(rows).enumerate() {
        let row = row?;
        let z = x / a;
        for k in 0..m {
            *mat.at_mut(i, k) = -PI * (k as f64 + 1.0) * u_cheb(k, z) + row[k];
        }
        b[i] = (problem.rhs)(x);
    }
    let lu = LuFactors::factor(mat)?;
    let coeffs = lu.solve(&b);
    Ok(ChebSolution { a, m, coeffs })
}

/// Evaluate the discrete operator of a collocation solution at a point off
/// the panel edges (inside or outside the crack): characteristic panel
/// integrals in closed form plus regular panel quadrature.
pub fn apply_operator<K: RegularKernel>(solution: &Solution, kernel: &K, x: f64) -> Result<f64> {
    let grid = &solution.grid;
    for j in 0..=grid.n() {
        if x == grid.node(j) {
            return Err(Error::InvalidProblem(format!(
                "operator evaluation at panel edge x = {x}"
            )));
        }
    }
    let mut acc = 0.0;
    for j in 0..grid.n() {
        let charac = 1.0 / (x - grid.node(j + 1)) - 1.0 / (x - grid.node(j));
        let reg = kernel.integral(x - grid.node(j + 1), x - grid.node(j))?;
        acc += solution.g[j] * (charac + reg);
    }
    Ok(acc)
}

/// Evaluate the operator of a Chebyshev solution. Inside the crack the
/// characteristic part continues as `-pi (k+1) U_k(x/a)`; outside it has the
/// closed form `pi (k+1) zeta^{k+1} / sqrt(z^2-1)` with `z = |x|/a`,
/// `zeta = z - sqrt(z^2-1)`, picking up the parity of `U_k` for x < -a.
pub fn apply_operator_spectral<K: RegularKernel>(
    sol: &ChebSolution,
    kernel: &K,
    x: f64,
) -> Result<f64> {
    let a = sol.a;
    let z = x / a;
    if z.abs() == 1.0 {
        return Err(Error::InvalidProblem(format!("operator evaluation at crack tip x = {x}")));
    }
    let tol = QuadTol::new(1e-9, 1e-13);
    let row = spectral_regular_row(kernel, a, x, sol.m, tol)?;
    let mut acc = 0.0;
    if z.abs() < 1.0 {
        for (k, &c) in sol.coeffs.iter().enumerate() {
            acc += c * (-PI * (k as f64 + 1.0) * u_cheb(k, z) + row[k]);
        }
    } else {
        let za = z.abs();
        let root = (za * za - 1.0).sqrt();
        let zeta = za - root;
        let mut pow = zeta;
        for (k, &c) in sol.coeffs.iter().enumerate() {
            let parity = if z < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
            acc += c * (PI * (k as f64 + 1.0) * pow / root * parity + row[k]);
            pow *= zeta;
        }
    }
    Ok(acc)
}
