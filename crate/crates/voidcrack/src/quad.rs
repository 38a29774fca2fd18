//! Globally adaptive Gauss-Kronrod quadrature.
//!
//! A 7-point Gauss rule embedded in a 15-point Kronrod rule gives a value
//! and an error estimate per interval; the worst interval is bisected until
//! the summed error meets the tolerance. Nodes are strictly interior, so
//! integrable endpoint singularities (logs, inverse square roots) need no
//! special casing beyond splitting the domain at the singular point.

use crate::error::{Error, Result};
use std::collections::BinaryHeap;

/// Kronrod abscissae (positive half, descending), 15-point rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_2,
    0.949_107_912_342_758_524_5,
    0.864_864_423_359_769_072_8,
    0.741_531_185_599_394_439_9,
    0.586_087_235_467_691_130_3,
    0.405_845_151_377_397_166_9,
    0.207_784_955_007_898_467_6,
    0.0,
];

/// Kronrod weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_96,
    0.063_092_092_629_978_553_29,
    0.104_790_010_322_250_183_8,
    0.140_653_259_715_525_918_8,
    0.169_004_726_639_267_902_8,
    0.190_350_578_064_785_409_9,
    0.204_432_940_075_298_892_4,
    0.209_482_141_084_727_828_0,
];

/// 7-point Gauss weights for `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_3,
    0.279_705_391_489_276_667_9,
    0.381_830_050_505_118_944_9,
    0.417_959_183_673_469_387_8,
];

/// Roundoff floor for a panel whose absolute integral is `result_abs`.
/// Error estimates never drop below this, and bisection preserves the sum
/// of `result_abs` over panels, so the floors bound achievable accuracy.
fn rounding_floor(result_abs: f64) -> f64 {
    let tiny = f64::MIN_POSITIVE / (50.0 * f64::EPSILON);
    if result_abs > tiny {
        50.0 * f64::EPSILON * result_abs
    } else {
        0.0
    }
}

/// QUADPACK error rescaling: sharpens the raw `|K15 - G7|` difference using
/// the spread of the integrand, with a floor at 50 ulps of the magnitude.
fn rescale_error(err: f64, result_abs: f64, result_asc: f64) -> f64 {
    let mut err = err.abs();
    if result_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / result_asc).powf(1.5);
        err = if scale < 1.0 { result_asc * scale } else { result_asc };
    }
    err.max(rounding_floor(result_abs))
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    floor: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, lo: f64, hi: f64) -> Panel {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    let mut resabs = WGK[7] * fc.abs();
    let mut fv = [0.0f64; 15];
    fv[7] = fc;
    for (i, &x) in XGK.iter().enumerate().take(7) {
        let dx = half * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[i] = f1;
        fv[14 - i] = f2;
        let sum = f1 + f2;
        resk += WGK[i] * sum;
        resabs += WGK[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            resg += WG[i / 2] * sum;
        }
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for i in 0..7 {
        resasc += WGK[i] * ((fv[i] - reskh).abs() + (fv[14 - i] - reskh).abs());
    }
    let error = rescale_error((resk - resg) * half, resabs * half.abs(), resasc * half.abs());
    Panel { lo, hi, value: resk * half, error, floor: rounding_floor(resabs * half.abs()) }
}

/// Non-adaptive composite rule: one GK15 pass on each of `m` equal slices.
/// No error control. Callers that difference nearby evaluations need the
/// node placement to be independent of the evaluation point, which adaptive
/// refinement cannot promise.
pub(crate) fn fixed_gk15<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, m: usize) -> f64 {
    let h = (hi - lo) / m.max(1) as f64;
    (0..m.max(1)).map(|k| gk15(&mut f, lo + k as f64 * h, lo + (k + 1) as f64 * h).value).sum()
}

/// Integration controls. `rel_tol` is applied to the accumulated value,
/// `abs_tol` is an absolute floor, and `max_panels` caps the subdivision.
#[derive(Debug, Clone, Copy)]
pub struct QuadTol {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
}

impl QuadTol {
    pub fn new(rel_tol: f64, abs_tol: f64) -> Self {
        QuadTol { rel_tol, abs_tol, max_panels: 200_000 }
    }
}

/// Adaptively integrate `f` over `[a, b]`, splitting first at `breaks`
/// (known kinks or singular points strictly inside the interval).
pub fn integrate_with_breaks<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    tol: QuadTol,
) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let mut edges: Vec<f64> = vec![lo];
    for &p in breaks {
        if p > lo && p < hi {
            edges.push(p);
        }
    }
    edges.push(hi);
    edges.sort_by(f64::total_cmp);
    edges.dedup();

    let mut heap = BinaryHeap::new();
    let mut value = 0.0;
    let mut error = 0.0;
    let mut floor_sum = 0.0;
    for pair in edges.windows(2) {
        let p = gk15(&mut f, pair[0], pair[1]);
        value += p.value;
        error += p.error;
        floor_sum += p.floor;
        heap.push(p);
    }

    let width = hi - lo;
    let min_width = width * f64::EPSILON * 4.0;
    // Stop at the requested tolerance, or once the estimate is within a small
    // factor of the summed rounding floors: past that point subdivision only
    // adds panels, never accuracy.
    while error > tol.abs_tol.max(tol.rel_tol * value.abs()) && error > 4.0 * floor_sum {
        if heap.len() >= tol.max_panels {
            return Err(Error::QuadratureFailure { a, b, err: error });
        }
        let worst = heap.pop().expect("non-empty heap");
        if (worst.hi - worst.lo) < min_width || worst.error == 0.0 {
            // The largest contribution cannot be refined further; accept
            // the best available estimate.
            break;
        }
        value -= worst.value;
        error -= worst.error;
        floor_sum -= worst.floor;
        let mid = 0.5 * (worst.lo + worst.hi);
        let left = gk15(&mut f, worst.lo, mid);
        let right = gk15(&mut f, mid, worst.hi);
        value += left.value + right.value;
        error += left.error + right.error;
        floor_sum += left.floor + right.floor;
        heap.push(left);
        heap.push(right);
    }
    Ok(sign * value)
}

/// Adaptively integrate `f` over `[a, b]`.
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, tol: QuadTol) -> Result<f64> {
    integrate_with_breaks(f, a, b, &[], tol)
}

/// Vector-valued panel used by [`integrate_vec`].
#[derive(Debug, Clone)]
struct VPanel {
    lo: f64,
    hi: f64,
    value: Vec<f64>,
    error: f64,
    floor: f64,
}

impl PartialEq for VPanel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for VPanel {}
impl PartialOrd for VPanel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for VPanel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15_vec<F: FnMut(f64, &mut [f64])>(f: &mut F, lo: f64, hi: f64, dim: usize) -> VPanel {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut buf = vec![0.0; dim];
    let mut samples = vec![0.0; 15 * dim];
    f(center, &mut buf);
    samples[7 * dim..8 * dim].copy_from_slice(&buf);
    for (i, &x) in XGK.iter().enumerate().take(7) {
        let dx = half * x;
        f(center - dx, &mut buf);
        samples[i * dim..(i + 1) * dim].copy_from_slice(&buf);
        f(center + dx, &mut buf);
        samples[(14 - i) * dim..(15 - i) * dim].copy_from_slice(&buf);
    }
    let mut value = vec![0.0; dim];
    let mut error = 0.0;
    let mut floor = 0.0;
    for k in 0..dim {
        let at = |node: usize| samples[node * dim + k];
        let mut resk = WGK[7] * at(7);
        let mut resg = WG[3] * at(7);
        let mut resabs = WGK[7] * at(7).abs();
        for i in 0..7 {
            let sum = at(i) + at(14 - i);
            resk += WGK[i] * sum;
            resabs += WGK[i] * (at(i).abs() + at(14 - i).abs());
            if i % 2 == 1 {
                resg += WG[i / 2] * sum;
            }
        }
        let reskh = 0.5 * resk;
        let mut resasc = 0.0;
        for node in 0..15 {
            let w = WGK[if node < 8 { node } else { 14 - node }];
            resasc += w * (at(node) - reskh).abs();
        }
        value[k] = resk * half;
        error += rescale_error((resk - resg) * half, resabs * half.abs(), resasc * half.abs());
        floor += rounding_floor(resabs * half.abs());
    }
    VPanel { lo, hi, value, error, floor }
}

/// Adaptive quadrature of a vector-valued integrand: one pass shares every
/// evaluation point across all components. The tolerance applies to the
/// summed per-component error against the largest component magnitude.
pub fn integrate_vec<F: FnMut(f64, &mut [f64])>(
    mut f: F,
    a: f64,
    b: f64,
    dim: usize,
    breaks: &[f64],
    tol: QuadTol,
) -> Result<Vec<f64>> {
    if a == b || dim == 0 {
        return Ok(vec![0.0; dim]);
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let mut edges: Vec<f64> = vec![lo];
    for &p in breaks {
        if p > lo && p < hi {
            edges.push(p);
        }
    }
    edges.push(hi);
    edges.sort_by(f64::total_cmp);
    edges.dedup();

    let mut heap = BinaryHeap::new();
    let mut value = vec![0.0; dim];
    let mut error = 0.0;
    let mut floor_sum = 0.0;
    for pair in edges.windows(2) {
        let p = gk15_vec(&mut f, pair[0], pair[1], dim);
        for (v, pv) in value.iter_mut().zip(&p.value) {
            *v += pv;
        }
        error += p.error;
        floor_sum += p.floor;
        heap.push(p);
    }

    let min_width = (hi - lo) * f64::EPSILON * 4.0;
    let scale = |value: &[f64]| value.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    while error > tol.abs_tol.max(tol.rel_tol * scale(&value)) && error > 4.0 * floor_sum {
        if heap.len() >= tol.max_panels {
            return Err(Error::QuadratureFailure { a, b, err: error });
        }
        let worst = heap.pop().expect("non-empty heap");
        if (worst.hi - worst.lo) < min_width || worst.error == 0.0 {
            break;
        }
        for (v, pv) in value.iter_mut().zip(&worst.value) {
            *v -= pv;
        }
        error -= worst.error;
        floor_sum -= worst.floor;
        let mid = 0.5 * (worst.lo + worst.hi);
        let left = gk15_vec(&mut f, worst.lo, mid, dim);
        let right = gk15_vec(&mut f, mid, worst.hi, dim);
        for k in 0..dim {
            value[k] += left.value[k] + right.value[k];
        }
        error += left.error + right.error;
        floor_sum += left.floor + right.floor;
        heap.push(left);
        heap.push(right);
    }
    if sign < 0.0 {
        for v in &mut value {
            *v = -*v;
        }
    }
    Ok(value)
}
