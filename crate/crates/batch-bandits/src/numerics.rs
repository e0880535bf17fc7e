//! Scalar numerics: Gaussian CDF and log-CDF, tail sandwich bounds,
//! 1-D minimization, bisection root finding and adaptive quadrature.
//!
//! Everything here is deterministic and pure; accuracy contracts are
//! documented per function because the bound computations in
//! [`crate::bounds`] compare quantities as small as `e^{-n/2}`.

use crate::{Error, Result};

const SQRT_2PI: f64 = 2.506_628_274_631_000_5;
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Standard normal density φ(x).
pub fn norm_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / SQRT_2PI
}

/// Standard normal CDF Φ(x), via the complementary error function.
///
/// Relative error is at the few-ulp level of `erfc` on |x| ≤ 8 and the
/// result stays meaningful (absolute error below 1e-300) until the
/// f64 underflow threshold near x ≈ -37.5.
pub fn norm_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x * std::f64::consts::FRAC_1_SQRT_2)
}

/// ln Φ(x), usable far into the lower tail where Φ(x) underflows.
///
/// For x ≥ -12.5 this is the logarithm of [`norm_cdf`]; below that the
/// Mills-ratio asymptotic series is used, with relative error well
/// under 1e-12.
pub fn log_norm_cdf(x: f64) -> f64 {
    if x >= -12.5 {
        return norm_cdf(x).ln();
    }
    // Φ(-t) = φ(t)/t · (1 - 1/t² + 3/t⁴ - 15/t⁶ + ...), t = -x ≥ 12.5.
    let t = -x;
    let inv_t2 = 1.0 / (t * t);
    let mut term = 1.0;
    let mut series = 1.0;
    for j in 1..=16u32 {
        term *= -(2.0 * f64::from(j) - 1.0) * inv_t2;
        series += term;
        if term.abs() < 1e-17 * series.abs() {
            break;
        }
    }
    -0.5 * t * t - t.ln() - LN_SQRT_2PI + series.ln()
}

/// Lower tail bound x/(1+x²)·φ(x) < Φ(-x), valid for x > 0.
// Negated comparisons are deliberate: they reject NaN inputs too.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn gauss_tail_lower(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("tail bounds require x > 0, got {x}")));
    }
    Ok(x / (1.0 + x * x) * norm_pdf(x))
}

/// Upper tail bound Φ(-x) < φ(x)/x, valid for x > 0.
// Negated comparisons are deliberate: they reject NaN inputs too.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn gauss_tail_upper(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("tail bounds require x > 0, got {x}")));
    }
    Ok(norm_pdf(x) / x)
}

/// Tolerances for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_subdivisions: 10_000,
        }
    }
}

/// Minimize `f` over the real line near a candidate set.
///
/// Evaluates `f` at every candidate plus a 256-point uniform grid over
/// `[min(candidates) - bracket_pad, max(candidates) + bracket_pad]`,
/// then golden-section refines around the best grid point until the
/// bracket width is at most `tol`. Returns `(argmin, min)` over all
/// evaluations, so the result never exceeds the best candidate value.
pub fn minimize_1d<F: Fn(f64) -> f64>(
    f: F,
    candidates: &[f64],
    bracket_pad: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    assert!(!candidates.is_empty(), "candidates must be nonempty");
    let lo = candidates.iter().cloned().fold(f64::INFINITY, f64::min) - bracket_pad;
    let hi = candidates.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + bracket_pad;

    let eval = |x: f64| -> Result<f64> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteEvaluation { at: x })
        }
    };

    let mut points: Vec<f64> = candidates.to_vec();
    const GRID: usize = 256;
    for i in 0..GRID {
        points.push(lo + (hi - lo) * (i as f64) / ((GRID - 1) as f64));
    }
    points.sort_by(|a, b| a.total_cmp(b));

    let mut best_x = points[0];
    let mut best_v = eval(best_x)?;
    let mut best_idx = 0usize;
    for (idx, &x) in points.iter().enumerate().skip(1) {
        let v = eval(x)?;
        if v < best_v {
            best_v = v;
            best_x = x;
            best_idx = idx;
        }
    }

    // Golden-section refinement on the bracket spanned by the neighbors
    // of the best scanned point.
    let mut a = if best_idx > 0 { points[best_idx - 1] } else { points[0] };
    let mut b = if best_idx + 1 < points.len() {
        points[best_idx + 1]
    } else {
        *points.last().unwrap()
    };
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = eval(x1)?;
    let mut f2 = eval(x2)?;
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = eval(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = eval(x2)?;
        }
        if f1 < best_v {
            best_v = f1;
            best_x = x1;
        }
        if f2 < best_v {
            best_v = f2;
            best_x = x2;
        }
    }
    Ok((best_x, best_v))
}

/// Bisection root of `f` on `[lo, hi]`; requires a sign change.
pub fn find_root<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a);
    let fb = f(b);
    if fa * fb > 0.0 {
        return Err(Error::NoSignChange);
    }
    while b - a > tol {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fa * fm <= 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    Ok(0.5 * (a + b))
}

// 15-point Kronrod abscissae with the embedded 7-point Gauss weights,
// tabulated beyond f64 precision so the nearest float is used.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let half = 0.5 * (b - a);
    let center = 0.5 * (a + b);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let x = half * XGK[j];
        let fsum = f(center - x) + f(center + x);
        kronrod += WGK[j] * fsum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * fsum;
        }
    }
    (kronrod * half, (kronrod - gauss).abs() * half)
}

/// Adaptive Gauss–Kronrod estimate of the integral of `f` on `[lo, hi]`.
///
/// Bisects the interval with the largest error estimate until the total
/// estimated error is within `spec`, or fails with
/// [`Error::ToleranceNotMet`] after `max_subdivisions` splits.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, spec: &QuadratureSpec) -> Result<f64> {
    if lo == hi {
        return Ok(0.0);
    }
    let (v0, e0) = gk15(&f, lo, hi);
    // (error, lo, hi, value) segments; the worst segment is split first.
    let mut segments = vec![(e0, lo, hi, v0)];
    let mut total_err = e0;
    let mut total_val = v0;
    for _ in 0..spec.max_subdivisions {
        if total_err <= spec.abs_tol.max(spec.rel_tol * total_val.abs()) {
            return Ok(total_val);
        }
        let worst = segments
            .iter()
            .enumerate()
            .max_by(|a, b| a.1 .0.total_cmp(&b.1 .0))
            .map(|(i, _)| i)
            .unwrap();
        let (err, a, b, val) = segments.swap_remove(worst);
        let m = 0.5 * (a + b);
        let (vl, el) = gk15(&f, a, m);
        let (vr, er) = gk15(&f, m, b);
        total_val += vl + vr - val;
        total_err += el + er - err;
        segments.push((el, a, m, vl));
        segments.push((er, m, b, vr));
    }
    if total_err <= spec.abs_tol.max(spec.rel_tol * total_val.abs()) {
        Ok(total_val)
    } else {
        Err(Error::ToleranceNotMet)
    }
}
