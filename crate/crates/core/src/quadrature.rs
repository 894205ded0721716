//! Adaptive Gauss–Kronrod quadrature on finite and semi-infinite ranges,
//! plus a panel-summing routine for oscillatory integrands.

use crate::error::{Error, Result};
use crate::specfun::EvalResult;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Tolerances for the adaptive routines. The target is
/// `max(abs_tol, rel_tol * |integral|)`.
#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_intervals: 2_000,
        }
    }
}

impl QuadConfig {
    pub fn with_abs_tol(abs_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol: 0.0,
            ..Self::default()
        }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// One 21-point Gauss–Kronrod panel. Returns (integral, error estimate).
pub fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = fc * WGK[10];
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let result = res_k * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (result, err)
}

#[derive(Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Adaptive bisection on [a, b], refining the panel with the largest
/// error estimate first.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<EvalResult> {
    if a == b {
        return Ok(EvalResult::new(0.0, 0.0));
    }
    if b < a {
        return integrate(f, b, a, cfg).map(|r| EvalResult::new(-r.value, r.est_abs_error));
    }
    let (v, e) = gk21(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Panel {
        a,
        b,
        value: v,
        error: e,
    });
    let mut total = v;
    let mut total_err = e;
    let mut count = 1;
    while total_err > cfg.target(total) && count < cfg.max_intervals {
        let worst = match heap.pop() {
            Some(p) => p,
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // cannot split further in floating point
            heap.push(worst);
            break;
        }
        let (v1, e1) = gk21(&f, worst.a, mid);
        let (v2, e2) = gk21(&f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
        });
        count += 1;
    }
    // re-sum to shed accumulated rounding from the incremental updates
    let (value, error) = heap.iter().fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
    if !value.is_finite() {
        return Err(Error::NumericalFailure("non-finite integrand".into()));
    }
    if error > cfg.target(value) * 10.0 + 1e-300 && error > 1e-10 * value.abs().max(1.0) {
        return Err(Error::Quadrature {
            est_error: error,
            tolerance: cfg.target(value),
        });
    }
    Ok(EvalResult::new(value, error))
}

/// Integrate over consecutive panels `points[0]..points[1]..` and sum.
pub fn integrate_breakpoints<F: Fn(f64) -> f64>(f: F, points: &[f64], cfg: &QuadConfig) -> Result<EvalResult> {
    let mut value = 0.0;
    let mut err = 0.0;
    for w in points.windows(2) {
        let r = integrate(&f, w[0], w[1], cfg)?;
        value += r.value;
        err += r.est_abs_error;
    }
    Ok(EvalResult::new(value, err))
}

/// ∫_a^∞ f(x) dx through the substitution x = a + (1 − u)/u.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, a: f64, cfg: &QuadConfig) -> Result<EvalResult> {
    let g = |u: f64| {
        if u <= 0.0 {
            return 0.0;
        }
        let x = a + (1.0 - u) / u;
        let v = f(x) / (u * u);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    integrate(g, 0.0, 1.0, cfg)
}

/// Wynn's epsilon algorithm applied to a sequence of partial sums; returns
/// the last accelerated estimate.
pub fn wynn_epsilon(partial_sums: &[f64]) -> f64 {
    let n = partial_sums.len();
    if n < 3 {
        return partial_sums.last().copied().unwrap_or(0.0);
    }
    // e[k] holds column k of the epsilon table for the current row
    let mut prev: Vec<f64> = partial_sums.to_vec();
    let mut prev_prev = vec![0.0; n + 1];
    let mut best = *partial_sums.last().unwrap();
    let mut col = 1;
    while prev.len() > 1 {
        let mut next = Vec::with_capacity(prev.len() - 1);
        for i in 0..prev.len() - 1 {
            let diff = prev[i + 1] - prev[i];
            let base = if col == 1 { 0.0 } else { prev_prev[i + 1] };
            if diff == 0.0 {
                next.push(f64::INFINITY);
            } else {
                next.push(base + 1.0 / diff);
            }
        }
        if col % 2 == 0 {
            if let Some(&v) = next.last() {
                if v.is_finite() {
                    best = v;
                }
            }
        }
        prev_prev = prev;
        prev = next;
        col += 1;
    }
    best
}

/// Sum ∫ f over consecutive panels of width `half_period` starting at
/// `start`. Panels wider than `max_width` are split evenly so panel
/// boundaries stay on the zeros of the oscillating factor. Stops after
/// `upper` or when three consecutive panels contribute less than
/// `panel_tol`; if the panel cap is hit first the epsilon-accelerated
/// limit of the partial sums is returned.
pub fn integrate_oscillatory<F: Fn(f64) -> f64>(
    f: F,
    start: f64,
    half_period: f64,
    max_width: f64,
    upper: f64,
    panel_tol: f64,
    cfg: &QuadConfig,
) -> Result<EvalResult> {
    const MAX_PANELS: usize = 200_000;
    let pieces = (half_period / max_width).ceil().max(1.0);
    let width = half_period / pieces;
    let mut sum = 0.0;
    let mut err = 0.0;
    let mut small_run = 0;
    let mut partial = Vec::new();
    let mut k = 0usize;
    loop {
        let a = start + k as f64 * width;
        if a >= upper {
            return Ok(EvalResult::new(sum, err));
        }
        let b = (start + (k + 1) as f64 * width).min(upper);
        let r = integrate(&f, a, b, cfg)?;
        sum += r.value;
        err += r.est_abs_error;
        if (k + 1).is_multiple_of(pieces as usize) {
            partial.push(sum);
        }
        if r.value.abs() < panel_tol {
            small_run += 1;
            if small_run >= 3 {
                return Ok(EvalResult::new(sum, err + r.value.abs()));
            }
        } else {
            small_run = 0;
        }
        k += 1;
        if k >= MAX_PANELS {
            let tail = partial.len().min(12);
            let acc = wynn_epsilon(&partial[partial.len() - tail..]);
            return Ok(EvalResult::new(acc, err + (acc - sum).abs()));
        }
    }
}
