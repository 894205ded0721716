//! Polya kernels k(r) = ∫ max(0, 1 − |r|/x) dF(x): closed forms, numeric
//! Stieltjes-integral evaluation, Fourier transforms, scaling, and tensor
//! products over coordinates.

use crate::distributions::{poisson_pmf, DistributionSpec};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_breakpoints, integrate_oscillatory, integrate_to_infinity, QuadConfig};
use crate::specfun::{
    erfc, exp_integral_e1, gamma_fn, kummer_m_minus_one, ln_gamma, lower_inc_gamma_regularized,
    upper_inc_gamma_regularized,
};
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

/// A translation-invariant kernel on ℝᵈ, evaluated at the difference x − x′.
pub trait ShiftInvariantKernel: Sync {
    fn eval_diff(&self, diff: &[f64]) -> f64;

    fn eval_pair(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                got: y.len(),
            });
        }
        let diff: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        Ok(self.eval_diff(&diff))
    }
}

/// A Polya kernel: the distribution plus the scaling factor ρ, so the kernel
/// evaluated at r is k(ρ r).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    pub dist: DistributionSpec,
    pub rho: f64,
    pub tau: Option<f64>,
}

/// A value of the kernel's Fourier transform at frequency t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralValue {
    pub t: f64,
    pub value: f64,
}

impl KernelSpec {
    pub fn new(dist: DistributionSpec) -> Self {
        Self {
            dist,
            rho: 1.0,
            tau: None,
        }
    }

    pub fn with_rho(dist: DistributionSpec, rho: f64) -> Result<Self> {
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(Error::InvalidParameter(format!("rho must be positive, got {rho}")));
        }
        Ok(Self { dist, rho, tau: None })
    }

    /// Standardize with ρ = E[X]/τ.
    pub fn with_tau(dist: DistributionSpec, tau: f64) -> Result<Self> {
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::InvalidParameter(format!("tau must be positive, got {tau}")));
        }
        Ok(Self {
            dist,
            rho: dist.mean() / tau,
            tau: Some(tau),
        })
    }

    /// k(ρ r), using the closed form where one exists.
    pub fn eval_kernel(&self, r: f64) -> f64 {
        let x = (self.rho * r).abs();
        if x == 0.0 {
            return 1.0;
        }
        let v = match closed_kernel(&self.dist, x) {
            Some(v) => v,
            None => eval_kernel_numeric(&self.dist, x).unwrap_or(f64::NAN),
        };
        v.clamp(0.0, 1.0)
    }

    /// F[k(ρ·)](t) = (1/ρ) F[k](t/ρ). At t = 0 this is E[X]/ρ.
    pub fn eval_ft(&self, t: f64) -> Result<SpectralValue> {
        let value = if t == 0.0 {
            self.dist.mean() / self.rho
        } else {
            let s = (t / self.rho).abs();
            let raw = match closed_ft(&self.dist, s) {
                Some(v) => v?,
                None => eval_ft_numeric(&self.dist, s)?,
            };
            raw.max(0.0) / self.rho
        };
        Ok(SpectralValue { t, value })
    }

    /// The cdf of X/ρ at x, recovered from the kernel as 1 − k(x) + x g(x), with
    /// g the right derivative of k.
    pub fn kernel_to_cdf(&self, x: f64) -> f64 {
        if !(x > 0.0) {
            return 0.0;
        }
        let y = self.rho * x;
        let k = KernelSpec::new(self.dist);
        let slope = match closed_slope(&self.dist, y) {
            Some(g) => g,
            None => {
                // second-order one-sided difference
                let h = 1e-6 * y.max(1.0);
                let k0 = k.eval_kernel(y);
                let k1 = k.eval_kernel(y + h);
                let k2 = k.eval_kernel(y + 2.0 * h);
                (-3.0 * k0 + 4.0 * k1 - k2) / (2.0 * h)
            }
        };
        (1.0 - k.eval_kernel(y) + y * slope).clamp(0.0, 1.0)
    }

    /// ∫_{-∞}^{∞} k(ρ r) dr by quadrature.
    pub fn area_under_curve(&self) -> Result<f64> {
        let cfg = QuadConfig {
            abs_tol: 1e-11,
            rel_tol: 1e-11,
            max_intervals: 4_000,
        };
        let f = |r: f64| self.eval_kernel(r);
        let end = self.dist.tail_point(1e-14) / self.rho;
        let half = if self.dist.is_discrete() {
            let n = (self.rho * end).ceil() as usize;
            let pts: Vec<f64> = (0..=n).map(|i| i as f64 / self.rho).collect();
            integrate_breakpoints(f, &pts, &cfg)?.value + integrate_to_infinity(f, pts[n], &cfg)?.value
        } else {
            let m = self.dist.mean() / self.rho;
            let pts = [0.0, m.min(end), end.max(m)];
            integrate_breakpoints(f, &pts, &cfg)?.value + integrate_to_infinity(f, pts[2], &cfg)?.value
        };
        Ok(2.0 * half)
    }

    /// Π_j k(ρ |x_j − x′_j|).
    pub fn tensor_eval(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        self.eval_pair(x, y)
    }
}

impl ShiftInvariantKernel for KernelSpec {
    fn eval_diff(&self, diff: &[f64]) -> f64 {
        diff.iter().map(|&d| self.eval_kernel(d)).product()
    }
}

/// The kernel of a finite atomic measure Σ wᵢ δ(xᵢ): Σ wᵢ max(0, 1 − r/xᵢ).
pub fn atomic_kernel(atoms: &[(f64, f64)], r: f64) -> f64 {
    let r = r.abs();
    atoms.iter().map(|&(x, w)| w * (1.0 - r / x).max(0.0)).sum()
}

fn kernel_quad_cfg() -> QuadConfig {
    QuadConfig {
        abs_tol: 1e-13,
        rel_tol: 1e-13,
        max_intervals: 4_000,
    }
}

/// k(r) = ∫_r^∞ (1 − r/x) dF(x) computed directly: a pmf sum for the
/// discrete family, adaptive quadrature otherwise.
pub fn eval_kernel_numeric(dist: &DistributionSpec, r: f64) -> Result<f64> {
    let r = r.abs();
    if r == 0.0 {
        return Ok(1.0);
    }
    if let DistributionSpec::ShiftedPoisson { mu } = *dist {
        let mut k = r.floor() + 1.0;
        let mut sum = 0.0;
        loop {
            let w = poisson_pmf(mu, k - 1.0);
            sum += (1.0 - r / k) * w;
            if k > mu + 1.0 && w < 1e-20 {
                break;
            }
            k += 1.0;
        }
        return Ok(sum);
    }
    let cfg = kernel_quad_cfg();
    let f = |x: f64| (1.0 - r / x) * dist.density_unchecked(x);
    let m = dist.mean();
    let end = dist.tail_point(1e-17).max(r + m);
    let pts = [r, r + m, end];
    let body = integrate_breakpoints(f, &pts, &cfg)?;
    let tail = integrate_to_infinity(f, end, &cfg)?;
    Ok(body.value + tail.value)
}

/// F[k](t) for ρ = 1 computed two ways: from the Stieltjes integral
/// (1/t²)∫(2 − 2cos(xt))/x dF(x) and from the cosine transform
/// 2∫₀^∞ k(r) cos(rt) dr. The first is returned if they agree.
pub fn eval_ft_numeric(dist: &DistributionSpec, t: f64) -> Result<f64> {
    if t == 0.0 {
        return Err(Error::domain("eval_ft_numeric", "t must be nonzero"));
    }
    let t = t.abs();
    let stieltjes = ft_stieltjes(dist, t)?;
    let cosine = ft_cosine(dist, t)?;
    let tol = 1e-6;
    if (stieltjes - cosine).abs() > tol {
        return Err(Error::Disagreement {
            first: stieltjes,
            second: cosine,
            tolerance: tol,
        });
    }
    Ok(stieltjes)
}

fn ft_stieltjes(dist: &DistributionSpec, t: f64) -> Result<f64> {
    let w = |x: f64| {
        let s = (0.5 * x * t).sin();
        4.0 * s * s / x
    };
    if let DistributionSpec::ShiftedPoisson { mu } = *dist {
        let mut k = 1.0;
        let mut sum = 0.0;
        loop {
            let p = poisson_pmf(mu, k - 1.0);
            sum += p * w(k);
            if k > mu + 1.0 && p < 1e-20 {
                break;
            }
            k += 1.0;
        }
        return Ok(sum / (t * t));
    }
    let cfg = kernel_quad_cfg();
    let m = dist.mean();
    let end = dist.tail_point(1e-17);
    let head_end = (m * 1e-3).min(2.0 * PI / t);
    // the first piece can carry an integrable singularity of the density
    let head = integrate(|x| dist.density_unchecked(x) * w(x), 0.0, head_end, &cfg)?.value;
    let body = integrate_oscillatory(
        |x| dist.density_unchecked(x) * w(x),
        head_end,
        2.0 * PI / t,
        0.5 * m,
        end,
        0.0,
        &cfg,
    )?
    .value;
    let tail = integrate_to_infinity(|x| dist.density_unchecked(x) * w(x), end, &cfg)?.value;
    Ok((head + body + tail) / (t * t))
}

fn ft_cosine(dist: &DistributionSpec, t: f64) -> Result<f64> {
    let spec = KernelSpec::new(*dist);
    let cfg = kernel_quad_cfg();
    let end = dist.tail_point(1e-17);
    let f = |r: f64| spec.eval_kernel(r) * (r * t).cos();
    let half = if dist.is_discrete() {
        let n = end.ceil() as usize;
        let pts: Vec<f64> = (0..=n).map(|i| i as f64).collect();
        integrate_breakpoints(f, &pts, &cfg)?.value
    } else {
        integrate_oscillatory(f, 0.0, PI / t, 0.5 * dist.mean(), end, 0.0, &cfg)?.value
    };
    Ok(2.0 * half)
}

fn q(s: f64, t: f64) -> f64 {
    upper_inc_gamma_regularized(s, t).unwrap_or(f64::NAN)
}

fn p(s: f64, t: f64) -> f64 {
    lower_inc_gamma_regularized(s, t).unwrap_or(f64::NAN)
}

fn lng(s: f64) -> f64 {
    ln_gamma(s).unwrap_or(f64::NAN)
}

fn e1(z: f64) -> f64 {
    exp_integral_e1(z).unwrap_or(f64::NAN)
}

/// Families with a Gamma-type kernel map to (shape, scale).
fn as_gamma(dist: &DistributionSpec) -> Option<(f64, f64)> {
    match *dist {
        DistributionSpec::Gamma { shape, scale } => Some((shape, scale)),
        DistributionSpec::Exponential { scale } => Some((1.0, scale)),
        DistributionSpec::ChiSquare { dof } => Some((dof as f64 / 2.0, 2.0)),
        DistributionSpec::Weibull { scale, shape: 1.0 } => Some((1.0, scale)),
        _ => None,
    }
}

/// Families with a half-normal kernel map to σ.
fn as_half_normal(dist: &DistributionSpec) -> Option<f64> {
    match *dist {
        DistributionSpec::HalfNormal { sigma } => Some(sigma),
        DistributionSpec::Chi { dof: 1 } => Some(1.0),
        DistributionSpec::Nakagami { m: 0.5, omega } => Some(omega.sqrt()),
        _ => None,
    }
}

/// Closed-form k(x) for x > 0, ρ = 1.
fn closed_kernel(dist: &DistributionSpec, x: f64) -> Option<f64> {
    use DistributionSpec::*;
    if let Some((s, theta)) = as_gamma(dist) {
        let u = x / theta;
        return if s > 1.0 {
            Some(q(s, u) - u / (s - 1.0) * q(s - 1.0, u))
        } else if s == 1.0 {
            Some((-u).exp() - u * e1(u))
        } else {
            None
        };
    }
    if let Some(sigma) = as_half_normal(dist) {
        let v = x / (sigma * SQRT_2);
        return Some(erfc(v) - v * e1(v * v) / PI.sqrt());
    }
    match *dist {
        ShiftedPoisson { mu } => {
            let n = x.floor();
            Some(if n < 1.0 {
                1.0 - x / mu * p(1.0, mu)
            } else {
                p(n, mu) - x / mu * p(n + 1.0, mu)
            })
        }
        Chi { dof } => {
            let n = dof as f64;
            let c = (lng(0.5 * (n - 1.0)) - lng(0.5 * n)).exp() / SQRT_2;
            let z = 0.5 * x * x;
            Some(q(0.5 * n, z) - c * x * q(0.5 * (n - 1.0), z))
        }
        Rayleigh { sigma } => {
            let v = x / (sigma * SQRT_2);
            Some((-v * v).exp() - PI.sqrt() * v * erfc(v))
        }
        Nakagami { m, omega } => {
            let c = (m / omega).sqrt() * (lng(m - 0.5) - lng(m)).exp();
            let z = m * x * x / omega;
            Some(q(m, z) - c * x * q(m - 0.5, z))
        }
        Weibull { scale, shape } if shape > 1.0 => {
            let z = x / scale;
            let v = z.powf(shape);
            let a = 1.0 - 1.0 / shape;
            Some((-v).exp() - z * gamma_fn(a).ok()? * q(a, v))
        }
        _ => None,
    }
}

/// Closed-form right derivative g(x) = −∫_x^∞ f(u)/u dF(u) for x > 0.
fn closed_slope(dist: &DistributionSpec, x: f64) -> Option<f64> {
    use DistributionSpec::*;
    if let Some((s, theta)) = as_gamma(dist) {
        let u = x / theta;
        return if s > 1.0 {
            Some(-q(s - 1.0, u) / ((s - 1.0) * theta))
        } else if s == 1.0 {
            Some(-e1(u) / theta)
        } else {
            None
        };
    }
    if let Some(sigma) = as_half_normal(dist) {
        let v = x / (sigma * SQRT_2);
        return Some(-e1(v * v) / (sigma * (2.0 * PI).sqrt()));
    }
    match *dist {
        ShiftedPoisson { mu } => Some(-p(x.floor() + 1.0, mu) / mu),
        Chi { dof } => {
            let n = dof as f64;
            let c = (lng(0.5 * (n - 1.0)) - lng(0.5 * n)).exp() / SQRT_2;
            Some(-c * q(0.5 * (n - 1.0), 0.5 * x * x))
        }
        Rayleigh { sigma } => Some(-(PI / 2.0).sqrt() / sigma * erfc(x / (sigma * SQRT_2))),
        Nakagami { m, omega } => {
            let c = (m / omega).sqrt() * (lng(m - 0.5) - lng(m)).exp();
            Some(-c * q(m - 0.5, m * x * x / omega))
        }
        Weibull { scale, shape } if shape > 1.0 => {
            let a = 1.0 - 1.0 / shape;
            Some(-gamma_fn(a).ok()? * q(a, (x / scale).powf(shape)) / scale)
        }
        _ => None,
    }
}

/// Closed-form F[k](t) for t > 0, ρ = 1.
fn closed_ft(dist: &DistributionSpec, t: f64) -> Option<Result<f64>> {
    use DistributionSpec::*;
    let t2 = t * t;
    if let Some((s, theta)) = as_gamma(dist) {
        let a = theta * t;
        return if s > 1.0 {
            let big_u = -0.5 * (s - 1.0) * (a * a).ln_1p();
            let big_v = (s - 1.0) * a.atan();
            let h = (0.5 * big_v).sin();
            Some(Ok(
                (4.0 * h * h - 2.0 * big_u.exp_m1() * big_v.cos()) / ((s - 1.0) * theta * t2)
            ))
        } else if s == 1.0 {
            Some(Ok((a * a).ln_1p() / (theta * t2)))
        } else {
            None
        };
    }
    if let Some(sigma) = as_half_normal(dist) {
        return Some(half_normal_ft(sigma, t));
    }
    match *dist {
        ShiftedPoisson { mu } => {
            let h = (0.5 * t).sin();
            let a = -2.0 * mu * h * h;
            let b = mu * t.sin();
            let hb = (0.5 * b).sin();
            Some(Ok((4.0 * hb * hb - 2.0 * a.exp_m1() * b.cos()) / (mu * t2)))
        }
        Chi { dof } => {
            let n = dof as f64;
            let c = (lng(0.5 * (n - 1.0)) - lng(0.5 * n)).exp() / SQRT_2;
            Some(kummer_m_minus_one(0.5 * (n - 1.0), 0.5, -0.5 * t2).map(|m1| -2.0 * c * m1 / t2))
        }
        Rayleigh { sigma } => Some(Ok(
            -(2.0 * PI).sqrt() * (-0.5 * sigma * sigma * t2).exp_m1() / (sigma * t2)
        )),
        Nakagami { m, omega } => {
            let c = (m / omega).sqrt() * (lng(m - 0.5) - lng(m)).exp();
            Some(kummer_m_minus_one(m - 0.5, 0.5, -omega * t2 / (4.0 * m)).map(|m1| -2.0 * c * m1 / t2))
        }
        _ => None,
    }
}

/// (2/(t√π)) ∫₀^∞ E₁(r²) sin(σ√2 t r) dr by panels between the zeros of
/// the sine.
fn half_normal_ft(sigma: f64, t: f64) -> Result<f64> {
    let omega = sigma * SQRT_2 * t;
    let cfg = QuadConfig {
        abs_tol: 1e-13,
        rel_tol: 1e-12,
        max_intervals: 4_000,
    };
    // E₁(r²) < 1e-23 beyond r = 7
    let r = integrate_oscillatory(
        |r: f64| if r > 0.0 { e1(r * r) * (omega * r).sin() } else { 0.0 },
        0.0,
        PI / omega,
        0.5,
        7.0,
        1e-12,
        &cfg,
    )?;
    Ok(2.0 / (t * PI.sqrt()) * r.value)
}

impl fmt::Display for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tau {
            Some(tau) => write!(f, "{};tau={}", self.dist, tau),
            None if self.rho == 1.0 => write!(f, "{}", self.dist),
            None => write!(f, "{};rho={}", self.dist, self.rho),
        }
    }
}

impl FromStr for KernelSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(';');
        let dist: DistributionSpec = parts.next().unwrap_or("").parse()?;
        let mut spec = KernelSpec::new(dist);
        for part in parts.map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("expected tau=.. or rho=.., got '{part}'")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad number '{v}'")))?;
            spec = match k.trim() {
                "tau" => KernelSpec::with_tau(dist, v)?,
                "rho" => KernelSpec::with_rho(dist, v)?,
                other => return Err(Error::InvalidParameter(format!("unknown kernel option '{other}'"))),
            };
        }
        Ok(spec)
    }
}
