//! Exact kernel matrices and the expected vs observed Frobenius error of
//! their random feature approximations.

use crate::error::{Error, Result};
use crate::feature_maps::{FeatureMap, FeatureMapConfig, MapKind};
use crate::kernels::ShiftInvariantKernel;
use nalgebra::DMatrix;
use rayon::prelude::*;

/// Dense symmetric n × n matrix of kernel values.
pub type KernelMatrix = DMatrix<f64>;

/// K_ij = k(xᵢ − xⱼ).
pub fn exact_gram<K: ShiftInvariantKernel + ?Sized>(kernel: &K, points: &[Vec<f64>]) -> Result<KernelMatrix> {
    scaled_gram(kernel, points, 1.0)
}

/// K_ij = k(2(xᵢ − xⱼ)), the extra term in the real Fourier map's error.
pub fn doubled_gram<K: ShiftInvariantKernel + ?Sized>(kernel: &K, points: &[Vec<f64>]) -> Result<KernelMatrix> {
    scaled_gram(kernel, points, 2.0)
}

fn scaled_gram<K: ShiftInvariantKernel + ?Sized>(kernel: &K, points: &[Vec<f64>], factor: f64) -> Result<KernelMatrix> {
    let n = points.len();
    let d = points.first().map_or(0, Vec::len);
    if let Some(bad) = points.iter().find(|p| p.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: bad.len(),
        });
    }
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (i..n)
                .map(|j| {
                    if i == j {
                        return 1.0;
                    }
                    let diff: Vec<f64> = points[i]
                        .iter()
                        .zip(&points[j])
                        .map(|(a, b)| factor * (a - b))
                        .collect();
                    kernel.eval_diff(&diff)
                })
                .collect()
        })
        .collect();
    let mut k = DMatrix::zeros(n, n);
    for (i, row) in rows.into_iter().enumerate() {
        for (off, v) in row.into_iter().enumerate() {
            k[(i, i + off)] = v;
            k[(i + off, i)] = v;
        }
    }
    Ok(k)
}

/// E‖(1/D)Σ K̃⁽ˡ⁾ − K‖²_F for D independent copies of the given map kind.
pub fn expected_sq_frobenius(kind: MapKind, k: &KernelMatrix, k2: Option<&KernelMatrix>, copies: usize) -> Result<f64> {
    let n = k.nrows() as f64;
    let fro = k.norm_squared();
    let per_copy = match kind {
        MapKind::FourierComplex => n * n - fro,
        MapKind::FourierReal => {
            let k2 = k2.ok_or(Error::MissingArgument("k2"))?;
            n * n + 0.5 * k2.sum() - fro
        }
        MapKind::Binning => k.sum() - fro,
    };
    Ok(per_copy / copies as f64)
}

/// Monte Carlo summary of the approximation error over independent maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorStats {
    pub trials: usize,
    /// Mean of ‖K̃ − K‖²_F.
    pub mean_sq: f64,
    pub stderr_sq: f64,
    /// Mean of ‖K̃ − K‖²_F / ‖K‖²_F.
    pub mean_rel_sq: f64,
    pub stderr_rel_sq: f64,
    /// Expected ‖K̃ − K‖²_F.
    pub theory_sq: f64,
    /// √(E‖K̃ − K‖²_F) / ‖K‖_F.
    pub theory_rel: f64,
}

/// Squared Frobenius distance between the map's Gram matrix and K. For the
/// complex map the imaginary part counts too.
pub fn sq_error(map: &mut FeatureMap, points: &[Vec<f64>], k: &KernelMatrix) -> Result<f64> {
    let z = map.featurize(points)?;
    if map.config.kind == MapKind::FourierComplex {
        let (re, im) = z.gram_complex();
        Ok((re - k).norm_squared() + im.norm_squared())
    } else {
        Ok((z.gram() - k).norm_squared())
    }
}

/// Run `trials` independent maps (seeds derived from `cfg.seed`) and
/// compare the observed squared error with its expectation.
pub fn empirical_error(points: &[Vec<f64>], cfg: &FeatureMapConfig, trials: usize) -> Result<ErrorStats> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let k = exact_gram(&cfg.kernel, points)?;
    let k2 = if cfg.kind == MapKind::FourierReal {
        Some(doubled_gram(&cfg.kernel, points)?)
    } else {
        None
    };
    let theory_sq = expected_sq_frobenius(cfg.kind, &k, k2.as_ref(), cfg.copies)?;
    let errs: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut c = *cfg;
            c.seed = crate::rng::derive_seed(cfg.seed, &[t as u64]);
            let mut map = FeatureMap::build(c)?;
            sq_error(&mut map, points, &k)
        })
        .collect::<Result<_>>()?;
    let fro = k.norm_squared();
    let (mean_sq, stderr_sq) = mean_stderr(&errs);
    Ok(ErrorStats {
        trials,
        mean_sq,
        stderr_sq,
        mean_rel_sq: mean_sq / fro,
        stderr_rel_sq: stderr_sq / fro,
        theory_sq,
        theory_rel: (theory_sq / fro).sqrt(),
    })
}

/// Sample mean and its standard error, summed in index order.
pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
