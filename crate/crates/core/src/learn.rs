//! Squared-loss learning on random features: ridge regression, one-vs-all
//! classification and grid-search cross-validation.

use crate::error::{Error, Result};
use crate::feature_maps::{sparse_dot, FeatureBatch, FeatureMap, FeatureMapConfig, MapKernel, MapKind};
use crate::kernels::KernelSpec;
use crate::rng::{derive_seed, RandomStream};
use crate::DistributionSpec;
use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Points with real targets (regression values or class labels).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Dataset {
    pub points: Vec<Vec<f64>>,
    pub targets: Vec<f64>,
    pub dim: usize,
}

impl Dataset {
    pub fn new(points: Vec<Vec<f64>>, targets: Vec<f64>) -> Result<Self> {
        if points.len() != targets.len() {
            return Err(Error::DimensionMismatch {
                expected: points.len(),
                got: targets.len(),
            });
        }
        let dim = points.iter().map(Vec::len).max().unwrap_or(0);
        let points = points
            .into_iter()
            .map(|mut p| {
                p.resize(dim, 0.0);
                p
            })
            .collect();
        Ok(Self { points, targets, dim })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn subset(&self, idx: &[usize]) -> Dataset {
        Dataset {
            points: idx.iter().map(|&i| self.points[i].clone()).collect(),
            targets: idx.iter().map(|&i| self.targets[i]).collect(),
            dim: self.dim,
        }
    }

    /// A random subset of at most `m` points, in original order.
    pub fn subsample(&self, m: usize, seed: u64) -> Dataset {
        if m >= self.len() {
            return self.clone();
        }
        let mut idx = shuffled_indices(self.len(), seed);
        idx.truncate(m);
        idx.sort_unstable();
        self.subset(&idx)
    }

    /// Random split with `train_fraction` of the points in the first part.
    pub fn split(&self, train_fraction: f64, seed: u64) -> Split {
        let idx = shuffled_indices(self.len(), seed);
        let cut = ((self.len() as f64) * train_fraction).round() as usize;
        let mut train = idx[..cut].to_vec();
        let mut test = idx[cut..].to_vec();
        train.sort_unstable();
        test.sort_unstable();
        Split { train, test }
    }
}

pub fn shuffled_indices(n: usize, seed: u64) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    let mut s = RandomStream::new(seed, 0x5_9117);
    idx.shuffle(s.inner());
    idx
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// Per-attribute affine map fitted so training values span [−1, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Normalizer {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl Normalizer {
    pub fn fit(points: &[Vec<f64>]) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::EmptyInput("cannot fit a normalizer on zero points".into()))?;
        let mut min = first.clone();
        let mut max = first.clone();
        for p in points {
            for (j, &v) in p.iter().enumerate() {
                min[j] = min[j].min(v);
                max[j] = max[j].max(v);
            }
        }
        Ok(Self { min, max })
    }

    /// Constant attributes map to 0. Values outside the fitted range land
    /// outside [−1, 1].
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .enumerate()
            .map(|(j, &v)| {
                let (lo, hi) = (self.min[j], self.max[j]);
                if hi > lo {
                    2.0 * (v - lo) / (hi - lo) - 1.0
                } else {
                    0.0
                }
            })
            .collect()
    }

    pub fn apply_all(&self, points: &[Vec<f64>]) -> Vec<Vec<f64>> {
        points.iter().map(|p| self.apply(p)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Solver {
    /// Whichever of the two systems is smaller.
    Auto,
    /// (ZZᵀ + λI) w = Z y, size = feature count.
    Primal,
    /// (ZᵀZ + λI) α = y, w = Z α, size = n.
    Dual,
}

fn feature_rows(batch: &FeatureBatch) -> Result<Vec<Vec<(usize, f64)>>> {
    (0..batch.n()).map(|i| batch.row_entries(i)).collect()
}

fn check_residual(a: &DMatrix<f64>, x: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<()> {
    let scale = b.norm().max(f64::MIN_POSITIVE);
    let res = (a * x - b).norm() / scale;
    if res.is_finite() && res <= 1e-8 {
        Ok(())
    } else {
        Err(Error::NumericalFailure(format!(
            "ridge system residual {res:e} exceeds 1e-8"
        )))
    }
}

/// Solve the ridge problem for every column of `y` (n × c). Returns the
/// weights, one column per target column, over `columns` features.
pub fn solve_ridge(batch: &FeatureBatch, y: &DMatrix<f64>, lambda: f64, solver: Solver) -> Result<DMatrix<f64>> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    let n = batch.n();
    if n == 0 {
        return Err(Error::EmptyInput("no training points".into()));
    }
    if y.nrows() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: y.nrows(),
        });
    }
    let p = batch.feature_count();
    let rows = feature_rows(batch)?;
    let use_dual = match solver {
        Solver::Auto => n < p,
        Solver::Primal => false,
        Solver::Dual => true,
    };
    if use_dual {
        let mut a = batch.gram();
        for i in 0..n {
            a[(i, i)] += lambda;
        }
        let chol = a
            .clone()
            .cholesky()
            .ok_or_else(|| Error::NumericalFailure("ridge system is not positive definite".into()))?;
        let alpha = chol.solve(y);
        check_residual(&a, &alpha, y)?;
        let mut w = DMatrix::zeros(p, y.ncols());
        for (i, row) in rows.iter().enumerate() {
            for &(col, v) in row {
                for c in 0..y.ncols() {
                    w[(col, c)] += v * alpha[(i, c)];
                }
            }
        }
        Ok(w)
    } else {
        let mut a = DMatrix::zeros(p, p);
        let mut b = DMatrix::zeros(p, y.ncols());
        for (i, row) in rows.iter().enumerate() {
            for &(ci, vi) in row {
                for &(cj, vj) in row {
                    a[(ci, cj)] += vi * vj;
                }
                for c in 0..y.ncols() {
                    b[(ci, c)] += vi * y[(i, c)];
                }
            }
        }
        for i in 0..p {
            a[(i, i)] += lambda;
        }
        let chol = a
            .clone()
            .cholesky()
            .ok_or_else(|| Error::NumericalFailure("ridge system is not positive definite".into()))?;
        let w = chol.solve(&b);
        check_residual(&a, &w, &b)?;
        Ok(w)
    }
}

/// Scores ⟨w_c, z(xᵢ)⟩ for every point and weight column. Features beyond
/// the trained weights (bins first seen after fitting) contribute nothing.
pub fn scores(batch: &FeatureBatch, w: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = batch.n();
    let mut out = DMatrix::zeros(n, w.ncols());
    for i in 0..n {
        for (col, v) in batch.row_entries(i)? {
            if col < w.nrows() {
                for c in 0..w.ncols() {
                    out[(i, c)] += v * w[(col, c)];
                }
            }
        }
    }
    Ok(out)
}

/// A fitted ridge regressor: the feature map, weights and the target mean
/// removed before fitting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RidgeModel {
    pub map: FeatureMap,
    pub weights: Vec<f64>,
    pub lambda: f64,
    pub offset: f64,
}

impl RidgeModel {
    /// Fit on raw points. Targets are centered and the mean is added back
    /// at prediction time.
    pub fn fit(mut map: FeatureMap, points: &[Vec<f64>], y: &[f64], lambda: f64, solver: Solver) -> Result<Self> {
        let batch = map.featurize(points)?;
        let offset = if y.is_empty() {
            0.0
        } else {
            y.iter().sum::<f64>() / y.len() as f64
        };
        let yc = DMatrix::from_iterator(y.len(), 1, y.iter().map(|v| v - offset));
        let w = solve_ridge(&batch, &yc, lambda, solver)?;
        Ok(Self {
            map,
            weights: w.column(0).iter().copied().collect(),
            lambda,
            offset,
        })
    }

    pub fn predict(&mut self, points: &[Vec<f64>]) -> Result<Vec<f64>> {
        let batch = self.map.featurize(points)?;
        let w = DMatrix::from_column_slice(self.weights.len(), 1, &self.weights);
        let s = scores(&batch, &w)?;
        Ok(s.column(0).iter().map(|v| v + self.offset).collect())
    }
}

/// One ridge model per class, trained on ±1 targets over a shared map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OneVsAll {
    pub map: FeatureMap,
    pub classes: Vec<f64>,
    /// Feature count × class count, column-major.
    pub weights: Vec<f64>,
    pub lambda: f64,
}

fn distinct_labels(y: &[f64]) -> Vec<f64> {
    let mut classes = y.to_vec();
    classes.sort_by(f64::total_cmp);
    classes.dedup();
    classes
}

impl OneVsAll {
    pub fn fit(mut map: FeatureMap, points: &[Vec<f64>], labels: &[f64], lambda: f64, solver: Solver) -> Result<Self> {
        let classes = distinct_labels(labels);
        if classes.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "classification needs at least 2 classes, found {}",
                classes.len()
            )));
        }
        let batch = map.featurize(points)?;
        let y = DMatrix::from_fn(labels.len(), classes.len(), |i, c| {
            if labels[i] == classes[c] {
                1.0
            } else {
                -1.0
            }
        });
        let w = solve_ridge(&batch, &y, lambda, solver)?;
        Ok(Self {
            map,
            classes,
            weights: w.as_slice().to_vec(),
            lambda,
        })
    }

    fn weight_matrix(&self) -> DMatrix<f64> {
        let c = self.classes.len();
        DMatrix::from_column_slice(self.weights.len() / c, c, &self.weights)
    }

    /// Per-class scores, one row per point.
    pub fn scores(&mut self, points: &[Vec<f64>]) -> Result<DMatrix<f64>> {
        let batch = self.map.featurize(points)?;
        scores(&batch, &self.weight_matrix())
    }

    pub fn predict(&mut self, points: &[Vec<f64>]) -> Result<Vec<f64>> {
        let s = self.scores(points)?;
        Ok((0..s.nrows())
            .map(|i| {
                let best = (0..s.ncols()).fold(0, |b, c| if s[(i, c)] > s[(i, b)] { c } else { b });
                self.classes[best]
            })
            .collect())
    }
}

pub fn mse(pred: &[f64], y: &[f64]) -> f64 {
    pred.iter().zip(y).map(|(a, b)| (a - b).powi(2)).sum::<f64>() / y.len().max(1) as f64
}

pub fn accuracy(pred: &[f64], y: &[f64]) -> f64 {
    pred.iter().zip(y).filter(|(a, b)| a == b).count() as f64 / y.len().max(1) as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Task {
    Regression,
    Classification,
}

/// Kernel families searched by cross-validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Poisson,
    Gamma,
    Nakagami,
    Weibull,
    /// Random Fourier baseline with the Laplace kernel.
    Laplace,
    /// Random Fourier baseline with the Gaussian kernel.
    Gaussian,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "poisson" => Ok(Family::Poisson),
            "gamma" => Ok(Family::Gamma),
            "nakagami" => Ok(Family::Nakagami),
            "weibull" => Ok(Family::Weibull),
            "laplace" => Ok(Family::Laplace),
            "gaussian" => Ok(Family::Gaussian),
            other => Err(Error::InvalidParameter(format!("unknown family '{other}'"))),
        }
    }
}

impl Family {
    /// The map kind used with this family.
    pub fn map_kind(&self) -> MapKind {
        match self {
            Family::Laplace | Family::Gaussian => MapKind::FourierReal,
            _ => MapKind::Binning,
        }
    }

    /// Default shape grid: half-integers for μ, s and m; {1, 2, 3} for α.
    /// The Fourier baselines have no shape parameter.
    pub fn default_shapes(&self) -> Vec<f64> {
        let half: Vec<f64> = (1..=6).map(|i| i as f64 * 0.5).collect();
        match self {
            Family::Poisson => (1..=8).map(|i| i as f64 * 0.5).collect(),
            Family::Gamma | Family::Nakagami => half,
            Family::Weibull => vec![1.0, 2.0, 3.0],
            Family::Laplace | Family::Gaussian => vec![f64::NAN],
        }
    }

    /// Kernel for a shape value and spread τ.
    pub fn kernel(&self, shape: f64, tau: f64) -> Result<MapKernel> {
        let polya = |d: DistributionSpec| -> Result<MapKernel> {
            d.validate()?;
            Ok(MapKernel::Polya(KernelSpec::with_tau(d, tau)?))
        };
        match self {
            Family::Poisson => polya(DistributionSpec::ShiftedPoisson { mu: shape }),
            Family::Gamma => polya(DistributionSpec::Gamma { shape, scale: 1.0 }),
            Family::Nakagami => polya(DistributionSpec::Nakagami { m: shape, omega: 1.0 }),
            Family::Weibull => polya(DistributionSpec::Weibull { scale: 1.0, shape }),
            Family::Laplace => Ok(MapKernel::Laplace { sigma: tau }),
            Family::Gaussian => Ok(MapKernel::Gaussian { sigma: tau }),
        }
    }
}

pub const DEFAULT_LAMBDAS: [f64; 3] = [0.01, 0.1, 1.0];

/// Log-spaced τ grid from 2^lo to 2^hi.
pub fn tau_grid(lo: i32, hi: i32) -> Vec<f64> {
    (lo..=hi).map(|e| 2f64.powi(e)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpace {
    pub family: Family,
    pub shapes: Vec<f64>,
    pub taus: Vec<f64>,
    pub lambdas: Vec<f64>,
    pub copies: usize,
    pub folds: usize,
    pub seed: u64,
    pub task: Task,
}

impl SearchSpace {
    pub fn new(family: Family, task: Task, copies: usize, seed: u64) -> Self {
        Self {
            family,
            shapes: family.default_shapes(),
            taus: tau_grid(-3, 3),
            lambdas: DEFAULT_LAMBDAS.to_vec(),
            copies,
            folds: 4,
            seed,
            task,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    /// NaN for the Fourier baselines.
    pub shape: f64,
    pub tau: f64,
    pub lambda: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CvResult {
    pub best: GridPoint,
    /// Validation loss at the best point: MSE, or error rate for classification.
    pub best_loss: f64,
    pub table: Vec<(GridPoint, f64)>,
}

/// Fit on `train`, return the loss on `valid` for every λ.
#[allow(clippy::too_many_arguments)]
fn fold_losses(
    kernel: MapKernel,
    kind: MapKind,
    copies: usize,
    seed: u64,
    train: &Dataset,
    valid: &Dataset,
    lambdas: &[f64],
    task: Task,
) -> Result<Vec<f64>> {
    let cfg = FeatureMapConfig::new(kind, kernel, copies, train.dim, seed);
    let mut map = FeatureMap::build(cfg)?;
    let zt = map.featurize(&train.points)?;
    let zv = map.featurize(&valid.points)?;
    let (y, classes, offset) = match task {
        Task::Regression => {
            let m = train.targets.iter().sum::<f64>() / train.len() as f64;
            let y = DMatrix::from_iterator(train.len(), 1, train.targets.iter().map(|v| v - m));
            (y, Vec::new(), m)
        }
        Task::Classification => {
            let classes = distinct_labels(&train.targets);
            if classes.len() < 2 {
                return Err(Error::InvalidParameter("a training fold has a single class".into()));
            }
            let y = DMatrix::from_fn(train.len(), classes.len(), |i, c| {
                if train.targets[i] == classes[c] {
                    1.0
                } else {
                    -1.0
                }
            });
            (y, classes, 0.0)
        }
    };
    lambdas
        .iter()
        .map(|&lambda| {
            let w = solve_ridge(&zt, &y, lambda, Solver::Auto)?;
            let s = scores(&zv, &w)?;
            Ok(match task {
                Task::Regression => {
                    let pred: Vec<f64> = s.column(0).iter().map(|v| v + offset).collect();
                    mse(&pred, &valid.targets)
                }
                Task::Classification => {
                    let pred: Vec<f64> = (0..s.nrows())
                        .map(|i| {
                            let b = (0..s.ncols()).fold(0, |b, c| if s[(i, c)] > s[(i, b)] { c } else { b });
                            classes[b]
                        })
                        .collect();
                    1.0 - accuracy(&pred, &valid.targets)
                }
            })
        })
        .collect()
}

/// k-fold grid search over (shape, τ, λ). Ties go to the larger λ, then the
/// larger τ.
pub fn cross_validate(train: &Dataset, space: &SearchSpace) -> Result<CvResult> {
    if space.shapes.is_empty() || space.taus.is_empty() || space.lambdas.is_empty() {
        return Err(Error::EmptyInput("search grid is empty".into()));
    }
    if space.folds < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 folds, got {}",
            space.folds
        )));
    }
    if train.len() < space.folds {
        return Err(Error::InvalidParameter("fewer points than folds".into()));
    }
    let order = shuffled_indices(train.len(), derive_seed(space.seed, &[0xF01D]));
    let folds: Vec<(Dataset, Dataset)> = (0..space.folds)
        .map(|f| {
            let mut tr = Vec::new();
            let mut va = Vec::new();
            for (pos, &i) in order.iter().enumerate() {
                if pos % space.folds == f {
                    va.push(i);
                } else {
                    tr.push(i);
                }
            }
            tr.sort_unstable();
            va.sort_unstable();
            (train.subset(&tr), train.subset(&va))
        })
        .collect();
    let kind = space.family.map_kind();
    let jobs: Vec<(usize, usize)> = (0..space.shapes.len())
        .flat_map(|a| (0..space.taus.len()).map(move |b| (a, b)))
        .collect();
    let per_job: Vec<Vec<f64>> = jobs
        .par_iter()
        .map(|&(a, b)| {
            let kernel = space.family.kernel(space.shapes[a], space.taus[b])?;
            let mut totals = vec![0.0; space.lambdas.len()];
            for (f, (tr, va)) in folds.iter().enumerate() {
                let seed = derive_seed(space.seed, &[a as u64, b as u64, f as u64]);
                let losses = fold_losses(kernel, kind, space.copies, seed, tr, va, &space.lambdas, space.task)?;
                for (t, l) in totals.iter_mut().zip(losses) {
                    *t += l;
                }
            }
            Ok(totals.into_iter().map(|t| t / space.folds as f64).collect())
        })
        .collect::<Result<_>>()?;
    let mut table = Vec::new();
    for (&(a, b), losses) in jobs.iter().zip(&per_job) {
        for (l, &loss) in space.lambdas.iter().zip(losses) {
            table.push((
                GridPoint {
                    shape: space.shapes[a],
                    tau: space.taus[b],
                    lambda: *l,
                },
                loss,
            ));
        }
    }
    let (best, best_loss) = table
        .iter()
        .copied()
        .reduce(|cur, cand| {
            let better = cand.1 < cur.1
                || (cand.1 == cur.1
                    && (cand.0.lambda > cur.0.lambda || (cand.0.lambda == cur.0.lambda && cand.0.tau > cur.0.tau)));
            if better {
                cand
            } else {
                cur
            }
        })
        .expect("grid is nonempty");
    Ok(CvResult { best, best_loss, table })
}

/// Solve in the dual and predict k̃ₓ(K̃ + λI)⁻¹y directly, bypassing the
/// weight vector.
pub fn dual_predictions(train: &FeatureBatch, test: &FeatureBatch, y: &[f64], lambda: f64) -> Result<Vec<f64>> {
    let n = train.n();
    let mut a = train.gram();
    for i in 0..n {
        a[(i, i)] += lambda;
    }
    let chol = a
        .cholesky()
        .ok_or_else(|| Error::NumericalFailure("dual system is not positive definite".into()))?;
    let alpha = chol.solve(&DVector::from_column_slice(y));
    let rows_tr = feature_rows(train)?;
    let rows_te = feature_rows(test)?;
    Ok(rows_te
        .iter()
        .map(|zx| {
            rows_tr
                .iter()
                .zip(alpha.iter())
                .map(|(zi, a)| a * sparse_dot(zx, zi))
                .sum()
        })
        .collect())
}
