//! Approximation-error and learning experiments over a list of D values.

use crate::data::read_libsvm;
use polya_core::approx::{empirical_error, mean_stderr};
use polya_core::learn::{accuracy, mse, Dataset, Normalizer, OneVsAll, RidgeModel, Solver};
use polya_core::rng::derive_seed;
use polya_core::{Error, FeatureMap, FeatureMapConfig, MapKernel, MapKind, RandomStream, Result};
use serde::Serialize;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TaskKind {
    Regression,
    Binary,
    Multiclass,
}

impl FromStr for TaskKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "regression" => Ok(TaskKind::Regression),
            "binary" => Ok(TaskKind::Binary),
            "multiclass" => Ok(TaskKind::Multiclass),
            other => Err(Error::InvalidParameter(format!("unknown task '{other}'"))),
        }
    }
}

impl TaskKind {
    pub fn metric_name(&self) -> &'static str {
        match self {
            TaskKind::Regression => "mse",
            _ => "accuracy",
        }
    }
}

/// A fitted model of either task type.
#[derive(Debug, Clone, PartialEq, serde::Deserialize, Serialize)]
#[serde(tag = "task")]
pub enum Model {
    Regression(RidgeModel),
    Classification(OneVsAll),
}

impl Model {
    pub fn fit(task: TaskKind, map: FeatureMap, points: &[Vec<f64>], y: &[f64], lambda: f64) -> Result<Self> {
        match task {
            TaskKind::Regression => Ok(Model::Regression(RidgeModel::fit(
                map,
                points,
                y,
                lambda,
                Solver::Auto,
            )?)),
            TaskKind::Binary | TaskKind::Multiclass => {
                let mut classes = y.to_vec();
                classes.sort_by(f64::total_cmp);
                classes.dedup();
                if task == TaskKind::Binary && classes.len() != 2 {
                    return Err(Error::InvalidParameter(format!(
                        "binary task needs exactly 2 labels, found {}",
                        classes.len()
                    )));
                }
                Ok(Model::Classification(OneVsAll::fit(
                    map,
                    points,
                    y,
                    lambda,
                    Solver::Auto,
                )?))
            }
        }
    }

    pub fn predict(&mut self, points: &[Vec<f64>]) -> Result<Vec<f64>> {
        match self {
            Model::Regression(m) => m.predict(points),
            Model::Classification(m) => m.predict(points),
        }
    }

    /// MSE for regression, accuracy for classification.
    pub fn score(&self, pred: &[f64], y: &[f64]) -> f64 {
        match self {
            Model::Regression(_) => mse(pred, y),
            Model::Classification(_) => accuracy(pred, y),
        }
    }
}

/// Normalizer and model saved together by `fit`.
#[derive(Debug, Clone, PartialEq, serde::Deserialize, Serialize)]
pub struct ModelBundle {
    pub dim: usize,
    pub normalizer: Normalizer,
    pub model: Model,
}

impl ModelBundle {
    pub fn predict(&mut self, points: &[Vec<f64>]) -> Result<Vec<f64>> {
        let mut pts = Vec::with_capacity(points.len());
        for p in points {
            if p.len() > self.dim && p[self.dim..].iter().any(|v| *v != 0.0) {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    got: p.len(),
                });
            }
            let mut q = p.clone();
            q.resize(self.dim, 0.0);
            pts.push(self.normalizer.apply(&q));
        }
        self.model.predict(&pts)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// LIBSVM file; when absent, uniform points in [−1, 1]^dim with a smooth
    /// regression target are generated.
    pub data: Option<PathBuf>,
    pub synthetic_n: usize,
    pub synthetic_dim: usize,
    pub task: TaskKind,
    pub methods: Vec<(MapKind, MapKernel)>,
    pub copies: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub lambda: f64,
    pub subsample: Option<usize>,
    pub test_fraction: f64,
    /// At most this many training points enter the kernel matrix.
    pub approx_points: usize,
    /// Also fit and evaluate a model for every (method, D, trial).
    pub learn: bool,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.copies.is_empty() {
            return Err(Error::EmptyInput("D list is empty".into()));
        }
        if self.copies.windows(2).any(|w| w[1] <= w[0]) || self.copies[0] == 0 {
            return Err(Error::InvalidParameter(
                "D list must be positive and strictly ascending".into(),
            ));
        }
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::EmptyInput("no methods".into()));
        }
        if !(self.test_fraction > 0.0 && self.test_fraction < 1.0) {
            return Err(Error::InvalidParameter("test fraction must be in (0, 1)".into()));
        }
        if self.approx_points == 0 {
            return Err(Error::InvalidParameter("approx points must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub method: String,
    pub kernel: String,
    #[serde(rename = "D")]
    pub copies: usize,
    pub theory_rel_sq: f64,
    pub empirical_rel_sq: f64,
    pub stderr_rel_sq: f64,
    pub metric: Option<&'static str>,
    pub metric_value: Option<f64>,
    pub metric_stderr: Option<f64>,
}

/// Smooth target used for generated data.
pub fn synthetic_target(x: &[f64]) -> f64 {
    x.iter().enumerate().map(|(j, v)| ((j + 1) as f64 * v).sin()).sum()
}

fn load(cfg: &ExperimentConfig) -> Result<Dataset> {
    let ds = match &cfg.data {
        Some(path) => read_libsvm(path)?,
        None => {
            let mut s = RandomStream::new(derive_seed(cfg.seed, &[0xDA7A]), 0);
            let points: Vec<Vec<f64>> = (0..cfg.synthetic_n)
                .map(|_| (0..cfg.synthetic_dim).map(|_| s.uniform_range(-1.0, 1.0)).collect())
                .collect();
            let targets = points.iter().map(|p| synthetic_target(p)).collect();
            Dataset::new(points, targets)?
        }
    };
    Ok(match cfg.subsample {
        Some(m) => ds.subsample(m, derive_seed(cfg.seed, &[0x5AB])),
        None => ds,
    })
}

/// Run every (method, D) cell. Rows come out method-major, D ascending.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<Row>> {
    cfg.validate()?;
    let ds = load(cfg)?;
    if ds.len() < 2 {
        return Err(Error::EmptyInput("need at least 2 points".into()));
    }
    let split = ds.split(1.0 - cfg.test_fraction, derive_seed(cfg.seed, &[0x5911]));
    let train = ds.subset(&split.train);
    let test = ds.subset(&split.test);
    let norm = Normalizer::fit(&train.points)?;
    let xtr = norm.apply_all(&train.points);
    let xte = norm.apply_all(&test.points);
    let approx_pts = &xtr[..xtr.len().min(cfg.approx_points)];
    let mut rows = Vec::new();
    for (m, &(kind, kernel)) in cfg.methods.iter().enumerate() {
        for &copies in &cfg.copies {
            let seed = derive_seed(cfg.seed, &[m as u64, copies as u64]);
            let map_cfg = FeatureMapConfig::new(kind, kernel, copies, ds.dim, seed);
            let st = empirical_error(approx_pts, &map_cfg, cfg.trials)?;
            let mut row = Row {
                method: kind.to_string(),
                kernel: kernel.to_string(),
                copies,
                theory_rel_sq: st.theory_rel.powi(2),
                empirical_rel_sq: st.mean_rel_sq,
                stderr_rel_sq: st.stderr_rel_sq,
                metric: None,
                metric_value: None,
                metric_stderr: None,
            };
            if cfg.learn && kind != MapKind::FourierComplex {
                if test.is_empty() {
                    return Err(Error::EmptyInput("test split is empty".into()));
                }
                let scores: Vec<f64> = (0..cfg.trials as u64)
                    .map(|t| {
                        let mut c = map_cfg;
                        c.seed = derive_seed(seed, &[0x1EA2, t]);
                        let mut model = Model::fit(cfg.task, FeatureMap::build(c)?, &xtr, &train.targets, cfg.lambda)?;
                        let pred = model.predict(&xte)?;
                        Ok(model.score(&pred, &test.targets))
                    })
                    .collect::<Result<_>>()?;
                let (mean, se) = mean_stderr(&scores);
                row.metric = Some(cfg.task.metric_name());
                row.metric_value = Some(mean);
                row.metric_stderr = Some(se);
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// CSV text with a header row.
pub fn rows_to_csv(rows: &[Row]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        w.write_record([
            "method",
            "kernel",
            "D",
            "theory_rel_sq",
            "empirical_rel_sq",
            "stderr_rel_sq",
            "metric",
            "metric_value",
            "metric_stderr",
        ])
        .map_err(|e| Error::Io(e.to_string()))?;
    }
    for r in rows {
        w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
