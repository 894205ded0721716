//! Random Fourier (complex and real) and random binning feature maps.
//!
//! A map with D copies sends a point x ∈ ℝᵈ to a feature vector z(x) whose
//! inner products ⟨z(x), z(x′)⟩ are unbiased estimates of k(x − x′). The
//! 1/√D normalization is folded into the feature values.

use crate::distributions::{aux_sample, AuxKind};
use crate::error::{Error, Result};
use crate::kernels::{KernelSpec, ShiftInvariantKernel};
use crate::rng::{derive_seed, RandomStream};
use crate::DistributionSpec;
use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MapKind {
    FourierComplex,
    FourierReal,
    Binning,
}

impl MapKind {
    pub const ALL: [MapKind; 3] = [MapKind::FourierComplex, MapKind::FourierReal, MapKind::Binning];

    pub fn name(&self) -> &'static str {
        match self {
            MapKind::FourierComplex => "rf-complex",
            MapKind::FourierReal => "rf",
            MapKind::Binning => "rb",
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MapKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rf-complex" | "fourier-complex" => Ok(MapKind::FourierComplex),
            "rf" | "fourier" | "fourier-real" => Ok(MapKind::FourierReal),
            "rb" | "binning" => Ok(MapKind::Binning),
            other => Err(Error::InvalidParameter(format!("unknown map kind '{other}'"))),
        }
    }
}

/// The kernel a map approximates. Fourier maps support the Laplace
/// (1-norm) and Gaussian kernels; binning supports any Polya kernel, with
/// Laplace(σ) identified with the gamma s = 2, θ = σ kernel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MapKernel {
    Polya(KernelSpec),
    /// exp(−‖x − x′‖₁ / σ)
    Laplace {
        sigma: f64,
    },
    /// exp(−‖x − x′‖² / (2σ²))
    Gaussian {
        sigma: f64,
    },
}

impl MapKernel {
    /// Frequency law whose characteristic function is the kernel.
    pub fn frequency_law(&self) -> Result<AuxKind> {
        match *self {
            MapKernel::Laplace { sigma } => Ok(AuxKind::Cauchy { scale: 1.0 / sigma }),
            MapKernel::Gaussian { sigma } => Ok(AuxKind::Normal { stddev: 1.0 / sigma }),
            MapKernel::Polya(spec) => match spec.dist {
                DistributionSpec::Gamma { shape: 2.0, scale } => Ok(AuxKind::Cauchy {
                    scale: spec.rho / scale,
                }),
                _ => Err(Error::InvalidParameter(format!(
                    "random Fourier sampling is only available for the Laplace and Gaussian kernels, not {spec}"
                ))),
            },
        }
    }

    /// Polya kernel used to draw bin spacings.
    pub fn binning_spec(&self) -> Result<KernelSpec> {
        match *self {
            MapKernel::Polya(spec) => Ok(spec),
            MapKernel::Laplace { sigma } => Ok(KernelSpec::new(DistributionSpec::Gamma {
                shape: 2.0,
                scale: sigma,
            })),
            MapKernel::Gaussian { .. } => Err(Error::InvalidParameter(
                "the Gaussian kernel is not a Polya kernel; random binning does not apply".into(),
            )),
        }
    }

    /// One-dimensional profile k(r) along a coordinate, when the kernel
    /// factorizes over coordinates.
    pub fn eval_1d(&self, r: f64) -> f64 {
        match *self {
            MapKernel::Polya(spec) => spec.eval_kernel(r),
            MapKernel::Laplace { sigma } => (-r.abs() / sigma).exp(),
            MapKernel::Gaussian { sigma } => (-0.5 * (r / sigma).powi(2)).exp(),
        }
    }
}

impl ShiftInvariantKernel for MapKernel {
    fn eval_diff(&self, diff: &[f64]) -> f64 {
        diff.iter().map(|&d| self.eval_1d(d)).product()
    }
}

impl fmt::Display for MapKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapKernel::Polya(spec) => write!(f, "{spec}"),
            MapKernel::Laplace { sigma } => write!(f, "laplace:sigma={sigma}"),
            MapKernel::Gaussian { sigma } => write!(f, "gaussian:sigma={sigma}"),
        }
    }
}

impl FromStr for MapKernel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (fam, rest) = s.split_once(':').unwrap_or((s, ""));
        let fam = fam.to_ascii_lowercase();
        if fam == "laplace" || fam == "gaussian" {
            let mut sigma = 1.0;
            for item in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                match item.split_once('=') {
                    Some(("sigma", v)) => {
                        sigma = v
                            .trim()
                            .parse()
                            .map_err(|_| Error::InvalidParameter(format!("bad sigma '{v}'")))?
                    }
                    _ => return Err(Error::InvalidParameter(format!("unknown option '{item}' for {fam}"))),
                }
            }
            if !(sigma > 0.0 && f64::is_finite(sigma)) {
                return Err(Error::InvalidParameter(format!("sigma must be positive, got {sigma}")));
            }
            return Ok(if fam == "laplace" {
                MapKernel::Laplace { sigma }
            } else {
                MapKernel::Gaussian { sigma }
            });
        }
        Ok(MapKernel::Polya(s.parse()?))
    }
}

/// How binning maps turn bin tuples into feature columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BinStorage {
    /// Exact vocabulary: every distinct (copy, bin tuple) gets its own column.
    Exact,
    /// 64-bit hash reduced to `bits` bits. Collisions bias the kernel
    /// estimate upward.
    Hashed { bits: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeatureMapConfig {
    pub kind: MapKind,
    pub copies: usize,
    pub seed: u64,
    pub dim: usize,
    pub kernel: MapKernel,
    pub bin_storage: BinStorage,
}

impl FeatureMapConfig {
    pub fn new(kind: MapKind, kernel: MapKernel, copies: usize, dim: usize, seed: u64) -> Self {
        Self {
            kind,
            copies,
            seed,
            dim,
            kernel,
            bin_storage: BinStorage::Exact,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.copies == 0 {
            return Err(Error::InvalidParameter("copies must be at least 1".into()));
        }
        if self.dim == 0 {
            return Err(Error::InvalidParameter("dim must be at least 1".into()));
        }
        if let BinStorage::Hashed { bits } = self.bin_storage {
            if !(1..=40).contains(&bits) {
                return Err(Error::InvalidParameter(format!(
                    "hash bits must be in 1..=40, got {bits}"
                )));
            }
        }
        match self.kind {
            MapKind::Binning => self.kernel.binning_spec().map(|_| ()),
            _ => self.kernel.frequency_law().map(|_| ()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierMapState {
    /// D × d, row-major by copy.
    pub frequencies: Vec<f64>,
    /// One offset per copy in [0, 2π); empty for the complex map.
    pub offsets: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VocabEntry {
    pub copy: usize,
    pub bins: Vec<i64>,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "Vec<VocabEntry>", into = "Vec<VocabEntry>")]
pub struct Vocabulary {
    map: HashMap<(usize, Vec<i64>), usize>,
}

impl Vocabulary {
    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, copy: usize, bins: &[i64]) -> Option<usize> {
        self.map.get(&(copy, bins.to_vec())).copied()
    }
}

impl From<Vec<VocabEntry>> for Vocabulary {
    fn from(entries: Vec<VocabEntry>) -> Self {
        Self {
            map: entries.into_iter().map(|e| ((e.copy, e.bins), e.column)).collect(),
        }
    }
}

impl From<Vocabulary> for Vec<VocabEntry> {
    fn from(v: Vocabulary) -> Self {
        let mut out: Vec<VocabEntry> = v
            .map
            .into_iter()
            .map(|((copy, bins), column)| VocabEntry { copy, bins, column })
            .collect();
        out.sort_by_key(|e| e.column);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinningMapState {
    /// D × d spacings w drawn from the kernel's distribution, scaled by 1/ρ.
    pub spacings: Vec<f64>,
    /// D × d offsets, each uniform on [0, w).
    pub offsets: Vec<f64>,
    pub vocabulary: Vocabulary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum MapState {
    Fourier(FourierMapState),
    Binning(BinningMapState),
}

/// A built feature map: configuration plus the sampled randomness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureMap {
    pub config: FeatureMapConfig,
    pub state: MapState,
}

/// Feature vectors for n points. Dense layouts are point-major: the
/// features of point i occupy `values[i * rows .. (i + 1) * rows]`.
#[derive(Debug, Clone, PartialEq)]
pub enum FeatureBatch {
    DenseReal {
        rows: usize,
        n: usize,
        values: Vec<f64>,
    },
    DenseComplex {
        rows: usize,
        n: usize,
        re: Vec<f64>,
        im: Vec<f64>,
    },
    /// Per point, (column, value) pairs sorted by column.
    Sparse {
        columns: usize,
        points: Vec<Vec<(usize, f64)>>,
    },
}

impl FeatureMap {
    /// Draw the D copies. Copy l uses its own stream derived from the
    /// seed, so the result does not depend on scheduling.
    pub fn build(config: FeatureMapConfig) -> Result<Self> {
        config.validate()?;
        let d = config.dim;
        let seed = config.seed;
        let state = match config.kind {
            MapKind::FourierComplex | MapKind::FourierReal => {
                let law = config.kernel.frequency_law()?;
                let real = config.kind == MapKind::FourierReal;
                let per_copy: Vec<(Vec<f64>, f64)> = (0..config.copies)
                    .into_par_iter()
                    .map(|l| {
                        let mut s = RandomStream::derive(seed, &[l as u64]);
                        let w = aux_sample(law, d, &mut s);
                        let b = if real { s.uniform_range(0.0, 2.0 * PI) } else { 0.0 };
                        (w, b)
                    })
                    .collect();
                let mut frequencies = Vec::with_capacity(config.copies * d);
                let mut offsets = Vec::new();
                for (w, b) in per_copy {
                    frequencies.extend(w);
                    if real {
                        offsets.push(b);
                    }
                }
                MapState::Fourier(FourierMapState { frequencies, offsets })
            }
            MapKind::Binning => {
                let spec = config.kernel.binning_spec()?;
                let per_copy: Vec<Vec<(f64, f64)>> = (0..config.copies)
                    .into_par_iter()
                    .map(|l| {
                        let mut s = RandomStream::derive(seed, &[l as u64]);
                        (0..d)
                            .map(|_| {
                                let w = spec.dist.sample(&mut s) / spec.rho;
                                let b = s.uniform_range(0.0, w);
                                (w, b)
                            })
                            .collect()
                    })
                    .collect();
                let (spacings, offsets) = per_copy.into_iter().flatten().unzip();
                MapState::Binning(BinningMapState {
                    spacings,
                    offsets,
                    vocabulary: Vocabulary::default(),
                })
            }
        };
        Ok(Self { config, state })
    }

    /// Number of feature columns currently produced.
    pub fn feature_count(&self) -> usize {
        match &self.state {
            MapState::Fourier(_) => self.config.copies,
            MapState::Binning(b) => match self.config.bin_storage {
                BinStorage::Exact => b.vocabulary.len(),
                BinStorage::Hashed { bits } => 1usize << bits,
            },
        }
    }

    fn check_dims(&self, points: &[Vec<f64>]) -> Result<()> {
        for p in points {
            if p.len() != self.config.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.config.dim,
                    got: p.len(),
                });
            }
        }
        Ok(())
    }

    /// Map each point. Binning maps add unseen bins to the vocabulary,
    /// assigning new columns copy by copy in sorted bin order.
    pub fn featurize(&mut self, points: &[Vec<f64>]) -> Result<FeatureBatch> {
        self.check_dims(points)?;
        let cfg = self.config;
        let dd = cfg.copies;
        let d = cfg.dim;
        let n = points.len();
        match &mut self.state {
            MapState::Fourier(st) => {
                let norm = 1.0 / (dd as f64).sqrt();
                let freqs = &st.frequencies;
                let phases: Vec<f64> = points
                    .par_iter()
                    .flat_map_iter(|x| {
                        (0..dd).map(move |l| {
                            let w = &freqs[l * d..(l + 1) * d];
                            w.iter().zip(x).map(|(a, b)| a * b).sum::<f64>()
                        })
                    })
                    .collect();
                if cfg.kind == MapKind::FourierReal {
                    let scale = (2.0 / dd as f64).sqrt();
                    let values = phases
                        .iter()
                        .enumerate()
                        .map(|(idx, &ph)| scale * (ph + st.offsets[idx % dd]).cos())
                        .collect();
                    Ok(FeatureBatch::DenseReal { rows: dd, n, values })
                } else {
                    let re = phases.iter().map(|ph| norm * ph.cos()).collect();
                    let im = phases.iter().map(|ph| norm * ph.sin()).collect();
                    Ok(FeatureBatch::DenseComplex { rows: dd, n, re, im })
                }
            }
            MapState::Binning(st) => {
                let value = 1.0 / (dd as f64).sqrt();
                // bins[l][i] is the bin tuple of point i under copy l
                let bins: Vec<Vec<Vec<i64>>> = (0..dd)
                    .into_par_iter()
                    .map(|l| {
                        let w = &st.spacings[l * d..(l + 1) * d];
                        let b = &st.offsets[l * d..(l + 1) * d];
                        points
                            .iter()
                            .map(|x| (0..d).map(|j| ((x[j] - b[j]) / w[j]).floor() as i64).collect())
                            .collect()
                    })
                    .collect();
                let columns: Vec<Vec<usize>> = match cfg.bin_storage {
                    BinStorage::Exact => {
                        let vocab = &mut st.vocabulary.map;
                        for (l, per_point) in bins.iter().enumerate() {
                            let mut fresh: Vec<&Vec<i64>> = per_point
                                .iter()
                                .filter(|t| !vocab.contains_key(&(l, (*t).clone())))
                                .collect();
                            fresh.sort();
                            fresh.dedup();
                            for t in fresh {
                                let next = vocab.len();
                                vocab.insert((l, t.clone()), next);
                            }
                        }
                        bins.iter()
                            .enumerate()
                            .map(|(l, per_point)| per_point.iter().map(|t| vocab[&(l, t.clone())]).collect())
                            .collect()
                    }
                    BinStorage::Hashed { bits } => bins
                        .iter()
                        .enumerate()
                        .map(|(l, per_point)| per_point.iter().map(|t| hash_bin(l, t, bits)).collect())
                        .collect(),
                };
                let points_out = (0..n)
                    .map(|i| {
                        let mut entries: Vec<(usize, f64)> = (0..dd).map(|l| (columns[l][i], value)).collect();
                        entries.sort_by_key(|e| e.0);
                        merge_duplicates(entries)
                    })
                    .collect();
                Ok(FeatureBatch::Sparse {
                    columns: self.feature_count(),
                    points: points_out,
                })
            }
        }
    }
}

fn hash_bin(copy: usize, bins: &[i64], bits: u32) -> usize {
    let mut ids = Vec::with_capacity(bins.len() + 1);
    ids.push(copy as u64);
    ids.extend(bins.iter().map(|&b| b as u64));
    (derive_seed(0x5EED, &ids) >> (64 - bits)) as usize
}

fn merge_duplicates(entries: Vec<(usize, f64)>) -> Vec<(usize, f64)> {
    let mut out: Vec<(usize, f64)> = Vec::with_capacity(entries.len());
    for (c, v) in entries {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 += v,
            _ => out.push((c, v)),
        }
    }
    out
}

pub(crate) fn sparse_dot(a: &[(usize, f64)], b: &[(usize, f64)]) -> f64 {
    let (mut i, mut j) = (0, 0);
    let mut acc = 0.0;
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += a[i].1 * b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

impl FeatureBatch {
    pub fn n(&self) -> usize {
        match self {
            FeatureBatch::DenseReal { n, .. } | FeatureBatch::DenseComplex { n, .. } => *n,
            FeatureBatch::Sparse { points, .. } => points.len(),
        }
    }

    /// Number of feature columns (rows of Z).
    pub fn feature_count(&self) -> usize {
        match self {
            FeatureBatch::DenseReal { rows, .. } | FeatureBatch::DenseComplex { rows, .. } => *rows,
            FeatureBatch::Sparse { columns, .. } => *columns,
        }
    }

    /// Real part of ⟨z(xᵢ), z(xⱼ)⟩.
    pub fn dot(&self, i: usize, j: usize) -> f64 {
        self.dot_complex(i, j).0
    }

    /// ⟨z(xᵢ), z(xⱼ)⟩ = Σ z(xᵢ) conj(z(xⱼ)) as (re, im).
    pub fn dot_complex(&self, i: usize, j: usize) -> (f64, f64) {
        match self {
            FeatureBatch::DenseReal { rows, values, .. } => {
                let a = &values[i * rows..(i + 1) * rows];
                let b = &values[j * rows..(j + 1) * rows];
                (a.iter().zip(b).map(|(x, y)| x * y).sum(), 0.0)
            }
            FeatureBatch::DenseComplex { rows, re, im, .. } => {
                let (ar, ai) = (&re[i * rows..(i + 1) * rows], &im[i * rows..(i + 1) * rows]);
                let (br, bi) = (&re[j * rows..(j + 1) * rows], &im[j * rows..(j + 1) * rows]);
                let mut sr = 0.0;
                let mut si = 0.0;
                for l in 0..*rows {
                    sr += ar[l] * br[l] + ai[l] * bi[l];
                    si += ai[l] * br[l] - ar[l] * bi[l];
                }
                (sr, si)
            }
            FeatureBatch::Sparse { points, .. } => (sparse_dot(&points[i], &points[j]), 0.0),
        }
    }

    /// K̃ = ZᴴZ, real part.
    pub fn gram(&self) -> DMatrix<f64> {
        let n = self.n();
        let mut k = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = self.dot(i, j);
                k[(i, j)] = v;
                k[(j, i)] = v;
            }
        }
        k
    }

    /// K̃ = ZᴴZ as separate real and imaginary parts.
    pub fn gram_complex(&self) -> (DMatrix<f64>, DMatrix<f64>) {
        let n = self.n();
        let mut re = DMatrix::zeros(n, n);
        let mut im = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let (a, b) = self.dot_complex(i, j);
                re[(i, j)] = a;
                re[(j, i)] = a;
                im[(i, j)] = b;
                im[(j, i)] = -b;
            }
        }
        (re, im)
    }

    /// Features of point i as (column, value) pairs. Complex batches are
    /// rejected: learning uses real features.
    pub fn row_entries(&self, i: usize) -> Result<Vec<(usize, f64)>> {
        match self {
            FeatureBatch::DenseReal { rows, values, .. } => {
                Ok(values[i * rows..(i + 1) * rows].iter().copied().enumerate().collect())
            }
            FeatureBatch::Sparse { points, .. } => Ok(points[i].clone()),
            FeatureBatch::DenseComplex { .. } => Err(Error::InvalidParameter(
                "complex features cannot be used for learning; use the real Fourier map".into(),
            )),
        }
    }
}

/// Variance of a single-copy estimate k̃ of k(x − x′). `k_2r` is k(2(x − x′)),
/// needed by the real Fourier map.
pub fn variance_theory(kind: MapKind, k: f64, k_2r: Option<f64>) -> Result<f64> {
    match kind {
        MapKind::FourierComplex => Ok(1.0 - k * k),
        MapKind::FourierReal => {
            let k2 = k_2r.ok_or(Error::MissingArgument("k_2r"))?;
            Ok(1.0 + 0.5 * k2 - k * k)
        }
        MapKind::Binning => Ok(k - k * k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laplace_cfg(kind: MapKind, copies: usize, dim: usize) -> FeatureMapConfig {
        FeatureMapConfig::new(kind, MapKernel::Laplace { sigma: 1.0 }, copies, dim, 7)
    }

    #[test]
    fn same_seed_same_state() {
        for kind in MapKind::ALL {
            let a = FeatureMap::build(laplace_cfg(kind, 5, 3)).unwrap();
            let b = FeatureMap::build(laplace_cfg(kind, 5, 3)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn binning_offsets_inside_spacing() {
        let cfg = FeatureMapConfig::new(
            MapKind::Binning,
            MapKernel::Polya(KernelSpec::new(DistributionSpec::Gamma { shape: 2.0, scale: 1.0 })),
            3,
            2,
            1,
        );
        let m = FeatureMap::build(cfg).unwrap();
        let MapState::Binning(st) = &m.state else { panic!() };
        assert_eq!(st.spacings.len(), 6);
        for (w, b) in st.spacings.iter().zip(&st.offsets) {
            assert!(*w > 0.0 && *b >= 0.0 && b < w);
        }
        assert!(st.vocabulary.is_empty());
    }

    #[test]
    fn self_inner_products() {
        let pts = vec![vec![0.3, -0.2], vec![0.3, -0.2], vec![1.0, 2.0]];
        let mut rb = FeatureMap::build(laplace_cfg(MapKind::Binning, 8, 2)).unwrap();
        let z = rb.featurize(&pts).unwrap();
        assert!((z.dot(0, 0) - 1.0).abs() < 1e-15);
        assert!((z.dot(0, 1) - 1.0).abs() < 1e-15);
        let mut rf = FeatureMap::build(laplace_cfg(MapKind::FourierComplex, 8, 2)).unwrap();
        let z = rf.featurize(&pts).unwrap();
        assert!((z.dot(2, 2) - 1.0).abs() < 1e-14);
        let mut rr = FeatureMap::build(laplace_cfg(MapKind::FourierReal, 8, 2)).unwrap();
        let z = rr.featurize(&pts).unwrap();
        let g = z.gram();
        assert!(g[(0, 0)] >= 0.0 && g[(0, 0)] <= 2.0);
    }

    #[test]
    fn variance_formulas() {
        assert_eq!(variance_theory(MapKind::Binning, 0.5, None).unwrap(), 0.25);
        assert_eq!(variance_theory(MapKind::FourierComplex, 1.0, None).unwrap(), 0.0);
        let e1 = (-1f64).exp();
        let v = variance_theory(MapKind::FourierReal, e1, Some(e1 * e1)).unwrap();
        assert!((v - (1.0 - 0.5 * e1 * e1)).abs() < 1e-15);
        assert!(variance_theory(MapKind::FourierReal, 0.5, None).is_err());
    }

    #[test]
    fn gaussian_not_binnable() {
        let cfg = FeatureMapConfig::new(MapKind::Binning, MapKernel::Gaussian { sigma: 1.0 }, 2, 1, 0);
        assert!(FeatureMap::build(cfg).is_err());
    }

    #[test]
    fn kernel_text_form() {
        let k: MapKernel = "laplace:sigma=2".parse().unwrap();
        assert_eq!(k, MapKernel::Laplace { sigma: 2.0 });
        let k: MapKernel = "gamma:s=2;tau=1".parse().unwrap();
        assert!(matches!(k, MapKernel::Polya(_)));
        assert_eq!(k.to_string(), "gamma:s=2,theta=1;tau=1");
    }
}
