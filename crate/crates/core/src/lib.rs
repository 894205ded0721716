#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Positive-definite kernels built from positively supported distributions,
//! random Fourier and random binning feature maps for them, and tools for
//! measuring how well the maps approximate the kernel.

pub mod approx;
pub mod distributions;
pub mod error;
pub mod feature_maps;
pub mod kernels;
pub mod learn;
pub mod quadrature;
pub mod rng;
pub mod specfun;

pub use approx::KernelMatrix;
pub use distributions::{AuxKind, DistributionSpec, SpecialCaseDecomposition, Tilted};
pub use error::{Error, Result};
pub use feature_maps::{FeatureBatch, FeatureMap, FeatureMapConfig, MapKernel, MapKind};
pub use kernels::{KernelSpec, ShiftInvariantKernel, SpectralValue};
pub use rng::RandomStream;
