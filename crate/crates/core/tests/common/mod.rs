#![allow(dead_code)]

use polya_core::DistributionSpec;
use polya_core::DistributionSpec::*;

/// Three parameter settings for every family.
pub fn catalog() -> Vec<DistributionSpec> {
    vec![
        ShiftedPoisson { mu: 0.5 },
        ShiftedPoisson { mu: 2.0 },
        ShiftedPoisson { mu: 5.0 },
        Gamma { shape: 0.5, scale: 1.0 },
        Gamma { shape: 1.0, scale: 2.0 },
        Gamma { shape: 2.5, scale: 0.7 },
        Gamma { shape: 3.0, scale: 1.0 },
        Nakagami { m: 0.5, omega: 1.0 },
        Nakagami { m: 0.75, omega: 2.0 },
        Nakagami { m: 1.5, omega: 1.0 },
        Weibull { scale: 1.0, shape: 0.7 },
        Weibull { scale: 1.0, shape: 1.0 },
        Weibull { scale: 1.5, shape: 2.5 },
        Exponential { scale: 0.5 },
        Exponential { scale: 1.0 },
        Exponential { scale: 2.0 },
        ChiSquare { dof: 1 },
        ChiSquare { dof: 2 },
        ChiSquare { dof: 5 },
        Chi { dof: 1 },
        Chi { dof: 2 },
        Chi { dof: 4 },
        HalfNormal { sigma: 0.5 },
        HalfNormal { sigma: 1.0 },
        HalfNormal { sigma: 2.0 },
        Rayleigh { sigma: 0.5 },
        Rayleigh { sigma: 1.0 },
        Rayleigh { sigma: 2.0 },
    ]
}

pub const R_GRID: [f64; 8] = [0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0];
