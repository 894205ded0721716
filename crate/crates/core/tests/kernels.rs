mod common;

use polya_core::kernels::{atomic_kernel, eval_ft_numeric, eval_kernel_numeric};
use polya_core::{DistributionSpec, KernelSpec};
use std::f64::consts::PI;

#[test]
fn closed_forms_match_stieltjes_integral() {
    for d in common::catalog() {
        let k = KernelSpec::new(d);
        for r in common::R_GRID {
            let a = k.eval_kernel(r);
            let b = eval_kernel_numeric(&d, r).unwrap();
            assert!((a - b).abs() <= 1e-8, "{d} r={r}: {a} vs {b}");
        }
    }
}

#[test]
fn gamma_two_grid() {
    let d = DistributionSpec::Gamma { shape: 2.0, scale: 1.0 };
    let k = KernelSpec::new(d);
    for i in 0..=100 {
        let r = i as f64 * 0.1;
        assert!((k.eval_kernel(r) - eval_kernel_numeric(&d, r).unwrap()).abs() < 1e-8);
    }
}

#[test]
fn degenerate_atom() {
    for r in [0.0, 0.5, 1.5, 2.0, 3.0] {
        assert_eq!(atomic_kernel(&[(2.0, 1.0)], r), (1.0 - r / 2.0).max(0.0));
    }
}

#[test]
fn polya_shape() {
    for d in common::catalog() {
        let k = KernelSpec::new(d);
        assert_eq!(k.eval_kernel(0.0), 1.0);
        let h = 0.05;
        let vals: Vec<f64> = (0..=200).map(|i| k.eval_kernel(i as f64 * h)).collect();
        for w in vals.windows(3) {
            assert!(w[1] <= w[0] + 1e-12, "{d} not monotone");
            assert!(w[0] - 2.0 * w[1] + w[2] >= -1e-9, "{d} not convex");
        }
        assert!(vals.iter().all(|v| (0.0..=1.0).contains(v)));
        assert_eq!(k.eval_kernel(-1.3), k.eval_kernel(1.3));
    }
}

#[test]
fn cdf_roundtrip() {
    for d in common::catalog() {
        let k = KernelSpec::new(d);
        for i in 1..=40 {
            let x = i as f64 * 0.25 + 0.013;
            let a = k.kernel_to_cdf(x);
            let b = d.cdf(x);
            assert!((a - b).abs() <= 1e-6, "{d} x={x}: {a} vs {b}");
        }
    }
}

#[test]
fn cdf_roundtrip_examples() {
    let e = KernelSpec::new(DistributionSpec::Exponential { scale: 2.0 });
    for x in [0.1, 1.0, 4.0] {
        assert!((e.kernel_to_cdf(x) - (1.0 - (-x / 2.0f64).exp())).abs() < 1e-12);
    }
    let p = KernelSpec::new(DistributionSpec::ShiftedPoisson { mu: 2.0 });
    assert!((p.kernel_to_cdf(1.5) - (-2f64).exp()).abs() < 1e-14);
    assert!(e.kernel_to_cdf(1e-12) < 1e-10);
}

#[test]
fn area_equals_mean() {
    for d in common::catalog() {
        let k = KernelSpec::new(d);
        let area = k.area_under_curve().unwrap();
        assert!((area - d.mean()).abs() <= 1e-6, "{d}: {area} vs {}", d.mean());
        let ft0 = k.eval_ft(0.0).unwrap().value;
        assert!((ft0 - d.mean()).abs() <= 1e-8);
    }
    let k = KernelSpec::with_rho(DistributionSpec::Gamma { shape: 2.0, scale: 1.0 }, 2.0).unwrap();
    assert!((k.area_under_curve().unwrap() - 1.0).abs() < 1e-6);
}

#[test]
fn ft_closed_forms_match_numeric() {
    use DistributionSpec::*;
    let cases = [
        ShiftedPoisson { mu: 1.0 },
        ShiftedPoisson { mu: 3.0 },
        Gamma { shape: 1.0, scale: 1.0 },
        Gamma { shape: 2.0, scale: 1.0 },
        Gamma { shape: 3.0, scale: 0.5 },
        Chi { dof: 2 },
        Chi { dof: 3 },
        Rayleigh { sigma: 1.0 },
        Nakagami { m: 1.0, omega: 1.0 },
        Nakagami { m: 1.5, omega: 2.0 },
    ];
    for d in cases {
        let k = KernelSpec::new(d);
        for t in [0.1, 0.5, 1.0, 2.0, PI, 7.0] {
            let a = k.eval_ft(t).unwrap().value;
            let b = eval_ft_numeric(&d, t).unwrap();
            assert!((a - b).abs() <= 1e-6, "{d} t={t}: {a} vs {b}");
        }
    }
}

#[test]
fn ft_spot_values() {
    let g = DistributionSpec::Gamma { shape: 1.0, scale: 1.0 };
    assert!((eval_ft_numeric(&g, 1.0).unwrap() - 2f64.ln()).abs() < 1e-6);
    let p = DistributionSpec::ShiftedPoisson { mu: 1.0 };
    let expect = (2.0 - 2.0 * (-2f64).exp()) / (PI * PI);
    assert!((eval_ft_numeric(&p, PI).unwrap() - expect).abs() < 1e-6);
    let r = KernelSpec::new(DistributionSpec::Rayleigh { sigma: 1.0 });
    let expect = (2.0 * PI).sqrt() / 4.0 * (1.0 - (-2f64).exp());
    assert!((r.eval_ft(2.0).unwrap().value - expect).abs() < 1e-14);
}

#[test]
fn half_normal_transform_self_consistent() {
    for sigma in [0.5, 1.0, 2.0] {
        let d = DistributionSpec::HalfNormal { sigma };
        let k = KernelSpec::new(d);
        for t in [0.05, 0.5, 1.0, 3.0, 10.0] {
            let a = k.eval_ft(t).unwrap().value;
            let b = eval_ft_numeric(&d, t).unwrap();
            assert!((a - b).abs() <= 1e-5, "sigma={sigma} t={t}: {a} vs {b}");
        }
    }
}

#[test]
fn ft_nonnegative_and_numeric_fallbacks() {
    for d in common::catalog() {
        let k = KernelSpec::new(d);
        for t in [0.3, 1.0, 4.0] {
            let v = k.eval_ft(t).unwrap().value;
            assert!(v >= 0.0, "{d} t={t}: {v}");
        }
    }
}

#[test]
fn scaling_rules() {
    for d in common::catalog() {
        let rho = 1.7;
        let base = KernelSpec::new(d);
        let scaled = KernelSpec::with_rho(d, rho).unwrap();
        for r in [0.1, 0.9, 3.0] {
            assert!((scaled.eval_kernel(r) - base.eval_kernel(rho * r)).abs() <= 1e-12);
        }
        for t in [0.4, 2.0] {
            let a = scaled.eval_ft(t).unwrap().value;
            let b = base.eval_ft(t / rho).unwrap().value / rho;
            assert!((a - b).abs() <= 1e-12, "{d}");
        }
    }
}

#[test]
fn tau_sets_rho() {
    let d = DistributionSpec::Rayleigh { sigma: 1.0 };
    let k = KernelSpec::with_tau(d, 0.5).unwrap();
    assert_eq!(k.rho, d.mean() / 0.5);
    assert!((k.area_under_curve().unwrap() - 0.5).abs() < 1e-6);
}

#[test]
fn decomposition_reproduces_kernel_and_transform() {
    for d in common::catalog() {
        let Ok(dec) = d.decompose() else { continue };
        let k = KernelSpec::new(d);
        for r in [0.1, 0.7, 2.0, 5.0] {
            let a = dec.kernel(&d, r);
            assert!((a - k.eval_kernel(r)).abs() < 1e-8, "{d} r={r}");
        }
        for t in [0.5, 2.0] {
            let a = dec.fourier(t).unwrap();
            let b = k.eval_ft(t).unwrap().value;
            assert!((a - b).abs() < 1e-6, "{d} t={t}: {a} vs {b}");
        }
    }
}
