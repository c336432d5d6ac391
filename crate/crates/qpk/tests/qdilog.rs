use std::f64::consts::PI;

use num_complex::Complex64 as C;
use qpk::qdilog::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn ratio(h: f64, eps: i8, z: C) -> C {
    phi_mdc(h, eps, z, Method::Ratio).unwrap().value
}

#[test]
fn psi_q_shift() {
    let (q, z) = (c(0.3, 0.0), c(1.7, 0.0));
    let a = psi_q(q, q * q * z).unwrap().value;
    let b = psi_q(q, z).unwrap().value;
    assert!((a / b - (1.0 + q * z)).norm() < 1e-14);
}

#[test]
fn psi_q_against_log_series() {
    let oracle: f64 = (0..200).map(|n| -(0.5f64.powi(2 * n + 1)).ln_1p()).sum::<f64>().exp();
    let v = psi_q(c(0.5, 0.0), c(1.0, 0.0)).unwrap();
    assert!((v.value - oracle).norm() < 1e-12);
    assert!(v.abs_err < 1e-12);
}

#[test]
fn psi_q_pole_is_reported() {
    let q = 0.5;
    let z = c(-1.0 / q, 0.0);
    assert!(matches!(psi_q(c(q, 0.0), z), Err(QdilogError::PoleProximity { .. })));
}

#[test]
fn phi_hbar_one_at_zero_matches_ratio_limit() {
    let at = |d: f64| phi_ratio_complex(c(d, -1.0), c(0.0, 0.0)).unwrap().value;
    let extrapolated = 2.0 * at(0.005) - at(0.01);
    let v = phi_hbar(1.0, c(0.0, 0.0), &ContourSpec::for_phi_hbar(1.0)).unwrap().value;
    assert!((v - extrapolated).norm() < 1e-4, "{v} vs {extrapolated}");
    assert!((v - c(0.965_925_826_289_068, -0.258_819_045_102_521)).norm() < 1e-12);
}

#[test]
fn phi_hbar_shift_by_two_pi_i_hbar() {
    let (h, z) = (0.4, c(0.3, 0.1));
    let s = ContourSpec::for_phi_hbar(h);
    let lhs = phi_hbar(h, z, &s).unwrap().value * (1.0 + c(0.0, PI * h).exp() * z.exp());
    let rhs = phi_hbar(h, z + c(0.0, 2.0 * PI * h), &s).unwrap().value;
    assert!((lhs - rhs).norm() < 1e-8);
}

#[test]
fn phi_hbar_shift_by_two_pi_i() {
    let (h, z) = (0.4, c(0.2, 0.0));
    let s = ContourSpec::for_phi_hbar(h);
    assert!(matches!(phi_hbar(h, z + c(0.0, 2.0 * PI), &s), Err(QdilogError::StripViolation { .. })));
    let lhs = phi_hbar(h, z, &s).unwrap().value * (1.0 + c(0.0, PI / h).exp() * (z / h).exp());
    let rhs = phi_hbar_continued(h, z + c(0.0, 2.0 * PI)).unwrap().value;
    assert!((lhs - rhs).norm() < 1e-8);
}

#[test]
fn phi_hbar_is_unimodular_on_reals() {
    let h = 0.4;
    let s = ContourSpec::for_phi_hbar(h);
    for x in [-3.0, -0.5, 0.0, 1.2, 4.0] {
        let v = phi_hbar(h, c(x, 0.0), &s).unwrap().value;
        assert!((v.norm() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn truncation_doubling_is_stable() {
    let mut s = ContourSpec::for_phi_mdc(0.7, 1);
    let z = c(0.3, -0.2);
    let a = phi_mdc_contour(0.7, 1, z, &s).unwrap().value;
    s.truncation_radius *= 8.0;
    let b = phi_mdc_contour(0.7, 1, z, &s).unwrap().value;
    assert!((a - b).norm() < s.quadrature_tolerance * 10.0);
}

#[test]
fn difference_equation_example() {
    let (h, z) = (0.4, c(0.5, 0.3));
    let lhs = ratio(h, 1, z - 2.0 * PI * h);
    let rhs = (1.0 + (-PI * h).exp() * z.exp()) * ratio(h, 1, z);
    assert!((lhs - rhs).norm() < 1e-8);
}

#[test]
fn difference_equations_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for &h in &[0.3, 0.4, 1.0, 2.5] {
        for eps in [1i8, -1] {
            let e = eps as f64;
            for _ in 0..25 {
                let z = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
                let lhs = ratio(h, eps, z - 2.0 * PI * e * h);
                let rhs = (1.0 + (-PI * e * h).exp() * z.exp()) * ratio(h, eps, z);
                assert!((lhs - rhs).norm() < 1e-8 * (1.0 + rhs.norm()), "h={h} eps={eps} z={z}");
                let lhs = ratio(h, eps, z + c(0.0, 2.0 * PI));
                let rhs = (1.0 + (PI / (e * h)).exp() * (z / c(0.0, e * h)).exp()) * ratio(h, eps, z);
                assert!((lhs - rhs).norm() < 1e-8 * (1.0 + rhs.norm()), "dual h={h} eps={eps} z={z}");
            }
        }
    }
}

#[test]
fn involutivity_example() {
    let (h, z) = (0.7, c(0.2, 0.1));
    let lhs = ratio(h, 1, z) * ratio(h, 1, -z);
    let rhs = involutivity_constant(h, 1) * (z * z / (-4.0 * PI * h)).exp();
    assert!((lhs - rhs).norm() < 1e-8);
}

#[test]
fn involutivity_constant_closed_form() {
    for &h in &[0.3, 0.4, 1.0, 2.5] {
        for eps in [1i8, -1] {
            let lhs = ratio(h, eps, c(0.0, 0.0)).powi(2);
            assert!((lhs - involutivity_constant(h, eps)).norm() < 1e-10);
        }
    }
}

#[test]
fn contour_and_ratio_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let h = rng.gen_range(0.3..2.5);
        let eps = if rng.gen_bool(0.5) { 1 } else { -1 };
        let z = c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.0..1.0));
        let (a, b, disagree) = phi_mdc_both(h, eps, z, 1e-8).unwrap();
        assert!(!disagree && (a.value - b.value).norm() < 1e-8, "h={h} z={z}");
    }
}

#[test]
fn simple_zero_and_pole() {
    let h = 0.6;
    let zero = c(-PI * h, PI);
    let pole = c(PI * h, -PI);
    let r = |z0: C, d: f64| ratio(h, 1, z0 + d).norm();
    let zs = r(zero, 1e-4) / r(zero, 1e-5);
    let ps = r(pole, 1e-4) / r(pole, 1e-5);
    assert!((zs - 10.0).abs() < 1e-3, "zero ratio {zs}");
    assert!((ps - 0.1).abs() < 1e-5, "pole ratio {ps}");
}

#[test]
fn big_psi_unitarity() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let (x, y) = (rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
        let v = psi_hbar(0.4, x, y).unwrap().value;
        assert!((v.norm() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn big_psi_involutivity() {
    let (h, x, y) = (0.4, 1.1, -0.7);
    let lhs = psi_hbar(h, x, y).unwrap().value * psi_hbar(h, -x, -y).unwrap().value;
    let rhs = c(0.0, -x * y / (PI * h)).exp();
    assert!((lhs - rhs).norm() < 1e-9);
    let t = psi_hbar(h, 0.0, 0.3).unwrap().value * psi_hbar(h, 0.0, -0.3).unwrap().value;
    assert!((t - 1.0).norm() < 1e-12);
}

#[test]
fn big_psi_has_direction_dependent_limit_at_a_pole() {
    let h = 0.6;
    let (x, y) = (PI * h, -PI);
    assert!(matches!(psi_hbar(h, x, y), Err(QdilogError::NoLimit { .. })));
    let d = 1e-7;
    let a = psi_hbar(h, x + d, y).unwrap().value;
    let b = psi_hbar(h, x, y + d).unwrap().value;
    assert!((a + b).norm() < 1e-5, "{a} vs {b}");
    let near = psi_hbar(h, x + 0.3, y - 0.2).unwrap().value;
    assert!((near.norm() - 1.0).abs() < 1e-10);
}

#[test]
fn f_zero_against_contour() {
    let a = f_zero(0.5, 1.0);
    let b = f_zero_contour(0.5, 1.0).unwrap().value;
    assert!((a - b).norm() < 1e-8);
}
