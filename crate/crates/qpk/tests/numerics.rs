use std::f64::consts::PI;

use num_complex::Complex64 as C;
use qpk::numerics::*;
use qpk::qdilog::{phi_mdc, Method};
use qpk_core::coeff::Coeff;
use qpk_core::hopf::Variant;
use qpk_core::reps::{build_a_m, build_f, build_s, build_t, f_argument, find_entry, Equation};
use qpk_core::weylalg::form::named::{big_p, big_q};
use qpk_core::weylalg::*;

fn grid(n: usize, l: f64, slots: u32) -> GridConfig {
    GridConfig::new(n, l, 0.4, slots).unwrap()
}

fn max_diff(a: &GridState, b: &GridState) -> f64 {
    a.data.iter().zip(&b.data).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

#[test]
fn s12_remap_samples_sheared_gaussian() {
    let cfg = grid(16, 12.0, 2);
    let e = Engine::new(cfg.clone());
    let (c, w) = ([0.3, -0.5, 0.2, 0.7], [0.9, 1.1, 0.7, 1.3]);
    let v = gaussian(&cfg, &c, &w);
    let out = e.apply_factor(&Factor::Saso(build_s(1, 2)), &v).unwrap();
    let n = cfg.n as i64;
    let wrap = |k: i64| (k + n / 2).rem_euclid(n) as usize;
    let scale = v.data[0].re / gauss_at(&cfg, &c, &w, [0; 4]);
    for i in (0..cfg.total()).step_by(37) {
        let d = [i / 4096, (i / 256) % 16, (i / 16) % 16, i % 16].map(|k| k as i64 - n / 2);
        let src = [wrap(d[0]), wrap(d[1] + d[3]), wrap(d[2] - d[0]), wrap(d[3])];
        let expect = scale * gauss_at(&cfg, &c, &w, src);
        assert!((out.data[i].re - expect).abs() < 1e-15 && out.data[i].im == 0.0);
    }
}

fn gauss_at(cfg: &GridConfig, c: &[f64; 4], w: &[f64; 4], k: [usize; 4]) -> f64 {
    (0..4).map(|a| (cfg.point(k[a]) - c[a]).powi(2) / (2.0 * w[a] * w[a])).sum::<f64>().mul_add(-1.0, 0.0).exp()
}

#[test]
fn identity_conjugator_is_identity() {
    let cfg = grid(8, 10.0, 2);
    let e = Engine::new(cfg.clone());
    let v = random_gaussians(&cfg, 1, 4).remove(0);
    let id = Saso::on_slots(&[1, 2], IntMatrix::identity(4)).unwrap();
    assert_eq!(e.apply_factor(&Factor::Saso(id), &v).unwrap(), v);
    assert_eq!(e.apply_weyl(&LinForm::zero(), &v).unwrap(), v);
}

#[test]
fn s_pentagon_is_exact_on_random_states() {
    let cfg = grid(8, 20.0, 3);
    let e = Engine::new(cfg.clone());
    let entry = find_entry("s-pentagon").unwrap();
    let vs = random_gaussians(&cfg, 10, 5);
    for r in e.residual(&entry.equations[0], &vs).unwrap() {
        assert_eq!(r, 0.0);
    }
}

#[test]
fn weyl_relation_for_p_and_q() {
    let (pre, sum) = bch_mul(&big_p(1), &big_q(1));
    assert_eq!(pre.exp_arg, -&Coeff::hbar());
    let lhs = Term::weyl(big_p(1)).mul(&Term::weyl(big_q(1)));
    let rhs = Term::scalar(1, pre).mul(&Term::weyl(sum));
    let eq = Equation { label: "e^P e^Q = e^{-πℏ} e^{P+Q}".into(), lhs: lhs.into(), rhs: rhs.into() };
    let cfg = grid(32, 20.0, 1);
    let v = vec![gaussian(&cfg, &[0.0; 2], &[1.0; 2])];
    let r = Engine::new(cfg).residual(&eq, &v).unwrap()[0];
    assert!(r < 1e-4, "{r}");
}

#[test]
fn finite_grid_commutation_phase() {
    let cfg = GridConfig::new(32, 8.0 * PI, 0.5, 1).unwrap();
    let e = Engine::new(cfg.clone());
    let (a, b) = (LinForm::q_t(1).scale(&Coeff::i()), LinForm::p_t(1).scale(&Coeff::i()));
    let v = random_gaussians(&cfg, 1, 9).remove(0);
    let ab = e.apply_weyl(&a, &e.apply_weyl(&b, &v).unwrap()).unwrap();
    let ba = e.apply_weyl(&b, &e.apply_weyl(&a, &v).unwrap()).unwrap();
    let phase = C::new(0.0, PI * 0.5).exp();
    let d: f64 = ab.data.iter().zip(&ba.data).map(|(x, y)| (x - phase * y).norm_sqr()).sum::<f64>().sqrt();
    assert!(d < 1e-12, "{d}");
}

#[test]
fn dilog_inverse_and_norm() {
    let cfg = grid(16, 16.0, 2);
    let e = Engine::new(cfg.clone());
    let d = Dilog::psi_of(&f_argument(Variant::C, 1, 2), 1);
    for v in random_gaussians(&cfg, 3, 2) {
        let w = e.apply_dilog(&d, &v).unwrap();
        assert!((w.norm() - v.norm()).abs() < 1e-12);
        let back = e.apply_dilog(&d.inverse(), &w).unwrap();
        assert!(back.sub(&v).norm() < 1e-12);
    }
}

#[test]
fn f_factor_has_unimodular_frame() {
    let z = f_argument(Variant::C, 1, 2);
    let coords = [Coord::new(1, Axis::T), Coord::new(1, Axis::S), Coord::new(2, Axis::T), Coord::new(2, Axis::S)];
    let x = z.real_part().integer_vector(Kind::Pos, &coords).unwrap();
    let y = z.imag_part().integer_vector(Kind::Mom, &coords).unwrap();
    assert_eq!(x, vec![0, 1, 1, -1]);
    assert_eq!(y, vec![-1, 0, 1, 1]);
    let (c, u, v) = dilog_frame(&x, &y).unwrap();
    assert!(u != v && c.det().numer().abs() == 1 && *c.det().denom() == 1);
}

#[test]
fn constant_argument_is_scalar() {
    let cfg = grid(8, 10.0, 1);
    let e = Engine::new(cfg.clone());
    let v = random_gaussians(&cfg, 1, 3).remove(0);
    let w = e.apply_dilog(&Dilog::psi(LinForm::zero(), LinForm::zero(), 1), &v).unwrap();
    let phi = phi_mdc(0.4, 1, C::new(0.0, 0.0), Method::Ratio).unwrap().value;
    let s = phi / phi.conj();
    assert!(w.data.iter().zip(&v.data).all(|(a, b)| (a - s * b).norm() < 1e-14));
}

#[test]
fn dense_and_matrix_free_agree() {
    let cfg = grid(4, 8.0, 2);
    let t: OperatorSum = build_t(Variant::C, 1, 2).into();
    let dense = dense_oracle(&t, &cfg).unwrap();
    let e = Engine::new(cfg.clone());
    for j in 0..cfg.total() {
        let b = GridState::basis(&cfg, j);
        let mf = e.apply_sum(&t, &b).unwrap();
        assert!(max_diff(&mf, &dense.apply(&b)) < 1e-12);
    }
}

#[test]
fn dense_f_times_inverse_is_identity() {
    let cfg = grid(4, 8.0, 2);
    let f = build_f(Variant::C, 1, 2);
    let a = dense_oracle(&f.clone().into(), &cfg).unwrap();
    let b = dense_oracle(&f.inverse().unwrap().into(), &cfg).unwrap();
    assert!(a.mul(&b).distance_to_identity() < 1e-12);
}

#[test]
fn dense_t_is_unitary() {
    let cfg = grid(4, 8.0, 2);
    let t = dense_oracle(&build_t(Variant::C, 1, 2).into(), &cfg).unwrap();
    assert!(t.adjoint().mul(&t).distance_to_identity() <= 1e-10);
}

#[test]
fn dense_oracle_enforces_cap() {
    let cfg = grid(16, 8.0, 2);
    assert!(matches!(dense_oracle(&OperatorSum::identity(), &cfg), Err(NumericsError::Dimension(65536))));
}

#[test]
fn a1_cube_is_exact_permutation() {
    let cfg = grid(16, 20.0, 1);
    let e = Engine::new(cfg.clone());
    let a = build_a_m(&Coeff::one(), 1);
    let cube = a.mul(&a).mul(&a);
    for v in random_gaussians(&cfg, 5, 6) {
        let once = e.apply_term(&a, &v).unwrap();
        let sorted = |s: &GridState| {
            let mut x: Vec<u64> = s.data.iter().map(|z| z.re.to_bits()).collect();
            x.sort();
            x
        };
        assert_eq!(sorted(&once), sorted(&v));
        assert_eq!(e.apply_term(&cube, &v).unwrap(), v);
    }
}

#[test]
fn identity_entry_has_zero_residual() {
    let eq = Equation { label: "1 = 1".into(), lhs: OperatorSum::identity(), rhs: OperatorSum::identity() };
    let cfg = grid(8, 10.0, 2);
    let v = random_gaussians(&cfg, 2, 1);
    assert_eq!(Engine::new(cfg).residual(&eq, &v).unwrap(), vec![0.0, 0.0]);
}

#[test]
fn z1_residual_decreases_with_resolution() {
    let entry = find_entry("intertwine-z1").unwrap();
    let r: Vec<f64> = [8, 16, 32]
        .iter()
        .map(|&n| {
            let cfg = grid(n, 20.0, 2);
            let v = gaussian(&cfg, &[0.0; 4], &[1.0; 4]);
            Engine::new(cfg).residual(&entry.equations[0], &[v]).unwrap()[0]
        })
        .collect();
    assert!(r[0] > r[1] && r[1] > r[2], "{r:?}");
    assert!(r[2] < 1e-3, "{r:?}");
}

#[test]
fn vee_generator_trips_guard() {
    let entry = find_entry("intertwine-z1-vee").unwrap();
    let cfg = grid(32, 20.0, 2);
    let v = random_gaussians(&cfg, 1, 1);
    assert!(matches!(Engine::new(cfg).residual(&entry.equations[0], &v), Err(NumericsError::Guard { .. })));
}

#[test]
fn config_validation() {
    assert!(matches!(GridConfig::new(12, 10.0, 0.4, 1), Err(NumericsError::Config(_))));
    assert!(matches!(GridConfig::new(8, -1.0, 0.4, 1), Err(NumericsError::Config(_))));
}
