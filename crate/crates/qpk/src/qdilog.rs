//! Quantum dilogarithms: `ψ^q`, `Φ^ℏ`, `Φ^{±iℏ}`, `Ψ^ℏ` and `F₀`.
//!
//! `Φ^{±iℏ}` has two independent evaluation paths (contour integral and the
//! ratio of compact dilogarithms); each is the oracle for the other.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64 as C64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QdilogError {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("|q| = {0} >= 1: product diverges")]
    Divergence(f64),
    #[error("z = {z} is within {dist:e} of a pole")]
    PoleProximity { z: C64, dist: f64 },
    #[error("z = {z} lies outside the convergence strip |Im z| < {bound}")]
    StripViolation { z: C64, bound: f64 },
    #[error("Ψ^ℏ has no limit at {z}: directional limits differ")]
    NoLimit { z: C64 },
    #[error("quadrature did not converge: error estimate {0:e}")]
    Quadrature(f64),
}

pub type Result<T> = std::result::Result<T, QdilogError>;

/// A value with an absolute error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Value {
    pub value: C64,
    pub abs_err: f64,
}

impl Value {
    fn new(value: C64, abs_err: f64) -> Self {
        Value { value, abs_err }
    }
}

/// `ℏ > 0` with `q = e^{−πℏ}` and `q∨ = e^{−π/ℏ}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HbarParam {
    hbar: f64,
}

impl HbarParam {
    pub fn new(hbar: f64) -> Result<Self> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(QdilogError::InvalidParam(format!("hbar must be positive, got {hbar}")));
        }
        Ok(HbarParam { hbar })
    }
    pub fn hbar(&self) -> f64 {
        self.hbar
    }
    pub fn q(&self) -> f64 {
        (-PI * self.hbar).exp()
    }
    pub fn q_vee(&self) -> f64 {
        (-PI / self.hbar).exp()
    }
}

/// Integration contour: the ray `e^{iθ}ℝ` with a half-circle detour of
/// radius `detour_radius` on its `+i` side around the origin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourSpec {
    pub rotation_angle: f64,
    pub detour_radius: f64,
    /// Lower bound; the evaluator extends it until the tail is below tolerance.
    pub truncation_radius: f64,
    pub quadrature_tolerance: f64,
}

impl ContourSpec {
    /// Real-line contour for `Φ^ℏ`.
    pub fn for_phi_hbar(hbar: f64) -> Self {
        ContourSpec {
            rotation_angle: 0.0,
            detour_radius: 0.5 * (1.0f64).min(1.0 / hbar),
            truncation_radius: 10.0,
            quadrature_tolerance: 1e-12,
        }
    }
    /// Contour rotated by `−επ/4` for `Φ^{εiℏ}`.
    pub fn for_phi_mdc(hbar: f64, eps: i8) -> Self {
        ContourSpec { rotation_angle: -(eps as f64) * FRAC_PI_4, ..Self::for_phi_hbar(hbar) }
    }
    fn validate_real(&self) -> Result<()> {
        if self.rotation_angle != 0.0 || self.detour_radius <= 0.0 {
            return Err(QdilogError::InvalidParam(String::from("Φ^ℏ needs rotation 0 and a positive detour radius")));
        }
        Ok(())
    }
    fn validate_rotated(&self) -> Result<()> {
        let a = self.rotation_angle.abs();
        if !(a > 0.0 && a < PI / 2.0) || self.detour_radius <= 0.0 {
            return Err(QdilogError::InvalidParam(String::from("Φ^{±iℏ} needs 0 < |rotation| < π/2 and a positive detour radius")));
        }
        Ok(())
    }
}

/// Evaluation path for `Φ^{±iℏ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Contour,
    Ratio,
}

const PSI_POLE_EPS: f64 = 1e-12;
const MAX_FACTORS: usize = 1_000_000;

/// `ψ^q(z) = ∏_{n≥0} (1 + q^{2n+1} z)^{-1}`.
pub fn psi_q(q: C64, z: C64) -> Result<Value> {
    psi_q_with_eps(q, z, PSI_POLE_EPS)
}

pub fn psi_q_with_eps(q: C64, z: C64, pole_eps: f64) -> Result<Value> {
    let aq = q.norm();
    if aq >= 1.0 {
        return Err(QdilogError::Divergence(aq));
    }
    let q2 = q * q;
    let stop = 1e-16 * (1.0 + z.norm());
    let mut t = q * z;
    let mut log = C64::new(0.0, 0.0);
    let mut n = 0usize;
    loop {
        let f = C64::new(1.0, 0.0) + t;
        let d = f.norm();
        if d < pole_eps {
            return Err(QdilogError::PoleProximity { z, dist: d });
        }
        log -= f.ln();
        n += 1;
        t *= q2;
        if t.norm() < stop || n > MAX_FACTORS {
            break;
        }
    }
    let v = log.exp();
    let tail = t.norm() / (1.0 - q2.norm());
    let err = v.norm() * (tail + (n as f64) * 4.0 * f64::EPSILON);
    Ok(Value::new(v, err))
}

fn csinh(z: C64) -> C64 {
    z.sinh()
}

/// `∫_Ω e^{−ipz} / (sinh(πp)·g(p)) dp/p` along the rotated detoured ray,
/// where `g(p) = sinh(π h p)` (or 1 when `h` is `None`).
fn contour_integral(h: Option<C64>, z: C64, spec: &ContourSpec) -> Result<Value> {
    let w = C64::from_polar(1.0, spec.rotation_angle);
    let f = |p: C64| -> C64 {
        let den = match h {
            Some(h) => csinh(PI * p) * csinh(PI * h * p),
            None => csinh(PI * p),
        };
        (C64::new(0.0, -1.0) * p * z).exp() / (den * p)
    };
    // decay rates on the two half-rays: |integrand| ~ e^{-κ± r}
    let grow = |s: f64| -> f64 {
        let pw = w * s;
        let mut k = PI * pw.re.abs();
        if let Some(h) = h {
            k += PI * (h * pw).re.abs();
        }
        k - (C64::new(0.0, -1.0) * pw * z).re
    };
    let (kp, km) = (grow(1.0), grow(-1.0));
    if kp <= 0.0 || km <= 0.0 {
        return Err(QdilogError::StripViolation { z, bound: f64::NAN });
    }
    let tol = spec.quadrature_tolerance;
    let kmin = kp.min(km);
    let need = ((1.0 / tol).ln() + 3.0) / kmin;
    let r_max = spec.truncation_radius.max(need);
    let d = spec.detour_radius;
    let pieces = ((r_max - d) / 1.0).ceil().max(1.0) as usize;
    let piece_tol = tol / (4.0 * pieces as f64 + 4.0);
    let mut total = C64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut integrate = |g: &dyn Fn(f64) -> C64, a: f64, b: f64| -> Result<()> {
        let re = quadrature::double_exponential::integrate(|t| g(t).re, a, b, piece_tol);
        let im = quadrature::double_exponential::integrate(|t| g(t).im, a, b, piece_tol);
        let e = re.error_estimate + im.error_estimate;
        if !e.is_finite() || e > 1e3 * piece_tol.max(1e-15) {
            return Err(QdilogError::Quadrature(e));
        }
        total += C64::new(re.integral, im.integral);
        err += e;
        Ok(())
    };
    let step = (r_max - d) / pieces as f64;
    for i in 0..pieces {
        let a = d + step * i as f64;
        let b = a + step;
        integrate(&|r: f64| f(w * r) * w, a, b)?;
        integrate(&|r: f64| f(-w * r) * w, a, b)?;
    }
    // half circle from −dw to dw through +i·w
    integrate(
        &|phi: f64| {
            let e = C64::from_polar(1.0, PI - phi);
            let p = w * d * e;
            f(p) * p * C64::new(0.0, -1.0)
        },
        0.0,
        PI,
    )?;
    // closed-form tail bound beyond r_max
    let tail = 8.0 * ((-kp * r_max).exp() / kp + (-km * r_max).exp() / km) / r_max;
    Ok(Value::new(total, err + tail))
}

fn strip_check(hbar: f64, z: C64) -> Result<()> {
    let bound = PI * (1.0 + hbar);
    if z.im.abs() >= bound {
        return Err(QdilogError::StripViolation { z, bound });
    }
    Ok(())
}

/// `Φ^ℏ(z) = exp(−¼∫_Ω e^{−ipz}/(sinh(πp) sinh(πℏp)) dp/p)` for real `ℏ`.
pub fn phi_hbar(hbar: f64, z: C64, spec: &ContourSpec) -> Result<Value> {
    HbarParam::new(hbar)?;
    spec.validate_real()?;
    strip_check(hbar, z)?;
    let i = contour_integral(Some(C64::new(hbar, 0.0)), z, spec)?;
    let v = (-i.value / 4.0).exp();
    Ok(Value::new(v, v.norm() * i.abs_err / 4.0))
}

/// `Φ^ℏ` outside the strip, reached from inside it by the difference
/// equation `Φ^ℏ(z + 2πiℏ) = (1 + e^{πiℏ}e^z) Φ^ℏ(z)`.
pub fn phi_hbar_continued(hbar: f64, z: C64) -> Result<Value> {
    HbarParam::new(hbar)?;
    let bound = PI * (1.0 + hbar);
    let step = 2.0 * PI * hbar;
    let k = if z.im.abs() < bound { 0 } else { ((z.im.abs() - bound) / step).floor() as i64 + 1 };
    let k = k * z.im.signum() as i64;
    let z0 = z - C64::new(0.0, step * k as f64);
    let base = phi_hbar(hbar, z0, &ContourSpec::for_phi_hbar(hbar))?;
    let e = C64::new(0.0, PI * hbar).exp();
    let mut v = base.value;
    let mut rel = base.abs_err / base.value.norm();
    if k > 0 {
        for j in 0..k {
            v *= 1.0 + e * (z0 + C64::new(0.0, step * j as f64)).exp();
            rel += 4.0 * f64::EPSILON;
        }
    } else {
        for j in 1..=(-k) {
            let f = 1.0 + e * (z0 - C64::new(0.0, step * j as f64)).exp();
            if f.norm() < PSI_POLE_EPS {
                return Err(QdilogError::PoleProximity { z, dist: f.norm() });
            }
            v /= f;
            rel += 4.0 * f64::EPSILON;
        }
    }
    Ok(Value::new(v, v.norm() * rel))
}

/// `Φ^{iℏ}(z) = ψ^{e^{−πℏ}}(e^z) / ψ^{e^{−π/ℏ}}(e^{z/(iℏ)})` for complex `ℏ`
/// with `Re ℏ > 0`.
pub fn phi_ratio_complex(hbar: C64, z: C64) -> Result<Value> {
    if hbar.re <= 0.0 || (1.0 / hbar).re <= 0.0 {
        return Err(QdilogError::InvalidParam(format!("ratio form needs Re ℏ > 0 and Re 1/ℏ > 0, got {hbar}")));
    }
    let q = (-PI * hbar).exp();
    let qv = (-PI / hbar).exp();
    let num = psi_q(q, z.exp())?;
    let den = psi_q(qv, (z / (C64::i() * hbar)).exp())?;
    let v = num.value / den.value;
    let rel = num.abs_err / num.value.norm() + den.abs_err / den.value.norm();
    Ok(Value::new(v, v.norm() * rel))
}

fn reflect(v: Value) -> Value {
    let r = 1.0 / v.value.conj();
    Value::new(r, r.norm() * v.abs_err / v.value.norm())
}

/// `Φ^{εiℏ}(z)` by the chosen method.
pub fn phi_mdc(hbar: f64, eps: i8, z: C64, method: Method) -> Result<Value> {
    HbarParam::new(hbar)?;
    if eps != 1 && eps != -1 {
        return Err(QdilogError::InvalidParam(format!("eps must be ±1, got {eps}")));
    }
    match method {
        Method::Ratio => {
            let h = C64::new(hbar, 0.0);
            if eps == 1 {
                phi_ratio_complex(h, z)
            } else {
                phi_ratio_complex(h, z.conj()).map(reflect)
            }
        }
        Method::Contour => phi_mdc_contour(hbar, eps, z, &ContourSpec::for_phi_mdc(hbar, eps)),
    }
}

/// Contour evaluation of `Φ^{εiℏ}(z)`.
pub fn phi_mdc_contour(hbar: f64, eps: i8, z: C64, spec: &ContourSpec) -> Result<Value> {
    spec.validate_rotated()?;
    let h = C64::new(0.0, eps as f64 * hbar);
    let i = contour_integral(Some(h), z, spec)?;
    let v = (-i.value / 4.0).exp();
    Ok(Value::new(v, v.norm() * i.abs_err / 4.0))
}

/// Both evaluations of `Φ^{εiℏ}(z)` and whether they disagree beyond `tol`.
pub fn phi_mdc_both(hbar: f64, eps: i8, z: C64, tol: f64) -> Result<(Value, Value, bool)> {
    let a = phi_mdc(hbar, eps, z, Method::Contour)?;
    let b = phi_mdc(hbar, eps, z, Method::Ratio)?;
    let disagree = (a.value - b.value).norm() > tol.max(a.abs_err + b.abs_err);
    Ok((a, b, disagree))
}

/// `c_{εiℏ} = e^{(π/12)ε(ℏ − ℏ^{-1})}`.
pub fn involutivity_constant(hbar: f64, eps: i8) -> f64 {
    (PI / 12.0 * eps as f64 * (hbar - 1.0 / hbar)).exp()
}

/// `Ψ^ℏ(x+iy) = Φ^{iℏ}(x+iy)·Φ^{−iℏ}(x−iy)`, evaluated as `v / v̄` with
/// `v = Φ^{iℏ}(x+iy)`.
pub fn psi_hbar(hbar: f64, x: f64, y: f64) -> Result<Value> {
    HbarParam::new(hbar)?;
    let z = C64::new(x, y);
    match unimodular(hbar, z) {
        Ok(v) => Ok(v),
        Err(QdilogError::PoleProximity { .. }) => psi_hbar_limit(hbar, z),
        Err(e) => Err(e),
    }
}

fn unimodular(hbar: f64, z: C64) -> Result<Value> {
    let v = phi_mdc(hbar, 1, z, Method::Ratio)?;
    let u = v.value / v.value.conj();
    Ok(Value::new(u, 2.0 * v.abs_err / v.value.norm()))
}

fn psi_hbar_limit(hbar: f64, z: C64) -> Result<Value> {
    let d = 1e-6;
    let mut acc = C64::new(0.0, 0.0);
    let mut err: f64 = 0.0;
    for k in 0..4 {
        let v = unimodular(hbar, z + C64::from_polar(d, k as f64 * PI / 2.0))?;
        acc += v.value;
        err = err.max(v.abs_err);
    }
    let n = acc.norm();
    if n < 4.0 - 1e-6 {
        return Err(QdilogError::NoLimit { z });
    }
    Ok(Value::new(acc / n, err + (1.0 - n / 4.0).abs()))
}

/// `F₀(x, y) = (1 + e^x)^{y/(πi)}` on the principal branch.
pub fn f_zero(x: f64, y: f64) -> C64 {
    let l = x.exp().ln_1p();
    (C64::new(0.0, -y / PI) * l).exp()
}

/// `F₀(x, y) = exp(−(y/(2πi))∫_Ω e^{−ipx}/sinh(πp) dp/p)`.
pub fn f_zero_contour(x: f64, y: f64) -> Result<Value> {
    let spec = ContourSpec::for_phi_hbar(1.0);
    let i = contour_integral(None, C64::new(x, 0.0), &spec)?;
    let k = C64::new(0.0, y / (2.0 * PI));
    let v = (k * i.value).exp();
    Ok(Value::new(v, v.norm() * k.norm() * i.abs_err))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_at_zero_is_one() {
        let v = psi_q(C64::new(0.3, 0.0), C64::new(0.0, 0.0)).unwrap();
        assert_eq!(v.value, C64::new(1.0, 0.0));
    }

    #[test]
    fn rejects_bad_params() {
        assert!(HbarParam::new(-1.0).is_err());
        assert!(matches!(psi_q(C64::new(1.0, 0.0), C64::new(1.0, 0.0)), Err(QdilogError::Divergence(_))));
        assert!(phi_mdc(0.4, 0, C64::new(0.0, 0.0), Method::Ratio).is_err());
    }

    #[test]
    fn f_zero_trivial_cases() {
        assert!((f_zero(1.3, 0.0) - 1.0).norm() < 1e-15);
        let two = (C64::new(0.0, -0.7 / PI) * 2f64.ln()).exp();
        assert!((f_zero(0.0, 0.7) - two).norm() < 1e-15);
    }
}
