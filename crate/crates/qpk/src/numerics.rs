//! Periodic-grid discretization of `L²(ℝ^d)` and matrix-free application of
//! operator words.
//!
//! Samples sit at `x_k = (k − N/2)·L/N`. Momentum `p = πiℏ∂` acts on the DFT
//! side as the multiplier `−πℏξ`, with `ξ` the angular frequency lattice
//! `2πk/L`. Special linear operators act by exact index remapping modulo `N`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex};

use num_complex::Complex64 as C64;
use qpk_core::coeff::Coeff;
use qpk_core::reps::Equation;
use qpk_core::weylalg::{bracket, dilog_frame, quadexp, Axis, Coord, Dilog, DilogKind, Factor, IntMatrix, Kind, LinForm, OperatorSum, Term};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::{Fft, FftPlanner};
use thiserror::Error;

use crate::qdilog::{self, ContourSpec, QdilogError};

/// Growth bound for multipliers on the occupied part of a state.
pub const GUARD_LIMIT: f64 = 1e8;
/// Relative amplitude below which a grid point counts as unoccupied.
const OCCUPIED: f64 = 1e-12;
/// Grid samples on the singular lattice of `Ψ^ℏ` take the limit along `+x`.
const VORTEX_OFFSET: f64 = 1e-9;
/// Largest dimension accepted by [`dense_oracle`].
pub const DENSE_CAP: usize = 4096;

#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("invalid grid: {0}")]
    Config(String),
    #[error("numeric guard tripped: {what} reaches {value:e} on the occupied band")]
    Guard { what: String, value: f64 },
    #[error("not applicable on the grid: {0}")]
    Unsupported(String),
    #[error("dense oracle dimension {0} exceeds {DENSE_CAP}")]
    Dimension(usize),
    #[error(transparent)]
    Qdilog(#[from] QdilogError),
}

pub type Result<T> = std::result::Result<T, NumericsError>;

#[derive(Clone, Debug, PartialEq)]
pub struct GridConfig {
    pub n: usize,
    pub length: f64,
    pub hbar: f64,
    /// Value substituted for the formal symbol `m`.
    pub m: f64,
    pub axes: Vec<Coord>,
    /// Skip the growth guard (for band-limited states only).
    pub allow_unbounded: bool,
}

impl GridConfig {
    /// Grid over `(t_j, s_j)` for `j = 1..=slots`.
    pub fn new(n: usize, length: f64, hbar: f64, slots: u32) -> Result<Self> {
        if n < 4 || !n.is_power_of_two() {
            return Err(NumericsError::Config(format!("N = {n} must be a power of two ≥ 4")));
        }
        if !(length > 0.0) || !(hbar > 0.0) {
            return Err(NumericsError::Config(format!("need L > 0 and ℏ > 0, got L = {length}, ℏ = {hbar}")));
        }
        let axes = (1..=slots).flat_map(|j| [Coord::new(j, Axis::T), Coord::new(j, Axis::S)]).collect();
        Ok(GridConfig { n, length, hbar, m: 1.0, axes, allow_unbounded: false })
    }
    pub fn with_m(mut self, m: f64) -> Self {
        self.m = m;
        self
    }
    pub fn dim(&self) -> usize {
        self.axes.len()
    }
    pub fn total(&self) -> usize {
        self.n.pow(self.dim() as u32)
    }
    pub fn spacing(&self) -> f64 {
        self.length / self.n as f64
    }
    pub fn point(&self, k: usize) -> f64 {
        (k as f64 - (self.n / 2) as f64) * self.spacing()
    }
    /// Angular frequency of DFT bin `k`.
    pub fn freq(&self, k: usize) -> f64 {
        let n = self.n as i64;
        let s = if (k as i64) < n / 2 { k as i64 } else { k as i64 - n };
        2.0 * PI * s as f64 / self.length
    }
    fn axis_of(&self, c: &Coord) -> Result<usize> {
        self.axes.iter().position(|a| a == c).ok_or_else(|| NumericsError::Unsupported(format!("coordinate {c:?} is not a grid axis")))
    }
}

/// Samples of a function on the grid, row-major over the axes.
#[derive(Clone, Debug, PartialEq)]
pub struct GridState {
    pub data: Vec<C64>,
}

impl GridState {
    pub fn zeros(cfg: &GridConfig) -> Self {
        GridState { data: vec![C64::new(0.0, 0.0); cfg.total()] }
    }
    pub fn basis(cfg: &GridConfig, i: usize) -> Self {
        let mut s = Self::zeros(cfg);
        s.data[i] = C64::new(1.0, 0.0);
        s
    }
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
    pub fn sub(&self, o: &GridState) -> GridState {
        GridState { data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }
    fn add_scaled(&mut self, o: &GridState, s: C64) {
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            *a += s * b;
        }
    }
    fn scale(&mut self, s: C64) {
        for a in &mut self.data {
            *a *= s;
        }
    }
}

/// Unit-norm Gaussian `exp(−Σ (x_a − c_a)²/(2w_a²))`.
pub fn gaussian(cfg: &GridConfig, center: &[f64], width: &[f64]) -> GridState {
    let d = cfg.dim();
    let mut s = GridState::zeros(cfg);
    for (i, z) in s.data.iter_mut().enumerate() {
        let mut e = 0.0;
        for (a, k) in digits(i, cfg.n, d).into_iter().enumerate() {
            let x = cfg.point(k) - center[a];
            e += x * x / (2.0 * width[a] * width[a]);
        }
        *z = C64::new((-e).exp(), 0.0);
    }
    let n = s.norm();
    s.scale(C64::new(1.0 / n, 0.0));
    s
}

/// `count` Gaussians with centers in `[−1,1]^d` and widths in `[0.5,1.5]`.
pub fn random_gaussians(cfg: &GridConfig, count: usize, seed: u64) -> Vec<GridState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let c: Vec<f64> = (0..cfg.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let w: Vec<f64> = (0..cfg.dim()).map(|_| rng.gen_range(0.5..1.5)).collect();
            gaussian(cfg, &c, &w)
        })
        .collect()
}

fn digits(mut i: usize, n: usize, d: usize) -> Vec<usize> {
    let mut out = vec![0; d];
    for a in (0..d).rev() {
        out[a] = i % n;
        i /= n;
    }
    out
}

/// Numeric value of an exact coefficient at the configured `ℏ` and `m`.
pub fn eval_coeff(c: &Coeff, hbar: f64, m: f64) -> C64 {
    let r = |x: &qpk_core::coeff::Rat| *x.numer() as f64 / *x.denom() as f64;
    c.terms()
        .map(|((h, k), g)| C64::new(r(&g.re), r(&g.im)) * hbar.powi(*h) * m.powi(*k))
        .sum()
}

/// One-dimensional transform used along grid axes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transform {
    Fft,
    /// Direct `O(N²)` DFT, the independent path of the dense oracle.
    NaiveDft,
}

type TableKey = (u8, i8, u64, u64);

/// Applies operator words to grid states.
pub struct Engine {
    pub cfg: GridConfig,
    transform: Transform,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    tables: Mutex<HashMap<TableKey, Arc<Vec<C64>>>>,
}

impl Engine {
    pub fn new(cfg: GridConfig) -> Self {
        Self::with_transform(cfg, Transform::Fft)
    }
    pub fn with_transform(cfg: GridConfig, transform: Transform) -> Self {
        let mut p = FftPlanner::new();
        let fwd = p.plan_fft_forward(cfg.n);
        let inv = p.plan_fft_inverse(cfg.n);
        Engine { cfg, transform, fwd, inv, tables: Mutex::new(HashMap::new()) }
    }

    fn stride(&self, axis: usize) -> usize {
        self.cfg.n.pow((self.cfg.dim() - 1 - axis) as u32)
    }

    fn transform_axis(&self, v: &mut GridState, axis: usize, inverse: bool) {
        let n = self.cfg.n;
        let stride = self.stride(axis);
        let mut line = vec![C64::new(0.0, 0.0); n];
        let mut out = vec![C64::new(0.0, 0.0); n];
        let total = v.data.len();
        for base in 0..total {
            if (base / stride) % n != 0 {
                continue;
            }
            for (k, x) in line.iter_mut().enumerate() {
                *x = v.data[base + k * stride];
            }
            match self.transform {
                Transform::Fft => {
                    if inverse {
                        self.inv.process(&mut line);
                    } else {
                        self.fwd.process(&mut line);
                    }
                    out.copy_from_slice(&line);
                }
                Transform::NaiveDft => {
                    let sgn = if inverse { 1.0 } else { -1.0 };
                    for (k, o) in out.iter_mut().enumerate() {
                        *o = line
                            .iter()
                            .enumerate()
                            .map(|(j, x)| x * C64::from_polar(1.0, sgn * 2.0 * PI * ((j * k) % n) as f64 / n as f64))
                            .sum();
                    }
                }
            }
            let s = if inverse { 1.0 / n as f64 } else { 1.0 };
            for (k, x) in out.iter().enumerate() {
                v.data[base + k * stride] = x * s;
            }
        }
    }

    /// Multiply on the DFT side of `axes` by `mult(digits)`.
    fn fourier_multiply(&self, v: &GridState, axes: &[usize], what: &str, mult: impl FnMut(&[usize]) -> C64) -> Result<GridState> {
        let mut w = v.clone();
        for &a in axes {
            self.transform_axis(&mut w, a, false);
        }
        self.pointwise_in_place(&mut w, what, mult)?;
        for &a in axes {
            self.transform_axis(&mut w, a, true);
        }
        Ok(w)
    }

    fn pointwise_in_place(&self, w: &mut GridState, what: &str, mut mult: impl FnMut(&[usize]) -> C64) -> Result<()> {
        let d = self.cfg.dim();
        let peak = w.data.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let mut worst: f64 = 0.0;
        for (i, z) in w.data.iter_mut().enumerate() {
            let m = mult(&digits(i, self.cfg.n, d));
            if z.norm() > OCCUPIED * peak {
                worst = worst.max(m.norm());
            }
            *z *= m;
        }
        if worst > GUARD_LIMIT && !self.cfg.allow_unbounded {
            return Err(NumericsError::Guard { what: what.to_string(), value: worst });
        }
        Ok(())
    }

    /// `(S_c f)(a) = f(a c)` with indices taken modulo `N`.
    pub fn remap(&self, coords: &[Coord], c: &IntMatrix, v: &GridState) -> Result<GridState> {
        let idx: Vec<usize> = coords.iter().map(|x| self.cfg.axis_of(x)).collect::<Result<_>>()?;
        let n = self.cfg.n as i64;
        let d = self.cfg.dim();
        let half = n / 2;
        let mut out = GridState::zeros(&self.cfg);
        for (i, o) in out.data.iter_mut().enumerate() {
            let mut dg = digits(i, self.cfg.n, d);
            let centered: Vec<i64> = idx.iter().map(|&a| dg[a] as i64 - half).collect();
            for (j, &aj) in idx.iter().enumerate() {
                let s: i64 = (0..idx.len()).map(|r| centered[r] * c.get(r, j)).sum();
                dg[aj] = (s + half).rem_euclid(n) as usize;
            }
            let src = dg.iter().fold(0usize, |acc, &k| acc * self.cfg.n + k);
            *o = v.data[src];
        }
        Ok(out)
    }

    fn eval(&self, c: &Coeff) -> C64 {
        eval_coeff(c, self.cfg.hbar, self.cfg.m)
    }

    fn real_const(&self, c: &Coeff) -> Result<f64> {
        let v = self.eval(c);
        if v.im.abs() > 1e-12 * (1.0 + v.re.abs()) {
            return Err(NumericsError::Unsupported(format!("constant {c} is not real")));
        }
        Ok(v.re)
    }

    /// Coefficients of the `kind` generators of `l`, by axis.
    fn coeff_vector(&self, l: &LinForm, kind: Kind) -> Result<Vec<C64>> {
        let mut v = vec![C64::new(0.0, 0.0); self.cfg.dim()];
        for (g, c) in l.terms() {
            if g.kind == kind {
                v[self.cfg.axis_of(&g.coord())?] += self.eval(c);
            }
        }
        Ok(v)
    }

    /// `e^{L}` as `e^{π·const}·e^{−iπ·bracket(X,Y)/2}·e^{X}·e^{Y}` with `X`
    /// its position part and `Y` its momentum part.
    pub fn apply_weyl(&self, l: &LinForm, v: &GridState) -> Result<GridState> {
        let x = l.kind_part(Kind::Pos);
        let y = l.kind_part(Kind::Mom);
        let b = self.eval(&bracket(&x, &y));
        let scalar = (PI * self.eval(&l.pi_const) - C64::new(0.0, PI / 2.0) * b).exp();
        let a = self.coeff_vector(&x, Kind::Pos)?;
        let beta = self.coeff_vector(&y, Kind::Mom)?;
        let h = self.cfg.hbar;
        let mom_axes: Vec<usize> = (0..self.cfg.dim()).filter(|&i| beta[i] != C64::new(0.0, 0.0)).collect();
        let mut w = if mom_axes.is_empty() {
            v.clone()
        } else {
            self.fourier_multiply(v, &mom_axes, &format!("e^{{{y}}}"), |dg| {
                let s: C64 = mom_axes.iter().map(|&i| beta[i] * (-PI * h * self.cfg.freq(dg[i]))).sum();
                s.exp()
            })?
        };
        if a.iter().any(|z| *z != C64::new(0.0, 0.0)) {
            self.pointwise_in_place(&mut w, &format!("e^{{{x}}}"), |dg| {
                let s: C64 = a.iter().enumerate().map(|(i, ai)| ai * self.cfg.point(dg[i])).sum();
                s.exp()
            })?;
        }
        w.scale(scalar);
        Ok(w)
    }

    fn dilog_value(&self, kind: DilogKind, power: i8, x: f64, y: f64) -> Result<C64> {
        let h = self.cfg.hbar;
        let v = match kind {
            DilogKind::Psi => match qdilog::psi_hbar(h, x, y) {
                Err(QdilogError::NoLimit { .. }) => qdilog::psi_hbar(h, x + VORTEX_OFFSET, y)?.value,
                r => r?.value,
            },
            DilogKind::PhiPair => {
                let s = ContourSpec::for_phi_hbar(h);
                let a = qdilog::phi_hbar(h, C64::new(x + y, 0.0), &s)?.value;
                let b = qdilog::phi_hbar(h, C64::new(x - y, 0.0), &s)?.value;
                a / b
            }
        };
        Ok(if power >= 0 { v.powi(power as i32) } else { v.inv().powi(-(power as i32)) })
    }

    /// Values on the `(x_u, ξ_v)` plane, cached per constant shift.
    fn table(&self, kind: DilogKind, power: i8, xc: f64, yc: f64) -> Result<Arc<Vec<C64>>> {
        let key = (kind as u8, power, xc.to_bits(), yc.to_bits());
        if let Some(t) = self.tables.lock().unwrap().get(&key) {
            return Ok(t.clone());
        }
        let n = self.cfg.n;
        let h = self.cfg.hbar;
        let mut t = Vec::with_capacity(n * n);
        for ku in 0..n {
            for kv in 0..n {
                t.push(self.dilog_value(kind, power, self.cfg.point(ku) + xc, -PI * h * self.cfg.freq(kv) + yc)?);
            }
        }
        let t = Arc::new(t);
        self.tables.lock().unwrap().insert(key, t.clone());
        Ok(t)
    }

    /// Functional calculus of the commuting pair `(x, ℏy)`.
    pub fn apply_dilog(&self, d: &Dilog, v: &GridState) -> Result<GridState> {
        let x0 = d.x.without_const();
        let y = d.y_unscaled();
        let y0 = y.without_const();
        if !x0.is_pure(Kind::Pos) || !y0.is_pure(Kind::Mom) {
            return Err(NumericsError::Unsupported(format!("{d} is not a function of positions x and momenta ℏy")));
        }
        if !bracket(&x0, &y0).is_zero() {
            return Err(NumericsError::Unsupported(format!("{d}: arguments do not commute")));
        }
        let xc = PI * self.real_const(&d.x.pi_const)?;
        let yc = PI * self.real_const(&y.pi_const)?;
        let not_int = || NumericsError::Unsupported(format!("{d} has non-integer coefficients"));
        let alpha = x0.integer_vector(Kind::Pos, &self.cfg.axes).ok_or_else(not_int)?;
        let beta = y0.integer_vector(Kind::Mom, &self.cfg.axes).ok_or_else(not_int)?;
        let (a0, b0) = (alpha.iter().all(|&a| a == 0), beta.iter().all(|&b| b == 0));
        let name = format!("{d}");
        let h = self.cfg.hbar;
        match (a0, b0) {
            (true, true) => {
                let mut w = v.clone();
                w.scale(self.dilog_value(d.kind, d.power, xc, yc)?);
                Ok(w)
            }
            (false, true) => {
                let mut w = v.clone();
                let mut err = None;
                self.pointwise_in_place(&mut w, &name, |dg| {
                    let x: f64 = alpha.iter().enumerate().map(|(i, &a)| a as f64 * self.cfg.point(dg[i])).sum();
                    self.dilog_value(d.kind, d.power, x + xc, yc).unwrap_or_else(|e| {
                        err = Some(e);
                        C64::new(0.0, 0.0)
                    })
                })?;
                err.map_or(Ok(w), Err)
            }
            (true, false) => {
                let axes: Vec<usize> = (0..beta.len()).filter(|&i| beta[i] != 0).collect();
                let mut err = None;
                let w = self.fourier_multiply(v, &axes, &name, |dg| {
                    let y: f64 = axes.iter().map(|&i| beta[i] as f64 * (-PI * h * self.cfg.freq(dg[i]))).sum();
                    self.dilog_value(d.kind, d.power, xc, y + yc).unwrap_or_else(|e| {
                        err = Some(e);
                        C64::new(0.0, 0.0)
                    })
                })?;
                err.map_or(Ok(w), |e| Err(e))
            }
            (false, false) => {
                let (c, u, vv) = dilog_frame(&alpha, &beta).map_err(|e| NumericsError::Unsupported(format!("{d}: {e}")))?;
                let ci = c.inverse().map_err(|e| NumericsError::Unsupported(e.to_string()))?;
                let table = self.table(d.kind, d.power, xc, yc)?;
                let n = self.cfg.n;
                let w = self.remap(&self.cfg.axes, &ci, v)?;
                let w = self.fourier_multiply(&w, &[vv], &name, |dg| table[dg[u] * n + dg[vv]])?;
                self.remap(&self.cfg.axes, &c, &w)
            }
        }
    }

    pub fn apply_factor(&self, f: &Factor, v: &GridState) -> Result<GridState> {
        match f {
            Factor::Saso(s) => self.remap(&s.coords, &s.c, v),
            Factor::Weyl(l) => self.apply_weyl(l, v),
            Factor::Dilog(d) => self.apply_dilog(d, v),
            Factor::Quad(x, y) => {
                let (s, w, g) = quadexp(x, y).map_err(|e| NumericsError::Unsupported(e.to_string()))?;
                let mut out = self.remap(&s.coords, &s.c, &self.apply_weyl(&w, v)?)?;
                out.scale((PI * self.eval(&g)).exp());
                Ok(out)
            }
        }
    }

    pub fn apply_term(&self, t: &Term, v: &GridState) -> Result<GridState> {
        if t.pre.c_power != 0 {
            return Err(NumericsError::Unsupported(String::from("word carries the formal constant c")));
        }
        let mut w = v.clone();
        for f in t.factors.iter().rev() {
            w = self.apply_factor(f, &w)?;
        }
        w.scale(t.mult as f64 * (PI * self.eval(&t.pre.exp_arg)).exp());
        Ok(w)
    }

    pub fn apply_sum(&self, s: &OperatorSum, v: &GridState) -> Result<GridState> {
        let mut out = GridState::zeros(&self.cfg);
        for t in &s.terms {
            out.add_scaled(&self.apply_term(t, v)?, C64::new(1.0, 0.0));
        }
        Ok(out)
    }

    /// `‖(lhs − rhs)v‖ / ‖v‖` per test vector.
    pub fn residual(&self, eq: &Equation, vectors: &[GridState]) -> Result<Vec<f64>> {
        vectors
            .iter()
            .map(|v| {
                let l = self.apply_sum(&eq.lhs, v)?;
                let r = self.apply_sum(&eq.rhs, v)?;
                Ok(l.sub(&r).norm() / v.norm())
            })
            .collect()
    }
}

/// Column-major dense matrix.
#[derive(Clone, Debug)]
pub struct DenseMatrix {
    pub dim: usize,
    pub data: Vec<C64>,
}

impl DenseMatrix {
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[j * self.dim + i]
    }
    pub fn apply(&self, v: &GridState) -> GridState {
        let mut out = vec![C64::new(0.0, 0.0); self.dim];
        for (j, x) in v.data.iter().enumerate() {
            if *x == C64::new(0.0, 0.0) {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                *o += self.get(i, j) * x;
            }
        }
        GridState { data: out }
    }
    pub fn mul(&self, o: &DenseMatrix) -> DenseMatrix {
        let n = self.dim;
        let mut data = vec![C64::new(0.0, 0.0); n * n];
        for j in 0..n {
            for k in 0..n {
                let b = o.get(k, j);
                if b == C64::new(0.0, 0.0) {
                    continue;
                }
                for i in 0..n {
                    data[j * n + i] += self.get(i, k) * b;
                }
            }
        }
        DenseMatrix { dim: n, data }
    }
    pub fn adjoint(&self) -> DenseMatrix {
        let n = self.dim;
        let mut data = vec![C64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = self.get(i, j).conj();
            }
        }
        DenseMatrix { dim: n, data }
    }
    /// Largest entry of `self − I` in absolute value.
    pub fn distance_to_identity(&self) -> f64 {
        let n = self.dim;
        (0..n)
            .flat_map(|j| (0..n).map(move |i| (i, j)))
            .map(|(i, j)| (self.get(i, j) - if i == j { 1.0 } else { 0.0 }).norm())
            .fold(0.0, f64::max)
    }
}

/// Materialize `s` column by column through the direct-DFT path.
pub fn dense_oracle(s: &OperatorSum, cfg: &GridConfig) -> Result<DenseMatrix> {
    let dim = cfg.total();
    if dim > DENSE_CAP {
        return Err(NumericsError::Dimension(dim));
    }
    let e = Engine::with_transform(cfg.clone(), Transform::NaiveDft);
    let mut data = Vec::with_capacity(dim * dim);
    for j in 0..dim {
        data.extend(e.apply_sum(s, &GridState::basis(cfg, j))?.data);
    }
    Ok(DenseMatrix { dim, data })
}
