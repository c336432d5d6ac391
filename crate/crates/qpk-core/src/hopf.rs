//! The Hopf *-algebras `C_{q,q∨}` and `D_{q,q∨}` as quantum tori over
//! ℤ[q^{±1}, q∨^{±1}], with coproduct, counit, antipode, star, and the
//! operator images of tensor-square and dual actions.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coeff::{Coeff, GaussRat};
use crate::error::{Error, Result};
use crate::weylalg::form::named::*;
use crate::weylalg::{LinForm, OperatorSum, Prefactor, Term};

/// Laurent polynomial in `q`, `q∨` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QPoly(BTreeMap<(i32, i32), i64>);

impl QPoly {
    pub fn zero() -> Self {
        QPoly::default()
    }
    pub fn monomial(c: i64, a: i32, b: i32) -> Self {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert((a, b), c);
        }
        QPoly(m)
    }
    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&(i32, i32), &i64)> {
        self.0.iter()
    }
    pub fn add(&self, o: &QPoly) -> QPoly {
        let mut m = self.0.clone();
        for (k, v) in &o.0 {
            let e = m.entry(*k).or_insert(0);
            *e += v;
            if *e == 0 {
                m.remove(k);
            }
        }
        QPoly(m)
    }
    pub fn mul(&self, o: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (&(a, b), &v) in &self.0 {
            for (&(c, d), &w) in &o.0 {
                out = out.add(&QPoly::monomial(v * w, a + c, b + d));
            }
        }
        out
    }
    pub fn neg(&self) -> QPoly {
        QPoly(self.0.iter().map(|(k, v)| (*k, -v)).collect())
    }
    /// Inverse of a unit `±q^a q∨^b`.
    pub fn inv(&self) -> Option<QPoly> {
        if self.0.len() != 1 {
            return None;
        }
        let (&(a, b), &v) = self.0.iter().next()?;
        (v == 1 || v == -1).then(|| QPoly::monomial(v, -a, -b))
    }
    /// `q ↦ q^{-1}, q∨ ↦ q∨^{-1}` (complex conjugation when |q| = 1).
    pub fn invert_variables(&self) -> QPoly {
        QPoly(self.0.iter().map(|(&(a, b), &v)| ((-a, -b), v)).collect())
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), &v) in &self.0 {
            let mut parts: Vec<String> = Vec::new();
            if v.abs() != 1 || (a == 0 && b == 0) {
                parts.push(format!("{}", v.abs()));
            }
            if a != 0 {
                parts.push(format!("q^{a}"));
            }
            if b != 0 {
                parts.push(format!("qv^{b}"));
            }
            let sign = if v < 0 { "-" } else { "+" };
            if first {
                if v < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// Which algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `C_{q,q∨}` with `q = e^{−πℏ}`, `q∨ = e^{−π/ℏ}`.
    C,
    /// `D_{q,q∨}` with `q = e^{πiℏ}`, `q∨ = e^{πi/ℏ}`.
    D,
}

/// Exponent vector in the fixed normal order of generators.
pub type Mono = Vec<i32>;

/// `Σ coeff · monomial`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NcPolynomial(pub BTreeMap<Mono, QPoly>);

/// Element of an `arity`-fold tensor power.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TensorPoly(pub BTreeMap<Vec<Mono>, QPoly>);

/// Generator table of one of the two algebras.
#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    pub variant: Variant,
    pub names: Vec<&'static str>,
    /// `lambda[j][i]` for `j > i`: `g_j g_i = q^a q∨^b g_i g_j`.
    lambda: Vec<Vec<(i32, i32)>>,
    /// Grouplike partner for each `Y`-type generator (`None` for grouplike ones).
    partner: Vec<Option<usize>>,
    star_table: Vec<usize>,
}

impl HopfAlgebra {
    pub fn c() -> Self {
        let names = vec!["Z1", "Z2", "Z1*", "Z2*", "Z1v", "Z2v", "Z1v*", "Z2v*"];
        let mut lambda = vec![vec![(0, 0); 8]; 8];
        lambda[1][0] = (-2, 0);
        lambda[3][2] = (2, 0);
        lambda[5][4] = (0, 2);
        lambda[7][6] = (0, -2);
        let partner = vec![None, Some(0), None, Some(2), None, Some(4), None, Some(6)];
        let star_table = vec![2, 3, 0, 1, 6, 7, 4, 5];
        HopfAlgebra { variant: Variant::C, names, lambda, partner, star_table }
    }
    pub fn d() -> Self {
        let names = vec!["X", "Y", "Xt", "Yt", "Xv", "Yv", "Xtv", "Ytv"];
        let mut lambda = vec![vec![(0, 0); 8]; 8];
        lambda[1][0] = (-2, 0);
        lambda[3][2] = (2, 0);
        lambda[5][4] = (0, -2);
        lambda[7][6] = (0, 2);
        let partner = vec![None, Some(0), None, Some(2), None, Some(4), None, Some(6)];
        let star_table = (0..8).collect();
        HopfAlgebra { variant: Variant::D, names, lambda, partner, star_table }
    }
    pub fn n(&self) -> usize {
        self.names.len()
    }
    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| *n == name)
    }
    pub fn unit_mono(&self) -> Mono {
        vec![0; self.n()]
    }
    pub fn gen_mono(&self, g: usize, e: i32) -> Mono {
        let mut m = self.unit_mono();
        m[g] = e;
        m
    }
    pub fn gen(&self, g: usize) -> NcPolynomial {
        NcPolynomial::single(self.gen_mono(g, 1), QPoly::one())
    }
    pub fn one(&self) -> NcPolynomial {
        NcPolynomial::single(self.unit_mono(), QPoly::one())
    }
    /// Normal-ordered product of monomials with its q-factor.
    pub fn mono_mul(&self, a: &Mono, b: &Mono) -> (QPoly, Mono) {
        let (mut qa, mut qb) = (0i32, 0i32);
        for j in 0..self.n() {
            for i in 0..j {
                let (la, lb) = self.lambda[j][i];
                let e = a[j] * b[i];
                qa += la * e;
                qb += lb * e;
            }
        }
        let m = a.iter().zip(b).map(|(x, y)| x + y).collect();
        (QPoly::monomial(1, qa, qb), m)
    }
    pub fn mul(&self, x: &NcPolynomial, y: &NcPolynomial) -> NcPolynomial {
        let mut out = NcPolynomial::default();
        for (ma, ca) in &x.0 {
            for (mb, cb) in &y.0 {
                let (q, m) = self.mono_mul(ma, mb);
                out.add_term(m, ca.mul(cb).mul(&q));
            }
        }
        out
    }
    /// Product of generator powers in the given (not necessarily normal) order.
    pub fn word(&self, letters: &[(usize, i32)]) -> NcPolynomial {
        let mut out = self.one();
        for &(g, e) in letters {
            out = self.mul(&out, &NcPolynomial::single(self.gen_mono(g, e), QPoly::one()));
        }
        out
    }
    /// Normal ordering is built into the representation; exposed for reports.
    pub fn normal_order(&self, p: &NcPolynomial) -> NcPolynomial {
        let mut out = NcPolynomial::default();
        for (m, c) in &p.0 {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn mono_inverse(&self, m: &Mono) -> (QPoly, Mono) {
        // (Π g_i^{a_i})^{-1} = Π_{reversed} g_i^{-a_i}
        let mut acc = (QPoly::one(), self.unit_mono());
        for i in (0..self.n()).rev() {
            let (q, nm) = self.mono_mul(&acc.1, &self.gen_mono(i, -m[i]));
            acc = (acc.0.mul(&q), nm);
        }
        acc
    }
    pub fn pow(&self, x: &NcPolynomial, e: i32) -> Result<NcPolynomial> {
        let base = if e >= 0 {
            x.clone()
        } else {
            if x.0.len() != 1 {
                return Err(Error::Undefined(format!("inverse of a non-monomial {}", self.show(x))));
            }
            let (m, c) = x.0.iter().next().unwrap();
            let ci = c.inv().ok_or_else(|| Error::Undefined(format!("inverse of coefficient {c}")))?;
            let (q, mi) = self.mono_inverse(m);
            NcPolynomial::single(mi, ci.mul(&q))
        };
        let mut out = self.one();
        for _ in 0..e.unsigned_abs() {
            out = self.mul(&out, &base);
        }
        Ok(out)
    }

    // tensor powers
    pub fn tensor_mul(&self, x: &TensorPoly, y: &TensorPoly) -> TensorPoly {
        let mut out = TensorPoly::default();
        for (ka, ca) in &x.0 {
            for (kb, cb) in &y.0 {
                let mut c = ca.mul(cb);
                let mut key = Vec::with_capacity(ka.len());
                for (a, b) in ka.iter().zip(kb) {
                    let (q, m) = self.mono_mul(a, b);
                    c = c.mul(&q);
                    key.push(m);
                }
                out.add_term(key, c);
            }
        }
        out
    }
    pub fn tensor_one(&self, arity: usize) -> TensorPoly {
        TensorPoly::single(vec![self.unit_mono(); arity], QPoly::one())
    }
    fn tensor_pow(&self, x: &TensorPoly, e: i32) -> Result<TensorPoly> {
        let base = if e >= 0 {
            x.clone()
        } else {
            if x.0.len() != 1 {
                return Err(Error::Undefined(String::from("inverse of a non-grouplike coproduct")));
            }
            let (k, c) = x.0.iter().next().unwrap();
            let mut c = c.inv().ok_or_else(|| Error::Undefined(String::from("non-unit coefficient")))?;
            let mut key = Vec::new();
            for m in k {
                let (q, mi) = self.mono_inverse(m);
                c = c.mul(&q);
                key.push(mi);
            }
            TensorPoly::single(key, c)
        };
        let mut out = self.tensor_one(x.0.keys().next().map_or(2, Vec::len));
        for _ in 0..e.unsigned_abs() {
            out = self.tensor_mul(&out, &base);
        }
        Ok(out)
    }

    /// Δ on a generator: `Δ(X)=X⊗X`, `Δ(Y)=Y⊗X+1⊗Y`.
    fn coproduct_gen(&self, g: usize) -> TensorPoly {
        let one = self.unit_mono();
        match self.partner[g] {
            None => TensorPoly::single(vec![self.gen_mono(g, 1), self.gen_mono(g, 1)], QPoly::one()),
            Some(x) => TensorPoly::single(vec![self.gen_mono(g, 1), self.gen_mono(x, 1)], QPoly::one())
                .add(&TensorPoly::single(vec![one, self.gen_mono(g, 1)], QPoly::one())),
        }
    }
    pub fn coproduct(&self, u: &NcPolynomial) -> Result<TensorPoly> {
        let mut out = TensorPoly::default();
        for (m, c) in &u.0 {
            let mut acc = TensorPoly::single(vec![self.unit_mono(); 2], c.clone());
            for (g, &e) in m.iter().enumerate() {
                if e != 0 {
                    acc = self.tensor_mul(&acc, &self.tensor_pow(&self.coproduct_gen(g), e)?);
                }
            }
            out = out.add(&acc);
        }
        Ok(out)
    }
    /// Apply Δ to one leg of a tensor.
    pub fn coproduct_leg(&self, t: &TensorPoly, leg: usize) -> Result<TensorPoly> {
        let mut out = TensorPoly::default();
        for (k, c) in &t.0 {
            let d = self.coproduct(&NcPolynomial::single(k[leg].clone(), c.clone()))?;
            for (dk, dc) in &d.0 {
                let mut key = k[..leg].to_vec();
                key.extend(dk.iter().cloned());
                key.extend(k[leg + 1..].iter().cloned());
                out.add_term(key, dc.clone());
            }
        }
        Ok(out)
    }
    pub fn counit(&self, u: &NcPolynomial) -> Result<QPoly> {
        let mut out = QPoly::zero();
        for (m, c) in &u.0 {
            let mut val = c.clone();
            for (g, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if self.partner[g].is_some() {
                    if e < 0 {
                        return Err(Error::Undefined(format!("counit of {}^{e}", self.names[g])));
                    }
                    val = QPoly::zero();
                }
            }
            out = out.add(&val);
        }
        Ok(out)
    }
    /// Apply ε to one leg, removing it.
    pub fn counit_leg(&self, t: &TensorPoly, leg: usize) -> Result<TensorPoly> {
        let mut out = TensorPoly::default();
        for (k, c) in &t.0 {
            let e = self.counit(&NcPolynomial::single(k[leg].clone(), QPoly::one()))?;
            let mut key = k.clone();
            key.remove(leg);
            out.add_term(key, c.mul(&e));
        }
        Ok(out)
    }
    fn antipode_gen(&self, g: usize) -> NcPolynomial {
        match self.partner[g] {
            None => NcPolynomial::single(self.gen_mono(g, -1), QPoly::one()),
            Some(x) => {
                let p = self.mul(&self.gen(g), &NcPolynomial::single(self.gen_mono(x, -1), QPoly::one()));
                p.scale(&QPoly::monomial(-1, 0, 0))
            }
        }
    }
    /// `S^{-1}` on a generator, solved from the table of `S`.
    fn antipode_inv_gen(&self, g: usize) -> Result<NcPolynomial> {
        // S acts on exponent vectors linearly: S(mono e) ∝ mono(M e).
        let n = self.n();
        let mut cols = Vec::new();
        for i in 0..n {
            let s = self.antipode_gen(i);
            cols.push(s.0.keys().next().unwrap().clone());
        }
        let mut m = crate::weylalg::IntMatrix::identity(n);
        for (i, col) in cols.iter().enumerate() {
            for j in 0..n {
                m.set(j, i, col[j] as i64);
            }
        }
        let mi = m.inverse()?;
        let w: Mono = (0..n).map(|j| mi.get(j, g) as i32).collect();
        let cand = NcPolynomial::single(w, QPoly::one());
        let img = self.antipode(&cand, false)?;
        let (mono, kappa) = img.0.iter().next().ok_or_else(|| Error::Undefined(String::from("S vanished")))?;
        debug_assert_eq!(*mono, self.gen_mono(g, 1));
        let ki = kappa.inv().ok_or_else(|| Error::Undefined(String::from("non-unit in S^{-1}")))?;
        Ok(cand.scale(&ki))
    }
    /// Antipode `S` (or `S^{-1}`), an anti-homomorphism.
    pub fn antipode(&self, u: &NcPolynomial, inverse: bool) -> Result<NcPolynomial> {
        let mut out = NcPolynomial::default();
        for (m, c) in &u.0 {
            let mut acc = NcPolynomial::single(self.unit_mono(), c.clone());
            for g in (0..self.n()).rev() {
                if m[g] == 0 {
                    continue;
                }
                let sg = if inverse { self.antipode_inv_gen(g)? } else { self.antipode_gen(g) };
                acc = self.mul(&acc, &self.pow(&sg, m[g])?);
            }
            out = out.add(&acc);
        }
        Ok(out)
    }
    /// Anti-linear anti-homomorphism `*`.
    pub fn star(&self, u: &NcPolynomial) -> Result<NcPolynomial> {
        let mut out = NcPolynomial::default();
        for (m, c) in &u.0 {
            let c = match self.variant {
                Variant::C => c.clone(),
                Variant::D => c.invert_variables(),
            };
            let mut acc = NcPolynomial::single(self.unit_mono(), c);
            for g in (0..self.n()).rev() {
                if m[g] != 0 {
                    acc = self.mul(&acc, &self.pow(&self.gen(self.star_table[g]), m[g])?);
                }
            }
            out = out.add(&acc);
        }
        Ok(out)
    }
    /// Multiplication map on two legs of a tensor (legs `leg`, `leg+1`).
    pub fn multiply_legs(&self, t: &TensorPoly, leg: usize) -> TensorPoly {
        let mut out = TensorPoly::default();
        for (k, c) in &t.0 {
            let (q, m) = self.mono_mul(&k[leg], &k[leg + 1]);
            let mut key = k[..leg].to_vec();
            key.push(m);
            key.extend(k[leg + 2..].iter().cloned());
            out.add_term(key, c.mul(&q));
        }
        out
    }
    /// Apply S to one leg.
    pub fn antipode_leg(&self, t: &TensorPoly, leg: usize) -> Result<TensorPoly> {
        let mut out = TensorPoly::default();
        for (k, c) in &t.0 {
            let s = self.antipode(&NcPolynomial::single(k[leg].clone(), c.clone()), false)?;
            for (m, sc) in &s.0 {
                let mut key = k.clone();
                key[leg] = m.clone();
                out.add_term(key, sc.clone());
            }
        }
        Ok(out)
    }

    // representation
    /// Exponent of `π(g)` on the given slot.
    pub fn rep_exponent(&self, g: usize, slot: u32) -> LinForm {
        let j = slot;
        match self.variant {
            Variant::C => {
                let v = inv_ihbar();
                match g {
                    0 => big_p(j),
                    1 => big_q(j),
                    2 => big_p_star(j),
                    3 => big_q_star(j),
                    4 => big_p(j).scale(&v),
                    5 => big_q(j).scale(&v),
                    6 => big_p_star(j).scale(&v).neg(),
                    _ => big_q_star(j).scale(&v).neg(),
                }
            }
            Variant::D => {
                let v = Coeff::hbar_inv();
                match g {
                    0 => var_p(j),
                    1 => var_q(j),
                    2 => var_pt(j),
                    3 => var_qt(j),
                    4 => var_p(j).scale(&v),
                    5 => var_q(j).scale(&v),
                    6 => var_pt(j).scale(&v),
                    _ => var_qt(j).scale(&v),
                }
            }
        }
    }
    /// `exp(π·g)` for `q^a q∨^b`.
    pub fn qmono_exp_arg(&self, a: i32, b: i32) -> Coeff {
        let (a, b) = (Coeff::from(a as i64), Coeff::from(b as i64));
        match self.variant {
            Variant::C => -&(&(&a * &Coeff::hbar()) + &(&b * &Coeff::hbar_inv())),
            Variant::D => (&(&a * &Coeff::hbar()) + &(&b * &Coeff::hbar_inv())).scale(&GaussRat::i()),
        }
    }
    fn coeff_terms(&self, c: &QPoly) -> Vec<Term> {
        c.terms()
            .map(|(&(a, b), &v)| Term::scalar(v, Prefactor::exp(self.qmono_exp_arg(a, b))))
            .collect()
    }
    fn mono_word(&self, m: &Mono, slot: u32) -> Term {
        let mut t = Term::identity();
        for (g, &e) in m.iter().enumerate() {
            if e != 0 {
                t = t.mul(&Term::weyl(self.rep_exponent(g, slot).scale(&Coeff::from(e as i64))));
            }
        }
        t
    }
    /// `π(u)` on one slot.
    pub fn represent(&self, u: &NcPolynomial, slot: u32) -> OperatorSum {
        let mut out = OperatorSum::zero();
        for (m, c) in &u.0 {
            let w = self.mono_word(m, slot);
            for s in self.coeff_terms(c) {
                out.terms.push(s.mul(&w));
            }
        }
        out
    }
    /// `(π⊗…⊗π)(t)` with legs on the given slots.
    pub fn represent_tensor(&self, t: &TensorPoly, slots: &[u32]) -> OperatorSum {
        let mut out = OperatorSum::zero();
        for (k, c) in &t.0 {
            let mut w = Term::identity();
            for (m, &s) in k.iter().zip(slots) {
                w = w.mul(&self.mono_word(m, s));
            }
            for s in self.coeff_terms(c) {
                out.terms.push(s.mul(&w));
            }
        }
        out
    }
    /// `π^{(2)}(u) = (π⊗π)(Δu)` on slots `(j,k)`.
    pub fn tensor_action(&self, u: &NcPolynomial, slots: (u32, u32)) -> Result<OperatorSum> {
        Ok(self.represent_tensor(&self.coproduct(u)?, &[slots.0, slots.1]).normalize())
    }
    /// `π′(u) = π(S u)^tr` on the left dual, `′π(u) = π(S^{-1} u)^tr` on the right dual.
    pub fn dual_action(&self, u: &NcPolynomial, side: Side, slot: u32) -> Result<OperatorSum> {
        let s = self.antipode(u, side == Side::Right)?;
        let rep = self.represent(&s, slot);
        Ok(transpose(&rep))
    }
    pub fn show(&self, p: &NcPolynomial) -> String {
        p.display(self)
    }
    pub fn show_tensor(&self, t: &TensorPoly) -> String {
        if t.0.is_empty() {
            return String::from("0");
        }
        let mut parts = Vec::new();
        for (k, c) in &t.0 {
            let legs: Vec<String> = k.iter().map(|m| mono_string(self, m)).collect();
            parts.push(format!("({c})*{}", legs.join(" ⊗ ")));
        }
        parts.join(" + ")
    }
}

/// Transpose anti-automorphism `q ↦ q, p ↦ −p` with order reversal.
pub fn transpose(s: &OperatorSum) -> OperatorSum {
    let terms = s
        .terms
        .iter()
        .map(|t| Term {
            mult: t.mult,
            pre: t.pre.clone(),
            factors: t
                .factors
                .iter()
                .rev()
                .map(|f| match f {
                    crate::weylalg::Factor::Weyl(l) => crate::weylalg::Factor::Weyl(l.transpose()),
                    other => other.clone(),
                })
                .collect(),
        })
        .collect();
    OperatorSum { terms }.normalize()
}

/// Left (`π′`, via `S`) or right (`′π`, via `S^{-1}`) dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

fn mono_string(alg: &HopfAlgebra, m: &Mono) -> String {
    let mut parts = Vec::new();
    for (g, &e) in m.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(String::from(alg.names[g])),
            _ => parts.push(format!("{}^{e}", alg.names[g])),
        }
    }
    if parts.is_empty() {
        String::from("1")
    } else {
        parts.join(" ")
    }
}

impl NcPolynomial {
    pub fn single(m: Mono, c: QPoly) -> Self {
        let mut p = NcPolynomial::default();
        p.add_term(m, c);
        p
    }
    pub fn add_term(&mut self, m: Mono, c: QPoly) {
        let e = self.0.entry(m.clone()).or_default();
        *e = e.add(&c);
        if e.is_zero() {
            self.0.remove(&m);
        }
    }
    pub fn add(&self, o: &NcPolynomial) -> NcPolynomial {
        let mut out = self.clone();
        for (m, c) in &o.0 {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    pub fn scale(&self, c: &QPoly) -> NcPolynomial {
        let mut out = NcPolynomial::default();
        for (m, v) in &self.0 {
            out.add_term(m.clone(), v.mul(c));
        }
        out
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    pub fn display(&self, alg: &HopfAlgebra) -> String {
        if self.0.is_empty() {
            return String::from("0");
        }
        let parts: Vec<String> = self.0.iter().map(|(m, c)| format!("({c})*{}", mono_string(alg, m))).collect();
        parts.join(" + ")
    }
}

impl TensorPoly {
    pub fn single(k: Vec<Mono>, c: QPoly) -> Self {
        let mut t = TensorPoly::default();
        t.add_term(k, c);
        t
    }
    pub fn add_term(&mut self, k: Vec<Mono>, c: QPoly) {
        let e = self.0.entry(k.clone()).or_default();
        *e = e.add(&c);
        if e.is_zero() {
            self.0.remove(&k);
        }
    }
    pub fn add(&self, o: &TensorPoly) -> TensorPoly {
        let mut out = self.clone();
        for (k, c) in &o.0 {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_z1_reorders_with_q_minus_two() {
        let a = HopfAlgebra::c();
        let p = a.word(&[(1, 1), (0, 1)]);
        assert_eq!(p, NcPolynomial::single(vec![1, 1, 0, 0, 0, 0, 0, 0], QPoly::monomial(1, -2, 0)));
    }

    #[test]
    fn antipode_table() {
        let a = HopfAlgebra::c();
        let s = a.antipode(&a.gen(1), false).unwrap();
        let expect = a.word(&[(1, 1), (0, -1)]).scale(&QPoly::monomial(-1, 0, 0));
        assert_eq!(s, expect);
        let si = a.antipode(&a.gen(1), true).unwrap();
        let expect = a.word(&[(0, -1), (1, 1)]).scale(&QPoly::monomial(-1, 0, 0));
        assert_eq!(si, expect);
    }
}
