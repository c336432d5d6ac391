use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::form::{bracket, LinForm};
use super::saso::Saso;
use crate::coeff::{Coeff, GaussRat, Rat};
use crate::error::{Error, Result};

/// Which dilogarithm a [`Dilog`] factor denotes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DilogKind {
    /// `Ψ^ℏ(x + iℏy)`.
    Psi,
    /// `Φ^ℏ(x + ℏy)·Φ^ℏ(x − ℏy)^{-1}` (the negative cosmological constant variant).
    PhiPair,
}

/// Quantum dilogarithm factor with its stored `(x, y)` split.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dilog {
    pub kind: DilogKind,
    pub x: LinForm,
    pub y: LinForm,
    pub power: i8,
}

impl Dilog {
    pub fn new(kind: DilogKind, x: LinForm, y: LinForm, power: i8) -> Self {
        Dilog { kind, x, y, power }.canonical()
    }
    pub fn psi(x: LinForm, y: LinForm, power: i8) -> Self {
        Self::new(DilogKind::Psi, x, y, power)
    }
    /// `Ψ^ℏ(z)` for a complex exponent `z`, split as `x = Re z`, `y = Im z / ℏ`.
    pub fn psi_of(z: &LinForm, power: i8) -> Self {
        let y = z.imag_part().scale(&Coeff::hbar_inv());
        Self::psi(z.real_part(), y, power)
    }
    /// `Φ^ℏ(z)Φ^ℏ(z̃)^{-1}` for a real variant exponent `z`: `x` is its
    /// position part plus constant, `ℏy` its momentum part.
    pub fn phi_pair_of(z: &LinForm, power: i8) -> Self {
        let x = z.kind_part(super::form::Kind::Pos).with_const(z.pi_const.clone());
        let y = z.kind_part(super::form::Kind::Mom).scale(&Coeff::hbar_inv());
        Self::new(DilogKind::PhiPair, x, y, power)
    }
    /// Real constants for `Ψ`: the total constant `c_x + iℏc_y` is re-split
    /// so both parts lie in the real subfield.
    fn canonical(mut self) -> Self {
        if self.kind == DilogKind::Psi {
            let cx = self.x.pi_const.clone();
            let cy = self.y.pi_const.clone();
            let h = Coeff::hbar();
            let nx = &cx.re() - &(&h * &cy.im());
            let ny = &cy.re() + &(&cx.im() * &Coeff::hbar_inv());
            self.x.pi_const = nx;
            self.y.pi_const = ny;
        }
        self
    }
    pub fn inverse(&self) -> Self {
        Dilog { power: -self.power, ..self.clone() }
    }
    /// `ℏy`.
    pub fn y_unscaled(&self) -> LinForm {
        self.y.scale(&Coeff::hbar())
    }
    /// `x + iεℏy` for `Ψ`, `x + εℏy` for the Φ pair.
    pub fn arg(&self, eps: i8) -> LinForm {
        let e = Coeff::from(eps as i64);
        match self.kind {
            DilogKind::Psi => self.x.add(&self.y_unscaled().scale(&(&e * &Coeff::i()))),
            DilogKind::PhiPair => self.x.add(&self.y_unscaled().scale(&e)),
        }
    }
    pub fn map_forms(&self, f: impl Fn(&LinForm) -> LinForm) -> Self {
        Dilog::new(self.kind, f(&self.x), f(&self.y), self.power)
    }
    pub fn commutes_with_form(&self, l: &LinForm) -> bool {
        bracket(l, &self.x).is_zero() && bracket(l, &self.y).is_zero()
    }
    pub fn commutes_with(&self, o: &Dilog) -> bool {
        self.commutes_with_form(&o.x) && self.commutes_with_form(&o.y)
    }
    pub fn same_argument(&self, o: &Dilog) -> bool {
        self.kind == o.kind && self.x == o.x && self.y == o.y
    }
}

impl fmt::Display for Dilog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            DilogKind::Psi => "Psi",
            DilogKind::PhiPair => "PhiPair",
        };
        write!(f, "{name}[{} ; {}]", self.x, self.y)?;
        if self.power != 1 {
            write!(f, "^{}", self.power)?;
        }
        Ok(())
    }
}

/// One factor of an operator word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    Saso(Saso),
    Dilog(Dilog),
    /// `e^{L}`.
    Weyl(LinForm),
    /// `exp(x·y/(πiℏ))` with commuting position `x` and momentum `y`.
    Quad(LinForm, LinForm),
}

impl Factor {
    pub fn inverse(&self) -> Factor {
        match self {
            Factor::Saso(s) => Factor::Saso(s.inverse()),
            Factor::Dilog(d) => Factor::Dilog(d.inverse()),
            Factor::Weyl(l) => Factor::Weyl(l.neg()),
            Factor::Quad(x, y) => Factor::Quad(x.clone(), y.neg()),
        }
    }
    /// Image under a bracket-preserving linear substitution.
    pub fn map_forms(&self, f: &impl Fn(&LinForm) -> LinForm) -> Factor {
        match self {
            Factor::Saso(s) => Factor::Saso(s.clone()),
            Factor::Dilog(d) => Factor::Dilog(d.map_forms(f)),
            Factor::Weyl(l) => Factor::Weyl(f(l)),
            Factor::Quad(x, y) => Factor::Quad(f(x), f(y)),
        }
    }
    pub fn relabel(&self, map: &impl Fn(u32) -> u32) -> Factor {
        match self {
            Factor::Saso(s) => Factor::Saso(s.relabel(map)),
            other => other.map_forms(&|l: &LinForm| l.relabel(map)),
        }
    }
    pub fn is_weyl(&self) -> bool {
        matches!(self, Factor::Weyl(_))
    }
    pub fn as_dilog(&self) -> Option<&Dilog> {
        match self {
            Factor::Dilog(d) => Some(d),
            _ => None,
        }
    }
    pub fn as_weyl(&self) -> Option<&LinForm> {
        match self {
            Factor::Weyl(l) => Some(l),
            _ => None,
        }
    }
    fn forms(&self) -> Vec<&LinForm> {
        match self {
            Factor::Saso(_) => Vec::new(),
            Factor::Dilog(d) => alloc::vec![&d.x, &d.y],
            Factor::Weyl(l) => alloc::vec![l],
            Factor::Quad(x, y) => alloc::vec![x, y],
        }
    }
    /// Sufficient commutation test via vanishing brackets.
    pub fn commutes_with(&self, o: &Factor) -> bool {
        if matches!(self, Factor::Saso(_)) || matches!(o, Factor::Saso(_)) {
            return false;
        }
        self.forms().iter().all(|a| o.forms().iter().all(|b| bracket(a, b).is_zero()))
    }
}

/// `e^{L} X e^{-L} = X + iπ·bracket(L, X)`.
pub fn weyl_shift(l: &LinForm, x: &LinForm) -> LinForm {
    x.plus_const(&bracket(l, x).scale(&GaussRat::i()))
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Saso(s) => write!(f, "{s}"),
            Factor::Dilog(d) => write!(f, "{d}"),
            Factor::Weyl(l) => write!(f, "e^{{{l}}}"),
            Factor::Quad(x, y) => write!(f, "Quad[{x} ; {y}]"),
        }
    }
}

/// Scalar `c^{cPower}·exp(π·expArg)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Prefactor {
    pub c_power: i64,
    pub exp_arg: Coeff,
}

impl Prefactor {
    pub fn one() -> Self {
        Prefactor::default()
    }
    pub fn exp(g: Coeff) -> Self {
        Prefactor { c_power: 0, exp_arg: g }
    }
    pub fn mul(&self, o: &Prefactor) -> Prefactor {
        Prefactor { c_power: self.c_power + o.c_power, exp_arg: &self.exp_arg + &o.exp_arg }
    }
    pub fn inverse(&self) -> Prefactor {
        Prefactor { c_power: -self.c_power, exp_arg: -&self.exp_arg }
    }
    pub fn is_one(&self) -> bool {
        self.c_power == 0 && self.exp_arg.is_zero()
    }
}

impl fmt::Display for Prefactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.c_power != 0 {
            parts.push(format!("c^{}", self.c_power));
        }
        if !self.exp_arg.is_zero() {
            parts.push(format!("exp(pi*({}))", self.exp_arg));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// `mult · prefactor · f₁ f₂ … f_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub mult: i64,
    pub pre: Prefactor,
    pub factors: Vec<Factor>,
}

pub type OperatorWord = Term;

impl Term {
    pub fn identity() -> Self {
        Term { mult: 1, pre: Prefactor::one(), factors: Vec::new() }
    }
    pub fn of(factors: Vec<Factor>) -> Self {
        Term { mult: 1, pre: Prefactor::one(), factors }
    }
    pub fn factor(f: Factor) -> Self {
        Self::of(alloc::vec![f])
    }
    pub fn weyl(l: LinForm) -> Self {
        Self::factor(Factor::Weyl(l))
    }
    pub fn saso(s: Saso) -> Self {
        Self::factor(Factor::Saso(s))
    }
    pub fn dilog(d: Dilog) -> Self {
        Self::factor(Factor::Dilog(d))
    }
    pub fn scalar(mult: i64, pre: Prefactor) -> Self {
        Term { mult, pre, factors: Vec::new() }
    }
    pub fn mul(&self, o: &Term) -> Term {
        let mut factors = self.factors.clone();
        factors.extend(o.factors.iter().cloned());
        Term { mult: self.mult * o.mult, pre: self.pre.mul(&o.pre), factors }
    }
    /// Inverse of a monomial word; requires `mult = ±1`.
    pub fn inverse(&self) -> Result<Term> {
        if self.mult.abs() != 1 {
            return Err(Error::BadArgument(format!("cannot invert a word with multiplicity {}", self.mult)));
        }
        Ok(Term {
            mult: self.mult,
            pre: self.pre.inverse(),
            factors: self.factors.iter().rev().map(Factor::inverse).collect(),
        })
    }
    pub fn relabel(&self, map: impl Fn(u32) -> u32) -> Term {
        Term { mult: self.mult, pre: self.pre.clone(), factors: self.factors.iter().map(|f| f.relabel(&map)).collect() }
    }
    pub fn dilog_count(&self) -> usize {
        self.factors.iter().filter(|f| matches!(f, Factor::Dilog(_))).count()
    }
    fn sort_key(&self) -> (usize, Option<&LinForm>, &Prefactor, &Vec<Factor>, i64) {
        let w = self.factors.iter().rev().find_map(|f| f.as_weyl());
        (self.dilog_count(), w, &self.pre, &self.factors, self.mult)
    }
    pub fn normalize(&self) -> Term {
        let mut t = self.clone();
        t.push_saso_left();
        loop {
            let mut changed = t.strip_trivial();
            changed |= t.merge_and_bubble();
            changed |= t.cancel_dilogs();
            if !changed {
                break;
            }
        }
        t.canonical_prefactor();
        t
    }
    fn push_saso_left(&mut self) {
        let mut front = Saso::identity();
        let mut rest: Vec<Factor> = Vec::new();
        for f in self.factors.drain(..) {
            match f {
                Factor::Saso(s) => {
                    // rest · S = S · (S^{-1} rest S)
                    let inv = s.clone();
                    rest = rest.iter().map(|g| g.map_forms(&|l: &LinForm| inv.conj_form(l, true))).collect();
                    front = front.compose(&s);
                }
                other => rest.push(other),
            }
        }
        if !front.is_identity() {
            self.factors.push(Factor::Saso(front));
        }
        self.factors.extend(rest);
    }
    fn strip_trivial(&mut self) -> bool {
        let mut changed = false;
        let mut out = Vec::with_capacity(self.factors.len());
        for f in self.factors.drain(..) {
            match f {
                Factor::Weyl(l) => {
                    if !l.pi_const.is_zero() {
                        self.pre.exp_arg += &l.pi_const;
                        changed = true;
                    }
                    let l = l.without_const();
                    if l.is_zero() {
                        changed = true;
                    } else {
                        out.push(Factor::Weyl(l));
                    }
                }
                Factor::Saso(s) if s.is_identity() => changed = true,
                Factor::Quad(x, y) if x.is_zero() || y.is_zero() => changed = true,
                other => out.push(other),
            }
        }
        self.factors = out;
        changed
    }
    fn merge_and_bubble(&mut self) -> bool {
        let mut changed = false;
        let mut i = 0;
        while i + 1 < self.factors.len() {
            let merged = match (&self.factors[i], &self.factors[i + 1]) {
                (Factor::Weyl(a), Factor::Weyl(b)) => {
                    let w = bracket(a, b);
                    Some((a.add(b), w))
                }
                _ => None,
            };
            if let Some((sum, w)) = merged {
                self.pre.exp_arg += &w.scale(&GaussRat::new(Rat::zero(), Rat::new(1, 2)));
                self.factors[i] = Factor::Weyl(sum);
                self.factors.remove(i + 1);
                changed = true;
                continue;
            }
            if self.factors[i].is_weyl()
                && matches!(self.factors[i + 1], Factor::Dilog(_) | Factor::Quad(_, _))
                && self.factors[i].commutes_with(&self.factors[i + 1])
            {
                self.factors.swap(i, i + 1);
                changed = true;
                i += 1;
                continue;
            }
            i += 1;
        }
        changed
    }
    fn cancel_dilogs(&mut self) -> bool {
        let n = self.factors.len();
        for i in 0..n {
            let Some(d) = self.factors[i].as_dilog() else { continue };
            for j in i + 1..n {
                if let Some(e) = self.factors[j].as_dilog() {
                    if e.same_argument(d) && e.power == -d.power {
                        self.factors.remove(j);
                        self.factors.remove(i);
                        return true;
                    }
                }
                if !self.factors[j].commutes_with(&self.factors[i]) {
                    break;
                }
            }
        }
        false
    }
    fn canonical_prefactor(&mut self) {
        let (c, rest) = self.pre.exp_arg.split_constant();
        let two = Rat::from_integer(2);
        let mut im = c.im - two * (c.im / two).floor();
        if im >= Rat::one() {
            im -= Rat::one();
            self.mult = -self.mult;
        }
        let c = GaussRat::new(c.re, im);
        self.pre.exp_arg = &rest + &Coeff::gauss(c);
    }
    pub fn has_weyl_not_last(&self) -> bool {
        let n = self.factors.len();
        self.factors.iter().enumerate().any(|(i, f)| f.is_weyl() && i + 1 != n)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.mult != 1 || (self.pre.is_one() && self.factors.is_empty()) {
            parts.push(format!("{}", self.mult));
        }
        if !self.pre.is_one() {
            parts.push(format!("{}", self.pre));
        }
        for x in &self.factors {
            parts.push(format!("{x}"));
        }
        write!(f, "{}", parts.join(" · "))
    }
}

/// Finite sum of words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct OperatorSum {
    pub terms: Vec<Term>,
}

impl From<Term> for OperatorSum {
    fn from(t: Term) -> Self {
        OperatorSum { terms: alloc::vec![t] }
    }
}

impl OperatorSum {
    pub fn zero() -> Self {
        OperatorSum::default()
    }
    pub fn identity() -> Self {
        Term::identity().into()
    }
    pub fn add(&self, o: &OperatorSum) -> OperatorSum {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        OperatorSum { terms }
    }
    pub fn mul(&self, o: &OperatorSum) -> OperatorSum {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &o.terms {
                terms.push(a.mul(b));
            }
        }
        OperatorSum { terms }
    }
    pub fn mul_term(&self, t: &Term) -> OperatorSum {
        self.mul(&t.clone().into())
    }
    pub fn term_mul(t: &Term, s: &OperatorSum) -> OperatorSum {
        OperatorSum::from(t.clone()).mul(s)
    }
    pub fn relabel(&self, map: impl Fn(u32) -> u32 + Copy) -> OperatorSum {
        OperatorSum { terms: self.terms.iter().map(|t| t.relabel(map)).collect() }
    }
    pub fn normalize(&self) -> OperatorSum {
        let mut acc: Vec<Term> = Vec::new();
        for t in &self.terms {
            let t = t.normalize();
            if let Some(e) = acc.iter_mut().find(|e| e.pre == t.pre && e.factors == t.factors) {
                e.mult += t.mult;
            } else {
                acc.push(t);
            }
        }
        acc.retain(|t| t.mult != 0);
        acc.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        OperatorSum { terms: acc }
    }
    pub fn equal(&self, o: &OperatorSum) -> bool {
        self.normalize() == o.normalize()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    /// If `self = λ·other` for a single scalar λ (same across all terms), return λ.
    pub fn scalar_ratio(&self, other: &OperatorSum) -> Option<(i64, Prefactor)> {
        let a = self.normalize();
        let b = other.normalize();
        if a.terms.len() != b.terms.len() || a.terms.is_empty() {
            return None;
        }
        let mut ratio: Option<(Rat, Prefactor)> = None;
        let mut used = alloc::vec![false; b.terms.len()];
        for ta in &a.terms {
            let mut found = false;
            for (k, tb) in b.terms.iter().enumerate() {
                if used[k] || ta.factors != tb.factors {
                    continue;
                }
                let r = (Rat::from_integer(ta.mult as i128) / Rat::from_integer(tb.mult as i128), ta.pre.mul(&tb.pre.inverse()));
                match &ratio {
                    None => ratio = Some(r),
                    Some(r0) if *r0 == r => {}
                    Some(_) => continue,
                }
                used[k] = true;
                found = true;
                break;
            }
            if !found {
                return None;
            }
        }
        let (r, p) = ratio?;
        if !r.is_integer() {
            return None;
        }
        let mut t = Term::scalar(*r.numer() as i64, p);
        t.canonical_prefactor();
        Some((t.mult, t.pre))
    }
}

impl fmt::Display for OperatorSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "  +  ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// `(prefactor, e^{L₁+L₂})` with prefactor `exp(½[L₁,L₂])`.
pub fn bch_mul(l1: &LinForm, l2: &LinForm) -> (Prefactor, LinForm) {
    let w = bracket(l1, l2);
    (Prefactor::exp(w.scale(&GaussRat::new(Rat::zero(), Rat::new(1, 2)))), l1.add(l2))
}

