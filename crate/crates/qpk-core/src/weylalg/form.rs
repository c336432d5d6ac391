use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::coeff::{Coeff, GaussRat};

/// Position (`q`) or momentum (`p`) generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Pos,
    Mom,
}

/// The two coordinates `t`, `s` of one tensor factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    T,
    S,
}

/// A coordinate of the configuration space: `(slot, axis)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coord {
    pub slot: u32,
    pub axis: Axis,
}

impl Coord {
    pub fn new(slot: u32, axis: Axis) -> Self {
        Coord { slot, axis }
    }
}

/// Generator `q_{axis,slot}` or `p_{axis,slot}`; ordered by (slot, axis, kind).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub slot: u32,
    pub axis: Axis,
    pub kind: Kind,
}

impl Generator {
    pub fn new(kind: Kind, axis: Axis, slot: u32) -> Self {
        Generator { slot, axis, kind }
    }
    pub fn coord(&self) -> Coord {
        Coord { slot: self.slot, axis: self.axis }
    }
    pub fn all_of_slot(slot: u32) -> [Generator; 4] {
        [
            Generator::new(Kind::Pos, Axis::T, slot),
            Generator::new(Kind::Pos, Axis::S, slot),
            Generator::new(Kind::Mom, Axis::T, slot),
            Generator::new(Kind::Mom, Axis::S, slot),
        ]
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            Kind::Pos => 'q',
            Kind::Mom => 'p',
        };
        let a = match self.axis {
            Axis::T => 't',
            Axis::S => 's',
        };
        write!(f, "{k}_{a}{}", self.slot)
    }
}

/// Linear form `Σ c_g·g + π·piConst`. Used both for real forms
/// (self-adjoint combinations) and complex exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LinForm {
    coeffs: BTreeMap<Generator, Coeff>,
    pub pi_const: Coeff,
}

pub type RealLinearForm = LinForm;
pub type ComplexExponent = LinForm;

impl LinForm {
    pub fn zero() -> Self {
        LinForm::default()
    }
    pub fn gen(g: Generator) -> Self {
        Self::term(g, Coeff::one())
    }
    pub fn term(g: Generator, c: Coeff) -> Self {
        let mut f = LinForm::zero();
        f.add_term(g, &c);
        f
    }
    pub fn constant(c: Coeff) -> Self {
        LinForm { coeffs: BTreeMap::new(), pi_const: c }
    }
    pub fn q_t(j: u32) -> Self {
        Self::gen(Generator::new(Kind::Pos, Axis::T, j))
    }
    pub fn q_s(j: u32) -> Self {
        Self::gen(Generator::new(Kind::Pos, Axis::S, j))
    }
    pub fn p_t(j: u32) -> Self {
        Self::gen(Generator::new(Kind::Mom, Axis::T, j))
    }
    pub fn p_s(j: u32) -> Self {
        Self::gen(Generator::new(Kind::Mom, Axis::S, j))
    }
    pub fn add_term(&mut self, g: Generator, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(g).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&g);
        }
    }
    pub fn coeff(&self, g: &Generator) -> Coeff {
        self.coeffs.get(g).cloned().unwrap_or_default()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Generator, &Coeff)> {
        self.coeffs.iter()
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.pi_const.is_zero()
    }
    pub fn has_no_generators(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn add(&self, o: &LinForm) -> LinForm {
        let mut out = self.clone();
        for (g, c) in &o.coeffs {
            out.add_term(*g, c);
        }
        out.pi_const += &o.pi_const;
        out
    }
    pub fn sub(&self, o: &LinForm) -> LinForm {
        self.add(&o.neg())
    }
    pub fn neg(&self) -> LinForm {
        self.scale(&Coeff::int(-1))
    }
    pub fn scale(&self, c: &Coeff) -> LinForm {
        let mut out = LinForm::zero();
        for (g, v) in &self.coeffs {
            out.add_term(*g, &(v * c));
        }
        out.pi_const = &self.pi_const * c;
        out
    }
    pub fn plus_const(&self, c: &Coeff) -> LinForm {
        let mut out = self.clone();
        out.pi_const += c;
        out
    }
    pub fn with_const(&self, c: Coeff) -> LinForm {
        let mut out = self.clone();
        out.pi_const = c;
        out
    }
    pub fn without_const(&self) -> LinForm {
        self.with_const(Coeff::zero())
    }
    /// Coefficientwise complex conjugate (generators are self-adjoint).
    pub fn conj(&self) -> LinForm {
        self.map_coeffs(|c| c.conj())
    }
    pub fn real_part(&self) -> LinForm {
        self.map_coeffs(|c| c.re())
    }
    pub fn imag_part(&self) -> LinForm {
        self.map_coeffs(|c| c.im())
    }
    fn map_coeffs(&self, f: impl Fn(&Coeff) -> Coeff) -> LinForm {
        let mut out = LinForm::zero();
        for (g, v) in &self.coeffs {
            out.add_term(*g, &f(v));
        }
        out.pi_const = f(&self.pi_const);
        out
    }
    /// True when every coefficient and the constant lie in the real subfield.
    pub fn is_real(&self) -> bool {
        self.coeffs.values().all(Coeff::is_real) && self.pi_const.is_real()
    }
    pub fn kind_part(&self, kind: Kind) -> LinForm {
        let mut out = LinForm::zero();
        for (g, v) in &self.coeffs {
            if g.kind == kind {
                out.add_term(*g, v);
            }
        }
        out
    }
    pub fn is_pure(&self, kind: Kind) -> bool {
        self.coeffs.keys().all(|g| g.kind == kind)
    }
    pub fn slots(&self) -> BTreeSet<u32> {
        self.coeffs.keys().map(|g| g.slot).collect()
    }
    pub fn touches_slot(&self, slot: u32) -> bool {
        self.coeffs.keys().any(|g| g.slot == slot)
    }
    /// Substitute every generator by a form (linear extension, constants kept).
    pub fn substitute(&self, f: impl Fn(&Generator) -> LinForm) -> LinForm {
        let mut out = LinForm::constant(self.pi_const.clone());
        for (g, v) in &self.coeffs {
            out = out.add(&f(g).scale(v));
        }
        out
    }
    pub fn relabel(&self, map: impl Fn(u32) -> u32) -> LinForm {
        self.substitute(|g| LinForm::gen(Generator::new(g.kind, g.axis, map(g.slot))))
    }
    /// Transpose anti-automorphism on generators: q ↦ q, p ↦ −p.
    pub fn transpose(&self) -> LinForm {
        self.substitute(|g| match g.kind {
            Kind::Pos => LinForm::gen(*g),
            Kind::Mom => LinForm::gen(*g).neg(),
        })
    }
    /// Integer coefficient vector over the given coordinates for one kind.
    pub fn integer_vector(&self, kind: Kind, coords: &[Coord]) -> Option<Vec<i64>> {
        let mut v = alloc::vec![0i64; coords.len()];
        for (g, c) in &self.coeffs {
            if g.kind != kind {
                return None;
            }
            let idx = coords.iter().position(|x| *x == g.coord())?;
            v[idx] = c.as_integer()?;
        }
        Some(v)
    }
    pub fn coords(&self) -> BTreeSet<Coord> {
        self.coeffs.keys().map(|g| g.coord()).collect()
    }
}

/// Commutator in units of iπ: `[u, v] = iπ·bracket(u, v)`, with
/// `[p_j, q_j] = iπℏ`. Constants do not contribute.
pub fn bracket(u: &LinForm, v: &LinForm) -> Coeff {
    let mut w = Coeff::zero();
    for (g, a) in &u.coeffs {
        let partner = Generator::new(
            match g.kind {
                Kind::Pos => Kind::Mom,
                Kind::Mom => Kind::Pos,
            },
            g.axis,
            g.slot,
        );
        if let Some(b) = v.coeffs.get(&partner) {
            let ab = a * b;
            match g.kind {
                Kind::Mom => w += &ab,
                Kind::Pos => w = &w - &ab,
            }
        }
    }
    &w * &Coeff::hbar()
}

fn fmt_coeff_factor(c: &Coeff) -> (bool, String) {
    let s = format!("{c}");
    if s == "1" {
        return (false, String::new());
    }
    if s == "-1" {
        return (true, String::new());
    }
    if c.len() == 1 && !s.contains(' ') {
        if let Some(rest) = s.strip_prefix('-') {
            return (true, format!("{rest}*"));
        }
        return (false, format!("{s}*"));
    }
    (false, format!("({s})*"))
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (g, c) in &self.coeffs {
            let (neg, pre) = fmt_coeff_factor(c);
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            write!(f, "{pre}{g}")?;
        }
        if !self.pi_const.is_zero() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "pi*({})", self.pi_const)?;
        }
        Ok(())
    }
}

/// Named complex exponents of one tensor factor.
pub mod named {
    use super::*;

    fn ci() -> Coeff {
        Coeff::i()
    }
    /// `P = q_t + i p_s`.
    pub fn big_p(j: u32) -> LinForm {
        LinForm::q_t(j).add(&LinForm::p_s(j).scale(&ci()))
    }
    /// `Q = q_s − i p_t`.
    pub fn big_q(j: u32) -> LinForm {
        LinForm::q_s(j).sub(&LinForm::p_t(j).scale(&ci()))
    }
    /// `P* = q_t − i p_s`.
    pub fn big_p_star(j: u32) -> LinForm {
        big_p(j).conj()
    }
    /// `Q* = q_s + i p_t`.
    pub fn big_q_star(j: u32) -> LinForm {
        big_q(j).conj()
    }
    /// Variant `P = q_t + p_s` with `[P,Q] = 2πiℏ`.
    pub fn var_p(j: u32) -> LinForm {
        LinForm::q_t(j).add(&LinForm::p_s(j))
    }
    /// Variant `Q = q_s − p_t`.
    pub fn var_q(j: u32) -> LinForm {
        LinForm::q_s(j).sub(&LinForm::p_t(j))
    }
    /// Variant `P̃ = q_t − p_s`.
    pub fn var_pt(j: u32) -> LinForm {
        LinForm::q_t(j).sub(&LinForm::p_s(j))
    }
    /// Variant `Q̃ = q_s + p_t`.
    pub fn var_qt(j: u32) -> LinForm {
        LinForm::q_s(j).add(&LinForm::p_t(j))
    }
    /// `1/(iℏ) = −i ℏ^{-1}`.
    pub fn inv_ihbar() -> Coeff {
        Coeff::hbar_inv().scale(&(-&GaussRat::i()))
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn heisenberg_brackets() {
        assert_eq!(bracket(&LinForm::p_t(1), &LinForm::q_t(1)), Coeff::hbar());
        assert!(bracket(&LinForm::q_t(1), &LinForm::q_s(2)).is_zero());
        // [P,Q] = iπ·(2iℏ) = −2πℏ
        assert_eq!(bracket(&big_p(1), &big_q(1)), Coeff::hbar().scale(&GaussRat::int(2)).scale(&GaussRat::i()));
        // variant [P,Q] = 2πiℏ = −[P̃,Q̃]
        assert_eq!(bracket(&var_p(1), &var_q(1)), Coeff::hbar().scale(&GaussRat::int(2)));
        assert_eq!(bracket(&var_pt(1), &var_qt(1)), Coeff::hbar().scale(&GaussRat::int(-2)));
    }

    #[test]
    fn display() {
        let f = big_q(1).plus_const(&Coeff::hbar());
        assert_eq!(format!("{f}"), "-i*p_t1 + q_s1 + pi*(h)");
    }
}
