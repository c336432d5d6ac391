//! Exact coefficients: Laurent polynomials in the formal symbols ℏ and m
//! over the Gaussian rationals ℚ(i).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = Ratio<i128>;

/// A Gaussian rational `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }
    pub fn int(n: i128) -> Self {
        GaussRat { re: Rat::from_integer(n), im: Rat::zero() }
    }
    pub fn i() -> Self {
        GaussRat { re: Rat::zero(), im: Rat::one() }
    }
    pub fn zero() -> Self {
        Self::int(0)
    }
    pub fn one() -> Self {
        Self::int(1)
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    pub fn conj(&self) -> Self {
        GaussRat { re: self.re, im: -self.im }
    }
    pub fn inv(&self) -> Option<Self> {
        let n = self.re * self.re + self.im * self.im;
        if n.is_zero() {
            return None;
        }
        Some(GaussRat { re: self.re / n, im: -self.im / n })
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        GaussRat { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        GaussRat {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re, im: -self.im }
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rat(&self.re)),
            (true, false) => {
                if self.im == Rat::one() {
                    write!(f, "i")
                } else if self.im == -Rat::one() {
                    write!(f, "-i")
                } else {
                    write!(f, "{}i", fmt_rat(&self.im))
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                let a = self.im.abs();
                if a == Rat::one() {
                    write!(f, "({}{}i)", fmt_rat(&self.re), sign)
                } else {
                    write!(f, "({}{}{}i)", fmt_rat(&self.re), sign, fmt_rat(&a))
                }
            }
        }
    }
}

/// Exponent pair `(ℏ-degree, m-degree)` of a monomial.
pub type Mono = (i32, i32);

/// Element of ℚ(i)[ℏ^{±1}, m^{±1}] in canonical sparse form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Coeff {
    terms: BTreeMap<Mono, GaussRat>,
}

impl PartialOrd for Coeff {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coeff {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms.iter().cmp(other.terms.iter())
    }
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff { terms: BTreeMap::new() }
    }
    pub fn one() -> Self {
        Self::int(1)
    }
    pub fn int(n: i128) -> Self {
        Self::monomial(GaussRat::int(n), 0, 0)
    }
    pub fn rat(n: i128, d: i128) -> Self {
        Self::monomial(GaussRat::new(Rat::new(n, d), Rat::zero()), 0, 0)
    }
    pub fn i() -> Self {
        Self::monomial(GaussRat::i(), 0, 0)
    }
    /// The formal symbol ℏ.
    pub fn hbar() -> Self {
        Self::monomial(GaussRat::one(), 1, 0)
    }
    /// ℏ^{-1}.
    pub fn hbar_inv() -> Self {
        Self::monomial(GaussRat::one(), -1, 0)
    }
    /// The formal symbol m.
    pub fn m() -> Self {
        Self::monomial(GaussRat::one(), 0, 1)
    }
    pub fn monomial(c: GaussRat, h: i32, m: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((h, m), c);
        }
        Coeff { terms }
    }
    pub fn gauss(c: GaussRat) -> Self {
        Self::monomial(c, 0, 0)
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &GaussRat)> {
        self.terms.iter()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    /// Coefficient of ℏ^0 m^0.
    pub fn constant(&self) -> GaussRat {
        self.terms.get(&(0, 0)).cloned().unwrap_or_else(GaussRat::zero)
    }
    /// True when every coefficient has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.im.is_zero())
    }
    pub fn conj(&self) -> Self {
        Coeff { terms: self.terms.iter().map(|(k, v)| (*k, v.conj())).collect() }
    }
    pub fn re(&self) -> Self {
        let mut out = Coeff::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, GaussRat::new(v.re, Rat::zero()));
        }
        out
    }
    pub fn im(&self) -> Self {
        let mut out = Coeff::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, GaussRat::new(v.im, Rat::zero()));
        }
        out
    }
    fn add_term(&mut self, k: Mono, v: GaussRat) {
        if v.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(GaussRat::zero);
        *e = &*e + &v;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }
    pub fn scale(&self, c: &GaussRat) -> Self {
        let mut out = Coeff::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }
    /// Integer value when the coefficient is a real integer constant.
    pub fn as_integer(&self) -> Option<i64> {
        if self.is_zero() {
            return Some(0);
        }
        if self.terms.len() != 1 {
            return None;
        }
        let (k, v) = self.terms.iter().next()?;
        if *k != (0, 0) || !v.im.is_zero() || !v.re.is_integer() {
            return None;
        }
        i64::try_from(*v.re.numer()).ok()
    }
    /// Rational constant when the coefficient is a real constant.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.terms.len() != 1 {
            return None;
        }
        let (k, v) = self.terms.iter().next()?;
        if *k != (0, 0) || !v.im.is_zero() {
            return None;
        }
        Some(v.re)
    }
    /// Exact division; only monomial divisors are supported.
    pub fn div(&self, d: &Coeff) -> Result<Self> {
        if d.terms.len() != 1 {
            return Err(Error::NonMonomialDivision(format!("{d}")));
        }
        let (&(h, m), c) = d.terms.iter().next().unwrap();
        let inv = c.inv().ok_or_else(|| Error::NonMonomialDivision(format!("{d}")))?;
        let mut out = Coeff::zero();
        for (&(a, b), v) in &self.terms {
            out.add_term((a - h, b - m), v * &inv);
        }
        Ok(out)
    }
    /// Substitute a rational value for m.
    pub fn subst_m(&self, m: Rat) -> Self {
        let mut out = Coeff::zero();
        for (&(h, e), v) in &self.terms {
            let mut p = Rat::one();
            if e >= 0 {
                for _ in 0..e {
                    p *= m;
                }
            } else {
                for _ in 0..(-e) {
                    p /= m;
                }
            }
            out.add_term((h, 0), v * &GaussRat::new(p, Rat::zero()));
        }
        out
    }
    /// Coefficient of a given monomial.
    pub fn coefficient(&self, k: Mono) -> GaussRat {
        self.terms.get(&k).cloned().unwrap_or_else(GaussRat::zero)
    }
    /// Remove the constant term ℏ^0 m^0 and return it.
    pub fn split_constant(&self) -> (GaussRat, Coeff) {
        let mut rest = self.clone();
        let c = rest.terms.remove(&(0, 0)).unwrap_or_else(GaussRat::zero);
        (c, rest)
    }
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Self {
        Coeff::int(n as i128)
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, o: &Coeff) -> Coeff {
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(*k, v.clone());
        }
        out
    }
}

impl Add for Coeff {
    type Output = Coeff;
    fn add(self, o: Coeff) -> Coeff {
        &self + &o
    }
}

impl AddAssign<&Coeff> for Coeff {
    fn add_assign(&mut self, o: &Coeff) {
        for (k, v) in &o.terms {
            self.add_term(*k, v.clone());
        }
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, o: &Coeff) -> Coeff {
        self + &(-o)
    }
}

impl Sub for Coeff {
    type Output = Coeff;
    fn sub(self, o: Coeff) -> Coeff {
        &self - &o
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff { terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect() }
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, o: &Coeff) -> Coeff {
        let mut out = Coeff::zero();
        for (&(a, b), v) in &self.terms {
            for (&(c, d), w) in &o.terms {
                out.add_term((a + c, b + d), v * w);
            }
        }
        out
    }
}

impl Mul for Coeff {
    type Output = Coeff;
    fn mul(self, o: Coeff) -> Coeff {
        &self * &o
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(h, m), v) in &self.terms {
            let mut c = format!("{v}");
            let neg = c.starts_with('-') && !c.starts_with("-i") || c == "-i";
            if neg {
                c.remove(0);
            }
            if !first {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            first = false;
            let mut parts: alloc::vec::Vec<String> = alloc::vec::Vec::new();
            if c != "1" || (h == 0 && m == 0) {
                parts.push(c);
            }
            match h {
                0 => {}
                1 => parts.push(String::from("h")),
                _ => parts.push(format!("h^{h}")),
            }
            match m {
                0 => {}
                1 => parts.push(String::from("m")),
                _ => parts.push(format!("m^{m}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let h = Coeff::hbar();
        let x = &(&h + &Coeff::i()) * &(&h - &Coeff::i());
        assert_eq!(x, &(&h * &h) + &Coeff::one());
        assert_eq!(format!("{}", Coeff::zero()), "0");
        let y = &Coeff::rat(-1, 2) + &Coeff::hbar_inv().scale(&GaussRat::i());
        assert_eq!(format!("{y}"), "i*h^-1 - 1/2");
        assert_eq!(h.div(&h).unwrap(), Coeff::one());
        assert!((&h + &Coeff::one()).div(&(&h + &Coeff::one())).is_err());
    }

    #[test]
    fn subst_m_evaluates() {
        let m = Coeff::m();
        let e = &(&m - &Coeff::one()) * &(&m - &Coeff::one());
        assert_eq!(e.subst_m(Rat::from_integer(1)), Coeff::zero());
        assert_eq!(e.subst_m(Rat::from_integer(3)), Coeff::int(4));
    }
}
