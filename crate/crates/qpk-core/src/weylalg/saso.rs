use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::form::{Coord, Generator, Kind, LinForm};
use crate::coeff::{Coeff, Rat};
use crate::error::{Error, Result};

/// Dense square integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    pub n: usize,
    pub a: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        IntMatrix { n, a }
    }
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        let mut a = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "matrix must be square");
            a.extend_from_slice(r);
        }
        IntMatrix { n, a }
    }
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.a[i * self.n + j] = v;
    }
    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut out = IntMatrix { n, a: vec![0; n * n] };
        for i in 0..n {
            for k in 0..n {
                let x = self.get(i, k);
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    out.a[i * n + j] += x * o.get(k, j);
                }
            }
        }
        out
    }
    pub fn transpose(&self) -> IntMatrix {
        let n = self.n;
        let mut out = IntMatrix { n, a: vec![0; n * n] };
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }
    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.n)
    }
    /// Exact determinant by rational elimination.
    pub fn det(&self) -> Rat {
        let n = self.n;
        let mut m: Vec<Rat> = self.a.iter().map(|&x| Rat::from_integer(x as i128)).collect();
        let mut det = Rat::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !m[r * n + col].is_zero()) else {
                return Rat::zero();
            };
            if piv != col {
                for j in 0..n {
                    m.swap(piv * n + j, col * n + j);
                }
                det = -det;
            }
            let p = m[col * n + col];
            det *= p;
            for r in col + 1..n {
                let f = m[r * n + col] / p;
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = m[col * n + j];
                    m[r * n + j] -= f * v;
                }
            }
        }
        det
    }
    /// Exact inverse; errors unless the determinant is ±1.
    pub fn inverse(&self) -> Result<IntMatrix> {
        let n = self.n;
        let d = self.det();
        if d != Rat::one() && d != -Rat::one() {
            return Err(Error::NotUnimodular(format!("det = {d}")));
        }
        let mut m: Vec<Rat> = self.a.iter().map(|&x| Rat::from_integer(x as i128)).collect();
        let mut inv: Vec<Rat> = IntMatrix::identity(n).a.iter().map(|&x| Rat::from_integer(x as i128)).collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !m[r * n + col].is_zero()).expect("nonsingular");
            for j in 0..n {
                m.swap(piv * n + j, col * n + j);
                inv.swap(piv * n + j, col * n + j);
            }
            let p = m[col * n + col];
            for j in 0..n {
                m[col * n + j] /= p;
                inv[col * n + j] /= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = m[r * n + col];
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let (a, b) = (m[col * n + j], inv[col * n + j]);
                    m[r * n + j] -= f * a;
                    inv[r * n + j] -= f * b;
                }
            }
        }
        let a = inv
            .iter()
            .map(|x| {
                debug_assert!(x.is_integer());
                *x.numer() as i64
            })
            .collect();
        Ok(IntMatrix { n, a })
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Special linear operator `(S_c f)(a) = f(a c)` on the listed coordinates,
/// identity on all others.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Saso {
    pub coords: Vec<Coord>,
    pub c: IntMatrix,
    cinv: IntMatrix,
}

impl Saso {
    pub fn identity() -> Self {
        Saso { coords: Vec::new(), c: IntMatrix::identity(0), cinv: IntMatrix::identity(0) }
    }
    pub fn new(coords: Vec<Coord>, c: IntMatrix) -> Result<Self> {
        if coords.len() != c.n {
            return Err(Error::BadArgument(format!(
                "{} coordinates for a {}x{} matrix",
                coords.len(),
                c.n,
                c.n
            )));
        }
        let set: BTreeSet<_> = coords.iter().collect();
        if set.len() != coords.len() {
            return Err(Error::BadArgument(String::from("repeated coordinate")));
        }
        let cinv = c.inverse()?;
        Ok(Saso { coords, c, cinv }.canonical())
    }
    /// Matrix over the coordinates `(t_j, s_j)` for the given slots, in order.
    pub fn on_slots(slots: &[u32], c: IntMatrix) -> Result<Self> {
        let mut coords = Vec::new();
        for &j in slots {
            coords.push(Coord::new(j, super::form::Axis::T));
            coords.push(Coord::new(j, super::form::Axis::S));
        }
        Saso::new(coords, c)
    }
    pub fn is_identity(&self) -> bool {
        self.coords.is_empty()
    }
    pub fn inverse(&self) -> Saso {
        Saso { coords: self.coords.clone(), c: self.cinv.clone(), cinv: self.c.clone() }
    }
    pub fn matrix_inverse(&self) -> &IntMatrix {
        &self.cinv
    }
    /// Re-express on a sorted superset of coordinates.
    fn embed(&self, coords: &[Coord]) -> (IntMatrix, IntMatrix) {
        let n = coords.len();
        let mut c = IntMatrix::identity(n);
        let mut ci = IntMatrix::identity(n);
        let idx: Vec<usize> = self.coords.iter().map(|x| coords.iter().position(|y| y == x).unwrap()).collect();
        for (a, &ia) in idx.iter().enumerate() {
            for (b, &ib) in idx.iter().enumerate() {
                c.set(ia, ib, self.c.get(a, b));
                ci.set(ia, ib, self.cinv.get(a, b));
            }
        }
        (c, ci)
    }
    /// Sort coordinates and drop those on which the operator acts trivially.
    fn canonical(self) -> Saso {
        let mut coords = self.coords.clone();
        coords.sort();
        let (c, ci) = self.embed(&coords);
        let n = coords.len();
        let keep: Vec<usize> = (0..n)
            .filter(|&i| (0..n).any(|j| (c.get(i, j) != (i == j) as i64) || (c.get(j, i) != (i == j) as i64)))
            .collect();
        let k = keep.len();
        let mut c2 = IntMatrix::identity(k);
        let mut ci2 = IntMatrix::identity(k);
        for (a, &ia) in keep.iter().enumerate() {
            for (b, &ib) in keep.iter().enumerate() {
                c2.set(a, b, c.get(ia, ib));
                ci2.set(a, b, ci.get(ia, ib));
            }
        }
        Saso { coords: keep.iter().map(|&i| coords[i]).collect(), c: c2, cinv: ci2 }
    }
    /// Operator product `self ∘ other`, i.e. `S_c S_{c'} = S_{cc'}`.
    pub fn compose(&self, other: &Saso) -> Saso {
        let mut coords: Vec<Coord> = self.coords.iter().chain(other.coords.iter()).cloned().collect();
        coords.sort();
        coords.dedup();
        let (a, ai) = self.embed(&coords);
        let (b, bi) = other.embed(&coords);
        Saso { coords, c: a.mul(&b), cinv: bi.mul(&ai) }.canonical()
    }
    /// `S g S^{-1}` (or `S^{-1} g S` when `inverse`) for a generator.
    pub fn conj_gen(&self, g: &Generator, inverse: bool) -> LinForm {
        let Some(i) = self.coords.iter().position(|x| *x == g.coord()) else {
            return LinForm::gen(*g);
        };
        let (c, ci) = if inverse { (&self.cinv, &self.c) } else { (&self.c, &self.cinv) };
        let mut out = LinForm::zero();
        for (j, cj) in self.coords.iter().enumerate() {
            let v = match g.kind {
                Kind::Pos => c.get(j, i),
                Kind::Mom => ci.get(i, j),
            };
            if v != 0 {
                out.add_term(Generator::new(g.kind, cj.axis, cj.slot), &Coeff::from(v));
            }
        }
        out
    }
    /// `S f S^{-1}` (or `S^{-1} f S` when `inverse`).
    pub fn conj_form(&self, f: &LinForm, inverse: bool) -> LinForm {
        if self.is_identity() {
            return f.clone();
        }
        f.substitute(|g| self.conj_gen(g, inverse))
    }
    pub fn relabel(&self, map: impl Fn(u32) -> u32) -> Saso {
        let coords = self.coords.iter().map(|c| Coord::new(map(c.slot), c.axis)).collect();
        Saso { coords, c: self.c.clone(), cinv: self.cinv.clone() }.canonical()
    }
    pub fn touches_slot(&self, slot: u32) -> bool {
        self.coords.iter().any(|c| c.slot == slot)
    }
}

use alloc::string::String;

impl fmt::Display for Saso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "S[]");
        }
        write!(f, "S[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            let a = match c.axis {
                super::form::Axis::T => 't',
                super::form::Axis::S => 's',
            };
            write!(f, "{a}{}", c.slot)?;
        }
        write!(f, "]{}", self.c)
    }
}

/// `exp(x·y/(πiℏ))` for position form `x` and momentum form `y` with integer
/// coefficients: returns the shear `S_{I + αᵀβ}`, the extra Weyl exponent
/// `(a·y₀ + b·x₀)/(iℏ)` and the prefactor argument `ab/(iℏ)` (meaning
/// `exp(π·ab/(iℏ))`) from the constants `x = x₀ + πa`, `y = y₀ + πb`.
pub fn quadexp(x: &LinForm, y: &LinForm) -> Result<(Saso, LinForm, Coeff)> {
    if !x.is_pure(Kind::Pos) || !y.is_pure(Kind::Mom) {
        return Err(Error::Precondition(format!("quadratic exponential needs position x and momentum y, got x = {x}, y = {y}")));
    }
    let w = super::form::bracket(x, y);
    if !w.is_zero() {
        return Err(Error::Precondition(format!("[x,y] = iπ·({w}) ≠ 0")));
    }
    let coords: Vec<Coord> = x.coords().union(&y.coords()).cloned().collect();
    let alpha = x
        .without_const()
        .integer_vector(Kind::Pos, &coords)
        .ok_or_else(|| Error::Precondition(format!("non-integer coefficients in {x}")))?;
    let beta = y
        .without_const()
        .integer_vector(Kind::Mom, &coords)
        .ok_or_else(|| Error::Precondition(format!("non-integer coefficients in {y}")))?;
    let n = coords.len();
    let mut c = IntMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            c.a[i * n + j] += alpha[i] * beta[j];
        }
    }
    let s = Saso::new(coords, c)?;
    let a = x.pi_const.clone();
    let b = y.pi_const.clone();
    let inv = super::form::named::inv_ihbar();
    let weyl = y.without_const().scale(&a).add(&x.without_const().scale(&b)).scale(&inv);
    let pre = &(&a * &b) * &inv;
    Ok((s, weyl, pre))
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Unimodular `V` with `V·r = ±e₀` (column convention) for a primitive vector `r`.
fn reduce_to_e0(r: &[i64]) -> Result<IntMatrix> {
    let n = r.len();
    let mut v = IntMatrix::identity(n);
    let mut cur: Vec<i64> = r.to_vec();
    for i in 1..n {
        let (a, b) = (cur[0], cur[i]);
        if b == 0 {
            continue;
        }
        let (g, x, y) = ext_gcd(a, b);
        // rows 0 and i of [[x, y], [-b/g, a/g]] have determinant 1
        let (u, w) = (-b / g, a / g);
        let mut nv = v.clone();
        for j in 0..n {
            nv.set(0, j, x * v.get(0, j) + y * v.get(i, j));
            nv.set(i, j, u * v.get(0, j) + w * v.get(i, j));
        }
        v = nv;
        cur[0] = g;
        cur[i] = 0;
    }
    if cur[0] != 1 {
        return Err(Error::Precondition(format!("vector {r:?} is not primitive")));
    }
    Ok(v)
}

/// Given orthogonal primitive integer vectors `α` (position) and `β`
/// (momentum), find a unimodular `c` and indices `u ≠ v` with
/// `S_c q_u S_c^{-1} = α·q` and `S_c p_v S_c^{-1} = β·p`.
pub fn dilog_frame(alpha: &[i64], beta: &[i64]) -> Result<(IntMatrix, usize, usize)> {
    let n = alpha.len();
    if n < 2 || beta.len() != n {
        return Err(Error::BadArgument(String::from("frame needs two vectors of equal length ≥ 2")));
    }
    let dot: i64 = alpha.iter().zip(beta).map(|(a, b)| a * b).sum();
    if dot != 0 {
        return Err(Error::Precondition(format!("α·β = {dot} ≠ 0")));
    }
    // W α = e0
    let w = reduce_to_e0(alpha)?;
    let winv = w.inverse()?;
    // β̃ = β W^{-1} (row vector); its first entry is β·α = 0
    let bt: Vec<i64> = (0..n).map(|j| (0..n).map(|k| beta[k] * winv.get(k, j)).sum()).collect();
    debug_assert_eq!(bt[0], 0);
    // complete β̃[1..] to a unimodular (n-1)x(n-1) matrix with it as first row
    let tail = &bt[1..];
    let v = reduce_to_e0(tail)?;
    let m = v.inverse()?.transpose();
    // C: row u=0 is e0, rows 1.. are [0 | m], with row v=1 equal to β̃
    let mut cm = IntMatrix::identity(n);
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            cm.set(i + 1, j + 1, m.get(i, j));
        }
    }
    let b = cm.mul(&w);
    let c = b.inverse()?;
    Ok((c, 0, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weylalg::form::named::*;
    use crate::weylalg::form::Axis;

    fn s12() -> Saso {
        let c = IntMatrix::from_rows(&[&[1, 0, -1, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 1]]);
        Saso::on_slots(&[1, 2], c).unwrap()
    }

    #[test]
    fn s12_conjugation_on_p2_q2() {
        let s = s12();
        assert_eq!(s.conj_form(&big_p(2), true), big_p(1).add(&big_p(2)));
        assert_eq!(s.conj_form(&big_q(2), true), big_q(2));
    }

    #[test]
    fn composition_is_matrix_product() {
        let a = Saso::on_slots(&[1], IntMatrix::from_rows(&[&[-1, -1], &[1, 0]])).unwrap();
        let a3 = a.compose(&a).compose(&a);
        assert!(a3.is_identity());
        let b = s12();
        assert!(b.compose(&b.inverse()).is_identity());
    }

    #[test]
    fn quadexp_shift_example() {
        let (s, w, pre) = quadexp(&LinForm::q_s(2), &LinForm::p_s(1)).unwrap();
        assert!(w.is_zero() && pre.is_zero());
        assert_eq!(s.coords, vec![Coord::new(1, Axis::S), Coord::new(2, Axis::S)]);
        assert_eq!(s.c, IntMatrix::from_rows(&[&[1, 0], &[1, 1]]));
    }

    #[test]
    fn frame_for_f_factor() {
        let alpha = [0, 1, 1, -1];
        let beta = [-1, 0, 1, 1];
        let (c, u, v) = dilog_frame(&alpha, &beta).unwrap();
        let ci = c.inverse().unwrap();
        for j in 0..4 {
            assert_eq!(c.get(j, u), alpha[j]);
            assert_eq!(ci.get(v, j), beta[j]);
        }
    }
}
