//! Operator builders for `π`, `F`, `T`, `A`, `A^{(m)}`, `C`, `D`, permutations,
//! and the catalog of identities they satisfy.

pub mod catalog;

use alloc::vec::Vec;

use crate::coeff::{Coeff, GaussRat};
use crate::error::Result;
use crate::hopf::{HopfAlgebra, Variant};
use crate::weylalg::form::named::*;
use crate::weylalg::{Dilog, IntMatrix, LinForm, OperatorSum, Prefactor, Saso, Term};

pub use catalog::{find_entry, identity_catalog, verify_symbolic, CatalogEntry, Equation, NumericProfile, Suite};

/// Generator × slot → exponent, i.e. `π_j(g) = e^{L}`.
pub struct RepAssignment {
    pub algebra: HopfAlgebra,
}

impl RepAssignment {
    pub fn new(variant: Variant) -> Self {
        let algebra = match variant {
            Variant::C => HopfAlgebra::c(),
            Variant::D => HopfAlgebra::d(),
        };
        RepAssignment { algebra }
    }
    pub fn exponent(&self, g: usize, slot: u32) -> LinForm {
        self.algebra.rep_exponent(g, slot)
    }
    /// `π_j(g)` as a word.
    pub fn word(&self, g: usize, slot: u32) -> Term {
        Term::weyl(self.exponent(g, slot))
    }
    /// `π^{(2)}(g)` on slots `(j,k)`.
    pub fn tensor(&self, g: usize, j: u32, k: u32) -> OperatorSum {
        self.algebra.tensor_action(&self.algebra.gen(g), (j, k)).expect("generators have coproducts")
    }
}

fn m2(a: i64, b: i64, c: i64, d: i64) -> IntMatrix {
    IntMatrix::from_rows(&[&[a, b], &[c, d]])
}

fn saso(slots: &[u32], c: IntMatrix) -> Saso {
    Saso::on_slots(slots, c).expect("unimodular by construction")
}

/// Matrix of `S₁₂` on `(t₁,s₁,t₂,s₂)`.
pub fn s12_matrix() -> IntMatrix {
    IntMatrix::from_rows(&[&[1, 0, -1, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 1]])
}

/// `S_{ij} = e^{−(P_iQ_j − P_i*Q_j*)/(2πℏ)}`.
pub fn build_s(i: u32, j: u32) -> Saso {
    saso(&[i, j], s12_matrix())
}

/// Argument `Q_i + P_j − Q_j` of the dilogarithm in `F_{ij}`.
pub fn f_argument(variant: Variant, i: u32, j: u32) -> LinForm {
    match variant {
        Variant::C => big_q(i).add(&big_p(j)).sub(&big_q(j)),
        Variant::D => var_q(i).add(&var_p(j)).sub(&var_q(j)),
    }
}

fn dilog_of(variant: Variant, z: &LinForm, power: i8) -> Dilog {
    match variant {
        Variant::C => Dilog::psi_of(z, power),
        Variant::D => Dilog::phi_pair_of(z, power),
    }
}

/// `F_{ij} = S_{ij} Ψ^ℏ(Q_i+P_j−Q_j)^{-1}`; for `D` the dilogarithm is the
/// pair `Φ^ℏ(Q̃_i+P̃_j−Q̃_j) Φ^ℏ(Q_i+P_j−Q_j)^{-1}`.
pub fn build_f(variant: Variant, i: u32, j: u32) -> Term {
    Term::saso(build_s(i, j)).mul(&Term::dilog(dilog_of(variant, &f_argument(variant, i, j), -1)))
}

/// `T_{ij} = Ψ^ℏ(Q_j+P_i−Q_i) S_{ji}^{-1}`.
pub fn build_t(variant: Variant, i: u32, j: u32) -> Term {
    Term::dilog(dilog_of(variant, &f_argument(variant, j, i), 1)).mul(&Term::saso(build_s(j, i).inverse()))
}

/// Matrix `(−1,−1;1,0)` of order three.
pub fn a1_matrix() -> IntMatrix {
    m2(-1, -1, 1, 0)
}

/// `A = c·S_{(−1,−1;1,0)} e^{−q_s + ℏ^{-1}p_t}` on slot `j`.
pub fn build_a(j: u32) -> Term {
    let l = LinForm::q_s(j).neg().add(&LinForm::p_t(j).scale(&Coeff::hbar_inv()));
    let mut t = Term::saso(saso(&[j], a1_matrix())).mul(&Term::weyl(l));
    t.pre.c_power = 1;
    t
}

/// `e^{πi(m−1)²/3}·S_{(−1,−1;1,0)} e^{(m−1)(q_s − ℏ^{-1}p_t)}` on slot `j`.
pub fn build_a_m(m: &Coeff, j: u32) -> Term {
    let m1 = m - &Coeff::one();
    let phase = (&m1 * &m1).scale(&GaussRat::new(0.into(), num_rational::Ratio::new(1, 3)));
    let l = LinForm::q_s(j).sub(&LinForm::p_t(j).scale(&Coeff::hbar_inv())).scale(&m1);
    Term::scalar(1, Prefactor::exp(phase)).mul(&Term::saso(saso(&[j], a1_matrix()))).mul(&Term::weyl(l))
}

/// Variant `A^{(m)} = S_{(−1,−1;1,0)} e^{(m−1)(1+ℏ^{-1})q_s}`.
pub fn build_a_m_variant(m: &Coeff, j: u32) -> Term {
    let m1 = m - &Coeff::one();
    let k = &m1 * &(&Coeff::one() + &Coeff::hbar_inv());
    Term::saso(saso(&[j], a1_matrix())).mul(&Term::weyl(LinForm::q_s(j).scale(&k)))
}

/// Variant `A = c·S_{(−1,−1;1,0)} e^{−(1+ℏ^{-1})q_s}`.
pub fn build_a_variant(j: u32) -> Term {
    let k = -&(&Coeff::one() + &Coeff::hbar_inv());
    let mut t = Term::saso(saso(&[j], a1_matrix())).mul(&Term::weyl(LinForm::q_s(j).scale(&k)));
    t.pre.c_power = 1;
    t
}

/// `A^{(m)}` for the given algebra.
pub fn build_a_m_for(variant: Variant, m: &Coeff, j: u32) -> Term {
    match variant {
        Variant::C => build_a_m(m, j),
        Variant::D => build_a_m_variant(m, j),
    }
}

/// `C = S_{(−1,−1;0,1)} e^{q_t + ℏ^{-1}p_s}`.
pub fn build_c(j: u32) -> Term {
    let l = LinForm::q_t(j).add(&LinForm::p_s(j).scale(&Coeff::hbar_inv()));
    Term::saso(saso(&[j], m2(-1, -1, 0, 1))).mul(&Term::weyl(l))
}

/// `D = S_{(−1,−1;0,1)} e^{−q_t + ℏ^{-1}p_s}`.
pub fn build_d(j: u32) -> Term {
    let l = LinForm::q_t(j).neg().add(&LinForm::p_s(j).scale(&Coeff::hbar_inv()));
    Term::saso(saso(&[j], m2(-1, -1, 0, 1))).mul(&Term::weyl(l))
}

/// `P_σ` with `P_σ X_j P_σ^{-1} = X_{σ(j)}`; `map` lists `(j, σ(j))`.
pub fn build_perm(map: &[(u32, u32)]) -> Term {
    let mut slots: Vec<u32> = map.iter().map(|p| p.0).collect();
    slots.sort();
    let n = slots.len();
    let mut c = IntMatrix::identity(2 * n);
    for i in 0..2 * n {
        c.set(i, i, 0);
    }
    for &(j, k) in map {
        let a = slots.iter().position(|&s| s == j).unwrap();
        let b = slots.iter().position(|&s| s == k).expect("σ must permute the listed slots");
        c.set(2 * b, 2 * a, 1);
        c.set(2 * b + 1, 2 * a + 1, 1);
    }
    Term::saso(saso(&slots, c))
}

/// `X u X^{-1}` for a monomial word `X`.
pub fn conjugate(x: &Term, u: &OperatorSum) -> Result<OperatorSum> {
    let xi = x.inverse()?;
    Ok(OperatorSum::term_mul(x, u).mul_term(&xi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_one_is_order_three() {
        let a = build_a_m(&Coeff::one(), 1);
        let cube = a.mul(&a).mul(&a).normalize();
        assert!(cube.factors.is_empty() && cube.pre.is_one() && cube.mult == 1);
    }

    #[test]
    fn perm_12_matches_displayed_matrix() {
        let p = build_perm(&[(1, 2), (2, 1)]);
        let expect = saso(&[1, 2], IntMatrix::from_rows(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]]));
        assert_eq!(p, Term::saso(expect));
    }
}
