//! Verifiable identities with their proof scripts.
//!
//! Every entry carries a list of equations, the proof script that closes
//! them (one `expect-equal` per equation, in order), and a numeric profile.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;

use super::*;
use crate::hopf::{HopfAlgebra, Side, Variant};

/// One operator identity `lhs = rhs`.
#[derive(Clone, Debug)]
pub struct Equation {
    pub label: String,
    pub lhs: OperatorSum,
    pub rhs: OperatorSum,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NumericProfile {
    /// Residuals of every equation on `L²(ℝ^{2·slots})`.
    Numeric { slots: u32 },
    SymbolicOnly(&'static str),
}

/// Which part of the catalog an entry belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// `C_{q,q∨}` identities.
    Main,
    /// The negative cosmological constant variant `D_{q,q∨}`.
    Variant,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub paper_ref: &'static str,
    pub suite: Suite,
    pub equations: Vec<Equation>,
    pub script_path: &'static str,
    pub script: &'static str,
    pub numeric: NumericProfile,
}

macro_rules! script {
    ($name:literal) => {
        (concat!("scripts/", $name, ".qps"), include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/scripts/", $name, ".qps")))
    };
}

fn eq(label: impl Into<String>, lhs: impl Into<OperatorSum>, rhs: impl Into<OperatorSum>) -> Equation {
    Equation { label: label.into(), lhs: lhs.into(), rhs: rhs.into() }
}

fn w(l: LinForm) -> Term {
    Term::weyl(l)
}

fn inv(t: &Term) -> Term {
    t.inverse().expect("monomial builders are invertible")
}

fn conj(x: &Term, u: impl Into<OperatorSum>) -> OperatorSum {
    conjugate(x, &u.into()).expect("monomial builders are invertible")
}

/// `π(a·i + b·ℏ)` as a constant coefficient.
fn pc(a: i64, b: i64) -> Coeff {
    &Coeff::i().scale(&GaussRat::int(a as i128)) + &Coeff::hbar().scale(&GaussRat::int(b as i128))
}

fn m_minus_one() -> Coeff {
    &Coeff::m() - &Coeff::one()
}

/// `e^{πi(m−1)²/3}`.
fn am_phase() -> Prefactor {
    let m1 = m_minus_one();
    Prefactor::exp((&m1 * &m1).scale(&GaussRat::new(0.into(), Ratio::new(1, 3))))
}

fn entry(
    name: &str,
    paper_ref: &'static str,
    suite: Suite,
    equations: Vec<Equation>,
    script: (&'static str, &'static str),
    numeric: NumericProfile,
) -> CatalogEntry {
    CatalogEntry { name: name.to_string(), paper_ref, suite, equations, script_path: script.0, script: script.1, numeric }
}

const INTERTWINE_C: [(&str, (&str, &str)); 8] = [
    ("intertwine-z1", script!("intertwine-z1")),
    ("intertwine-z2", script!("intertwine-z2")),
    ("intertwine-z1-star", script!("intertwine-z1-star")),
    ("intertwine-z2-star", script!("intertwine-z2-star")),
    ("intertwine-z1-vee", script!("intertwine-z1-vee")),
    ("intertwine-z2-vee", script!("intertwine-z2-vee")),
    ("intertwine-z1-vee-star", script!("intertwine-z1-vee-star")),
    ("intertwine-z2-vee-star", script!("intertwine-z2-vee-star")),
];

const INTERTWINE_D: [(&str, (&str, &str)); 8] = [
    ("d-intertwine-x", script!("d-intertwine-x")),
    ("d-intertwine-y", script!("d-intertwine-y")),
    ("d-intertwine-xt", script!("d-intertwine-xt")),
    ("d-intertwine-yt", script!("d-intertwine-yt")),
    ("d-intertwine-x-vee", script!("d-intertwine-x-vee")),
    ("d-intertwine-y-vee", script!("d-intertwine-y-vee")),
    ("d-intertwine-xt-vee", script!("d-intertwine-xt-vee")),
    ("d-intertwine-yt-vee", script!("d-intertwine-yt-vee")),
];

/// `F^{-1}(1⊗π(u))F = π^{(2)}(u)` for each generator.
fn intertwining(variant: Variant, table: &[(&'static str, (&'static str, &'static str)); 8], suite: Suite) -> Vec<CatalogEntry> {
    let ra = RepAssignment::new(variant);
    let f = build_f(variant, 1, 2);
    let fi = inv(&f);
    let paper_ref = match variant {
        Variant::C => "intertwining equation F π^{(2)}(u) = (1⊗π(u)) F",
        Variant::D => "negative cosmological constant: F π^{(2)}(u) = (1⊗π(u)) F for D_{q,q∨}",
    };
    table
        .iter()
        .enumerate()
        .map(|(g, (name, script))| {
            let lhs = OperatorSum::term_mul(&fi, &ra.word(g, 2).into()).mul_term(&f);
            let label = format!("F^-1 (1⊗π({})) F = π12({})", ra.algebra.names[g], ra.algebra.names[g]);
            entry(name, paper_ref, suite, vec![eq(label, lhs, ra.tensor(g, 1, 2))], *script, NumericProfile::Numeric { slots: 2 })
        })
        .collect()
}

fn pentagons(variant: Variant, suite: Suite) -> Vec<CatalogEntry> {
    let f = |i, j| build_f(variant, i, j);
    let t = |i, j| build_t(variant, i, j);
    let tpent = eq("T23 T12 = T12 T13 T23", t(2, 3).mul(&t(1, 2)), t(1, 2).mul(&t(1, 3)).mul(&t(2, 3)));
    let tasf = vec![
        eq("T12 = F21^-1", t(1, 2), inv(&f(2, 1))),
        eq("F23 F13 F21^-1 F13^-1 = T12", f(2, 3).mul(&f(1, 3)).mul(&inv(&f(2, 1))).mul(&inv(&f(1, 3))), t(1, 2)),
    ];
    let n3 = NumericProfile::Numeric { slots: 3 };
    match variant {
        Variant::C => {
            let s = |i, j| Term::saso(build_s(i, j));
            vec![
                entry(
                    "s-pentagon",
                    "S13 S21 = S21 S23 S13",
                    suite,
                    vec![eq("S13 S21 = S21 S23 S13", s(1, 3).mul(&s(2, 1)), s(2, 1).mul(&s(2, 3)).mul(&s(1, 3)))],
                    script!("s-pentagon"),
                    n3.clone(),
                ),
                entry(
                    "f-pentagon",
                    "F13 F21 = F21 F23 F13",
                    suite,
                    vec![eq("F13 F21 = F21 F23 F13", f(1, 3).mul(&f(2, 1)), f(2, 1).mul(&f(2, 3)).mul(&f(1, 3)))],
                    script!("f-pentagon"),
                    n3.clone(),
                ),
                entry("t-pentagon", "Prop. TT_TTT: T23 T12 = T12 T13 T23", suite, vec![tpent], script!("t-pentagon"), n3.clone()),
                entry("t-as-f", "T12 = F21^{-1}", suite, tasf, script!("t-as-f"), n3),
            ]
        }
        Variant::D => vec![
            entry("d-t-pentagon", "negative cosmological constant: T23 T12 = T12 T13 T23", suite, vec![tpent], script!("d-t-pentagon"), n3.clone()),
            entry("d-t-as-f", "negative cosmological constant: F23 F13 F21^{-1} F13^{-1} = T12 = F21^{-1}", suite, tasf, script!("d-t-as-f"), n3),
        ],
    }
}

fn s12_conjugation() -> CatalogEntry {
    let s = Term::saso(build_s(1, 2));
    let si = Term::saso(build_s(1, 2).inverse());
    let rows: [(&str, LinForm, LinForm); 8] = [
        ("P2", big_p(2), big_p(1).add(&big_p(2))),
        ("Q2", big_q(2), big_q(2)),
        ("P1", big_p(1), big_p(1)),
        ("Q1", big_q(1), big_q(1).sub(&big_q(2))),
        ("P2*", big_p_star(2), big_p_star(1).add(&big_p_star(2))),
        ("Q2*", big_q_star(2), big_q_star(2)),
        ("P1*", big_p_star(1), big_p_star(1)),
        ("Q1*", big_q_star(1), big_q_star(1).sub(&big_q_star(2))),
    ];
    let eqs = rows.into_iter().map(|(n, x, y)| eq(format!("S12^-1 e^{{{n}}} S12"), si.mul(&w(x)).mul(&s), w(y))).collect();
    entry(
        "s12-conj",
        "S_ij^{-1} P_j S_ij = P_i + P_j, S_ij^{-1} Q_i S_ij = Q_i - Q_j, ...",
        Suite::Main,
        eqs,
        script!("s12-conj"),
        NumericProfile::Numeric { slots: 2 },
    )
}

fn dual_tables() -> Vec<CatalogEntry> {
    let alg = HopfAlgebra::c();
    let c = build_c(1);
    let d = build_d(1);
    let mut ce = Vec::new();
    let mut de = Vec::new();
    for g in 0..alg.n() {
        let u = alg.gen(g);
        let pi = alg.represent(&u, 1);
        let left = alg.dual_action(&u, Side::Left, 1).expect("generators have antipodes");
        let right = alg.dual_action(&u, Side::Right, 1).expect("generators have inverse antipodes");
        ce.push(eq(format!("C π({0}) C^-1 = π'({0})", alg.names[g]), conj(&c, pi.clone()), left));
        de.push(eq(format!("D 'π({0}) D^-1 = π({0})", alg.names[g]), conj(&d, right), pi));
    }
    let why = "C and D are unbounded, densely defined";
    vec![
        entry("c-conj", "weak isomorphisms: C π(u) C^{-1} = π'(u)", Suite::Main, ce, script!("c-conj"), NumericProfile::SymbolicOnly(why)),
        entry("d-conj", "weak isomorphisms: D 'π(u) D^{-1} = π(u)", Suite::Main, de, script!("d-conj"), NumericProfile::SymbolicOnly(why)),
    ]
}

/// `F12 P(132) D1^{-1} C3^{-1} F12^{-1}`.
pub fn a_chain() -> Term {
    build_f(Variant::C, 1, 2)
        .mul(&build_perm(&[(1, 3), (2, 1), (3, 2)]))
        .mul(&inv(&build_d(1)))
        .mul(&inv(&build_c(3)))
        .mul(&inv(&build_f(Variant::C, 1, 2)))
}

fn a_conjugations() -> Vec<CatalogEntry> {
    let ih = inv_ihbar();
    let x = a_chain();
    let a = build_a(1);
    let rows: [(&str, &str, (&str, &str), LinForm, LinForm); 8] = [
        ("a-conj-p", "A e^{-P1} = e^{π(-i+ℏ)+P1-Q1} A", script!("a-conj-p"), big_p(1).neg(), big_p(1).sub(&big_q(1)).plus_const(&pc(-1, 1))),
        (
            "a-conj-p-star",
            "A e^{-P1*} = e^{π(-i-ℏ)+P1*-Q1*} A",
            script!("a-conj-p-star"),
            big_p_star(1).neg(),
            big_p_star(1).sub(&big_q_star(1)).plus_const(&pc(-1, -1)),
        ),
        ("a-conj-q", "A e^{-Q1} = e^{P1} A", script!("a-conj-q"), big_q(1).neg(), big_p(1)),
        ("a-conj-q-star", "A e^{-Q1*} = e^{P1*} A", script!("a-conj-q-star"), big_q_star(1).neg(), big_p_star(1)),
        (
            "a-conj-p-vee",
            "A e^{-P1/(iℏ)} = e^{(π(-i+ℏ)+P1-Q1)/(iℏ)} A",
            script!("a-conj-p-vee"),
            big_p(1).neg().scale(&ih),
            big_p(1).sub(&big_q(1)).plus_const(&pc(-1, 1)).scale(&ih),
        ),
        (
            "a-conj-p-star-vee",
            "A e^{P1*/(iℏ)} = e^{-(π(-i-ℏ)+P1*-Q1*)/(iℏ)} A",
            script!("a-conj-p-star-vee"),
            big_p_star(1).scale(&ih),
            big_p_star(1).sub(&big_q_star(1)).plus_const(&pc(-1, -1)).scale(&ih).neg(),
        ),
        ("a-conj-q-vee", "A e^{-Q1/(iℏ)} = e^{P1/(iℏ)} A", script!("a-conj-q-vee"), big_q(1).neg().scale(&ih), big_p(1).scale(&ih)),
        (
            "a-conj-q-star-vee",
            "A e^{Q1*/(iℏ)} = e^{-P1*/(iℏ)} A",
            script!("a-conj-q-star-vee"),
            big_q_star(1).scale(&ih),
            big_p_star(1).scale(&ih).neg(),
        ),
    ];
    rows.into_iter()
        .map(|(name, r, s, u, v)| {
            let eqs = vec![
                eq("X u X^-1 on the canonical element, X = F12 P(132) D1^-1 C3^-1 F12^-1", conj(&x, w(u.clone())), w(v.clone())),
                eq("A u A^-1 with A = c S(-1,-1;1,0) e^{-q_s+p_t/ℏ}", conj(&a, w(u)), w(v)),
            ];
            entry(name, r, Suite::Main, eqs, s, NumericProfile::SymbolicOnly("formal computation on the canonical element"))
        })
        .collect()
}

fn order_three() -> Vec<CatalogEntry> {
    let a = build_a(1);
    let m = Coeff::m();
    let am = build_a_m(&m, 1);
    let minus_c3 = Term { mult: -1, pre: Prefactor { c_power: 3, exp_arg: Coeff::zero() }, factors: Vec::new() };
    let c_phase = Term { mult: 1, pre: Prefactor { c_power: 1, exp_arg: Coeff::gauss(GaussRat::new(0.into(), Ratio::new(-1, 3))) }, factors: Vec::new() };
    let a0 = build_a_m(&Coeff::zero(), 1);
    let m1 = m_minus_one();
    let k = |a: i64| Coeff::i().scale(&GaussRat::int(a as i128));
    let conj0 = vec![
        eq("A^(m) e^{q_t} A^(m)^-1", conj(&am, w(LinForm::q_t(1))), w(LinForm::q_t(1).neg().add(&LinForm::q_s(1)).plus_const(&(&m1 * &k(-1))))),
        eq("A^(m) e^{q_s} A^(m)^-1", conj(&am, w(LinForm::q_s(1))), w(LinForm::q_t(1).neg())),
        eq("A^(m) e^{p_t} A^(m)^-1", conj(&am, w(LinForm::p_t(1))), w(LinForm::p_s(1))),
        eq(
            "A^(m) e^{p_s} A^(m)^-1",
            conj(&am, w(LinForm::p_s(1))),
            w(LinForm::p_t(1).add(&LinForm::p_s(1)).neg().plus_const(&(&(&m1 * &k(-1)) * &Coeff::hbar()))),
        ),
    ];
    let conj1 = vec![
        eq("A^(m) e^P A^(m)^-1", conj(&am, w(big_p(1))), w(big_q(1).sub(&big_p(1)).plus_const(&(&m1 * &pc(-1, 1))))),
        eq("A^(m) e^{P*} A^(m)^-1", conj(&am, w(big_p_star(1))), w(big_q_star(1).sub(&big_p_star(1)).plus_const(&(&m1 * &pc(-1, -1))))),
        eq("A^(m) e^Q A^(m)^-1", conj(&am, w(big_q(1))), w(big_p(1).neg())),
        eq("A^(m) e^{Q*} A^(m)^-1", conj(&am, w(big_q_star(1))), w(big_p_star(1).neg())),
    ];
    let n1 = NumericProfile::Numeric { slots: 1 };
    vec![
        entry(
            "a-cube",
            "Prop. AAA: A^3 = -c^3 id",
            Suite::Main,
            vec![eq("A^3 = -c^3", a.mul(&a).mul(&a), minus_c3)],
            script!("a-cube"),
            NumericProfile::SymbolicOnly("A carries the undetermined constant c"),
        ),
        entry(
            "am-cube",
            "(A^(m))^3 = id for all m",
            Suite::Main,
            vec![eq("(A^(m))^3 = 1", am.mul(&am).mul(&am), Term::identity())],
            script!("am-cube"),
            n1.clone(),
        ),
        entry(
            "a-from-am",
            "A = c e^{-πi/3} A^(0); A^(1) = S(-1,-1;1,0)",
            Suite::Main,
            vec![
                eq("A = c e^{-πi/3} A^(0)", a.clone(), c_phase.mul(&a0)),
                eq("A^(1) = S(-1,-1;1,0)", build_a_m(&Coeff::one(), 1), Term::saso(Saso::on_slots(&[1], a1_matrix()).expect("unimodular"))),
            ],
            script!("a-from-am"),
            NumericProfile::SymbolicOnly("A carries the undetermined constant c"),
        ),
        entry("am-conj0", "conjugation of q_t, q_s, p_t, p_s by A^(m)", Suite::Main, conj0, script!("am-conj0"), n1.clone()),
        entry("am-conj1", "conjugation of P, P*, Q, Q* by A^(m)", Suite::Main, conj1, script!("am-conj1"), n1),
    ]
}

fn target_saso() -> Term {
    Term::saso(Saso::on_slots(&[1, 2], IntMatrix::from_rows(&[&[0, 0, -1, -1], &[0, 0, 1, 0], &[1, 0, 0, 0], &[0, 1, 0, 0]])).expect("unimodular"))
}

fn s4(rows: [[i64; 4]; 4]) -> Term {
    let r: Vec<&[i64]> = rows.iter().map(|r| &r[..]).collect();
    Term::saso(Saso::on_slots(&[1, 2], IntMatrix::from_rows(&r)).expect("unimodular"))
}

fn kashaev(variant: Variant, suite: Suite) -> Vec<CatalogEntry> {
    let m = Coeff::m();
    let a = |j| build_a_m_for(variant, &m, j);
    let t = |i, j| build_t(variant, i, j);
    let p12 = build_perm(&[(1, 2), (2, 1)]);
    let n2 = NumericProfile::Numeric { slots: 2 };
    let ata = vec![eq("A1 T12 A2 = A2 T21 A1", a(1).mul(&t(1, 2)).mul(&a(2)), a(2).mul(&t(2, 1)).mul(&a(1)))];
    let tat_lhs = t(1, 2).mul(&a(1)).mul(&t(2, 1));
    let aap = a(1).mul(&a(2)).mul(&p12);
    match variant {
        Variant::C => {
            let tail = w(LinForm::q_s(2).sub(&LinForm::p_t(2).scale(&Coeff::hbar_inv())).scale(&m_minus_one()));
            let seven = s4([[1, 0, 0, 0], [0, 1, 0, -1], [1, 0, 1, 0], [0, 0, 0, 1]])
                .mul(&s4([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, -1, -1]]))
                .mul(&s4([[1, 1, 1, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, -1, -1, 1]]))
                .mul(&s4([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, -1], [0, 0, 1, 0]]))
                .mul(&s4([[-1, -1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))
                .mul(&s4([[1, 0, 1, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, -1, 0, 1]]))
                .mul(&s4([[0, 1, 0, 0], [-1, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))
                .mul(&tail);
            let rhs7 = target_saso().mul(&tail);
            let inv_phase = Term::scalar(1, am_phase().inverse());
            vec![
                entry("ata", "A1^(m) T12 A2^(m) = A2^(m) T21 A1^(m)", suite, ata, script!("ata"), n2.clone()),
                entry(
                    "tat",
                    "T12 A1^(m) T21 = e^{πi(m-1)^2/3} A1^(m) A2^(m) P(12)",
                    suite,
                    vec![eq("T12 A1 T21 = e^{πi(m-1)^2/3} A1 A2 P(12)", tat_lhs.clone(), Term::scalar(1, am_phase()).mul(&aap))],
                    script!("tat"),
                    n2.clone(),
                ),
                entry(
                    "tat-derived-phase",
                    "TAT with the phase implied by the displayed seven-matrix product and P(12) A2^(m)",
                    suite,
                    vec![eq("T12 A1 T21 = e^{-πi(m-1)^2/3} A1 A2 P(12)", tat_lhs, inv_phase.mul(&aap))],
                    script!("tat-derived-phase"),
                    n2.clone(),
                ),
                entry(
                    "seven-matrix",
                    "seven-matrix product: T12 A1^(m) T21 (A1^(m))^{-1} = S[[0,0,-1,-1],[0,0,1,0],[1,0,0,0],[0,1,0,0]] e^{(m-1)(q_s2 - p_t2/ℏ)}",
                    suite,
                    vec![
                        eq("product of the seven displayed matrices", seven, rhs7.clone()),
                        eq("T12 A1 T21 A1^-1", t(1, 2).mul(&a(1)).mul(&t(2, 1)).mul(&inv(&a(1))), rhs7),
                    ],
                    script!("seven-matrix"),
                    n2,
                ),
            ]
        }
        Variant::D => {
            let amv = a(1);
            vec![
                entry(
                    "d-am-cube",
                    "negative cosmological constant: (A^(m))^3 = id",
                    suite,
                    vec![eq("(A^(m))^3 = 1", amv.mul(&amv).mul(&amv), Term::identity())],
                    script!("d-am-cube"),
                    NumericProfile::Numeric { slots: 1 },
                ),
                entry("d-ata", "negative cosmological constant: A1 T12 A2 = A2 T21 A1", suite, ata, script!("d-ata"), n2.clone()),
                entry(
                    "d-tat",
                    "negative cosmological constant: T12 A1^(m) T21 = A1^(m) A2^(m) P(12)",
                    suite,
                    vec![eq("T12 A1 T21 = A1 A2 P(12)", tat_lhs, aap)],
                    script!("d-tat"),
                    n2,
                ),
            ]
        }
    }
}

fn f_prime_covariance() -> CatalogEntry {
    let u = |j| build_a_m(&Coeff::one(), j);
    let fp = |i, j| u(i).mul(&build_f(Variant::C, i, j));
    let lhs = fp(2, 3).mul(&fp(1, 3)).mul(&inv(&fp(2, 1))).mul(&inv(&fp(1, 3)));
    let uu = u(1).mul(&u(2));
    let rhs = uu.mul(&build_t(Variant::C, 1, 2)).mul(&inv(&uu));
    entry(
        "f-prime-covariance",
        "F' = (U⊗1)F gives T' = (U⊗U) T (U⊗U)^{-1}, sample U = A^(1)",
        Suite::Main,
        vec![eq("F'23 F'13 F'21^-1 F'13^-1 = (U⊗U) T12 (U⊗U)^-1", lhs, rhs)],
        script!("f-prime-covariance"),
        NumericProfile::Numeric { slots: 3 },
    )
}

fn variant_conjugations() -> Vec<CatalogEntry> {
    let d = build_d(1);
    let a = build_a_variant(1);
    let k = |a: i64, b: i64| &pc(a, 0) + &pc(0, b).scale(&GaussRat::i());
    let weak = vec![
        eq("D e^{-P~} D^-1 = e^P", conj(&d, w(var_pt(1).neg())), w(var_p(1))),
        eq("D e^{-πi(1+ℏ)+Q~-P~} D^-1 = e^Q", conj(&d, w(var_qt(1).sub(&var_pt(1)).plus_const(&k(-1, -1)))), w(var_q(1))),
        eq("D e^{-P} D^-1 = e^{P~}", conj(&d, w(var_p(1).neg())), w(var_pt(1))),
        eq("D e^{πi(1+ℏ)+Q-P} D^-1 = e^{Q~}", conj(&d, w(var_q(1).sub(&var_p(1)).plus_const(&k(1, 1)))), w(var_qt(1))),
    ];
    let aconj = vec![
        eq("A e^{q_t} A^-1", conj(&a, w(LinForm::q_t(1))), w(LinForm::q_s(1).sub(&LinForm::q_t(1)))),
        eq("A e^{q_s} A^-1", conj(&a, w(LinForm::q_s(1))), w(LinForm::q_t(1).neg())),
        eq("A e^{p_t} A^-1", conj(&a, w(LinForm::p_t(1))), w(LinForm::p_s(1))),
        eq("A e^{p_s} A^-1", conj(&a, w(LinForm::p_s(1))), w(LinForm::p_t(1).add(&LinForm::p_s(1)).neg().plus_const(&k(1, 1)))),
    ];
    vec![
        entry(
            "d-weak-iso",
            "negative cosmological constant: D(-P~)D^{-1} = P, D(-πi(1+ℏ)+Q~-P~)D^{-1} = Q, ...",
            Suite::Variant,
            weak,
            script!("d-weak-iso"),
            NumericProfile::SymbolicOnly("D is unbounded, densely defined"),
        ),
        entry(
            "d-a-conj",
            "negative cosmological constant: conjugation action of A on q_t, q_s, p_t, p_s",
            Suite::Variant,
            aconj,
            script!("d-a-conj"),
            NumericProfile::SymbolicOnly("A carries an unbounded factor e^{-(1+1/ℏ)q_s}"),
        ),
    ]
}

/// Every verifiable identity, in presentation order.
pub fn identity_catalog() -> Vec<CatalogEntry> {
    let mut out = intertwining(Variant::C, &INTERTWINE_C, Suite::Main);
    out.extend(pentagons(Variant::C, Suite::Main));
    out.push(f_prime_covariance());
    out.push(s12_conjugation());
    out.extend(dual_tables());
    out.extend(a_conjugations());
    out.extend(order_three());
    out.extend(kashaev(Variant::C, Suite::Main));
    out.extend(intertwining(Variant::D, &INTERTWINE_D, Suite::Variant));
    out.extend(pentagons(Variant::D, Suite::Variant));
    out.extend(variant_conjugations());
    out.extend(kashaev(Variant::D, Suite::Variant));
    out
}

/// Look up one entry by name.
pub fn find_entry(name: &str) -> Option<CatalogEntry> {
    identity_catalog().into_iter().find(|e| e.name == name)
}

/// Parse and replay an entry's script against its equations.
pub fn verify_symbolic(entry: &CatalogEntry) -> crate::script::Replay {
    match crate::script::parse_script(entry.script) {
        Ok(s) => crate::script::replay(&s, &entry.equations),
        Err(e) => crate::script::Replay { steps: Vec::new(), failure: Some((0, e)), equations_checked: 0 },
    }
}
