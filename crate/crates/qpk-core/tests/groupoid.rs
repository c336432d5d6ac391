use std::collections::BTreeMap;

use qpk_core::coeff::{Coeff, GaussRat, Rat};
use qpk_core::groupoid::*;
use qpk_core::hopf::Variant;
use qpk_core::reps::{build_a_m, build_t};
use qpk_core::weylalg::{Prefactor, Term};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn word(s: &str) -> MoveWord {
    MoveWord::parse(s).unwrap()
}

#[test]
fn a_cubed_is_identity_on_triangulations() {
    let dt = DottedTriangulation::fan(6);
    for j in dt.labels() {
        let once = dt.apply_move(&Move::A(j)).unwrap();
        assert_ne!(once, dt);
        assert_eq!(dt.apply_word(&word(&format!("A {j}; A {j}; A {j}"))).unwrap(), dt);
    }
}

#[test]
fn pentagon_on_a_dotted_pentagon() {
    let (l, r) = (word("T 2 3; T 1 2"), word("T 1 2; T 1 3; T 2 3"));
    let dt = sample(5, 200, 1).into_iter().find(|d| d.apply_word(&l).is_ok()).unwrap();
    let a = dt.apply_word(&l).unwrap();
    assert_eq!(a, dt.apply_word(&r).unwrap());
    assert_ne!(a, dt);
}

#[test]
fn flip_requires_the_dot_configuration() {
    let dt = DottedTriangulation::fan(4);
    assert!(!dt.flip_applicable(1, 2));
    assert!(dt.apply_move(&Move::T(1, 2)).is_err());
    let turned = dt.apply_word(&word("A 2; A 2")).unwrap();
    assert!(turned.flip_applicable(1, 2));
}

#[test]
fn identity_permutation_is_trivial() {
    let dt = DottedTriangulation::fan(5);
    assert_eq!(dt.apply_move(&Move::P(Perm::identity())).unwrap(), dt);
    assert_eq!(compile(&word("P ()"), &MMode::Formal).normalize(), Term::identity().normalize());
}

#[test]
fn perm_cycles_and_composition() {
    let p = Perm::from_cycles(&[vec![1, 2, 3]]).unwrap();
    assert_eq!((p.apply(1), p.apply(2), p.apply(3)), (2, 3, 1));
    assert!(p.compose(&p).compose(&p).is_identity());
    assert_eq!(p.to_string(), "(1 2 3)");
    assert_eq!(Perm::all(&[1, 2, 3]).len(), 6);
    assert!(Perm::from_cycles(&[vec![1, 1]]).is_err());
}

#[test]
fn compile_examples() {
    let f = MMode::Formal;
    assert_eq!(compile(&word("T 1 2"), &f), build_t(Variant::C, 1, 2));
    assert_eq!(compile(&MoveWord::new(vec![]), &f), Term::identity());
    let m = Coeff::m();
    let tat = build_t(Variant::C, 1, 2).mul(&build_a_m(&m, 1)).mul(&build_t(Variant::C, 2, 1));
    assert_eq!(compile(&word("T 1 2; A 1; T 2 1"), &f), tat);
}

#[test]
fn word_parse_and_display_round_trip() {
    let w = word("T 1 2; A 3; P (1 2 3)");
    assert_eq!(w.moves.len(), 3);
    assert_eq!(MoveWord::parse(&w.to_string()).unwrap(), w);
    for bad in ["X 1", "T 1", "A", "P (1 1)", "T 1 two"] {
        assert!(MoveWord::parse(bad).is_err(), "{bad}");
    }
}

#[test]
fn triangulation_parse_errors() {
    assert!(DottedTriangulation::parse("1: 0 1 2 dot 0").is_err());
    assert!(DottedTriangulation::parse("polygon 4\n1: 0 1 2 dot 0\n2: 0 1 3 dot 0").is_err());
    assert!(DottedTriangulation::parse("polygon 4\n1: 0 1 2 dot 5\n2: 0 2 3 dot 0").is_err());
    let dt = DottedTriangulation::fan(6);
    assert_eq!(DottedTriangulation::parse(&dt.to_string()).unwrap(), dt);
}

fn tally(checks: &[RelationCheck]) -> BTreeMap<RelationKind, (usize, usize)> {
    let mut t = BTreeMap::new();
    for c in checks {
        let e = t.entry(c.kind).or_insert((0, 0));
        e.0 += 1;
        e.1 += c.matches_expected() as usize;
    }
    t
}

#[test]
fn presentation_holds_up_to_four_labels() {
    let mode = MMode::Value(Rat::from_integer(2));
    for size in 1..=4 {
        let checks = check_presentation(size, Variant::C, &mode).unwrap();
        for c in &checks {
            assert!(c.outcome.is_ok(), "{:?} {}: {:?}", c.kind, c.instance, c.outcome);
            if c.kind != RelationKind::Tat {
                assert!(c.matches_expected(), "{:?} {}", c.kind, c.instance);
            }
        }
    }
}

#[test]
fn tat_phase_is_the_conjugate_of_the_stated_one() {
    let mode = MMode::Formal;
    let checks = check_presentation(2, Variant::C, &mode).unwrap();
    let m1 = &Coeff::m() - &Coeff::one();
    let conj = Term::scalar(1, Prefactor::exp((&m1 * &m1).scale(&GaussRat::new(Rat::from_integer(0), Rat::new(-1, 3))))).normalize();
    for c in checks.iter().filter(|c| c.kind == RelationKind::Tat) {
        let (mult, pre) = c.outcome.clone().unwrap();
        assert!(!c.matches_expected());
        assert_eq!(Term::scalar(mult, pre).normalize(), conj);
    }
}

#[test]
fn a_cube_phase_in_formal_m() {
    let checks = check_presentation(1, Variant::C, &MMode::Formal).unwrap();
    let c = checks.iter().find(|c| c.kind == RelationKind::ACube).unwrap();
    let m1 = &Coeff::m() - &Coeff::one();
    let want = Term::scalar(1, Prefactor::exp((&m1 * &m1).scale(&GaussRat::new(Rat::from_integer(0), Rat::from_integer(2))))).normalize();
    let (mult, pre) = c.outcome.clone().unwrap();
    assert_eq!(Term::scalar(mult, pre).normalize(), want);
}

#[test]
fn connectivity_by_search() {
    for n in 3..=6 {
        assert_eq!(reachable_count(&DottedTriangulation::fan(n)), state_count(n), "n={n}");
    }
    let a = DottedTriangulation::fan(6);
    let b = DottedTriangulation::parse("polygon 6\n1: 0 1 5 dot 1\n2: 1 2 3 dot 2\n3: 1 3 4 dot 0\n4: 1 4 5 dot 2\n").unwrap();
    let w = connect(&a, &b).unwrap();
    assert_eq!(a.apply_word(&w).unwrap(), b);
}

fn sample(n: u32, count: usize, seed: u64) -> Vec<DottedTriangulation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dt = DottedTriangulation::fan(n);
    (0..count)
        .map(|_| {
            for _ in 0..20 {
                let nb = dt.neighbors();
                dt = nb.choose(&mut rng).unwrap().1.clone();
            }
            dt.clone()
        })
        .collect()
}

#[test]
fn relations_act_trivially_on_polygons() {
    let mut applied: BTreeMap<RelationKind, usize> = BTreeMap::new();
    for n in 4..=9 {
        for dt in sample(n, 6, n as u64) {
            let labels: Vec<u32> = dt.labels().into_iter().collect();
            let subsets: Vec<Vec<u32>> = if labels.len() <= 4 {
                vec![labels.clone()]
            } else {
                labels.windows(4).map(|w| w.to_vec()).collect()
            };
            for sub in subsets {
                for rel in relations(&sub) {
                    if let Ok(l) = dt.apply_word(&rel.lhs) {
                        let r = dt.apply_word(&rel.rhs).unwrap_or_else(|e| panic!("{:?} {}: {e}", rel.kind, rel.instance));
                        assert_eq!(l, r, "{:?} {} on\n{dt}", rel.kind, rel.instance);
                        *applied.entry(rel.kind).or_default() += 1;
                    }
                }
            }
        }
    }
    for kind in [RelationKind::ACube, RelationKind::Pentagon, RelationKind::Ata, RelationKind::Tat, RelationKind::PT, RelationKind::TT] {
        assert!(applied.get(&kind).copied().unwrap_or(0) > 0, "{kind:?} never applied: {applied:?}");
    }
}

#[test]
fn tally_counts_every_kind() {
    let t = tally(&check_presentation(3, Variant::C, &MMode::Formal).unwrap());
    assert_eq!(t[&RelationKind::Pentagon], (6, 6));
    assert_eq!(t[&RelationKind::Tat], (6, 0));
}

#[test]
fn variant_d_presentation_has_unit_phases() {
    for mode in [MMode::Formal, MMode::Value(Rat::from_integer(3))] {
        let checks = check_presentation(3, Variant::D, &mode).unwrap();
        assert!(checks.iter().all(|c| c.matches_expected()));
    }
}
