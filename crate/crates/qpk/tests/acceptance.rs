//! Acceptance report: one PASS/FAIL line per criterion.
//!
//! Exits 0 after printing the report; set `QPK_ACCEPTANCE_STRICT=1` to exit 1
//! when any criterion fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qpk::numerics::{dense_oracle, random_gaussians, Engine, GridConfig, GridState, NumericsError};
use qpk::qdilog::{involutivity_constant, phi_mdc, phi_mdc_both, psi_hbar, Method};
use qpk_core::coeff::{Coeff, Rat};
use qpk_core::groupoid::{self, DottedTriangulation, MMode, RelationKind};
use qpk_core::hopf::Variant;
use qpk_core::reps::{build_a_m, build_t, find_entry, identity_catalog, verify_symbolic, NumericProfile, Suite};
use qpk_core::weylalg::{OperatorSum, Term};

const DIFF_EQ_TOL: f64 = 1e-8;
const INVOLUTIVITY_TOL: f64 = 1e-10;
const UNIMODULAR_TOL: f64 = 1e-10;
const CONTOUR_RATIO_TOL: f64 = 1e-8;
const DENSE_AGREE_TOL: f64 = 1e-12;
const INTERTWINE_TOL: f64 = 1e-6;
const PENTAGON_TOL: f64 = 1e-3;
const UNITARITY_TOL: f64 = 1e-10;
const HBAR: f64 = 0.4;
const SEED: u64 = 1;

const MINUTE: Duration = Duration::from_secs(60);

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(id: u32, name: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let o = f();
    let dt = t.elapsed();
    let in_time = dt <= budget;
    let pass = o.pass && in_time;
    println!(
        "[{}] {id}. {name}: {} ({:.1}s, budget {}s{})",
        if pass { "PASS" } else { "FAIL" },
        o.detail,
        dt.as_secs_f64(),
        budget.as_secs(),
        if in_time { "" } else { ", over budget" }
    );
    pass
}

fn special_functions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let ratio = |h: f64, e: i8, z: C| phi_mdc(h, e, z, Method::Ratio).map(|v| v.value);
    let mut diff_max: f64 = 0.0;
    let mut errors = 0usize;
    for &h in &[0.3, 0.4, 1.0, 2.5] {
        for _ in 0..100 {
            let z = C::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            for eps in [1i8, -1] {
                let e = eps as f64;
                let pairs = [
                    (z - 2.0 * PI * e * h, 1.0 + (-PI * e * h).exp() * z.exp()),
                    (z + C::new(0.0, 2.0 * PI), 1.0 + (PI / (e * h)).exp() * (z / C::new(0.0, e * h)).exp()),
                ];
                for (w, factor) in pairs {
                    match (ratio(h, eps, w), ratio(h, eps, z)) {
                        (Ok(l), Ok(r)) => diff_max = diff_max.max((l - factor * r).norm() / (1.0 + (factor * r).norm())),
                        _ => errors += 1,
                    }
                }
            }
        }
    }
    let mut inv_max: f64 = 0.0;
    for &h in &[0.3, 0.4, 1.0, 2.5] {
        for eps in [1i8, -1] {
            match ratio(h, eps, C::new(0.0, 0.0)) {
                Ok(v) => inv_max = inv_max.max((v * v - involutivity_constant(h, eps)).norm()),
                Err(_) => errors += 1,
            }
        }
    }
    let mut uni_max: f64 = 0.0;
    for _ in 0..100 {
        let (x, y) = (rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
        match psi_hbar(HBAR, x, y) {
            Ok(v) => uni_max = uni_max.max((v.value.norm() - 1.0).abs()),
            Err(_) => errors += 1,
        }
    }
    let mut cr_max: f64 = 0.0;
    for _ in 0..20 {
        let h = rng.gen_range(0.3..2.5);
        let eps = if rng.gen_bool(0.5) { 1 } else { -1 };
        let z = C::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.0..1.0));
        match phi_mdc_both(h, eps, z, CONTOUR_RATIO_TOL) {
            Ok((a, b, _)) => cr_max = cr_max.max((a.value - b.value).norm()),
            Err(_) => errors += 1,
        }
    }
    let pass = errors == 0
        && diff_max < DIFF_EQ_TOL
        && inv_max < INVOLUTIVITY_TOL
        && uni_max < UNIMODULAR_TOL
        && cr_max < CONTOUR_RATIO_TOL;
    Outcome {
        pass,
        detail: format!(
            "difference eqs {diff_max:.1e} (<{DIFF_EQ_TOL:.0e}), involutivity {inv_max:.1e} (<{INVOLUTIVITY_TOL:.0e}), |Ψ|−1 {uni_max:.1e} (<{UNIMODULAR_TOL:.0e}), contour vs ratio {cr_max:.1e} (<{CONTOUR_RATIO_TOL:.0e}), evaluation errors {errors}"
        ),
    }
}

fn symbolic_suite() -> Outcome {
    let cat: Vec<_> = identity_catalog().into_iter().filter(|e| e.suite == Suite::Main).collect();
    let failed: Vec<String> = cat.iter().filter(|e| !verify_symbolic(e).passed()).map(|e| e.name.clone()).collect();
    Outcome {
        pass: failed.is_empty(),
        detail: format!("{}/{} main catalog entries replay; failing: [{}]", cat.len() - failed.len(), cat.len(), failed.join(", ")),
    }
}

fn variant_suite() -> Outcome {
    let cat: Vec<_> = identity_catalog().into_iter().filter(|e| e.suite == Suite::Variant).collect();
    let failed: Vec<String> = cat.iter().filter(|e| !verify_symbolic(e).passed()).map(|e| e.name.clone()).collect();
    let mut rel_total = 0;
    let mut rel_bad = 0;
    for mode in [MMode::Formal, MMode::Value(Rat::from_integer(2))] {
        for size in 1..=3 {
            let checks = groupoid::check_presentation(size, Variant::D, &mode).unwrap();
            rel_total += checks.len();
            rel_bad += checks.iter().filter(|c| !c.matches_expected()).count();
        }
    }
    Outcome {
        pass: failed.is_empty() && rel_bad == 0,
        detail: format!(
            "{}/{} D entries replay (failing: [{}]); {}/{rel_total} D relation instances with unit phase",
            cat.len() - failed.len(),
            cat.len(),
            failed.join(", "),
            rel_total - rel_bad
        ),
    }
}

/// Largest entrywise difference, absolute and relative to the largest entry.
fn agreement(engine: &Engine, s: &OperatorSum, cfg: &GridConfig) -> Result<(f64, f64), NumericsError> {
    let dense = dense_oracle(s, cfg)?;
    let (mut worst, mut scale): (f64, f64) = (0.0, 0.0);
    for j in 0..cfg.total() {
        let b = GridState::basis(cfg, j);
        let mf = engine.apply_sum(s, &b)?;
        for (x, y) in mf.data.iter().zip(&dense.apply(&b).data) {
            worst = worst.max((x - y).norm());
            scale = scale.max(y.norm());
        }
    }
    Ok((worst, worst / scale.max(1.0)))
}

fn numerics() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;

    let cfg4 = GridConfig::new(4, 8.0, HBAR, 2).unwrap();
    let e4 = Engine::new(cfg4.clone());
    let (mut agree, mut agree_abs): (f64, f64) = (0.0, 0.0);
    let mut sides = 0;
    let mut skipped = 0;
    for e in identity_catalog() {
        if e.numeric != (NumericProfile::Numeric { slots: 2 }) {
            continue;
        }
        for eq in &e.equations {
            for s in [&eq.lhs, &eq.rhs] {
                match agreement(&e4, s, &cfg4) {
                    Ok((a, r)) => {
                        agree_abs = agree_abs.max(a);
                        agree = agree.max(r);
                        sides += 1;
                    }
                    Err(_) => skipped += 1,
                }
            }
        }
    }
    let ok = agree <= DENSE_AGREE_TOL && sides > 0;
    pass &= ok;
    notes.push(format!(
        "dense vs matrix-free {agree:.1e} relative (≤{DENSE_AGREE_TOL:.0e}; absolute {agree_abs:.1e}) over {sides} operators ({skipped} errors)"
    ));

    let cfg32 = GridConfig::new(32, 20.0, HBAR, 2).unwrap();
    let vs = random_gaussians(&cfg32, 5, SEED);
    let e32 = Engine::new(cfg32);
    let mut per = Vec::new();
    let mut all_ok = true;
    for name in [
        "intertwine-z1",
        "intertwine-z2",
        "intertwine-z1-star",
        "intertwine-z2-star",
        "intertwine-z1-vee",
        "intertwine-z2-vee",
        "intertwine-z1-vee-star",
        "intertwine-z2-vee-star",
    ] {
        let e = find_entry(name).unwrap();
        let r = e.equations.iter().try_fold(0.0f64, |m, eq| e32.residual(eq, &vs).map(|rs| rs.into_iter().fold(m, f64::max)));
        match r {
            Ok(r) => {
                all_ok &= r <= INTERTWINE_TOL;
                per.push(format!("{}={r:.1e}", &name[11..]));
            }
            Err(NumericsError::Guard { .. }) => {
                all_ok = false;
                per.push(format!("{}=guard", &name[11..]));
            }
            Err(x) => {
                all_ok = false;
                per.push(format!("{}=error({x})", &name[11..]));
            }
        }
    }
    pass &= all_ok;
    notes.push(format!("intertwining (≤{INTERTWINE_TOL:.0e}) {}", per.join(" ")));

    let pent = find_entry("t-pentagon").unwrap();
    let pent_at = |n: usize| {
        let cfg = GridConfig::new(n, 20.0, HBAR, 3).unwrap();
        let v = random_gaussians(&cfg, 1, SEED);
        Engine::new(cfg).residual(&pent.equations[0], &v).map(|r| r[0])
    };
    match (pent_at(8), pent_at(16)) {
        (Ok(a), Ok(b)) => {
            pass &= a <= PENTAGON_TOL && b < a;
            notes.push(format!("T-pentagon N=8 {a:.2e} (≤{PENTAGON_TOL:.0e}), N=16 {b:.2e} (improving: {})", b < a));
        }
        (a, b) => {
            pass = false;
            notes.push(format!("T-pentagon error {a:?} {b:?}"));
        }
    }

    let cfg1 = GridConfig::new(16, 20.0, HBAR, 1).unwrap();
    let e1 = Engine::new(cfg1.clone());
    let a = build_a_m(&Coeff::one(), 1);
    let cube = a.mul(&a).mul(&a);
    let exact = random_gaussians(&cfg1, 5, SEED).iter().all(|v| e1.apply_term(&cube, v).is_ok_and(|w| &w == v));
    pass &= exact;
    notes.push(format!("A^(1) cube exact {exact}"));

    let t = dense_oracle(&build_t(Variant::C, 1, 2).into(), &cfg4).unwrap();
    let u = t.adjoint().mul(&t).distance_to_identity();
    pass &= u <= UNITARITY_TOL;
    notes.push(format!("‖T*T−I‖ {u:.1e} (≤{UNITARITY_TOL:.0e})"));

    Outcome { pass, detail: notes.join("; ") }
}

fn groupoid_suite() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for (mode, label) in [(MMode::Formal, "formal m"), (MMode::Value(Rat::from_integer(2)), "m=2")] {
        let mut total = 0;
        let mut bad: Vec<String> = Vec::new();
        for size in 1..=4 {
            for c in groupoid::check_presentation(size, Variant::C, &mode).unwrap() {
                total += 1;
                if !c.matches_expected() {
                    let phase = match &c.outcome {
                        Ok((m, p)) => Term::scalar(*m, p.clone()).to_string(),
                        Err(e) => e.lines().next().unwrap_or("").to_string(),
                    };
                    let key = format!("{:?}→{phase}", c.kind);
                    if !bad.contains(&key) {
                        bad.push(key);
                    }
                }
            }
        }
        let nbad_kinds = bad.len();
        pass &= nbad_kinds == 0;
        notes.push(format!("{label}: {total} instances, mismatched kinds [{}]", bad.join(", ")));
    }

    let mut conn = Vec::new();
    for n in 3..=7 {
        let ok = groupoid::reachable_count(&DottedTriangulation::fan(n)) == groupoid::state_count(n);
        pass &= ok;
        conn.push(format!("{n}:{ok}"));
    }
    notes.push(format!("connectivity n≤7 [{}]", conn.join(" ")));

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut applied = 0usize;
    let mut broken = 0usize;
    let mut kinds = std::collections::BTreeSet::new();
    for n in 4..=9 {
        let mut dt = DottedTriangulation::fan(n);
        for _ in 0..8 {
            for _ in 0..20 {
                let nb = dt.neighbors();
                dt = nb[rng.gen_range(0..nb.len())].1.clone();
            }
            let labels: Vec<u32> = dt.labels().into_iter().collect();
            for sub in labels.windows(labels.len().min(4)) {
                for rel in groupoid::relations(sub) {
                    if let Ok(l) = dt.apply_word(&rel.lhs) {
                        applied += 1;
                        kinds.insert(rel.kind);
                        if dt.apply_word(&rel.rhs).ok() != Some(l) {
                            broken += 1;
                        }
                    }
                }
            }
        }
    }
    let all_kinds = kinds.contains(&RelationKind::Pentagon) && kinds.contains(&RelationKind::Tat) && kinds.contains(&RelationKind::Ata);
    pass &= broken == 0 && all_kinds;
    notes.push(format!("move-word invariance {}/{applied} relation applications on 4..9-gons", applied - broken));
    Outcome { pass, detail: notes.join("; ") }
}

fn main() {
    println!("acceptance report (ℏ={HBAR}, seed={SEED})");
    let results = [
        report(1, "special functions", MINUTE, special_functions),
        report(2, "symbolic identity suite", MINUTE, symbolic_suite),
        report(3, "variant suite", MINUTE, variant_suite),
        report(4, "numeric cross-validation", 10 * MINUTE, numerics),
        report(5, "groupoid suite", MINUTE, groupoid_suite),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("{passed}/{} criteria pass", results.len());
    if std::env::var("QPK_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") && passed != results.len() {
        std::process::exit(1);
    }
}
