//! Rewrite rules acting on a word at a factor position.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::form::{bracket, named::inv_ihbar, Kind, LinForm};
use super::saso::quadexp;
use super::word::{weyl_shift, Dilog, DilogKind, Factor, OperatorSum, Prefactor, Term};
use crate::coeff::{Coeff, GaussRat};
use crate::error::{Error, Result};

/// Orientation of the bracket pattern between a dilog and a second pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pattern {
    /// `[x,y′] = πi = [y,x′]`.
    Standard,
    /// `[x,y′] = −πi = [y,x′]`.
    Reversed,
}

fn fail(what: &str, w: &Coeff) -> Error {
    Error::Precondition(format!("{what} = iπ·({w})"))
}

/// Checks the six bracket conditions between `(x,y)` and `(x′,y′)`.
pub fn bracket_pattern(x: &LinForm, y: &LinForm, xp: &LinForm, yp: &LinForm) -> Result<Pattern> {
    for (name, a, b) in [("[x,x′]", x, xp), ("[y,y′]", y, yp), ("[x,y]", x, y), ("[x′,y′]", xp, yp)] {
        let w = bracket(a, b);
        if !w.is_zero() {
            return Err(fail(name, &w));
        }
    }
    let a = bracket(x, yp);
    let b = bracket(y, xp);
    if a != b {
        return Err(Error::Precondition(format!("[x,y′] = iπ·({a}) differs from [y,x′] = iπ·({b})")));
    }
    if a == Coeff::one() {
        Ok(Pattern::Standard)
    } else if a == Coeff::int(-1) {
        Ok(Pattern::Reversed)
    } else {
        Err(fail("[x,y′]", &a))
    }
}

/// Split a neighbouring exponent into `(x′, y′)` for the dilog's kind.
fn split_exponent(d: &Dilog, l: &LinForm, eps: i8, vee: bool) -> Result<(LinForm, LinForm)> {
    let e = Coeff::from(eps as i64);
    let h = Coeff::hbar();
    let m = match (d.kind, vee) {
        (_, false) => l.clone(),
        (DilogKind::Psi, true) => l.scale(&(&(&e * &Coeff::i()) * &h)),
        (DilogKind::PhiPair, true) => l.scale(&h),
    };
    let eh = &e * &h;
    match d.kind {
        DilogKind::Psi => {
            let xp = m.real_part();
            let yp = m.imag_part().scale(&Coeff::hbar_inv()).scale(&e);
            let _ = eh;
            Ok((xp, yp))
        }
        DilogKind::PhiPair => {
            if !m.is_real() {
                return Err(Error::Precondition(format!("exponent {m} is not real")));
            }
            let xp = m.kind_part(Kind::Pos).with_const(m.pi_const.clone());
            let yp = m.kind_part(Kind::Mom).scale(&Coeff::hbar_inv()).scale(&e);
            Ok((xp, yp))
        }
    }
}

/// Returns `(κ, σ·arg_ε)` so that `G = 1 + exp(πκ)·e^{σ·arg_ε}`.
fn g_factor(d: &Dilog, eps: i8, vee: bool) -> (Coeff, LinForm) {
    let e = Coeff::from(eps as i64);
    let h = Coeff::hbar();
    let hi = Coeff::hbar_inv();
    let i = Coeff::i();
    let arg = d.arg(eps);
    match (d.kind, vee) {
        (DilogKind::Psi, false) => (-&(&e * &h), arg),
        (DilogKind::Psi, true) => (&e * &hi, arg.scale(&(&e * &inv_ihbar()))),
        (DilogKind::PhiPair, false) => (&(&i * &e) * &h, arg),
        (DilogKind::PhiPair, true) => (&(&i * &e) * &hi, arg.scale(&hi)),
    }
}

/// Replace `t.factors[lo..lo+2]` by `left · G · right` expanded into two terms.
fn expand_with_g(t: &Term, lo: usize, left: Vec<Factor>, g_pos: usize, kappa: &Coeff, garg: &LinForm) -> Vec<Term> {
    let mut out = Vec::new();
    for with_g in [false, true] {
        let mut mid = left.clone();
        let mut pre = t.pre.clone();
        if with_g {
            mid.insert(g_pos, Factor::Weyl(garg.clone()));
            pre = pre.mul(&Prefactor::exp(kappa.clone()));
        }
        let mut factors: Vec<Factor> = t.factors[..lo].to_vec();
        factors.extend(mid);
        factors.extend(t.factors[lo + 2..].iter().cloned());
        out.push(Term { mult: t.mult, pre, factors });
    }
    out
}

/// Operator form of the dilogarithm difference equations.
///
/// With `G = 1 + κ e^{arg}` and pattern S/R between the dilog at `k` and a
/// neighbouring `e^L`:
/// `Ψ e^L = e^L G Ψ` (S), `e^L Ψ^{-1} = Ψ^{-1} e^L G` (S),
/// `e^L Ψ = G Ψ e^L` (R), `Ψ^{-1} e^L = G e^L Ψ^{-1}` (R).
pub fn dilog_commute(t: &Term, k: usize, eps: i8, vee: bool) -> Result<Vec<Term>> {
    let d = t
        .factors
        .get(k)
        .and_then(Factor::as_dilog)
        .ok_or_else(|| Error::BadArgument(format!("factor {k} is not a dilogarithm")))?
        .clone();
    if eps != 1 && eps != -1 {
        return Err(Error::BadArgument(format!("eps must be ±1, got {eps}")));
    }
    let (kappa, garg) = g_factor(&d, eps, vee);
    let mut errors: Vec<String> = Vec::new();
    // right neighbour
    if let Some(l) = t.factors.get(k + 1).and_then(Factor::as_weyl) {
        match split_exponent(&d, l, eps, vee).and_then(|(xp, yp)| bracket_pattern(&d.x, &d.y, &xp, &yp)) {
            Ok(Pattern::Standard) if d.power == 1 => {
                let left = vec![Factor::Weyl(l.clone()), Factor::Dilog(d.clone())];
                return Ok(expand_with_g(t, k, left, 1, &kappa, &garg));
            }
            Ok(Pattern::Reversed) if d.power == -1 => {
                let left = vec![Factor::Weyl(l.clone()), Factor::Dilog(d.clone())];
                return Ok(expand_with_g(t, k, left, 0, &kappa, &garg));
            }
            Ok(p) => errors.push(format!("right neighbour: pattern {p:?} does not apply to power {}", d.power)),
            Err(e) => errors.push(format!("right neighbour: {e}")),
        }
    }
    if k > 0 {
        if let Some(l) = t.factors.get(k - 1).and_then(Factor::as_weyl) {
            match split_exponent(&d, l, eps, vee).and_then(|(xp, yp)| bracket_pattern(&d.x, &d.y, &xp, &yp)) {
                Ok(Pattern::Standard) if d.power == -1 => {
                    let left = vec![Factor::Dilog(d.clone()), Factor::Weyl(l.clone())];
                    return Ok(expand_with_g(t, k - 1, left, 2, &kappa, &garg));
                }
                Ok(Pattern::Reversed) if d.power == 1 => {
                    let left = vec![Factor::Dilog(d.clone()), Factor::Weyl(l.clone())];
                    return Ok(expand_with_g(t, k - 1, left, 0, &kappa, &garg));
                }
                Ok(p) => errors.push(format!("left neighbour: pattern {p:?} does not apply to power {}", d.power)),
                Err(e) => errors.push(format!("left neighbour: {e}")),
            }
        }
    }
    if errors.is_empty() {
        errors.push(String::from("no adjacent Weyl exponential"));
    }
    Err(Error::Precondition(errors.join("; ")))
}

fn pair_pattern(a: &Dilog, b: &Dilog) -> Result<()> {
    match bracket_pattern(&a.x, &a.y, &b.x, &b.y)? {
        Pattern::Standard => Ok(()),
        Pattern::Reversed => Err(Error::Precondition(String::from("[x,y′] = −πi: pair is in reversed order"))),
    }
}

/// Five-term relation `Ψ(a)Ψ(b) = Ψ(b)Ψ(a+b)Ψ(a)` and its inverse form.
pub fn pentagon(t: &Term, k: usize, expand: bool) -> Result<Term> {
    let get = |i: usize| -> Result<Dilog> {
        t.factors
            .get(i)
            .and_then(Factor::as_dilog)
            .cloned()
            .ok_or_else(|| Error::BadArgument(format!("factor {i} is not a dilogarithm")))
    };
    let mut out = t.clone();
    if expand {
        let (d1, d2) = (get(k)?, get(k + 1)?);
        if d1.kind != d2.kind || d1.power != d2.power {
            return Err(Error::Precondition(String::from("pentagon needs equal kinds and powers")));
        }
        let (a, b) = if d1.power == 1 { (&d1, &d2) } else { (&d2, &d1) };
        pair_pattern(a, b)?;
        let mid = Dilog::new(d1.kind, d1.x.add(&d2.x), d1.y.add(&d2.y), d1.power);
        out.factors.splice(k..k + 2, [Factor::Dilog(d2.clone()), Factor::Dilog(mid), Factor::Dilog(d1.clone())]);
    } else {
        let (u, m, v) = (get(k)?, get(k + 1)?, get(k + 2)?);
        if u.kind != m.kind || m.kind != v.kind || u.power != m.power || m.power != v.power {
            return Err(Error::Precondition(String::from("pentagon needs equal kinds and powers")));
        }
        if m.x != u.x.add(&v.x) || m.y != u.y.add(&v.y) {
            return Err(Error::Precondition(format!("middle factor {m} is not the sum of its neighbours")));
        }
        if u.power == 1 {
            pair_pattern(&v, &u)?;
        } else {
            pair_pattern(&u, &v)?;
        }
        out.factors.splice(k..k + 3, [Factor::Dilog(v), Factor::Dilog(u)]);
    }
    Ok(out)
}

/// `Ψ(x+iℏy)Ψ(−x−iℏy) = exp(x·ℏy/(πiℏ))`; the Φ pair obeys the same law.
pub fn involutivity(t: &Term, k: usize) -> Result<Term> {
    let d1 = t.factors.get(k).and_then(Factor::as_dilog).ok_or_else(|| Error::BadArgument(format!("factor {k} is not a dilogarithm")))?;
    let d2 = t
        .factors
        .get(k + 1)
        .and_then(Factor::as_dilog)
        .ok_or_else(|| Error::BadArgument(format!("factor {} is not a dilogarithm", k + 1)))?;
    if d1.kind != d2.kind || d1.power != d2.power {
        return Err(Error::Precondition(String::from("involutivity needs equal kinds and powers")));
    }
    if d2.x != d1.x.neg() || d2.y != d1.y.neg() {
        return Err(Error::Precondition(format!("arguments are not opposite: {d1} vs {d2}")));
    }
    let w = bracket(&d1.x, &d1.y);
    if !w.is_zero() {
        return Err(fail("[x,y]", &w));
    }
    let yu = d1.y_unscaled();
    let yu = if d1.power == 1 { yu } else { yu.neg() };
    let mut out = t.clone();
    out.factors.splice(k..k + 2, [Factor::Quad(d1.x.clone(), yu)]);
    Ok(out)
}

/// Replace a quadratic exponential by its special linear operator.
pub fn quad_to_saso(t: &Term, k: usize) -> Result<Term> {
    let Some(Factor::Quad(x, y)) = t.factors.get(k) else {
        return Err(Error::BadArgument(format!("factor {k} is not a quadratic exponential")));
    };
    let (s, w, g) = quadexp(x, y)?;
    let mut out = t.clone();
    out.pre = out.pre.mul(&Prefactor::exp(g));
    out.factors.splice(k..k + 1, [Factor::Saso(s), Factor::Weyl(w)]);
    Ok(out)
}

/// Move factor `k` one place to the left by exact conjugation.
pub fn push_left(t: &Term, k: usize) -> Result<Term> {
    if k == 0 || k >= t.factors.len() {
        return Err(Error::BadArgument(format!("push-left {k}: index out of range")));
    }
    let a = &t.factors[k - 1];
    let b = &t.factors[k];
    let mut out = t.clone();
    let (na, nb) = match (a, b) {
        // Ψ(a) e^L = e^L Ψ(e^{-L} a e^{L})
        (Factor::Dilog(_) | Factor::Quad(_, _), Factor::Weyl(l)) => {
            let m = l.neg();
            (b.clone(), a.map_forms(&|f: &LinForm| weyl_shift(&m, f)))
        }
        // e^L Ψ(a) = Ψ(e^L a e^{-L}) e^L
        (Factor::Weyl(l), Factor::Dilog(_) | Factor::Quad(_, _)) => (b.map_forms(&|f: &LinForm| weyl_shift(l, f)), a.clone()),
        // e^A e^B = e^{[A,B]} e^B e^A
        (Factor::Weyl(x), Factor::Weyl(y)) => {
            out.pre = out.pre.mul(&Prefactor::exp(bracket(x, y).scale(&GaussRat::i())));
            (b.clone(), a.clone())
        }
        (_, Factor::Saso(s)) => (b.clone(), a.map_forms(&|f: &LinForm| s.conj_form(f, true))),
        (Factor::Saso(s), _) => (b.map_forms(&|f: &LinForm| s.conj_form(f, false)), a.clone()),
        _ => {
            if a.commutes_with(b) {
                (b.clone(), a.clone())
            } else {
                return Err(Error::Precondition(format!("factors {} and {k} do not commute", k - 1)));
            }
        }
    };
    out.factors[k - 1] = na;
    out.factors[k] = nb;
    Ok(out)
}

/// Merge the Weyl exponentials at `k` and `k+1`.
pub fn bch(t: &Term, k: usize) -> Result<Term> {
    match (t.factors.get(k), t.factors.get(k + 1)) {
        (Some(Factor::Weyl(a)), Some(Factor::Weyl(b))) => {
            let (p, l) = super::word::bch_mul(a, b);
            let mut out = t.clone();
            out.pre = out.pre.mul(&p);
            out.factors.splice(k..k + 2, [Factor::Weyl(l)]);
            Ok(out)
        }
        _ => Err(Error::BadArgument(format!("factors {k}, {} are not both Weyl exponentials", k + 1))),
    }
}

/// Action on the canonical element: eliminate slot `a` in favour of slot `b`
/// via `q_a = q_b`, `p_a = −p_b`.
pub fn delta_reduce(s: &OperatorSum, a: u32, b: u32) -> Result<OperatorSum> {
    if a == b {
        return Ok(s.clone());
    }
    let mut terms = Vec::new();
    for t in &s.terms {
        if t.has_weyl_not_last() {
            return Err(Error::Precondition(format!("Weyl exponential not rightmost in {t}")));
        }
        for f in &t.factors[..t.factors.len().saturating_sub(1)] {
            let touches = match f {
                Factor::Saso(x) => x.touches_slot(a),
                Factor::Dilog(d) => d.x.touches_slot(a) || d.y.touches_slot(a),
                Factor::Quad(x, y) => x.touches_slot(a) || y.touches_slot(a),
                Factor::Weyl(_) => false,
            };
            if touches {
                return Err(Error::Precondition(format!("non-exponential factor acts on slot {a}: {f}")));
            }
        }
        let mut nt = t.clone();
        if let Some(Factor::Weyl(x)) = t.factors.last() {
            let mut rest = LinForm::constant(x.pi_const.clone());
            let mut xa = LinForm::zero();
            for (g, c) in x.terms() {
                if g.slot == a {
                    xa.add_term(*g, c);
                } else {
                    rest.add_term(*g, c);
                }
            }
            let tr = xa.substitute(|g| {
                let ng = super::form::Generator::new(g.kind, g.axis, b);
                match g.kind {
                    Kind::Pos => LinForm::gen(ng),
                    Kind::Mom => LinForm::gen(ng).neg(),
                }
            });
            let (p, l) = super::word::bch_mul(&rest, &tr);
            nt.pre = nt.pre.mul(&p);
            let n = nt.factors.len();
            nt.factors[n - 1] = Factor::Weyl(l);
        }
        terms.push(nt);
    }
    Ok(OperatorSum { terms }.normalize())
}

/// Apply a per-term rule to every term whose factor types fit, re-normalizing.
pub fn apply_termwise(s: &OperatorSum, f: impl Fn(&Term) -> Result<Vec<Term>>) -> Result<OperatorSum> {
    let mut terms = Vec::new();
    let mut applied = 0;
    let mut last_err = None;
    for t in &s.terms {
        match f(t) {
            Ok(ts) => {
                applied += 1;
                terms.extend(ts);
            }
            Err(e @ Error::BadArgument(_)) => {
                last_err = Some(e);
                terms.push(t.clone());
            }
            Err(e) => return Err(e),
        }
    }
    if applied == 0 {
        return Err(last_err.unwrap_or_else(|| Error::BadArgument(String::from("empty sum"))));
    }
    Ok(OperatorSum { terms }.normalize())
}
