//! Proof scripts: parsing and replay against the rewrite engine.
//!
//! ```text
//! script    := line*
//! line      := directive arg* ('#' comment)?
//! directive := push-left k | bch k | dilog-commute k eps=±1 [vee]
//!            | pentagon k expand|contract | involutivity k | quad-to-saso k
//!            | delta-reduce a b | side lhs|rhs | expect-equal
//! ```
//! Factor-indexed directives accept an optional `term=<i>` restricting them
//! to one term of the current sum; otherwise they apply to every term where
//! the factor types fit.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::reps::Equation;
use crate::weylalg::rules;
use crate::weylalg::{OperatorSum, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Directive {
    PushLeft(usize),
    Bch(usize),
    DilogCommute { k: usize, eps: i8, vee: bool },
    Pentagon { k: usize, expand: bool },
    Involutivity(usize),
    QuadToSaso(usize),
    DeltaReduce(u32, u32),
    Side(Side),
    ExpectEqual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Lhs,
    Rhs,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub line: usize,
    pub directive: Directive,
    pub term: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProofScript {
    pub steps: Vec<Step>,
}

impl fmt::Display for Directive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Directive::PushLeft(k) => write!(f, "push-left {k}"),
            Directive::Bch(k) => write!(f, "bch {k}"),
            Directive::DilogCommute { k, eps, vee } => {
                write!(f, "dilog-commute {k} eps={}{}", if *eps > 0 { "+1" } else { "-1" }, if *vee { " vee" } else { "" })
            }
            Directive::Pentagon { k, expand } => write!(f, "pentagon {k} {}", if *expand { "expand" } else { "contract" }),
            Directive::Involutivity(k) => write!(f, "involutivity {k}"),
            Directive::QuadToSaso(k) => write!(f, "quad-to-saso {k}"),
            Directive::DeltaReduce(a, b) => write!(f, "delta-reduce {a} {b}"),
            Directive::Side(Side::Lhs) => write!(f, "side lhs"),
            Directive::Side(Side::Rhs) => write!(f, "side rhs"),
            Directive::ExpectEqual => write!(f, "expect-equal"),
        }
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

/// Parse script text.
pub fn parse_script(text: &str) -> Result<ProofScript> {
    let mut steps = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut toks: Vec<(usize, &str)> = Vec::new();
        let mut start = None;
        for (i, ch) in body.char_indices() {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    toks.push((s, &body[s..i]));
                }
            } else if start.is_none() {
                start = Some(i);
            }
        }
        if let Some(s) = start {
            toks.push((s, &body[s..]));
        }
        if toks.is_empty() {
            continue;
        }
        let mut term = None;
        toks.retain(|&(col, t)| {
            if let Some(v) = t.strip_prefix("term=") {
                term = Some(v.parse::<usize>().map_err(|_| (col, t)));
                false
            } else {
                true
            }
        });
        let term = match term {
            None => None,
            Some(Ok(v)) => Some(v),
            Some(Err((col, t))) => return Err(syntax(line, col + 1, format!("bad term selector `{t}`"))),
        };
        let (c0, name) = toks[0];
        let args = &toks[1..];
        let index = |i: usize| -> Result<usize> {
            let (c, t) = *args.get(i).ok_or_else(|| syntax(line, body.len() + 1, format!("`{name}` expects a factor index")))?;
            t.parse::<usize>().map_err(|_| syntax(line, c + 1, format!("expected an index, found `{t}`")))
        };
        let arity = |n: usize| -> Result<()> {
            if args.len() > n {
                let (c, t) = args[n];
                return Err(syntax(line, c + 1, format!("unexpected argument `{t}`")));
            }
            Ok(())
        };
        let directive = match name {
            "push-left" => {
                arity(1)?;
                Directive::PushLeft(index(0)?)
            }
            "bch" => {
                arity(1)?;
                Directive::Bch(index(0)?)
            }
            "involutivity" => {
                arity(1)?;
                Directive::Involutivity(index(0)?)
            }
            "quad-to-saso" => {
                arity(1)?;
                Directive::QuadToSaso(index(0)?)
            }
            "dilog-commute" => {
                let k = index(0)?;
                let mut eps = None;
                let mut vee = false;
                for &(c, t) in &args[1..] {
                    match t {
                        "eps=+1" | "eps=1" => eps = Some(1),
                        "eps=-1" => eps = Some(-1),
                        "vee" => vee = true,
                        _ => return Err(syntax(line, c + 1, format!("unexpected argument `{t}`"))),
                    }
                }
                let eps = eps.ok_or_else(|| syntax(line, c0 + 1, "dilog-commute needs eps=+1 or eps=-1"))?;
                Directive::DilogCommute { k, eps, vee }
            }
            "pentagon" => {
                arity(2)?;
                let k = index(0)?;
                let expand = match args.get(1) {
                    Some((_, "expand")) => true,
                    Some((_, "contract")) => false,
                    Some(&(c, t)) => return Err(syntax(line, c + 1, format!("expected expand|contract, found `{t}`"))),
                    None => return Err(syntax(line, body.len() + 1, "pentagon needs expand|contract")),
                };
                Directive::Pentagon { k, expand }
            }
            "delta-reduce" => {
                arity(2)?;
                let a = index(0)? as u32;
                let b = index(1)? as u32;
                Directive::DeltaReduce(a, b)
            }
            "side" => {
                arity(1)?;
                match args.first() {
                    Some((_, "lhs")) => Directive::Side(Side::Lhs),
                    Some((_, "rhs")) => Directive::Side(Side::Rhs),
                    Some(&(c, t)) => return Err(syntax(line, c + 1, format!("expected lhs|rhs, found `{t}`"))),
                    None => return Err(syntax(line, body.len() + 1, "side needs lhs|rhs")),
                }
            }
            "expect-equal" => {
                arity(0)?;
                Directive::ExpectEqual
            }
            other => return Err(syntax(line, c0 + 1, format!("unknown directive `{other}`"))),
        };
        if term.is_some() && matches!(directive, Directive::DeltaReduce(..) | Directive::Side(_) | Directive::ExpectEqual) {
            return Err(syntax(line, c0 + 1, format!("`{name}` does not take a term selector")));
        }
        steps.push(Step { line, directive, term });
    }
    Ok(ProofScript { steps })
}

/// Record of one replayed directive.
#[derive(Clone, Debug)]
pub struct StepRecord {
    pub line: usize,
    pub rule: String,
    pub equation: usize,
    pub terms_before: usize,
    pub terms_after: usize,
    pub result: String,
}

/// Outcome of replaying a script over a list of equations.
#[derive(Clone, Debug)]
pub struct Replay {
    pub steps: Vec<StepRecord>,
    /// `None` on success; otherwise the failing line (0 when the script ended
    /// early) and the error.
    pub failure: Option<(usize, Error)>,
    pub equations_checked: usize,
}

impl Replay {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn on_terms(s: &OperatorSum, sel: Option<usize>, f: impl Fn(&Term) -> Result<Vec<Term>>) -> Result<OperatorSum> {
    match sel {
        None => rules::apply_termwise(s, f),
        Some(i) => {
            let t = s.terms.get(i).ok_or_else(|| Error::BadArgument(format!("term {i} out of range ({} terms)", s.len())))?;
            let mut terms = s.terms[..i].to_vec();
            terms.extend(f(t)?);
            terms.extend(s.terms[i + 1..].iter().cloned());
            Ok(OperatorSum { terms }.normalize())
        }
    }
}

fn one(r: Result<Term>) -> Result<Vec<Term>> {
    r.map(|t| alloc::vec![t])
}

/// Apply a single directive to a sum.
pub fn apply(d: &Directive, term: Option<usize>, s: &OperatorSum) -> Result<OperatorSum> {
    match *d {
        Directive::PushLeft(k) => on_terms(s, term, |t| one(rules::push_left(t, k))),
        Directive::Bch(k) => on_terms(s, term, |t| one(rules::bch(t, k))),
        Directive::DilogCommute { k, eps, vee } => on_terms(s, term, |t| rules::dilog_commute(t, k, eps, vee)),
        Directive::Pentagon { k, expand } => on_terms(s, term, |t| one(rules::pentagon(t, k, expand))),
        Directive::Involutivity(k) => on_terms(s, term, |t| one(rules::involutivity(t, k))),
        Directive::QuadToSaso(k) => on_terms(s, term, |t| one(rules::quad_to_saso(t, k))),
        Directive::DeltaReduce(a, b) => rules::delta_reduce(s, a, b),
        Directive::Side(_) | Directive::ExpectEqual => Ok(s.clone()),
    }
}

/// Minimal diff of two normalized sums.
pub fn diff(a: &OperatorSum, b: &OperatorSum) -> String {
    let only_a: Vec<String> = a.terms.iter().filter(|t| !b.terms.contains(t)).map(|t| t.to_string()).collect();
    let only_b: Vec<String> = b.terms.iter().filter(|t| !a.terms.contains(t)).map(|t| t.to_string()).collect();
    format!("lhs only: [{}]; rhs only: [{}]", only_a.join("  +  "), only_b.join("  +  "))
}

/// Replay a script; each `expect-equal` closes the next equation.
pub fn replay(script: &ProofScript, equations: &[Equation]) -> Replay {
    let mut steps = Vec::new();
    let mut idx = 0;
    let mut side = Side::Lhs;
    let mut cur: Option<(OperatorSum, OperatorSum)> = None;
    let fail = |steps: Vec<StepRecord>, line: usize, e: Error, n: usize| Replay { steps, failure: Some((line, e)), equations_checked: n };
    for st in &script.steps {
        if idx >= equations.len() {
            return fail(steps, st.line, Error::BadArgument(String::from("directive after the last equation")), idx);
        }
        let (l, r) = cur.get_or_insert_with(|| (equations[idx].lhs.normalize(), equations[idx].rhs.normalize()));
        match &st.directive {
            Directive::Side(s) => {
                side = *s;
                continue;
            }
            Directive::ExpectEqual => {
                let (ln, rn) = (l.normalize(), r.normalize());
                let ok = ln == rn;
                steps.push(StepRecord {
                    line: st.line,
                    rule: st.directive.to_string(),
                    equation: idx,
                    terms_before: ln.len(),
                    terms_after: rn.len(),
                    result: if ok { String::from("equal") } else { diff(&ln, &rn) },
                });
                if !ok {
                    let msg = format!("{}: {}", equations[idx].label, diff(&ln, &rn));
                    return fail(steps, st.line, Error::NotEqual(msg), idx);
                }
                idx += 1;
                side = Side::Lhs;
                cur = None;
                continue;
            }
            _ => {}
        }
        let target = if side == Side::Lhs { l } else { r };
        let before = target.len();
        match apply(&st.directive, st.term, target) {
            Ok(next) => {
                steps.push(StepRecord {
                    line: st.line,
                    rule: match st.term {
                        Some(t) => format!("{} term={t}", st.directive),
                        None => st.directive.to_string(),
                    },
                    equation: idx,
                    terms_before: before,
                    terms_after: next.len(),
                    result: next.to_string(),
                });
                *target = next;
            }
            Err(e) => return fail(steps, st.line, e, idx),
        }
    }
    if idx < equations.len() {
        let e = Error::BadArgument(format!("script ended with {} of {} equations closed", idx, equations.len()));
        return fail(steps, 0, e, idx);
    }
    Replay { steps, failure: None, equations_checked: idx }
}

/// Rewrite both sides of one equation up to the first `expect-equal` and
/// return them normalized, without comparing.
pub fn replay_sides(script: &ProofScript, eq: &Equation) -> Result<(OperatorSum, OperatorSum)> {
    let (mut l, mut r) = (eq.lhs.normalize(), eq.rhs.normalize());
    let mut side = Side::Lhs;
    for st in &script.steps {
        match &st.directive {
            Directive::ExpectEqual => break,
            Directive::Side(s) => side = *s,
            d => {
                let target = if side == Side::Lhs { &mut l } else { &mut r };
                *target = apply(d, st.term, target)?;
            }
        }
    }
    Ok((l.normalize(), r.normalize()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_two_directives() {
        let s = parse_script("dilog-commute 2 eps=+1\nexpect-equal").unwrap();
        assert_eq!(s.steps.len(), 2);
        assert_eq!(s.steps[0].directive, Directive::DilogCommute { k: 2, eps: 1, vee: false });
    }

    #[test]
    fn unknown_directive_is_located() {
        match parse_script("bogus 1") {
            Err(Error::Syntax { line: 1, column: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
    }
}
