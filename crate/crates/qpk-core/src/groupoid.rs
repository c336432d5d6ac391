//! Dotted triangulations of polygons, the elementary moves `A_j`, `T_{jk}`,
//! `P_σ`, the Kashaev group relations, and compilation of move words to
//! operator words.
//!
//! Polygon vertices are `0..n` in counterclockwise order. A triangle is stored
//! as its vertices in counterclockwise order starting at the dotted corner.
//! Move words are read as products: the rightmost move acts first.
//!
//! Text formats:
//!
//! ```text
//! polygon 5
//! 1: 0 1 2 dot 0
//! 2: 0 2 3 dot 1
//! 3: 0 3 4 dot 2
//! ```
//!
//! and `A 1; T 1 2; P (1 2 3)` for move words.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coeff::{Coeff, GaussRat, Rat};
use crate::error::{Error, Result};
use crate::hopf::Variant;
use crate::reps::{build_a_m_for, build_perm, build_t, find_entry, Equation};
use crate::script::{parse_script, replay_sides};
use crate::weylalg::{Factor, OperatorSum, Prefactor, Term};

/// Vertices in counterclockwise order, dotted corner first.
pub type Triangle = [u32; 3];

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DottedTriangulation {
    pub n: u32,
    pub triangles: BTreeMap<u32, Triangle>,
}

fn bad(msg: String) -> Error {
    Error::BadArgument(msg)
}

fn edge(a: u32, b: u32) -> (u32, u32) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl DottedTriangulation {
    /// Build from `(label, vertices, dot index into vertices)`; vertices may
    /// be listed in any order.
    pub fn new(n: u32, tris: &[(u32, [u32; 3], usize)]) -> Result<Self> {
        let mut triangles = BTreeMap::new();
        for &(label, v, dot) in tris {
            if dot > 2 || v.iter().any(|&x| x >= n) || v[0] == v[1] || v[1] == v[2] || v[0] == v[2] {
                return Err(bad(format!("triangle {label}: vertices {v:?} dot {dot} invalid for a {n}-gon")));
            }
            let d = v[dot];
            let mut s = v;
            s.sort();
            let r = s.iter().position(|&x| x == d).unwrap_or(0);
            let t = [s[r], s[(r + 1) % 3], s[(r + 2) % 3]];
            if triangles.insert(label, t).is_some() {
                return Err(bad(format!("duplicate label {label}")));
            }
        }
        let dt = DottedTriangulation { n, triangles };
        dt.validate()?;
        Ok(dt)
    }

    /// Fan from vertex 0, triangles labeled `1..=n−2`, dots at vertex 0.
    pub fn fan(n: u32) -> Self {
        let triangles = (1..n - 1).map(|i| (i, [0, i, i + 1])).collect();
        DottedTriangulation { n, triangles }
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        if n < 3 || self.triangles.len() != (n - 2) as usize {
            return Err(bad(format!("a {n}-gon needs {} triangles, got {}", n.saturating_sub(2), self.triangles.len())));
        }
        let mut count: BTreeMap<(u32, u32), usize> = BTreeMap::new();
        for t in self.triangles.values() {
            for i in 0..3 {
                *count.entry(edge(t[i], t[(i + 1) % 3])).or_default() += 1;
            }
        }
        for (&(a, b), &c) in &count {
            let boundary = b == a + 1 || (a == 0 && b == n - 1);
            let want = if boundary { 1 } else { 2 };
            if c != want {
                return Err(bad(format!("edge {a}-{b} is used {c} times")));
            }
        }
        for i in 0..n {
            if !count.contains_key(&edge(i, (i + 1) % n)) {
                return Err(bad(format!("boundary edge {i}-{} missing", (i + 1) % n)));
            }
        }
        Ok(())
    }

    pub fn labels(&self) -> BTreeSet<u32> {
        self.triangles.keys().copied().collect()
    }

    /// Edge ids `0..` in lexicographic order of their endpoints.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let s: BTreeSet<(u32, u32)> =
            self.triangles.values().flat_map(|t| (0..3).map(move |i| edge(t[i], t[(i + 1) % 3]))).collect();
        s.into_iter().collect()
    }

    /// Internal edges shared by two triangles, with the two labels.
    pub fn adjacencies(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (&j, a) in &self.triangles {
            for (&k, b) in &self.triangles {
                if j != k && a.iter().filter(|x| b.contains(x)).count() == 2 {
                    out.push((j, k));
                }
            }
        }
        out
    }

    fn tri(&self, j: u32) -> Result<Triangle> {
        self.triangles.get(&j).copied().ok_or_else(|| Error::InapplicableMove(format!("no triangle labeled {j}")))
    }

    /// Whether `T_{jk}` applies: the shared edge follows the dot of `j`
    /// clockwise and lies opposite the dot of `k`.
    pub fn flip_applicable(&self, j: u32, k: u32) -> bool {
        match (self.triangles.get(&j), self.triangles.get(&k)) {
            (Some(a), Some(b)) => j != k && b[1] == a[0] && b[2] == a[2],
            _ => false,
        }
    }

    pub fn apply_move(&self, mv: &Move) -> Result<Self> {
        let mut out = self.clone();
        match mv {
            Move::A(j) => {
                let [d, a, b] = self.tri(*j)?;
                out.triangles.insert(*j, [a, b, d]);
            }
            Move::T(j, k) => {
                let (tj, tk) = (self.tri(*j)?, self.tri(*k)?);
                if j == k {
                    return Err(Error::InapplicableMove(format!("T {j} {k}: labels must differ")));
                }
                if !self.flip_applicable(*j, *k) {
                    return Err(Error::InapplicableMove(format!(
                        "T {j} {k}: triangles {tj:?} and {tk:?} are not adjacent with the flip dot configuration"
                    )));
                }
                out.triangles.insert(*j, [tj[0], tj[1], tk[0]]);
                out.triangles.insert(*k, [tk[0], tj[1], tj[2]]);
            }
            Move::P(p) => {
                if !p.support().iter().all(|x| self.triangles.contains_key(x)) {
                    return Err(Error::InapplicableMove(format!("P {p}: moves labels that are not present")));
                }
                out.triangles = self.triangles.iter().map(|(&j, &t)| (p.apply(j), t)).collect();
            }
        }
        Ok(out)
    }

    /// Apply a word as a product: the rightmost move first.
    pub fn apply_word(&self, w: &MoveWord) -> Result<Self> {
        let mut dt = self.clone();
        for mv in w.moves.iter().rev() {
            dt = dt.apply_move(mv)?;
        }
        Ok(dt)
    }

    /// Moves applicable here: every `A_j`, every flip satisfying the dot
    /// predicate, and every transposition `P_{(j k)}`.
    pub fn neighbors(&self) -> Vec<(Move, DottedTriangulation)> {
        let labels: Vec<u32> = self.triangles.keys().copied().collect();
        let mut moves: Vec<Move> = labels.iter().map(|&j| Move::A(j)).collect();
        for &(j, k) in &self.adjacencies() {
            if self.flip_applicable(j, k) {
                moves.push(Move::T(j, k));
            }
        }
        for (a, &j) in labels.iter().enumerate() {
            for &k in &labels[a + 1..] {
                moves.push(Move::P(Perm::transposition(j, k)));
            }
        }
        moves.into_iter().filter_map(|m| self.apply_move(&m).ok().map(|d| (m, d))).collect()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut tris = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: &str| Error::Syntax { line: i + 1, column: 1, message: m.to_string() };
            if let Some(rest) = line.strip_prefix("polygon") {
                n = Some(rest.trim().parse::<u32>().map_err(|_| err("expected `polygon <n>`"))?);
                continue;
            }
            let (label, rest) = line.split_once(':').ok_or_else(|| err("expected `<label>: a b c dot <i>`"))?;
            let label = label.trim().parse::<u32>().map_err(|_| err("label must be a non-negative integer"))?;
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 5 || toks[3] != "dot" {
                return Err(err("expected `<label>: a b c dot <i>`"));
            }
            let num = |s: &str| s.parse::<u32>().map_err(|_| err("vertex must be a non-negative integer"));
            let v = [num(toks[0])?, num(toks[1])?, num(toks[2])?];
            let dot = toks[4].parse::<usize>().map_err(|_| err("dot must be 0, 1 or 2"))?;
            tris.push((label, v, dot));
        }
        let n = n.ok_or_else(|| Error::Syntax { line: 1, column: 1, message: "missing `polygon <n>` header".to_string() })?;
        DottedTriangulation::new(n, &tris)
    }
}

impl fmt::Display for DottedTriangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "polygon {}", self.n)?;
        for (j, t) in &self.triangles {
            writeln!(f, "{j}: {} {} {} dot 0", t[0], t[1], t[2])?;
        }
        Ok(())
    }
}

/// Permutation of labels, stored on its support.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    map: BTreeMap<u32, u32>,
}

impl Perm {
    pub fn identity() -> Self {
        Perm::default()
    }
    pub fn transposition(j: u32, k: u32) -> Self {
        Perm::from_cycles(&[vec![j, k]]).expect("distinct labels")
    }
    /// `(a b c)` sends `a ↦ b ↦ c ↦ a`.
    pub fn from_cycles(cycles: &[Vec<u32>]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for c in cycles {
            for (i, &a) in c.iter().enumerate() {
                if map.insert(a, c[(i + 1) % c.len()]).is_some() {
                    return Err(bad(format!("label {a} repeated in cycles")));
                }
            }
        }
        map.retain(|a, b| a != b);
        Ok(Perm { map })
    }
    pub fn from_map(pairs: &[(u32, u32)]) -> Result<Self> {
        let map: BTreeMap<u32, u32> = pairs.iter().copied().filter(|(a, b)| a != b).collect();
        let dom: BTreeSet<u32> = map.keys().copied().collect();
        let img: BTreeSet<u32> = map.values().copied().collect();
        if dom != img || map.len() != pairs.iter().filter(|(a, b)| a != b).count() {
            return Err(bad(format!("{pairs:?} is not a permutation")));
        }
        Ok(Perm { map })
    }
    pub fn apply(&self, j: u32) -> u32 {
        self.map.get(&j).copied().unwrap_or(j)
    }
    pub fn support(&self) -> Vec<u32> {
        self.map.keys().copied().collect()
    }
    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }
    /// `self ∘ o`.
    pub fn compose(&self, o: &Perm) -> Perm {
        let keys: BTreeSet<u32> = self.map.keys().chain(o.map.keys()).copied().collect();
        let mut map: BTreeMap<u32, u32> = keys.into_iter().map(|j| (j, self.apply(o.apply(j)))).collect();
        map.retain(|a, b| a != b);
        Perm { map }
    }
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &a in self.map.keys() {
            if seen.contains(&a) {
                continue;
            }
            let mut c = vec![a];
            seen.insert(a);
            let mut b = self.apply(a);
            while b != a {
                c.push(b);
                seen.insert(b);
                b = self.apply(b);
            }
            out.push(c);
        }
        out
    }
    /// All permutations of `labels`.
    pub fn all(labels: &[u32]) -> Vec<Perm> {
        fn rec(rest: &mut Vec<u32>, acc: &mut Vec<u32>, labels: &[u32], out: &mut Vec<Perm>) {
            if rest.is_empty() {
                let pairs: Vec<(u32, u32)> = labels.iter().copied().zip(acc.iter().copied()).collect();
                out.push(Perm::from_map(&pairs).expect("bijection"));
                return;
            }
            for i in 0..rest.len() {
                let x = rest.remove(i);
                acc.push(x);
                rec(rest, acc, labels, out);
                acc.pop();
                rest.insert(i, x);
            }
        }
        let mut out = Vec::new();
        rec(&mut labels.to_vec(), &mut Vec::new(), labels, &mut out);
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "()");
        }
        for c in self.cycles() {
            let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move {
    A(u32),
    T(u32, u32),
    P(Perm),
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::A(j) => write!(f, "A {j}"),
            Move::T(j, k) => write!(f, "T {j} {k}"),
            Move::P(p) => write!(f, "P {p}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MoveWord {
    pub moves: Vec<Move>,
}

impl MoveWord {
    pub fn new(moves: Vec<Move>) -> Self {
        MoveWord { moves }
    }
    pub fn concat(&self, o: &MoveWord) -> MoveWord {
        MoveWord { moves: self.moves.iter().chain(&o.moves).cloned().collect() }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut moves = Vec::new();
        let mut col = 1;
        for part in text.split(';') {
            let s = part.trim();
            let at = col + part.len() - part.trim_start().len();
            col += part.len() + 1;
            if s.is_empty() {
                continue;
            }
            let err = |m: String| Error::Syntax { line: 1, column: at, message: m };
            let num = |t: &str| t.parse::<u32>().map_err(|_| err(format!("expected a label, found `{t}`")));
            let mut it = s.splitn(2, char::is_whitespace);
            let head = it.next().unwrap_or("");
            let rest = it.next().unwrap_or("").trim();
            let mv = match head {
                "A" => {
                    let t: Vec<&str> = rest.split_whitespace().collect();
                    if t.len() != 1 {
                        return Err(err(format!("`A` takes one label: `{s}`")));
                    }
                    Move::A(num(t[0])?)
                }
                "T" => {
                    let t: Vec<&str> = rest.split_whitespace().collect();
                    if t.len() != 2 {
                        return Err(err(format!("`T` takes two labels: `{s}`")));
                    }
                    Move::T(num(t[0])?, num(t[1])?)
                }
                "P" => {
                    let mut cycles = Vec::new();
                    let mut r = rest;
                    while !r.is_empty() {
                        let body = r.strip_prefix('(').ok_or_else(|| err(format!("`P` expects cycles like (1 2): `{s}`")))?;
                        let (inner, tail) = body.split_once(')').ok_or_else(|| err(format!("unclosed cycle in `{s}`")))?;
                        cycles.push(inner.split_whitespace().map(num).collect::<Result<Vec<u32>>>()?);
                        r = tail.trim_start();
                    }
                    Move::P(Perm::from_cycles(&cycles).map_err(|e| err(e.to_string()))?)
                }
                other => return Err(err(format!("unknown move `{other}`"))),
            };
            moves.push(mv);
        }
        Ok(MoveWord { moves })
    }
}

impl fmt::Display for MoveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.moves.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", s.join("; "))
    }
}

/// Treatment of the parameter `m` of `A^{(m)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MMode {
    Formal,
    Value(Rat),
}

impl MMode {
    pub fn coeff(&self) -> Coeff {
        match self {
            MMode::Formal => Coeff::m(),
            MMode::Value(r) => Coeff::gauss(GaussRat::new(*r, Rat::from_integer(0))),
        }
    }
}

/// `A_j ↦ A^{(m)}_j`, `T_{jk} ↦ T_{jk}`, `P_σ ↦ P_σ`, multiplied in written order.
pub fn compile(word: &MoveWord, mode: &MMode) -> Term {
    compile_for(Variant::C, word, mode)
}

pub fn compile_for(variant: Variant, word: &MoveWord, mode: &MMode) -> Term {
    let m = mode.coeff();
    word.moves.iter().fold(Term::identity(), |acc, mv| {
        let t = match mv {
            Move::A(j) => build_a_m_for(variant, &m, *j),
            Move::T(j, k) => build_t(variant, *j, *k),
            Move::P(p) if p.is_identity() => Term::identity(),
            Move::P(p) => {
                let pairs: Vec<(u32, u32)> = p.support().into_iter().map(|j| (j, p.apply(j))).collect();
                build_perm(&pairs)
            }
        };
        acc.mul(&t)
    })
}

/// The defining relations of the Kashaev group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RelationKind {
    ACube,
    Pentagon,
    Ata,
    Tat,
    PIdentity,
    PCompose,
    PA,
    PT,
    AA,
    AT,
    TT,
}

impl RelationKind {
    pub fn display(&self) -> &'static str {
        match self {
            RelationKind::ACube => "a_j^3 = 1",
            RelationKind::Pentagon => "t_kl t_jk = t_jk t_jl t_kl",
            RelationKind::Ata => "a_j t_jk a_k = a_k t_kj a_j",
            RelationKind::Tat => "t_jk a_j t_kj = a_j a_k p_(jk)",
            RelationKind::PIdentity => "p_id = 1",
            RelationKind::PCompose => "p_s1 p_s2 = p_(s1 s2)",
            RelationKind::PA => "p_s a_j = a_s(j) p_s",
            RelationKind::PT => "p_s t_jk = t_s(j)s(k) p_s",
            RelationKind::AA => "a_j a_k = a_k a_j",
            RelationKind::AT => "a_j t_kl = t_kl a_j",
            RelationKind::TT => "t_jk t_ln = t_ln t_jk",
        }
    }
    /// Catalog entry whose script rewrites the relation at labels `1, 2, 3`.
    fn script_entry(&self) -> Option<&'static str> {
        match self {
            RelationKind::Pentagon => Some("t-pentagon"),
            RelationKind::Ata => Some("ata"),
            RelationKind::Tat => Some("tat"),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Relation {
    pub kind: RelationKind,
    /// Labels substituted for `j, k, ℓ, n` (or permutation data for `p`).
    pub instance: String,
    pub lhs: MoveWord,
    pub rhs: MoveWord,
}

/// Projective factor expected between the operator images of the sides:
/// `e^{πi(m−1)²/3}` for TAT, `1` otherwise.
pub fn expected_phase(kind: RelationKind, mode: &MMode) -> Prefactor {
    match kind {
        RelationKind::Tat => {
            let m1 = &mode.coeff() - &Coeff::one();
            canonical(1, Prefactor::exp((&m1 * &m1).scale(&GaussRat::new(Rat::from_integer(0), Rat::new(1, 3))))).1
        }
        _ => Prefactor::one(),
    }
}

fn canonical(mult: i64, p: Prefactor) -> (i64, Prefactor) {
    let t = Term::scalar(mult, p).normalize();
    (t.mult, t.pre)
}

fn w(moves: Vec<Move>) -> MoveWord {
    MoveWord::new(moves)
}

/// Every instance of every relation over `labels`.
pub fn relations(labels: &[u32]) -> Vec<Relation> {
    use Move::{A, P, T};
    let mut out = Vec::new();
    let mut push = |kind, instance: String, lhs, rhs| out.push(Relation { kind, instance, lhs, rhs });
    let distinct = |xs: &[u32]| xs.iter().collect::<BTreeSet<_>>().len() == xs.len();
    let perms = Perm::all(labels);
    for &j in labels {
        push(RelationKind::ACube, format!("j={j}"), w(vec![A(j), A(j), A(j)]), w(vec![]));
    }
    for &j in labels {
        for &k in labels {
            if j == k {
                continue;
            }
            for &l in labels {
                if distinct(&[j, k, l]) {
                    push(
                        RelationKind::Pentagon,
                        format!("j={j},k={k},l={l}"),
                        w(vec![T(k, l), T(j, k)]),
                        w(vec![T(j, k), T(j, l), T(k, l)]));
                }
            }
            push(RelationKind::Ata, format!("j={j},k={k}"), w(vec![A(j), T(j, k), A(k)]), w(vec![A(k), T(k, j), A(j)]));
            push(
                RelationKind::Tat,
                format!("j={j},k={k}"),
                w(vec![T(j, k), A(j), T(k, j)]),
                w(vec![A(j), A(k), P(Perm::transposition(j, k))]));
        }
    }
    push(RelationKind::PIdentity, String::from("-"), w(vec![P(Perm::identity())]), w(vec![]));
    for s1 in &perms {
        for s2 in &perms {
            push(
                RelationKind::PCompose,
                format!("s1={s1},s2={s2}"),
                w(vec![P(s1.clone()), P(s2.clone())]),
                w(vec![P(s1.compose(s2))]));
        }
    }
    for s in &perms {
        for &j in labels {
            push(RelationKind::PA, format!("s={s},j={j}"), w(vec![P(s.clone()), A(j)]), w(vec![A(s.apply(j)), P(s.clone())]));
            for &k in labels {
                if j != k {
                    push(
                        RelationKind::PT,
                        format!("s={s},j={j},k={k}"),
                        w(vec![P(s.clone()), T(j, k)]),
                        w(vec![T(s.apply(j), s.apply(k)), P(s.clone())]));
                }
            }
        }
    }
    for &j in labels {
        for &k in labels {
            if j < k {
                push(RelationKind::AA, format!("j={j},k={k}"), w(vec![A(j), A(k)]), w(vec![A(k), A(j)]));
            }
            for &l in labels {
                if distinct(&[j, k, l]) {
                    push(RelationKind::AT, format!("j={j},k={k},l={l}"), w(vec![A(j), T(k, l)]), w(vec![T(k, l), A(j)]));
                }
                for &n in labels {
                    if distinct(&[j, k, l, n]) && (j, k) < (l, n) {
                        push(
                            RelationKind::TT,
                            format!("j={j},k={k},l={l},n={n}"),
                            w(vec![T(j, k), T(l, n)]),
                            w(vec![T(l, n), T(j, k)]));
                    }
                }
            }
        }
    }
    out
}

/// Outcome of checking one relation instance.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub kind: RelationKind,
    pub instance: String,
    pub lhs: String,
    pub rhs: String,
    /// `Ok((mult, phase))` with `image(lhs) = mult·phase·image(rhs)`.
    pub outcome: core::result::Result<(i64, Prefactor), String>,
    pub expected: Prefactor,
}

impl RelationCheck {
    pub fn matches_expected(&self) -> bool {
        matches!(&self.outcome, Ok((1, p)) if *p == self.expected)
    }
}

/// Bubble adjacent commuting non-special-linear factors into a fixed order.
fn sort_commuting(t: &Term) -> Term {
    let mut t = t.clone();
    let key = |f: &Factor| format!("{f:?}");
    loop {
        let mut changed = false;
        for i in 0..t.factors.len().saturating_sub(1) {
            let (a, b) = (&t.factors[i], &t.factors[i + 1]);
            if !matches!(a, Factor::Saso(_)) && !matches!(b, Factor::Saso(_)) && a.commutes_with(b) && key(a) > key(b) {
                t.factors.swap(i, i + 1);
                changed = true;
            }
        }
        if !changed {
            return t;
        }
    }
}

fn ratio(l: &OperatorSum, r: &OperatorSum) -> core::result::Result<(i64, Prefactor), String> {
    let one = |s: &OperatorSum| -> OperatorSum { OperatorSum { terms: s.normalize().terms.iter().map(sort_commuting).collect() } };
    let (l, r) = (one(l), one(r));
    l.scalar_ratio(&r).map(|(m, p)| canonical(m, p)).ok_or_else(|| crate::script::diff(&l, &r))
}

/// Verify one relation instance through the exact engine.
pub fn check_relation(rel: &Relation, variant: Variant, mode: &MMode) -> RelationCheck {
    let lhs = compile_for(variant, &rel.lhs, mode);
    let rhs = compile_for(variant, &rel.rhs, mode);
    let eq = Equation { label: String::from(rel.kind.display()), lhs: lhs.into(), rhs: rhs.into() };
    let outcome = match rel.kind.script_entry() {
        None => ratio(&eq.lhs, &eq.rhs),
        Some(name) => {
            let name = if variant == Variant::D { format!("d-{name}") } else { String::from(name) };
            let entry = find_entry(&name).ok_or_else(|| format!("catalog entry {name} missing"));
            entry.and_then(|e| {
                let script = parse_script(e.script).map_err(|x| x.to_string())?;
                let (l, r) = replay_sides(&script, &eq).map_err(|x| x.to_string())?;
                ratio(&l, &r)
            })
        }
    };
    let expected = if variant == Variant::D { Prefactor::one() } else { expected_phase(rel.kind, mode) };
    RelationCheck { kind: rel.kind, instance: rel.instance.clone(), lhs: rel.lhs.to_string(), rhs: rel.rhs.to_string(), outcome, expected }
}

/// Check every relation over the index set `1..=size` (`size ≤ 4`).
pub fn check_presentation(size: u32, variant: Variant, mode: &MMode) -> Result<Vec<RelationCheck>> {
    if size == 0 || size > 4 {
        return Err(bad(format!("index set size {size} outside 1..=4")));
    }
    let labels: Vec<u32> = (1..=size).collect();
    Ok(relations(&labels).iter().map(|r| check_relation(r, variant, mode)).collect())
}

/// Breadth-first search over dotted triangulations reachable from `start`;
/// returns the number of states visited.
pub fn reachable_count(start: &DottedTriangulation) -> usize {
    let mut seen: BTreeSet<DottedTriangulation> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start.clone());
    while let Some(dt) = queue.pop_front() {
        for (_, next) in dt.neighbors() {
            if !seen.contains(&next) {
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    seen.len()
}

/// Shortest move word taking `from` to `to`, if any.
pub fn connect(from: &DottedTriangulation, to: &DottedTriangulation) -> Option<MoveWord> {
    let mut prev: BTreeMap<DottedTriangulation, Option<(DottedTriangulation, Move)>> = BTreeMap::new();
    let mut queue = VecDeque::new();
    prev.insert(from.clone(), None);
    queue.push_back(from.clone());
    while let Some(dt) = queue.pop_front() {
        if &dt == to {
            let mut moves = Vec::new();
            let mut cur = dt;
            while let Some(Some((p, m))) = prev.get(&cur).cloned() {
                moves.push(m);
                cur = p;
            }
            return Some(MoveWord::new(moves));
        }
        for (m, next) in dt.neighbors() {
            if !prev.contains_key(&next) {
                prev.insert(next.clone(), Some((dt.clone(), m)));
                queue.push_back(next);
            }
        }
    }
    None
}

/// Number of dotted, labeled triangulations of an `n`-gon:
/// `Catalan(n−2)·3^{n−2}·(n−2)!`.
pub fn state_count(n: u32) -> usize {
    let k = (n - 2) as usize;
    let mut catalan = 1usize;
    for i in 0..k {
        catalan = catalan * 2 * (2 * i + 1) / (i + 2);
    }
    catalan * 3usize.pow(k as u32) * (1..=k).product::<usize>()
}
