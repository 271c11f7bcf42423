use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::fields::{normalize_parts, value_at, EPSeq, FieldSpec};
use crate::operators::Operator;

/// Default number of members probed by exact spot checks.
pub const DEFAULT_PROBE: usize = 24;

/// Eventually periodic coloring of the basis indices. Colors are renumbered
/// `1, 2, ...` in order of first occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    pre: Vec<usize>,
    per: Vec<usize>,
}

impl Coloring {
    pub fn new(pre: Vec<usize>, per: Vec<usize>, exceptions: &BTreeMap<usize, usize>) -> Result<Self> {
        if per.is_empty() {
            return Err(Error::InvalidFamily("coloring needs a nonempty period".into()));
        }
        let len = exceptions.keys().next_back().map_or(0, |&k| k + 1).max(pre.len());
        let mut full_pre: Vec<usize> = (0..len).map(|j| *value_at(&pre, &per, j)).collect();
        for (&j, &c) in exceptions {
            full_pre[j] = c;
        }
        let full_per: Vec<usize> = (len..len + per.len()).map(|j| *value_at(&pre, &per, j)).collect();
        let (pre, per) = normalize_parts(full_pre, full_per);
        let mut relabel = BTreeMap::new();
        for &c in pre.iter().chain(&per) {
            let next = relabel.len() + 1;
            relabel.entry(c).or_insert(next);
        }
        Ok(Coloring {
            pre: pre.iter().map(|c| relabel[c]).collect(),
            per: per.iter().map(|c| relabel[c]).collect(),
        })
    }

    pub fn pre(&self) -> &[usize] {
        &self.pre
    }

    pub fn per(&self) -> &[usize] {
        &self.per
    }

    pub fn color_at(&self, j: usize) -> usize {
        *value_at(&self.pre, &self.per, j)
    }

    pub fn colors(&self) -> usize {
        self.pre.iter().chain(&self.per).copied().max().unwrap_or(0)
    }

    fn indicator(&self, field: FieldSpec, color: usize) -> EPSeq {
        let ind = |c: &usize| if *c == color { field.one() } else { field.zero() };
        EPSeq::new(field, self.pre.iter().map(ind).collect(), self.per.iter().map(ind).collect())
            .expect("nonempty period")
    }
}

/// `a * i + b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Affine {
    pub a: i64,
    pub b: i64,
}

impl Affine {
    pub fn at(&self, i: usize) -> i64 {
        self.a * i as i64 + self.b
    }
}

/// Matrix-unit template `E_{r(i), c(i)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub row: Affine,
    pub col: Affine,
}

/// Members `E_i = sum_t E_{r_t(i), c_t(i)}` for `i >= i0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    i0: usize,
    terms: Vec<Term>,
}

/// Indices `i >= i0` where `f(i) = g(i)`.
#[derive(Debug, PartialEq, Eq)]
enum Meet {
    Always,
    At(usize),
    Never,
}

fn meet(f: Affine, g: Affine, i0: usize) -> Meet {
    let (da, db) = (f.a - g.a, g.b - f.b);
    if da == 0 {
        return if db == 0 { Meet::Always } else { Meet::Never };
    }
    if db % da != 0 {
        return Meet::Never;
    }
    let i = db / da;
    if i >= i0 as i64 {
        Meet::At(i as usize)
    } else {
        Meet::Never
    }
}

/// Some `(i, j)` with `i != j`, both `>= i0`, and `a i - b j = c` (`a, b >= 0`).
fn solve_pair(a: i64, b: i64, c: i64, i0: i64) -> Option<(i64, i64)> {
    let (a, b, c, i0) = (a as i128, b as i128, c as i128, i0 as i128);
    let out = |i: i128, j: i128| Some((i as i64, j as i64));
    match (a, b) {
        (0, 0) => (c == 0).then_some((i0, i0 + 1)).and_then(|(i, j)| out(i, j)),
        (0, _) => {
            let j = -c / b;
            (c % b == 0 && j >= i0).then(|| (j + 1, j)).and_then(|(i, j)| out(i, j))
        }
        (_, 0) => {
            let i = c / a;
            (c % a == 0 && i >= i0).then(|| (i, i + 1)).and_then(|(i, j)| out(i, j))
        }
        _ => {
            let e = a.extended_gcd(&b);
            if c % e.gcd != 0 {
                return None;
            }
            let (ip, jp) = (e.x * (c / e.gcd), -e.y * (c / e.gcd));
            let (si, sj) = (b / e.gcd, a / e.gcd);
            let ceil = |x: i128, y: i128| -Integer::div_floor(&-x, &y);
            let k0 = ceil(i0 - ip, si).max(ceil(i0 - jp, sj));
            (k0..k0 + 2)
                .map(|k| (ip + si * k, jp + sj * k))
                .find(|(i, j)| i != j)
                .and_then(|(i, j)| out(i, j))
        }
    }
}

impl Pattern {
    pub fn new(i0: usize, terms: Vec<Term>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidFamily("pattern needs at least one term".into()));
        }
        for t in &terms {
            if t.row.a < 0 || t.col.a < 0 {
                return Err(Error::InvalidFamily("affine index slopes must be nonnegative".into()));
            }
            if t.row.at(i0) < 0 || t.col.at(i0) < 0 {
                return Err(Error::InvalidFamily(format!("term {t:?} is negative at i = {i0}")));
            }
        }
        for (k, s) in terms.iter().enumerate() {
            for t in &terms[k + 1..] {
                let clash = match (meet(s.row, t.row, i0), meet(s.col, t.col, i0)) {
                    (Meet::Never, _) | (_, Meet::Never) => None,
                    (Meet::Always, Meet::Always) => Some(i0),
                    (Meet::At(i), Meet::Always) | (Meet::Always, Meet::At(i)) => Some(i),
                    (Meet::At(i), Meet::At(j)) => (i == j).then_some(i),
                };
                if let Some(i) = clash {
                    return Err(Error::InvalidFamily(format!("terms {s:?} and {t:?} coincide at i = {i}")));
                }
            }
        }
        Ok(Pattern { i0, terms })
    }

    pub fn i0(&self) -> usize {
        self.i0
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    fn member(&self, field: FieldSpec, i: usize) -> Operator {
        let corr = self
            .terms
            .iter()
            .map(|t| ((t.row.at(i) as usize, t.col.at(i) as usize), field.one()));
        Operator::new(field, [], corr).expect("nonnegative positions")
    }

    /// Indices `i` at which the coincidence pattern among the index
    /// functions differs from the generic one, plus one generic index.
    fn representative_indices(&self) -> Vec<usize> {
        let funcs: Vec<Affine> = self.terms.iter().flat_map(|t| [t.row, t.col]).collect();
        let mut special = BTreeSet::new();
        for (k, f) in funcs.iter().enumerate() {
            for g in &funcs[k + 1..] {
                if let Meet::At(i) = meet(*f, *g, self.i0) {
                    special.insert(i);
                }
            }
        }
        let generic = special.iter().next_back().map_or(self.i0, |&m| m + 1);
        special.insert(generic);
        special.into_iter().collect()
    }

    /// A pair `i != j` with `E_i E_j != 0`, when the affine equations allow one.
    fn overlap(&self) -> Option<(usize, usize)> {
        for s in &self.terms {
            for t in &self.terms {
                // c_s(i) = r_t(j)
                if let Some((i, j)) = solve_pair(s.col.a, t.row.a, t.row.b - s.col.b, self.i0 as i64) {
                    return Some((i as usize, j as usize));
                }
            }
        }
        None
    }
}

/// An orthogonal family of idempotent operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdempotentFamily {
    /// Diagonal 0/1 projections, one per color.
    Partition { field: FieldSpec, coloring: Coloring },
    Explicit { field: FieldSpec, members: Vec<Operator> },
    Pattern { field: FieldSpec, pattern: Pattern },
}

/// `{i : E_i v_j != 0}` as member positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Support {
    Finite(Vec<usize>),
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyDefect {
    NotIdempotent { member: String, square: Operator },
    NotOrthogonal { left: String, right: String, product: Operator },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validation {
    Valid,
    Invalid(FamilyDefect),
}

impl IdempotentFamily {
    pub fn partition(field: FieldSpec, pre: Vec<usize>, per: Vec<usize>, exceptions: &BTreeMap<usize, usize>) -> Result<Self> {
        Ok(IdempotentFamily::Partition {
            field,
            coloring: Coloring::new(pre, per, exceptions)?,
        })
    }

    pub fn explicit(field: FieldSpec, members: Vec<Operator>) -> Result<Self> {
        if members.iter().any(|m| m.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(IdempotentFamily::Explicit { field, members })
    }

    pub fn pattern(field: FieldSpec, i0: usize, terms: Vec<Term>) -> Result<Self> {
        Ok(IdempotentFamily::Pattern {
            field,
            pattern: Pattern::new(i0, terms)?,
        })
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            IdempotentFamily::Partition { field, .. }
            | IdempotentFamily::Explicit { field, .. }
            | IdempotentFamily::Pattern { field, .. } => *field,
        }
    }

    /// Number of members, `None` when infinite.
    pub fn len(&self) -> Option<usize> {
        match self {
            IdempotentFamily::Partition { coloring, .. } => Some(coloring.colors()),
            IdempotentFamily::Explicit { members, .. } => Some(members.len()),
            IdempotentFamily::Pattern { .. } => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// The `k`-th member (0-based).
    pub fn member(&self, k: usize) -> Operator {
        match self {
            IdempotentFamily::Partition { field, coloring } => Operator::diagonal(&coloring.indicator(*field, k + 1)),
            IdempotentFamily::Explicit { members, .. } => members[k].clone(),
            IdempotentFamily::Pattern { field, pattern } => pattern.member(*field, pattern.i0 + k),
        }
    }

    pub fn label(&self, k: usize) -> String {
        match self {
            IdempotentFamily::Partition { .. } => format!("color {}", k + 1),
            IdempotentFamily::Explicit { .. } => format!("E[{k}]"),
            IdempotentFamily::Pattern { pattern, .. } => format!("E_{}", pattern.i0 + k),
        }
    }

    /// All members of a finite family, or the first `bound` of an infinite one.
    pub fn members(&self, bound: usize) -> Vec<Operator> {
        let n = self.len().unwrap_or(bound);
        (0..n).map(|k| self.member(k)).collect()
    }

    pub fn support_indices(&self, j: usize) -> Support {
        match self {
            IdempotentFamily::Partition { coloring, .. } => Support::Finite(vec![coloring.color_at(j) - 1]),
            IdempotentFamily::Explicit { members, .. } => Support::Finite(
                members
                    .iter()
                    .enumerate()
                    .filter(|(_, m)| !m.column(j).is_zero())
                    .map(|(k, _)| k)
                    .collect(),
            ),
            IdempotentFamily::Pattern { pattern, .. } => {
                let mut out = BTreeSet::new();
                for t in &pattern.terms {
                    match meet(t.col, Affine { a: 0, b: j as i64 }, pattern.i0) {
                        Meet::Always => return Support::Infinite,
                        Meet::At(i) => {
                            out.insert(i - pattern.i0);
                        }
                        Meet::Never => {}
                    }
                }
                Support::Finite(out.into_iter().collect())
            }
        }
    }

    /// Exact checks on the members below `sample_bound` plus the symbolic
    /// argument for the whole family.
    pub fn validate(&self, sample_bound: usize) -> Validation {
        if let IdempotentFamily::Pattern { field, pattern } = self {
            for i in pattern.representative_indices() {
                if let Some(d) = idempotent_defect(&pattern.member(*field, i), format!("E_{i}")) {
                    return Validation::Invalid(d);
                }
            }
            if let Some((i, j)) = pattern.overlap() {
                return Validation::Invalid(FamilyDefect::NotOrthogonal {
                    left: format!("E_{i}"),
                    right: format!("E_{j}"),
                    product: pattern.member(*field, i).mul(&pattern.member(*field, j)).expect("same field"),
                });
            }
        }
        let members = self.members(sample_bound.max(1));
        for (k, m) in members.iter().enumerate() {
            if let Some(d) = idempotent_defect(m, self.label(k)) {
                return Validation::Invalid(d);
            }
        }
        for (k, a) in members.iter().enumerate() {
            for (l, b) in members.iter().enumerate() {
                if k == l {
                    continue;
                }
                let product = a.mul(b).expect("same field");
                if !product.is_zero() {
                    return Validation::Invalid(FamilyDefect::NotOrthogonal {
                        left: self.label(k),
                        right: self.label(l),
                        product,
                    });
                }
            }
        }
        Validation::Valid
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        match self.validate(DEFAULT_PROBE) {
            Validation::Valid => Ok(()),
            Validation::Invalid(d) => Err(Error::InvalidFamily(format!("{d:?}"))),
        }
    }
}

fn idempotent_defect(m: &Operator, label: String) -> Option<FamilyDefect> {
    let square = m.mul(m).expect("same field");
    (square != *m).then_some(FamilyDefect::NotIdempotent { member: label, square })
}

fn fmt_list(v: &[usize]) -> String {
    format!("[{}]", v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b < 0 {
            write!(f, "{}*i-{}", self.a, -self.b)
        } else {
            write!(f, "{}*i+{}", self.a, self.b)
        }
    }
}

/// Same syntax as the family parser in `text`.
impl fmt::Display for IdempotentFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "field {}\n", self.field())?;
        match self {
            IdempotentFamily::Partition { coloring, .. } => {
                write!(f, "partition pre={} per={}", fmt_list(&coloring.pre), fmt_list(&coloring.per))
            }
            IdempotentFamily::Explicit { members, .. } => {
                let ops: Vec<String> = members
                    .iter()
                    .map(|m| format!("{{{}}}", m.to_string().trim().lines().collect::<Vec<_>>().join("; ")))
                    .collect();
                write!(f, "explicit [{}]", ops.join(", "))
            }
            IdempotentFamily::Pattern { pattern, .. } => {
                let terms: Vec<String> = pattern.terms.iter().map(|t| format!("(r={}, c={})", t.row, t.col)).collect();
                write!(f, "pattern i0={} terms[{}]", pattern.i0, terms.join(", "))
            }
        }
    }
}
