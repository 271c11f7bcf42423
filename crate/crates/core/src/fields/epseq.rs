use std::fmt;

use num_integer::Integer;

use super::scalar::{FieldSpec, Scalar};
use crate::error::{Error, Result};

/// Reduces an eventually periodic description `pre ++ per ++ per ++ ...` to
/// its unique minimal form: shortest period, then shortest preperiod.
pub fn normalize_parts<T: PartialEq + Clone>(mut pre: Vec<T>, mut per: Vec<T>) -> (Vec<T>, Vec<T>) {
    assert!(!per.is_empty(), "period must be nonempty");
    let n = per.len();
    if let Some(d) = (1..=n)
        .filter(|d| n % d == 0)
        .find(|&d| (0..n).all(|i| per[i] == per[(i + d) % n]))
    {
        per.truncate(d);
    }
    while let Some(last) = pre.last() {
        if *last != *per.last().unwrap() {
            break;
        }
        pre.pop();
        per.rotate_right(1);
    }
    (pre, per)
}

/// Value at index `n` of an eventually periodic description.
pub fn value_at<'a, T>(pre: &'a [T], per: &'a [T], n: usize) -> &'a T {
    if n < pre.len() {
        &pre[n]
    } else {
        &per[(n - pre.len()) % per.len()]
    }
}

/// An eventually periodic scalar sequence in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EPSeq {
    field: FieldSpec,
    preperiod: Vec<Scalar>,
    period: Vec<Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeqOp {
    Add,
    Mul,
}

impl EPSeq {
    pub fn new(field: FieldSpec, preperiod: Vec<Scalar>, period: Vec<Scalar>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::parse(0, 0, "period must be nonempty"));
        }
        for s in preperiod.iter().chain(&period) {
            field.check(s)?;
        }
        let (preperiod, period) = normalize_parts(preperiod, period);
        Ok(EPSeq {
            field,
            preperiod,
            period,
        })
    }

    pub fn from_ints(field: FieldSpec, pre: &[i64], per: &[i64]) -> Self {
        let c = |v: &[i64]| v.iter().map(|&x| field.int(x)).collect();
        Self::new(field, c(pre), c(per)).expect("nonempty period")
    }

    pub fn constant(c: Scalar) -> Self {
        EPSeq {
            field: c.field(),
            preperiod: Vec::new(),
            period: vec![c],
        }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Self::constant(field.zero())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn preperiod(&self) -> &[Scalar] {
        &self.preperiod
    }

    pub fn period(&self) -> &[Scalar] {
        &self.period
    }

    pub fn at(&self, n: usize) -> Scalar {
        value_at(&self.preperiod, &self.period, n).clone()
    }

    /// Value of the two-sided periodic extension of the periodic part.
    /// Only meaningful for purely periodic sequences or indices past the
    /// preperiod.
    pub fn periodic_at(&self, n: i64) -> Scalar {
        let l = self.period.len() as i64;
        let idx = (n - self.preperiod.len() as i64).rem_euclid(l);
        self.period[idx as usize].clone()
    }

    pub fn is_zero(&self) -> bool {
        self.preperiod.is_empty() && self.period.len() == 1 && self.period[0].is_zero()
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.preperiod.is_empty()
    }

    /// True when no entry of the periodic part vanishes.
    pub fn eventually_nowhere_zero(&self) -> bool {
        self.period.iter().all(|s| !s.is_zero())
    }

    /// The purely periodic sequence that agrees with `self` from the end of
    /// the preperiod on.
    pub fn periodic_part(&self) -> EPSeq {
        let l = self.period.len();
        let shift = (l - self.preperiod.len() % l) % l;
        let mut per = self.period.clone();
        per.rotate_left(shift);
        EPSeq {
            field: self.field,
            preperiod: Vec::new(),
            period: per,
        }
    }

    /// Builds a normalized sequence from the map `n -> f(n)` known to be
    /// periodic with period `len` from index `start` on.
    pub(crate) fn tabulate(
        field: FieldSpec,
        start: usize,
        len: usize,
        f: impl Fn(usize) -> Scalar,
    ) -> EPSeq {
        let pre = (0..start).map(&f).collect();
        let per = (start..start + len).map(&f).collect();
        let (preperiod, period) = normalize_parts(pre, per);
        EPSeq {
            field,
            preperiod,
            period,
        }
    }

    pub fn combine(&self, other: &EPSeq, op: SeqOp) -> Result<EPSeq> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let start = self.preperiod.len().max(other.preperiod.len());
        let len = self.period.len().lcm(&other.period.len());
        Ok(Self::tabulate(self.field, start, len, |n| match op {
            SeqOp::Add => &self.at(n) + &other.at(n),
            SeqOp::Mul => &self.at(n) * &other.at(n),
        }))
    }

    pub fn scale(&self, c: &Scalar) -> EPSeq {
        Self::tabulate(self.field, self.preperiod.len(), self.period.len(), |n| {
            &self.at(n) * c
        })
    }

    /// The same sequence with its first `k` values replaced by zero.
    pub fn clip_prefix(&self, k: usize) -> EPSeq {
        let zero = self.field.zero();
        Self::tabulate(self.field, self.preperiod.len().max(k), self.period.len(), |n| {
            if n < k {
                zero.clone()
            } else {
                self.at(n)
            }
        })
    }

    /// `d >= 0`: `n -> a(n + d)`. `d < 0`: `|d|` zeros prepended.
    pub fn shift(&self, d: i64) -> EPSeq {
        if d >= 0 {
            let d = d as usize;
            let start = self.preperiod.len().saturating_sub(d);
            Self::tabulate(self.field, start, self.period.len(), |n| self.at(n + d))
        } else {
            let k = d.unsigned_abs() as usize;
            let zero = self.field.zero();
            Self::tabulate(self.field, self.preperiod.len() + k, self.period.len(), |n| {
                if n < k {
                    zero.clone()
                } else {
                    self.at(n - k)
                }
            })
        }
    }
}

pub fn epseq_op(a: &EPSeq, b: &EPSeq, op: SeqOp) -> Result<EPSeq> {
    a.combine(b, op)
}

pub fn epseq_shift(a: &EPSeq, d: i64) -> EPSeq {
    a.shift(d)
}

/// `pre=[...];per=[...]`
impl fmt::Display for EPSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[Scalar]| v.iter().map(Scalar::short).collect::<Vec<_>>().join(",");
        write!(f, "pre=[{}];per=[{}]", list(&self.preperiod), list(&self.period))
    }
}
