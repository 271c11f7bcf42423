use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fields::{EPSeq, Scalar};
use crate::linalg::{eigenvalues, Matrix, Subspace};
use crate::operators::{FiniteVector, Operator};

use super::family::{Coloring, IdempotentFamily, Support, DEFAULT_PROBE};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Summability {
    /// The projection onto the sum of ranges along the intersection of kernels.
    Summable(Operator),
    /// Basis vector `v_index` is moved by infinitely many members.
    NotSummable { index: usize },
}

pub fn summability(f: &IdempotentFamily) -> Result<Summability> {
    f.require_valid()?;
    let field = f.field();
    match f {
        IdempotentFamily::Partition { .. } | IdempotentFamily::Explicit { .. } => {
            let mut sum = Operator::zero(field);
            for m in f.members(0) {
                sum = sum.add(&m)?;
            }
            Ok(Summability::Summable(sum))
        }
        IdempotentFamily::Pattern { pattern, .. } => {
            if let Some(t) = pattern.terms().iter().find(|t| t.col.a == 0) {
                let index = t.col.b as usize;
                debug_assert_eq!(f.support_indices(index), Support::Infinite);
                return Ok(Summability::NotSummable { index });
            }
            // each term sweeps the band `r - c` along the columns `a i + b`
            let mut sum = Operator::zero(field);
            for t in pattern.terms() {
                if t.row.a != t.col.a {
                    return Err(Error::OutsideRepresentation(format!(
                        "entries E_({}, {}) do not lie on finitely many diagonals",
                        t.row, t.col
                    )));
                }
                let a = t.col.a as usize;
                let start = t.col.at(pattern.i0()) as usize;
                let mut per = vec![field.zero(); a];
                per[0] = field.one();
                let seq = EPSeq::new(field, vec![field.zero(); start], per)?;
                sum = sum.add(&Operator::new(field, [(t.row.b - t.col.b, seq)], [])?)?;
            }
            Ok(Summability::Summable(sum))
        }
    }
}

pub fn sums_to_one(f: &IdempotentFamily) -> Result<bool> {
    Ok(match summability(f)? {
        Summability::Summable(sum) => sum == Operator::identity(f.field()),
        Summability::NotSummable { .. } => false,
    })
}

fn summed(f: &IdempotentFamily) -> Result<Operator> {
    match summability(f)? {
        Summability::Summable(sum) => Ok(sum),
        Summability::NotSummable { index } => Err(Error::NotSummable(index)),
    }
}

/// Whether every probed member, and the sum, lie below `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderCheck {
    pub members_below: bool,
    pub sum_below: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LubReport {
    /// `x <=_l f` iff `x f = x`.
    pub left: OrderCheck,
    /// `x <=_r f` iff `f x = x`.
    pub right: OrderCheck,
    pub both: OrderCheck,
    pub members_checked: usize,
}

/// Compares the family and its sum with the idempotent `f` in the three
/// orderings. For finite families the least-upper-bound property (all
/// members below `f` forces the sum below `f`) is asserted.
pub fn lub_check(family: &IdempotentFamily, f: &Operator) -> Result<LubReport> {
    let e = summed(family)?;
    if !f.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    let members = family.members(DEFAULT_PROBE);
    let left = |x: &Operator| x.mul(f).map(|p| p == *x);
    let right = |x: &Operator| f.mul(x).map(|p| p == *x);
    let mut report = LubReport {
        left: OrderCheck { members_below: true, sum_below: left(&e)? },
        right: OrderCheck { members_below: true, sum_below: right(&e)? },
        both: OrderCheck { members_below: true, sum_below: false },
        members_checked: members.len(),
    };
    report.both.sum_below = report.left.sum_below && report.right.sum_below;
    for m in &members {
        let (l, r) = (left(m)?, right(m)?);
        report.left.members_below &= l;
        report.right.members_below &= r;
        report.both.members_below &= l && r;
    }
    if family.len().is_some() {
        for c in [report.left, report.right, report.both] {
            assert!(!c.members_below || c.sum_below, "upper bound of the members bounds their sum");
        }
    }
    // the sum is an upper bound of every member
    for m in &members {
        assert_eq!(&m.mul(&e)?, m);
        assert_eq!(&e.mul(m)?, m);
    }
    Ok(report)
}

fn is_identity_singleton(f: &IdempotentFamily) -> bool {
    f.len() == Some(1) && f.member(0) == Operator::identity(f.field())
}

fn check_commuting(e: &IdempotentFamily, f: &IdempotentFamily) -> Result<()> {
    if matches!(
        (e, f),
        (IdempotentFamily::Partition { .. }, IdempotentFamily::Partition { .. })
    ) {
        return Ok(());
    }
    let (a, b) = (e.members(0), f.members(0));
    let mut all: Vec<(String, &Operator)> = a.iter().enumerate().map(|(k, m)| (format!("E:{}", e.label(k)), m)).collect();
    all.extend(b.iter().enumerate().map(|(k, m)| (format!("F:{}", f.label(k)), m)));
    for (k, (lx, x)) in all.iter().enumerate() {
        for (ly, y) in &all[k + 1..] {
            if !x.commutes(y)? {
                return Err(Error::NonCommuting(lx.clone(), ly.clone()));
            }
        }
    }
    Ok(())
}

/// `{E_i F_j}` with zero members dropped; `sum E_i F_j = (sum E_i)(sum F_j)`
/// is asserted.
pub fn product_family(e: &IdempotentFamily, f: &IdempotentFamily) -> Result<IdempotentFamily> {
    if e.field() != f.field() {
        return Err(Error::FieldMismatch);
    }
    let (se, sf) = (summed(e)?, summed(f)?);
    if is_identity_singleton(f) {
        return Ok(e.clone());
    }
    if is_identity_singleton(e) {
        return Ok(f.clone());
    }
    let field = e.field();
    let product = match (e, f) {
        (IdempotentFamily::Pattern { .. }, _) | (_, IdempotentFamily::Pattern { .. }) => {
            return Err(Error::UnsupportedFamily("products with pattern families".into()));
        }
        (IdempotentFamily::Partition { coloring: a, .. }, IdempotentFamily::Partition { coloring: b, .. }) => {
            let pre_len = a.pre().len().max(b.pre().len());
            let per_len = num_integer::lcm(a.per().len(), b.per().len());
            let mut pairs = BTreeMap::new();
            let mut label = |j: usize| {
                let next = pairs.len() + 1;
                *pairs.entry((a.color_at(j), b.color_at(j))).or_insert(next)
            };
            let pre: Vec<usize> = (0..pre_len).map(&mut label).collect();
            let per: Vec<usize> = (pre_len..pre_len + per_len).map(&mut label).collect();
            IdempotentFamily::Partition {
                field,
                coloring: Coloring::new(pre, per, &BTreeMap::new())?,
            }
        }
        _ => {
            check_commuting(e, f)?;
            let mut members = Vec::new();
            for x in e.members(0) {
                for y in f.members(0) {
                    let p = x.mul(&y)?;
                    if !p.is_zero() {
                        members.push(p);
                    }
                }
            }
            IdempotentFamily::explicit(field, members)?
        }
    };
    assert_eq!(summed(&product)?, se.mul(&sf)?, "sum of products is the product of sums");
    Ok(product)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimultaneousOutcome {
    Diagonalized { refined: IdempotentFamily },
    Fail { reason: String },
}

/// Common refinement of two commuting families that each sum to 1.
pub fn simultaneous_diagonalize_families(e: &IdempotentFamily, f: &IdempotentFamily) -> Result<SimultaneousOutcome> {
    let fail = |reason: String| Ok(SimultaneousOutcome::Fail { reason });
    for (name, x) in [("E", e), ("F", f)] {
        if let Err(err) = x.require_valid() {
            return fail(format!("{name}: {err}"));
        }
        match summability(x)? {
            Summability::NotSummable { index } => return fail(format!("{name} is not summable at v_{index}")),
            Summability::Summable(s) if s != Operator::identity(x.field()) => {
                return fail(format!("{name} does not sum to 1"))
            }
            _ => {}
        }
    }
    let refined = match product_family(e, f) {
        Ok(r) => r,
        Err(err @ (Error::NonCommuting(..) | Error::UnsupportedFamily(_) | Error::FieldMismatch)) => {
            return fail(err.to_string())
        }
        Err(other) => return Err(other),
    };
    if !sums_to_one(&refined)? {
        return fail("refined family does not sum to 1".into());
    }
    let (a, b) = (e.members(0), f.members(0));
    let marginal = |x: &Operator, others: &[Operator], left: bool| -> Result<bool> {
        let mut s = Operator::zero(x.field());
        for y in others {
            s = s.add(&if left { x.mul(y)? } else { y.mul(x)? })?;
        }
        Ok(s == *x)
    };
    for (k, x) in a.iter().enumerate() {
        if !marginal(x, &b, true)? {
            return fail(format!("row marginal fails at {}", e.label(k)));
        }
    }
    for (k, y) in b.iter().enumerate() {
        if !marginal(y, &a, false)? {
            return fail(format!("column marginal fails at {}", f.label(k)));
        }
    }
    Ok(SimultaneousOutcome::Diagonalized { refined })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommonEigenvector {
    /// `ops[k] v = eigenvalues[k] v`, verified on the operators themselves.
    Found { vector: FiniteVector, eigenvalues: Vec<Scalar> },
    NoneWithin(usize),
}

/// Searches `span(v_0, ..., v_{n-1})`, `n = truncation`, for a common
/// eigenvector. A window vector `v` is an eigenvector of `T` exactly when the
/// part of `T v` beyond the window vanishes and the window block scales it,
/// so the refinement is exact within the window.
pub fn common_eigenvector_search(ops: &[Operator], truncation: usize) -> Result<CommonEigenvector> {
    let n = truncation.max(1);
    let Some(field) = ops.first().map(Operator::field) else {
        return Ok(CommonEigenvector::NoneWithin(n));
    };
    if ops.iter().any(|t| t.field() != field) {
        return Err(Error::FieldMismatch);
    }
    let mut constraints = Vec::with_capacity(ops.len());
    for t in ops {
        let reach = t.max_correction_index().map_or(0, |c| c + 1);
        let wide = t.truncate((n + t.bandwidth()).max(reach));
        let block = wide.submatrix(0..n, 0..n);
        let overflow = wide.submatrix(n..wide.rows(), 0..n);
        let escape = Subspace::from_vectors(field, n, &overflow.kernel()).expect("kernel vectors");
        let escape = if overflow.rows() == 0 { Subspace::full(field, n) } else { escape };
        constraints.push((block, escape));
    }
    let start = Subspace::full(field, n);
    let mut chosen = Vec::new();
    if let Some(space) = refine(&constraints, start, &mut chosen)? {
        let v = FiniteVector::from_dense(field, &space.basis_vectors()[0]);
        for (t, l) in ops.iter().zip(&chosen) {
            assert_eq!(t.apply(&v)?, v.scale(l), "common eigenvector verified");
        }
        return Ok(CommonEigenvector::Found {
            vector: v,
            eigenvalues: chosen,
        });
    }
    Ok(CommonEigenvector::NoneWithin(n))
}

fn refine(constraints: &[(Matrix, Subspace)], space: Subspace, chosen: &mut Vec<Scalar>) -> Result<Option<Subspace>> {
    let Some(((block, escape), rest)) = constraints.split_first() else {
        return Ok(Some(space));
    };
    let space = space.intersection(escape);
    if space.is_zero() {
        return Ok(None);
    }
    for lambda in eigenvalues(block)? {
        let eig = crate::linalg::eigenspace(block, &lambda).intersection(&space);
        if eig.is_zero() {
            continue;
        }
        chosen.push(lambda);
        if let Some(found) = refine(rest, eig, chosen)? {
            return Ok(Some(found));
        }
        chosen.pop();
    }
    Ok(None)
}
