use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::fields::{poly_splits_simply, EPSeq, FieldSpec, Polynomial, Scalar};
use crate::linalg::{diagonalize_finite, eigenspace, Diagonalization, Matrix};

use super::operator::{FiniteVector, Operator};
use super::torsion::{certified_torsion_space, find_witness, restrict, torsion_part_on_window, WindowTorsion};

/// Outcome of the `T^p = T` test over a prime field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiniteFieldDiag {
    Diagonalizable,
    /// `T^p v_j != T v_j` for this column `j`.
    Not { column: usize },
}

/// Largest `p * bandwidth` for which `T^p` is formed.
const POWER_BAND_LIMIT: u64 = 1 << 14;

pub fn finite_field_diag_check(t: &Operator) -> Result<FiniteFieldDiag> {
    let FieldSpec::Prime(p) = t.field() else {
        return Err(Error::WrongField);
    };
    if (t.bandwidth() as u64).saturating_mul(p) > POWER_BAND_LIMIT {
        return Err(Error::CapacityExceeded(format!(
            "T^{p} of an operator with bandwidth {}",
            t.bandwidth()
        )));
    }
    let diff = t.pow(p).sub(t)?;
    if diff.is_zero() {
        return Ok(FiniteFieldDiag::Diagonalizable);
    }
    let column = (0..)
        .find(|&j| !diff.column(j).is_zero())
        .expect("a nonzero operator has a nonzero column");
    Ok(FiniteFieldDiag::Not { column })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureWitness {
    pub vector: FiniteVector,
    /// Annihilator of `vector` when it is torsion.
    pub annihilator: Option<Polynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureVerdict {
    /// `semi_decided` is set when only the supplied windows were examined.
    InClosure { semi_decided: bool },
    NotInClosure(ClosureWitness),
    Unknown { reason: String },
}

/// Whether `T` lies in the closure of the diagonalizable operators, i.e.
/// whether `T` is diagonalizable on its torsion part `H(T)`.
pub fn closure_membership(t: &Operator, windows: &[Vec<FiniteVector>], depth: usize) -> Result<ClosureVerdict> {
    if t.field().is_finite() {
        return Ok(match finite_field_diag_check(t)? {
            FiniteFieldDiag::Diagonalizable => ClosureVerdict::InClosure { semi_decided: false },
            FiniteFieldDiag::Not { column } => ClosureVerdict::NotInClosure(ClosureWitness {
                vector: FiniteVector::basis(t.field(), column),
                annihilator: None,
            }),
        });
    }
    let exact_torsion = if t.is_eventually_diagonal() {
        let m = core_size(t);
        Some((0..m).map(|i| FiniteVector::basis(t.field(), i)).collect::<Vec<_>>())
    } else {
        certified_torsion_space(t)
    };
    if let Some(basis) = exact_torsion {
        // beyond the core, an eventually diagonal T already acts diagonally
        let restriction = restrict(t, &basis)?;
        return Ok(match obstruction(&restriction, &basis)? {
            Some(w) => ClosureVerdict::NotInClosure(w),
            None => ClosureVerdict::InClosure { semi_decided: false },
        });
    }
    if windows.is_empty() {
        return Ok(ClosureVerdict::Unknown {
            reason: "no windows supplied and H(T) is not certified".into(),
        });
    }
    let mut unknown = None;
    for (k, w) in windows.iter().enumerate() {
        match torsion_part_on_window(t, w, depth)? {
            WindowTorsion::Basis { basis, restriction, .. } => {
                if let Some(witness) = obstruction(&restriction, &basis)? {
                    return Ok(ClosureVerdict::NotInClosure(witness));
                }
            }
            WindowTorsion::Unknown { generator } => {
                unknown.get_or_insert(format!("window {k}, generator {generator}: torsion undecided at depth {depth}"));
            }
        }
    }
    Ok(match unknown {
        Some(reason) => ClosureVerdict::Unknown { reason },
        None => ClosureVerdict::InClosure { semi_decided: true },
    })
}

fn obstruction(restriction: &Matrix, basis: &[FiniteVector]) -> Result<Option<ClosureWitness>> {
    if diagonalize_finite(restriction)?.is_diagonalizable() {
        return Ok(None);
    }
    let found = find_witness(restriction, basis, |ann| Ok(!poly_splits_simply(ann)?.is_yes()))?;
    let (vector, ann) = found.expect("a non-diagonalizable restriction has a bad basis vector");
    Ok(Some(ClosureWitness {
        vector,
        annihilator: Some(ann),
    }))
}

/// Size `m` of the leading block of an eventually diagonal operator:
/// `span(v_0..v_{m-1})` and its complement are both invariant.
fn core_size(t: &Operator) -> usize {
    t.max_correction_index().map_or(0, |c| c + 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EventualDiagonalization {
    /// `core_p` diagonalizes the leading `core_p.rows()` block; beyond it
    /// `T v_j = tail(j - m) v_j`.
    Diagonalizable { core_p: Matrix, core_eigenvalues: Vec<Scalar>, tail: EPSeq },
    Not { mu_core: Polynomial },
}

pub fn eventually_diagonal_diagonalize(t: &Operator) -> Result<EventualDiagonalization> {
    if !t.is_eventually_diagonal() {
        return Err(Error::NotEventuallyDiagonal);
    }
    let m = core_size(t);
    Ok(match diagonalize_finite(&t.truncate(m))? {
        Diagonalization::Diagonalizable { p, eigenvalues, .. } => EventualDiagonalization::Diagonalizable {
            core_p: p,
            core_eigenvalues: eigenvalues,
            tail: t.band_sequence(0).shift(m as i64),
        },
        Diagonalization::Not { mu } => EventualDiagonalization::Not { mu_core: mu },
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenvalue {
    pub value: Scalar,
    /// Eigenvectors inside the leading block (a basis of that eigenspace).
    pub core_vectors: Vec<FiniteVector>,
    /// First tail index `j` with `T v_j = value v_j`, when there is one; the
    /// eigenspace is then infinite-dimensional.
    pub tail_index: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<Eigenvalue>,
    /// Distinct values of the diagonal on the tail.
    pub tail_values: Vec<Scalar>,
}

/// Eigenvalues in the field of an eventually diagonal operator, each with
/// verified eigenvectors.
pub fn spectrum(t: &Operator) -> Result<SpectrumReport> {
    if !t.is_eventually_diagonal() {
        return Err(Error::NotEventuallyDiagonal);
    }
    let field = t.field();
    let m = core_size(t);
    let block = t.truncate(m);
    let tail = t.band_sequence(0).shift(m as i64);
    let tail_len = tail.preperiod().len() + tail.period().len();
    let mut tail_values: Vec<Scalar> = Vec::new();
    for j in 0..tail_len {
        let v = tail.at(j);
        if !tail_values.contains(&v) {
            tail_values.push(v);
        }
    }
    let mut values: BTreeSet<Scalar> = crate::linalg::eigenvalues(&block)?.into_iter().collect();
    values.extend(tail_values.iter().cloned());
    let mut eigenvalues = Vec::new();
    for value in values {
        let core_vectors: Vec<FiniteVector> = if m == 0 {
            Vec::new()
        } else {
            eigenspace(&block, &value)
                .basis_vectors()
                .iter()
                .map(|v| FiniteVector::from_dense(field, v))
                .collect()
        };
        let tail_index = (0..tail_len).find(|&j| tail.at(j) == value).map(|j| j + m);
        for v in core_vectors.iter().chain(tail_index.map(|j| FiniteVector::basis(field, j)).iter()) {
            assert_eq!(t.apply(v)?, v.scale(&value), "eigenvector verified");
        }
        eigenvalues.push(Eigenvalue {
            value,
            core_vectors,
            tail_index,
        });
    }
    Ok(SpectrumReport { eigenvalues, tail_values })
}

/// True iff `(T - l_1) ... (T - l_n)` kills every vector of `w`.
pub fn prop_operator_check(t: &Operator, w: &[FiniteVector], lambdas: &[Scalar]) -> Result<bool> {
    for (i, l) in lambdas.iter().enumerate() {
        t.field().check(l)?;
        if lambdas[..i].contains(l) {
            return Err(Error::DuplicateLambda(l.to_string()));
        }
    }
    for v in w {
        let mut x = v.clone();
        for l in lambdas {
            x = t.apply(&x)?.sub(&x.scale(l));
        }
        if !x.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Companion matrix of `x (x - 1) ... (x - n)`: `v_i -> v_{i+1}` for `i < n`,
/// diagonalizable with the `n + 1` distinct eigenvalues `0, ..., n`.
pub fn diagonalizable_completion(n: usize, field: FieldSpec) -> Result<Matrix> {
    if let Some(p) = field.order() {
        if n as u64 >= p {
            return Err(Error::FieldTooSmall {
                needed: n as u64 + 1,
                available: p,
            });
        }
    }
    let roots: Vec<Scalar> = (0..=n as i64).map(|i| field.int(i)).collect();
    let poly = Polynomial::from_roots(field, &roots);
    let size = n + 1;
    let mut m = Matrix::zero(field, size, size);
    for i in 0..n {
        m.set(i + 1, i, field.one());
    }
    for i in 0..size {
        m.set(i, n, -&poly.coeff(i));
    }
    Ok(m)
}
