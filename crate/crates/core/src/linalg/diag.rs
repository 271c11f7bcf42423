use super::matrix::Matrix;
use super::subspace::{SparseEchelon, SparseVec, Subspace};
use crate::error::{Error, Result};
use crate::fields::{poly_splits_simply, roots_in_field, FieldSpec, Polynomial, Scalar};

fn to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, s)| !s.is_zero())
        .map(|(i, s)| (i, s.clone()))
        .collect()
}

/// Monic polynomial of least degree killing `v` under `t`.
pub fn vector_annihilator(t: &Matrix, v: &[Scalar]) -> Result<Polynomial> {
    let n = t.require_square()?;
    if v.len() != n {
        return Err(Error::SizeMismatch(format!("vector length {} for {n}x{n}", v.len())));
    }
    let field = t.field();
    let mut ech = SparseEchelon::new(field);
    let mut cur = v.to_vec();
    loop {
        if let Some(dep) = ech.insert(&to_sparse(&cur)) {
            // t^k v = sum dep_i t^i v
            let mut coeffs: Vec<Scalar> = dep.iter().map(|c| -c).collect();
            coeffs.push(field.one());
            return Polynomial::new(field, coeffs);
        }
        cur = t.apply(&cur);
    }
}

/// Least common multiple of the Krylov annihilators of the standard basis.
pub fn minimal_polynomial(t: &Matrix) -> Result<Polynomial> {
    let n = t.require_square()?;
    let field = t.field();
    let mut mu = Polynomial::one(field);
    for i in 0..n {
        let e: Vec<Scalar> = (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect();
        mu = mu.lcm(&vector_annihilator(t, &e)?);
    }
    Ok(mu)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagonalization {
    /// `P^-1 T P = D`; `eigenvalues` are the distinct diagonal values in
    /// canonical order, and the columns of `P` are grouped accordingly.
    Diagonalizable {
        p: Matrix,
        d: Matrix,
        eigenvalues: Vec<Scalar>,
    },
    Not { mu: Polynomial },
}

impl Diagonalization {
    pub fn is_diagonalizable(&self) -> bool {
        matches!(self, Diagonalization::Diagonalizable { .. })
    }
}

/// Eigenspace `ker(T - lambda)` as a subspace.
pub fn eigenspace(t: &Matrix, lambda: &Scalar) -> Subspace {
    let n = t.rows();
    let shifted = t - &Matrix::identity(t.field(), n).scale(lambda);
    Subspace::from_vectors(t.field(), n, &shifted.kernel()).expect("kernel vectors")
}

pub fn diagonalize_finite(t: &Matrix) -> Result<Diagonalization> {
    let n = t.require_square()?;
    let field = t.field();
    let mu = minimal_polynomial(t)?;
    let Some(roots) = poly_splits_simply(&mu)?.roots().map(<[Scalar]>::to_vec) else {
        return Ok(Diagonalization::Not { mu });
    };
    let mut cols = Vec::with_capacity(n);
    let mut diag = Vec::with_capacity(n);
    for lambda in &roots {
        for v in eigenspace(t, lambda).basis_vectors() {
            cols.push(v);
            diag.push(lambda.clone());
        }
    }
    assert_eq!(cols.len(), n, "split squarefree minimal polynomial gives a full eigenbasis");
    let p = Matrix::from_columns(field, n, &cols);
    let d = Matrix::diagonal(field, &diag);
    let p_inv = p.inverse().expect("eigenbasis is a basis");
    assert_eq!(&(&p_inv * t) * &p, d, "P^-1 T P = D");
    Ok(Diagonalization::Diagonalizable {
        p,
        d,
        eigenvalues: roots,
    })
}

fn flatten(m: &Matrix) -> Vec<Scalar> {
    m.entries().to_vec()
}

/// Inverse of the row-major flattening used by `commutant`.
pub fn unflatten(field: FieldSpec, n: usize, v: &[Scalar]) -> Matrix {
    Matrix::from_fn(field, n, n, |i, j| v[i * n + j].clone())
}

/// Span of the given `n x n` matrices inside the `n^2`-dimensional matrix space.
pub fn matrix_span(field: FieldSpec, n: usize, mats: &[Matrix]) -> Subspace {
    let vecs: Vec<Vec<Scalar>> = mats.iter().map(flatten).collect();
    Subspace::from_vectors(field, n * n, &vecs).expect("flattened matrices")
}

/// `{ X : X T_i = T_i X for all i }`, as a subspace of row-major flattened
/// `n x n` matrices.
pub fn commutant(gens: &[Matrix]) -> Result<Subspace> {
    let first = gens
        .first()
        .ok_or_else(|| Error::SizeMismatch("commutant of an empty list".into()))?;
    let n = first.require_square()?;
    let field = first.field();
    for g in gens {
        if g.field() != field {
            return Err(Error::FieldMismatch);
        }
        if g.rows() != n || g.cols() != n {
            return Err(Error::SizeMismatch(format!("generator is {}x{}, expected {n}x{n}", g.rows(), g.cols())));
        }
    }
    let nn = n * n;
    let mut eqs = Matrix::zero(field, gens.len() * nn, nn);
    for (g, t) in gens.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let row = g * nn + i * n + j;
                // (XT)_ij = sum_b X_ib T_bj
                for b in 0..n {
                    let c = eqs.get(row, i * n + b) + t.get(b, j);
                    eqs.set(row, i * n + b, c);
                }
                // (TX)_ij = sum_a T_ia X_aj
                for a in 0..n {
                    let c = eqs.get(row, a * n + j) - t.get(i, a);
                    eqs.set(row, a * n + j, c);
                }
            }
        }
    }
    Subspace::from_vectors(field, nn, &eqs.kernel())
}

/// One joint eigenspace of a commuting family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointBlock {
    pub eigenvalues: Vec<Scalar>,
    pub space: Subspace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimultaneousDiagonalization {
    Joint { p: Matrix, blocks: Vec<JointBlock> },
    Fail(SimultaneousFailure),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimultaneousFailure {
    NonCommuting(usize, usize),
    NotDiagonalizable { index: usize, mu: Polynomial },
}

pub fn simultaneous_diagonalize_finite(ts: &[Matrix]) -> Result<SimultaneousDiagonalization> {
    let Some(first) = ts.first() else {
        return Err(Error::SizeMismatch("empty family".into()));
    };
    let n = first.require_square()?;
    let field = first.field();
    for t in ts {
        if t.field() != field {
            return Err(Error::FieldMismatch);
        }
        if t.rows() != n || t.cols() != n {
            return Err(Error::SizeMismatch("family members differ in size".into()));
        }
    }
    for i in 0..ts.len() {
        for j in i + 1..ts.len() {
            if &ts[i] * &ts[j] != &ts[j] * &ts[i] {
                return Ok(SimultaneousDiagonalization::Fail(SimultaneousFailure::NonCommuting(i, j)));
            }
        }
    }
    let mut spectra = Vec::with_capacity(ts.len());
    for (index, t) in ts.iter().enumerate() {
        match diagonalize_finite(t)? {
            Diagonalization::Diagonalizable { eigenvalues, .. } => spectra.push(eigenvalues),
            Diagonalization::Not { mu } => {
                return Ok(SimultaneousDiagonalization::Fail(
                    SimultaneousFailure::NotDiagonalizable { index, mu },
                ))
            }
        }
    }
    // iterated common-eigenspace refinement
    let mut blocks = vec![JointBlock {
        eigenvalues: Vec::new(),
        space: Subspace::full(field, n),
    }];
    for (t, spectrum) in ts.iter().zip(&spectra) {
        let mut next = Vec::new();
        for b in &blocks {
            for lambda in spectrum {
                let s = b.space.intersection(&eigenspace(t, lambda));
                if !s.is_zero() {
                    let mut eigenvalues = b.eigenvalues.clone();
                    eigenvalues.push(lambda.clone());
                    next.push(JointBlock { eigenvalues, space: s });
                }
            }
        }
        blocks = next;
    }
    if n == 0 {
        blocks.clear();
    }
    let cols: Vec<Vec<Scalar>> = blocks.iter().flat_map(|b| b.space.basis_vectors()).collect();
    let p = Matrix::from_columns(field, n, &cols);
    Ok(SimultaneousDiagonalization::Joint { p, blocks })
}

/// Projections onto each joint eigenspace along the sum of the others.
pub fn joint_eigenprojections(p: &Matrix, blocks: &[JointBlock]) -> Vec<Matrix> {
    let field = p.field();
    let n = p.rows();
    let p_inv = p.inverse().expect("joint eigenbasis");
    let mut offset = 0;
    blocks
        .iter()
        .map(|b| {
            let k = b.space.dim();
            let ind: Vec<Scalar> = (0..n)
                .map(|i| if i >= offset && i < offset + k { field.one() } else { field.zero() })
                .collect();
            offset += k;
            &(p * &Matrix::diagonal(field, &ind)) * &p_inv
        })
        .collect()
}

/// True iff `T w = 0` for every basis vector of `w`.
pub fn restriction_vanishes(t: &Matrix, w: &Subspace) -> Result<bool> {
    if t.cols() != w.ambient() {
        return Err(Error::SizeMismatch(format!(
            "operator has {} columns, subspace ambient {}",
            t.cols(),
            w.ambient()
        )));
    }
    Ok(w.basis_vectors().iter().all(|v| t.apply(v).iter().all(Scalar::is_zero)))
}

/// Distinct eigenvalues of `t` lying in the field.
pub fn eigenvalues(t: &Matrix) -> Result<Vec<Scalar>> {
    roots_in_field(&minimal_polynomial(t)?)
}
