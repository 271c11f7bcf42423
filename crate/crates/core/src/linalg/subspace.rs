use std::collections::BTreeMap;

use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};

/// Subspace of `K^n` stored by its RREF basis; structural equality is
/// equality of subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_vectors(field: FieldSpec, ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != ambient) {
            return Err(Error::SizeMismatch(format!("vectors must have length {ambient}")));
        }
        let m = if vectors.is_empty() {
            Matrix::zero(field, 0, ambient)
        } else {
            Matrix::from_rows(field, vectors.to_vec())?
        };
        Ok(Self::from_rows_matrix(&m))
    }

    pub(crate) fn from_rows_matrix(m: &Matrix) -> Self {
        let (r, pivots) = m.rref();
        let basis = r.submatrix(0..pivots.len(), 0..m.cols());
        Subspace {
            field: m.field(),
            ambient: m.cols(),
            basis,
            pivots,
        }
    }

    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Self::from_rows_matrix(&Matrix::zero(field, 0, ambient))
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Self::from_rows_matrix(&Matrix::identity(field, ambient))
    }

    /// `span(e_0, ..., e_{k-1})`.
    pub fn coordinate(field: FieldSpec, ambient: usize, k: usize) -> Self {
        let rows = Matrix::from_fn(field, k, ambient, |i, j| if i == j { field.one() } else { field.zero() });
        Self::from_rows_matrix(&rows)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// RREF basis rows.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = vec![self.field.zero(); self.ambient];
        for (c, row) in coords.iter().zip(0..) {
            if c.is_zero() {
                continue;
            }
            for (j, r) in rebuilt.iter_mut().enumerate() {
                *r = &*r + &(c * self.basis.get(row, j));
            }
        }
        (rebuilt == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient && self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Subspace::from_vectors(self.field, self.ambient, &rows).expect("same ambient")
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let (a, b) = (self.basis_vectors(), other.basis_vectors());
        if a.is_empty() || b.is_empty() {
            return Subspace::zero(self.field, self.ambient);
        }
        // columns u_1..u_k, -w_1..-w_l; kernel vectors give common elements
        let mut cols = a.clone();
        cols.extend(b.iter().map(|w| w.iter().map(|s| -s).collect()));
        let m = Matrix::from_columns(self.field, self.ambient, &cols);
        let vecs: Vec<Vec<Scalar>> = m
            .kernel()
            .into_iter()
            .map(|k| combine(self.field, self.ambient, &a, &k[..a.len()]))
            .collect();
        Subspace::from_vectors(self.field, self.ambient, &vecs).expect("same ambient")
    }

    /// Image of the subspace under `m`.
    pub fn image(&self, m: &Matrix) -> Subspace {
        let vecs: Vec<Vec<Scalar>> = self.basis_vectors().iter().map(|v| m.apply(v)).collect();
        Subspace::from_vectors(self.field, m.rows(), &vecs).expect("image rows")
    }

    /// `{ v in self : m v in target }`.
    pub fn preimage_within(&self, m: &Matrix, target: &Subspace) -> Subspace {
        let basis = self.basis_vectors();
        if basis.is_empty() {
            return self.clone();
        }
        // annihilator rows of target: kernel of target basis as a map
        let ann: Vec<Vec<Scalar>> = if target.dim() == 0 {
            (0..target.ambient)
                .map(|i| (0..target.ambient).map(|j| if i == j { self.field.one() } else { self.field.zero() }).collect())
                .collect()
        } else {
            target.basis.kernel()
        };
        if ann.is_empty() {
            return self.clone();
        }
        let ann = Matrix::from_rows(self.field, ann).expect("annihilator rows");
        let images: Vec<Vec<Scalar>> = basis.iter().map(|v| ann.apply(&m.apply(v))).collect();
        let sys = Matrix::from_columns(self.field, ann.rows(), &images);
        let vecs: Vec<Vec<Scalar>> = sys
            .kernel()
            .into_iter()
            .map(|k| combine(self.field, self.ambient, &basis, &k))
            .collect();
        Subspace::from_vectors(self.field, self.ambient, &vecs).expect("same ambient")
    }

    /// Largest `m`-invariant subspace contained in `self` (`m` square).
    pub fn invariant_core(&self, m: &Matrix) -> Subspace {
        let mut cur = self.clone();
        loop {
            let next = cur.preimage_within(m, &cur);
            if next.dim() == cur.dim() {
                return next;
            }
            cur = next;
        }
    }
}

pub(crate) fn combine(field: FieldSpec, n: usize, vecs: &[Vec<Scalar>], coeffs: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![field.zero(); n];
    for (v, c) in vecs.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o = &*o + &(c * x);
        }
    }
    out
}

pub type SparseVec = BTreeMap<usize, Scalar>;

/// Incremental linear-dependence detector over sparse vectors. Each
/// accepted vector is stored reduced against earlier ones together with its
/// expression in terms of the inserted originals.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    field: FieldSpec,
    rows: Vec<(usize, SparseVec, Vec<Scalar>)>,
    inserted: usize,
}

impl SparseEchelon {
    pub fn new(field: FieldSpec) -> Self {
        SparseEchelon {
            field,
            rows: Vec::new(),
            inserted: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.inserted
    }

    pub fn is_empty(&self) -> bool {
        self.inserted == 0
    }

    /// Reduces `v`. Returns `Some(c)` with `v = sum c_i u_i` over previously
    /// inserted vectors when dependent (and does not insert), otherwise
    /// inserts `v` and returns `None`.
    pub fn insert(&mut self, v: &SparseVec) -> Option<Vec<Scalar>> {
        let mut r = v.clone();
        let mut combo = vec![self.field.zero(); self.inserted + 1];
        combo[self.inserted] = self.field.one();
        for (pivot, row, row_combo) in &self.rows {
            let Some(c) = r.get(pivot).cloned() else {
                continue;
            };
            let f = &c / &row[pivot];
            for (k, x) in row {
                let e = r.entry(*k).or_insert_with(|| self.field.zero());
                *e = &*e - &(&f * x);
                if e.is_zero() {
                    r.remove(k);
                }
            }
            for (i, x) in row_combo.iter().enumerate() {
                combo[i] = &combo[i] - &(&f * x);
            }
        }
        if r.is_empty() {
            // 0 = combo . (u_0..u_{k-1}, v)  =>  v = -combo[..k]
            let k = self.inserted;
            return Some(combo[..k].iter().map(|c| -c).collect());
        }
        let pivot = *r.keys().next_back().unwrap();
        for (_, _, rc) in self.rows.iter_mut() {
            rc.push(self.field.zero());
        }
        self.rows.push((pivot, r, combo));
        self.inserted += 1;
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn v(x: &[i64]) -> Vec<Scalar> {
        x.iter().map(|&a| Q.int(a)).collect()
    }

    #[test]
    fn rref_equality() {
        let a = Subspace::from_vectors(Q, 3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        let b = Subspace::from_vectors(Q, 3, &[v(&[1, 2, 1]), v(&[1, 0, -1])]).unwrap();
        assert_eq!(a, b);
        assert!(a.contains(&v(&[2, 3, 1])));
        assert!(!a.contains(&v(&[1, 0, 0])));
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::from_vectors(Q, 3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
        let b = Subspace::from_vectors(Q, 3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let i = a.intersection(&b);
        assert_eq!(i, Subspace::from_vectors(Q, 3, &[v(&[0, 1, 0])]).unwrap());
        assert_eq!(a.sum(&b), Subspace::full(Q, 3));
    }

    #[test]
    fn invariant_core_of_shift() {
        // lower shift e0 -> e1 -> e2 -> 0; largest invariant subspace inside span(e1, e2)
        let s = Matrix::from_ints(Q, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        let u = Subspace::from_vectors(Q, 3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        assert_eq!(u.invariant_core(&s), u);
        let w = Subspace::from_vectors(Q, 3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
        assert_eq!(w.invariant_core(&s), Subspace::zero(Q, 3));
    }

    #[test]
    fn echelon_finds_dependency() {
        let mut e = SparseEchelon::new(Q);
        let sv = |x: &[(usize, i64)]| x.iter().map(|&(i, a)| (i, Q.int(a))).collect::<SparseVec>();
        assert!(e.insert(&sv(&[(0, 1), (2, 1)])).is_none());
        assert!(e.insert(&sv(&[(1, 1)])).is_none());
        let dep = e.insert(&sv(&[(0, 2), (1, 3), (2, 2)])).unwrap();
        assert_eq!(dep, vec![Q.int(2), Q.int(3)]);
    }
}
