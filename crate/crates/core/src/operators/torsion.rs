use crate::error::Result;
use crate::fields::{FieldSpec, Polynomial, Scalar};
use crate::linalg::{vector_annihilator, Matrix, SparseEchelon, Subspace};

use super::operator::{FiniteVector, Operator};

pub const DEFAULT_DEPTH: usize = 64;

/// Evidence that `v, Tv, T^2 v, ...` never becomes dependent: from
/// `T^iterate v` on, the leading index grows by `offset` at every step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthCertificate {
    pub iterate: usize,
    pub leading_index: usize,
    pub offset: i64,
}

impl GrowthCertificate {
    /// Recomputes the iterates and checks the leading index advances by
    /// `offset` for `steps` further applications.
    pub fn revalidate(&self, t: &Operator, v: &FiniteVector, steps: usize) -> Result<bool> {
        let mut w = v.clone();
        for _ in 0..self.iterate {
            w = t.apply(&w)?;
        }
        if w.max_index() != Some(self.leading_index) || growth_band(t).map(|(d, _)| d) != Some(self.offset) {
            return Ok(false);
        }
        let mut lead = self.leading_index as i64;
        for _ in 0..steps {
            w = t.apply(&w)?;
            match w.max_index() {
                Some(m) if m as i64 == lead + self.offset => lead = m as i64,
                _ => return Ok(false),
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorsionReport {
    /// Monic `p` with `p(T) v = 0`, of least degree.
    Torsion { annihilator: Polynomial, depth_used: usize },
    NonTorsionCertified(GrowthCertificate),
    Unknown { depth: usize },
}

impl TorsionReport {
    pub fn is_torsion(&self) -> bool {
        matches!(self, TorsionReport::Torsion { .. })
    }
}

/// The largest band offset, when positive and nowhere zero, together with
/// the correction horizon past which it dominates every column.
pub(crate) fn growth_band(t: &Operator) -> Option<(i64, Option<usize>)> {
    let (&d, q) = t.bands().iter().next_back()?;
    if d <= 0 || !q.eventually_nowhere_zero() || !q.is_purely_periodic() {
        return None;
    }
    Some((d, t.max_correction_index()))
}

/// Krylov iteration on `v`: stops at the first linear dependency, when the
/// growth certificate applies, or after `depth` iterates.
pub fn krylov_torsion(t: &Operator, v: &FiniteVector, depth: usize) -> Result<TorsionReport> {
    let field = t.field();
    let growth = growth_band(t);
    let mut echelon = SparseEchelon::new(field);
    let mut w = v.clone();
    for k in 0..=depth {
        if let Some(dep) = echelon.insert(w.entries()) {
            let mut coeffs: Vec<Scalar> = dep.iter().map(|c| -c).collect();
            coeffs.push(field.one());
            let annihilator = Polynomial::new(field, coeffs)?;
            assert!(t.apply_poly(&annihilator, v)?.is_zero(), "annihilator verified");
            return Ok(TorsionReport::Torsion { annihilator, depth_used: k });
        }
        if let (Some((d, horizon)), Some(m)) = (growth, w.max_index()) {
            if horizon.map_or(true, |c| m > c) {
                return Ok(TorsionReport::NonTorsionCertified(GrowthCertificate {
                    iterate: k,
                    leading_index: m,
                    offset: d,
                }));
            }
        }
        if k < depth {
            w = t.apply(&w)?;
        }
    }
    Ok(TorsionReport::Unknown { depth })
}

/// Torsion found inside the cyclic submodules of a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WindowTorsion {
    /// `basis` spans the torsion reached; `restriction` is the matrix of `T`
    /// on it and `minimal_polynomial` that of the restriction.
    Basis {
        basis: Vec<FiniteVector>,
        restriction: Matrix,
        minimal_polynomial: Polynomial,
    },
    Unknown { generator: usize },
}

/// Spans the Krylov spaces of the window generators that are torsion.
/// Generators certified non-torsion contribute nothing.
pub fn torsion_part_on_window(t: &Operator, w: &[FiniteVector], depth: usize) -> Result<WindowTorsion> {
    let field = t.field();
    let mut gens = Vec::new();
    for (i, v) in w.iter().enumerate() {
        match krylov_torsion(t, v, depth)? {
            TorsionReport::Torsion { annihilator, .. } => {
                let mut x = v.clone();
                for _ in 0..annihilator.degree().unwrap_or(0) {
                    gens.push(x.clone());
                    x = t.apply(&x)?;
                }
            }
            TorsionReport::NonTorsionCertified(_) => {}
            TorsionReport::Unknown { .. } => return Ok(WindowTorsion::Unknown { generator: i }),
        }
    }
    let mut echelon = SparseEchelon::new(field);
    let basis: Vec<FiniteVector> = gens.into_iter().filter(|g| echelon.insert(g.entries()).is_none()).collect();
    let restriction = restrict(t, &basis)?;
    let minimal_polynomial = crate::linalg::minimal_polynomial(&restriction)?;
    Ok(WindowTorsion::Basis {
        basis,
        restriction,
        minimal_polynomial,
    })
}

/// Matrix of `T` on a `T`-invariant span, in the given (independent) basis.
pub(crate) fn restrict(t: &Operator, basis: &[FiniteVector]) -> Result<Matrix> {
    let field = t.field();
    let k = basis.len();
    let n = basis.iter().filter_map(FiniteVector::max_index).max().map_or(0, |m| m + 1) + t.bandwidth() + 1;
    let dense: Vec<Vec<Scalar>> = basis.iter().map(|b| b.to_dense(n)).collect();
    let mut cols = Vec::with_capacity(k);
    for b in basis {
        let image = t.apply(b)?;
        let dense_image = image.to_dense(n.max(image.max_index().map_or(0, |m| m + 1)));
        let m = Matrix::from_columns(field, dense_image.len(), &pad(field, &dense, dense_image.len()));
        let coords = m.solve(&dense_image).expect("span is invariant");
        cols.push(coords);
    }
    Ok(Matrix::from_columns(field, k, &cols))
}

fn pad(field: FieldSpec, vecs: &[Vec<Scalar>], n: usize) -> Vec<Vec<Scalar>> {
    vecs.iter()
        .map(|v| {
            let mut v = v.clone();
            v.resize(n, field.zero());
            v
        })
        .collect()
}

/// Exact `H(T)` when the growth certificate covers every vector supported
/// beyond the corrections: then `H(T)` is the largest invariant subspace of
/// `span(v_0, ..., v_C)`.
pub(crate) fn certified_torsion_space(t: &Operator) -> Option<Vec<FiniteVector>> {
    let (d, horizon) = growth_band(t)?;
    let Some(c) = horizon else {
        return Some(Vec::new());
    };
    let n = c + 1 + d as usize;
    let m = t.truncate(n);
    let core = Subspace::coordinate(t.field(), n, c + 1).invariant_core(&m);
    Some(core.basis_vectors().iter().map(|v| FiniteVector::from_dense(t.field(), v)).collect())
}

/// First basis vector whose annihilator under `restriction` satisfies `bad`.
pub(crate) fn find_witness(
    restriction: &Matrix,
    basis: &[FiniteVector],
    bad: impl Fn(&Polynomial) -> Result<bool>,
) -> Result<Option<(FiniteVector, Polynomial)>> {
    let field = restriction.field();
    let k = basis.len();
    for (i, b) in basis.iter().enumerate() {
        let e: Vec<Scalar> = (0..k).map(|j| if i == j { field.one() } else { field.zero() }).collect();
        let ann = vector_annihilator(restriction, &e)?;
        if bad(&ann)? {
            return Ok(Some((b.clone(), ann)));
        }
    }
    Ok(None)
}
