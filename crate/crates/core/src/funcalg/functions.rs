use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};
use crate::linalg::{Matrix, Subspace};

/// The algebra `K^X` of functions on `X = {0, ..., points - 1}` with
/// pointwise operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FunctionAlgebra {
    pub field: FieldSpec,
    pub points: usize,
}

/// A maximal ideal `m_x = {f : f(x) = 0}` of `K^X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalIdeal {
    pub point: usize,
    pub basis: Vec<Vec<Scalar>>,
    /// `ev_x` as a `1 x |X|` matrix; its kernel is the ideal.
    pub evaluation: Matrix,
}

impl FunctionAlgebra {
    pub fn new(field: FieldSpec, points: usize) -> Self {
        FunctionAlgebra { field, points }
    }

    pub fn one(&self) -> Vec<Scalar> {
        vec![self.field.one(); self.points]
    }

    pub fn indicator(&self, x: usize) -> Vec<Scalar> {
        (0..self.points).map(|y| if x == y { self.field.one() } else { self.field.zero() }).collect()
    }

    pub fn mul(&self, f: &[Scalar], g: &[Scalar]) -> Vec<Scalar> {
        f.iter().zip(g).map(|(a, b)| a * b).collect()
    }
}

/// Maximal ideals of `K^X`, one per point.
pub fn spec0(a: &FunctionAlgebra) -> Vec<MaximalIdeal> {
    (0..a.points)
        .map(|x| {
            let basis: Vec<Vec<Scalar>> = (0..a.points).filter(|&y| y != x).map(|y| a.indicator(y)).collect();
            let evaluation = Matrix::from_rows(a.field, vec![a.indicator(x)]).expect("one row");
            let ideal = MaximalIdeal {
                point: x,
                basis,
                evaluation,
            };
            let kernel = Subspace::from_vectors(a.field, a.points, &ideal.evaluation.kernel()).expect("kernel");
            assert_eq!(
                kernel,
                Subspace::from_vectors(a.field, a.points, &ideal.basis).expect("basis"),
                "m_x = ker(ev_x)"
            );
            ideal
        })
        .collect()
}

/// A total map `{0..domain-1} -> {0..codomain-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetMapRec {
    codomain: usize,
    map: Vec<usize>,
}

impl SetMapRec {
    pub fn new(map: Vec<usize>, codomain: usize) -> Result<Self> {
        if let Some(&y) = map.iter().find(|&&y| y >= codomain) {
            return Err(Error::SizeMismatch(format!("image {y} outside a codomain of size {codomain}")));
        }
        Ok(SetMapRec { codomain, map })
    }

    pub fn identity(n: usize) -> Self {
        SetMapRec {
            codomain: n,
            map: (0..n).collect(),
        }
    }

    pub fn domain(&self) -> usize {
        self.map.len()
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn at(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SetMapRec) -> Result<SetMapRec> {
        if other.domain() != self.codomain {
            return Err(Error::SizeMismatch("maps do not compose".into()));
        }
        SetMapRec::new(self.map.iter().map(|&y| other.at(y)).collect(), other.codomain)
    }
}

/// A linear map `K^Y -> K^X` given by its `|X| x |Y|` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraHom {
    pub matrix: Matrix,
}

impl AlgebraHom {
    pub fn apply(&self, f: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(f)
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &AlgebraHom) -> Result<AlgebraHom> {
        Ok(AlgebraHom {
            matrix: self.matrix.checked_mul(&inner.matrix)?,
        })
    }
}

/// `f -> f ∘ phi`, a unital homomorphism `K^Y -> K^X`.
pub fn dual_map(field: FieldSpec, phi: &SetMapRec) -> AlgebraHom {
    let matrix = Matrix::from_fn(field, phi.domain(), phi.codomain(), |x, y| {
        if phi.at(x) == y {
            field.one()
        } else {
            field.zero()
        }
    });
    AlgebraHom { matrix }
}

/// Recovers `phi` from a unital homomorphism `K^Y -> K^X`: `x` goes to the
/// unique `y` whose indicator is sent to a function with `x` in its support.
pub fn spec_of_hom(h: &AlgebraHom) -> Result<SetMapRec> {
    let m = &h.matrix;
    let (nx, ny) = (m.rows(), m.cols());
    let field = m.field();
    let source = FunctionAlgebra::new(field, ny);
    let target = FunctionAlgebra::new(field, nx);
    if h.apply(&source.one()) != target.one() {
        return Err(Error::NotAlgebraHom("1 is not sent to 1".into()));
    }
    let images: Vec<Vec<Scalar>> = (0..ny).map(|y| m.column(y)).collect();
    for y in 0..ny {
        for z in 0..ny {
            let lhs = h.apply(&source.mul(&source.indicator(y), &source.indicator(z)));
            if lhs != target.mul(&images[y], &images[z]) {
                return Err(Error::NotAlgebraHom(format!("h(e_{y} e_{z}) != h(e_{y}) h(e_{z})")));
            }
        }
    }
    // images are orthogonal 0/1 idempotents summing to 1
    let map = (0..nx)
        .map(|x| (0..ny).find(|&y| images[y][x].is_one()).expect("unital idempotents cover X"))
        .collect();
    SetMapRec::new(map, ny)
}

/// A surjection of `X` onto blocks `0..k-1`, blocks numbered by first
/// occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<usize>,
}

impl Partition {
    /// Canonicalizes arbitrary block labels.
    pub fn new(labels: &[usize]) -> Self {
        let mut seen = BTreeMap::new();
        let blocks = labels
            .iter()
            .map(|l| {
                let next = seen.len();
                *seen.entry(*l).or_insert(next)
            })
            .collect();
        Partition { blocks }
    }

    pub fn from_blocks(points: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; points];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::SizeMismatch("empty block".into()));
            }
            for &x in block {
                if x >= points || labels[x] != usize::MAX {
                    return Err(Error::SizeMismatch(format!("point {x} is out of range or repeated")));
                }
                labels[x] = b;
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(Error::SizeMismatch("blocks do not cover X".into()));
        }
        Ok(Partition::new(&labels))
    }

    pub fn points(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.iter().max().map_or(0, |b| b + 1)
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.blocks[x]
    }

    pub fn as_map(&self) -> SetMapRec {
        SetMapRec::new(self.blocks.clone(), self.block_count()).expect("labels are in range")
    }
}

/// The block-indicator subalgebra `K^blocks -> K^X`.
pub fn partition_subalgebra(field: FieldSpec, p: &Partition) -> AlgebraHom {
    dual_map(field, &p.as_map())
}

/// The partition of `X` into level sets common to all of `basis`, after
/// checking that `basis` spans a unital subalgebra of `K^X`.
pub fn subalgebra_partition(field: FieldSpec, points: usize, basis: &[Vec<Scalar>]) -> Result<Partition> {
    let a = FunctionAlgebra::new(field, points);
    let span = Subspace::from_vectors(field, points, basis)?;
    if !span.contains(&a.one()) {
        return Err(Error::NotSubalgebra("1 is missing".into()));
    }
    for (i, f) in basis.iter().enumerate() {
        for (j, g) in basis.iter().enumerate().skip(i) {
            if !span.contains(&a.mul(f, g)) {
                return Err(Error::NotSubalgebra(format!("product of basis elements {i} and {j} escapes")));
            }
        }
    }
    let mut classes: BTreeMap<Vec<Scalar>, usize> = BTreeMap::new();
    let labels: Vec<usize> = (0..points)
        .map(|x| {
            let key: Vec<Scalar> = basis.iter().map(|f| f[x].clone()).collect();
            let next = classes.len();
            *classes.entry(key).or_insert(next)
        })
        .collect();
    Ok(Partition::new(&labels))
}
