//! Binary-tree subspace systems `V_i` on a finite window, indexed by 0/1
//! strings, whose level projections commute, refine one another, and share
//! no eigenvector with the low coordinate vectors.
//!
//! Window coordinate `k` stands for the basis vector `v_{k+1}`.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};
use crate::idempotents::{common_eigenvector_search, CommonEigenvector};
use crate::linalg::{Matrix, SparseEchelon, SparseVec, Subspace};
use crate::operators::{FiniteVector, Operator};
use crate::text::parse_field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    field: FieldSpec,
    depth: usize,
    window: usize,
    nodes: BTreeMap<String, Subspace>,
    w: Vec<Scalar>,
}

/// Strings over `{0, 1}` of length `n`, in lexicographic order.
pub fn strings(n: usize) -> Vec<String> {
    (0..1usize << n)
        .map(|k| (0..n).rev().map(|b| if k >> b & 1 == 1 { '1' } else { '0' }).collect())
        .collect()
}

/// Smallest window `build` accepts for the given depth.
pub fn min_window(depth: usize) -> usize {
    1 << (depth + 2)
}

fn sparse(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(i, s)| (i, s.clone())).collect()
}

fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Extends `seed` to a basis of `space` with vectors taken from `candidates`
/// in order, returning only the added vectors.
fn extend(seed: &[Vec<Scalar>], candidates: &[Vec<Scalar>], want: usize, field: FieldSpec) -> Vec<Vec<Scalar>> {
    let mut ech = SparseEchelon::new(field);
    for s in seed {
        ech.insert(&sparse(s));
    }
    let mut out = Vec::new();
    for c in candidates {
        if out.len() == want {
            break;
        }
        if ech.insert(&sparse(c)).is_none() {
            out.push(c.clone());
        }
    }
    out
}

impl TreeDecomposition {
    /// Builds `V_i` for every string of length at most `depth` inside a
    /// window of dimension `window`, with `w = v_1`. `seed` shuffles the
    /// order in which extension vectors are taken.
    pub fn build(field: FieldSpec, depth: usize, window: usize, seed: Option<u64>) -> Result<Self> {
        if field.is_finite() {
            return Err(Error::FiniteFieldUnsupported);
        }
        if depth >= usize::BITS as usize - 3 || window < min_window(depth) {
            return Err(Error::TruncationTooSmall {
                window,
                needed: if depth >= usize::BITS as usize - 3 { usize::MAX } else { min_window(depth) },
            });
        }
        let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
        let mut nodes = BTreeMap::new();
        nodes.insert(String::new(), Subspace::full(field, window));
        let mut w = vec![field.zero(); window];
        w[0] = field.one();
        let mut tree = TreeDecomposition {
            field,
            depth: 0,
            window,
            nodes,
            w,
        };
        for n in 1..=depth {
            let components = tree.components(n - 1);
            let low = Subspace::coordinate(field, window, n);
            for (i, wi) in strings(n - 1).into_iter().zip(components) {
                let vi = &tree.nodes[&i];
                let mut basis = vi.basis_vectors();
                if let Some(rng) = rng.as_mut() {
                    basis.shuffle(rng);
                }
                let s = low.intersection(vi);
                let s_in_wi = Subspace::from_vectors(field, window, &[wi.clone()])?.contains_subspace(&s);
                let (mut left, mut right) = if s_in_wi {
                    // w_i = a + b with a, b independent
                    let a = extend(&[wi.clone()], &basis, 1, field).remove(0);
                    let b = sub(&wi, &a);
                    (vec![a], vec![b])
                } else {
                    let g = s.basis_vectors().remove(0);
                    let ab = extend(&[g.clone(), wi.clone()], &basis, 2, field);
                    let (a, b) = (ab[0].clone(), ab[1].clone());
                    (vec![sub(&g, &a), sub(&wi, &b)], vec![a, b])
                };
                let mut seeded = left.clone();
                seeded.extend(right.iter().cloned());
                let rest = extend(&seeded, &basis, vi.dim() - seeded.len(), field);
                for (k, v) in rest.into_iter().enumerate() {
                    if k % 2 == 0 { &mut left } else { &mut right }.push(v);
                }
                if left.len() > right.len() + 1 {
                    let v = left.pop().expect("nonempty");
                    right.push(v);
                }
                tree.nodes.insert(format!("{i}0"), Subspace::from_vectors(field, window, &left)?);
                tree.nodes.insert(format!("{i}1"), Subspace::from_vectors(field, window, &right)?);
            }
            tree.depth = n;
        }
        match tree.verify() {
            Verdict::Pass => Ok(tree),
            Verdict::Fail { clause, witness } => Err(Error::VerifyFailed(format!("{clause}: {witness}"))),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn node(&self, i: &str) -> Option<&Subspace> {
        self.nodes.get(i)
    }

    pub fn nodes(&self) -> &BTreeMap<String, Subspace> {
        &self.nodes
    }

    pub fn w(&self) -> &[Scalar] {
        &self.w
    }

    /// Replaces a node without checking; for exercising `verify`.
    pub fn set_node(&mut self, i: &str, space: Subspace) {
        self.nodes.insert(i.to_string(), space);
    }

    pub fn set_w(&mut self, w: Vec<Scalar>) {
        self.w = w;
    }

    /// Columns: the bases of the level-`m` subspaces, concatenated.
    fn level_basis(&self, m: usize) -> (Matrix, Vec<usize>) {
        let mut cols = Vec::new();
        let mut sizes = Vec::new();
        for i in strings(m) {
            let b = self.nodes[&i].basis_vectors();
            sizes.push(b.len());
            cols.extend(b);
        }
        (Matrix::from_columns(self.field, self.window, &cols), sizes)
    }

    /// Components of `w` in the level-`m` direct sum, in string order.
    fn components(&self, m: usize) -> Vec<Vec<Scalar>> {
        self.components_of(&self.w, m)
    }

    fn components_of(&self, v: &[Scalar], m: usize) -> Vec<Vec<Scalar>> {
        let (b, sizes) = self.level_basis(m);
        let coords = b.solve(v).expect("level spaces span the window");
        let mut out = Vec::new();
        let mut offset = 0;
        for k in sizes {
            let mut c = vec![self.field.zero(); self.window];
            for t in offset..offset + k {
                for (r, x) in c.iter_mut().enumerate() {
                    *x = &*x + &(&coords[t] * b.get(r, t));
                }
            }
            out.push(c);
            offset += k;
        }
        out
    }

    fn verify_structure(&self) -> Verdict {
        if self.nodes.get("") != Some(&Subspace::full(self.field, self.window)) {
            return Verdict::fail("root", "V_root is not the whole window");
        }
        for m in 0..=self.depth {
            for i in strings(m) {
                match self.nodes.get(&i) {
                    Some(v) if v.ambient() == self.window => {}
                    _ => return Verdict::fail("shape", format!("node `{i}` missing or of wrong ambient dimension")),
                }
            }
        }
        if self.nodes.keys().any(|k| k.len() > self.depth) || self.w.len() != self.window {
            return Verdict::fail("shape", "extra nodes or witness of wrong length");
        }
        for m in 0..self.depth {
            for i in strings(m) {
                let (a, b) = (&self.nodes[&format!("{i}0")], &self.nodes[&format!("{i}1")]);
                let sum = a.sum(b);
                if sum.dim() != a.dim() + b.dim() || sum != self.nodes[&i] {
                    return Verdict::fail("b", format!("V_{i} != V_{i}0 (+) V_{i}1"));
                }
            }
        }
        Verdict::Pass
    }

    /// Exact check of every clause, naming the first that fails.
    pub fn verify(&self) -> Verdict {
        if let f @ Verdict::Fail { .. } = self.verify_structure() {
            return f;
        }
        for m in 0..=self.depth {
            let low = Subspace::coordinate(self.field, self.window, m);
            for i in strings(m) {
                let meet = low.intersection(&self.nodes[&i]);
                if !meet.is_zero() {
                    let v = FiniteVector::from_dense(self.field, &meet.basis_vectors()[0]);
                    return Verdict::fail("a", format!("span(v_1..v_{m}) meets V_{i} in {v}"));
                }
            }
        }
        for m in 0..=self.depth {
            let floor = (self.window >> m).saturating_sub(m);
            for i in strings(m) {
                if self.nodes[&i].dim() < floor {
                    return Verdict::fail("c", format!("dim V_{i} = {} < {floor}", self.nodes[&i].dim()));
                }
            }
        }
        for (i, c) in strings(self.depth).iter().zip(self.components(self.depth)) {
            if c.iter().all(Scalar::is_zero) {
                return Verdict::fail("d", format!("w has no component in V_{i}"));
            }
        }
        Verdict::Pass
    }

    /// Projections onto the level-`m` subspaces along the sum of their
    /// siblings at that level. They act on the window only.
    pub fn idempotent_family(&self, m: usize) -> Result<TreeFamily> {
        if m > self.depth {
            return Err(Error::VerifyFailed(format!("level {m} exceeds depth {}", self.depth)));
        }
        if let Verdict::Fail { clause, witness } = self.verify() {
            return Err(Error::VerifyFailed(format!("{clause}: {witness}")));
        }
        let family = self.projections(m);
        let n = self.window;
        let mut total = Matrix::zero(self.field, n, n);
        for (k, e) in family.projections.iter().enumerate() {
            assert_eq!(&(e * e), e, "projection is idempotent");
            for (l, f) in family.projections.iter().enumerate() {
                if k != l {
                    assert!((e * f).is_zero(), "projections are orthogonal");
                }
            }
            total = &total + e;
        }
        assert_eq!(total, Matrix::identity(self.field, n), "projections sum to the window identity");
        if m < self.depth {
            let finer = self.projections(m + 1);
            for (k, e) in family.projections.iter().enumerate() {
                let split = &finer.projections[2 * k] + &finer.projections[2 * k + 1];
                assert_eq!(e, &split, "E_i = E_i0 + E_i1");
            }
        }
        Ok(family)
    }

    fn projections(&self, m: usize) -> TreeFamily {
        let (b, sizes) = self.level_basis(m);
        let b_inv = b.inverse().expect("level spaces form a direct sum");
        let mut offset = 0;
        let mut projections = Vec::new();
        for k in sizes {
            let sel: Vec<Scalar> = (0..self.window)
                .map(|t| if t >= offset && t < offset + k { self.field.one() } else { self.field.zero() })
                .collect();
            projections.push(&(&b * &Matrix::diagonal(self.field, &sel)) * &b_inv);
            offset += k;
        }
        TreeFamily {
            labels: strings(m),
            projections,
        }
    }

    /// Looks for a common eigenvector of all projections of levels `<= m`
    /// among vectors in `span(v_1, ..., v_k)`, `k = max(m, 1)`.
    pub fn no_common_eigenvector(&self, m: usize) -> Result<EigenSearch> {
        let mut ops = Vec::new();
        for level in 0..=m.min(self.depth) {
            ops.extend(self.idempotent_family(level)?.operators());
        }
        Ok(match common_eigenvector_search(&ops, m.max(1))? {
            CommonEigenvector::Found { vector, .. } => EigenSearch::CounterexampleFound(vector),
            CommonEigenvector::NoneWithin(_) => EigenSearch::Confirmed,
        })
    }

    /// The finite-rank idempotent `E = I - w e_k^T / w_k` with `E w = 0`, and
    /// the rank of `(lambda_i) -> sum lambda_i E_i w` over the leaves.
    pub fn discreteness_witness(&self) -> Result<DiscretenessReport> {
        if let Verdict::Fail { clause, witness } = self.verify_structure() {
            return Err(Error::VerifyFailed(format!("{clause}: {witness}")));
        }
        let n = self.window;
        let k = self.w.iter().position(|s| !s.is_zero()).ok_or_else(|| Error::VerifyFailed("w = 0".into()))?;
        let scale = self.w[k].inv().expect("nonzero");
        let e = Matrix::from_fn(self.field, n, n, |r, c| {
            let id = if r == c { self.field.one() } else { self.field.zero() };
            if c == k {
                &id - &(&self.w[r] * &scale)
            } else {
                id
            }
        });
        assert!(e.apply(&self.w).iter().all(Scalar::is_zero), "E w = 0");
        assert_eq!(&(&e * &e), &e, "E is idempotent");
        let comps = self.components(self.depth);
        let rank = Matrix::from_columns(self.field, n, &comps).rank();
        Ok(DiscretenessReport {
            leaves: comps.len(),
            rank,
            injective: rank == comps.len(),
            idempotent: e,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&TreeWire::from(self)).expect("plain data")
    }

    /// Parses and verifies a serialized decomposition.
    pub fn from_json(text: &str) -> Result<Self> {
        let wire: TreeWire = serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
        let tree = wire.into_tree()?;
        match tree.verify() {
            Verdict::Pass => Ok(tree),
            Verdict::Fail { clause, witness } => Err(Error::VerifyFailed(format!("{clause}: {witness}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail { clause: String, witness: String },
}

impl Verdict {
    fn fail(clause: &str, witness: impl Into<String>) -> Self {
        Verdict::Fail {
            clause: clause.into(),
            witness: witness.into(),
        }
    }
}

/// Window projections of one tree level, labelled by their strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeFamily {
    pub labels: Vec<String>,
    pub projections: Vec<Matrix>,
}

impl TreeFamily {
    /// The projections as operators that vanish beyond the window.
    pub fn operators(&self) -> Vec<Operator> {
        self.projections.iter().map(Operator::from_matrix).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EigenSearch {
    Confirmed,
    CounterexampleFound(FiniteVector),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscretenessReport {
    pub leaves: usize,
    pub rank: usize,
    pub injective: bool,
    pub idempotent: Matrix,
}

#[derive(Serialize, Deserialize)]
struct TreeWire {
    field: String,
    depth: usize,
    window: usize,
    nodes: BTreeMap<String, Vec<Vec<String>>>,
    w: Vec<String>,
}

impl From<&TreeDecomposition> for TreeWire {
    fn from(t: &TreeDecomposition) -> Self {
        let row = |v: &[Scalar]| v.iter().map(Scalar::short).collect::<Vec<_>>();
        TreeWire {
            field: t.field.to_string(),
            depth: t.depth,
            window: t.window,
            nodes: t
                .nodes
                .iter()
                .map(|(k, s)| (k.clone(), s.basis_vectors().iter().map(|v| row(v)).collect()))
                .collect(),
            w: row(&t.w),
        }
    }
}

impl TreeWire {
    fn into_tree(self) -> Result<TreeDecomposition> {
        let field = parse_field(&self.field)?;
        let scalars = |v: &[String]| v.iter().map(|s| crate::text::parse_scalar(s, field)).collect::<Result<Vec<_>>>();
        let mut nodes = BTreeMap::new();
        for (k, rows) in self.nodes {
            if k.chars().any(|c| c != '0' && c != '1') {
                return Err(Error::parse(1, 1, format!("node key `{k}` is not a 0/1 string")));
            }
            let vecs = rows.iter().map(|r| scalars(r)).collect::<Result<Vec<_>>>()?;
            nodes.insert(k, Subspace::from_vectors(field, self.window, &vecs)?);
        }
        Ok(TreeDecomposition {
            field,
            depth: self.depth,
            window: self.window,
            nodes,
            w: scalars(&self.w)?,
        })
    }
}
