use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::fields::{EPSeq, FieldSpec, Scalar, SeqOp};
use crate::linalg::{Matrix, SparseVec};

/// Finitely supported vector in the space with basis `v_0, v_1, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteVector {
    field: FieldSpec,
    entries: SparseVec,
}

impl FiniteVector {
    pub fn zero(field: FieldSpec) -> Self {
        FiniteVector {
            field,
            entries: SparseVec::new(),
        }
    }

    /// The basis vector `v_i`.
    pub fn basis(field: FieldSpec, i: usize) -> Self {
        let mut entries = SparseVec::new();
        entries.insert(i, field.one());
        FiniteVector { field, entries }
    }

    pub fn from_pairs(field: FieldSpec, pairs: impl IntoIterator<Item = (usize, Scalar)>) -> Result<Self> {
        let mut v = Self::zero(field);
        for (i, s) in pairs {
            field.check(&s)?;
            v.add_at(i, &s);
        }
        Ok(v)
    }

    pub fn from_dense(field: FieldSpec, dense: &[Scalar]) -> Self {
        let entries = dense
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(i, s)| (i, s.clone()))
            .collect();
        FiniteVector { field, entries }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn entries(&self) -> &SparseVec {
        &self.entries
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.entries.get(&i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest index with a nonzero coordinate.
    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    pub fn to_dense(&self, n: usize) -> Vec<Scalar> {
        (0..n).map(|i| self.get(i)).collect()
    }

    pub(crate) fn add_at(&mut self, i: usize, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        let e = self.entries.entry(i).or_insert_with(|| self.field.zero());
        *e = &*e + s;
        if e.is_zero() {
            self.entries.remove(&i);
        }
    }

    pub fn add(&self, other: &FiniteVector) -> FiniteVector {
        let mut out = self.clone();
        for (i, s) in &other.entries {
            out.add_at(*i, s);
        }
        out
    }

    pub fn sub(&self, other: &FiniteVector) -> FiniteVector {
        self.add(&other.scale(&-self.field.one()))
    }

    pub fn scale(&self, c: &Scalar) -> FiniteVector {
        if c.is_zero() {
            return Self::zero(self.field);
        }
        FiniteVector {
            field: self.field,
            entries: self.entries.iter().map(|(i, s)| (*i, s * c)).collect(),
        }
    }
}

impl fmt::Display for FiniteVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(i, s)| format!("{i}:{}", s.short())).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// An endomorphism of the space with basis `v_0, v_1, ...` given by finitely
/// many eventually periodic diagonals plus finitely many exceptional entries.
///
/// Canonical form: every band is purely periodic and nonzero, entry
/// `(j + d, j)` of band `d` being `band(j)`; entries on negative rows are
/// absent. Corrections hold the (nonzero) differences between the true
/// entries and the periodic bands. Two operators are equal iff their
/// canonical forms are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Operator {
    field: FieldSpec,
    bands: BTreeMap<i64, EPSeq>,
    correction: BTreeMap<(usize, usize), Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Mul,
}

impl Operator {
    /// Builds an operator from raw bands (with preperiods) and corrections,
    /// canonicalizing. A band with offset `d < 0` must vanish on its first
    /// `|d|` indices.
    pub fn new(
        field: FieldSpec,
        bands: impl IntoIterator<Item = (i64, EPSeq)>,
        corrections: impl IntoIterator<Item = ((usize, usize), Scalar)>,
    ) -> Result<Self> {
        let mut op = Operator::zero(field);
        for (d, s) in bands {
            if s.field() != field {
                return Err(Error::FieldMismatch);
            }
            if d < 0 {
                let k = d.unsigned_abs() as usize;
                if let Some(j) = (0..k).find(|&j| !s.at(j).is_zero()) {
                    return Err(Error::NegativeIndexLeak { row: j as i64 + d });
                }
            }
            let q = s.periodic_part();
            for j in 0..s.preperiod().len() {
                let row = j as i64 + d;
                if row >= 0 {
                    let diff = &s.at(j) - &q.at(j);
                    op.add_correction(row as usize, j, &diff);
                }
            }
            op.add_band(d, &q);
        }
        for ((i, j), s) in corrections {
            field.check(&s)?;
            op.add_correction(i, j, &s);
        }
        Ok(op)
    }

    pub fn zero(field: FieldSpec) -> Self {
        Operator {
            field,
            bands: BTreeMap::new(),
            correction: BTreeMap::new(),
        }
    }

    pub fn scalar(c: Scalar) -> Self {
        let mut op = Self::zero(c.field());
        op.add_band(0, &EPSeq::constant(c));
        op
    }

    pub fn identity(field: FieldSpec) -> Self {
        Self::scalar(field.one())
    }

    /// The right shift `v_i -> v_{i+1}`.
    pub fn shift(field: FieldSpec) -> Self {
        let mut op = Self::zero(field);
        op.add_band(1, &EPSeq::constant(field.one()));
        op
    }

    /// Diagonal operator `v_i -> s(i) v_i`.
    pub fn diagonal(s: &EPSeq) -> Self {
        Self::new(s.field(), [(0, s.clone())], []).expect("offset 0 never leaks")
    }

    /// Matrix unit `E_{ij}`: `v_j -> v_i`, all other basis vectors to 0.
    pub fn matrix_unit(field: FieldSpec, i: usize, j: usize) -> Self {
        let mut op = Self::zero(field);
        op.add_correction(i, j, &field.one());
        op
    }

    /// The matrix acting on `v_0..v_{n-1}` and zero on the rest.
    pub fn from_matrix(m: &Matrix) -> Self {
        let mut op = Self::zero(m.field());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                op.add_correction(i, j, m.get(i, j));
            }
        }
        op
    }

    fn add_band(&mut self, d: i64, q: &EPSeq) {
        debug_assert!(q.is_purely_periodic());
        let sum = match self.bands.get(&d) {
            Some(b) => b.combine(q, SeqOp::Add).expect("same field"),
            None => q.clone(),
        };
        if sum.is_zero() {
            self.bands.remove(&d);
        } else {
            self.bands.insert(d, sum);
        }
    }

    fn add_correction(&mut self, i: usize, j: usize, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        let e = self.correction.entry((i, j)).or_insert_with(|| self.field.zero());
        *e = &*e + s;
        if e.is_zero() {
            self.correction.remove(&(i, j));
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Purely periodic bands by offset.
    pub fn bands(&self) -> &BTreeMap<i64, EPSeq> {
        &self.bands
    }

    pub fn corrections(&self) -> &BTreeMap<(usize, usize), Scalar> {
        &self.correction
    }

    /// The band `d` as seen by the matrix: zero on negative rows.
    pub fn band_sequence(&self, d: i64) -> EPSeq {
        let q = self.bands.get(&d).cloned().unwrap_or_else(|| EPSeq::zero(self.field));
        if d < 0 {
            q.clip_prefix(d.unsigned_abs() as usize)
        } else {
            q
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bands.is_empty() && self.correction.is_empty()
    }

    /// Largest `|d|` over band offsets (0 if there are no bands).
    pub fn bandwidth(&self) -> usize {
        self.bands.keys().map(|d| d.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// Largest row or column index touched by a correction.
    pub fn max_correction_index(&self) -> Option<usize> {
        self.correction.keys().map(|&(i, j)| i.max(j)).max()
    }

    pub fn is_eventually_diagonal(&self) -> bool {
        self.bands.keys().all(|&d| d == 0)
    }

    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        let d = i as i64 - j as i64;
        let band = self.bands.get(&d).map_or_else(|| self.field.zero(), |q| q.at(j));
        match self.correction.get(&(i, j)) {
            Some(c) => &band + c,
            None => band,
        }
    }

    /// `T v_j`.
    pub fn column(&self, j: usize) -> FiniteVector {
        self.apply(&FiniteVector::basis(self.field, j)).expect("same field")
    }

    pub fn apply(&self, v: &FiniteVector) -> Result<FiniteVector> {
        if v.field != self.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = FiniteVector::zero(self.field);
        for (&j, x) in &v.entries {
            for (&d, q) in &self.bands {
                let row = j as i64 + d;
                if row >= 0 {
                    out.add_at(row as usize, &(&q.at(j) * x));
                }
            }
        }
        for (&(i, j), c) in &self.correction {
            if let Some(x) = v.entries.get(&j) {
                out.add_at(i, &(c * x));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Operator {
        let mut out = Operator::zero(self.field);
        for (&d, q) in &self.bands {
            out.add_band(d, &q.scale(c));
        }
        for (&(i, j), s) in &self.correction {
            out.add_correction(i, j, &(s * c));
        }
        out
    }

    pub fn add(&self, rhs: &Operator) -> Result<Operator> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = self.clone();
        for (&d, q) in &rhs.bands {
            out.add_band(d, q);
        }
        for (&(i, j), s) in &rhs.correction {
            out.add_correction(i, j, s);
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Operator) -> Result<Operator> {
        self.add(&rhs.scale(&-self.field.one()))
    }

    /// Composition `self * rhs`. Bands multiply as periodic sequences; the
    /// product differs from that periodic model only in finitely many
    /// columns, which are computed exactly and stored as corrections.
    pub fn mul(&self, rhs: &Operator) -> Result<Operator> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        let field = self.field;
        let mut model = Operator::zero(field);
        for (&d1, a) in &self.bands {
            for (&d2, b) in &rhs.bands {
                let len = a.period().len().lcm(&b.period().len());
                let seq = EPSeq::tabulate(field, 0, len, |n| &a.periodic_at(n as i64 + d2) * &b.at(n));
                model.add_band(d1 + d2, &seq);
            }
        }
        let cmax = self
            .max_correction_index()
            .max(rhs.max_correction_index())
            .map_or(0, |c| c + 1);
        let horizon = cmax + self.bandwidth() + rhs.bandwidth() + 1;
        let mut out = model.clone();
        for j in 0..horizon {
            let truth = self.apply(&rhs.column(j))?;
            let diff = truth.sub(&model.column(j));
            for (&i, s) in &diff.entries {
                out.add_correction(i, j, s);
            }
        }
        Ok(out)
    }

    pub fn ring_op(&self, rhs: &Operator, op: RingOp) -> Result<Operator> {
        match op {
            RingOp::Add => self.add(rhs),
            RingOp::Mul => self.mul(rhs),
        }
    }

    pub fn pow(&self, mut e: u64) -> Operator {
        let mut base = self.clone();
        let mut acc = Operator::identity(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            base = base.mul(&base).expect("same field");
            e >>= 1;
        }
        acc
    }

    pub fn commutes(&self, other: &Operator) -> Result<bool> {
        Ok(self.mul(other)? == other.mul(self)?)
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self).expect("same field") == *self
    }

    /// The `n x n` window of entries `(i, j)`, `i, j < n`. Not multiplicative.
    pub fn truncate(&self, n: usize) -> Matrix {
        let mut m = Matrix::zero(self.field, n, n);
        for j in 0..n {
            for (&i, s) in &self.column(j).entries {
                if i < n {
                    m.set(i, j, s.clone());
                }
            }
        }
        m
    }

    /// `p(T) v` by iterated application.
    pub fn apply_poly(&self, p: &crate::fields::Polynomial, v: &FiniteVector) -> Result<FiniteVector> {
        let mut acc = FiniteVector::zero(self.field);
        for c in p.coeffs().iter().rev() {
            acc = self.apply(&acc)?.add(&v.scale(c));
        }
        Ok(acc)
    }
}

pub fn op_ring(a: &Operator, b: &Operator, op: RingOp) -> Result<Operator> {
    a.ring_op(b, op)
}

pub fn apply(t: &Operator, v: &FiniteVector) -> Result<FiniteVector> {
    t.apply(v)
}

pub fn truncate(t: &Operator, n: usize) -> Matrix {
    t.truncate(n)
}

/// Line format: `field ...`, then `band d: pre=[...] per=[...]` and
/// `corr (i,j)=s` lines.
impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.field)?;
        for &d in self.bands.keys() {
            let s = self.band_sequence(d);
            let list = |v: &[Scalar]| v.iter().map(Scalar::short).collect::<Vec<_>>().join(",");
            writeln!(f, "band {d}: pre=[{}] per=[{}]", list(s.preperiod()), list(s.period()))?;
        }
        for (&(i, j), s) in &self.correction {
            writeln!(f, "corr ({i},{j})={}", s.short())?;
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    /// Upper-left block of the dense product of padded truncations.
    fn window_product(a: &Operator, b: &Operator, n: usize) -> Matrix {
        let pad = n + a.bandwidth() + b.bandwidth() + 2;
        let full = &a.truncate(pad) * &b.truncate(pad);
        full.submatrix(0..n, 0..n)
    }

    #[test]
    fn apply_examples() {
        let s = Operator::shift(Q);
        assert_eq!(s.apply(&FiniteVector::basis(Q, 0)).unwrap(), FiniteVector::basis(Q, 1));
        let v = FiniteVector::from_pairs(Q, [(3, Q.int(2)), (7, Q.int(-1))]).unwrap();
        assert!(Operator::zero(Q).apply(&v).unwrap().is_zero());
        let t = Operator::diagonal(&EPSeq::constant(Q.int(2)))
            .add(&Operator::matrix_unit(Q, 0, 0))
            .unwrap();
        let image = t.apply(&FiniteVector::basis(Q, 0)).unwrap();
        // 20x20 dense truncation oracle
        let dense = t.truncate(20).apply(&FiniteVector::basis(Q, 0).to_dense(20));
        assert_eq!(image.to_dense(20), dense);
        assert_eq!(image, FiniteVector::basis(Q, 0).scale(&Q.int(3)));
    }

    #[test]
    fn ring_examples() {
        let s = Operator::shift(Q);
        let ss = s.mul(&s).unwrap();
        let expected = Operator::new(Q, [(2, EPSeq::constant(Q.one()))], []).unwrap();
        assert_eq!(ss, expected);
        assert_eq!(ss.truncate(30), window_product(&s, &s, 30));
        let a = Operator::new(Q, [(1, EPSeq::from_ints(Q, &[3], &[1, 2]))], [((0, 4), Q.int(5))]).unwrap();
        assert_eq!(a.add(&Operator::zero(Q)).unwrap(), a);
        assert!(Operator::matrix_unit(Q, 0, 0).is_idempotent());
        assert!(!s.is_idempotent());
    }

    #[test]
    fn truncate_examples() {
        let s = Operator::shift(Q);
        assert_eq!(s.truncate(3), Matrix::from_ints(Q, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]));
        let d = Operator::diagonal(&EPSeq::from_ints(Q, &[5], &[7]));
        assert_eq!(d.truncate(3), Matrix::from_ints(Q, &[&[5, 0, 0], &[0, 7, 0], &[0, 0, 7]]));
        let ss = s.mul(&s).unwrap();
        let padded = s.truncate(6).pow(2).submatrix(0..4, 0..4);
        assert_eq!(ss.truncate(4), padded);
    }

    #[test]
    fn canonical_form_absorbs_preperiods() {
        let a = Operator::diagonal(&EPSeq::from_ints(Q, &[1, 2], &[3]));
        let b = Operator::new(
            Q,
            [(0, EPSeq::constant(Q.int(3)))],
            [((0, 0), Q.int(-2)), ((1, 1), Q.int(-1))],
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.corrections().len(), 2);
    }

    #[test]
    fn negative_bands() {
        let left = Operator::new(Q, [(-1, EPSeq::from_ints(Q, &[0], &[1]))], []).unwrap();
        assert_eq!(left.apply(&FiniteVector::basis(Q, 0)).unwrap(), FiniteVector::zero(Q));
        assert_eq!(left.apply(&FiniteVector::basis(Q, 3)).unwrap(), FiniteVector::basis(Q, 2));
        let s = Operator::shift(Q);
        assert_eq!(left.mul(&s).unwrap(), Operator::identity(Q));
        let sl = s.mul(&left).unwrap();
        assert_eq!(sl, Operator::identity(Q).sub(&Operator::matrix_unit(Q, 0, 0)).unwrap());
        assert!(matches!(
            Operator::new(Q, [(-1, EPSeq::constant(Q.one()))], []),
            Err(Error::NegativeIndexLeak { row: -1 })
        ));
    }

    pub(crate) fn arb_operator() -> impl Strategy<Value = Operator> {
        let band = (
            -2i64..3,
            prop::collection::vec(-2i64..3, 0..3),
            prop::collection::vec(-2i64..3, 1..4),
        );
        let corr = ((0usize..6, 0usize..6), -2i64..3);
        (prop::collection::vec(band, 0..3), prop::collection::vec(corr, 0..4)).prop_map(|(bands, corr)| {
            let bands: Vec<(i64, EPSeq)> = bands
                .into_iter()
                .map(|(d, pre, per)| {
                    let s = EPSeq::from_ints(Q, &pre, &per);
                    let s = if d < 0 { s.clip_prefix(d.unsigned_abs() as usize) } else { s };
                    (d, s)
                })
                .collect();
            let corr: Vec<((usize, usize), Scalar)> = corr.into_iter().map(|(ij, c)| (ij, Q.int(c))).collect();
            Operator::new(Q, bands, corr).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn product_matches_window_oracle(a in arb_operator(), b in arb_operator()) {
            let n = 24;
            prop_assert_eq!(a.mul(&b).unwrap().truncate(n), window_product(&a, &b, n));
            prop_assert_eq!(a.add(&b).unwrap().truncate(n), &a.truncate(n) + &b.truncate(n));
        }

        #[test]
        fn display_round_trip(a in arb_operator()) {
            let text = a.to_string();
            prop_assert_eq!(crate::text::parse_operator(&text, None).unwrap(), a);
        }

        #[test]
        fn ring_laws(a in arb_operator(), b in arb_operator(), c in arb_operator()) {
            let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
            let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            let left = a.mul(&b.add(&c).unwrap()).unwrap();
            let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
