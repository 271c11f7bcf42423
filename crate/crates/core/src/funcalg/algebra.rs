use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Polynomial, Scalar};
use crate::linalg::{commutant, matrix_span, unflatten, Matrix, Subspace};

/// A unital associative algebra given by structure constants:
/// `e_i e_j = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    field: FieldSpec,
    table: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
}

impl FiniteAlgebra {
    /// Builds from `(i, j, k, value)` quadruples; missing constants are zero,
    /// repeated ones add up.
    pub fn new(field: FieldSpec, dim: usize, constants: &[(usize, usize, usize, Scalar)], unit: Vec<Scalar>) -> Result<Self> {
        let mut table = vec![vec![vec![field.zero(); dim]; dim]; dim];
        for (i, j, k, c) in constants {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::SizeMismatch(format!("index ({i},{j},{k}) outside dimension {dim}")));
            }
            field.check(c)?;
            table[*i][*j][*k] = &table[*i][*j][*k] + c;
        }
        FiniteAlgebra::from_table(field, table, unit)
    }

    pub fn from_table(field: FieldSpec, table: Vec<Vec<Vec<Scalar>>>, unit: Vec<Scalar>) -> Result<Self> {
        let dim = table.len();
        if unit.len() != dim {
            return Err(Error::SizeMismatch(format!("unit has length {}, expected {dim}", unit.len())));
        }
        for s in &unit {
            field.check(s)?;
        }
        let a = FiniteAlgebra { field, table, unit };
        a.check_laws()?;
        Ok(a)
    }

    fn check_laws(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            let e_i = self.basis_vector(i);
            if self.mul(&self.unit, &e_i) != e_i || self.mul(&e_i, &self.unit) != e_i {
                return Err(Error::NotAssociative(format!("unit law fails on e_{i}")));
            }
            for j in 0..d {
                let ij = &self.table[i][j];
                for k in 0..d {
                    let lhs = self.mul(ij, &self.basis_vector(k));
                    let rhs = self.mul(&e_i, &self.table[j][k]);
                    if lhs != rhs {
                        return Err(Error::NotAssociative(format!("(e_{i} e_{j}) e_{k} != e_{i} (e_{j} e_{k})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// `K[x]/(f)` on the basis `1, x, ..., x^{deg f - 1}`.
    pub fn polynomial_quotient(f: &Polynomial) -> Result<Self> {
        let d = f.degree().ok_or(Error::ZeroPolynomial)?;
        let field = f.field();
        let mono = |k: usize| {
            let mut c = vec![field.zero(); k + 1];
            c[k] = field.one();
            Polynomial::new(field, c).expect("monomial")
        };
        let table = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let r = mono(i + j).rem(f);
                        (0..d).map(|k| r.coeff(k)).collect()
                    })
                    .collect()
            })
            .collect();
        let mut unit = vec![field.zero(); d];
        if d > 0 {
            unit[0] = field.one();
        }
        FiniteAlgebra::from_table(field, table, unit)
    }

    /// `K^n` with pointwise product.
    pub fn split(field: FieldSpec, n: usize) -> Self {
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| if i == j && j == k { field.one() } else { field.zero() }).collect())
                    .collect()
            })
            .collect();
        FiniteAlgebra {
            field,
            table,
            unit: vec![field.one(); n],
        }
    }

    /// `M_n(K)` on matrix units, `E_ab` at index `a n + b`.
    pub fn matrix_algebra(field: FieldSpec, n: usize) -> Self {
        let mats: Vec<Matrix> = (0..n * n)
            .map(|i| Matrix::from_fn(field, n, n, |r, c| if r * n + c == i { field.one() } else { field.zero() }))
            .collect();
        FiniteAlgebra::on_matrix_basis(field, n, &mats).expect("matrix units")
    }

    /// Upper triangular `n x n` matrices on the units `E_ab`, `a <= b`.
    pub fn upper_triangular(field: FieldSpec, n: usize) -> Self {
        let mats: Vec<Matrix> = (0..n)
            .flat_map(|a| (a..n).map(move |b| (a, b)))
            .map(|(a, b)| Matrix::from_fn(field, n, n, |r, c| if (r, c) == (a, b) { field.one() } else { field.zero() }))
            .collect();
        FiniteAlgebra::on_matrix_basis(field, n, &mats).expect("triangular units")
    }

    /// The unital subalgebra of `M_n(K)` generated by `gens`, on a basis
    /// found by closing the span under products.
    pub fn generated_by(field: FieldSpec, n: usize, gens: &[Matrix]) -> Result<(Self, Vec<Matrix>)> {
        let mut basis = vec![Matrix::identity(field, n)];
        let mut span = matrix_span(field, n, &basis);
        for g in gens {
            if g.rows() != n || g.cols() != n {
                return Err(Error::SizeMismatch("generator size".into()));
            }
            if g.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        let mut frontier = 0;
        while frontier < basis.len() {
            let current = basis[frontier].clone();
            for g in gens {
                let p = &current * g;
                let v = flat(&p);
                if !span.contains(&v) {
                    basis.push(p);
                    span = matrix_span(field, n, &basis);
                }
            }
            frontier += 1;
        }
        let alg = FiniteAlgebra::on_matrix_basis(field, n, &basis)?;
        Ok((alg, basis))
    }

    /// Structure constants of a product-closed, linearly independent list of
    /// matrices containing the identity in its span.
    fn on_matrix_basis(field: FieldSpec, n: usize, mats: &[Matrix]) -> Result<Self> {
        let cols: Vec<Vec<Scalar>> = mats.iter().map(flat).collect();
        let m = Matrix::from_columns(field, n * n, &cols);
        let coords = |x: &Matrix| {
            m.solve(&flat(x))
                .ok_or_else(|| Error::NotSubalgebra("product leaves the span".into()))
        };
        let mut table = Vec::with_capacity(mats.len());
        for a in mats {
            let mut row = Vec::with_capacity(mats.len());
            for b in mats {
                row.push(coords(&(a * b))?);
            }
            table.push(row);
        }
        let unit = coords(&Matrix::identity(field, n))?;
        FiniteAlgebra::from_table(field, table, unit)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// Nonzero structure constants as `(i, j, k, value)`.
    pub fn constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (i, row) in self.table.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                for (k, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        (0..self.dim()).map(|k| if k == i { self.field.one() } else { self.field.zero() }).collect()
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = vec![self.field.zero(); d];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&xy * c);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[Scalar], mut e: u64) -> Vec<Scalar> {
        let mut acc = self.unit.clone();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.table[i][j] == self.table[j][i]))
    }

    /// Matrix of `x -> a x`.
    pub fn left_mult(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|j| self.mul(a, &self.basis_vector(j))).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    /// Matrix of `x -> x a`.
    pub fn right_mult(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|j| self.mul(&self.basis_vector(j), a)).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    /// Direct product; the basis of the `i`-th factor follows those of the
    /// earlier ones.
    pub fn product(factors: &[FiniteAlgebra]) -> Result<Self> {
        let field = match factors.first() {
            Some(a) => a.field,
            None => return Err(Error::SizeMismatch("empty product".into())),
        };
        if factors.iter().any(|a| a.field != field) {
            return Err(Error::FieldMismatch);
        }
        let d: usize = factors.iter().map(FiniteAlgebra::dim).sum();
        let mut table = vec![vec![vec![field.zero(); d]; d]; d];
        let mut unit = Vec::with_capacity(d);
        let mut off = 0;
        for a in factors {
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    for k in 0..a.dim() {
                        table[off + i][off + j][off + k] = a.table[i][j][k].clone();
                    }
                }
            }
            unit.extend(a.unit.iter().cloned());
            off += a.dim();
        }
        FiniteAlgebra::from_table(field, table, unit)
    }

    /// `A / I` for a two-sided ideal `I`, on the coordinate vectors outside
    /// the pivot columns of the reduced basis of `I`.
    pub fn quotient(&self, ideal: &Subspace) -> Result<FiniteAlgebra> {
        let d = self.dim();
        if ideal.ambient() != d || ideal.field() != self.field {
            return Err(Error::SizeMismatch("ideal lives elsewhere".into()));
        }
        for v in ideal.basis_vectors() {
            for i in 0..d {
                let e = self.basis_vector(i);
                if !ideal.contains(&self.mul(&v, &e)) || !ideal.contains(&self.mul(&e, &v)) {
                    return Err(Error::NotSubalgebra("not a two-sided ideal".into()));
                }
            }
        }
        let free: Vec<usize> = (0..d).filter(|c| !ideal.pivots().contains(c)).collect();
        let rows = ideal.basis_vectors();
        let reduce = |v: Vec<Scalar>| -> Vec<Scalar> {
            let mut v = v;
            for (r, &p) in rows.iter().zip(ideal.pivots()) {
                let c = v[p].clone();
                if !c.is_zero() {
                    for (x, y) in v.iter_mut().zip(r) {
                        *x = &*x - &(&c * y);
                    }
                }
            }
            free.iter().map(|&f| v[f].clone()).collect()
        };
        let table = free
            .iter()
            .map(|&i| free.iter().map(|&j| reduce(self.table[i][j].clone())).collect())
            .collect();
        FiniteAlgebra::from_table(self.field, table, reduce(self.unit.clone()))
    }
}

fn flat(m: &Matrix) -> Vec<Scalar> {
    m.entries().to_vec()
}

/// The Jacobson radical. Over the rationals this is the kernel of the trace
/// form `(x, y) -> tr L_{xy}`; over `F_p` only commutative algebras are
/// handled, through the kernel of `a -> a^{p^k}` with `p^k >= dim`.
pub fn radical(a: &FiniteAlgebra) -> Result<Subspace> {
    let d = a.dim();
    let field = a.field;
    match field {
        FieldSpec::Rationals => {
            let traces: Vec<Scalar> = (0..d).map(|k| trace(&a.left_mult(&a.basis_vector(k)))).collect();
            let gram = Matrix::from_fn(field, d, d, |i, j| {
                a.table[i][j]
                    .iter()
                    .zip(&traces)
                    .fold(field.zero(), |acc, (c, t)| &acc + &(c * t))
            });
            Subspace::from_vectors(field, d, &gram.transpose().kernel())
        }
        FieldSpec::Prime(p) => {
            if !a.is_commutative() {
                return Err(Error::UnsupportedCharCase);
            }
            let mut q: u64 = 1;
            let mut k = 0;
            while q < d as u64 {
                q = q.saturating_mul(p);
                k += 1;
            }
            // a -> a^p is F_p-linear on a commutative algebra of characteristic p
            let cols: Vec<Vec<Scalar>> = (0..d)
                .map(|i| (0..k).fold(a.basis_vector(i), |v, _| a.pow(&v, p)))
                .collect();
            let frob = Matrix::from_columns(field, d, &cols);
            Subspace::from_vectors(field, d, &frob.kernel())
        }
    }
}

fn trace(m: &Matrix) -> Scalar {
    (0..m.rows()).fold(m.field().zero(), |acc, i| &acc + m.get(i, i))
}

/// Both sides of `J(A_1 x ... x A_n) = J(A_1) x ... x J(A_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalProductReport {
    pub factor_dims: Vec<usize>,
    pub factor_radical_dims: Vec<usize>,
    pub product_radical_dim: usize,
}

pub fn radical_of_product(factors: &[FiniteAlgebra]) -> Result<RadicalProductReport> {
    let prod = FiniteAlgebra::product(factors)?;
    let whole = radical(&prod)?;
    let mut pieces = Vec::new();
    let mut dims = Vec::new();
    let mut off = 0;
    for a in factors {
        let j = radical(a)?;
        dims.push(j.dim());
        for v in j.basis_vectors() {
            let mut w = vec![prod.field.zero(); prod.dim()];
            w[off..off + a.dim()].clone_from_slice(&v);
            pieces.push(w);
        }
        off += a.dim();
    }
    let assembled = Subspace::from_vectors(prod.field, prod.dim(), &pieces)?;
    assert_eq!(whole, assembled, "radical of a product is the product of radicals");
    Ok(RadicalProductReport {
        factor_dims: factors.iter().map(FiniteAlgebra::dim).collect(),
        factor_radical_dims: dims,
        product_radical_dim: whole.dim(),
    })
}

/// Left and right regular representations on the basis `e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularRepresentation {
    pub lambda: Vec<Matrix>,
    pub rho: Vec<Matrix>,
}

pub fn regular_representation(a: &FiniteAlgebra) -> RegularRepresentation {
    let lambda: Vec<Matrix> = (0..a.dim()).map(|i| a.left_mult(&a.basis_vector(i))).collect();
    let rho: Vec<Matrix> = (0..a.dim()).map(|i| a.right_mult(&a.basis_vector(i))).collect();
    for (i, l) in lambda.iter().enumerate() {
        assert_eq!(l.apply(&a.unit), a.basis_vector(i), "lambda is injective");
    }
    RegularRepresentation { lambda, rho }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCommutantReport {
    pub dim: usize,
    pub commutant_dim: usize,
    pub rho_dim: usize,
    pub double_commutant_dim: usize,
    /// `Some(true)` when `A` is commutative and `lambda(A)` is its own
    /// commutant.
    pub maximal_commutative: Option<bool>,
}

/// Checks `lambda(A)' = rho(A)` and `lambda(A)'' = lambda(A)`.
pub fn double_commutant_check(a: &FiniteAlgebra) -> Result<DoubleCommutantReport> {
    let d = a.dim();
    let field = a.field;
    let reg = regular_representation(a);
    let lambda_span = matrix_span(field, d, &reg.lambda);
    let rho_span = matrix_span(field, d, &reg.rho);
    if d == 0 {
        return Ok(DoubleCommutantReport {
            dim: 0,
            commutant_dim: 0,
            rho_dim: 0,
            double_commutant_dim: 0,
            maximal_commutative: Some(true),
        });
    }
    let first = commutant(&reg.lambda)?;
    assert_eq!(first, rho_span, "lambda(A)' = rho(A)");
    let gens: Vec<Matrix> = first.basis_vectors().iter().map(|v| unflatten(field, d, v)).collect();
    let second = commutant(&gens)?;
    assert_eq!(second, lambda_span, "lambda(A)'' = lambda(A)");
    let maximal_commutative = if a.is_commutative() {
        assert_eq!(first, lambda_span, "lambda(A) is maximal commutative");
        Some(true)
    } else {
        None
    };
    Ok(DoubleCommutantReport {
        dim: d,
        commutant_dim: first.dim(),
        rho_dim: rho_span.dim(),
        double_commutant_dim: second.dim(),
        maximal_commutative,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn dual_numbers(field: FieldSpec) -> FiniteAlgebra {
        FiniteAlgebra::polynomial_quotient(&Polynomial::from_ints(field, &[0, 0, 1])).unwrap()
    }

    fn unit_span(field: FieldSpec, d: usize, k: usize) -> Subspace {
        let mut v = vec![field.zero(); d];
        v[k] = field.one();
        Subspace::from_vectors(field, d, &[v]).unwrap()
    }

    /// Brute force: among spans of basis subsets that are two-sided ideals
    /// and nilpotent, the largest.
    fn nilpotent_ideal_oracle(a: &FiniteAlgebra) -> Subspace {
        let d = a.dim();
        let mut best = Subspace::zero(a.field, d);
        for mask in 0u32..(1 << d) {
            let vecs: Vec<Vec<Scalar>> = (0..d).filter(|i| mask >> i & 1 == 1).map(|i| a.basis_vector(i)).collect();
            let s = Subspace::from_vectors(a.field, d, &vecs).unwrap();
            let ideal = vecs.iter().all(|v| {
                (0..d).all(|i| s.contains(&a.mul(v, &a.basis_vector(i))) && s.contains(&a.mul(&a.basis_vector(i), v)))
            });
            // nilpotent: all products of d+1 elements from the span vanish
            let mut layer = vecs.clone();
            for _ in 0..d {
                layer = layer.iter().flat_map(|x| vecs.iter().map(move |y| a.mul(x, y))).collect();
                layer.retain(|v| v.iter().any(|c| !c.is_zero()));
                layer = Subspace::from_vectors(a.field, d, &layer).unwrap().basis_vectors();
            }
            if ideal && layer.is_empty() && s.dim() > best.dim() {
                best = s;
            }
        }
        best
    }

    #[test]
    fn radical_examples() {
        let j = radical(&dual_numbers(Q)).unwrap();
        assert_eq!(j, unit_span(Q, 2, 1));
        assert!(radical(&FiniteAlgebra::split(Q, 2)).unwrap().is_zero());
        let ut = FiniteAlgebra::upper_triangular(Q, 2);
        let j = radical(&ut).unwrap();
        assert_eq!(j.dim(), 1);
        assert_eq!(j, nilpotent_ideal_oracle(&ut));
        // basis E00, E01, E11: the strictly upper unit is index 1
        assert_eq!(j, unit_span(Q, 3, 1));
        assert!(radical(&FiniteAlgebra::matrix_algebra(Q, 2)).unwrap().is_zero());
        let ut3 = FiniteAlgebra::upper_triangular(Q, 3);
        assert_eq!(radical(&ut3).unwrap(), nilpotent_ideal_oracle(&ut3));
    }

    #[test]
    fn radical_in_characteristic_p() {
        let f3 = FieldSpec::Prime(3);
        assert_eq!(radical(&dual_numbers(f3)).unwrap(), unit_span(f3, 2, 1));
        // x^3 - x splits over F_3
        let split = FiniteAlgebra::polynomial_quotient(&Polynomial::from_ints(f3, &[0, -1, 0, 1])).unwrap();
        assert!(radical(&split).unwrap().is_zero());
        // x^3 - 1 = (x - 1)^3 over F_3
        let cube = FiniteAlgebra::polynomial_quotient(&Polynomial::from_ints(f3, &[-1, 0, 0, 1])).unwrap();
        assert_eq!(radical(&cube).unwrap().dim(), 2);
        // x^2 + 1 is irreducible over F_3: a field
        let field9 = FiniteAlgebra::polynomial_quotient(&Polynomial::from_ints(f3, &[1, 0, 1])).unwrap();
        assert!(radical(&field9).unwrap().is_zero());
        assert_eq!(
            radical(&FiniteAlgebra::upper_triangular(f3, 2)),
            Err(Error::UnsupportedCharCase)
        );
    }

    #[test]
    fn non_associative_rejected() {
        // e1 e0 = 0 breaks the right unit law
        let one = Q.one();
        let bad = FiniteAlgebra::new(
            Q,
            2,
            &[(0, 0, 0, one.clone()), (0, 1, 1, one.clone()), (1, 1, 1, one.clone())],
            vec![one.clone(), Q.zero()],
        );
        assert!(matches!(bad, Err(Error::NotAssociative(_))));
        let ok = FiniteAlgebra::new(
            Q,
            2,
            &[(0, 0, 0, one.clone()), (0, 1, 1, one.clone()), (1, 0, 1, one.clone())],
            vec![one, Q.zero()],
        )
        .unwrap();
        assert_eq!(ok, dual_numbers(Q));
    }

    #[test]
    fn products_of_radicals() {
        let q2 = FiniteAlgebra::split(Q, 1);
        let r = radical_of_product(&[q2.clone(), FiniteAlgebra::split(Q, 1)]).unwrap();
        assert_eq!(r.product_radical_dim, 0);
        let r = radical_of_product(&[dual_numbers(Q), q2.clone()]).unwrap();
        assert_eq!((r.product_radical_dim, r.factor_radical_dims.clone()), (1, vec![1, 0]));
        let r = radical_of_product(&[dual_numbers(Q), FiniteAlgebra::upper_triangular(Q, 2), q2]).unwrap();
        assert_eq!(r.product_radical_dim, 2);
        assert_eq!(r.factor_radical_dims.iter().sum::<usize>(), r.product_radical_dim);
    }

    #[test]
    fn truncated_chains_are_levelwise_consistent() {
        let mut factors = Vec::new();
        let mut last = 0;
        for n in 1..=5 {
            factors.push(if n % 2 == 0 { dual_numbers(Q) } else { FiniteAlgebra::upper_triangular(Q, 2) });
            let r = radical_of_product(&factors).unwrap();
            assert_eq!(r.product_radical_dim, last + r.factor_radical_dims[n - 1]);
            last = r.product_radical_dim;
            let prod = FiniteAlgebra::product(&factors).unwrap();
            let quotient = prod.quotient(&radical(&prod).unwrap()).unwrap();
            assert!(radical(&quotient).unwrap().is_zero());
        }
    }

    #[test]
    fn regular_representations() {
        let a = dual_numbers(Q);
        let reg = regular_representation(&a);
        assert_eq!(reg.lambda[1], Matrix::from_ints(Q, &[&[0, 0], &[1, 0]]));
        assert_eq!(reg.lambda[1], reg.rho[1]);
        let rep = double_commutant_check(&a).unwrap();
        assert_eq!((rep.commutant_dim, rep.maximal_commutative), (2, Some(true)));
        let rep = double_commutant_check(&FiniteAlgebra::split(Q, 2)).unwrap();
        assert_eq!(rep.commutant_dim, 2);
        assert!(regular_representation(&FiniteAlgebra::split(Q, 2)).lambda.iter().all(Matrix::is_diagonal));
        let m2 = FiniteAlgebra::matrix_algebra(Q, 2);
        let rep = double_commutant_check(&m2).unwrap();
        assert_eq!((rep.commutant_dim, rep.rho_dim, rep.double_commutant_dim), (4, 4, 4));
        assert_eq!(rep.maximal_commutative, None);
    }

    #[test]
    fn generated_subalgebra() {
        let t = Matrix::from_ints(Q, &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        let (alg, basis) = FiniteAlgebra::generated_by(Q, 3, &[t]).unwrap();
        assert_eq!(alg.dim(), 2);
        assert_eq!(basis.len(), 2);
        assert!(radical(&alg).unwrap().is_zero());
    }

    pub(crate) fn arb_algebra(field: FieldSpec) -> impl Strategy<Value = FiniteAlgebra> {
        let poly = proptest::collection::vec(-2i64..3, 1..4).prop_map(move |mut c| {
            c.push(1);
            FiniteAlgebra::polynomial_quotient(&Polynomial::from_ints(field, &c)).unwrap()
        });
        let fixed = prop_oneof![
            Just(FiniteAlgebra::upper_triangular(field, 2)),
            Just(FiniteAlgebra::split(field, 2)),
            Just(FiniteAlgebra::matrix_algebra(field, 2)),
        ];
        prop_oneof![poly.clone(), fixed, (poly.clone(), poly).prop_map(|(a, b)| FiniteAlgebra::product(&[a, b]).unwrap())]
    }

    proptest! {
        #[test]
        fn quotient_by_radical_is_semisimple(a in arb_algebra(Q)) {
            let j = radical(&a).unwrap();
            let s = a.quotient(&j).unwrap();
            prop_assert_eq!(s.dim(), a.dim() - j.dim());
            prop_assert!(radical(&s).unwrap().is_zero());
        }

        #[test]
        fn quotient_by_radical_mod_3(a in arb_algebra(FieldSpec::Prime(3)).prop_filter("commutative", FiniteAlgebra::is_commutative)) {
            let j = radical(&a).unwrap();
            prop_assert!(radical(&a.quotient(&j).unwrap()).unwrap().is_zero());
        }

        #[test]
        fn radical_is_a_nil_ideal(a in arb_algebra(Q)) {
            let j = radical(&a).unwrap();
            for v in j.basis_vectors() {
                prop_assert!(a.pow(&v, a.dim() as u64).iter().all(Scalar::is_zero));
                for i in 0..a.dim() {
                    prop_assert!(j.contains(&a.mul(&v, &a.basis_vector(i))));
                }
            }
        }

        #[test]
        fn radical_of_products(a in arb_algebra(Q), b in arb_algebra(Q)) {
            let r = radical_of_product(&[a, b]).unwrap();
            prop_assert_eq!(r.product_radical_dim, r.factor_radical_dims.iter().sum::<usize>());
        }
    }
}
