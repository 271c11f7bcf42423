use crate::error::{Error, Result};
use crate::fields::{poly_splits_simply, FieldSpec, Polynomial, Scalar};
use crate::linalg::{diagonalize_finite, minimal_polynomial, Matrix};

use super::algebra::{radical, FiniteAlgebra};

/// The isomorphism `K[x]/(f) -> K^n` as the Lagrange idempotents of the
/// roots of `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrtSplit {
    pub modulus: Polynomial,
    pub roots: Vec<Scalar>,
    pub idempotents: Vec<Polynomial>,
}

pub fn crt_split(f: &Polynomial) -> Result<CrtSplit> {
    let field = f.field();
    let roots = match poly_splits_simply(f)?.roots() {
        Some(r) => r.to_vec(),
        None => return Err(Error::DoesNotSplitSimply(f.clone())),
    };
    let modulus = f.monic();
    let idempotents: Vec<Polynomial> = roots
        .iter()
        .enumerate()
        .map(|(i, li)| {
            let mut e = Polynomial::one(field);
            for (j, lj) in roots.iter().enumerate() {
                if i != j {
                    let denom = (li - lj).inv().expect("distinct roots");
                    e = &e * &Polynomial::linear(lj).scale(&denom);
                }
            }
            e.rem(&modulus)
        })
        .collect();
    let x = Polynomial::x(field);
    let mut total = Polynomial::zero(field);
    for (i, e) in idempotents.iter().enumerate() {
        assert_eq!((e * e).rem(&modulus), *e, "e_i^2 = e_i");
        for other in &idempotents[i + 1..] {
            assert!((e * other).rem(&modulus).is_zero(), "e_i e_j = 0");
        }
        assert_eq!((&x * e).rem(&modulus), e.scale(&roots[i]).rem(&modulus), "x e_i = lambda_i e_i");
        total = &total + e;
    }
    assert_eq!(total, Polynomial::one(field).rem(&modulus), "sum of e_i = 1");
    Ok(CrtSplit {
        modulus,
        roots,
        idempotents,
    })
}

/// Three views of one matrix: an eigenbasis, `K[T] = K^n`, and a complete
/// orthogonal family of idempotents in `K[T]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalReport {
    pub minimal_polynomial: Polynomial,
    pub diagonalizable: bool,
    /// `dim K[T]`, which is `deg mu`.
    pub algebra_dim: usize,
    /// `K[T]` has zero radical and `deg mu` roots in the field.
    pub split_semisimple: bool,
    /// `e_i(T)` for the Lagrange idempotents of `mu`, when it splits simply.
    pub idempotents: Option<Vec<Matrix>>,
    /// `T^p = T`, over `F_p` only.
    pub frobenius_fixed: Option<bool>,
}

impl ClassicalReport {
    pub fn consistent(&self) -> bool {
        self.diagonalizable == self.split_semisimple
            && self.diagonalizable == self.idempotents.is_some()
            && self.frobenius_fixed.is_none_or(|f| f == self.diagonalizable)
    }
}

pub fn classical_equivalences(t: &Matrix) -> Result<ClassicalReport> {
    let n = t.require_square()?;
    let field = t.field();
    let mu = minimal_polynomial(t)?;
    let diagonalizable = diagonalize_finite(t)?.is_diagonalizable();

    let (alg, _) = FiniteAlgebra::generated_by(field, n, std::slice::from_ref(t))?;
    let algebra_dim = alg.dim();
    assert_eq!(Some(algebra_dim), mu.degree(), "dim K[T] = deg mu");
    let split_semisimple = radical(&alg)?.is_zero() && {
        let roots = crate::fields::roots_in_field(&mu)?;
        roots.len() == algebra_dim
    };

    let idempotents = match crt_split(&mu) {
        Ok(split) => {
            let mats: Vec<Matrix> = split.idempotents.iter().map(|e| t.eval_poly(e)).collect();
            let mut sum = Matrix::zero(field, n, n);
            for (i, e) in mats.iter().enumerate() {
                assert!(!e.is_zero(), "idempotents of K[T] are nonzero");
                assert_eq!(&(e * e), e, "e(T)^2 = e(T)");
                for (j, f) in mats.iter().enumerate() {
                    if i != j {
                        assert!((e * f).is_zero(), "e(T) f(T) = 0");
                    }
                }
                sum = &sum + e;
            }
            assert_eq!(sum, Matrix::identity(field, n), "idempotents sum to I");
            Some(mats)
        }
        Err(Error::DoesNotSplitSimply(_)) => None,
        Err(e) => return Err(e),
    };

    let frobenius_fixed = match field {
        FieldSpec::Prime(p) => Some(t.pow(p) == *t),
        FieldSpec::Rationals => None,
    };

    let report = ClassicalReport {
        minimal_polynomial: mu,
        diagonalizable,
        algebra_dim,
        split_semisimple,
        idempotents,
        frobenius_fixed,
    };
    assert!(report.consistent(), "the classical conditions agree");
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn crt_examples() {
        let s = crt_split(&Polynomial::from_ints(Q, &[0, -1, 1])).unwrap();
        assert_eq!(s.roots, vec![Q.int(0), Q.int(1)]);
        assert_eq!(s.idempotents, vec![Polynomial::from_ints(Q, &[1, -1]), Polynomial::from_ints(Q, &[0, 1])]);

        let f = Polynomial::from_ints(Q, &[0, -1, 0, 1]);
        let s = crt_split(&f).unwrap();
        assert_eq!(s.idempotents.len(), 3);
        // oracle: e_i evaluated at the roots is the Kronecker delta
        for (i, e) in s.idempotents.iter().enumerate() {
            for (j, r) in s.roots.iter().enumerate() {
                assert_eq!(e.eval(r), if i == j { Q.one() } else { Q.zero() });
            }
        }
        assert!(matches!(
            crt_split(&Polynomial::from_ints(Q, &[0, 0, 1])),
            Err(Error::DoesNotSplitSimply(_))
        ));
        assert!(matches!(
            crt_split(&Polynomial::from_ints(Q, &[-2, 0, 1])),
            Err(Error::DoesNotSplitSimply(_))
        ));
    }

    #[test]
    fn classical_examples() {
        let t = Matrix::from_ints(Q, &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        let r = classical_equivalences(&t).unwrap();
        assert!(r.diagonalizable && r.split_semisimple);
        assert_eq!(r.algebra_dim, 2);
        let ids = r.idempotents.unwrap();
        // oracle: the coordinate projections onto the two eigenspaces
        assert_eq!(ids[0], Matrix::from_ints(Q, &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]));
        assert_eq!(ids[1], Matrix::from_ints(Q, &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1]]));

        let j2 = Matrix::from_ints(Q, &[&[0, 1], &[0, 0]]);
        let r = classical_equivalences(&j2).unwrap();
        assert!(!r.diagonalizable && !r.split_semisimple && r.idempotents.is_none());

        let r = classical_equivalences(&Matrix::identity(Q, 3)).unwrap();
        assert_eq!(r.algebra_dim, 1);
        assert_eq!(r.idempotents.unwrap(), vec![Matrix::identity(Q, 3)]);

        let f3 = FieldSpec::Prime(3);
        let r = classical_equivalences(&Matrix::from_ints(f3, &[&[0, 1], &[0, 0]])).unwrap();
        assert_eq!(r.frobenius_fixed, Some(false));
        // rotation by 90 degrees: x^2 + 1 is irreducible mod 3
        let r = classical_equivalences(&Matrix::from_ints(f3, &[&[0, -1], &[1, 0]])).unwrap();
        assert!(!r.diagonalizable && !r.split_semisimple);
    }

    fn arb_matrix(field: FieldSpec) -> impl Strategy<Value = Matrix> {
        (1usize..=5).prop_flat_map(move |n| {
            proptest::collection::vec(-2i64..3, n * n).prop_map(move |v| {
                Matrix::from_fn(field, n, n, |i, j| field.int(v[i * n + j]))
            })
        })
    }

    /// Mostly diagonalizable samples: conjugates of small diagonal matrices.
    fn arb_conjugated(field: FieldSpec) -> impl Strategy<Value = Matrix> {
        (arb_matrix(field), proptest::collection::vec(-1i64..2, 5)).prop_filter_map("invertible", move |(p, d)| {
            let n = p.rows();
            let inv = p.inverse()?;
            let diag = Matrix::diagonal(field, &d[..n].iter().map(|&x| field.int(x)).collect::<Vec<_>>());
            Some(&(&inv * &diag) * &p)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(250))]

        #[test]
        fn consistent_mod_3(t in prop_oneof![arb_matrix(FieldSpec::Prime(3)), arb_conjugated(FieldSpec::Prime(3))]) {
            prop_assert!(classical_equivalences(&t).unwrap().consistent());
        }

        #[test]
        fn consistent_over_q(t in prop_oneof![arb_matrix(Q), arb_conjugated(Q)]) {
            prop_assert!(classical_equivalences(&t).unwrap().consistent());
        }

        #[test]
        fn crt_identities(roots in proptest::collection::btree_set(-4i64..5, 1..5)) {
            let roots: Vec<Scalar> = roots.into_iter().map(|r| Q.int(r)).collect();
            let s = crt_split(&Polynomial::from_roots(Q, &roots)).unwrap();
            prop_assert_eq!(s.idempotents.len(), roots.len());
        }
    }
}
