//! Deterministic inputs for the benchmarks.

use diagkit::funcalg::FiniteAlgebra;
use diagkit::{FieldSpec, Matrix, Operator};

/// A banded operator with `width` bands on each side, periodic entries and a
/// few corrections.
pub fn banded(field: FieldSpec, width: i64) -> Operator {
    let mut doc = format!("field {field}\n");
    for d in -width..=width {
        let pre = if d < 0 { vec!["0"; d.unsigned_abs() as usize].join(",") } else { (d + 1).to_string() };
        doc.push_str(&format!("band {d}: pre=[{pre}] per=[1,{},{}]\n", d + 2, 3 - d));
    }
    doc.push_str("corr (0,3)=2\ncorr (4,1)=-1\n");
    diagkit::text::parse_operator(&doc, None).expect("valid operator document")
}

/// Conjugate of diag(0, 1, ..., n-1) by an upper unitriangular matrix.
pub fn diagonalizable(field: FieldSpec, n: usize) -> Matrix {
    let p = Matrix::from_fn(field, n, n, |i, j| if i <= j { field.int((j - i + 1) as i64) } else { field.zero() });
    let p_inv = p.inverse().expect("unitriangular");
    let d = Matrix::from_fn(field, n, n, |i, j| if i == j { field.int(i as i64) } else { field.zero() });
    p.checked_mul(&d).and_then(|m| m.checked_mul(&p_inv)).expect("square")
}

/// Upper triangular n x n matrices: radical of dimension n(n-1)/2.
pub fn triangular_algebra(field: FieldSpec, n: usize) -> FiniteAlgebra {
    FiniteAlgebra::upper_triangular(field, n)
}

/// K[x]/(x^n), commutative with an n-1 dimensional radical.
pub fn truncated_polynomials(field: FieldSpec, n: usize) -> FiniteAlgebra {
    let mut coeffs = vec![field.zero(); n];
    coeffs.push(field.one());
    let f = diagkit::Polynomial::new(field, coeffs).expect("monic");
    FiniteAlgebra::polynomial_quotient(&f).expect("positive degree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use diagkit::funcalg::radical;
    use diagkit::linalg::{diagonalize_finite, Diagonalization};

    #[test]
    fn fixtures_have_the_advertised_shape() {
        let q = FieldSpec::Rationals;
        assert_eq!(banded(q, 2).bandwidth(), 2);
        assert!(matches!(diagonalize_finite(&diagonalizable(q, 5)).unwrap(), Diagonalization::Diagonalizable { .. }));
        assert_eq!(radical(&triangular_algebra(q, 3)).unwrap().dim(), 3);
        assert_eq!(radical(&truncated_polynomials(FieldSpec::Prime(3), 4)).unwrap().dim(), 3);
    }
}
