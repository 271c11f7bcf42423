use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::scalar::{FieldSpec, Scalar};
use crate::error::{Error, Result};

/// Coefficient bit bound for rational root search. Integer coefficients
/// above this size raise `CapacityExceeded` instead of factoring forever.
pub const DEFAULT_ROOT_BITS: u64 = 64;

/// Dense univariate polynomial, lowest degree first, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(field: FieldSpec, coeffs: Vec<Scalar>) -> Result<Self> {
        for c in &coeffs {
            field.check(c)?;
        }
        Ok(Self::from_trusted(field, coeffs))
    }

    pub(crate) fn from_trusted(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn from_ints(field: FieldSpec, coeffs: &[i64]) -> Self {
        Self::from_trusted(field, coeffs.iter().map(|&c| field.int(c)).collect())
    }

    pub fn zero(field: FieldSpec) -> Self {
        Polynomial {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_trusted(c.field(), vec![c])
    }

    /// The indeterminate `x`.
    pub fn x(field: FieldSpec) -> Self {
        Self::from_trusted(field, vec![field.zero(), field.one()])
    }

    /// `x - c`.
    pub fn linear(c: &Scalar) -> Self {
        let f = c.field();
        Self::from_trusted(f, vec![-c, f.one()])
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(field: FieldSpec, roots: &[Scalar]) -> Self {
        roots
            .iter()
            .fold(Self::one(field), |acc, r| &acc * &Self::linear(r))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_trusted(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, at: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * at) + c)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.int(i as i64))
            .collect();
        Self::from_trusted(self.field, coeffs)
    }

    /// Euclidean division. Panics on a zero divisor; see `checked_div_rem`.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        self.checked_div_rem(divisor).expect("division by zero polynomial")
    }

    pub fn checked_div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        if self.field != divisor.field {
            return Err(Error::FieldMismatch);
        }
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lead_inv = divisor.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] = &rem[k + i] - &(&c * d);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((
            Self::from_trusted(self.field, quot),
            Self::from_trusted(self.field, rem),
        ))
    }

    pub fn rem(&self, m: &Polynomial) -> Polynomial {
        self.div_rem(m).1
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let g = self.gcd(other);
        (&self.div_rem(&g).0 * other).monic()
    }

    pub fn pow(&self, mut e: u64) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Self::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `self^e mod m` by repeated squaring.
    pub fn pow_mod(&self, mut e: u64, m: &Polynomial) -> Polynomial {
        let mut base = self.rem(m);
        let mut acc = Self::one(self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m);
            }
            base = (&base * &base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Horner evaluation in any ring supplied through closures.
    pub fn eval_with<T: Clone>(
        &self,
        at: &T,
        one: T,
        add: impl Fn(&T, &T) -> T,
        mul: impl Fn(&T, &T) -> T,
        scale: impl Fn(&Scalar, &T) -> T,
    ) -> T {
        let zero = scale(&self.field.zero(), &one);
        let mut acc = zero;
        for c in self.coeffs.iter().rev() {
            acc = add(&mul(&acc, at), &scale(c, &one));
        }
        acc
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.field, rhs.field, "polynomial field mismatch");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        Polynomial::from_trusted(self.field, coeffs)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_trusted(self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.field, rhs.field, "polynomial field mismatch");
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Polynomial::from_trusted(self.field, out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.short();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag == "1";
            match i {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{mag}x")?,
                _ if unit => write!(f, "x^{i}")?,
                _ => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Monic product of the distinct irreducible factors of `f`.
///
/// In characteristic `p` a vanishing derivative means `f(x) = g(x^p)`, and
/// since Frobenius fixes `F_p` the `p`-th root of `f` is `g` itself.
pub fn poly_squarefree_part(f: &Polynomial) -> Result<Polynomial> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(radical(&f.monic()))
}

fn radical(f: &Polynomial) -> Polynomial {
    if f.degree() == Some(0) {
        return Polynomial::one(f.field);
    }
    let df = f.derivative();
    if df.is_zero() {
        let p = f.field.characteristic() as usize;
        let root: Vec<Scalar> = f.coeffs.iter().step_by(p).cloned().collect();
        return radical(&Polynomial::from_trusted(f.field, root));
    }
    let c = f.gcd(&df);
    let w = f.div_rem(&c).0.monic();
    if c.degree() == Some(0) {
        return w;
    }
    // factors of multiplicity divisible by p survive only in c
    w.lcm(&radical(&c))
}

/// Outcome of asking whether `f` is a product of distinct linear factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitVerdict {
    Yes(Vec<Scalar>),
    No(NoSplitReason),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NoSplitReason {
    /// `f` has a repeated irreducible factor.
    RepeatedFactor { squarefree_part: Polynomial },
    /// `f` is squarefree but this cofactor has no roots in the field.
    NonLinearFactor { cofactor: Polynomial },
}

impl SplitVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, SplitVerdict::Yes(_))
    }

    pub fn roots(&self) -> Option<&[Scalar]> {
        match self {
            SplitVerdict::Yes(r) => Some(r),
            SplitVerdict::No(_) => None,
        }
    }
}

pub fn poly_splits_simply(f: &Polynomial) -> Result<SplitVerdict> {
    poly_splits_simply_bounded(f, DEFAULT_ROOT_BITS)
}

/// As `poly_splits_simply`, with an explicit coefficient bit bound for the
/// rational root search.
pub fn poly_splits_simply_bounded(f: &Polynomial, max_bits: u64) -> Result<SplitVerdict> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = f.monic();
    let sq = radical(&f);
    if sq != f {
        return Ok(SplitVerdict::No(NoSplitReason::RepeatedFactor {
            squarefree_part: sq,
        }));
    }
    match f.field {
        FieldSpec::Prime(p) => {
            let x = Polynomial::x(f.field);
            let frob = x.pow_mod(p, &f);
            if f.degree() == Some(0) || frob == x.rem(&f) {
                Ok(SplitVerdict::Yes(split_distinct_linear(&f)))
            } else {
                let linear = f.gcd(&(&frob - &x));
                Ok(SplitVerdict::No(NoSplitReason::NonLinearFactor {
                    cofactor: f.div_rem(&linear).0,
                }))
            }
        }
        FieldSpec::Rationals => {
            let roots = rational_roots(&f, max_bits)?;
            let linear = Polynomial::from_roots(f.field, &roots);
            let cofactor = f.div_rem(&linear).0;
            if cofactor.degree() == Some(0) {
                Ok(SplitVerdict::Yes(roots))
            } else {
                Ok(SplitVerdict::No(NoSplitReason::NonLinearFactor { cofactor }))
            }
        }
    }
}

/// Distinct roots of `f` in its field, sorted canonically.
pub fn roots_in_field(f: &Polynomial) -> Result<Vec<Scalar>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sq = radical(&f.monic());
    match f.field {
        FieldSpec::Prime(p) => {
            let x = Polynomial::x(f.field);
            if sq.degree() == Some(0) {
                return Ok(Vec::new());
            }
            let frob = x.pow_mod(p, &sq);
            let linear = sq.gcd(&(&frob - &x));
            Ok(split_distinct_linear(&linear))
        }
        FieldSpec::Rationals => rational_roots(&sq, DEFAULT_ROOT_BITS),
    }
}

/// Roots of a monic squarefree product of linear factors over `F_p`.
fn split_distinct_linear(f: &Polynomial) -> Vec<Scalar> {
    let p = f.field.characteristic();
    let mut roots = Vec::new();
    if p <= 4096 {
        for r in f.field.elements().unwrap() {
            if f.eval(&r).is_zero() {
                roots.push(r);
            }
        }
        return roots;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut stack = vec![f.clone()];
    while let Some(g) = stack.pop() {
        match g.degree() {
            Some(0) | None => {}
            Some(1) => roots.push(-&g.coeff(0)),
            Some(_) => {
                // equal-degree splitting with random shifts (p odd here)
                let shift = Polynomial::from_trusted(
                    g.field,
                    vec![g.field.int(rng.gen_range(0..p as i64)), g.field.one()],
                );
                let h = &shift.pow_mod((p - 1) / 2, &g) - &Polynomial::one(g.field);
                let d = g.gcd(&h);
                match d.degree() {
                    Some(k) if k > 0 && Some(k) < g.degree() => {
                        stack.push(g.div_rem(&d).0.monic());
                        stack.push(d);
                    }
                    _ => stack.push(g),
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Clears denominators: primitive integer coefficients of a rational polynomial.
fn integer_coefficients(f: &Polynomial) -> Vec<BigInt> {
    let den = f
        .coeffs
        .iter()
        .map(|c| c.as_rational().unwrap().denom().clone())
        .fold(BigInt::one(), |acc, d| acc.lcm(&d));
    let ints: Vec<BigInt> = f
        .coeffs
        .iter()
        .map(|c| {
            let q = c.as_rational().unwrap();
            q.numer() * (&den / q.denom())
        })
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|c| c / &g).collect()
    }
}

fn positive_divisors(n: &BigInt, max_bits: u64) -> Result<Vec<BigInt>> {
    let n = n.abs();
    if n.bits() > max_bits {
        return Err(Error::CapacityExceeded(format!(
            "coefficient {n} exceeds {max_bits} bits"
        )));
    }
    let mut m: u128 = (&n).try_into().expect("bounded by max_bits <= 128");
    let mut primes: Vec<(u128, u32)> = Vec::new();
    let mut d: u128 = 2;
    while d * d <= m {
        if m % d == 0 {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            primes.push((d, e));
        }
        d += 1;
    }
    if m > 1 {
        primes.push((m, 1));
    }
    let mut divs: Vec<u128> = vec![1];
    for (p, e) in primes {
        let mut next = Vec::new();
        for &d in &divs {
            let mut pk = 1u128;
            for _ in 0..=e {
                next.push(d * pk);
                pk *= p;
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs.into_iter().map(BigInt::from).collect())
}

/// Distinct rational roots by the rational root theorem with deflation.
fn rational_roots(f: &Polynomial, max_bits: u64) -> Result<Vec<Scalar>> {
    let field = f.field;
    let mut found = BTreeSet::new();
    let mut g = f.monic();
    if g.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    if g.coeff(0).is_zero() {
        found.insert(field.zero());
        while g.coeff(0).is_zero() && g.degree().unwrap() > 0 {
            g = Polynomial::from_trusted(field, g.coeffs[1..].to_vec());
        }
    }
    if g.degree().unwrap() > 0 {
        let ints = integer_coefficients(&g);
        let low = positive_divisors(ints.first().unwrap(), max_bits)?;
        let high = positive_divisors(ints.last().unwrap(), max_bits)?;
        let mut candidates = BTreeSet::new();
        for p in &low {
            for q in &high {
                if p.gcd(q).is_one() {
                    let r = num_rational::BigRational::new(p.clone(), q.clone());
                    candidates.insert(Scalar::Rational(r.clone()));
                    candidates.insert(Scalar::Rational(-r));
                }
            }
        }
        for c in candidates {
            if g.degree().unwrap() == 0 {
                break;
            }
            if g.eval(&c).is_zero() {
                g = g.div_rem(&Polynomial::linear(&c)).0;
                while g.eval(&c).is_zero() && g.degree().unwrap() > 0 {
                    g = g.div_rem(&Polynomial::linear(&c)).0;
                }
                found.insert(c);
            }
        }
    }
    Ok(found.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(FieldSpec::Rationals, c)
    }

    fn fp(p: u64, c: &[i64]) -> Polynomial {
        Polynomial::from_ints(FieldSpec::prime(p).unwrap(), c)
    }

    /// All monic polynomials of degree `d` over `F_p`.
    fn monics(p: u64, d: usize) -> Vec<Polynomial> {
        let field = FieldSpec::prime(p).unwrap();
        let mut out = Vec::new();
        let total = (p as usize).pow(d as u32);
        for mut code in 0..total {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push((code % p as usize) as i64);
                code /= p as usize;
            }
            c.push(1);
            out.push(Polynomial::from_ints(field, &c));
        }
        out
    }

    /// Squarefree part by brute force: the monic divisor of largest degree
    /// that is not divisible by the square of any monic non-constant divisor.
    fn brute_squarefree(f: &Polynomial, p: u64) -> Polynomial {
        let d = f.degree().unwrap();
        let mut best = Polynomial::one(f.field());
        for k in 1..=d {
            for g in monics(p, k) {
                if !g.divides(f) {
                    continue;
                }
                let squareful = (1..=k / 2).any(|j| monics(p, j).iter().any(|h| h.pow(2).divides(&g)));
                if !squareful && g.degree() > best.degree() {
                    best = g;
                }
            }
        }
        best
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(poly_squarefree_part(&q(&[0, 0, 1])).unwrap(), q(&[0, 1]));
        assert_eq!(poly_squarefree_part(&q(&[-1, 0, 1])).unwrap(), q(&[-1, 0, 1]));
        let f = fp(2, &[0, 1, 0, 1]);
        let expected = brute_squarefree(&f, 2);
        assert_eq!(expected, fp(2, &[0, 1, 1]));
        assert_eq!(poly_squarefree_part(&f).unwrap(), expected);
        assert_eq!(
            poly_squarefree_part(&Polynomial::zero(FieldSpec::Rationals)),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn squarefree_pth_power_descent() {
        // (x+1)^6 (x^2+x+2)^3 over F_3
        let a = fp(3, &[1, 1]).pow(6);
        let b = fp(3, &[2, 1, 1]).pow(3);
        let f = &a * &b;
        assert_eq!(poly_squarefree_part(&f).unwrap(), brute_squarefree(&f, 3));
    }

    #[test]
    fn splits_examples() {
        assert_eq!(
            poly_splits_simply(&q(&[-1, 0, 1])).unwrap(),
            SplitVerdict::Yes(vec![FieldSpec::Rationals.int(-1), FieldSpec::Rationals.int(1)])
        );
        // exhaustive over F_2: neither 0 nor 1 is a root of x^2+x+1
        let f = fp(2, &[1, 1, 1]);
        let field = f.field();
        assert!(field.elements().unwrap().iter().all(|r| !f.eval(r).is_zero()));
        assert!(!poly_splits_simply(&f).unwrap().is_yes());
        assert!(!poly_splits_simply(&q(&[1, 0, 1])).unwrap().is_yes());
        assert!(matches!(
            poly_splits_simply(&q(&[0, 0, 1])).unwrap(),
            SplitVerdict::No(NoSplitReason::RepeatedFactor { .. })
        ));
    }

    #[test]
    fn rational_roots_with_fractions() {
        // (2x - 1)(3x + 2)(x - 5)
        let f = &(&q(&[-1, 2]) * &q(&[2, 3])) * &q(&[-5, 1]);
        let field = FieldSpec::Rationals;
        let v = poly_splits_simply(&f).unwrap();
        assert_eq!(
            v.roots().unwrap(),
            &[field.ratio(-2, 3).unwrap(), field.ratio(1, 2).unwrap(), field.int(5)]
        );
    }

    #[test]
    fn capacity_bound() {
        let big = 1i64 << 62;
        let f = q(&[big + 3, 7, 1]);
        assert!(matches!(
            poly_splits_simply_bounded(&f, 32),
            Err(Error::CapacityExceeded(_))
        ));
    }

    #[test]
    fn large_prime_splitting() {
        let field = FieldSpec::prime(1_000_003).unwrap();
        let roots: Vec<Scalar> = [5, 77, 123_456, 999_999].iter().map(|&r| field.int(r)).collect();
        let f = Polynomial::from_roots(field, &roots);
        assert_eq!(poly_splits_simply(&f).unwrap(), SplitVerdict::Yes(roots.clone()));
        let g = &f * &Polynomial::from_ints(field, &[1, 0, 1]);
        let r = roots_in_field(&g).unwrap();
        // x^2 + 1 splits mod 1000003 iff p = 1 mod 4; it is 3 mod 4
        assert_eq!(r, roots);
    }

    #[test]
    fn display() {
        assert_eq!(q(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(q(&[0, -2, 3]).to_string(), "3x^2 - 2x");
    }
}
