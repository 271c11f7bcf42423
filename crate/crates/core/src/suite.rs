//! Seeded end-to-end checks of the library's main claims, one per
//! criterion, with the random generators they use.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::fields::{poly_splits_simply, EPSeq, FieldSpec, Polynomial, Scalar};
use crate::funcalg::{
    classical_equivalences, crt_split, double_commutant_check, dual_map, radical, radical_of_product, spec_of_hom,
    FiniteAlgebra, SetMapRec,
};
use crate::idempotents::{product_family, summability, Affine, IdempotentFamily, Summability, Term};
use crate::linalg::{joint_eigenprojections, simultaneous_diagonalize_finite, Matrix, SimultaneousDiagonalization};
use crate::operators::{closure_membership, op_ring, ClosureVerdict, Operator, RingOp, DEFAULT_DEPTH};
use crate::treegen::{min_window, DiscretenessReport, EigenSearch, TreeDecomposition, Verdict};

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub failures: usize,
    pub detail: String,
}

impl CriterionResult {
    fn from_counts(id: usize, name: &'static str, cases: usize, failures: Vec<String>) -> Self {
        CriterionResult {
            id,
            name,
            passed: failures.is_empty(),
            cases,
            failures: failures.len(),
            detail: failures.into_iter().next().unwrap_or_else(|| "ok".into()),
        }
    }
}

pub const CRITERIA: [&str; 9] = [
    "classical equivalences",
    "summability",
    "product family identities",
    "tree construction",
    "closure membership",
    "duality laws",
    "radical suite",
    "operator ring oracle",
    "simultaneous diagonalization",
];

/// Runs criterion `id` (1 to 9).
pub fn run_criterion(id: usize, seed: u64) -> Result<CriterionResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(id as u64));
    let name = CRITERIA[id - 1];
    let (cases, failures) = match id {
        1 => classical(&mut rng)?,
        2 => summable(&mut rng)?,
        3 => products(&mut rng)?,
        4 => trees(seed)?,
        5 => closure()?,
        6 => duality(&mut rng)?,
        7 => radicals()?,
        8 => ring_oracle(&mut rng)?,
        9 => simultaneous(&mut rng)?,
        _ => panic!("criteria are numbered 1 to 9"),
    };
    Ok(CriterionResult::from_counts(id, name, cases, failures))
}

pub fn run_all(seed: u64) -> Result<Vec<CriterionResult>> {
    (1..=CRITERIA.len()).map(|id| run_criterion(id, seed)).collect()
}

type Outcome = Result<(usize, Vec<String>)>;

pub fn random_matrix(rng: &mut impl Rng, field: FieldSpec, n: usize) -> Matrix {
    let entries: Vec<Vec<Scalar>> = (0..n).map(|_| (0..n).map(|_| field.int(rng.gen_range(-2..=2))).collect()).collect();
    Matrix::from_rows(field, entries).expect("square rows")
}

/// `P D P^-1` for a random invertible `P` and a diagonal `D` with entries
/// in `-1..=2`.
pub fn random_diagonalizable(rng: &mut impl Rng, field: FieldSpec, n: usize) -> Matrix {
    loop {
        let p = random_matrix(rng, field, n);
        if let Some(inv) = p.inverse() {
            let d: Vec<Scalar> = (0..n).map(|_| field.int(rng.gen_range(-1..=2))).collect();
            return &(&p * &Matrix::diagonal(field, &d)) * &inv;
        }
    }
}

/// A coloring with preperiod length `0..3`, period length `1..4` and up to
/// four colors.
pub fn random_partition(rng: &mut impl Rng, field: FieldSpec) -> IdempotentFamily {
    let pre: Vec<usize> = (0..rng.gen_range(0..3)).map(|_| rng.gen_range(1..=4)).collect();
    let per: Vec<usize> = (0..rng.gen_range(1..4)).map(|_| rng.gen_range(1..=4)).collect();
    IdempotentFamily::partition(field, pre, per, &BTreeMap::new()).expect("nonempty period")
}

/// Bands at offsets `-2..=2` with short random preperiods and periods, plus
/// a few corrections.
pub fn random_operator(rng: &mut impl Rng, field: FieldSpec) -> Operator {
    let mut bands = Vec::new();
    for d in -2i64..=2 {
        if rng.gen_bool(0.5) {
            continue;
        }
        let lead = if d < 0 { d.unsigned_abs() as usize } else { 0 };
        let mut pre = vec![field.zero(); lead];
        pre.extend((0..rng.gen_range(0..3)).map(|_| field.int(rng.gen_range(-2..=2))));
        let per: Vec<Scalar> = (0..rng.gen_range(1..3)).map(|_| field.int(rng.gen_range(-2..=2))).collect();
        bands.push((d, EPSeq::new(field, pre, per).expect("nonempty period")));
    }
    let corr: Vec<((usize, usize), Scalar)> = (0..rng.gen_range(0..3))
        .map(|_| ((rng.gen_range(0..6), rng.gen_range(0..6)), field.int(rng.gen_range(-2..=2))))
        .collect();
    Operator::new(field, bands, corr).expect("bands respect the origin")
}

fn classical(rng: &mut ChaCha8Rng) -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for field in [FieldSpec::Rationals, FieldSpec::Prime(3), FieldSpec::Prime(5)] {
        for k in 0..500 {
            let n = rng.gen_range(1..=5);
            let t = if k % 2 == 0 {
                random_matrix(rng, field, n)
            } else {
                random_diagonalizable(rng, field, n)
            };
            let r = classical_equivalences(&t)?;
            cases += 1;
            let frob_ok = match field {
                FieldSpec::Prime(p) => (t.pow(p) == t) == r.diagonalizable,
                FieldSpec::Rationals => true,
            };
            if !r.consistent() || !frob_ok {
                failures.push(format!("over {field}: {t}"));
            }
        }
    }
    Ok((cases, failures))
}

/// `E_i = E_(i,0) + E_(i,i)` for `i >= 1`.
pub fn non_summable_example(field: FieldSpec) -> IdempotentFamily {
    let term = |col: Affine| Term {
        row: Affine { a: 1, b: 0 },
        col,
    };
    IdempotentFamily::pattern(field, 1, vec![term(Affine { a: 0, b: 0 }), term(Affine { a: 1, b: 0 })])
        .expect("orthogonal idempotents")
}

fn summable(rng: &mut ChaCha8Rng) -> Outcome {
    let q = FieldSpec::Rationals;
    let mut failures = Vec::new();
    let mut cases = 1;
    if summability(&non_summable_example(q))? != (Summability::NotSummable { index: 0 }) {
        failures.push("example family not reported at v_0".into());
    }
    for _ in 0..100 {
        let fam = random_partition(rng, q);
        let IdempotentFamily::Partition { coloring, .. } = &fam else { unreachable!() };
        cases += 1;
        match summability(&fam)? {
            Summability::Summable(s) if s == Operator::identity(q) => {}
            other => failures.push(format!("partition {fam}: {other:?}")),
        }
        let colors = coloring.colors();
        let chosen: Vec<usize> = (1..=colors).filter(|_| rng.gen_bool(0.5)).collect();
        let sub = IdempotentFamily::explicit(q, chosen.iter().map(|&c| fam.member(c - 1)).collect())?;
        let indicator = |j: usize| if chosen.contains(&coloring.color_at(j)) { q.one() } else { q.zero() };
        let pre_len = coloring.pre().len();
        let per_len = coloring.per().len();
        let expected = Operator::diagonal(&EPSeq::new(
            q,
            (0..pre_len).map(indicator).collect(),
            (pre_len..pre_len + per_len).map(indicator).collect(),
        )?);
        cases += 1;
        match summability(&sub)? {
            Summability::Summable(s) if s == expected && s.is_idempotent() => {}
            other => failures.push(format!("subfamily {chosen:?} of {fam}: {other:?}")),
        }
    }
    for _ in 0..50 {
        let n = rng.gen_range(1..=4);
        let p = loop {
            let p = random_matrix(rng, q, n);
            if p.inverse().is_some() {
                break p;
            }
        };
        let inv = p.inverse().expect("invertible");
        let groups: Vec<usize> = (0..n).map(|_| rng.gen_range(0..3)).collect();
        let mut members = Vec::new();
        let mut total = Matrix::zero(q, n, n);
        for g in 0..3 {
            let d: Vec<Scalar> = groups.iter().map(|&x| if x == g { q.one() } else { q.zero() }).collect();
            let e = &(&p * &Matrix::diagonal(q, &d)) * &inv;
            if !e.is_zero() {
                total = &total + &e;
                members.push(Operator::from_matrix(&e));
            }
        }
        let fam = IdempotentFamily::explicit(q, members)?;
        cases += 1;
        match summability(&fam)? {
            Summability::Summable(s) if s == Operator::from_matrix(&total) && s.is_idempotent() => {}
            other => failures.push(format!("explicit family {fam}: {other:?}")),
        }
    }
    Ok((cases, failures))
}

fn products(rng: &mut ChaCha8Rng) -> Outcome {
    let q = FieldSpec::Rationals;
    let mut failures = Vec::new();
    for case in 0..50 {
        let (e, f) = (random_partition(rng, q), random_partition(rng, q));
        let (es, fs) = (e.members(0), f.members(0));
        let sum = |ops: &[Operator]| -> Result<Operator> {
            ops.iter().try_fold(Operator::zero(q), |acc, o| acc.add(o))
        };
        let mut grid = Vec::new();
        for x in &es {
            let mut row = Vec::new();
            for y in &fs {
                row.push(op_ring(x, y, RingOp::Mul)?);
            }
            grid.push(row);
        }
        let rows_ok = es.iter().zip(&grid).all(|(x, row)| sum(row).as_ref() == Ok(x));
        let cols_ok = (0..fs.len()).all(|j| {
            let col: Vec<Operator> = grid.iter().map(|r| r[j].clone()).collect();
            sum(&col).as_ref() == Ok(&fs[j])
        });
        let all: Vec<Operator> = grid.concat();
        let total_ok = sum(&all)? == sum(&es)?.mul(&sum(&fs)?)?;
        let nonzero: Vec<Operator> = all.into_iter().filter(|o| !o.is_zero()).collect();
        let refined = product_family(&e, &f)?.members(0);
        let family_ok = refined.len() == nonzero.len() && refined.iter().all(|m| nonzero.contains(m));
        if !(rows_ok && cols_ok && total_ok && family_ok) {
            failures.push(format!("pair {case}: rows {rows_ok} cols {cols_ok} total {total_ok} family {family_ok}"));
        }
    }
    Ok((50, failures))
}

fn trees(seed: u64) -> Outcome {
    let q = FieldSpec::Rationals;
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 0..=4 {
        let tree = TreeDecomposition::build(q, n, min_window(n), Some(seed))?;
        cases += 1;
        if let Verdict::Fail { clause, witness } = tree.verify() {
            failures.push(format!("depth {n}: clause {clause} fails at {witness}"));
        }
        for m in 1..=n {
            cases += 1;
            if let EigenSearch::CounterexampleFound(v) = tree.no_common_eigenvector(m)? {
                failures.push(format!("depth {n}, level {m}: common eigenvector {v}"));
            }
        }
        cases += 1;
        let DiscretenessReport { rank, injective, .. } = tree.discreteness_witness()?;
        if !injective || rank != 1 << n {
            failures.push(format!("depth {n}: rank {rank}, injective {injective}"));
        }
    }
    Ok((cases, failures))
}

/// `I + E_(1,0)`: a 2x2 Jordan block for the eigenvalue 1 inside the
/// identity.
pub fn embedded_jordan(field: FieldSpec) -> Operator {
    Operator::identity(field)
        .add(&Operator::matrix_unit(field, 1, 0))
        .expect("same field")
}

fn closure() -> Outcome {
    let q = FieldSpec::Rationals;
    let mut failures = Vec::new();
    let shift_q = closure_membership(&Operator::shift(q), &[], DEFAULT_DEPTH)?;
    if shift_q != (ClosureVerdict::InClosure { semi_decided: false }) {
        failures.push(format!("shift over Q: {shift_q:?}"));
    }
    let shift_f2 = closure_membership(&Operator::shift(FieldSpec::Prime(2)), &[], DEFAULT_DEPTH)?;
    if !matches!(shift_f2, ClosureVerdict::NotInClosure(_)) {
        failures.push(format!("shift over F_2: {shift_f2:?}"));
    }
    let t = embedded_jordan(q);
    match closure_membership(&t, &[], DEFAULT_DEPTH)? {
        ClosureVerdict::NotInClosure(w) => {
            let ok = match &w.annihilator {
                Some(ann) => {
                    let sq = crate::fields::poly_squarefree_part(ann)?;
                    t.apply_poly(ann, &w.vector)?.is_zero()
                        && !t.apply_poly(&sq, &w.vector)?.is_zero()
                        && !poly_splits_simply(ann)?.is_yes()
                }
                None => false,
            };
            if !ok {
                failures.push(format!("Jordan witness does not verify: {w:?}"));
            }
        }
        other => failures.push(format!("embedded Jordan block: {other:?}")),
    }
    Ok((3, failures))
}

fn duality(rng: &mut ChaCha8Rng) -> Outcome {
    let f2 = FieldSpec::Prime(2);
    let mut failures = Vec::new();
    let mut cases = 0;
    let maps: Vec<Vec<Vec<Vec<usize>>>> = (0..=4).map(|x| (0..=4).map(|y| all_maps(x, y)).collect()).collect();
    for x in 0..=4 {
        cases += 1;
        if dual_map(f2, &SetMapRec::identity(x)).matrix != Matrix::identity(f2, x) {
            failures.push(format!("identity law on {x} points"));
        }
        for y in 0..=4 {
            for phi in &maps[x][y] {
                let phi = SetMapRec::new(phi.clone(), y)?;
                let h = dual_map(f2, &phi);
                cases += 1;
                let back = spec_of_hom(&h)?;
                if back != phi || dual_map(f2, &back) != h {
                    failures.push(format!("round trip fails for {:?}", phi.map()));
                }
                for z in 0..=4 {
                    for psi in &maps[y][z] {
                        let psi = SetMapRec::new(psi.clone(), z)?;
                        cases += 1;
                        if dual_map(f2, &phi.then(&psi)?) != h.after(&dual_map(f2, &psi))? {
                            failures.push(format!("composition fails for {:?} then {:?}", phi.map(), psi.map()));
                        }
                    }
                }
            }
        }
    }
    let q = FieldSpec::Rationals;
    for _ in 0..200 {
        let (x, y, z) = (rng.gen_range(0..=6), rng.gen_range(1..=6), rng.gen_range(1..=6));
        let phi = SetMapRec::new((0..x).map(|_| rng.gen_range(0..y)).collect(), y)?;
        let psi = SetMapRec::new((0..y).map(|_| rng.gen_range(0..z)).collect(), z)?;
        cases += 1;
        let h = dual_map(q, &phi);
        let round = spec_of_hom(&h)? == phi && dual_map(q, &spec_of_hom(&h)?) == h;
        let comp = dual_map(q, &phi.then(&psi)?) == h.after(&dual_map(q, &psi))?;
        if !(round && comp) {
            failures.push(format!("random pair {:?}, {:?}", phi.map(), psi.map()));
        }
    }
    Ok((cases, failures))
}

fn all_maps(x: usize, y: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..x {
        out = out
            .into_iter()
            .flat_map(|m| {
                (0..y).map(move |v| {
                    let mut m = m.clone();
                    m.push(v);
                    m
                })
            })
            .collect();
    }
    out
}

/// Thirty algebras over the rationals: fields, truncated polynomial rings,
/// triangular and full matrix algebras, and products of these.
pub fn radical_corpus() -> Vec<(String, FiniteAlgebra)> {
    let q = FieldSpec::Rationals;
    let quo = |c: &[i64]| FiniteAlgebra::polynomial_quotient(&Polynomial::from_ints(q, c)).expect("nonzero");
    let trunc = |k: usize| {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        quo(&c)
    };
    let mut out: Vec<(String, FiniteAlgebra)> = vec![
        ("Q".into(), FiniteAlgebra::split(q, 1)),
        ("Q[x]/(x^2-2)".into(), quo(&[-2, 0, 1])),
        ("Q[x]/(x^2+1)".into(), quo(&[1, 0, 1])),
        ("Q[x]/(x^3-2)".into(), quo(&[-2, 0, 0, 1])),
    ];
    for k in 2..=7 {
        out.push((format!("Q[x]/(x^{k})"), trunc(k)));
    }
    out.extend([
        ("UT2".into(), FiniteAlgebra::upper_triangular(q, 2)),
        ("UT3".into(), FiniteAlgebra::upper_triangular(q, 3)),
        ("M2".into(), FiniteAlgebra::matrix_algebra(q, 2)),
        ("Q^2".into(), FiniteAlgebra::split(q, 2)),
        ("Q^3".into(), FiniteAlgebra::split(q, 3)),
        ("Q[x]/(x^3-x)".into(), quo(&[0, -1, 0, 1])),
        ("Q[x]/(x^3-x^2)".into(), quo(&[0, 0, -1, 1])),
        ("Q[x]/((x^2+1)^2)".into(), quo(&[1, 0, 2, 0, 1])),
        ("Q[x]/(x^3-1)".into(), quo(&[-1, 0, 0, 1])),
    ]);
    let by_name = |name: &str, list: &[(String, FiniteAlgebra)]| {
        list.iter().find(|(n, _)| n == name).expect("corpus member").1.clone()
    };
    let products: [&[&str]; 11] = [
        &["Q[x]/(x^2)", "Q"],
        &["UT2", "M2"],
        &["Q[x]/(x^3)", "UT2"],
        &["M2", "Q"],
        &["Q", "Q", "Q[x]/(x^2)"],
        &["Q[x]/(x^2+1)", "Q[x]/(x^2)"],
        &["UT3", "Q"],
        &["Q[x]/(x^2)", "Q[x]/(x^3)"],
        &["M2", "M2"],
        &["UT2", "UT2"],
        &["Q[x]/(x^3-1)", "Q[x]/(x^3-x^2)"],
    ];
    for names in products {
        let factors: Vec<FiniteAlgebra> = names.iter().map(|n| by_name(n, &out)).collect();
        out.push((names.join(" x "), FiniteAlgebra::product(&factors).expect("same field")));
    }
    out
}

fn radicals() -> Outcome {
    let corpus = radical_corpus();
    let mut failures = Vec::new();
    let mut cases = 0;
    for (name, a) in &corpus {
        cases += 1;
        let j = radical(a)?;
        let s = a.quotient(&j)?;
        if !radical(&s)?.is_zero() {
            failures.push(format!("{name}: J(A/J) != 0"));
        }
        let rep = double_commutant_check(a)?;
        if rep.double_commutant_dim != a.dim() || rep.commutant_dim != rep.rho_dim {
            failures.push(format!("{name}: double commutant {rep:?}"));
        }
    }
    for pair in corpus.windows(2) {
        cases += 1;
        let r = radical_of_product(&[pair[0].1.clone(), pair[1].1.clone()])?;
        if r.product_radical_dim != r.factor_radical_dims.iter().sum::<usize>() {
            failures.push(format!("{} x {}: {r:?}", pair[0].0, pair[1].0));
        }
    }
    Ok((cases, failures))
}

fn ring_oracle(rng: &mut ChaCha8Rng) -> Outcome {
    const WINDOW: usize = 40;
    let mut failures = Vec::new();
    for case in 0..200 {
        let field = if case % 2 == 0 { FieldSpec::Rationals } else { FieldSpec::Prime(5) };
        let (a, b) = (random_operator(rng, field), random_operator(rng, field));
        // rows of B's first WINDOW columns end before `pad`
        let pad = (WINDOW + b.bandwidth()).max(b.max_correction_index().map_or(0, |c| c + 1));
        let dense = &a.truncate(pad) * &b.truncate(pad);
        let expected = dense.submatrix(0..WINDOW, 0..WINDOW);
        let got = op_ring(&a, &b, RingOp::Mul)?.truncate(WINDOW);
        if got != expected {
            failures.push(format!("pair {case}"));
        }
    }
    Ok((200, failures))
}

fn spectral_projections(t: &Matrix) -> Result<Vec<Matrix>> {
    let mu = crate::linalg::minimal_polynomial(t)?;
    Ok(crt_split(&mu)?.idempotents.iter().map(|e| t.eval_poly(e)).collect())
}

fn simultaneous(rng: &mut ChaCha8Rng) -> Outcome {
    let q = FieldSpec::Rationals;
    let mut failures = Vec::new();
    for case in 0..100 {
        let n = rng.gen_range(2..=5);
        let m = random_diagonalizable(rng, q, n);
        let poly = |rng: &mut ChaCha8Rng| {
            Polynomial::from_ints(q, &(0..3).map(|_| rng.gen_range(-2..=2)).collect::<Vec<_>>())
        };
        let (a, b) = (m.eval_poly(&poly(rng)), m.eval_poly(&poly(rng)));
        let SimultaneousDiagonalization::Joint { p, blocks } = simultaneous_diagonalize_finite(&[a.clone(), b.clone()])? else {
            failures.push(format!("pair {case}: linalg refused"));
            continue;
        };
        let mut from_linalg = joint_eigenprojections(&p, &blocks);
        let family = |t: &Matrix| -> Result<IdempotentFamily> {
            IdempotentFamily::explicit(q, spectral_projections(t)?.iter().map(Operator::from_matrix).collect())
        };
        let refined = product_family(&family(&a)?, &family(&b)?)?;
        let mut from_families: Vec<Matrix> = refined.members(0).iter().map(|o| o.truncate(n)).collect();
        let key = |m: &Matrix| m.entries().to_vec();
        from_linalg.sort_by_key(key);
        from_families.sort_by_key(key);
        if from_linalg != from_families {
            failures.push(format!("pair {case}: {} vs {} projections", from_linalg.len(), from_families.len()));
        }
    }
    Ok((100, failures))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_has_thirty_algebras() {
        assert_eq!(radical_corpus().len(), 30);
    }

    #[test]
    fn all_maps_counts() {
        assert_eq!(all_maps(3, 2).len(), 8);
        assert_eq!(all_maps(0, 0).len(), 1);
        assert!(all_maps(2, 0).is_empty());
    }

    #[test]
    fn quick_criteria_pass() {
        for id in [2, 3, 5, 8] {
            let r = run_criterion(id, DEFAULT_SEED).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }
}
