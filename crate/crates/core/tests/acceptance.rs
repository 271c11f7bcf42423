//! Acceptance run: each criterion is checked twice, once by the library's
//! own seeded suite and once against oracles written here, and reported on
//! one line.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use diagkit::fields::{FieldSpec, Polynomial, Scalar};
use diagkit::funcalg::{classical_equivalences, dual_map, radical, spec_of_hom, SetMapRec};
use diagkit::idempotents::{product_family, summability, IdempotentFamily, Summability};
use diagkit::linalg::{joint_eigenprojections, simultaneous_diagonalize_finite, Matrix, SimultaneousDiagonalization};
use diagkit::operators::{closure_membership, op_ring, ClosureVerdict, Operator, RingOp, DEFAULT_DEPTH};
use diagkit::suite::{self, embedded_jordan, non_summable_example, radical_corpus, DEFAULT_SEED};
use diagkit::treegen::{min_window, TreeDecomposition, Verdict};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Q: FieldSpec = FieldSpec::Rationals;

fn int(s: &Scalar) -> i128 {
    match s.residue() {
        Some(r) => r as i128,
        None => {
            let r = s.as_rational().expect("rational");
            assert!(r.is_integer(), "integer entry expected, found {r}");
            r.to_integer().to_i128().expect("fits")
        }
    }
}

fn dense(m: &Matrix) -> Vec<Vec<i128>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(int).collect()).collect()
}

fn mat_mul(a: &[Vec<i128>], b: &[Vec<i128>], p: Option<i128>) -> Vec<Vec<i128>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut c = vec![vec![0i128; m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            if a[i][k] != 0 {
                for j in 0..m {
                    c[i][j] += a[i][k] * bk[j];
                }
            }
        }
        if let Some(p) = p {
            for x in c[i].iter_mut() {
                *x = x.rem_euclid(p);
            }
        }
    }
    c
}

/// Rank over the rationals by fraction-free elimination.
fn rank_int(mut a: Vec<Vec<i128>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        rank += 1;
    }
    rank
}

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn suite_check(id: usize) -> Result<(), String> {
    let r = suite::run_criterion(id, DEFAULT_SEED).map_err(|e| e.to_string())?;
    ensure(r.passed, || format!("library suite: {} failures, first: {}", r.failures, r.detail))
}

/// Over F_p: `T^p = T` by plain modular arithmetic. Over Q, for integer
/// matrices: every rational eigenvalue is an integer bounded by the row-sum
/// norm, so diagonalizability is `sum_lambda (n - rank(T - lambda)) = n`.
fn criterion_1() -> Check {
    suite_check(1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut cases = 0;
    for field in [Q, FieldSpec::Prime(3), FieldSpec::Prime(5)] {
        for _ in 0..500 {
            let n = rng.gen_range(1..=5);
            let raw: Vec<Vec<i128>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            let t = Matrix::from_fn(field, n, n, |i, j| field.int(raw[i][j] as i64));
            let r = classical_equivalences(&t).map_err(|e| e.to_string())?;
            ensure(r.consistent(), || format!("inconsistent report for {t}"))?;
            let oracle = match field {
                FieldSpec::Prime(p) => {
                    let p = p as i128;
                    let base: Vec<Vec<i128>> = raw.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
                    let mut pow = base.clone();
                    for _ in 1..p {
                        pow = mat_mul(&pow, &base, Some(p));
                    }
                    ensure(r.frobenius_fixed == Some(pow == base), || format!("T^p mismatch for {t}"))?;
                    pow == base
                }
                FieldSpec::Rationals => {
                    let bound = raw.iter().map(|r| r.iter().map(|x| x.abs()).sum::<i128>()).max().unwrap_or(0);
                    let mut geometric = 0;
                    for lambda in -bound..=bound {
                        let shifted: Vec<Vec<i128>> = (0..n)
                            .map(|i| (0..n).map(|j| raw[i][j] - if i == j { lambda } else { 0 }).collect())
                            .collect();
                        geometric += n - rank_int(shifted);
                    }
                    geometric == n
                }
            };
            ensure(r.diagonalizable == oracle, || format!("diagonalizability of {t}: {} vs {oracle}", r.diagonalizable))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} matrices, 0 disagreements"))
}

fn color(pre: &[usize], per: &[usize], j: usize) -> usize {
    if j < pre.len() {
        pre[j]
    } else {
        per[(j - pre.len()) % per.len()]
    }
}

fn diag_window(op: &Operator, w: usize) -> Vec<Scalar> {
    (0..w).map(|j| op.entry(j, j)).collect()
}

/// Raw colorings and the 0/1 indicator vectors of their colors on a window.
fn random_coloring(rng: &mut ChaCha8Rng) -> (Vec<usize>, Vec<usize>) {
    let pre = (0..rng.gen_range(0..3)).map(|_| rng.gen_range(10..14)).collect();
    let per = (0..rng.gen_range(1..4)).map(|_| rng.gen_range(10..14)).collect();
    (pre, per)
}

fn indicators(pre: &[usize], per: &[usize], w: usize) -> BTreeMap<usize, Vec<Scalar>> {
    let mut out: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
    for j in 0..w {
        let c = color(pre, per, j);
        out.entry(c).or_insert_with(|| vec![Q.zero(); w])[j] = Q.one();
    }
    out
}

const W: usize = 36;

fn criterion_2() -> Check {
    suite_check(2)?;
    let example = non_summable_example(Q);
    ensure(
        summability(&example).map_err(|e| e.to_string())? == (Summability::NotSummable { index: 0 }),
        || "example family not flagged at v_0".into(),
    )?;
    // oracle: the first k members all move v_0, for every k
    for k in 1..=20 {
        let moving = example.members(k).iter().filter(|m| !m.column(0).is_zero()).count();
        ensure(moving == k, || format!("only {moving} of the first {k} members move v_0"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for _ in 0..100 {
        let (pre, per) = random_coloring(&mut rng);
        let fam = IdempotentFamily::partition(Q, pre.clone(), per.clone(), &BTreeMap::new()).map_err(|e| e.to_string())?;
        let expected = indicators(&pre, &per, W);
        let members = fam.members(0);
        let got: BTreeSet<Vec<Scalar>> = members.iter().map(|m| diag_window(m, W)).collect();
        ensure(got == expected.values().cloned().collect(), || format!("members of {fam} differ from the coloring"))?;
        let sum = match summability(&fam).map_err(|e| e.to_string())? {
            Summability::Summable(s) => s,
            other => return Err(format!("partition {fam}: {other:?}")),
        };
        ensure(sum.truncate(W) == Matrix::identity(Q, W), || format!("partition {fam} does not sum to 1"))?;
        let chosen: Vec<Operator> = members.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        let mut union = vec![Q.zero(); W];
        for m in &chosen {
            for (u, d) in union.iter_mut().zip(diag_window(m, W)) {
                *u = &*u + &d;
            }
        }
        let sub = IdempotentFamily::explicit(Q, chosen).map_err(|e| e.to_string())?;
        match summability(&sub).map_err(|e| e.to_string())? {
            Summability::Summable(s) => {
                ensure(s.truncate(W) == Matrix::diagonal(Q, &union), || format!("subfamily sum of {fam}"))?;
            }
            other => return Err(format!("subfamily of {fam}: {other:?}")),
        }
    }
    // explicit finite families: coordinate projections of a random basis
    for _ in 0..50 {
        let n = rng.gen_range(1..=4);
        let p = loop {
            let p = suite::random_matrix(&mut rng, Q, n);
            if p.inverse().is_some() {
                break p;
            }
        };
        let pinv = p.inverse().expect("invertible");
        let keep: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
        let members: Vec<Operator> = keep
            .iter()
            .map(|&k| Operator::from_matrix(&(&(&p * &Matrix::from_fn(Q, n, n, |i, j| if i == k && j == k { Q.one() } else { Q.zero() })) * &pinv)))
            .collect();
        let ind: Vec<Scalar> = (0..n).map(|i| if keep.contains(&i) { Q.one() } else { Q.zero() }).collect();
        let expected = &(&p * &Matrix::diagonal(Q, &ind)) * &pinv;
        let fam = IdempotentFamily::explicit(Q, members).map_err(|e| e.to_string())?;
        match summability(&fam).map_err(|e| e.to_string())? {
            Summability::Summable(s) => ensure(s.truncate(n) == expected && s.is_idempotent(), || format!("explicit {fam}"))?,
            other => return Err(format!("explicit {fam}: {other:?}")),
        }
    }
    Ok("example flagged at v_0; 100 partitions, 100 subfamilies, 50 explicit families summable".into())
}

fn criterion_3() -> Check {
    suite_check(3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for case in 0..50 {
        let (pa, qa) = random_coloring(&mut rng);
        let (pb, qb) = random_coloring(&mut rng);
        let e = IdempotentFamily::partition(Q, pa.clone(), qa.clone(), &BTreeMap::new()).map_err(|e| e.to_string())?;
        let f = IdempotentFamily::partition(Q, pb.clone(), qb.clone(), &BTreeMap::new()).map_err(|e| e.to_string())?;
        let (es, fs) = (e.members(0), f.members(0));
        let zero = || vec![Q.zero(); W];
        let add = |a: &[Scalar], b: &[Scalar]| -> Vec<Scalar> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
        let mut total = zero();
        let mut col_sums = vec![zero(); fs.len()];
        let mut nonzero = BTreeSet::new();
        for x in &es {
            let mut row_sum = zero();
            for (j, y) in fs.iter().enumerate() {
                let p = op_ring(x, y, RingOp::Mul).map_err(|e| e.to_string())?;
                // oracle: products of diagonal 0/1 operators multiply pointwise
                let pointwise: Vec<Scalar> = diag_window(x, W).iter().zip(diag_window(y, W)).map(|(a, b)| a * &b).collect();
                ensure(p.truncate(W) == Matrix::diagonal(Q, &pointwise), || format!("pair {case}: E_i F_j"))?;
                row_sum = add(&row_sum, &pointwise);
                col_sums[j] = add(&col_sums[j], &pointwise);
                total = add(&total, &pointwise);
                if pointwise.iter().any(|s| !s.is_zero()) {
                    nonzero.insert(pointwise);
                }
            }
            ensure(row_sum == diag_window(x, W), || format!("pair {case}: sum_j E_i F_j != E_i"))?;
        }
        for (j, y) in fs.iter().enumerate() {
            ensure(col_sums[j] == diag_window(y, W), || format!("pair {case}: sum_i E_i F_j != F_j"))?;
        }
        let sum_e = es.iter().fold(zero(), |acc, x| add(&acc, &diag_window(x, W)));
        let sum_f = fs.iter().fold(zero(), |acc, y| add(&acc, &diag_window(y, W)));
        let prod: Vec<Scalar> = sum_e.iter().zip(&sum_f).map(|(a, b)| a * b).collect();
        ensure(total == prod, || format!("pair {case}: total"))?;
        let refined: BTreeSet<Vec<Scalar>> = product_family(&e, &f)
            .map_err(|e| e.to_string())?
            .members(0)
            .iter()
            .map(|m| diag_window(m, W))
            .collect();
        ensure(refined == nonzero, || format!("pair {case}: product family members"))?;
    }
    Ok("50 pairs: row, column and total identities exact".into())
}

fn criterion_4() -> Check {
    suite_check(4)?;
    let mut summary = Vec::new();
    for n in 0..=4 {
        let tree = TreeDecomposition::build(Q, n, min_window(n), Some(DEFAULT_SEED)).map_err(|e| e.to_string())?;
        ensure(tree.verify() == Verdict::Pass, || format!("depth {n} fails verification"))?;
        // oracle: leaf projections are orthogonal idempotents summing to I
        let fam = tree.idempotent_family(n).map_err(|e| e.to_string())?;
        let w = tree.window();
        let mut sum = Matrix::zero(Q, w, w);
        for (a, p) in fam.projections.iter().enumerate() {
            ensure(&(p * p) == p, || format!("depth {n}: leaf {a} not idempotent"))?;
            for (b, r) in fam.projections.iter().enumerate() {
                ensure(a == b || (p * r).is_zero(), || format!("depth {n}: leaves {a}, {b} not orthogonal"))?;
            }
            sum = &sum + p;
        }
        ensure(sum == Matrix::identity(Q, w), || format!("depth {n}: leaves do not sum to I"))?;
        ensure(fam.projections.len() == 1 << n, || format!("depth {n}: {} leaves", fam.projections.len()))?;
        let rep = tree.discreteness_witness().map_err(|e| e.to_string())?;
        // oracle: the leaf components E_i w are independent mod a large prime,
        // hence over Q; the witness idempotent kills w and has corank 1
        let comps: Vec<Vec<Scalar>> = fam.projections.iter().map(|p| p.apply(tree.w())).collect();
        let rank = rank_mod(&comps);
        ensure(rep.injective && rep.rank == 1 << n && rank == 1 << n, || format!("depth {n}: component rank {rank}"))?;
        let e = &rep.idempotent;
        ensure(
            &(e * e) == e && e.apply(tree.w()).iter().all(Scalar::is_zero) && rank_mod(&e.row_vecs()) == w - 1,
            || format!("depth {n}: witness idempotent"),
        )?;
        summary.push(format!("n={n} M={}", min_window(n)));
    }
    Ok(format!("verified {}", summary.join(", ")))
}

const BIG_P: i128 = 1_000_000_007;

fn inv_mod(a: i128) -> i128 {
    let (mut r, mut e, mut b) = (1i128, BIG_P - 2, a.rem_euclid(BIG_P));
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % BIG_P;
        }
        b = b * b % BIG_P;
        e >>= 1;
    }
    r
}

/// Rank of rational vectors reduced mod a large prime: a lower bound for
/// the rank over Q.
fn rank_mod(vecs: &[Vec<Scalar>]) -> usize {
    let mut rows: Vec<Vec<i128>> = vecs
        .iter()
        .map(|v| {
            v.iter()
                .map(|s| {
                    let r = s.as_rational().expect("rational");
                    let num = (r.numer() % BIG_P as i64).to_i128().expect("reduced");
                    let den = (r.denom() % BIG_P as i64).to_i128().expect("reduced");
                    num.rem_euclid(BIG_P) * inv_mod(den) % BIG_P
                })
                .collect()
        })
        .collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][c]);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c] * inv % BIG_P;
                for k in c..cols {
                    rows[r][k] = (rows[r][k] - f * rows[rank][k]).rem_euclid(BIG_P);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn criterion_5() -> Check {
    suite_check(5)?;
    let s = closure_membership(&Operator::shift(Q), &[], DEFAULT_DEPTH).map_err(|e| e.to_string())?;
    ensure(s == ClosureVerdict::InClosure { semi_decided: false }, || format!("shift over Q: {s:?}"))?;
    let f2 = FieldSpec::Prime(2);
    let shift = Operator::shift(f2);
    let s = closure_membership(&shift, &[], DEFAULT_DEPTH).map_err(|e| e.to_string())?;
    ensure(matches!(s, ClosureVerdict::NotInClosure(_)), || format!("shift over F_2: {s:?}"))?;
    // oracle: S^2 v_0 = v_2 while S v_0 = v_1
    ensure(shift.entry(1, 0).is_one() && shift.entry(2, 0).is_zero(), || "shift entries".into())?;
    let t = embedded_jordan(Q);
    let ClosureVerdict::NotInClosure(w) = closure_membership(&t, &[], DEFAULT_DEPTH).map_err(|e| e.to_string())? else {
        return Err("embedded Jordan block not rejected".into());
    };
    // oracle: (T - 1)^2 kills the witness, T - 1 does not
    let n = 8;
    let tm1 = &t.truncate(n) - &Matrix::identity(Q, n);
    let v = w.vector.to_dense(n);
    let once = tm1.apply(&v);
    let twice = tm1.apply(&once);
    ensure(once.iter().any(|x| !x.is_zero()) && twice.iter().all(Scalar::is_zero), || format!("witness {w:?}"))?;
    ensure(w.annihilator == Some(Polynomial::from_ints(Q, &[1, -2, 1])), || format!("annihilator {:?}", w.annihilator))?;
    Ok("shift/Q in closure (certified), shift/F_2 and Jordan block rejected with verified witness".into())
}

fn all_maps(x: usize, y: usize) -> Vec<Vec<usize>> {
    (0..(y as u32).pow(x as u32) as usize)
        .map(|mut code| {
            (0..x)
                .map(|_| {
                    let d = code % y.max(1);
                    code /= y.max(1);
                    d
                })
                .collect()
        })
        .collect()
}

fn criterion_6() -> Check {
    suite_check(6)?;
    let f2 = FieldSpec::Prime(2);
    let mut checked = 0;
    for x in 0..=4 {
        for y in 0..=4 {
            for phi in all_maps(x, y) {
                let phi_rec = SetMapRec::new(phi.clone(), y).map_err(|e| e.to_string())?;
                let h = dual_map(f2, &phi_rec);
                // oracle: h f = f o phi for every f in F_2^Y
                for code in 0..1u32 << y {
                    let f: Vec<Scalar> = (0..y).map(|b| f2.int((code >> b & 1) as i64)).collect();
                    let direct: Vec<Scalar> = phi.iter().map(|&p| f[p].clone()).collect();
                    ensure(h.apply(&f) == direct, || format!("dual map of {phi:?}"))?;
                }
                ensure(spec_of_hom(&h).map_err(|e| e.to_string())? == phi_rec, || format!("spec of {phi:?}"))?;
                for z in 0..=4 {
                    for psi in all_maps(y, z) {
                        let comp: Vec<usize> = phi.iter().map(|&p| psi[p]).collect();
                        let lhs = dual_map(f2, &SetMapRec::new(comp, z).map_err(|e| e.to_string())?);
                        let rhs = h.after(&dual_map(f2, &SetMapRec::new(psi.clone(), z).map_err(|e| e.to_string())?));
                        ensure(rhs.as_ref() == Ok(&lhs), || format!("composition {phi:?}, {psi:?}"))?;
                        checked += 1;
                    }
                }
            }
            ensure(dual_map(f2, &SetMapRec::identity(x)).matrix == Matrix::identity(f2, x), || "identity".into())?;
        }
    }
    // every unital homomorphism F_2^Y -> F_2^X is dual to a map: enumerate
    // all 0/1 matrices for sizes up to 3
    for x in 0..=3 {
        for y in 0..=3 {
            let mut homs = 0;
            for code in 0..1u32 << (x * y) {
                let m = Matrix::from_fn(f2, x, y, |i, j| f2.int((code >> (i * y + j) & 1) as i64));
                let h = diagkit::funcalg::AlgebraHom { matrix: m };
                if let Ok(phi) = spec_of_hom(&h) {
                    ensure(dual_map(f2, &phi) == h, || format!("hom {code} is not dual to its spec"))?;
                    homs += 1;
                }
            }
            ensure(homs == all_maps(x, y).len(), || format!("{homs} homs from F_2^{y} to F_2^{x}"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    for _ in 0..200 {
        let (x, y, z) = (rng.gen_range(0..=6), rng.gen_range(1..=6), rng.gen_range(1..=6));
        let phi: Vec<usize> = (0..x).map(|_| rng.gen_range(0..y)).collect();
        let psi: Vec<usize> = (0..y).map(|_| rng.gen_range(0..z)).collect();
        let h = dual_map(Q, &SetMapRec::new(phi.clone(), y).map_err(|e| e.to_string())?);
        let f: Vec<Scalar> = (0..z).map(|_| Q.int(rng.gen_range(-9..=9))).collect();
        let direct: Vec<Scalar> = phi.iter().map(|&p| f[psi[p]].clone()).collect();
        let via = h.apply(&dual_map(Q, &SetMapRec::new(psi.clone(), z).map_err(|e| e.to_string())?).apply(&f));
        ensure(via == direct, || format!("Q composition {phi:?}, {psi:?}"))?;
        ensure(spec_of_hom(&h).map(|p| p.map().to_vec()) == Ok(phi.clone()), || format!("Q round trip {phi:?}"))?;
    }
    Ok(format!("{checked} composable F_2 pairs exhaustively, 200 random pairs over Q"))
}

/// Radical dimensions known in closed form: `x^k` contributes `k - 1`,
/// `UT_n` contributes `n(n-1)/2`, fields and `M_2` nothing, and
/// `Q[x]/(f)` the degree of `f` minus that of its squarefree part.
fn expected_radical(name: &str) -> usize {
    name.split(" x ")
        .map(|part| match part {
            "UT2" => 1,
            "UT3" => 3,
            "Q[x]/(x^3-x^2)" => 1,
            "Q[x]/((x^2+1)^2)" => 2,
            p => p
                .strip_prefix("Q[x]/(x^")
                .and_then(|k| k.strip_suffix(')'))
                .and_then(|k| k.parse::<usize>().ok())
                .map_or(0, |k| k - 1),
        })
        .sum()
}

fn criterion_7() -> Check {
    suite_check(7)?;
    let corpus = radical_corpus();
    ensure(corpus.len() == 30, || format!("corpus has {} algebras", corpus.len()))?;
    for (name, a) in &corpus {
        let j = radical(a).map_err(|e| e.to_string())?;
        ensure(j.dim() == expected_radical(name), || format!("{name}: radical dim {}", j.dim()))?;
        // oracle: J is an ideal and every product of dim(A) elements of J vanishes
        let basis = j.basis_vectors();
        let mut layer = basis.clone();
        for _ in 0..a.dim() {
            layer = layer.iter().flat_map(|x| basis.iter().map(|y| a.mul(x, y))).filter(|v| v.iter().any(|c| !c.is_zero())).collect();
            layer.truncate(64);
        }
        ensure(layer.is_empty(), || format!("{name}: radical not nilpotent"))?;
        for v in &basis {
            for i in 0..a.dim() {
                let e = a.basis_vector(i);
                ensure(j.contains(&a.mul(v, &e)) && j.contains(&a.mul(&e, v)), || format!("{name}: not an ideal"))?;
            }
        }
    }
    Ok("30 algebras: radicals match closed forms, J(A/J) = 0, products additive, double commutant holds".into())
}

fn criterion_8() -> Check {
    suite_check(8)?;
    const N: usize = 40;
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    for case in 0..200 {
        let field = if case % 2 == 0 { Q } else { FieldSpec::Prime(7) };
        let (a, b) = (suite::random_operator(&mut rng, field), suite::random_operator(&mut rng, field));
        // entries of B's first N columns live in rows below `k_max`
        let k_max = N + 2 + 8;
        let ad: Vec<Vec<i128>> = (0..N).map(|i| (0..k_max).map(|k| int(&a.entry(i, k))).collect()).collect();
        let bd: Vec<Vec<i128>> = (0..k_max).map(|k| (0..N).map(|j| int(&b.entry(k, j))).collect()).collect();
        ensure((k_max..k_max + 20).all(|k| (0..N).all(|j| b.entry(k, j).is_zero())), || "padding too small".into())?;
        let p = match field {
            FieldSpec::Prime(p) => Some(p as i128),
            FieldSpec::Rationals => None,
        };
        let expected = mat_mul(&ad, &bd, p);
        let got = dense(&op_ring(&a, &b, RingOp::Mul).map_err(|e| e.to_string())?.truncate(N));
        ensure(got == expected, || format!("pair {case}: product differs on the {N}-window"))?;
    }
    Ok("200 pairs agree with padded dense products on 40-windows".into())
}

fn criterion_9() -> Check {
    suite_check(9)?;
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    for case in 0..100 {
        let n = rng.gen_range(2..=5);
        let d: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        let p = loop {
            let p = suite::random_matrix(&mut rng, Q, n);
            if p.inverse().is_some() {
                break p;
            }
        };
        let pinv = p.inverse().expect("invertible");
        let m = &(&p * &Matrix::diagonal(Q, &d.iter().map(|&x| Q.int(x)).collect::<Vec<_>>())) * &pinv;
        let ca: Vec<i64> = (0..3).map(|_| rng.gen_range(-2..=2)).collect();
        let cb: Vec<i64> = (0..3).map(|_| rng.gen_range(-2..=2)).collect();
        let ev = |c: &[i64], x: i64| c[0] + c[1] * x + c[2] * x * x;
        let (a, b) = (m.eval_poly(&Polynomial::from_ints(Q, &ca)), m.eval_poly(&Polynomial::from_ints(Q, &cb)));
        let SimultaneousDiagonalization::Joint { p: basis, blocks } =
            simultaneous_diagonalize_finite(&[a.clone(), b.clone()]).map_err(|e| e.to_string())?
        else {
            return Err(format!("pair {case}: not simultaneously diagonalized"));
        };
        let mut linalg = joint_eigenprojections(&basis, &blocks);
        let spectral = |t: &Matrix| -> Result<IdempotentFamily, String> {
            let mu = diagkit::linalg::minimal_polynomial(t).map_err(|e| e.to_string())?;
            let split = diagkit::funcalg::crt_split(&mu).map_err(|e| e.to_string())?;
            IdempotentFamily::explicit(Q, split.idempotents.iter().map(|e| Operator::from_matrix(&t.eval_poly(e))).collect())
                .map_err(|e| e.to_string())
        };
        let refined = product_family(&spectral(&a)?, &spectral(&b)?).map_err(|e| e.to_string())?;
        let mut families: Vec<Matrix> = refined.members(0).iter().map(|o| o.truncate(n)).collect();
        // oracle: one projection per distinct pair (p(d_i), q(d_i)), of rank
        // equal to its multiplicity, projecting onto P's matching columns
        let mut pairs: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
        for (i, &x) in d.iter().enumerate() {
            pairs.entry((ev(&ca, x), ev(&cb, x))).or_default().push(i);
        }
        let mut oracle: Vec<Matrix> = pairs
            .values()
            .map(|cols| {
                let ind: Vec<Scalar> = (0..n).map(|i| if cols.contains(&i) { Q.one() } else { Q.zero() }).collect();
                &(&p * &Matrix::diagonal(Q, &ind)) * &pinv
            })
            .collect();
        let key = |m: &Matrix| m.entries().to_vec();
        linalg.sort_by_key(key);
        families.sort_by_key(key);
        oracle.sort_by_key(key);
        ensure(linalg == families && families == oracle, || format!("pair {case}: projection sets differ"))?;
    }
    Ok("100 commuting pairs: linalg, idempotent families and oracle agree".into())
}

fn main() -> ExitCode {
    let criteria: [(fn() -> Check, Duration); 9] = [
        (criterion_1, Duration::from_secs(60)),
        (criterion_2, Duration::MAX),
        (criterion_3, Duration::MAX),
        (criterion_4, Duration::from_secs(120)),
        (criterion_5, Duration::MAX),
        (criterion_6, Duration::MAX),
        (criterion_7, Duration::MAX),
        (criterion_8, Duration::MAX),
        (criterion_9, Duration::MAX),
    ];
    let mut failed = 0;
    for (k, (check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|msg| {
            if elapsed > *limit {
                Err(format!("took {elapsed:.1?}, limit {limit:?}"))
            } else {
                Ok(msg)
            }
        });
        let name = suite::CRITERIA[k];
        match result {
            Ok(msg) => println!("criterion {} [{name}]: PASS ({elapsed:.1?}) {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL ({elapsed:.1?}) {msg}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
