use diagkit::fields::{FieldSpec, Polynomial, Scalar};
use diagkit::funcalg::{self, dual_map, spec0 as spec0_of, spec_of_hom, FunctionAlgebra, SetMapRec};
use diagkit::idempotents::{self, SimultaneousOutcome, Summability};
use diagkit::linalg::{self, Diagonalization, SimultaneousDiagonalization};
use diagkit::operators::{self, ClosureVerdict, FiniteFieldDiag, FiniteVector, TorsionReport, DEFAULT_DEPTH};
use diagkit::suite::{self as acceptance, DEFAULT_SEED};
use diagkit::text;
use diagkit::treegen::{min_window, EigenSearch, TreeDecomposition};
use diagkit::{Error, Matrix};
use serde_json::{json, Value};

use crate::{Options, Outcome};

type Res = Result<Outcome, Error>;

fn scalars(v: &[Scalar]) -> Value {
    json!(v.iter().map(Scalar::to_string).collect::<Vec<_>>())
}

fn matrix(m: &Matrix) -> Value {
    json!((0..m.rows()).map(|i| scalars(m.row(i))).collect::<Vec<_>>())
}

fn poly(p: &Polynomial) -> Value {
    json!({ "coefficients": scalars(p.coeffs()), "text": p.to_string() })
}

/// Pulls `field` lines out of a document, falling back to `--field` and
/// then to the rationals.
fn with_field(text: &str, o: &Options) -> Result<(FieldSpec, String), Error> {
    let mut field = o.field()?;
    let mut body = Vec::new();
    for line in text.lines() {
        let content = line.split('#').next().unwrap_or("");
        match content.trim().strip_prefix("field") {
            Some(f) => {
                field = Some(text::parse_field(f)?);
                body.push("");
            }
            None => body.push(content),
        }
    }
    Ok((field.unwrap_or(FieldSpec::Rationals), body.join("\n")))
}

pub fn diag_finite(input: &str, o: &Options) -> Res {
    let (field, body) = with_field(input, o)?;
    let t = text::parse_matrix(&body, field)?;
    Ok(match linalg::diagonalize_finite(&t)? {
        Diagonalization::Diagonalizable { p, d, eigenvalues } => Outcome::Positive(json!({
            "eigenvalues": scalars(&eigenvalues),
            "p": matrix(&p),
            "d": matrix(&d),
        })),
        Diagonalization::Not { mu } => Outcome::Negative(json!({
            "minimal_polynomial": poly(&mu),
            "reason": "the minimal polynomial is not a product of distinct linear factors",
        })),
    })
}

pub fn diag_ffield(input: &str, o: &Options) -> Res {
    let t = text::parse_operator(input, o.field()?)?;
    let q = t.field().characteristic();
    Ok(match operators::finite_field_diag_check(&t)? {
        FiniteFieldDiag::Diagonalizable => Outcome::Positive(json!({ "q": q, "report": "T^q = T" })),
        FiniteFieldDiag::Not { column } => {
            let diff = t.pow(q).sub(&t)?;
            Outcome::Negative(json!({
                "q": q,
                "report": "T^q ≠ T",
                "witness": { "column": column, "difference": diff.column(column).to_string() },
            }))
        }
    })
}

fn vector_or_v0(v: Option<&str>, field: FieldSpec) -> Result<FiniteVector, Error> {
    match v {
        Some(s) => text::parse_vector(s, field),
        None => Ok(FiniteVector::basis(field, 0)),
    }
}

pub fn torsion(input: &str, vector: Option<&str>, o: &Options) -> Res {
    let t = text::parse_operator(input, o.field()?)?;
    let v = vector_or_v0(vector, t.field())?;
    let depth = o.depth.unwrap_or(DEFAULT_DEPTH);
    Ok(match operators::krylov_torsion(&t, &v, depth)? {
        TorsionReport::Torsion { annihilator, depth_used } => Outcome::Positive(json!({
            "vector": v.to_string(),
            "annihilator": poly(&annihilator),
            "depth_used": depth_used,
        })),
        TorsionReport::NonTorsionCertified(c) => Outcome::Negative(json!({
            "vector": v.to_string(),
            "certificate": {
                "iterate": c.iterate,
                "leading_index": c.leading_index,
                "offset": c.offset,
                "revalidated": c.revalidate(&t, &v, 8)?,
            },
        })),
        TorsionReport::Unknown { depth } => Outcome::Unknown(json!({
            "vector": v.to_string(),
            "reason": format!("no annihilator or growth certificate within depth {depth}"),
        })),
    })
}

pub fn closure(input: &str, windows: &[String], o: &Options) -> Res {
    let t = text::parse_operator(input, o.field()?)?;
    let windows = windows
        .iter()
        .map(|w| text::parse_vector_list(w, t.field()))
        .collect::<Result<Vec<_>, _>>()?;
    let depth = o.depth.unwrap_or(DEFAULT_DEPTH);
    Ok(match operators::closure_membership(&t, &windows, depth)? {
        ClosureVerdict::InClosure { semi_decided } => Outcome::Positive(json!({ "semi_decided": semi_decided })),
        ClosureVerdict::NotInClosure(w) => Outcome::Negative(json!({
            "semi_decided": false,
            "witness": {
                "vector": w.vector.to_string(),
                "annihilator": w.annihilator.as_ref().map(poly),
            },
        })),
        ClosureVerdict::Unknown { reason } => Outcome::Unknown(json!({ "semi_decided": true, "reason": reason })),
    })
}

pub fn summable(input: &str, o: &Options) -> Res {
    let fam = text::parse_family(input, o.field()?)?;
    Ok(match idempotents::summability(&fam) {
        Ok(Summability::Summable(sum)) => Outcome::Positive(json!({
            "sum": sum.to_string(),
            "sums_to_one": sum == diagkit::Operator::identity(fam.field()),
        })),
        Ok(Summability::NotSummable { index }) => Outcome::Negative(json!({
            "witness": { "index": index },
            "reason": format!("v_{index} is moved by infinitely many members"),
        })),
        Err(Error::OutsideRepresentation(reason)) => Outcome::Unknown(json!({ "reason": reason })),
        Err(e) => return Err(e),
    })
}

pub fn simdiag(input: &str, o: &Options) -> Res {
    let mut sections = vec![String::new()];
    for line in input.lines() {
        if line.trim() == "---" {
            sections.push(String::new());
        } else {
            let last = sections.last_mut().expect("nonempty");
            last.push_str(line);
            last.push('\n');
        }
    }
    sections.retain(|s| !s.trim().is_empty());
    let is_matrix = sections.first().is_some_and(|s| {
        s.lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with("field"))
            .is_some_and(|l| l.starts_with('['))
    });
    if is_matrix {
        let mats = sections
            .iter()
            .map(|s| with_field(s, o).and_then(|(f, b)| text::parse_matrix(&b, f)))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(match linalg::simultaneous_diagonalize_finite(&mats)? {
            SimultaneousDiagonalization::Joint { p, blocks } => {
                let projections = linalg::joint_eigenprojections(&p, &blocks);
                let blocks: Vec<Value> = blocks
                    .iter()
                    .zip(&projections)
                    .map(|(b, e)| {
                        json!({
                            "eigenvalues": scalars(&b.eigenvalues),
                            "basis": b.space.basis_vectors().iter().map(|v| scalars(v)).collect::<Vec<_>>(),
                            "projection": matrix(e),
                        })
                    })
                    .collect();
                Outcome::Positive(json!({ "p": matrix(&p), "blocks": blocks }))
            }
            SimultaneousDiagonalization::Fail(f) => Outcome::Negative(json!({ "reason": format!("{f:?}") })),
        });
    }
    if sections.len() != 2 {
        return Err(Error::parse(1, 1, format!("expected two families separated by `---`, found {}", sections.len())));
    }
    let field = o.field()?;
    let e = text::parse_family(&sections[0], field)?;
    let f = text::parse_family(&sections[1], field)?;
    Ok(match idempotents::simultaneous_diagonalize_families(&e, &f)? {
        SimultaneousOutcome::Diagonalized { refined } => Outcome::Positive(json!({ "refined": refined.to_string() })),
        SimultaneousOutcome::Fail { reason } => Outcome::Negative(json!({ "reason": reason })),
    })
}

pub fn tree_build(o: &Options) -> Res {
    let depth = o.depth.unwrap_or(2);
    let window = o.truncate.unwrap_or_else(|| min_window(depth));
    let field = o.field()?.unwrap_or(FieldSpec::Rationals);
    let tree = TreeDecomposition::build(field, depth, window, o.seed)?;
    let wire: Value = serde_json::from_str(&tree.to_json()).expect("tree json");
    Ok(Outcome::Positive(json!({ "tree": wire })))
}

/// Accepts a bare tree document or a `tree build` report.
fn tree_text(input: &str) -> String {
    match serde_json::from_str::<Value>(input) {
        Ok(v) if v.get("tree").is_some() => v["tree"].to_string(),
        _ => input.to_string(),
    }
}

pub fn tree_verify(input: &str) -> Res {
    match TreeDecomposition::from_json(&tree_text(input)) {
        Ok(t) => Ok(Outcome::Positive(json!({ "depth": t.depth(), "window": t.window() }))),
        Err(Error::VerifyFailed(msg)) => {
            let (clause, witness) = msg.split_once(": ").unwrap_or((&msg, ""));
            Ok(Outcome::Negative(json!({ "clause": clause, "witness": witness })))
        }
        Err(e) => Err(e),
    }
}

pub fn tree_family(input: &str, level: Option<usize>) -> Res {
    let tree = TreeDecomposition::from_json(&tree_text(input))?;
    let m = level.unwrap_or(tree.depth());
    let fam = tree.idempotent_family(m)?;
    let eigen = if m == 0 { None } else { Some(tree.no_common_eigenvector(m)?) };
    let disc = tree.discreteness_witness()?;
    let members: Vec<Value> = fam
        .labels
        .iter()
        .zip(&fam.projections)
        .map(|(l, p)| json!({ "label": l, "projection": matrix(p) }))
        .collect();
    let eigen_json = match &eigen {
        None => json!(null),
        Some(EigenSearch::Confirmed) => json!("confirmed"),
        Some(EigenSearch::CounterexampleFound(v)) => json!({ "counterexample": v.to_string() }),
    };
    let body = json!({
        "level": m,
        "members": members,
        "no_common_eigenvector": eigen_json,
        "discreteness": { "leaves": disc.leaves, "rank": disc.rank, "injective": disc.injective },
    });
    let ok = disc.injective && !matches!(eigen, Some(EigenSearch::CounterexampleFound(_)));
    Ok(if ok { Outcome::Positive(body) } else { Outcome::Negative(body) })
}

pub fn spec0(input: &str, o: &Options) -> Res {
    let (field, body) = with_field(input, o)?;
    let n: usize = body
        .trim()
        .strip_prefix("points")
        .and_then(|n| n.trim().parse().ok())
        .ok_or_else(|| Error::parse(1, 1, "expected `points N`"))?;
    let ideals: Vec<Value> = spec0_of(&FunctionAlgebra::new(field, n))
        .iter()
        .map(|m| json!({ "point": m.point, "basis": m.basis.iter().map(|v| scalars(v)).collect::<Vec<_>>() }))
        .collect();
    Ok(Outcome::Positive(json!({ "field": field.to_string(), "points": n, "ideals": ideals })))
}

pub fn duality_check(input: &str, o: &Options) -> Res {
    let (field, _) = with_field(input, o)?;
    let maps = input
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| l.starts_with("map"))
        .map(text::parse_set_map)
        .collect::<Result<Vec<SetMapRec>, _>>()?;
    let Some(phi) = maps.first() else {
        return Err(Error::parse(1, 1, "expected a `map [...]` line"));
    };
    let h = dual_map(field, phi);
    let back = spec_of_hom(&h)?;
    let mut checks = vec![
        ("spec_of_hom(dual_map(phi)) = phi", back == *phi),
        ("dual_map(spec_of_hom(h)) = h", dual_map(field, &back) == h),
        (
            "dual_map(id) = id",
            dual_map(field, &SetMapRec::identity(phi.domain())).matrix == Matrix::identity(field, phi.domain()),
        ),
    ];
    if let Some(psi) = maps.get(1) {
        let lhs = dual_map(field, &phi.then(psi)?);
        checks.push(("dual_map(psi o phi) = dual_map(phi) o dual_map(psi)", h.after(&dual_map(field, psi))? == lhs));
    }
    let all = checks.iter().all(|(_, ok)| *ok);
    let body = json!({
        "dual_map": matrix(&h.matrix),
        "checks": checks.iter().map(|(name, ok)| json!({ "law": name, "holds": ok })).collect::<Vec<_>>(),
    });
    Ok(if all { Outcome::Positive(body) } else { Outcome::Negative(body) })
}

pub fn crt(input: &str, o: &Options) -> Res {
    let (field, body) = with_field(input, o)?;
    let f = text::parse_polynomial(&body, field)?;
    Ok(match funcalg::crt_split(&f) {
        Ok(split) => Outcome::Positive(json!({
            "modulus": poly(&split.modulus),
            "roots": scalars(&split.roots),
            "idempotents": split.idempotents.iter().map(poly).collect::<Vec<_>>(),
        })),
        Err(Error::DoesNotSplitSimply(f)) => Outcome::Negative(json!({
            "modulus": poly(&f),
            "reason": "not a product of distinct linear factors",
        })),
        Err(e) => return Err(e),
    })
}

pub fn radical(input: &str, o: &Options) -> Res {
    let a = text::parse_algebra(input, o.field()?)?;
    let j = match funcalg::radical(&a) {
        Ok(j) => j,
        Err(Error::UnsupportedCharCase) => {
            return Ok(Outcome::Unknown(json!({ "reason": Error::UnsupportedCharCase.to_string() })))
        }
        Err(e) => return Err(e),
    };
    let body = json!({
        "dim": a.dim(),
        "radical_dim": j.dim(),
        "radical_basis": j.basis_vectors().iter().map(|v| scalars(v)).collect::<Vec<_>>(),
        "semisimple": j.is_zero(),
    });
    Ok(if j.is_zero() { Outcome::Positive(body) } else { Outcome::Negative(body) })
}

pub fn classical(input: &str, o: &Options) -> Res {
    let (field, body) = with_field(input, o)?;
    let t = text::parse_matrix(&body, field)?;
    let r = funcalg::classical_equivalences(&t)?;
    let body = json!({
        "minimal_polynomial": poly(&r.minimal_polynomial),
        "diagonalizable": r.diagonalizable,
        "algebra_dim": r.algebra_dim,
        "split_semisimple": r.split_semisimple,
        "idempotents": r.idempotents.as_ref().map(|ms| ms.iter().map(matrix).collect::<Vec<_>>()),
        "frobenius_fixed": r.frobenius_fixed,
        "consistent": r.consistent(),
    });
    Ok(if r.diagonalizable { Outcome::Positive(body) } else { Outcome::Negative(body) })
}

pub fn suite(criterion: Option<usize>, o: &Options) -> Res {
    let seed = o.seed.unwrap_or(DEFAULT_SEED);
    let results = match criterion {
        Some(id) if (1..=acceptance::CRITERIA.len()).contains(&id) => vec![acceptance::run_criterion(id, seed)?],
        Some(id) => return Err(Error::parse(1, 1, format!("no criterion {id}; they run from 1 to 9"))),
        None => acceptance::run_all(seed)?,
    };
    let passed = results.iter().all(|r| r.passed);
    let body = json!({ "seed": seed, "criteria": results });
    Ok(if passed { Outcome::Positive(body) } else { Outcome::Negative(body) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(field: Option<&str>) -> Options {
        Options { field: field.map(str::to_string), depth: None, truncate: None, seed: None, expr: None, timing: false }
    }

    #[test]
    fn field_lines_override_the_flag() {
        let (f, body) = with_field("field Fp:5\n[[1]] # one\n", &opts(Some("Q"))).unwrap();
        assert_eq!(f, FieldSpec::Prime(5));
        assert_eq!(body, "\n[[1]] ");
        let (f, _) = with_field("[[1]]", &opts(None)).unwrap();
        assert_eq!(f, FieldSpec::Rationals);
    }

    #[test]
    fn tree_reports_unwrap() {
        assert_eq!(tree_text(r#"{"command":"tree build","tree":{"depth":0}}"#), r#"{"depth":0}"#);
        assert_eq!(tree_text("{\"depth\":0}"), "{\"depth\":0}");
    }

    #[test]
    fn suite_rejects_unknown_criteria() {
        assert!(matches!(suite(Some(0), &opts(None)), Err(Error::Parse { .. })));
    }
}
