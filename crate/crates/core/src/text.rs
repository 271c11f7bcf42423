//! Hand-authorable line formats for the objects the CLI consumes.
//!
//! Scalars are written `a`, `a/b` or `r mod p`; lists as `[x,y,...]`;
//! matrices as row lists; eventually periodic sequences as
//! `pre=[...];per=[...]`. Operators are line documents:
//!
//! ```text
//! field Q
//! band 1: pre=[] per=[1]
//! corr (0,1)=1
//! ```

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fields::{EPSeq, FieldSpec, Polynomial, Scalar};
use crate::funcalg::{FiniteAlgebra, SetMapRec};
use crate::idempotents::{Affine, IdempotentFamily, Term};
use crate::linalg::Matrix;
use crate::operators::{FiniteVector, Operator};

fn err(line: usize, column: usize, msg: impl Into<String>) -> Error {
    Error::parse(line, column, msg)
}

/// Re-anchors errors from nested parsers to a document position.
fn at<T>(line: usize, column: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { line: 0, message, .. } => err(line, column, message),
        Error::Parse { line: l, column: c, message } if line > 0 && l == 1 => err(line, column + c.saturating_sub(1), message),
        other => other,
    })
}

pub fn parse_field(s: &str) -> Result<FieldSpec> {
    let t = s.trim();
    match t {
        "Q" | "QQ" | "Rationals" => Ok(FieldSpec::Rationals),
        _ => {
            let digits = t
                .strip_prefix("Fp:")
                .or_else(|| t.strip_prefix("F_"))
                .or_else(|| t.strip_prefix("GF"))
                .or_else(|| t.strip_prefix('F'))
                .ok_or_else(|| err(1, 1, format!("unknown field `{t}` (use Q or Fp:<p>)")))?;
            let p: u64 = digits
                .trim_start_matches(['(', ':'])
                .trim_end_matches(')')
                .parse()
                .map_err(|_| err(1, 1, format!("bad modulus in `{t}`")))?;
            FieldSpec::prime(p)
        }
    }
}

/// Splits at `sep` occurring outside brackets, braces and parentheses,
/// returning each piece with its byte offset.
pub(crate) fn split_top(s: &str, sep: char) -> Vec<(usize, &str)> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, c) in s.char_indices() {
        match c {
            '[' | '{' | '(' => depth += 1,
            ']' | '}' | ')' => depth -= 1,
            _ if c == sep && depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

fn strip_delims<'a>(s: &'a str, open: char, close: char) -> Result<&'a str> {
    let t = s.trim();
    t.strip_prefix(open)
        .and_then(|r| r.strip_suffix(close))
        .ok_or_else(|| err(1, 1, format!("expected `{open}...{close}`, found `{t}`")))
}

pub fn parse_scalar(s: &str, field: FieldSpec) -> Result<Scalar> {
    Scalar::parse(s, field).map_err(|e| match e {
        Error::Parse { message, .. } => err(1, 1, message),
        other => other,
    })
}

pub fn parse_scalar_list(s: &str, field: FieldSpec) -> Result<Vec<Scalar>> {
    let inner = strip_delims(s, '[', ']')?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let lead = s.len() - s.trim_start().len() + 1;
    split_top(inner, ',')
        .into_iter()
        .map(|(off, piece)| at(1, lead + off + 1, parse_scalar(piece, field)))
        .collect()
}

pub fn format_scalar_list(v: &[Scalar]) -> String {
    format!("[{}]", v.iter().map(Scalar::short).collect::<Vec<_>>().join(","))
}

pub fn parse_matrix(s: &str, field: FieldSpec) -> Result<Matrix> {
    let inner = strip_delims(s, '[', ']')?;
    if inner.trim().is_empty() {
        return Ok(Matrix::zero(field, 0, 0));
    }
    let base = inner.as_ptr() as usize - s.as_ptr() as usize;
    let rows = split_top(inner, ',')
        .into_iter()
        .map(|(off, r)| {
            parse_scalar_list(r, field).map_err(|e| match e {
                Error::Parse { line: 1, column, message } => {
                    let (line, column) = position(s, base + off + column - 1);
                    err(line, column, message)
                }
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, rows)
}

/// One-based line and column of a byte offset.
fn position(s: &str, offset: usize) -> (usize, usize) {
    let before = &s[..offset.min(s.len())];
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    (before.matches('\n').count() + 1, before[line_start..].chars().count() + 1)
}

/// Coefficient list, lowest degree first.
pub fn parse_polynomial(s: &str, field: FieldSpec) -> Result<Polynomial> {
    Polynomial::new(field, parse_scalar_list(s, field)?)
}

pub fn format_polynomial(p: &Polynomial) -> String {
    format_scalar_list(p.coeffs())
}

/// `pre=[...];per=[...]` (a space may replace the semicolon).
pub fn parse_epseq(s: &str, field: FieldSpec) -> Result<EPSeq> {
    let t = s.trim();
    let rest = t
        .strip_prefix("pre=")
        .ok_or_else(|| err(1, 1, format!("expected `pre=[...]` in `{t}`")))?;
    let close = rest.find(']').ok_or_else(|| err(1, 5, "unterminated preperiod"))?;
    let pre = parse_scalar_list(&rest[..=close], field)?;
    let after = rest[close + 1..].trim_start_matches([';', ' ', '\t']);
    let per_text = after
        .strip_prefix("per=")
        .ok_or_else(|| err(1, close + 6, format!("expected `per=[...]` in `{t}`")))?;
    let per = parse_scalar_list(per_text, field)?;
    EPSeq::new(field, pre, per).map_err(|e| match e {
        Error::Parse { message, .. } => err(1, 1, message),
        other => other,
    })
}

fn statements(text: &str) -> Vec<(usize, usize, String)> {
    // (line, column, statement); `;` separates statements on one line
    // unless it sits between `pre=[...]` and `per=[...]`.
    let mut out: Vec<(usize, usize, String)> = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line_no = ln + 1;
        let content = line.split('#').next().unwrap_or("");
        for (off, piece) in split_top(content, ';') {
            let trimmed = piece.trim();
            if trimmed.is_empty() {
                continue;
            }
            let col = off + piece.len() - piece.trim_start().len() + 1;
            if trimmed.starts_with("per=") {
                if let Some(last) = out.last_mut() {
                    last.2.push(' ');
                    last.2.push_str(trimmed);
                    continue;
                }
            }
            out.push((line_no, col, trimmed.to_string()));
        }
    }
    out
}

/// Parses an operator document. `default_field` applies when the document
/// has no `field` line.
pub fn parse_operator(text: &str, default_field: Option<FieldSpec>) -> Result<Operator> {
    let stmts = statements(text);
    let mut field = default_field;
    let mut bands = Vec::new();
    let mut corr = Vec::new();
    for (line, col, stmt) in stmts {
        if let Some(f) = stmt.strip_prefix("field") {
            field = Some(at(line, col, parse_field(f))?);
            continue;
        }
        let field = field.ok_or_else(|| err(line, col, "missing `field` line"))?;
        if let Some(rest) = stmt.strip_prefix("band") {
            let (d, seq) = rest
                .split_once(':')
                .ok_or_else(|| err(line, col, "expected `band d: pre=[...] per=[...]`"))?;
            let d: i64 = d.trim().parse().map_err(|_| err(line, col + 5, "bad band offset"))?;
            let seq = at(line, col + 5, parse_epseq(seq, field))?;
            bands.push((d, seq));
        } else if let Some(rest) = stmt.strip_prefix("corr") {
            let (pos, val) = rest
                .split_once('=')
                .ok_or_else(|| err(line, col, "expected `corr (i,j)=s`"))?;
            let pos = strip_delims(pos, '(', ')').map_err(|_| err(line, col + 5, "expected `(i,j)`"))?;
            let (i, j) = pos.split_once(',').ok_or_else(|| err(line, col + 5, "expected `(i,j)`"))?;
            let i: usize = i.trim().parse().map_err(|_| err(line, col + 5, "bad row index"))?;
            let j: usize = j.trim().parse().map_err(|_| err(line, col + 5, "bad column index"))?;
            let s = at(line, col, parse_scalar(val, field))?;
            corr.push(((i, j), s));
        } else {
            return Err(err(line, col, format!("unexpected statement `{stmt}`")));
        }
    }
    let field = field.ok_or_else(|| err(1, 1, "missing `field` line"))?;
    Operator::new(field, bands, corr)
}

/// `{i:s, j:t, ...}`
pub fn parse_vector(s: &str, field: FieldSpec) -> Result<FiniteVector> {
    let inner = strip_delims(s, '{', '}')?;
    let mut pairs = Vec::new();
    if !inner.trim().is_empty() {
        for (off, piece) in split_top(inner, ',') {
            let (i, v) = piece
                .split_once(':')
                .ok_or_else(|| err(1, off + 2, format!("expected `index:value`, found `{}`", piece.trim())))?;
            let i: usize = i.trim().parse().map_err(|_| err(1, off + 2, "bad index"))?;
            pairs.push((i, parse_scalar(v, field)?));
        }
    }
    FiniteVector::from_pairs(field, pairs)
}

/// `[{...},{...}]`, or a bare comma list of basis indices like `0,1`.
pub fn parse_vector_list(s: &str, field: FieldSpec) -> Result<Vec<FiniteVector>> {
    let t = s.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    if let Ok(inner) = strip_delims(t, '[', ']') {
        if inner.trim().is_empty() {
            return Ok(Vec::new());
        }
        return split_top(inner, ',')
            .into_iter()
            .map(|(_, p)| parse_vector(p, field))
            .collect();
    }
    t.split(',')
        .map(|i| {
            let i: usize = i.trim().trim_start_matches('v').parse().map_err(|_| err(1, 1, format!("bad basis index `{i}`")))?;
            Ok(FiniteVector::basis(field, i))
        })
        .collect()
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| err(1, 1, format!("bad {what} `{}`", s.trim())))
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    let inner = strip_delims(s, '[', ']')?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top(inner, ',').into_iter().map(|(_, p)| parse_usize(p, "index")).collect()
}

/// `a*i+b`, `a*i-b`, `i`, `i+b`, `a*i` or a constant `b`.
pub fn parse_affine(s: &str) -> Result<Affine> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || err(1, 1, format!("bad affine index `{t}`"));
    let Some(pos) = t.find('i') else {
        return Ok(Affine { a: 0, b: t.parse().map_err(|_| bad())? });
    };
    let coeff = t[..pos].trim_end_matches('*');
    let a: i64 = match coeff {
        "" | "+" => 1,
        "-" => -1,
        c => c.parse().map_err(|_| bad())?,
    };
    let rest = &t[pos + 1..];
    let b: i64 = if rest.is_empty() {
        0
    } else {
        rest.trim_start_matches('+').parse().map_err(|_| bad())?
    };
    Ok(Affine { a, b })
}

/// Parses a family document: an optional `field` line, then one of
///
/// ```text
/// partition pre=[1,1] per=[2,3] except{5:4}
/// explicit [{band 0: pre=[1] per=[0]}, {corr (1,1)=1}]
/// pattern i0=1 terms[(r=i, c=0), (r=i, c=i)]
/// ```
pub fn parse_family(text: &str, default_field: Option<FieldSpec>) -> Result<IdempotentFamily> {
    let mut field = default_field;
    let mut body = String::new();
    let mut body_line = 0;
    for (ln, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if body.is_empty() {
            if let Some(f) = content.strip_prefix("field") {
                field = Some(at(ln + 1, 1, parse_field(f))?);
                continue;
            }
            body_line = ln + 1;
        }
        body.push_str(content);
        body.push(' ');
    }
    let field = field.ok_or_else(|| err(1, 1, "missing `field` line"))?;
    let body = body.trim();
    let r = if let Some(rest) = body.strip_prefix("partition") {
        parse_partition_body(rest, field)
    } else if let Some(rest) = body.strip_prefix("explicit") {
        let inner = strip_delims(rest, '[', ']')?;
        let members = if inner.trim().is_empty() {
            Vec::new()
        } else {
            split_top(inner, ',')
                .into_iter()
                .map(|(_, m)| parse_operator(strip_delims(m, '{', '}')?, Some(field)))
                .collect::<Result<Vec<_>>>()?
        };
        IdempotentFamily::explicit(field, members)
    } else if let Some(rest) = body.strip_prefix("pattern") {
        parse_pattern_body(rest, field)
    } else {
        Err(err(1, 1, "expected `partition`, `explicit` or `pattern`"))
    };
    at(body_line.max(1), 1, r)
}

fn parse_partition_body(rest: &str, field: FieldSpec) -> Result<IdempotentFamily> {
    let rest = rest.trim();
    let pre_text = rest.strip_prefix("pre=").ok_or_else(|| err(1, 1, "expected `pre=[...]`"))?;
    let close = pre_text.find(']').ok_or_else(|| err(1, 1, "unterminated preperiod"))?;
    let pre = parse_usize_list(&pre_text[..=close])?;
    let after = pre_text[close + 1..].trim_start_matches([';', ' ']);
    let per_text = after.strip_prefix("per=").ok_or_else(|| err(1, 1, "expected `per=[...]`"))?;
    let close = per_text.find(']').ok_or_else(|| err(1, 1, "unterminated period"))?;
    let per = parse_usize_list(&per_text[..=close])?;
    let tail = per_text[close + 1..].trim();
    let mut exceptions = BTreeMap::new();
    if !tail.is_empty() {
        let inner = tail
            .strip_prefix("except")
            .ok_or_else(|| err(1, 1, format!("unexpected `{tail}`")))
            .and_then(|e| strip_delims(e, '{', '}'))?;
        for (_, piece) in split_top(inner, ',').into_iter().filter(|(_, p)| !p.trim().is_empty()) {
            let (i, c) = piece.split_once(':').ok_or_else(|| err(1, 1, "expected `index:color`"))?;
            exceptions.insert(parse_usize(i, "index")?, parse_usize(c, "color")?);
        }
    }
    IdempotentFamily::partition(field, pre, per, &exceptions)
}

fn parse_pattern_body(rest: &str, field: FieldSpec) -> Result<IdempotentFamily> {
    let rest = rest.trim();
    let i0_text = rest.strip_prefix("i0=").ok_or_else(|| err(1, 1, "expected `i0=N`"))?;
    let split = i0_text.find(|c: char| !c.is_ascii_digit()).unwrap_or(i0_text.len());
    let i0 = parse_usize(&i0_text[..split], "i0")?;
    let terms_text = i0_text[split..]
        .trim()
        .strip_prefix("terms")
        .ok_or_else(|| err(1, 1, "expected `terms[...]`"))?;
    let inner = strip_delims(terms_text, '[', ']')?;
    let mut terms = Vec::new();
    for (_, piece) in split_top(inner, ',').into_iter().filter(|(_, p)| !p.trim().is_empty()) {
        let pair = strip_delims(piece, '(', ')')?;
        let (r, c) = pair.split_once(',').ok_or_else(|| err(1, 1, "expected `(r=..., c=...)`"))?;
        let r = r.trim().strip_prefix("r=").ok_or_else(|| err(1, 1, "expected `r=`"))?;
        let c = c.trim().strip_prefix("c=").ok_or_else(|| err(1, 1, "expected `c=`"))?;
        terms.push(Term {
            row: parse_affine(r)?,
            col: parse_affine(c)?,
        });
    }
    IdempotentFamily::pattern(field, i0, terms)
}

/// Parses an algebra document:
///
/// ```text
/// field Q
/// dim 2
/// unit [1,0]
/// (0,0,0,1) (0,1,1,1)
/// (1,0,1,1)
/// ```
pub fn parse_algebra(text: &str, default_field: Option<FieldSpec>) -> Result<FiniteAlgebra> {
    let mut field = default_field;
    let mut dim = None;
    let mut unit = None;
    let mut constants = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line_no = ln + 1;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(f) = content.strip_prefix("field") {
            field = Some(at(line_no, 1, parse_field(f))?);
        } else if let Some(d) = content.strip_prefix("dim") {
            dim = Some(at(line_no, 4, parse_usize(d, "dimension"))?);
        } else if let Some(u) = content.strip_prefix("unit") {
            let f = field.ok_or_else(|| err(line_no, 1, "`field` must precede `unit`"))?;
            unit = Some(at(line_no, 5, parse_scalar_list(u, f))?);
        } else if content.starts_with('(') {
            let f = field.ok_or_else(|| err(line_no, 1, "`field` must precede structure constants"))?;
            let mut rest = content;
            while let Some(open) = rest.find('(') {
                let col = content.len() - rest.len() + open + 1;
                let close = rest[open..].find(')').ok_or_else(|| err(line_no, col, "unterminated quadruple"))? + open;
                let parts: Vec<&str> = rest[open + 1..close].split(',').collect();
                if parts.len() != 4 {
                    return Err(err(line_no, col, "expected `(i,j,k,value)`"));
                }
                let idx = |s: &str| at(line_no, col, parse_usize(s, "basis index"));
                constants.push((idx(parts[0])?, idx(parts[1])?, idx(parts[2])?, at(line_no, col, parse_scalar(parts[3], f))?));
                rest = &rest[close + 1..];
            }
        } else {
            return Err(err(line_no, 1, format!("unexpected line `{content}`")));
        }
    }
    let field = field.ok_or_else(|| err(1, 1, "missing `field` line"))?;
    let dim = dim.ok_or_else(|| err(1, 1, "missing `dim` line"))?;
    let unit = unit.ok_or_else(|| err(1, 1, "missing `unit` line"))?;
    FiniteAlgebra::new(field, dim, &constants, unit)
}

pub fn format_algebra(a: &FiniteAlgebra) -> String {
    let mut out = format!("field {}\ndim {}\nunit {}\n", a.field(), a.dim(), format_scalar_list(a.unit()));
    for (i, j, k, c) in a.constants() {
        out.push_str(&format!("({i},{j},{k},{})\n", c.short()));
    }
    out
}

/// `map [y_0, y_1, ...]`, optionally followed by `into N`; the codomain
/// defaults to one past the largest image.
pub fn parse_set_map(s: &str) -> Result<SetMapRec> {
    let t = s.trim();
    let rest = t.strip_prefix("map").ok_or_else(|| err(1, 1, "expected `map [...]`"))?.trim();
    let close = rest.find(']').ok_or_else(|| err(1, 1, "unterminated map"))?;
    let map = parse_usize_list(&rest[..=close])?;
    let tail = rest[close + 1..].trim();
    let codomain = if tail.is_empty() {
        map.iter().max().map_or(0, |m| m + 1)
    } else {
        parse_usize(tail.strip_prefix("into").ok_or_else(|| err(1, 1, "expected `into N`"))?, "codomain")?
    };
    SetMapRec::new(map, codomain)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn fields() {
        assert_eq!(parse_field("Q").unwrap(), Q);
        assert_eq!(parse_field("Fp:5").unwrap(), FieldSpec::Prime(5));
        assert_eq!(parse_field("F_7").unwrap(), FieldSpec::Prime(7));
        assert_eq!(parse_field("Fp:6"), Err(Error::NotPrime(6)));
    }

    #[test]
    fn operator_document() {
        let t = parse_operator("field Q\nband 1: pre=[] per=[1]\ncorr (0,1)=1\n", None).unwrap();
        let expected = Operator::shift(Q).add(&Operator::matrix_unit(Q, 0, 1)).unwrap();
        assert_eq!(t, expected);
        let inline = parse_operator("band 0: pre=[5];per=[7]; corr (2,2)=1/2", Some(Q)).unwrap();
        assert_eq!(inline.entry(0, 0), Q.int(5));
        assert_eq!(inline.entry(2, 2), Q.ratio(15, 2).unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_operator("field Q\nband 1: pre=[] per=[x]\n", None) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        match parse_operator("field Q\nfoo\n", None) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn matrices_and_vectors() {
        let m = parse_matrix("[[1,2],[3,-1/2]]", Q).unwrap();
        assert_eq!(m.get(1, 1), &Q.ratio(-1, 2).unwrap());
        match parse_matrix("[[1,2],\n [3,x]]", Q) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("{other:?}"),
        }
        assert_eq!(parse_matrix(&m.to_string(), Q).unwrap(), m);
        let v = parse_vector("{0:1, 4:-3}", Q).unwrap();
        assert_eq!(v.get(4), Q.int(-3));
        assert_eq!(parse_vector_list("0,1", Q).unwrap().len(), 2);
        assert_eq!(parse_vector_list("[{0:1},{2:2}]", Q).unwrap()[1].get(2), Q.int(2));
    }

    #[test]
    fn family_documents() {
        let p = parse_family("field Q\npartition pre=[] per=[1,2] except{0:3}", None).unwrap();
        assert_eq!(p.to_string(), "field Q\npartition pre=[1] per=[2,3]");
        assert_eq!(parse_family(&p.to_string(), None).unwrap(), p);
        let pat = parse_family("pattern i0=1 terms[(r=i, c=0), (r=1*i+0, c=i)]", Some(Q)).unwrap();
        assert_eq!(parse_family(&pat.to_string(), None).unwrap(), pat);
        let ex = parse_family("field Fp:3\nexplicit [{corr (0,0)=1}, {band 0: pre=[0] per=[1]}]", None).unwrap();
        assert_eq!(ex.len(), Some(2));
        assert_eq!(parse_family(&ex.to_string(), None).unwrap(), ex);
        assert!(matches!(parse_family("field Q\nblob", None), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn affine_forms() {
        assert_eq!(parse_affine("2*i-3").unwrap(), Affine { a: 2, b: -3 });
        assert_eq!(parse_affine("i").unwrap(), Affine { a: 1, b: 0 });
        assert_eq!(parse_affine("7").unwrap(), Affine { a: 0, b: 7 });
        assert_eq!(parse_affine("i+4").unwrap(), Affine { a: 1, b: 4 });
        assert!(parse_affine("i*i").is_err());
    }

    #[test]
    fn algebra_documents() {
        let a = parse_algebra("field Q\ndim 2\nunit [1,0]\n(0,0,0,1) (0,1,1,1)\n(1,0,1,1)\n", None).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(parse_algebra(&format_algebra(&a), None).unwrap(), a);
        match parse_algebra("field Q\ndim 2\nunit [1,0]\n(0,0,0,1) (0,1,9,1)\n", None) {
            Err(Error::SizeMismatch(_)) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_algebra("field Q\ndim 1\nunit [1]\n(0,0,0)\n", None), Err(Error::Parse { line: 4, .. })));
    }

    #[test]
    fn set_maps() {
        let m = parse_set_map("map [0,0,1]").unwrap();
        assert_eq!((m.domain(), m.codomain()), (3, 2));
        assert_eq!(parse_set_map("map [] into 2").unwrap().codomain(), 2);
        assert!(parse_set_map("map [3] into 2").is_err());
    }
}
