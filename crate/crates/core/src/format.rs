//! Line-oriented text formats for algebras, tensors and quivers.
//!
//! Algebra file:
//!
//! ```text
//! field Q          # or: field Fp 5
//! dim 2
//! label 0 1
//! label 1 g
//! unit 0:1
//! mul 0 0 0:1
//! mul 0 1 1:1
//! mul 1 0 1:1
//! mul 1 1 0:1
//! ```
//!
//! Unlisted products are zero. Tensor file: `tensor dim N` followed by
//! `i j coeff` lines. Quiver file: `vertex k`, `arrow label src tgt` with
//! 1-based vertices, `relation ab - cd` and optionally `bound L` and `field`.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use crate::algebra::{Algebra, Element, Tensor2};
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};
use crate::zoo::{Quiver, Relation};

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn directives(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = body.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn parse_usize(line: usize, word: &str, what: &str) -> Result<usize> {
    word.parse()
        .map_err(|_| syntax(line, format!("expected {what}, found `{word}`")))
}

fn parse_field(line: usize, args: &[&str]) -> Result<Field> {
    match args {
        ["Q"] => Ok(Field::Rational),
        ["Fp", p] => {
            let p: u64 = p
                .parse()
                .map_err(|_| syntax(line, format!("expected a prime, found `{p}`")))?;
            Field::prime(p).map_err(|e| e.at(line))
        }
        _ => Err(syntax(line, "expected `field Q` or `field Fp <prime>`")),
    }
}

fn parse_sparse(line: usize, field: Field, dim: usize, words: &[&str]) -> Result<Vec<(usize, Scalar)>> {
    let mut seen = HashSet::new();
    words
        .iter()
        .map(|w| {
            let (idx, coeff) = w
                .split_once(':')
                .ok_or_else(|| syntax(line, format!("expected index:coefficient, found `{w}`")))?;
            let idx = parse_usize(line, idx, "a basis index")?;
            if idx >= dim {
                return Err(Error::IndexOutOfRange { index: idx, dim }.at(line));
            }
            if !seen.insert(idx) {
                return Err(syntax(line, format!("index {idx} listed twice")));
            }
            let c = field.parse_scalar(coeff).map_err(|e| e.at(line))?;
            Ok((idx, c))
        })
        .collect()
}

pub fn parse_algebra(text: &str) -> Result<Algebra> {
    let mut field = None;
    let mut dim: Option<(usize, usize)> = None;
    let mut labels: BTreeMap<usize, String> = BTreeMap::new();
    let mut unit: Option<(usize, Vec<(usize, Scalar)>)> = None;
    let mut table: BTreeMap<(usize, usize), (usize, Vec<(usize, Scalar)>)> = BTreeMap::new();

    for (line, words) in directives(text) {
        let (head, args) = (words[0], &words[1..]);
        if head != "field" && head != "dim" && (field.is_none() || dim.is_none()) {
            return Err(syntax(line, format!("`{head}` before `field` and `dim`")));
        }
        let f = || field.expect("checked");
        let n = || dim.expect("checked").0;
        match head {
            "field" => {
                if field.is_some() {
                    return Err(syntax(line, "duplicate `field`"));
                }
                field = Some(parse_field(line, args)?);
            }
            "dim" => {
                if dim.is_some() {
                    return Err(syntax(line, "duplicate `dim`"));
                }
                let [d] = args else {
                    return Err(syntax(line, "expected `dim N`"));
                };
                let d = parse_usize(line, d, "a dimension")?;
                if d == 0 {
                    return Err(syntax(line, "dimension must be at least 1"));
                }
                dim = Some((d, line));
            }
            "label" => {
                let [i, name] = args else {
                    return Err(syntax(line, "expected `label INDEX NAME`"));
                };
                let i = parse_usize(line, i, "a basis index")?;
                if i >= n() {
                    return Err(Error::IndexOutOfRange { index: i, dim: n() }.at(line));
                }
                if labels.insert(i, name.to_string()).is_some() {
                    return Err(syntax(line, format!("duplicate label for index {i}")));
                }
            }
            "unit" => {
                if unit.is_some() {
                    return Err(syntax(line, "duplicate `unit`"));
                }
                unit = Some((line, parse_sparse(line, f(), n(), args)?));
            }
            "mul" => {
                let [i, j, terms @ ..] = args else {
                    return Err(syntax(line, "expected `mul I J [k:c ...]`"));
                };
                let i = parse_usize(line, i, "a basis index")?;
                let j = parse_usize(line, j, "a basis index")?;
                for idx in [i, j] {
                    if idx >= n() {
                        return Err(Error::IndexOutOfRange { index: idx, dim: n() }.at(line));
                    }
                }
                let prod = parse_sparse(line, f(), n(), terms)?;
                if table.insert((i, j), (line, prod)).is_some() {
                    return Err(syntax(line, format!("duplicate product `mul {i} {j}`")));
                }
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }

    let last = text.lines().count().max(1);
    let field = field.ok_or_else(|| syntax(last, "missing `field`"))?;
    let (n, dim_line) = dim.ok_or_else(|| syntax(last, "missing `dim`"))?;
    let (unit_line, unit) = unit.ok_or_else(|| syntax(last, "missing `unit`"))?;
    let mut unit_coords = vec![field.zero(); n];
    for (i, c) in unit {
        unit_coords[i] = c;
    }
    let label_vec = if labels.is_empty() {
        Vec::new()
    } else if labels.len() == n {
        labels.into_values().collect()
    } else {
        let missing = (0..n).find(|i| !labels.contains_key(i)).expect("some label missing");
        return Err(syntax(last, format!("missing label for index {missing}")));
    };

    let lines: BTreeMap<(usize, usize), usize> = table.iter().map(|(&k, (l, _))| (k, *l)).collect();
    let entries = table.into_iter().map(|(k, (_, prod))| (k, prod));
    Algebra::build(field, n, entries, unit_coords, label_vec).map_err(|e| {
        let line = match &e {
            Error::UnitViolation(_) => unit_line,
            Error::AssociativityViolation { i, j, k, .. } => lines
                .get(&(*i, *j))
                .or_else(|| lines.get(&(*j, *k)))
                .copied()
                .unwrap_or(dim_line),
            _ => dim_line,
        };
        e.at(line)
    })
}

fn field_line(field: Field) -> String {
    match field {
        Field::Rational => "field Q".to_string(),
        Field::Prime(p) => format!("field Fp {p}"),
    }
}

fn sparse_words(terms: &[(usize, Scalar)]) -> String {
    terms
        .iter()
        .map(|(i, c)| format!(" {i}:{c}"))
        .collect()
}

/// Canonical text form; `parse_algebra` inverts it exactly.
pub fn write_algebra(a: &Algebra) -> String {
    let mut out = String::new();
    writeln!(out, "{}", field_line(a.field())).unwrap();
    writeln!(out, "dim {}", a.dim()).unwrap();
    for (i, l) in a.labels().iter().enumerate() {
        writeln!(out, "label {i} {l}").unwrap();
    }
    let unit: Vec<(usize, Scalar)> = sparse_of(&a.unit());
    writeln!(out, "unit{}", sparse_words(&unit)).unwrap();
    for (&(i, j), prod) in a.table() {
        writeln!(out, "mul {i} {j}{}", sparse_words(prod)).unwrap();
    }
    out
}

fn sparse_of(e: &Element) -> Vec<(usize, Scalar)> {
    e.coords()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// Parses a sparse element written as `i:c` words.
pub fn parse_element(field: Field, dim: usize, words: &[&str]) -> Result<Element> {
    let mut v = vec![field.zero(); dim];
    for (i, c) in parse_sparse(1, field, dim, words).map_err(|e| match e {
        Error::Located { source, .. } => *source,
        Error::Syntax { message, .. } => Error::InvalidInput(message),
        other => other,
    })? {
        v[i] = c;
    }
    Ok(Element::new(v))
}

pub fn parse_tensor(text: &str, field: Field) -> Result<Tensor2> {
    let mut lines = directives(text);
    let (line, header) = lines
        .next()
        .ok_or_else(|| syntax(1, "expected `tensor dim N`"))?;
    let n = match header.as_slice() {
        ["tensor", "dim", n] => parse_usize(line, n, "a dimension")?,
        _ => return Err(syntax(line, "expected `tensor dim N`")),
    };
    let mut seen = HashSet::new();
    let mut terms = Vec::new();
    for (line, words) in lines {
        let [i, j, c] = words.as_slice() else {
            return Err(syntax(line, "expected `I J COEFF`"));
        };
        let i = parse_usize(line, i, "a row index")?;
        let j = parse_usize(line, j, "a column index")?;
        for idx in [i, j] {
            if idx >= n {
                return Err(Error::IndexOutOfRange { index: idx, dim: n }.at(line));
            }
        }
        if !seen.insert((i, j)) {
            return Err(syntax(line, format!("entry ({i}, {j}) listed twice")));
        }
        terms.push((i, j, field.parse_scalar(c).map_err(|e| e.at(line))?));
    }
    Tensor2::from_terms(field, n, &terms)
}

/// `tensor dim N` and the nonzero entries in row-major order.
pub fn write_tensor(t: &Tensor2) -> String {
    let mut out = format!("tensor dim {}\n", t.n());
    for (i, j, c) in t.terms() {
        writeln!(out, "{i} {j} {c}").unwrap();
    }
    out
}

/// A parsed quiver file.
#[derive(Clone, Debug)]
pub struct QuiverFile {
    pub quiver: Quiver,
    pub bound: Option<usize>,
}

/// Parses a quiver description. `field` applies unless the file has its own
/// `field` line.
pub fn parse_quiver(text: &str, field: Field) -> Result<QuiverFile> {
    let mut field = field;
    let mut field_seen = false;
    let mut quiver: Option<Quiver> = None;
    let mut bound = None;
    for (line, words) in directives(text) {
        let (head, args) = (words[0], &words[1..]);
        match head {
            "field" => {
                if field_seen || quiver.is_some() {
                    return Err(syntax(line, "`field` must come once, before `vertex`"));
                }
                field = parse_field(line, args)?;
                field_seen = true;
            }
            "vertex" => {
                if quiver.is_some() {
                    return Err(syntax(line, "duplicate `vertex`"));
                }
                let [k] = args else {
                    return Err(syntax(line, "expected `vertex COUNT`"));
                };
                let k = parse_usize(line, k, "a vertex count")?;
                quiver = Some(Quiver::new(field, k).map_err(|e| e.at(line))?);
            }
            "bound" => {
                let [b] = args else {
                    return Err(syntax(line, "expected `bound L`"));
                };
                if bound.replace(parse_usize(line, b, "a path length")?).is_some() {
                    return Err(syntax(line, "duplicate `bound`"));
                }
            }
            "arrow" | "relation" => {
                let q = quiver
                    .as_mut()
                    .ok_or_else(|| syntax(line, format!("`{head}` before `vertex`")))?;
                if head == "arrow" {
                    let [label, s, t] = args else {
                        return Err(syntax(line, "expected `arrow LABEL SOURCE TARGET`"));
                    };
                    let s = parse_usize(line, s, "a vertex")?;
                    let t = parse_usize(line, t, "a vertex")?;
                    if s == 0 || t == 0 {
                        return Err(syntax(line, "vertices are numbered from 1"));
                    }
                    q.add_arrow(label, s - 1, t - 1).map_err(|e| e.at(line))?;
                } else {
                    let rel = parse_relation(q, &args.concat()).map_err(|e| e.at(line))?;
                    q.add_relation(rel).map_err(|e| e.at(line))?;
                }
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }
    let quiver = quiver.ok_or_else(|| syntax(text.lines().count().max(1), "missing `vertex`"))?;
    Ok(QuiverFile { quiver, bound })
}

/// `ab - 2*cd + 1/2*e.f` with whitespace already removed.
fn parse_relation(q: &Quiver, text: &str) -> Result<Relation> {
    let field = q.field();
    let bad = || Error::InvalidInput(format!("malformed relation `{text}`"));
    let mut terms = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let (negative, body) = match rest.as_bytes()[0] {
            b'-' => (true, &rest[1..]),
            b'+' => (false, &rest[1..]),
            _ if terms.is_empty() => (false, rest),
            _ => return Err(bad()),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let (term, tail) = body.split_at(end);
        let (coeff, word) = match term.split_once('*') {
            Some((c, w)) => (field.parse_scalar(c)?, w),
            None => (field.one(), term),
        };
        if word.is_empty() {
            return Err(bad());
        }
        let coeff = if negative { -coeff } else { coeff };
        terms.push((coeff, q.parse_path(word)?));
        rest = tail;
    }
    if terms.is_empty() {
        return Err(bad());
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    const KZ2: &str = "\
field Q
dim 2
label 0 1
label 1 g
unit 0:1
mul 0 0 0:1
mul 0 1 1:1
mul 1 0 1:1
mul 1 1 0:1
";

    #[test]
    fn kz2_round_trip() {
        let a = parse_algebra(KZ2).unwrap();
        assert_eq!(a, zoo::cyclic_group_algebra(Field::Rational, 2).unwrap());
        assert_eq!(write_algebra(&a), KZ2);
    }

    #[test]
    fn format_example_with_comments() {
        let text = "field Q            # comment\ndim 3\nlabel 0 e1\nlabel 1 e2\nlabel 2 eta\n\
                    unit 0:1 1:1\nmul 0 0 0:1\nmul 1 1 1:1\nmul 0 2 2:1\nmul 2 1 2:1\n";
        let a = parse_algebra(text).unwrap();
        assert_eq!(a.dim(), 3);
        let mut q = Quiver::new(Field::Rational, 2).unwrap();
        q.add_arrow("eta", 0, 1).unwrap();
        assert_eq!(a, zoo::path_algebra(&q, None).unwrap());
    }

    #[test]
    fn composite_modulus_is_rejected() {
        let err = parse_algebra("field Fp 4\ndim 1\nunit 0:1\nmul 0 0 0:1\n").unwrap_err();
        assert!(matches!(err, Error::Located { line: 1, .. }));
        assert!(matches!(err.root(), Error::NotPrime(4)));
    }

    #[test]
    fn diagnostics_carry_lines() {
        let dup = "field Q\ndim 1\nunit 0:1\nmul 0 0 0:1\nmul 0 0 0:1\n";
        assert!(matches!(parse_algebra(dup), Err(Error::Syntax { line: 5, .. })));
        let unknown = "field Q\ndim 1\nfoo\n";
        assert!(matches!(parse_algebra(unknown), Err(Error::Syntax { line: 3, .. })));
        let range = "field Q\ndim 1\nunit 0:1\nmul 0 3 0:1\n";
        let err = parse_algebra(range).unwrap_err();
        assert!(matches!(err, Error::Located { line: 4, .. }));
        let bad_unit = "field Q\ndim 1\nunit 0:2\nmul 0 0 0:1\n";
        let err = parse_algebra(bad_unit).unwrap_err();
        assert!(matches!(err, Error::Located { line: 3, .. }));
        assert!(matches!(err.root(), Error::UnitViolation(0)));
        let order = "dim 1\nunit 0:1\n";
        assert!(matches!(parse_algebra(order), Err(Error::Syntax { line: 2, .. })));
        assert!(parse_algebra("field Q\ndim 1\n").is_err());
        assert!(parse_algebra("field Q\ndim 1\nunit 0:x\n").is_err());
    }

    #[test]
    fn non_associative_file_points_at_a_product() {
        let text = "field Q\ndim 2\nunit 0:1\nmul 0 0 0:1\nmul 0 1 1:1\nmul 1 0 1:1\nmul 1 1 0:1 1:1\n";
        // Unital and commutative but fine; make it fail by breaking b1 b1.
        assert!(parse_algebra(text).is_ok());
        let broken = "field Q\ndim 2\nunit 0:1\nmul 0 0 0:1\nmul 0 1 1:1\nmul 1 1 1:1\n";
        let err = parse_algebra(broken).unwrap_err();
        assert!(matches!(err.root(), Error::UnitViolation(_) | Error::AssociativityViolation { .. }));
        assert!(matches!(err, Error::Located { .. }));
    }

    #[test]
    fn zoo_algebras_round_trip() {
        let f5 = Field::prime(5).unwrap();
        for a in [
            zoo::matrix_algebra(Field::Rational, 3).unwrap(),
            zoo::abelian_group_algebra(f5, &[2, 2]).unwrap(),
            zoo::linear_quiver_algebra(Field::Rational, 4).unwrap(),
        ] {
            let text = write_algebra(&a);
            let b = parse_algebra(&text).unwrap();
            assert_eq!(a, b);
            assert_eq!(write_algebra(&b), text);
        }
    }

    #[test]
    fn tensor_round_trip() {
        let t = Tensor2::from_terms(
            Field::Rational,
            3,
            &[(2, 0, Field::Rational.one()), (1, 2, crate::scalar::q(-1, 2))],
        )
        .unwrap();
        let text = write_tensor(&t);
        assert_eq!(text, "tensor dim 3\n1 2 -1/2\n2 0 1\n");
        assert_eq!(parse_tensor(&text, Field::Rational).unwrap(), t);
        assert!(parse_tensor("tensor dim 2\n0 5 1\n", Field::Rational).is_err());
        assert!(parse_tensor("dim 2\n", Field::Rational).is_err());
        assert!(parse_tensor("tensor dim 2\n0 0 1\n0 0 2\n", Field::Rational).is_err());
    }

    #[test]
    fn square_quiver_file() {
        let text = "vertex 4\narrow a 1 2\narrow b 2 4\narrow c 1 3\narrow d 3 4\nrelation ab - cd\n";
        let qf = parse_quiver(text, Field::Rational).unwrap();
        let a = zoo::path_algebra(&qf.quiver, qf.bound).unwrap();
        assert_eq!(a.dim(), 9);
    }

    #[test]
    fn relation_syntax() {
        let mut q = Quiver::new(Field::Rational, 3).unwrap();
        q.add_arrow("x", 0, 1).unwrap();
        q.add_arrow("y", 1, 2).unwrap();
        q.add_arrow("z", 0, 2).unwrap();
        let r = parse_relation(&q, "-1/2*x.y+3*z").unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].0, crate::scalar::q(-1, 2));
        assert_eq!(r[0].1, vec![0, 1]);
        assert_eq!(r[1].1, vec![2]);
        assert!(parse_relation(&q, "xy++z").is_err());
        assert!(parse_relation(&q, "").is_err());
        assert!(parse_relation(&q, "w").is_err());
    }

    #[test]
    fn quiver_file_errors() {
        assert!(matches!(
            parse_quiver("arrow a 1 2\n", Field::Rational),
            Err(Error::Syntax { line: 1, .. })
        ));
        assert!(parse_quiver("vertex 2\narrow a 0 1\n", Field::Rational).is_err());
        let err = parse_quiver("vertex 2\narrow a 1 2\nrelation a - b\n", Field::Rational).unwrap_err();
        assert!(matches!(err, Error::Located { line: 3, .. }));
        let loop_file = "field Fp 3\nvertex 1\narrow x 1 1\nrelation xxx\nbound 3\n";
        let qf = parse_quiver(loop_file, Field::Rational).unwrap();
        assert_eq!(qf.bound, Some(3));
        assert_eq!(qf.quiver.field(), Field::prime(3).unwrap());
    }
}
