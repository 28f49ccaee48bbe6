//! JSON interchange for algebras.
//!
//! ```json
//! {"name": "sl2", "field": "Q", "dim": 3,
//!  "binary": [[0, 1, [[2, "1"]]], [2, 0, [[0, "2"]]], ...]}
//! ```
//!
//! Entries list the nonzero brackets of basis vectors; absent entries are
//! zero. Coefficients are decimal integers or `"a/b"` strings. Ternary
//! algebras use `"ternary": [[i, j, k, [[l, "c"], ...]], ...]`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Algebra, BinaryAlgebra, TernaryAlgebra};
use crate::fields::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Semantic(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

pub type Terms = Vec<(usize, Coeff)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub name: String,
    pub field: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub binary: Option<Vec<(usize, usize, Terms)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ternary: Option<Vec<(usize, usize, usize, Terms)>>,
}

fn terms(v: &[Scalar]) -> Terms {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, Coeff::Text(x.to_string())))
        .collect()
}

impl From<&Algebra> for AlgebraDoc {
    fn from(a: &Algebra) -> Self {
        let n = a.dim();
        let mut doc = AlgebraDoc {
            name: a.name().to_string(),
            field: a.field().to_string(),
            dim: n,
            binary: None,
            ternary: None,
        };
        match a {
            Algebra::Binary(b) => {
                let mut entries = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        let t = terms(b.basis_bracket(i, j));
                        if !t.is_empty() {
                            entries.push((i, j, t));
                        }
                    }
                }
                doc.binary = Some(entries);
            }
            Algebra::Ternary(t) => {
                let mut entries = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            let v = terms(t.basis_bracket(i, j, k));
                            if !v.is_empty() {
                                entries.push((i, j, k, v));
                            }
                        }
                    }
                }
                doc.ternary = Some(entries);
            }
        }
        doc
    }
}

fn semantic(msg: impl Into<String>) -> FormatError {
    FormatError::Semantic(msg.into())
}

fn coefficient(field: FieldSpec, c: &Coeff) -> Result<Scalar, FormatError> {
    match c {
        Coeff::Int(n) => Ok(field.from_i64(*n)),
        Coeff::Text(s) => field
            .parse_scalar(s)
            .map_err(|e| semantic(format!("coefficient {s:?}: {e}"))),
    }
}

/// Writes `terms` into `out[at..at+dim]`, validating indices.
fn fill(out: &mut [Scalar], at: usize, dim: usize, field: FieldSpec, ts: &Terms) -> Result<(), FormatError> {
    for (k, c) in ts {
        if *k >= dim {
            return Err(semantic(format!("output index {k} out of range for dim {dim}")));
        }
        let x = coefficient(field, c)?;
        out[at + k] += &x;
    }
    Ok(())
}

impl AlgebraDoc {
    pub fn into_algebra(&self) -> Result<Algebra, FormatError> {
        let field: FieldSpec = self
            .field
            .parse()
            .map_err(|e| semantic(format!("field {:?}: {e}", self.field)))?;
        let n = self.dim;
        let check = |idx: &[usize]| -> Result<(), FormatError> {
            match idx.iter().find(|&&i| i >= n) {
                Some(i) => Err(semantic(format!("basis index {i} out of range for dim {n}"))),
                None => Ok(()),
            }
        };
        match (&self.binary, &self.ternary) {
            (Some(entries), None) => {
                let mut c = vec![field.zero(); n * n * n];
                let mut seen = BTreeSet::new();
                for (i, j, ts) in entries {
                    check(&[*i, *j])?;
                    if !seen.insert((*i, *j)) {
                        return Err(semantic(format!("bracket [{i}, {j}] listed twice")));
                    }
                    fill(&mut c, (i * n + j) * n, n, field, ts)?;
                }
                BinaryAlgebra::new(field, n, self.name.clone(), c)
                    .map(Algebra::Binary)
                    .map_err(|e| semantic(e.to_string()))
            }
            (None, Some(entries)) => {
                let mut t = vec![field.zero(); n.pow(4)];
                let mut seen = BTreeSet::new();
                for (i, j, k, ts) in entries {
                    check(&[*i, *j, *k])?;
                    if !seen.insert((*i, *j, *k)) {
                        return Err(semantic(format!("bracket {{{i}, {j}, {k}}} listed twice")));
                    }
                    fill(&mut t, ((i * n + j) * n + k) * n, n, field, ts)?;
                }
                TernaryAlgebra::new(field, n, self.name.clone(), t)
                    .map(Algebra::Ternary)
                    .map_err(|e| semantic(e.to_string()))
            }
            (Some(_), Some(_)) => Err(semantic("both \"binary\" and \"ternary\" present")),
            (None, None) => Err(semantic("one of \"binary\" or \"ternary\" is required")),
        }
    }
}

pub(crate) fn syntax_error(e: serde_json::Error) -> FormatError {
    FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

pub fn parse_algebra(json: &str) -> Result<Algebra, FormatError> {
    let doc: AlgebraDoc = serde_json::from_str(json).map_err(syntax_error)?;
    doc.into_algebra()
}

/// Parses an algebra document, or a report embedding one under
/// `base_algebra` or `input`.
pub fn parse_algebra_or_report(json: &str) -> Result<Algebra, FormatError> {
    let value: serde_json::Value = serde_json::from_str(json).map_err(syntax_error)?;
    let embedded = ["base_algebra", "input"].iter().find_map(|k| value.get(k));
    match embedded {
        Some(inner) => {
            let doc = AlgebraDoc::deserialize(inner).map_err(|e| FormatError::Syntax {
                line: 0,
                column: 0,
                message: format!("embedded algebra: {e}"),
            })?;
            doc.into_algebra()
        }
        None => parse_algebra(json),
    }
}

pub fn algebra_to_json(a: &Algebra) -> String {
    serde_json::to_string_pretty(&AlgebraDoc::from(a)).expect("algebra documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{catalog, check_binary, derived_lts};

    #[test]
    fn round_trips_catalog_algebras() {
        for f in [FieldSpec::Rationals, FieldSpec::Prime(3)] {
            let g = Algebra::Binary(catalog("sl3", f).unwrap());
            assert_eq!(parse_algebra(&algebra_to_json(&g)).unwrap(), g);
            let l = Algebra::Ternary(derived_lts(&catalog("sl2", f).unwrap()).unwrap());
            assert_eq!(parse_algebra(&algebra_to_json(&l)).unwrap(), l);
        }
    }

    #[test]
    fn flags_survive_reserialization() {
        let g = catalog("sl2", FieldSpec::Rationals).unwrap();
        let Algebra::Binary(back) = parse_algebra(&algebra_to_json(&Algebra::Binary(g.clone()))).unwrap() else {
            panic!("expected a binary algebra");
        };
        assert_eq!(check_binary(&back), check_binary(&g));
    }

    #[test]
    fn accepts_integer_and_fraction_coefficients() {
        let a = parse_algebra(
            r#"{"name": "t", "field": "Q", "dim": 2, "binary": [[0, 1, [[1, 2], [0, "1/2"]]]]}"#,
        )
        .unwrap();
        let Algebra::Binary(b) = a else { panic!() };
        assert_eq!(b.basis_bracket(0, 1)[0].to_string(), "1/2");
        assert_eq!(b.basis_bracket(0, 1)[1].to_string(), "2");
    }

    #[test]
    fn reads_embedded_algebras() {
        let g = Algebra::Binary(catalog("sl2", FieldSpec::Prime(5)).unwrap());
        let doc = serde_json::to_value(AlgebraDoc::from(&g)).unwrap();
        let report = serde_json::json!({"category": "lie", "base_algebra": doc});
        assert_eq!(parse_algebra_or_report(&report.to_string()).unwrap(), g);
        let summary = serde_json::json!({"input": doc, "facts": []});
        assert_eq!(parse_algebra_or_report(&summary.to_string()).unwrap(), g);
        assert_eq!(parse_algebra_or_report(&algebra_to_json(&g)).unwrap(), g);
        assert!(matches!(
            parse_algebra_or_report(r#"{"input": {"name": 1}}"#),
            Err(FormatError::Syntax { .. })
        ));
    }

    #[test]
    fn syntax_and_semantic_errors() {
        assert!(matches!(parse_algebra("{\"name\": "), Err(FormatError::Syntax { .. })));
        assert!(matches!(
            parse_algebra(r#"{"name": "t", "field": "Q", "dim": 1, "binary": [], "extra": 1}"#),
            Err(FormatError::Syntax { .. })
        ));
        for bad in [
            r#"{"name": "t", "field": "GF(4)", "dim": 1, "binary": []}"#,
            r#"{"name": "t", "field": "Q", "dim": 2, "binary": [[0, 2, []]]}"#,
            r#"{"name": "t", "field": "Q", "dim": 2, "binary": [[0, 1, [[5, "1"]]]]}"#,
            r#"{"name": "t", "field": "Q", "dim": 2, "binary": [[0, 1, []], [0, 1, []]]}"#,
            r#"{"name": "t", "field": "GF(3)", "dim": 2, "binary": [[0, 1, [[0, "1/3"]]]]}"#,
            r#"{"name": "t", "field": "Q", "dim": 2}"#,
            r#"{"name": "t", "field": "Q", "dim": 2, "binary": [], "ternary": []}"#,
        ] {
            assert!(matches!(parse_algebra(bad), Err(FormatError::Semantic(_))), "{bad}");
        }
    }
}
