//! The JSON algebra file format.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraSpec, StructureConstants};
use crate::builtins;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FieldDoc {
    Rational,
    Prime { modulus: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Triple {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BracketDoc {
    /// Only `"commutator"` is accepted.
    Keyword(String),
    Triples(Vec<Triple>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub field: FieldDoc,
    pub dimension: usize,
    pub basis_names: Vec<String>,
    pub mu: Vec<Triple>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bracket: Option<BracketDoc>,
}

/// Where an algebra came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Builtin,
    File,
}

impl FieldDoc {
    pub fn to_spec(&self) -> Result<FieldSpec> {
        match *self {
            FieldDoc::Rational => Ok(FieldSpec::Rational),
            FieldDoc::Prime { modulus } => FieldSpec::prime(modulus)
                .map_err(|e| Error::Validation(format!("field: {e} (2 and 3 must be invertible)"))),
        }
    }

    pub fn from_spec(spec: FieldSpec) -> FieldDoc {
        match spec {
            FieldSpec::Rational => FieldDoc::Rational,
            FieldSpec::Prime(modulus) => FieldDoc::Prime { modulus },
        }
    }
}

fn table(label: &str, field: FieldSpec, triples: &[Triple]) -> Result<StructureConstants> {
    let mut seen = BTreeSet::new();
    let mut out = StructureConstants::new();
    for t in triples {
        if !seen.insert((t.i, t.j, t.k)) {
            return Err(Error::Validation(format!(
                "duplicate {label} triple ({}, {}, {})",
                t.i, t.j, t.k
            )));
        }
        let c = Scalar::parse(field, &t.c).map_err(|e| match e {
            Error::Parse(msg) => {
                Error::Parse(format!("{label} triple ({}, {}, {}): {msg}", t.i, t.j, t.k))
            }
            other => other,
        })?;
        out.insert((t.i, t.j, t.k), c);
    }
    Ok(out)
}

fn triples(table: &StructureConstants) -> Vec<Triple> {
    table
        .iter()
        .map(|(&(i, j, k), c)| Triple {
            i,
            j,
            k,
            c: c.to_string(),
        })
        .collect()
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<AlgebraFile> {
        serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    pub fn to_spec(&self) -> Result<AlgebraSpec> {
        let field = self.field.to_spec()?;
        if self.dimension != self.basis_names.len() {
            return Err(Error::Validation(format!(
                "dimension {} does not match {} basis names",
                self.dimension,
                self.basis_names.len()
            )));
        }
        let mu = table("mu", field, &self.mu)?;
        let bracket = match &self.bracket {
            None => None,
            Some(BracketDoc::Keyword(k)) if k == "commutator" => None,
            Some(BracketDoc::Keyword(k)) => {
                return Err(Error::Validation(format!(
                    "bracket keyword must be \"commutator\", got {k:?}"
                )))
            }
            Some(BracketDoc::Triples(t)) => Some(table("bracket", field, t)?),
        };
        AlgebraSpec::new(
            self.name.clone(),
            field,
            self.basis_names.clone(),
            mu,
            bracket,
        )
    }

    /// Canonical form: triples sorted, default bracket omitted.
    pub fn from_spec(spec: &AlgebraSpec) -> AlgebraFile {
        AlgebraFile {
            name: spec.name().to_string(),
            field: FieldDoc::from_spec(spec.field()),
            dimension: spec.dim(),
            basis_names: spec.basis_names().to_vec(),
            mu: triples(spec.mu_constants()),
            bracket: spec
                .bracket_constants()
                .map(|b| BracketDoc::Triples(triples(b))),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialisable")
    }
}

pub fn parse_algebra(text: &str) -> Result<AlgebraSpec> {
    AlgebraFile::parse(text)?.to_spec()
}

pub fn load_algebra_file(path: &Path) -> Result<AlgebraSpec> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_algebra(&text)
}

/// A builtin name, or else a path to an algebra file.
pub fn load_algebra(name_or_path: &str) -> Result<(AlgebraSpec, Source)> {
    let path = Path::new(name_or_path);
    if path.is_file() {
        return Ok((load_algebra_file(path)?, Source::File));
    }
    match builtins::builtin(name_or_path) {
        Ok(a) => Ok((a, Source::Builtin)),
        Err(Error::UnknownAlgebra(_)) if path.extension().is_some() => {
            Err(Error::Io(format!("{name_or_path}: no such file")))
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SL2: &str = r#"{
        "name": "sl2", "field": {"kind": "rational"}, "dimension": 3,
        "basis_names": ["e", "h", "f"],
        "mu": [{"i":1,"j":0,"k":0,"c":"2"},{"i":0,"j":1,"k":0,"c":"-2"},
               {"i":1,"j":2,"k":2,"c":"-2"},{"i":2,"j":1,"k":2,"c":"2"},
               {"i":0,"j":2,"k":1,"c":"1"},{"i":2,"j":0,"k":1,"c":"-1"}],
        "bracket": "commutator"
    }"#;

    #[test]
    fn round_trip() {
        let a = parse_algebra(SL2).unwrap();
        assert_eq!(a.mu_constants(), builtins::sl2().mu_constants());
        let again = parse_algebra(&AlgebraFile::from_spec(&a).to_json()).unwrap();
        assert_eq!(a, again);
    }

    #[test]
    fn rejections() {
        let dup = SL2.replace(
            r#"{"i":2,"j":0,"k":1,"c":"-1"}"#,
            r#"{"i":0,"j":2,"k":1,"c":"-1"}"#,
        );
        assert!(
            matches!(parse_algebra(&dup), Err(Error::Validation(m)) if m.contains("duplicate"))
        );
        let f3 = SL2.replace(
            r#"{"kind": "rational"}"#,
            r#"{"kind": "prime", "modulus": 3}"#,
        );
        assert!(matches!(parse_algebra(&f3), Err(Error::Validation(_))));
        assert!(
            matches!(parse_algebra("{\"name\": 1"), Err(Error::Parse(m)) if m.contains("line 1"))
        );
        let bad = SL2.replace("\"c\":\"2\"}", "\"c\":\"2.5\"}");
        assert!(matches!(parse_algebra(&bad), Err(Error::Parse(_))));
        let kw = SL2.replace("\"commutator\"", "\"poisson\"");
        assert!(matches!(parse_algebra(&kw), Err(Error::Validation(_))));
    }

    #[test]
    fn jacobi_violation_names_the_triple() {
        let broken = SL2.replace(
            "\"bracket\": \"commutator\"",
            r#""bracket": [{"i":0,"j":1,"k":0,"c":"1"},{"i":1,"j":0,"k":0,"c":"-1"},
                           {"i":1,"j":2,"k":0,"c":"1"},{"i":2,"j":1,"k":0,"c":"-1"},
                           {"i":0,"j":2,"k":1,"c":"1"},{"i":2,"j":0,"k":1,"c":"-1"}]"#,
        );
        match parse_algebra(&broken) {
            Err(Error::Validation(m)) => assert!(m.contains("Jacobi"), "{m}"),
            other => panic!("expected a Jacobi failure, got {other:?}"),
        }
    }
}
