//! The torus-spec file format: JSON with rationals written as `p/q` strings,
//! validated into a live [`Torus`] (algebra axioms and invertibility of Im τ
//! are proved at load), canonical serialization, and a content fingerprint.

use crate::algebra::{AlgebraElement, AlgebraSpec, ComplexElement};
use crate::rational::Rational;
use crate::torus::{Torus, TorusError};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("validation error: {0}")]
    Validation(String),
}

impl From<serde_json::Error> for SpecError {
    fn from(e: serde_json::Error) -> Self {
        SpecError::Parse { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

impl From<crate::algebra::AlgebraError> for SpecError {
    fn from(e: crate::algebra::AlgebraError) -> Self {
        SpecError::Validation(e.to_string())
    }
}

impl From<TorusError> for SpecError {
    fn from(e: TorusError) -> Self {
        SpecError::Validation(e.to_string())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraFile {
    pub basis: Vec<String>,
    pub mult_table: Vec<Vec<Vec<Rational>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub real_embedding: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ComplexEntryFile {
    pub re: Vec<Rational>,
    pub im: Vec<Rational>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TorusSpecFile {
    pub g: usize,
    pub algebra: AlgebraFile,
    pub tau: Vec<Vec<ComplexEntryFile>>,
}

impl TorusSpecFile {
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialization cannot fail")
    }
}

/// Parses and fully validates a spec file into a live torus.
pub fn parse_spec(text: &str) -> Result<(Torus, TorusSpecFile), SpecError> {
    let file: TorusSpecFile = serde_json::from_str(text)?;
    build_torus(&file).map(|t| (t, file))
}

pub fn build_torus(file: &TorusSpecFile) -> Result<Torus, SpecError> {
    if file.g == 0 {
        return Err(SpecError::Validation("g must be positive".into()));
    }
    let spec = AlgebraSpec::new(
        file.algebra.basis.clone(),
        file.algebra.mult_table.clone(),
        file.algebra.real_embedding.clone(),
    )?;
    if file.tau.len() != file.g {
        return Err(SpecError::Validation(format!(
            "tau must have {} rows, found {}",
            file.g,
            file.tau.len()
        )));
    }
    let mut tau = Vec::with_capacity(file.g);
    for row in &file.tau {
        if row.len() != file.g {
            return Err(SpecError::Validation(format!(
                "tau must have {} columns, found {}",
                file.g,
                row.len()
            )));
        }
        let mut out = Vec::with_capacity(file.g);
        for entry in row {
            let re = coords_to_element(&spec, &entry.re)?;
            let im = coords_to_element(&spec, &entry.im)?;
            out.push(ComplexElement::new(re, im));
        }
        tau.push(out);
    }
    Ok(Torus::new(spec, tau)?)
}

fn coords_to_element(
    spec: &Arc<AlgebraSpec>,
    coords: &[Rational],
) -> Result<AlgebraElement, SpecError> {
    AlgebraElement::new(spec, coords.to_vec()).map_err(SpecError::from)
}

/// Reconstructs the canonical file form of a torus.
pub fn spec_file_of(torus: &Torus) -> TorusSpecFile {
    let spec = torus.spec();
    TorusSpecFile {
        g: torus.g(),
        algebra: AlgebraFile {
            basis: spec.basis_names().to_vec(),
            mult_table: spec.table().clone(),
            real_embedding: spec.embedding_text().cloned(),
        },
        tau: torus
            .tau()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|z| ComplexEntryFile {
                        re: z.re.coords().to_vec(),
                        im: z.im.coords().to_vec(),
                    })
                    .collect()
            })
            .collect(),
    }
}

/// SHA-256 of the canonical serialization; stable for fixed content.
pub fn fingerprint(file: &TorusSpecFile) -> String {
    let mut hasher = Sha256::new();
    hasher.update(file.to_canonical_json().as_bytes());
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn algebra_q23() -> Arc<AlgebraSpec> {
        let text = fixture_abc_sqrt23();
        let (torus, _) = parse_spec(&text).unwrap();
        torus.spec().clone()
    }

    pub(crate) fn fixture_abc_sqrt23() -> String {
        std::fs::read_to_string(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/fixtures/abc_sqrt23.json"
        ))
        .unwrap()
    }

    #[test]
    fn bundled_fixtures_parse_and_round_trip() {
        for name in [
            "elliptic_i",
            "generic_g2",
            "abc_sqrt23",
            "abc_chain",
            "abc_rational",
        ] {
            let path = format!("{}/fixtures/{}.json", env!("CARGO_MANIFEST_DIR"), name);
            let text = std::fs::read_to_string(&path).unwrap();
            let (torus, file) = parse_spec(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
            let reserialized = spec_file_of(&torus).to_canonical_json();
            let (_, file2) = parse_spec(&reserialized).unwrap();
            assert_eq!(file, file2, "{name} does not round-trip");
            assert_eq!(fingerprint(&file), fingerprint(&file2));
        }
    }

    #[test]
    fn rejects_broken_multiplication_table() {
        // x·x = x is a perfectly good idempotent algebra
        let ok = r#"{
            "g": 1,
            "algebra": {
                "basis": ["1", "x"],
                "mult_table": [
                    [["1","0"],["0","1"]],
                    [["0","1"],["0","1"]]
                ]
            },
            "tau": [[{"re": ["0","0"], "im": ["1","0"]}]]
        }"#;
        assert!(parse_spec(ok).is_ok());
        // x·y and y·x disagree
        let bad = r#"{
            "g": 1,
            "algebra": {
                "basis": ["1", "x", "y"],
                "mult_table": [
                    [["1","0","0"],["0","1","0"],["0","0","1"]],
                    [["0","1","0"],["0","0","1"],["1","0","0"]],
                    [["0","0","1"],["0","1","0"],["0","1","0"]]
                ]
            },
            "tau": [[{"re": ["0","0","0"], "im": ["1","0","0"]}]]
        }"#;
        let err = parse_spec(bad).unwrap_err();
        match err {
            SpecError::Validation(msg) => {
                assert!(
                    msg.contains("commutative") || msg.contains("associative"),
                    "unexpected message: {msg}"
                );
            }
            other => panic!("expected validation error, got {other}"),
        }
    }

    #[test]
    fn rejects_singular_imaginary_part() {
        let text = r#"{
            "g": 1,
            "algebra": {"basis": ["1"], "mult_table": [[["1"]]]},
            "tau": [[{"re": ["1"], "im": ["0"]}]]
        }"#;
        let err = parse_spec(text).unwrap_err();
        assert!(err.to_string().contains("singular"), "{err}");
    }

    #[test]
    fn parse_error_carries_location() {
        let err = parse_spec("{ not json").unwrap_err();
        match err {
            SpecError::Parse { line, .. } => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other}"),
        }
    }
}
