//! The on-disk algebra format: a JSON object with row-major integer tables.
//!
//! ```json
//! {
//!   "name": "H3",
//!   "signature": "rl",
//!   "size": 3,
//!   "meet": [[0,0,0],[0,1,1],[0,1,2]],
//!   ...
//!   "bot": 0,
//!   "top": 2
//! }
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::algebra::{
    validate_axioms, AlgebraParts, FiniteAlgebra, Op, Signature, Table, ValidationReport,
};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDocument {
    #[serde(default)]
    name: Option<String>,
    signature: String,
    size: usize,
    #[serde(default)]
    meet: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    join: Option<Vec<Vec<usize>>>,
    prod: Vec<Vec<usize>>,
    imp: Vec<Vec<usize>>,
    #[serde(default)]
    bot: Option<usize>,
    top: usize,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed document: {0}")]
    Parse(String),
    #[error("invalid algebra: {0}")]
    Invalid(ValidationReport),
}

impl LoadError {
    /// Parse and I/O problems versus a well-formed document whose tables
    /// fail the axioms.
    pub fn is_validation(&self) -> bool {
        matches!(self, LoadError::Invalid(_))
    }
}

#[derive(Debug, Clone)]
pub struct Loaded {
    pub algebra: FiniteAlgebra,
    /// Present when the elements were relabeled to put bottom first and top
    /// last.
    pub notice: Option<String>,
}

fn signature_from_tag(tag: &str) -> Option<Signature> {
    [
        Signature::ResiduatedLattice,
        Signature::Hoop,
        Signature::BoundedHoop,
    ]
    .into_iter()
    .find(|s| s.tag() == tag)
}

/// Parses and validates a document, normalizing the constant positions.
pub fn from_json_str(text: &str) -> Result<Loaded, LoadError> {
    let doc: AlgebraDocument =
        serde_json::from_str(text).map_err(|e| LoadError::Parse(e.to_string()))?;
    let signature = signature_from_tag(&doc.signature)
        .ok_or_else(|| LoadError::Parse(format!("unknown signature {:?}", doc.signature)))?;
    let n = doc.size;
    let table = |op: Op, rows: &[Vec<usize>]| {
        Table::from_rows(op, n, rows).map_err(|e| LoadError::Parse(e.to_string()))
    };
    let parts = AlgebraParts {
        name: doc.name,
        signature,
        meet: doc
            .meet
            .as_deref()
            .map(|r| table(Op::Meet, r))
            .transpose()?,
        join: doc
            .join
            .as_deref()
            .map(|r| table(Op::Join, r))
            .transpose()?,
        prod: table(Op::Prod, &doc.prod)?,
        imp: table(Op::Imp, &doc.imp)?,
        bot: doc.bot,
        top: doc.top,
    };
    let algebra = FiniteAlgebra::new(parts).map_err(|e| LoadError::Parse(e.to_string()))?;
    let report = validate_axioms(&algebra);
    if !report.is_valid() {
        return Err(LoadError::Invalid(report));
    }
    if algebra.is_canonically_placed() {
        return Ok(Loaded {
            algebra,
            notice: None,
        });
    }
    let (normalized, perm) = algebra.normalize_constants();
    let notice =
        format!("relabeled elements to put bottom first and top last (old -> new: {perm:?})");
    Ok(Loaded {
        algebra: normalized,
        notice: Some(notice),
    })
}

pub fn load(path: &Path) -> Result<Loaded, LoadError> {
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    from_json_str(&text)
}

fn rows_json(t: &Table) -> String {
    serde_json::to_string(&t.rows()).expect("integer rows serialize")
}

/// Canonical text: one field per line, each table on a single line.
pub fn to_json_string(a: &FiniteAlgebra) -> String {
    let mut fields: Vec<String> = Vec::new();
    if let Some(name) = a.name() {
        fields.push(format!(
            "\"name\": {}",
            serde_json::to_string(name).expect("string serializes")
        ));
    }
    fields.push(format!("\"signature\": \"{}\"", a.signature().tag()));
    fields.push(format!("\"size\": {}", a.size()));
    let parts = a.clone().into_parts();
    if let Some(m) = &parts.meet {
        fields.push(format!("\"meet\": {}", rows_json(m)));
    }
    if let Some(j) = &parts.join {
        fields.push(format!("\"join\": {}", rows_json(j)));
    }
    fields.push(format!("\"prod\": {}", rows_json(&parts.prod)));
    fields.push(format!("\"imp\": {}", rows_json(&parts.imp)));
    if let Some(b) = parts.bot {
        fields.push(format!("\"bot\": {b}"));
    }
    fields.push(format!("\"top\": {}", parts.top));
    format!("{{\n  {}\n}}\n", fields.join(",\n  "))
}

pub fn save(a: &FiniteAlgebra, path: &Path) -> std::io::Result<()> {
    fs::write(path, to_json_string(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Axiom;
    use crate::catalog;

    #[test]
    fn roundtrip_catalog() {
        for a in catalog::small_catalog() {
            let text = to_json_string(&a);
            let back = from_json_str(&text).unwrap();
            assert!(back.notice.is_none());
            assert_eq!(back.algebra, a, "{}", a.label());
            assert_eq!(to_json_string(&back.algebra), text);
        }
        let hoop = catalog::h4().hoop_reduct();
        let back = from_json_str(&to_json_string(&hoop)).unwrap().algebra;
        assert_eq!(back, hoop);
    }

    #[test]
    fn mutated_imp_names_residuation() {
        let text = to_json_string(&catalog::h4());
        let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
        v["imp"][3][0] = 1.into();
        let err = from_json_str(&v.to_string()).unwrap_err();
        let LoadError::Invalid(report) = err else {
            panic!("expected validation error")
        };
        assert!(report.violates(Axiom::Residuation));
    }

    #[test]
    fn missing_join_is_a_parse_error() {
        let text = to_json_string(&catalog::h3());
        let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
        v.as_object_mut().unwrap().remove("join");
        let err = from_json_str(&v.to_string()).unwrap_err();
        assert!(matches!(err, LoadError::Parse(_)));
        assert!(!err.is_validation());
        assert!(matches!(from_json_str("{"), Err(LoadError::Parse(_))));
        assert!(matches!(
            from_json_str(r#"{"signature":"rl"}"#),
            Err(LoadError::Parse(_))
        ));
    }

    #[test]
    fn noncanonical_files_are_normalized() {
        // swap the roles of indices 0 and 2 in H3
        let a = catalog::h3().relabel(&[2, 1, 0]);
        let loaded = from_json_str(&to_json_string(&a)).unwrap();
        assert!(loaded.notice.is_some());
        assert_eq!(loaded.algebra.prod_table(), catalog::h3().prod_table());
    }
}
