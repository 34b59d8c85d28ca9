//! Job files.

use std::collections::BTreeMap;

use curvres_core::{Alphabet, ChernMonomial, ExactRational, IntegrandSpec, IntersectionTable, Monomial};
use serde::{Deserialize, Serialize};

use crate::{CliError, FORMAT_VERSION};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

/// The on-disk job, as written by the user.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegralJob {
    #[serde(default)]
    pub format_version: Option<u32>,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub monomial: BTreeMap<String, u32>,
    #[serde(default)]
    pub override_degree_check: bool,
    #[serde(default)]
    pub intersection_numbers: Option<BTreeMap<String, String>>,
    #[serde(default)]
    pub output: Option<OutputFormat>,
}

/// A job checked against the engine's preconditions.
#[derive(Clone, Debug)]
pub struct ValidJob {
    pub job: IntegralJob,
    pub spec: IntegrandSpec,
    pub table: Option<IntersectionTable>,
}

fn field(path: &str, message: impl Into<String>) -> CliError {
    CliError::Parse { path: path.to_string(), message: message.into() }
}

/// `"c3"` to `3`.
pub fn chern_index(key: &str) -> Option<usize> {
    let idx = key.strip_prefix('c')?;
    if idx.starts_with('0') || idx.starts_with('+') {
        return None;
    }
    idx.parse().ok().filter(|&i| i > 0)
}

pub fn parse_job(text: &str) -> Result<IntegralJob, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        field(if path == "." { "" } else { &path }, e.into_inner().to_string())
    })
}

pub fn validate(job: IntegralJob) -> Result<ValidJob, CliError> {
    if let Some(v) = job.format_version {
        if v != FORMAT_VERSION {
            return Err(field("format_version", format!("unsupported version {v}, expected {FORMAT_VERSION}")));
        }
    }
    let mut exps = Vec::new();
    for (key, &e) in &job.monomial {
        let i = chern_index(key).ok_or_else(|| field(&format!("monomial.{key}"), "expected a key of the form c<i>, i ≥ 1"))?;
        exps.push((i, e));
    }
    let monomial = ChernMonomial::new(exps).map_err(|e| field("monomial", e.to_string()))?;
    let spec = IntegrandSpec::new(job.n, job.k, job.r, monomial, job.override_degree_check)?;
    let table = match &job.intersection_numbers {
        None => None,
        Some(map) => {
            let mut entries = BTreeMap::new();
            for (key, value) in map {
                let path = format!("intersection_numbers.{key}");
                let m: Monomial = key.parse().map_err(|e: curvres_core::Error| field(&path, e.to_string()))?;
                for s in m.symbols() {
                    let ok = match s.alphabet() {
                        Alphabet::SegreX => s.index() <= job.n,
                        Alphabet::ChernF => s.index() <= job.r,
                        _ => false,
                    };
                    if !ok {
                        return Err(field(&path, format!("symbol {s} is not an s_i(X) or c_j(F) class")));
                    }
                }
                if m.graded_degree() as usize != job.n {
                    return Err(field(&path, format!("degree {} ≠ n = {}", m.graded_degree(), job.n)));
                }
                let v: ExactRational = value.parse().map_err(|e: curvres_core::rational::ParseRationalError| field(&path, e.to_string()))?;
                entries.insert(m, v);
            }
            Some(IntersectionTable::new(entries))
        }
    };
    Ok(ValidJob { job, spec, table })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys() {
        assert_eq!(chern_index("c1"), Some(1));
        assert_eq!(chern_index("c12"), Some(12));
        assert_eq!(chern_index("c0"), None);
        assert_eq!(chern_index("c01"), None);
        assert_eq!(chern_index("d1"), None);
    }

    #[test]
    fn field_paths() {
        let err = parse_job(r#"{"n": 2, "k": 1, "r": "one", "monomial": {}}"#).unwrap_err();
        assert!(matches!(err, CliError::Parse { ref path, .. } if path == "r"), "{err:?}");
        let err = parse_job(r#"{"n": 2, "k": 1, "r": 1, "monomial": {"c1": -3}}"#).unwrap_err();
        assert!(matches!(err, CliError::Parse { ref path, .. } if path == "monomial.c1"), "{err:?}");
        let job = parse_job(r#"{"n": 2, "k": 1, "r": 1, "monomial": {"x1": 3}}"#).unwrap();
        let err = validate(job).unwrap_err();
        assert!(matches!(err, CliError::Parse { ref path, .. } if path == "monomial.x1"), "{err:?}");
        let err = parse_job(r#"{"n": 2, "k": 1, "r": 1, "monomial": {}, "extra": 1}"#).unwrap_err();
        assert!(matches!(err, CliError::Parse { .. }));
    }

    #[test]
    fn table_entries_are_checked() {
        let job = parse_job(
            r#"{"n": 2, "k": 1, "r": 1, "monomial": {"c1": 3}, "intersection_numbers": {"s1*cF1": "5", "s1": "2"}}"#,
        )
        .unwrap();
        let err = validate(job).unwrap_err();
        assert!(matches!(err, CliError::Parse { ref path, .. } if path == "intersection_numbers.s1"), "{err:?}");
    }
}
