//! Result and error documents.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use curvres_core::{ExactRational, ResidueReport, UniversalPolynomial};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::job::{chern_index, ValidJob};
use crate::{CliError, FORMAT_VERSION};

/// Chern exponents serialized as an object with numerically ordered keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernExponents(pub Vec<(usize, u32)>);

impl Serialize for ChernExponents {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (i, e) in &self.0 {
            map.serialize_entry(&format!("c{i}"), e)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for ChernExponents {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = ChernExponents;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a map from c<i> to exponents")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut a: A) -> Result<ChernExponents, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = a.next_entry::<String, u32>()? {
                    let i = chern_index(&k).ok_or_else(|| de::Error::custom(format!("bad key {k}")))?;
                    out.push((i, v));
                }
                out.sort();
                Ok(ChernExponents(out))
            }
        }
        d.deserialize_map(V)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobEcho {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub monomial: ChernExponents,
    pub override_degree_check: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intersection_numbers: Option<BTreeMap<String, String>>,
}

/// One term: `coefficient` as `p/q` and `monomial` as `[symbol, power]`
/// pairs in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub coefficient: String,
    pub monomial: Vec<(String, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Factor {
    pub factor: String,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Step {
    pub variable: String,
    pub states: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Vanishing {
    pub l: usize,
    pub option1: bool,
    pub option2: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDoc {
    pub numerator_degree: u32,
    pub linear_forms: Vec<String>,
    pub denominator: Vec<Factor>,
    pub denominator_degree: u32,
    pub integrand_degree: i64,
    pub contributing_terms: usize,
    pub steps: Vec<Step>,
    pub vanishing: Vec<Vanishing>,
}

impl From<&ResidueReport> for ReportDoc {
    fn from(r: &ResidueReport) -> Self {
        ReportDoc {
            numerator_degree: r.numerator_degree,
            linear_forms: r.linear_forms.clone(),
            denominator: r.denominator.iter().map(|(f, m)| Factor { factor: f.clone(), multiplicity: *m }).collect(),
            denominator_degree: r.denominator_degree,
            integrand_degree: r.integrand_degree,
            contributing_terms: r.contributing_terms,
            steps: r.steps.iter().map(|s| Step { variable: s.variable.clone(), states: s.states }).collect(),
            vanishing: r.vanishing.iter().map(|v| Vanishing { l: v.l, option1: v.option1, option2: v.option2 }).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub format_version: u32,
    pub job: JobEcho,
    pub universal_polynomial: Vec<Term>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numeric_value: Option<String>,
    pub residue_report: ReportDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorDocument {
    pub format_version: u32,
    pub error: ErrorBody,
}

/// Either document, as written for one job.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Document {
    Result(Box<ResultDocument>),
    Error(ErrorDocument),
}

pub fn terms(u: &UniversalPolynomial) -> Vec<Term> {
    u.terms()
        .iter()
        .map(|(m, c)| Term {
            coefficient: rational_string(c),
            monomial: m.iter().map(|(s, e)| (s.to_string(), e)).collect(),
        })
        .collect()
}

/// `p/q`, with `q` omitted when it is 1.
pub fn rational_string(c: &ExactRational) -> String {
    c.to_string()
}

impl ResultDocument {
    pub fn new(
        job: &ValidJob,
        u: &UniversalPolynomial,
        numeric: Option<&ExactRational>,
        report: &ResidueReport,
    ) -> Self {
        let spec = &job.spec;
        ResultDocument {
            format_version: FORMAT_VERSION,
            job: JobEcho {
                n: spec.n,
                k: spec.k,
                r: spec.r,
                monomial: ChernExponents(spec.monomial.exponents().iter().map(|(&i, &e)| (i, e)).collect()),
                override_degree_check: job.job.override_degree_check,
                intersection_numbers: job.job.intersection_numbers.clone(),
            },
            universal_polynomial: terms(u),
            numeric_value: numeric.map(rational_string),
            residue_report: ReportDoc::from(report),
        }
    }

    pub fn polynomial_string(&self) -> String {
        if self.universal_polynomial.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, t) in self.universal_polynomial.iter().enumerate() {
            let (neg, abs) = match t.coefficient.strip_prefix('-') {
                Some(a) => (true, a),
                None => (false, t.coefficient.as_str()),
            };
            match (i, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            let mono: Vec<String> = t
                .monomial
                .iter()
                .map(|(sym, e)| if *e == 1 { sym.clone() } else { format!("{sym}^{e}") })
                .collect();
            if mono.is_empty() {
                s.push_str(abs);
            } else {
                if abs != "1" {
                    s.push_str(abs);
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }

    pub fn to_text(&self) -> String {
        let j = &self.job;
        let mono: Vec<String> =
            j.monomial.0.iter().map(|(i, e)| if *e == 1 { format!("c{i}") } else { format!("c{i}^{e}") }).collect();
        let mono = if mono.is_empty() { "1".to_string() } else { mono.join("*") };
        let mut s = String::new();
        let _ = writeln!(s, "job: n = {}, k = {}, r = {}, M = {}", j.n, j.k, j.r, mono);
        let _ = writeln!(s, "universal polynomial: {}", self.polynomial_string());
        if let Some(v) = &self.numeric_value {
            let _ = writeln!(s, "numeric value: {v}");
        }
        let r = &self.residue_report;
        let _ = writeln!(s, "numerator degree: {}", r.numerator_degree);
        let den: Vec<String> = r
            .denominator
            .iter()
            .map(|f| if f.multiplicity == 1 { format!("({})", f.factor) } else { format!("({})^{}", f.factor, f.multiplicity) })
            .collect();
        let _ = writeln!(s, "denominator: {}", den.join(" "));
        let _ = writeln!(s, "integrand degree: {}", r.integrand_degree);
        let _ = writeln!(s, "contributing numerator terms: {}", r.contributing_terms);
        for st in &r.steps {
            let _ = writeln!(s, "residue in {}: {} values", st.variable, st.states);
        }
        for v in &r.vanishing {
            let _ = writeln!(s, "l = {}: option 1 {}, option 2 {}", v.l, v.option1, v.option2);
        }
        s
    }
}

impl ErrorDocument {
    pub fn new(err: &CliError) -> Self {
        let (kind, path) = match err {
            CliError::Parse { path, .. } => ("parse", Some(path.clone()).filter(|p| !p.is_empty())),
            CliError::Domain(e) => (crate::error_kind(e), None),
            CliError::Io(_) => ("io", None),
            CliError::Usage(_) => ("usage", None),
        };
        ErrorDocument {
            format_version: FORMAT_VERSION,
            error: ErrorBody { kind: kind.to_string(), message: err.message(), path },
        }
    }

    pub fn to_text(&self) -> String {
        match &self.error.path {
            Some(p) => format!("error ({}) at {}: {}\n", self.error.kind, p, self.error.message),
            None => format!("error ({}): {}\n", self.error.kind, self.error.message),
        }
    }
}

impl Document {
    pub fn to_text(&self) -> String {
        match self {
            Document::Result(r) => r.to_text(),
            Document::Error(e) => e.to_text(),
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}
