//! Batch front end: job files in, result documents out.

pub mod document;
pub mod job;
pub mod selftest;

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use curvres_core::dual::{epd_pipeline, qk_lookup, Budget};
use curvres_core::engine::integrate_with_report;
use curvres_core::{evaluate_numeric, Error};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use document::{Document, ErrorDocument, ResultDocument};
pub use job::{IntegralJob, OutputFormat};

pub const FORMAT_VERSION: u32 = 1;

/// Time limit for orbit computations without `--long-running`.
pub const DEFAULT_EPD_LIMIT: Duration = Duration::from_secs(300);

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{message}")]
    Parse { path: String, message: String },
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Domain(_) => 1,
            CliError::Io(_) | CliError::Usage(_) => 2,
        }
    }

    pub fn message(&self) -> String {
        self.to_string()
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::OutOfRange(_) => "out_of_range",
        Error::NotSymmetric(_) => "not_symmetric",
        Error::Precondition(_) => "precondition",
        Error::QkUnavailable(_) => "qk_unavailable",
        Error::WeightedDegree { .. } => "weighted_degree",
        Error::InvalidSpec(_) => "invalid_spec",
        Error::MissingEntry(_) => "missing_entry",
        Error::Timeout(_) => "timeout",
        Error::Internal(_) => "internal",
    }
}

/// Output of one command: what to print and the process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

/// Runs one job given as text. The elapsed time goes to the second field
/// and never into the document.
pub fn run_job_text(text: &str) -> (Result<ResultDocument, CliError>, Duration) {
    let start = Instant::now();
    let res = (|| {
        let job = job::parse_job(text)?;
        qk_lookup(job.k)?;
        let valid = job::validate(job)?;
        let (u, report) = integrate_with_report(&valid.spec)?;
        let numeric = match &valid.table {
            Some(t) => Some(evaluate_numeric(&u, t)?),
            None => None,
        };
        Ok(ResultDocument::new(&valid, &u, numeric.as_ref(), &report))
    })();
    (res, start.elapsed())
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

/// Runs one job file; the job's `output` field is returned for format
/// selection.
pub fn run_job_file(path: &Path) -> (Document, i32, Option<OutputFormat>, Duration) {
    let text = match read(path) {
        Ok(t) => t,
        Err(e) => return (Document::Error(ErrorDocument::new(&e)), e.exit_code(), None, Duration::ZERO),
    };
    let fmt = job::parse_job(&text).ok().and_then(|j| j.output);
    match run_job_text(&text) {
        (Ok(doc), t) => (Document::Result(Box::new(doc)), 0, fmt, t),
        (Err(e), t) => (Document::Error(ErrorDocument::new(&e)), e.exit_code(), fmt, t),
    }
}

fn render_docs(docs: &[Document], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json if docs.len() == 1 => document::to_json(&docs[0]),
        OutputFormat::Json => document::to_json(&docs),
        OutputFormat::Text => docs.iter().map(|d| d.to_text()).collect::<Vec<_>>().join("\n"),
    }
}

/// `integrate`: one or more job files, evaluated on `threads` worker
/// threads; documents are emitted in input order.
pub fn integrate(paths: &[PathBuf], threads: usize, format: Option<OutputFormat>) -> Outcome {
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build() {
        Ok(p) => p,
        Err(e) => return Outcome { code: 2, output: format!("cannot start worker threads: {e}\n") },
    };
    let results: Vec<_> = pool.install(|| paths.par_iter().map(|p| run_job_file(p)).collect());
    for (path, (_, _, _, t)) in paths.iter().zip(&results) {
        eprintln!("{}: {:.1} ms", path.display(), t.as_secs_f64() * 1e3);
    }
    let format = format.or_else(|| results.first().and_then(|r| r.2)).unwrap_or_default();
    let code = results.iter().map(|r| r.1).max().unwrap_or(0);
    let docs: Vec<Document> = results.into_iter().map(|r| r.0).collect();
    Outcome { code, output: render_docs(&docs, format) }
}

fn error_outcome(e: &CliError, format: OutputFormat) -> Outcome {
    let doc = ErrorDocument::new(e);
    let output = match format {
        OutputFormat::Json => document::to_json(&doc),
        OutputFormat::Text => doc.to_text(),
    };
    Outcome { code: e.exit_code(), output }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QkDocument {
    pub format_version: u32,
    pub k: usize,
    pub q: String,
}

/// `qk <k>`: the tabulated dual.
pub fn qk(k: usize, format: OutputFormat) -> Outcome {
    match qk_lookup(k) {
        Ok(q) => {
            let output = match format {
                OutputFormat::Json => document::to_json(&QkDocument { format_version: FORMAT_VERSION, k, q: q.to_string() }),
                OutputFormat::Text => format!("Q_{k} = {q}\n"),
            };
            Outcome { code: 0, output }
        }
        Err(e) => error_outcome(&CliError::Domain(e), format),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpdDocument {
    pub format_version: u32,
    pub k: usize,
    pub coordinates: Vec<String>,
    pub orbit_ideal: Vec<String>,
    pub multidegree: String,
    pub table: String,
    pub matches: bool,
}

/// `epd-verify <k>`: recomputes `Q_k` from the orbit closure and compares
/// it with the table.
pub fn epd_verify(k: usize, long_running: bool, format: OutputFormat) -> Outcome {
    if k >= 5 && !long_running {
        return error_outcome(&CliError::Usage(format!("epd-verify {k} needs --long-running")), format);
    }
    let budget = if long_running { Budget::default() } else { Budget { time: Some(DEFAULT_EPD_LIMIT) } };
    let res = (|| -> Result<_, CliError> {
        let table = qk_lookup(k)?;
        let (mdeg, orbit) = epd_pipeline(k, budget)?;
        Ok((table, mdeg, orbit))
    })();
    let (table, mdeg, orbit) = match res {
        Ok(x) => x,
        Err(e) => return error_outcome(&e, format),
    };
    let matches = mdeg == table;
    let output = match format {
        OutputFormat::Json => document::to_json(&EpdDocument {
            format_version: FORMAT_VERSION,
            k,
            coordinates: orbit.coords.iter().map(|c| c.name()).collect(),
            orbit_ideal: orbit.ideal.generators.iter().map(|g| g.display(&orbit.ideal.names).to_string()).collect(),
            multidegree: mdeg.to_string(),
            table: table.to_string(),
            matches,
        }),
        OutputFormat::Text => format!(
            "{}multidegree: {mdeg}\ntable Q_{k}: {table}\n{}\n",
            orbit.audit_text(),
            if matches { "match" } else { "MISMATCH" }
        ),
    };
    Outcome { code: if matches { 0 } else { 1 }, output }
}

/// `selftest`: the fixture table; exit 0 iff every row passes.
pub fn selftest_command(format: OutputFormat) -> Outcome {
    selftest::render(&selftest::run(&qk_lookup), format)
}
