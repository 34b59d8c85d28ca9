use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use curvres_cli::{epd_verify, integrate, qk, selftest_command, Outcome, OutputFormat};

#[derive(Parser)]
#[command(name = "curvres", version, about = "Tautological integrals over curvilinear Hilbert schemes")]
struct Cli {
    /// Write the document here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Output format; defaults to the job's `output` field, then json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Allow the k = 5 orbit computation and lift the time limit.
    #[arg(long, global = true)]
    long_running: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one or more job files.
    Integrate {
        #[arg(required = true, value_name = "JOBFILE")]
        files: Vec<PathBuf>,
        /// Worker threads for a batch.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Run the built-in fixture suite.
    Selftest,
    /// Print the tabulated Q_k.
    Qk { k: usize },
    /// Recompute Q_k from the Borel orbit closure and compare with the table.
    EpdVerify { k: usize },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format.map(|f| match f {
        Format::Json => OutputFormat::Json,
        Format::Text => OutputFormat::Text,
    });
    let fixed = format.unwrap_or_default();
    let Outcome { code, output } = match cli.command {
        Command::Integrate { files, jobs } => integrate(&files, jobs, format),
        Command::Selftest => selftest_command(fixed),
        Command::Qk { k } => qk(k, fixed),
        Command::EpdVerify { k } => epd_verify(k, cli.long_running, fixed),
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &output) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{output}"),
    }
    ExitCode::from(code as u8)
}
