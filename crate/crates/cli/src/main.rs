use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use grey_hybrid::problem::ProblemFile;
use grey_hybrid::{bundled, emit_report, run_pipeline, DecisionProblem, Error, ReportFormat};

const EXIT_IO: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;

#[derive(Parser)]
#[command(name = "grey-hybrid", version, about = "Rank plans on mixed-type attributes with hybrid grey relations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem file and emit the report.
    Solve {
        /// Problem file (JSON, schema 1).
        file: PathBuf,
        /// text, csv or json-report
        #[arg(long, default_value = "text", value_parser = parse_format)]
        format: ReportFormat,
        /// Distinguishing coefficient in (0, 1).
        #[arg(long)]
        rho: Option<f64>,
        /// Preference toward the positive ideal; theta- becomes 1 - theta+.
        #[arg(long)]
        theta_plus: Option<f64>,
        /// Four comma-separated Borda weights (topsis, grey-approach, membership, max-entropy).
        #[arg(long, value_parser = parse_borda_weights)]
        borda_weights: Option<[f64; 4]>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the bundled fighter-development problem file.
    Example,
}

fn parse_format(s: &str) -> Result<ReportFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_borda_weights(s: &str) -> Result<[f64; 4], String> {
    let values = s
        .split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|e| format!("{v:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    values
        .try_into()
        .map_err(|v: Vec<f64>| format!("expected 4 comma-separated weights, got {}", v.len()))
}

fn solve(
    file: PathBuf,
    format: ReportFormat,
    rho: Option<f64>,
    theta_plus: Option<f64>,
    borda_weights: Option<[f64; 4]>,
    out: Option<PathBuf>,
) -> Result<(), Error> {
    let text = std::fs::read_to_string(&file)?;
    let mut source = ProblemFile::from_json(&text)?;
    if let Some(rho) = rho {
        source.params.rho = rho;
    }
    if let Some(t) = theta_plus {
        source.params.theta_plus = t;
        source.params.theta_minus = 1.0 - t;
    }
    if let Some(w) = borda_weights {
        source.params.borda_weights = w;
    }
    let problem = DecisionProblem::from_file(source)?;
    let report = run_pipeline(&problem)?;
    let bytes = emit_report(&report, format)?;
    match out {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().write_all(&bytes)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve { file, format, rho, theta_plus, borda_weights, out } => {
            solve(file, format, rho, theta_plus, borda_weights, out)
        }
        Command::Example => {
            print!("{}", bundled::FIGHTER_DEVELOPMENT);
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_degenerate() {
                EXIT_DEGENERATE
            } else if e.is_io() {
                EXIT_IO
            } else {
                EXIT_INVALID
            })
        }
    }
}
