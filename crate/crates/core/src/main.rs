use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use log::{info, warn};

use unitable::dataset::{self, default_orientation, is_valid_pair, ConvertOptions};
use unitable::{Error, Orientation, Scheme};

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;

#[derive(Parser)]
#[command(
    name = "unitable",
    version,
    about = "Linearize tables, KG triples and meaning representations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert JSONL records into linearized JSONL output records
    Convert {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Output file (stdout if not provided)
        #[arg(long = "out", value_name = "FILE")]
        output: Option<PathBuf>,
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        /// Required for the unified scheme; fixed for the others
        #[arg(long, value_enum)]
        orientation: Option<OrientationArg>,
        /// Abort on the first data error
        #[arg(long)]
        strict: bool,
        /// Parse every unified output back and compare it with its source
        #[arg(long)]
        validate: bool,
    },
    /// Print corpus statistics as JSON
    Stats {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
    /// Parse the unified strings of a JSONL file
    Validate {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Field holding the linearized text
        #[arg(long, default_value = "text")]
        column: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Unified,
    Totto,
    Unifiedskg,
    Logicnlg,
    E2eConcat,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Unified => Scheme::Unified,
            SchemeArg::Totto => Scheme::Totto,
            SchemeArg::Unifiedskg => Scheme::UnifiedSkg,
            SchemeArg::Logicnlg => Scheme::LogicNlg,
            SchemeArg::E2eConcat => Scheme::E2eConcat,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientationArg {
    Highlighted,
    Row,
    Column,
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::Highlighted => Orientation::Highlighted,
            OrientationArg::Row => Orientation::Row,
            OrientationArg::Column => Orientation::Column,
        }
    }
}

enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Data(e.into())
    }
}

fn report_errors<'a>(errors: impl IntoIterator<Item = &'a Error>) -> usize {
    let mut n = 0;
    for e in errors {
        eprintln!("error[{}]: {e}", e.code());
        n += 1;
    }
    n
}

fn resolve_orientation(
    scheme: Scheme,
    requested: Option<OrientationArg>,
) -> Result<Orientation, Failure> {
    let orientation = match (
        requested.map(Orientation::from),
        default_orientation(scheme),
    ) {
        (Some(o), _) => o,
        (None, Some(o)) => o,
        (None, None) => {
            return Err(Failure::Usage(format!(
                "--orientation is required for scheme {scheme}"
            )))
        }
    };
    let explicit_na =
        requested.is_some() && default_orientation(scheme) == Some(Orientation::NotApplicable);
    if explicit_na || !is_valid_pair(scheme, orientation) {
        return Err(Failure::Usage(format!(
            "scheme {scheme} does not support orientation {orientation}"
        )));
    }
    Ok(orientation)
}

fn run(command: Command) -> Result<bool, Failure> {
    match command {
        Command::Convert {
            input,
            output,
            scheme,
            orientation,
            strict,
            validate,
        } => {
            let scheme = Scheme::from(scheme);
            let orientation = resolve_orientation(scheme, orientation)?;
            let reader = BufReader::new(File::open(&input)?);
            let writer: Box<dyn Write> = match output {
                Some(path) => Box::new(BufWriter::new(File::create(path)?)),
                None => Box::new(BufWriter::new(io::stdout().lock())),
            };
            let opts = ConvertOptions {
                strict,
                validate,
                ..ConvertOptions::new(scheme, orientation)
            };
            let report = dataset::convert_stream(reader, writer, &opts)?;
            info!(
                "{} records, {} outputs, {} skipped, {} errors",
                report.records,
                report.outputs,
                report.skipped,
                report.errors.len()
            );
            if report.skipped > 0 {
                warn!(
                    "{} records skipped: scheme {scheme} does not apply to their form",
                    report.skipped
                );
            }
            Ok(report_errors(&report.errors) == 0)
        }
        Command::Stats { input } => {
            let (stats, errors) = dataset::stats(&input)?;
            let json = serde_json::to_string_pretty(&stats).map_err(io::Error::from)?;
            println!("{json}");
            Ok(report_errors(&errors) == 0)
        }
        Command::Validate { input, column } => {
            let reader = BufReader::new(File::open(&input)?);
            let report = dataset::validate_stream(reader, &column)?;
            for (line, e) in &report.failures {
                eprintln!("error[{}]: line {line}: {e}", e.code());
            }
            println!(
                "checked {} strings, skipped {}, {} failures",
                report.checked,
                report.skipped,
                report.failures.len()
            );
            Ok(report.failures.is_empty())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("UNITABLE_LOG", "warn")).init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_DATA),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Data(e)) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(EXIT_DATA)
        }
    }
}
