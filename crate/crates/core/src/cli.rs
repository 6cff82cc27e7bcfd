//! The `bks` command line.
//!
//! Exit codes: 0 success / colorable / pass, 1 uncolorable, 2 usage error,
//! 3 invalid or inadmissible input, 4 oracle disagreement, 5 theorem check
//! failed. Every error is reported as one line `error: <kind>: <reason>`.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::coloring::{brute_force, decide, identify_with, IdentifyOptions, Semantics};
use crate::ensemble::{Ensemble, ValidationOptions};
use crate::minimality::{sweep, verify_theorem, TheoremId};
use crate::report::{
    sweep_table, to_line, verdict_summary, SweepRecord, TheoremRecord, ValidateRecord,
    VerdictRecord,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNCOLORABLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_ORACLE_DISAGREES: i32 = 4;
pub const EXIT_THEOREM_FAILED: i32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Human,
    Record,
}

#[derive(Debug, Parser)]
#[command(name = "bks", version, about = "Check non-contextual colorability of qubit POVM ensembles")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Human)]
    pub output: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// Ensemble file.
    pub file: Option<PathBuf>,
    /// Builtin ensemble: one, half-half, cabello-xyz.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that every POVM is positive and sums to the identity.
    Validate {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        allow_zero_elements: bool,
    },
    /// Decide whether a non-contextual yes/no assignment exists.
    Color {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_parser = parse_semantics)]
        semantics: Semantics,
        /// Cross-check with the brute-force oracle.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        allow_zero_elements: bool,
    },
    /// Color every canonical pattern of a shape.
    Sweep {
        /// POVM sizes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        shape: Vec<usize>,
        #[arg(long, value_parser = parse_semantics)]
        semantics: Semantics,
        #[arg(long)]
        list_uncolorable: bool,
    },
    /// Re-run the case analysis behind a minimality result.
    Theorem {
        #[arg(value_parser = parse_theorem)]
        id: TheoremId,
    },
    /// Show a builtin ensemble.
    Builtin {
        name: String,
        /// Print the ensemble in file format.
        #[arg(long)]
        emit: bool,
    },
}

fn parse_semantics(s: &str) -> Result<Semantics, String> {
    s.parse().map_err(|e: crate::coloring::UnknownSemantics| e.to_string())
}

fn parse_theorem(s: &str) -> Result<TheoremId, String> {
    s.parse().map_err(|e: crate::minimality::UnknownTheorem| e.to_string())
}

fn one_line(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

struct Failure {
    code: i32,
    kind: &'static str,
    reason: String,
}

impl Failure {
    fn invalid(reason: impl ToString) -> Self {
        Failure {
            code: EXIT_INVALID,
            kind: "input",
            reason: reason.to_string(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let rendered = e.render().to_string();
            let first = rendered
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid arguments");
            let reason = one_line(first.trim_start_matches("error:"));
            let _ = writeln!(err, "error: usage: {reason}");
            return EXIT_USAGE;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}: {}", f.kind, one_line(&f.reason));
            f.code
        }
    }
}

fn load(input: &InputArgs) -> Result<Ensemble, Failure> {
    match (&input.file, &input.builtin) {
        (_, Some(name)) => Ensemble::builtin(name).map_err(Failure::invalid),
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure {
                code: EXIT_INVALID,
                kind: "io",
                reason: format!("{}: {e}", path.display()),
            })?;
            Ensemble::parse(&text).map_err(|e| Failure::invalid(format!("{}:{e}", path.display())))
        }
        (None, None) => Err(Failure {
            code: EXIT_USAGE,
            kind: "usage",
            reason: "an ensemble file or --builtin is required".into(),
        }),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure {
        code: EXIT_INVALID,
        kind: "io",
        reason: e.to_string(),
    })
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let record = cli.output == OutputFormat::Record;
    match &cli.command {
        Command::Validate {
            input,
            allow_zero_elements,
        } => {
            let e = load(input)?;
            let report = e.validate_with(ValidationOptions {
                allow_zero_elements: *allow_zero_elements,
            });
            if record {
                emit(out, &format!("{}\n", to_line(&ValidateRecord::new(e.name(), &report))))?;
            } else if report.is_valid() {
                emit(out, &format!("{}: valid ({} POVMs)\n", e.name(), e.povms().len()))?;
            } else {
                let mut text = format!("{}: invalid\n", e.name());
                for issue in &report.issues {
                    text.push_str(&format!("  {issue}\n"));
                }
                emit(out, &text)?;
            }
            Ok(if report.is_valid() { EXIT_OK } else { EXIT_INVALID })
        }
        Command::Color {
            input,
            semantics,
            oracle,
            allow_zero_elements,
        } => {
            let e = load(input)?;
            let problem = identify_with(
                &e,
                *semantics,
                IdentifyOptions {
                    allow_zero_elements: *allow_zero_elements,
                },
            )
            .map_err(Failure::invalid)?;
            let verdict = decide(&problem);
            let agrees = if *oracle {
                let reference = brute_force(&problem).map_err(Failure::invalid)?;
                let certificates_ok = [&verdict, &reference]
                    .iter()
                    .filter_map(|v| v.certificate())
                    .all(|c| problem.check(c));
                Some(reference.is_colorable() == verdict.is_colorable() && certificates_ok)
            } else {
                None
            };
            if record {
                let rec = VerdictRecord::new(e.name(), *semantics, &problem, &verdict, agrees);
                emit(out, &format!("{}\n", to_line(&rec)))?;
            } else {
                let mut text = verdict_summary(e.name(), *semantics, &problem, &verdict);
                if let Some(ok) = agrees {
                    text.push_str(if ok { "oracle: agree\n" } else { "oracle: disagree\n" });
                }
                emit(out, &text)?;
            }
            Ok(match (agrees, verdict.is_colorable()) {
                (Some(false), _) => EXIT_ORACLE_DISAGREES,
                (_, true) => EXIT_OK,
                (_, false) => EXIT_UNCOLORABLE,
            })
        }
        Command::Sweep {
            shape,
            semantics,
            list_uncolorable,
        } => {
            let report = sweep(shape, *semantics).map_err(Failure::invalid)?;
            if record {
                emit(out, &format!("{}\n", to_line(&SweepRecord::new(&report, *list_uncolorable))))?;
            } else {
                let mut text = sweep_table(std::slice::from_ref(&report));
                if *list_uncolorable {
                    for p in &report.uncolorable {
                        text.push_str(&format!("  {p}\n"));
                    }
                }
                emit(out, &text)?;
            }
            Ok(if report.all_colorable() {
                EXIT_OK
            } else {
                EXIT_UNCOLORABLE
            })
        }
        Command::Theorem { id } => {
            let report = verify_theorem(*id);
            if record {
                let mut text = String::new();
                for s in &report.sweeps {
                    text.push_str(&to_line(&SweepRecord::new(s, false)));
                    text.push('\n');
                }
                text.push_str(&to_line(&TheoremRecord::new(&report)));
                text.push('\n');
                emit(out, &text)?;
            } else {
                let mut text = sweep_table(&report.sweeps);
                for c in &report.checks {
                    text.push_str(&format!(
                        "[{}] {}: expected {}, observed {}\n",
                        if c.passed { "pass" } else { "FAIL" },
                        c.name,
                        c.expected,
                        c.observed
                    ));
                }
                text.push_str(&format!(
                    "theorem {}: {}\n",
                    report.theorem,
                    if report.passed() { "pass" } else { "FAIL" }
                ));
                emit(out, &text)?;
            }
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_THEOREM_FAILED
            })
        }
        Command::Builtin { name, emit: as_file } => {
            let e = Ensemble::builtin(name).map_err(Failure::invalid)?;
            if *as_file {
                emit(out, &e.serialize())?;
            } else {
                let shape: Vec<String> = e.shape().iter().map(ToString::to_string).collect();
                emit(out, &format!("{}: {} POVMs, shape {}\n", e.name(), e.povms().len(), shape.join(",")))?;
            }
            Ok(EXIT_OK)
        }
    }
}
