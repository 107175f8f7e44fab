//! `affstr`: fans, folded fans, string functions, multiplicities and
//! characters of affine Lie algebra modules from the command line.
//!
//! Exit codes: 0 on success, 2 for configuration errors, 3 when a
//! mathematical consistency check fails.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use affstr::fan::build_fan;
use affstr::strings::ModuleComputation;
use affstr::{fixtures, io, verify, AffineWeight, AlgebraSpec, Error, Strategy};

#[derive(Parser, Debug)]
#[command(
    name = "affstr",
    version,
    about = "String functions of affine Lie algebra modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fan of singular weights up to a grade.
    Fan(Common),
    /// Folded fans of every class member of `--mu`.
    FoldedFan(Common),
    /// String functions of the module with highest weight `--mu`.
    Strings(Common),
    /// Multiplicity of one weight.
    Mult {
        #[command(flatten)]
        common: Common,
        /// Dynkin labels of the weight.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        weight: Vec<i64>,
        /// Grade of the weight (0 at the highest weight, negative below).
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        grade: i64,
    },
    /// All weights down to `--cutoff` grades with their multiplicities.
    Character(Common),
    /// Check the golden fixtures and the structural invariants.
    Verify(Common),
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Preset name (A1, A2, A3) or path to an algebra JSON file.
    #[arg(long, default_value = "A2")]
    algebra: String,
    #[arg(long, default_value_t = 1)]
    level: i64,
    /// Dynkin labels of the highest weight; zeroth label is implied.
    #[arg(long, value_delimiter = ',')]
    mu: Option<Vec<i64>>,
    /// Number of grades below the top.
    #[arg(long, default_value_t = 10)]
    cutoff: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Cross-check the result against the unfolded recursion.
    #[arg(long)]
    verify: bool,
    /// Write to a file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

enum Failure {
    Config(String),
    Consistency(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Consistency(_) => Failure::Consistency(e.to_string()),
            _ => Failure::Config(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Consistency(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    let strategy = Strategy::default();
    match command {
        Command::Fan(c) => {
            let alg = AlgebraSpec::load(&c.algebra)?;
            let fan = build_fan(&alg, c.cutoff as i64)?;
            if c.verify {
                let report = affstr::fan::verify_denominator(&fan);
                if let Some(((root, grade), have, want)) = report.first_mismatch {
                    return Err(Failure::Consistency(format!(
                        "denominator identity fails at {root:?} grade {grade}: fan {have}, product {want}"
                    )));
                }
            }
            let text = match c.format {
                Format::Text => io::fan_to_text(&fan),
                Format::Json => io::fan_to_json(&fan),
                Format::Csv => io::fan_to_csv(&fan),
            };
            emit(&c, &text)
        }
        Command::FoldedFan(c) => {
            let (alg, run) = module(&c, strategy)?;
            let text = match c.format {
                Format::Text => io::folded_to_text(&alg, &run.base.weights, &run.folded),
                Format::Json => io::folded_list_to_json(&run.folded),
                Format::Csv => io::folded_to_csv(&run.folded),
            };
            emit(&c, &text)
        }
        Command::Strings(c) => {
            let (_, run) = module(&c, strategy)?;
            let text = match c.format {
                Format::Text => io::table_to_text(&run.table),
                Format::Json => io::table_to_json(&run.table),
                Format::Csv => io::table_to_csv(&run.table),
            };
            emit(&c, &text)
        }
        Command::Mult {
            common: c,
            weight,
            grade,
        } => {
            let (alg, run) = module(&c, strategy)?;
            let w = AffineWeight::new(alg.weight(&weight, c.level)?.classical, c.level, grade);
            let m = run.table.weight_multiplicity(&w)?;
            let text = match c.format {
                Format::Text => format!("{m}\n"),
                Format::Json => io::character_to_json(&[(w, m)]),
                Format::Csv => io::character_to_csv(&[(w, m)]),
            };
            emit(&c, &text)
        }
        Command::Character(c) => {
            let (alg, run) = module(&c, strategy)?;
            let ch = run.table.character(c.cutoff, strategy)?;
            let text = match c.format {
                Format::Text => io::character_to_text(&alg, &ch),
                Format::Json => io::character_to_json(&ch),
                Format::Csv => io::character_to_csv(&ch),
            };
            emit(&c, &text)
        }
        Command::Verify(c) => {
            let fixtures = fixtures::load()?;
            let report = verify::run_suite(&fixtures, strategy);
            emit(&c, &report.render())?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Consistency("verification failed".into()))
            }
        }
    }
}

fn module(c: &Common, strategy: Strategy) -> Result<(AlgebraSpec, ModuleComputation), Failure> {
    let alg = AlgebraSpec::load(&c.algebra)?;
    let mu = c.mu.clone().unwrap_or_else(|| vec![0; alg.rank()]);
    if mu.iter().any(|&l| l < 0) {
        return Err(Failure::Config(format!(
            "highest weight labels must be non-negative, got {mu:?}"
        )));
    }
    let run = ModuleComputation::run(&alg, c.level, &mu, c.cutoff, strategy)?;
    if c.verify {
        let failed: Vec<String> = verify::check_module(&alg, &run, strategy)
            .into_iter()
            .filter(|r| !r.passed)
            .map(|r| r.line())
            .collect();
        if !failed.is_empty() {
            return Err(Failure::Consistency(failed.join("\n")));
        }
    }
    Ok((alg, run))
}

fn emit(c: &Common, text: &str) -> Result<(), Failure> {
    let text = if text.ends_with('\n') {
        text.to_string()
    } else {
        format!("{text}\n")
    };
    match &c.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Config(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Config(format!("cannot write output: {e}"))),
    }
}
