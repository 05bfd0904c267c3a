use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use quatnil::classify::is_sum_of_two_nilpotents;
use quatnil::decompose::{decompose_two_nilpotents, verify_decomposition};
use quatnil::SearchConfig;
use quatnil_cli::gen::{generate, GenError, InstanceSpec, Kind};
use quatnil_cli::io::{self, IoError};
use quatnil_cli::selftest::{run_all, SelftestOptions};

const EXIT_YES: u8 = 0;
const EXIT_OTHER: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_NO: u8 = 3;
const EXIT_NOT_DIVISION: u8 = 4;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Parser)]
#[command(name = "quatnil", version, about = "Sums of two nilpotent matrices over rational quaternion algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format for reports
    #[arg(long, global = true, value_enum, default_value = "pretty")]
    format: Format,
    /// Candidate vectors tried per search step
    #[arg(long, global = true)]
    search_budget: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a matrix and decide whether it is a sum of two nilpotents
    Classify {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Write a verified pair of nilpotent summands
    Decompose {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check a decomposition file against a matrix file
    Check {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        decomposition: PathBuf,
    },
    /// Generate a seeded instance of a given kind
    Gen {
        /// generic-trace-zero, type-I, type-II, type-II-zero, type-III or random
        #[arg(long)]
        kind: String,
        #[arg(short, long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        height: i64,
        #[arg(long, default_value = "-1,-1", allow_hyphen_values = true)]
        algebra: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the acceptance checks
    Selftest {
        #[arg(long)]
        quick: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn io_exit(e: &IoError) -> u8 {
    match e {
        IoError::Algebra(quatnil::Error::NotDivision { .. }) => EXIT_NOT_DIVISION,
        IoError::Parse(_) | IoError::Algebra(_) => EXIT_PARSE,
        IoError::Read { .. } | IoError::Write { .. } => EXIT_OTHER,
    }
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn run(cli: Cli) -> ExitCode {
    let mut cfg = SearchConfig::default();
    if let Some(b) = cli.search_budget {
        cfg.vector_budget = b;
    }
    match cli.command {
        Command::Classify { input } => {
            let m = match io::read_matrix(&input) {
                Ok(m) => m,
                Err(e) => return fail(io_exit(&e), e),
            };
            let dec = match is_sum_of_two_nilpotents(&m, &cfg) {
                Ok(d) => d,
                Err(e) => return fail(EXIT_OTHER, e),
            };
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&io::decision_json(&dec)).unwrap()),
                Format::Pretty => println!("{}", io::decision_line(&dec)),
            }
            ExitCode::from(if dec.answer { EXIT_YES } else { EXIT_NO })
        }
        Command::Decompose { input, output } => {
            let m = match io::read_matrix(&input) {
                Ok(m) => m,
                Err(e) => return fail(io_exit(&e), e),
            };
            let dec = match is_sum_of_two_nilpotents(&m, &cfg) {
                Ok(d) => d,
                Err(e) => return fail(EXIT_OTHER, e),
            };
            if !dec.answer {
                println!("{}", io::decision_line(&dec));
                println!("{}", serde_json::to_string_pretty(&io::decision_json(&dec)).unwrap());
                return ExitCode::from(EXIT_NO);
            }
            let split = match decompose_two_nilpotents(&m, &cfg) {
                Ok(s) => s,
                Err(e) => return fail(EXIT_OTHER, e),
            };
            if let Err(e) = io::write_json(&output, &io::decomposition_to_json(&split)) {
                return fail(io_exit(&e), e);
            }
            println!("{}; wrote {}", io::decision_line(&dec), output.display());
            ExitCode::from(EXIT_YES)
        }
        Command::Check { input, decomposition } => {
            let m = match io::read_matrix(&input) {
                Ok(m) => m,
                Err(e) => return fail(io_exit(&e), e),
            };
            let d = match io::read_json(&decomposition).and_then(|j| io::decomposition_from_json(&j)) {
                Ok(d) => d,
                Err(e) => return fail(io_exit(&e), e),
            };
            if d.n1.algebra() != m.algebra() || (d.n1.rows(), d.n1.cols()) != (m.rows(), m.cols()) {
                return fail(EXIT_PARSE, "decomposition does not match the matrix shape or algebra");
            }
            if verify_decomposition(&m, &d.n1, &d.n2) {
                println!("valid");
                ExitCode::from(EXIT_YES)
            } else {
                println!("invalid");
                ExitCode::from(EXIT_NO)
            }
        }
        Command::Gen {
            kind,
            n,
            seed,
            height,
            algebra,
            output,
        } => {
            let kind: Kind = match kind.parse() {
                Ok(k) => k,
                Err(e) => return fail(EXIT_PARSE, e),
            };
            let algebra = match io::parse_algebra_flag(&algebra) {
                Ok(a) => a,
                Err(e) => return fail(io_exit(&e), e),
            };
            let spec = InstanceSpec {
                algebra,
                n,
                kind,
                seed,
                height,
            };
            let m = match generate(&spec, &cfg) {
                Ok(m) => m,
                Err(e @ GenError::Unsatisfiable(_)) => return fail(EXIT_PARSE, e),
                Err(e) => return fail(EXIT_OTHER, e),
            };
            let j = io::matrix_to_json(&m);
            match output {
                Some(path) => {
                    if let Err(e) = io::write_json(&path, &j) {
                        return fail(io_exit(&e), e);
                    }
                }
                None => println!("{}", serde_json::to_string_pretty(&j).unwrap()),
            }
            ExitCode::from(EXIT_YES)
        }
        Command::Selftest { quick, seed } => {
            let mut opts = SelftestOptions {
                quick,
                cfg,
                ..SelftestOptions::default()
            };
            if let Some(s) = seed {
                opts.seed = s;
            }
            let reports = run_all(&opts);
            for r in &reports {
                println!("{}", r.line());
            }
            let failed = reports.iter().filter(|r| !r.passed).count();
            println!("{} of {} criteria passed", reports.len() - failed, reports.len());
            ExitCode::from(if failed == 0 { EXIT_YES } else { EXIT_OTHER })
        }
    }
}

fn main() -> ExitCode {
    match Cli::try_parse() {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_YES };
            let _ = e.print();
            ExitCode::from(code)
        }
    }
}
