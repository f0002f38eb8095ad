//! Command-line front end for `charp`.

pub mod commands;
pub mod parse;
pub mod report;
pub mod suites;

use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::CliError;
pub use report::Report;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, Args)]
pub struct GlobalOpts {
    /// Characteristic.
    #[arg(long, global = true, default_value_t = 2)]
    pub p: u32,
    /// Degree e of the constant field F_q, q = p^e.
    #[arg(long = "field-ext", global = true, default_value_t = 1)]
    pub field_ext: u32,
    /// Variables in order; inferred from the input when omitted.
    #[arg(long, global = true, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
    /// Name of the uniformizer.
    #[arg(long, global = true, default_value = "pi")]
    pub pi: String,
    /// Seed for verification suites; falls back to CHARP_SEED, then 0.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Number of random cases per suite.
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// First and second residues of a class in U_0.
    Residue { expr: String },
    /// Canonical decomposition with its certificate.
    Canonical { expr: String },
    /// Pull a class back along pi = u * rho^e.
    Extend {
        expr: String,
        #[arg(long = "e")]
        e: u32,
        #[arg(long = "u", default_value = "1")]
        u: String,
        #[arg(long = "target-pi", default_value = "rho")]
        target_pi: String,
    },
    /// The generic symbol gen(n+1, l).
    Gen {
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "l")]
        l: usize,
    },
    /// Residue-chain certificate for gen(n+1, l).
    Chain {
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "l")]
        l: usize,
    },
    /// Tame symbol of a Milnor symbol at a variable-adic valuation.
    Tame {
        expr: String,
        #[arg(long)]
        at: String,
    },
    /// Reduce f in F_q(t) modulo Artin-Schreier images.
    AsReduce { expr: String },
    /// Run a verification suite, or `all`.
    Verify { suite: String },
}

#[derive(Clone, Debug, Parser)]
#[command(name = "charp", version, about = "Differential forms and p-cohomology in characteristic p")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let echo: Vec<String> = argv.iter().skip(1).map(|s| s.to_string_lossy().into_owned()).collect();
    let start = Instant::now();
    match commands::execute(&cli, &echo) {
        Ok(mut report) => {
            if cli.global.timing {
                report.timing_ms = Some(start.elapsed().as_millis());
            }
            let stdout = match cli.global.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            };
            let code = if report.verdict == Some(false) { 1 } else { 0 };
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
