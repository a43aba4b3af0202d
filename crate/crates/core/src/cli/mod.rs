//! Command-line front end: identity suites, Lubin-Tate reports, Sen
//! operators of action files and sl2 decompositions.
//!
//! Every command prints text by default and JSON with `--json`; `--out FILE`
//! writes the JSON report to a file instead. Exit codes: 0 when every check
//! passes, 1 when a suite case fails, 2 on usage or input errors.

mod commands;
mod files;
mod report;
mod suites;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{run_lt, run_sen, run_sl2_decompose, LtReport, SenReport, Sl2Report, VerifyReport};
pub use files::{ActionSpec, LoadedAction};
pub use report::{run_cases, Case, Failure, Outcome, SuiteParams, SuiteReport};
pub use suites::{run_verify, weight_multisets, SUITES};

use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "senlab", version, about = "p-adic analytic vectors, Lubin-Tate groups, sl2 and Sen operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a property suite: identities, norms, cmap, reconstruct, lubin-tate, sl2, sen or all.
    Verify {
        suite: String,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Record wall time per suite (makes reports run-dependent).
        #[arg(long)]
        timing: bool,
    },
    /// Group law, endomorphisms and torsion slopes of a Lubin-Tate model file.
    Lt {
        model: PathBuf,
        #[arg(long, default_value_t = 1)]
        level: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Sen operator, kernel and iota expansion of an action file.
    Sen {
        action: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// sl2 representations.
    Sl2 {
        #[command(subcommand)]
        command: Sl2Command,
    },
}

#[derive(Debug, Subcommand)]
enum Sl2Command {
    /// Highest weights of a representation file, with multiplicity.
    Decompose {
        rep: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// The prime (files that name a prime must agree).
    #[arg(long)]
    p: Option<u64>,
    /// Absolute precision.
    #[arg(long = "N", default_value_t = 20)]
    precision: i64,
    /// Truncation degree.
    #[arg(long = "D", default_value_t = 12)]
    degree: u32,
    /// Write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

impl Common {
    fn prime_for_file(&self, file_p: u64) -> Result<u64> {
        match self.p {
            Some(p) if p != file_p => Err(Error::Parse(format!("--p {p} disagrees with the file's p = {file_p}"))),
            _ => Ok(file_p),
        }
    }
}

/// Text output plus the value used for JSON output.
pub struct Rendered {
    pub text: String,
    pub json: serde_json::Value,
    pub exit_code: i32,
}

fn emit(common: &Common, r: Rendered) -> Result<i32> {
    let json = serde_json::to_string_pretty(&r.json).expect("reports serialize") + "\n";
    match &common.out {
        Some(path) => {
            std::fs::write(path, &json).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            print!("{}", r.text);
        }
        None if common.json => print!("{json}"),
        None => print!("{}", r.text),
    }
    Ok(r.exit_code)
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Verify { suite, common, seed, timing } => {
            let params = SuiteParams { p: common.p.unwrap_or(5), precision: common.precision, degree: common.degree, seed };
            emit(&common, commands::verify(&suite, &params, timing)?)
        }
        Command::Lt { model, level, common } => {
            let text = files::read_file(&model)?;
            let spec = crate::lubin_tate::LTModelSpec::parse(&text)?;
            common.prime_for_file(spec.p)?;
            emit(&common, run_lt(&spec, level, common.precision, common.degree)?.render())
        }
        Command::Sen { action, common } => {
            let spec = ActionSpec::parse(&files::read_file(&action)?)?;
            common.prime_for_file(spec.p)?;
            emit(&common, run_sen(&spec, common.precision, common.degree)?.render())
        }
        Command::Sl2 { command: Sl2Command::Decompose { rep, common } } => {
            let spec = crate::sl2::RepSpec::parse(&files::read_file(&rep)?)?;
            let field = crate::padic::Field::base(common.p.unwrap_or(5), common.precision)?;
            emit(&common, run_sl2_decompose(&spec, &field)?.render())
        }
    }
}

fn thread_pool() -> std::result::Result<Option<rayon::ThreadPool>, String> {
    let Ok(v) = std::env::var("SENLAB_THREADS") else { return Ok(None) };
    let n: usize = v.trim().parse().map_err(|_| format!("SENLAB_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err("SENLAB_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build().map(Some).map_err(|e| e.to_string())
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let result = match pool {
        Some(pool) => pool.install(|| dispatch(cli)),
        None => dispatch(cli),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
