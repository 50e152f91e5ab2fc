//! Command-line surface: argument parsing, reports, cache and exit codes.

mod cache;
mod certfile;
mod commands;
#[cfg(test)]
mod tests;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use cache::{sha256_hex, Cache, CACHE_ENV};
pub use certfile::{CertificateFile, Toolchain};
pub use commands::{
    ambig, rayclass, search, search_report, selftest, verify, verify_certificate, AmbigArgs, FieldSel, RayClassReport, SearchArgs, SearchReport,
    SelftestReport, VerifyOutput,
};

/// Version tag carried by every JSON artifact.
pub const SCHEMA: &str = "rc-1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NOT_FOUND: i32 = 3;
pub const EXIT_POWER_BLOCKED: i32 = 4;
pub const EXIT_FAIL: i32 = 5;
pub const EXIT_BUDGET: i32 = 6;
pub const EXIT_UNVERIFIED: i32 = 7;

#[derive(Debug, Parser)]
#[command(name = "raycap", version, about = "Ray class groups, ambiguous class counts and capitulation certificates")]
pub struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Cache directory; overrides RAYCAP_CACHE_DIR.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Seed for sampled self-test checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for searches and sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ray class group of Q or Q(sqrt d) modulo a squarefree integer.
    Rayclass(RayclassCmd),
    /// Search for a principalizing prime.
    Search(SearchArgs),
    /// Re-verify a certificate file and build the biquadratic field.
    Verify(VerifyCmd),
    /// Compare the ambiguous class number formula with a direct count.
    Ambig(AmbigArgs),
    /// Run a short battery of internal consistency checks.
    Selftest,
}

#[derive(Debug, Args)]
pub struct RayclassCmd {
    /// Field `Q`; alternative to `--d`.
    #[arg(long, conflicts_with = "d")]
    pub field: Option<String>,
    /// Squarefree integer `d` of `Q(sqrt d)`.
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<i64>,
    /// Squarefree positive integer; the modulus is every prime above it.
    #[arg(long = "mod", default_value_t = 1)]
    pub modulus: u64,
}

#[derive(Debug, Args)]
pub struct VerifyCmd {
    /// Certificate file written by `search --out`.
    pub path: PathBuf,
    /// Lattice enumeration budget for principality tests.
    #[arg(long, default_value_t = crate::biquad::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Store the report in the certificate file and re-stamp it.
    #[arg(long)]
    pub update: bool,
}

/// Result of one command: exit code plus JSON and text renderings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub json: String,
    pub text: String,
}

impl Output {
    fn error(code: i32, msg: String) -> Self {
        let json = serde_json::json!({ "schema": SCHEMA, "error": msg }).to_string();
        Output { code, json, text: format!("error: {msg}") }
    }
}

pub(crate) fn error_code(e: &crate::Error) -> i32 {
    match e {
        crate::Error::Budget(_) => EXIT_BUDGET,
        crate::Error::Inconsistent(_) => EXIT_INTERNAL,
        _ => EXIT_INVALID,
    }
}

/// Execute a parsed command line.
pub fn execute(cli: &Cli) -> Output {
    let cache = Cache::resolve(cli.cache_dir.as_deref());
    let jobs = cli.jobs.max(1);
    let res = match &cli.command {
        Command::Rayclass(a) => FieldSel::parse(a.field.as_deref(), a.d).and_then(|f| rayclass(f, a.modulus, cache.as_ref())),
        Command::Search(a) => search(a, jobs, cache.as_ref()),
        Command::Verify(a) => verify(&a.path, a.budget, a.update),
        Command::Ambig(a) => ambig(a, jobs, cache.as_ref()),
        Command::Selftest => selftest(cli.seed, jobs),
    };
    res.unwrap_or_else(|e| Output::error(error_code(&e), e.to_string()))
}

/// Parse `args` (program name first), run, and print to `out`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let o = execute(&cli);
    let body = if cli.json { &o.json } else { &o.text };
    if o.code == EXIT_INVALID || o.code == EXIT_INTERNAL {
        let _ = writeln!(err, "{body}");
    } else {
        let _ = writeln!(out, "{body}");
    }
    o.code
}
