//! Command-line front end: parse, embed if modal, saturate, report.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, ValueEnum};

use crate::modal::{self, S5Mode};
use crate::saturation::{self, ProverConfig};
use crate::tptp::{self, szs::status_line, ParseOptions, SzsStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum S5Arg {
    Relational,
    Universal,
}

#[derive(Debug, Parser)]
#[command(name = "ep-prover", version, about = "Higher-order theorem prover for TPTP THF problems")]
pub struct CliOptions {
    /// Problem file in TPTP THF syntax.
    pub problem: PathBuf,
    /// Wall-clock limit in seconds.
    #[arg(short = 't', long = "timeout", default_value_t = 60, value_parser = clap::value_parser!(u64).range(1..))]
    pub timeout: u64,
    /// Print a TSTP proof after a successful refutation.
    #[arg(short = 'p', long = "proof")]
    pub proof: bool,
    /// Depth budget of pre-unification.
    #[arg(long, default_value_t = crate::unify::DEFAULT_DEPTH, value_parser = clap::value_parser!(u32).range(1..))]
    pub unif_depth: u32,
    /// Unifiers kept per inference.
    #[arg(long, default_value_t = crate::unify::DEFAULT_UNIFIERS)]
    pub unifiers: usize,
    /// Primitive substitutions allowed along one derivation path.
    #[arg(long, default_value_t = 3)]
    pub ps_limit: u32,
    /// Encoding of S5 for modal problems.
    #[arg(long, value_enum, default_value_t = S5Arg::Relational)]
    pub modal_s5: S5Arg,
    /// Directory searched for included files (repeatable).
    #[arg(long = "include-dir")]
    pub include_dir: Vec<PathBuf>,
    /// Accepted for compatibility; the search is deterministic.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Disable the injectivity rule.
    #[arg(long)]
    pub no_inj: bool,
}

impl CliOptions {
    pub fn prover_config(&self) -> ProverConfig {
        ProverConfig {
            timeout: Duration::from_secs(self.timeout),
            unif_depth: self.unif_depth,
            unifiers: self.unifiers.max(1),
            ps_limit: self.ps_limit,
            inj: !self.no_inj,
            ..ProverConfig::default()
        }
    }
}

fn display_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Runs the prover with process arguments; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// As [`run`], writing results to `out` and diagnostics to `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let opts = match CliOptions::try_parse_from(args) {
        Ok(o) => o,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let name = display_name(&opts.problem);
    let fail = |out: &mut dyn Write, err: &mut dyn Write, msg: String| {
        let _ = writeln!(err, "error: {msg}");
        let _ = writeln!(out, "{}", status_line(SzsStatus::Error, &name));
        SzsStatus::Error.exit_code()
    };

    let parse_opts = ParseOptions {
        include_dirs: opts.include_dir.clone(),
        base_dir: None,
    };
    let mut problem = match tptp::parse_file(&opts.problem, &parse_opts) {
        Ok(p) => p,
        Err(e) => return fail(out, err, e.to_string()),
    };
    if problem.logic.is_some() || problem.uses_modal_operators() {
        let mode = match opts.modal_s5 {
            S5Arg::Relational => S5Mode::Relational,
            S5Arg::Universal => S5Mode::Universal,
        };
        problem = match modal::embed(&problem, mode) {
            Ok(p) => p,
            Err(e) => return fail(out, err, e.to_string()),
        };
    }

    let outcome = match saturation::prove(&problem, &opts.prover_config()) {
        Ok(o) => o,
        Err(e) => return fail(out, err, e.to_string()),
    };
    if let Some(e) = &outcome.replay_error {
        let _ = writeln!(err, "warning: refutation rejected by the proof checker: {e}");
    }
    let _ = writeln!(out, "{}", status_line(outcome.status, &name));
    if opts.proof {
        if let Some(proof) = outcome.proof(&name) {
            let _ = writeln!(out, "% SZS output start CNFRefutation for {name}");
            let _ = write!(out, "{proof}");
            let _ = writeln!(out, "% SZS output end CNFRefutation for {name}");
        }
    }
    outcome.status.exit_code()
}
