//! `bjsm gen` — emit a deterministic synthetic binary text.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, ValueEnum};

use bjsm::generate;
use bjsm::text::BinaryText;

use crate::CliError;

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub(crate) enum GenKind {
    /// Independent coin flips with the given ones density
    Random,
    /// Alternating runs, exactly --r of them, with near-equal lengths
    Runs,
    /// A random block of length --period tiled to the requested length
    Periodic,
}

#[derive(Args)]
pub(crate) struct GenArgs {
    /// Text family to generate
    #[arg(long, value_enum)]
    pub kind: GenKind,
    /// Text length
    #[arg(long)]
    pub n: usize,
    /// Exact run count (kind=runs only; must satisfy 1 <= r <= n)
    #[arg(long)]
    pub r: Option<usize>,
    /// Ones density in [0, 1] (kind=random or periodic; default 0.5)
    #[arg(long)]
    pub density: Option<f64>,
    /// Tile length (kind=periodic only)
    #[arg(long)]
    pub period: Option<usize>,
    /// RNG seed; reruns with the same flags give the same text
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Write the text here instead of standard output
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Reject flags that do not apply to the chosen kind, so a typo cannot be
/// silently ignored.
fn reject_foreign_flags(args: &GenArgs) -> Result<(), CliError> {
    match args.kind {
        GenKind::Random => {
            if args.r.is_some() {
                return Err(CliError::usage("--r only applies to --kind runs"));
            }
            if args.period.is_some() {
                return Err(CliError::usage("--period only applies to --kind periodic"));
            }
        }
        GenKind::Runs => {
            if args.density.is_some() {
                return Err(CliError::usage("--density does not apply to --kind runs"));
            }
            if args.period.is_some() {
                return Err(CliError::usage("--period only applies to --kind periodic"));
            }
        }
        GenKind::Periodic => {
            if args.r.is_some() {
                return Err(CliError::usage("--r only applies to --kind runs"));
            }
        }
    }
    Ok(())
}

pub(crate) fn make_text(args: &GenArgs) -> Result<BinaryText, CliError> {
    reject_foreign_flags(args)?;
    let density = args.density.unwrap_or(0.5);
    let text = match args.kind {
        GenKind::Random => generate::random_text(args.n, density, args.seed),
        GenKind::Runs => {
            let Some(r) = args.r else {
                return Err(CliError::usage("--kind runs needs --r"));
            };
            generate::runs_text(args.n, r, args.seed)
        }
        GenKind::Periodic => {
            let Some(period) = args.period else {
                return Err(CliError::usage("--kind periodic needs --period"));
            };
            generate::periodic_text(args.n, period, density, args.seed)
        }
    };
    text.map_err(|e| CliError::usage(e.to_string()))
}

pub(crate) fn run(args: GenArgs) -> Result<(), CliError> {
    let text = make_text(&args)?;
    let rendered = format!("{text}\n");
    match &args.output {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(rendered.as_bytes())
                .map_err(|e| CliError::io(format!("cannot write standard output: {e}")))
        }
    }
}
