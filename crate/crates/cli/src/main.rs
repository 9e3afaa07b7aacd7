//! `bjsm` — build, query, and benchmark jumbled-matching indexes for binary
//! strings.
//!
//! Exit codes: 0 success, 1 bad arguments or failed queries, 2 verification
//! mismatch, 3 I/O or file-format failure.

use std::path::Path;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use bjsm::bitparallel::{ChunkEngine, Word};
use bjsm::format::IndexFile;
use bjsm::tables::OnesTable;
use bjsm::text::BinaryText;

mod bench;
mod build;
mod generate;
mod query;
mod verify;

#[derive(Parser)]
#[command(
    name = "bjsm",
    version,
    about = "Jumbled (abelian) pattern matching on binary strings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index file from a text file
    Build(build::BuildArgs),
    /// Answer occurrence queries against a saved index
    Query(query::QueryArgs),
    /// Check every index answer against the brute-force scan
    Verify(verify::VerifyArgs),
    /// Generate a synthetic binary text
    Gen(generate::GenArgs),
    /// Time index construction and emit a CSV report
    Bench(bench::BenchArgs),
}

/// Failure classes, each mapped to a distinct process exit code.
pub(crate) enum CliError {
    /// Bad flag values, inconsistent parameters, or failed queries (exit 1).
    Usage(String),
    /// An index disagreed with the brute-force oracle (exit 2).
    Mismatch(String),
    /// Unreadable input, unwritable output, or a malformed file (exit 3).
    Io(String),
}

impl CliError {
    pub(crate) fn usage(message: impl Into<String>) -> Self {
        CliError::Usage(message.into())
    }

    pub(crate) fn io(message: impl Into<String>) -> Self {
        CliError::Io(message.into())
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Mismatch(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Mismatch(m) | CliError::Io(m) => m,
        }
    }
}

/// Machine word width used by the table builder.
#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub(crate) enum WidthArg {
    #[value(name = "16")]
    W16,
    #[value(name = "32")]
    W32,
    #[value(name = "64")]
    W64,
    /// The native word width of this platform
    Native,
}

impl WidthArg {
    /// Width label as written on the command line.
    pub(crate) fn label(self) -> &'static str {
        match self {
            WidthArg::W16 => "16",
            WidthArg::W32 => "32",
            WidthArg::W64 => "64",
            WidthArg::Native => "native",
        }
    }

    /// Concrete bit count (native resolves to the platform word).
    pub(crate) fn bits(self) -> u32 {
        match self {
            WidthArg::W16 => 16,
            WidthArg::W32 => 32,
            WidthArg::W64 | WidthArg::Native => bjsm::NativeWord::BITS,
        }
    }
}

/// Index structure selector shared by `build`, `verify`, and `bench`.
#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub(crate) enum AlgoArg {
    /// Bucketed corner index over run-bounded substring counts
    Corner,
    /// Word-parallel min/max-ones tables, one entry per window length
    Table,
    /// Brute-force window scan (bench only)
    Oracle,
}

impl AlgoArg {
    pub(crate) fn label(self) -> &'static str {
        match self {
            AlgoArg::Corner => "corner",
            AlgoArg::Table => "table",
            AlgoArg::Oracle => "oracle",
        }
    }
}

/// True when the environment asks for the self-checking engine.
pub(crate) fn checked_from_env() -> bool {
    std::env::var("BJSM_CHECKED").is_ok_and(|v| v == "1")
}

/// True when the environment asks `verify` to corrupt each index it builds.
pub(crate) fn fault_injection_from_env() -> bool {
    std::env::var("BJSM_INJECT_FAULT").is_ok_and(|v| v == "1")
}

/// Read and parse a text file of ASCII `0`/`1` symbols.
pub(crate) fn read_text(path: &Path) -> Result<BinaryText, CliError> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))?;
    BinaryText::parse(&raw)
        .map_err(|e| CliError::io(format!("cannot parse {}: {e}", path.display())))
}

/// Load a saved index file, mapping both I/O and format failures to exit 3.
pub(crate) fn load_index(path: &Path) -> Result<IndexFile, CliError> {
    IndexFile::load(path).map_err(|e| CliError::io(format!("cannot load {}: {e}", path.display())))
}

/// Build min/max-ones tables with the requested word width.
///
/// Returns the tables together with the word-operation count of the build.
pub(crate) fn build_tables_with_width(
    text: &BinaryText,
    width: WidthArg,
    checked: bool,
) -> (OnesTable, u64) {
    fn go<W: Word>(text: &BinaryText, checked: bool) -> (OnesTable, u64) {
        let mut engine = ChunkEngine::<W>::with_checked(checked);
        let tables = engine.build_tables(text);
        (tables, engine.word_ops())
    }
    match width {
        WidthArg::W16 => go::<u16>(text, checked),
        WidthArg::W32 => go::<u32>(text, checked),
        WidthArg::W64 | WidthArg::Native => go::<bjsm::NativeWord>(text, checked),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Build(args) => build::run(args),
        Command::Query(args) => query::run(args),
        Command::Verify(args) => verify::run(args),
        Command::Gen(args) => generate::run(args),
        Command::Bench(args) => bench::run(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}
