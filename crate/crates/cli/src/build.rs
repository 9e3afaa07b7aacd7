//! `bjsm build` — construct an index from a text file and save it.

use std::path::PathBuf;
use std::time::Instant;

use clap::Args;

use bjsm::corner::CornerIndex;
use bjsm::format::IndexFile;

use crate::{build_tables_with_width, checked_from_env, read_text, AlgoArg, CliError, WidthArg};

#[derive(Args)]
pub(crate) struct BuildArgs {
    /// Text file of ASCII 0/1 symbols (whitespace ignored)
    pub input: PathBuf,
    /// Index structure to build
    #[arg(long, value_enum)]
    pub algo: AlgoArg,
    /// Bucket width for the corner index (larger = smaller index, slower query)
    #[arg(long, default_value_t = 16)]
    pub bucket: usize,
    /// Machine word width for the table builder
    #[arg(long, value_enum, default_value_t = WidthArg::Native)]
    pub width: WidthArg,
    /// Where to write the index file
    #[arg(long)]
    pub output: PathBuf,
}

pub(crate) fn run(args: BuildArgs) -> Result<(), CliError> {
    let text = read_text(&args.input)?;
    let n = text.len();

    let started = Instant::now();
    let (index, detail) = match args.algo {
        AlgoArg::Corner => {
            if args.bucket == 0 {
                return Err(CliError::usage("--bucket must be at least 1"));
            }
            let corner = CornerIndex::build(&text, args.bucket);
            let frontier =
                corner.lower_frontier().frontier_len() + corner.upper_frontier().frontier_len();
            let detail = format!(
                "bucket={} points={} (frontier={})",
                args.bucket,
                corner.stored_points(),
                frontier
            );
            (IndexFile::Corner(corner), detail)
        }
        AlgoArg::Table => {
            let (tables, word_ops) = build_tables_with_width(&text, args.width, checked_from_env());
            let detail = format!(
                "width={} entries={} word_ops={}",
                args.width.label(),
                2 * n,
                word_ops
            );
            (IndexFile::Table(tables), detail)
        }
        AlgoArg::Oracle => {
            return Err(CliError::usage(
                "--algo oracle is only available in bench; build corner or table",
            ));
        }
    };
    let seconds = started.elapsed().as_secs_f64();

    index
        .save(&args.output)
        .map_err(|e| CliError::io(format!("cannot write {}: {e}", args.output.display())))?;

    println!(
        "built {} index: n={n} {detail} build_seconds={seconds:.6} output={}",
        index.type_name(),
        args.output.display()
    );
    Ok(())
}
