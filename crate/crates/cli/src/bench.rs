//! `bjsm bench` — time index construction over generated texts and emit CSV.
//!
//! One text is generated per size (deterministic in the seed); every
//! requested structure is then built `--reps` times on that text and the
//! median wall-clock build time is reported. Row order is fixed: sizes in
//! the order given, structures in the order given within each size.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::Args;

use bjsm::corner::CornerIndex;
use bjsm::oracle;
use bjsm::text::RunLengthEncoding;

use crate::generate::{GenArgs, GenKind};
use crate::{build_tables_with_width, checked_from_env, AlgoArg, CliError, WidthArg};

/// Construction cost grows with the square of these quantities, so refuse
/// sizes that would stall the machine.
const TABLE_SIZE_CAP: usize = 1 << 16;
const ORACLE_SIZE_CAP: usize = 1 << 14;
const CORNER_SIZE_CAP: usize = 1 << 22;
const CORNER_RUN_CAP: usize = 1 << 14;

pub(crate) const CSV_HEADER: &str = "algo,n,r,B,w,build_seconds,index_points,word_ops";

#[derive(Args)]
pub(crate) struct BenchArgs {
    /// Text family to benchmark on
    #[arg(long, value_enum, default_value_t = GenKind::Random)]
    pub kind: GenKind,
    /// Exact run count (kind=runs only)
    #[arg(long)]
    pub r: Option<usize>,
    /// Ones density (kind=random or periodic; default 0.5)
    #[arg(long)]
    pub density: Option<f64>,
    /// Tile length (kind=periodic only)
    #[arg(long)]
    pub period: Option<usize>,
    /// RNG seed for text generation
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Structures to time
    #[arg(long, value_enum, value_delimiter = ',',
          default_values_t = [AlgoArg::Corner, AlgoArg::Table])]
    pub algos: Vec<AlgoArg>,
    /// Text lengths to benchmark, e.g. 4096,16384,65536
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    /// Builds per configuration; the median time is reported
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    /// Bucket width for corner rows
    #[arg(long, default_value_t = 16)]
    pub bucket: usize,
    /// Word width for table rows
    #[arg(long, value_enum, default_value_t = WidthArg::Native)]
    pub width: WidthArg,
    /// Write the CSV here instead of standard output
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn median(mut seconds: Vec<f64>) -> f64 {
    seconds.sort_by(|a, b| a.partial_cmp(b).expect("timings are finite"));
    seconds[seconds.len() / 2]
}

/// Time `build` over `reps` runs; returns the median seconds and the last
/// build's product.
fn time_builds<T>(reps: usize, mut build: impl FnMut() -> T) -> (f64, T) {
    let mut times = Vec::with_capacity(reps);
    let mut last = None;
    for _ in 0..reps {
        let started = Instant::now();
        let product = build();
        times.push(started.elapsed().as_secs_f64());
        last = Some(product);
    }
    (median(times), last.expect("reps is at least 1"))
}

pub(crate) fn run(args: BenchArgs) -> Result<(), CliError> {
    if args.reps == 0 {
        return Err(CliError::usage("--reps must be at least 1"));
    }
    if args.bucket == 0 {
        return Err(CliError::usage("--bucket must be at least 1"));
    }
    for &algo in &args.algos {
        let cap = match algo {
            AlgoArg::Corner => CORNER_SIZE_CAP,
            AlgoArg::Table => TABLE_SIZE_CAP,
            AlgoArg::Oracle => ORACLE_SIZE_CAP,
        };
        if let Some(&n) = args.sizes.iter().find(|&&n| n > cap) {
            return Err(CliError::usage(format!(
                "size {n} exceeds the {} cap of {cap}",
                algo.label()
            )));
        }
    }

    let checked = checked_from_env();
    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    let mut rows = 0usize;

    for &n in &args.sizes {
        let gen_args = GenArgs {
            kind: args.kind,
            n,
            r: args.r,
            density: args.density,
            period: args.period,
            seed: args.seed,
            output: None,
        };
        let text = crate::generate::make_text(&gen_args)?;
        let run_count = RunLengthEncoding::encode(&text).run_count();

        for &algo in &args.algos {
            // (bucket, width, points, word_ops) columns; blank when not applicable.
            let (seconds, bucket, width, points, word_ops) = match algo {
                AlgoArg::Corner => {
                    if run_count > CORNER_RUN_CAP {
                        return Err(CliError::usage(format!(
                            "text of length {n} has {run_count} runs, over the corner cap of \
                             {CORNER_RUN_CAP}; use --kind runs with a smaller --r"
                        )));
                    }
                    let (seconds, index) =
                        time_builds(args.reps, || CornerIndex::build(&text, args.bucket));
                    (
                        seconds,
                        Some(args.bucket),
                        None,
                        index.stored_points(),
                        None,
                    )
                }
                AlgoArg::Table => {
                    let (seconds, (_, ops)) = time_builds(args.reps, || {
                        build_tables_with_width(&text, args.width, checked)
                    });
                    (seconds, None, Some(args.width.bits()), 2 * n, Some(ops))
                }
                AlgoArg::Oracle => {
                    let (seconds, _) = time_builds(args.reps, || oracle::ones_table(&text));
                    (seconds, None, None, 2 * n, None)
                }
            };
            let opt = |v: Option<u64>| v.map(|v| v.to_string()).unwrap_or_default();
            csv.push_str(&format!(
                "{},{n},{run_count},{},{},{seconds:.9},{points},{}\n",
                algo.label(),
                opt(bucket.map(|b| b as u64)),
                opt(width.map(u64::from)),
                opt(word_ops),
            ));
            rows += 1;
        }
    }

    match &args.output {
        Some(path) => {
            std::fs::write(path, csv)
                .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))?;
            println!("wrote {rows} rows to {}", path.display());
            Ok(())
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(csv.as_bytes())
                .map_err(|e| CliError::io(format!("cannot write standard output: {e}")))
        }
    }
}
