//! `bjsm verify` — rebuild every requested index configuration and compare
//! each answer with the brute-force scan over the whole pattern rectangle
//! `{0..=zeros+1} x {0..=ones+1}` (minus the empty pattern).
//!
//! Setting `BJSM_INJECT_FAULT=1` corrupts one stored value in each index
//! after building it, to prove that a wrong index cannot pass.

use std::path::PathBuf;

use clap::Args;

use bjsm::corner::CornerIndex;
use bjsm::oracle;
use bjsm::text::{BinaryText, ParikhVector};

use crate::{
    build_tables_with_width, checked_from_env, fault_injection_from_env, read_text, AlgoArg,
    CliError, WidthArg,
};

#[derive(Args)]
pub(crate) struct VerifyArgs {
    /// Text file of ASCII 0/1 symbols
    pub input: PathBuf,
    /// Index structures to check
    #[arg(long, value_enum, value_delimiter = ',',
          default_values_t = [AlgoArg::Corner, AlgoArg::Table])]
    pub algos: Vec<AlgoArg>,
    /// Corner bucket widths to try (default: 1, 2, 3, and the text length)
    #[arg(long, value_delimiter = ',')]
    pub buckets: Option<Vec<usize>>,
    /// Table word widths to try
    #[arg(long, value_enum, value_delimiter = ',',
          default_values_t = [WidthArg::W16, WidthArg::Native])]
    pub widths: Vec<WidthArg>,
    /// Refuse texts longer than this (the check is quadratic in the length)
    #[arg(long, default_value_t = 4096)]
    pub cap: usize,
}

/// Every pattern in the padded rectangle, empty pattern excluded.
fn rectangle(text: &BinaryText) -> Vec<ParikhVector> {
    let zeros = text.total_zeros();
    let ones = text.total_ones();
    let mut patterns = Vec::with_capacity((zeros + 2) * (ones + 2) - 1);
    for x in 0..=zeros + 1 {
        for y in 0..=ones + 1 {
            if x == 0 && y == 0 {
                continue;
            }
            patterns.push(ParikhVector::new(x, y));
        }
    }
    patterns
}

pub(crate) fn run(args: VerifyArgs) -> Result<(), CliError> {
    let text = read_text(&args.input)?;
    let n = text.len();
    if n > args.cap {
        return Err(CliError::usage(format!(
            "text length {n} exceeds the verification cap {}; rerun with --cap {n} if you mean it",
            args.cap
        )));
    }

    let inject = fault_injection_from_env();
    let checked = checked_from_env();
    let reference = oracle::ones_table(&text);
    let patterns = rectangle(&text);

    let mut total_mismatches = 0usize;
    let mut first: Option<String> = None;

    let mut check = |label: String, answer: &dyn Fn(ParikhVector) -> bool| {
        let mut mismatches = 0usize;
        for &pattern in &patterns {
            let got = answer(pattern);
            let want = reference
                .occurs(pattern)
                .expect("rectangle contains no empty pattern");
            if got != want {
                mismatches += 1;
                if first.is_none() {
                    first = Some(format!(
                        "{label} pattern ({}, {}): index says {got}, scan says {want}",
                        pattern.zeros, pattern.ones
                    ));
                }
            }
        }
        println!("{label}: {mismatches} mismatches over {} patterns", patterns.len());
        total_mismatches += mismatches;
    };

    for &algo in &args.algos {
        match algo {
            AlgoArg::Corner => {
                let buckets = args
                    .buckets
                    .clone()
                    .unwrap_or_else(|| vec![1, 2, 3, n.max(1)]);
                for bucket in buckets {
                    if bucket == 0 {
                        return Err(CliError::usage("--buckets entries must be at least 1"));
                    }
                    let mut index = CornerIndex::build(&text, bucket);
                    if inject && !index.corrupt_one_point() {
                        println!("corner B={bucket}: fault injection has nothing to corrupt");
                    }
                    check(format!("corner B={bucket}"), &|p| {
                        index.occurs(p).expect("rectangle contains no empty pattern")
                    });
                }
            }
            AlgoArg::Table => {
                for &width in &args.widths {
                    let (mut tables, _) = build_tables_with_width(&text, width, checked);
                    if inject && !tables.corrupt_one_entry() {
                        println!(
                            "table w={}: fault injection has nothing to corrupt",
                            width.label()
                        );
                    }
                    check(format!("table w={}", width.label()), &|p| {
                        tables.occurs(p).expect("rectangle contains no empty pattern")
                    });
                }
            }
            AlgoArg::Oracle => {
                return Err(CliError::usage(
                    "--algos oracle is the reference itself; verify corner or table",
                ));
            }
        }
    }

    println!("{total_mismatches} mismatches");
    match first {
        None => Ok(()),
        Some(detail) => Err(CliError::Mismatch(format!("first mismatch: {detail}"))),
    }
}
