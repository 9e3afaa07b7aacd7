//! `bjsm query` — answer occurrence queries from a saved index.
//!
//! One query can be given inline (`--m`/`--zeros` with `--ones`); otherwise
//! queries are read from standard input, one per line, in the shape selected
//! by `--form`. Each query prints `YES`, `NO`, or `ERR <reason>`; any `ERR`
//! makes the whole invocation exit nonzero.

use std::io::BufRead;
use std::path::PathBuf;

use clap::{Args, ValueEnum};

use bjsm::format::IndexFile;
use bjsm::text::ParikhVector;

use crate::{load_index, CliError};

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub(crate) enum QueryForm {
    /// Lines hold "M Y": window length and ones count
    MOnes,
    /// Lines hold "X Y": zeros count and ones count
    ZerosOnes,
}

#[derive(Args)]
pub(crate) struct QueryArgs {
    /// Index file produced by `bjsm build`
    pub index: PathBuf,
    /// Inline query: pattern length (the pattern is (m - ones) zeros, ones ones)
    #[arg(long)]
    pub m: Option<usize>,
    /// Inline query: zeros count
    #[arg(long)]
    pub zeros: Option<usize>,
    /// Inline query: ones count
    #[arg(long)]
    pub ones: Option<usize>,
    /// Shape of standard-input lines
    #[arg(long, value_enum, default_value_t = QueryForm::MOnes)]
    pub form: QueryForm,
}

/// Turn a (length, ones) pair into a pattern, rejecting ones > length.
fn pattern_from_length(m: usize, ones: usize) -> Result<ParikhVector, String> {
    if ones > m {
        return Err(format!("ones count {ones} exceeds pattern length {m}"));
    }
    Ok(ParikhVector::new(m - ones, ones))
}

/// Parse one stdin line into a pattern according to the selected form.
fn pattern_from_line(line: &str, form: QueryForm) -> Result<ParikhVector, String> {
    let mut fields = line.split_whitespace();
    let (Some(first), Some(second), None) = (fields.next(), fields.next(), fields.next()) else {
        return Err("malformed line: expected two integers".to_string());
    };
    let parse = |field: &str| {
        field
            .parse::<usize>()
            .map_err(|_| format!("malformed line: {field:?} is not a non-negative integer"))
    };
    let (a, b) = (parse(first)?, parse(second)?);
    match form {
        QueryForm::MOnes => pattern_from_length(a, b),
        QueryForm::ZerosOnes => Ok(ParikhVector::new(a, b)),
    }
}

/// Print the answer line for one query; false means an `ERR` line was printed.
fn answer_line(index: &IndexFile, pattern: Result<ParikhVector, String>) -> bool {
    let answer = pattern.and_then(|p| index.occurs(p).map_err(|e| e.to_string()));
    match answer {
        Ok(true) => println!("YES"),
        Ok(false) => println!("NO"),
        Err(reason) => {
            println!("ERR {reason}");
            return false;
        }
    }
    true
}

pub(crate) fn run(args: QueryArgs) -> Result<(), CliError> {
    let index = load_index(&args.index)?;

    let inline = args.m.is_some() || args.zeros.is_some() || args.ones.is_some();
    if inline {
        let Some(ones) = args.ones else {
            return Err(CliError::usage("an inline query needs --ones"));
        };
        let pattern = match (args.m, args.zeros) {
            (Some(m), None) => pattern_from_length(m, ones),
            (None, Some(zeros)) => Ok(ParikhVector::new(zeros, ones)),
            (Some(_), Some(_)) => {
                return Err(CliError::usage("give --m or --zeros, not both"));
            }
            (None, None) => {
                return Err(CliError::usage("an inline query needs --m or --zeros"));
            }
        };
        if !answer_line(&index, pattern) {
            return Err(CliError::usage("1 of 1 queries failed"));
        }
        return Ok(());
    }

    let stdin = std::io::stdin();
    let mut total = 0usize;
    let mut failed = 0usize;
    for line in stdin.lock().lines() {
        let line = line.map_err(|e| CliError::io(format!("cannot read standard input: {e}")))?;
        if line.trim().is_empty() {
            continue;
        }
        total += 1;
        if !answer_line(&index, pattern_from_line(&line, args.form)) {
            failed += 1;
        }
    }
    if failed > 0 {
        return Err(CliError::usage(format!(
            "{failed} of {total} queries failed"
        )));
    }
    Ok(())
}
