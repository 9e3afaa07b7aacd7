//! Deterministic synthetic texts for tests and benchmarks. The same
//! parameters and seed always produce the same text.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::text::BinaryText;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("density {0} outside [0, 1]")]
    InvalidDensity(f64),
    #[error("run count {runs} invalid for length {len}: need 1..=len")]
    InvalidRunCount { runs: usize, len: usize },
    #[error("period must be at least 1")]
    InvalidPeriod,
}

/// Independent Bernoulli(`density`) symbols.
pub fn random_text(len: usize, density: f64, seed: u64) -> Result<BinaryText, GenerateError> {
    check_density(density)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(BinaryText::from_symbols(
        (0..len).map(|_| u8::from(rng.random_bool(density))).collect(),
    ))
}

/// Exactly `runs` maximal runs of near-equal length (lengths differ by at
/// most one); the starting symbol is drawn from the seed.
pub fn runs_text(len: usize, runs: usize, seed: u64) -> Result<BinaryText, GenerateError> {
    if runs < 1 || runs > len {
        return Err(GenerateError::InvalidRunCount { runs, len });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut symbol = u8::from(rng.random_bool(0.5));
    let (base, extra) = (len / runs, len % runs);
    let mut symbols = Vec::with_capacity(len);
    for r in 0..runs {
        symbols.extend(std::iter::repeat_n(symbol, base + usize::from(r < extra)));
        symbol = 1 - symbol;
    }
    Ok(BinaryText::from_symbols(symbols))
}

/// One random block of `period` Bernoulli(`density`) symbols, tiled to `len`.
pub fn periodic_text(
    len: usize,
    period: usize,
    density: f64,
    seed: u64,
) -> Result<BinaryText, GenerateError> {
    if period < 1 {
        return Err(GenerateError::InvalidPeriod);
    }
    check_density(density)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let block: Vec<u8> = (0..period).map(|_| u8::from(rng.random_bool(density))).collect();
    Ok(BinaryText::from_symbols(
        (0..len).map(|i| block[i % period]).collect(),
    ))
}

fn check_density(density: f64) -> Result<(), GenerateError> {
    if (0.0..=1.0).contains(&density) {
        Ok(())
    } else {
        Err(GenerateError::InvalidDensity(density))
    }
}
