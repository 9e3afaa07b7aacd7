//! Binary texts, Parikh vectors, and run-length encodings.

use std::fmt;

use thiserror::Error;

/// Byte rejected while parsing a text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("invalid byte {byte:#04x} at offset {offset}: expected '0', '1', or whitespace")]
pub struct TextParseError {
    pub offset: usize,
    pub byte: u8,
}

/// A string over `{0, 1}` with O(1) substring ones-counts via prefix sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryText {
    symbols: Vec<u8>,
    prefix_ones: Vec<usize>,
}

impl BinaryText {
    /// Parses ASCII `'0'`/`'1'`, skipping whitespace.
    pub fn parse(raw: &str) -> Result<Self, TextParseError> {
        let mut symbols = Vec::with_capacity(raw.len());
        for (offset, &byte) in raw.as_bytes().iter().enumerate() {
            match byte {
                b'0' => symbols.push(0),
                b'1' => symbols.push(1),
                _ if byte.is_ascii_whitespace() => {}
                _ => return Err(TextParseError { offset, byte }),
            }
        }
        Ok(Self::from_symbols(symbols))
    }

    /// Wraps a symbol sequence; panics if any symbol is not 0 or 1.
    pub fn from_symbols(symbols: Vec<u8>) -> Self {
        let mut prefix_ones = Vec::with_capacity(symbols.len() + 1);
        let mut ones = 0usize;
        prefix_ones.push(0);
        for &s in &symbols {
            assert!(s <= 1, "symbol out of alphabet: {s}");
            ones += usize::from(s);
            prefix_ones.push(ones);
        }
        Self {
            symbols,
            prefix_ones,
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn total_ones(&self) -> usize {
        self.prefix_ones[self.len()]
    }

    pub fn total_zeros(&self) -> usize {
        self.len() - self.total_ones()
    }

    /// Ones in the window of `len` symbols starting at `start`.
    pub fn ones_in(&self, start: usize, len: usize) -> usize {
        self.prefix_ones[start + len] - self.prefix_ones[start]
    }

    /// The text with every symbol negated.
    pub fn complement(&self) -> Self {
        Self::from_symbols(self.symbols.iter().map(|&s| 1 - s).collect())
    }
}

impl fmt::Display for BinaryText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.symbols {
            write!(f, "{}", char::from(b'0' + s))?;
        }
        Ok(())
    }
}

/// Symbol counts `(zeros, ones)` of a pattern or substring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParikhVector {
    pub zeros: usize,
    pub ones: usize,
}

impl ParikhVector {
    pub fn new(zeros: usize, ones: usize) -> Self {
        Self { zeros, ones }
    }

    /// Length of any string with these counts.
    pub fn len(&self) -> usize {
        self.zeros + self.ones
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for ParikhVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.zeros, self.ones)
    }
}

/// One maximal run of equal symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    pub symbol: u8,
    pub len: usize,
}

/// Decomposition of a text into its maximal runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunLengthEncoding {
    runs: Vec<Run>,
}

impl RunLengthEncoding {
    pub fn encode(text: &BinaryText) -> Self {
        let mut runs: Vec<Run> = Vec::new();
        for &s in text.symbols() {
            match runs.last_mut() {
                Some(run) if run.symbol == s => run.len += 1,
                _ => runs.push(Run { symbol: s, len: 1 }),
            }
        }
        Self { runs }
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    /// Number of maximal runs (0 for the empty text).
    pub fn run_count(&self) -> usize {
        self.runs.len()
    }

    /// Length of the longest run of `symbol`, or 0 if the symbol is absent.
    pub fn max_run(&self, symbol: u8) -> usize {
        self.runs
            .iter()
            .filter(|r| r.symbol == symbol)
            .map(|r| r.len)
            .max()
            .unwrap_or(0)
    }

    /// Expands back to the text.
    pub fn decode(&self) -> BinaryText {
        let mut symbols = Vec::new();
        for run in &self.runs {
            symbols.extend(std::iter::repeat_n(run.symbol, run.len));
        }
        BinaryText::from_symbols(symbols)
    }
}
