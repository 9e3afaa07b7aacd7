//! Per-length min/max ones tables with O(1) occurrence queries.
//!
//! A pattern `(x, y)` of length `m = x + y` occurs iff the reachable
//! ones-counts of length-`m` windows — which form a contiguous interval,
//! since sliding a window one step changes its count by at most 1 — contain
//! `y`.

use std::io::{self, Write};

use crate::text::ParikhVector;
use crate::QueryError;

/// Minimum and maximum ones over all windows, per window length `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnesTable {
    max_one: Vec<usize>,
    min_one: Vec<usize>,
}

impl OnesTable {
    /// Wraps prebuilt columns; entry `i` covers windows of length `i + 1`.
    pub fn new(max_one: Vec<usize>, min_one: Vec<usize>) -> Self {
        assert_eq!(max_one.len(), min_one.len());
        debug_assert!((0..max_one.len()).all(|i| min_one[i] <= max_one[i] && max_one[i] <= i + 1));
        Self { max_one, min_one }
    }

    pub fn text_len(&self) -> usize {
        self.max_one.len()
    }

    /// Maximum ones over windows of length `len`.
    pub fn max_one(&self, len: usize) -> Result<usize, QueryError> {
        self.check_len(len)?;
        Ok(self.max_one[len - 1])
    }

    /// Minimum ones over windows of length `len`.
    pub fn min_one(&self, len: usize) -> Result<usize, QueryError> {
        self.check_len(len)?;
        Ok(self.min_one[len - 1])
    }

    pub fn max_one_slice(&self) -> &[usize] {
        &self.max_one
    }

    pub fn min_one_slice(&self) -> &[usize] {
        &self.min_one
    }

    /// Interval test: the pattern occurs iff its ones-count lies between the
    /// min and max for its length.
    pub fn occurs(&self, pattern: ParikhVector) -> Result<bool, QueryError> {
        let m = pattern.len();
        if m == 0 {
            return Err(QueryError::EmptyPattern);
        }
        if m > self.text_len() {
            return Ok(false);
        }
        Ok(self.min_one[m - 1] <= pattern.ones && pattern.ones <= self.max_one[m - 1])
    }

    fn check_len(&self, len: usize) -> Result<(), QueryError> {
        if len < 1 || len > self.text_len() {
            return Err(QueryError::LengthOutOfRange {
                len,
                max: self.text_len(),
            });
        }
        Ok(())
    }

    /// Serializes in the line-oriented index format.
    pub fn write_to<W: Write>(&self, out: &mut W) -> io::Result<()> {
        writeln!(out, "{}", crate::format::MAGIC)?;
        writeln!(out, "type table")?;
        writeln!(out, "n {}", self.text_len())?;
        write_column(out, "maxone", &self.max_one)?;
        write_column(out, "minone", &self.min_one)?;
        Ok(())
    }

    /// Perturbs one stored entry so that a later oracle comparison must
    /// fail, for exercising mismatch detection. Returns `false` when the
    /// table is empty (nothing observable to corrupt).
    #[doc(hidden)]
    pub fn corrupt_one_entry(&mut self) -> bool {
        let n = self.text_len();
        if n == 0 {
            return false;
        }
        // Raising max_one for full-length windows claims an occurrence of
        // (zeros - 1, ones + 1); lowering min_one claims (zeros + 1, ones - 1).
        // One of the two is always a valid, in-range pattern.
        if self.max_one[n - 1] < n {
            self.max_one[n - 1] += 1;
        } else {
            self.min_one[n - 1] -= 1;
        }
        true
    }
}

fn write_column<W: Write>(out: &mut W, tag: &str, column: &[usize]) -> io::Result<()> {
    write!(out, "{tag}")?;
    for v in column {
        write!(out, " {v}")?;
    }
    writeln!(out)
}
