//! Brute-force reference implementations. These define the ground-truth
//! semantics; every index structure must agree with them exactly.

use crate::tables::OnesTable;
use crate::text::{BinaryText, ParikhVector};
use crate::QueryError;

/// Scans every window of length `zeros + ones`; O(n) per query.
pub fn occurs(text: &BinaryText, pattern: ParikhVector) -> Result<bool, QueryError> {
    let m = pattern.len();
    if m == 0 {
        return Err(QueryError::EmptyPattern);
    }
    if m > text.len() {
        return Ok(false);
    }
    Ok((0..=text.len() - m).any(|start| text.ones_in(start, m) == pattern.ones))
}

/// Per-length min/max ones-counts by scanning all windows of every length;
/// O(n^2) total.
pub fn ones_table(text: &BinaryText) -> OnesTable {
    let n = text.len();
    let mut max_one = Vec::with_capacity(n);
    let mut min_one = Vec::with_capacity(n);
    for len in 1..=n {
        let mut lo = usize::MAX;
        let mut hi = 0;
        for start in 0..=n - len {
            let ones = text.ones_in(start, len);
            lo = lo.min(ones);
            hi = hi.max(ones);
        }
        min_one.push(lo);
        max_one.push(hi);
    }
    OnesTable::new(max_one, min_one)
}

/// Min/max ones-counts per exact zeros-count, for zeros in `1..=total_zeros`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnesBoundsByZeros {
    min_ones: Vec<usize>,
    max_ones: Vec<usize>,
}

impl OnesBoundsByZeros {
    /// Largest zeros-count covered (the total zeros of the text).
    pub fn zeros_limit(&self) -> usize {
        self.min_ones.len()
    }

    /// Minimum ones over substrings with exactly `zeros` zeros.
    pub fn min_ones(&self, zeros: usize) -> Option<usize> {
        zeros.checked_sub(1).and_then(|i| self.min_ones.get(i)).copied()
    }

    /// Maximum ones over substrings with exactly `zeros` zeros.
    pub fn max_ones(&self, zeros: usize) -> Option<usize> {
        zeros.checked_sub(1).and_then(|i| self.max_ones.get(i)).copied()
    }
}

/// Enumerates all O(n^2) substrings and folds their Parikh vectors.
pub fn ones_bounds_by_zeros(text: &BinaryText) -> OnesBoundsByZeros {
    let zmax = text.total_zeros();
    let mut min_ones = vec![usize::MAX; zmax];
    let mut max_ones = vec![0usize; zmax];
    for start in 0..text.len() {
        let mut zeros = 0usize;
        let mut ones = 0usize;
        for &sym in &text.symbols()[start..] {
            if sym == 1 {
                ones += 1;
            } else {
                zeros += 1;
            }
            if zeros > 0 {
                min_ones[zeros - 1] = min_ones[zeros - 1].min(ones);
                max_ones[zeros - 1] = max_ones[zeros - 1].max(ones);
            }
        }
    }
    debug_assert!(min_ones.iter().all(|&v| v != usize::MAX));
    OnesBoundsByZeros { min_ones, max_ones }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(s: &str) -> BinaryText {
        BinaryText::parse(s).unwrap()
    }

    #[test]
    fn occurs_scans_windows() {
        let t = text("1011001");
        assert_eq!(occurs(&t, ParikhVector::new(1, 2)), Ok(true));
        assert_eq!(occurs(&t, ParikhVector::new(3, 0)), Ok(false));
        assert_eq!(occurs(&t, ParikhVector::new(2, 0)), Ok(true));
        assert_eq!(occurs(&t, ParikhVector::new(0, 2)), Ok(true));
        assert_eq!(occurs(&t, ParikhVector::new(0, 3)), Ok(false));
        assert_eq!(occurs(&t, ParikhVector::new(3, 4)), Ok(true));
        assert_eq!(occurs(&t, ParikhVector::new(4, 4)), Ok(false));
        assert_eq!(
            occurs(&t, ParikhVector::new(0, 0)),
            Err(QueryError::EmptyPattern)
        );
    }

    #[test]
    fn ones_table_reference_values() {
        let t = text("1011001");
        let tab = ones_table(&t);
        assert_eq!(tab.max_one_slice(), &[1, 2, 2, 3, 3, 3, 4]);
        assert_eq!(tab.min_one_slice(), &[0, 0, 1, 2, 2, 3, 4]);
    }

    #[test]
    fn ones_table_empty_text() {
        let tab = ones_table(&text(""));
        assert_eq!(tab.text_len(), 0);
    }

    #[test]
    fn bounds_by_zeros_reference_values() {
        // mins per zeros-count 1..=3: 0, 0, 2; maxes: 3, 3, 4
        let b = ones_bounds_by_zeros(&text("1011001"));
        assert_eq!(b.zeros_limit(), 3);
        assert_eq!(b.min_ones(1), Some(0));
        assert_eq!(b.min_ones(2), Some(0));
        assert_eq!(b.min_ones(3), Some(2));
        assert_eq!(b.max_ones(1), Some(3));
        assert_eq!(b.max_ones(2), Some(3));
        assert_eq!(b.max_ones(3), Some(4));
        assert_eq!(b.min_ones(0), None);
        assert_eq!(b.min_ones(4), None);
    }

    #[test]
    fn bounds_by_zeros_all_zeros() {
        let b = ones_bounds_by_zeros(&text("0000"));
        assert_eq!(b.zeros_limit(), 4);
        for x in 1..=4 {
            assert_eq!(b.min_ones(x), Some(0));
            assert_eq!(b.max_ones(x), Some(0));
        }
    }

    #[test]
    fn bounds_by_zeros_two_symbol_text() {
        let b = ones_bounds_by_zeros(&text("01"));
        assert_eq!(b.min_ones(1), Some(0));
        assert_eq!(b.max_ones(1), Some(1));
    }
}
