//! Corner index: bucketed Pareto frontiers over run-bounded Parikh vectors.
//!
//! For a binary text let `G(x)` / `g(x)` be the minimum / maximum ones-count
//! over substrings with exactly `x` zeros. Both step functions are fully
//! determined by small sets of corner points: the Pareto-extremal Parikh
//! vectors of substrings that start and end with a full 0-run (for `G`) or a
//! full 1-run (for `g`). A pattern `(x, y)` with `x, y >= 1` occurs iff
//! `G(x) <= y <= g(x)`.
//!
//! Corners are stored in buckets of `bucket_width` consecutive zeros values,
//! each an ordered map, and a boundary point per bucket makes every lookup
//! resolvable inside the single bucket covering `x`. Queries run in
//! `O(log B)` time; construction keeps every bucket at `B` points or fewer
//! while it works and needs `O(r^2 log B + n/B)` time for an `r`-run text.

use std::collections::BTreeMap;
use std::io::{self, Write};

use crate::text::{BinaryText, ParikhVector, RunLengthEncoding};
use crate::QueryError;

/// Which boundary of the reachable ones-counts a frontier encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrontierKind {
    /// Minimum ones per zeros-count; lookups find the successor point.
    MinOnes,
    /// Maximum ones per zeros-count; lookups find the predecessor point.
    MaxOnes,
}

impl FrontierKind {
    /// True iff keeping `a` makes `b` redundant for this boundary.
    pub fn dominates(self, a: ParikhVector, b: ParikhVector) -> bool {
        if a == b {
            return false;
        }
        match self {
            FrontierKind::MinOnes => a.zeros >= b.zeros && a.ones <= b.ones,
            FrontierKind::MaxOnes => a.zeros <= b.zeros && a.ones >= b.ones,
        }
    }
}

/// Parikh vectors of all substrings that start and end with a full 0-run,
/// sorted and deduplicated. O(r^2) over the runs of the text.
pub fn zero_run_bounded_vectors(rle: &RunLengthEncoding) -> Vec<ParikhVector> {
    run_bounded_vectors(rle, 0)
}

/// As [`zero_run_bounded_vectors`] but for substrings bounded by full
/// 1-runs; vectors are still reported as `(zeros, ones)`.
pub fn one_run_bounded_vectors(rle: &RunLengthEncoding) -> Vec<ParikhVector> {
    run_bounded_vectors(rle, 1)
}

fn run_bounded_vectors(rle: &RunLengthEncoding, bound_symbol: u8) -> Vec<ParikhVector> {
    // For the t-th run of bound_symbol: cumulative bound-symbol length up to
    // it, and the total other-symbol length before it. A substring spanning
    // runs i..=j of the bound symbol then has bound count prefix[j+1] -
    // prefix[i] and other count other_before[j] - other_before[i].
    let mut prefix = vec![0usize];
    let mut other_before = Vec::new();
    let mut other_total = 0usize;
    for run in rle.runs() {
        if run.symbol == bound_symbol {
            other_before.push(other_total);
            prefix.push(prefix.last().unwrap() + run.len);
        } else {
            other_total += run.len;
        }
    }
    let mut out = Vec::new();
    for i in 0..other_before.len() {
        for j in i..other_before.len() {
            let bound = prefix[j + 1] - prefix[i];
            let other = other_before[j] - other_before[i];
            out.push(if bound_symbol == 0 {
                ParikhVector::new(bound, other)
            } else {
                ParikhVector::new(other, bound)
            });
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Inserts `point` into a staircase bucket keyed by zeros: drops it when an
/// existing entry dominates (or equals) it, and evicts the entries it
/// dominates. Returns whether the point was inserted.
///
/// In a staircase the only possible dominator sits immediately on the
/// dominating side, so both checks are single ordered-map probes.
pub fn staircase_insert(
    bucket: &mut BTreeMap<usize, usize>,
    point: ParikhVector,
    kind: FrontierKind,
) -> bool {
    match kind {
        FrontierKind::MinOnes => {
            if let Some((_, &ones)) = bucket.range(point.zeros..).next() {
                if ones <= point.ones {
                    return false;
                }
            }
            while let Some((&zeros, &ones)) = bucket.range(..=point.zeros).next_back() {
                if ones >= point.ones {
                    bucket.remove(&zeros);
                } else {
                    break;
                }
            }
        }
        FrontierKind::MaxOnes => {
            if let Some((_, &ones)) = bucket.range(..=point.zeros).next_back() {
                if ones >= point.ones {
                    return false;
                }
            }
            while let Some((&zeros, &ones)) = bucket.range(point.zeros..).next() {
                if ones <= point.ones {
                    bucket.remove(&zeros);
                } else {
                    break;
                }
            }
        }
    }
    bucket.insert(point.zeros, point.ones);
    true
}

/// A Pareto frontier split into buckets of `bucket_width` consecutive zeros
/// values; bucket `x / bucket_width` alone answers the lookup for `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BucketedFrontier {
    kind: FrontierKind,
    bucket_width: usize,
    domain_max: usize,
    buckets: Vec<BTreeMap<usize, usize>>,
    /// Zeros-key of the boundary point added to each bucket, if any.
    fill_keys: Vec<Option<usize>>,
}

impl BucketedFrontier {
    fn with_buckets(kind: FrontierKind, bucket_width: usize, domain_max: usize, count: usize) -> Self {
        Self {
            kind,
            bucket_width,
            domain_max,
            buckets: vec![BTreeMap::new(); count],
            fill_keys: vec![None; count],
        }
    }

    /// A frontier with no buckets at all (empty text).
    pub fn empty(kind: FrontierKind, bucket_width: usize) -> Self {
        Self::with_buckets(kind, bucket_width, 0, 0)
    }

    pub fn kind(&self) -> FrontierKind {
        self.kind
    }

    pub fn bucket_width(&self) -> usize {
        self.bucket_width
    }

    /// Largest zeros value the frontier answers lookups for.
    pub fn domain_max(&self) -> usize {
        self.domain_max
    }

    pub fn bucket_count(&self) -> usize {
        self.buckets.len()
    }

    /// All stored entries, boundary points included.
    pub fn stored_points(&self) -> usize {
        self.buckets.iter().map(BTreeMap::len).sum()
    }

    /// Number of boundary points added by the fill step.
    pub fn fill_count(&self) -> usize {
        self.fill_keys.iter().filter(|k| k.is_some()).count()
    }

    /// Number of genuine frontier points.
    pub fn frontier_len(&self) -> usize {
        self.stored_points() - self.fill_count()
    }

    /// Occupancy of the fullest bucket.
    pub fn max_bucket_len(&self) -> usize {
        self.buckets.iter().map(BTreeMap::len).max().unwrap_or(0)
    }

    /// Genuine frontier points in increasing zeros order.
    pub fn frontier_points(&self) -> impl Iterator<Item = ParikhVector> + '_ {
        self.buckets.iter().enumerate().flat_map(move |(j, bucket)| {
            bucket
                .iter()
                .filter(move |(&zeros, _)| self.fill_keys[j] != Some(zeros))
                .map(|(&zeros, &ones)| ParikhVector::new(zeros, ones))
        })
    }

    /// Boundary-resolving lookup in the single bucket covering `zeros`.
    /// Returns `None` only outside the filled domain.
    pub fn lookup(&self, zeros: usize) -> Option<usize> {
        let bucket = self.buckets.get(zeros / self.bucket_width)?;
        match self.kind {
            FrontierKind::MinOnes => bucket.range(zeros..).next().map(|(_, &v)| v),
            FrontierKind::MaxOnes => bucket.range(..=zeros).next_back().map(|(_, &v)| v),
        }
    }
}

/// Peak bucket occupancy seen while building a frontier.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FrontierBuildStats {
    pub pass1_max_bucket: usize,
    pub pass2_max_bucket: usize,
}

/// Reduces a point set to its bucketed Pareto frontier in two passes.
///
/// Pass 1 groups points into width-`B` slices by ones value, keeping each
/// slice a staircase; points dominated from another slice survive it. Pass 2
/// visits the slices from the dominating side and keeps a point only when
/// its zeros value passes the running extreme, which filters exactly the
/// globally extremal points; survivors land in the bucket of their zeros
/// value. No intermediate bucket ever holds more than `B` points.
pub fn build_frontier(
    points: &[ParikhVector],
    kind: FrontierKind,
    bucket_width: usize,
    domain_max: usize,
) -> (BucketedFrontier, FrontierBuildStats) {
    assert!(bucket_width >= 1, "bucket width must be at least 1");
    let mut stats = FrontierBuildStats::default();

    let slice_count = points
        .iter()
        .map(|p| p.ones / bucket_width + 1)
        .max()
        .unwrap_or(0);
    let mut slices: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); slice_count];
    for &p in points {
        let slice = &mut slices[p.ones / bucket_width];
        staircase_insert(slice, p, kind);
        stats.pass1_max_bucket = stats.pass1_max_bucket.max(slice.len());
    }
    debug_assert!(stats.pass1_max_bucket <= bucket_width);

    let mut frontier = BucketedFrontier::with_buckets(
        kind,
        bucket_width,
        domain_max,
        domain_max / bucket_width + 1,
    );
    // Iterate so that every potential dominator precedes the points it
    // dominates; equal-ones conflicts were already resolved inside slices.
    match kind {
        FrontierKind::MinOnes => {
            let mut max_zeros: Option<usize> = None;
            for slice in &slices {
                for (&zeros, &ones) in slice.iter() {
                    if max_zeros.is_none_or(|m| zeros > m) {
                        frontier.buckets[zeros / bucket_width].insert(zeros, ones);
                        max_zeros = Some(zeros);
                        let len = frontier.buckets[zeros / bucket_width].len();
                        stats.pass2_max_bucket = stats.pass2_max_bucket.max(len);
                    }
                }
            }
        }
        FrontierKind::MaxOnes => {
            let mut min_zeros: Option<usize> = None;
            for slice in slices.iter().rev() {
                for (&zeros, &ones) in slice.iter().rev() {
                    if min_zeros.is_none_or(|m| zeros < m) {
                        frontier.buckets[zeros / bucket_width].insert(zeros, ones);
                        min_zeros = Some(zeros);
                        let len = frontier.buckets[zeros / bucket_width].len();
                        stats.pass2_max_bucket = stats.pass2_max_bucket.max(len);
                    }
                }
            }
        }
    }
    debug_assert!(stats.pass2_max_bucket <= bucket_width);
    (frontier, stats)
}

/// Adds the boundary point that lets each bucket answer its lookups alone:
/// at most one per bucket, carrying the value a lookup would otherwise have
/// to fetch from a neighbouring bucket.
pub fn fill_boundaries(frontier: &mut BucketedFrontier) {
    let width = frontier.bucket_width;
    match frontier.kind {
        // Predecessor lookups: walk left to right, planting the running
        // maximum value at each bucket's left endpoint. Before any genuine
        // point the maximum over fewer zeros is 0 ones.
        FrontierKind::MaxOnes => {
            let mut carry = 0usize;
            for (j, bucket) in frontier.buckets.iter_mut().enumerate() {
                let endpoint = j * width;
                if let std::collections::btree_map::Entry::Vacant(slot) = bucket.entry(endpoint) {
                    slot.insert(carry);
                    frontier.fill_keys[j] = Some(endpoint);
                }
                if let Some((_, &v)) = bucket.iter().next_back() {
                    carry = v;
                }
            }
        }
        // Successor lookups: walk right to left, planting the value of the
        // nearest point on the right at each bucket's clamped right
        // endpoint. Endpoint 0 needs no point because zeros-count 0 is
        // answered without the frontier.
        FrontierKind::MinOnes => {
            let mut carry: Option<usize> = None;
            for j in (0..frontier.buckets.len()).rev() {
                let endpoint = ((j + 1) * width - 1).min(frontier.domain_max);
                let bucket = &mut frontier.buckets[j];
                if endpoint >= 1 && !bucket.contains_key(&endpoint) {
                    if let Some(v) = carry {
                        bucket.insert(endpoint, v);
                        frontier.fill_keys[j] = Some(endpoint);
                    } else {
                        // Nothing to the right: only possible when the whole
                        // domain right of `endpoint` is empty, which the
                        // construction and deserialization checks rule out
                        // for queryable domains.
                        debug_assert!(frontier.domain_max == 0);
                    }
                }
                if let Some((_, &v)) = bucket.iter().next() {
                    carry = Some(v);
                }
            }
        }
    }
}

/// Peak bucket occupancy per construction phase, for space-bound checks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CornerBuildStats {
    /// Largest slice while grouping points by ones value.
    pub pass1_max_bucket: usize,
    /// Largest bucket while filtering to the global frontier.
    pub pass2_max_bucket: usize,
    /// Largest bucket after boundary fill.
    pub filled_max_bucket: usize,
}

/// Two bucketed frontiers plus the scalar facts needed for axis queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerIndex {
    n: usize,
    total_zeros: usize,
    total_ones: usize,
    max_zero_run: usize,
    max_one_run: usize,
    bucket_width: usize,
    /// Minimum ones per zeros-count.
    lower: BucketedFrontier,
    /// Maximum ones per zeros-count.
    upper: BucketedFrontier,
}

impl CornerIndex {
    pub fn build(text: &BinaryText, bucket_width: usize) -> Self {
        Self::build_with_stats(text, bucket_width).0
    }

    pub fn build_with_stats(text: &BinaryText, bucket_width: usize) -> (Self, CornerBuildStats) {
        assert!(bucket_width >= 1, "bucket width must be at least 1");
        let rle = RunLengthEncoding::encode(text);
        let total_zeros = text.total_zeros();
        let total_ones = text.total_ones();

        let mut stats = CornerBuildStats::default();
        let (mut lower, mut upper) = if text.is_empty() {
            (
                BucketedFrontier::empty(FrontierKind::MinOnes, bucket_width),
                BucketedFrontier::empty(FrontierKind::MaxOnes, bucket_width),
            )
        } else {
            let (lower, s_lo) = build_frontier(
                &zero_run_bounded_vectors(&rle),
                FrontierKind::MinOnes,
                bucket_width,
                total_zeros,
            );
            let (upper, s_hi) = build_frontier(
                &one_run_bounded_vectors(&rle),
                FrontierKind::MaxOnes,
                bucket_width,
                total_zeros,
            );
            stats.pass1_max_bucket = s_lo.pass1_max_bucket.max(s_hi.pass1_max_bucket);
            stats.pass2_max_bucket = s_lo.pass2_max_bucket.max(s_hi.pass2_max_bucket);
            (lower, upper)
        };

        fill_boundaries(&mut lower);
        fill_boundaries(&mut upper);
        stats.filled_max_bucket = lower.max_bucket_len().max(upper.max_bucket_len());
        debug_assert!(stats.filled_max_bucket <= bucket_width + 1);

        let index = Self {
            n: text.len(),
            total_zeros,
            total_ones,
            max_zero_run: rle.max_run(0),
            max_one_run: rle.max_run(1),
            bucket_width,
            lower,
            upper,
        };
        (index, stats)
    }

    pub fn text_len(&self) -> usize {
        self.n
    }

    pub fn total_zeros(&self) -> usize {
        self.total_zeros
    }

    pub fn total_ones(&self) -> usize {
        self.total_ones
    }

    pub fn max_zero_run(&self) -> usize {
        self.max_zero_run
    }

    pub fn max_one_run(&self) -> usize {
        self.max_one_run
    }

    pub fn bucket_width(&self) -> usize {
        self.bucket_width
    }

    pub fn lower_frontier(&self) -> &BucketedFrontier {
        &self.lower
    }

    pub fn upper_frontier(&self) -> &BucketedFrontier {
        &self.upper
    }

    /// Total entries held by both frontiers, boundary points included.
    pub fn stored_points(&self) -> usize {
        self.lower.stored_points() + self.upper.stored_points()
    }

    /// Minimum ones over substrings with exactly `zeros` zeros; defined for
    /// `1..=total_zeros`.
    pub fn min_ones_for_zeros(&self, zeros: usize) -> Result<usize, QueryError> {
        if zeros < 1 || zeros > self.total_zeros {
            return Err(QueryError::ZerosOutOfRange {
                zeros,
                min: 1,
                max: self.total_zeros,
            });
        }
        Ok(self
            .lower
            .lookup(zeros)
            .expect("boundary fill covers the queryable domain"))
    }

    /// Maximum ones over substrings with exactly `zeros` zeros; defined for
    /// `0..=total_zeros` (0 zeros: the longest run of ones).
    pub fn max_ones_for_zeros(&self, zeros: usize) -> Result<usize, QueryError> {
        if zeros > self.total_zeros {
            return Err(QueryError::ZerosOutOfRange {
                zeros,
                min: 0,
                max: self.total_zeros,
            });
        }
        if zeros == 0 {
            return Ok(self.max_one_run);
        }
        Ok(self
            .upper
            .lookup(zeros)
            .expect("boundary fill covers the queryable domain"))
    }

    /// Occurrence test. Patterns on the axes reduce to run lengths; interior
    /// patterns occur iff the ones-count lies between the two frontiers.
    pub fn occurs(&self, pattern: ParikhVector) -> Result<bool, QueryError> {
        if pattern.is_empty() {
            return Err(QueryError::EmptyPattern);
        }
        let ParikhVector { zeros, ones } = pattern;
        if zeros > self.total_zeros || ones > self.total_ones {
            return Ok(false);
        }
        if zeros == 0 {
            return Ok(ones <= self.max_one_run);
        }
        if ones == 0 {
            return Ok(zeros <= self.max_zero_run);
        }
        Ok(self.min_ones_for_zeros(zeros)? <= ones && ones <= self.max_ones_for_zeros(zeros)?)
    }

    /// Serializes in the line-oriented index format; boundary points are
    /// omitted and rebuilt on load.
    pub fn write_to<W: Write>(&self, out: &mut W) -> io::Result<()> {
        writeln!(out, "{}", crate::format::MAGIC)?;
        writeln!(out, "type corner")?;
        writeln!(
            out,
            "n {} zeros {} ones {}",
            self.n, self.total_zeros, self.total_ones
        )?;
        writeln!(out, "bucket {}", self.bucket_width)?;
        writeln!(out, "maxrun0 {} maxrun1 {}", self.max_zero_run, self.max_one_run)?;
        write_frontier(out, "LG", &self.lower)?;
        write_frontier(out, "Lg", &self.upper)?;
        Ok(())
    }

    /// Rebuilds an index from its serialized parts, re-deriving boundary
    /// points. Errors describe the consistency check that failed; zeros
    /// values must be strictly increasing along each point list (checked
    /// here as well as during file parsing).
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        n: usize,
        total_zeros: usize,
        total_ones: usize,
        bucket_width: usize,
        max_zero_run: usize,
        max_one_run: usize,
        lower_points: &[ParikhVector],
        upper_points: &[ParikhVector],
    ) -> Result<Self, String> {
        if bucket_width < 1 {
            return Err("bucket width must be at least 1".into());
        }
        if total_zeros + total_ones != n {
            return Err(format!(
                "symbol counts {total_zeros} + {total_ones} do not sum to the text length {n}"
            ));
        }
        check_run_metadata("maxrun0", max_zero_run, total_zeros)?;
        check_run_metadata("maxrun1", max_one_run, total_ones)?;
        check_staircase("LG", lower_points, total_zeros, total_ones)?;
        check_staircase("Lg", upper_points, total_zeros, total_ones)?;
        if let Some(first) = lower_points.first() {
            if first.zeros == 0 {
                return Err("LG points must have at least one zero".into());
            }
        }
        if total_zeros >= 1 {
            match lower_points.last() {
                Some(last) if last.zeros == total_zeros => {}
                _ => return Err("LG must end with a point at the total zeros count".into()),
            }
        } else if !lower_points.is_empty() {
            return Err("LG must be empty when the text has no zeros".into());
        }
        if total_ones >= 1 {
            match upper_points.first() {
                Some(first) if first.zeros == 0 && first.ones == max_one_run => {}
                _ => {
                    return Err(
                        "Lg must start with a zero-zeros point carrying the longest ones run"
                            .into(),
                    )
                }
            }
        } else if !upper_points.is_empty() {
            return Err("Lg must be empty when the text has no ones".into());
        }

        let bucket_count = if n == 0 { 0 } else { total_zeros / bucket_width + 1 };
        let mut lower = BucketedFrontier::with_buckets(
            FrontierKind::MinOnes,
            bucket_width,
            total_zeros,
            bucket_count,
        );
        for p in lower_points {
            lower.buckets[p.zeros / bucket_width].insert(p.zeros, p.ones);
        }
        let mut upper = BucketedFrontier::with_buckets(
            FrontierKind::MaxOnes,
            bucket_width,
            total_zeros,
            bucket_count,
        );
        for p in upper_points {
            upper.buckets[p.zeros / bucket_width].insert(p.zeros, p.ones);
        }
        fill_boundaries(&mut lower);
        fill_boundaries(&mut upper);
        Ok(Self {
            n,
            total_zeros,
            total_ones,
            max_zero_run,
            max_one_run,
            bucket_width,
            lower,
            upper,
        })
    }

    /// Perturbs the stored point answering the widest max-ones lookup so a
    /// later oracle comparison must fail, for exercising mismatch detection.
    /// Returns `false` when the text has only one symbol value (no interior
    /// queries to flip).
    #[doc(hidden)]
    pub fn corrupt_one_point(&mut self) -> bool {
        if self.total_zeros == 0 || self.total_ones == 0 {
            return false;
        }
        let zeros = self.total_zeros;
        let bucket = &mut self.upper.buckets[zeros / self.bucket_width];
        let (&key, _) = bucket
            .range(..=zeros)
            .next_back()
            .expect("filled bucket always has a predecessor");
        let entry = bucket.get_mut(&key).unwrap();
        debug_assert!(*entry >= 1, "max ones at full zeros covers a ones run");
        *entry -= 1;
        true
    }
}

fn write_frontier<W: Write>(out: &mut W, tag: &str, frontier: &BucketedFrontier) -> io::Result<()> {
    let points: Vec<ParikhVector> = frontier.frontier_points().collect();
    writeln!(out, "{tag} {}", points.len())?;
    for p in points {
        writeln!(out, "{} {}", p.zeros, p.ones)?;
    }
    Ok(())
}

fn check_run_metadata(tag: &str, max_run: usize, total: usize) -> Result<(), String> {
    if max_run > total {
        return Err(format!("{tag} {max_run} exceeds the symbol total {total}"));
    }
    if (total > 0) != (max_run > 0) {
        return Err(format!("{tag} {max_run} inconsistent with symbol total {total}"));
    }
    Ok(())
}

fn check_staircase(
    tag: &str,
    points: &[ParikhVector],
    total_zeros: usize,
    total_ones: usize,
) -> Result<(), String> {
    for (i, p) in points.iter().enumerate() {
        if p.zeros > total_zeros || p.ones > total_ones {
            return Err(format!("{tag} point {p} outside the text's symbol counts"));
        }
        if i > 0 {
            let prev = points[i - 1];
            if p.zeros <= prev.zeros || p.ones <= prev.ones {
                return Err(format!(
                    "{tag} points {prev} and {p} break the staircase order"
                ));
            }
        }
    }
    Ok(())
}
