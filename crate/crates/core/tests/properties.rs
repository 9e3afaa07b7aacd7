//! Differential and invariant tests: every index structure is compared
//! against the brute-force oracle on exhaustive small inputs and randomized
//! larger ones, and the structural invariants (staircases, bucket bounds,
//! operation budgets) are asserted along the way.

use std::collections::BTreeMap;

use proptest::prelude::*;

use bjsm::bitparallel::{ChunkConfig, ChunkEngine, PackedText, Word};
use bjsm::corner::{
    build_frontier, fill_boundaries, one_run_bounded_vectors, staircase_insert,
    zero_run_bounded_vectors,
};
use bjsm::oracle;
use bjsm::text::{BinaryText, ParikhVector, RunLengthEncoding};
use bjsm::{CornerIndex, FrontierKind, IndexFile, QueryError};

fn text_from_bits(bits: u32, len: usize) -> BinaryText {
    BinaryText::from_symbols((0..len).map(|i| ((bits >> i) & 1) as u8).collect())
}

/// Every pattern in the padded rectangle around the text's symbol counts.
fn query_rectangle(text: &BinaryText) -> impl Iterator<Item = ParikhVector> {
    let zeros_end = text.total_zeros() + 1;
    let ones_end = text.total_ones() + 1;
    (0..=zeros_end)
        .flat_map(move |z| (0..=ones_end).map(move |o| ParikhVector::new(z, o)))
        .filter(|p| !p.is_empty())
}

fn assert_matches_oracle(text: &BinaryText, index: &CornerIndex, label: &str) {
    for pattern in query_rectangle(text) {
        assert_eq!(
            index.occurs(pattern),
            oracle::occurs(text, pattern),
            "{label}: text {text} pattern {pattern}"
        );
    }
}

fn prop_text(max_len: usize) -> impl Strategy<Value = BinaryText> {
    proptest::collection::vec(0u8..=1, 0..=max_len).prop_map(BinaryText::from_symbols)
}

fn prop_points(max_coord: usize, max_len: usize) -> impl Strategy<Value = Vec<ParikhVector>> {
    proptest::collection::vec((0..=max_coord, 0..=max_coord), 0..=max_len)
        .prop_map(|pairs| pairs.into_iter().map(|(z, o)| ParikhVector::new(z, o)).collect())
}

fn brute_force_frontier(points: &[ParikhVector], kind: FrontierKind) -> Vec<ParikhVector> {
    let mut keep: Vec<ParikhVector> = points
        .iter()
        .copied()
        .filter(|&p| !points.iter().any(|&q| kind.dominates(q, p)))
        .collect();
    keep.sort_unstable();
    keep.dedup();
    keep
}

// ---------------------------------------------------------------------------
// Text primitives
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn complement_is_an_involution(text in prop_text(128)) {
        prop_assert_eq!(text.complement().complement(), text.clone());
        prop_assert_eq!(text.complement().total_ones(), text.total_zeros());
    }

    #[test]
    fn run_length_encoding_round_trips(text in prop_text(128)) {
        let rle = RunLengthEncoding::encode(&text);
        prop_assert_eq!(rle.decode(), text.clone());
        prop_assert!(rle.runs().windows(2).all(|w| w[0].symbol != w[1].symbol));
        prop_assert!(rle.runs().iter().all(|r| r.len >= 1));
        prop_assert_eq!(rle.runs().iter().map(|r| r.len).sum::<usize>(), text.len());
    }

    #[test]
    fn prefix_counts_match_slices(text in prop_text(96), pair in (0usize..96, 0usize..96)) {
        let (a, b) = pair;
        let start = a.min(text.len());
        let len = b.min(text.len() - start);
        let direct = text.symbols()[start..start + len]
            .iter()
            .map(|&s| s as usize)
            .sum::<usize>();
        prop_assert_eq!(text.ones_in(start, len), direct);
    }
}

// ---------------------------------------------------------------------------
// Frontier construction
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn staircase_bucket_stays_extremal(
        points in prop_points(30, 40),
        kind in prop_oneof![Just(FrontierKind::MinOnes), Just(FrontierKind::MaxOnes)],
    ) {
        let mut bucket = BTreeMap::new();
        for &p in &points {
            staircase_insert(&mut bucket, p, kind);
        }
        let stored: Vec<ParikhVector> =
            bucket.iter().map(|(&z, &o)| ParikhVector::new(z, o)).collect();
        // Strictly increasing in both coordinates.
        for w in stored.windows(2) {
            prop_assert!(w[0].zeros < w[1].zeros && w[0].ones < w[1].ones, "{stored:?}");
        }
        // Exactly the points of the input no other input point dominates.
        prop_assert_eq!(stored, brute_force_frontier(&points, kind));
    }

    #[test]
    fn bucketed_frontier_equals_brute_force(
        points in prop_points(30, 40),
        kind in prop_oneof![Just(FrontierKind::MinOnes), Just(FrontierKind::MaxOnes)],
        width in 1usize..=34,
    ) {
        let (frontier, stats) = build_frontier(&points, kind, width, 30);
        let got: Vec<ParikhVector> = frontier.frontier_points().collect();
        prop_assert_eq!(got, brute_force_frontier(&points, kind));
        prop_assert!(stats.pass1_max_bucket <= width);
        prop_assert!(stats.pass2_max_bucket <= width);
        prop_assert!(frontier.max_bucket_len() <= width);
    }

    #[test]
    fn boundary_fill_adds_at_most_one_point_per_bucket(
        text in prop_text(64),
        width in 1usize..=66,
    ) {
        if text.is_empty() {
            return Ok(());
        }
        let rle = RunLengthEncoding::encode(&text);
        for (kind, points) in [
            (FrontierKind::MinOnes, zero_run_bounded_vectors(&rle)),
            (FrontierKind::MaxOnes, one_run_bounded_vectors(&rle)),
        ] {
            let (mut frontier, _) = build_frontier(&points, kind, width, text.total_zeros());
            let before = frontier.stored_points();
            fill_boundaries(&mut frontier);
            prop_assert!(frontier.fill_count() <= frontier.bucket_count());
            prop_assert_eq!(frontier.stored_points(), before + frontier.fill_count());
            prop_assert!(frontier.max_bucket_len() <= width + 1);
            prop_assert_eq!(frontier.frontier_len(), before);
        }
    }
}

// ---------------------------------------------------------------------------
// Corner index vs oracle
// ---------------------------------------------------------------------------

#[test]
fn corner_matches_oracle_exhaustively_on_small_texts() {
    for len in 1..=10usize {
        for bits in 0..(1u32 << len) {
            let text = text_from_bits(bits, len);
            for width in [1, 2, 3, len] {
                let index = CornerIndex::build(&text, width);
                assert_matches_oracle(&text, &index, &format!("B={width}"));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(192))]

    #[test]
    fn corner_matches_oracle_on_random_texts(text in prop_text(64), width in 1usize..=66) {
        let index = CornerIndex::build(&text, width);
        for pattern in query_rectangle(&text) {
            prop_assert_eq!(
                index.occurs(pattern),
                oracle::occurs(&text, pattern),
                "text {} B={} pattern {}", &text, width, pattern
            );
        }
    }

    #[test]
    fn reconstruction_matches_substring_extremes(text in prop_text(64), width in 1usize..=66) {
        let index = CornerIndex::build(&text, width);
        let bounds = oracle::ones_bounds_by_zeros(&text);
        for zeros in 1..=text.total_zeros() {
            prop_assert_eq!(index.min_ones_for_zeros(zeros), Ok(bounds.min_ones(zeros).unwrap()));
            prop_assert_eq!(index.max_ones_for_zeros(zeros), Ok(bounds.max_ones(zeros).unwrap()));
        }
        prop_assert_eq!(
            index.max_ones_for_zeros(0),
            Ok(RunLengthEncoding::encode(&text).max_run(1))
        );
    }

    #[test]
    fn bucket_width_does_not_change_answers(text in prop_text(48)) {
        let reference = CornerIndex::build(&text, 1);
        for width in [2, 3, 5, 16, text.len().max(1)] {
            let index = CornerIndex::build(&text, width);
            for pattern in query_rectangle(&text) {
                prop_assert_eq!(index.occurs(pattern), reference.occurs(pattern));
            }
        }
    }

    #[test]
    fn construction_respects_space_bounds(text in prop_text(96), width in 1usize..=100) {
        let (index, stats) = CornerIndex::build_with_stats(&text, width);
        prop_assert!(stats.pass1_max_bucket <= width);
        prop_assert!(stats.pass2_max_bucket <= width);
        prop_assert!(stats.filled_max_bucket <= width + 1);
        let frontier_total =
            index.lower_frontier().frontier_len() + index.upper_frontier().frontier_len();
        let bucket_total =
            index.lower_frontier().bucket_count() + index.upper_frontier().bucket_count();
        prop_assert!(index.stored_points() <= frontier_total + bucket_total);
    }

    #[test]
    fn out_of_range_zeros_are_rejected(text in prop_text(32)) {
        let index = CornerIndex::build(&text, 4);
        let beyond = text.total_zeros() + 1;
        let rejected = [
            index.min_ones_for_zeros(beyond),
            index.min_ones_for_zeros(0),
            index.max_ones_for_zeros(beyond),
        ];
        for result in rejected {
            let out_of_range = matches!(result, Err(QueryError::ZerosOutOfRange { .. }));
            prop_assert!(out_of_range, "unexpected {result:?}");
        }
    }
}

// ---------------------------------------------------------------------------
// Word-parallel engine vs scalar references
// ---------------------------------------------------------------------------

fn scalar_chunk_step(
    cfg: &ChunkConfig,
    ones: usize,
    out_fields: &[usize],
    in_fields: &[usize],
) -> (usize, usize) {
    let mut prefix = 0isize;
    let mut best = 0isize;
    let mut total = 0isize;
    for h in 0..cfg.fields_per_chunk() {
        prefix += in_fields[h] as isize - out_fields[h] as isize;
        best = best.max(prefix);
        total += in_fields[h] as isize - out_fields[h] as isize;
    }
    (best as usize, (ones as isize + total) as usize)
}

fn check_chunk_step_against_scalar<W: Word>(ones_extra: usize, out_bits: u64, in_bits: u64) {
    let mut eng = ChunkEngine::<W>::with_checked(true);
    let cfg = *eng.config();
    let k = cfg.fields_per_chunk();
    let out_fields: Vec<usize> = (0..k).map(|h| ((out_bits >> h) & 1) as usize).collect();
    let in_fields: Vec<usize> = (0..k).map(|h| ((in_bits >> h) & 1) as usize).collect();
    let ones = out_fields.iter().sum::<usize>() + ones_extra;
    let outgoing = cfg.word_from_fields::<W>(&out_fields);
    let incoming = cfg.word_from_fields::<W>(&in_fields);
    assert_eq!(
        eng.chunk_step(ones, outgoing, incoming),
        scalar_chunk_step(&cfg, ones, &out_fields, &in_fields),
        "ones={ones} out={out_fields:?} in={in_fields:?} w={}",
        W::BITS
    );
}

#[test]
fn chunk_step_matches_scalar_exhaustively_on_small_words() {
    // Every pair of outgoing/incoming chunk contents at the 16-bit width.
    for out_bits in 0..8u64 {
        for in_bits in 0..8u64 {
            for ones_extra in [0usize, 1, 5] {
                check_chunk_step_against_scalar::<u16>(ones_extra, out_bits, in_bits);
            }
        }
    }
}

proptest! {
    #[test]
    fn chunk_step_matches_scalar_on_native_words(
        out_bits in 0u64..(1 << 9),
        in_bits in 0u64..(1 << 9),
        ones_extra in 0usize..1000,
    ) {
        check_chunk_step_against_scalar::<u64>(ones_extra, out_bits, in_bits);
        check_chunk_step_against_scalar::<u32>(ones_extra, out_bits & 0x1f, in_bits & 0x1f);
    }

    #[test]
    fn prefix_sums_match_scalar(word_fields in proptest::collection::vec(0usize..=2, 9)) {
        let mut eng = ChunkEngine::<u64>::with_checked(true);
        let cfg = *eng.config();
        let k = cfg.fields_per_chunk();
        let word = cfg.word_from_fields::<u64>(&word_fields[..k]);
        let sums = eng.prefix_sums_word(word);
        let mut acc = 0usize;
        for (h, &field) in word_fields.iter().enumerate().take(k) {
            acc += field;
            prop_assert_eq!(cfg.field_of(sums, h), acc, "field {}", h);
        }
    }

    #[test]
    fn parallel_max_matches_scalar(
        xs in proptest::collection::vec(0usize..18, 9),
        ys in proptest::collection::vec(0usize..18, 9),
    ) {
        let mut eng = ChunkEngine::<u64>::with_checked(true);
        let cfg = *eng.config();
        let k = cfg.fields_per_chunk();
        let m = eng.parallel_max(
            cfg.word_from_fields::<u64>(&xs[..k]),
            cfg.word_from_fields::<u64>(&ys[..k]),
        );
        for h in 0..k {
            prop_assert_eq!(cfg.field_of(m, h), xs[h].max(ys[h]));
        }
    }
}

#[test]
fn tables_match_oracle_exhaustively_on_small_texts() {
    for len in 1..=10usize {
        for bits in 0..(1u32 << len) {
            let text = text_from_bits(bits, len);
            let want = oracle::ones_table(&text);
            assert_eq!(ChunkEngine::<u16>::with_checked(true).build_tables(&text), want);
            assert_eq!(ChunkEngine::<u32>::with_checked(true).build_tables(&text), want);
            assert_eq!(ChunkEngine::<u64>::with_checked(true).build_tables(&text), want);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tables_match_oracle_on_random_texts(text in prop_text(192)) {
        let want = oracle::ones_table(&text);
        prop_assert_eq!(ChunkEngine::<u16>::with_checked(true).build_tables(&text), want.clone());
        prop_assert_eq!(ChunkEngine::<u32>::with_checked(true).build_tables(&text), want.clone());
        prop_assert_eq!(ChunkEngine::<u64>::with_checked(true).build_tables(&text), want);
    }

    #[test]
    fn per_length_work_stays_within_budget(text in prop_text(256)) {
        // Per window length: at most c1 * ceil(n/K) * ceil(log2 K) operations
        // for the chunk walk plus c2 * ceil(len/K) to count the first
        // alignment, with c1 = 32 and c2 = 8.
        macro_rules! check_width {
            ($w:ty) => {
                let mut eng = ChunkEngine::<$w>::new();
                let packed = PackedText::<$w>::pack(&text);
                let k = eng.config().fields_per_chunk();
                let passes = (k as u32).next_power_of_two().ilog2() as u64;
                for len in 1..=text.len() {
                    eng.reset_ops();
                    eng.max_ones_for_length(&packed, len).unwrap();
                    let budget = 32 * text.len().div_ceil(k) as u64 * passes
                        + 8 * len.div_ceil(k) as u64;
                    prop_assert!(
                        eng.word_ops() <= budget,
                        "len {} used {} of {} ops at width {}",
                        len, eng.word_ops(), budget, <$w>::BITS
                    );
                }
            };
        }
        check_width!(u16);
        check_width!(u32);
        check_width!(u64);
    }
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn corner_round_trips_through_the_file_format(text in prop_text(80), width in 1usize..=84) {
        let index = IndexFile::Corner(CornerIndex::build(&text, width));
        let mut buf = Vec::new();
        index.write_to(&mut buf).unwrap();
        let parsed = IndexFile::parse(std::str::from_utf8(&buf).unwrap()).unwrap();
        prop_assert_eq!(&parsed, &index);
        for pattern in query_rectangle(&text) {
            prop_assert_eq!(parsed.occurs(pattern), index.occurs(pattern));
        }
    }

    #[test]
    fn table_round_trips_through_the_file_format(text in prop_text(160)) {
        let index = IndexFile::Table(oracle::ones_table(&text));
        let mut buf = Vec::new();
        index.write_to(&mut buf).unwrap();
        let parsed = IndexFile::parse(std::str::from_utf8(&buf).unwrap()).unwrap();
        prop_assert_eq!(&parsed, &index);
    }
}
