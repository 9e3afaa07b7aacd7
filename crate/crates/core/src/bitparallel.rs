//! Word-level parallel table construction over a field-packed text.
//!
//! Symbols live in fields of `f = 1 + log2(w)` bits, `K = floor(w/f)` per
//! word, lowest field first. Values stay below `2K < 2^(f-1)`, so every
//! field keeps a spare top bit; that bit makes fieldwise maximum of two
//! packed words a constant number of word operations, and aligned shifted
//! additions give fieldwise prefix sums in `ceil(log2 K)` passes. Sliding a
//! window one whole chunk at a time then costs `O(log w)` word operations
//! for all `K` intermediate positions together.

use num_traits::PrimInt;

use crate::tables::OnesTable;
use crate::text::BinaryText;
use crate::QueryError;

/// Unsigned machine word usable as a chunk of packed fields.
pub trait Word: PrimInt {
    const BITS: u32;
    /// Truncating conversion; values used here always fit.
    fn from_usize(v: usize) -> Self;
    fn to_usize(self) -> usize;
}

macro_rules! impl_word {
    ($($t:ty),*) => {$(
        impl Word for $t {
            const BITS: u32 = <$t>::BITS;
            #[inline]
            fn from_usize(v: usize) -> Self {
                v as $t
            }
            #[inline]
            fn to_usize(self) -> usize {
                self as usize
            }
        }
    )*};
}

impl_word!(u16, u32, u64);

/// Field geometry of a word type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChunkConfig {
    word_bits: u32,
    field_bits: u32,
    fields_per_chunk: usize,
}

impl ChunkConfig {
    /// Geometry for a `w`-bit word: `f = 1 + log2(w)`, `K = floor(w/f)`.
    pub fn for_word_bits(word_bits: u32) -> Self {
        assert!(
            word_bits.is_power_of_two() && (16..=64).contains(&word_bits),
            "unsupported word width {word_bits}"
        );
        let field_bits = 1 + word_bits.ilog2();
        let fields_per_chunk = (word_bits / field_bits) as usize;
        // Prefix sums reach at most 2K per field; the top bit must stay free.
        debug_assert!(2 * fields_per_chunk < (1 << (field_bits - 1)));
        Self {
            word_bits,
            field_bits,
            fields_per_chunk,
        }
    }

    pub fn of<W: Word>() -> Self {
        Self::for_word_bits(W::BITS)
    }

    pub fn word_bits(&self) -> u32 {
        self.word_bits
    }

    pub fn field_bits(&self) -> u32 {
        self.field_bits
    }

    pub fn fields_per_chunk(&self) -> usize {
        self.fields_per_chunk
    }

    /// Value of field `h` of `word`.
    pub fn field_of<W: Word>(&self, word: W, h: usize) -> usize {
        debug_assert!(h < self.fields_per_chunk);
        let mask = (W::one() << self.field_bits as usize) - W::one();
        ((word >> (h * self.field_bits as usize)) & mask).to_usize()
    }

    /// Packs field values (low field first) into a word.
    pub fn word_from_fields<W: Word>(&self, values: &[usize]) -> W {
        debug_assert!(values.len() <= self.fields_per_chunk);
        let mut word = W::zero();
        for (h, &v) in values.iter().enumerate() {
            debug_assert!(v < (1 << self.field_bits));
            word = word | (W::from_usize(v) << (h * self.field_bits as usize));
        }
        word
    }
}

/// A text packed one symbol per field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackedText<W: Word> {
    config: ChunkConfig,
    chunks: Vec<W>,
    len: usize,
}

impl<W: Word> PackedText<W> {
    pub fn pack(text: &BinaryText) -> Self {
        let config = ChunkConfig::of::<W>();
        let k = config.fields_per_chunk;
        let f = config.field_bits as usize;
        let mut chunks = vec![W::zero(); text.len().div_ceil(k)];
        for (i, &sym) in text.symbols().iter().enumerate() {
            if sym == 1 {
                chunks[i / k] = chunks[i / k] | (W::one() << ((i % k) * f));
            }
        }
        Self {
            config,
            chunks,
            len: text.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn config(&self) -> &ChunkConfig {
        &self.config
    }

    pub fn chunk_count(&self) -> usize {
        self.chunks.len()
    }

    /// Chunk `i`, or an all-zero word past the end; sliding windows read the
    /// padding as zeros, which can never raise a maximum.
    pub fn chunk_or_zero(&self, i: usize) -> W {
        self.chunks.get(i).copied().unwrap_or_else(W::zero)
    }

    /// Symbol at position `i`, read back from its field.
    pub fn symbol(&self, i: usize) -> usize {
        debug_assert!(i < self.len);
        let k = self.config.fields_per_chunk;
        self.config.field_of(self.chunks[i / k], i % k)
    }
}

/// Fieldwise evaluator over one word type. Counts the word operations it
/// performs; in checked mode it also asserts the no-overflow preconditions
/// of every trick and cross-validates the running window count.
#[derive(Debug, Clone)]
pub struct ChunkEngine<W: Word> {
    config: ChunkConfig,
    /// Bits belonging to the K fields.
    live_mask: W,
    /// Low bit of every field.
    field_ones: W,
    /// Spare top bit of every field.
    top_bits: W,
    /// Fields holding 1, 2, ..., K.
    ramp: W,
    /// Bits of field 0.
    field_mask: W,
    /// ceil(log2 K) shifted additions for a full prefix scan.
    scan_passes: u32,
    checked: bool,
    ops: u64,
}

impl<W: Word> ChunkEngine<W> {
    pub fn new() -> Self {
        Self::with_checked(false)
    }

    /// Reads `BJSM_CHECKED=1` from the environment.
    pub fn from_env() -> Self {
        Self::with_checked(std::env::var("BJSM_CHECKED").is_ok_and(|v| v == "1"))
    }

    pub fn with_checked(checked: bool) -> Self {
        let config = ChunkConfig::of::<W>();
        let f = config.field_bits as usize;
        let k = config.fields_per_chunk;
        let mut field_ones = W::zero();
        let mut ramp = W::zero();
        for h in 0..k {
            field_ones = field_ones | (W::one() << (h * f));
            ramp = ramp | (W::from_usize(h + 1) << (h * f));
        }
        Self {
            config,
            live_mask: (W::one() << (k * f)) - W::one(),
            field_ones,
            top_bits: field_ones << (f - 1),
            ramp,
            field_mask: (W::one() << f) - W::one(),
            scan_passes: (k as u32).next_power_of_two().ilog2(),
            checked,
            ops: 0,
        }
    }

    pub fn config(&self) -> &ChunkConfig {
        &self.config
    }

    pub fn is_checked(&self) -> bool {
        self.checked
    }

    /// Word operations performed so far.
    pub fn word_ops(&self) -> u64 {
        self.ops
    }

    pub fn reset_ops(&mut self) {
        self.ops = 0;
    }

    /// Fieldwise `incoming + 1 - outgoing` for binary-field words; adding
    /// the all-ones word first keeps every field non-negative.
    pub fn diff_word(&mut self, outgoing: W, incoming: W) -> W {
        if self.checked {
            assert!(
                outgoing & !self.field_ones == W::zero() && incoming & !self.field_ones == W::zero(),
                "diff_word operands must be binary-field words"
            );
        }
        self.ops += 2;
        (incoming + self.field_ones) - outgoing
    }

    /// Fieldwise inclusive prefix sums: shifted additions at field distances
    /// 1, 2, 4, ... Masking the shifted addend keeps the spare bits above
    /// the last field clean.
    pub fn prefix_sums_word(&mut self, word: W) -> W {
        let f = self.config.field_bits as usize;
        let mut acc = word;
        for pass in 0..self.scan_passes {
            let distance = (1usize << pass) * f;
            acc = acc + ((acc << distance) & self.live_mask);
            self.ops += 3;
        }
        acc
    }

    /// Fieldwise maximum using the spare top bit: `(x | top) - y` keeps the
    /// top bit of exactly the fields where `x >= y`, and that bit pattern
    /// expands to a full blend mask.
    pub fn parallel_max(&mut self, x: W, y: W) -> W {
        if self.checked {
            assert!(
                (x | y) & self.top_bits == W::zero(),
                "parallel_max operand has a field top bit set"
            );
        }
        let ge = ((x | self.top_bits) - y) & self.top_bits;
        let keep = (ge - (ge >> (self.config.field_bits as usize - 1))) | ge;
        self.ops += 10;
        (x & keep) | (y & !keep)
    }

    /// Fieldwise `max(prefix, 0)` for prefix sums offset by the ramp:
    /// maximum against 1..K, then the offset subtracted away.
    pub fn clamped_prefix_diffs(&mut self, sums: W) -> W {
        let clamped = self.parallel_max(sums, self.ramp);
        self.ops += 1;
        clamped - self.ramp
    }

    /// Maximum field value, halving the live fields each round.
    pub fn horizontal_max(&mut self, word: W) -> usize {
        let f = self.config.field_bits as usize;
        let mut acc = word;
        let mut fields = self.config.fields_per_chunk;
        while fields > 1 {
            let half = fields.div_ceil(2);
            let low = acc & self.first_fields_mask(half);
            let high = acc >> (half * f);
            acc = self.parallel_max(low, high);
            fields = half;
            self.ops += 2;
        }
        (acc & self.field_mask).to_usize()
    }

    /// Slides a window by one whole chunk: `outgoing` holds the K fields
    /// leaving the window, `incoming` the K entering it, `ones` the count at
    /// the current alignment. Returns the best gain over the K intermediate
    /// positions and the count at the next alignment.
    pub fn chunk_step(&mut self, ones: usize, outgoing: W, incoming: W) -> (usize, usize) {
        let k = self.config.fields_per_chunk;
        let f = self.config.field_bits as usize;
        let diffs = self.diff_word(outgoing, incoming);
        let sums = self.prefix_sums_word(diffs);
        let clamped = self.clamped_prefix_diffs(sums);
        let delta = self.horizontal_max(clamped);
        // The last field holds the total diff offset by K.
        let total = ((sums >> ((k - 1) * f)) & self.field_mask).to_usize();
        self.ops += 4;
        let next_ones = (ones + total) - k;
        if self.checked {
            let by_popcount =
                (ones + incoming.count_ones() as usize) - outgoing.count_ones() as usize;
            assert_eq!(next_ones, by_popcount, "window count diverged from popcount");
        }
        (delta, next_ones)
    }

    /// Exact maximum ones over all windows of length `len`.
    pub fn max_ones_for_length(
        &mut self,
        packed: &PackedText<W>,
        len: usize,
    ) -> Result<usize, QueryError> {
        let n = packed.len();
        if len < 1 || len > n {
            return Err(QueryError::LengthOutOfRange { len, max: n });
        }
        let k = self.config.fields_per_chunk;
        if len < k {
            return Ok(self.max_ones_small(packed, len));
        }

        // Count of the first alignment, then one chunk step per K shifts.
        let mut ones = 0usize;
        for c in 0..len / k {
            ones += packed.chunk_or_zero(c).count_ones() as usize;
            self.ops += 2;
        }
        if !len.is_multiple_of(k) {
            let partial = packed.chunk_or_zero(len / k) & self.first_fields_mask(len % k);
            ones += partial.count_ones() as usize;
            self.ops += 3;
        }
        let mut best = ones;
        for t in 0..(n - len).div_ceil(k) {
            let outgoing = packed.chunk_or_zero(t);
            let incoming = self.virtual_chunk(packed, t * k + len);
            let (delta, next) = self.chunk_step(ones, outgoing, incoming);
            best = best.max(ones + delta);
            ones = next;
        }
        Ok(best)
    }

    /// Per-length tables: the maximum directly, the minimum as
    /// `len - max zeros` via the packed complement.
    pub fn build_tables(&mut self, text: &BinaryText) -> OnesTable {
        let n = text.len();
        let packed = PackedText::<W>::pack(text);
        let packed_neg = PackedText::<W>::pack(&text.complement());
        let mut max_one = Vec::with_capacity(n);
        let mut min_one = Vec::with_capacity(n);
        for len in 1..=n {
            let hi = self.max_ones_for_length(&packed, len).expect("len in range");
            let max_zeros = self
                .max_ones_for_length(&packed_neg, len)
                .expect("len in range");
            max_one.push(hi);
            min_one.push(len - max_zeros);
        }
        OnesTable::new(max_one, min_one)
    }

    /// Plain sliding window for lengths shorter than one chunk.
    fn max_ones_small(&mut self, packed: &PackedText<W>, len: usize) -> usize {
        let mut window = 0usize;
        for i in 0..len {
            window += packed.symbol(i);
        }
        let mut best = window;
        for i in len..packed.len() {
            window += packed.symbol(i);
            window -= packed.symbol(i - len);
            best = best.max(window);
            self.ops += 1;
        }
        best
    }

    /// The K fields starting at text position `pos`, assembled from the two
    /// physical chunks they straddle; positions past the end read as zero.
    fn virtual_chunk(&mut self, packed: &PackedText<W>, pos: usize) -> W {
        let k = self.config.fields_per_chunk;
        let f = self.config.field_bits as usize;
        let (idx, off) = (pos / k, pos % k);
        if off == 0 {
            return packed.chunk_or_zero(idx);
        }
        let low = packed.chunk_or_zero(idx) >> (off * f);
        let high = packed.chunk_or_zero(idx + 1) << ((k - off) * f);
        self.ops += 4;
        (low | high) & self.live_mask
    }

    fn first_fields_mask(&self, count: usize) -> W {
        if count >= self.config.fields_per_chunk {
            self.live_mask
        } else {
            (W::one() << (count * self.config.field_bits as usize)) - W::one()
        }
    }
}

impl<W: Word> Default for ChunkEngine<W> {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn text(s: &str) -> BinaryText {
        BinaryText::parse(s).unwrap()
    }

    #[test]
    fn config_geometry() {
        let c16 = ChunkConfig::for_word_bits(16);
        assert_eq!((c16.field_bits(), c16.fields_per_chunk()), (5, 3));
        let c32 = ChunkConfig::for_word_bits(32);
        assert_eq!((c32.field_bits(), c32.fields_per_chunk()), (6, 5));
        let c64 = ChunkConfig::for_word_bits(64);
        assert_eq!((c64.field_bits(), c64.fields_per_chunk()), (7, 9));
    }

    #[test]
    fn packing_layout_is_low_field_first() {
        let packed = PackedText::<u16>::pack(&text("101"));
        assert_eq!(packed.chunk_count(), 1);
        // Field 0 at bit 0, field 2 at bit 10.
        assert_eq!(packed.chunk_or_zero(0), (1 << 10) | 1);
        assert_eq!(packed.chunk_or_zero(1), 0);
        assert_eq!(packed.symbol(0), 1);
        assert_eq!(packed.symbol(1), 0);
        assert_eq!(packed.symbol(2), 1);

        let packed = PackedText::<u16>::pack(&text("1011001"));
        assert_eq!(packed.chunk_count(), 3);
        assert_eq!(packed.len(), 7);
    }

    #[test]
    fn diff_prefix_clamp_worked_example() {
        let mut eng = ChunkEngine::<u16>::with_checked(true);
        let cfg = *eng.config();
        let c1 = cfg.word_from_fields::<u16>(&[1, 0, 1]);
        let c2 = cfg.word_from_fields::<u16>(&[0, 1, 1]);
        let diffs = eng.diff_word(c1, c2);
        assert_eq!(fields(&cfg, diffs), vec![0, 2, 1]);
        let sums = eng.prefix_sums_word(diffs);
        assert_eq!(fields(&cfg, sums), vec![0, 2, 3]);
        let clamped = eng.clamped_prefix_diffs(sums);
        assert_eq!(fields(&cfg, clamped), vec![0, 0, 0]);
        assert_eq!(eng.horizontal_max(clamped), 0);
    }

    #[test]
    fn chunk_step_worked_examples() {
        let mut eng = ChunkEngine::<u16>::with_checked(true);
        let cfg = *eng.config();
        // Sliding over [101] out, [011] in: gains -1, 0, 0 clamp to 0.
        let c1 = cfg.word_from_fields::<u16>(&[1, 0, 1]);
        let c2 = cfg.word_from_fields::<u16>(&[0, 1, 1]);
        assert_eq!(eng.chunk_step(2, c1, c2), (0, 2));
        // All-zero outgoing, [110] incoming: best gain 2.
        let c1 = cfg.word_from_fields::<u16>(&[0, 0, 0]);
        let c2 = cfg.word_from_fields::<u16>(&[1, 1, 0]);
        assert_eq!(eng.chunk_step(2, c1, c2), (2, 4));
    }

    #[test]
    fn parallel_max_is_fieldwise_max() {
        let mut eng = ChunkEngine::<u16>::with_checked(true);
        let cfg = *eng.config();
        for a in 0..8usize {
            for b in 0..8usize {
                for c in 0..8usize {
                    for d in 0..8usize {
                        let x = cfg.word_from_fields::<u16>(&[a, b, 0]);
                        let y = cfg.word_from_fields::<u16>(&[c, d, 0]);
                        let m = eng.parallel_max(x, y);
                        assert_eq!(
                            fields(&cfg, m),
                            vec![a.max(c), b.max(d), 0],
                            "max({a},{b} | {c},{d})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn horizontal_max_over_all_small_words() {
        let mut eng = ChunkEngine::<u16>::with_checked(true);
        let cfg = *eng.config();
        for a in 0..7usize {
            for b in 0..7usize {
                for c in 0..7usize {
                    let w = cfg.word_from_fields::<u16>(&[a, b, c]);
                    assert_eq!(eng.horizontal_max(w), a.max(b).max(c));
                }
            }
        }
    }

    fn fields(cfg: &ChunkConfig, word: u16) -> Vec<usize> {
        (0..cfg.fields_per_chunk())
            .map(|h| cfg.field_of(word, h))
            .collect()
    }

    #[test]
    fn max_ones_matches_oracle_per_length() {
        let samples = [
            "1011001",
            "0",
            "1",
            "0000000000",
            "1111111111",
            "0101010101010101010101",
            "1101110101001110000110110",
        ];
        for s in samples {
            let t = text(s);
            let reference = oracle::ones_table(&t);
            macro_rules! check_width {
                ($w:ty) => {
                    let mut eng = ChunkEngine::<$w>::with_checked(true);
                    let packed = PackedText::<$w>::pack(&t);
                    for len in 1..=t.len() {
                        assert_eq!(
                            eng.max_ones_for_length(&packed, len).unwrap(),
                            reference.max_one(len).unwrap(),
                            "text {s:?} len {len} width {}",
                            <$w>::BITS
                        );
                    }
                };
            }
            check_width!(u16);
            check_width!(u32);
            check_width!(u64);
        }
    }

    #[test]
    fn length_bounds_are_rejected() {
        let mut eng = ChunkEngine::<u64>::new();
        let packed = PackedText::<u64>::pack(&text("1011001"));
        assert_eq!(
            eng.max_ones_for_length(&packed, 0),
            Err(QueryError::LengthOutOfRange { len: 0, max: 7 })
        );
        assert_eq!(
            eng.max_ones_for_length(&packed, 8),
            Err(QueryError::LengthOutOfRange { len: 8, max: 7 })
        );
    }

    #[test]
    fn build_tables_reference_values() {
        macro_rules! check_width {
            ($w:ty) => {
                let mut eng = ChunkEngine::<$w>::with_checked(true);
                let tab = eng.build_tables(&text("1011001"));
                assert_eq!(tab.max_one_slice(), &[1, 2, 2, 3, 3, 3, 4]);
                assert_eq!(tab.min_one_slice(), &[0, 0, 1, 2, 2, 3, 4]);
                assert!(eng.word_ops() > 0);
            };
        }
        check_width!(u16);
        check_width!(u32);
        check_width!(u64);
    }

    #[test]
    fn build_tables_empty_text() {
        let tab = ChunkEngine::<u64>::new().build_tables(&text(""));
        assert_eq!(tab.text_len(), 0);
    }

    #[test]
    fn ops_counter_resets() {
        let mut eng = ChunkEngine::<u64>::new();
        eng.build_tables(&text("110100"));
        assert!(eng.word_ops() > 0);
        eng.reset_ops();
        assert_eq!(eng.word_ops(), 0);
    }
}
