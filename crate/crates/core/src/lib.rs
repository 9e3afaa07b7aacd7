//! Indexes for jumbled (abelian) pattern matching on binary strings.
//!
//! A pattern over `{0, 1}` is given by its Parikh vector `(x, y)`: it occurs
//! in a text iff some substring contains exactly `x` zeros and `y` ones. Two
//! index structures answer such queries:
//!
//! * [`CornerIndex`] — stores the Pareto-extremal Parikh vectors of
//!   run-bounded substrings, split into buckets of `B` consecutive
//!   zeros-counts. A query touches a single bucket (`O(log B)` time), and the
//!   index occupies `O(n/B)` words beyond the frontier points themselves.
//! * [`OnesTable`] — per-length minimum/maximum ones-counts with `O(1)`
//!   queries, built by [`ChunkEngine`] using word-level parallelism on a
//!   field-packed copy of the text.
//!
//! Both structures agree exactly with the brute-force [`oracle`] module,
//! which defines the ground-truth semantics used throughout the test suite.

pub mod bitparallel;
pub mod corner;
pub mod format;
pub mod generate;
pub mod oracle;
pub mod tables;
pub mod text;

pub use bitparallel::{ChunkConfig, ChunkEngine, PackedText, Word};
pub use corner::{CornerBuildStats, CornerIndex, FrontierKind};
pub use format::{FormatError, IndexFile};
pub use generate::GenerateError;
pub use tables::OnesTable;
pub use text::{BinaryText, ParikhVector, Run, RunLengthEncoding, TextParseError};

/// Errors reported by occurrence and reconstruction queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum QueryError {
    /// The empty pattern (no zeros, no ones) has no defined occurrence.
    #[error("empty pattern: need at least one symbol")]
    EmptyPattern,
    /// A zeros-count outside the queryable range of the index.
    #[error("zeros count {zeros} outside valid range {min}..={max}")]
    ZerosOutOfRange {
        zeros: usize,
        min: usize,
        max: usize,
    },
    /// A window length outside `1..=n`.
    #[error("window length {len} outside valid range 1..={max}")]
    LengthOutOfRange { len: usize, max: usize },
}

/// Engine over 16-bit words (3 fields of 5 bits); small enough to test the
/// word primitives exhaustively.
pub type ChunkEngine16 = ChunkEngine<u16>;
/// Engine over 32-bit words (5 fields of 6 bits).
pub type ChunkEngine32 = ChunkEngine<u32>;
/// Engine over 64-bit words (9 fields of 7 bits).
pub type ChunkEngine64 = ChunkEngine<u64>;

/// Word type used by non-simulated builds.
pub type NativeWord = u64;
/// Engine over [`NativeWord`].
pub type NativeEngine = ChunkEngine<NativeWord>;

/// Text packed for [`ChunkEngine16`].
pub type PackedText16 = PackedText<u16>;
/// Text packed for [`ChunkEngine32`].
pub type PackedText32 = PackedText<u32>;
/// Text packed for [`ChunkEngine64`].
pub type PackedText64 = PackedText<u64>;
