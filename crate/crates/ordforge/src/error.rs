//! The shared error type.
//!
//! Every fallible operation in the crate reports through [`Error`]; there are
//! no panics on user input. Variants marked "internal consistency" signal a
//! broken invariant in this crate rather than bad input, and are kept loud on
//! purpose.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two words over different letter families were combined, or a word
    /// contains letters outside its group's alphabet.
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("{op} is not supported for {group}")]
    UnsupportedGroup { op: &'static str, group: String },

    /// A doubly indexed generator left the tracked window `[-window, window]`.
    #[error("generator index {index} is outside the tracked window [-{window}, {window}]")]
    WindowExceeded { index: i64, window: i64 },

    #[error("the identity has no leading term")]
    IdentityHasNoLeadingTerm,

    #[error("ball enumeration produced {candidates} candidate words, over the cap of {cap}")]
    BallBudgetExceeded { candidates: usize, cap: usize },

    #[error("handle reduction gave up after {cap} rewrite steps")]
    ReductionBudgetExceeded { cap: usize },

    /// Internal consistency: a handle-free word must carry a single sign at
    /// its lowest index.
    #[error("mixed signs at lowest index {index} of a handle-free word")]
    MixedSignsAtLowestIndex { index: u32 },

    #[error("order spec does not fit the group: {0}")]
    IncompatibleSpec(String),

    /// Internal consistency: a nonempty reduced word always has a nonzero
    /// series coefficient at or below its own length.
    #[error("series expansion found no nonzero term for a nonempty word")]
    MagnusInconclusive,

    /// The supplied action never moves leading suffixes up the index line in
    /// either direction, so no shift-derived sign table exists.
    #[error("the action does not shift leading suffixes on the tracked window")]
    NotEventuallyShifting,

    #[error("no image supplied for generator {0}")]
    MissingImage(String),

    #[error("no discreteness witness: {0}")]
    NoDiscretenessWitness(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("exponent out of supported range: {0}")]
    ExponentOverflow(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
