//! Words, groups, orders, and desk-scale verification of order properties.
//!
//! The crate is organized bottom-up:
//!
//! - [`word`]: reduced words over the generator alphabets;
//! - [`groups`]: group contexts with normal forms, equality, decompositions,
//!   and Cayley-ball enumeration;
//! - [`braid`]: handle reduction for braid words;
//! - [`orders`]: sign assignments and order specifications, including the
//!   series-expansion and eventually-shifting constructions;
//! - [`verify`]: randomized and exhaustive checks of order properties on
//!   balls, reporting verdicts with replayable counterexamples.

pub mod braid;
pub mod error;
pub mod groups;
pub mod orders;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use groups::{ball, GroupCtx, SemidirectForm, TAction, UvKind, DEFAULT_BALL_CAP, DEFAULT_WINDOW};
pub use orders::{ConvexPredicate, OrderSpec, Sign};
pub use verify::{DiscretenessWitness, VerificationReport, Verdict};
pub use word::{Generator, Word};
