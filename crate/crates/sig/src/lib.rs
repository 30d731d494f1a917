//! Truncated path signatures of sampled streams and what they recover.
//!
//! A d-dimensional stream of increments embeds as a piecewise-linear
//! lead-lag path in 2d dimensions; its signature up to a chosen depth is
//! a tensor of iterated integrals indexed by words over the 2d letters.
//! Linear functionals on those tensors are combinations of words, closed
//! under the shuffle product, and exact rational arithmetic makes it
//! possible to *solve* for functionals with prescribed behavior: this
//! crate constructs combinations that read off power sums, covariances,
//! and third moments of the underlying increments from the signature
//! alone, certifying each one against directly computed moments on random
//! rational streams.
//!
//! The crate splits into:
//!
//! - [`tensor`], [`word`], [`stream`]: truncated tensor arithmetic,
//!   word indexing, lead-lag embedding, and signatures of streams and
//!   piecewise-linear paths (exact over [`scalar::Rational`], fast over
//!   `f64`);
//! - [`shuffle`]: word combinations as functionals and their shuffle
//!   product, satisfying pointwise multiplication on signatures;
//! - [`symbolic`], [`moments`]: signatures with polynomial entries in the
//!   increments, and the exact solver that recovers moment functionals
//!   from them;
//! - [`features`], [`regression`], [`experiments`]: signature feature
//!   matrices and two seeded, reproducible studies (correlation recovery
//!   by least squares, random-walk classification by logistic
//!   regression).
//!
//! The `examples/` directory walks through each capability; the `sig`
//! binary exposes them on the command line.

pub mod error;
pub mod experiments;
pub mod features;
pub mod moments;
pub mod regression;
pub mod rng;
pub mod scalar;
pub mod shuffle;
mod solver;
pub mod stream;
pub mod symbolic;
pub mod tensor;
pub mod word;

pub use error::Error;
pub use scalar::{Rational, Scalar};
pub use shuffle::{shuffle, WordCombination};
pub use stream::{stream_from_csv, IncrementStream, PiecewiseLinearPath, StreamMode};
pub use tensor::TruncatedTensor;
pub use word::Word;
