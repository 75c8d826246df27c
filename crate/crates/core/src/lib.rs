//! Exact probability over finite Cartesian powers of dice and coins.
//!
//! The crate is organised bottom-up:
//!
//! * [`space`] describes a die (or coin) and its `d`-fold Cartesian power,
//!   and streams the outcomes of that power without materialising it.
//! * [`dsl`] parses and evaluates the small expression language used to
//!   describe events (`d1 <= d2 <= d3`) and random variables (`count(K)`).
//! * [`stats`] computes exact probabilities, expectations, variances and
//!   distributions by enumeration.
//! * [`sumdist`] computes the distribution of a sum of dice by repeated
//!   convolution, and checks it against the enumeration path.
//! * [`clt`] compares exact sum distributions with their normal
//!   approximation.
//!
//! All probabilities are exact rationals; floating point only shows up in
//! [`clt`] and in display helpers.
//!
//! ```
//! use dicelab_core::{dsl, space::{DieSpec, SampleSpace}, stats};
//!
//! let space = SampleSpace::new(DieSpec::fair(1..=6), 3);
//! let event = dsl::parse("d1 <= d2 <= d3").unwrap();
//! let p = stats::event_weight(&space, &event).unwrap();
//! assert_eq!(p.to_string(), "56/216");
//! ```

pub mod clt;
pub mod dsl;
pub mod exact;
pub mod space;
pub mod stats;
pub mod sumdist;

pub use exact::{Probability, Rational};
pub use space::{DieSpec, Face, Outcome, SampleSpace};
pub use stats::{Distribution, Moments};
