//! Exact computations around Newhouse thickness: cut-out sets on the line,
//! the Gap Lemma and its constructive proof, dimension bounds, patterns in
//! thick sets, the potential game, and cube systems in higher dimension.
//!
//! Every routine is generic over [`Scalar`]; the aliases at the crate root
//! fix the exact rational instantiation used throughout the CLI and tests.

pub mod core1d;
pub mod dimension;
pub mod document;
pub mod error;
pub mod game;
pub mod gaplemma1d;
pub mod gaplemmard;
pub mod interval;
pub mod patterns1d;
pub mod scalar;
pub mod setsrd;

pub use num_rational::BigRational;

pub use error::{Error, Player, Result};
pub use scalar::Scalar;

/// Arbitrary-precision rational.
pub type Rational = BigRational;

pub type Interval = interval::Interval<Rational>;
pub type Gap = interval::Gap<Rational>;
pub type Enclosure = interval::Enclosure<Rational>;
pub type Extended = interval::Extended<Rational>;
pub type CutOutSet1D = core1d::CutOutSet<Rational>;
pub type CutOutSet1DF64 = core1d::CutOutSet<f64>;

/// Shorthand for `num / den` as an exact rational.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::ratio(num, den)
}
