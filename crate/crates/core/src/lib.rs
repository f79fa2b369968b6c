//! Exact partition and plane-partition numbers, their leading digits, and
//! certified bounds on the first index whose value starts with a given
//! digit string.

pub mod asymptotics;
pub mod digits;
pub mod engines;
pub mod error;
pub mod framework;
pub mod real;
pub mod search;
pub mod selftest;

pub use digits::{leading_digits, DigitString, LogBase, Membership, TargetInterval};
pub use engines::{BigNat, Kind, SequenceTable};
pub use error::{Error, Result};
pub use framework::{FrameworkBounds, FrameworkParams};
pub use real::{Ball, Precision, Real};
pub use search::{SearchResult, Searcher, VerificationReport};

/// Framework bounds evaluated in plain `f64`.
pub type Bounds64 = FrameworkBounds<f64>;
/// Framework bounds evaluated as certified balls.
pub type CertifiedBounds = FrameworkBounds<Ball>;
/// Framework parameters in plain `f64`.
pub type Params64 = FrameworkParams<f64>;
/// Framework parameters as certified balls.
pub type CertifiedParams = FrameworkParams<Ball>;

/// Writes a big integer as a JSON number (decimal digits, no quotes).
pub(crate) fn serialize_biguint<S: serde::Serializer>(
    v: &num_bigint::BigUint,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize;
    let n: serde_json::Number = v.to_string().parse().map_err(serde::ser::Error::custom)?;
    n.serialize(s)
}
