//! Local moves that turn graphs into threshold graphs, exact homomorphism
//! counting, and searches for homomorphism-density maximizers over threshold
//! graphs and their limits.

pub mod error;
pub mod graphcore;
pub mod homcount;
pub mod moves;
pub mod optimize;
pub mod suites;
pub mod threshold;

pub use error::{Error, Result};

use num::{BigRational, ToPrimitive};

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
