use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, NumCast};

/// Floating point type the library computes in.
///
/// The associated tolerances scale with the precision of the type; the `f64`
/// values are the ones the command-line tool and the test-suite pin.
pub trait Scalar:
    Float + FromPrimitive + NumCast + Debug + Display + Send + Sync + 'static
{
    /// Admissible absolute deviation of a weight vector's sum from one.
    const SIMPLEX_TOL: Self;
    /// Sums within this distance of one are renormalized; worse is rejected.
    const RENORMALIZE_TOL: Self;
    /// Element-wise tolerance under which two members count as duplicates.
    const MEMBER_TOL: Self;
    /// `|m - p|` at or below this is treated as a flat criterion.
    const FLAT_TOL: Self;

    /// Converts an `f64` literal. Panics only for values the type cannot hold
    /// at all, which never happens for the finite literals used in the crate.
    fn lit(x: f64) -> Self {
        <Self as NumCast>::from(x).expect("literal representable in scalar type")
    }

    /// Lossy view as `f64`, used for error messages and file output.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const SIMPLEX_TOL: f64 = 1e-12;
    const RENORMALIZE_TOL: f64 = 1e-9;
    const MEMBER_TOL: f64 = 1e-12;
    const FLAT_TOL: f64 = 1e-12;
}

impl Scalar for f32 {
    const SIMPLEX_TOL: f32 = 1e-6;
    const RENORMALIZE_TOL: f32 = 1e-4;
    const MEMBER_TOL: f32 = 1e-6;
    const FLAT_TOL: f32 = 1e-6;
}
