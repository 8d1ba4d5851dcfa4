//! Consecutively leveraged vehicles.
//!
//! Level 0 is the outermost, investor-facing vehicle; the last level invests
//! directly in the primitive variable `θ_N`. Each level turns the return of
//! the level beneath it into `u_i·(x − p_i)`, so with zero spreads the outer
//! return is `(Π u_i)·θ_N`.

use crate::criteria::Attitude;
use crate::error::{Error, Result};
use crate::regularity::Regularity;
use crate::scalar::Scalar;
use crate::scheme::Decision;

#[derive(Debug, Clone)]
pub struct LeverageChain<T> {
    levels: Vec<Decision<T>>,
    primitive: Regularity<T>,
}

impl<T: Scalar> LeverageChain<T> {
    pub fn new(levels: Vec<Decision<T>>, primitive: Regularity<T>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::EmptyChain);
        }
        Ok(Self { levels, primitive })
    }

    pub fn levels(&self) -> &[Decision<T>] {
        &self.levels
    }

    /// Regularity of the primitive variable `θ_N`.
    pub fn primitive(&self) -> &Regularity<T> {
        &self.primitive
    }

    /// See-through leverage, the product of all per-level leverages.
    pub fn see_through(&self) -> T {
        self.levels.iter().fold(T::one(), |acc, d| acc * d.u())
    }

    /// Outer return on capital when the primitive variable takes `theta_n`.
    pub fn consequence(&self, theta_n: T) -> T {
        self.levels
            .iter()
            .rev()
            .fold(theta_n, |x, level| level.consequence(x))
    }

    /// Minimum (averse) or maximum (prone) over the primitive regularity of
    /// the expected outer return.
    ///
    /// The outer return is affine in `θ_N`, so each member's expectation is
    /// the consequence of that member's mean. Every level is non-decreasing in
    /// its input, so the extremum is the one attained at the extreme mean.
    pub fn criterion(&self, attitude: Attitude) -> T {
        let q = &self.primitive;
        let statistic = match attitude {
            Attitude::Averse => q.min_expectation(|s| s),
            Attitude::Prone => q.max_expectation(|s| s),
        };
        self.consequence(statistic.value)
    }
}
