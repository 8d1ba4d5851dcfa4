//! Criteria ranking decisions for the four decision-maker classes.
//!
//! The uncertainty-averse and uncertainty-prone criteria work directly on
//! profits and losses; utility functions only appear in the classical
//! expected-utility criterion.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::regularity::{Distribution, Regularity, ThetaGrid};
use crate::scalar::Scalar;
use crate::scheme::Decision;

/// Utility on consequences for the expected-utility criterion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UtilityKind<T> {
    Identity,
    /// `(1 − exp(−α·x)) / α`; concave for `α > 0`, convex for `α < 0`.
    Exponential {
        alpha: T,
    },
    /// `sign(x)·|x|^γ`; concave on gains for `γ < 1`, convex for `γ > 1`.
    Power {
        gamma: T,
    },
}

impl<T: Scalar> UtilityKind<T> {
    pub fn exponential(alpha: T) -> Result<Self> {
        if !alpha.is_finite() || alpha == T::zero() {
            return Err(Error::InvalidUtility(format!(
                "exponential utility needs a finite non-zero alpha, got {alpha}"
            )));
        }
        Ok(Self::Exponential { alpha })
    }

    pub fn power(gamma: T) -> Result<Self> {
        if !gamma.is_finite() || gamma <= T::zero() {
            return Err(Error::InvalidUtility(format!(
                "power utility needs a finite positive gamma, got {gamma}"
            )));
        }
        Ok(Self::Power { gamma })
    }

    pub fn apply(&self, x: T) -> T {
        match *self {
            Self::Identity => x,
            Self::Exponential { alpha } => (T::one() - (-alpha * x).exp()) / alpha,
            Self::Power { gamma } => x.signum() * x.abs().powf(gamma),
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Self::Identity)
    }
}

impl<T: Scalar> FromStr for UtilityKind<T> {
    type Err = Error;

    /// Parses `identity`, `exp:ALPHA` or `pow:GAMMA`.
    fn from_str(s: &str) -> Result<Self> {
        let parse = |v: &str| {
            v.trim()
                .parse::<f64>()
                .map(T::lit)
                .map_err(|_| Error::InvalidUtility(format!("bad parameter in `{s}`")))
        };
        match s.split_once(':') {
            None if s == "identity" => Ok(Self::Identity),
            Some(("exp", v)) => Self::exponential(parse(v)?),
            Some(("pow", v)) => Self::power(parse(v)?),
            _ => Err(Error::InvalidUtility(format!(
                "expected identity, exp:ALPHA or pow:GAMMA, got `{s}`"
            ))),
        }
    }
}

impl<T: Scalar> fmt::Display for UtilityKind<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Identity => write!(f, "identity"),
            Self::Exponential { alpha } => write!(f, "exp:{alpha}"),
            Self::Power { gamma } => write!(f, "pow:{gamma}"),
        }
    }
}

/// Minimum or maximum over a regularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Attitude {
    Averse,
    Prone,
}

impl Attitude {
    pub fn name(self) -> &'static str {
        match self {
            Self::Averse => "averse",
            Self::Prone => "prone",
        }
    }
}

/// A criterion `D → ℝ`.
#[derive(Debug, Clone)]
pub enum Criterion<T> {
    /// `∫ v(L(θ,d)) q(dθ)` for a single distribution `q`.
    Expected {
        dist: Distribution<T>,
        utility: UtilityKind<T>,
    },
    /// `min_{q∈Q} ∫ L(θ,d) q(dθ)`.
    Averse(Regularity<T>),
    /// `max_{q∈Q} ∫ L(θ,d) q(dθ)`.
    Prone(Regularity<T>),
    /// `u·(min θ − p)`, complete uncertainty on the grid.
    Wald(Arc<ThetaGrid<T>>),
}

impl<T: Scalar> Criterion<T> {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Expected { .. } => "expected",
            Self::Averse(_) => "averse",
            Self::Prone(_) => "prone",
            Self::Wald(_) => "wald",
        }
    }

    pub fn grid(&self) -> &Arc<ThetaGrid<T>> {
        match self {
            Self::Expected { dist, .. } => dist.grid(),
            Self::Averse(q) | Self::Prone(q) => q.grid(),
            Self::Wald(g) => g,
        }
    }

    /// Evaluates the criterion at `d` by enumerating member expectations of
    /// the consequence.
    pub fn evaluate(&self, d: &Decision<T>) -> T {
        let loss = |theta: T| d.consequence(theta);
        match self {
            Self::Expected { dist, utility } => {
                dist.expectation(|theta| utility.apply(loss(theta)))
            }
            Self::Averse(q) => q.min_expectation(loss).value,
            Self::Prone(q) => q.max_expectation(loss).value,
            Self::Wald(g) => d.u() * (g.min_state() - d.p()),
        }
    }

    /// The `m` in `L*(d) = u·(m − p)` for criteria linear in leverage, `None`
    /// for expected utility with a non-identity utility.
    pub fn effective_mean(&self) -> Option<T> {
        match self {
            Self::Expected { dist, utility } if utility.is_identity() => Some(dist.mean()),
            Self::Expected { .. } => None,
            Self::Averse(q) => Some(q.min_mean()),
            Self::Prone(q) => Some(q.max_mean()),
            Self::Wald(g) => Some(g.min_state()),
        }
    }
}

/// Factored uncertainty-averse criterion `u·(min_q E_q(θ) − p)`.
///
/// Agrees with [`Criterion::Averse`] because `u ≥ 0` commutes with the
/// minimum; [`Decision`] already rules out negative leverage.
pub fn evaluate_factored<T: Scalar>(q: &Regularity<T>, d: &Decision<T>) -> T {
    factored(q, d, Attitude::Averse)
}

/// Factored criterion for either attitude.
pub fn factored<T: Scalar>(q: &Regularity<T>, d: &Decision<T>, attitude: Attitude) -> T {
    let m = match attitude {
        Attitude::Averse => q.min_mean(),
        Attitude::Prone => q.max_mean(),
    };
    d.u() * (m - d.p())
}

/// Both sides of the complete-uncertainty degeneration: the averse criterion
/// over all Dirac distributions on `grid`, and the Wald criterion.
pub fn wald_is_dirac_limit<T: Scalar>(grid: &Arc<ThetaGrid<T>>, d: &Decision<T>) -> (T, T) {
    let lhs = Criterion::Averse(Regularity::dirac_family(grid.clone())).evaluate(d);
    let rhs = Criterion::Wald(grid.clone()).evaluate(d);
    (lhs, rhs)
}
