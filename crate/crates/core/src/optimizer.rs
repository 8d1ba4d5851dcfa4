//! Optimal leverage at a quoted price.
//!
//! Leverage is searched over a compact window `[u_min, u_max]`; on the whole
//! half-line a criterion `u·(m − p)` with `m > p` has no maximizer.

use serde::Serialize;

use crate::criteria::Criterion;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::scheme::Decision;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeverageWindow<T> {
    u_min: T,
    u_max: T,
    price: T,
}

impl<T: Scalar> LeverageWindow<T> {
    pub fn new(u_min: T, u_max: T, price: T) -> Result<Self> {
        if !(u_min.is_finite() && u_max.is_finite() && price.is_finite()) {
            return Err(Error::NonFinite {
                what: "leverage window",
            });
        }
        if u_min < T::zero() || u_max < u_min {
            return Err(Error::InvalidWindow {
                u_min: u_min.as_f64(),
                u_max: u_max.as_f64(),
            });
        }
        if price < T::zero() {
            return Err(Error::NegativePrice(price.as_f64()));
        }
        Ok(Self {
            u_min,
            u_max,
            price,
        })
    }

    pub fn u_min(&self) -> T {
        self.u_min
    }

    pub fn u_max(&self) -> T {
        self.u_max
    }

    pub fn price(&self) -> T {
        self.price
    }

    fn decision(&self, u: T) -> Decision<T> {
        Decision::new(u, self.price).expect("window bounds are valid leverages")
    }
}

/// Where in the window the optimum sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeCase {
    InteriorTie,
    LowerBound,
    UpperBound,
    Flat,
}

impl EdgeCase {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::InteriorTie => "interior_tie",
            Self::LowerBound => "lower_bound",
            Self::UpperBound => "upper_bound",
            Self::Flat => "flat",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizationOutcome<T> {
    pub best: Decision<T>,
    pub value: T,
    pub edge_case: EdgeCase,
}

/// Closed-form optimum for criteria linear in leverage.
///
/// With `L*(u) = u·(m − p)` the optimum is `u_max` when `m > p`, `u_min` when
/// `m < p`, and `u_min` flagged [`EdgeCase::Flat`] when `|m − p| ≤ T::FLAT_TOL`.
pub fn optimize<T: Scalar>(
    criterion: &Criterion<T>,
    window: &LeverageWindow<T>,
) -> Result<OptimizationOutcome<T>> {
    let m = criterion.effective_mean().ok_or_else(|| {
        Error::UnsupportedCriterion(match criterion {
            Criterion::Expected { utility, .. } => format!("expected with {utility} utility"),
            other => other.name().to_string(),
        })
    })?;
    let spread = m - window.price;
    let (u, edge_case) = if spread.abs() <= T::FLAT_TOL {
        (window.u_min, EdgeCase::Flat)
    } else if spread > T::zero() {
        (window.u_max, EdgeCase::UpperBound)
    } else {
        (window.u_min, EdgeCase::LowerBound)
    };
    let best = window.decision(u);
    Ok(OptimizationOutcome {
        best,
        value: criterion.evaluate(&best),
        edge_case,
    })
}

/// Brute-force search over `steps` equispaced leverages including both ends.
///
/// Ties go to the smallest leverage. The outcome is flagged flat when every
/// evaluated value lies within `T::FLAT_TOL` of the best.
pub fn grid_optimize<T: Scalar>(
    criterion: &Criterion<T>,
    window: &LeverageWindow<T>,
    steps: usize,
) -> Result<OptimizationOutcome<T>> {
    if steps < 2 {
        return Err(Error::TooFewSteps(steps));
    }
    let last = steps - 1;
    let span = window.u_max - window.u_min;
    let denom = T::from_usize(last).expect("step count fits scalar");
    let leverage_at = |k: usize| {
        if k == last {
            window.u_max
        } else {
            let t = T::from_usize(k).expect("step index fits scalar") / denom;
            (window.u_min + span * t).min(window.u_max)
        }
    };

    let values: Vec<T> = (0..steps)
        .map(|k| criterion.evaluate(&window.decision(leverage_at(k))))
        .collect();
    let (best_index, best_value) =
        values
            .iter()
            .enumerate()
            .skip(1)
            .fold(
                (0, values[0]),
                |(bi, bv), (i, &v)| if v > bv { (i, v) } else { (bi, bv) },
            );
    let worst = values.iter().copied().fold(best_value, T::min);

    let edge_case = if best_value - worst <= T::FLAT_TOL {
        EdgeCase::Flat
    } else if best_index == 0 {
        EdgeCase::LowerBound
    } else if best_index == last {
        EdgeCase::UpperBound
    } else {
        EdgeCase::InteriorTie
    };
    Ok(OptimizationOutcome {
        best: window.decision(leverage_at(best_index)),
        value: best_value,
        edge_case,
    })
}
