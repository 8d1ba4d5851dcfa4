//! Return on capital and the matrix decision scheme.
//!
//! Rates are decimals throughout (`0.06` is 6%). Currency amounts carry no
//! unit; only their ratios enter the formulas.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::regularity::ThetaGrid;
use crate::scalar::Scalar;

/// Capital `C`, borrowed funds `B` and the three rates of a funded position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapitalStructure<T> {
    capital: T,
    borrowed: T,
    roi: T,
    cof: T,
    coc: T,
}

impl<T: Scalar> CapitalStructure<T> {
    /// `roi` is the return on assets, `cof` the cost of the borrowed funds and
    /// `coc` the cost of capital.
    pub fn new(capital: T, borrowed: T, roi: T, cof: T, coc: T) -> Result<Self> {
        if !capital.is_finite() || !borrowed.is_finite() {
            return Err(Error::NonFinite {
                what: "capital structure",
            });
        }
        if !(roi.is_finite() && cof.is_finite() && coc.is_finite()) {
            return Err(Error::NonFinite { what: "rates" });
        }
        if capital <= T::zero() {
            return Err(Error::NonPositiveCapital(capital.as_f64()));
        }
        if borrowed < T::zero() {
            return Err(Error::NegativeBorrowed(borrowed.as_f64()));
        }
        Ok(Self {
            capital,
            borrowed,
            roi,
            cof,
            coc,
        })
    }

    pub fn capital(&self) -> T {
        self.capital
    }

    pub fn borrowed(&self) -> T {
        self.borrowed
    }

    pub fn assets(&self) -> T {
        self.capital + self.borrowed
    }

    pub fn roi(&self) -> T {
        self.roi
    }

    pub fn cof(&self) -> T {
        self.cof
    }

    pub fn coc(&self) -> T {
        self.coc
    }

    /// `((C+B)(1+ROI) − B(1+COF) − C(1+COC)) / C`.
    pub fn roc(&self) -> T {
        let one = T::one();
        (self.assets() * (one + self.roi)
            - self.borrowed * (one + self.cof)
            - self.capital * (one + self.coc))
            / self.capital
    }

    /// Assets over capital, `(C+B)/C`; at least one.
    pub fn leverage(&self) -> T {
        self.assets() / self.capital
    }

    /// `LEV·ROI − (LEV−1)·COF − COC`, the expansion of [`roc`](Self::roc)
    /// that stays valid when funding and capital costs differ.
    pub fn roc_decomposed(&self) -> T {
        let lev = self.leverage();
        lev * self.roi - (lev - T::one()) * self.cof - self.coc
    }
}

/// `LEV·(ROI − COST)`.
pub fn roc_leverage_form<T: Scalar>(lev: T, roi: T, cost: T) -> T {
    debug_assert!(lev >= T::zero());
    lev * (roi - cost)
}

/// A leverage `u ≥ 0` taken at price `p ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decision<T> {
    u: T,
    p: T,
}

impl<T: Scalar> Decision<T> {
    pub fn new(u: T, p: T) -> Result<Self> {
        if !u.is_finite() || !p.is_finite() {
            return Err(Error::NonFinite { what: "decision" });
        }
        if u < T::zero() {
            return Err(Error::NegativeLeverage(u.as_f64()));
        }
        if p < T::zero() {
            return Err(Error::NegativePrice(p.as_f64()));
        }
        Ok(Self { u, p })
    }

    pub fn u(&self) -> T {
        self.u
    }

    pub fn p(&self) -> T {
        self.p
    }

    /// The same price with a different leverage.
    pub fn with_leverage(&self, u: T) -> Result<Self> {
        Self::new(u, self.p)
    }

    /// Return on capital `u·(θ − p)` when the return on investment is `theta`.
    pub fn consequence(&self, theta: T) -> T {
        self.u * (theta - self.p)
    }
}

/// Free-function form of [`Decision::consequence`].
pub fn consequence<T: Scalar>(theta: T, d: &Decision<T>) -> T {
    d.consequence(theta)
}

/// Decisions × states table of consequences.
#[derive(Debug, Clone)]
pub struct DecisionScheme<T> {
    decisions: Vec<Decision<T>>,
    grid: Arc<ThetaGrid<T>>,
    consequences: Vec<Vec<T>>,
}

impl<T: Scalar> DecisionScheme<T> {
    pub fn build(decisions: Vec<Decision<T>>, grid: Arc<ThetaGrid<T>>) -> Result<Self> {
        if decisions.is_empty() {
            return Err(Error::EmptyDecisionSet);
        }
        let consequences = decisions
            .iter()
            .map(|d| grid.states().iter().map(|&s| d.consequence(s)).collect())
            .collect();
        Ok(Self {
            decisions,
            grid,
            consequences,
        })
    }

    pub fn decisions(&self) -> &[Decision<T>] {
        &self.decisions
    }

    pub fn grid(&self) -> &Arc<ThetaGrid<T>> {
        &self.grid
    }

    /// Row `i` holds the consequences of decision `i` across the grid.
    pub fn consequences(&self) -> &[Vec<T>] {
        &self.consequences
    }

    pub fn get(&self, decision: usize, state: usize) -> Option<T> {
        self.consequences.get(decision)?.get(state).copied()
    }
}
