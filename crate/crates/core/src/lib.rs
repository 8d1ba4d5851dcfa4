//! Return-on-capital algebra and leverage decisions when the return on
//! investment is described by a family of probability distributions rather
//! than a single one.
//!
//! The crate is organised bottom-up:
//!
//! * [`regularity`]: finite state grids, distributions on them and finite
//!   families of distributions (statistical regularities).
//! * [`scheme`]: capital structures, return on capital and the decision
//!   scheme `(decisions, states, consequence)`.
//! * [`criteria`]: expected-utility, uncertainty-averse, uncertainty-prone and
//!   worst-state (Wald) criteria.
//! * [`optimizer`]: optimal leverage over a bounded leverage window.
//! * [`chain`]: consecutively leveraged vehicles and see-through leverage.
//! * [`io`]: JSON and CSV file formats used by the `leverage` binary.
//! * [`cli`]: the `leverage` command-line tool.
//!
//! All numerical code is generic over [`Scalar`], implemented for `f32` and
//! `f64`. The `*64` aliases below fix the scalar to `f64`, which is what the
//! command-line tool uses.

pub mod chain;
pub mod cli;
pub mod criteria;
pub mod error;
pub mod io;
pub mod optimizer;
pub mod regularity;
pub mod scalar;
pub mod scheme;

pub use chain::LeverageChain;
pub use criteria::{Attitude, Criterion, UtilityKind};
pub use error::{Error, Result};
pub use optimizer::{EdgeCase, LeverageWindow, OptimizationOutcome};
pub use regularity::{Distribution, Extremum, Regularity, ThetaGrid};
pub use scalar::Scalar;
pub use scheme::{CapitalStructure, Decision, DecisionScheme};

pub type ThetaGrid64 = ThetaGrid<f64>;
pub type Distribution64 = Distribution<f64>;
pub type Regularity64 = Regularity<f64>;
pub type CapitalStructure64 = CapitalStructure<f64>;
pub type Decision64 = Decision<f64>;
pub type DecisionScheme64 = DecisionScheme<f64>;
pub type Criterion64 = Criterion<f64>;
pub type UtilityKind64 = UtilityKind<f64>;
pub type LeverageWindow64 = LeverageWindow<f64>;
pub type OptimizationOutcome64 = OptimizationOutcome<f64>;
pub type LeverageChain64 = LeverageChain<f64>;

pub type ThetaGrid32 = ThetaGrid<f32>;
pub type Distribution32 = Distribution<f32>;
pub type Regularity32 = Regularity<f32>;
pub type Decision32 = Decision<f32>;
pub type Criterion32 = Criterion<f32>;
