//! State grids, distributions and statistical regularities.
//!
//! A [`Regularity`] is a finite, not necessarily convex family of
//! distributions on one [`ThetaGrid`]. Every criterion in the crate is linear
//! in the distribution, so its minimum or maximum over the convex hull of a
//! family is attained at one of the stored members; only generators are kept.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Ordered finite set of ROI states, in decimal rate units.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaGrid<T> {
    states: Vec<T>,
}

impl<T: Scalar> ThetaGrid<T> {
    pub fn new(states: Vec<T>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::EmptyGrid);
        }
        if states.iter().any(|s| !s.is_finite()) {
            return Err(Error::NonFinite { what: "state grid" });
        }
        if let Some(index) = states.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::UnorderedGrid { index: index + 1 });
        }
        Ok(Self { states })
    }

    pub fn shared(states: Vec<T>) -> Result<Arc<Self>> {
        Self::new(states).map(Arc::new)
    }

    pub fn states(&self) -> &[T] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn min_state(&self) -> T {
        self.states[0]
    }

    pub fn max_state(&self) -> T {
        self.states[self.states.len() - 1]
    }
}

/// Probability vector over a shared [`ThetaGrid`].
#[derive(Debug, Clone)]
pub struct Distribution<T> {
    grid: Arc<ThetaGrid<T>>,
    weights: Vec<T>,
}

impl<T: Scalar> Distribution<T> {
    /// Validates `weights` against `grid`. Sums within `T::SIMPLEX_TOL` of one
    /// are kept as given, sums within `T::RENORMALIZE_TOL` are rescaled.
    pub fn new(grid: Arc<ThetaGrid<T>>, mut weights: Vec<T>) -> Result<Self> {
        if weights.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                got: weights.len(),
            });
        }
        normalize_simplex(&mut weights)?;
        Ok(Self { grid, weights })
    }

    /// Point mass on the state at `index`.
    pub fn dirac(grid: Arc<ThetaGrid<T>>, index: usize) -> Result<Self> {
        if index >= grid.len() {
            return Err(Error::StateIndexOutOfRange {
                index,
                len: grid.len(),
            });
        }
        let mut weights = vec![T::zero(); grid.len()];
        weights[index] = T::one();
        Ok(Self { grid, weights })
    }

    pub fn uniform(grid: Arc<ThetaGrid<T>>) -> Self {
        let n = T::from_usize(grid.len()).expect("grid length fits scalar");
        let weights = vec![T::one() / n; grid.len()];
        Self { grid, weights }
    }

    pub fn grid(&self) -> &Arc<ThetaGrid<T>> {
        &self.grid
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Exact finite weighted sum `Σ w_i f(θ_i)`, accumulated in grid order.
    pub fn expectation<F>(&self, f: F) -> T
    where
        F: Fn(T) -> T,
    {
        self.grid
            .states
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (&s, &w)| acc + w * f(s))
    }

    /// Expected state, `E_q(θ)`.
    pub fn mean(&self) -> T {
        self.expectation(|s| s)
    }

    /// Element-wise equality of weights within `tol`, on equal grids.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        same_grid(&self.grid, &other.grid)
            && self
                .weights
                .iter()
                .zip(&other.weights)
                .all(|(&a, &b)| (a - b).abs() <= tol)
    }
}

/// Checks that `weights` lie on the probability simplex.
///
/// A sum within `T::SIMPLEX_TOL` of one is kept bit-for-bit; a sum within
/// `T::RENORMALIZE_TOL` is rescaled; anything further off is rejected.
fn normalize_simplex<T: Scalar>(weights: &mut [T]) -> Result<()> {
    for (index, &w) in weights.iter().enumerate() {
        if !w.is_finite() {
            return Err(Error::NonFinite { what: "weights" });
        }
        if w < T::zero() {
            return Err(Error::NegativeWeight {
                index,
                value: w.as_f64(),
            });
        }
    }
    let sum = weights.iter().fold(T::zero(), |acc, &w| acc + w);
    let gap = (sum - T::one()).abs();
    if gap > T::RENORMALIZE_TOL {
        return Err(Error::NotNormalized { sum: sum.as_f64() });
    }
    if gap > T::SIMPLEX_TOL {
        for w in weights.iter_mut() {
            *w = *w / sum;
        }
    }
    Ok(())
}

fn same_grid<T: PartialEq>(a: &Arc<ThetaGrid<T>>, b: &Arc<ThetaGrid<T>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Value and position of the member attaining a minimum or maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum<T> {
    pub value: T,
    pub index: usize,
}

/// Finite family of distributions on one grid.
#[derive(Debug, Clone)]
pub struct Regularity<T> {
    grid: Arc<ThetaGrid<T>>,
    members: Vec<Distribution<T>>,
    label: String,
}

impl<T: Scalar> Regularity<T> {
    /// Builds a family, rejecting duplicates (element-wise within
    /// `T::MEMBER_TOL`).
    pub fn new(
        grid: Arc<ThetaGrid<T>>,
        members: Vec<Distribution<T>>,
        label: impl Into<String>,
    ) -> Result<Self> {
        Self::check_members(&grid, &members)?;
        for (index, m) in members.iter().enumerate() {
            if let Some(original) = members[..index]
                .iter()
                .position(|o| o.approx_eq(m, T::MEMBER_TOL))
            {
                return Err(Error::DuplicateMember { index, original });
            }
        }
        Ok(Self {
            grid,
            members,
            label: label.into(),
        })
    }

    /// Builds a family, silently dropping later duplicates of earlier members.
    pub fn collapsed(
        grid: Arc<ThetaGrid<T>>,
        members: Vec<Distribution<T>>,
        label: impl Into<String>,
    ) -> Result<Self> {
        Self::check_members(&grid, &members)?;
        let mut kept: Vec<Distribution<T>> = Vec::with_capacity(members.len());
        for m in members {
            if !kept.iter().any(|k| k.approx_eq(&m, T::MEMBER_TOL)) {
                kept.push(m);
            }
        }
        Ok(Self {
            grid,
            members: kept,
            label: label.into(),
        })
    }

    fn check_members(grid: &Arc<ThetaGrid<T>>, members: &[Distribution<T>]) -> Result<()> {
        if members.is_empty() {
            return Err(Error::EmptyRegularity);
        }
        if let Some(index) = members.iter().position(|m| !same_grid(grid, &m.grid)) {
            return Err(Error::GridMismatch { index });
        }
        Ok(())
    }

    pub fn singleton(dist: Distribution<T>, label: impl Into<String>) -> Self {
        Self {
            grid: dist.grid.clone(),
            members: vec![dist],
            label: label.into(),
        }
    }

    /// All Dirac distributions on `grid`, in grid order: complete uncertainty.
    pub fn dirac_family(grid: Arc<ThetaGrid<T>>) -> Self {
        let members = (0..grid.len())
            .map(|i| Distribution::dirac(grid.clone(), i).expect("index within grid"))
            .collect();
        Self {
            grid,
            members,
            label: "dirac".to_string(),
        }
    }

    /// Sliding-window frequency family of an ROI series.
    ///
    /// The grid is the sorted set of distinct sample values. Windows start at
    /// 0, `stride`, `2·stride`, … while they fit; each contributes its
    /// relative-frequency vector and duplicate vectors are collapsed.
    pub fn empirical(samples: &[T], window: usize, stride: usize) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptySamples);
        }
        if window == 0 {
            return Err(Error::NonPositive { name: "window" });
        }
        if stride == 0 {
            return Err(Error::NonPositive { name: "stride" });
        }
        if window > samples.len() {
            return Err(Error::WindowTooLarge {
                window,
                samples: samples.len(),
            });
        }
        if samples.iter().any(|s| !s.is_finite()) {
            return Err(Error::NonFinite { what: "samples" });
        }

        let mut states = samples.to_vec();
        states.sort_by(|a, b| a.partial_cmp(b).expect("finite samples"));
        states.dedup();
        let grid = Arc::new(ThetaGrid::new(states)?);

        let width = T::from_usize(window).expect("window fits scalar");
        let members = (0..=samples.len() - window)
            .step_by(stride)
            .map(|start| {
                let mut counts = vec![0usize; grid.len()];
                for s in &samples[start..start + window] {
                    let slot = grid
                        .states
                        .binary_search_by(|g| g.partial_cmp(s).expect("finite"))
                        .expect("sample is a grid state");
                    counts[slot] += 1;
                }
                let weights = counts
                    .into_iter()
                    .map(|c| T::from_usize(c).expect("count fits scalar") / width)
                    .collect();
                Distribution::new(grid.clone(), weights)
            })
            .collect::<Result<Vec<_>>>()?;

        Self::collapsed(
            grid,
            members,
            format!("empirical window={window} stride={stride}"),
        )
    }

    pub fn grid(&self) -> &Arc<ThetaGrid<T>> {
        &self.grid
    }

    pub fn members(&self) -> &[Distribution<T>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Smallest member expectation of `f`; ties go to the first member.
    pub fn min_expectation<F>(&self, f: F) -> Extremum<T>
    where
        F: Fn(T) -> T,
    {
        self.extremum(f, |candidate, best| candidate < best)
    }

    /// Largest member expectation of `f`; ties go to the first member.
    pub fn max_expectation<F>(&self, f: F) -> Extremum<T>
    where
        F: Fn(T) -> T,
    {
        self.extremum(f, |candidate, best| candidate > best)
    }

    fn extremum<F, B>(&self, f: F, better: B) -> Extremum<T>
    where
        F: Fn(T) -> T,
        B: Fn(T, T) -> bool,
    {
        let mut best = Extremum {
            value: self.members[0].expectation(&f),
            index: 0,
        };
        for (index, m) in self.members.iter().enumerate().skip(1) {
            let value = m.expectation(&f);
            if better(value, best.value) {
                best = Extremum { value, index };
            }
        }
        best
    }

    /// Lowest expected state over the family.
    pub fn min_mean(&self) -> T {
        self.min_expectation(|s| s).value
    }

    /// Highest expected state over the family.
    pub fn max_mean(&self) -> T {
        self.max_expectation(|s| s).value
    }

    /// Mixture `Σ c_j · member_j` for a coefficient vector on the simplex.
    pub fn convex_combination(&self, coefficients: &[T]) -> Result<Distribution<T>> {
        if coefficients.len() != self.members.len() {
            return Err(Error::LengthMismatch {
                expected: self.members.len(),
                got: coefficients.len(),
            });
        }
        let mut coefficients = coefficients.to_vec();
        normalize_simplex(&mut coefficients)?;

        let mut weights = vec![T::zero(); self.grid.len()];
        for (m, &c) in self.members.iter().zip(&coefficients) {
            for (w, &mw) in weights.iter_mut().zip(&m.weights) {
                *w = *w + c * mw;
            }
        }
        Distribution::new(self.grid.clone(), weights)
    }

    /// `count` seeded random mixtures of the members.
    pub fn convex_samples(&self, count: usize, seed: u64) -> Vec<Distribution<T>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.convex_samples_with(&mut rng, count)
    }

    /// Random mixtures with flat-Dirichlet coefficients drawn from `rng`.
    ///
    /// Coefficients are normalized `-ln(1 - U)` draws; if every draw is zero
    /// the mixture falls back to equal coefficients.
    pub fn convex_samples_with<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        count: usize,
    ) -> Vec<Distribution<T>> {
        let k = self.members.len();
        (0..count)
            .map(|_| {
                let draws: Vec<f64> = (0..k).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
                let total: f64 = draws.iter().sum();
                let coefficients: Vec<T> = if total > 0.0 && total.is_finite() {
                    draws.iter().map(|&e| T::lit(e / total)).collect()
                } else {
                    vec![T::one() / T::from_usize(k).expect("member count fits scalar"); k]
                };
                self.convex_combination(&coefficients)
                    .expect("mixture of simplex points stays on the simplex")
            })
            .collect()
    }

    /// Family extended by `extra`, collapsing duplicates.
    pub fn extended(&self, extra: impl IntoIterator<Item = Distribution<T>>) -> Result<Self> {
        let members = self.members.iter().cloned().chain(extra).collect();
        Self::collapsed(self.grid.clone(), members, self.label.clone())
    }
}
