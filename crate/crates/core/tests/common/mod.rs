#![allow(dead_code)]

use std::sync::Arc;

use leverage::{Decision64, Distribution64, Regularity64, ThetaGrid64};
use rand::Rng;

/// Strictly increasing grid of `1..=max_states` states drawn from `[lo, hi)`.
pub fn random_grid<R: Rng>(rng: &mut R, max_states: usize, lo: f64, hi: f64) -> Arc<ThetaGrid64> {
    loop {
        let n = rng.gen_range(1..=max_states);
        let mut states: Vec<f64> = (0..n).map(|_| rng.gen_range(lo..hi)).collect();
        states.sort_by(|a, b| a.partial_cmp(b).unwrap());
        states.dedup();
        if let Ok(grid) = ThetaGrid64::shared(states) {
            return grid;
        }
    }
}

/// Random probability vector; a quarter of the coordinates are zeroed on
/// average so that sparse members show up too.
pub fn random_weights<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let raw: Vec<f64> = (0..n)
            .map(|_| {
                if rng.gen_bool(0.25) {
                    0.0
                } else {
                    rng.gen::<f64>()
                }
            })
            .collect();
        let total: f64 = raw.iter().sum();
        if total > 0.0 {
            return raw.into_iter().map(|w| w / total).collect();
        }
    }
}

pub fn random_regularity_on<R: Rng>(
    rng: &mut R,
    grid: &Arc<ThetaGrid64>,
    max_members: usize,
) -> Regularity64 {
    let k = rng.gen_range(1..=max_members);
    let members = (0..k)
        .map(|_| Distribution64::new(grid.clone(), random_weights(rng, grid.len())).unwrap())
        .collect();
    Regularity64::collapsed(grid.clone(), members, "random").unwrap()
}

pub fn random_regularity<R: Rng>(rng: &mut R) -> Regularity64 {
    let grid = random_grid(rng, 8, -0.2, 0.3);
    random_regularity_on(rng, &grid, 6)
}

pub fn random_decision<R: Rng>(rng: &mut R) -> Decision64 {
    Decision64::new(rng.gen_range(0.0..50.0), rng.gen_range(0.0..0.2)).unwrap()
}

/// `Σ_i w_i · f(θ_i)` written out with explicit indexing, independent of the
/// library's expectation routine.
pub fn hand_expectation(states: &[f64], weights: &[f64], f: impl Fn(f64) -> f64) -> f64 {
    let mut total = 0.0;
    for i in 0..states.len() {
        total += weights[i] * f(states[i]);
    }
    total
}

/// Enumerated `(min, max)` over members of the hand-computed expectation.
pub fn hand_extrema(q: &Regularity64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    let states = q.grid().states();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for m in q.members() {
        let v = hand_expectation(states, m.weights(), &f);
        lo = lo.min(v);
        hi = hi.max(v);
    }
    (lo, hi)
}
