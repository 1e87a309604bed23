//! Population-based minimizers over a box, and the glue that turns them
//! into grey-model parameter estimators.

mod adcso;
mod pso;
mod search;

pub use adcso::{
    adcso_minimize, adcso_minimize_observed, seeking_candidates, seeking_probabilities,
    seeking_step, select_candidate, tracing_step, Agent, Mode, SwarmConfig,
};
pub use pso::{pso_minimize, pso_minimize_observed, Particle, PsoConfig};
pub use search::{
    default_bounds, order_grid, order_search, repeat_stats, Estimate, Estimator, GreyObjective, GridPoint,
    OrderSearchResult, RepeatStats,
};

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// A function to minimize. Non-finite values are treated as `+∞`.
pub trait Objective: Sync {
    fn evaluate(&self, x: &[f64]) -> f64;
}

impl<F> Objective for F
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    fn evaluate(&self, x: &[f64]) -> f64 {
        self(x)
    }
}

/// Axis-aligned search box.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() || lower.len() != upper.len() {
            return Err(Error::InvalidBounds(format!(
                "dimension mismatch ({} lower, {} upper)",
                lower.len(),
                upper.len()
            )));
        }
        for (d, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !lo.is_finite() || !hi.is_finite() || lo >= hi {
                return Err(Error::InvalidBounds(format!(
                    "dimension {d}: [{lo}, {hi}] is not a finite non-empty interval"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval in every one of `dim` dimensions.
    pub fn uniform(dim: usize, lower: f64, upper: f64) -> Result<Self> {
        Self::new(vec![lower; dim], vec![upper; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn width(&self, d: usize) -> f64 {
        self.upper[d] - self.lower[d]
    }

    pub fn clamp(&self, d: usize, x: f64) -> f64 {
        x.clamp(self.lower[d], self.upper[d])
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| (lo..=hi).contains(&v))
    }

    /// Symmetric velocity limit `v_frac * width` per dimension.
    pub fn velocity_limits(&self, v_frac: f64) -> Vec<f64> {
        (0..self.dim()).map(|d| v_frac * self.width(d)).collect()
    }

    pub(crate) fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(lo, hi)| lo + (hi - lo) * rng.random::<f64>())
            .collect()
    }
}

/// Best-so-far history of a single minimizer run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace {
    /// Best fitness seen up to and including each iteration.
    pub best_fitness_per_iter: Vec<f64>,
    pub best_position: Vec<f64>,
    pub best_fitness: f64,
    pub evaluations: usize,
}

/// A seeded, configurable minimizer.
pub trait Minimizer: Sync {
    fn minimize<O: Objective + ?Sized>(&self, objective: &O, bounds: &Bounds) -> Result<RunTrace>;

    fn seed(&self) -> u64;

    fn with_seed(&self, seed: u64) -> Self
    where
        Self: Sized;
}

#[inline]
pub(crate) fn sanitize(f: f64) -> f64 {
    if f.is_nan() {
        f64::INFINITY
    } else {
        f
    }
}

/// Evaluate a batch of points. Order of the results matches the input.
pub(crate) fn evaluate_batch<O: Objective + ?Sized>(objective: &O, points: &[Vec<f64>]) -> Vec<f64> {
    points
        .par_iter()
        .with_min_len(64)
        .map(|p| sanitize(objective.evaluate(p)))
        .collect()
}

/// Evaluate points stored row-major in `flat`, `dim` values per point.
pub(crate) fn evaluate_flat<O: Objective + ?Sized>(objective: &O, flat: &[f64], dim: usize) -> Vec<f64> {
    flat.chunks_exact(dim)
        .map(|p| sanitize(objective.evaluate(p)))
        .collect()
}

pub(crate) fn check_fraction(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("{name} must lie in (0, 1), got {value}")))
    }
}
