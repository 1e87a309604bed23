use rayon::prelude::*;

use super::{Bounds, Minimizer, Objective, PsoConfig, RunTrace, SwarmConfig};
use crate::error::{Error, Result};
use crate::fracops::{iago_coeffs, FracOrder};
use crate::greymodel::{abs_percentage_error, lsm_fit, restore_into, GreyParams, Series};

/// MAPE of the restored model as a function of `[a, b]` at a fixed order.
///
/// Degenerate or out-of-box parameters evaluate to `+∞`.
#[derive(Debug, Clone)]
pub struct GreyObjective {
    values: Vec<f64>,
    r: FracOrder,
    iago: Vec<f64>,
    bounds: Option<Bounds>,
}

impl GreyObjective {
    pub fn new(series: &Series, r: FracOrder) -> Self {
        let iago = iago_coeffs(r, series.len())
            .expect("series is never empty")
            .into_inner();
        Self {
            values: series.values().to_vec(),
            r,
            iago,
            bounds: None,
        }
    }

    /// Also penalize candidates outside `bounds`.
    pub fn with_bounds(mut self, bounds: Bounds) -> Self {
        self.bounds = Some(bounds);
        self
    }

    pub fn order(&self) -> FracOrder {
        self.r
    }

    pub fn params(&self, x: &[f64]) -> Result<GreyParams> {
        GreyParams::new(self.r, x[0], x[1])
    }

    fn try_evaluate(&self, x: &[f64]) -> Result<f64> {
        const STACK_LEN: usize = 32;
        let params = self.params(x)?;
        let n = self.values.len();
        if n <= STACK_LEN {
            let mut acc = [0.0; STACK_LEN];
            let mut fitted = [0.0; STACK_LEN];
            self.score(&params, &mut acc[..n], &mut fitted[..n])
        } else {
            self.score(&params, &mut vec![0.0; n], &mut vec![0.0; n])
        }
    }

    /// Same arithmetic, in the same order, as `fit_series(..).mape`.
    fn score(&self, params: &GreyParams, acc: &mut [f64], fitted: &mut [f64]) -> Result<f64> {
        restore_into(params, self.values[0], &self.iago, acc, fitted)?;
        let total: f64 = self.values[1..]
            .iter()
            .zip(&fitted[1..])
            .map(|(&x, &xh)| abs_percentage_error(x, xh))
            .sum();
        Ok(total / (self.values.len() - 1) as f64)
    }
}

impl Objective for GreyObjective {
    fn evaluate(&self, x: &[f64]) -> f64 {
        if let Some(bounds) = &self.bounds {
            if !bounds.contains(x) {
                return f64::INFINITY;
            }
        }
        match self.try_evaluate(x) {
            Ok(f) if f.is_finite() => f,
            _ => f64::INFINITY,
        }
    }
}

/// Default search box: `a ∈ [-1, 1]`, `b ∈ [-2·max, 2·max]`.
pub fn default_bounds(series: &Series) -> Bounds {
    let m = 2.0 * series.max_value();
    Bounds::new(vec![-1.0, -m], vec![1.0, m]).expect("series values are finite and positive")
}

/// Aggregate of the best fitness over repeated seeded runs.
#[derive(Debug, Clone, PartialEq)]
pub struct RepeatStats {
    pub mean: f64,
    /// Sample standard deviation; 0 for a single run.
    pub stddev: f64,
    pub min: f64,
    pub max: f64,
    /// One trace per run, run `i` seeded with `seed + i`.
    pub runs: Vec<RunTrace>,
}

impl RepeatStats {
    fn from_runs(runs: Vec<RunTrace>) -> Self {
        let n = runs.len() as f64;
        let best: Vec<f64> = runs.iter().map(|t| t.best_fitness).collect();
        let mean = best.iter().sum::<f64>() / n;
        let stddev = if runs.len() > 1 {
            (best.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Self {
            mean,
            stddev,
            min: best.iter().copied().fold(f64::INFINITY, f64::min),
            max: best.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            runs,
        }
    }

    /// The run with the lowest best fitness (earliest on ties).
    pub fn best_run(&self) -> &RunTrace {
        self.runs
            .iter()
            .reduce(|a, b| if b.best_fitness < a.best_fitness { b } else { a })
            .expect("at least one run")
    }
}

/// Run `minimizer` `repeats` times with seeds `seed, seed+1, ...`.
pub fn repeat_stats<O, M>(
    objective: &O,
    bounds: &Bounds,
    minimizer: &M,
    repeats: usize,
) -> Result<RepeatStats>
where
    O: Objective + ?Sized,
    M: Minimizer,
{
    if repeats == 0 {
        return Err(Error::InvalidConfig("repeats must be at least 1".into()));
    }
    let base = minimizer.seed();
    let runs = (0..repeats as u64)
        .into_par_iter()
        .map(|i| minimizer.with_seed(base.wrapping_add(i)).minimize(objective, bounds))
        .collect::<Result<Vec<_>>>()?;
    Ok(RepeatStats::from_runs(runs))
}

/// How `(a, b)` are estimated at a given order.
#[derive(Debug, Clone, PartialEq)]
pub enum Estimator {
    Lsm,
    Pso(PsoConfig),
    Adcso(SwarmConfig),
}

/// Outcome of estimating the parameters at one order.
#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    /// Parameters of the best run.
    pub params: GreyParams,
    pub stats: RepeatStats,
}

impl Estimate {
    pub fn mean_fitness(&self) -> f64 {
        self.stats.mean
    }

    pub fn best_fitness(&self) -> f64 {
        self.stats.min
    }

    pub fn trace(&self) -> &RunTrace {
        self.stats.best_run()
    }
}

impl Estimator {
    pub fn name(&self) -> &'static str {
        match self {
            Estimator::Lsm => "LSM",
            Estimator::Pso(_) => "PSO",
            Estimator::Adcso(_) => "ADCSO",
        }
    }

    pub fn is_stochastic(&self) -> bool {
        !matches!(self, Estimator::Lsm)
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Estimator::Lsm => None,
            Estimator::Pso(cfg) => Some(cfg.seed),
            Estimator::Adcso(cfg) => Some(cfg.seed),
        }
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        match self {
            Estimator::Lsm => Ok(()),
            Estimator::Pso(cfg) => cfg.validate(),
            Estimator::Adcso(cfg) => cfg.validate(dim),
        }
    }

    /// Estimate `(a, b)` at order `r`. Stochastic estimators run `repeats`
    /// seeded searches over `bounds`; least squares runs once and reports a
    /// one-entry trace.
    pub fn estimate(
        &self,
        series: &Series,
        r: FracOrder,
        bounds: &Bounds,
        repeats: usize,
    ) -> Result<Estimate> {
        let objective = GreyObjective::new(series, r).with_bounds(bounds.clone());
        let stats = match self {
            Estimator::Lsm => {
                let params = lsm_fit(series, r)?;
                let x = vec![params.a, params.b];
                let fitness = objective.try_evaluate(&x)?;
                let run = RunTrace {
                    best_fitness_per_iter: vec![fitness],
                    best_position: x,
                    best_fitness: fitness,
                    evaluations: 1,
                };
                return Ok(Estimate {
                    params,
                    stats: RepeatStats::from_runs(vec![run]),
                });
            }
            Estimator::Pso(cfg) => repeat_stats(&objective, bounds, cfg, repeats)?,
            Estimator::Adcso(cfg) => repeat_stats(&objective, bounds, cfg, repeats)?,
        };
        let best = stats.best_run();
        if !best.best_fitness.is_finite() {
            return Err(Error::NoFeasibleSolution);
        }
        let params = objective.params(&best.best_position)?;
        Ok(Estimate { params, stats })
    }
}

/// Orders `step, 2·step, ..., ≤ 1`, rounded to 12 decimals.
pub fn order_grid(step: f64) -> Result<Vec<FracOrder>> {
    if !(step.is_finite() && step > 0.0 && step <= 0.5) {
        return Err(Error::EmptyGrid(step));
    }
    let count = (1.0 / step + 1e-9).floor() as usize;
    (1..=count)
        .map(|i| FracOrder::new((i as f64 * step * 1e12).round() / 1e12))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub r: f64,
    /// Mean best fitness over the repeats; `+∞` if estimation failed.
    pub mean_fitness: f64,
    pub stddev: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderSearchResult {
    pub order: FracOrder,
    pub estimate: Estimate,
    pub curve: Vec<GridPoint>,
}

impl OrderSearchResult {
    pub fn params(&self) -> GreyParams {
        self.estimate.params
    }

    pub fn trace(&self) -> &RunTrace {
        self.estimate.trace()
    }
}

/// Grid search over the fractional order, choosing the order with the lowest
/// mean fitness (the smallest such order on ties).
pub fn order_search(
    series: &Series,
    grid_step: f64,
    estimator: &Estimator,
    repeats: usize,
    bounds: &Bounds,
) -> Result<OrderSearchResult> {
    let grid = order_grid(grid_step)?;
    estimator.validate(bounds.dim())?;
    if repeats == 0 {
        return Err(Error::InvalidConfig("repeats must be at least 1".into()));
    }
    let estimates: Vec<Result<Estimate>> = grid
        .par_iter()
        .map(|&r| estimator.estimate(series, r, bounds, repeats))
        .collect();

    let curve: Vec<GridPoint> = grid
        .iter()
        .zip(&estimates)
        .map(|(r, e)| match e {
            Ok(e) => GridPoint {
                r: r.get(),
                mean_fitness: e.stats.mean,
                stddev: e.stats.stddev,
            },
            Err(_) => GridPoint {
                r: r.get(),
                mean_fitness: f64::INFINITY,
                stddev: 0.0,
            },
        })
        .collect();

    let best = curve
        .iter()
        .enumerate()
        .filter(|(_, p)| p.mean_fitness.is_finite())
        .reduce(|a, b| if b.1.mean_fitness < a.1.mean_fitness { b } else { a })
        .map(|(i, _)| i)
        .ok_or(Error::NoFeasibleSolution)?;
    let estimate = estimates
        .into_iter()
        .nth(best)
        .expect("index within grid")
        .expect("finite grid point has an estimate");
    Ok(OrderSearchResult {
        order: grid[best],
        estimate,
        curve,
    })
}
