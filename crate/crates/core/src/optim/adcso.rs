//! Adaptive dynamic cat swarm optimization.
//!
//! Each iteration splits the swarm at random into a tracing group (fraction
//! `mr`) and a seeking group. Seeking cats clone themselves, perturb the
//! clones by `±srd·|x|` on `cdc` random dimensions and jump to the best
//! clone. Tracing cats take a velocity step towards the global best, using
//! per-dimension inertia `w0 + (D-d)/2D` and acceleration `c0 - (D-d)/2D`.
//!
//! All random draws happen on the calling thread in a fixed order; only the
//! fitness evaluations of an iteration are farmed out, so a seed pins the
//! whole run.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_fraction, evaluate_batch, evaluate_flat, sanitize, Bounds, Minimizer, Objective, RunTrace};
use crate::error::{Error, Result};

/// Behaviour of a cat during one iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Seeking,
    Tracing,
}

/// One cat.
#[derive(Debug, Clone, PartialEq)]
pub struct Agent {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub mode: Mode,
    /// `+∞` until evaluated, and for infeasible positions.
    pub fitness: f64,
}

/// Cat swarm settings. Defaults follow the reference experiment settings.
#[derive(Debug, Clone, PartialEq)]
pub struct SwarmConfig {
    /// Number of cats (`N`).
    pub n_agents: usize,
    /// Seeking memory pool size (`M`, SMP).
    pub smp: usize,
    /// Seeking range of the selected dimension (`η`, SRD).
    pub srd: f64,
    /// Count of dimensions to change (CDC).
    pub cdc: usize,
    /// Self-position considering (SPC).
    pub spc: bool,
    /// Mixture ratio: fraction of cats in tracing mode.
    pub mr: f64,
    /// Initial acceleration coefficient `c0`.
    pub c0: f64,
    /// Initial inertia weight `w0`.
    pub w0: f64,
    pub iter_max: usize,
    /// Velocity limit as a fraction of each box width.
    pub v_frac: f64,
    pub seed: u64,
}

impl Default for SwarmConfig {
    fn default() -> Self {
        Self {
            n_agents: 40,
            smp: 30,
            srd: 0.2,
            cdc: 2,
            spc: true,
            mr: 0.2,
            c0: 1.05,
            w0: 0.6,
            iter_max: 300,
            v_frac: 0.2,
            seed: 0,
        }
    }
}

impl SwarmConfig {
    pub fn validate(&self, dim: usize) -> Result<()> {
        if self.n_agents == 0 {
            return Err(Error::InvalidConfig("N must be at least 1".into()));
        }
        if self.smp == 0 || (self.spc && self.smp < 2) {
            return Err(Error::InvalidConfig(format!(
                "M = {} leaves no mutated candidates",
                self.smp
            )));
        }
        if !(self.srd.is_finite() && self.srd >= 0.0) {
            return Err(Error::InvalidConfig(format!("SRD must be >= 0, got {}", self.srd)));
        }
        if self.cdc == 0 || self.cdc > dim {
            return Err(Error::InvalidConfig(format!(
                "CDC must lie in 1..={dim}, got {}",
                self.cdc
            )));
        }
        check_fraction("mr", self.mr)?;
        if !self.c0.is_finite() || !self.w0.is_finite() {
            return Err(Error::InvalidConfig("c and w must be finite".into()));
        }
        if self.iter_max == 0 {
            return Err(Error::InvalidConfig("Iter_max must be at least 1".into()));
        }
        if !(self.v_frac.is_finite() && self.v_frac > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "v_frac must be > 0, got {}",
                self.v_frac
            )));
        }
        Ok(())
    }

    /// Number of cats assigned to tracing mode each iteration.
    pub fn tracing_count(&self) -> usize {
        ((self.mr * self.n_agents as f64).round() as usize).min(self.n_agents)
    }

    /// Adaptive inertia weight for 1-based dimension `d` of `dim`.
    pub fn inertia(&self, d: usize, dim: usize) -> f64 {
        self.w0 + (dim - d) as f64 / (2 * dim) as f64
    }

    /// Adaptive acceleration coefficient for 1-based dimension `d` of `dim`.
    pub fn acceleration(&self, d: usize, dim: usize) -> f64 {
        self.c0 - (dim - d) as f64 / (2 * dim) as f64
    }
}

/// Candidate positions for a seeking cat. With SPC the current position is
/// candidate 0 and `M-1` mutated copies follow; otherwise all `M` are mutated.
pub fn seeking_candidates<R: Rng + ?Sized>(
    agent: &Agent,
    cfg: &SwarmConfig,
    bounds: &Bounds,
    rng: &mut R,
) -> Vec<Vec<f64>> {
    let mut flat = Vec::new();
    if cfg.spc {
        flat.extend_from_slice(&agent.position);
    }
    push_mutated_copies(&agent.position, cfg, bounds, rng, &mut flat);
    flat.chunks_exact(bounds.dim()).map(<[f64]>::to_vec).collect()
}

fn mutated_copy_count(cfg: &SwarmConfig) -> usize {
    if cfg.spc {
        cfg.smp - 1
    } else {
        cfg.smp
    }
}

/// Append the mutated copies of `position` to `out`, row by row.
fn push_mutated_copies<R: Rng + ?Sized>(
    position: &[f64],
    cfg: &SwarmConfig,
    bounds: &Bounds,
    rng: &mut R,
    out: &mut Vec<f64>,
) {
    let dim = bounds.dim();
    let cdc = cfg.cdc.min(dim);
    for _ in 0..mutated_copy_count(cfg) {
        let start = out.len();
        out.extend_from_slice(position);
        let x = &mut out[start..];
        let mut mutate = |d: usize, rng: &mut R| {
            let width = bounds.width(d);
            let radius = if x[d].abs() < 1e-9 * width {
                cfg.srd * width * 1e-3
            } else {
                cfg.srd * x[d].abs()
            };
            let step = if rng.random_bool(0.5) { radius } else { -radius };
            x[d] = bounds.clamp(d, x[d] + step);
        };
        if cdc == dim {
            for d in 0..dim {
                mutate(d, rng);
            }
        } else {
            for d in index::sample(rng, dim, cdc) {
                mutate(d, rng);
            }
        }
    }
}

/// Selection probabilities `|f_j - f_max| / |f_max - f_min|` over the finite
/// fitnesses. Infinite candidates get 0. When every finite value is equal
/// (or none is finite) the feasible candidates share probability 1.
pub fn seeking_probabilities(fitness: &[f64]) -> Vec<f64> {
    let finite = fitness.iter().copied().filter(|f| f.is_finite());
    let (min, max) = finite.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), f| {
        (lo.min(f), hi.max(f))
    });
    if !min.is_finite() {
        return vec![1.0; fitness.len()];
    }
    if max == min {
        return fitness
            .iter()
            .map(|f| if f.is_finite() { 1.0 } else { 0.0 })
            .collect();
    }
    fitness
        .iter()
        .map(|&f| {
            if f.is_finite() {
                (f - max).abs() / (max - min).abs()
            } else {
                0.0
            }
        })
        .collect()
}

/// Index of the highest-probability candidate, ties broken uniformly.
pub fn select_candidate<R: Rng + ?Sized>(fitness: &[f64], rng: &mut R) -> usize {
    let probs = seeking_probabilities(fitness);
    let top = probs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let winners: Vec<usize> = (0..probs.len()).filter(|&j| probs[j] == top).collect();
    winners[rng.random_range(0..winners.len())]
}

/// One seeking move of a single cat: generate, evaluate, select.
///
/// The current fitness of the agent is reused for the retained candidate.
pub fn seeking_step<O, R>(
    agent: &Agent,
    cfg: &SwarmConfig,
    bounds: &Bounds,
    objective: &O,
    rng: &mut R,
) -> (Agent, usize)
where
    O: Objective + ?Sized,
    R: Rng + ?Sized,
{
    let candidates = seeking_candidates(agent, cfg, bounds, rng);
    let fitness: Vec<f64> = candidates
        .iter()
        .enumerate()
        .map(|(j, c)| {
            if cfg.spc && j == 0 && agent.fitness.is_finite() {
                agent.fitness
            } else {
                sanitize(objective.evaluate(c))
            }
        })
        .collect();
    let evaluations = candidates.len() - usize::from(cfg.spc && agent.fitness.is_finite());
    let pick = select_candidate(&fitness, rng);
    let next = Agent {
        position: candidates[pick].clone(),
        velocity: agent.velocity.clone(),
        mode: Mode::Seeking,
        fitness: fitness[pick],
    };
    (next, evaluations)
}

/// One tracing move. The returned agent's fitness is stale until re-evaluated.
pub fn tracing_step<R: Rng + ?Sized>(
    agent: &Agent,
    global_best: &[f64],
    cfg: &SwarmConfig,
    bounds: &Bounds,
    rng: &mut R,
) -> Agent {
    let dim = bounds.dim();
    let v_limit = bounds.velocity_limits(cfg.v_frac);
    let mut next = agent.clone();
    next.mode = Mode::Tracing;
    for d in 0..dim {
        let w = cfg.inertia(d + 1, dim);
        let c = cfg.acceleration(d + 1, dim);
        let pull = rng.random::<f64>() * c * (global_best[d] - agent.position[d]);
        let v = (w * agent.velocity[d] + pull).clamp(-v_limit[d], v_limit[d]);
        next.velocity[d] = v;
        next.position[d] = bounds.clamp(d, agent.position[d] + v);
    }
    next
}

/// Minimize `objective` over `bounds`.
pub fn adcso_minimize<O: Objective + ?Sized>(
    objective: &O,
    bounds: &Bounds,
    cfg: &SwarmConfig,
) -> Result<RunTrace> {
    adcso_minimize_observed(objective, bounds, cfg, |_, _| {})
}

/// Like [`adcso_minimize`], calling `observer(iteration, agents)` after
/// every iteration.
pub fn adcso_minimize_observed<O, F>(
    objective: &O,
    bounds: &Bounds,
    cfg: &SwarmConfig,
    mut observer: F,
) -> Result<RunTrace>
where
    O: Objective + ?Sized,
    F: FnMut(usize, &[Agent]),
{
    let dim = bounds.dim();
    cfg.validate(dim)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let v_limit = bounds.velocity_limits(cfg.v_frac);

    let positions: Vec<Vec<f64>> = (0..cfg.n_agents).map(|_| bounds.sample(&mut rng)).collect();
    let velocities: Vec<Vec<f64>> = (0..cfg.n_agents)
        .map(|_| {
            v_limit
                .iter()
                .map(|v| v * (2.0 * rng.random::<f64>() - 1.0))
                .collect()
        })
        .collect();
    let fitness = evaluate_batch(objective, &positions);
    let mut evaluations = positions.len();
    let mut agents: Vec<Agent> = positions
        .into_iter()
        .zip(velocities)
        .zip(fitness)
        .map(|((position, velocity), fitness)| Agent {
            position,
            velocity,
            mode: Mode::Seeking,
            fitness,
        })
        .collect();

    let mut best = agents
        .iter()
        .min_by(|a, b| a.fitness.total_cmp(&b.fitness))
        .map(|a| (a.position.clone(), a.fitness))
        .expect("swarm is non-empty");

    let n_tracing = cfg.tracing_count();
    let mut order: Vec<usize> = (0..cfg.n_agents).collect();
    let mut trace = Vec::with_capacity(cfg.iter_max);
    let mut batch: Vec<f64> = Vec::new();
    let mut spans = Vec::with_capacity(cfg.n_agents);
    let mut scores = Vec::with_capacity(cfg.smp);

    for iter in 0..cfg.iter_max {
        order.shuffle(&mut rng);
        for (rank, &i) in order.iter().enumerate() {
            agents[i].mode = if rank < n_tracing {
                Mode::Tracing
            } else {
                Mode::Seeking
            };
        }

        // Draw every move first, then evaluate the whole batch.
        batch.clear();
        spans.clear();
        for agent in agents.iter_mut() {
            let start = batch.len() / dim;
            match agent.mode {
                Mode::Seeking => {
                    push_mutated_copies(&agent.position, cfg, bounds, &mut rng, &mut batch)
                }
                Mode::Tracing => {
                    *agent = tracing_step(agent, &best.0, cfg, bounds, &mut rng);
                    batch.extend_from_slice(&agent.position);
                }
            }
            spans.push(start..batch.len() / dim);
        }
        let fitness = evaluate_flat(objective, &batch, dim);
        evaluations += fitness.len();

        for (agent, span) in agents.iter_mut().zip(&spans) {
            match agent.mode {
                Mode::Seeking => {
                    scores.clear();
                    if cfg.spc {
                        scores.push(agent.fitness);
                    }
                    scores.extend_from_slice(&fitness[span.clone()]);
                    let pick = select_candidate(&scores, &mut rng);
                    let offset = usize::from(cfg.spc);
                    if pick >= offset {
                        let j = span.start + pick - offset;
                        agent.position.copy_from_slice(&batch[j * dim..(j + 1) * dim]);
                        agent.fitness = fitness[j];
                    }
                }
                Mode::Tracing => agent.fitness = fitness[span.start],
            }
            if agent.fitness < best.1 {
                best.0.copy_from_slice(&agent.position);
                best.1 = agent.fitness;
            }
        }

        trace.push(best.1);
        observer(iter, &agents);
    }

    Ok(RunTrace {
        best_fitness_per_iter: trace,
        best_position: best.0,
        best_fitness: best.1,
        evaluations,
    })
}

impl Minimizer for SwarmConfig {
    fn minimize<O: Objective + ?Sized>(&self, objective: &O, bounds: &Bounds) -> Result<RunTrace> {
        adcso_minimize(objective, bounds, self)
    }

    fn seed(&self) -> u64 {
        self.seed
    }

    fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..self.clone() }
    }
}
