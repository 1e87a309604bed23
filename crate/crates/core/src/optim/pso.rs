//! Global-best particle swarm optimization with clamped velocities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{evaluate_batch, Bounds, Minimizer, Objective, RunTrace};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct PsoConfig {
    pub n_particles: usize,
    /// Cognitive coefficient.
    pub c1: f64,
    /// Social coefficient.
    pub c2: f64,
    /// Inertia weight.
    pub w: f64,
    pub iter_max: usize,
    /// Velocity limit as a fraction of each box width.
    pub v_frac: f64,
    pub seed: u64,
}

impl Default for PsoConfig {
    fn default() -> Self {
        Self {
            n_particles: 40,
            c1: 1.5,
            c2: 1.5,
            w: 0.7,
            iter_max: 300,
            v_frac: 0.2,
            seed: 0,
        }
    }
}

impl PsoConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_particles == 0 {
            return Err(Error::InvalidConfig("N must be at least 1".into()));
        }
        if !(self.c1.is_finite() && self.c2.is_finite() && self.w.is_finite()) {
            return Err(Error::InvalidConfig("c1, c2 and w must be finite".into()));
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
}

#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub fitness: f64,
    pub best_position: Vec<f64>,
    pub best_fitness: f64,
}

pub fn pso_minimize<O: Objective + ?Sized>(
    objective: &O,
    bounds: &Bounds,
    cfg: &PsoConfig,
) -> Result<RunTrace> {
    pso_minimize_observed(objective, bounds, cfg, |_, _| {})
}

pub fn pso_minimize_observed<O, F>(
    objective: &O,
    bounds: &Bounds,
    cfg: &PsoConfig,
    mut observer: F,
) -> Result<RunTrace>
where
    O: Objective + ?Sized,
    F: FnMut(usize, &[Particle]),
{
    cfg.validate()?;
    let dim = bounds.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let v_limit = bounds.velocity_limits(cfg.v_frac);

    let positions: Vec<Vec<f64>> = (0..cfg.n_particles)
        .map(|_| bounds.sample(&mut rng))
        .collect();
    let velocities: Vec<Vec<f64>> = (0..cfg.n_particles)
        .map(|_| {
            v_limit
                .iter()
                .map(|v| v * (2.0 * rng.random::<f64>() - 1.0))
                .collect()
        })
        .collect();
    let fitness = evaluate_batch(objective, &positions);
    let mut evaluations = positions.len();
    let mut swarm: Vec<Particle> = positions
        .into_iter()
        .zip(velocities)
        .zip(fitness)
        .map(|((position, velocity), fitness)| Particle {
            best_position: position.clone(),
            best_fitness: fitness,
            position,
            velocity,
            fitness,
        })
        .collect();

    let mut best = swarm
        .iter()
        .min_by(|a, b| a.fitness.total_cmp(&b.fitness))
        .map(|p| (p.position.clone(), p.fitness))
        .expect("swarm is non-empty");
    let mut trace = Vec::with_capacity(cfg.iter_max);

    for iter in 0..cfg.iter_max {
        for p in swarm.iter_mut() {
            for d in 0..dim {
                let r1 = rng.random::<f64>();
                let r2 = rng.random::<f64>();
                let v = cfg.w * p.velocity[d]
                    + cfg.c1 * r1 * (p.best_position[d] - p.position[d])
                    + cfg.c2 * r2 * (best.0[d] - p.position[d]);
                p.velocity[d] = v.clamp(-v_limit[d], v_limit[d]);
                p.position[d] = bounds.clamp(d, p.position[d] + p.velocity[d]);
            }
        }
        let positions: Vec<Vec<f64>> = swarm.iter().map(|p| p.position.clone()).collect();
        let fitness = evaluate_batch(objective, &positions);
        evaluations += positions.len();
        for (p, f) in swarm.iter_mut().zip(fitness) {
            p.fitness = f;
            if f < p.best_fitness {
                p.best_fitness = f;
                p.best_position.clone_from(&p.position);
            }
            if f < best.1 {
                best = (p.position.clone(), f);
            }
        }
        trace.push(best.1);
        observer(iter, &swarm);
    }

    Ok(RunTrace {
        best_fitness_per_iter: trace,
        best_position: best.0,
        best_fitness: best.1,
        evaluations,
    })
}

impl Minimizer for PsoConfig {
    fn minimize<O: Objective + ?Sized>(&self, objective: &O, bounds: &Bounds) -> Result<RunTrace> {
        pso_minimize(objective, bounds, self)
    }

    fn seed(&self) -> u64 {
        self.seed
    }

    fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..self.clone() }
    }
}
