//! Estimator comparison over the three reference orders.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use greyfrac_core::optim::default_bounds;
use greyfrac_core::{Estimator, FracOrder, PsoConfig, SwarmConfig};

use crate::config::Config;
use crate::datasets::Dataset;
use crate::error::{HarnessError, Result};
use crate::io::write_trace_csv;
use crate::results::{write_results, ResultRecord};

pub const BENCH_ORDERS: [f64; 3] = [0.25, 0.5, 0.75];

/// The three estimators, stochastic ones seeded with `seed`.
pub fn estimators(config: &Config, seed: u64) -> [Estimator; 3] {
    [
        Estimator::Lsm,
        Estimator::Pso(PsoConfig { seed, ..config.pso.clone() }),
        Estimator::Adcso(SwarmConfig { seed, ..config.cso.clone() }),
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub record: ResultRecord,
    /// Best-so-far trace of each run, in seed order.
    pub traces: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkResult {
    pub dataset: String,
    /// Estimator-major, orders ascending.
    pub cells: Vec<Cell>,
}

pub fn run_benchmark(dataset: &Dataset, repeats: usize, seed: u64, config: &Config) -> Result<BenchmarkResult> {
    if repeats == 0 {
        return Err(HarnessError::Usage("repeats must be at least 1".into()));
    }
    let bounds = default_bounds(&dataset.series);
    let mut cells = Vec::with_capacity(9);
    for estimator in estimators(config, seed) {
        for r in BENCH_ORDERS {
            let start = Instant::now();
            let estimate = estimator.estimate(&dataset.series, FracOrder::new(r)?, &bounds, repeats)?;
            let elapsed_ms = start.elapsed().as_millis() as u64;
            let stats = &estimate.stats;
            cells.push(Cell {
                record: ResultRecord {
                    dataset: dataset.name.clone(),
                    estimator: estimator.name().into(),
                    r,
                    mean_error_pct: stats.mean,
                    stddev: stats.stddev,
                    repeats: stats.runs.len(),
                    seed: estimator.seed(),
                    elapsed_ms,
                },
                traces: stats.runs.iter().map(|t| t.best_fitness_per_iter.clone()).collect(),
            });
        }
    }
    Ok(BenchmarkResult { dataset: dataset.name.clone(), cells })
}

/// Two-decimal rendering used by the table.
pub fn cell_text(record: &ResultRecord) -> String {
    if record.seed.is_some() {
        format!("{:.2} ({:.2})", record.mean_error_pct, record.stddev)
    } else {
        format!("{:.2}", record.mean_error_pct)
    }
}

impl BenchmarkResult {
    pub fn records(&self) -> Vec<ResultRecord> {
        self.cells.iter().map(|c| c.record.clone()).collect()
    }

    /// Mean error (%) per estimator and order; stochastic cells carry the
    /// sample deviation in parentheses.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "Mean absolute percentage error (%), dataset {}", self.dataset).unwrap();
        write!(out, "{:<10}", "Estimator").unwrap();
        for r in BENCH_ORDERS {
            write!(out, "{:>16}", format!("r={r}")).unwrap();
        }
        out.push('\n');
        for row in self.cells.chunks(BENCH_ORDERS.len()) {
            write!(out, "{:<10}", row[0].record.estimator).unwrap();
            for cell in row {
                write!(out, "{:>16}", cell_text(&cell.record)).unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Relative path of the trace file of run `run` in `cell`.
    pub fn trace_path(cell: &Cell, run: usize) -> PathBuf {
        let r = &cell.record;
        Path::new("traces").join(format!(
            "{}_{}_r{}_run{}.csv",
            r.dataset,
            r.estimator.to_ascii_lowercase(),
            r.r,
            run
        ))
    }

    /// Write `results.json` and one trace CSV per run under `dir`.
    pub fn write_to(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        let traces = dir.join("traces");
        fs::create_dir_all(&traces).map_err(|e| HarnessError::io(&traces, e))?;
        let results = dir.join("results.json");
        fs::write(&results, write_results(&self.records())).map_err(|e| HarnessError::io(&results, e))?;
        let mut written = vec![results];
        for cell in &self.cells {
            for (run, trace) in cell.traces.iter().enumerate() {
                let path = dir.join(Self::trace_path(cell, run));
                fs::write(&path, write_trace_csv(trace)).map_err(|e| HarnessError::io(&path, e))?;
                written.push(path);
            }
        }
        Ok(written)
    }
}
