//! Command-line interface. Every command renders its report to a string so
//! that identical arguments give identical bytes.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use greyfrac_core::optim::default_bounds;
use greyfrac_core::{fit_series, forecast, order_search, Estimator, FracOrder, PsoConfig, SwarmConfig};

use crate::benchmark::run_benchmark;
use crate::config::{load_config, Config};
use crate::datasets::{self, Dataset};
use crate::error::{HarnessError, Result};
use crate::io::{load_csv, write_curve_csv, write_series_csv, CurveRow};
use crate::results::{write_fit, FitRecord};

#[derive(Debug, Parser)]
#[command(name = "greyfrac", version, about = "Fractional-order grey model forecasting and benchmarks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate the model at a fixed order and report the in-sample fit.
    Fit(FitArgs),
    /// Scan the fractional order on a grid and report the error curve.
    OrderSearch(SearchArgs),
    /// Compare all estimators at r = 0.25, 0.5, 0.75.
    Benchmark(BenchArgs),
    /// Choose the order, fit, and predict future values.
    Forecast(ForecastArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DatasetName {
    Wuhan,
    Zhejiang,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EstimatorName {
    Lsm,
    Pso,
    Adcso,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Embedded dataset.
    #[arg(long, value_enum)]
    pub dataset: Option<DatasetName>,
    /// CSV file with a `label,value` header.
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EstimatorArgs {
    #[arg(long, value_enum, default_value = "adcso")]
    pub estimator: EstimatorName,
    /// Seeded runs per order for the swarm estimators.
    #[arg(long, default_value_t = 10)]
    pub repeats: usize,
    /// First seed; run i uses seed + i.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// TOML file with `[cso]` and `[pso]` settings.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub source: Source,
    /// Fractional order in (0, 2].
    #[arg(long, allow_negative_numbers = true)]
    pub r: f64,
    #[command(flatten)]
    pub estimator: EstimatorArgs,
    /// Also write a JSON report here.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub source: Source,
    /// Grid spacing; orders step, 2·step, ... up to 1.
    #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
    pub step: f64,
    #[command(flatten)]
    pub estimator: EstimatorArgs,
    /// Also write the error curve CSV here.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value_t = 10)]
    pub repeats: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Directory for `results.json` and per-run trace CSVs.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ForecastArgs {
    #[command(flatten)]
    pub source: Source,
    /// Number of future periods.
    #[arg(long, allow_negative_numbers = true)]
    pub horizon: i64,
    /// Fixed order; searched on the grid when omitted.
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<f64>,
    #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
    pub step: f64,
    #[command(flatten)]
    pub estimator: EstimatorArgs,
    /// Also write the predictions CSV here.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

impl Source {
    fn load(&self) -> Result<Dataset> {
        match (&self.dataset, &self.csv) {
            (Some(DatasetName::Wuhan), _) => Ok(datasets::wuhan()),
            (Some(DatasetName::Zhejiang), _) => Ok(datasets::zhejiang()),
            (None, Some(path)) => Ok(Dataset {
                name: path
                    .file_stem()
                    .map_or_else(|| "csv".into(), |s| s.to_string_lossy().into_owned()),
                series: load_csv(path)?,
                source: path.display().to_string(),
            }),
            (None, None) => Err(HarnessError::Usage("one of --dataset or --csv is required".into())),
        }
    }
}

fn config(path: Option<&Path>) -> Result<Config> {
    path.map_or_else(|| Ok(Config::default()), load_config)
}

impl EstimatorArgs {
    fn build(&self) -> Result<Estimator> {
        if self.repeats == 0 {
            return Err(HarnessError::Usage("--repeats must be at least 1".into()));
        }
        let cfg = config(self.config.as_deref())?;
        Ok(match self.estimator {
            EstimatorName::Lsm => Estimator::Lsm,
            EstimatorName::Pso => Estimator::Pso(PsoConfig { seed: self.seed, ..cfg.pso }),
            EstimatorName::Adcso => Estimator::Adcso(SwarmConfig { seed: self.seed, ..cfg.cso }),
        })
    }

    fn describe(&self, estimator: &Estimator) -> String {
        match estimator.seed() {
            Some(seed) => format!("{} ({} runs, seed {seed})", estimator.name(), self.repeats),
            None => estimator.name().into(),
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| HarnessError::io(path, e))
}

/// Parse `args` (program name first) and run the command.
pub fn run<I, T>(args: I) -> Result<String>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| HarnessError::Usage(e.to_string()))?;
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Fit(args) => cmd_fit(args),
        Command::OrderSearch(args) => cmd_order_search(args),
        Command::Benchmark(args) => cmd_benchmark(args),
        Command::Forecast(args) => cmd_forecast(args),
    }
}

pub fn cmd_fit(args: &FitArgs) -> Result<String> {
    let r = FracOrder::new(args.r)?;
    let estimator = args.estimator.build()?;
    let data = args.source.load()?;
    let bounds = default_bounds(&data.series);
    let estimate = estimator.estimate(&data.series, r, &bounds, args.estimator.repeats)?;
    let report = fit_series(&data.series, &estimate.params)?;

    let mut out = String::new();
    writeln!(out, "dataset    {}", data.name).unwrap();
    writeln!(out, "estimator  {}", args.estimator.describe(&estimator)).unwrap();
    writeln!(out, "r          {r}").unwrap();
    writeln!(out, "a          {}", estimate.params.a).unwrap();
    writeln!(out, "b          {}", estimate.params.b).unwrap();
    writeln!(out).unwrap();
    writeln!(out, "label,actual,fitted,error_pct").unwrap();
    for (k, label) in data.series.labels().iter().enumerate() {
        let err = if k == 0 { 0.0 } else { report.per_point_error[k - 1] };
        writeln!(
            out,
            "{label},{},{:.4},{:.4}",
            data.series.values()[k],
            report.fitted[k],
            err
        )
        .unwrap();
    }
    writeln!(out).unwrap();
    writeln!(out, "MAPE       {:.2}%", report.mape).unwrap();
    if estimator.is_stochastic() {
        writeln!(
            out,
            "mean MAPE  {:.2}% (sd {:.2}) over {} runs",
            estimate.stats.mean,
            estimate.stats.stddev,
            estimate.stats.runs.len()
        )
        .unwrap();
    }

    if let Some(path) = &args.out {
        let mut error_pct = vec![0.0];
        error_pct.extend_from_slice(&report.per_point_error);
        let record = FitRecord {
            dataset: data.name.clone(),
            estimator: estimator.name().into(),
            r: r.get(),
            a: estimate.params.a,
            b: estimate.params.b,
            mape: report.mape,
            mean_error_pct: estimate.stats.mean,
            stddev: estimate.stats.stddev,
            repeats: estimate.stats.runs.len(),
            seed: estimator.seed(),
            labels: data.series.labels().to_vec(),
            actual: data.series.values().to_vec(),
            fitted: report.fitted.clone(),
            error_pct,
        };
        write_file(path, &write_fit(&record))?;
    }
    Ok(out)
}

pub fn cmd_order_search(args: &SearchArgs) -> Result<String> {
    let estimator = args.estimator.build()?;
    let data = args.source.load()?;
    let bounds = default_bounds(&data.series);
    let found = order_search(&data.series, args.step, &estimator, args.estimator.repeats, &bounds)?;
    let curve: Vec<CurveRow> = found
        .curve
        .iter()
        .map(|g| CurveRow { r: g.r, mean_error: g.mean_fitness, stddev: g.stddev })
        .collect();
    let csv = write_curve_csv(&curve);

    let mut out = String::new();
    writeln!(out, "dataset    {}", data.name).unwrap();
    writeln!(out, "estimator  {}", args.estimator.describe(&estimator)).unwrap();
    writeln!(out).unwrap();
    out.push_str(&csv);
    writeln!(out).unwrap();
    writeln!(
        out,
        "argmin     r={} mean_error={:.4} a={} b={}",
        found.order,
        found.estimate.mean_fitness(),
        found.params().a,
        found.params().b
    )
    .unwrap();
    if let Some(path) = &args.out {
        write_file(path, &csv)?;
    }
    Ok(out)
}

pub fn cmd_benchmark(args: &BenchArgs) -> Result<String> {
    let cfg = config(args.config.as_deref())?;
    let data = args.source.load()?;
    let result = run_benchmark(&data, args.repeats, args.seed, &cfg)?;
    let mut out = result.render_table();
    writeln!(out, "{} runs per swarm cell, seeds {}..{}", args.repeats, args.seed, args.seed + args.repeats as u64 - 1).unwrap();
    if let Some(dir) = &args.out {
        let written = result.write_to(dir)?;
        writeln!(out, "wrote {} files under {}", written.len(), dir.display()).unwrap();
    }
    Ok(out)
}

pub fn cmd_forecast(args: &ForecastArgs) -> Result<String> {
    if args.horizon < 1 {
        return Err(HarnessError::Usage(format!("--horizon must be at least 1, got {}", args.horizon)));
    }
    let horizon = args.horizon as usize;
    let estimator = args.estimator.build()?;
    let fixed = args.r.map(FracOrder::new).transpose()?;
    let data = args.source.load()?;
    let bounds = default_bounds(&data.series);
    let repeats = args.estimator.repeats;
    let params = match fixed {
        Some(r) => estimator.estimate(&data.series, r, &bounds, repeats)?.params,
        None => order_search(&data.series, args.step, &estimator, repeats, &bounds)?.params(),
    };
    let values = forecast(&data.series, &params, horizon)?;
    let csv = write_series_csv(&data.series.future_labels(horizon), &values);
    if let Some(path) = &args.out {
        write_file(path, &csv)?;
    }
    Ok(csv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_parse() {
        let cli = Cli::try_parse_from([
            "greyfrac", "fit", "--dataset", "wuhan", "--r", "0.25", "--estimator", "lsm",
        ])
        .unwrap();
        let Command::Fit(args) = cli.command else { panic!() };
        assert_eq!(args.source.dataset, Some(DatasetName::Wuhan));
        assert_eq!(args.estimator.repeats, 10);
        assert_eq!(args.estimator.estimator, EstimatorName::Lsm);
    }

    #[test]
    fn source_is_exclusive_and_required() {
        assert!(Cli::try_parse_from(["greyfrac", "fit", "--r", "0.5"]).is_err());
        assert!(Cli::try_parse_from([
            "greyfrac", "fit", "--r", "0.5", "--dataset", "wuhan", "--csv", "x.csv"
        ])
        .is_err());
    }

    #[test]
    fn zero_order_is_a_usage_error() {
        let err = run(["greyfrac", "fit", "--dataset", "wuhan", "--r", "0"]).unwrap_err();
        assert_eq!(err.exit_code(), HarnessError::EXIT_USAGE);
    }

    #[test]
    fn zero_horizon_is_a_usage_error() {
        let err = run(["greyfrac", "forecast", "--dataset", "wuhan", "--horizon", "0"]).unwrap_err();
        assert_eq!(err.exit_code(), HarnessError::EXIT_USAGE);
    }
}
