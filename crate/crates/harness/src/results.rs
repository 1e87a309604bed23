//! Machine-readable JSON outputs.

use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

pub const ESTIMATOR_NAMES: [&str; 3] = ["LSM", "PSO", "ADCSO"];

/// One benchmark cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultRecord {
    pub dataset: String,
    pub estimator: String,
    pub r: f64,
    pub mean_error_pct: f64,
    pub stddev: f64,
    pub repeats: usize,
    /// First seed of the run sequence; absent for least squares.
    pub seed: Option<u64>,
    pub elapsed_ms: u64,
}

impl ResultRecord {
    fn check(&self, i: usize) -> Result<()> {
        let bad = |what: &str| Err(HarnessError::Data(format!("record {i}: {what}")));
        if !ESTIMATOR_NAMES.contains(&self.estimator.as_str()) {
            return bad("unknown estimator");
        }
        if !(self.r > 0.0 && self.r <= 2.0) {
            return bad("order outside (0, 2]");
        }
        if !(self.mean_error_pct >= 0.0 && self.mean_error_pct.is_finite()) {
            return bad("mean_error_pct must be finite and non-negative");
        }
        if !(self.stddev >= 0.0 && self.stddev.is_finite()) {
            return bad("stddev must be finite and non-negative");
        }
        if self.repeats == 0 {
            return bad("repeats must be at least 1");
        }
        if (self.estimator == "LSM") != self.seed.is_none() {
            return bad("seed must be present exactly for stochastic estimators");
        }
        Ok(())
    }
}

pub fn write_results(records: &[ResultRecord]) -> String {
    serde_json::to_string_pretty(records).expect("records serialize") + "\n"
}

pub fn parse_results(text: &str) -> Result<Vec<ResultRecord>> {
    let records: Vec<ResultRecord> =
        serde_json::from_str(text).map_err(|e| HarnessError::Data(format!("results: {e}")))?;
    for (i, record) in records.iter().enumerate() {
        record.check(i)?;
    }
    Ok(records)
}

/// Output of a single fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitRecord {
    pub dataset: String,
    pub estimator: String,
    pub r: f64,
    pub a: f64,
    pub b: f64,
    /// Error of the reported parameters.
    pub mape: f64,
    /// Mean and sample deviation of the best error over the repeats.
    pub mean_error_pct: f64,
    pub stddev: f64,
    pub repeats: usize,
    pub seed: Option<u64>,
    pub labels: Vec<i64>,
    pub actual: Vec<f64>,
    pub fitted: Vec<f64>,
    pub error_pct: Vec<f64>,
}

pub fn write_fit(record: &FitRecord) -> String {
    serde_json::to_string_pretty(record).expect("record serializes") + "\n"
}

pub fn parse_fit(text: &str) -> Result<FitRecord> {
    let record: FitRecord =
        serde_json::from_str(text).map_err(|e| HarnessError::Data(format!("fit report: {e}")))?;
    let n = record.labels.len();
    if record.actual.len() != n || record.fitted.len() != n || record.error_pct.len() != n {
        return Err(HarnessError::Data("fit report: column lengths differ".into()));
    }
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record() -> ResultRecord {
        ResultRecord {
            dataset: "wuhan".into(),
            estimator: "ADCSO".into(),
            r: 0.25,
            mean_error_pct: 1.1537,
            stddev: 0.0123,
            repeats: 10,
            seed: Some(0),
            elapsed_ms: 412,
        }
    }

    #[test]
    fn round_trip() {
        let records = vec![
            record(),
            ResultRecord { estimator: "LSM".into(), seed: None, stddev: 0.0, repeats: 1, ..record() },
        ];
        assert_eq!(parse_results(&write_results(&records)).unwrap(), records);
    }

    #[test]
    fn schema_violations() {
        let bad = |r: ResultRecord| parse_results(&write_results(&[r])).is_err();
        assert!(bad(ResultRecord { estimator: "GA".into(), ..record() }));
        assert!(bad(ResultRecord { r: 0.0, ..record() }));
        assert!(bad(ResultRecord { seed: None, ..record() }));
        assert!(bad(ResultRecord { repeats: 0, ..record() }));
        assert!(parse_results("{}").is_err());
        assert!(parse_results("[{\"dataset\":\"x\"}]").is_err());
    }
}
