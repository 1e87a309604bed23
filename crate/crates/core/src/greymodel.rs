//! The FGM(1,1) model: design construction, least-squares estimation,
//! time response, restoration and the MAPE fitness.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::fracops::{frac_accumulate, iago_coeffs, mean_sequence, FracOrder};

/// Smallest development coefficient magnitude the time response accepts.
pub const MIN_ABS_A: f64 = 1e-12;

/// Fewest observations that give a two-parameter design with at least two rows.
pub const MIN_FIT_LEN: usize = 3;

/// A labelled, strictly positive observation sequence with equally spaced
/// integer period labels (usually years).
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    labels: Vec<i64>,
    values: Vec<f64>,
}

impl Series {
    pub fn new(labels: Vec<i64>, values: Vec<f64>) -> Result<Self> {
        if labels.len() != values.len() {
            return Err(Error::LengthMismatch {
                left: labels.len(),
                right: values.len(),
            });
        }
        if values.len() < 2 {
            return Err(Error::TooShort {
                needed: 2,
                got: values.len(),
            });
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index });
            }
            if value <= 0.0 {
                return Err(Error::NonPositive { index, value });
            }
        }
        let step = labels[1].checked_sub(labels[0]).filter(|s| *s > 0);
        let Some(step) = step else {
            return Err(Error::BadLabels { index: 1 });
        };
        for (i, w) in labels.windows(2).enumerate() {
            if w[1].checked_sub(w[0]) != Some(step) {
                return Err(Error::BadLabels { index: i + 1 });
            }
        }
        Ok(Self { labels, values })
    }

    /// A series labelled `1..=n`.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        let labels = (1..=values.len() as i64).collect();
        Self::new(labels, values)
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Spacing between consecutive labels.
    pub fn label_step(&self) -> i64 {
        self.labels[1] - self.labels[0]
    }

    /// Labels for the `horizon` periods following the last observation.
    pub fn future_labels(&self, horizon: usize) -> Vec<i64> {
        let last = *self.labels.last().expect("series is never empty");
        let step = self.label_step();
        (1..=horizon as i64).map(|h| last + h * step).collect()
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::MIN, f64::max)
    }

    /// The series with every value multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.labels.clone(),
            self.values.iter().map(|v| v * factor).collect(),
        )
    }
}

/// Fractional order plus the development coefficient `a` and grey input `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreyParams {
    pub r: FracOrder,
    pub a: f64,
    pub b: f64,
}

impl GreyParams {
    pub fn new(r: FracOrder, a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            let index = if a.is_finite() { 1 } else { 0 };
            return Err(Error::NonFinite { index });
        }
        if a.abs() < MIN_ABS_A {
            return Err(Error::DegenerateParams { a });
        }
        Ok(Self { r, a, b })
    }
}

/// Linear form of the grey difference equation: `rows · [a, b]ᵀ ≈ rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Design {
    /// Row `k-1` is `[-z(k), 1]`.
    pub rows: Vec<[f64; 2]>,
    /// Entry `k-1` is `X(k) - X(k-1)`.
    pub rhs: Vec<f64>,
}

/// Build the least-squares design from the r-accumulated series and its
/// background values.
pub fn build_design(series: &Series, r: FracOrder) -> Result<Design> {
    if series.len() < MIN_FIT_LEN {
        return Err(Error::TooShort {
            needed: MIN_FIT_LEN,
            got: series.len(),
        });
    }
    let acc = frac_accumulate(series.values(), r)?;
    let z = mean_sequence(&acc)?;
    let rows = z.iter().map(|zk| [-zk, 1.0]).collect();
    let rhs = acc.windows(2).map(|w| w[1] - w[0]).collect();
    Ok(Design { rows, rhs })
}

/// Solve the two-column least-squares problem by Householder QR.
///
/// Columns are normalized first so the rank test is scale free: the design
/// is rejected when the second column's component orthogonal to the first
/// is below `1e-10` of its norm.
pub fn solve_design(design: &Design) -> Result<(f64, f64)> {
    let m = design.rows.len();
    if m < 2 || design.rhs.len() != m {
        return Err(Error::SingularDesign);
    }
    let mut scales = [0.0f64; 2];
    for (j, scale) in scales.iter_mut().enumerate() {
        *scale = design.rows.iter().map(|row| row[j] * row[j]).sum::<f64>().sqrt();
    }
    if scales.iter().any(|s| !s.is_finite() || *s == 0.0) {
        return Err(Error::SingularDesign);
    }
    let matrix = DMatrix::from_fn(m, 2, |i, j| design.rows[i][j] / scales[j]);
    let qr = matrix.qr();
    let r = qr.r();
    if r[(0, 0)].abs() < 1e-10 || r[(1, 1)].abs() < 1e-10 {
        return Err(Error::SingularDesign);
    }
    let mut rhs = DVector::from_column_slice(&design.rhs);
    qr.q_tr_mul(&mut rhs);
    let y1 = rhs[1] / r[(1, 1)];
    let y0 = (rhs[0] - r[(0, 1)] * y1) / r[(0, 0)];
    let (a, b) = (y0 / scales[0], y1 / scales[1]);
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::SingularDesign);
    }
    Ok((a, b))
}

/// Closed-form least-squares estimate of `(a, b)` at order `r`.
pub fn lsm_fit(series: &Series, r: FracOrder) -> Result<GreyParams> {
    let design = build_design(series, r)?;
    let (a, b) = solve_design(&design)?;
    GreyParams::new(r, a, b)
}

/// Accumulated-scale time response `(x1 - b/a) e^{-a k} + b/a`.
///
/// `k = 0` returns `x1` exactly.
pub fn time_response(params: &GreyParams, x1: f64, k: usize) -> Result<f64> {
    if params.a.abs() < MIN_ABS_A || !params.a.is_finite() {
        return Err(Error::DegenerateParams { a: params.a });
    }
    if k == 0 {
        return Ok(x1);
    }
    let ratio = params.b / params.a;
    Ok((x1 - ratio) * (-params.a * k as f64).exp() + ratio)
}

/// Restored (original-scale) model values for periods `1..=out.len()`.
///
/// `acc` is scratch space of the same length; `iago` must hold at least
/// `out.len()` reduction weights. The first value is pinned to `x1`.
pub(crate) fn restore_into(
    params: &GreyParams,
    x1: f64,
    iago: &[f64],
    acc: &mut [f64],
    out: &mut [f64],
) -> Result<()> {
    if params.a.abs() < MIN_ABS_A || !params.a.is_finite() {
        return Err(Error::DegenerateParams { a: params.a });
    }
    // e^{-a k} by repeated multiplication; agrees with `time_response` to a
    // few ulps per step.
    let ratio = params.b / params.a;
    let decay = (-params.a).exp();
    let mut power = 1.0;
    for (k, slot) in acc.iter_mut().enumerate() {
        *slot = if k == 0 { x1 } else { (x1 - ratio) * power + ratio };
        power *= decay;
    }
    out[0] = x1;
    for k in 1..out.len() {
        let weights = &iago[..=k];
        let history = &acc[..=k];
        let mut sum = 0.0;
        for i in 0..=k {
            sum += weights[i] * history[k - i];
        }
        out[k] = sum;
    }
    Ok(())
}

fn restore(params: &GreyParams, x1: f64, len: usize) -> Result<Vec<f64>> {
    let iago = iago_coeffs(params.r, len)?;
    let mut acc = vec![0.0; len];
    let mut out = vec![0.0; len];
    restore_into(params, x1, &iago, &mut acc, &mut out)?;
    Ok(out)
}

#[inline]
pub(crate) fn abs_percentage_error(actual: f64, fitted: f64) -> f64 {
    100.0 * (fitted - actual).abs() / actual.abs()
}

/// Per-point absolute percentage errors for `k = 2..n`.
fn percentage_errors(actual: &[f64], fitted: &[f64]) -> Result<Vec<f64>> {
    if actual.len() != fitted.len() {
        return Err(Error::LengthMismatch {
            left: actual.len(),
            right: fitted.len(),
        });
    }
    if actual.len() < 2 {
        return Err(Error::TooShort {
            needed: 2,
            got: actual.len(),
        });
    }
    actual
        .iter()
        .zip(fitted)
        .enumerate()
        .skip(1)
        .map(|(index, (&x, &xh))| {
            if x == 0.0 {
                Err(Error::ZeroActual { index })
            } else {
                Ok(abs_percentage_error(x, xh))
            }
        })
        .collect()
}

/// Mean absolute percentage error over points `2..n`, in percent. The first
/// point is excluded because the model reproduces it by construction.
pub fn mape(actual: &[f64], fitted: &[f64]) -> Result<f64> {
    let errors = percentage_errors(actual, fitted)?;
    Ok(errors.iter().sum::<f64>() / errors.len() as f64)
}

/// In-sample fit of a model to a series.
#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub params: GreyParams,
    /// Restored model values, same length as the series.
    pub fitted: Vec<f64>,
    /// `actual - fitted`.
    pub residuals: Vec<f64>,
    /// Mean of `per_point_error`, percent.
    pub mape: f64,
    /// Absolute percentage error of points `2..n`.
    pub per_point_error: Vec<f64>,
}

pub fn fit_series(series: &Series, params: &GreyParams) -> Result<FitReport> {
    let values = series.values();
    let fitted = restore(params, values[0], values.len())?;
    let residuals = values.iter().zip(&fitted).map(|(x, xh)| x - xh).collect();
    let per_point_error = percentage_errors(values, &fitted)?;
    let mape = per_point_error.iter().sum::<f64>() / per_point_error.len() as f64;
    Ok(FitReport {
        params: *params,
        fitted,
        residuals,
        mape,
        per_point_error,
    })
}

/// Original-scale predictions for the `horizon` periods after the series.
pub fn forecast(series: &Series, params: &GreyParams, horizon: usize) -> Result<Vec<f64>> {
    if horizon == 0 {
        return Err(Error::InvalidHorizon);
    }
    let n = series.len();
    let mut extended = restore(params, series.values()[0], n + horizon)?;
    Ok(extended.split_off(n))
}
