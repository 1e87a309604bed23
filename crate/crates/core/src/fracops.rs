//! Fractional-order accumulation and reduction operators.
//!
//! The r-order accumulation of a sequence `x` is the convolution
//!
//! ```text
//! X(k) = sum_{i=1..k} c_{k-i} x(i),   c_j = Γ(r+j) / (Γ(j+1) Γ(r))
//! ```
//!
//! and the reduction is the convolution with the generalized binomial
//! weights `d_i = (-1)^i C(r, i)`. Both weight sequences are produced by
//! multiplicative recurrences so no Gamma function is ever evaluated; this
//! keeps long series finite and sidesteps the poles of `Γ(r - i + 1)` at
//! integer orders.

use std::ops::Deref;

use crate::error::{Error, Result};

/// Largest order accepted by [`FracOrder::new`].
pub const MAX_ORDER: f64 = 2.0;

/// A fractional accumulation order in `(0, 2]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FracOrder(f64);

impl FracOrder {
    pub fn new(r: f64) -> Result<Self> {
        if r.is_finite() && r > 0.0 && r <= MAX_ORDER {
            Ok(Self(r))
        } else {
            Err(Error::InvalidOrder(r))
        }
    }

    /// The classic first-order (cumulative sum) operator.
    pub const ONE: FracOrder = FracOrder(1.0);

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl std::fmt::Display for FracOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<f64> for FracOrder {
    type Error = Error;

    fn try_from(r: f64) -> Result<Self> {
        Self::new(r)
    }
}

/// Convolution weights of an accumulation or reduction operator, lag 0 first.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffVector(Vec<f64>);

impl CoeffVector {
    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Convolve the weights with `x`: `out(k) = sum_{j=0..k} w_j x(k-j)`.
    fn convolve(&self, x: &[f64]) -> Vec<f64> {
        debug_assert!(self.0.len() >= x.len());
        (0..x.len())
            .map(|k| {
                self.0[..=k]
                    .iter()
                    .zip(x[..=k].iter().rev())
                    .map(|(w, v)| w * v)
                    .sum()
            })
            .collect()
    }
}

impl Deref for CoeffVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Accumulation weights `c_0..c_{n-1}` via `c_j = c_{j-1} (r + j - 1) / j`.
pub fn ago_coeffs(r: FracOrder, n: usize) -> Result<CoeffVector> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let r = r.get();
    let mut coeffs = Vec::with_capacity(n);
    coeffs.push(1.0);
    for j in 1..n {
        let jf = j as f64;
        coeffs.push(coeffs[j - 1] * (r + jf - 1.0) / jf);
    }
    Ok(CoeffVector(coeffs))
}

/// Reduction weights `d_0..d_{n-1}` via `d_i = -d_{i-1} (r - i + 1) / i`.
///
/// At integer orders the recurrence hits an exact zero and stays there,
/// which is the finite-difference stencil.
pub fn iago_coeffs(r: FracOrder, n: usize) -> Result<CoeffVector> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let r = r.get();
    let mut coeffs = Vec::with_capacity(n);
    coeffs.push(1.0);
    for i in 1..n {
        let fi = i as f64;
        coeffs.push(-coeffs[i - 1] * (r - fi + 1.0) / fi);
    }
    Ok(CoeffVector(coeffs))
}

fn check_finite(x: &[f64]) -> Result<()> {
    if x.is_empty() {
        return Err(Error::EmptyInput);
    }
    match x.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFinite { index }),
        None => Ok(()),
    }
}

/// r-order accumulation of `x`. The first element is always passed through
/// unchanged.
pub fn frac_accumulate(x: &[f64], r: FracOrder) -> Result<Vec<f64>> {
    check_finite(x)?;
    Ok(ago_coeffs(r, x.len())?.convolve(x))
}

/// r-order reduction, the exact inverse of [`frac_accumulate`].
///
/// The sum includes the lag-0 term, so `frac_reduce(frac_accumulate(x, r), r)`
/// reproduces `x`.
pub fn frac_reduce(x: &[f64], r: FracOrder) -> Result<Vec<f64>> {
    check_finite(x)?;
    Ok(iago_coeffs(r, x.len())?.convolve(x))
}

/// Adjacent-pair means `z(k) = (X(k) + X(k-1)) / 2`, one shorter than the input.
pub fn mean_sequence(x: &[f64]) -> Result<Vec<f64>> {
    if x.len() < 2 {
        return Err(Error::TooShort {
            needed: 2,
            got: x.len(),
        });
    }
    Ok(x.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(r: f64) -> FracOrder {
        FracOrder::new(r).unwrap()
    }

    fn assert_slice_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (i, (g, w)) in got.iter().zip(want).enumerate() {
            assert!((g - w).abs() <= tol, "index {i}: {g} != {w}");
        }
    }

    #[test]
    fn order_range() {
        assert!(FracOrder::new(0.0).is_err());
        assert!(FracOrder::new(-0.5).is_err());
        assert!(FracOrder::new(2.0001).is_err());
        assert!(FracOrder::new(f64::NAN).is_err());
        assert!(FracOrder::new(f64::INFINITY).is_err());
        assert_eq!(FracOrder::new(2.0).unwrap().get(), 2.0);
        assert_eq!(FracOrder::new(0.01).unwrap().get(), 0.01);
    }

    #[test]
    fn ago_coefficients() {
        assert_eq!(&*ago_coeffs(order(1.0), 4).unwrap(), &[1.0, 1.0, 1.0, 1.0]);
        assert_slice_close(&ago_coeffs(order(0.5), 3).unwrap(), &[1.0, 0.5, 0.375], 1e-15);
        assert_slice_close(&ago_coeffs(order(2.0), 3).unwrap(), &[1.0, 2.0, 3.0], 1e-15);
        assert_eq!(ago_coeffs(order(0.5), 0), Err(Error::EmptyInput));
    }

    #[test]
    fn iago_coefficients() {
        assert_eq!(&*iago_coeffs(order(1.0), 3).unwrap(), &[1.0, -1.0, 0.0]);
        assert_slice_close(&iago_coeffs(order(0.5), 3).unwrap(), &[1.0, -0.5, -0.125], 1e-15);
        for r in [0.01, 0.3, 1.7] {
            assert_eq!(iago_coeffs(order(r), 1).unwrap()[0], 1.0);
        }
        assert_eq!(iago_coeffs(order(0.5), 0), Err(Error::EmptyInput));
    }

    #[test]
    fn ago_coefficients_positive_and_finite_on_unit_interval() {
        for r in [0.01, 0.21, 0.5, 0.99, 1.0] {
            let c = ago_coeffs(order(r), 200).unwrap();
            assert!(c.iter().all(|v| v.is_finite() && *v > 0.0), "r = {r}");
        }
    }

    #[test]
    fn accumulate_examples() {
        assert_eq!(frac_accumulate(&[1.0, 1.0, 1.0], order(1.0)).unwrap(), vec![1.0, 2.0, 3.0]);
        assert_slice_close(
            &frac_accumulate(&[1.0, 2.0, 3.0], order(0.5)).unwrap(),
            &[1.0, 2.5, 4.375],
            1e-15,
        );
        for r in [0.1, 0.5, 1.3] {
            assert_eq!(frac_accumulate(&[5.0], order(r)).unwrap(), vec![5.0]);
        }
        assert_eq!(frac_accumulate(&[], order(0.5)), Err(Error::EmptyInput));
        assert_eq!(
            frac_accumulate(&[1.0, f64::NAN], order(0.5)),
            Err(Error::NonFinite { index: 1 })
        );
    }

    #[test]
    fn reduce_examples() {
        assert_slice_close(
            &frac_reduce(&[1.0, 2.5, 4.375], order(0.5)).unwrap(),
            &[1.0, 2.0, 3.0],
            1e-15,
        );
        assert_eq!(frac_reduce(&[1.0, 2.0, 3.0], order(1.0)).unwrap(), vec![1.0, 1.0, 1.0]);
        assert_eq!(frac_reduce(&[7.5], order(0.3)).unwrap(), vec![7.5]);
        assert_eq!(frac_reduce(&[], order(0.5)), Err(Error::EmptyInput));
    }

    #[test]
    fn mean_sequence_examples() {
        assert_eq!(mean_sequence(&[1.0, 3.0]).unwrap(), vec![2.0]);
        assert_eq!(mean_sequence(&[1.0, 2.5, 4.375]).unwrap(), vec![1.75, 3.4375]);
        assert_eq!(mean_sequence(&[4.0, 4.0, 4.0]).unwrap(), vec![4.0, 4.0]);
        assert_eq!(
            mean_sequence(&[1.0]),
            Err(Error::TooShort { needed: 2, got: 1 })
        );
    }
}
