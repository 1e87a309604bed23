//! Fractional-order grey forecasting.
//!
//! [`fracops`] holds the fractional accumulation operators, [`greymodel`] the
//! FGM(1,1) model with its closed-form least-squares estimator, and
//! [`optim`] the cat swarm and particle swarm estimators together with the
//! fractional-order grid search.
//!
//! ```
//! use greyfrac_core::{fit_series, lsm_fit, FracOrder, Series};
//!
//! let series = Series::new(
//!     (2011..=2015).collect(),
//!     vec![714700.0, 765000.0, 860412.0, 1005200.0, 1061400.0],
//! )
//! .unwrap();
//! let params = lsm_fit(&series, FracOrder::new(0.25).unwrap()).unwrap();
//! let report = fit_series(&series, &params).unwrap();
//! assert!((report.mape - 1.57).abs() < 0.01);
//! ```

mod error;
pub mod fracops;
pub mod greymodel;
pub mod optim;

pub use error::{Error, Result};
pub use fracops::{
    ago_coeffs, frac_accumulate, frac_reduce, iago_coeffs, mean_sequence, CoeffVector, FracOrder,
};
pub use greymodel::{
    build_design, fit_series, forecast, lsm_fit, mape, solve_design, time_response, Design,
    FitReport, GreyParams, Series,
};
pub use optim::{
    adcso_minimize, order_search, pso_minimize, repeat_stats, Bounds, Estimate, Estimator,
    GreyObjective, Minimizer, Objective, OrderSearchResult, PsoConfig, RunTrace, SwarmConfig,
};
