//! Entanglement measures: exact pure-state values, closed forms for mixtures
//! inside one amber eigenspace, and a numerical geometric-measure oracle.

mod geometric;
mod mixed;

pub use geometric::{geometric_oracle, GeometricEstimate, MAX_SWEEPS};
pub use mixed::{
    closest_separable_state, mixed_measures, mixed_robustness, robustness_lower_bound, two_graph_mixture_measures,
    MixedGraphState, ProductState, SeparableState,
};

use serde::{Deserialize, Serialize};

use crate::bounds::BoundsReport;
use crate::error::{Error, Result};

/// Values in ebits. Absent values serialize as `null`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MeasureValues {
    pub e_g: Option<f64>,
    pub e_r: Option<f64>,
    pub log_one_plus_r: Option<f64>,
}

/// For exact reports `E_g = E_R = log2(1+R) = n - |A|`.
pub fn exact_pure_measures(report: &BoundsReport) -> Result<MeasureValues> {
    let e = report.value().ok_or(Error::NotExact { low: report.e_low, high: report.e_high })? as f64;
    Ok(MeasureValues { e_g: Some(e), e_r: Some(e), log_one_plus_r: Some(e) })
}

/// Base-2 Shannon entropy with `0 log 0 = 0`.
pub fn entropy_bits(probs: impl IntoIterator<Item = f64>) -> f64 {
    probs.into_iter().filter(|&p| p > 0.0).map(|p| -p * p.log2()).sum()
}
