//! Capacity bounds for sending classical data on graph-state letters and
//! decoding with LOCC.

use serde::{Deserialize, Serialize};

use crate::bounds::BoundsReport;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleEntry {
    pub id: String,
    pub e_g: f64,
    /// Must be set explicitly for user-supplied values.
    #[serde(default)]
    pub additive: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ensemble {
    pub n: usize,
    pub entries: Vec<EnsembleEntry>,
}

impl Ensemble {
    pub fn from_json(s: &str) -> Result<Self> {
        let ens: Ensemble = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
        ens.validate()?;
        Ok(ens)
    }

    pub fn validate(&self) -> Result<()> {
        for e in &self.entries {
            if !e.e_g.is_finite() || e.e_g < 0.0 {
                return Err(Error::OutOfRange(format!("entry {}: E_g = {} must be non-negative", e.id, e.e_g)));
            }
            if e.e_g > self.n as f64 {
                return Err(Error::OutOfRange(format!("entry {}: E_g = {} exceeds n = {}", e.id, e.e_g, self.n)));
            }
        }
        Ok(())
    }

    pub fn mean_e_g(&self) -> Result<f64> {
        if self.entries.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        Ok(self.entries.iter().map(|e| e.e_g).sum::<f64>() / self.entries.len() as f64)
    }
}

/// `Σ p(i|i) 2^{E_g(ρ_i)} <= 2^n`. Exact for dyadic inputs of moderate size.
pub fn povm_constraint_check(success_probs: &[f64], e_g_values: &[f64], n: usize) -> Result<bool> {
    if success_probs.len() != e_g_values.len() {
        return Err(Error::SizeMismatch(success_probs.len(), e_g_values.len()));
    }
    if let Some(p) = success_probs.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::OutOfRange(format!("p = {p} is not a probability")));
    }
    if let Some(e) = e_g_values.iter().find(|e| !e.is_finite() || **e < 0.0) {
        return Err(Error::OutOfRange(format!("E_g = {e} must be non-negative")));
    }
    let total: f64 = success_probs.iter().zip(e_g_values).map(|(p, e)| p * e.exp2()).sum();
    Ok(total <= (n as f64).exp2())
}

/// `C <= n - mean E_g`. Refuses ensembles with an entry not marked additive.
pub fn capacity_bound(ens: &Ensemble) -> Result<f64> {
    ens.validate()?;
    if let Some(e) = ens.entries.iter().find(|e| !e.additive) {
        return Err(Error::NonAdditive(format!(
            "entry {} is not marked additive; the bound assumes E_g is additive over tensor products, which fails for some states",
            e.id
        )));
    }
    Ok(ens.n as f64 - ens.mean_e_g()?)
}

/// `log2 N(L) / L <= n - mean E_g - log2(1 - ε) / L`.
pub fn finite_blocklength_bound(length: usize, epsilon: f64, n: usize, mean_e_g: f64) -> Result<f64> {
    if length == 0 {
        return Err(Error::OutOfRange("block length must be at least 1".into()));
    }
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::OutOfRange(format!("error probability {epsilon} must lie in [0, 1)")));
    }
    if !mean_e_g.is_finite() || mean_e_g < 0.0 {
        return Err(Error::OutOfRange(format!("mean E_g = {mean_e_g} must be non-negative")));
    }
    Ok(n as f64 - mean_e_g - (1.0 - epsilon).log2() / length as f64)
}

/// Rate of the colouring protocol: one bit per amber qubit.
pub fn achievable_rate(report: &BoundsReport) -> usize {
    report.witness_set.len()
}

/// The `2^{|A|}` graph-basis states that differ on the amber bits. Each gets
/// `E_g = E_low`, the cut-rank lower bound, which is additive and equals
/// `E_g` when the report is exact.
pub fn colouring_ensemble(report: &BoundsReport) -> Result<Ensemble> {
    let a = report.witness_set.len();
    if a > 20 {
        return Err(Error::OutOfRange(format!("2^{a} entries is too many to list")));
    }
    let amber = report.witness_set.to_vec();
    let entries = (0u64..1 << a)
        .map(|bits| {
            let id: String =
                amber.iter().enumerate().map(|(t, q)| format!("k{q}={}", bits >> t & 1)).collect::<Vec<_>>().join(",");
            EnsembleEntry { id, e_g: report.e_low as f64, additive: true }
        })
        .collect();
    Ok(Ensemble { n: report.n, entries })
}

/// `n - E_low` with the amber-rate shortfall against it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateSummary {
    pub n: usize,
    pub achievable: usize,
    pub bound: f64,
    pub tight: bool,
}

pub fn rate_summary(report: &BoundsReport) -> Result<RateSummary> {
    let achievable = achievable_rate(report);
    let bound = report.n as f64 - report.e_low as f64;
    Ok(RateSummary { n: report.n, achievable, bound, tight: achievable as f64 == bound })
}
