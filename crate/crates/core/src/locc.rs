//! Single-round LOCC discrimination of graph-basis states.
//!
//! Every amber qubit is measured in X and every other qubit in Z. Because
//! amber qubits are pairwise non-adjacent, each amber generator
//! `K_i = X_i Z_{N(i)}` is a product of the measured single-qubit
//! observables, so its eigenvalue `(-1)^{k_i}` is the parity of the outcomes
//! on `{i} ∪ N(i)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::stabilizer::{Eigenvalue, GraphStateIndex, PauliString, StabilizerTableau};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementPlan {
    pub n: usize,
    pub x_qubits: VertexSet,
    pub z_qubits: VertexSet,
    /// For each amber qubit, the qubits whose outcome parity gives `k_i`.
    pub parity_masks: BTreeMap<usize, VertexSet>,
}

impl MeasurementPlan {
    /// Observables in measurement order: X on amber ascending, then Z on the
    /// rest ascending.
    pub fn observables(&self) -> Vec<(usize, Basis, PauliString)> {
        let x = self.x_qubits.iter().map(|q| (q, Basis::X, PauliString::single_x(self.n, q)));
        let z = self.z_qubits.iter().map(|q| (q, Basis::Z, PauliString::single_z(self.n, q)));
        x.chain(z).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    X,
    Z,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    pub qubit: usize,
    pub basis: Basis,
    pub outcome: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminationResult {
    pub recovered_bits: BTreeMap<usize, u8>,
    pub trials: usize,
    pub successes: usize,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub trace: Vec<MeasurementRecord>,
}

impl DiscriminationResult {
    pub fn success_rate(&self) -> f64 {
        if self.trials == 0 {
            1.0
        } else {
            self.successes as f64 / self.trials as f64
        }
    }

    /// One line per measurement, then the recovered bits.
    pub fn trace_text(&self) -> String {
        let mut out = String::new();
        for r in &self.trace {
            let basis = match r.basis {
                Basis::X => 'X',
                Basis::Z => 'Z',
            };
            let _ = writeln!(out, "{} {} {:+}", r.qubit, basis, r.outcome);
        }
        out.push_str("recovered");
        for (i, b) in &self.recovered_bits {
            let _ = write!(out, " {i}={b}");
        }
        out.push('\n');
        out
    }
}

/// Measurement plan for the amber set `a`.
pub fn discrimination_protocol(g: &Graph, a: VertexSet) -> Result<MeasurementPlan> {
    a.check_within(g.n())?;
    if let Some((i, j)) = g.find_internal_edge(a) {
        return Err(Error::NotIndependent(i.min(j), i.max(j)));
    }
    let parity_masks = a
        .iter()
        .map(|i| {
            let mut mask = g.neighbours(i);
            mask.insert(i);
            (i, mask)
        })
        .collect();
    Ok(MeasurementPlan { n: g.n(), x_qubits: a, z_qubits: a.complement(g.n()), parity_masks })
}

fn run_plan<R: Rng + ?Sized>(
    plan: &MeasurementPlan,
    g: &Graph,
    k: GraphStateIndex,
    rng: &mut R,
    keep_trace: bool,
) -> Result<(BTreeMap<usize, u8>, Vec<MeasurementRecord>)> {
    let mut tableau = StabilizerTableau::graph_state(g, k)?;
    let mut outcome_bits = 0u64;
    let mut trace = Vec::new();
    for (qubit, basis, obs) in plan.observables() {
        let m = tableau.measure(&obs, rng)?;
        if m.outcome == Eigenvalue::Minus {
            outcome_bits |= 1 << qubit;
        }
        if keep_trace {
            trace.push(MeasurementRecord { qubit, basis, outcome: m.outcome.value() });
        }
    }
    let recovered =
        plan.parity_masks.iter().map(|(&i, mask)| (i, (outcome_bits & mask.0).count_ones() as u8 & 1)).collect();
    Ok((recovered, trace))
}

/// Runs the protocol once on `|G_k⟩` and checks the amber bits of `k`.
pub fn simulate_discrimination(g: &Graph, a: VertexSet, k: GraphStateIndex, seed: u64) -> Result<DiscriminationResult> {
    let plan = discrimination_protocol(g, a)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (recovered_bits, trace) = run_plan(&plan, g, k, &mut rng, true)?;
    let ok = recovered_bits.iter().all(|(&i, &b)| k.bit(i) == b);
    Ok(DiscriminationResult { recovered_bits, trials: 1, successes: ok as usize, trace })
}

/// Repeats the protocol on random indices. Amber bits are uniform; the other
/// bits are zero unless `randomize_blue` is set.
pub fn run_trials(
    g: &Graph,
    a: VertexSet,
    trials: usize,
    seed: u64,
    randomize_blue: bool,
) -> Result<DiscriminationResult> {
    let plan = discrimination_protocol(g, a)?;
    let n = g.n();
    let free = if randomize_blue { VertexSet::full(n).0 } else { a.0 };
    let mut successes = 0;
    let mut last = BTreeMap::new();
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t as u64);
        let k = GraphStateIndex::new(n, rng.gen::<u64>() & free)?;
        let (recovered, _) = run_plan(&plan, g, k, &mut rng, false)?;
        if recovered.iter().all(|(&i, &b)| k.bit(i) == b) {
            successes += 1;
        }
        last = recovered;
    }
    Ok(DiscriminationResult { recovered_bits: last, trials, successes, trace: Vec::new() })
}

/// Fraction of `trials` random amber-bit assignments recovered exactly.
/// `a = ∅` is the single-state case and always succeeds.
pub fn verify_perfect_discrimination(g: &Graph, a: VertexSet, trials: usize, seed: u64) -> Result<f64> {
    Ok(run_trials(g, a, trials, seed, false)?.success_rate())
}
