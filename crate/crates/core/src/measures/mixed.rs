use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{entropy_bits, MeasureValues};
use crate::bounds::BoundsReport;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::stabilizer::{dense, overlap, GraphStateIndex, PauliString};

/// Tolerance on the total weight of a mixture.
pub const WEIGHT_TOLERANCE: f64 = 1e-9;

/// `ρ = Σ λ_k |G_k⟩⟨G_k|` with every `k` agreeing on the amber bits.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedGraphState {
    graph: Graph,
    amber: VertexSet,
    /// Amber bits shared by every index (bits outside `amber` are zero).
    fixed_amber_bits: u64,
    weights: Vec<(GraphStateIndex, f64)>,
}

impl MixedGraphState {
    /// The shared amber bits are taken from the first index.
    pub fn new(graph: Graph, amber: VertexSet, weights: Vec<(GraphStateIndex, f64)>) -> Result<Self> {
        let first = weights.first().ok_or_else(|| Error::BadMixture("no weights given".into()))?;
        let fixed = first.0.bits & amber.0;
        Self::with_fixed_bits(graph, amber, fixed, weights)
    }

    pub fn with_fixed_bits(
        graph: Graph,
        amber: VertexSet,
        fixed_amber_bits: u64,
        weights: Vec<(GraphStateIndex, f64)>,
    ) -> Result<Self> {
        let n = graph.n();
        amber.check_within(n)?;
        if let Some((i, j)) = graph.find_internal_edge(amber) {
            return Err(Error::NotIndependent(i.min(j), i.max(j)));
        }
        if fixed_amber_bits & !amber.0 != 0 {
            return Err(Error::BadMixture("fixed bits set outside the amber set".into()));
        }
        if weights.is_empty() {
            return Err(Error::BadMixture("no weights given".into()));
        }
        let mut seen = BTreeSet::new();
        let mut total = 0.0;
        for &(k, w) in &weights {
            if k.n != n {
                return Err(Error::SizeMismatch(k.n, n));
            }
            if !(w >= 0.0 && w.is_finite()) {
                return Err(Error::BadMixture(format!("weight {w} for index {k} is not a probability")));
            }
            if !seen.insert(k.bits) {
                return Err(Error::BadMixture(format!("index {k} listed twice")));
            }
            if k.bits & amber.0 != fixed_amber_bits {
                return Err(Error::BadMixture(format!(
                    "index {k} lies outside the amber eigenspace (amber bits must match on {amber})"
                )));
            }
            total += w;
        }
        if (total - 1.0).abs() > WEIGHT_TOLERANCE {
            return Err(Error::BadMixture(format!("weights sum to {total}, not 1")));
        }
        Ok(MixedGraphState { graph, amber, fixed_amber_bits, weights })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn amber(&self) -> VertexSet {
        self.amber
    }

    pub fn fixed_amber_bits(&self) -> BTreeMap<usize, u8> {
        self.amber.iter().map(|i| (i, (self.fixed_amber_bits >> i & 1) as u8)).collect()
    }

    pub fn weights(&self) -> &[(GraphStateIndex, f64)] {
        &self.weights
    }

    /// `|B| = n - |A|`.
    pub fn blue_count(&self) -> usize {
        self.graph.n() - self.amber.len()
    }

    pub fn entropy(&self) -> f64 {
        entropy_bits(self.weights.iter().map(|w| w.1))
    }

    fn max_weight(&self) -> f64 {
        self.weights.iter().map(|w| w.1).fold(0.0, f64::max)
    }
}

/// The closed forms need `E(|G⟩) = |B|` for this amber set.
fn check_evidence(graph: &Graph, amber: VertexSet, report: &BoundsReport) -> Result<usize> {
    if report.n != graph.n() {
        return Err(Error::SizeMismatch(report.n, graph.n()));
    }
    let value = report.value().ok_or(Error::NotExact { low: report.e_low, high: report.e_high })?;
    let blue = graph.n() - amber.len();
    if blue != value {
        return Err(Error::BadMixture(format!(
            "amber set {amber} gives |B| = {blue}, but the graph's entanglement is {value}"
        )));
    }
    Ok(blue)
}

/// `E_g = |B|`, `E_R = |B| - S(λ)` and `log2(1+R) = |B| + log2(max λ)`.
pub fn mixed_measures(m: &MixedGraphState, evidence: &BoundsReport) -> Result<MeasureValues> {
    let blue = check_evidence(&m.graph, m.amber, evidence)? as f64;
    let r = mixed_robustness(m, evidence)?;
    Ok(MeasureValues { e_g: Some(blue), e_r: Some(blue - m.entropy()), log_one_plus_r: Some((1.0 + r).log2()) })
}

/// `R = 2^{|B|} max λ - 1`.
pub fn mixed_robustness(m: &MixedGraphState, evidence: &BoundsReport) -> Result<f64> {
    let blue = check_evidence(&m.graph, m.amber, evidence)?;
    Ok((2f64).powi(blue as i32) * m.max_weight() - 1.0)
}

/// `R(ρ) >= p0 (1 + R(ρ0)) - 1` for a component `ρ0` of weight `p0`. The raw
/// value may be negative.
pub fn robustness_lower_bound(p0: f64, r0: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p0) {
        return Err(Error::OutOfRange(format!("p0 = {p0} is not a probability")));
    }
    if !r0.is_finite() || r0 < 0.0 {
        return Err(Error::OutOfRange(format!("robustness {r0} must be non-negative")));
    }
    Ok(p0 * (1.0 + r0) - 1.0)
}

/// Product stabilizer state: X eigenstates on amber qubits, Z eigenstates on
/// the rest. A set bit means the `-1` eigenstate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductState {
    pub n: usize,
    pub x_qubits: VertexSet,
    pub minus_signs: u64,
}

impl ProductState {
    pub fn stabilizers(&self) -> Vec<PauliString> {
        (0..self.n)
            .map(|q| {
                let p = if self.x_qubits.contains(q) {
                    PauliString::single_x(self.n, q)
                } else {
                    PauliString::single_z(self.n, q)
                };
                if self.minus_signs >> q & 1 == 1 {
                    p.negated()
                } else {
                    p
                }
            })
            .collect()
    }

    pub fn statevector(&self) -> Result<Vec<Complex64>> {
        dense::check_cap(self.n)?;
        let r = std::f64::consts::FRAC_1_SQRT_2;
        Ok((0u64..1 << self.n)
            .map(|x| {
                let mut amp = 1.0;
                for q in 0..self.n {
                    let bit = x >> q & 1;
                    let minus = self.minus_signs >> q & 1;
                    if self.x_qubits.contains(q) {
                        amp *= if bit == 1 && minus == 1 { -r } else { r };
                    } else if bit != minus {
                        amp = 0.0;
                    }
                }
                Complex64::new(amp, 0.0)
            })
            .collect())
    }
}

/// Equal mixture of the `2^{|B|}` product states spanning one joint
/// eigenspace of the amber generators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparableState {
    pub n: usize,
    pub amber: VertexSet,
    pub product_states: Vec<ProductState>,
}

impl SeparableState {
    pub fn weight(&self) -> f64 {
        1.0 / self.product_states.len() as f64
    }

    /// `tr(|ψ⟩⟨ψ| ω)`.
    pub fn expectation(&self, psi: &[Complex64]) -> Result<f64> {
        let mut total = 0.0;
        for p in &self.product_states {
            total += dense::inner(&p.statevector()?, psi).norm_sqr();
        }
        Ok(total * self.weight())
    }

    /// Row-major dense density matrix.
    pub fn density_matrix(&self) -> Result<Vec<Complex64>> {
        let dim = 1usize << self.n;
        let mut rho = vec![Complex64::new(0.0, 0.0); dim * dim];
        let w = self.weight();
        for p in &self.product_states {
            let v = p.statevector()?;
            for (i, a) in v.iter().enumerate().filter(|(_, a)| a.norm_sqr() > 0.0) {
                for (j, b) in v.iter().enumerate() {
                    rho[i * dim + j] += a * b.conj() * w;
                }
            }
        }
        Ok(rho)
    }
}

/// Closest separable state for graph states in the eigenspace where
/// `K_i` has eigenvalue `(-1)^{k_i}` for every amber `i`.
pub fn closest_separable_state(
    g: &Graph,
    a: VertexSet,
    fixed_amber_bits: &BTreeMap<usize, u8>,
) -> Result<SeparableState> {
    let n = g.n();
    a.check_within(n)?;
    if let Some((i, j)) = g.find_internal_edge(a) {
        return Err(Error::NotIndependent(i.min(j), i.max(j)));
    }
    let keys: Vec<usize> = fixed_amber_bits.keys().copied().collect();
    if keys != a.to_vec() {
        return Err(Error::BadMixture("fixed bits must be given for exactly the amber qubits".into()));
    }
    let blue = a.complement(n);
    if blue.len() > 24 {
        return Err(Error::OutOfRange(format!("2^{} product states is too many to list", blue.len())));
    }
    let blue_qubits = blue.to_vec();
    let product_states = (0u64..1 << blue_qubits.len())
        .map(|pattern| {
            let mut signs = 0u64;
            for (t, &q) in blue_qubits.iter().enumerate() {
                signs |= (pattern >> t & 1) << q;
            }
            for i in a.iter() {
                let parity = fixed_amber_bits[&i] as u64 ^ ((g.rows()[i] & signs).count_ones() as u64 & 1);
                signs |= parity << i;
            }
            ProductState { n, x_qubits: a, minus_signs: signs }
        })
        .collect();
    Ok(SeparableState { n, amber: a, product_states })
}

/// Measures of `u |G_k⟩⟨G_k| + (1-u) |G'_k⟩⟨G'_k|`.
///
/// Requires (a) equal qubit counts, (b) both graphs exact with the same
/// value, (c) both states in the amber eigenspace attaining that value and
/// (d) identical amber generators. Robustness is not available.
pub fn two_graph_mixture_measures(
    g: &Graph,
    g_prime: &Graph,
    amber: VertexSet,
    k: GraphStateIndex,
    u: f64,
    evidence: &BoundsReport,
    evidence_prime: &BoundsReport,
) -> Result<MeasureValues> {
    let fail = |condition: &'static str, detail: String| Error::MixtureCondition { condition, detail };
    if g.n() != g_prime.n() || k.n != g.n() {
        return Err(fail("a: same qubit count", format!("{} vs {} qubits", g.n(), g_prime.n())));
    }
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::OutOfRange(format!("u = {u} is not a probability")));
    }
    if evidence.n != g.n() || evidence_prime.n != g.n() {
        return Err(fail("b: equal exact entanglement", "reports are for a different qubit count".into()));
    }
    let (Some(e), Some(e_prime)) = (evidence.value(), evidence_prime.value()) else {
        return Err(fail("b: equal exact entanglement", "both graphs need exact bounds".into()));
    };
    if e != e_prime {
        return Err(fail("b: equal exact entanglement", format!("E = {e} vs E' = {e_prime}")));
    }
    amber.check_within(g.n())?;
    let blue = g.n() - amber.len();
    for (name, graph) in [("G", g), ("G'", g_prime)] {
        if let Some((i, j)) = graph.find_internal_edge(amber) {
            return Err(fail("c: shared eigenspace", format!("amber set has edge ({i}, {j}) in {name}")));
        }
    }
    if blue != e {
        return Err(fail("c: shared eigenspace", format!("|B| = {blue} differs from E = {e}")));
    }
    if let Some(i) = amber.iter().find(|&i| g.neighbours(i) != g_prime.neighbours(i)) {
        return Err(fail("d: amber generators unchanged", format!("K_{i} differs between the graphs")));
    }
    let c = overlap(g, k, g_prime, k)?.norm_sqr();
    let disc = (1.0 - 4.0 * u * (1.0 - u) * (1.0 - c)).max(0.0).sqrt();
    let s = entropy_bits([(1.0 + disc) / 2.0, (1.0 - disc) / 2.0]);
    let blue = blue as f64;
    Ok(MeasureValues { e_g: Some(blue), e_r: Some(blue - s), log_one_plus_r: None })
}
