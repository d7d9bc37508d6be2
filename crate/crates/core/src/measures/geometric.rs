//! Numerical geometric measure `E_g = -log2 max |⟨φ_1 ⊗ … ⊗ φ_n|ψ⟩|²` by
//! alternating single-qubit maximization.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stabilizer::dense;

/// Sweep cap per restart.
pub const MAX_SWEEPS: usize = 500;

const NORM_TOLERANCE: f64 = 1e-9;
const DISAGREEMENT: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeometricEstimate {
    pub e_g: f64,
    pub max_overlap: f64,
    pub restarts: usize,
    /// Best restart index (lowest on ties).
    pub best_restart: usize,
    /// Restarts whose last sweep still improved by more than the tolerance.
    pub unconverged: usize,
    /// Set when restarts end more than `1e-6` apart in overlap.
    pub restarts_disagree: bool,
}

type Qubit = [Complex64; 2];

fn random_qubit<R: Rng>(rng: &mut R) -> Qubit {
    loop {
        let v = [
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
        ];
        let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        if norm > 1e-3 {
            return [v[0] / norm, v[1] / norm];
        }
    }
}

/// `⟨⊗_{j≠q} φ_j| ψ⟩` as a vector on qubit `q`.
fn contract(psi: &[Complex64], phis: &[Qubit], q: usize) -> Qubit {
    let mut v = [Complex64::new(0.0, 0.0); 2];
    for (x, amp) in psi.iter().enumerate() {
        if amp.norm_sqr() == 0.0 {
            continue;
        }
        let mut c = *amp;
        for (j, phi) in phis.iter().enumerate() {
            if j != q {
                c *= phi[x >> j & 1].conj();
            }
        }
        v[x >> q & 1] += c;
    }
    v
}

/// Returns the final overlap and whether the sweep loop converged.
fn ascend(psi: &[Complex64], n: usize, tolerance: f64, rng: &mut ChaCha8Rng) -> (f64, bool) {
    let mut phis: Vec<Qubit> = (0..n).map(|_| random_qubit(rng)).collect();
    let mut last = 0.0;
    for _ in 0..MAX_SWEEPS {
        let mut overlap = 0.0;
        for q in 0..n {
            let v = contract(psi, &phis, q);
            let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
            overlap = norm * norm;
            if norm > 0.0 {
                phis[q] = [v[0] / norm, v[1] / norm];
            } else {
                phis[q] = random_qubit(rng);
            }
        }
        if (overlap - last).abs() <= tolerance {
            return (overlap, true);
        }
        last = overlap;
    }
    (last, false)
}

/// Best of `restarts` random starts. Deterministic for a given `seed`.
pub fn geometric_oracle(state: &[Complex64], restarts: usize, tolerance: f64, seed: u64) -> Result<GeometricEstimate> {
    let len = state.len();
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::Malformed(format!("state length {len} is not 2^n with n >= 1")));
    }
    let n = len.trailing_zeros() as usize;
    dense::check_cap(n)?;
    let norm = dense::norm_sqr(state);
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::NotNormalized(norm));
    }
    if restarts == 0 {
        return Err(Error::OutOfRange("at least one restart is needed".into()));
    }
    let runs: Vec<(f64, bool)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(r as u64);
            ascend(state, n, tolerance, &mut rng)
        })
        .collect();
    let mut best_restart = 0;
    for (i, run) in runs.iter().enumerate() {
        if run.0 > runs[best_restart].0 {
            best_restart = i;
        }
    }
    let max_overlap = runs[best_restart].0.min(1.0);
    let worst = runs.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
    Ok(GeometricEstimate {
        e_g: -max_overlap.log2(),
        max_overlap,
        restarts,
        best_restart,
        unconverged: runs.iter().filter(|r| !r.1).count(),
        restarts_disagree: max_overlap - worst > DISAGREEMENT,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, Family, Graph};
    use crate::stabilizer::{statevector, GraphStateIndex};

    fn graph_state(g: &Graph) -> Vec<Complex64> {
        statevector(g, GraphStateIndex::zero(g.n())).unwrap()
    }

    #[test]
    fn small_graph_states() {
        let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let est = geometric_oracle(&graph_state(&edge), 8, 1e-12, 0).unwrap();
        assert!((est.e_g - 1.0).abs() < 1e-6, "{est:?}");

        let ghz = build_family(&Family::GhzStar { n: 4 }).unwrap();
        let est = geometric_oracle(&graph_state(&ghz), 8, 1e-12, 1).unwrap();
        assert!((est.e_g - 1.0).abs() < 1e-6, "{est:?}");

        let product = Graph::empty(3).unwrap();
        let est = geometric_oracle(&graph_state(&product), 4, 1e-12, 2).unwrap();
        assert!(est.e_g.abs() < 1e-9);

        let path = build_family(&Family::Cluster1d { n: 4 }).unwrap();
        let est = geometric_oracle(&graph_state(&path), 16, 1e-12, 3).unwrap();
        assert!((est.e_g - 2.0).abs() < 1e-3, "{est:?}");
    }

    #[test]
    fn deterministic_for_seed() {
        let g = build_family(&Family::Ring { n: 5 }).unwrap();
        let a = geometric_oracle(&graph_state(&g), 6, 1e-12, 42).unwrap();
        let b = geometric_oracle(&graph_state(&g), 6, 1e-12, 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_input() {
        let bad = vec![Complex64::new(1.0, 0.0); 4];
        assert!(matches!(geometric_oracle(&bad, 4, 1e-12, 0), Err(Error::NotNormalized(_))));
        let odd = vec![Complex64::new(1.0, 0.0); 3];
        assert!(geometric_oracle(&odd, 4, 1e-12, 0).is_err());
        let big = vec![Complex64::new(0.0, 0.0); 1 << 13];
        assert!(matches!(geometric_oracle(&big, 4, 1e-12, 0), Err(Error::OracleCap { .. })));
    }
}
