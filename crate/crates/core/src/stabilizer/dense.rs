//! Dense state vectors for small graph states. Basis index bit `q` is the
//! computational value of qubit `q`.

use num_complex::Complex64;

use super::pauli::PauliString;
use super::tableau::GraphStateIndex;
use crate::error::{Error, Result};
use crate::graph::{BitIter, Graph};

/// Largest qubit count handled densely.
pub const ORACLE_CAP: usize = 12;

pub(crate) fn check_cap(n: usize) -> Result<()> {
    if n > ORACLE_CAP {
        Err(Error::OracleCap { n, cap: ORACLE_CAP })
    } else {
        Ok(())
    }
}

/// Amplitudes of `∏ Z_i^{k_i} ∏_{edges} CZ |+⟩^{⊗n}`.
pub fn statevector(g: &Graph, k: GraphStateIndex) -> Result<Vec<Complex64>> {
    let n = g.n();
    check_cap(n)?;
    if k.n != n {
        return Err(Error::SizeMismatch(k.n, n));
    }
    let edges = g.edges();
    let amp = (0.5f64).powf(n as f64 / 2.0);
    Ok((0u64..1 << n)
        .map(|x| {
            let cz = edges.iter().filter(|&&(i, j)| x >> i & x >> j & 1 == 1).count();
            let z = (x & k.bits).count_ones() as usize;
            let sign = if (cz + z) % 2 == 0 { 1.0 } else { -1.0 };
            Complex64::new(sign * amp, 0.0)
        })
        .collect())
}

/// `⟨a|b⟩`.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm_sqr(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum()
}

/// `⟨G1_{k1}|G2_{k2}⟩`.
pub fn overlap(g1: &Graph, k1: GraphStateIndex, g2: &Graph, k2: GraphStateIndex) -> Result<Complex64> {
    if g1.n() != g2.n() {
        return Err(Error::SizeMismatch(g1.n(), g2.n()));
    }
    Ok(inner(&statevector(g1, k1)?, &statevector(g2, k2)?))
}

/// Applies a Pauli string to a dense state.
pub fn apply_pauli(p: &PauliString, state: &[Complex64]) -> Vec<Complex64> {
    let i = Complex64::i();
    let mut out = vec![Complex64::new(0.0, 0.0); state.len()];
    for (x, &amp) in state.iter().enumerate() {
        let x = x as u64;
        // Z then X per qubit; Y = iXZ
        let mut a = amp;
        if (x & p.z).count_ones() % 2 == 1 {
            a = -a;
        }
        for _ in 0..(p.x & p.z).count_ones() {
            a *= i;
        }
        if p.negative {
            a = -a;
        }
        out[(x ^ p.x) as usize] += a;
    }
    out
}

/// Applies the local Clifford `exp(-iπ/4 X_v) ∏_{j∈N(v)} exp(iπ/4 Z_j)` of
/// `g` densely.
pub fn apply_lc_unitary(g: &Graph, v: usize, state: &[Complex64]) -> Vec<Complex64> {
    let phase = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    let mut out: Vec<Complex64> = state
        .iter()
        .enumerate()
        .map(|(x, &a)| {
            BitIter(g.rows()[v]).fold(a, |acc, j| if x >> j & 1 == 0 { acc * phase } else { acc * phase.conj() })
        })
        .collect();
    let c = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let s = Complex64::new(0.0, -std::f64::consts::FRAC_1_SQRT_2);
    let bit = 1usize << v;
    for x in 0..out.len() {
        if x & bit == 0 {
            let (a0, a1) = (out[x], out[x | bit]);
            out[x] = c * a0 + s * a1;
            out[x | bit] = s * a0 + c * a1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabilizer::generators_of;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn statevector_examples() {
        let single = statevector(&Graph::empty(1).unwrap(), GraphStateIndex::zero(1)).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(single[0], r.into()) && close(single[1], r.into()));
        let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let bell = statevector(&edge, GraphStateIndex::zero(2)).unwrap();
        let expected = [0.5, 0.5, 0.5, -0.5];
        for (a, e) in bell.iter().zip(expected) {
            assert!(close(*a, e.into()));
        }
        assert!(statevector(&Graph::empty(13).unwrap(), GraphStateIndex::zero(13)).is_err());
    }

    #[test]
    fn overlap_examples() {
        let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let empty = Graph::empty(2).unwrap();
        let z = GraphStateIndex::zero(2);
        assert!(close(overlap(&edge, z, &empty, z).unwrap(), 0.5.into()));
        assert!(close(overlap(&edge, z, &edge, z).unwrap(), 1.0.into()));
        for bits in 1..4 {
            let k = GraphStateIndex::new(2, bits).unwrap();
            assert!(close(overlap(&edge, z, &edge, k).unwrap(), 0.0.into()));
        }
        assert!(overlap(&edge, z, &Graph::empty(3).unwrap(), GraphStateIndex::zero(3)).is_err());
    }

    #[test]
    fn graph_states_satisfy_eigen_equations() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 2)]).unwrap();
        let gens = generators_of(&g);
        for bits in 0..16 {
            let k = GraphStateIndex::new(4, bits).unwrap();
            let psi = statevector(&g, k).unwrap();
            assert!((norm_sqr(&psi) - 1.0).abs() < 1e-12);
            for (i, gen) in gens.generators().iter().enumerate() {
                let sign = if k.bit(i) == 1 { -1.0 } else { 1.0 };
                let applied = apply_pauli(gen, &psi);
                for (a, b) in applied.iter().zip(&psi) {
                    assert!(close(*a, b * sign));
                }
            }
        }
    }

    #[test]
    fn y_application() {
        // Y|0⟩ = i|1⟩
        let y: PauliString = "Y".parse().unwrap();
        let out = apply_pauli(&y, &[1.0.into(), 0.0.into()]);
        assert!(close(out[1], Complex64::i()) && close(out[0], 0.0.into()));
    }
}
