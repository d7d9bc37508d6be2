//! Cross-checks of the stabilizer and combinatorial code against dense
//! state-vector and brute-force computations.

mod common;

use common::{family, random_graph, rng, schmidt_exponent};
use graphent::bounds::{coloring_lower_bound, matching_upper_bound, MatchingOptions, MatchingStrategy};
use graphent::locc::discrimination_protocol;
use graphent::measures::{closest_separable_state, geometric_oracle};
use graphent::stabilizer::{cut_rank_masks, dense, statevector, Eigenvalue};
use graphent::{Family, Graph, GraphStateIndex, PauliString, StabilizerTableau, VertexSet};
use nalgebra::DMatrix;
use rand::Rng;
use std::collections::BTreeMap;

fn random_index<R: Rng>(r: &mut R, n: usize) -> GraphStateIndex {
    GraphStateIndex::new(n, r.gen::<u64>() & ((1u64 << n) - 1)).unwrap()
}

#[test]
fn cut_rank_matches_schmidt_rank() {
    let mut r = rng(11, 0);
    for _ in 0..40 {
        let n = r.gen_range(2..=8);
        let g = random_graph(&mut r, n);
        for side in 1..(1u64 << (n - 1)) {
            assert_eq!(cut_rank_masks(&g, VertexSet(side)), schmidt_exponent(&g, VertexSet(side)));
        }
    }
}

#[test]
fn reduced_spectrum_is_flat() {
    let g = family(Family::Cluster2d { rows: 2, cols: 4 });
    let psi = statevector(&g, GraphStateIndex::zero(8)).unwrap();
    for side in [0b0000_1111u64, 0b0101_0101, 0b0000_0001, 0b0110_0110] {
        let a: Vec<usize> = VertexSet(side).to_vec();
        let b: Vec<usize> = VertexSet(side).complement(8).to_vec();
        let mut m = DMatrix::<f64>::zeros(1 << a.len(), 1 << b.len());
        for (x, amp) in psi.iter().enumerate() {
            let row = a.iter().enumerate().fold(0, |acc, (t, &q)| acc | (x >> q & 1) << t);
            let col = b.iter().enumerate().fold(0, |acc, (t, &q)| acc | (x >> q & 1) << t);
            m[(row, col)] = amp.re;
        }
        let nonzero: Vec<f64> = m.singular_values().iter().map(|s| s * s).filter(|&p| p > 1e-9).collect();
        let expected = 1.0 / nonzero.len() as f64;
        assert_eq!(nonzero.len(), 1 << cut_rank_masks(&g, VertexSet(side)));
        assert!(nonzero.iter().all(|p| (p - expected).abs() < 1e-12));
    }
}

#[test]
fn lc_unitary_matches_dense_action() {
    let mut r = rng(12, 0);
    for _ in 0..60 {
        let n = r.gen_range(2..=7);
        let g = random_graph(&mut r, n);
        let k = random_index(&mut r, n);
        let v = r.gen_range(0..n);
        let tableau = StabilizerTableau::graph_state(&g, k).unwrap().apply_lc_unitary(v).unwrap();
        let (g_prime, k_prime) = tableau.graph_form().unwrap();
        assert_eq!(g_prime, g.local_complement(v).unwrap());
        let moved = dense::apply_lc_unitary(&g, v, &statevector(&g, k).unwrap());
        let target = statevector(&g_prime, k_prime).unwrap();
        assert!((dense::inner(&target, &moved).norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn measuring_generators_recovers_index() {
    let mut r = rng(13, 0);
    for _ in 0..50 {
        let n = r.gen_range(1..=20);
        let g = random_graph(&mut r, n);
        let k = random_index(&mut r, n);
        let mut t = StabilizerTableau::graph_state(&g, k).unwrap();
        let generators: Vec<PauliString> = t.generators().to_vec();
        for (i, gen) in generators.iter().enumerate() {
            let unsigned = PauliString { negative: false, ..*gen };
            let m = t.measure(&unsigned, &mut r).unwrap();
            assert!(m.deterministic);
            assert_eq!(m.outcome == Eigenvalue::Minus, k.bit(i) == 1);
        }
    }
}

#[test]
fn statevector_obeys_generator_equations() {
    let mut r = rng(14, 0);
    for _ in 0..20 {
        let n = r.gen_range(1..=8);
        let g = random_graph(&mut r, n);
        let k = random_index(&mut r, n);
        let psi = statevector(&g, k).unwrap();
        for gen in StabilizerTableau::graph_state(&g, k).unwrap().generators() {
            let out = dense::apply_pauli(gen, &psi);
            assert!((dense::inner(&psi, &out).re - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn independent_set_matches_brute_force() {
    let mut r = rng(15, 0);
    for _ in 0..100 {
        let n = r.gen_range(1..=14);
        let g = random_graph(&mut r, n);
        let best = (0u64..1 << n)
            .filter(|&s| g.find_internal_edge(VertexSet(s)).is_none())
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap();
        let found = coloring_lower_bound(&g, 10_000_000);
        assert!(found.certified);
        assert_eq!(found.size(), best);
        assert!(g.is_independent(found.amber).unwrap());
    }
}

#[test]
fn heuristic_cut_never_beats_exhaustive() {
    let mut r = rng(16, 0);
    for _ in 0..30 {
        let n = r.gen_range(2..=14);
        let g = random_graph(&mut r, n);
        let exhaustive =
            matching_upper_bound(&g, &MatchingOptions { strategy: MatchingStrategy::Exhaustive, ..Default::default() })
                .unwrap();
        let heuristic = matching_upper_bound(
            &g,
            &MatchingOptions { strategy: MatchingStrategy::Heuristic, restarts: 8, ..Default::default() },
        )
        .unwrap();
        assert!(heuristic.cut_rank <= exhaustive.cut_rank);
        let brute = (1u64..(1 << (n - 1))).map(|s| cut_rank_masks(&g, VertexSet(s))).max().unwrap_or(0);
        assert_eq!(exhaustive.cut_rank, brute);
    }
}

#[test]
fn product_states_span_the_amber_eigenspace() {
    let g = family(Family::Cluster2d { rows: 2, cols: 3 });
    let a = g.two_color().unwrap().amber;
    let fixed: BTreeMap<usize, u8> = a.iter().map(|i| (i, (i % 2) as u8)).collect();
    let omega = closest_separable_state(&g, a, &fixed).unwrap();
    let vectors: Vec<_> = omega.product_states.iter().map(|p| p.statevector().unwrap()).collect();
    assert_eq!(vectors.len(), 1 << (6 - a.len()));
    let stabs = StabilizerTableau::graph_state(&g, GraphStateIndex::zero(6)).unwrap();
    for (s, v) in vectors.iter().enumerate() {
        for (t, w) in vectors.iter().enumerate() {
            let ip = dense::inner(v, w).norm();
            assert!((ip - if s == t { 1.0 } else { 0.0 }).abs() < 1e-12);
        }
        for i in a.iter() {
            let k_i = stabs.generators()[i];
            let eig = dense::inner(v, &dense::apply_pauli(&k_i, v)).re;
            let expected = if fixed[&i] == 1 { -1.0 } else { 1.0 };
            assert!((eig - expected).abs() < 1e-12);
        }
    }
    // every graph-basis state with these amber bits lies in the span
    let blue = a.complement(6).to_vec();
    for pattern in 0u64..(1 << blue.len()) {
        let mut bits = fixed.iter().fold(0u64, |m, (&i, &b)| m | (b as u64) << i);
        for (t, &q) in blue.iter().enumerate() {
            bits |= (pattern >> t & 1) << q;
        }
        let psi = statevector(&g, GraphStateIndex::new(6, bits).unwrap()).unwrap();
        let weight: f64 = vectors.iter().map(|v| dense::inner(v, &psi).norm_sqr()).sum();
        assert!((weight - 1.0).abs() < 1e-12);
    }
}

#[test]
fn protocol_observables_multiply_to_amber_generators() {
    let g = family(Family::Steane7);
    let a = g.two_color().unwrap().amber;
    let plan = discrimination_protocol(&g, a).unwrap();
    let stabs = StabilizerTableau::graph_state(&g, GraphStateIndex::zero(7)).unwrap();
    for (&i, mask) in &plan.parity_masks {
        let product = plan
            .observables()
            .into_iter()
            .filter(|(q, _, _)| mask.contains(*q))
            .fold(PauliString::identity(7), |acc, (_, _, p)| acc.mul(&p));
        assert_eq!(product, stabs.generators()[i]);
    }
}

#[test]
fn geometric_oracle_on_random_product_states_is_zero() {
    let mut r = rng(17, 0);
    let n = 5;
    let mut psi = vec![num_complex::Complex64::new(1.0, 0.0)];
    for _ in 0..n {
        let (a, b) = (r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        let norm = f64::hypot(a, b);
        let q = [a / norm, b / norm];
        psi = (0..psi.len() * 2).map(|x| psi[x % psi.len()] * q[x / psi.len()]).collect();
    }
    let est = geometric_oracle(&psi, 4, 1e-12, 0).unwrap();
    assert!(est.e_g.abs() < 1e-9);
    let g: Graph = family(Family::Cluster1d { n: 2 });
    assert!(geometric_oracle(&statevector(&g, GraphStateIndex::zero(2)).unwrap(), 4, 1e-12, 0).unwrap().e_g > 0.99);
}
