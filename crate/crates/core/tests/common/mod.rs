#![allow(dead_code)]

use graphent::stabilizer::statevector;
use graphent::{build_family, Family, Graph, GraphStateIndex, VertexSet};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn family(f: Family) -> Graph {
    build_family(&f).unwrap()
}

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Erdős–Rényi graph with a per-graph edge probability in `[0.1, 0.9)`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let p: f64 = rng.gen_range(0.1..0.9);
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Families with at most `max_n` vertices.
pub fn family_suite(max_n: usize) -> Vec<Family> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.push(Family::Cluster1d { n });
        if n >= 2 {
            out.push(Family::GhzStar { n });
            out.push(Family::GhzComplete { n });
        }
        if n >= 3 {
            out.push(Family::Ring { n });
        }
    }
    for rows in 2..=6 {
        for cols in rows..=6 {
            if rows * cols <= max_n {
                out.push(Family::Cluster2d { rows, cols });
            }
        }
    }
    if max_n >= 8 {
        out.push(Family::Cluster3d { rows: 2, cols: 2, layers: 2 });
    }
    if max_n >= 7 {
        out.push(Family::Steane7);
    }
    out
}

/// `log2` of the Schmidt rank across `side`, from the SVD of the reshaped
/// state vector. Graph-state amplitudes are real.
pub fn schmidt_exponent(g: &Graph, side: VertexSet) -> usize {
    let n = g.n();
    let psi = statevector(g, GraphStateIndex::zero(n)).unwrap();
    let a = side.to_vec();
    let b = side.complement(n).to_vec();
    let mut m = DMatrix::<f64>::zeros(1 << a.len(), 1 << b.len());
    for (x, amp) in psi.iter().enumerate() {
        let row = a.iter().enumerate().fold(0, |r, (t, &q)| r | (x >> q & 1) << t);
        let col = b.iter().enumerate().fold(0, |c, (t, &q)| c | (x >> q & 1) << t);
        m[(row, col)] = amp.re;
    }
    let rank = m.singular_values().iter().filter(|&&s| s > 1e-9).count();
    assert!(rank.is_power_of_two(), "Schmidt rank {rank} of a graph state is a power of two");
    rank.trailing_zeros() as usize
}
