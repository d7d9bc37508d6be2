//! Exact maximum independent set by branch and bound on bitsets.
//!
//! The bound is a greedy clique cover of the candidate set (an independent
//! set meets every clique at most once). Branching picks the candidate of
//! highest remaining degree and tries "include" before "exclude". A second
//! pass fixes vertices in ascending order so that the returned set is the
//! lexicographically smallest maximum independent set.

use super::{BitIter, Graph, VertexSet};

/// Default limit on search nodes.
pub const DEFAULT_MIS_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MisResult {
    pub set: VertexSet,
    /// True when the search finished, so `set` is a maximum independent set.
    pub certified: bool,
    pub nodes: u64,
}

struct Search<'a> {
    rows: &'a [u64],
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl Search<'_> {
    fn clique_cover(&self, cand: u64) -> usize {
        let mut remaining = cand;
        let mut count = 0;
        while remaining != 0 {
            let v = remaining.trailing_zeros() as usize;
            let mut clique = 1u64 << v;
            let mut common = self.rows[v] & remaining;
            while common != 0 {
                let u = common.trailing_zeros() as usize;
                clique |= 1 << u;
                common &= self.rows[u];
            }
            remaining &= !clique;
            count += 1;
        }
        count
    }

    /// Extends `chosen` within `cand`; records any set larger than `best`.
    /// Returns true once `best.0 >= stop_at`.
    fn expand(&mut self, mut cand: u64, mut chosen: u64, best: &mut (usize, u64), stop_at: usize) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return false;
        }
        // vertices of degree <= 1 inside cand belong to some maximum set
        loop {
            let mut changed = false;
            for v in BitIter(cand) {
                if cand >> v & 1 == 0 {
                    continue;
                }
                let nb = self.rows[v] & cand;
                if nb.count_ones() <= 1 {
                    chosen |= 1 << v;
                    cand &= !(nb | 1 << v);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let size = chosen.count_ones() as usize;
        if cand == 0 {
            if size > best.0 {
                *best = (size, chosen);
            }
            return best.0 >= stop_at;
        }
        if size + self.clique_cover(cand) <= best.0 {
            return false;
        }
        let pivot = BitIter(cand)
            .max_by_key(|&v| ((self.rows[v] & cand).count_ones(), std::cmp::Reverse(v)))
            .expect("cand is non-empty");
        let include = cand & !(self.rows[pivot] | 1 << pivot);
        if self.expand(include, chosen | 1 << pivot, best, stop_at) {
            return true;
        }
        if self.exhausted {
            return false;
        }
        self.expand(cand & !(1 << pivot), chosen, best, stop_at)
    }

    fn greedy(&self, mut cand: u64) -> u64 {
        let mut chosen = 0;
        while cand != 0 {
            let v = BitIter(cand).min_by_key(|&v| ((self.rows[v] & cand).count_ones(), v)).unwrap();
            chosen |= 1 << v;
            cand &= !(self.rows[v] | 1 << v);
        }
        chosen
    }
}

/// Maximum independent set with a search-node budget.
///
/// On budget exhaustion the best set found so far is returned with
/// `certified = false`; it is always independent.
pub fn max_independent_set(g: &Graph, budget: u64) -> MisResult {
    let rows = g.rows();
    let all = g.all_vertices().0;
    let mut search = Search { rows, nodes: 0, budget, exhausted: false };

    let seed = search.greedy(all);
    let mut best = (seed.count_ones() as usize, seed);
    search.expand(all, 0, &mut best, usize::MAX);
    if search.exhausted {
        return MisResult { set: VertexSet(best.1), certified: false, nodes: search.nodes };
    }
    let alpha = best.0;

    // fix vertices in ascending order; each step asks whether a set of the
    // remaining size still fits
    let mut fixer = Search { rows, nodes: 0, budget, exhausted: false };
    let mut chosen = 0u64;
    let mut cand = all;
    for v in 0..g.n() {
        let have = chosen.count_ones() as usize;
        if have == alpha {
            break;
        }
        if cand >> v & 1 == 0 {
            continue;
        }
        let rest = cand & !(rows[v] | 1 << v);
        let need = alpha - have - 1;
        let feasible = need == 0 || {
            let mut found = (need - 1, 0u64);
            fixer.expand(rest, 0, &mut found, need) && found.0 >= need
        };
        if fixer.exhausted {
            return MisResult { set: VertexSet(best.1), certified: true, nodes: search.nodes + fixer.nodes };
        }
        if feasible {
            chosen |= 1 << v;
            cand = rest;
        } else {
            cand &= !(1 << v);
        }
    }
    debug_assert_eq!(chosen.count_ones() as usize, alpha);
    MisResult { set: VertexSet(chosen), certified: true, nodes: search.nodes + fixer.nodes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, Family};

    /// Exhaustive oracle: largest independent subset, ties to the
    /// lexicographically smallest member list.
    fn brute_force(g: &Graph) -> VertexSet {
        let mut best = VertexSet::EMPTY;
        for mask in 0u64..(1 << g.n()) {
            let s = VertexSet(mask);
            if g.find_internal_edge(s).is_some() {
                continue;
            }
            if s.len() > best.len() || (s.len() == best.len() && s.lex_cmp(best).is_lt()) {
                best = s;
            }
        }
        best
    }

    #[test]
    fn family_examples() {
        for n in 3..8 {
            let k = build_family(&Family::GhzComplete { n }).unwrap();
            assert_eq!(max_independent_set(&k, DEFAULT_MIS_BUDGET).set.len(), 1);
            let star = build_family(&Family::GhzStar { n }).unwrap();
            let r = max_independent_set(&star, DEFAULT_MIS_BUDGET);
            assert_eq!(r.set, VertexSet::from_vertices(1..n));
            assert!(r.certified);
        }
        let ring6 = build_family(&Family::Ring { n: 6 }).unwrap();
        assert_eq!(max_independent_set(&ring6, DEFAULT_MIS_BUDGET).set.to_vec(), vec![0, 2, 4]);
    }

    #[test]
    fn grid_sizes() {
        let g = build_family(&Family::Cluster2d { rows: 5, cols: 5 }).unwrap();
        let r = max_independent_set(&g, DEFAULT_MIS_BUDGET);
        assert!(r.certified);
        assert_eq!(r.set.len(), 13);
        let cube = build_family(&Family::Cluster3d { rows: 3, cols: 3, layers: 3 }).unwrap();
        assert_eq!(max_independent_set(&cube, DEFAULT_MIS_BUDGET).set.len(), 14);
    }

    #[test]
    fn tiny_budget_degrades_certification_only() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut edges = Vec::new();
        for i in 0..50 {
            for j in i + 1..50 {
                if rng.gen_bool(0.2) {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::from_edges(50, &edges).unwrap();
        let r = max_independent_set(&g, 2);
        assert!(!r.certified);
        assert!(g.is_independent(r.set).unwrap());
    }

    #[test]
    fn single_vertex() {
        let g = Graph::empty(1).unwrap();
        assert_eq!(max_independent_set(&g, 10).set.to_vec(), vec![0]);
    }

    proptest::proptest! {
        #[test]
        fn matches_exhaustive_enumeration(n in 1usize..=12, bits in proptest::collection::vec(proptest::bool::weighted(0.35), 66)) {
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        edges.push((i, j));
                    }
                    k += 1;
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let r = max_independent_set(&g, DEFAULT_MIS_BUDGET);
            proptest::prop_assert!(r.certified);
            proptest::prop_assert!(g.is_independent(r.set).unwrap());
            proptest::prop_assert_eq!(r.set, brute_force(&g));
            if let Some(c) = g.two_color() {
                proptest::prop_assert!(r.set.len() >= c.amber.len());
            }
        }
    }
}
