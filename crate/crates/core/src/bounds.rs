//! Colouring (lower) and cut-rank matching (upper) bounds on the number of
//! LOCC-discriminable graph states, and the entanglement sandwich they give:
//!
//! `max cut-rank = E_low <= E <= E_high = n - |A|`
//!
//! where `A` is an independent set.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{full_mask, max_independent_set, Graph, VertexSet, DEFAULT_MIS_BUDGET};
use crate::stabilizer::{cut_rank_masks, Bipartition};

/// Largest `n` for which `Auto` enumerates every bipartition.
pub const EXHAUSTIVE_THRESHOLD: usize = 24;
/// Hard limit for explicitly requested exhaustive search.
pub const EXHAUSTIVE_LIMIT: usize = 32;
pub const DEFAULT_RESTARTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColoringBound {
    /// Amber set: independent, maximum when `certified`.
    pub amber: VertexSet,
    pub certified: bool,
}

impl ColoringBound {
    /// `|A|`: at least `2^{|A|}` states are LOCC-discriminable.
    pub fn size(&self) -> usize {
        self.amber.len()
    }
}

pub fn coloring_lower_bound(g: &Graph, budget: u64) -> ColoringBound {
    let mis = max_independent_set(g, budget);
    ColoringBound { amber: mis.set, certified: mis.certified }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchingStrategy {
    /// Exhaustive up to [`EXHAUSTIVE_THRESHOLD`] vertices, heuristic above.
    Auto,
    Exhaustive,
    Heuristic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingOptions {
    pub strategy: MatchingStrategy,
    pub seed: u64,
    pub restarts: usize,
    /// Single-vertex moves per restart; `None` means `128 * n`.
    pub steps: Option<usize>,
}

impl Default for MatchingOptions {
    fn default() -> Self {
        MatchingOptions { strategy: MatchingStrategy::Auto, seed: 0, restarts: DEFAULT_RESTARTS, steps: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatchingResult {
    pub bipartition: Bipartition,
    /// Cut-rank of `bipartition`: `E_low`, the number of matched Bell pairs.
    pub cut_rank: usize,
    /// True when every bipartition was examined (or the ceiling was reached).
    pub optimal: bool,
}

/// Bipartition with the largest cut-rank found.
pub fn matching_upper_bound(g: &Graph, options: &MatchingOptions) -> Result<MatchingResult> {
    matching_with_ceiling(g, options, g.n() / 2)
}

/// As [`matching_upper_bound`], stopping as soon as `ceiling` (a proven
/// upper bound on the cut-rank) is reached.
pub fn matching_with_ceiling(g: &Graph, options: &MatchingOptions, ceiling: usize) -> Result<MatchingResult> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooFewVertices { n, min: 2 });
    }
    let ceiling = ceiling.min(n / 2);
    let exhaustive = match options.strategy {
        MatchingStrategy::Auto => n <= EXHAUSTIVE_THRESHOLD,
        MatchingStrategy::Exhaustive => {
            if n > EXHAUSTIVE_LIMIT {
                return Err(Error::OutOfRange(format!(
                    "exhaustive bipartition search is limited to {EXHAUSTIVE_LIMIT} vertices"
                )));
            }
            true
        }
        MatchingStrategy::Heuristic => false,
    };
    let (rank, side, optimal) = if exhaustive {
        let (rank, side) = exhaustive_search(g, ceiling);
        (rank, side, true)
    } else {
        let (rank, side) = local_search(g, options, ceiling);
        (rank, side, rank == ceiling)
    };
    Ok(MatchingResult { bipartition: Bipartition::new(n, VertexSet(side))?, cut_rank: rank, optimal })
}

/// Side masks never contain vertex `n-1`, so each cut is visited once.
/// Ties go to the smallest mask.
fn exhaustive_search(g: &Graph, ceiling: usize) -> (usize, u64) {
    let n = g.n();
    let total: u64 = 1 << (n - 1);
    const CHUNK: u64 = 1 << 14;
    let chunks = total.div_ceil(CHUNK);
    let batch = (rayon::current_num_threads() as u64 * 4).max(1);
    let mut best = (0usize, u64::MAX);
    let mut start_chunk = 0;
    while start_chunk < chunks {
        let end_chunk = (start_chunk + batch).min(chunks);
        let found = (start_chunk..end_chunk)
            .into_par_iter()
            .map(|c| {
                let lo = (c * CHUNK).max(1);
                let hi = ((c + 1) * CHUNK).min(total);
                let mut local = (0usize, u64::MAX);
                for side in lo..hi {
                    let r = cut_rank_masks(g, VertexSet(side));
                    if r > local.0 || local.1 == u64::MAX {
                        local = (r, side);
                        if r == ceiling {
                            break;
                        }
                    }
                }
                local
            })
            .reduce(|| (0, u64::MAX), better_cut);
        best = better_cut(best, found);
        if best.0 >= ceiling {
            break;
        }
        start_chunk = end_chunk;
    }
    best
}

/// `u64::MAX` marks "no cut seen yet".
fn better_cut(a: (usize, u64), b: (usize, u64)) -> (usize, u64) {
    if b.1 == u64::MAX {
        return a;
    }
    if a.1 == u64::MAX || b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

/// Puts the cut in the orientation whose side excludes vertex `n-1`.
fn orient(side: u64, n: usize) -> u64 {
    if side >> (n - 1) & 1 == 1 {
        !side & full_mask(n)
    } else {
        side
    }
}

fn local_search(g: &Graph, options: &MatchingOptions, ceiling: usize) -> (usize, u64) {
    let n = g.n();
    let all = full_mask(n);
    let steps = options.steps.unwrap_or(128 * n);
    let restarts = options.restarts.max(1);
    let results: Vec<(usize, u64)> = (0..restarts)
        .into_par_iter()
        .map(|restart| {
            let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
            rng.set_stream(restart as u64);
            let mut side = loop {
                let s = rng.gen::<u64>() & all;
                if s != 0 && s != all {
                    break s;
                }
            };
            let mut current = cut_rank_masks(g, VertexSet(side));
            let mut best = (current, orient(side, n));
            for _ in 0..steps {
                if best.0 >= ceiling {
                    break;
                }
                let v = rng.gen_range(0..n);
                let next = side ^ (1 << v);
                if next == 0 || next == all {
                    continue;
                }
                let r = cut_rank_masks(g, VertexSet(next));
                if r >= current {
                    side = next;
                    current = r;
                    if r > best.0 {
                        best = (r, orient(side, n));
                    }
                }
            }
            best
        })
        .collect();
    // first restart wins ties
    results.into_iter().fold((0, 0), |acc, r| if r.0 > acc.0 || acc.1 == 0 { r } else { acc })
}

/// Entanglement bounds of a graph state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub n: usize,
    /// `|A|`: `N >= 2^{|A|}` states are LOCC-discriminable.
    #[serde(rename = "lower_log_N")]
    pub lower_log_n: usize,
    /// The amber set `A`.
    pub witness_set: VertexSet,
    /// `n - E_low`: `N <= 2^{n - E_low}`.
    #[serde(rename = "upper_log_N")]
    pub upper_log_n: usize,
    /// Largest cut-rank found (ebits).
    #[serde(rename = "E_low")]
    pub e_low: usize,
    /// `n - |A|` (ebits).
    #[serde(rename = "E_high")]
    pub e_high: usize,
    pub exact: bool,
    /// Absent only for single-vertex graphs.
    pub witness_bipartition: Option<Bipartition>,
    pub certified: bool,
}

impl BoundsReport {
    /// The common value `E_g = E_R = log2(1+R)` when the bounds meet.
    pub fn value(&self) -> Option<usize> {
        self.exact.then_some(self.e_low)
    }

    pub fn interval(&self) -> (usize, usize) {
        (self.e_low, self.e_high)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    fn assemble(n: usize, amber: VertexSet, mis_certified: bool, matching: Option<&MatchingResult>) -> Self {
        let e_low = matching.map_or(0, |m| m.cut_rank);
        let e_high = n - amber.len();
        assert!(e_low <= e_high, "cut-rank {e_low} exceeds n - |A| = {e_high}");
        let exact = e_low == e_high;
        let certified = exact || (mis_certified && matching.is_none_or(|m| m.optimal));
        BoundsReport {
            n,
            lower_log_n: amber.len(),
            witness_set: amber,
            upper_log_n: n - e_low,
            e_low,
            e_high,
            exact,
            witness_bipartition: matching.map(|m| m.bipartition),
            certified,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitOptions {
    pub depth: usize,
    pub beam: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportOptions {
    pub budget_nodes: u64,
    pub matching: MatchingOptions,
    pub orbit: Option<OrbitOptions>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { budget_nodes: DEFAULT_MIS_BUDGET, matching: MatchingOptions::default(), orbit: None }
    }
}

fn base_report(g: &Graph, options: &ReportOptions) -> (BoundsReport, Option<MatchingResult>) {
    let coloring = coloring_lower_bound(g, options.budget_nodes);
    let matching = if g.n() >= 2 {
        let ceiling = g.n() - coloring.size();
        Some(matching_with_ceiling(g, &options.matching, ceiling).expect("n >= 2"))
    } else {
        None
    };
    let report = BoundsReport::assemble(g.n(), coloring.amber, coloring.certified, matching.as_ref());
    (report, matching)
}

/// Runs both bounds (and the LC orbit search when requested).
pub fn entanglement_report(g: &Graph, options: &ReportOptions) -> BoundsReport {
    match &options.orbit {
        Some(orbit) => lc_orbit_search(g, orbit.depth, orbit.beam, options).1,
        None => base_report(g, options).0,
    }
}

/// Beam search over local-complementation images of `g` for a larger amber
/// set. Cut-ranks are invariant under LC, so the matching bound of `g` is
/// reused for every orbit member. Graphs are deduplicated on their labelled
/// adjacency. Returns `g` itself unless some image strictly improves `|A|`;
/// among equally good images the smallest canonical key wins.
pub fn lc_orbit_search(g: &Graph, depth: usize, beam: usize, options: &ReportOptions) -> (Graph, BoundsReport) {
    let (base, matching) = base_report(g, options);
    let mut best = (g.clone(), coloring_lower_bound(g, options.budget_nodes));
    let mut seen: HashSet<Vec<u64>> = HashSet::from([g.canonical_key()]);
    let mut frontier = vec![g.clone()];
    for _ in 0..depth {
        let mut images = Vec::new();
        for f in &frontier {
            for v in 0..f.n() {
                let h = f.local_complement(v).expect("vertex in range");
                if seen.insert(h.canonical_key()) {
                    images.push(h);
                }
            }
        }
        if images.is_empty() {
            break;
        }
        let mut scored: Vec<(Graph, ColoringBound, Vec<u64>)> = images
            .into_par_iter()
            .map(|h| {
                let c = coloring_lower_bound(&h, options.budget_nodes);
                let key = h.canonical_key();
                (h, c, key)
            })
            .collect();
        scored.sort_by(|a, b| b.1.size().cmp(&a.1.size()).then_with(|| a.2.cmp(&b.2)));
        if let Some(top) = scored.first() {
            let improves = top.1.size() > best.1.size()
                || (top.1.size() == best.1.size() && best.0 != *g && top.2 < best.0.canonical_key());
            if improves {
                best = (top.0.clone(), top.1);
            }
        }
        scored.truncate(beam.max(1));
        frontier = scored.into_iter().map(|s| s.0).collect();
    }
    if best.0 == *g {
        return (g.clone(), base);
    }
    let report = BoundsReport::assemble(g.n(), best.1.amber, best.1.certified, matching.as_ref());
    (best.0, report)
}
