//! Simple undirected graphs on at most 64 vertices, stored as bitset rows.

mod family;
mod mis;

pub use family::{build_family, Family};
pub use mis::{max_independent_set, MisResult, DEFAULT_MIS_BUDGET};

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported vertex count (one machine word per adjacency row).
pub const MAX_VERTICES: usize = 64;

/// A subset of vertices in bitmask form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> Self {
        VertexSet(full_mask(n))
    }

    pub fn from_vertices(vs: impl IntoIterator<Item = usize>) -> Self {
        VertexSet(vs.into_iter().fold(0, |m, v| m | (1u64 << v)))
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn complement(self, n: usize) -> Self {
        VertexSet(!self.0 & full_mask(n))
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        BitIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Compares two sets by their sorted member lists.
    pub fn lex_cmp(self, other: VertexSet) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }

    pub fn check_within(self, n: usize) -> Result<()> {
        let extra = self.0 & !full_mask(n);
        if extra != 0 {
            return Err(Error::VertexOutOfRange { vertex: extra.trailing_zeros() as usize, n });
        }
        Ok(())
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let vs = Vec::<usize>::deserialize(d)?;
        if let Some(&v) = vs.iter().find(|&&v| v >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex {v} out of range")));
        }
        Ok(VertexSet::from_vertices(vs))
    }
}

pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Two-colouring of a bipartite graph. `amber` is the larger class within
/// every connected component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub amber: VertexSet,
    pub blue: VertexSet,
}

/// Simple undirected graph. Row `i` holds the neighbourhood of `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::BadVertexCount { n, max: MAX_VERTICES });
        }
        Ok(Graph { n, rows: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(i, j) in edges {
            g.check_vertex(i)?;
            g.check_vertex(j)?;
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            if g.has_edge(i, j) {
                return Err(Error::DuplicateEdge(i.min(j), i.max(j)));
            }
            g.set_edge(i, j, true);
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows, checking symmetry and the diagonal.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        let g = Graph { n, rows };
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::BadVertexCount { n, max: MAX_VERTICES });
        }
        for i in 0..n {
            if g.rows[i] & !full_mask(n) != 0 {
                return Err(Error::VertexOutOfRange {
                    vertex: (g.rows[i] & !full_mask(n)).trailing_zeros() as usize,
                    n,
                });
            }
            if g.has_edge(i, i) {
                return Err(Error::SelfLoop(i));
            }
            for j in 0..n {
                if g.has_edge(i, j) != g.has_edge(j, i) {
                    return Err(Error::Malformed(format!("adjacency not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Adjacency rows as bitmasks.
    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    #[inline]
    pub fn neighbours(&self, v: usize) -> VertexSet {
        VertexSet(self.rows[v])
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|i| BitIter(self.rows[i] & !full_mask(i + 1)).map(move |j| (i, j))).collect()
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    fn set_edge(&mut self, i: usize, j: usize, on: bool) {
        if on {
            self.rows[i] |= 1 << j;
            self.rows[j] |= 1 << i;
        } else {
            self.rows[i] &= !(1 << j);
            self.rows[j] &= !(1 << i);
        }
    }

    /// Complements the subgraph induced on the neighbourhood of `v`.
    pub fn local_complement(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let nb = self.rows[v];
        let mut rows = self.rows.clone();
        for u in BitIter(nb) {
            rows[u] ^= nb & !(1u64 << u);
        }
        Ok(Graph { n: self.n, rows })
    }

    /// Flips the edge `(i, j)`; this is what a CZ gate does to a graph state.
    pub fn toggle_edge(&self, i: usize, j: usize) -> Result<Graph> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(Error::SelfLoop(i));
        }
        let mut g = self.clone();
        let on = !g.has_edge(i, j);
        g.set_edge(i, j, on);
        Ok(g)
    }

    /// Block-diagonal union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::BadVertexCount { n, max: MAX_VERTICES });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|r| r << self.n));
        Ok(Graph { n, rows })
    }

    pub fn is_independent(&self, s: VertexSet) -> Result<bool> {
        s.check_within(self.n)?;
        Ok(self.find_internal_edge(s).is_none())
    }

    /// Returns some edge with both endpoints in `s`.
    pub fn find_internal_edge(&self, s: VertexSet) -> Option<(usize, usize)> {
        s.iter().find_map(|v| {
            let inside = self.rows[v] & s.0;
            (inside != 0).then(|| (v, inside.trailing_zeros() as usize))
        })
    }

    /// BFS two-colouring; `None` when an odd cycle exists. Within each
    /// component the larger class becomes amber (ties go to the class that
    /// holds the component's smallest vertex).
    pub fn two_color(&self) -> Option<Coloring> {
        let mut side = vec![u8::MAX; self.n];
        let mut amber = 0u64;
        let mut blue = 0u64;
        for start in 0..self.n {
            if side[start] != u8::MAX {
                continue;
            }
            let mut class = [0u64; 2];
            side[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                class[side[u] as usize] |= 1 << u;
                for w in BitIter(self.rows[u]) {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return None;
                    }
                }
            }
            if class[1].count_ones() > class[0].count_ones() {
                class.swap(0, 1);
            }
            amber |= class[0];
            blue |= class[1];
        }
        Some(Coloring { amber: VertexSet(amber), blue: VertexSet(blue) })
    }

    /// Key used to deduplicate graphs on a fixed labelling.
    pub fn canonical_key(&self) -> Vec<u64> {
        (0..self.n).map(|i| self.rows[i] & !full_mask(i + 1)).collect()
    }
}

/// Graph interchange format: `{"n": 4, "edges": [[0,1],[1,2]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson { n: g.n, edges: g.edges().into_iter().map(|(i, j)| [i, j]).collect() }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;
    fn try_from(j: GraphJson) -> Result<Graph> {
        let edges: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(j.n, &edges)
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        Graph::try_from(j).map_err(serde::de::Error::custom)
    }
}

impl Graph {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Graph> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }
}
