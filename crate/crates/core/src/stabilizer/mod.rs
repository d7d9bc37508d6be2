//! Pauli algebra and stabilizer simulation for graph states.

pub mod dense;
mod pauli;
mod tableau;

pub use dense::{overlap, statevector, ORACLE_CAP};
pub use pauli::PauliString;
pub use tableau::{generators_of, Eigenvalue, GraphStateIndex, Measurement, StabilizerTableau};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2;
use crate::graph::{Graph, VertexSet};

/// A cut of the vertex set into two non-empty sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bipartition {
    pub side_a: VertexSet,
    pub side_b: VertexSet,
}

impl Bipartition {
    pub fn new(n: usize, side_a: VertexSet) -> Result<Self> {
        side_a.check_within(n)?;
        let side_b = side_a.complement(n);
        if side_a.is_empty() || side_b.is_empty() {
            return Err(Error::BadBipartition("both sides must be non-empty".into()));
        }
        Ok(Bipartition { side_a, side_b })
    }

    fn check(&self, n: usize) -> Result<()> {
        let all = VertexSet::full(n);
        if self.side_a.0 & self.side_b.0 != 0 || (self.side_a.0 | self.side_b.0) != all.0 {
            return Err(Error::BadBipartition("sides must partition the vertex set".into()));
        }
        if self.side_a.is_empty() || self.side_b.is_empty() {
            return Err(Error::BadBipartition("both sides must be non-empty".into()));
        }
        Ok(())
    }
}

/// GF(2) rank of the adjacency block between `side` and its complement.
/// No validation; `side` may be empty or full (rank 0).
#[inline]
pub fn cut_rank_masks(g: &Graph, side: VertexSet) -> usize {
    let other = side.complement(g.n()).0;
    let rows = g.rows();
    // rank is symmetric; use the smaller side as rows
    if side.len() <= g.n() - side.len() {
        gf2::masked_rank(side.iter().map(|v| rows[v]), other)
    } else {
        gf2::masked_rank(VertexSet(other).iter().map(|v| rows[v]), side.0)
    }
}

/// Number of Bell pairs of the graph state across `p`.
pub fn cut_rank(g: &Graph, p: &Bipartition) -> Result<usize> {
    p.check(g.n())?;
    Ok(cut_rank_masks(g, p.side_a))
}
