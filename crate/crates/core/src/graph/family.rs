use serde::{Deserialize, Serialize};

use super::{Graph, VertexSet};
use crate::error::{Error, Result};

/// Named graph families.
///
/// Numbering: grids are row-major, and 3D grids stack layers of row-major
/// planes (`index = (layer * rows + row) * cols + col`). Vertex 0 is the
/// centre of `GhzStar`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Cluster1d { n: usize },
    Cluster2d { rows: usize, cols: usize },
    Cluster3d { rows: usize, cols: usize, layers: usize },
    GhzStar { n: usize },
    GhzComplete { n: usize },
    Ring { n: usize },
    Steane7,
    EdgeList { n: usize, edges: Vec<(usize, usize)> },
}

impl Family {
    pub fn label(&self) -> String {
        match self {
            Family::Cluster1d { n } => format!("cluster1d({n})"),
            Family::Cluster2d { rows, cols } => format!("cluster2d({rows}x{cols})"),
            Family::Cluster3d { rows, cols, layers } => format!("cluster3d({rows}x{cols}x{layers})"),
            Family::GhzStar { n } => format!("ghz_star({n})"),
            Family::GhzComplete { n } => format!("ghz_complete({n})"),
            Family::Ring { n } => format!("ring({n})"),
            Family::Steane7 => "steane7".to_string(),
            Family::EdgeList { n, .. } => format!("edge_list({n})"),
        }
    }
}

fn positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        Err(Error::BadFamily(format!("{name} must be at least 1")))
    } else {
        Ok(())
    }
}

fn grid(rows: usize, cols: usize, layers: usize) -> Result<Graph> {
    positive("rows", rows)?;
    positive("cols", cols)?;
    positive("layers", layers)?;
    let n = rows
        .checked_mul(cols)
        .and_then(|v| v.checked_mul(layers))
        .ok_or_else(|| Error::BadFamily("grid too large".into()))?;
    let idx = |l: usize, r: usize, c: usize| (l * rows + r) * cols + c;
    let mut edges = Vec::new();
    for l in 0..layers {
        for r in 0..rows {
            for c in 0..cols {
                if c + 1 < cols {
                    edges.push((idx(l, r, c), idx(l, r, c + 1)));
                }
                if r + 1 < rows {
                    edges.push((idx(l, r, c), idx(l, r + 1, c)));
                }
                if l + 1 < layers {
                    edges.push((idx(l, r, c), idx(l + 1, r, c)));
                }
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Graph form of the Steane [[7,1,3]] codeword state.
///
/// Vertices 0..3 carry the weight-one columns (1, 2, 4) of the Hamming
/// parity-check matrix; vertices 3..7 carry the columns 3, 5, 6, 7 and are
/// joined to the bits set in their column index. Hadamards on 3..7 map the
/// graph generators onto the code's X- and Z-type checks.
fn steane7() -> Result<Graph> {
    const COLUMNS: [u64; 4] = [0b011, 0b101, 0b110, 0b111];
    let mut edges = Vec::new();
    for (q, col) in COLUMNS.iter().enumerate() {
        for p in 0..3 {
            if col >> p & 1 == 1 {
                edges.push((p, 3 + q));
            }
        }
    }
    let g = Graph::from_edges(7, &edges)?;
    validate_steane(&g)?;
    Ok(g)
}

fn validate_steane(g: &Graph) -> Result<()> {
    let coloring = g.two_color().ok_or_else(|| Error::SteaneValidation("not two-colourable".into()))?;
    if coloring.amber.len() != 4 {
        return Err(Error::SteaneValidation(format!("amber class has {} vertices, expected 4", coloring.amber.len())));
    }
    let mis = super::max_independent_set(g, super::DEFAULT_MIS_BUDGET);
    if mis.set.len() != 4 {
        return Err(Error::SteaneValidation(format!(
            "maximum independent set has {} vertices, expected 4",
            mis.set.len()
        )));
    }
    let best = (1u64..1 << 6).map(|side| crate::stabilizer::cut_rank_masks(g, VertexSet(side))).max().unwrap_or(0);
    if best != 3 {
        return Err(Error::SteaneValidation(format!("maximum cut-rank {best}, expected 3")));
    }
    Ok(())
}

/// Builds the canonical graph of a family.
pub fn build_family(family: &Family) -> Result<Graph> {
    match *family {
        Family::Cluster1d { n } => grid(1, n, 1),
        Family::Cluster2d { rows, cols } => grid(rows, cols, 1),
        Family::Cluster3d { rows, cols, layers } => grid(rows, cols, layers),
        Family::GhzStar { n } => {
            positive("n", n)?;
            let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
            Graph::from_edges(n, &edges)
        }
        Family::GhzComplete { n } => {
            positive("n", n)?;
            let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            Graph::from_edges(n, &edges)
        }
        Family::Ring { n } => {
            if n < 3 {
                return Err(Error::BadFamily(format!("ring needs n >= 3, got {n}")));
            }
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Graph::from_edges(n, &edges)
        }
        Family::Steane7 => steane7(),
        Family::EdgeList { n, ref edges } => Graph::from_edges(n, edges),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families() {
        let ring = build_family(&Family::Ring { n: 4 }).unwrap();
        assert_eq!(ring.edges(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        let star = build_family(&Family::GhzStar { n: 4 }).unwrap();
        assert_eq!(star.edges(), vec![(0, 1), (0, 2), (0, 3)]);
        let sq = build_family(&Family::Cluster2d { rows: 2, cols: 2 }).unwrap();
        assert_eq!(sq.edges(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        let line = build_family(&Family::Cluster1d { n: 1 }).unwrap();
        assert_eq!((line.n(), line.edge_count()), (1, 0));
    }

    #[test]
    fn cube_numbering_is_layer_major() {
        let cube = build_family(&Family::Cluster3d { rows: 2, cols: 2, layers: 2 }).unwrap();
        assert_eq!(cube.n(), 8);
        assert_eq!(cube.edge_count(), 12);
        assert!(cube.has_edge(0, 4));
        assert!(cube.has_edge(3, 7));
        assert!(cube.has_edge(1, 3));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(build_family(&Family::Ring { n: 2 }).is_err());
        assert!(build_family(&Family::Cluster1d { n: 0 }).is_err());
        assert!(build_family(&Family::Cluster2d { rows: 0, cols: 3 }).is_err());
        assert!(build_family(&Family::GhzStar { n: 0 }).is_err());
        assert!(build_family(&Family::Cluster1d { n: 65 }).is_err());
        assert!(build_family(&Family::EdgeList { n: 3, edges: vec![(0, 0)] }).is_err());
        assert!(build_family(&Family::EdgeList { n: 3, edges: vec![(0, 3)] }).is_err());
    }

    #[test]
    fn steane_graph_passes_structural_checks() {
        let g = build_family(&Family::Steane7).unwrap();
        assert_eq!(g.n(), 7);
        assert_eq!(g.edge_count(), 9);
        assert!(validate_steane(&g).is_ok());
        let star = build_family(&Family::GhzStar { n: 7 }).unwrap();
        assert!(validate_steane(&star).is_err());
    }

    #[test]
    fn steane_generators_match_hamming_checks() {
        // After Hadamards on vertices 3..7, the X-type generators are the rows
        // of the Hamming parity-check matrix and the Z-type generators span
        // its orthogonal complement.
        let g = build_family(&Family::Steane7).unwrap();
        let parity_rows: Vec<u64> =
            (0..3).map(|p| (0..7).filter(|&c| ((c + 1) >> p) & 1 == 1).fold(0, |m, c| m | 1 << c)).collect();
        // graph vertex -> Hamming column index (0-based position of column value - 1)
        let column_of = [0usize, 1, 3, 2, 4, 5, 6];
        let relabel =
            |mask: u64| -> u64 { (0..7).filter(|&v| mask >> v & 1 == 1).fold(0, |m, v| m | 1 << column_of[v]) };
        let mut x_checks = Vec::new();
        let mut z_checks = Vec::new();
        for v in 0..7 {
            let support = relabel(g.rows()[v] | 1 << v);
            if v < 3 {
                x_checks.push(support);
            } else {
                z_checks.push(support);
            }
        }
        let span_x = crate::gf2::rank(&[x_checks.clone(), parity_rows.clone()].concat());
        assert_eq!(span_x, 3);
        assert_eq!(crate::gf2::rank(&x_checks), 3);
        assert_eq!(crate::gf2::rank(&z_checks), 4);
        for z in &z_checks {
            for h in &parity_rows {
                assert_eq!((z & h).count_ones() % 2, 0);
            }
        }
    }
}
