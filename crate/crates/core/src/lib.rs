//! Entanglement of graph states: colouring lower bounds, cut-rank upper
//! bounds, LOCC discrimination, mixed-state formulas and LOCC capacity
//! bounds.

pub mod bounds;
pub mod capacity;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod locc;
pub mod measures;
pub mod stabilizer;

pub use error::{Error, Result};
pub use graph::{build_family, Family, Graph, VertexSet};
pub use stabilizer::{Bipartition, GraphStateIndex, PauliString, StabilizerTableau};
