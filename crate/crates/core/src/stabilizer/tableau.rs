use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::pauli::PauliString;
use crate::error::{Error, Result};
use crate::gf2;
use crate::graph::{full_mask, BitIter, Graph};

/// Index `k = (k_0 … k_{n-1})` of the graph-basis state `|G_k⟩`; `k_i` gives
/// the eigenvalue `(-1)^{k_i}` of generator `K_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphStateIndex {
    pub n: usize,
    pub bits: u64,
}

impl GraphStateIndex {
    pub fn zero(n: usize) -> Self {
        GraphStateIndex { n, bits: 0 }
    }

    pub fn new(n: usize, bits: u64) -> Result<Self> {
        if n == 0 || n > 64 || bits & !full_mask(n) != 0 {
            return Err(Error::Malformed(format!("index bits do not fit {n} qubits")));
        }
        Ok(GraphStateIndex { n, bits })
    }

    #[inline]
    pub fn bit(&self, i: usize) -> u8 {
        (self.bits >> i & 1) as u8
    }
}

impl fmt::Display for GraphStateIndex {
    /// `k_0 k_1 … k_{n-1}` as a bit string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            write!(f, "{}", self.bit(i))?;
        }
        Ok(())
    }
}

impl FromStr for GraphStateIndex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' if i < 64 => bits |= 1 << i,
                _ => return Err(Error::Malformed(format!("bad graph-state index '{s}'"))),
            }
        }
        GraphStateIndex::new(s.chars().count(), bits)
    }
}

impl Serialize for GraphStateIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GraphStateIndex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Eigenvalue {
    Plus,
    Minus,
}

impl Eigenvalue {
    /// 0 for +1, 1 for -1.
    pub fn bit(self) -> u8 {
        matches!(self, Eigenvalue::Minus) as u8
    }

    pub fn value(self) -> i8 {
        match self {
            Eigenvalue::Plus => 1,
            Eigenvalue::Minus => -1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Measurement {
    pub outcome: Eigenvalue,
    pub deterministic: bool,
}

/// Stabilizer state given by `n` signed generators.
#[derive(Clone, PartialEq, Eq)]
pub struct StabilizerTableau {
    n: usize,
    generators: Vec<PauliString>,
}

impl fmt::Debug for StabilizerTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.generators.iter().map(|g| g.to_string())).finish()
    }
}

impl StabilizerTableau {
    /// Wraps an arbitrary generator list; call [`Self::validate`] to check it
    /// describes a stabilizer state.
    pub fn from_generators(generators: Vec<PauliString>) -> Result<Self> {
        let n = generators.len();
        if n == 0 {
            return Err(Error::BadPauli("empty generator list".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.n != n) {
            return Err(Error::SizeMismatch(g.n, n));
        }
        Ok(StabilizerTableau { n, generators })
    }

    /// Tableau of `|G_k⟩`: generator `i` is `(-1)^{k_i} X_i Z_{N(i)}`.
    pub fn graph_state(g: &Graph, k: GraphStateIndex) -> Result<Self> {
        if k.n != g.n() {
            return Err(Error::SizeMismatch(k.n, g.n()));
        }
        let n = g.n();
        let generators =
            (0..n).map(|i| PauliString { n, x: 1 << i, z: g.rows()[i], negative: k.bit(i) == 1 }).collect();
        Ok(StabilizerTableau { n, generators })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    pub fn check_commuting(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    pub fn is_independent(&self) -> bool {
        let rows: Vec<u128> = self.generators.iter().map(|g| g.symplectic()).collect();
        gf2::rank(&rows) == self.n
    }

    pub fn validate(&self) -> Result<()> {
        if !self.check_commuting() {
            return Err(Error::BadPauli("generators do not commute".into()));
        }
        if !self.is_independent() {
            return Err(Error::BadPauli("generators are not independent".into()));
        }
        Ok(())
    }

    /// If `±p` lies in the stabilizer group, returns the eigenvalue of `p`.
    pub fn eigenvalue_of(&self, p: &PauliString) -> Option<Eigenvalue> {
        // (symplectic row, generator combination)
        let mut basis: Vec<(u128, u64, u32)> = Vec::with_capacity(self.n);
        for (i, g) in self.generators.iter().enumerate() {
            let (mut row, mut combo) = (g.symplectic(), 1u64 << i);
            for &(b, c, piv) in &basis {
                if row >> piv & 1 == 1 {
                    row ^= b;
                    combo ^= c;
                }
            }
            if row != 0 {
                let piv = row.trailing_zeros();
                for entry in basis.iter_mut() {
                    if entry.0 >> piv & 1 == 1 {
                        entry.0 ^= row;
                        entry.1 ^= combo;
                    }
                }
                basis.push((row, combo, piv));
            }
        }
        let (mut row, mut combo) = (p.symplectic(), 0u64);
        for &(b, c, piv) in &basis {
            if row >> piv & 1 == 1 {
                row ^= b;
                combo ^= c;
            }
        }
        if row != 0 {
            return None;
        }
        let product = BitIter(combo).fold(PauliString::identity(self.n), |acc, i| acc.mul(&self.generators[i]));
        debug_assert_eq!((product.x, product.z), (p.x, p.z));
        Some(if product.negative == p.negative { Eigenvalue::Plus } else { Eigenvalue::Minus })
    }

    /// Projective measurement of the Pauli observable `p`.
    pub fn measure<R: Rng + ?Sized>(&mut self, p: &PauliString, rng: &mut R) -> Result<Measurement> {
        if p.n != self.n {
            return Err(Error::SizeMismatch(p.n, self.n));
        }
        let anti: Vec<usize> = (0..self.n).filter(|&i| !self.generators[i].commutes_with(p)).collect();
        let Some((&first, rest)) = anti.split_first() else {
            let outcome =
                self.eigenvalue_of(p).expect("an observable commuting with a full stabilizer group lies in it");
            return Ok(Measurement { outcome, deterministic: true });
        };
        let pivot = self.generators[first];
        for &i in rest {
            self.generators[i] = self.generators[i].mul(&pivot);
        }
        let outcome = if rng.gen::<bool>() { Eigenvalue::Minus } else { Eigenvalue::Plus };
        self.generators[first] = PauliString { negative: p.negative ^ (outcome == Eigenvalue::Minus), ..*p };
        Ok(Measurement { outcome, deterministic: false })
    }

    /// Rewrites the generators as `(-1)^{k_i} X_i Z_{Γ_i}` when possible.
    pub fn graph_form(&self) -> Result<(Graph, GraphStateIndex)> {
        let n = self.n;
        let mut rows = self.generators.clone();
        for c in 0..n {
            let r = (c..n)
                .find(|&r| rows[r].x >> c & 1 == 1)
                .ok_or_else(|| Error::NotGraphForm(format!("X block is singular at column {c}")))?;
            rows.swap(c, r);
            let pivot = rows[c];
            for (i, row) in rows.iter_mut().enumerate() {
                if i != c && row.x >> c & 1 == 1 {
                    *row = row.mul(&pivot);
                }
            }
        }
        let mut bits = 0u64;
        let mut adjacency = Vec::with_capacity(n);
        for (i, row) in rows.iter().enumerate() {
            if row.z >> i & 1 == 1 {
                return Err(Error::NotGraphForm(format!("generator {i} carries Y on its own qubit")));
            }
            if row.negative {
                bits |= 1 << i;
            }
            adjacency.push(row.z);
        }
        let g = Graph::from_rows(adjacency).map_err(|e| Error::NotGraphForm(e.to_string()))?;
        Ok((g, GraphStateIndex { n, bits }))
    }

    /// Conjugates every generator by the local Clifford
    /// `exp(-iπ/4 X_v) ∏_{j∈N(v)} exp(iπ/4 Z_j)`, where `N(v)` is read off
    /// the graph form of this tableau.
    pub fn apply_lc_unitary(&self, v: usize) -> Result<StabilizerTableau> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let (g, _) = self.graph_form()?;
        let nb = g.rows()[v];
        let generators = self
            .generators
            .iter()
            .map(|p| {
                let mut out = *p;
                conjugate_sqrt_x(&mut out, v);
                for j in BitIter(nb) {
                    conjugate_sqrt_z(&mut out, j);
                }
                out
            })
            .collect();
        Ok(StabilizerTableau { n: self.n, generators })
    }
}

/// `exp(-iπ/4 X)`: X → X, Z → -Y, Y → Z.
fn conjugate_sqrt_x(p: &mut PauliString, q: usize) {
    let bit = 1u64 << q;
    match (p.x & bit != 0, p.z & bit != 0) {
        (false, true) => {
            p.x |= bit;
            p.negative = !p.negative;
        }
        (true, true) => p.x &= !bit,
        _ => {}
    }
}

/// `exp(iπ/4 Z)`: X → -Y, Y → X, Z → Z.
fn conjugate_sqrt_z(p: &mut PauliString, q: usize) {
    let bit = 1u64 << q;
    match (p.x & bit != 0, p.z & bit != 0) {
        (true, false) => {
            p.z |= bit;
            p.negative = !p.negative;
        }
        (true, true) => p.z &= !bit,
        _ => {}
    }
}

/// Generators `K_i = X_i ⊗_{j∈N(i)} Z_j` of the graph state of `g`.
pub fn generators_of(g: &Graph) -> StabilizerTableau {
    StabilizerTableau::graph_state(g, GraphStateIndex::zero(g.n())).expect("index sized to graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, Family};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn generator_examples() {
        let edge = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let t = generators_of(&edge);
        assert_eq!(t.generators(), &[p("+XZ"), p("+ZX")]);
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(generators_of(&path).generators()[1], p("+ZXZ"));
        let empty = Graph::empty(3).unwrap();
        assert_eq!(generators_of(&empty).generators(), &[p("XII"), p("IXI"), p("IIX")]);
    }

    #[test]
    fn commuting_checks() {
        let t = StabilizerTableau::from_generators(vec![p("XI"), p("ZI")]).unwrap();
        assert!(!t.check_commuting());
        let t = StabilizerTableau::from_generators(vec![p("ZI"), p("IZ")]).unwrap();
        assert!(t.check_commuting());
        assert!(t.validate().is_ok());
        let dependent = StabilizerTableau::from_generators(vec![p("ZZ"), p("-ZZ")]).unwrap();
        assert!(!dependent.is_independent());
    }

    #[test]
    fn measurement_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let plus = generators_of(&Graph::empty(1).unwrap());
        let m = plus.clone().measure(&p("X"), &mut rng).unwrap();
        assert_eq!(m, Measurement { outcome: Eigenvalue::Plus, deterministic: true });
        assert_eq!(plus.clone().measure(&p("-X"), &mut rng).unwrap().outcome, Eigenvalue::Minus);

        let mut minus_count = 0;
        for _ in 0..1000 {
            let mut t = plus.clone();
            let m = t.measure(&p("Z"), &mut rng).unwrap();
            assert!(!m.deterministic);
            minus_count += m.outcome.bit() as usize;
            // repeated measurement agrees
            assert_eq!(t.measure(&p("Z"), &mut rng).unwrap(), Measurement { outcome: m.outcome, deterministic: true });
        }
        let freq = minus_count as f64 / 1000.0;
        assert!((freq - 0.5).abs() <= 0.05, "frequency {freq}");
    }

    #[test]
    fn generators_report_index_bits() {
        let g = build_family(&Family::Cluster2d { rows: 2, cols: 3 }).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for bits in [0u64, 0b101101, 0b111111, 0b010010] {
            let k = GraphStateIndex::new(6, bits).unwrap();
            let mut t = StabilizerTableau::graph_state(&g, k).unwrap();
            for i in (0..6).rev() {
                let gen = generators_of(&g).generators()[i];
                let m = t.measure(&gen, &mut rng).unwrap();
                assert!(m.deterministic);
                assert_eq!(m.outcome.bit(), k.bit(i));
            }
        }
    }

    #[test]
    fn graph_form_recovers_graph_and_index() {
        let g = build_family(&Family::Cluster1d { n: 5 }).unwrap();
        let k: GraphStateIndex = "10110".parse().unwrap();
        let mut t = StabilizerTableau::graph_state(&g, k).unwrap();
        // scramble: multiply generators together
        let gens = t.generators.clone();
        t.generators[0] = gens[0].mul(&gens[1]);
        t.generators[3] = gens[3].mul(&gens[2]).mul(&gens[4]);
        let (g2, k2) = t.graph_form().unwrap();
        assert_eq!(g2, g);
        assert_eq!(k2, k);
        let zs = StabilizerTableau::from_generators(vec![p("ZI"), p("IZ")]).unwrap();
        assert!(zs.graph_form().is_err());
    }

    #[test]
    fn lc_unitary_on_complete_graph_gives_star() {
        let k4 = build_family(&Family::GhzComplete { n: 4 }).unwrap();
        let t = generators_of(&k4).apply_lc_unitary(0).unwrap();
        assert!(t.validate().is_ok());
        let (g, k) = t.graph_form().unwrap();
        assert_eq!(g, build_family(&Family::GhzStar { n: 4 }).unwrap());
        assert_eq!(k.bits, 0);
        let (back, _) = t.apply_lc_unitary(0).unwrap().graph_form().unwrap();
        assert_eq!(back, k4);
    }

    #[test]
    fn lc_unitary_single_vertex() {
        let t = generators_of(&Graph::empty(1).unwrap());
        let out = t.apply_lc_unitary(0).unwrap();
        assert!(out.validate().is_ok());
        assert_eq!(out.generators(), &[p("X")]);
        assert!(t.apply_lc_unitary(1).is_err());
    }

    #[test]
    fn index_text_form() {
        let k: GraphStateIndex = "1010".parse().unwrap();
        assert_eq!(k.bits, 0b0101);
        assert_eq!(k.to_string(), "1010");
        assert!("10a".parse::<GraphStateIndex>().is_err());
    }
}
