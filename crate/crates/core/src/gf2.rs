//! Bit-packed linear algebra over GF(2).
//!
//! Rows are stored as machine words; bit `j` of a row is column `j`.
//! Elimination always pivots on the lowest set column of the row being
//! inserted, so results are independent of thread scheduling or ordering
//! beyond the input order.

use std::ops::{BitAnd, BitXor, BitXorAssign, Not};

/// A single packed GF(2) row.
pub trait BitRow:
    Copy + Eq + BitXor<Output = Self> + BitXorAssign + BitAnd<Output = Self> + Not<Output = Self>
{
    const ZERO: Self;
    fn lowest_bit(self) -> u32;
    fn bit(index: u32) -> Self;
}

impl BitRow for u64 {
    const ZERO: Self = 0;
    #[inline]
    fn lowest_bit(self) -> u32 {
        self.trailing_zeros()
    }
    #[inline]
    fn bit(index: u32) -> Self {
        1u64 << index
    }
}

impl BitRow for u128 {
    const ZERO: Self = 0;
    #[inline]
    fn lowest_bit(self) -> u32 {
        self.trailing_zeros()
    }
    #[inline]
    fn bit(index: u32) -> Self {
        1u128 << index
    }
}

/// Incremental echelon basis. Each stored row has a distinct pivot (its
/// lowest set bit) and no other stored row has that pivot bit set.
#[derive(Clone, Debug)]
pub struct EchelonBasis<T: BitRow> {
    rows: Vec<T>,
    pivots: Vec<u32>,
}

impl<T: BitRow> Default for EchelonBasis<T> {
    fn default() -> Self {
        Self { rows: Vec::new(), pivots: Vec::new() }
    }
}

impl<T: BitRow> EchelonBasis<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the basis. Returns the residue together with
    /// the indices (insertion order) of the basis rows that were added.
    pub fn reduce_tracked(&self, mut row: T) -> (T, Vec<usize>) {
        let mut used = Vec::new();
        for (idx, (&b, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if row & T::bit(p) != T::ZERO {
                row ^= b;
                used.push(idx);
            }
        }
        (row, used)
    }

    pub fn reduce(&self, mut row: T) -> T {
        for (&b, &p) in self.rows.iter().zip(&self.pivots) {
            if row & T::bit(p) != T::ZERO {
                row ^= b;
            }
        }
        row
    }

    /// Inserts `row`; returns true when it was independent of the basis.
    pub fn insert(&mut self, row: T) -> bool {
        let r = self.reduce(row);
        if r == T::ZERO {
            return false;
        }
        let p = r.lowest_bit();
        // keep the basis fully reduced on pivot columns
        for b in self.rows.iter_mut() {
            if *b & T::bit(p) != T::ZERO {
                *b ^= r;
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, row: T) -> bool {
        self.reduce(row) == T::ZERO
    }
}

/// Rank of a set of packed rows.
pub fn rank<T: BitRow>(rows: &[T]) -> usize {
    // Small inline basis; avoids allocating the tracked variant.
    let mut basis: Vec<T> = Vec::with_capacity(rows.len());
    let mut pivots: Vec<u32> = Vec::with_capacity(rows.len());
    for &row in rows {
        let mut r = row;
        for (&b, &p) in basis.iter().zip(&pivots) {
            if r & T::bit(p) != T::ZERO {
                r ^= b;
            }
        }
        if r != T::ZERO {
            let p = r.lowest_bit();
            for b in basis.iter_mut() {
                if *b & T::bit(p) != T::ZERO {
                    *b ^= r;
                }
            }
            basis.push(r);
            pivots.push(p);
        }
    }
    basis.len()
}

/// Rank of the submatrix with the given rows, restricted to `column_mask`.
#[inline]
pub fn masked_rank(rows: impl Iterator<Item = u64>, column_mask: u64) -> usize {
    let mut basis = [0u64; 64];
    let mut len = 0;
    for row in rows {
        let mut r = row & column_mask;
        for &b in &basis[..len] {
            // xor-basis with descending leading bits: min() clears the top bit
            r = r.min(r ^ b);
        }
        if r != 0 {
            // keep sorted by leading bit descending
            let mut i = len;
            while i > 0 && basis[i - 1] < r {
                basis[i] = basis[i - 1];
                i -= 1;
            }
            basis[i] = r;
            len += 1;
        }
    }
    len
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_rank(rows: &[u64]) -> usize {
        // size of the span = 2^rank
        let mut span = std::collections::HashSet::new();
        for subset in 0u32..(1 << rows.len()) {
            let mut acc = 0u64;
            for (i, r) in rows.iter().enumerate() {
                if subset >> i & 1 == 1 {
                    acc ^= r;
                }
            }
            span.insert(acc);
        }
        span.len().trailing_zeros() as usize
    }

    #[test]
    fn identity_and_dependent_rows() {
        assert_eq!(rank(&[1u64, 2, 4]), 3);
        assert_eq!(rank(&[0b011u64, 0b110, 0b101]), 2);
        assert_eq!(rank::<u64>(&[]), 0);
        assert_eq!(rank(&[0u64, 0]), 0);
    }

    #[test]
    fn masked_rank_restricts_columns() {
        assert_eq!(masked_rank([0b11u64, 0b01].into_iter(), 0b11), 2);
        assert_eq!(masked_rank([0b11u64, 0b01].into_iter(), 0b01), 1);
    }

    #[test]
    fn tracked_reduction_reconstructs_row() {
        let rows = [0b1010u128, 0b0110, 0b0011];
        let mut basis = EchelonBasis::new();
        for r in rows {
            basis.insert(r);
        }
        let target = rows[0] ^ rows[2];
        let (res, _) = basis.reduce_tracked(target);
        assert_eq!(res, 0);
        assert!(basis.contains(target));
        assert!(!basis.contains(0b10000));
    }

    proptest::proptest! {
        #[test]
        fn rank_matches_span_enumeration(rows in proptest::collection::vec(0u64..256, 0..8)) {
            let expected = brute_rank(&rows);
            proptest::prop_assert_eq!(rank(&rows), expected);
            proptest::prop_assert_eq!(masked_rank(rows.iter().copied(), u64::MAX), expected);
            let wide: Vec<u128> = rows.iter().map(|&r| (r as u128) << 60).collect();
            proptest::prop_assert_eq!(rank(&wide), expected);
        }
    }
}
