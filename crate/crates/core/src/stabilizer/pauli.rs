use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::full_mask;

/// Hermitian Pauli operator `±P_0 ⊗ … ⊗ P_{n-1}` in binary symplectic form.
/// A qubit with both bits set carries `Y`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    pub n: usize,
    pub x: u64,
    pub z: u64,
    pub negative: bool,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString { n, x: 0, z: 0, negative: false }
    }

    pub fn single_x(n: usize, q: usize) -> Self {
        PauliString { n, x: 1 << q, z: 0, negative: false }
    }

    pub fn single_z(n: usize, q: usize) -> Self {
        PauliString { n, x: 0, z: 1 << q, negative: false }
    }

    pub fn new(n: usize, x: u64, z: u64, negative: bool) -> Result<Self> {
        if n == 0 || n > 64 || (x | z) & !full_mask(n) != 0 {
            return Err(Error::BadPauli(format!("support does not fit {n} qubits")));
        }
        Ok(PauliString { n, x, z, negative })
    }

    pub fn negated(self) -> Self {
        PauliString { negative: !self.negative, ..self }
    }

    /// Bits packed as `x | z << 64`.
    #[inline]
    pub fn symplectic(&self) -> u128 {
        self.x as u128 | (self.z as u128) << 64
    }

    #[inline]
    pub fn commutes_with(&self, other: &PauliString) -> bool {
        ((self.x & other.z) ^ (self.z & other.x)).count_ones() % 2 == 0
    }

    /// Product `self · other` of two commuting Paulis.
    pub fn mul(&self, other: &PauliString) -> PauliString {
        debug_assert!(self.commutes_with(other));
        let exp = product_phase(self.x, self.z, other.x, other.z);
        let total = (2 * (self.negative as i32) + 2 * (other.negative as i32) + exp).rem_euclid(4);
        debug_assert!(total % 2 == 0, "product of commuting Paulis is Hermitian");
        PauliString { n: self.n, x: self.x ^ other.x, z: self.z ^ other.z, negative: total == 2 }
    }

    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    pub fn letter(&self, q: usize) -> char {
        match (self.x >> q & 1, self.z >> q & 1) {
            (0, 0) => 'I',
            (1, 0) => 'X',
            (0, 1) => 'Z',
            _ => 'Y',
        }
    }
}

/// Power of `i` picked up when multiplying the unsigned Paulis `(x1,z1)` and
/// `(x2,z2)` letter by letter (Y written as the Hermitian `iXZ`).
pub(crate) fn product_phase(x1: u64, z1: u64, x2: u64, z2: u64) -> i32 {
    let y1 = x1 & z1;
    let xo = x1 & !z1;
    let zo = !x1 & z1;
    let plus = (y1 & z2 & !x2) | (xo & z2 & x2) | (zo & x2 & !z2);
    let minus = (y1 & x2 & !z2) | (xo & z2 & !x2) | (zo & x2 & z2);
    plus.count_ones() as i32 - minus.count_ones() as i32
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.negative { '-' } else { '+' })?;
        for q in 0..self.n {
            write!(f, "{}", self.letter(q))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Parses `"+XZI"`, `"-ZXZ"`, `"−ZXZ"` or an unsigned `"XZI"`.
    fn from_str(s: &str) -> Result<Self> {
        let (negative, body) = if let Some(rest) = s.strip_prefix('-').or_else(|| s.strip_prefix('−')) {
            (true, rest)
        } else {
            (false, s.strip_prefix('+').unwrap_or(s))
        };
        let mut x = 0u64;
        let mut z = 0u64;
        let mut n = 0;
        for (q, c) in body.chars().enumerate() {
            if q >= 64 {
                return Err(Error::BadPauli(format!("more than 64 qubits in '{s}'")));
            }
            match c {
                'I' => {}
                'X' => x |= 1 << q,
                'Z' => z |= 1 << q,
                'Y' => {
                    x |= 1 << q;
                    z |= 1 << q;
                }
                other => return Err(Error::BadPauli(format!("unexpected '{other}' in '{s}'"))),
            }
            n = q + 1;
        }
        if n == 0 {
            return Err(Error::BadPauli("empty Pauli string".into()));
        }
        Ok(PauliString { n, x, z, negative })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn text_form() {
        assert_eq!(p("+XZI").to_string(), "+XZI");
        assert_eq!(p("−ZXZ").to_string(), "-ZXZ");
        assert_eq!(p("-ZXZ"), p("−ZXZ"));
        assert_eq!(p("XY").to_string(), "+XY");
        assert!("+XQ".parse::<PauliString>().is_err());
        assert!("+".parse::<PauliString>().is_err());
    }

    #[test]
    fn commutation() {
        assert!(!p("XI").commutes_with(&p("ZI")));
        assert!(p("ZI").commutes_with(&p("IZ")));
        assert!(p("XX").commutes_with(&p("ZZ")));
        assert!(!p("XY").commutes_with(&p("XZ")));
    }

    #[test]
    fn products_of_commuting_paulis() {
        // XX · ZZ = (XZ)(XZ) = (-iY)(-iY) = -YY
        assert_eq!(p("XX").mul(&p("ZZ")), p("-YY"));
        assert_eq!(p("XZ").mul(&p("ZX")), p("YY"));
        assert_eq!(p("-XI").mul(&p("XI")), p("-II"));
        assert_eq!(p("YZ").mul(&p("YZ")), p("II"));
    }
}
