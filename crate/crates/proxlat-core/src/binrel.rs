//! Binary relations between carriers of at most 64 points, stored as row
//! bitmasks. Used for approximation relations on generators and for
//! proximity relations between lattices.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{cap, Error, Result};
use crate::sets::FinSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinRel {
    rows: Vec<u64>,
    cols: usize,
}

/// Idempotent relation `≺` on a generator set.
pub type ApproxRel = BinRel;

impl BinRel {
    pub fn empty(rows: usize, cols: usize) -> Result<Self> {
        cap("relation carrier", 64, rows.max(cols))?;
        Ok(BinRel { rows: vec![0; rows], cols })
    }

    pub fn from_fn<F: Fn(usize, usize) -> bool>(rows: usize, cols: usize, f: F) -> Result<Self> {
        let mut r = BinRel::empty(rows, cols)?;
        for a in 0..rows {
            for b in 0..cols {
                if f(a, b) {
                    r.rows[a] |= 1 << b;
                }
            }
        }
        Ok(r)
    }

    pub fn from_pairs(rows: usize, cols: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut r = BinRel::empty(rows, cols)?;
        for &(a, b) in pairs {
            if a >= rows || b >= cols {
                return Err(Error::Invalid(alloc::format!("pair ({a},{b}) out of range")));
            }
            r.rows[a] |= 1 << b;
        }
        Ok(r)
    }

    pub fn identity(n: usize) -> Result<Self> {
        BinRel::from_fn(n, n, |a, b| a == b)
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.rows[a] >> b & 1 == 1
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.rows[a] |= 1 << b;
    }

    pub fn remove(&mut self, a: usize, b: usize) {
        self.rows[a] &= !(1 << b);
    }

    /// `{b | a r b}`.
    pub fn row(&self, a: usize) -> u64 {
        self.rows[a]
    }

    /// `{a | a r b}`.
    pub fn col(&self, b: usize) -> u64 {
        (0..self.rows.len()).filter(|&a| self.contains(a, b)).fold(0, |m, a| m | 1 << a)
    }

    /// `r[A] = {b | ∃a ∈ A, a r b}`.
    pub fn image(&self, a: FinSet) -> FinSet {
        FinSet::from_bits(a.iter().fold(0, |m, i| m | self.rows[i]))
    }

    /// `r⁻¹[B] = {a | ∃b ∈ B, a r b}`.
    pub fn preimage(&self, b: FinSet) -> FinSet {
        FinSet::from_bits((0..self.rows.len()).filter(|&a| self.rows[a] & b.bits() != 0).fold(0, |m, a| m | 1 << a))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows.iter().enumerate().flat_map(|(a, &row)| FinSet::from_bits(row).iter().map(move |b| (a, b)))
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    /// Relational composite "first `self`, then `next`".
    pub fn then(&self, next: &BinRel) -> Result<BinRel> {
        if self.cols != next.rows.len() {
            return Err(Error::Mismatch(alloc::format!(
                "cannot compose {}x{} with {}x{}",
                self.rows.len(),
                self.cols,
                next.rows.len(),
                next.cols
            )));
        }
        Ok(BinRel {
            rows: self.rows.iter().map(|&row| FinSet::from_bits(row).iter().fold(0, |m, b| m | next.rows[b])).collect(),
            cols: next.cols,
        })
    }

    pub fn transpose(&self) -> BinRel {
        BinRel { rows: (0..self.cols).map(|b| self.col(b)).collect(), cols: self.rows.len() }
    }

    pub fn is_subset(&self, other: &BinRel) -> bool {
        self.rows.len() == other.rows.len() && self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    /// A pair of `self` missing from `other`.
    pub fn first_difference(&self, other: &BinRel) -> Option<(usize, usize)> {
        self.pairs().find(|&(a, b)| !other.contains(a, b))
    }

    /// `≺∘≺ = ≺`.
    pub fn is_idempotent(&self) -> bool {
        self.then(self).map(|c| &c == self).unwrap_or(false)
    }

    /// Image under generator renamings of both carriers.
    pub fn rename(&self, row_map: &[usize], col_map: &[usize], rows: usize, cols: usize) -> Result<BinRel> {
        let mut out = BinRel::empty(rows, cols)?;
        for (a, b) in self.pairs() {
            out.insert(row_map[a], col_map[b]);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_and_idempotence() {
        let le = BinRel::from_fn(3, 3, |a, b| a <= b).unwrap();
        assert_eq!(le.then(&le).unwrap(), le);
        assert!(le.is_idempotent());
        let c3w = BinRel::from_pairs(3, 3, &[(0, 0), (0, 1), (0, 2), (1, 2), (2, 2)]).unwrap();
        assert!(c3w.is_idempotent());
        let lone = BinRel::from_pairs(3, 3, &[(0, 2)]).unwrap();
        assert!(!lone.is_idempotent());
    }

    #[test]
    fn image_and_preimage() {
        let le = BinRel::from_fn(3, 3, |a, b| a <= b).unwrap();
        assert_eq!(le.image(FinSet::from_bits(0b010)).bits(), 0b110);
        assert_eq!(le.preimage(FinSet::from_bits(0b010)).bits(), 0b011);
        assert_eq!(le.transpose().transpose(), le);
    }
}
