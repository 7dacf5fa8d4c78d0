//! Upper relations between `Fin(S)` and `Fin(S′)`.
//!
//! An upper relation is closed under enlarging either side, so its
//! complement is a down-set and is generated by its maximal elements. We
//! store those maximal non-pairs, the *counters*: `A r B` holds iff no
//! counter `(X, Y)` has `A ⊆ X` and `B ⊆ Y`.

use alloc::format;
use alloc::vec::Vec;

use super::{EntailRel, PairRel};
use crate::error::{cap, Error, Result};
use crate::sets::{star, FinSet, SubsetFamily};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UpperRel {
    src: usize,
    dst: usize,
    counters: Vec<(FinSet, FinSet)>,
}

fn dominated(p: (FinSet, FinSet), q: (FinSet, FinSet)) -> bool {
    p.0.is_subset(q.0) && p.1.is_subset(q.1)
}

impl UpperRel {
    /// Normalizes an arbitrary list of non-pairs to its maximal elements.
    pub fn from_counters(src: usize, dst: usize, mut counters: Vec<(FinSet, FinSet)>) -> Self {
        counters.sort_unstable_by_key(|&(x, y)| core::cmp::Reverse(x.len() + y.len()));
        counters.dedup();
        let mut kept: Vec<(FinSet, FinSet)> = Vec::with_capacity(counters.len());
        for c in counters {
            if !kept.iter().any(|&k| dominated(c, k)) {
                kept.push(c);
            }
        }
        UpperRel::from_antichain(src, dst, kept)
    }

    /// Trusts that `counters` is already an antichain.
    pub(crate) fn from_antichain(src: usize, dst: usize, mut counters: Vec<(FinSet, FinSet)>) -> Self {
        counters.sort_unstable();
        counters.dedup();
        UpperRel { src, dst, counters }
    }

    /// Every pair related.
    pub fn full(src: usize, dst: usize) -> Self {
        UpperRel { src, dst, counters: Vec::new() }
    }

    /// No pair related.
    pub fn none(src: usize, dst: usize) -> Self {
        UpperRel { src, dst, counters: alloc::vec![(FinSet::full(src), FinSet::full(dst))] }
    }

    /// Builds the relation from a predicate, which must be upward closed.
    pub fn from_fn<F: Fn(FinSet, FinSet) -> bool>(src: usize, dst: usize, f: F) -> Result<Self> {
        cap("upper relation bits |S|+|S'|", 22, src + dst)?;
        let table = PairRel::from_fn(src, dst, &f)?;
        UpperRel::from_table(&table)
    }

    /// Converts a dense table, failing with a witness if it is not upper.
    pub fn from_table(table: &PairRel) -> Result<Self> {
        if let Some(((a, b), (c, d))) = super::upper_violation(table) {
            return Err(Error::Invalid(format!("relation is not upper: contains ({a:?},{b:?}) but not ({c:?},{d:?})")));
        }
        let (src, dst) = (table.src(), table.dst());
        let mut counters = Vec::new();
        for b in FinSet::all(dst) {
            for a in FinSet::all(src) {
                if table.contains(a, b) {
                    continue;
                }
                let maximal = (0..src).all(|x| a.has(x) || table.contains(a.with(x), b))
                    && (0..dst).all(|y| b.has(y) || table.contains(a, b.with(y)));
                if maximal {
                    counters.push((a, b));
                }
            }
        }
        Ok(UpperRel::from_antichain(src, dst, counters))
    }

    /// The upward closure of the given pairs.
    pub fn from_pairs(src: usize, dst: usize, pairs: &[(FinSet, FinSet)]) -> Result<Self> {
        UpperRel::from_fn(src, dst, |a, b| pairs.iter().any(|&(x, y)| x.is_subset(a) && y.is_subset(b)))
    }

    /// `A R B ⟺ f(A) ⊢ g(B)` where `f`, `g` send each generator to a subset
    /// of the universe of `e` and extend to subsets by union.
    pub fn transport(e: &EntailRel, f: &[FinSet], g: &[FinSet]) -> UpperRel {
        let counters = e
            .models()
            .iter()
            .map(|&m| {
                let x =
                    f.iter().enumerate().filter(|(_, fa)| fa.is_subset(m)).fold(FinSet::EMPTY, |s, (i, _)| s.with(i));
                let y = g.iter().enumerate().filter(|(_, gb)| !gb.meets(m)).fold(FinSet::EMPTY, |s, (i, _)| s.with(i));
                (x, y)
            })
            .collect();
        UpperRel::from_counters(f.len(), g.len(), counters)
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn dst(&self) -> usize {
        self.dst
    }

    pub fn counters(&self) -> &[(FinSet, FinSet)] {
        &self.counters
    }

    pub fn contains(&self, a: FinSet, b: FinSet) -> bool {
        !self.counters.iter().any(|&(x, y)| a.is_subset(x) && b.is_subset(y))
    }

    /// Swaps the two sides.
    pub fn transpose(&self) -> UpperRel {
        UpperRel::from_antichain(self.dst, self.src, self.counters.iter().map(|&(x, y)| (y, x)).collect())
    }

    /// Cut composite `s · r` with `self = r : S → S′` and `s : S′ → S″`.
    /// `A (s·r) C` holds iff for every `B ⊆ S′`, `A r (S′∖B)` or `B s C`.
    pub fn cut_then(&self, s: &UpperRel) -> Result<UpperRel> {
        if self.dst != s.src {
            return Err(Error::Mismatch(format!(
                "cut composite of relations into {} and out of {} generators",
                self.dst, s.src
            )));
        }
        let mid = FinSet::full(self.dst);
        let mut counters = Vec::new();
        for &(x, y) in &self.counters {
            for &(u, v) in &s.counters {
                if y.union(u) == mid {
                    counters.push((x, v));
                }
            }
        }
        Ok(UpperRel::from_counters(self.src, s.dst, counters))
    }

    /// `self ⊆ other`, or a pair of `self` missing from `other`.
    pub fn subset_witness(&self, other: &UpperRel) -> Option<(FinSet, FinSet)> {
        if self.src != other.src || self.dst != other.dst {
            return Some((FinSet::EMPTY, FinSet::EMPTY));
        }
        other.counters.iter().copied().find(|&c| !self.counters.iter().any(|&k| dominated(c, k)))
    }

    pub fn is_subset(&self, other: &UpperRel) -> bool {
        self.subset_witness(other).is_none()
    }

    /// A pair on which the two relations differ.
    pub fn difference(&self, other: &UpperRel) -> Option<(FinSet, FinSet)> {
        self.subset_witness(other).or_else(|| other.subset_witness(self))
    }

    /// `𝒰 r̃ 𝒱`: every `A ∈ 𝒰` is related to every `B ∈ 𝒱*`. Evaluated
    /// through the counters: a counter `(X, Y)` refutes it iff some member
    /// of `𝒰` fits in `X` and every member of `𝒱` meets `Y`.
    pub fn approx_ext(&self, u: &SubsetFamily, v: &SubsetFamily) -> bool {
        !self.counters.iter().any(|&(x, y)| u.iter().any(|a| a.is_subset(x)) && v.iter().all(|b| b.meets(y)))
    }

    /// `𝒰 r̃ 𝒱` straight from the definition, computing `𝒱*`.
    pub fn approx_ext_literal(&self, u: &SubsetFamily, v: &SubsetFamily) -> bool {
        let vs = star(v);
        u.iter().all(|a| vs.iter().all(|b| self.contains(a, b)))
    }

    pub fn table(&self) -> Result<PairRel> {
        PairRel::from_fn(self.src, self.dst, |a, b| self.contains(a, b))
    }

    /// All related pairs in canonical order.
    pub fn pairs(&self) -> Result<Vec<(FinSet, FinSet)>> {
        cap("upper relation bits |S|+|S'|", 22, self.src + self.dst)?;
        let mut left: Vec<FinSet> = FinSet::all(self.src).collect();
        let mut right: Vec<FinSet> = FinSet::all(self.dst).collect();
        left.sort_unstable();
        right.sort_unstable();
        let mut out = Vec::new();
        for &a in &left {
            for &b in &right {
                if self.contains(a, b) {
                    out.push((a, b));
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entail::{generate_entailment, AxiomSet};
    use crate::sets::Universe;

    fn s(bits: u64) -> FinSet {
        FinSet::from_bits(bits)
    }

    #[test]
    fn counters_round_trip_through_tables() {
        let ax = AxiomSet::with_axioms(Universe::indexed(3).unwrap(), alloc::vec![(s(1), s(6))]).unwrap();
        let e = generate_entailment(&ax).unwrap();
        let r = e.to_upper();
        assert_eq!(UpperRel::from_table(&r.table().unwrap()).unwrap(), r);
        for a in FinSet::all(3) {
            for b in FinSet::all(3) {
                assert_eq!(r.contains(a, b), e.entails(a, b));
            }
        }
    }

    #[test]
    fn entailment_cut_composed_with_itself() {
        let ax = AxiomSet::with_axioms(Universe::indexed(3).unwrap(), alloc::vec![(s(1), s(2)), (s(2), s(4))]).unwrap();
        let r = generate_entailment(&ax).unwrap().to_upper();
        assert_eq!(r.cut_then(&r).unwrap(), r);
    }

    #[test]
    fn empty_relation_composes_to_empty() {
        let r = UpperRel::none(1, 1);
        let s = UpperRel::none(1, 1);
        assert!(r.cut_then(&s).unwrap().pairs().unwrap().is_empty());
    }

    #[test]
    fn approx_ext_edge_cases() {
        let r = UpperRel::from_pairs(2, 2, &[(s(1), s(1))]).unwrap();
        let a: SubsetFamily = [s(1)].into_iter().collect();
        assert!(r.approx_ext(&a, &a));
        assert!(r.approx_ext(&SubsetFamily::empty(), &a));
        assert!(!r.approx_ext(&a, &SubsetFamily::empty()));
    }
}
