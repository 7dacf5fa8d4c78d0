//! Finite subsets of a generator universe, families of them and the star
//! transpose `𝒰*`.
//!
//! A generator is an index into a [`Universe`]; the index order is the
//! canonical total order. A [`FinSet`] is a bitmask over at most
//! [`MAX_GENERATORS`] generators.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{cap, Result};

pub const MAX_GENERATORS: usize = 64;

/// Generator of a universe, identified by its position in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(pub u32);

impl Generator {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Finite subset of a universe with at most 64 generators.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct FinSet(u64);

impl FinSet {
    pub const EMPTY: FinSet = FinSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        FinSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(g: Generator) -> Self {
        FinSet(1u64 << g.0)
    }

    /// The whole universe of `n` generators.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            FinSet(u64::MAX)
        } else {
            FinSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, g: Generator) -> bool {
        self.0 >> g.0 & 1 == 1
    }

    pub fn has(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        FinSet(self.0 | 1u64 << i)
    }

    pub fn without(self, i: usize) -> Self {
        FinSet(self.0 & !(1u64 << i))
    }

    pub fn union(self, o: Self) -> Self {
        FinSet(self.0 | o.0)
    }

    pub fn inter(self, o: Self) -> Self {
        FinSet(self.0 & o.0)
    }

    pub fn minus(self, o: Self) -> Self {
        FinSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn meets(self, o: Self) -> bool {
        self.0 & o.0 != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Complement relative to a universe of `n` generators.
    pub fn complement(self, n: usize) -> Self {
        FinSet(!self.0 & FinSet::full(n).0)
    }

    /// Member indices in increasing order.
    pub fn iter(self) -> Members {
        Members(self.0)
    }

    /// All subsets of `self`, smallest bit pattern first.
    pub fn subsets(self) -> Subsets {
        Subsets { mask: self.0, next: Some(0) }
    }

    /// Every subset of a universe of `n` generators.
    pub fn all(n: usize) -> Subsets {
        FinSet::full(n).subsets()
    }

    /// Image under a generator map (`map[i]` is the image of generator `i`).
    pub fn map_by(self, map: &[usize]) -> Self {
        self.iter().fold(FinSet::EMPTY, |acc, i| acc.with(map[i]))
    }
}

/// Canonical order on subsets: by cardinality, then lexicographically on
/// the increasing member sequence.
impl Ord for FinSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & diff & diff.wrapping_neg() != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for FinSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<Generator> for FinSet {
    fn from_iter<I: IntoIterator<Item = Generator>>(iter: I) -> Self {
        iter.into_iter().fold(FinSet::EMPTY, |acc, g| acc.union(FinSet::singleton(g)))
    }
}

pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = FinSet;
    fn next(&mut self) -> Option<FinSet> {
        let cur = self.next?;
        self.next = if cur == self.mask { None } else { Some((cur.wrapping_sub(self.mask)) & self.mask) };
        Some(FinSet(cur))
    }
}

/// Sorted, duplicate free finite family of finite subsets.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetFamily(Vec<FinSet>);

impl SubsetFamily {
    pub fn empty() -> Self {
        SubsetFamily(Vec::new())
    }

    pub fn members(&self) -> &[FinSet] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, a: FinSet) -> bool {
        self.0.binary_search(&a).is_ok()
    }

    pub fn iter(&self) -> core::iter::Copied<core::slice::Iter<'_, FinSet>> {
        self.0.iter().copied()
    }

    /// Union of all members.
    pub fn support(&self) -> FinSet {
        self.iter().fold(FinSet::EMPTY, FinSet::union)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.iter().chain(other.iter()).collect()
    }

    /// Pairwise unions `{A ∪ B}`: the meet clause of `L(S,⊢)`.
    pub fn pairwise_union(&self, other: &Self) -> Self {
        self.iter().flat_map(|a| other.iter().map(move |b| a.union(b))).collect()
    }
}

impl FromIterator<FinSet> for SubsetFamily {
    fn from_iter<I: IntoIterator<Item = FinSet>>(iter: I) -> Self {
        let mut v: Vec<FinSet> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        SubsetFamily(v)
    }
}

impl fmt::Debug for SubsetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// Sort and deduplicate a sequence of generators.
pub fn canon_finset<I: IntoIterator<Item = Generator>>(elements: I) -> FinSet {
    elements.into_iter().collect()
}

/// `P⁺Fin(A)`: the inhabited subsets of `A`.
pub fn nonempty_subsets(a: FinSet) -> SubsetFamily {
    a.subsets().filter(|s| !s.is_empty()).collect()
}

/// The transpose `𝒰*`, by the inductive clauses `∅* = {∅}` and
/// `(𝒰 ∪ {A})* = {B ∪ C | B ∈ 𝒰*, C ∈ P⁺Fin(A)}`, members taken in
/// canonical order. Redundant supersets are kept.
pub fn star(u: &SubsetFamily) -> SubsetFamily {
    let mut acc = SubsetFamily(alloc::vec![FinSet::EMPTY]);
    for a in u.iter() {
        let parts = nonempty_subsets(a);
        acc = acc.pairwise_union(&parts);
    }
    acc
}

/// Minimal members of `u` under the preorder `leq`; each equivalence class
/// of minimal members is represented by its canonically least element.
pub fn antichain_min<F>(u: &SubsetFamily, leq: F) -> SubsetFamily
where
    F: Fn(FinSet, FinSet) -> bool,
{
    let mut kept: Vec<FinSet> = Vec::new();
    for x in u.iter() {
        let dominated = u.iter().any(|y| leq(y, x) && !leq(x, y));
        let duplicate = kept.iter().any(|&y| leq(y, x) && leq(x, y));
        if !dominated && !duplicate {
            kept.push(x);
        }
    }
    SubsetFamily(kept)
}

/// Named generators in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Universe {
    labels: Vec<String>,
}

impl Universe {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        cap("generator count", MAX_GENERATORS, labels.len())?;
        Ok(Universe { labels })
    }

    /// Universe with generators labelled `0..n`.
    pub fn indexed(n: usize) -> Result<Self> {
        Universe::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn full(&self) -> FinSet {
        FinSet::full(self.len())
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> {
        (0..self.len() as u32).map(Generator)
    }

    pub fn lookup(&self) -> BTreeMap<&str, usize> {
        self.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect()
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn show(&self, a: FinSet) -> String {
        let parts: Vec<&str> = a.iter().map(|i| self.labels[i].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn show_family(&self, u: &SubsetFamily) -> String {
        let parts: Vec<String> = u.iter().map(|a| self.show(a)).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Comma separated members without braces, as used by sequents.
    pub fn show_bare(&self, a: FinSet) -> String {
        let parts: Vec<&str> = a.iter().map(|i| self.labels[i].as_str()).collect();
        parts.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn s(bits: &[usize]) -> FinSet {
        bits.iter().fold(FinSet::EMPTY, |a, &i| a.with(i))
    }

    #[test]
    fn canon_sorts_and_dedups() {
        let a = canon_finset([Generator(1), Generator(0), Generator(0)]);
        assert_eq!(a, s(&[0, 1]));
        assert_eq!(canon_finset([]), FinSet::EMPTY);
    }

    #[test]
    fn canonical_order_is_shortlex() {
        let mut v = vec![s(&[1]), s(&[0, 1]), FinSet::EMPTY, s(&[0]), s(&[2]), s(&[0, 2])];
        v.sort();
        assert_eq!(v, vec![FinSet::EMPTY, s(&[0]), s(&[1]), s(&[2]), s(&[0, 1]), s(&[0, 2])]);
    }

    #[test]
    fn nonempty_subsets_examples() {
        assert_eq!(nonempty_subsets(s(&[0])).members(), &[s(&[0])]);
        assert_eq!(nonempty_subsets(s(&[0, 1])).members(), &[s(&[0]), s(&[1]), s(&[0, 1])]);
        assert!(nonempty_subsets(FinSet::EMPTY).is_empty());
    }

    #[test]
    fn star_examples() {
        assert_eq!(star(&SubsetFamily::empty()).members(), &[FinSet::EMPTY]);
        let single: SubsetFamily = [s(&[0])].into_iter().collect();
        assert_eq!(star(&single).members(), &[s(&[0])]);
        // {{a},{b,c}}* = {{a,b},{a,c},{a,b,c}}
        let u: SubsetFamily = [s(&[0]), s(&[1, 2])].into_iter().collect();
        assert_eq!(star(&u).members(), &[s(&[0, 1]), s(&[0, 2]), s(&[0, 1, 2])]);
    }

    #[test]
    fn antichain_min_examples() {
        let sub = |a: FinSet, b: FinSet| a.is_subset(b);
        let u: SubsetFamily = [s(&[0]), s(&[0, 1])].into_iter().collect();
        assert_eq!(antichain_min(&u, sub).members(), &[s(&[0])]);
        assert!(antichain_min(&SubsetFamily::empty(), sub).is_empty());
        let v: SubsetFamily = [s(&[0]), s(&[1])].into_iter().collect();
        assert_eq!(antichain_min(&v, sub), v);
    }

    #[test]
    fn subsets_enumerates_all() {
        assert_eq!(s(&[1, 3, 4]).subsets().count(), 8);
        assert_eq!(FinSet::all(0).count(), 1);
    }
}
