//! Dense relations on `Fin(S) × Fin(S′)` for small universes: extensional
//! validation of the entailment rules and the saturation kernel.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{cap, Error, Result};
use crate::sets::FinSet;

/// Largest `|S| + |S′|` for which a dense table is materialized.
pub const MAX_DENSE_BITS: usize = 26;

/// Arbitrary relation on `Fin(S) × Fin(S′)`, one bit per pair. The pair
/// `(A, B)` sits at index `A | B << |S|`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PairRel {
    src: usize,
    dst: usize,
    words: Vec<u64>,
}

impl fmt::Debug for PairRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

impl PairRel {
    pub fn empty(src: usize, dst: usize) -> Result<Self> {
        cap("dense pair table bits |S|+|S'|", MAX_DENSE_BITS, src + dst)?;
        let bits = 1usize << (src + dst);
        Ok(PairRel { src, dst, words: vec![0; bits.div_ceil(64)] })
    }

    pub fn from_fn<F: Fn(FinSet, FinSet) -> bool>(src: usize, dst: usize, f: F) -> Result<Self> {
        let mut r = PairRel::empty(src, dst)?;
        for b in FinSet::all(dst) {
            for a in FinSet::all(src) {
                if f(a, b) {
                    r.insert(a, b);
                }
            }
        }
        Ok(r)
    }

    pub fn from_pairs<I: IntoIterator<Item = (FinSet, FinSet)>>(src: usize, dst: usize, pairs: I) -> Result<Self> {
        let mut r = PairRel::empty(src, dst)?;
        for (a, b) in pairs {
            if !a.is_subset(FinSet::full(src)) || !b.is_subset(FinSet::full(dst)) {
                return Err(Error::Invalid(format!("pair ({a:?},{b:?}) outside the universe")));
            }
            r.insert(a, b);
        }
        Ok(r)
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn dst(&self) -> usize {
        self.dst
    }

    fn index(&self, a: FinSet, b: FinSet) -> usize {
        (a.bits() | b.bits() << self.src) as usize
    }

    fn bit_count(&self) -> usize {
        1usize << (self.src + self.dst)
    }

    pub fn contains(&self, a: FinSet, b: FinSet) -> bool {
        let i = self.index(a, b);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, a: FinSet, b: FinSet) {
        let i = self.index(a, b);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, a: FinSet, b: FinSet) {
        let i = self.index(a, b);
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Pairs in index order.
    pub fn pairs(&self) -> impl Iterator<Item = (FinSet, FinSet)> + '_ {
        let lo = FinSet::full(self.src).bits();
        (0..self.bit_count()).filter(move |&i| self.words[i / 64] >> (i % 64) & 1 == 1).map(move |i| {
            let i = i as u64;
            (FinSet::from_bits(i & lo), FinSet::from_bits(i >> self.src))
        })
    }

    pub fn transpose(&self) -> Result<PairRel> {
        let mut out = PairRel::empty(self.dst, self.src)?;
        for (a, b) in self.pairs() {
            out.insert(b, a);
        }
        Ok(out)
    }

    /// Relational composite "first `self`, then `next`".
    pub fn then(&self, next: &PairRel) -> Result<PairRel> {
        if self.dst != next.src {
            return Err(Error::Mismatch("relational composite of incompatible relations".into()));
        }
        let mut out = PairRel::empty(self.src, next.dst)?;
        for (a, b) in self.pairs() {
            for c in FinSet::all(next.dst) {
                if next.contains(b, c) {
                    out.insert(a, c);
                }
            }
        }
        Ok(out)
    }

    pub fn is_subset(&self, other: &PairRel) -> bool {
        self.src == other.src && self.dst == other.dst && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Pair of `self` missing from `other`.
    pub fn first_difference(&self, other: &PairRel) -> Option<(FinSet, FinSet)> {
        self.pairs().find(|&(a, b)| !other.contains(a, b))
    }

    /// `out[i] = self[i | 1 << p]` for indices `i` with bit `p` clear.
    fn pull_down(&self, p: usize) -> Vec<u64> {
        let mut out = vec![0u64; self.words.len()];
        if p >= 6 {
            let q = 1usize << (p - 6);
            for (j, w) in out.iter_mut().enumerate() {
                if j & q == 0 {
                    *w = self.words[j | q];
                }
            }
        } else {
            let s = 1u32 << p;
            let mask = clear_mask(p);
            for (o, &w) in out.iter_mut().zip(&self.words) {
                *o = (w >> s) & mask;
            }
        }
        out
    }

    /// Closes under enlarging either side (rule (M)).
    fn close_upward(&mut self) {
        for p in 0..self.src + self.dst {
            if p >= 6 {
                let q = 1usize << (p - 6);
                for j in 0..self.words.len() {
                    if j & q == 0 {
                        let w = self.words[j];
                        self.words[j | q] |= w;
                    }
                }
            } else {
                let s = 1u32 << p;
                let mask = clear_mask(p);
                for w in self.words.iter_mut() {
                    *w |= (*w & mask) << s;
                }
            }
        }
        self.trim();
    }

    fn trim(&mut self) {
        let bits = self.bit_count();
        if bits < 64 {
            self.words[0] &= (1u64 << bits) - 1;
        }
    }
}

/// Word mask of the bit positions whose index has bit `p` clear (`p < 6`).
fn clear_mask(p: usize) -> u64 {
    const MASKS: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0f0f_0f0f_0f0f_0f0f,
        0x00ff_00ff_00ff_00ff,
        0x0000_ffff_0000_ffff,
        0x0000_0000_ffff_ffff,
    ];
    MASKS[p]
}

/// A violated entailment rule with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntailViolation {
    /// `{a} ⊬ {a}`.
    Reflexivity(usize),
    /// `A ⊢ B` but the enlargement by one generator is missing.
    Monotonicity { a: FinSet, b: FinSet, left: FinSet, right: FinSet },
    /// `A ⊢ B, c` and `A, c ⊢ B` but `A ⊬ B`.
    Transitivity { a: FinSet, b: FinSet, cut: usize },
    /// Source and target universes differ.
    NotEndo,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EntailReport {
    pub violations: Vec<EntailViolation>,
}

impl EntailReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn render(&self, labels: &[String]) -> String {
        let show = |s: FinSet| {
            let parts: Vec<&str> = s.iter().map(|i| labels[i].as_str()).collect();
            format!("{{{}}}", parts.join(","))
        };
        if self.is_valid() {
            return "entailment relation: valid\n".into();
        }
        let mut out = String::new();
        for v in &self.violations {
            let line = match v {
                EntailViolation::Reflexivity(a) => format!("(R) fails at {}", labels[*a]),
                EntailViolation::Monotonicity { a, b, left, right } => {
                    format!("(M) fails: {} ⊢ {} but not {} ⊢ {}", show(*a), show(*b), show(*left), show(*right))
                }
                EntailViolation::Transitivity { a, b, cut } => {
                    format!("(T) fails: cut on {} would give {} ⊢ {}", labels[*cut], show(*a), show(*b))
                }
                EntailViolation::NotEndo => "relation is not on a single universe".into(),
            };
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

/// Checks (R), (M) and (T) exhaustively. (M) is checked one generator at
/// a time, which suffices on a finite universe.
pub fn validate_entailment(r: &PairRel) -> EntailReport {
    let mut v = Vec::new();
    if r.src != r.dst {
        v.push(EntailViolation::NotEndo);
        return EntailReport { violations: v };
    }
    let n = r.src;
    for a in 0..n {
        let s = FinSet::EMPTY.with(a);
        if !r.contains(s, s) {
            v.push(EntailViolation::Reflexivity(a));
        }
    }
    for (a, b) in r.pairs() {
        for x in 0..n {
            if !a.has(x) && !r.contains(a.with(x), b) {
                v.push(EntailViolation::Monotonicity { a, b, left: a.with(x), right: b });
            }
            if !b.has(x) && !r.contains(a, b.with(x)) {
                v.push(EntailViolation::Monotonicity { a, b, left: a, right: b.with(x) });
            }
        }
    }
    for b in FinSet::all(n) {
        for a in FinSet::all(n) {
            if r.contains(a, b) {
                continue;
            }
            for c in 0..n {
                if r.contains(a, b.with(c)) && r.contains(a.with(c), b) {
                    v.push(EntailViolation::Transitivity { a, b, cut: c });
                    break;
                }
            }
        }
    }
    EntailReport { violations: v }
}

/// A pair `(A, B)` of `r` and an enlargement missing from `r`, if any.
pub fn upper_violation(r: &PairRel) -> Option<((FinSet, FinSet), (FinSet, FinSet))> {
    for (a, b) in r.pairs() {
        for x in 0..r.src {
            if !a.has(x) && !r.contains(a.with(x), b) {
                return Some(((a, b), (a.with(x), b)));
            }
        }
        for y in 0..r.dst {
            if !b.has(y) && !r.contains(a, b.with(y)) {
                return Some(((a, b), (a, b.with(y))));
            }
        }
    }
    None
}

/// Closed under enlarging both sides.
pub fn is_upper(r: &PairRel) -> bool {
    upper_violation(r).is_none()
}

/// Default generator bound for [`saturate`]: the pair table has `4^n` bits.
pub const SATURATION_CAP: usize = 12;

/// Least entailment relation containing `axioms`, computed syntactically:
/// seed with the overlap pairs (R′) and the axioms, close under (M), then
/// apply (T) for every cut generator until nothing new is derived.
pub fn saturate(n: usize, axioms: &[(FinSet, FinSet)], max_generators: usize) -> Result<PairRel> {
    if n > max_generators {
        return Err(Error::SizeCap { what: "saturation universe (pair table 4^n)", limit: max_generators, actual: n });
    }
    let mut d = PairRel::empty(n, n)?;
    for a in 0..n {
        let s = FinSet::EMPTY.with(a);
        d.insert(s, s);
    }
    for &(a, b) in axioms {
        d.insert(a, b);
    }
    d.close_upward();
    loop {
        let mut changed = false;
        for c in 0..n {
            let left = d.pull_down(c);
            let right = d.pull_down(n + c);
            for (j, w) in d.words.iter_mut().enumerate() {
                let new = left[j] & right[j] & !*w;
                if new != 0 {
                    *w |= new;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    d.trim();
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(bits: u64) -> FinSet {
        FinSet::from_bits(bits)
    }

    #[test]
    fn overlap_is_valid_and_saturation_reproduces_it() {
        for n in 0..4 {
            let overlap = PairRel::from_fn(n, n, |a, b| a.meets(b)).unwrap();
            assert!(validate_entailment(&overlap).is_valid());
            assert_eq!(saturate(n, &[], 12).unwrap(), overlap);
        }
    }

    #[test]
    fn missing_reflexive_pair_is_reported() {
        let mut r = PairRel::from_fn(2, 2, |a, b| a.meets(b)).unwrap();
        r.remove(s(1), s(1));
        let report = validate_entailment(&r);
        assert!(report.violations.contains(&EntailViolation::Reflexivity(0)));
    }

    #[test]
    fn inconsistent_axiom_fills_table() {
        let r = saturate(1, &[(FinSet::EMPTY, FinSet::EMPTY)], 12).unwrap();
        assert_eq!(r.len(), 4);
    }

    #[test]
    fn upper_checks() {
        let single = PairRel::from_pairs(2, 2, [(s(1), s(2))]).unwrap();
        assert!(!is_upper(&single));
        let ent = saturate(3, &[(s(1), s(2))], 12).unwrap();
        assert!(is_upper(&ent));
    }

    #[test]
    fn saturation_cap_is_enforced() {
        assert!(matches!(saturate(13, &[], 12), Err(Error::SizeCap { .. })));
    }
}
