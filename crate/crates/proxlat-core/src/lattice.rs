//! Finite distributive lattices, their duals, ideals and filters, and finite
//! frames presented as families of subsets ordered by inclusion.
//!
//! Elements are indices `0..len`; subsets of elements are `u64` masks, which
//! is why lattices are capped at 64 elements.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{cap, Error, Result};
use crate::sets::FinSet;

pub const MAX_ELEMENTS: usize = 64;

/// Subset of lattice elements.
pub type ElemSet = u64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DistLattice {
    labels: Vec<String>,
    /// `up[a]` holds every `b` with `a ≤ b`.
    up: Vec<u64>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl DistLattice {
    /// Builds the tables from an order given as a predicate. Fails when the
    /// predicate is not a partial order or some pair lacks a glb or lub.
    pub fn from_leq<F>(labels: Vec<String>, leq: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = labels.len();
        cap("lattice size", MAX_ELEMENTS, n)?;
        if n == 0 {
            return Err(Error::Invalid("a lattice needs at least one element".into()));
        }
        let up: Vec<u64> = (0..n).map(|a| (0..n).filter(|&b| leq(a, b)).fold(0u64, |m, b| m | 1 << b)).collect();
        let le = |a: usize, b: usize| up[a] >> b & 1 == 1;
        for a in 0..n {
            if !le(a, a) {
                return Err(Error::Invalid(format!("order is not reflexive at {}", labels[a])));
            }
            for b in 0..n {
                if a != b && le(a, b) && le(b, a) {
                    return Err(Error::Invalid(format!("order is not antisymmetric: {} and {}", labels[a], labels[b])));
                }
                for c in 0..n {
                    if le(a, b) && le(b, c) && !le(a, c) {
                        return Err(Error::Invalid(format!(
                            "order is not transitive: {} ≤ {} ≤ {}",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let down: Vec<u64> = (0..n).map(|a| (0..n).filter(|&b| le(b, a)).fold(0u64, |m, b| m | 1 << b)).collect();
        let greatest = |set: u64| (0..n).find(|&x| set >> x & 1 == 1 && set & !down[x] == 0);
        let least = |set: u64| (0..n).find(|&x| set >> x & 1 == 1 && set & !up[x] == 0);
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                meet[a * n + b] = greatest(down[a] & down[b])
                    .ok_or_else(|| Error::Invalid(format!("{} and {} have no meet", labels[a], labels[b])))?;
                join[a * n + b] = least(up[a] & up[b])
                    .ok_or_else(|| Error::Invalid(format!("{} and {} have no join", labels[a], labels[b])))?;
            }
        }
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let bottom = least(all).ok_or_else(|| Error::Invalid("no least element".into()))?;
        let top = greatest(all).ok_or_else(|| Error::Invalid("no greatest element".into()))?;
        Ok(DistLattice { labels, up, meet, join, bottom, top })
    }

    /// Builds a lattice from covering pairs `(a, b)` meaning `a < b`; the
    /// order is their reflexive transitive closure.
    pub fn from_hasse(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        cap("lattice size", MAX_ELEMENTS, n)?;
        let mut up: Vec<u64> = (0..n).map(|a| 1u64 << a).collect();
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::Invalid(format!("cover ({a},{b}) out of range")));
            }
            up[a] |= 1 << b;
        }
        for k in 0..n {
            for i in 0..n {
                if up[i] >> k & 1 == 1 {
                    up[i] |= up[k];
                }
            }
        }
        DistLattice::from_leq(labels, |a, b| up[a] >> b & 1 == 1)
    }

    /// Assembles a lattice from raw tables without any checking; meant for
    /// feeding deliberately broken data to [`validate_lattice`].
    pub fn from_parts(
        labels: Vec<String>,
        leq: &[Vec<bool>],
        meet: Vec<usize>,
        join: Vec<usize>,
        bottom: usize,
        top: usize,
    ) -> Self {
        let up =
            leq.iter().map(|row| row.iter().enumerate().filter(|x| *x.1).fold(0u64, |m, (b, _)| m | 1 << b)).collect();
        DistLattice { labels, up, meet, join, bottom, top }
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

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn all(&self) -> ElemSet {
        FinSet::full(self.len()).bits()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a] >> b & 1 == 1
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// `↑a`.
    pub fn up_set(&self, a: usize) -> ElemSet {
        self.up[a]
    }

    /// `↓a`.
    pub fn down_set(&self, a: usize) -> ElemSet {
        (0..self.len()).filter(|&b| self.leq(b, a)).fold(0, |m, b| m | 1 << b)
    }

    /// `⋀A`, with `⋀∅ = 1`.
    pub fn meet_all(&self, a: ElemSet) -> usize {
        FinSet::from_bits(a).iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// `⋁A`, with `⋁∅ = 0`.
    pub fn join_all(&self, a: ElemSet) -> usize {
        FinSet::from_bits(a).iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Opposite order with meet and join (and the bounds) exchanged.
    pub fn dual(&self) -> DistLattice {
        let n = self.len();
        let up = (0..n).map(|a| (0..n).filter(|&b| self.leq(b, a)).fold(0u64, |m, b| m | 1 << b)).collect();
        DistLattice {
            labels: self.labels.clone(),
            up,
            meet: self.join.clone(),
            join: self.meet.clone(),
            bottom: self.top,
            top: self.bottom,
        }
    }

    pub fn is_ideal(&self, set: ElemSet) -> bool {
        let members = FinSet::from_bits(set);
        members.has(self.bottom)
            && members.iter().all(|a| self.down_set(a) & !set == 0)
            && members.iter().all(|a| members.iter().all(|b| members.has(self.join(a, b))))
    }

    pub fn is_filter(&self, set: ElemSet) -> bool {
        let members = FinSet::from_bits(set);
        members.has(self.top)
            && members.iter().all(|a| self.up[a] & !set == 0)
            && members.iter().all(|a| members.iter().all(|b| members.has(self.meet(a, b))))
    }

    /// Covering pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq(a, b) && !(0..n).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Frame of all ideals ordered by inclusion. Every ideal of a finite
    /// lattice is principal, so the candidates are the sets `↓a`.
    pub fn ideal_completion(&self) -> Result<Frame> {
        let members: Vec<u64> = (0..self.len()).map(|a| self.down_set(a)).collect();
        debug_assert!(members.iter().all(|&m| self.is_ideal(m)));
        let frame = Frame::from_members(self.labels.clone(), members)?;
        // 0 = {0}, I ∨ J = {c | c ≤ a ∨ b, a ∈ I, b ∈ J}, I ∧ J = I ∩ J.
        frame.check_operations(
            self.down_set(self.bottom),
            self.all(),
            |i, j| {
                let mut out = 0;
                for a in FinSet::from_bits(i).iter() {
                    for b in FinSet::from_bits(j).iter() {
                        out |= self.down_set(self.join(a, b));
                    }
                }
                out
            },
            |i, j| i & j,
        )?;
        Ok(frame)
    }
}

/// One violated lattice invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeViolation {
    Reflexivity(usize),
    Antisymmetry(usize, usize),
    Transitivity(usize, usize, usize),
    Meet(usize, usize),
    Join(usize, usize),
    Bottom,
    Top,
    Distributivity(usize, usize, usize),
}

/// Outcome of [`validate_lattice`]; empty iff the lattice is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LatticeReport {
    pub violations: Vec<(LatticeViolation, String)>,
}

impl LatticeReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for LatticeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return writeln!(f, "lattice: valid");
        }
        for (_, msg) in &self.violations {
            writeln!(f, "lattice violation: {msg}")?;
        }
        Ok(())
    }
}

/// Checks order axioms, glb/lub tables, bounds and distributivity,
/// recording every violation with a witness.
pub fn validate_lattice(l: &DistLattice) -> LatticeReport {
    use LatticeViolation::*;
    let n = l.len();
    let name = |a: usize| l.label(a);
    let mut v = Vec::new();
    for a in 0..n {
        if !l.leq(a, a) {
            v.push((Reflexivity(a), format!("{} ≰ {}", name(a), name(a))));
        }
    }
    for a in 0..n {
        for b in 0..n {
            if a != b && l.leq(a, b) && l.leq(b, a) {
                v.push((Antisymmetry(a, b), format!("{} ≤ {} ≤ {}", name(a), name(b), name(a))));
            }
            for c in 0..n {
                if l.leq(a, b) && l.leq(b, c) && !l.leq(a, c) {
                    v.push((
                        Transitivity(a, b, c),
                        format!("{} ≤ {} ≤ {} but {} ≰ {}", name(a), name(b), name(c), name(a), name(c)),
                    ));
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let m = l.meet(a, b);
            let glb = l.leq(m, a) && l.leq(m, b) && (0..n).all(|c| !(l.leq(c, a) && l.leq(c, b)) || l.leq(c, m));
            if !glb {
                v.push((Meet(a, b), format!("{} ∧ {} = {} is not the glb", name(a), name(b), name(m))));
            }
            let j = l.join(a, b);
            let lub = l.leq(a, j) && l.leq(b, j) && (0..n).all(|c| !(l.leq(a, c) && l.leq(b, c)) || l.leq(j, c));
            if !lub {
                v.push((Join(a, b), format!("{} ∨ {} = {} is not the lub", name(a), name(b), name(j))));
            }
        }
    }
    if !(0..n).all(|a| l.leq(l.bottom(), a)) {
        v.push((Bottom, format!("{} is not least", name(l.bottom()))));
    }
    if !(0..n).all(|a| l.leq(a, l.top())) {
        v.push((Top, format!("{} is not greatest", name(l.top()))));
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = l.meet(x, l.join(y, z));
                let rhs = l.join(l.meet(x, y), l.meet(x, z));
                if lhs != rhs {
                    v.push((
                        Distributivity(x, y, z),
                        format!(
                            "{x} ∧ ({y} ∨ {z}) = {} but ({x} ∧ {y}) ∨ ({x} ∧ {z}) = {}",
                            name(lhs),
                            name(rhs),
                            x = name(x),
                            y = name(y),
                            z = name(z)
                        ),
                    ));
                }
            }
        }
    }
    LatticeReport { violations: v }
}

/// A finite frame whose elements are subsets of a carrier of at most 64
/// points, ordered by inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    carrier: Vec<String>,
    members: Vec<u64>,
    lattice: DistLattice,
}

impl Frame {
    /// Sorts the member sets canonically and builds the inclusion lattice.
    pub fn from_members(carrier: Vec<String>, mut members: Vec<u64>) -> Result<Self> {
        cap("frame size", MAX_ELEMENTS, members.len())?;
        members.sort_by_key(|&m| FinSet::from_bits(m));
        members.dedup();
        let labels = members.iter().map(|&m| show_elems(&carrier, m)).collect();
        let lattice = DistLattice::from_leq(labels, |a, b| members[a] & !members[b] == 0)?;
        Ok(Frame { carrier, members, lattice })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn lattice(&self) -> &DistLattice {
        &self.lattice
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn index_of(&self, set: u64) -> Option<usize> {
        self.members.iter().position(|&m| m == set)
    }

    /// Verifies that construction specific formulas for the bounds, binary
    /// joins and binary meets agree with the inclusion lattice.
    pub fn check_operations<J, M>(&self, zero: u64, one: u64, join: J, meet: M) -> Result<()>
    where
        J: Fn(u64, u64) -> u64,
        M: Fn(u64, u64) -> u64,
    {
        let l = &self.lattice;
        let show = |m: u64| show_elems(&self.carrier, m);
        if self.members[l.bottom()] != zero {
            return Err(Error::Invalid(format!("bottom formula gives {}", show(zero))));
        }
        if self.members[l.top()] != one {
            return Err(Error::Invalid(format!("top formula gives {}", show(one))));
        }
        for a in 0..self.len() {
            for b in 0..self.len() {
                let (x, y) = (self.members[a], self.members[b]);
                if join(x, y) != self.members[l.join(a, b)] {
                    return Err(Error::Invalid(format!(
                        "join formula disagrees with lub at {} and {}",
                        show(x),
                        show(y)
                    )));
                }
                if meet(x, y) != self.members[l.meet(a, b)] {
                    return Err(Error::Invalid(format!(
                        "meet formula disagrees with glb at {} and {}",
                        show(x),
                        show(y)
                    )));
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn show_elems(carrier: &[String], set: u64) -> String {
    let parts: Vec<&str> = FinSet::from_bits(set).iter().map(|i| carrier[i].as_str()).collect();
    format!("{{{}}}", parts.join(","))
}
