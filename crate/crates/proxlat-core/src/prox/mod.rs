//! Proximity relations between finite distributive lattices and proximity
//! lattices `(S, ≺)`.

mod equiv;
mod maps;
mod vee;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use equiv::{fg_witnesses, functor_f, functor_g, FImage, InverseReport, Witnesses};
pub use maps::{
    adjoint_defect, adjoint_map_defect, check_karoubi_morphism, is_adjoint_map_pair, is_adjoint_pair,
    is_join_preserving_map, jp_literal, jp_split_literal, jp_violation, karoubi_defect, AdjointDefect, JpViolation,
    ProxMap,
};
pub use vee::{veeify, wedge_axioms, wedge_entailment, Veeified, Wedge};

use crate::binrel::BinRel;
use crate::error::{Error, Result};
use crate::lattice::DistLattice;

/// A relation between the elements of two lattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProxRel {
    source: DistLattice,
    target: DistLattice,
    rel: BinRel,
}

impl ProxRel {
    pub fn new(source: DistLattice, target: DistLattice, rel: BinRel) -> Result<Self> {
        if rel.n_rows() != source.len() || rel.n_cols() != target.len() {
            return Err(Error::Mismatch(format!(
                "{}x{} relation between lattices of sizes {} and {}",
                rel.n_rows(),
                rel.n_cols(),
                source.len(),
                target.len()
            )));
        }
        Ok(ProxRel { source, target, rel })
    }

    pub fn from_fn<F: Fn(usize, usize) -> bool>(source: &DistLattice, target: &DistLattice, f: F) -> Result<Self> {
        let rel = BinRel::from_fn(source.len(), target.len(), f)?;
        ProxRel::new(source.clone(), target.clone(), rel)
    }

    /// The lattice order `≤`, the identity of the category of lattices.
    pub fn order(l: &DistLattice) -> ProxRel {
        ProxRel::from_fn(l, l, |a, b| l.leq(a, b)).expect("lattice within relation cap")
    }

    pub fn source(&self) -> &DistLattice {
        &self.source
    }

    pub fn target(&self) -> &DistLattice {
        &self.target
    }

    pub fn rel(&self) -> &BinRel {
        &self.rel
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.rel.contains(a, b)
    }

    /// First `self`, then `next`.
    pub fn then(&self, next: &ProxRel) -> Result<ProxRel> {
        if self.target != next.source {
            return Err(Error::Mismatch("composite of relations over different lattices".into()));
        }
        ProxRel::new(self.source.clone(), next.target.clone(), self.rel.then(&next.rel)?)
    }

    /// `r⁻ : S′^∂ → S^∂`.
    pub fn transpose(&self) -> ProxRel {
        ProxRel { source: self.target.dual(), target: self.source.dual(), rel: self.rel.transpose() }
    }

    pub fn is_idempotent(&self) -> bool {
        self.source == self.target && self.rel.is_idempotent()
    }

    /// A pair of `self` outside `other`, or of `other` outside `self`.
    pub fn difference(&self, other: &ProxRel) -> Option<(usize, usize)> {
        self.rel.first_difference(&other.rel).or_else(|| other.rel.first_difference(&self.rel))
    }

    /// (Prox0) and (Prox∨): `a r 0′ → a = 0` and
    /// `a r b∨c → ∃b′ r b, c′ r c with a ≤ b′∨c′`.
    pub fn join_preserving_violation(&self) -> Option<JoinViolation> {
        let (s, t) = (&self.source, &self.target);
        if let Some(a) = (0..s.len()).find(|&a| a != s.bottom() && self.contains(a, t.bottom())) {
            return Some(JoinViolation::Zero(a));
        }
        // Largest element below each column; columns are ideals when valid.
        let tops: Vec<Option<usize>> = (0..t.len())
            .map(|b| {
                let col = self.rel.col(b);
                let j = s.join_all(col);
                (col >> j & 1 == 1).then_some(j)
            })
            .collect();
        for b in 0..t.len() {
            for c in b..t.len() {
                let bc = t.join(b, c);
                for a in crate::sets::FinSet::from_bits(self.rel.col(bc)).iter() {
                    let ok = match (tops[b], tops[c]) {
                        (Some(x), Some(y)) => s.leq(a, s.join(x, y)),
                        _ => crate::sets::FinSet::from_bits(self.rel.col(b)).iter().any(|x| {
                            crate::sets::FinSet::from_bits(self.rel.col(c)).iter().any(|y| s.leq(a, s.join(x, y)))
                        }),
                    };
                    if !ok {
                        return Some(JoinViolation::Join { a, b, c });
                    }
                }
            }
        }
        None
    }
}

/// A failure of (Prox0) or (Prox∨); for a dual check the roles read as
/// (Prox1) and (Prox∧).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JoinViolation {
    Zero(usize),
    Join { a: usize, b: usize, c: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProxViolation {
    /// `r⁻b` is not an ideal.
    NotIdeal(usize),
    /// `r a` is not a filter.
    NotFilter(usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProxReport {
    pub violations: Vec<(ProxViolation, String)>,
}

impl ProxReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ProxReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return writeln!(f, "proximity relation: valid");
        }
        for (_, msg) in &self.violations {
            writeln!(f, "proximity violation: {msg}")?;
        }
        Ok(())
    }
}

/// (ProxI) every preimage `r⁻b` is an ideal; (ProxF) every image `r a` is
/// a filter.
pub fn validate_prox_relation(r: &ProxRel) -> ProxReport {
    let mut violations = Vec::new();
    let show = |l: &DistLattice, m: u64| crate::lattice::show_elems(l.labels(), m);
    for b in 0..r.target.len() {
        let col = r.rel.col(b);
        if !r.source.is_ideal(col) {
            violations.push((
                ProxViolation::NotIdeal(b),
                format!("preimage of {} is {}, not an ideal", r.target.label(b), show(&r.source, col)),
            ));
        }
    }
    for a in 0..r.source.len() {
        let row = r.rel.row(a);
        if !r.target.is_filter(row) {
            violations.push((
                ProxViolation::NotFilter(a),
                format!("image of {} is {}, not a filter", r.source.label(a), show(&r.target, row)),
            ));
        }
    }
    ProxReport { violations }
}

/// `r` followed by `s`.
pub fn compose_prox(r: &ProxRel, s: &ProxRel) -> Result<ProxRel> {
    r.then(s)
}

/// A lattice with an idempotent proximity relation `≺`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProxLat {
    lattice: DistLattice,
    prec: BinRel,
}

/// Strong proximity lattices are proximity lattices passing [`classify_prox`].
pub type StrongProxLat = ProxLat;

impl ProxLat {
    /// Checks (ProxI), (ProxF) and idempotence.
    pub fn new(lattice: DistLattice, prec: BinRel) -> Result<Self> {
        let r = ProxRel::new(lattice.clone(), lattice.clone(), prec.clone())?;
        let report = validate_prox_relation(&r);
        if !report.is_valid() {
            return Err(Error::Invalid(format!("{report}").trim_end().into()));
        }
        if let Some((a, b)) = prec.then(&prec)?.difference_with(&prec) {
            return Err(Error::Invalid(format!("≺ is not idempotent at ({}, {})", lattice.label(a), lattice.label(b))));
        }
        Ok(ProxLat { lattice, prec })
    }

    /// `(S, ≤)`.
    pub fn with_order(lattice: DistLattice) -> Self {
        let prec = ProxRel::order(&lattice).rel;
        ProxLat { lattice, prec }
    }

    pub fn lattice(&self) -> &DistLattice {
        &self.lattice
    }

    pub fn prec(&self) -> &BinRel {
        &self.prec
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn precedes(&self, a: usize, b: usize) -> bool {
        self.prec.contains(a, b)
    }

    pub fn as_rel(&self) -> ProxRel {
        ProxRel { source: self.lattice.clone(), target: self.lattice.clone(), rel: self.prec.clone() }
    }

    /// The de Groot dual `(S^∂, ≻)`.
    pub fn dual(&self) -> ProxLat {
        ProxLat { lattice: self.lattice.dual(), prec: self.prec.transpose() }
    }

    pub fn classify(&self) -> Classification {
        classify_prox(self)
    }
}

/// `(S^∂, ≻)`.
pub fn degroot_dual_splat(s: &ProxLat) -> ProxLat {
    s.dual()
}

trait Difference {
    fn difference_with(&self, other: &Self) -> Option<(usize, usize)>;
}

impl Difference for BinRel {
    fn difference_with(&self, other: &Self) -> Option<(usize, usize)> {
        self.first_difference(other).or_else(|| other.first_difference(self))
    }
}

/// Which strongness axioms hold, with a witness for each failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub prox0: Option<usize>,
    pub prox_join: Option<(usize, usize, usize)>,
    pub prox1: Option<usize>,
    pub prox_meet: Option<(usize, usize, usize)>,
}

impl Classification {
    pub fn join_strong(&self) -> bool {
        self.prox0.is_none() && self.prox_join.is_none()
    }

    pub fn strong(&self) -> bool {
        self.join_strong() && self.prox1.is_none() && self.prox_meet.is_none()
    }

    pub fn describe(&self, l: &DistLattice) -> String {
        let mut out = String::new();
        let n = |x: usize| l.label(x);
        match self.prox0 {
            Some(a) => out.push_str(&format!("Prox0 fails: {} ≺ 0\n", n(a))),
            None => out.push_str("Prox0 holds\n"),
        }
        match self.prox_join {
            Some((a, b, c)) => out.push_str(&format!("Prox∨ fails: {} ≺ {} ∨ {}\n", n(a), n(b), n(c))),
            None => out.push_str("Prox∨ holds\n"),
        }
        match self.prox1 {
            Some(a) => out.push_str(&format!("Prox1 fails: 1 ≺ {}\n", n(a))),
            None => out.push_str("Prox1 holds\n"),
        }
        match self.prox_meet {
            Some((a, b, c)) => out.push_str(&format!("Prox∧ fails: {} ∧ {} ≺ {}\n", n(b), n(c), n(a))),
            None => out.push_str("Prox∧ holds\n"),
        }
        out
    }
}

/// (Prox0), (Prox∨) on `≺` and, through the dual, (Prox1), (Prox∧).
pub fn classify_prox(s: &ProxLat) -> Classification {
    let split = |v: Option<JoinViolation>| match v {
        None => (None, None),
        Some(JoinViolation::Zero(a)) => (Some(a), None),
        Some(JoinViolation::Join { a, b, c }) => (None, Some((a, b, c))),
    };
    let (prox0, prox_join) = split(s.as_rel().join_preserving_violation());
    let (prox1, prox_meet) = split(s.dual().as_rel().join_preserving_violation());
    Classification { prox0, prox_join, prox1, prox_meet }
}
