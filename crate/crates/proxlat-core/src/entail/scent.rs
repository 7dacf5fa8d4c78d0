//! Strong continuous entailment relations `(S, ⊢, ≺)` and the derived
//! proximity `≪ = ⊢ ∘ ≺_U`.

use alloc::vec::Vec;

use super::{generate_entailment, Axiom, AxiomSet, EntailRel, PairRel, UpperRel};
use crate::binrel::ApproxRel;
use crate::error::{cap, Error, Result};
use crate::sets::FinSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SCEnt {
    pub ent: EntailRel,
    pub approx: ApproxRel,
}

impl SCEnt {
    /// Pairs the two components after checking they fit together; use
    /// [`validate_scent`] for the interpolation property.
    pub fn new(ent: EntailRel, approx: ApproxRel) -> Result<Self> {
        let n = ent.len();
        if approx.n_rows() != n || approx.n_cols() != n {
            return Err(Error::Mismatch(alloc::format!(
                "approximation on {} generators for an entailment relation on {n}",
                approx.n_rows()
            )));
        }
        Ok(SCEnt { ent, approx })
    }

    /// The unit `(S, ⊢, =)`.
    pub fn discrete(ent: EntailRel) -> Self {
        let n = ent.len();
        let approx = ApproxRel::identity(n).expect("universe within relation cap");
        SCEnt { ent, approx }
    }

    pub fn len(&self) -> usize {
        self.ent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ent.is_empty()
    }

    /// `≺[{a}]` for every generator.
    pub fn succ_sets(&self) -> Vec<FinSet> {
        (0..self.len()).map(|a| FinSet::from_bits(self.approx.row(a))).collect()
    }

    /// `≺⁻¹[{b}]` for every generator.
    pub fn pred_sets(&self) -> Vec<FinSet> {
        (0..self.len()).map(|b| FinSet::from_bits(self.approx.col(b))).collect()
    }

    fn singletons(&self) -> Vec<FinSet> {
        (0..self.len()).map(|a| FinSet::EMPTY.with(a)).collect()
    }

    /// `⊢ ∘ ≺_U`: `A ≪ B ⟺ ≺[A] ⊢ B`.
    pub fn ll(&self) -> UpperRel {
        UpperRel::transport(&self.ent, &self.succ_sets(), &self.singletons())
    }

    /// `≺_L ∘ ⊢`: `A ⊢ ≺⁻¹[B]`.
    pub fn ll_lower(&self) -> UpperRel {
        UpperRel::transport(&self.ent, &self.singletons(), &self.pred_sets())
    }

    /// `(S, ⊢^∂, ≻)`.
    pub fn dual(&self) -> SCEnt {
        SCEnt { ent: self.ent.dual(), approx: self.approx.transpose() }
    }

    /// Models of the theory `T(S, ⊢, ≺)`: models of `⊢` that are upward
    /// closed along `≺` and rounded.
    pub fn theory_models(&self) -> Vec<FinSet> {
        let succ = self.succ_sets();
        let pred = self.pred_sets();
        self.ent
            .models()
            .iter()
            .copied()
            .filter(|&m| m.iter().all(|a| succ[a].is_subset(m) && pred[a].meets(m)))
            .collect()
    }
}

/// `≪_⊢`, checked to agree on both of its defining composites.
pub fn ll_from(e: &EntailRel, p: &ApproxRel) -> Result<UpperRel> {
    let sc = SCEnt::new(e.clone(), p.clone())?;
    let up = sc.ll();
    if let Some((a, b)) = up.difference(&sc.ll_lower()) {
        return Err(Error::Invalid(alloc::format!(
            "⊢∘≺_U and ≺_L∘⊢ differ at ({}, {})",
            e.universe().show(a),
            e.universe().show(b)
        )));
    }
    Ok(up)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScentViolation {
    /// `(a, b)` is in `≺∘≺` but not in `≺`, or the reverse.
    NotIdempotent(usize, usize),
    /// `∃A′ (A ≺_U A′ ⊢ B)` holds but `∃B′ (A ⊢ B′ ≺_L B)` does not.
    UpperNotLower(FinSet, FinSet),
    /// The converse failure.
    LowerNotUpper(FinSet, FinSet),
    SizeMismatch,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScentReport {
    pub violations: Vec<ScentViolation>,
}

impl ScentReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_scent(e: &EntailRel, p: &ApproxRel) -> ScentReport {
    let mut violations = Vec::new();
    let Ok(sc) = SCEnt::new(e.clone(), p.clone()) else {
        return ScentReport { violations: alloc::vec![ScentViolation::SizeMismatch] };
    };
    let sq = p.then(p).expect("square relation");
    for (a, b) in sq.first_difference(p).into_iter().chain(p.first_difference(&sq)) {
        violations.push(ScentViolation::NotIdempotent(a, b));
    }
    let upper = sc.ll();
    let lower = sc.ll_lower();
    if let Some((a, b)) = lower.subset_witness(&upper) {
        violations.push(ScentViolation::UpperNotLower(a, b));
    }
    if let Some((a, b)) = upper.subset_witness(&lower) {
        violations.push(ScentViolation::LowerNotUpper(a, b));
    }
    ScentReport { violations }
}

/// The sufficient conditions for a generated relation to be strong
/// continuous, checked for every axiom `A ⊢₀ B`:
/// `C ≺_U A` implies `C ⊢ B′ ≺_L B` for some `B′`, and dually
/// `C ≻_L B` implies `A ≺_U A′ ⊢ C` for some `A′`.
pub fn check_generated_scent(ax: &AxiomSet, p: &ApproxRel) -> Result<bool> {
    Ok(generated_scent_witness(ax, p)?.is_none())
}

/// An axiom violating the conditions, with the model refuting it.
pub fn generated_scent_witness(ax: &AxiomSet, p: &ApproxRel) -> Result<Option<(Axiom, FinSet)>> {
    let e = generate_entailment(ax)?;
    let sc = SCEnt::new(e, p.clone())?;
    let n = sc.len();
    let succ = sc.succ_sets();
    let pred = sc.pred_sets();
    let image = |s: FinSet, t: &[FinSet]| s.iter().fold(FinSet::EMPTY, |m, i| m.union(t[i]));
    for &(a, b) in ax.axioms() {
        let pred_b = image(b, &pred);
        let succ_a = image(a, &succ);
        for &m in sc.ent.models() {
            // C = α is the hardest left context, S∖α the hardest right one.
            if a.is_subset(image(m, &succ)) && !m.meets(pred_b) {
                return Ok(Some(((a, b), m)));
            }
            if succ_a.is_subset(m) && b.is_subset(image(m.complement(n), &pred)) {
                return Ok(Some(((a, b), m)));
            }
        }
    }
    Ok(None)
}

/// The same conditions quantified over all contexts, for small universes.
pub fn check_generated_scent_literal(ax: &AxiomSet, p: &ApproxRel) -> Result<bool> {
    let n = ax.universe().len();
    cap("generators for literal condition check", 5, n)?;
    let e = generate_entailment(ax)?;
    let (lower, upper) = lower_upper_ext(p)?;
    for &(a, b) in ax.axioms() {
        for c in FinSet::all(n) {
            if upper.contains(c, a) && !FinSet::all(n).any(|b2| e.entails(c, b2) && lower.contains(b2, b)) {
                return Ok(false);
            }
            if lower.contains(b, c) && !FinSet::all(n).any(|a2| upper.contains(a, a2) && e.entails(a2, c)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `(≺_L, ≺_U)` on `Fin(S)`: `A ≺_L B ⟺ ∀a∈A ∃b∈B a≺b` and
/// `A ≺_U B ⟺ ∀b∈B ∃a∈A a≺b`.
pub fn lower_upper_ext(p: &ApproxRel) -> Result<(PairRel, PairRel)> {
    let n = p.n_rows();
    let lower = PairRel::from_fn(n, n, |a, b| a.iter().all(|x| p.row(x) & b.bits() != 0))?;
    let upper = PairRel::from_fn(n, n, |a, b| b.iter().all(|y| p.col(y) & a.bits() != 0))?;
    Ok((lower, upper))
}
