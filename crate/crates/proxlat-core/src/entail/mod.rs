//! Entailment relations on the finite subsets of a generator universe.
//!
//! An entailment relation on a finite universe is determined by its models:
//! `A ⊢ B` holds exactly when no model `α` has `A ⊆ α` and `α ∩ B = ∅`.
//! [`EntailRel`] therefore stores the sorted model family, which keeps
//! relations over a few dozen generators cheap. Dense pair tables are
//! available through [`EntailRel::pair_table`] for small universes.

mod dense;
pub(crate) mod models;
mod quotient;
mod scent;
mod upper;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

pub use dense::{
    is_upper, saturate, upper_violation, validate_entailment, EntailReport, EntailViolation, PairRel, MAX_DENSE_BITS,
    SATURATION_CAP,
};
pub use quotient::{lattice_of_entailment, EntLattice, MAX_ENT_LATTICE_GENERATORS};
pub use scent::{
    check_generated_scent, check_generated_scent_literal, generated_scent_witness, ll_from, lower_upper_ext,
    validate_scent, SCEnt, ScentReport, ScentViolation,
};
pub use upper::UpperRel;

use crate::error::{cap, Error, Result};
use crate::sets::{FinSet, Universe};

/// A sequent `A ⊢₀ B`.
pub type Axiom = (FinSet, FinSet);

/// Bounds for model enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_generators: usize,
    pub max_models: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_generators: 40, max_models: 1 << 20 }
    }
}

/// Generators together with a list of axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomSet {
    universe: Universe,
    axioms: Vec<Axiom>,
}

impl AxiomSet {
    pub fn new(universe: Universe) -> Self {
        AxiomSet { universe, axioms: Vec::new() }
    }

    pub fn with_axioms(universe: Universe, axioms: Vec<Axiom>) -> Result<Self> {
        let mut out = AxiomSet::new(universe);
        for (a, b) in axioms {
            out.push(a, b)?;
        }
        Ok(out)
    }

    pub fn push(&mut self, a: FinSet, b: FinSet) -> Result<()> {
        let full = self.universe.full();
        if !a.union(b).is_subset(full) {
            return Err(Error::Invalid(format!(
                "axiom mentions generators outside the universe of {}",
                self.universe.len()
            )));
        }
        self.axioms.push((a, b));
        Ok(())
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn axioms(&self) -> &[Axiom] {
        &self.axioms
    }

    /// Distinct axioms in canonical order.
    pub fn canonical(&self) -> Vec<Axiom> {
        let mut v = self.axioms.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Every axiom reversed: `B ⊢₀ A` for `A ⊢₀ B`.
    pub fn reversed(&self) -> AxiomSet {
        AxiomSet { universe: self.universe.clone(), axioms: self.axioms.iter().map(|&(a, b)| (b, a)).collect() }
    }

    /// Image under a bijection of generators onto `target`.
    pub fn rename(&self, target: Universe, map: &[usize]) -> Result<AxiomSet> {
        check_bijection(map, target.len())?;
        AxiomSet::with_axioms(target, self.axioms.iter().map(|&(a, b)| (a.map_by(map), b.map_by(map))).collect())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (a, b) in self.canonical() {
            out.push_str(&format!("axiom {} |- {}\n", self.universe.show_bare(a), self.universe.show_bare(b)));
        }
        out
    }
}

fn check_bijection(map: &[usize], n: usize) -> Result<()> {
    let mut seen = FinSet::EMPTY;
    for &m in map {
        if m >= n || seen.has(m) {
            return Err(Error::Invalid("generator renaming is not a bijection".into()));
        }
        seen = seen.with(m);
    }
    if map.len() != n {
        return Err(Error::Invalid("generator renaming is not a bijection".into()));
    }
    Ok(())
}

/// Entailment relation stored as its family of models.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EntailRel {
    universe: Universe,
    models: Vec<FinSet>,
}

impl EntailRel {
    /// Relation whose models are exactly `models`.
    pub fn from_models(universe: Universe, mut models: Vec<FinSet>) -> Result<Self> {
        let full = universe.full();
        if let Some(m) = models.iter().find(|m| !m.is_subset(full)) {
            return Err(Error::Invalid(format!("model {m:?} outside the universe")));
        }
        models.sort_unstable();
        models.dedup();
        Ok(EntailRel { universe, models })
    }

    /// The overlap relation `A ≬ B`: every subset is a model.
    pub fn overlap(universe: Universe) -> Result<Self> {
        cap("generators for exhaustive enumeration", 24, universe.len())?;
        let models = FinSet::all(universe.len()).collect();
        EntailRel::from_models(universe, models)
    }

    /// The relation `{(A, B) | pred(A, B)}` for a predicate that is upward
    /// closed in both arguments and contains the overlap pairs.
    pub fn from_upper_predicate<F>(universe: Universe, pred: F) -> Result<Self>
    where
        F: Fn(FinSet, FinSet) -> bool,
    {
        let n = universe.len();
        cap("generators for exhaustive enumeration", 24, n)?;
        let models = FinSet::all(n).filter(|&a| !pred(a, a.complement(n))).collect();
        EntailRel::from_models(universe, models)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    pub fn models(&self) -> &[FinSet] {
        &self.models
    }

    pub fn entails(&self, a: FinSet, b: FinSet) -> bool {
        !self.models.iter().any(|&m| a.is_subset(m) && !m.meets(b))
    }

    /// A model refuting `A ⊢ B`.
    pub fn refutation(&self, a: FinSet, b: FinSet) -> Option<FinSet> {
        self.models.iter().copied().find(|&m| a.is_subset(m) && !m.meets(b))
    }

    /// The relational opposite `A ⊢^∂ B ⟺ B ⊢ A`.
    pub fn dual(&self) -> EntailRel {
        let n = self.len();
        EntailRel::from_models(self.universe.clone(), self.models.iter().map(|m| m.complement(n)).collect())
            .expect("complements stay inside the universe")
    }

    /// Image under a bijection of generators onto `target`.
    pub fn rename(&self, target: Universe, map: &[usize]) -> Result<EntailRel> {
        check_bijection(map, target.len())?;
        EntailRel::from_models(target, self.models.iter().map(|m| m.map_by(map)).collect())
    }

    /// The relation as an upper relation on `Fin(S) × Fin(S)`.
    pub fn to_upper(&self) -> UpperRel {
        let n = self.len();
        UpperRel::from_antichain(n, n, self.models.iter().map(|&m| (m, m.complement(n))).collect())
    }

    /// Dense table of all pairs.
    pub fn pair_table(&self) -> Result<PairRel> {
        let n = self.len();
        PairRel::from_fn(n, n, |a, b| self.entails(a, b))
    }

    /// Pairs `(A, B)` with `A ∩ B = ∅` and `A ⊢ B` that are minimal under
    /// componentwise inclusion. They generate the relation.
    pub fn minimal_pairs(&self) -> Result<Vec<Axiom>> {
        let n = self.len();
        cap("generators for minimal pair search", 14, n)?;
        let mut out: Vec<Axiom> = Vec::new();
        let mut candidates: Vec<Axiom> = Vec::new();
        for a in FinSet::all(n) {
            for b in a.complement(n).subsets() {
                if self.entails(a, b) {
                    candidates.push((a, b));
                }
            }
        }
        candidates.sort_by_key(|&(a, b)| (a.len() + b.len(), a, b));
        for (a, b) in candidates {
            if !out.iter().any(|&(x, y)| x.is_subset(a) && y.is_subset(b)) {
                out.push((a, b));
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Every pair in canonical order, for listings.
    pub fn pairs(&self) -> Result<Vec<Axiom>> {
        let n = self.len();
        cap("generators for pair listing", 10, n)?;
        let mut subsets: Vec<FinSet> = FinSet::all(n).collect();
        subsets.sort_unstable();
        let mut out = Vec::new();
        for &a in &subsets {
            for &b in &subsets {
                if self.entails(a, b) {
                    out.push((a, b));
                }
            }
        }
        Ok(out)
    }

    /// Number of entailed pairs, counted through the models.
    pub fn pair_count(&self) -> Result<u64> {
        let n = self.len();
        cap("generators for pair counting", 20, n)?;
        let mut count = 0u64;
        for a in FinSet::all(n) {
            for b in FinSet::all(n) {
                if self.entails(a, b) {
                    count += 1;
                }
            }
        }
        Ok(count)
    }
}

/// The least entailment relation containing the axioms, with default limits.
pub fn generate_entailment(ax: &AxiomSet) -> Result<EntailRel> {
    generate_entailment_with(ax, Limits::default())
}

/// The least entailment relation containing the axioms. Its models are the
/// subsets satisfying every axiom, which is what the search enumerates.
pub fn generate_entailment_with(ax: &AxiomSet, limits: Limits) -> Result<EntailRel> {
    let n = ax.universe.len();
    cap("generator count", limits.max_generators, n)?;
    let models = models::enumerate(n, &ax.axioms, limits.max_models)?;
    Ok(EntailRel { universe: ax.universe.clone(), models })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(bits: u64) -> FinSet {
        FinSet::from_bits(bits)
    }

    fn uni(n: usize) -> Universe {
        Universe::indexed(n).unwrap()
    }

    #[test]
    fn empty_axioms_give_overlap() {
        let e = generate_entailment(&AxiomSet::new(uni(2))).unwrap();
        assert_eq!(e, EntailRel::overlap(uni(2)).unwrap());
        for a in FinSet::all(2) {
            for b in FinSet::all(2) {
                assert_eq!(e.entails(a, b), a.meets(b));
            }
        }
    }

    #[test]
    fn single_axiom_adds_its_upward_closure() {
        let ax = AxiomSet::with_axioms(uni(2), alloc::vec![(s(1), s(2))]).unwrap();
        let e = generate_entailment(&ax).unwrap();
        for a in FinSet::all(2) {
            for b in FinSet::all(2) {
                assert_eq!(e.entails(a, b), a.meets(b) || (a.has(0) && b.has(1)));
            }
        }
    }

    #[test]
    fn inconsistent_theory_relates_everything() {
        let ax = AxiomSet::with_axioms(uni(1), alloc::vec![(FinSet::EMPTY, FinSet::EMPTY)]).unwrap();
        let e = generate_entailment(&ax).unwrap();
        assert!(e.models().is_empty());
        assert_eq!(e.pair_count().unwrap(), 4);
    }

    #[test]
    fn no_generators_gives_the_empty_relation() {
        let e = generate_entailment(&AxiomSet::new(uni(0))).unwrap();
        assert_eq!(e.pair_count().unwrap(), 0);
    }

    #[test]
    fn dual_transposes() {
        let ax = AxiomSet::with_axioms(uni(3), alloc::vec![(s(1), s(6)), (s(6), FinSet::EMPTY)]).unwrap();
        let e = generate_entailment(&ax).unwrap();
        let d = e.dual();
        for a in FinSet::all(3) {
            for b in FinSet::all(3) {
                assert_eq!(d.entails(a, b), e.entails(b, a));
            }
        }
        assert_eq!(d.dual(), e);
        assert_eq!(generate_entailment(&ax.reversed()).unwrap(), d);
    }

    #[test]
    fn minimal_pairs_regenerate() {
        let ax = AxiomSet::with_axioms(uni(3), alloc::vec![(s(3), s(4)), (FinSet::EMPTY, s(1))]).unwrap();
        let e = generate_entailment(&ax).unwrap();
        let again = AxiomSet::with_axioms(uni(3), e.minimal_pairs().unwrap()).unwrap();
        assert_eq!(generate_entailment(&again).unwrap(), e);
    }

    #[test]
    fn generation_agrees_with_saturation() {
        let ax = AxiomSet::with_axioms(uni(3), alloc::vec![(s(3), s(4)), (s(4), s(1))]).unwrap();
        let e = generate_entailment(&ax).unwrap();
        assert_eq!(e.pair_table().unwrap(), saturate(3, ax.axioms(), SATURATION_CAP).unwrap());
    }
}
