//! The distributive lattice `L(S, ⊢)` of families modulo `⊢̃`.
//!
//! The class of a family `𝒰` is determined by the models containing some
//! member of `𝒰`, an up-set of the model poset, and every up-set arises
//! this way. Elements are therefore up-sets stored as bitmasks over model
//! indices; `∨` is union (family union) and `∧` is intersection (pairwise
//! unions).

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use super::{EntailRel, UpperRel};
use crate::binrel::BinRel;
use crate::error::{cap, Result};
use crate::lattice::{DistLattice, MAX_ELEMENTS};
use crate::sets::{FinSet, SubsetFamily};

/// Generator bound for `L(S, ⊢)`. The element bound of 64 is what
/// actually limits the construction.
pub const MAX_ENT_LATTICE_GENERATORS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntLattice {
    ent: EntailRel,
    /// Up-set of model indices for every element, in lattice order.
    classes: Vec<u64>,
    lattice: DistLattice,
}

/// Builds `L(S, ⊢)` with its elements labelled by the minimal models they
/// contain.
pub fn lattice_of_entailment(e: &EntailRel) -> Result<EntLattice> {
    cap("generators for L(S,⊢)", MAX_ENT_LATTICE_GENERATORS, e.len())?;
    let models = e.models();
    cap("models for L(S,⊢)", MAX_ELEMENTS - 1, models.len())?;
    let principal: Vec<u64> = models
        .iter()
        .map(|&m| models.iter().enumerate().filter(|(_, &k)| m.is_subset(k)).fold(0u64, |acc, (j, _)| acc | 1 << j))
        .collect();
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    seen.insert(0);
    let mut frontier = alloc::vec![0u64];
    while let Some(x) = frontier.pop() {
        for &p in &principal {
            let y = x | p;
            if seen.insert(y) {
                cap("elements of L(S,⊢)", MAX_ELEMENTS, seen.len())?;
                frontier.push(y);
            }
        }
    }
    let mut classes: Vec<u64> = seen.into_iter().collect();
    classes.sort_by_key(|&c| (c.count_ones(), FinSet::from_bits(c)));
    let labels: Vec<String> = classes.iter().map(|&c| e.universe().show_family(&minimal_models(models, c))).collect();
    let lattice = DistLattice::from_leq(labels, |a, b| classes[a] & !classes[b] == 0)?;
    Ok(EntLattice { ent: e.clone(), classes, lattice })
}

fn minimal_models(models: &[FinSet], class: u64) -> SubsetFamily {
    let inside: Vec<FinSet> = FinSet::from_bits(class).iter().map(|j| models[j]).collect();
    inside.iter().copied().filter(|&m| !inside.iter().any(|&k| k != m && k.is_subset(m))).collect()
}

impl EntLattice {
    pub fn lattice(&self) -> &DistLattice {
        &self.lattice
    }

    pub fn entailment(&self) -> &EntailRel {
        &self.ent
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// The up-set of models belonging to an element.
    pub fn class(&self, x: usize) -> u64 {
        self.classes[x]
    }

    fn above(&self, a: FinSet) -> u64 {
        self.ent.models().iter().enumerate().filter(|(_, &m)| a.is_subset(m)).fold(0u64, |acc, (j, _)| acc | 1 << j)
    }

    /// `{A} ⊢̃ x`: every model containing `A` lies in the class of `x`.
    pub fn below(&self, a: FinSet, x: usize) -> bool {
        self.above(a) & !self.classes[x] == 0
    }

    /// The element represented by a family.
    pub fn element_of(&self, u: &SubsetFamily) -> usize {
        let class = u.iter().fold(0u64, |acc, a| acc | self.above(a));
        self.classes.iter().position(|&c| c == class).expect("every up-set of models is an element")
    }

    /// The element of a single generator, `[{{a}}]`.
    pub fn generator(&self, a: usize) -> usize {
        self.element_of(&core::iter::once(FinSet::EMPTY.with(a)).collect())
    }

    /// The normal form `{A | {A} ⊢̃ 𝒰}` of an element.
    pub fn canon(&self, x: usize) -> Result<SubsetFamily> {
        cap("generators for canonical families", 16, self.ent.len())?;
        Ok(FinSet::all(self.ent.len()).filter(|&a| self.below(a, x)).collect())
    }

    /// A small representative family: the minimal models of the class.
    pub fn representative(&self, x: usize) -> SubsetFamily {
        minimal_models(self.ent.models(), self.classes[x])
    }

    /// `≪̃` on elements, where `ll` is `≪_⊢`. For each counter `(X, Y)`:
    /// if `X` lies below `x` then `S∖Y` must lie below `y`.
    pub fn lift(&self, ll: &UpperRel) -> Result<BinRel> {
        let n = self.ent.len();
        BinRel::from_fn(self.len(), self.len(), |x, y| {
            ll.counters().iter().all(|&(cx, cy)| !self.below(cx, x) || self.below(cy.complement(n), y))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::Universe;

    #[test]
    fn free_lattices() {
        let one = EntailRel::overlap(Universe::indexed(1).unwrap()).unwrap();
        assert_eq!(lattice_of_entailment(&one).unwrap().len(), 3);
        let two = EntailRel::overlap(Universe::indexed(2).unwrap()).unwrap();
        assert_eq!(lattice_of_entailment(&two).unwrap().len(), 6);
    }

    #[test]
    fn bounds_are_empty_family_and_empty_set() {
        let e = EntailRel::overlap(Universe::indexed(2).unwrap()).unwrap();
        let l = lattice_of_entailment(&e).unwrap();
        assert_eq!(l.element_of(&SubsetFamily::empty()), l.lattice().bottom());
        let top: SubsetFamily = core::iter::once(FinSet::EMPTY).collect();
        assert_eq!(l.element_of(&top), l.lattice().top());
    }
}
