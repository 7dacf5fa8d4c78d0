//! `(Fin(S), ⊢^L, ≺^L)` and `(Fin(S), ⊢^U, ≺^U)`.
//!
//! Both relations are built from their closed forms. A family of subsets
//! is a model of `⊢^L` iff it is a union of powersets `P(α)` of models of
//! `⊢`, and a model of `⊢^U` iff it is an intersection of the families
//! `{C | C ∩ α ≠ ∅}`. The literal axiom schema is generated only for
//! `|S| ≤ 3` as a cross-check.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{Construction, Generators, Kind};
use crate::binrel::BinRel;
use crate::entail::{generate_entailment, AxiomSet, EntailRel, SCEnt, UpperRel};
use crate::error::{cap, Result};
use crate::sets::{star, FinSet, SubsetFamily, Universe};

/// Base generator bound: `Fin(S)` has `2^|S|` members.
pub const MAX_BASE: usize = 4;
const MAX_LITERAL_BASE: usize = 3;
const MAX_FAMILY_MODELS: usize = 1 << 14;

fn subsets_of(e: &SCEnt) -> Result<(Vec<FinSet>, Universe)> {
    cap("generators under Fin(S)", MAX_BASE, e.len())?;
    let mut subsets: Vec<FinSet> = FinSet::all(e.len()).collect();
    subsets.sort_unstable();
    let u = Universe::new(subsets.iter().map(|&a| e.ent.universe().show(a)))?;
    Ok((subsets, u))
}

/// Index of each subset, addressed by its bits.
fn index_of(subsets: &[FinSet]) -> Vec<usize> {
    let mut idx = alloc::vec![0; subsets.len()];
    for (i, a) in subsets.iter().enumerate() {
        idx[a.bits() as usize] = i;
    }
    idx
}

fn family(subsets: &[FinSet], keep: impl Fn(FinSet) -> bool) -> FinSet {
    subsets.iter().enumerate().filter(|(_, &a)| keep(a)).fold(FinSet::EMPTY, |m, (i, _)| m.with(i))
}

fn closure(base: &[FinSet], start: FinSet, op: impl Fn(FinSet, FinSet) -> FinSet) -> Result<Vec<FinSet>> {
    let mut seen: BTreeSet<FinSet> = BTreeSet::new();
    seen.insert(start);
    let mut frontier = alloc::vec![start];
    while let Some(m) = frontier.pop() {
        for &b in base {
            let next = op(m, b);
            if seen.insert(next) {
                cap("models of the Fin(S) relation", MAX_FAMILY_MODELS, seen.len())?;
                frontier.push(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

fn lower_ext(p: &BinRel, subsets: &[FinSet]) -> Result<BinRel> {
    BinRel::from_fn(subsets.len(), subsets.len(), |i, j| subsets[i].iter().all(|x| p.row(x) & subsets[j].bits() != 0))
}

fn upper_ext(p: &BinRel, subsets: &[FinSet]) -> Result<BinRel> {
    BinRel::from_fn(subsets.len(), subsets.len(), |i, j| subsets[j].iter().all(|y| p.col(y) & subsets[i].bits() != 0))
}

/// `𝒰 ⊢^L 𝒱 ⟺ ∃A∈𝒰 ∀B∈𝒱* (A ⊢ B)` with `≺^L = ≺_U`.
pub fn scent_lower(e: &SCEnt) -> Result<Construction> {
    let (subsets, u) = subsets_of(e)?;
    let powersets: Vec<FinSet> = e.ent.models().iter().map(|&m| family(&subsets, |a| a.is_subset(m))).collect();
    let models = closure(&powersets, FinSet::EMPTY, FinSet::union)?;
    let approx = upper_ext(&e.approx, &subsets)?;
    let axioms = if e.len() <= MAX_LITERAL_BASE { Some(literal_axioms(e, &subsets, &u)?) } else { None };
    Ok(Construction {
        kind: Kind::ScentLower,
        generators: Generators::Subsets(subsets),
        axioms,
        scent: SCEnt::new(EntailRel::from_models(u, models)?, approx)?,
    })
}

/// `𝒰 ⊢^U 𝒱 ⟺ ∃B∈𝒱 ∀A∈𝒰* (A ⊢ B)` with `≺^U = ≺_L`.
pub fn scent_upper(e: &SCEnt) -> Result<Construction> {
    let (subsets, u) = subsets_of(e)?;
    let all = FinSet::full(subsets.len());
    let meeting: Vec<FinSet> = e.ent.models().iter().map(|&m| family(&subsets, |a| a.meets(m))).collect();
    let models = closure(&meeting, all, FinSet::inter)?;
    let approx = lower_ext(&e.approx, &subsets)?;
    let axioms =
        if e.len() <= MAX_LITERAL_BASE { Some(literal_axioms(&e.dual(), &subsets, &u)?.reversed()) } else { None };
    Ok(Construction {
        kind: Kind::ScentUpper,
        generators: Generators::Subsets(subsets),
        axioms,
        scent: SCEnt::new(EntailRel::from_models(u, models)?, approx)?,
    })
}

/// `A ⊢^L A₀, …, A_{k-1}` whenever every `B ∈ {A_i}*` has `A ⊢ B`.
fn literal_axioms(e: &SCEnt, subsets: &[FinSet], u: &Universe) -> Result<AxiomSet> {
    cap("generators for literal ⊢^L axioms", MAX_LITERAL_BASE, e.len())?;
    let idx = index_of(subsets);
    let mut ax = AxiomSet::new(u.clone());
    for fam in FinSet::all(subsets.len()) {
        let members: SubsetFamily = fam.iter().map(|i| subsets[i]).collect();
        let transversals = star(&members);
        for &a in subsets {
            if transversals.iter().all(|b| e.ent.entails(a, b)) {
                ax.push(FinSet::EMPTY.with(idx[a.bits() as usize]), fam)?;
            }
        }
    }
    Ok(ax)
}

/// `⊢^L` generated from its literal axioms, for `|S| ≤ 3`.
pub fn scent_lower_literal(e: &SCEnt) -> Result<EntailRel> {
    let (subsets, u) = subsets_of(e)?;
    generate_entailment(&literal_axioms(e, &subsets, &u)?)
}

/// Where `≪_{⊢^L}` differs from `∃A∈𝒰 ∀B∈𝒱* (A ≪ B)`, for `|S| ≤ 3`.
pub fn lower_ll_characterization_defect(e: &SCEnt, lower: &Construction) -> Result<Option<(FinSet, FinSet)>> {
    cap("generators for the ≪^L check", MAX_LITERAL_BASE, e.len())?;
    let Generators::Subsets(subsets) = &lower.generators else {
        return Err(crate::error::Error::Invalid("not a Fin(S) construction".into()));
    };
    let ll = e.ll();
    let n = subsets.len();
    let closed = UpperRel::from_fn(n, n, |uu, vv| {
        let v: SubsetFamily = vv.iter().map(|j| subsets[j]).collect();
        uu.iter().any(|i| {
            let single: SubsetFamily = core::iter::once(subsets[i]).collect();
            ll.approx_ext(&single, &v)
        })
    })?;
    Ok(lower.scent.ll().difference(&closed))
}
