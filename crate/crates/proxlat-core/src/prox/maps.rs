//! Proximity maps between strong continuous entailment relations: the
//! Karoubi condition, join preservation and adjoint pairs.

use alloc::format;
use alloc::vec::Vec;

use super::{ProxLat, ProxRel};
use crate::entail::{SCEnt, UpperRel};
use crate::error::{cap, Error, Result};
use crate::sets::{FinSet, SubsetFamily};

/// An upper relation `r : (S, ⊢, ≺) → (S′, ⊢′, ≺′)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProxMap {
    pub source: SCEnt,
    pub target: SCEnt,
    pub rel: UpperRel,
}

impl ProxMap {
    pub fn new(source: SCEnt, target: SCEnt, rel: UpperRel) -> Result<Self> {
        if rel.src() != source.len() || rel.dst() != target.len() {
            return Err(Error::Mismatch(format!(
                "map on {}→{} generators between relations on {} and {}",
                rel.src(),
                rel.dst(),
                source.len(),
                target.len()
            )));
        }
        Ok(ProxMap { source, target, rel })
    }

    /// `≪` as the identity map.
    pub fn identity(e: &SCEnt) -> ProxMap {
        ProxMap { source: e.clone(), target: e.clone(), rel: e.ll() }
    }

    pub fn is_karoubi(&self) -> Result<bool> {
        check_karoubi_morphism(&self.rel, &self.source, &self.target)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ProxMap) -> Result<ProxMap> {
        ProxMap::new(self.source.clone(), next.target.clone(), self.rel.cut_then(&next.rel)?)
    }
}

/// A pair where `≪′ · r` or `r · ≪` differs from `r`.
pub fn karoubi_defect(r: &UpperRel, src: &SCEnt, tgt: &SCEnt) -> Result<Option<(FinSet, FinSet)>> {
    let after = r.cut_then(&tgt.ll())?;
    if let Some(d) = after.difference(r) {
        return Ok(Some(d));
    }
    Ok(src.ll().cut_then(r)?.difference(r))
}

pub fn check_karoubi_morphism(r: &UpperRel, src: &SCEnt, tgt: &SCEnt) -> Result<bool> {
    Ok(karoubi_defect(r, src, tgt)?.is_none())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JpViolation {
    /// A model `α` of the source with `α r ∅`.
    Zero(FinSet),
    /// A model `α` and a set `B` with `α r B` but `α r {b}` for no `b ∈ B`.
    Join(FinSet, FinSet),
}

/// (JP0) and (JP∨), read off the models of the source: `α r ∅` must fail
/// for every model, and `{D | α r D}` must be generated by singletons.
pub fn jp_violation(m: &ProxMap) -> Option<JpViolation> {
    let r = &m.rel;
    let all = FinSet::full(r.dst());
    for &alpha in m.source.ent.models() {
        if r.contains(alpha, FinSet::EMPTY) {
            return Some(JpViolation::Zero(alpha));
        }
        let singles =
            (0..r.dst()).filter(|&d| r.contains(alpha, FinSet::EMPTY.with(d))).fold(FinSet::EMPTY, |s, d| s.with(d));
        let rest = all.minus(singles);
        if r.contains(alpha, rest) {
            return Some(JpViolation::Join(alpha, rest));
        }
    }
    None
}

pub fn is_join_preserving_map(m: &ProxMap) -> bool {
    jp_violation(m).is_none()
}

fn families(n: usize) -> impl Iterator<Item = SubsetFamily> {
    let subsets: Vec<FinSet> = FinSet::all(n).collect();
    (0u64..1 << subsets.len()).map(move |mask| FinSet::from_bits(mask).iter().map(|i| subsets[i]).collect())
}

/// (JP) by enumeration of families: `A r B` implies some `𝒰` with
/// `{A} ⊢̃ 𝒰` and every member of `𝒰` related to a singleton of `B`.
pub fn jp_literal(m: &ProxMap) -> Result<bool> {
    let (n, k) = (m.rel.src(), m.rel.dst());
    cap("source generators for literal (JP)", 3, n)?;
    cap("target generators for literal (JP)", 4, k)?;
    let ent = m.source.ent.to_upper();
    let fams: Vec<SubsetFamily> = families(n).collect();
    for a in FinSet::all(n) {
        let single: SubsetFamily = core::iter::once(a).collect();
        for b in FinSet::all(k) {
            if !m.rel.contains(a, b) {
                continue;
            }
            let found = fams.iter().any(|u| {
                ent.approx_ext_literal(&single, u)
                    && u.iter().all(|a2| b.iter().any(|y| m.rel.contains(a2, FinSet::EMPTY.with(y))))
            });
            if !found {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// (JP0) and (JP∨) by enumeration of families:
/// `A r ∅ → A ⊢ ∅`, and `A r B∪C` gives `𝒰, 𝒱` with `{A} ⊢̃ 𝒰 ∪ 𝒱`,
/// `𝒰 r̃ {B}*` and `𝒱 r̃ {C}*`.
pub fn jp_split_literal(m: &ProxMap) -> Result<bool> {
    let (n, k) = (m.rel.src(), m.rel.dst());
    cap("source generators for literal (JP∨)", 2, n)?;
    cap("target generators for literal (JP∨)", 3, k)?;
    let ent = m.source.ent.to_upper();
    let fams: Vec<SubsetFamily> = families(n).collect();
    let star_of = |b: FinSet| crate::sets::star(&core::iter::once(b).collect());
    for a in FinSet::all(n) {
        if m.rel.contains(a, FinSet::EMPTY) && !m.source.ent.entails(a, FinSet::EMPTY) {
            return Ok(false);
        }
        let single: SubsetFamily = core::iter::once(a).collect();
        for b in FinSet::all(k) {
            for c in FinSet::all(k) {
                if !m.rel.contains(a, b.union(c)) {
                    continue;
                }
                let (sb, sc) = (star_of(b), star_of(c));
                let good_u: Vec<&SubsetFamily> = fams.iter().filter(|u| m.rel.approx_ext_literal(u, &sb)).collect();
                let good_v: Vec<&SubsetFamily> = fams.iter().filter(|v| m.rel.approx_ext_literal(v, &sc)).collect();
                let found = good_u.iter().any(|u| good_v.iter().any(|v| ent.approx_ext_literal(&single, &u.union(v))));
                if !found {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// A failed inclusion of an adjunction `f ⊣ g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdjointDefect<T> {
    /// In `f ∘ g` (g then f) but not in the target identity.
    Counit(T, T),
    /// In the source identity but not in `g ∘ f` (f then g).
    Unit(T, T),
}

/// `f : A → B` left adjoint to `g : B → A` between proximity lattices.
pub fn adjoint_defect(f: &ProxRel, g: &ProxRel, a: &ProxLat, b: &ProxLat) -> Result<Option<AdjointDefect<usize>>> {
    let counit = g.then(f)?;
    if let Some((x, y)) = counit.rel().first_difference(b.prec()) {
        return Ok(Some(AdjointDefect::Counit(x, y)));
    }
    let unit = f.then(g)?;
    if let Some((x, y)) = a.prec().first_difference(unit.rel()) {
        return Ok(Some(AdjointDefect::Unit(x, y)));
    }
    Ok(None)
}

pub fn is_adjoint_pair(f: &ProxRel, g: &ProxRel, a: &ProxLat, b: &ProxLat) -> Result<bool> {
    Ok(adjoint_defect(f, g, a, b)?.is_none())
}

/// The same for proximity maps, with cut composition and `≪` as identity.
pub fn adjoint_map_defect(f: &ProxMap, g: &ProxMap) -> Result<Option<AdjointDefect<FinSet>>> {
    let counit = g.rel.cut_then(&f.rel)?;
    if let Some((x, y)) = counit.subset_witness(&f.target.ll()) {
        return Ok(Some(AdjointDefect::Counit(x, y)));
    }
    let unit = f.rel.cut_then(&g.rel)?;
    if let Some((x, y)) = f.source.ll().subset_witness(&unit) {
        return Ok(Some(AdjointDefect::Unit(x, y)));
    }
    Ok(None)
}

pub fn is_adjoint_map_pair(f: &ProxMap, g: &ProxMap) -> Result<bool> {
    Ok(adjoint_map_defect(f, g)?.is_none())
}
