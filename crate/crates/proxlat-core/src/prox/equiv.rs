//! The functors `G : (S, ≺) ↦ (S, ⊢, ≺)` and `F : (S, ⊢, ≺) ↦ (L(S,⊢), ≪̃)`
//! and the relations witnessing `F(G(S)) ≅ S`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{validate_prox_relation, ProxLat, ProxRel, ProxReport};
use crate::entail::{lattice_of_entailment, EntLattice, EntailRel, SCEnt};
use crate::error::Result;
use crate::sets::Universe;

/// `G(S, ≺) = (S, ⊢, ≺)` with `A ⊢ B ⟺ ⋀A ≤ ⋁B`.
pub fn functor_g(s: &ProxLat) -> Result<SCEnt> {
    let l = s.lattice();
    let universe = Universe::new(l.labels().iter().cloned())?;
    let ent = EntailRel::from_upper_predicate(universe, |a, b| l.leq(l.meet_all(a.bits()), l.join_all(b.bits())))?;
    SCEnt::new(ent, s.prec().clone())
}

/// `F(S, ⊢, ≺)`: the quotient lattice with the lifted `≪̃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FImage {
    pub quotient: EntLattice,
    pub prox: ProxLat,
}

pub fn functor_f(e: &SCEnt) -> Result<FImage> {
    let quotient = lattice_of_entailment(&e.ent)?;
    let prec = quotient.lift(&e.ll())?;
    let prox = ProxLat::new(quotient.lattice().clone(), prec)?;
    Ok(FImage { quotient, prox })
}

/// A pair of relations `r : S → T` and `s : T → S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witnesses {
    pub r: ProxRel,
    pub s: ProxRel,
}

/// Everything needed for `r` and `s` to be mutually inverse morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseReport {
    pub r_valid: ProxReport,
    pub s_valid: ProxReport,
    /// A pair where `≺′∘r∘≺` and `r` differ.
    pub r_karoubi: Option<(usize, usize)>,
    pub s_karoubi: Option<(usize, usize)>,
    /// Where `r` then `s` differs from `≺` on the source.
    pub source_identity: Option<(usize, usize)>,
    /// Where `s` then `r` differs from `≺` on the target.
    pub target_identity: Option<(usize, usize)>,
}

impl InverseReport {
    pub fn holds(&self) -> bool {
        self.r_valid.is_valid()
            && self.s_valid.is_valid()
            && self.r_karoubi.is_none()
            && self.s_karoubi.is_none()
            && self.source_identity.is_none()
            && self.target_identity.is_none()
    }

    pub fn describe(&self) -> String {
        let mut out = String::new();
        let mut line = |name: &str, d: Option<(usize, usize)>| match d {
            None => out.push_str(&format!("{name}: ok\n")),
            Some((a, b)) => out.push_str(&format!("{name}: differs at ({a}, {b})\n")),
        };
        line("r karoubi", self.r_karoubi);
        line("s karoubi", self.s_karoubi);
        line("r then s = ≺", self.source_identity);
        line("s then r = ≺′", self.target_identity);
        if !self.r_valid.is_valid() {
            out.push_str(&format!("r: {}", self.r_valid));
        }
        if !self.s_valid.is_valid() {
            out.push_str(&format!("s: {}", self.s_valid));
        }
        out
    }
}

impl Witnesses {
    pub fn check(&self, src: &ProxLat, tgt: &ProxLat) -> Result<InverseReport> {
        let (p, q) = (src.as_rel(), tgt.as_rel());
        let karoubi = |m: &ProxRel, a: &ProxRel, b: &ProxRel| -> Result<Option<(usize, usize)>> {
            let left = a.then(m)?;
            let right = m.then(b)?;
            Ok(left.difference(m).or_else(|| right.difference(m)))
        };
        Ok(InverseReport {
            r_valid: validate_prox_relation(&self.r),
            s_valid: validate_prox_relation(&self.s),
            r_karoubi: karoubi(&self.r, &p, &q)?,
            s_karoubi: karoubi(&self.s, &q, &p)?,
            source_identity: self.r.then(&self.s)?.difference(&p),
            target_identity: self.s.then(&self.r)?.difference(&q),
        })
    }
}

/// The relations between `S` and `F(G(S))`: with `v(x) = ⋁_{A∈𝒰} ⋀A` for
/// any representative `𝒰` of `x`, `a r x ⟺ a ≺ v(x)` and
/// `x s a ⟺ v(x) ≺ a`.
pub fn fg_witnesses(s: &ProxLat) -> Result<(FImage, Witnesses)> {
    let image = functor_f(&functor_g(s)?)?;
    let l = s.lattice();
    let value: Vec<usize> = (0..image.prox.len())
        .map(|x| image.quotient.representative(x).iter().fold(l.bottom(), |acc, a| l.join(acc, l.meet_all(a.bits()))))
        .collect();
    let t = image.prox.lattice();
    let r = ProxRel::from_fn(l, t, |a, x| s.precedes(a, value[x]))?;
    let back = ProxRel::from_fn(t, l, |x, a| s.precedes(value[x], a))?;
    Ok((image, Witnesses { r, s: back }))
}
