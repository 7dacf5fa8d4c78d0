//! `Σ(S)`, `P_U(S)`, `P_L(S)`, `P_D(S)` and the Vietoris powerlocale.

use alloc::vec::Vec;

use super::{single, tagged, universe_of, Construction, Generators, Kind, Tag};
use crate::binrel::BinRel;
use crate::entail::{AxiomSet, EntailRel};
use crate::error::{Error, Result};
use crate::lattice::DistLattice;
use crate::prox::ProxLat;
use crate::sets::{FinSet, Universe};

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

fn plain(s: &ProxLat) -> Result<(Generators, Universe)> {
    let gens = tagged(Tag::Plain, s.len());
    let u = universe_of(&gens, s.lattice().labels())?;
    Ok((Generators::Tagged(gens), u))
}

/// `⊢_Σ 0`, `a, b ⊢_Σ a ∨ b`, `a ⊢_Σ b (b ≤ a)`; approximation `≻`.
pub fn sigma(s: &ProxLat) -> Result<Construction> {
    let l = s.lattice();
    let (gens, u) = plain(s)?;
    let mut ax = AxiomSet::new(u);
    ax.push(FinSet::EMPTY, single(l.bottom()))?;
    for (a, b) in pairs(l.len()) {
        ax.push(single(a).with(b), single(l.join(a, b)))?;
        if l.leq(b, a) {
            ax.push(single(a), single(b))?;
        }
    }
    Construction::from_axioms(Kind::Sigma, gens, ax, s.prec().transpose())
}

/// `⊢_U 1`, `a, b ⊢_U a ∧ b`, `a ⊢_U b (a ≤ b)`.
pub fn upper(s: &ProxLat) -> Result<Construction> {
    let l = s.lattice();
    let (gens, u) = plain(s)?;
    let mut ax = AxiomSet::new(u);
    ax.push(FinSet::EMPTY, single(l.top()))?;
    for (a, b) in pairs(l.len()) {
        ax.push(single(a).with(b), single(l.meet(a, b)))?;
        if l.leq(a, b) {
            ax.push(single(a), single(b))?;
        }
    }
    Construction::from_axioms(Kind::Upper, gens, ax, s.prec().clone())
}

/// `0 ⊢_L`, `a ∨ b ⊢_L a, b`, `a ⊢_L b (a ≤ b)`.
pub fn lower(s: &ProxLat) -> Result<Construction> {
    let l = s.lattice();
    let (gens, u) = plain(s)?;
    let mut ax = AxiomSet::new(u);
    ax.push(single(l.bottom()), FinSet::EMPTY)?;
    for (a, b) in pairs(l.len()) {
        ax.push(single(l.join(a, b)), single(a).with(b))?;
        if l.leq(a, b) {
            ax.push(single(a), single(b))?;
        }
    }
    Construction::from_axioms(Kind::Lower, gens, ax, s.prec().clone())
}

/// `a ⊢_D b (a ≤ b)`.
pub fn double(s: &ProxLat) -> Result<Construction> {
    let l = s.lattice();
    let (gens, u) = plain(s)?;
    let mut ax = AxiomSet::new(u);
    for (a, b) in pairs(l.len()) {
        if l.leq(a, b) {
            ax.push(single(a), single(b))?;
        }
    }
    Construction::from_axioms(Kind::Double, gens, ax, s.prec().clone())
}

/// The closed forms of the four single-sorted constructions:
/// `Σ: ∃b∈B b ≤ ⋁A`, `U: ∃b∈B ⋀A ≤ b`, `L: ∃a∈A a ≤ ⋁B`,
/// `D: ∃a∈A ∃b∈B a ≤ b`.
pub fn closed_form(kind: Kind, s: &ProxLat) -> Result<EntailRel> {
    let l: &DistLattice = s.lattice();
    let (_, u) = plain(s)?;
    let pred: &dyn Fn(FinSet, FinSet) -> bool = match kind {
        Kind::Sigma => &|a, b| b.iter().any(|y| l.leq(y, l.join_all(a.bits()))),
        Kind::Upper => &|a, b| b.iter().any(|y| l.leq(l.meet_all(a.bits()), y)),
        Kind::Lower => &|a, b| a.iter().any(|x| l.leq(x, l.join_all(b.bits()))),
        Kind::Double => &|a, b| a.iter().any(|x| b.iter().any(|y| l.leq(x, y))),
        other => return Err(Error::Invalid(alloc::format!("no closed form for `{other}`"))),
    };
    EntailRel::from_upper_predicate(u, pred)
}

/// Generators `◇a` at `a` and `□a` at `n + a`.
pub fn vietoris(s: &ProxLat) -> Result<Construction> {
    let l = s.lattice();
    let n = l.len();
    let mut gens = tagged(Tag::Diamond, n);
    gens.extend(tagged(Tag::Box, n));
    let u = universe_of(&gens, l.labels())?;
    let dia = single;
    let bx = |a: usize| single(n + a);
    let mut ax = AxiomSet::new(u);
    ax.push(dia(l.bottom()), FinSet::EMPTY)?;
    ax.push(FinSet::EMPTY, bx(l.top()))?;
    for (a, b) in pairs(n) {
        ax.push(dia(l.join(a, b)), dia(a).union(dia(b)))?;
        ax.push(bx(a).union(bx(b)), bx(l.meet(a, b)))?;
        if l.leq(a, b) {
            ax.push(dia(a), dia(b))?;
            ax.push(bx(a), bx(b))?;
        }
        ax.push(bx(a).union(dia(b)), dia(l.meet(a, b)))?;
        ax.push(bx(l.join(a, b)), bx(a).union(dia(b)))?;
    }
    let approx = BinRel::from_fn(2 * n, 2 * n, |x, y| (x < n) == (y < n) && s.precedes(x % n, y % n))?;
    Construction::from_axioms(Kind::Vietoris, Generators::Tagged(gens), ax, approx)
}

/// The generator permutation exchanging `◇a` and `□a`.
pub fn vietoris_swap(n: usize) -> Vec<usize> {
    (0..2 * n).map(|i| (i + n) % (2 * n)).collect()
}
