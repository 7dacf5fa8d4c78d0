//! `Patch(S)` on `S ∪ S̄` and the variant `Patch′(S)` with `B̄ ⊢ Ā`.

use alloc::vec::Vec;

use super::{single, tagged, universe_of, Construction, Generators, Kind, Tag};
use crate::binrel::BinRel;
use crate::entail::{AxiomSet, SCEnt};
use crate::error::Result;
use crate::sets::FinSet;

fn build(e: &SCEnt, prime: bool) -> Result<Construction> {
    let n = e.len();
    let mut gens = tagged(Tag::Plain, n);
    gens.extend(tagged(Tag::Bar, n));
    let u = universe_of(&gens, e.ent.universe().labels())?;
    let bar = |a: FinSet| FinSet::from_bits(a.bits() << n);
    let mut ax = AxiomSet::new(u);
    // Minimal pairs generate ⊢, and their bars generate the reversed copy.
    let minimal = e.ent.minimal_pairs()?;
    for &(a, b) in &minimal {
        ax.push(a, b)?;
    }
    for (a, b) in e.approx.pairs() {
        ax.push(single(a).union(bar(single(b))), FinSet::EMPTY)?;
        ax.push(FinSet::EMPTY, bar(single(a)).with(b))?;
    }
    if prime {
        for &(a, b) in &minimal {
            ax.push(bar(b), bar(a))?;
        }
    }
    let approx = BinRel::from_fn(2 * n, 2 * n, |x, y| match (x < n, y < n) {
        (true, true) => e.approx.contains(x, y),
        (false, false) => e.approx.contains(y - n, x - n),
        _ => false,
    })?;
    let kind = if prime { Kind::PatchPrime } else { Kind::Patch };
    Construction::from_axioms(kind, Generators::Tagged(gens), ax, approx)
}

pub fn patch(e: &SCEnt) -> Result<Construction> {
    build(e, false)
}

pub fn patch_prime(e: &SCEnt) -> Result<Construction> {
    build(e, true)
}

/// The generator permutation exchanging `a` and `ā`.
pub fn patch_swap(n: usize) -> Vec<usize> {
    (0..2 * n).map(|i| (i + n) % (2 * n)).collect()
}
