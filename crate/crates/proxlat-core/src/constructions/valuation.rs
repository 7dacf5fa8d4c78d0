//! Valuations `𝔙(S)`, covaluations `ℭ(S)` and their probabilistic
//! variants over a finite grid of rationals. Generator `⟨p, a⟩` sits at
//! index `i·|S| + a` where `p` is the `i`-th grid value.

use alloc::vec::Vec;

use num_traits::{One, Signed};

use super::{universe_of, Construction, Generators, Kind, RationalGrid, Tag, TaggedGenerator};
use crate::binrel::BinRel;
use crate::entail::AxiomSet;
use crate::error::Result;
use crate::prox::ProxLat;
use crate::sets::FinSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ValKind {
    Val,
    Coval,
    ValP,
    CovalP,
}

impl ValKind {
    fn is_val(self) -> bool {
        matches!(self, ValKind::Val | ValKind::ValP)
    }

    fn probabilistic(self) -> bool {
        matches!(self, ValKind::ValP | ValKind::CovalP)
    }

    fn kind(self) -> Kind {
        match self {
            ValKind::Val => Kind::Val,
            ValKind::Coval => Kind::Coval,
            ValKind::ValP => Kind::ValP,
            ValKind::CovalP => Kind::CovalP,
        }
    }
}

/// Generators and instantiated axioms; every schema is instantiated with
/// all grid values satisfying its side condition.
pub fn valuation_axioms(s: &ProxLat, grid: &RationalGrid, kind: ValKind) -> Result<(Vec<TaggedGenerator>, AxiomSet)> {
    let l = s.lattice();
    let n = l.len();
    let ps = grid.values();
    let gens: Vec<TaggedGenerator> = ps
        .iter()
        .flat_map(|p| (0..n).map(move |base| TaggedGenerator { tag: Tag::Valuation(p.clone()), base }))
        .collect();
    let u = universe_of(&gens, l.labels())?;
    let g = |i: usize, a: usize| FinSet::EMPTY.with(i * n + a);
    let mut ax = AxiomSet::new(u);
    let one = num_rational::BigRational::one();
    for (i, p) in ps.iter().enumerate() {
        let (neg, pos) = (p.is_negative(), p.is_positive());
        if kind.is_val() {
            if neg {
                for a in 0..n {
                    ax.push(FinSet::EMPTY, g(i, a))?;
                }
            }
            if pos {
                ax.push(g(i, l.bottom()), FinSet::EMPTY)?;
            }
        } else {
            if neg {
                for a in 0..n {
                    ax.push(g(i, a), FinSet::EMPTY)?;
                }
            }
            if pos {
                ax.push(FinSet::EMPTY, g(i, l.top()))?;
            }
        }
        if kind.probabilistic() {
            let above = *p > one;
            let below = *p < one;
            match (kind.is_val(), above, below) {
                (true, true, _) => {
                    for a in 0..n {
                        ax.push(g(i, a), FinSet::EMPTY)?;
                    }
                }
                (true, _, true) => ax.push(FinSet::EMPTY, g(i, l.top()))?,
                (false, true, _) => {
                    for a in 0..n {
                        ax.push(FinSet::EMPTY, g(i, a))?;
                    }
                }
                (false, _, true) => ax.push(g(i, l.bottom()), FinSet::EMPTY)?,
                _ => {}
            }
        }
        for (j, q) in ps.iter().enumerate() {
            let ordered = if kind.is_val() { q <= p } else { p <= q };
            if !ordered {
                continue;
            }
            for a in 0..n {
                for b in 0..n {
                    if l.leq(a, b) {
                        ax.push(g(i, a), g(j, b))?;
                    }
                }
            }
        }
    }
    for [p, q, r, t] in grid.balanced_quadruples() {
        for a in 0..n {
            for b in 0..n {
                let (m, j) = (l.meet(a, b), l.join(a, b));
                ax.push(g(p, a).union(g(q, b)), g(r, m).union(g(t, j)))?;
                ax.push(g(r, m).union(g(t, j)), g(p, a).union(g(q, b)))?;
            }
        }
    }
    Ok((gens, ax))
}

fn approx(s: &ProxLat, grid: &RationalGrid, val: bool) -> Result<BinRel> {
    let n = s.len();
    let ps = grid.values();
    let m = n * ps.len();
    BinRel::from_fn(m, m, |x, y| {
        let (p, q) = (&ps[x / n], &ps[y / n]);
        let strict = if val { q < p } else { p < q };
        strict && s.precedes(x % n, y % n)
    })
}

fn build(s: &ProxLat, grid: &RationalGrid, kind: ValKind) -> Result<Construction> {
    let (gens, ax) = valuation_axioms(s, grid, kind)?;
    let approx = approx(s, grid, kind.is_val())?;
    Construction::from_axioms(kind.kind(), Generators::Tagged(gens), ax, approx)
}

/// `𝔙(S)` with `⟨p,a⟩ ≺_𝔙 ⟨q,b⟩ ⟺ q < p ∧ a ≺ b`.
pub fn valuations(s: &ProxLat, grid: &RationalGrid) -> Result<Construction> {
    build(s, grid, ValKind::Val)
}

/// `ℭ(S)` with `⟨p,a⟩ ≺_ℭ ⟨q,b⟩ ⟺ p < q ∧ a ≺ b`.
pub fn covaluations(s: &ProxLat, grid: &RationalGrid) -> Result<Construction> {
    build(s, grid, ValKind::Coval)
}

pub fn valuations_prob(s: &ProxLat, grid: &RationalGrid) -> Result<Construction> {
    build(s, grid, ValKind::ValP)
}

pub fn covaluations_prob(s: &ProxLat, grid: &RationalGrid) -> Result<Construction> {
    build(s, grid, ValKind::CovalP)
}

/// `Ā = {⟨1 − p, a⟩ | ⟨p, a⟩ ∈ A}` for generators over `n` base elements.
pub fn dual_val_generators(a: FinSet, grid: &RationalGrid, n: usize) -> Result<FinSet> {
    let comp = grid.complement_map()?;
    Ok(a.iter().fold(FinSet::EMPTY, |acc, x| acc.with(comp[x / n] * n + x % n)))
}

/// The bar permutation on generator indices.
pub(crate) fn bar_map(grid: &RationalGrid, n: usize) -> Result<Vec<usize>> {
    let comp = grid.complement_map()?;
    Ok((0..grid.len() * n).map(|x| comp[x / n] * n + x % n).collect())
}
