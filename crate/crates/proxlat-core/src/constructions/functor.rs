//! Actions of the constructions on join-preserving proximity relations.

use alloc::format;
use alloc::vec::Vec;

use super::{construct, patch, Kind, RationalGrid};
use crate::entail::UpperRel;
use crate::error::{Error, Result};
use crate::prox::{functor_g, ProxLat, ProxMap, ProxRel};
use crate::sets::FinSet;

/// The image of `r : S → S′` under a functorial construction. `Σ` is
/// contravariant, so `Σ(r)` runs from `Σ(S′)` to `Σ(S)`.
pub fn apply_functor(
    kind: Kind,
    src: &ProxLat,
    tgt: &ProxLat,
    r: &ProxRel,
    grid: Option<&RationalGrid>,
) -> Result<ProxMap> {
    if r.source() != src.lattice() || r.target() != tgt.lattice() {
        return Err(Error::Mismatch("relation does not run between the given lattices".into()));
    }
    let (ls, lt) = (src.lattice(), tgt.lattice());
    let (n, m) = (ls.len(), lt.len());
    let rel = match kind {
        Kind::Sigma => UpperRel::from_fn(m, n, |a, b| b.iter().any(|y| r.contains(y, lt.join_all(a.bits()))))?,
        Kind::Upper => UpperRel::from_fn(n, m, |a, b| b.iter().any(|y| r.contains(ls.meet_all(a.bits()), y)))?,
        Kind::Lower => UpperRel::from_fn(n, m, |a, b| a.iter().any(|x| r.contains(x, lt.join_all(b.bits()))))?,
        Kind::Double => UpperRel::from_fn(n, m, |a, b| a.iter().any(|x| b.iter().any(|y| r.contains(x, y))))?,
        Kind::Vietoris => {
            let split = |x: FinSet, k: usize| {
                (FinSet::from_bits(x.bits() & FinSet::full(k).bits()), FinSet::from_bits(x.bits() >> k))
            };
            UpperRel::from_fn(2 * n, 2 * m, |x, y| {
                let (a, b) = split(x, n);
                let (c, d) = split(y, m);
                let mb = ls.meet_all(b.bits());
                let jc = lt.join_all(c.bits());
                a.iter().any(|v| r.contains(ls.meet(v, mb), jc)) || d.iter().any(|v| r.contains(mb, lt.join(v, jc)))
            })?
        }
        Kind::Val | Kind::Coval => {
            let grid = grid.ok_or_else(|| Error::Invalid("valuation functors need a grid".into()))?;
            let source = construct(kind, src, Some(grid))?;
            let ps = grid.values();
            let val = kind == Kind::Val;
            // g(⟨q,b⟩) = {⟨p,c⟩ | p > q, c r b} (p < q for ℭ).
            let image: Vec<FinSet> = (0..ps.len() * m)
                .map(|y| {
                    let (q, b) = (&ps[y / m], y % m);
                    (0..ps.len() * n)
                        .filter(|&x| {
                            let p = &ps[x / n];
                            (if val { p > q } else { p < q }) && r.contains(x % n, b)
                        })
                        .fold(FinSet::EMPTY, FinSet::with)
                })
                .collect();
            let singles: Vec<FinSet> = (0..ps.len() * n).map(|x| FinSet::EMPTY.with(x)).collect();
            UpperRel::transport(&source.scent.ent, &singles, &image)
        }
        other => return Err(Error::Invalid(format!("`{other}` has no action on proximity relations here"))),
    };
    let (from, to) = if kind == Kind::Sigma { (tgt, src) } else { (src, tgt) };
    let source = construct(kind, from, grid)?.scent;
    let target = construct(kind, to, grid)?.scent;
    ProxMap::new(source, target, rel)
}

/// `(𝔓(r), 𝔓(s))` for an adjoint pair with `r : S → S′`, `s : S′ → S`,
/// between `Patch(G(S))` and `Patch(G(S′))`.
pub fn apply_patch(src: &ProxLat, tgt: &ProxLat, r: &ProxRel, s: &ProxRel) -> Result<(ProxMap, ProxMap)> {
    let (ls, lt) = (src.lattice(), tgt.lattice());
    let (n, m) = (ls.len(), lt.len());
    let split =
        |x: FinSet, k: usize| (FinSet::from_bits(x.bits() & FinSet::full(k).bits()), FinSet::from_bits(x.bits() >> k));
    let pr = UpperRel::from_fn(2 * n, 2 * m, |x, y| {
        let (a, b) = split(x, n);
        let (c, d) = split(y, m);
        let (ma, jb) = (ls.meet_all(a.bits()), ls.join_all(b.bits()));
        let (jc, md) = (lt.join_all(c.bits()), lt.meet_all(d.bits()));
        (0..n).any(|u| {
            r.contains(u, jc) && (0..n).any(|v| s.contains(md, v) && src.precedes(ls.meet(ma, v), ls.join(jb, u)))
        })
    })?;
    let ps = UpperRel::from_fn(2 * m, 2 * n, |y, x| {
        let (c, d) = split(y, m);
        let (a, b) = split(x, n);
        let (ja, mb) = (ls.join_all(a.bits()), ls.meet_all(b.bits()));
        let (mc, jd) = (lt.meet_all(c.bits()), lt.join_all(d.bits()));
        (0..n).any(|u| {
            s.contains(mc, u) && (0..n).any(|v| r.contains(v, jd) && src.precedes(ls.meet(mb, u), ls.join(ja, v)))
        })
    })?;
    let ps_src = patch(&functor_g(src)?)?.scent;
    let ps_tgt = patch(&functor_g(tgt)?)?.scent;
    Ok((ProxMap::new(ps_src.clone(), ps_tgt.clone(), pr)?, ProxMap::new(ps_tgt, ps_src, ps)?))
}
