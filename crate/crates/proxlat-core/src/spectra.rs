//! Finite spectra: rounded ideals, points, models, rounded upper sets,
//! filter frames and isomorphism search between finite frames.

use alloc::format;
use alloc::vec::Vec;

use crate::binrel::ApproxRel;
use crate::entail::{EntailRel, SCEnt, UpperRel};
use crate::error::{cap, Error, Result};
use crate::lattice::{DistLattice, Frame};
use crate::prox::{jp_violation, ProxLat, ProxMap};
use crate::sets::{FinSet, Universe};

/// A rounded prime filter, as a set of lattice elements.
pub type Point = FinSet;

/// A model of a presented theory, as a set of generators.
pub type Model = FinSet;

/// Bound on exhaustive subset enumeration.
pub const MAX_ENUMERATION: usize = 16;

fn preds_meet(p: &ProxLat, a: usize, set: u64) -> bool {
    p.prec().col(a) & set != 0
}

/// `RIdl(S)`: ideals `I` with `a ∈ I ⟺ ∃b ≻ a (b ∈ I)`.
pub fn rounded_ideals(s: &ProxLat) -> Result<Frame> {
    let l = s.lattice();
    let members: Vec<u64> = (0..l.len())
        .map(|x| l.down_set(x))
        .filter(|&i| (0..l.len()).all(|a| (i >> a & 1 == 1) == (s.prec().row(a) & i != 0)))
        .collect();
    let frame = Frame::from_members(l.labels().to_vec(), members)?;
    let down_prec = |a: usize| s.prec().col(a);
    frame.check_operations(
        down_prec(l.bottom()),
        l.all(),
        |i, j| {
            let mut out = 0;
            for a in FinSet::from_bits(i).iter() {
                for b in FinSet::from_bits(j).iter() {
                    out |= down_prec(l.join(a, b));
                }
            }
            out
        },
        |i, j| i & j,
    )?;
    Ok(frame)
}

/// Rounded prime filters in canonical order.
pub fn points(s: &ProxLat) -> Result<Vec<Point>> {
    let l = s.lattice();
    cap("elements for point enumeration", MAX_ENUMERATION, l.len())?;
    let mut out: Vec<Point> = FinSet::all(l.len())
        .filter(|f| {
            let m = f.bits();
            !f.has(l.bottom())
                && l.is_filter(m)
                && (0..l.len()).all(|x| (0..l.len()).all(|y| !f.has(l.join(x, y)) || f.has(x) || f.has(y)))
                && (0..l.len()).all(|a| f.has(a) == preds_meet(s, a, m))
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Models of `T(S, ⊢, ≺)`: models of `⊢`, upward closed along `≺`, rounded.
pub fn models_of_scent(e: &SCEnt) -> Vec<Model> {
    e.theory_models()
}

/// The terminal object `𝟙 = (∅, ≬, =)`.
pub fn unit_scent() -> SCEnt {
    let universe = Universe::indexed(0).expect("empty universe");
    let ent = EntailRel::overlap(universe).expect("empty universe");
    SCEnt::new(ent, ApproxRel::identity(0).expect("empty relation")).expect("matching sizes")
}

/// `r_α : 𝟙 → e` with `∅ r_α A ⟺ α ∩ A ≠ ∅`.
pub fn model_to_map(alpha: Model, e: &SCEnt) -> Result<ProxMap> {
    if !e.theory_models().contains(&alpha) {
        return Err(Error::Invalid(format!("{} is not a model", e.ent.universe().show(alpha))));
    }
    let n = e.len();
    let rel = UpperRel::from_counters(0, n, alloc::vec![(FinSet::EMPTY, alpha.complement(n))]);
    ProxMap::new(unit_scent(), e.clone(), rel)
}

/// `α_r = {a | ∅ r {a}}` for a join-preserving map out of `𝟙`.
pub fn map_to_model(m: &ProxMap) -> Result<Model> {
    if !m.source.is_empty() {
        return Err(Error::Mismatch("map does not start at the one-point relation".into()));
    }
    if let Some(v) = jp_violation(m) {
        return Err(Error::Invalid(format!("map is not join-preserving: {v:?}")));
    }
    Ok((0..m.target.len())
        .filter(|&a| m.rel.contains(FinSet::EMPTY, FinSet::EMPTY.with(a)))
        .fold(FinSet::EMPTY, |s, a| s.with(a)))
}

/// `Ups(S)`: upper sets with `a ∈ U ⟺ ∃b ≺ a (b ∈ U)`.
pub fn scott_upsets(s: &ProxLat) -> Result<Frame> {
    let l = s.lattice();
    cap("elements for upper set enumeration", MAX_ENUMERATION, l.len())?;
    let members: Vec<u64> = FinSet::all(l.len())
        .map(|u| u.bits())
        .filter(|&u| {
            FinSet::from_bits(u).iter().all(|a| l.up_set(a) & !u == 0)
                && (0..l.len()).all(|a| (u >> a & 1 == 1) == preds_meet(s, a, u))
        })
        .collect();
    let frame = Frame::from_members(l.labels().to_vec(), members)?;
    let up_prec = |a: usize| s.prec().row(a);
    frame.check_operations(
        0,
        up_prec(l.bottom()),
        |u, v| u | v,
        |u, v| {
            let mut out = 0;
            for a in FinSet::from_bits(u).iter() {
                for b in FinSet::from_bits(v).iter() {
                    out |= up_prec(l.join(a, b));
                }
            }
            out
        },
    )?;
    Ok(frame)
}

/// All filters of a finite frame, ordered by inclusion. Filters contain
/// the top, so the empty set is excluded and `{1}` is the bottom.
pub fn filters_frame(f: &Frame) -> Result<Frame> {
    let l = f.lattice();
    let members: Vec<u64> = (0..l.len()).map(|x| l.up_set(x)).collect();
    debug_assert!(members.iter().all(|&m| l.is_filter(m)));
    let out = Frame::from_members(l.labels().to_vec(), members)?;
    out.check_operations(
        l.up_set(l.top()),
        l.all(),
        |p, q| {
            let mut m = 0;
            for a in FinSet::from_bits(p).iter() {
                for b in FinSet::from_bits(q).iter() {
                    m |= l.up_set(l.meet(a, b));
                }
            }
            m
        },
        |p, q| p & q,
    )?;
    Ok(out)
}

/// An order isomorphism `a → b` as an element map, if one exists.
pub fn lattice_iso(a: &DistLattice, b: &DistLattice) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    let sig = |l: &DistLattice, x: usize| (l.down_set(x).count_ones(), l.up_set(x).count_ones());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| sig(a, x));
    let mut map = alloc::vec![usize::MAX; n];
    let mut used = 0u64;
    fn go(
        k: usize,
        order: &[usize],
        a: &DistLattice,
        b: &DistLattice,
        map: &mut Vec<usize>,
        used: &mut u64,
        sig: &dyn Fn(&DistLattice, usize) -> (u32, u32),
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let x = order[k];
        for y in 0..b.len() {
            if *used >> y & 1 == 1 || sig(a, x) != sig(b, y) {
                continue;
            }
            let consistent =
                order[..k].iter().all(|&z| a.leq(z, x) == b.leq(map[z], y) && a.leq(x, z) == b.leq(y, map[z]));
            if consistent {
                map[x] = y;
                *used |= 1 << y;
                if go(k + 1, order, a, b, map, used, sig) {
                    return true;
                }
                *used &= !(1 << y);
            }
        }
        false
    }
    go(0, &order, a, b, &mut map, &mut used, &sig).then_some(map)
}

pub fn frame_iso(f1: &Frame, f2: &Frame) -> Result<Option<Vec<usize>>> {
    cap("frame size for isomorphism search", 64, f1.len().max(f2.len()))?;
    Ok(lattice_iso(f1.lattice(), f2.lattice()))
}
