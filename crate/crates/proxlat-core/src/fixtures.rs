//! Named lattices and seeded random strong proximity lattices used by the
//! test suites and the command-line tool.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::binrel::BinRel;
use crate::error::{cap, Result};
use crate::lattice::DistLattice;
use crate::prox::{classify_prox, is_adjoint_pair, validate_prox_relation, ProxLat, ProxRel};
use crate::sets::FinSet;

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// The two-element lattice `0 < 1`.
pub fn bool2() -> DistLattice {
    DistLattice::from_hasse(labels(&["0", "1"]), &[(0, 1)]).expect("chain")
}

/// The chain `0 < m < 1`.
pub fn c3() -> DistLattice {
    DistLattice::from_hasse(labels(&["0", "m", "1"]), &[(0, 1), (1, 2)]).expect("chain")
}

/// The four-element Boolean lattice with atoms `a`, `b`.
pub fn m2() -> DistLattice {
    DistLattice::from_hasse(labels(&["0", "a", "b", "1"]), &[(0, 1), (0, 2), (1, 3), (2, 3)]).expect("square")
}

/// The pentagon; a lattice that is not distributive. Built from raw tables
/// so that validation can report it.
pub fn n5() -> DistLattice {
    // 0 < a < b < 1, 0 < c < 1.
    let n = 5;
    let up: [&[usize]; 5] = [&[0, 1, 2, 3, 4], &[1, 2, 4], &[2, 4], &[3, 4], &[4]];
    let leq: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| up[a].contains(&b)).collect()).collect();
    let le = |a: usize, b: usize| leq[a][b];
    let mut meet = alloc::vec![0; n * n];
    let mut join = alloc::vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            meet[a * n + b] = (0..n)
                .filter(|&c| le(c, a) && le(c, b))
                .find(|&c| (0..n).all(|d| !(le(d, a) && le(d, b)) || le(d, c)))
                .expect("glb");
            join[a * n + b] = (0..n)
                .filter(|&c| le(a, c) && le(b, c))
                .find(|&c| (0..n).all(|d| !(le(a, d) && le(b, d)) || le(c, d)))
                .expect("lub");
        }
    }
    DistLattice::from_parts(labels(&["0", "a", "b", "c", "1"]), &leq, meet, join, 0, 4)
}

/// `≺ = {(0,0), (0,m), (0,1), (m,1), (1,1)}` on the chain `C3`.
pub fn c3w() -> ProxLat {
    let prec = BinRel::from_pairs(3, 3, &[(0, 0), (0, 1), (0, 2), (1, 2), (2, 2)]).expect("3x3");
    ProxLat::new(c3(), prec).expect("C3w is a proximity lattice")
}

/// A named strong proximity lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub prox: ProxLat,
}

pub fn named() -> Vec<Fixture> {
    alloc::vec![
        Fixture { name: "BOOL2".into(), prox: ProxLat::with_order(bool2()) },
        Fixture { name: "C3".into(), prox: ProxLat::with_order(c3()) },
        Fixture { name: "C3w".into(), prox: c3w() },
        Fixture { name: "M2".into(), prox: ProxLat::with_order(m2()) },
    ]
}

/// Down-set lattice of a poset on `k` points given by its strict order.
fn downsets(k: usize, less: &[(usize, usize)]) -> DistLattice {
    let closed = |d: FinSet| less.iter().all(|&(x, y)| !d.has(y) || d.has(x));
    let sets: Vec<FinSet> = FinSet::all(k).filter(|&d| closed(d)).collect();
    let names: Vec<String> = sets
        .iter()
        .map(|&d| {
            if d.is_empty() {
                "0".into()
            } else if d == FinSet::full(k) {
                "1".into()
            } else {
                d.iter().map(|i| (b'p' + i as u8) as char).collect()
            }
        })
        .collect();
    DistLattice::from_leq(names, |a, b| sets[a].is_subset(sets[b])).expect("down-sets form a lattice")
}

/// Every idempotent strong proximity relation contained in `≤`.
pub fn strong_relations(l: &DistLattice) -> Result<Vec<BinRel>> {
    let pairs: Vec<(usize, usize)> =
        (0..l.len()).flat_map(|a| (0..l.len()).map(move |b| (a, b))).filter(|&(a, b)| l.leq(a, b)).collect();
    cap("comparable pairs for enumeration", 16, pairs.len())?;
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let chosen: Vec<(usize, usize)> = FinSet::from_bits(mask as u64).iter().map(|i| pairs[i]).collect();
        let rel = BinRel::from_pairs(l.len(), l.len(), &chosen)?;
        // Cheap filters first: ideals, filters, idempotence.
        let prox = (0..l.len()).all(|b| l.is_ideal(rel.col(b))) && (0..l.len()).all(|a| l.is_filter(rel.row(a)));
        if !prox || rel.then(&rel)? != rel {
            continue;
        }
        let p = ProxLat::new(l.clone(), rel)?;
        if classify_prox(&p).strong() {
            out.push(p.prec().clone());
        }
    }
    Ok(out)
}

/// `count` strong proximity lattices with at most five elements, drawn
/// from down-set lattices of random posets and random strong `≺ ⊆ ≤`.
pub fn random(seed: u64, count: usize) -> Vec<Fixture> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cache: Vec<(DistLattice, Vec<BinRel>)> = Vec::new();
    let mut out: Vec<Fixture> = Vec::new();
    let mut retries = 0;
    while out.len() < count {
        let k = rng.gen_range(1..=4);
        let less: Vec<(usize, usize)> =
            (0..k).flat_map(|x| (x + 1..k).map(move |y| (x, y))).filter(|_| rng.gen_bool(0.5)).collect();
        let l = downsets(k, &transitive_closure(&less));
        if l.len() > 5 {
            continue;
        }
        let rels = match cache.iter().find(|(c, _)| *c == l) {
            Some((_, r)) => r.clone(),
            None => {
                let r = strong_relations(&l).expect("at most 15 comparable pairs");
                cache.push((l.clone(), r.clone()));
                r
            }
        };
        // Favour relations strictly smaller than ≤ when there are any.
        let order = ProxLat::with_order(l.clone());
        let proper: Vec<&BinRel> = rels.iter().filter(|r| *r != order.prec()).collect();
        let prec = match proper.choose(&mut rng) {
            Some(r) if rng.gen_bool(0.7) => (*r).clone(),
            _ => order.prec().clone(),
        };
        let prox = ProxLat::new(l, prec).expect("validated during enumeration");
        // Repeats are allowed only once fresh draws keep failing.
        if out.iter().any(|f| f.prox == prox) && retries < 50 {
            retries += 1;
            continue;
        }
        retries = 0;
        out.push(Fixture { name: alloc::format!("R{:02}", out.len()), prox });
    }
    out
}

fn transitive_closure(less: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut closure = less.to_vec();
    loop {
        let extra: Vec<(usize, usize)> = closure
            .iter()
            .flat_map(|&(x, y)| closure.iter().filter(move |&&(y2, _)| y2 == y).map(move |&(_, z)| (x, z)))
            .filter(|p| !closure.contains(p))
            .collect();
        if extra.is_empty() {
            return closure;
        }
        closure.extend(extra);
        closure.sort_unstable();
        closure.dedup();
    }
}

/// The named fixtures followed by the twenty seeded random ones.
pub fn all() -> Vec<Fixture> {
    let mut v = named();
    v.extend(random(0x5eed, 20));
    v
}

/// All bounded lattice homomorphisms `src → dst`, as element maps.
pub fn lattice_homs(src: &DistLattice, dst: &DistLattice) -> Result<Vec<Vec<usize>>> {
    cap("elements for homomorphism search", 6, src.len().max(dst.len()))?;
    let n = src.len();
    let mut out = Vec::new();
    let mut map = alloc::vec![0usize; n];
    let total = dst.len().pow(n as u32);
    for mut code in 0..total {
        for m in map.iter_mut() {
            *m = code % dst.len();
            code /= dst.len();
        }
        let hom = map[src.bottom()] == dst.bottom()
            && map[src.top()] == dst.top()
            && (0..n).all(|a| {
                (0..n).all(|b| {
                    map[src.join(a, b)] == dst.join(map[a], map[b]) && map[src.meet(a, b)] == dst.meet(map[a], map[b])
                })
            });
        if hom {
            out.push(map.clone());
        }
    }
    Ok(out)
}

/// An adjoint pair built from a homomorphism `h : S′ → S` preserving `≺`:
/// `r = ≺ ; {a ≤ h(b)} ; ≺′ : S → S′` and `s = ≺′ ; {h(b) ≤ a} ; ≺ : S′ → S`.
pub fn morphism_pair(s: &ProxLat, t: &ProxLat, h: &[usize]) -> Result<(ProxRel, ProxRel)> {
    let (ls, lt) = (s.lattice(), t.lattice());
    let below = ProxRel::from_fn(ls, lt, |a, b| ls.leq(a, h[b]))?;
    let above = ProxRel::from_fn(lt, ls, |b, a| ls.leq(h[b], a))?;
    let r = s.as_rel().then(&below)?.then(&t.as_rel())?;
    let back = t.as_rel().then(&above)?.then(&s.as_rel())?;
    Ok((r, back))
}

/// Homomorphisms `h : S′ → S` with `b ≺′ c ⟹ h(b) ≺ h(c)`.
pub fn prec_homs(s: &ProxLat, t: &ProxLat) -> Result<Vec<Vec<usize>>> {
    Ok(lattice_homs(t.lattice(), s.lattice())?
        .into_iter()
        .filter(|h| t.prec().pairs().all(|(b, c)| s.precedes(h[b], h[c])))
        .collect())
}

/// A join-preserving `r : S → S′` with its left adjoint `s : S′ → S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub source: ProxLat,
    pub target: ProxLat,
    pub r: ProxRel,
    pub s: ProxRel,
}

/// The adjoint pairs arising from `≺`-preserving homomorphisms `S′ → S`,
/// keeping those that pass validation.
pub fn morphisms_between(s: &ProxLat, t: &ProxLat) -> Result<Vec<Morphism>> {
    let mut out = Vec::new();
    for h in prec_homs(s, t)? {
        let (r, back) = morphism_pair(s, t, &h)?;
        let valid = validate_prox_relation(&r).is_valid()
            && validate_prox_relation(&back).is_valid()
            && r.join_preserving_violation().is_none()
            && is_adjoint_pair(&back, &r, t, s)?;
        if valid {
            out.push(Morphism { source: s.clone(), target: t.clone(), r, s: back });
        }
    }
    Ok(out)
}

/// `count` composable pairs `S₁ → S₂ → S₃` between fixtures with at most
/// `max_len` elements.
pub fn chains(seed: u64, count: usize, max_len: usize) -> Vec<(Morphism, Morphism)> {
    let pool: Vec<ProxLat> = all().into_iter().map(|f| f.prox).filter(|p| p.len() <= max_len).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(Morphism, Morphism)> = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 10_000 {
        attempts += 1;
        let pick = |rng: &mut ChaCha8Rng| pool[rng.gen_range(0..pool.len())].clone();
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let (Ok(first), Ok(second)) = (morphisms_between(&a, &b), morphisms_between(&b, &c)) else {
            continue;
        };
        if let (Some(f), Some(g)) = (first.choose(&mut rng), second.choose(&mut rng)) {
            let pair = (f.clone(), g.clone());
            if !out.contains(&pair) {
                out.push(pair);
            }
        }
    }
    out
}
