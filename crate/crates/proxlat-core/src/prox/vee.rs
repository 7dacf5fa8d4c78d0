//! `S^∨`, the ∨-strong proximity lattice on `Fin(S)` equivalent to a
//! proximity lattice, and `⊢^∧`, the entailment relation of a ∨-strong one.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{functor_g, ProxLat, ProxRel, Witnesses};
use crate::binrel::BinRel;
use crate::entail::{AxiomSet, EntailRel, SCEnt, UpperRel};
use crate::error::{cap, Error, Result};
use crate::lattice::{validate_lattice, DistLattice};
use crate::sets::{FinSet, Universe};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Veeified {
    pub prox: ProxLat,
    /// Least member of each `=^∨` class.
    pub reps: Vec<FinSet>,
    /// Class of every subset, indexed by its bits.
    pub class_of: Vec<usize>,
    pub witnesses: Witnesses,
}

struct Joins<'a> {
    p: &'a ProxLat,
}

impl Joins<'_> {
    fn pred(&self, b: FinSet) -> FinSet {
        self.p.prec().preimage(b)
    }

    /// `{⋁C | C ≺_L A}`, i.e. joins of subsets of `≺⁻¹[A]`.
    fn below(&self, a: FinSet) -> u64 {
        let l = self.p.lattice();
        self.pred(a)
            .iter()
            .fold(1u64 << l.bottom(), |acc, d| FinSet::from_bits(acc).iter().fold(acc, |m, j| m | 1 << l.join(j, d)))
    }

    /// `A ≤^∨ B ⟺ ∀C ≺_L A ∃D ≺_L B (⋁C ≺ ⋁D)`.
    fn leq(&self, a: FinSet, b: FinSet) -> bool {
        let jb = self.below(b);
        FinSet::from_bits(self.below(a)).iter().all(|c| self.p.prec().row(c) & jb != 0)
    }

    /// `A ≺^∨ B ⟺ ∃C ≺_L B (A ≤^∨ C)`; the largest such `C` is `≺⁻¹[B]`.
    fn prec(&self, a: FinSet, b: FinSet) -> bool {
        self.leq(a, self.pred(b))
    }
}

pub fn veeify(p: &ProxLat) -> Result<Veeified> {
    let l = p.lattice();
    let n = l.len();
    cap("elements for S^∨", 6, n)?;
    let j = Joins { p };
    let subsets: Vec<FinSet> = FinSet::all(n).collect();
    let mut sorted = subsets.clone();
    sorted.sort_unstable();
    let mut reps: Vec<FinSet> = Vec::new();
    let mut class_of = alloc::vec![usize::MAX; 1 << n];
    for &a in &sorted {
        match reps.iter().position(|&r| j.leq(a, r) && j.leq(r, a)) {
            Some(k) => class_of[a.bits() as usize] = k,
            None => {
                class_of[a.bits() as usize] = reps.len();
                reps.push(a);
            }
        }
    }
    let show = |a: FinSet| {
        let parts: Vec<&str> = a.iter().map(|i| l.label(i)).collect();
        format!("{{{}}}", parts.join(","))
    };
    let labels: Vec<String> = reps.iter().map(|&a| show(a)).collect();
    let lattice = DistLattice::from_leq(labels, |x, y| j.leq(reps[x], reps[y]))?;
    let report = validate_lattice(&lattice);
    if !report.is_valid() {
        return Err(Error::Invalid(format!("S^∨ is not distributive: {report}")));
    }
    let class = |a: FinSet| class_of[a.bits() as usize];
    let meet_sets = |a: FinSet, b: FinSet| {
        a.iter().flat_map(|x| b.iter().map(move |y| (x, y))).fold(FinSet::EMPTY, |m, (x, y)| m.with(l.meet(x, y)))
    };
    if lattice.bottom() != class(FinSet::EMPTY) || lattice.top() != class(FinSet::EMPTY.with(l.top())) {
        return Err(Error::Invalid("bounds of S^∨ disagree with 0^∨ = ∅ and 1^∨ = {1}".into()));
    }
    for &a in &subsets {
        for &b in &subsets {
            if class(a.union(b)) != lattice.join(class(a), class(b)) {
                return Err(Error::Invalid(format!("A ∪ B is not the join at {} and {}", show(a), show(b))));
            }
            if class(meet_sets(a, b)) != lattice.meet(class(a), class(b)) {
                return Err(Error::Invalid(format!("pairwise meets are not the meet at {} and {}", show(a), show(b))));
            }
        }
    }
    let prec = BinRel::from_fn(reps.len(), reps.len(), |x, y| j.prec(reps[x], reps[y]))?;
    let prox = ProxLat::new(lattice, prec)?;
    let t = prox.lattice();
    let r = ProxRel::from_fn(l, t, |a, x| p.prec().row(a) & j.below(reps[x]) != 0)?;
    let s = ProxRel::from_fn(t, l, |x, a| j.prec(reps[x], FinSet::EMPTY.with(a)))?;
    Ok(Veeified { prox, reps, class_of, witnesses: Witnesses { r, s } })
}

/// `(S, ⊢^∧, ≺)` with its two checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wedge {
    pub scent: SCEnt,
    /// Where `≪_{⊢^∧}` differs from `⋀≺[A] ≺ ⋁B`.
    pub closed_form_defect: Option<(FinSet, FinSet)>,
    /// Failed composite equations between `≪` of `G(S)` and `≪_{⊢^∧}`.
    pub composite_defects: Vec<(&'static str, (FinSet, FinSet))>,
}

impl Wedge {
    pub fn holds(&self) -> bool {
        self.closed_form_defect.is_none() && self.composite_defects.is_empty()
    }
}

/// The axioms `A ⊢₀ B` whenever `A ≺_U C` and `⋀C ≤ ⋁B` for some `C`, for
/// small lattices.
pub fn wedge_axioms(p: &ProxLat) -> Result<AxiomSet> {
    let l = p.lattice();
    let n = l.len();
    cap("elements for listing ⊢^∧ axioms", 6, n)?;
    let universe = Universe::new(l.labels().iter().cloned())?;
    let mut ax = AxiomSet::new(universe);
    for a in FinSet::all(n) {
        for c in FinSet::all(n) {
            let upper = c.iter().all(|y| p.prec().col(y) & a.bits() != 0);
            if !upper {
                continue;
            }
            for b in FinSet::all(n) {
                if l.leq(l.meet_all(c.bits()), l.join_all(b.bits())) {
                    ax.push(a, b)?;
                }
            }
        }
    }
    Ok(ax)
}

pub fn wedge_entailment(p: &ProxLat) -> Result<Wedge> {
    let l = p.lattice();
    let n = l.len();
    cap("elements for ⊢^∧", 11, n)?;
    let universe = Universe::new(l.labels().iter().cloned())?;
    // The hardest axiom against α takes C = ≺[α] and B = S∖α.
    let models = FinSet::all(n)
        .filter(|&m| !l.leq(l.meet_all(p.prec().image(m).bits()), l.join_all(m.complement(n).bits())))
        .collect();
    let scent = SCEnt::new(EntailRel::from_models(universe, models)?, p.prec().clone())?;
    let ll_w = scent.ll();
    let closed =
        UpperRel::from_fn(n, n, |a, b| p.precedes(l.meet_all(p.prec().image(a).bits()), l.join_all(b.bits())))?;
    let closed_form_defect = ll_w.difference(&closed);
    let ll_g = functor_g(p)?.ll();
    let mut composite_defects = Vec::new();
    let checks: [(&'static str, &UpperRel, &UpperRel, &UpperRel); 4] = [
        ("≪·≪^∧ = ≪^∧", &ll_w, &ll_g, &ll_w),
        ("≪^∧·≪^∧ = ≪^∧", &ll_w, &ll_w, &ll_w),
        ("≪^∧·≪ = ≪", &ll_g, &ll_w, &ll_g),
        ("≪·≪ = ≪", &ll_g, &ll_g, &ll_g),
    ];
    for (name, first, second, expected) in checks {
        if let Some(d) = first.cut_then(second)?.difference(expected) {
            composite_defects.push((name, d));
        }
    }
    Ok(Wedge { scent, closed_form_defect, composite_defects })
}
