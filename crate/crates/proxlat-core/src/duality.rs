//! De Groot duals and the duality theorem suite.
//!
//! Each theorem is checked as a list of claims. An isomorphism claim is
//! tried first as literal equality of generated relations after renaming
//! generators, then (if that fails) through an isomorphism of the frames
//! of rounded ideals; a claim settled by the weaker route is flagged as
//! downgraded.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::binrel::BinRel;
use crate::constructions::{
    bar_map, double, lower, patch, patch_prime, patch_swap, sigma, upper, valuation_axioms, vietoris, vietoris_swap,
    Construction, RationalGrid, ValKind,
};
use crate::entail::{EntailRel, SCEnt, UpperRel};
use crate::error::{Error, Result};
use crate::fixtures::Fixture;
use crate::lattice::Frame;
use crate::prox::{functor_f, functor_g, ProxLat, ProxRel, Witnesses};
use crate::sets::{star, FinSet, SubsetFamily, Universe};
use crate::spectra::{filters_frame, frame_iso, rounded_ideals};

pub use crate::constructions::dual_val_generators;
pub use crate::prox::degroot_dual_splat;

/// `(S, ⊢^∂, ≻)`.
pub fn degroot_dual_scent(e: &SCEnt) -> SCEnt {
    e.dual()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    UpperLower,
    SigmaUpper,
    Double,
    PowerComposite,
    LowerSigma,
    Vietoris,
    Patch,
    Valuation,
    Naturality,
    Filters,
}

impl TheoremId {
    pub const ALL: [TheoremId; 10] = [
        TheoremId::UpperLower,
        TheoremId::SigmaUpper,
        TheoremId::Double,
        TheoremId::PowerComposite,
        TheoremId::LowerSigma,
        TheoremId::Vietoris,
        TheoremId::Patch,
        TheoremId::Valuation,
        TheoremId::Naturality,
        TheoremId::Filters,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::UpperLower => "T-UL",
            TheoremId::SigmaUpper => "T-ΣU",
            TheoremId::Double => "T-DD",
            TheoremId::PowerComposite => "T-PC",
            TheoremId::LowerSigma => "T-LS",
            TheoremId::Vietoris => "T-V",
            TheoremId::Patch => "T-P",
            TheoremId::Valuation => "T-VAL",
            TheoremId::Naturality => "T-NAT",
            TheoremId::Filters => "T-HM",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    /// Accepts the stable ids, with `T-SU` as an ASCII spelling of `T-ΣU`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "T-SU" {
            return Ok(TheoremId::SigmaUpper);
        }
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown theorem id `{s}`")))
    }
}

/// How a claim was established, strongest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Route {
    Literal,
    Witness,
    FrameIso,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Literal => "literal equality",
            Route::Witness => "witness maps",
            Route::FrameIso => "frame isomorphism",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
}

/// One sub-assertion with its certificate or counterexample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evidence {
    pub claim: String,
    pub route: Route,
    pub holds: bool,
    /// Certificate when the claim holds, counterexample otherwise.
    pub detail: String,
    /// A stronger route that was tried first and failed.
    pub downgraded_from: Option<(Route, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremCheck {
    pub id: TheoremId,
    pub inputs: Vec<String>,
    pub verdict: Verdict,
    pub evidence: Vec<Evidence>,
}

impl TheoremCheck {
    fn new(id: TheoremId, inputs: Vec<String>, evidence: Vec<Evidence>) -> Self {
        let verdict = if evidence.iter().all(|e| e.holds) { Verdict::Pass } else { Verdict::Fail };
        TheoremCheck { id, inputs, verdict, evidence }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// The first failing claim and its counterexample.
    pub fn counterexample(&self) -> Option<&Evidence> {
        self.evidence.iter().find(|e| !e.holds)
    }

    pub fn downgraded(&self) -> bool {
        self.evidence.iter().any(|e| e.downgraded_from.is_some())
    }
}

impl fmt::Display for TheoremCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{} {verdict} on {}", self.id, self.inputs.join(", "))?;
        for e in &self.evidence {
            let mark = if e.holds { "ok" } else { "FAILED" };
            writeln!(f, "  [{mark}] {} via {}", e.claim, e.route)?;
            if let Some((route, why)) = &e.downgraded_from {
                writeln!(f, "    downgraded: {route} failed: {why}")?;
            }
            for line in e.detail.lines() {
                writeln!(f, "    {line}")?;
            }
        }
        Ok(())
    }
}

fn show_pair(u: &Universe, a: FinSet, b: FinSet, turnstile: &str) -> String {
    format!("{} {turnstile} {}", u.show(a), u.show(b))
}

/// A sequent on which two relations over the same universe disagree.
fn ent_difference(x: &EntailRel, y: &EntailRel) -> Option<String> {
    let n = x.len();
    let u = x.universe();
    if let Some(&m) = x.models().iter().find(|m| !y.models().contains(m)) {
        return Some(format!("only the right side has {}", show_pair(u, m, m.complement(n), "⊢")));
    }
    let &m = y.models().iter().find(|m| !x.models().contains(m))?;
    Some(format!("only the left side has {}", show_pair(u, m, m.complement(n), "⊢")))
}

fn approx_difference(u: &Universe, x: &BinRel, y: &BinRel) -> Option<String> {
    let (a, b) = x.first_difference(y).or_else(|| y.first_difference(x))?;
    let side = if x.contains(a, b) { "left" } else { "right" };
    Some(format!("only the {side} side has {} ≺ {}", u.label(a), u.label(b)))
}

fn upper_difference(u: &Universe, x: &UpperRel, y: &UpperRel, symbol: &str) -> Option<String> {
    let (a, b) = x.difference(y)?;
    let side = if x.contains(a, b) { "left" } else { "right" };
    Some(format!("only the {side} side has {}", show_pair(u, a, b, symbol)))
}

/// `left` renamed by `map` equals `right`, both components.
fn literal(left: &SCEnt, right: &SCEnt, map: &[usize]) -> Result<core::result::Result<String, String>> {
    if left.len() != right.len() {
        return Ok(Err(format!("{} generators against {}", left.len(), right.len())));
    }
    let u = right.ent.universe();
    let ent = left.ent.rename(u.clone(), map)?;
    let approx = left.approx.rename(map, map, right.len(), right.len())?;
    if let Some(d) = ent_difference(&ent, &right.ent) {
        return Ok(Err(d));
    }
    if let Some(d) = approx_difference(u, &approx, &right.approx) {
        return Ok(Err(d));
    }
    let renamed = map.iter().enumerate().filter(|&(i, &j)| i != j).count();
    Ok(Ok(format!(
        "{} models and {} ≺ pairs coincide ({} generators renamed)",
        right.ent.models().len(),
        right.approx.len(),
        renamed
    )))
}

fn spectrum_of(e: &SCEnt) -> Result<Frame> {
    rounded_ideals(&functor_f(e)?.prox)
}

fn iso_detail(f1: &Frame, f2: &Frame, iso: &[usize]) -> String {
    let mut out = format!("{} elements; witness:", f1.len());
    for (i, &j) in iso.iter().enumerate() {
        out.push_str(&format!("\n  {} ↦ {}", f1.lattice().label(i), f2.lattice().label(j)));
    }
    out
}

fn frames(claim: &str, f1: &Frame, f2: &Frame) -> Result<Evidence> {
    let (holds, detail) = match frame_iso(f1, f2)? {
        Some(iso) => (true, iso_detail(f1, f2, &iso)),
        None => (false, format!("no isomorphism between frames of sizes {} and {}", f1.len(), f2.len())),
    };
    Ok(Evidence { claim: claim.into(), route: Route::FrameIso, holds, detail, downgraded_from: None })
}

/// An isomorphism claim, literal route first, then frames of rounded ideals.
fn iso_claim(claim: &str, left: &SCEnt, right: &SCEnt, map: &[usize]) -> Result<Evidence> {
    match literal(left, right, map)? {
        Ok(detail) => {
            Ok(Evidence { claim: claim.into(), route: Route::Literal, holds: true, detail, downgraded_from: None })
        }
        Err(why) => {
            let mut e = frames(claim, &spectrum_of(left)?, &spectrum_of(right)?)?;
            e.downgraded_from = Some((Route::Literal, why));
            Ok(e)
        }
    }
}

fn exact(claim: &str, route: Route, outcome: core::result::Result<String, String>) -> Evidence {
    let (holds, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Evidence { claim: claim.into(), route, holds, detail, downgraded_from: None }
}

fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn sc(c: Result<Construction>) -> Result<SCEnt> {
    Ok(c?.scent)
}

/// Runs one theorem of the suite on a fixture. `T-VAL` uses `grid`, or
/// `{0, 1/4, 1/2, 3/4, 1}` when none is given.
pub fn verify_duality_theorem(id: TheoremId, fixture: &Fixture, grid: Option<&RationalGrid>) -> Result<TheoremCheck> {
    let s = &fixture.prox;
    let d = s.dual();
    let n = s.len();
    let mut inputs = alloc::vec![format!("{} ({} elements)", fixture.name, n)];
    let evidence = match id {
        TheoremId::UpperLower => alloc::vec![
            iso_claim("P_U(S)^∂ = P_L(S^∂)", &sc(upper(s))?.dual(), &sc(lower(&d))?, &identity(n))?,
            iso_claim("P_L(S)^∂ = P_U(S^∂)", &sc(lower(s))?.dual(), &sc(upper(&d))?, &identity(n))?,
        ],
        TheoremId::SigmaUpper => alloc::vec![
            iso_claim("Σ(S^∂) = P_U(S)", &sc(sigma(&d))?, &sc(upper(s))?, &identity(n))?,
            iso_claim("Σ(S)^∂ = P_L(S)", &sc(sigma(s))?.dual(), &sc(lower(s))?, &identity(n))?,
        ],
        TheoremId::Double => {
            alloc::vec![iso_claim("P_D(S)^∂ = P_D(S^∂)", &sc(double(s))?.dual(), &sc(double(&d))?, &identity(n))?]
        }
        TheoremId::Vietoris => alloc::vec![iso_claim(
            "P_V(S)^∂ = P_V(S^∂) with ◇ and □ exchanged",
            &sc(vietoris(s))?.dual(),
            &sc(vietoris(&d))?,
            &vietoris_swap(n),
        )?],
        TheoremId::Patch => patch_claims(s)?,
        TheoremId::PowerComposite => {
            let sigma_sigma = sigma(&functor_f(&sc(sigma(s))?)?.prox)?.scent;
            alloc::vec![frames("P_D(S) ≅ Σ(Σ(S))", &spectrum_of(&sc(double(s))?)?, &spectrum_of(&sigma_sigma)?)?]
        }
        TheoremId::LowerSigma => {
            let lower_sigma = lower(&functor_f(&sc(sigma(s))?)?.prox)?.scent;
            let sigma_upper = sigma(&functor_f(&sc(upper(s))?)?.prox)?.scent;
            let lower_upper = lower(&functor_f(&sc(upper(s))?)?.prox)?.scent;
            alloc::vec![
                frames("P_L(Σ(S)) ≅ Σ(P_U(S))", &spectrum_of(&lower_sigma)?, &spectrum_of(&sigma_upper)?)?,
                frames("P_L(P_U(S)) ≅ P_D(S)", &spectrum_of(&lower_upper)?, &spectrum_of(&sc(double(s))?)?)?,
            ]
        }
        TheoremId::Filters => {
            alloc::vec![frames(
                "RIdl(S^∂) ≅ filters of RIdl(S)",
                &rounded_ideals(&d)?,
                &filters_frame(&rounded_ideals(s)?)?
            )?]
        }
        TheoremId::Naturality => naturality_claims(&functor_g(s)?)?,
        TheoremId::Valuation => {
            let default = RationalGrid::uniform(4);
            let grid = grid.unwrap_or(&default);
            inputs.push(format!("grid {grid}"));
            valuation_claims(s, grid)?
        }
    };
    Ok(TheoremCheck::new(id, inputs, evidence))
}

fn patch_claims(s: &ProxLat) -> Result<Vec<Evidence>> {
    let g = functor_g(s)?;
    let gd = functor_g(&s.dual())?;
    let n = s.len();
    let g_dual = literal(&g.dual(), &gd, &identity(n))?;
    let plain = patch(&g)?.scent;
    let prime = patch_prime(&g)?.scent;
    let prime_dual = patch_prime(&g.dual())?.scent;
    let ll = match upper_difference(prime.ent.universe(), &plain.ll(), &prime.ll(), "≪") {
        None => Ok(format!("{} counters coincide", plain.ll().counters().len())),
        Some(d) => Err(d),
    };
    Ok(alloc::vec![
        exact("G(S)^∂ = G(S^∂)", Route::Literal, g_dual),
        iso_claim("Patch′(S) = Patch′(S^∂) with a and ā exchanged", &prime, &prime_dual, &patch_swap(n))?,
        exact("≪ of Patch(S) = ≪ of Patch′(S)", Route::Literal, ll),
    ])
}

fn valuation_claims(s: &ProxLat, grid: &RationalGrid) -> Result<Vec<Evidence>> {
    let d = s.dual();
    let n = s.len();
    let mut out = Vec::new();
    for (kind, dual_kind, claim) in [
        (ValKind::Val, ValKind::Coval, "reversed axioms of 𝔙(S) = axioms of ℭ(S^∂)"),
        (ValKind::Coval, ValKind::Val, "reversed axioms of ℭ(S) = axioms of 𝔙(S^∂)"),
    ] {
        let (_, ax) = valuation_axioms(s, grid, kind)?;
        let (_, dual_ax) = valuation_axioms(&d, grid, dual_kind)?;
        let (left, right) = (ax.reversed().canonical(), dual_ax.canonical());
        let outcome = match left
            .iter()
            .find(|a| !right.contains(a))
            .map(|a| ("left", a))
            .or_else(|| right.iter().find(|a| !left.contains(a)).map(|a| ("right", a)))
        {
            None => Ok(format!("{} axioms coincide", left.len())),
            Some((side, &(a, b))) => {
                Err(format!("only the {side} side has axiom {}", show_pair(ax.universe(), a, b, "⊢")))
            }
        };
        out.push(exact(claim, Route::Literal, outcome));
    }
    let valp = crate::constructions::valuations_prob(s, grid)?.scent;
    let covalp = crate::constructions::covaluations_prob(s, grid)?.scent;
    let bar = bar_map(grid, n)?;
    let renamed = valp.ent.rename(covalp.ent.universe().clone(), &bar)?;
    let barred = match ent_difference(&renamed, &covalp.ent) {
        None => Ok(format!("{} models correspond under ⟨p,a⟩ ↦ ⟨1−p,a⟩", covalp.ent.models().len())),
        Some(d) => Err(d),
    };
    out.push(exact("A ⊢_𝔙P B ⟺ Ā ⊢_ℭP B̄", Route::Literal, barred));
    out.push(exact(
        "r and s between 𝔙_P(S) and ℭ_P(S) are inverse",
        Route::Witness,
        val_witnesses(&valp, &covalp, &bar)?,
    ));
    Ok(out)
}

fn rename_target(r: &UpperRel, map: &[usize]) -> UpperRel {
    UpperRel::from_counters(r.src(), r.dst(), r.counters().iter().map(|&(x, y)| (x, y.map_by(map))).collect())
}

/// `A r B ⟺ A ≪_𝔙P B̄` and `B s A ⟺ B ≪_ℭP Ā`.
fn val_witnesses(valp: &SCEnt, covalp: &SCEnt, bar: &[usize]) -> Result<core::result::Result<String, String>> {
    let (llv, llc) = (valp.ll(), covalp.ll());
    let r = rename_target(&llv, bar);
    let s = rename_target(&llc, bar);
    let u = valp.ent.universe();
    if let Some(d) = upper_difference(u, &r.cut_then(&s)?, &llv, "≪") {
        return Ok(Err(format!("r then s against ≪_𝔙P: {d}")));
    }
    if let Some(d) = upper_difference(covalp.ent.universe(), &s.cut_then(&r)?, &llc, "≪") {
        return Ok(Err(format!("s then r against ≪_ℭP: {d}")));
    }
    Ok(Ok(format!(
        "r then s = ≪_𝔙P and s then r = ≪_ℭP ({} and {} counters)",
        llv.counters().len(),
        llc.counters().len()
    )))
}

/// `𝒰 r_S 𝒱 ⟺ 𝒰* ≫̃ 𝒱` from `F(S)^∂` to `F(S^∂)`, inverse `t_S`.
fn naturality_claims(e: &SCEnt) -> Result<Vec<Evidence>> {
    let f = functor_f(e)?;
    let fd = functor_f(&e.dual())?;
    let left = f.prox.dual();
    let gg = e.ll().transpose();
    let ll = e.ll();
    let reps = |img: &crate::prox::FImage| -> Vec<SubsetFamily> {
        (0..img.prox.len()).map(|x| img.quotient.representative(x)).collect()
    };
    let (ru, rv) = (reps(&f), reps(&fd));
    let r = ProxRel::from_fn(left.lattice(), fd.prox.lattice(), |x, y| gg.approx_ext(&star(&ru[x]), &rv[y]))?;
    let t = ProxRel::from_fn(fd.prox.lattice(), left.lattice(), |y, x| ll.approx_ext(&ru[x], &star(&rv[y])))?;
    let report = Witnesses { r, s: t }.check(&left, &fd.prox)?;
    let outcome = if report.holds() {
        Ok(format!("F(S)^∂ has {} elements; r_S then t_S = ≻ and t_S then r_S = ≺", left.len()))
    } else {
        Err(report.describe())
    };
    Ok(alloc::vec![exact("r_S : F(S)^∂ → F(S^∂) and t_S are inverse", Route::Witness, outcome)])
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}
