//! Constructions on strong proximity lattices and strong continuous
//! entailment relations: Scott locale, powerlocales, patch and
//! (co)valuations, with their actions on morphisms.

mod finpower;
mod functor;
mod grid;
mod patch;
mod power;
mod valuation;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_rational::BigRational;

use crate::binrel::ApproxRel;
use crate::entail::{check_generated_scent, generate_entailment, validate_scent, AxiomSet, SCEnt, ScentReport};
use crate::error::{Error, Result};
use crate::sets::{FinSet, Universe};

pub use finpower::{lower_ll_characterization_defect, scent_lower, scent_lower_literal, scent_upper};
pub use functor::{apply_functor, apply_patch};
pub use grid::RationalGrid;
pub use patch::{patch, patch_prime, patch_swap};
pub use power::{closed_form, double, lower, sigma, upper, vietoris, vietoris_swap};
pub(crate) use valuation::bar_map;
pub use valuation::{
    covaluations, covaluations_prob, dual_val_generators, valuation_axioms, valuations, valuations_prob, ValKind,
};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    Plain,
    Diamond,
    Box,
    Bar,
    Valuation(BigRational),
}

/// A generator of a construction: a tag applied to a base generator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TaggedGenerator {
    pub tag: Tag,
    pub base: usize,
}

impl TaggedGenerator {
    /// Display name given the labels of the base generators. None of the
    /// forms use `<`, which separates pairs in fixture files.
    pub fn label(&self, base: &[String]) -> String {
        let b = &base[self.base];
        match &self.tag {
            Tag::Plain => b.clone(),
            Tag::Diamond => format!("◇{b}"),
            Tag::Box => format!("□{b}"),
            Tag::Bar => format!("~{b}"),
            Tag::Valuation(p) => format!("⟨{p},{b}⟩"),
        }
    }
}

/// Which construction produced a relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Sigma,
    Upper,
    Lower,
    Double,
    Vietoris,
    Patch,
    PatchPrime,
    Val,
    Coval,
    ValP,
    CovalP,
    ScentLower,
    ScentUpper,
}

impl Kind {
    pub const ALL: [Kind; 13] = [
        Kind::Sigma,
        Kind::Upper,
        Kind::Lower,
        Kind::Double,
        Kind::Vietoris,
        Kind::Patch,
        Kind::PatchPrime,
        Kind::Val,
        Kind::Coval,
        Kind::ValP,
        Kind::CovalP,
        Kind::ScentLower,
        Kind::ScentUpper,
    ];

    /// The command-line name.
    pub fn name(self) -> &'static str {
        match self {
            Kind::Sigma => "sigma",
            Kind::Upper => "upper",
            Kind::Lower => "lower",
            Kind::Double => "double",
            Kind::Vietoris => "vietoris",
            Kind::Patch => "patch",
            Kind::PatchPrime => "patchp",
            Kind::Val => "val",
            Kind::Coval => "coval",
            Kind::ValP => "valp",
            Kind::CovalP => "covalp",
            Kind::ScentLower => "scent-lower",
            Kind::ScentUpper => "scent-upper",
        }
    }

    pub fn needs_grid(self) -> bool {
        matches!(self, Kind::Val | Kind::Coval | Kind::ValP | Kind::CovalP)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown construction `{s}`")))
    }
}

/// How the generators of a construction arise from the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generators {
    Tagged(Vec<TaggedGenerator>),
    /// `Fin(S)`, one generator per subset of the base.
    Subsets(Vec<FinSet>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub kind: Kind,
    pub generators: Generators,
    /// The instantiated axiom schemas. Absent when the relation is built
    /// from its closed form because the literal schema is too large.
    pub axioms: Option<AxiomSet>,
    pub scent: SCEnt,
}

/// Outcome of the two strong-continuity checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScentCheck {
    pub report: ScentReport,
    /// `None` when there is no axiom list to check.
    pub generated: Option<bool>,
}

impl ScentCheck {
    pub fn holds(&self) -> bool {
        self.report.is_valid() && self.generated != Some(false)
    }
}

impl Construction {
    fn from_axioms(kind: Kind, generators: Generators, axioms: AxiomSet, approx: ApproxRel) -> Result<Self> {
        let ent = generate_entailment(&axioms)?;
        let scent = SCEnt::new(ent, approx)?;
        Ok(Construction { kind, generators, axioms: Some(axioms), scent })
    }

    pub fn universe(&self) -> &Universe {
        self.scent.ent.universe()
    }

    pub fn check(&self) -> Result<ScentCheck> {
        let report = validate_scent(&self.scent.ent, &self.scent.approx);
        let generated = match &self.axioms {
            Some(ax) => Some(check_generated_scent(ax, &self.scent.approx)?),
            None => None,
        };
        Ok(ScentCheck { report, generated })
    }
}

fn tagged(tag: Tag, n: usize) -> Vec<TaggedGenerator> {
    (0..n).map(|base| TaggedGenerator { tag: tag.clone(), base }).collect()
}

fn universe_of(gens: &[TaggedGenerator], base: &[String]) -> Result<Universe> {
    Universe::new(gens.iter().map(|g| g.label(base)))
}

fn single(i: usize) -> FinSet {
    FinSet::EMPTY.with(i)
}

/// Builds a construction from a strong proximity lattice. Constructions on
/// entailment relations are applied to `G(S)`.
pub fn construct(kind: Kind, s: &crate::prox::ProxLat, grid: Option<&RationalGrid>) -> Result<Construction> {
    let need_grid = || grid.ok_or_else(|| Error::Invalid(format!("`{kind}` needs a grid")));
    match kind {
        Kind::Sigma => sigma(s),
        Kind::Upper => upper(s),
        Kind::Lower => lower(s),
        Kind::Double => double(s),
        Kind::Vietoris => vietoris(s),
        Kind::Patch => patch(&crate::prox::functor_g(s)?),
        Kind::PatchPrime => patch_prime(&crate::prox::functor_g(s)?),
        Kind::ScentLower => scent_lower(&crate::prox::functor_g(s)?),
        Kind::ScentUpper => scent_upper(&crate::prox::functor_g(s)?),
        Kind::Val => valuations(s, need_grid()?),
        Kind::Coval => covaluations(s, need_grid()?),
        Kind::ValP => valuations_prob(s, need_grid()?),
        Kind::CovalP => covaluations_prob(s, need_grid()?),
    }
}
