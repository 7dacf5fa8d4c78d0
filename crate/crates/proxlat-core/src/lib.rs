//! Strong proximity lattices, strong continuous entailment relations and
//! de Groot duality, computed exactly on finite presentations.
//!
//! The crate is `no_std` with `alloc`; the `std` feature only switches on
//! `std` support in dependencies.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod binrel;
pub mod constructions;
pub mod duality;
pub mod entail;
pub mod error;
pub mod fixtures;
pub mod lattice;
pub mod prox;
pub mod sets;
pub mod spectra;

pub use binrel::{ApproxRel, BinRel};
pub use entail::{generate_entailment, AxiomSet, EntailRel, SCEnt, UpperRel};
pub use error::{Error, Result};
pub use lattice::{DistLattice, Frame};
pub use sets::{FinSet, Generator, SubsetFamily, Universe};
