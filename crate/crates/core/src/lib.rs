//! Computing the 2-closure of a supersolvable permutation group.
//!
//! The 2-closure of `G ≤ Sym(Ω)` is the largest subgroup of `Sym(Ω)` with the
//! same orbits as `G` on `Ω × Ω`; equivalently, the automorphism group of the
//! arc-colored graph whose color classes are the 2-orbits of `G`. For
//! supersolvable `G` this crate computes it by a deterministic pipeline:
//!
//! 1. build a maximal normal flag of `G` from minimal normal subgroups,
//! 2. intersect the automorphisms of the orbital coloring with the iterated
//!    wreath-product majorant of the flag (the relative closure `K`),
//! 3. extend the flag to a maximal normal `K`-flag,
//! 4. for every section of `K`, search for a nonsolvability certificate by
//!    solvable coset intersection,
//! 5. return the group generated by `K` and all certificate elements.
//!
//! Every stage has a brute-force oracle usable at small degree, and the
//! pipeline re-checks its own structural invariants at runtime.

pub mod action;
pub mod backtrack;
pub mod certificate;
pub mod closure;
pub mod error;
pub mod flags;
pub mod format;
pub mod group;
mod linalg;
pub mod majorant;
pub mod orbitals;
pub mod perm;
pub mod relations;
pub mod sections;
pub mod solver;
pub mod structure;
pub mod zoo;

pub use crate::action::ActionImage;
pub use crate::certificate::{Certificate, EmptyReason};
pub use crate::closure::{factor_check, two_closure, verify_two_equivalent, ClosureReport};
pub use crate::error::Error;
pub use crate::flags::Flag;
pub use crate::group::PermGroup;
pub use crate::majorant::{Identification, StandardRep};
pub use crate::orbitals::OrbitalColoring;
pub use crate::perm::Perm;
pub use crate::relations::EquivRelation;
pub use crate::sections::{PlainStructure, Section};
pub use crate::solver::GroupCoset;
pub use crate::zoo::{generate_zoo, ZooEntry};

/// Shorthand used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
