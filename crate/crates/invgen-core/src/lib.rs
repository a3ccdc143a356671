//! Exact Weyl-group-level statistics governing invariable generation of
//! finite groups of Lie type of bounded rank.
//!
//! Everything here works at the level of Weyl group (coset) conjugacy
//! classes: maximal-torus classes and their exact probabilities
//! ([`weyl_stats`]), the incidence between torus classes and the classical
//! maximal-rank subgroup families ([`torus_lattice`]), the same incidence for
//! G2 derived from its root system ([`rootsys_g2`]), the resulting leading
//! generation probabilities and distinguished-set verifications ([`invgen`]),
//! and a Monte-Carlo cross-check against actual matrix groups over finite
//! fields ([`ffmc`]).
//!
//! All probabilities are exact rationals; `q` never appears as a number in
//! the combinatorial layers, only its parity (and 3|q for G2) does.

#![forbid(unsafe_code)]

pub mod ffmc;
pub mod invgen;
pub mod rootsys_g2;
pub mod torus_lattice;
pub mod weyl_stats;

pub use ffmc::{DeviationTable, MatrixGroup, PrimePowerField, SampleReport, SquareMatrix};
pub use invgen::{ABSet, AbReport, ElementSpec};
pub use torus_lattice::{FamilyKind, SubgroupFamily};
pub use weyl_stats::{
    ClassData, GroupFamily, Partition, QParity, Rational, Sign, SignedPart, SignedPartition,
    TorusClass,
};
