//! Exact multigraded local cohomology of toric face rings.
//!
//! A simplicial complex, or more generally a rational pointed fan, presents
//! a face ring graded by the ambient lattice. This crate computes the
//! dimension of every graded piece of the ring's local cohomology at the
//! irrelevant ideal, entirely in exact arithmetic (ℚ or a prime field):
//!
//! * [`fan::Fan`] validates fans from generator data and builds the fan
//!   of a [`simplicial::SimplicialComplex`];
//! * [`toric::LocalCohomologyTable`] decomposes local cohomology degree by
//!   degree through the face poset — each multidegree is carried by the
//!   unique cone whose relative interior contains its negative, and
//!   contributes the reduced cohomology of the order complex of the open
//!   interval above that cone;
//! * [`toric::cm_test`], [`toric::buchsbaum_test`] and
//!   [`toric::stanley_check`] decide depth conditions from the same
//!   interval data, reporting explicit witnesses on failure;
//! * [`kpmod::KpModule`] implements sheaves (functors) on finite posets
//!   with their section spaces, limits, flasqueness tests and poset
//!   cohomology;
//! * [`cech::cech_cohomology`] is an independent verification route for
//!   the Stanley–Reisner case, built from localizations of the complex
//!   rather than from the fan, and [`cech::reisner_criterion`] the
//!   classical link test;
//! * [`corpus`] holds deterministic test families (exhaustive small
//!   complexes, seeded random complexes and posets, named instances).
//!
//! The two computation routes share only the exact linear algebra in
//! [`linalg`]; agreement between them is checked in the integration tests.

pub mod cech;
pub mod corpus;
pub mod error;
pub mod fan;
pub mod json;
pub mod kpmod;
pub mod linalg;
pub mod poset;
pub mod simplicial;
pub mod toric;

pub use error::{Error, Result};
pub use fan::{Cone, Fan};
pub use kpmod::{FlasqueWitness, KpModule};
pub use linalg::{BettiVector, CochainComplex, Field, Matrix, Scalar};
pub use poset::Poset;
pub use simplicial::SimplicialComplex;
pub use toric::{CriterionReport, IntervalWitness, LocalCohomologyTable, StanleyReport};
