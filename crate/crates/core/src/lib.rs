//! α-spectral extremal graph theory at desk scale.
//!
//! The crate builds the matrices `A_α(G) = α·D(G) + (1−α)·A(G)`, computes
//! their largest eigenpair with a certified residual, enumerates small
//! graphs up to isomorphism, solves Turán and spectral Turán problems
//! exhaustively, and evaluates the quantitative inequalities of the theory
//! on every graph it can reach.

pub mod canon;
pub mod eigen;
pub mod enumerate;
pub mod error;
pub mod extremal;
pub mod family;
pub mod format;
pub mod graph;
pub mod graph6;
pub mod spectral;
pub mod structure;
pub mod verify;

pub use canon::{canonical_form, CanonicalForm};
pub use enumerate::{enumerate_graphs, EnumFilter, EnumOptions, GraphClass};
pub use error::{Error, Result};
pub use extremal::{spectral_extremal, turan_number, ExtremalRecord};
pub use family::FamilySpec;
pub use graph::{blow_up, delete_vertex, disjoint_union, join, Graph};
pub use spectral::{spectral_radius, Alpha, SpectralResult};
pub use structure::ForbiddenFamily;
pub use verify::{run_battery, BatteryReport, CheckReport};
