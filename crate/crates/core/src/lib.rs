//! Mod-2 Chow groups of powers of split projective quadrics.
//!
//! The crate offers a symbolic calculus on Ch(X̄^r) (products, Steenrod
//! operations, correspondences, isotropic projections), an engine that
//! closes candidate families of rational cycles under the standard
//! operations and checks them against known restrictions, and exhaustive
//! certification of the dimension computation for small forms in I^n.

pub mod basis;
pub mod correspondence;
pub mod cycle;
pub mod diagram;
pub mod error;
pub mod gf2;
pub mod holes;
pub mod isotropy;
pub mod ring;
pub mod steenrod;
pub mod structure;

pub use basis::{enumerate_basis, Factor, Kind, Monomial, Quadric};
pub use cycle::{parse_cycle, parse_cycle_any, Cycle, CycleJson};
pub use error::{Error, Result};
