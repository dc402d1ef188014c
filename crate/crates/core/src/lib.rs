//! Finite involutive partially ordered semigroups: axiom checks,
//! decomposition into semilattice directed systems of integral monoids,
//! glueing, duality for the idempotent case, and enumeration up to
//! isomorphism.

pub mod algebra;
pub mod canon;
pub mod decompose;
pub mod diagram;
pub mod duality;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod glue;
pub mod io;
pub mod report;

pub use algebra::{check_morphism, FiniteIpoAlgebra, MorphismKind, MorphismViolation, Verdict, Witness};
pub use decompose::{decompose, DirectedSystem, IntegralComponent};
pub use glue::{glue, GlueOutcome};
pub use report::{check_ipo, ClassReport, Flag};
pub use canon::{canonical_key, CanonicalKey};
pub use enumerate::{classify, enumerate, Class, EnumerateError, EnumerateOptions, EnumerationResult, Route};
pub use duality::{dualize, primalize, DualSystem};
