use thiserror::Error;

use crate::algebra::Witness;

/// Malformed tables: wrong shape, out-of-range index, or a subset that is
/// not closed under the operations.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("empty carrier: structures must have at least one element")]
    Empty,
    #[error("{table}{}: expected {expected} entries, found {found}", row.map(|r| format!(" row {r}")).unwrap_or_default())]
    Shape {
        table: &'static str,
        row: Option<usize>,
        expected: usize,
        found: usize,
    },
    #[error("{table}{cell:?} = {value} is out of range for n = {n}")]
    OutOfRange {
        table: &'static str,
        cell: Vec<usize>,
        value: usize,
        n: usize,
    },
    #[error("{table}{cell:?} = {value} leaves the chosen subset")]
    NotClosed {
        table: &'static str,
        cell: Vec<usize>,
        value: usize,
    },
    #[error("{0}")]
    Invalid(String),
}

/// Raised when an operation needs a locally integral ipo-semigroup.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("not an ipo-semigroup: {condition} fails at {witness}")]
    NotIpoSemigroup {
        condition: &'static str,
        witness: Witness,
    },
    #[error("not locally integral: condition {condition} fails at {witness}")]
    NotLocallyIntegral { condition: usize, witness: Witness },
}

/// Semantic problems with a directed system that make glueing undefined.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("join table is not a semilattice: {0}")]
    NotSemilattice(String),
    #[error("component {node} is not an integral ipo-monoid: {reason}")]
    ComponentNotIntegral { node: usize, reason: String },
    #[error("phi[{from}->{to}] is not a monoid homomorphism at {witness}")]
    NotHomomorphism {
        from: usize,
        to: usize,
        witness: Witness,
    },
    #[error("incompatible family: {0}")]
    IncompatibleFamily(String),
    #[error("linear glueing needs nontrivial components; component {0} has one element")]
    TrivialComponent(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExtendError {
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error("0_p <= 1_q fails for positives p = {p}, q = {q}")]
    SubreductConditionFails { p: usize, q: usize },
    #[error(transparent)]
    System(#[from] SystemError),
    #[error("bottom component is not an integral ipo-monoid: {0}")]
    BadBottom(String),
    #[error("adjoined glueing is defective: {0}")]
    Defective(String),
}

/// Failure of [`morphism_components`](crate::decompose::morphism_components)
/// or [`check_naturality`](crate::decompose::check_naturality).
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NaturalityError {
    #[error("not a morphism of the glued algebras: {0}")]
    NotMorphism(#[from] crate::algebra::MorphismViolation),
    #[error("tau or eta has the wrong shape: {0}")]
    Shape(String),
    #[error("tau is not a semilattice homomorphism at nodes ({p}, {q})")]
    NotSemilatticeHom { p: usize, q: usize },
    #[error("eta[{p}] is not a homomorphism at {witness}")]
    EtaNotHomomorphism { p: usize, witness: Witness },
    #[error("naturality square fails for {p} <= {q} at local element {a}")]
    Square { p: usize, q: usize, a: usize },
}

/// Failures of the duality for idempotent algebras.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("not an idempotent locally integral ipo-semigroup: {0}")]
    NotIdempotentLocIntegral(String),
    #[error("component {node} is not a Boolean algebra")]
    NotBoolean { node: usize },
    #[error("invalid dual system: {0}")]
    Invalid(String),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error("glueing of the dual system is defective: {0}")]
    Defective(String),
}
