//! Exact symbolic tensor products of infinite coordinate families.
//!
//! Everything here works with finitely-describable data over the index set
//! `ℕ`: coordinate families are given by an eventually periodic tail plus
//! finitely many overrides, scalars live in cyclotomic fields `ℚ(ζ_N)`, and
//! all equality tests are exact.  On top of that sit
//!
//! * [`families`] — coordinate families, the finite-difference relation `~`,
//!   the summable-deviation relation `≈`, class objects and canonical
//!   sections;
//! * [`tensorcore`] — the class-indexed normal form for elements of the
//!   tensor product `⊗_i X_i`, with the operator/module action;
//! * [`staralgebra`] — the unitary-class graded *-algebra `⊗^ut A_i`, inner
//!   actions, twisted crossed products and the group-algebra bridge;
//! * [`innerprod`] — the `φ₁`/`φ₀` functionals, the induced inner product on
//!   the unit-sphere span and the group-algebra valued module form;
//! * [`representations`] — tensor-type *-representations, injectivity
//!   oracles, witness searches, finite-dimensional GNS;
//! * [`expr`] / [`suites`] — the CLI expression language and the seeded
//!   property-suite runner.

pub mod expr;
pub mod families;
pub mod innerprod;
pub mod linalg;
pub mod representations;
pub mod scalars;
pub mod staralgebra;
pub mod suites;
pub mod tensorcore;

use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("coordinate dimension mismatch at index {index}: expected {expected}, got {got}")]
    DimMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("space families do not match")]
    SpaceMismatch,
    #[error("family has a zero coordinate (at index {0})")]
    ZeroCoordinate(usize),
    #[error("coordinate at index {0} is not unit-norm")]
    NonUnitCoordinate(usize),
    #[error("coordinate at index {0} is not unitary")]
    NonUnitaryCoordinate(usize),
    #[error("operation needs 1-dimensional coordinates")]
    NotOneDimensional,
    #[error("value is not representable by a periodic tail with geometric phases: {0}")]
    NotRepresentable(String),
    #[error("desk-scale cap exceeded: {0}")]
    CapExceeded(String),
    #[error("inner products are not enabled on this space family")]
    NoInnerProduct,
    #[error("witness not found: {0}")]
    WitnessNotFound(String),
    #[error("algebra axiom failed: {0}")]
    AlgebraAxiom(String),
    #[error("operation unsupported for this coordinate algebra kind")]
    UnsupportedKind,
    #[error("element is not in the expected graded part: {0}")]
    NotInSubspace(String),
    #[error("class is not unitary / unit-modulus")]
    NonUnitaryClass,
    #[error("set of classes is not closed under product and inverse")]
    NotASubgroup,
    #[error("state is not positive semidefinite")]
    NonPositiveState,
    #[error("matrix shape mismatch")]
    ShapeMismatch,
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("type error: expected {expected}, got {got}")]
    EvalType { expected: String, got: String },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
