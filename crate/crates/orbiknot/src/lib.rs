//! Exact computational topology for link diagrams and their π-orbifold groups.
//!
//! The π-orbifold group of a link is the quotient of the link group by the
//! normal closure of the squares of all meridians. An epimorphism between the
//! π-orbifold groups of two links is a domination certificate; this crate
//! computes the finite, machine-checkable data that such certificates rest on:
//!
//! - [`pd`] — planar diagram codes, validation, mirrors and connected sums;
//! - [`construct`] — 4-plat and Montesinos diagram builders driven by
//!   continued fractions;
//! - [`presentation`] — Wirtinger presentations and the meridian-square
//!   quotient;
//! - [`invariants`] — Goeritz forms, link determinants, homology of the
//!   2-fold branched cover, Fox colorings and dihedral quotient detection;
//! - [`montesinos`] — exact Montesinos calculus: normal forms, determinants,
//!   ellipticity, rank bounds, bridge numbers and the target-class filter;
//! - [`triangle`] — triangle-group obstructions and π-minimality certifiers;
//! - [`homsearch`] — finite groups as multiplication tables and exhaustive
//!   homomorphism enumeration from finite presentations;
//! - [`symunion`] — the determinant square law and partial-knot reports for
//!   symmetric unions;
//! - [`fixtures`] — the diagram fixture set shipped with the repository.
//!
//! All operations are pure functions over immutable values and are safe to
//! call concurrently. Search-style operations take explicit budgets and fail
//! loudly when they are exceeded; no result is silently truncated.

pub mod construct;
pub mod fixtures;
pub mod homsearch;
pub mod invariants;
pub mod montesinos;
pub mod pd;
pub mod presentation;
pub mod snf;
pub mod symunion;
pub mod triangle;
pub mod verdict;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("split diagram: {0}")]
    SplitDiagram(String),
    #[error("presentation has no meridian generators")]
    NoMeridians,
    #[error("search budget exceeded after {visited} partial assignments (budget {budget})")]
    BudgetExceeded { visited: u64, budget: u64 },
    #[error("Cayley closure exceeds element cap {cap}")]
    ClosureCapExceeded { cap: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported descriptor: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use pd::PdCode;
pub use presentation::GroupPresentation;
pub use verdict::DominationVerdict;
