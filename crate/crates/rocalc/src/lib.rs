//! Exact computation of the RO(G)-graded coefficient groups of ordinary
//! equivariant mod-2 cohomology for G = (Z/2)^n.
//!
//! The library is organized around three layers:
//!
//! - exact linear algebra over the two-element field ([`f2linalg`]) and the
//!   combinatorics of the character lattice of (Z/2)^n ([`charlattice`]);
//! - the geometric fixed-point ring and its rational-function model
//!   ([`phiring`]), together with exact Poincare-series arithmetic
//!   ([`series`]);
//! - the n-stage chain complex whose homology gives the coefficient groups
//!   in an arbitrary virtual-representation degree ([`grmod`], [`sscomplex`]),
//!   plus verification suites cross-checking every closed form against the
//!   complex.
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod charlattice;
pub mod cli;
pub mod f2linalg;
pub mod grmod;
pub mod phiring;
pub mod series;
pub mod sscomplex;

use thiserror::Error;

/// Errors shared across the computation pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// `d_out . d_in != 0`: the two maps do not compose to zero, so the
    /// homology of the pair is undefined. Signals a wiring bug upstream.
    #[error("composition of differentials is nonzero")]
    CompositionNonzero,

    /// A size guard was hit (the requested computation grows exponentially).
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    /// Closed-form suspension series only cover non-negative multiplicities.
    #[error("negative multiplicity {1} for character {0}; closed form only covers the positive cone")]
    NegativeCoefficient(String, i64),

    /// Normal-form solve in the standard monomial basis was inconsistent.
    /// Never expected; indicates a basis bug.
    #[error("normal form failure: product not expressible in the standard monomial basis")]
    NormalFormFailure,

    /// The given set is not a circuit (minimal dependent set).
    #[error("set is not a circuit: {0}")]
    NotACircuit(String),

    /// `d_component` called on a pair of subgroups of index != 2.
    #[error("subgroup pair does not have index two")]
    NotIndexTwo,

    /// Malformed textual input (characters, degree specs, ...).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
