//! Conditional-probability calculus for quantum observables on pure states.
//!
//! Given a normalized state and a pair of discrete observables, this crate
//! decides entanglement of the pair relative to the state (non-coincidence
//! of conditional probabilities across outcomes), computes the associated
//! concurrence measures, produces amplitude-factorization witnesses for
//! commuting dichotomous pairs, and mirrors the commuting case into a
//! classical finite probability space that serves as an independent oracle.
//!
//! Modules:
//! - [`hilbert`]: dense complex vectors/operators, tensor products, and the
//!   tolerance policy.
//! - [`spectral`]: eigendecomposition of Hermitian observables and
//!   joint-eigenspace decompositions of commuting pairs.
//! - [`qprob`]: Born rule, projective update, conditional tables, sequential
//!   joint distributions, total-probability interference, covariance.
//! - [`entanglement`]: dependence witnesses, concurrences, EPR detection,
//!   amplitude factorization, the covariance equivalence, and report
//!   construction.
//! - [`classical`]: Kolmogorov spaces and random variables as the classical
//!   oracle for commuting pairs.
//! - [`random`]: seeded generators for randomized theorem sweeps.

pub mod classical;
pub mod entanglement;
pub mod error;
pub mod hilbert;
pub mod qprob;
pub mod random;
pub mod spectral;

pub use error::{Error, Result};
pub use hilbert::{commutes, Operator, StateVector, ToleranceConfig};
pub use qprob::{ConditionalTable, Direction, FtpReport, JpdTable};
pub use spectral::{joint_decompose, JointDecomposition, Observable};

pub use entanglement::{
    analyze, DependenceWitness, EntanglementReport, EprSpec, FactorizationWitness,
};
