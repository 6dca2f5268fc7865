//! The eight-vertex transfer matrix on the supersymmetric manifold.
//!
//! Vertex weights (a, b, c, d) live on the manifold cut out by
//! (a² + ab)(b² + ab) = (c² + ab)(d² + ab); there the row-to-row transfer
//! matrix T built from the diagonal-plus-antidiagonal R-matrix anticommutes
//! with the lattice supercharge up to the factor −(a + b), and the
//! zero-energy pair of the XYZ chain at odd length L = 2n+1 spans a
//! T-eigenspace with eigenvalue Θₙ = (a + b)^(2n+1). This module constructs
//! the weights and the transfer matrix (dense and matrix-free), verifies the
//! local R-matrix identity behind the anticommutation, and checks the Θₙ
//! eigenvalue three independent ways: dense spectra, matrix elements of
//! explicit states, and a combinatorial sum over weighted words.

mod identity;
mod theta;
mod transfer;
mod weights;

pub use identity::{
    a_operator, check_local_identity, check_tq_anticommutation, LocalIdentityReport, TqReport,
};
pub use theta::{
    all_words, largest_eigenvalue_check, spectral_containment, stroganov_check,
    theta_matrix_element, word_sum, ContainmentReport, LargestEigenvalueReport, SectorLeading,
    StroganovReport, ThetaElementReport, WordLetter, WordSumReport, WordWeight,
};
pub use transfer::{
    r_matrix, transfer_matrix, transfer_matrix_dense, transfer_matrix_free, DENSE_SITE_LIMIT,
};
pub use weights::{sample_constrained, sample_unconstrained, solve_d, VertexWeights};

use crate::hilbert::HilbertError;
use crate::spectral::SpectralError;
use crate::susy::SusyError;
use thiserror::Error;

/// Failure modes of weight construction and transfer-matrix verification.
#[derive(Debug, Error)]
pub enum VertexError {
    /// A vertex weight that must be nonzero (or a denominator built from
    /// weights) vanished.
    #[error("vertex weight {label} must be nonzero and finite")]
    ZeroWeight { label: &'static str },
    /// The quadruple does not satisfy the manifold constraint.
    #[error("weights violate the constraint: residual {residual:.3e} exceeds {bound:.3e}")]
    ConstraintViolated { residual: f64, bound: f64 },
    /// Solving the constraint for d produced no real positive root.
    #[error("no real positive d solves the constraint (radicand {radicand:.3e})")]
    NoPositiveRoot { radicand: f64 },
    /// Solving the constraint for d would divide by c² + ab = 0.
    #[error("constraint is singular for these weights: c² + ab = 0")]
    SingularDenominator,
    /// Dense transfer-matrix assembly was requested beyond the size cap.
    #[error("chain of {length} sites exceeds the dense limit of {limit}")]
    ChainTooLong { length: usize, limit: usize },
    /// a + b = 0, so Θₙ-based checks are vacuous.
    #[error("a + b = 0: the special eigenvalue degenerates to zero")]
    DegenerateWeightSum,
    /// An eigenvalue cluster did not have the predicted size.
    #[error("eigenvalue multiplicity {found} where {expected} was predicted")]
    UnexpectedMultiplicity { expected: usize, found: usize },
    /// A verification residual exceeded its tolerance.
    #[error("{check}: residual {residual:.3e} exceeds {bound:.3e}")]
    ResidualTooLarge {
        check: &'static str,
        residual: f64,
        bound: f64,
    },
    /// The Θₙ cluster was not isolated from the rest of the spectrum.
    #[error("eigenvalue cluster separation {gap:.3e} below the required {required:.3e}")]
    ClusterNotSeparated { gap: f64, required: f64 },
    /// A Perron–Frobenius argument needs strictly positive weights.
    #[error("weight {label} = {value} is not strictly positive")]
    NotPositive { label: &'static str, value: f64 },
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Susy(#[from] SusyError),
}
