//! Spin-1/2 chain Hilbert spaces: basis encoding, state vectors, linear
//! maps, symmetry operators, and the XYZ Hamiltonian.

mod map;
mod operators;
mod state;

pub use map::{ApplyFn, LinearMap, MapKind};
pub use operators::{
    alternate_cyclic_projector, alternate_cyclic_sign, couplings_from_zeta, m_lambda_apply,
    parity_apply, project_alternate_cyclic, reversal_apply, translate, translate_inverse,
    xyz_hamiltonian, AlternateCyclicBasis,
};
pub use state::{SpinState, StateVector, MAX_SITES};
pub(crate) use state::translate_code;

use thiserror::Error;

/// Errors raised while building states or applying maps.
#[derive(Debug, Error)]
pub enum HilbertError {
    #[error("chain length must be between 1 and {MAX_SITES}, got {0}")]
    LengthOutOfRange(usize),
    #[error("basis code {code} is out of range for {length} sites")]
    CodeOutOfRange { code: u64, length: usize },
    #[error("invalid site label character `{0}` (expected ↑/↓ or u/d)")]
    BadLabel(char),
    #[error("amplitude vector has dimension {got}, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("state has {got} sites but the operator expects {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("the scaling parameter λ must be nonzero")]
    ZeroLambda,
    #[error("the XYZ chain needs at least two sites, got {0}")]
    ChainTooShort(usize),
    #[error("no adjoint is attached to this matrix-free map")]
    MissingAdjoint,
    #[error("dense realisation of dimension {dim} exceeds the budget {budget}")]
    DenseBudgetExceeded { dim: usize, budget: usize },
    #[error("matrix shape {got:?} does not match the expected {expected:?}")]
    ShapeMismatch {
        got: (usize, usize),
        expected: (usize, usize),
    },
    #[error("triplet ({row}, {col}) is out of bounds for a {rows}×{cols} map")]
    TripletOutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
}
