//! Exact verification toolkit for the supersymmetric eight-vertex model and
//! the periodic XYZ spin chain.
//!
//! The eight-vertex model with weights (a, b, c, d) on the combinatorial-line
//! manifold
//!
//! ```text
//! (a² + ab)(b² + ab) = (c² + ab)(d² + ab)
//! ```
//!
//! carries a lattice supersymmetry: a supercharge 𝔔 maps the alternate-cyclic
//! sector of the chain of length L into the one of length L+1, squares to
//! zero, and anticommutes with the transfer matrix,
//! T𝔔 + (a+b)𝔔T = 0. For odd L = 2n+1 this forces the doubly degenerate
//! transfer-matrix eigenvalue Θₙ = (a+b)^(2n+1) whose eigenspace is the
//! kernel of H = 𝔔𝔔† + 𝔔†𝔔 = H_XYZ − E₀ with
//! E₀ = −L(3+ζ²)/4 and ζ = cd/(ab).
//!
//! Everything here is organised around checking those statements numerically,
//! exactly as stated, at chain lengths where dense or Krylov linear algebra
//! is exact to machine precision:
//!
//! * [`hilbert`] — spin-chain states, linear maps, symmetry operators, the
//!   alternate-cyclic projector, and the XYZ Hamiltonian;
//! * [`susy`] — local supercharges, the chain supercharge 𝔔, the
//!   supersymmetric Hamiltonian, representative states and zero-energy
//!   states with their overlap coefficients;
//! * [`vertex`] — weight quadruples on the constraint manifold, the
//!   R-matrix, transfer matrix, the A-operator identity, and the Stroganov
//!   eigenvalue checks;
//! * [`elliptic`] — Jacobi theta functions, the elliptic weight
//!   parametrisation at crossing parameter η = π/3, Yang–Baxter residuals,
//!   and the u = 0 transfer-matrix expansions;
//! * [`spectral`] — dense and Krylov eigensolvers plus eigenvalue
//!   clustering;
//! * [`harness`] — named verification suites producing machine-readable
//!   reports;
//! * [`tolerance`] — every numerical threshold used by the checks, in one
//!   place.

pub mod elliptic;
pub mod harness;
pub mod hilbert;
pub mod spectral;
pub mod susy;
pub mod tolerance;
pub mod vertex;

pub use hilbert::{LinearMap, SpinState, StateVector};
pub use vertex::VertexWeights;
