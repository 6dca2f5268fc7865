//! Elliptic parametrization of the vertex weights.
//!
//! In terms of Jacobi theta functions with nome p² the weights read
//!
//! ```text
//! a(u) = ρ ϑ₄(2η, p²) ϑ₁(u + 2η, p²) ϑ₄(u, p²)
//! b(u) = ρ ϑ₄(2η, p²) ϑ₄(u + 2η, p²) ϑ₁(u, p²)
//! c(u) = ρ ϑ₁(2η, p²) ϑ₄(u + 2η, p²) ϑ₄(u, p²)
//! d(u) = ρ ϑ₁(2η, p²) ϑ₁(u + 2η, p²) ϑ₁(u, p²)
//! ```
//!
//! with normalization ρ, crossing parameter η, and spectral parameter u.
//! The R-matrix built from them satisfies the Yang–Baxter equation for any
//! (η, p), so transfer matrices at different u commute; at η = π/3 the
//! quadruple lands on the supersymmetric manifold for every u, with
//! ζ = (ϑ₁(2η, p²)/ϑ₄(2η, p²))² independent of u. This module implements
//! the theta series, the weight map, the ζ and J_z consistency checks, the
//! Yang–Baxter residual, and the u = 0 expansion tying the transfer matrix
//! to the translation operator and the XYZ Hamiltonian.

mod checks;
mod theta;
mod weights;

pub use checks::{tu_zero_checks, yang_baxter_residual, TuZeroReport};
pub use theta::jacobi_theta;
pub use weights::{
    six_vertex_weights, weights_from_elliptic, zeta_and_jz_consistency, ZetaJzReport,
};

use crate::hilbert::HilbertError;
use crate::vertex::VertexError;
use thiserror::Error;

/// Failure modes of theta-function evaluation and the elliptic weight map.
#[derive(Debug, Error)]
pub enum EllipticError {
    /// The nome must lie in [0, 1) for the series to converge.
    #[error("nome {nome} outside [0, 1)")]
    NomeOutOfRange { nome: f64 },
    /// Theta functions come in kinds 1 through 4.
    #[error("no Jacobi theta function of kind {kind}")]
    InvalidThetaKind { kind: u8 },
    /// A parameter that must be a finite real was not.
    #[error("parameter {label} must be finite")]
    NonFinite { label: &'static str },
    /// The spectral parameter sits on a lattice zero of a theta factor.
    #[error("weight {label} vanishes at this spectral parameter")]
    VanishingWeight { label: &'static str },
    /// p = 0 collapses every ϑ₁ factor; the weights only survive after
    /// stripping the common vanishing prefactor, which is a different map.
    #[error("nome 0 degenerates the weights; use six_vertex_weights for the limit")]
    SixVertexNome,
    /// The six-vertex limit map was called away from p = 0.
    #[error("six-vertex limit requires nome 0, got {nome}")]
    NotSixVertexNome { nome: f64 },
    /// An R-matrix in the Yang–Baxter check was identically zero.
    #[error("R-matrix at {label} is identically zero")]
    DegenerateRMatrix { label: &'static str },
    /// A verification residual exceeded its tolerance.
    #[error("{check}: residual {residual:.3e} exceeds {bound:.3e}")]
    ResidualTooLarge {
        check: &'static str,
        residual: f64,
        bound: f64,
    },
    #[error("linear-algebra backend: {0}")]
    Backend(String),
    #[error(transparent)]
    Vertex(#[from] VertexError),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
}

/// Point in elliptic parameter space: normalization ρ, crossing parameter η
/// (radians), nome p ∈ [0, 1), and spectral parameter u. The weight map
/// squares the nome itself — theta functions are always evaluated at p².
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct EllipticParams {
    rho: f64,
    eta: f64,
    nome: f64,
    u: f64,
}

impl EllipticParams {
    pub fn new(rho: f64, eta: f64, nome: f64, u: f64) -> Result<Self, EllipticError> {
        for (label, value) in [("rho", rho), ("eta", eta), ("u", u)] {
            if !value.is_finite() {
                return Err(EllipticError::NonFinite { label });
            }
        }
        if !(0.0..1.0).contains(&nome) {
            return Err(EllipticError::NomeOutOfRange { nome });
        }
        Ok(Self { rho, eta, nome, u })
    }

    /// The common case ρ = 1: every identity checked here is either
    /// homogeneous in the weights or ρ-covariant.
    pub fn unit(eta: f64, nome: f64, u: f64) -> Result<Self, EllipticError> {
        Self::new(1.0, eta, nome, u)
    }

    /// Same point with a different spectral parameter.
    pub fn at_u(&self, u: f64) -> Self {
        Self { u, ..*self }
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn nome(&self) -> f64 {
        self.nome
    }

    pub fn u(&self) -> f64 {
        self.u
    }
}
