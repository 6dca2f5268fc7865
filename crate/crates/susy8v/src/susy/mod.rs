//! Lattice supersymmetry for the spin chain.
//!
//! The local supercharge replaces one down spin by a pair of sites,
//! `q|↓⟩ = |↑↑⟩ − ζ|↓↓⟩`, and annihilates up spins. Summing its insertions
//! with alternating signs and restricting to the alternate-cyclic sector
//! gives the global supercharge 𝔔: a nilpotent map from the L-site sector
//! into the (L+1)-site one. The anticommutator H = 𝔔𝔔† + 𝔔†𝔔 reproduces
//! the XYZ Hamiltonian, shifted by the ground-state energy −L(3+ζ²)/4, on
//! the alternate-cyclic sector.
//!
//! For odd chains L = 2n+1 the Hamiltonian has a two-dimensional kernel;
//! this module extracts those zero-energy states, builds the representative
//! states Φₙ(ζ), Φ̄ₙ(ζ) that 𝔔 and 𝔔† annihilate, and computes the overlap
//! coefficients between the two families.

mod states;
mod supercharge;

pub use states::{
    check_annihilation, decomposition_residual, overlap_coefficients, representative_states,
    representative_states_literal, zero_energy_states, AnnihilationReport, DecompositionReport,
    OverlapCoefficients, RepresentativePair, ZeroEnergyOutcome, ZeroEnergyPair,
};
pub use supercharge::{
    ground_energy, local_supercharge, q_zero, supercharge, supercharge_insertion,
    susy_hamiltonian, SuperchargeSet,
};

use crate::hilbert::HilbertError;
use crate::spectral::SpectralError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SusyError {
    #[error("the anisotropy parameter must be nonzero")]
    ZeroZeta,
    #[error("chain length {length} is below the minimum {minimum} for this operation")]
    ChainTooShort { length: usize, minimum: usize },
    #[error("site index {site} is outside 1..={length}")]
    SiteOutOfRange { site: usize, length: usize },
    #[error("the literal state construction needs ζ > 0 for √ζ, got {0}")]
    NonPositiveZeta(f64),
    #[error(
        "kernel of H on the alternate-cyclic sector at L={length} has dimension {found}, expected {expected}"
    )]
    UnexpectedKernelDimension {
        length: usize,
        found: usize,
        expected: usize,
    },
    #[error("overlap coefficient {name} vanishes (|{name}| = {magnitude:.3e})")]
    VanishingOverlap { name: &'static str, magnitude: f64 },
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}
