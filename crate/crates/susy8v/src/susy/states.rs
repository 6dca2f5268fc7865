//! Representative states, zero-energy states, and their overlaps.

use super::supercharge::{supercharge, susy_hamiltonian, SuperchargeSet};
use super::SusyError;
use crate::hilbert::{
    m_lambda_apply, parity_apply, reversal_apply, AlternateCyclicBasis, SpinState, StateVector,
};
use crate::spectral::{eig_dense_hermitian, Subspace};
use crate::tolerance;
use num_complex::Complex64;

/// The pair Φₙ(ζ), Φ̄ₙ(ζ) on the chain of length 2n+1. Components are
/// polynomials in ζ: a state with k down spins carries ζ^{(k−1)/2} in Φₙ
/// (k odd) and ζ^{k/2} in Φ̄ₙ (k even).
#[derive(Clone, Debug)]
pub struct RepresentativePair {
    pub n: usize,
    pub zeta: f64,
    /// Φₙ(ζ): spin parity +1, alternate-cyclic.
    pub phi: StateVector,
    /// Φ̄ₙ(ζ): spin parity −1, alternate-cyclic.
    pub phi_bar: StateVector,
}

fn check_n(n: usize) -> Result<usize, SusyError> {
    if n == 0 {
        return Err(SusyError::ChainTooShort {
            length: 1,
            minimum: 3,
        });
    }
    Ok(2 * n + 1)
}

/// Builds Φₙ(ζ) and Φ̄ₙ(ζ) from their closed-form components. Valid for
/// every nonzero ζ, negative included, because the components are integer
/// powers of ζ.
pub fn representative_states(n: usize, zeta: f64) -> Result<RepresentativePair, SusyError> {
    if zeta == 0.0 || !zeta.is_finite() {
        return Err(SusyError::ZeroZeta);
    }
    let length = check_n(n)?;
    let mut phi = StateVector::zero(length)?;
    let mut phi_bar = StateVector::zero(length)?;
    for code in 0..(1u64 << length) {
        let downs = code.count_ones() as usize;
        if downs % 2 == 1 {
            let weight = zeta.powi(((downs - 1) / 2) as i32);
            phi.amplitudes_mut()[code as usize] = Complex64::new(weight, 0.0);
        } else {
            let weight = zeta.powi((downs / 2) as i32);
            phi_bar.amplitudes_mut()[code as usize] = Complex64::new(weight, 0.0);
        }
    }
    Ok(RepresentativePair {
        n,
        zeta,
        phi,
        phi_bar,
    })
}

/// Builds the same pair from the literal definition: scale the uniform
/// parity-sector states by 𝓜(√ζ) and normalize the powers, Φₙ(ζ) =
/// ζ^{−(n+1)} 𝓜(√ζ) Φₙ(1) and Φ̄ₙ(ζ) = ζ^{−(n+1/2)} 𝓜(√ζ) Φ̄ₙ(1).
/// Requires ζ > 0 for the square root; the closed form extends beyond.
pub fn representative_states_literal(n: usize, zeta: f64) -> Result<RepresentativePair, SusyError> {
    if zeta == 0.0 || !zeta.is_finite() {
        return Err(SusyError::ZeroZeta);
    }
    if zeta < 0.0 {
        return Err(SusyError::NonPositiveZeta(zeta));
    }
    let length = check_n(n)?;

    let mut base_phi = StateVector::zero(length)?;
    let mut base_bar = StateVector::zero(length)?;
    for code in 0..(1u64 << length) {
        if code.count_ones() % 2 == 1 {
            base_phi.amplitudes_mut()[code as usize] = Complex64::ONE;
        } else {
            base_bar.amplitudes_mut()[code as usize] = Complex64::ONE;
        }
    }

    let root = Complex64::new(zeta.sqrt(), 0.0);
    let mut phi = m_lambda_apply(root, &base_phi)?;
    phi.scale(Complex64::new(zeta.powi(-(n as i32 + 1)), 0.0));
    let mut phi_bar = m_lambda_apply(root, &base_bar)?;
    phi_bar.scale(Complex64::new(zeta.powf(-(n as f64 + 0.5)), 0.0));
    Ok(RepresentativePair {
        n,
        zeta,
        phi,
        phi_bar,
    })
}

/// Relative norms of the four annihilation identities: 𝔔(ζ) kills both
/// states at ζ, and 𝔔†(ζ) kills both states at ζ⁻¹.
#[derive(Clone, Copy, Debug)]
pub struct AnnihilationReport {
    pub q_phi: f64,
    pub q_phi_bar: f64,
    pub adjoint_phi: f64,
    pub adjoint_phi_bar: f64,
}

impl AnnihilationReport {
    pub fn max(&self) -> f64 {
        self.q_phi
            .max(self.q_phi_bar)
            .max(self.adjoint_phi)
            .max(self.adjoint_phi_bar)
    }
}

/// Verifies that the representative states span the expected kernels:
/// 𝔔(ζ)Φₙ(ζ) = 𝔔(ζ)Φ̄ₙ(ζ) = 0 and 𝔔†(ζ)Φₙ(ζ⁻¹) = 𝔔†(ζ)Φ̄ₙ(ζ⁻¹) = 0.
pub fn check_annihilation(n: usize, zeta: f64) -> Result<AnnihilationReport, SusyError> {
    let length = check_n(n)?;
    let set = SuperchargeSet::new(length, zeta)?;
    let at_zeta = representative_states(n, zeta)?;
    let at_inverse = representative_states(n, 1.0 / zeta)?;
    let adjoint = set
        .q_down_adjoint()
        .expect("length 2n+1 ≥ 3 always has the lowering adjoint");

    let relative = |map: &crate::hilbert::LinearMap,
                    state: &StateVector|
     -> Result<f64, SusyError> {
        Ok(map.apply(state)?.norm() / state.norm())
    };
    Ok(AnnihilationReport {
        q_phi: relative(set.q_up(), &at_zeta.phi)?,
        q_phi_bar: relative(set.q_up(), &at_zeta.phi_bar)?,
        adjoint_phi: relative(adjoint, &at_inverse.phi)?,
        adjoint_phi_bar: relative(adjoint, &at_inverse.phi_bar)?,
    })
}

/// Overlaps of the zero-energy states with the representative states,
/// normalized by 4ⁿ where the theorems do so.
#[derive(Clone, Copy, Debug)]
pub struct OverlapCoefficients {
    /// λₙ = 4⁻ⁿ ⟨Φₙ(ζ⁻¹)|Ψₙ⟩
    pub lambda: Complex64,
    /// λ̄ₙ = 4⁻ⁿ ⟨Φ̄ₙ(ζ⁻¹)|Ψ̄ₙ⟩
    pub lambda_bar: Complex64,
    /// μₙ = 4⁻ⁿ ⟨Φₙ(ζ)|Ψₙ⟩
    pub mu: Complex64,
    /// μ̄ₙ = 4⁻ⁿ ⟨Φ̄ₙ(ζ)|Ψ̄ₙ⟩
    pub mu_bar: Complex64,
    /// νₙ = ⟨Φ̄ₙ(ζ⁻¹)|Ψ̄ₙ⟩
    pub nu: Complex64,
}

/// The two zero-energy states of the odd chain L = 2n+1, in the parity
/// basis: Pψ = +ψ, Pψ̄ = −ψ̄, with ψ̄ = Rψ.
#[derive(Clone, Debug)]
pub struct ZeroEnergyPair {
    pub n: usize,
    pub psi: StateVector,
    pub psi_bar: StateVector,
    pub coefficients: OverlapCoefficients,
}

/// Result of the kernel computation: even chains have none (with a strictly
/// positive gap), odd chains exactly two.
#[derive(Clone, Debug)]
pub enum ZeroEnergyOutcome {
    Empty { gap: f64 },
    Pair(ZeroEnergyPair),
}

/// Diagonalizes H on the alternate-cyclic sector and extracts its kernel.
/// A kernel dimension other than 0 (even L) or 2 (odd L) is reported as an
/// error: it would falsify the implementation, not the theorem.
pub fn zero_energy_states(length: usize, zeta: f64) -> Result<ZeroEnergyOutcome, SusyError> {
    if length < 2 {
        return Err(SusyError::ChainTooShort {
            length,
            minimum: 2,
        });
    }
    let basis = AlternateCyclicBasis::new(length)?;
    let vectors: Vec<StateVector> = (0..basis.dimension()).map(|i| basis.vector(i)).collect();
    let subspace = Subspace::from_vectors(&vectors)?;
    let hamiltonian = susy_hamiltonian(length, zeta)?;
    let spectrum = eig_dense_hermitian(&hamiltonian, Some(&subspace))?;

    // Eigenvalues are sorted descending and H is positive semi-definite, so
    // the norm is the first entry and the kernel sits at the end.
    let operator_norm = spectrum.eigenvalues.first().map_or(0.0, |z| z.re.abs());
    let threshold = tolerance::KERNEL * operator_norm.max(1.0);
    let kernel_indices: Vec<usize> = (0..spectrum.eigenvalues.len())
        .filter(|&i| spectrum.eigenvalues[i].re.abs() <= threshold)
        .collect();

    let expected = if length % 2 == 0 { 0 } else { 2 };
    if kernel_indices.len() != expected {
        return Err(SusyError::UnexpectedKernelDimension {
            length,
            found: kernel_indices.len(),
            expected,
        });
    }

    if expected == 0 {
        let gap = spectrum.eigenvalues.last().map_or(0.0, |z| z.re);
        return Ok(ZeroEnergyOutcome::Empty { gap });
    }

    let coordinates = spectrum
        .eigenvectors
        .as_ref()
        .expect("dense Hermitian solve returns eigenvectors");
    let kernel: Vec<StateVector> = kernel_indices
        .iter()
        .map(|&i| {
            let lifted = subspace.lift(&coordinates.column(i).to_vec());
            StateVector::from_amplitudes(length, lifted)
        })
        .collect::<Result<_, _>>()?;

    let psi = fix_phase(positive_parity_component(&kernel));
    let psi_bar = reversal_apply(&psi);

    let n = (length - 1) / 2;
    let at_zeta = representative_states(n, zeta)?;
    let at_inverse = representative_states(n, 1.0 / zeta)?;
    let coefficients = compute_overlaps(n, &psi, &psi_bar, &at_zeta, &at_inverse)?;
    Ok(ZeroEnergyOutcome::Pair(ZeroEnergyPair {
        n,
        psi,
        psi_bar,
        coefficients,
    }))
}

/// Projects the kernel onto the spin-parity +1 sector and returns the
/// normalized component, taking whichever kernel vector projects largest.
fn positive_parity_component(kernel: &[StateVector]) -> StateVector {
    let mut best: Option<StateVector> = None;
    let mut best_norm = 0.0;
    for vector in kernel {
        let mut projected = vector.clone();
        projected.add_scaled(Complex64::ONE, &parity_apply(vector));
        let norm = projected.norm();
        if norm > best_norm {
            best_norm = norm;
            best = Some(projected);
        }
    }
    best.expect("kernel is non-empty here").normalized()
}

/// Rotates the global phase so the largest component is real positive —
/// with a positive-off-diagonal-free Hamiltonian this realizes the
/// Perron–Frobenius sign choice and makes every component non-negative.
fn fix_phase(mut state: StateVector) -> StateVector {
    let mut largest = Complex64::ZERO;
    for &amp in state.amplitudes() {
        if amp.norm() > largest.norm() {
            largest = amp;
        }
    }
    if largest.norm() > 0.0 {
        state.scale(largest.conj() / largest.norm());
    }
    state
}

fn compute_overlaps(
    n: usize,
    psi: &StateVector,
    psi_bar: &StateVector,
    at_zeta: &RepresentativePair,
    at_inverse: &RepresentativePair,
) -> Result<OverlapCoefficients, SusyError> {
    let scale = 0.25f64.powi(n as i32);
    let coefficients = OverlapCoefficients {
        lambda: at_inverse.phi.dot(psi) * scale,
        lambda_bar: at_inverse.phi_bar.dot(psi_bar) * scale,
        mu: at_zeta.phi.dot(psi) * scale,
        mu_bar: at_zeta.phi_bar.dot(psi_bar) * scale,
        nu: at_inverse.phi_bar.dot(psi_bar),
    };
    for (name, value) in [
        ("λ", coefficients.lambda),
        ("λ̄", coefficients.lambda_bar),
        ("μ", coefficients.mu),
        ("μ̄", coefficients.mu_bar),
        ("ν", coefficients.nu),
    ] {
        if value.norm() < 1e-8 {
            return Err(SusyError::VanishingOverlap {
                name,
                magnitude: value.norm(),
            });
        }
    }
    Ok(coefficients)
}

/// Recomputes the overlap coefficients of a zero-energy pair against
/// explicitly supplied representative states at ζ and ζ⁻¹.
pub fn overlap_coefficients(
    pair: &ZeroEnergyPair,
    at_zeta: &RepresentativePair,
    at_inverse: &RepresentativePair,
) -> Result<OverlapCoefficients, SusyError> {
    compute_overlaps(pair.n, &pair.psi, &pair.psi_bar, at_zeta, at_inverse)
}

/// The coefficient ν and the residual of the decomposition
/// ψ̄ = ν|↑…↑⟩ + 𝔔|γ⟩, measured by projecting onto the orthogonal
/// complement of the supercharge's image.
#[derive(Clone, Copy, Debug)]
pub struct DecompositionReport {
    /// Coefficient extracted from the complement of image(𝔔) — an
    /// independent route to ν, to be compared with 4ⁿλ̄ₙ.
    pub nu: Complex64,
    /// ‖(ψ̄ − ν|↑…↑⟩) projected off image(𝔔)‖.
    pub residual: f64,
}

/// Tests whether ψ̄ − ν|↑…↑⟩ lies in the image of the supercharge arriving
/// from length L−1, via a rank-revealing orthonormalization of that image.
pub fn decomposition_residual(
    pair: &ZeroEnergyPair,
    zeta: f64,
) -> Result<DecompositionReport, SusyError> {
    let length = 2 * pair.n + 1;
    let raising = supercharge(length - 1, zeta)?;
    let lower_basis = AlternateCyclicBasis::new(length - 1)?;

    // Orthonormalize the image of 𝔔, dropping directions that cancel.
    let mut image: Vec<StateVector> = Vec::new();
    let mut largest_norm = 0.0f64;
    for i in 0..lower_basis.dimension() {
        let mut candidate = raising.apply(&lower_basis.vector(i))?;
        largest_norm = largest_norm.max(candidate.norm());
        for _ in 0..2 {
            for u in &image {
                let overlap = u.dot(&candidate);
                candidate.add_scaled(-overlap, u);
            }
        }
        if candidate.norm() > 1e-10 * largest_norm.max(1.0) {
            let normalized = candidate.normalized();
            image.push(normalized);
        }
    }

    let deflate = |state: &StateVector| -> StateVector {
        let mut rest = state.clone();
        for u in &image {
            let overlap = u.dot(&rest);
            rest.add_scaled(-overlap, u);
        }
        rest
    };

    let all_up = StateVector::basis(SpinState::new(length, 0)?);
    let up_rest = deflate(&all_up);
    let psi_rest = deflate(&pair.psi_bar);

    let up_norm_sq = up_rest.norm_sq();
    if up_norm_sq < 1e-16 {
        return Err(SusyError::VanishingOverlap {
            name: "ν-projection",
            magnitude: up_norm_sq.sqrt(),
        });
    }
    let nu = up_rest.dot(&psi_rest) / up_norm_sq;
    let mut residual_vector = psi_rest;
    residual_vector.add_scaled(-nu, &up_rest);
    Ok(DecompositionReport {
        nu,
        residual: residual_vector.norm(),
    })
}
