//! Symmetry operators of the periodic chain and the XYZ Hamiltonian.
//!
//! The operators are the translation S (one-site cyclic shift), the spin
//! parity P = (−1)^L σᶻ₁⋯σᶻ_L, the spin reversal R = σˣ₁⋯σˣ_L, and the
//! diagonal scaling 𝓜(λ) = m₁(λ)⋯m_L(λ) with m(λ)|↑⟩ = λ|↑⟩,
//! m(λ)|↓⟩ = λ²|↓⟩. The alternate-cyclic sector W^L is the eigenspace of S
//! with eigenvalue (−1)^{L+1}; its orthogonal projector is
//! P_W = (1/L) Σ_{k=0}^{L−1} ((−1)^{L+1})^k S^k.

use super::state::{check_length, mask, translate_code};
use super::{ApplyFn, HilbertError, LinearMap, StateVector};
use num_complex::Complex64;
use std::sync::Arc;

/// S|s₁…s_L⟩ = |s_L s₁…s_{L−1}⟩.
pub fn translate(psi: &StateVector) -> StateVector {
    let length = psi.length();
    let mut out = StateVector::zero(length).expect("input length already validated");
    let dst = out.amplitudes_mut();
    for (code, &a) in psi.amplitudes().iter().enumerate() {
        dst[translate_code(code as u64, length) as usize] = a;
    }
    out
}

/// S⁻¹|s₁…s_L⟩ = |s₂…s_L s₁⟩.
pub fn translate_inverse(psi: &StateVector) -> StateVector {
    let length = psi.length();
    let mut out = StateVector::zero(length).expect("input length already validated");
    let src = psi.amplitudes();
    for (code, o) in out.amplitudes_mut().iter_mut().enumerate() {
        *o = src[translate_code(code as u64, length) as usize];
    }
    out
}

/// P = (−1)^L σᶻ₁⋯σᶻ_L; each basis state picks up the parity of its number
/// of up spins.
pub fn parity_apply(psi: &StateVector) -> StateVector {
    let length = psi.length();
    let mut out = psi.clone();
    for (code, a) in out.amplitudes_mut().iter_mut().enumerate() {
        let ups = length as u32 - (code as u64).count_ones();
        if ups % 2 == 1 {
            *a = -*a;
        }
    }
    out
}

/// R = σˣ₁⋯σˣ_L flips every spin.
pub fn reversal_apply(psi: &StateVector) -> StateVector {
    let length = psi.length();
    let m = mask(length);
    let mut out = StateVector::zero(length).expect("input length already validated");
    let dst = out.amplitudes_mut();
    for (code, &a) in psi.amplitudes().iter().enumerate() {
        dst[(!(code as u64) & m) as usize] = a;
    }
    out
}

/// 𝓜(λ) scales a basis state with k down spins by λ^{L+k}.
pub fn m_lambda_apply(lambda: Complex64, psi: &StateVector) -> Result<StateVector, HilbertError> {
    if lambda == Complex64::ZERO {
        return Err(HilbertError::ZeroLambda);
    }
    let length = psi.length();
    // λ^{u+2k} with u + k = L, so the exponent is L + k for k down spins.
    let powers: Vec<Complex64> = (0..=length)
        .map(|k| lambda.powi((length + k) as i32))
        .collect();
    let mut out = psi.clone();
    for (code, a) in out.amplitudes_mut().iter_mut().enumerate() {
        *a *= powers[(code as u64).count_ones() as usize];
    }
    Ok(out)
}

/// Translation eigenvalue (−1)^{L+1} that defines the alternate-cyclic
/// sector.
pub fn alternate_cyclic_sign(length: usize) -> f64 {
    if length % 2 == 0 {
        -1.0
    } else {
        1.0
    }
}

/// Orthogonal projector onto W^L as a matrix-free (self-adjoint) map.
pub fn alternate_cyclic_projector(length: usize) -> Result<LinearMap, HilbertError> {
    check_length(length)?;
    let apply: ApplyFn = Arc::new(move |psi: &StateVector| project_alternate_cyclic(psi));
    LinearMap::matrix_free(length, length, apply.clone(), Some(apply))
}

/// P_W ψ = (1/L) Σ_k ε^k S^k ψ with ε = (−1)^{L+1}, evaluated by L repeated
/// shifts.
pub fn project_alternate_cyclic(psi: &StateVector) -> StateVector {
    let length = psi.length();
    let eps = alternate_cyclic_sign(length);
    let mut acc = psi.clone();
    let mut shifted = psi.clone();
    let mut sign = 1.0;
    for _ in 1..length {
        shifted = translate(&shifted);
        sign *= eps;
        acc.add_scaled(Complex64::new(sign, 0.0), &shifted);
    }
    acc.scale(Complex64::new(1.0 / length as f64, 0.0));
    acc
}

/// An orthonormal basis of the alternate-cyclic sector W^L, one vector per
/// compatible necklace orbit: (1/√d) Σ_{k=0}^{d−1} ε^k S^k|c⟩ for an orbit
/// of period d, which survives exactly when ε^d = 1.
pub struct AlternateCyclicBasis {
    length: usize,
    /// Each orbit as (codes in shift order, sign of each code).
    orbits: Vec<Vec<(u64, f64)>>,
}

impl AlternateCyclicBasis {
    pub fn new(length: usize) -> Result<Self, HilbertError> {
        check_length(length)?;
        let eps = alternate_cyclic_sign(length);
        let mut orbits = Vec::new();
        let dim = 1u64 << length;
        for code in 0..dim {
            // Keep one representative per orbit: the minimal code.
            let mut period = 1usize;
            let mut cur = translate_code(code, length);
            let mut minimal = true;
            while cur != code {
                if cur < code {
                    minimal = false;
                    break;
                }
                cur = translate_code(cur, length);
                period += 1;
            }
            if !minimal {
                continue;
            }
            if eps < 0.0 && period % 2 == 1 {
                // ε^period = −1: the symmetrised sum cancels.
                continue;
            }
            let mut members = Vec::with_capacity(period);
            let mut c = code;
            let mut sign = 1.0;
            for _ in 0..period {
                members.push((c, sign));
                c = translate_code(c, length);
                sign *= eps;
            }
            orbits.push(members);
        }
        Ok(Self { length, orbits })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// dim W^L.
    pub fn dimension(&self) -> usize {
        self.orbits.len()
    }

    /// The i-th orthonormal basis vector, expanded in the full chain space.
    pub fn vector(&self, i: usize) -> StateVector {
        let mut out = StateVector::zero(self.length).expect("length validated at construction");
        let members = &self.orbits[i];
        let w = 1.0 / (members.len() as f64).sqrt();
        for &(code, sign) in members {
            out.amplitudes_mut()[code as usize] = Complex64::new(sign * w, 0.0);
        }
        out
    }

    /// Coordinates of a full-space vector in this basis (the W-components;
    /// anything outside W^L is discarded).
    pub fn coordinates(&self, psi: &StateVector) -> Vec<Complex64> {
        self.orbits
            .iter()
            .map(|members| {
                let w = 1.0 / (members.len() as f64).sqrt();
                members
                    .iter()
                    .map(|&(code, sign)| psi.amplitude(code) * sign * w)
                    .sum()
            })
            .collect()
    }

    /// Σ coeffs[i] · vector(i).
    pub fn expand(&self, coeffs: &[Complex64]) -> StateVector {
        debug_assert_eq!(coeffs.len(), self.dimension());
        let mut out = StateVector::zero(self.length).expect("length validated at construction");
        for (members, &x) in self.orbits.iter().zip(coeffs) {
            let w = 1.0 / (members.len() as f64).sqrt();
            for &(code, sign) in members {
                out.amplitudes_mut()[code as usize] += x * sign * w;
            }
        }
        out
    }
}

/// XYZ couplings (Jx, Jy, Jz) = (1+ζ, 1−ζ, (ζ²−1)/2) of the combinatorial
/// line.
pub fn couplings_from_zeta(zeta: f64) -> (f64, f64, f64) {
    (1.0 + zeta, 1.0 - zeta, (zeta * zeta - 1.0) / 2.0)
}

/// The periodic XYZ Hamiltonian
/// H = −½ Σ_{j=1}^{L} (Jx σˣ_jσˣ_{j+1} + Jy σʸ_jσʸ_{j+1} + Jz σᶻ_jσᶻ_{j+1}),
/// σ_{L+1} = σ₁, as a matrix-free Hermitian map.
pub fn xyz_hamiltonian(
    length: usize,
    jx: f64,
    jy: f64,
    jz: f64,
) -> Result<LinearMap, HilbertError> {
    check_length(length)?;
    if length < 2 {
        return Err(HilbertError::ChainTooShort(length));
    }
    let apply: ApplyFn = Arc::new(move |psi: &StateVector| {
        apply_xyz(psi, length, jx, jy, jz)
    });
    LinearMap::matrix_free(length, length, apply.clone(), Some(apply))
}

fn apply_xyz(psi: &StateVector, length: usize, jx: f64, jy: f64, jz: f64) -> StateVector {
    let mut out = StateVector::zero(length).expect("length validated at construction");
    let src = psi.amplitudes();
    let dst = out.amplitudes_mut();
    for j in 0..length {
        let p = j;
        let q = (j + 1) % length;
        let flip = (1u64 << p) | (1u64 << q);
        for (code, &a) in src.iter().enumerate() {
            if a == Complex64::ZERO {
                continue;
            }
            let code = code as u64;
            let equal = (code >> p & 1) == (code >> q & 1);
            let zz = if equal { 1.0 } else { -1.0 };
            // σᶻσᶻ is diagonal; σˣσˣ flips the bond with weight 1 and σʸσʸ
            // flips it with weight −zz.
            dst[code as usize] += -0.5 * jz * zz * a;
            dst[(code ^ flip) as usize] += -0.5 * (jx - jy * zz) * a;
        }
    }
    out
}
