//! The supercharge and the Hamiltonian it generates.

use super::SusyError;
use crate::hilbert::{
    alternate_cyclic_projector, translate_code, ApplyFn, LinearMap, StateVector, MAX_SITES,
};
use num_complex::Complex64;
use std::sync::Arc;

fn check_zeta(zeta: f64) -> Result<(), SusyError> {
    if zeta == 0.0 || !zeta.is_finite() {
        return Err(SusyError::ZeroZeta);
    }
    Ok(())
}

fn check_length(length: usize, minimum: usize) -> Result<(), SusyError> {
    if length < minimum || length + 1 > MAX_SITES {
        return Err(SusyError::ChainTooShort { length, minimum });
    }
    Ok(())
}

/// The ground-state energy −L(3+ζ²)/4 of the XYZ chain on the
/// alternate-cyclic sector.
pub fn ground_energy(length: usize, zeta: f64) -> f64 {
    -(length as f64) * (3.0 + zeta * zeta) / 4.0
}

/// The one-site supercharge q: annihilates |↑⟩ and maps |↓⟩ to
/// |↑↑⟩ − ζ|↓↓⟩.
pub fn local_supercharge(zeta: f64) -> Result<LinearMap, SusyError> {
    check_zeta(zeta)?;
    let triplets = vec![
        (0, 1, Complex64::ONE),
        (3, 1, Complex64::new(-zeta, 0.0)),
    ];
    Ok(LinearMap::from_triplets(1, 2, triplets)?)
}

/// Appends to `triplets` the action of q inserted at site `site` (1-based),
/// scaled by `factor`: a down spin at `site` becomes the pair ↑↑ (weight
/// `factor`) or ↓↓ (weight `−ζ·factor`) while the remaining sites shift up.
fn push_insertion(
    triplets: &mut Vec<(usize, usize, Complex64)>,
    length: usize,
    site: usize,
    zeta: f64,
    factor: f64,
) {
    let site_bit = 1u64 << (site - 1);
    let low_mask = site_bit - 1;
    for code in 0..(1u64 << length) {
        if code & site_bit == 0 {
            continue;
        }
        let low = code & low_mask;
        let high = code >> site;
        let pair_up = low | high << (site + 1);
        let pair_down = pair_up | site_bit | site_bit << 1;
        triplets.push((pair_up as usize, code as usize, Complex64::new(factor, 0.0)));
        triplets.push((
            pair_down as usize,
            code as usize,
            Complex64::new(-zeta * factor, 0.0),
        ));
    }
}

/// The insertion operator q_j (1 ≤ j ≤ L): acts with the local supercharge
/// on site j, producing an (L+1)-site state.
pub fn supercharge_insertion(length: usize, site: usize, zeta: f64) -> Result<LinearMap, SusyError> {
    check_zeta(zeta)?;
    check_length(length, 1)?;
    if site == 0 || site > length {
        return Err(SusyError::SiteOutOfRange { site, length });
    }
    let mut triplets = Vec::with_capacity(1 << length);
    push_insertion(&mut triplets, length, site, zeta, 1.0);
    Ok(LinearMap::from_triplets(length, length + 1, triplets)?)
}

/// The boundary insertion q₀ = S ∘ q_L: insert at the last site, then
/// translate the longer chain. It equals S⁻¹ ∘ q₁ ∘ S, which tests use as
/// an independent cross-check.
pub fn q_zero(length: usize, zeta: f64) -> Result<LinearMap, SusyError> {
    check_zeta(zeta)?;
    check_length(length, 1)?;
    let mut triplets = Vec::with_capacity(1 << length);
    push_insertion(&mut triplets, length, length, zeta, 1.0);
    for (row, _, _) in &mut triplets {
        *row = translate_code(*row as u64, length + 1) as usize;
    }
    Ok(LinearMap::from_triplets(length, length + 1, triplets)?)
}

/// The global supercharge 𝔔: √(L/(L+1)) Σ_{j=0}^{L} (−1)^j q_j, composed
/// with the alternate-cyclic projector so it vanishes off the sector. Maps
/// the L-site sector into the (L+1)-site one.
pub fn supercharge(length: usize, zeta: f64) -> Result<LinearMap, SusyError> {
    check_zeta(zeta)?;
    check_length(length, 1)?;
    let prefactor = (length as f64 / (length + 1) as f64).sqrt();

    let mut triplets = Vec::with_capacity(2 * (length + 1) * (1 << length));
    for site in 1..=length {
        let sign = if site % 2 == 0 { 1.0 } else { -1.0 };
        push_insertion(&mut triplets, length, site, zeta, sign * prefactor);
    }
    // j = 0 carries sign (−1)⁰ = +1; build it as S ∘ q_L.
    let before = triplets.len();
    push_insertion(&mut triplets, length, length, zeta, prefactor);
    for (row, _, _) in &mut triplets[before..] {
        *row = translate_code(*row as u64, length + 1) as usize;
    }

    let alternating_sum = LinearMap::from_triplets(length, length + 1, triplets)?;
    let projector = alternate_cyclic_projector(length)?;
    Ok(alternating_sum.compose(&projector)?)
}

/// The supercharge on the L-site chain together with the adjoint coming up
/// from length L−1 (absent at L = 1).
pub struct SuperchargeSet {
    length: usize,
    zeta: f64,
    q_up: LinearMap,
    q_down_adjoint: Option<LinearMap>,
}

impl SuperchargeSet {
    pub fn new(length: usize, zeta: f64) -> Result<Self, SusyError> {
        check_zeta(zeta)?;
        check_length(length, 1)?;
        let q_up = supercharge(length, zeta)?;
        let q_down_adjoint = if length >= 2 {
            Some(supercharge(length - 1, zeta)?.adjoint()?)
        } else {
            None
        };
        Ok(Self {
            length,
            zeta,
            q_up,
            q_down_adjoint,
        })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    /// 𝔔 on the L-site chain (maps into L+1 sites).
    pub fn q_up(&self) -> &LinearMap {
        &self.q_up
    }

    /// 𝔔† on the L-site chain (maps into L−1 sites), absent at L = 1.
    pub fn q_down_adjoint(&self) -> Option<&LinearMap> {
        self.q_down_adjoint.as_ref()
    }
}

/// The supersymmetric Hamiltonian H = 𝔔†𝔔 + 𝔔𝔔†, where the first term
/// uses the supercharge leaving length L and the second the one arriving
/// from length L−1. Hermitian and positive semi-definite by construction;
/// on the alternate-cyclic sector it equals H_XYZ − E₀.
pub fn susy_hamiltonian(length: usize, zeta: f64) -> Result<LinearMap, SusyError> {
    check_zeta(zeta)?;
    check_length(length, 2)?;
    let up = Arc::new(supercharge(length, zeta)?);
    let down = Arc::new(supercharge(length - 1, zeta)?);

    let apply: ApplyFn = Arc::new(move |psi: &StateVector| {
        let mut out = up
            .apply_adjoint(&up.apply(psi).expect("supercharge apply"))
            .expect("supercharge adjoint apply");
        let lowered = down.apply_adjoint(psi).expect("supercharge adjoint apply");
        out.add_scaled(Complex64::ONE, &down.apply(&lowered).expect("supercharge apply"));
        out
    });
    Ok(LinearMap::matrix_free(
        length,
        length,
        apply.clone(),
        Some(apply),
    )?)
}
