//! The A-operator, the local R-matrix/supercharge identity, and the
//! transfer-matrix/supercharge anticommutation built on it.

use super::transfer::transfer_matrix;
use super::{VertexError, VertexWeights};
use crate::hilbert::{LinearMap, StateVector};
use crate::susy::{supercharge, supercharge_insertion};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// The site-inserting operator A: |↑⟩ ↦ d(−(c/a)|↑↓⟩ + |↓↑⟩),
/// |↓⟩ ↦ c(|↑↑⟩ − (d/b)|↓↓⟩), as a one-site to two-site map.
pub fn a_operator(w: &VertexWeights) -> Result<LinearMap, VertexError> {
    for (label, value) in [("a", w.a()), ("b", w.b())] {
        if value == 0.0 || !value.is_finite() {
            return Err(VertexError::ZeroWeight { label });
        }
    }
    let e = |x: f64| Complex64::new(x, 0.0);
    // Output codes: |↑↑⟩=0, |↓↑⟩=1, |↑↓⟩=2, |↓↓⟩=3 (first symbol is bit 0).
    let triplets = vec![
        (2, 0, e(-w.d() * w.c() / w.a())),
        (1, 0, e(w.d())),
        (0, 1, e(w.c())),
        (3, 1, e(-w.c() * w.d() / w.b())),
    ];
    Ok(LinearMap::from_triplets(1, 2, triplets)?)
}

/// Residuals of the local identity
/// R₀₂R₀₁𝔮₁ + (a+b)𝔮₁R₀₁ = A₀²R₀₁ + R₀₂A₀¹ on V₀ ⊗ V²,
/// evaluated for the given weights and once more with d inflated by 1% to
/// exercise the converse direction of the "if and only if".
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LocalIdentityReport {
    /// Frobenius norm of the difference of the two sides.
    pub residual: f64,
    /// Largest entry magnitude across both sides.
    pub scale: f64,
    pub relative: f64,
    /// Relative residual after replacing d by 1.01·d.
    pub perturbed_relative: f64,
}

/// Triplets of the R-matrix acting on the bit pair (aux_bit, phys_bit) of a
/// `total`-site space, identity elsewhere.
fn embedded_r_triplets(
    w: &VertexWeights,
    total: usize,
    aux_bit: usize,
    phys_bit: usize,
) -> Vec<(usize, usize, Complex64)> {
    let e = |x: f64| Complex64::new(x, 0.0);
    // Images of |x y⟩ = |aux phys⟩ under R, listed as (x', y', value).
    let images = |x: usize, y: usize| -> [(usize, usize, f64); 2] {
        match (x, y) {
            (0, 0) => [(0, 0, w.a()), (1, 1, w.d())],
            (1, 1) => [(1, 1, w.a()), (0, 0, w.d())],
            (0, 1) => [(0, 1, w.b()), (1, 0, w.c())],
            _ => [(1, 0, w.b()), (0, 1, w.c())],
        }
    };
    let dim = 1usize << total;
    let (am, pm) = (1usize << aux_bit, 1usize << phys_bit);
    let mut triplets = Vec::with_capacity(2 * dim);
    for code in 0..dim {
        let x = usize::from(code & am != 0);
        let y = usize::from(code & pm != 0);
        for (xo, yo, v) in images(x, y) {
            let row = (code & !(am | pm)) | xo * am | yo * pm;
            triplets.push((row, code, e(v)));
        }
    }
    triplets
}

/// A acting on the auxiliary space of V₀ ⊗ V¹ → V₀ ⊗ V². The inserted
/// physical site lands at position 1, or — for the translation conjugate
/// A₀² = S A₀¹ S⁻¹ — at position 2.
fn embedded_a(w: &VertexWeights, at_site_one: bool) -> Result<LinearMap, VertexError> {
    let base = a_operator(w)?.to_dense(4)?;
    let mut triplets = Vec::new();
    for out2 in 0..4usize {
        for mu in 0..2usize {
            let v = base[(out2, mu)];
            if v == Complex64::ZERO {
                continue;
            }
            let aux_out = out2 & 1;
            let site_new = (out2 >> 1) & 1;
            for s1 in 0..2usize {
                let col = s1 | mu << 1;
                let row = if at_site_one {
                    site_new | s1 << 1 | aux_out << 2
                } else {
                    s1 | site_new << 1 | aux_out << 2
                };
                triplets.push((row, col, v));
            }
        }
    }
    Ok(LinearMap::from_triplets(2, 3, triplets)?)
}

fn identity_relative_residual(w: &VertexWeights) -> Result<(f64, f64, f64), VertexError> {
    let q1 = supercharge_insertion(1, 1, w.zeta())?;
    // Auxiliary space = highest bit throughout; physical sites at bits 0, 1.
    let lift = |map: &LinearMap, bits_in: usize, bits_out: usize| -> Result<LinearMap, VertexError> {
        let dense = map.to_dense(1 << bits_out)?;
        let mut triplets = Vec::new();
        for r in 0..dense.nrows() {
            for c in 0..dense.ncols() {
                if dense[(r, c)] != Complex64::ZERO {
                    for mu in 0..2usize {
                        triplets.push((r | mu << bits_out, c | mu << bits_in, dense[(r, c)]));
                    }
                }
            }
        }
        Ok(LinearMap::from_triplets(bits_in + 1, bits_out + 1, triplets)?)
    };
    let q1_lifted = lift(&q1, 1, 2)?;
    let r01_in = LinearMap::from_triplets(2, 2, embedded_r_triplets(w, 2, 1, 0))?;
    let r01_out = LinearMap::from_triplets(3, 3, embedded_r_triplets(w, 3, 2, 0))?;
    let r02_out = LinearMap::from_triplets(3, 3, embedded_r_triplets(w, 3, 2, 1))?;
    let a01 = embedded_a(w, true)?;
    let a02 = embedded_a(w, false)?;

    let sum = w.a() + w.b();
    let lhs1 = r02_out.compose(&r01_out)?.compose(&q1_lifted)?.to_dense(8)?;
    let lhs2 = q1_lifted.compose(&r01_in)?.to_dense(8)?;
    let rhs1 = a02.compose(&r01_in)?.to_dense(8)?;
    let rhs2 = r02_out.compose(&a01)?.to_dense(8)?;

    let mut scale = 0.0f64;
    let mut frob = 0.0f64;
    for r in 0..8 {
        for c in 0..4 {
            let left = lhs1[(r, c)] + sum * lhs2[(r, c)];
            let right = rhs1[(r, c)] + rhs2[(r, c)];
            scale = scale.max(left.norm()).max(right.norm());
            frob += (left - right).norm_sqr();
        }
    }
    let residual = frob.sqrt();
    Ok((residual, scale, residual / scale.max(1e-300)))
}

/// Evaluates the local identity for `w` and for the 1%-perturbed weight
/// quadruple (a, b, c, 1.01·d), which leaves the constraint manifold.
pub fn check_local_identity(w: &VertexWeights) -> Result<LocalIdentityReport, VertexError> {
    let (residual, scale, relative) = identity_relative_residual(w)?;
    let perturbed = VertexWeights::unchecked(w.a(), w.b(), w.c(), 1.01 * w.d());
    let (_, _, perturbed_relative) = identity_relative_residual(&perturbed)?;
    Ok(LocalIdentityReport {
        residual,
        scale,
        relative,
        perturbed_relative,
    })
}

/// Residual of T𝔔 + (a+b)𝔔T = 0 on a seeded random state.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TqReport {
    pub residual: f64,
    /// Larger of ‖T_{L+1}𝔔ψ‖ and |a+b|·‖𝔔T_Lψ‖, floored by the a-priori
    /// magnitude (|a|+|b|+|c|+|d|)^(L+1)·‖ψ‖. The floor carries the
    /// normalisation at weight quadruples where both sides vanish
    /// identically (e.g. a = b = c = d, where ran T_L ⊆ ker 𝔔), so rounding
    /// noise is not divided by itself.
    pub scale: f64,
    pub relative: f64,
}

pub fn check_tq_anticommutation(
    w: &VertexWeights,
    length: usize,
) -> Result<TqReport, VertexError> {
    let q = supercharge(length, w.zeta())?;
    let t_low = transfer_matrix(w, length)?;
    let t_high = transfer_matrix(w, length + 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x0854_5121 + length as u64);
    let psi = StateVector::random(length, &mut rng)?;

    let u = t_high.apply(&q.apply(&psi)?)?;
    let v = q.apply(&t_low.apply(&psi)?)?;
    let sum = Complex64::new(w.a() + w.b(), 0.0);
    let floor = w.site_scale().powi(length as i32 + 1) * psi.norm();
    let scale = u.norm().max(sum.norm() * v.norm()).max(floor);
    let mut anti = u;
    anti.add_scaled(sum, &v);
    let residual = anti.norm();
    Ok(TqReport {
        residual,
        scale,
        relative: residual / scale.max(1e-300),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::SpinState;
    use crate::vertex::solve_d;

    fn ones() -> VertexWeights {
        VertexWeights::new(1.0, 1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn a_operator_matches_its_definition() {
        let a = a_operator(&ones()).unwrap();
        let up = a.apply(&StateVector::basis(SpinState::new(1, 0).unwrap())).unwrap();
        // A|↑⟩ = −|↑↓⟩ + |↓↑⟩ at the symmetric point.
        assert_eq!(up.amplitude(2), -Complex64::ONE);
        assert_eq!(up.amplitude(1), Complex64::ONE);
        assert_eq!(up.amplitude(0), Complex64::ZERO);
        assert_eq!(up.amplitude(3), Complex64::ZERO);

        let w = solve_d(1.0, 1.0, 0.5).unwrap();
        let down = a_operator(&w)
            .unwrap()
            .apply(&StateVector::basis(SpinState::new(1, 1).unwrap()))
            .unwrap();
        // Amplitude of |↓↓⟩ in A|↓⟩ is −cd/b.
        assert!((down.amplitude(3).re + w.c() * w.d() / w.b()).abs() < 1e-15);
    }

    #[test]
    fn a_operator_annihilates_up_without_d() {
        let w = VertexWeights::unchecked(1.0, 1.0, 3.0f64.sqrt(), 0.0);
        let a = a_operator(&w).unwrap();
        let up = a.apply(&StateVector::basis(SpinState::new(1, 0).unwrap())).unwrap();
        assert_eq!(up.norm(), 0.0);
    }

    #[test]
    fn local_identity_holds_on_the_manifold() {
        for w in [ones(), solve_d(2.0, 1.0, 1.0).unwrap(), solve_d(1.0, 1.0, 0.5).unwrap()] {
            let report = check_local_identity(&w).unwrap();
            assert!(
                report.relative < 1e-13,
                "identity residual {:.3e} for ({}, {}, {}, {})",
                report.relative,
                w.a(),
                w.b(),
                w.c(),
                w.d()
            );
            assert!(
                report.perturbed_relative > 1e-4,
                "perturbed residual {:.3e} should detect the broken constraint",
                report.perturbed_relative
            );
        }
    }

    #[test]
    fn local_identity_fails_off_the_manifold() {
        let w = VertexWeights::unchecked(1.0, 1.0, 1.0, 1.01);
        let (_, _, relative) = identity_relative_residual(&w).unwrap();
        assert!(relative > 1e-4, "residual {relative:.3e}");
    }

    #[test]
    fn transfer_anticommutes_with_the_supercharge() {
        let cases = [
            (ones(), 3, 1e-11),
            (solve_d(2.0, 1.0, 1.0).unwrap(), 4, 1e-11),
            (solve_d(1.0, 1.0, 0.5).unwrap(), 5, 1e-10),
        ];
        for (w, length, bound) in cases {
            let report = check_tq_anticommutation(&w, length).unwrap();
            assert!(
                report.relative < bound,
                "TQ residual {:.3e} at L={length}",
                report.relative
            );
        }
    }
}
