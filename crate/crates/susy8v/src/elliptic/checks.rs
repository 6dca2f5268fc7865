//! Yang–Baxter residuals and the u = 0 expansion of the transfer matrix.

use super::weights::{raw_quadruple, zeta_from_theta};
use super::{EllipticError, EllipticParams};
use crate::hilbert::{translate, xyz_hamiltonian, SpinState, StateVector};
use crate::tolerance;
use crate::vertex::{transfer_matrix_dense, VertexWeights};
use ndarray::Array2;
use ndarray_linalg::SVD;
use num_complex::Complex64;
use serde::Serialize;

/// The R-matrix as a plain 4×4 array in the basis |↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩
/// of the first ⊗ second factor.
fn r4(a: f64, b: f64, c: f64, d: f64) -> Array2<f64> {
    let mut r = Array2::zeros((4, 4));
    r[(0, 0)] = a;
    r[(3, 3)] = a;
    r[(1, 1)] = b;
    r[(2, 2)] = b;
    r[(1, 2)] = c;
    r[(2, 1)] = c;
    r[(0, 3)] = d;
    r[(3, 0)] = d;
    r
}

/// R acting on factors (i, j) of a three-fold tensor product, i < j,
/// with factor 1 the most significant bit of the 8-dimensional index.
fn embed(r: &Array2<f64>, i: usize, j: usize) -> Array2<f64> {
    let bit = |m: usize, factor: usize| (m >> (3 - factor)) & 1;
    let spectator = 6 - i - j;
    let mut out = Array2::zeros((8, 8));
    for row in 0..8 {
        for col in 0..8 {
            if bit(row, spectator) != bit(col, spectator) {
                continue;
            }
            let r_row = 2 * bit(row, i) + bit(row, j);
            let r_col = 2 * bit(col, i) + bit(col, j);
            out[(row, col)] = r[(r_row, r_col)];
        }
    }
    out
}

/// Largest singular value.
fn operator_norm(m: &Array2<f64>) -> Result<f64, EllipticError> {
    let (_, singular, _) = m
        .svd(false, false)
        .map_err(|e| EllipticError::Backend(e.to_string()))?;
    Ok(singular.iter().copied().fold(0.0, f64::max))
}

/// ‖R₁₂(u−v)R₁₃(u)R₂₃(v) − R₂₃(v)R₁₃(u)R₁₂(u−v)‖ on the three-site space,
/// in operator norm, normalized by the product of the three R-matrix norms.
/// Holds below [`tolerance::YANG_BAXTER`] for any crossing parameter and
/// nome, on or off the supersymmetric manifold.
pub fn yang_baxter_residual(
    eta: f64,
    nome: f64,
    u: f64,
    v: f64,
) -> Result<f64, EllipticError> {
    let point = |label: &'static str, spectral: f64| -> Result<Array2<f64>, EllipticError> {
        let params = EllipticParams::unit(eta, nome, spectral)?;
        let (a, b, c, d) = raw_quadruple(&params)?;
        if a == 0.0 && b == 0.0 && c == 0.0 && d == 0.0 {
            return Err(EllipticError::DegenerateRMatrix { label });
        }
        Ok(r4(a, b, c, d))
    };
    let r12 = embed(&point("u − v", u - v)?, 1, 2);
    let r13 = embed(&point("u", u)?, 1, 3);
    let r23 = embed(&point("v", v)?, 2, 3);
    let lhs = r12.dot(&r13).dot(&r23);
    let rhs = r23.dot(&r13).dot(&r12);
    let scale = operator_norm(&r12)? * operator_norm(&r13)? * operator_norm(&r23)?;
    Ok(operator_norm(&(lhs - rhs))? / scale)
}

/// Residuals of the u = 0 transfer-matrix expansion
///
/// ```text
/// T(0) = a(0)^L S,
/// T(0)⁻¹T′(0) = L(a′(0) + c′(0))/(2a(0)) − (b′(0)/a(0)) H_XYZ
/// ```
///
/// with the couplings Jx = 1 + d′(0)/b′(0), Jy = 1 − d′(0)/b′(0),
/// Jz = (a′(0) − c′(0))/b′(0). Derivatives are central differences with one
/// Richardson step. The last three entries compare the derived couplings
/// against 1 + ζ, 1 − ζ, (ζ² − 1)/2 — the first two hold for every η, the
/// third only on the combinatorial line η = π/3.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TuZeroReport {
    pub shift_residual: f64,
    pub log_derivative_residual: f64,
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
    pub zeta: f64,
    pub coupling_residuals: [f64; 3],
}

fn frobenius(m: &Array2<Complex64>) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn tu_zero_checks(
    eta: f64,
    nome: f64,
    length: usize,
) -> Result<TuZeroReport, EllipticError> {
    if nome == 0.0 {
        return Err(EllipticError::SixVertexNome);
    }
    let base = EllipticParams::unit(eta, nome, 0.0)?;
    let quadruple = |u: f64| raw_quadruple(&base.at_u(u));
    let dim = 1usize << length;
    let dense = |u: f64| -> Result<Array2<Complex64>, EllipticError> {
        let (a, b, c, d) = quadruple(u)?;
        let t = transfer_matrix_dense(&VertexWeights::unchecked(a, b, c, d), length)?;
        Ok(t.to_dense(dim)?)
    };

    let (a0, _, c0, _) = quadruple(0.0)?;
    if a0 == 0.0 {
        return Err(EllipticError::VanishingWeight { label: "a(0)" });
    }
    debug_assert!((a0 - c0).abs() < 1e-14 * a0.abs(), "R(0) must be a(0)×permutation");

    let t0 = dense(0.0)?;
    let mut shift = Array2::<Complex64>::zeros((dim, dim));
    for col in 0..dim {
        let image = translate(&StateVector::basis(SpinState::new(length, col as u64)?));
        for (row, amp) in image.amplitudes().iter().enumerate() {
            shift[(row, col)] = *amp;
        }
    }
    let a0_l = a0.powi(length as i32);
    let shift_residual =
        frobenius(&(&t0 - &(&shift * Complex64::new(a0_l, 0.0)))) / a0_l.abs();
    if shift_residual > tolerance::TRANSFER_SHIFT {
        return Err(EllipticError::ResidualTooLarge {
            check: "transfer matrix at u = 0",
            residual: shift_residual,
            bound: tolerance::TRANSFER_SHIFT,
        });
    }

    let h = 1e-4;
    let scalar_derivative = |f_p: f64, f_m: f64, f_p2: f64, f_m2: f64| {
        let full = (f_p - f_m) / (2.0 * h);
        let half = (f_p2 - f_m2) / h;
        (4.0 * half - full) / 3.0
    };
    let (ap, bp, cp, dp) = quadruple(h)?;
    let (am, bm, cm, dm) = quadruple(-h)?;
    let (ap2, bp2, cp2, dp2) = quadruple(h / 2.0)?;
    let (am2, bm2, cm2, dm2) = quadruple(-h / 2.0)?;
    let da = scalar_derivative(ap, am, ap2, am2);
    let db = scalar_derivative(bp, bm, bp2, bm2);
    let dc = scalar_derivative(cp, cm, cp2, cm2);
    let dd = scalar_derivative(dp, dm, dp2, dm2);
    if db == 0.0 {
        return Err(EllipticError::VanishingWeight { label: "b'(0)" });
    }

    let two_h = Complex64::new(2.0 * h, 0.0);
    let d_full = (&dense(h)? - &dense(-h)?) / two_h;
    let d_half = (&dense(h / 2.0)? - &dense(-h / 2.0)?) / (two_h / 2.0);
    let t_derivative =
        (&d_half * Complex64::new(4.0, 0.0) - &d_full) / Complex64::new(3.0, 0.0);
    let inverse_times_derivative = shift.t().dot(&t_derivative) / Complex64::new(a0_l, 0.0);

    let jx = 1.0 + dd / db;
    let jy = 1.0 - dd / db;
    let jz = (da - dc) / db;
    let alpha = length as f64 * (da + dc) / (2.0 * a0);
    let beta = db / a0;
    let h_xyz = xyz_hamiltonian(length, jx, jy, jz)?.to_dense(dim)?;
    let mut expected = &h_xyz * Complex64::new(-beta, 0.0);
    for i in 0..dim {
        expected[(i, i)] += Complex64::new(alpha, 0.0);
    }
    let scale = frobenius(&inverse_times_derivative)
        .max(frobenius(&expected))
        .max(1.0);
    let log_derivative_residual =
        frobenius(&(&inverse_times_derivative - &expected)) / scale;
    if log_derivative_residual > tolerance::LOG_DERIVATIVE {
        return Err(EllipticError::ResidualTooLarge {
            check: "logarithmic derivative at u = 0",
            residual: log_derivative_residual,
            bound: tolerance::LOG_DERIVATIVE,
        });
    }

    let zeta = zeta_from_theta(eta, nome)?;
    let coupling_residuals = [
        (jx - (1.0 + zeta)).abs(),
        (jy - (1.0 - zeta)).abs(),
        (jz - (zeta * zeta - 1.0) / 2.0).abs(),
    ];
    Ok(TuZeroReport {
        shift_residual,
        log_derivative_residual,
        jx,
        jy,
        jz,
        zeta,
        coupling_residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn yang_baxter_holds_on_the_combinatorial_line() {
        let residual = yang_baxter_residual(PI / 3.0, 0.2, 0.7, 0.3).unwrap();
        assert!(residual < 1e-11, "residual {residual}");
    }

    #[test]
    fn yang_baxter_is_trivial_at_equal_spectral_parameters() {
        let residual = yang_baxter_residual(PI / 3.0, 0.2, 0.5, 0.5).unwrap();
        assert!(residual < 1e-11, "residual {residual}");
    }

    #[test]
    fn yang_baxter_holds_off_the_manifold() {
        let residual = yang_baxter_residual(PI / 5.0, 0.4, 1.1, 0.2).unwrap();
        assert!(residual < 1e-10, "residual {residual}");
    }

    #[test]
    fn zero_nome_degenerates_every_r_matrix() {
        assert!(matches!(
            yang_baxter_residual(PI / 3.0, 0.0, 0.7, 0.3),
            Err(EllipticError::DegenerateRMatrix { .. })
        ));
    }

    #[test]
    fn transfer_expansion_matches_the_hamiltonian() {
        let report = tu_zero_checks(PI / 3.0, 0.25, 3).unwrap();
        assert!(report.shift_residual < 1e-10);
        assert!(report.log_derivative_residual < 1e-7);
        for residual in report.coupling_residuals {
            assert!(residual < 1e-9, "coupling residual {residual}");
        }
        assert!((report.jx - (1.0 + report.zeta)).abs() < 1e-9);
    }

    #[test]
    fn two_site_shift_identity_is_sharp() {
        let report = tu_zero_checks(PI / 3.0, 0.1, 2).unwrap();
        assert!(report.shift_residual < 1e-12);
    }

    #[test]
    fn general_crossing_satisfies_the_expansion_but_not_the_line() {
        let report = tu_zero_checks(PI / 4.0, 0.25, 3).unwrap();
        assert!(report.log_derivative_residual < 1e-7);
        assert!(report.coupling_residuals[0] < 1e-9);
        assert!(report.coupling_residuals[1] < 1e-9);
        assert!(report.coupling_residuals[2] > 1e-3);
    }

    #[test]
    fn zero_nome_is_rejected() {
        assert!(matches!(
            tu_zero_checks(PI / 3.0, 0.0, 3),
            Err(EllipticError::SixVertexNome)
        ));
    }
}
