//! The elliptic weight map and the ζ / J_z consistency checks.

use super::theta::jacobi_theta;
use super::{EllipticError, EllipticParams};
use crate::vertex::VertexWeights;
use serde::Serialize;

/// The four weight products, without any zero checks. Theta functions are
/// evaluated at nome p².
pub(super) fn raw_quadruple(p: &EllipticParams) -> Result<(f64, f64, f64, f64), EllipticError> {
    let q = p.nome() * p.nome();
    let two_eta = 2.0 * p.eta();
    let t4_eta = jacobi_theta(4, two_eta, q)?;
    let t1_eta = jacobi_theta(1, two_eta, q)?;
    let t1_shifted = jacobi_theta(1, p.u() + two_eta, q)?;
    let t4_shifted = jacobi_theta(4, p.u() + two_eta, q)?;
    let t1_u = jacobi_theta(1, p.u(), q)?;
    let t4_u = jacobi_theta(4, p.u(), q)?;
    Ok((
        p.rho() * t4_eta * t1_shifted * t4_u,
        p.rho() * t4_eta * t4_shifted * t1_u,
        p.rho() * t1_eta * t4_shifted * t4_u,
        p.rho() * t1_eta * t1_shifted * t1_u,
    ))
}

/// ζ = (ϑ₁(2η, p²)/ϑ₄(2η, p²))², the u-independent anisotropy of the
/// parametrization.
pub(super) fn zeta_from_theta(eta: f64, nome: f64) -> Result<f64, EllipticError> {
    let q = nome * nome;
    let ratio = jacobi_theta(1, 2.0 * eta, q)? / jacobi_theta(4, 2.0 * eta, q)?;
    Ok(ratio * ratio)
}

/// Evaluates the weight quadruple at an elliptic point with p > 0. Any
/// vanishing weight — u on a lattice zero of a theta factor — is an error,
/// and p = 0 is redirected to [`six_vertex_weights`], where the degeneration
/// is taken deliberately.
pub fn weights_from_elliptic(p: &EllipticParams) -> Result<VertexWeights, EllipticError> {
    if p.nome() == 0.0 {
        return Err(EllipticError::SixVertexNome);
    }
    let (a, b, c, d) = raw_quadruple(p)?;
    for (label, value) in [("a", a), ("b", b), ("c", c), ("d", d)] {
        if value == 0.0 || !value.is_finite() {
            return Err(EllipticError::VanishingWeight { label });
        }
    }
    Ok(VertexWeights::unchecked(a, b, c, d))
}

/// The p → 0 limit of the weight map after dividing out the common factor
/// 2√p that every ϑ₁ contributes: since ϑ₁(x, p²) = 2√p sin(x)(1 + O(p⁴))
/// and ϑ₄(x, p²) = 1 + O(p²),
///
/// ```text
/// a = ρ sin(u + 2η), b = ρ sin(u), c = ρ sin(2η), d = 0
/// ```
///
/// — the trigonometric six-vertex parametrization.
pub fn six_vertex_weights(p: &EllipticParams) -> Result<VertexWeights, EllipticError> {
    if p.nome() != 0.0 {
        return Err(EllipticError::NotSixVertexNome { nome: p.nome() });
    }
    let a = p.rho() * (p.u() + 2.0 * p.eta()).sin();
    let b = p.rho() * p.u().sin();
    let c = p.rho() * (2.0 * p.eta()).sin();
    for (label, value) in [("a", a), ("b", b), ("c", c)] {
        if value == 0.0 || !value.is_finite() {
            return Err(EllipticError::VanishingWeight { label });
        }
    }
    Ok(VertexWeights::unchecked(a, b, c, 0.0))
}

/// Both sides of the ζ and J_z theta identities, evaluated at one elliptic
/// point. The first two identities hold for every crossing parameter; the
/// `combinatorial` entries compare J_z against (ζ² − 1)/2, which singles
/// out η = π/3.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ZetaJzReport {
    /// (ϑ₁(2η, p²)/ϑ₄(2η, p²))².
    pub zeta_theta: f64,
    /// cd/(ab) from the weights at this u.
    pub zeta_weights: f64,
    pub zeta_residual: f64,
    /// ϑ₂(2η)ϑ₃(2η)ϑ₄(0)² / (ϑ₂(0)ϑ₃(0)ϑ₄(2η)²), all at nome p².
    pub jz_theta: f64,
    /// (a² + b² − c² − d²)/(2ab) from the weights at this u.
    pub jz_weights: f64,
    pub jz_residual: f64,
    /// (ζ² − 1)/2 with ζ from the theta expression.
    pub combinatorial_jz: f64,
    pub combinatorial_residual: f64,
    /// True at p = 0, where ζ = 0 is the excluded six-vertex point.
    pub six_vertex: bool,
}

pub fn zeta_and_jz_consistency(p: &EllipticParams) -> Result<ZetaJzReport, EllipticError> {
    let six_vertex = p.nome() == 0.0;
    let (weights, jz_theta) = if six_vertex {
        // Every theta ratio in Eq. for J_z degenerates as 0/0 at p = 0; the
        // limit of ϑ₂(2η, p²)/ϑ₂(0, p²) is cos(2η) and all other factors
        // tend to 1.
        (six_vertex_weights(p)?, (2.0 * p.eta()).cos())
    } else {
        let q = p.nome() * p.nome();
        let two_eta = 2.0 * p.eta();
        let jz_theta = jacobi_theta(2, two_eta, q)?
            * jacobi_theta(3, two_eta, q)?
            * jacobi_theta(4, 0.0, q)?.powi(2)
            / (jacobi_theta(2, 0.0, q)?
                * jacobi_theta(3, 0.0, q)?
                * jacobi_theta(4, two_eta, q)?.powi(2));
        (weights_from_elliptic(p)?, jz_theta)
    };
    let zeta_theta = zeta_from_theta(p.eta(), p.nome())?;
    let zeta_weights = weights.zeta();
    let zeta_scale = zeta_theta.abs().max(zeta_weights.abs()).max(f64::MIN_POSITIVE);
    let (a, b, c, d) = (weights.a(), weights.b(), weights.c(), weights.d());
    let jz_weights = (a * a + b * b - c * c - d * d) / (2.0 * a * b);
    let jz_scale = jz_theta.abs().max(jz_weights.abs()).max(1.0);
    let combinatorial_jz = (zeta_theta * zeta_theta - 1.0) / 2.0;
    Ok(ZetaJzReport {
        zeta_theta,
        zeta_weights,
        zeta_residual: (zeta_theta - zeta_weights).abs() / zeta_scale,
        jz_theta,
        jz_weights,
        jz_residual: (jz_theta - jz_weights).abs() / jz_scale,
        combinatorial_jz,
        combinatorial_residual: (jz_theta - combinatorial_jz).abs() / jz_scale.max(1.0),
        six_vertex,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const ETA: f64 = PI / 3.0;

    #[test]
    fn crossing_third_of_pi_lands_on_the_constraint_manifold() {
        let p = EllipticParams::unit(ETA, 0.2, 0.4).unwrap();
        let w = weights_from_elliptic(&p).unwrap();
        assert!(w.constraint_relative_residual() < 1e-11);
    }

    #[test]
    fn other_crossing_parameters_miss_the_manifold() {
        let p = EllipticParams::unit(PI / 4.0, 0.2, 0.4).unwrap();
        let w = weights_from_elliptic(&p).unwrap();
        assert!(w.constraint_relative_residual() > 1e-4);
    }

    #[test]
    fn lattice_zero_of_the_spectral_parameter_is_an_error() {
        let p = EllipticParams::unit(ETA, 0.2, 0.0).unwrap();
        assert!(matches!(
            weights_from_elliptic(&p),
            Err(EllipticError::VanishingWeight { label: "b" })
        ));
    }

    #[test]
    fn zero_nome_is_redirected_to_the_six_vertex_map() {
        let p = EllipticParams::unit(ETA, 0.0, 0.4).unwrap();
        assert!(matches!(
            weights_from_elliptic(&p),
            Err(EllipticError::SixVertexNome)
        ));
        assert!(matches!(
            six_vertex_weights(&EllipticParams::unit(ETA, 0.3, 0.4).unwrap()),
            Err(EllipticError::NotSixVertexNome { .. })
        ));
    }

    #[test]
    fn six_vertex_limit_reproduces_the_trigonometric_weights() {
        let p = EllipticParams::new(2.0, ETA, 0.0, PI / 6.0).unwrap();
        let w = six_vertex_weights(&p).unwrap();
        assert!((w.a() - 1.0).abs() < 1e-14);
        assert!((w.b() - 1.0).abs() < 1e-14);
        assert!((w.c() - 3.0f64.sqrt()).abs() < 1e-14);
        assert_eq!(w.d(), 0.0);
        assert_eq!(w.zeta(), 0.0);
        assert!(w.constraint_relative_residual() < 1e-14);
    }

    #[test]
    fn zeta_and_jz_identities_hold_on_the_combinatorial_line() {
        let p = EllipticParams::unit(ETA, 0.3, 0.5).unwrap();
        let report = zeta_and_jz_consistency(&p).unwrap();
        assert!(report.zeta_residual < 1e-11);
        assert!(report.jz_residual < 1e-11);
        assert!(report.combinatorial_residual < 1e-11);
        assert!(!report.six_vertex);
    }

    #[test]
    fn general_crossing_keeps_the_identities_but_not_the_line() {
        let p = EllipticParams::unit(PI / 4.0, 0.3, 0.5).unwrap();
        let report = zeta_and_jz_consistency(&p).unwrap();
        assert!(report.zeta_residual < 1e-11);
        assert!(report.jz_residual < 1e-11);
        assert!(report.combinatorial_residual > 1e-3);
    }

    #[test]
    fn zero_nome_flags_the_excluded_point() {
        let p = EllipticParams::unit(ETA, 0.0, 0.4).unwrap();
        let report = zeta_and_jz_consistency(&p).unwrap();
        assert!(report.six_vertex);
        assert_eq!(report.zeta_theta, 0.0);
        assert!(report.zeta_residual < 1e-15);
        assert!(report.jz_residual < 1e-11);
        assert!((report.combinatorial_jz + 0.5).abs() < 1e-15);
    }

    #[test]
    fn zeta_does_not_depend_on_the_spectral_parameter() {
        let base = EllipticParams::unit(ETA, 0.35, 0.2).unwrap();
        let reference = weights_from_elliptic(&base).unwrap().zeta();
        for u in [0.05, 0.4, 0.7, 1.1] {
            let w = weights_from_elliptic(&base.at_u(u)).unwrap();
            assert!((w.zeta() - reference).abs() < 1e-10 * reference.abs());
        }
    }
}
