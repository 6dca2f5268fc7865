//! Jacobi theta functions as plain nome series.

use super::EllipticError;
use crate::tolerance;

/// ϑ_kind(u, q) for kind 1..=4, real argument and nome q ∈ [0, 1):
///
/// ```text
/// ϑ₁(u, q) = 2 Σ_{n≥0} (−1)ⁿ q^((n+½)²) sin((2n+1)u)
/// ϑ₂(u, q) = 2 Σ_{n≥0} q^((n+½)²) cos((2n+1)u)
/// ϑ₃(u, q) = 1 + 2 Σ_{n≥1} q^(n²) cos(2nu)
/// ϑ₄(u, q) = 1 + 2 Σ_{n≥1} (−1)ⁿ q^(n²) cos(2nu)
/// ```
///
/// The series stops once the envelope 2q^(next exponent) drops below
/// [`tolerance::THETA_TRUNCATION`] relative to the partial sum (plus one, so
/// sums near zero still terminate).
pub fn jacobi_theta(kind: u8, u: f64, q: f64) -> Result<f64, EllipticError> {
    if !(0.0..1.0).contains(&q) {
        return Err(EllipticError::NomeOutOfRange { nome: q });
    }
    if !u.is_finite() {
        return Err(EllipticError::NonFinite { label: "u" });
    }
    let half_integer = match kind {
        1 | 2 => true,
        3 | 4 => false,
        _ => return Err(EllipticError::InvalidThetaKind { kind }),
    };
    let mut sum: f64 = if half_integer { 0.0 } else { 1.0 };
    let mut n = if half_integer { 0u32 } else { 1u32 };
    loop {
        let exponent = if half_integer {
            (f64::from(n) + 0.5).powi(2)
        } else {
            f64::from(n).powi(2)
        };
        let envelope = 2.0 * q.powf(exponent);
        if envelope < tolerance::THETA_TRUNCATION * (sum.abs() + 1.0) {
            return Ok(sum);
        }
        let sign = match kind {
            1 | 4 if n % 2 == 1 => -1.0,
            _ => 1.0,
        };
        let oscillation = match kind {
            1 => (f64::from(2 * n + 1) * u).sin(),
            2 => (f64::from(2 * n + 1) * u).cos(),
            _ => (f64::from(2 * n) * u).cos(),
        };
        sum += sign * envelope * oscillation;
        n += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn theta_one_vanishes_at_the_origin() {
        for q in [0.0, 0.1, 0.5, 0.9, 0.99] {
            assert_eq!(jacobi_theta(1, 0.0, q).unwrap(), 0.0);
        }
    }

    #[test]
    fn theta_three_matches_the_short_series() {
        // 1 + 2(0.1) + 2(0.1)⁴ + 2(0.1)⁹ + ⋯ = 1.2002000020000002… at u = 0,
        // by extended-precision summation.
        let value = jacobi_theta(3, 0.0, 0.1).unwrap();
        assert!((value - 1.2002000020000002).abs() < 1e-15);
    }

    #[test]
    fn zero_nome_kills_every_correction() {
        for u in [0.0, 0.3, 1.0, -2.7] {
            assert_eq!(jacobi_theta(4, u, 0.0).unwrap(), 1.0);
            assert_eq!(jacobi_theta(3, u, 0.0).unwrap(), 1.0);
            assert_eq!(jacobi_theta(1, u, 0.0).unwrap(), 0.0);
            assert_eq!(jacobi_theta(2, u, 0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn nome_outside_the_unit_interval_is_rejected() {
        assert!(matches!(
            jacobi_theta(1, 0.5, 1.0),
            Err(EllipticError::NomeOutOfRange { .. })
        ));
        assert!(matches!(
            jacobi_theta(3, 0.5, -0.2),
            Err(EllipticError::NomeOutOfRange { .. })
        ));
        assert!(matches!(
            jacobi_theta(5, 0.5, 0.2),
            Err(EllipticError::InvalidThetaKind { kind: 5 })
        ));
    }

    #[test]
    fn quasi_periodicity_under_a_period_shift() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let u = rng.random::<f64>() * 6.0 - 3.0;
            let q = rng.random::<f64>() * 0.95;
            let t1 = jacobi_theta(1, u, q).unwrap();
            let t1_shift = jacobi_theta(1, u + std::f64::consts::PI, q).unwrap();
            assert!((t1_shift + t1).abs() < 1e-13 * (t1.abs() + 1.0));
            let t4 = jacobi_theta(4, u, q).unwrap();
            let t4_shift = jacobi_theta(4, u + std::f64::consts::PI, q).unwrap();
            assert!((t4_shift - t4).abs() < 1e-13 * (t4.abs() + 1.0));
        }
    }

    #[test]
    fn large_nome_still_terminates() {
        let value = jacobi_theta(3, 0.7, 0.999).unwrap();
        assert!(value.is_finite());
    }
}
