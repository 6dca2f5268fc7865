//! Vertex-weight quadruples on the supersymmetric constraint manifold.

use super::VertexError;
use crate::tolerance;
use rand::Rng;
use serde::Serialize;

/// The eight-vertex weights (a, b, c, d) together with the derived
/// anisotropy ζ = cd/(ab).
///
/// The checked constructors guarantee all four weights nonzero and the
/// constraint
///
/// ```text
/// (a² + ab)(b² + ab) = (c² + ab)(d² + ab)
/// ```
///
/// satisfied to relative precision [`tolerance::CONSTRAINT`].
/// [`VertexWeights::unchecked`] skips both requirements; it exists for the
/// six-vertex limit d = 0 and for deliberately violated quadruples used as
/// negative controls.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct VertexWeights {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    zeta: f64,
}

impl VertexWeights {
    /// Validates the weights and the constraint residual.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, VertexError> {
        for (label, value) in [("a", a), ("b", b), ("c", c), ("d", d)] {
            if value == 0.0 || !value.is_finite() {
                return Err(VertexError::ZeroWeight { label });
            }
        }
        let w = Self::unchecked(a, b, c, d);
        let bound = tolerance::CONSTRAINT * w.constraint_scale();
        let residual = w.constraint_residual();
        if residual > bound {
            return Err(VertexError::ConstraintViolated { residual, bound });
        }
        Ok(w)
    }

    /// Builds the quadruple without validating anything. ζ is still set to
    /// cd/(ab), with a fallback to 0 when ab = 0 (where it is meaningless
    /// anyway) so the struct never carries a NaN.
    pub fn unchecked(a: f64, b: f64, c: f64, d: f64) -> Self {
        let ab = a * b;
        Self {
            a,
            b,
            c,
            d,
            zeta: if ab == 0.0 { 0.0 } else { (c * d) / ab },
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    /// |(a²+ab)(b²+ab) − (c²+ab)(d²+ab)|.
    pub fn constraint_residual(&self) -> f64 {
        let ab = self.a * self.b;
        let lhs = (self.a * self.a + ab) * (self.b * self.b + ab);
        let rhs = (self.c * self.c + ab) * (self.d * self.d + ab);
        (lhs - rhs).abs()
    }

    /// Magnitude of the larger constraint side, floored away from zero so
    /// relative residuals stay finite.
    pub fn constraint_scale(&self) -> f64 {
        let ab = self.a * self.b;
        let lhs = (self.a * self.a + ab) * (self.b * self.b + ab);
        let rhs = (self.c * self.c + ab) * (self.d * self.d + ab);
        lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE)
    }

    /// constraint_residual / constraint_scale.
    pub fn constraint_relative_residual(&self) -> f64 {
        self.constraint_residual() / self.constraint_scale()
    }

    /// |a|+|b|+|c|+|d| — the per-site growth factor of transfer-matrix
    /// entries, used to normalize residuals of length-L operator identities.
    pub fn site_scale(&self) -> f64 {
        self.a.abs() + self.b.abs() + self.c.abs() + self.d.abs()
    }
}

/// Solves the constraint for the positive root
/// d = √((a²+ab)(b²+ab)/(c²+ab) − ab).
pub fn solve_d(a: f64, b: f64, c: f64) -> Result<VertexWeights, VertexError> {
    for (label, value) in [("a", a), ("b", b), ("c", c)] {
        if value == 0.0 || !value.is_finite() {
            return Err(VertexError::ZeroWeight { label });
        }
    }
    let ab = a * b;
    let denominator = c * c + ab;
    if denominator == 0.0 {
        return Err(VertexError::SingularDenominator);
    }
    let radicand = (a * a + ab) * (b * b + ab) / denominator - ab;
    if radicand <= 0.0 {
        return Err(VertexError::NoPositiveRoot { radicand });
    }
    VertexWeights::new(a, b, c, radicand.sqrt())
}

/// Draws (a, b, c) log-uniformly from [1/4, 4] and solves for d. `None`
/// when the sampled triple admits no real positive root.
pub fn sample_constrained<R: Rng + ?Sized>(rng: &mut R) -> Option<VertexWeights> {
    let span = 4.0f64.ln() - 0.25f64.ln();
    let draw = |rng: &mut R| (0.25f64.ln() + span * rng.random::<f64>()).exp();
    let (a, b, c) = (draw(rng), draw(rng), draw(rng));
    solve_d(a, b, c).ok()
}

/// Draws quadruples log-uniformly from [1/4, 4] until one violates the
/// constraint by more than 10⁻³ of its scale — a negative control for the
/// "if and only if" direction of the local identity.
pub fn sample_unconstrained<R: Rng + ?Sized>(rng: &mut R) -> VertexWeights {
    let span = 4.0f64.ln() - 0.25f64.ln();
    loop {
        let draw = |rng: &mut R| (0.25f64.ln() + span * rng.random::<f64>()).exp();
        let w = VertexWeights::unchecked(draw(rng), draw(rng), draw(rng), draw(rng));
        if w.constraint_relative_residual() > 1e-3 {
            return w;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fully_symmetric_point_solves_to_one() {
        let w = solve_d(1.0, 1.0, 1.0).unwrap();
        assert!((w.d() - 1.0).abs() < 1e-14);
        assert!((w.zeta() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn asymmetric_triple_inverts_the_constraint() {
        let w = solve_d(2.0, 1.0, 1.0).unwrap();
        assert!((w.d() - 2.0).abs() < 1e-14);
        assert!((w.zeta() - 1.0).abs() < 1e-14);
        // Substituting back: (4+2)(1+2) = (1+2)(4+2) = 18 on both sides.
        assert!(w.constraint_residual() < 1e-12);
    }

    #[test]
    fn fractional_c_gives_the_surd_root() {
        let w = solve_d(1.0, 1.0, 0.5).unwrap();
        assert!((w.d() - 2.2f64.sqrt()).abs() < 1e-12);
        assert!((w.zeta() - 0.5 * 2.2f64.sqrt()).abs() < 1e-12);
        assert!(w.constraint_relative_residual() < 1e-12);
    }

    #[test]
    fn negative_radicand_is_rejected() {
        assert!(matches!(
            solve_d(1.0, 1.0, 2.0),
            Err(VertexError::NoPositiveRoot { radicand }) if radicand < 0.0
        ));
    }

    #[test]
    fn zero_inputs_are_rejected() {
        assert!(matches!(
            solve_d(0.0, 1.0, 1.0),
            Err(VertexError::ZeroWeight { label: "a" })
        ));
        assert!(matches!(
            VertexWeights::new(1.0, 1.0, 0.0, 1.0),
            Err(VertexError::ZeroWeight { label: "c" })
        ));
    }

    #[test]
    fn vanishing_denominator_is_reported() {
        // c² + ab = 1 + (−1)·1 = 0.
        assert!(matches!(
            solve_d(-1.0, 1.0, 1.0),
            Err(VertexError::SingularDenominator)
        ));
    }

    #[test]
    fn off_manifold_quadruples_are_rejected() {
        assert!(matches!(
            VertexWeights::new(1.0, 1.0, 1.0, 1.01),
            Err(VertexError::ConstraintViolated { .. })
        ));
    }

    #[test]
    fn unchecked_admits_the_six_vertex_limit() {
        // (1, 1, √3, 0) sits on the closure of the manifold — the constraint
        // holds with d = 0 — but `new` demands nonzero weights.
        assert!(matches!(
            VertexWeights::new(1.0, 1.0, 3.0f64.sqrt(), 0.0),
            Err(VertexError::ZeroWeight { label: "d" })
        ));
        let w = VertexWeights::unchecked(1.0, 1.0, 3.0f64.sqrt(), 0.0);
        assert_eq!(w.d(), 0.0);
        assert_eq!(w.zeta(), 0.0);
        assert!(w.constraint_relative_residual() < 1e-15);
    }

    #[test]
    fn sampled_quadruples_sit_on_the_manifold() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut found = 0;
        for _ in 0..200 {
            if let Some(w) = sample_constrained(&mut rng) {
                found += 1;
                assert!(w.constraint_relative_residual() < 1e-10);
                for v in [w.a(), w.b(), w.c(), w.d()] {
                    assert!(v > 0.0);
                }
            }
        }
        assert!(found >= 50, "only {found} of 200 triples admitted a root");
    }

    #[test]
    fn unconstrained_samples_violate_by_margin() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let w = sample_unconstrained(&mut rng);
            assert!(w.constraint_relative_residual() > 1e-3);
        }
    }
}
