//! The special transfer-matrix eigenvalue Θₙ = (a+b)^(2n+1): spectral
//! containment with exact double degeneracy, cross-checks against the
//! zero-energy states, the representative matrix element, the combinatorial
//! word sum behind it, and the Perron–Frobenius largest-eigenvalue check.

use super::transfer::{transfer_matrix, transfer_matrix_free};
use super::{VertexError, VertexWeights};
use crate::hilbert::{translate, SpinState, StateVector};
use crate::spectral::{cluster, eig_dense_general_values, power_iteration};
use crate::susy::{ground_energy, representative_states, zero_energy_states, ZeroEnergyOutcome};
use crate::{hilbert, tolerance};
use num_complex::Complex64;
use serde::Serialize;

/// Where Θ = (a+b)^L sits in the dense spectrum of T.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ContainmentReport {
    pub theta: f64,
    /// Centre of the eigenvalue cluster matched to Θ.
    pub matched: Complex64,
    /// |matched − Θ|.
    pub distance: f64,
    pub multiplicity: usize,
    /// Distance from the matched cluster to its nearest neighbour, in units
    /// of the cluster radius.
    pub separation: f64,
}

/// Checks that (a+b)^L lies in spec(T) within the relative cluster radius,
/// with multiplicity exactly 2 and the cluster isolated from the rest of the
/// spectrum. Works for any weights the dense solver can handle, including
/// the six-vertex limit d = 0.
pub fn spectral_containment(
    w: &VertexWeights,
    length: usize,
) -> Result<ContainmentReport, VertexError> {
    let theta = (w.a() + w.b()).powi(length as i32);
    let t = transfer_matrix(w, length)?;
    let spectrum = eig_dense_general_values(&t)?;
    let radius = tolerance::CLUSTER_RADIUS * theta.abs().max(f64::MIN_POSITIVE);
    let clusters = cluster(&spectrum.eigenvalues, radius);
    let target = Complex64::new(theta, 0.0);
    let (index, matched) = clusters
        .iter()
        .enumerate()
        .min_by(|(_, x), (_, y)| {
            (x.value - target)
                .norm()
                .total_cmp(&(y.value - target).norm())
        })
        .map(|(i, c)| (i, *c))
        .expect("spectrum of a nonempty matrix has clusters");
    let distance = (matched.value - target).norm();
    if distance > radius {
        return Err(VertexError::ResidualTooLarge {
            check: "theta containment",
            residual: distance,
            bound: radius,
        });
    }
    if matched.multiplicity != 2 {
        return Err(VertexError::UnexpectedMultiplicity {
            expected: 2,
            found: matched.multiplicity,
        });
    }
    let separation = clusters
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != index)
        .map(|(_, c)| (c.value - matched.value).norm() / radius)
        .fold(f64::INFINITY, f64::min);
    if separation <= tolerance::CLUSTER_SEPARATION {
        return Err(VertexError::ClusterNotSeparated {
            gap: separation,
            required: tolerance::CLUSTER_SEPARATION,
        });
    }
    Ok(ContainmentReport {
        theta,
        matched: matched.value,
        distance,
        multiplicity: matched.multiplicity,
        separation,
    })
}

/// Full Stroganov verification at L = 2n+1: spectral containment plus the
/// identification of the Θₙ eigenspace with the supersymmetric zero-energy
/// pair, including the translation and XYZ-energy residuals of both states.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct StroganovReport {
    pub containment: ContainmentReport,
    /// ‖Tψ − Θψ‖ / |Θ| for the parity-even and parity-odd states.
    pub transfer_residual: f64,
    pub transfer_residual_bar: f64,
    /// ‖Sψ − ψ‖ for both states.
    pub translation_residual: f64,
    pub translation_residual_bar: f64,
    /// ‖H_XYZ ψ − E₀ψ‖ / max(1, |E₀|) for both states.
    pub energy_residual: f64,
    pub energy_residual_bar: f64,
    pub ground_energy: f64,
}

pub fn stroganov_check(w: &VertexWeights, n: usize) -> Result<StroganovReport, VertexError> {
    let length = 2 * n + 1;
    let containment = spectral_containment(w, length)?;
    let theta = containment.theta;

    let pair = match zero_energy_states(length, w.zeta())? {
        ZeroEnergyOutcome::Pair(pair) => pair,
        ZeroEnergyOutcome::Empty { .. } => unreachable!("odd length always yields a pair"),
    };
    let t = transfer_matrix(w, length)?;
    let energy = ground_energy(length, w.zeta());
    let (jx, jy, jz) = hilbert::couplings_from_zeta(w.zeta());
    let h = hilbert::xyz_hamiltonian(length, jx, jy, jz)?;

    let theta_z = Complex64::new(theta, 0.0);
    let energy_z = Complex64::new(energy, 0.0);
    let residuals = |psi: &StateVector| -> Result<(f64, f64, f64), VertexError> {
        let mut t_res = t.apply(psi)?;
        t_res.add_scaled(-theta_z, psi);
        let mut s_res = translate(psi);
        s_res.add_scaled(-Complex64::ONE, psi);
        let mut h_res = h.apply(psi)?;
        h_res.add_scaled(-energy_z, psi);
        Ok((
            t_res.norm() / theta.abs(),
            s_res.norm(),
            h_res.norm() / energy.abs().max(1.0),
        ))
    };
    let (transfer_residual, translation_residual, energy_residual) = residuals(&pair.psi)?;
    let (transfer_residual_bar, translation_residual_bar, energy_residual_bar) =
        residuals(&pair.psi_bar)?;

    for (check, value) in [
        ("transfer eigenvalue", transfer_residual),
        ("transfer eigenvalue (reversed state)", transfer_residual_bar),
        ("translation invariance", translation_residual),
        ("translation invariance (reversed state)", translation_residual_bar),
        ("ground energy", energy_residual),
        ("ground energy (reversed state)", energy_residual_bar),
    ] {
        if value > tolerance::STROGANOV_RESIDUAL {
            return Err(VertexError::ResidualTooLarge {
                check,
                residual: value,
                bound: tolerance::STROGANOV_RESIDUAL,
            });
        }
    }

    Ok(StroganovReport {
        containment,
        transfer_residual,
        transfer_residual_bar,
        translation_residual,
        translation_residual_bar,
        energy_residual,
        energy_residual_bar,
        ground_energy: energy,
    })
}

/// The representative matrix element ⟨Φ̄ₙ(ζ⁻¹)|T|↑…↑⟩ and the Rayleigh
/// quotient of T on the reversed zero-energy state; both must reproduce
/// Θₙ = (a+b)^(2n+1).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ThetaElementReport {
    pub element: f64,
    pub expected: f64,
    pub relative_error: f64,
    pub rayleigh: f64,
    pub rayleigh_relative_error: f64,
}

pub fn theta_matrix_element(
    w: &VertexWeights,
    n: usize,
) -> Result<ThetaElementReport, VertexError> {
    let sum = w.a() + w.b();
    if sum.abs() < 1e-12 * w.site_scale() {
        return Err(VertexError::DegenerateWeightSum);
    }
    let length = 2 * n + 1;
    let expected = sum.powi(length as i32);
    let zeta = w.zeta();

    let representatives = representative_states(n, 1.0 / zeta)?;
    let t = transfer_matrix_free(w, length)?;
    let all_up = StateVector::basis(SpinState::new(length, 0)?);
    let element = representatives.phi_bar.dot(&t.apply(&all_up)?).re;
    let relative_error = (element - expected).abs() / expected.abs();

    let pair = match zero_energy_states(length, zeta)? {
        ZeroEnergyOutcome::Pair(pair) => pair,
        ZeroEnergyOutcome::Empty { .. } => unreachable!("odd length always yields a pair"),
    };
    let rayleigh =
        pair.psi_bar.dot(&t.apply(&pair.psi_bar)?).re / pair.psi_bar.norm_sq();
    let rayleigh_relative_error = (rayleigh - expected).abs() / expected.abs();

    for (check, value) in [
        ("representative matrix element", relative_error),
        ("Rayleigh quotient", rayleigh_relative_error),
    ] {
        if value > tolerance::MATRIX_ELEMENT {
            return Err(VertexError::ResidualTooLarge {
                check,
                residual: value,
                bound: tolerance::MATRIX_ELEMENT,
            });
        }
    }

    Ok(ThetaElementReport {
        element,
        expected,
        relative_error,
        rayleigh,
        rayleigh_relative_error,
    })
}

/// A letter of the two-letter weight alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WordLetter {
    A,
    B,
}

/// A word over {a, b} with its weight — the product of the letter values.
#[derive(Clone, Debug, Serialize)]
pub struct WordWeight {
    pub word: Vec<WordLetter>,
    pub weight: f64,
}

impl WordWeight {
    pub fn new(word: Vec<WordLetter>, a: f64, b: f64) -> Self {
        let weight = word
            .iter()
            .map(|l| match l {
                WordLetter::A => a,
                WordLetter::B => b,
            })
            .product();
        Self { word, weight }
    }
}

/// All 2^(2n+1) words of length 2n+1, with weights evaluated at (a, b).
pub fn all_words(a: f64, b: f64, n: usize) -> Vec<WordWeight> {
    let length = 2 * n + 1;
    (0..1usize << length)
        .map(|mask| {
            let word = (0..length)
                .map(|p| {
                    if mask >> p & 1 == 0 {
                        WordLetter::A
                    } else {
                        WordLetter::B
                    }
                })
                .collect();
            WordWeight::new(word, a, b)
        })
        .collect()
}

/// The literal evaluation of the Θₙ sum: the two pure powers plus, for every
/// m and every position tuple x₁ < ⋯ < x₂ₘ in {1, …, 2n+1}, the two
/// alternating gap products α and δ.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct WordSumReport {
    pub tuple_sum: f64,
    pub expected: f64,
    pub relative_error: f64,
    /// Number of (α, δ) position tuples summed; equals 2^(2n) − 1.
    pub tuples: usize,
}

/// Total exponent carried by the first letter in α(x₁,…,x₂ₘ) =
/// a^(x₂−x₁) b^(x₃−x₂) ⋯ a^(x₂ₘ−x₂ₘ₋₁) b^(2n+1−(x₂ₘ−x₁)); the second letter
/// carries the rest of the 2n+1, and δ swaps the two.
fn alternating_exponent(x: &[usize]) -> usize {
    (0..x.len() - 1).step_by(2).map(|i| x[i + 1] - x[i]).sum()
}

/// Neumaier's compensated summation; the compensation term also catches
/// summands that exceed the running sum.
#[derive(Clone, Copy, Debug, Default)]
struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    fn add(&mut self, term: f64) {
        let next = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.compensation += (self.sum - next) + term;
        } else {
            self.compensation += (term - next) + self.sum;
        }
        self.sum = next;
    }

    fn value(self) -> f64 {
        self.sum + self.compensation
    }
}

/// Advances `x` to the next k-combination of {1, …, length} in lexicographic
/// order; false once exhausted.
fn next_combination(x: &mut [usize], length: usize) -> bool {
    let k = x.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if x[i] < length - (k - 1 - i) {
            x[i] += 1;
            for j in i + 1..k {
                x[j] = x[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub fn word_sum(a: f64, b: f64, n: usize) -> WordSumReport {
    let length = 2 * n + 1;
    let pow_a: Vec<f64> = (0..=length).map(|p| a.powi(p as i32)).collect();
    let pow_b: Vec<f64> = (0..=length).map(|p| b.powi(p as i32)).collect();
    let mut total = CompensatedSum::default();
    total.add(pow_a[length]);
    total.add(pow_b[length]);
    let mut tuples = 0usize;
    for m in 1..=n {
        let k = 2 * m;
        let mut x: Vec<usize> = (1..=k).collect();
        loop {
            let p = alternating_exponent(&x);
            total.add(pow_a[p] * pow_b[length - p]);
            total.add(pow_a[length - p] * pow_b[p]);
            tuples += 1;
            if !next_combination(&mut x, length) {
                break;
            }
        }
    }
    let total = total.value();
    let expected = (a + b).powi(length as i32);
    WordSumReport {
        tuple_sum: total,
        expected,
        relative_error: (total - expected).abs() / expected.abs().max(f64::MIN_POSITIVE),
        tuples,
    }
}

/// Power-iteration results for one spin-parity sector of the transfer
/// matrix.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SectorLeading {
    pub eigenvalue: f64,
    pub relative_error: f64,
    pub iterations: usize,
    pub residual: f64,
    pub positive_components: bool,
}

/// Perron–Frobenius verification that Θₙ is the largest transfer-matrix
/// eigenvalue for strictly positive weights, sector by sector.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LargestEigenvalueReport {
    pub expected: f64,
    pub even_sector: SectorLeading,
    pub odd_sector: SectorLeading,
    /// |ln(λ)/L − ln(a+b)| maximised over the two sectors.
    pub free_energy_error: f64,
}

fn sector_leading(
    w: &VertexWeights,
    length: usize,
    parity: i32,
    expected: f64,
    max_iterations: usize,
) -> Result<SectorLeading, VertexError> {
    let dim = 1usize << length;
    let codes: Vec<usize> = (0..dim)
        .filter(|code| {
            let ups = length as u32 - (*code as u64).count_ones();
            (if ups % 2 == 0 { 1 } else { -1 }) == parity
        })
        .collect();
    let t = transfer_matrix_free(w, length)?;
    let embed_apply = |coords: &[Complex64]| -> Vec<Complex64> {
        let mut full = StateVector::zero(length).expect("checked length");
        for (i, &code) in codes.iter().enumerate() {
            full.amplitudes_mut()[code] = coords[i];
        }
        let image = t.apply(&full).expect("transfer apply is total");
        codes.iter().map(|&code| image.amplitudes()[code]).collect()
    };
    let start = vec![Complex64::ONE; codes.len()];
    let outcome = power_iteration(
        &embed_apply,
        codes.len(),
        Some(&start),
        max_iterations,
        1e-11,
        0x0854_5122,
    )?;
    let eigenvalue = outcome.eigenvalue.re;
    let relative_error = (eigenvalue - expected).abs() / expected.abs();
    let max_abs = outcome
        .vector
        .iter()
        .map(|z| z.norm())
        .fold(0.0f64, f64::max);
    let positive_components = outcome
        .vector
        .iter()
        .all(|z| z.re > 0.0 && z.im.abs() < 1e-12 * max_abs);
    if relative_error > tolerance::LARGEST_EIGENVALUE {
        return Err(VertexError::ResidualTooLarge {
            check: "sector-leading eigenvalue",
            residual: relative_error,
            bound: tolerance::LARGEST_EIGENVALUE,
        });
    }
    if !positive_components {
        return Err(VertexError::ResidualTooLarge {
            check: "Perron vector positivity",
            residual: 1.0,
            bound: 0.0,
        });
    }
    Ok(SectorLeading {
        eigenvalue,
        relative_error,
        iterations: outcome.iterations,
        residual: outcome.residual,
        positive_components,
    })
}

pub fn largest_eigenvalue_check(
    w: &VertexWeights,
    n: usize,
    max_iterations: usize,
) -> Result<LargestEigenvalueReport, VertexError> {
    for (label, value) in [("a", w.a()), ("b", w.b()), ("c", w.c()), ("d", w.d())] {
        if value <= 0.0 {
            return Err(VertexError::NotPositive { label, value });
        }
    }
    let length = 2 * n + 1;
    let expected = (w.a() + w.b()).powi(length as i32);
    let even_sector = sector_leading(w, length, 1, expected, max_iterations)?;
    let odd_sector = sector_leading(w, length, -1, expected, max_iterations)?;
    let log_target = (w.a() + w.b()).ln();
    let free_energy_error = [even_sector.eigenvalue, odd_sector.eigenvalue]
        .iter()
        .map(|lambda| (lambda.ln() / length as f64 - log_target).abs())
        .fold(0.0f64, f64::max);
    Ok(LargestEigenvalueReport {
        expected,
        even_sector,
        odd_sector,
        free_energy_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex::solve_d;

    fn ones() -> VertexWeights {
        VertexWeights::new(1.0, 1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn symmetric_point_has_the_doubly_degenerate_eight() {
        let report = stroganov_check(&ones(), 1).unwrap();
        assert!((report.containment.theta - 8.0).abs() < 1e-12);
        assert_eq!(report.containment.multiplicity, 2);
        assert!(report.transfer_residual < 1e-10);
        assert!(report.transfer_residual_bar < 1e-10);
    }

    #[test]
    fn asymmetric_quadruple_reaches_three_to_the_fifth() {
        let w = solve_d(2.0, 1.0, 1.0).unwrap();
        let report = stroganov_check(&w, 2).unwrap();
        assert!((report.containment.theta - 243.0).abs() < 1e-9);
        assert_eq!(report.containment.multiplicity, 2);
    }

    #[test]
    fn six_vertex_limit_keeps_the_eigenvalue() {
        let w = VertexWeights::unchecked(1.0, 1.0, 3.0f64.sqrt(), 0.0);
        let report = spectral_containment(&w, 3).unwrap();
        assert!((report.theta - 8.0).abs() < 1e-12);
        assert_eq!(report.multiplicity, 2);
    }

    #[test]
    fn matrix_element_reproduces_theta() {
        let cases = [
            (ones(), 1, 8.0),
            (solve_d(2.0, 1.0, 1.0).unwrap(), 2, 243.0),
            (solve_d(1.0, 1.0, 0.5).unwrap(), 1, 8.0),
        ];
        for (w, n, expected) in cases {
            let report = theta_matrix_element(&w, n).unwrap();
            assert!(
                (report.element - expected).abs() < 1e-10 * expected,
                "⟨Φ̄|T|↑…↑⟩ = {} ≠ {expected}",
                report.element
            );
            assert!(report.rayleigh_relative_error < 1e-10);
        }
    }

    #[test]
    fn word_sum_is_the_binomial_power() {
        let report = word_sum(1.0, 1.0, 1);
        assert_eq!(report.tuple_sum, 8.0);
        assert_eq!(report.tuples, 3);

        let report = word_sum(2.0, 1.0, 1);
        assert!((report.tuple_sum - 27.0).abs() < 1e-12);

        let report = word_sum(1.5, 0.25, 3);
        assert!(report.relative_error < 1e-12);
        assert_eq!(report.tuples, (1 << 6) - 1);
    }

    #[test]
    fn word_enumeration_agrees_with_the_tuple_sum() {
        for (a, b, n) in [(1.0, 1.0, 1), (2.0, 1.0, 2), (1.5, -0.25, 3), (0.3, 2.7, 4)] {
            let words = all_words(a, b, n);
            assert_eq!(words.len(), 1 << (2 * n + 1));
            let direct: f64 = words.iter().map(|w| w.weight).sum();
            let report = word_sum(a, b, n);
            let scale = report.expected.abs().max(direct.abs()).max(1.0);
            assert!(
                (direct - report.tuple_sum).abs() < 1e-12 * scale,
                "enumeration {direct} vs tuple sum {} at (a={a}, b={b}, n={n})",
                report.tuple_sum
            );
        }
    }

    #[test]
    fn word_weights_multiply_letter_values() {
        let words = all_words(2.0, 3.0, 1);
        let aab = words
            .iter()
            .find(|w| w.word == vec![WordLetter::A, WordLetter::A, WordLetter::B])
            .unwrap();
        assert_eq!(aab.weight, 12.0);
    }

    #[test]
    fn positive_weights_put_theta_on_top_of_both_sectors() {
        let report = largest_eigenvalue_check(&ones(), 1, 10_000).unwrap();
        assert!((report.even_sector.eigenvalue - 8.0).abs() < 1e-8 * 8.0);
        assert!((report.odd_sector.eigenvalue - 8.0).abs() < 1e-8 * 8.0);
        assert!(report.even_sector.positive_components);
        assert!(report.free_energy_error < 1e-8);

        let w = solve_d(2.0, 1.0, 1.0).unwrap();
        let report = largest_eigenvalue_check(&w, 2, 10_000).unwrap();
        assert!((report.even_sector.eigenvalue - 243.0).abs() < 1e-8 * 243.0);
        assert!((report.odd_sector.eigenvalue - 243.0).abs() < 1e-8 * 243.0);
    }

    #[test]
    fn nonpositive_weights_are_rejected_by_the_perron_check() {
        let w = VertexWeights::unchecked(1.0, 1.0, 3.0f64.sqrt(), 0.0);
        assert!(matches!(
            largest_eigenvalue_check(&w, 1, 100),
            Err(VertexError::NotPositive { label: "d", .. })
        ));
    }

    #[test]
    fn degenerate_weight_sum_is_reported() {
        let w = VertexWeights::unchecked(1.0, -1.0, 0.5, 0.5);
        assert!(matches!(
            theta_matrix_element(&w, 1),
            Err(VertexError::DegenerateWeightSum)
        ));
    }
}
