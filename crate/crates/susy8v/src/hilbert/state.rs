//! Basis states and state vectors of the L-site spin-1/2 chain.
//!
//! Basis states are encoded as unsigned integers: bit j−1 of the code holds
//! site j, with a set bit meaning spin down. Site 1 is the leftmost symbol
//! in the label form "↑↓↑…".

use super::HilbertError;
use num_complex::Complex64;
use rand::Rng;

/// Hard cap on chain length: 2^26 complex amplitudes is a gigabyte, well
/// past the desk scale this crate targets.
pub const MAX_SITES: usize = 26;

/// A single basis state of the L-site chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpinState {
    length: usize,
    code: u64,
}

impl SpinState {
    /// Builds the basis state with the given bit code.
    pub fn new(length: usize, code: u64) -> Result<Self, HilbertError> {
        check_length(length)?;
        if code >= (1 << length) {
            return Err(HilbertError::CodeOutOfRange { code, length });
        }
        Ok(Self { length, code })
    }

    /// Parses a label such as "↑↓↑" or "udu" (site 1 first).
    pub fn from_label(label: &str) -> Result<Self, HilbertError> {
        let mut code = 0u64;
        let mut length = 0usize;
        for ch in label.chars() {
            let bit = match ch {
                '↑' | 'u' | 'U' => 0u64,
                '↓' | 'd' | 'D' => 1u64,
                other => return Err(HilbertError::BadLabel(other)),
            };
            if length >= MAX_SITES {
                return Err(HilbertError::LengthOutOfRange(length + 1));
            }
            code |= bit << length;
            length += 1;
        }
        check_length(length)?;
        Ok(Self { length, code })
    }

    /// Label form "s₁s₂…s_L" with arrows.
    pub fn label(&self) -> String {
        (0..self.length)
            .map(|j| if self.code >> j & 1 == 1 { '↓' } else { '↑' })
            .collect()
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn code(&self) -> u64 {
        self.code
    }

    /// Number of down spins (set bits).
    pub fn down_count(&self) -> u32 {
        self.code.count_ones()
    }

    pub fn up_count(&self) -> u32 {
        self.length as u32 - self.down_count()
    }

    /// One-site cyclic shift: |s₁…s_L⟩ → |s_L s₁…s_{L−1}⟩.
    pub fn translated(&self) -> Self {
        Self {
            length: self.length,
            code: translate_code(self.code, self.length),
        }
    }

    /// All spins flipped.
    pub fn reversed(&self) -> Self {
        Self {
            length: self.length,
            code: !self.code & mask(self.length),
        }
    }
}

/// Cyclic shift on the raw code: new site 1 is old site L.
#[inline]
pub(crate) fn translate_code(code: u64, length: usize) -> u64 {
    (code << 1 | code >> (length - 1)) & mask(length)
}

#[inline]
pub(crate) fn mask(length: usize) -> u64 {
    (1u64 << length) - 1
}

pub(crate) fn check_length(length: usize) -> Result<(), HilbertError> {
    if length == 0 || length > MAX_SITES {
        Err(HilbertError::LengthOutOfRange(length))
    } else {
        Ok(())
    }
}

/// A vector in the 2^L-dimensional chain Hilbert space.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    length: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// The zero vector on L sites.
    pub fn zero(length: usize) -> Result<Self, HilbertError> {
        check_length(length)?;
        Ok(Self {
            length,
            amplitudes: vec![Complex64::ZERO; 1 << length],
        })
    }

    /// The canonical basis vector for a single spin configuration.
    pub fn basis(state: SpinState) -> Self {
        let mut amplitudes = vec![Complex64::ZERO; 1 << state.length()];
        amplitudes[state.code() as usize] = Complex64::ONE;
        Self {
            length: state.length(),
            amplitudes,
        }
    }

    /// Wraps an amplitude vector; its dimension must be 2^length.
    pub fn from_amplitudes(
        length: usize,
        amplitudes: Vec<Complex64>,
    ) -> Result<Self, HilbertError> {
        check_length(length)?;
        if amplitudes.len() != 1 << length {
            return Err(HilbertError::DimensionMismatch {
                got: amplitudes.len(),
                expected: 1 << length,
            });
        }
        Ok(Self { length, amplitudes })
    }

    /// A random unit vector with amplitudes drawn uniformly from the
    /// complex square [−1,1] × [−1,1]i before normalisation.
    pub fn random<R: Rng>(length: usize, rng: &mut R) -> Result<Self, HilbertError> {
        check_length(length)?;
        let amplitudes: Vec<Complex64> = (0..1usize << length)
            .map(|_| {
                Complex64::new(
                    2.0 * rng.random::<f64>() - 1.0,
                    2.0 * rng.random::<f64>() - 1.0,
                )
            })
            .collect();
        let mut psi = Self { length, amplitudes };
        let n = psi.norm();
        psi.scale(Complex64::new(1.0 / n, 0.0));
        Ok(psi)
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    /// Amplitude of one basis state.
    pub fn amplitude(&self, code: u64) -> Complex64 {
        self.amplitudes[code as usize]
    }

    /// Inner product ⟨self|other⟩, conjugate-linear in `self`.
    pub fn dot(&self, other: &Self) -> Complex64 {
        debug_assert_eq!(self.length, other.length);
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// In-place scaling by a complex factor.
    pub fn scale(&mut self, factor: Complex64) {
        for a in &mut self.amplitudes {
            *a *= factor;
        }
    }

    /// self ← self + factor·other.
    pub fn add_scaled(&mut self, factor: Complex64, other: &Self) {
        debug_assert_eq!(self.length, other.length);
        for (a, b) in self.amplitudes.iter_mut().zip(&other.amplitudes) {
            *a += factor * b;
        }
    }

    /// A fresh copy scaled to unit norm (unchanged if the norm is zero).
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        let mut out = self.clone();
        if n > 0.0 {
            out.scale(Complex64::new(1.0 / n, 0.0));
        }
        out
    }

    /// ‖self − other‖.
    pub fn distance(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.length, other.length);
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn label_roundtrip() {
        for label in ["↑", "↑↓↓", "↓↑↓↑↓"] {
            let s = SpinState::from_label(label).unwrap();
            assert_eq!(s.label(), label);
        }
        let ascii = SpinState::from_label("udu").unwrap();
        assert_eq!(ascii.label(), "↑↓↑");
        assert_eq!(ascii.code(), 0b010);
    }

    #[test]
    fn label_rejects_garbage() {
        assert!(matches!(
            SpinState::from_label("↑x↓"),
            Err(HilbertError::BadLabel('x'))
        ));
        assert!(matches!(
            SpinState::from_label(""),
            Err(HilbertError::LengthOutOfRange(0))
        ));
    }

    #[test]
    fn code_bounds_are_enforced() {
        assert!(SpinState::new(3, 7).is_ok());
        assert!(matches!(
            SpinState::new(3, 8),
            Err(HilbertError::CodeOutOfRange { .. })
        ));
        assert!(SpinState::new(0, 0).is_err());
        assert!(SpinState::new(MAX_SITES + 1, 0).is_err());
    }

    #[test]
    fn translation_shifts_the_last_site_to_the_front() {
        let s = SpinState::from_label("↑↓↓").unwrap();
        assert_eq!(s.translated().label(), "↓↑↓");
        let mut t = s;
        for _ in 0..3 {
            t = t.translated();
        }
        assert_eq!(t, s);
    }

    #[test]
    fn reversal_flips_every_site() {
        let s = SpinState::from_label("↑↓↑").unwrap();
        assert_eq!(s.reversed().label(), "↓↑↓");
        assert_eq!(s.reversed().reversed(), s);
    }

    #[test]
    fn random_state_is_normalised() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let psi = StateVector::random(5, &mut rng).unwrap();
        assert!((psi.norm() - 1.0).abs() < 1e-12);
        let phi = StateVector::random(5, &mut rng).unwrap();
        assert!(psi.distance(&phi) > 1e-3);
    }

    #[test]
    fn dot_is_conjugate_linear_in_the_left_slot() {
        let mut psi = StateVector::zero(1).unwrap();
        psi.amplitudes_mut()[0] = Complex64::new(0.0, 1.0);
        let mut phi = StateVector::zero(1).unwrap();
        phi.amplitudes_mut()[0] = Complex64::new(2.0, 0.0);
        assert_eq!(psi.dot(&phi), Complex64::new(0.0, -2.0));
    }

    #[test]
    fn from_amplitudes_checks_dimension() {
        assert!(matches!(
            StateVector::from_amplitudes(2, vec![Complex64::ZERO; 3]),
            Err(HilbertError::DimensionMismatch { got: 3, expected: 4 })
        ));
    }
}
