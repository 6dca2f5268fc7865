//! Numerical thresholds for every verification check, in one place.
//!
//! Each constant documents what it bounds and why the value is safe at desk
//! scale (L ≤ 15, double precision). Residuals are relative unless stated
//! otherwise: operator identities are normalised by the scale of the
//! operators involved, transfer-matrix residuals by (|a|+|b|+|c|+|d|)^L, so
//! thresholds stay meaningful when weights are far from unit size.
//!
//! [`Tolerances`] carries the runtime-adjustable copy; `--tol key=value`
//! overrides land there via [`Tolerances::set`].

use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

// ═══════════════════════════════════════════════════════════════════════
// Algebraic identities (exact statements, residual = rounding noise only)
// ═══════════════════════════════════════════════════════════════════════

/// Relative residual of the weight constraint (a²+ab)(b²+ab) = (c²+ab)(d²+ab)
/// accepted by the checked quadruple constructor. Quadruples produced by
/// `solve_d` or the elliptic parametrisation satisfy it to ~1e-15; 1e-10
/// leaves headroom for caller-supplied weights computed less carefully.
pub const CONSTRAINT: f64 = 1e-10;

/// Default relative residual for operator identities without a dedicated
/// threshold below.
pub const IDENTITY: f64 = 1e-10;

/// Residuals of the supercharge algebra: 𝔔² = 0, 𝔔P + P𝔔 = 0, the
/// alternate-cyclic sector mapping S(𝔔ψ) = (−1)^(L+2) 𝔔ψ, and the
/// conjugation identity 𝓜(λ)𝔔(λ⁻²ζ) = 𝔔(ζ)𝓜(λ). All are exact and
/// evaluated through O(L) sparse applies, so rounding stays below 1e-13.
pub const SUSY_ALGEBRA: f64 = 1e-11;

/// Agreement of the two constructions of the boundary supercharge term,
/// S·q_L versus S⁻¹·q₁·S, on random states.
pub const Q_VARIANTS: f64 = 1e-13;

/// Transfer-matrix anticommutation ‖T𝔔 + (a+b)𝔔T‖ normalised by
/// (|a|+|b|+|c|+|d|)^(L+1)·‖ψ‖.
pub const TQ_ANTICOMMUTATION: f64 = 1e-10;

/// Scale-normalised residual of the local A-operator identity
/// R₀₂R₀₁𝔮₁ + (a+b)𝔮₁R₀₁ = A₀²R₀₁ + R₀₂A₀¹ on the constraint manifold.
pub const LOCAL_IDENTITY: f64 = 1e-12;

/// Minimum residual the local identity must show on a quadruple that
/// violates the constraint (negative control; a 1% perturbation of d
/// produces residuals around 1e-2).
pub const LOCAL_IDENTITY_VIOLATION: f64 = 1e-4;

/// Agreement between dense and matrix-free realisations of the same
/// operator, and the symmetry commutators [T,S], [T,P], [T,R], [T,Tᵀ]
/// (scale-normalised).
pub const AGREEMENT: f64 = 1e-12;

/// Scale-normalised commutator ‖[T(u), T(v)]‖ for transfer matrices from
/// one elliptic parameter set at different spectral parameters.
pub const COMMUTING_FAMILY: f64 = 1e-10;

// ═══════════════════════════════════════════════════════════════════════
// Spectral statements
// ═══════════════════════════════════════════════════════════════════════

/// Relative radius used when clustering eigenvalues: two eigenvalues join a
/// cluster when within `CLUSTER_RADIUS · |Θ|` of each other (single
/// linkage). LAPACK backward error on the 2^11-dimensional transfer matrix
/// is ~1e-12 relative, so 1e-8 is four orders above noise.
pub const CLUSTER_RADIUS: f64 = 1e-8;

/// The Θₙ cluster must be separated from the rest of the spectrum by more
/// than this multiple of the cluster radius for a multiplicity claim to
/// count.
pub const CLUSTER_SEPARATION: f64 = 10.0;

/// Residual ‖Tψ − Θₙψ‖ < `STROGANOV_RESIDUAL`·|Θₙ| for the zero-energy
/// states, establishing that the SUSY pair spans the Θₙ eigenspace.
pub const STROGANOV_RESIDUAL: f64 = 1e-10;

/// Relative error on the ground-state energy −L(3+ζ²)/4 of the XYZ chain at
/// odd L, and on its multiplicity-two eigenvalue cluster.
pub const GROUND_STATE: f64 = 1e-9;

/// Kernel membership threshold as a fraction of ‖H‖: eigenvalues of the
/// restricted Hamiltonian below `KERNEL·‖H‖` count as zero. The smallest
/// genuine nonzero eigenvalue at L ≤ 15 sits orders of magnitude above.
pub const KERNEL: f64 = 1e-9;

/// Relative agreement between Krylov and dense extremal eigenvalues where
/// both are available.
pub const KRYLOV_DENSE: f64 = 1e-9;

/// Relative accuracy target for the per-parity-sector power iteration on
/// the transfer matrix, and for the free-energy comparison −ln(a+b).
pub const LARGEST_EIGENVALUE: f64 = 1e-8;

// ═══════════════════════════════════════════════════════════════════════
// Representative and zero-energy states
// ═══════════════════════════════════════════════════════════════════════

/// Relative error on the Gram identity ⟨Φₙ(ζ⁻¹)|Φₙ(ζ)⟩ = 4ⁿ (a binomial
/// sum, exact in floating point up to rounding).
pub const REPRESENTATIVE_GRAM: f64 = 1e-12;

/// Relative error on the overlap identity νₙ = 4ⁿ λ̄ₙ.
pub const OVERLAP_IDENTITY: f64 = 1e-10;

/// Norm of the component of Ψ̄ₙ − νₙ|↑…↑⟩ orthogonal to the image of 𝔔
/// (both sides unit-normalised).
pub const DECOMPOSITION: f64 = 1e-9;

/// Residual for annihilation checks 𝔔(ζ)|Φₙ(ζ)⟩ = 0 and
/// 𝔔†(ζ)|Φₙ(ζ⁻¹)⟩ = 0, normalised by the state norm.
pub const ANNIHILATION: f64 = 1e-11;

// ═══════════════════════════════════════════════════════════════════════
// Word sums and matrix elements
// ═══════════════════════════════════════════════════════════════════════

/// Relative error on the combinatorial word sum against (a+b)^(2n+1).
pub const WORD_SUM: f64 = 1e-12;

/// Relative error on the matrix element ⟨Φ̄ₙ(ζ⁻¹)|T|↑…↑⟩ = (a+b)^(2n+1)
/// and on the Rayleigh quotient of T at the zero-energy states.
pub const MATRIX_ELEMENT: f64 = 1e-10;

// ═══════════════════════════════════════════════════════════════════════
// Elliptic parametrisation
// ═══════════════════════════════════════════════════════════════════════

/// Truncation target for the theta series: summation stops once the next
/// term falls below this relative to the running partial sum.
pub const THETA_TRUNCATION: f64 = 1e-16;

/// Relative residual of the weight constraint for quadruples built from
/// theta functions at η = π/3.
pub const ELLIPTIC_CONSTRAINT: f64 = 1e-10;

/// Relative residual of the theta-function identities for ζ = cd/(ab) and
/// for the anisotropy combination (a²+b²−c²−d²)/(2ab).
pub const ELLIPTIC_IDENTITY: f64 = 1e-11;

/// Scale-normalised Yang–Baxter residual
/// ‖R₁₂(u−v)R₁₃(u)R₂₃(v) − R₂₃(v)R₁₃(u)R₁₂(u−v)‖.
pub const YANG_BAXTER: f64 = 1e-10;

/// Scale-normalised residual of T(0) = a(0)^L · S.
pub const TRANSFER_SHIFT: f64 = 1e-10;

/// Scale-normalised residual of the logarithmic-derivative identity
/// T(0)⁻¹T′(0) = L(a′+c′)/(2a) − (b′/a)·H_XYZ, limited by the central
/// finite-difference + Richardson scheme (step 1e-4, O(h⁴) error).
pub const LOG_DERIVATIVE: f64 = 1e-7;

/// Relative error of finite-difference couplings (Jx, Jy, Jz) against their
/// closed forms (1+ζ, 1−ζ, (ζ²−1)/2) at η = π/3.
pub const COUPLINGS: f64 = 1e-9;

/// Runtime-adjustable copy of the thresholds above, keyed for `--tol`.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Tolerances {
    entries: BTreeMap<String, f64>,
}

/// Raised when an override names a threshold that does not exist.
#[derive(Debug, Error, PartialEq)]
#[error("unknown tolerance key `{0}`; see `Tolerances::keys`")]
pub struct UnknownToleranceKey(pub String);

macro_rules! tolerance_table {
    ($(($key:literal, $konst:ident)),+ $(,)?) => {
        const TABLE: &[(&str, f64)] = &[$(($key, $konst)),+];
    };
}

tolerance_table![
    ("constraint", CONSTRAINT),
    ("identity", IDENTITY),
    ("susy-algebra", SUSY_ALGEBRA),
    ("q-variants", Q_VARIANTS),
    ("tq", TQ_ANTICOMMUTATION),
    ("local-identity", LOCAL_IDENTITY),
    ("local-identity-violation", LOCAL_IDENTITY_VIOLATION),
    ("agreement", AGREEMENT),
    ("commuting-family", COMMUTING_FAMILY),
    ("cluster-radius", CLUSTER_RADIUS),
    ("cluster-separation", CLUSTER_SEPARATION),
    ("stroganov-residual", STROGANOV_RESIDUAL),
    ("ground-state", GROUND_STATE),
    ("kernel", KERNEL),
    ("krylov-dense", KRYLOV_DENSE),
    ("largest-eigenvalue", LARGEST_EIGENVALUE),
    ("representative-gram", REPRESENTATIVE_GRAM),
    ("overlap-identity", OVERLAP_IDENTITY),
    ("decomposition", DECOMPOSITION),
    ("annihilation", ANNIHILATION),
    ("word-sum", WORD_SUM),
    ("matrix-element", MATRIX_ELEMENT),
    ("theta-truncation", THETA_TRUNCATION),
    ("elliptic-constraint", ELLIPTIC_CONSTRAINT),
    ("elliptic-identity", ELLIPTIC_IDENTITY),
    ("yang-baxter", YANG_BAXTER),
    ("transfer-shift", TRANSFER_SHIFT),
    ("log-derivative", LOG_DERIVATIVE),
    ("couplings", COUPLINGS),
];

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            entries: TABLE
                .iter()
                .map(|&(k, v)| (k.to_owned(), v))
                .collect(),
        }
    }
}

impl Tolerances {
    /// Value for `key`. Panics on a key absent from the table; call sites
    /// use the literal keys above, so a miss is a programming error.
    pub fn get(&self, key: &str) -> f64 {
        *self
            .entries
            .get(key)
            .unwrap_or_else(|| panic!("tolerance key `{key}` missing from table"))
    }

    /// Overrides `key` with `value`.
    pub fn set(&mut self, key: &str, value: f64) -> Result<(), UnknownToleranceKey> {
        match self.entries.get_mut(key) {
            Some(slot) => {
                *slot = value;
                Ok(())
            }
            None => Err(UnknownToleranceKey(key.to_owned())),
        }
    }

    /// All known keys, sorted.
    pub fn keys() -> impl Iterator<Item = &'static str> {
        TABLE.iter().map(|&(k, _)| k)
    }
}
