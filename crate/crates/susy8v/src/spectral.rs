//! Eigensolvers and degeneracy detection.
//!
//! Dense Hermitian and dense general solvers cover dimensions up to 2^12
//! and 2^11 respectively (LAPACK backends: `dsyev`/`zheev` and
//! `dgeev`/`zgeev`, i.e. Hessenberg reduction plus shifted QR). Beyond
//! that, a Lanczos iteration with full reorthogonalization and deflation
//! targets extremal eigenvalues of Hermitian operators, a restarted Arnoldi
//! iteration handles general ones, and plain power iteration serves
//! Perron–Frobenius arguments. Degeneracies are decided by single-linkage
//! clustering with an explicit radius, never by exact comparison.
//!
//! Real-entry inputs are routed to the real LAPACK drivers: every operator
//! in the verification suites is real, and `dgeev` at dimension 2048 runs
//! about four times faster than `zgeev`.

use crate::hilbert::{HilbertError, LinearMap, StateVector};
use ndarray::Array2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Dense Hermitian diagonalization budget (dimension).
pub const DENSE_HERMITIAN_LIMIT: usize = 1 << 12;
/// Dense general-spectrum budget (dimension).
pub const DENSE_GENERAL_LIMIT: usize = 1 << 11;

/// How an extremal-eigenvalue search orders candidates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectralEnd {
    /// Largest real part.
    Largest,
    /// Smallest real part.
    Smallest,
    /// Largest magnitude.
    LargestMagnitude,
}

/// Solver that produced a [`SpectrumResult`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Method {
    DenseHermitian,
    DenseGeneral,
    KrylovExtremal,
    PowerIteration,
}

/// A degeneracy cluster: representative value (centroid) and multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct Cluster {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// Eigenvalues (sorted by real part descending, imaginary part breaking
/// ties), their degeneracy clusters, and the worst verified residual.
#[derive(Clone, Debug)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<Complex64>,
    pub clusters: Vec<Cluster>,
    pub method: Method,
    /// max‖Av − λv‖ / ‖A‖-estimate over the verified eigenpairs, or a
    /// backward-stability estimate when no eigenvectors were computed.
    pub residual_bound: f64,
    /// Columns matching `eigenvalues`, when the solver produced them.
    pub eigenvectors: Option<Array2<Complex64>>,
}

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("operator is not Hermitian: deviation {deviation:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },
    #[error("dimension {dim} exceeds the {budget} budget of this solver")]
    DimensionOverBudget { dim: usize, budget: usize },
    #[error("operator must be square for eigendecomposition, got {rows}×{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("requested {k} eigenpairs from a dimension-{dim} operator")]
    KTooLarge { k: usize, dim: usize },
    #[error("no convergence after {iterations} iterations (best residual {residual:.3e})")]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("Krylov space exhausted after {found} of {requested} requested eigenpairs")]
    Breakdown {
        found: usize,
        requested: usize,
        partial: Box<SpectrumResult>,
    },
    #[error("subspace columns are not orthonormal (deviation {0:.3e})")]
    NotOrthonormal(f64),
    #[error("linear-algebra backend failure: {0}")]
    Backend(String),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
}

// ═══════════════════════════════════════════════════════════════════════
// Subspace restriction
// ═══════════════════════════════════════════════════════════════════════

/// An orthonormal set of columns spanning an invariant subspace, used to
/// restrict an operator before dense diagonalization.
pub struct Subspace {
    columns: Array2<Complex64>,
}

impl Subspace {
    /// Wraps orthonormal columns (full dimension × subspace dimension).
    pub fn from_columns(columns: Array2<Complex64>) -> Result<Self, SpectralError> {
        let k = columns.ncols();
        let mut deviation = 0.0f64;
        for i in 0..k {
            for j in i..k {
                let g: Complex64 = columns
                    .column(i)
                    .iter()
                    .zip(columns.column(j))
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                deviation = deviation.max((g - expected).norm());
            }
        }
        if deviation > 1e-10 {
            return Err(SpectralError::NotOrthonormal(deviation));
        }
        Ok(Self { columns })
    }

    /// Builds the subspace spanned by explicit basis vectors.
    pub fn from_vectors(vectors: &[StateVector]) -> Result<Self, SpectralError> {
        let dim = vectors.first().map_or(0, StateVector::dim);
        let mut columns = Array2::zeros((dim, vectors.len()));
        for (j, v) in vectors.iter().enumerate() {
            for (i, &a) in v.amplitudes().iter().enumerate() {
                columns[(i, j)] = a;
            }
        }
        Self::from_columns(columns)
    }

    pub fn dim_full(&self) -> usize {
        self.columns.nrows()
    }

    pub fn dim_sub(&self) -> usize {
        self.columns.ncols()
    }

    pub fn columns(&self) -> &Array2<Complex64> {
        &self.columns
    }

    /// Expands subspace coordinates into a full-space vector.
    pub fn lift(&self, coords: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(coords.len(), self.dim_sub(), "coordinate count mismatch");
        let mut out = vec![Complex64::ZERO; self.dim_full()];
        for (j, &c) in coords.iter().enumerate() {
            for (i, &b) in self.columns.column(j).iter().enumerate() {
                out[i] += c * b;
            }
        }
        out
    }
}

// ═══════════════════════════════════════════════════════════════════════
// Dense solvers
// ═══════════════════════════════════════════════════════════════════════

/// Full spectrum and orthonormal eigenvectors of a Hermitian operator,
/// optionally restricted to an invariant subspace first. The restriction is
/// only meaningful when the subspace is invariant under `op`; the caller
/// owns that guarantee, and the residual bound refers to the restricted
/// matrix. With a subspace, the returned eigenvectors are in subspace
/// coordinates — use [`Subspace::lift`] to expand them.
pub fn eig_dense_hermitian(
    op: &LinearMap,
    subspace: Option<&Subspace>,
) -> Result<SpectrumResult, SpectralError> {
    if op.dim_in() != op.dim_out() {
        return Err(SpectralError::NotSquare {
            rows: op.dim_out(),
            cols: op.dim_in(),
        });
    }
    let matrix = match subspace {
        None => {
            let dim = op.dim_in();
            if dim > DENSE_HERMITIAN_LIMIT {
                return Err(SpectralError::DimensionOverBudget {
                    dim,
                    budget: DENSE_HERMITIAN_LIMIT,
                });
            }
            op.to_dense(DENSE_HERMITIAN_LIMIT)?
        }
        Some(sub) => {
            let dim = sub.dim_sub();
            if dim > DENSE_HERMITIAN_LIMIT {
                return Err(SpectralError::DimensionOverBudget {
                    dim,
                    budget: DENSE_HERMITIAN_LIMIT,
                });
            }
            restrict(op, sub)?
        }
    };

    let scale = max_abs(&matrix).max(1e-300);
    let deviation = hermitian_deviation(&matrix);
    if deviation > 1e-10 * scale {
        return Err(SpectralError::NotHermitian {
            deviation,
            tolerance: 1e-10 * scale,
        });
    }

    let (values, vectors) = eigh_backend(&matrix)?;
    let n = values.len();
    // LAPACK returns ascending order; flip to real-part descending.
    let eigenvalues: Vec<Complex64> = values
        .iter()
        .rev()
        .map(|&v| Complex64::new(v, 0.0))
        .collect();
    let mut sorted_vectors = Array2::zeros((n, n));
    for j in 0..n {
        sorted_vectors.column_mut(j).assign(&vectors.column(n - 1 - j));
    }

    let norm_est = eigenvalues
        .iter()
        .map(|z| z.norm())
        .fold(0.0f64, f64::max)
        .max(1e-300);
    let residual_bound =
        verified_residual(&matrix, &eigenvalues, &sorted_vectors) / norm_est;

    let clusters = cluster(&eigenvalues, crate::tolerance::CLUSTER_RADIUS * norm_est);
    Ok(SpectrumResult {
        eigenvalues,
        clusters,
        method: Method::DenseHermitian,
        residual_bound,
        eigenvectors: Some(sorted_vectors),
    })
}

/// Full complex spectrum of a general square operator, with right
/// eigenvectors and verified residuals.
pub fn eig_dense_general(op: &LinearMap) -> Result<SpectrumResult, SpectralError> {
    dense_general(op, true)
}

/// Eigenvalues-only variant of [`eig_dense_general`]: several times faster
/// at dimension 2^11, with a backward-stability estimate in place of a
/// measured residual bound.
pub fn eig_dense_general_values(op: &LinearMap) -> Result<SpectrumResult, SpectralError> {
    dense_general(op, false)
}

fn dense_general(op: &LinearMap, want_vectors: bool) -> Result<SpectrumResult, SpectralError> {
    if op.dim_in() != op.dim_out() {
        return Err(SpectralError::NotSquare {
            rows: op.dim_out(),
            cols: op.dim_in(),
        });
    }
    let dim = op.dim_in();
    if dim > DENSE_GENERAL_LIMIT {
        return Err(SpectralError::DimensionOverBudget {
            dim,
            budget: DENSE_GENERAL_LIMIT,
        });
    }
    let matrix = op.to_dense(DENSE_GENERAL_LIMIT)?;

    let (mut eigenvalues, vectors) = if want_vectors {
        let (vals, vecs) = eig_backend(&matrix)?;
        (vals, Some(vecs))
    } else {
        (eigvals_backend(&matrix)?, None)
    };

    let order = sort_order(&eigenvalues);
    eigenvalues = order.iter().map(|&i| eigenvalues[i]).collect();
    let vectors = vectors.map(|v| {
        let mut sorted = Array2::zeros((dim, dim));
        for (j, &i) in order.iter().enumerate() {
            sorted.column_mut(j).assign(&v.column(i));
        }
        sorted
    });

    let norm_est = eigenvalues
        .iter()
        .map(|z| z.norm())
        .fold(0.0f64, f64::max)
        .max(1e-300);
    let residual_bound = match &vectors {
        Some(v) => verified_residual(&matrix, &eigenvalues, v) / norm_est,
        // QR iteration is backward stable: eigenvalues are exact for A+E
        // with ‖E‖ ≲ n·ε·‖A‖.
        None => dim as f64 * f64::EPSILON,
    };

    let clusters = cluster(&eigenvalues, crate::tolerance::CLUSTER_RADIUS * norm_est);
    Ok(SpectrumResult {
        eigenvalues,
        clusters,
        method: Method::DenseGeneral,
        residual_bound,
        eigenvectors: vectors,
    })
}

/// B† (op B): the operator matrix in the subspace basis.
fn restrict(op: &LinearMap, sub: &Subspace) -> Result<Array2<Complex64>, SpectralError> {
    let k = sub.dim_sub();
    let length = op.length_in();
    let mut out = Array2::zeros((k, k));
    for j in 0..k {
        let col = StateVector::from_amplitudes(length, sub.columns.column(j).to_vec())?;
        let image = op.apply(&col)?;
        for i in 0..k {
            let bi = sub.columns.column(i);
            out[(i, j)] = bi
                .iter()
                .zip(image.amplitudes())
                .map(|(b, a)| b.conj() * a)
                .sum();
        }
    }
    Ok(out)
}

// ═══════════════════════════════════════════════════════════════════════
// LAPACK backends with real-input dispatch
// ═══════════════════════════════════════════════════════════════════════

fn is_real(m: &Array2<Complex64>) -> bool {
    m.iter().all(|z| z.im == 0.0)
}

fn eigh_backend(m: &Array2<Complex64>) -> Result<(Vec<f64>, Array2<Complex64>), SpectralError> {
    use ndarray_linalg::{Eigh, UPLO};
    if is_real(m) {
        let real = m.mapv(|z| z.re);
        let (vals, vecs) = real
            .eigh(UPLO::Lower)
            .map_err(|e| SpectralError::Backend(e.to_string()))?;
        Ok((vals.to_vec(), vecs.mapv(|x| Complex64::new(x, 0.0))))
    } else {
        let (vals, vecs) = m
            .eigh(UPLO::Lower)
            .map_err(|e| SpectralError::Backend(e.to_string()))?;
        // The complex backend hands back the eigenvector matrix in its
        // Fortran-layout sense; the columns of its entrywise conjugate are
        // the eigenvectors of `m`.
        Ok((vals.to_vec(), vecs.mapv(|z| z.conj())))
    }
}

fn eig_backend(m: &Array2<Complex64>) -> Result<(Vec<Complex64>, Array2<Complex64>), SpectralError> {
    use ndarray_linalg::Eig;
    if is_real(m) {
        let real = m.mapv(|z| z.re);
        let (vals, vecs) = real
            .eig()
            .map_err(|e| SpectralError::Backend(e.to_string()))?;
        Ok((vals.to_vec(), vecs))
    } else {
        let (vals, vecs) = m
            .eig()
            .map_err(|e| SpectralError::Backend(e.to_string()))?;
        Ok((vals.to_vec(), vecs))
    }
}

fn eigvals_backend(m: &Array2<Complex64>) -> Result<Vec<Complex64>, SpectralError> {
    use ndarray_linalg::EigVals;
    if is_real(m) {
        let real = m.mapv(|z| z.re);
        let vals = real
            .eigvals()
            .map_err(|e| SpectralError::Backend(e.to_string()))?;
        Ok(vals.to_vec())
    } else {
        let vals = m
            .eigvals()
            .map_err(|e| SpectralError::Backend(e.to_string()))?;
        Ok(vals.to_vec())
    }
}

fn hermitian_deviation(m: &Array2<Complex64>) -> f64 {
    let n = m.nrows();
    let mut dev = 0.0f64;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

fn max_abs(m: &Array2<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// max over sampled columns of ‖Av − λv‖ (absolute). Sampling keeps the
/// cost at a few matrix–vector products even at dimension 2^11.
fn verified_residual(
    matrix: &Array2<Complex64>,
    eigenvalues: &[Complex64],
    vectors: &Array2<Complex64>,
) -> f64 {
    let n = eigenvalues.len();
    if n == 0 {
        return 0.0;
    }
    let samples: Vec<usize> = if n <= 32 {
        (0..n).collect()
    } else {
        // Deterministic spread: both ends plus a stride through the middle.
        let mut s: Vec<usize> = (0..8).collect();
        s.extend((8..n - 8).step_by((n - 16) / 16 + 1));
        s.extend(n - 8..n);
        s
    };
    let mut worst = 0.0f64;
    for &j in &samples {
        let v = vectors.column(j);
        let av = matrix.dot(&v);
        let lam = eigenvalues[j];
        let res: f64 = av
            .iter()
            .zip(v)
            .map(|(a, x)| (a - lam * x).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let vnorm: f64 = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if vnorm > 0.0 {
            worst = worst.max(res / vnorm);
        }
    }
    worst
}

fn sort_order(values: &[Complex64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| {
        let (a, b) = (values[i], values[j]);
        b.re.partial_cmp(&a.re)
            .unwrap()
            .then(b.im.partial_cmp(&a.im).unwrap())
    });
    order
}

// ═══════════════════════════════════════════════════════════════════════
// Clustering
// ═══════════════════════════════════════════════════════════════════════

/// Single-linkage clustering on the complex plane with the given radius:
/// two values share a cluster when a chain of steps of length ≤ `tol`
/// connects them. Representatives are cluster centroids. Deterministic:
/// values are sorted before linking, clusters come out sorted like
/// eigenvalues (real part descending).
pub fn cluster(values: &[Complex64], tol: f64) -> Vec<Cluster> {
    assert!(tol > 0.0, "cluster radius must be positive");
    let n = values.len();
    if n == 0 {
        return Vec::new();
    }
    let order = {
        let mut o: Vec<usize> = (0..n).collect();
        o.sort_by(|&i, &j| {
            values[i]
                .re
                .partial_cmp(&values[j].re)
                .unwrap()
                .then(values[i].im.partial_cmp(&values[j].im).unwrap())
        });
        o
    };
    // Union-find over values sorted by real part; only pairs within `tol`
    // in real part can be within `tol` in the plane.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (pos, &i) in order.iter().enumerate() {
        for &j in order[pos + 1..].iter() {
            if values[j].re - values[i].re > tol {
                break;
            }
            if (values[i] - values[j]).norm() <= tol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut clusters: Vec<Cluster> = groups
        .into_values()
        .map(|members| {
            let sum: Complex64 = members.iter().map(|&i| values[i]).sum();
            Cluster {
                value: sum / members.len() as f64,
                multiplicity: members.len(),
            }
        })
        .collect();
    clusters.sort_by(|a, b| {
        b.value
            .re
            .partial_cmp(&a.value.re)
            .unwrap()
            .then(b.value.im.partial_cmp(&a.value.im).unwrap())
    });
    clusters
}

// ═══════════════════════════════════════════════════════════════════════
// Krylov iteration
// ═══════════════════════════════════════════════════════════════════════

/// Matrix-free operator application on raw amplitude slices.
pub type MatrixFreeApply<'a> = &'a (dyn Fn(&[Complex64]) -> Vec<Complex64> + Sync);

/// Knobs for [`krylov_extremal`].
#[derive(Clone, Copy, Debug)]
pub struct KrylovOptions {
    /// Number of extremal eigenpairs to converge.
    pub k: usize,
    /// Which end of the spectrum to chase.
    pub which: SpectralEnd,
    /// Hermitian operator: use the Lanczos three-term recurrence (with full
    /// reorthogonalization); otherwise restarted Arnoldi.
    pub symmetric: bool,
    /// Seed for the start vectors (one split per deflation round).
    pub seed: u64,
    /// Cap on the Krylov subspace dimension per sweep.
    pub max_subspace: usize,
    /// Cap on restarts per eigenpair.
    pub max_restarts: usize,
    /// Relative residual target ‖Av − λv‖ ≤ tol·‖A‖-estimate.
    pub tol: f64,
}

impl Default for KrylovOptions {
    fn default() -> Self {
        Self {
            k: 1,
            which: SpectralEnd::LargestMagnitude,
            symmetric: true,
            seed: 0x5553_5938_5600_0001,
            max_subspace: 300,
            max_restarts: 60,
            tol: 1e-10,
        }
    }
}

/// k extremal eigenpairs of a matrix-free operator. Hermitian inputs run
/// Lanczos with full reorthogonalization; deflation (each round starts
/// orthogonal to all converged eigenvectors) resolves degenerate extremal
/// eigenvalues, which a single Krylov sequence cannot see. General inputs
/// run explicitly restarted Arnoldi with locking.
pub fn krylov_extremal(
    apply: MatrixFreeApply,
    dim: usize,
    opts: &KrylovOptions,
) -> Result<SpectrumResult, SpectralError> {
    if opts.k == 0 || opts.k > dim {
        return Err(SpectralError::KTooLarge { k: opts.k, dim });
    }
    let mut locked: Vec<(Complex64, Vec<Complex64>)> = Vec::new();
    let mut norm_est: f64 = 0.0;
    for round in 0..opts.k {
        let outcome = if opts.symmetric {
            lanczos_round(apply, dim, &locked, opts, round, &mut norm_est)
        } else {
            arnoldi_round(apply, dim, &locked, opts, round, &mut norm_est)
        };
        match outcome {
            RoundOutcome::Converged(value, vector) => locked.push((value, vector)),
            RoundOutcome::SpaceExhausted => {
                let partial = assemble_krylov_result(apply, locked, norm_est);
                return Err(SpectralError::Breakdown {
                    found: partial.eigenvalues.len(),
                    requested: opts.k,
                    partial: Box::new(partial),
                });
            }
            RoundOutcome::NoConvergence { iterations, residual } => {
                return Err(SpectralError::NonConvergence { iterations, residual })
            }
            RoundOutcome::Backend(message) => return Err(SpectralError::Backend(message)),
        }
    }
    Ok(assemble_krylov_result(apply, locked, norm_est))
}

enum RoundOutcome {
    Converged(Complex64, Vec<Complex64>),
    SpaceExhausted,
    NoConvergence { iterations: usize, residual: f64 },
    Backend(String),
}

fn seeded_vector(dim: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..dim)
        .map(|_| {
            Complex64::new(
                2.0 * rng.random::<f64>() - 1.0,
                2.0 * rng.random::<f64>() - 1.0,
            )
        })
        .collect()
}

fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn vec_dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn vec_axpy(y: &mut [Complex64], alpha: Complex64, x: &[Complex64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Two-pass classical Gram–Schmidt against a set of unit vectors.
fn orthogonalize(v: &mut [Complex64], basis: &[Vec<Complex64>]) {
    for _ in 0..2 {
        for b in basis {
            let c = vec_dot(b, v);
            vec_axpy(v, -c, b);
        }
    }
}

fn pick_end(values: &[f64], which: SpectralEnd) -> usize {
    let mut best = 0usize;
    for i in 1..values.len() {
        let better = match which {
            SpectralEnd::Largest => values[i] > values[best],
            SpectralEnd::Smallest => values[i] < values[best],
            SpectralEnd::LargestMagnitude => values[i].abs() > values[best].abs(),
        };
        if better {
            best = i;
        }
    }
    best
}

fn pick_end_complex(values: &[Complex64], which: SpectralEnd) -> usize {
    let mut best = 0usize;
    for i in 1..values.len() {
        let better = match which {
            SpectralEnd::Largest => values[i].re > values[best].re,
            SpectralEnd::Smallest => values[i].re < values[best].re,
            SpectralEnd::LargestMagnitude => values[i].norm() > values[best].norm(),
        };
        if better {
            best = i;
        }
    }
    best
}

fn lanczos_round(
    apply: MatrixFreeApply,
    dim: usize,
    locked: &[(Complex64, Vec<Complex64>)],
    opts: &KrylovOptions,
    round: usize,
    norm_est: &mut f64,
) -> RoundOutcome {
    let locked_vecs: Vec<Vec<Complex64>> = locked.iter().map(|(_, v)| v.clone()).collect();
    let mut start = seeded_vector(dim, opts.seed.wrapping_add(round as u64));
    let mut total_iterations = 0usize;
    let mut best_residual = f64::INFINITY;

    for _restart in 0..opts.max_restarts {
        orthogonalize(&mut start, &locked_vecs);
        let n0 = vec_norm(&start);
        if n0 < 1e-12 {
            return RoundOutcome::SpaceExhausted;
        }
        for z in &mut start {
            *z /= n0;
        }

        let m_cap = opts.max_subspace.min(dim - locked.len());
        if m_cap == 0 {
            return RoundOutcome::SpaceExhausted;
        }
        let mut basis: Vec<Vec<Complex64>> = vec![start.clone()];
        let mut alphas: Vec<f64> = Vec::new();
        let mut betas: Vec<f64> = Vec::new();

        for j in 0..m_cap {
            total_iterations += 1;
            let mut w = apply(&basis[j]);
            let alpha = vec_dot(&basis[j], &w).re;
            alphas.push(alpha);
            vec_axpy(&mut w, Complex64::new(-alpha, 0.0), &basis[j]);
            if j > 0 {
                let beta_prev = Complex64::new(-betas[j - 1], 0.0);
                vec_axpy(&mut w, beta_prev, &basis[j - 1]);
            }
            // Full reorthogonalization against the Krylov basis and the
            // locked eigenvectors: the degenerate-eigenvalue regime is
            // exactly where ghost copies would otherwise appear.
            orthogonalize(&mut w, &basis);
            orthogonalize(&mut w, &locked_vecs);
            let beta = vec_norm(&w);

            let (theta, ritz_in_basis, residual_est) = tridiag_target(&alphas, &betas, beta, opts.which);
            *norm_est = norm_est.max(theta.abs());
            let scale = norm_est.max(1e-300);
            best_residual = best_residual.min(residual_est / scale);

            let exhausted = beta <= 1e-13 * scale;
            if residual_est <= opts.tol * scale || exhausted || j + 1 == m_cap {
                if residual_est <= opts.tol * scale || exhausted {
                    let mut x = vec![Complex64::ZERO; dim];
                    for (s, b) in ritz_in_basis.iter().zip(&basis) {
                        vec_axpy(&mut x, Complex64::new(*s, 0.0), b);
                    }
                    orthogonalize(&mut x, &locked_vecs);
                    let nx = vec_norm(&x);
                    if nx < 1e-12 {
                        return RoundOutcome::SpaceExhausted;
                    }
                    for z in &mut x {
                        *z /= nx;
                    }
                    return RoundOutcome::Converged(Complex64::new(theta, 0.0), x);
                }
                // Restart from the current best Ritz vector.
                start = vec![Complex64::ZERO; dim];
                for (s, b) in ritz_in_basis.iter().zip(&basis) {
                    vec_axpy(&mut start, Complex64::new(*s, 0.0), b);
                }
                break;
            }
            let next: Vec<Complex64> = w.iter().map(|z| z / beta).collect();
            betas.push(beta);
            basis.push(next);
        }
    }
    RoundOutcome::NoConvergence {
        iterations: total_iterations,
        residual: best_residual,
    }
}

/// Eigenpair of the current Lanczos tridiagonal closest to the requested
/// end: (Ritz value, Ritz coordinates, residual estimate |β·s_m|).
fn tridiag_target(
    alphas: &[f64],
    betas: &[f64],
    beta_next: f64,
    which: SpectralEnd,
) -> (f64, Vec<f64>, f64) {
    use ndarray_linalg::{Eigh, UPLO};
    let m = alphas.len();
    let mut t = Array2::<f64>::zeros((m, m));
    for i in 0..m {
        t[(i, i)] = alphas[i];
        if i + 1 < m {
            t[(i, i + 1)] = betas[i];
            t[(i + 1, i)] = betas[i];
        }
    }
    let (vals, vecs) = t.eigh(UPLO::Lower).expect("tridiagonal eigensolve");
    let idx = pick_end(vals.as_slice().unwrap(), which);
    let coords: Vec<f64> = vecs.column(idx).to_vec();
    let residual = beta_next * coords[m - 1].abs();
    (vals[idx], coords, residual)
}

fn arnoldi_round(
    apply: MatrixFreeApply,
    dim: usize,
    locked: &[(Complex64, Vec<Complex64>)],
    opts: &KrylovOptions,
    round: usize,
    norm_est: &mut f64,
) -> RoundOutcome {
    let locked_vecs: Vec<Vec<Complex64>> = locked.iter().map(|(_, v)| v.clone()).collect();
    let mut start = seeded_vector(dim, opts.seed.wrapping_add(0x9e37_79b9).wrapping_add(round as u64));
    let mut total_iterations = 0usize;
    let mut best_residual = f64::INFINITY;

    for _restart in 0..opts.max_restarts {
        orthogonalize(&mut start, &locked_vecs);
        let n0 = vec_norm(&start);
        if n0 < 1e-12 {
            return RoundOutcome::SpaceExhausted;
        }
        for z in &mut start {
            *z /= n0;
        }

        let m_cap = opts.max_subspace.min(dim - locked.len());
        if m_cap == 0 {
            return RoundOutcome::SpaceExhausted;
        }
        let mut basis: Vec<Vec<Complex64>> = vec![start.clone()];
        let mut h = Array2::<Complex64>::zeros((m_cap + 1, m_cap));

        for j in 0..m_cap {
            total_iterations += 1;
            let mut w = apply(&basis[j]);
            for b in &locked_vecs {
                let c = vec_dot(b, &w);
                vec_axpy(&mut w, -c, b);
            }
            for (i, b) in basis.iter().enumerate() {
                let c = vec_dot(b, &w);
                h[(i, j)] = c;
                vec_axpy(&mut w, -c, b);
            }
            // Second orthogonalization pass for stability; the corrections
            // fold into the Hessenberg entries.
            for (i, b) in basis.iter().enumerate() {
                let c = vec_dot(b, &w);
                h[(i, j)] += c;
                vec_axpy(&mut w, -c, b);
            }
            let beta = vec_norm(&w);
            h[(j + 1, j)] = Complex64::new(beta, 0.0);

            use ndarray_linalg::Eig;
            // Rebuild rather than slice: a 1×1 slice view owns degenerate
            // strides that the backend's layout check rejects.
            let hm = Array2::from_shape_fn((j + 1, j + 1), |(r, c)| h[(r, c)]);
            let (vals, vecs) = match hm.eig() {
                Ok(pair) => pair,
                Err(e) => return RoundOutcome::Backend(e.to_string()),
            };
            let idx = pick_end_complex(vals.as_slice().unwrap(), opts.which);
            let theta = vals[idx];
            *norm_est = norm_est.max(theta.norm());
            let scale = norm_est.max(1e-300);
            let y = vecs.column(idx);
            let residual_est = beta * y[j].norm();
            best_residual = best_residual.min(residual_est / scale);

            let exhausted = beta <= 1e-13 * scale;
            if residual_est <= opts.tol * scale || exhausted || j + 1 == m_cap {
                let mut x = vec![Complex64::ZERO; dim];
                for (yi, b) in y.iter().zip(&basis) {
                    vec_axpy(&mut x, *yi, b);
                }
                orthogonalize(&mut x, &locked_vecs);
                let nx = vec_norm(&x);
                if nx < 1e-12 {
                    return RoundOutcome::SpaceExhausted;
                }
                for z in &mut x {
                    *z /= nx;
                }
                if residual_est <= opts.tol * scale || exhausted {
                    return RoundOutcome::Converged(theta, x);
                }
                start = x;
                break;
            }
            let next: Vec<Complex64> = w.iter().map(|z| z / beta).collect();
            basis.push(next);
        }
    }
    RoundOutcome::NoConvergence {
        iterations: total_iterations,
        residual: best_residual,
    }
}

fn assemble_krylov_result(
    apply: MatrixFreeApply,
    locked: Vec<(Complex64, Vec<Complex64>)>,
    norm_est: f64,
) -> SpectrumResult {
    let dim = locked.first().map_or(0, |(_, v)| v.len());
    let mut pairs = locked;
    pairs.sort_by(|a, b| {
        b.0.re
            .partial_cmp(&a.0.re)
            .unwrap()
            .then(b.0.im.partial_cmp(&a.0.im).unwrap())
    });
    let scale = norm_est.max(1e-300);
    let mut residual_bound = 0.0f64;
    for (value, vector) in &pairs {
        let av = apply(vector);
        let res: f64 = av
            .iter()
            .zip(vector)
            .map(|(a, x)| (a - value * x).norm_sqr())
            .sum::<f64>()
            .sqrt();
        residual_bound = residual_bound.max(res / scale);
    }
    let eigenvalues: Vec<Complex64> = pairs.iter().map(|(v, _)| *v).collect();
    let mut eigenvectors = Array2::zeros((dim, pairs.len()));
    for (j, (_, v)) in pairs.iter().enumerate() {
        for (i, &z) in v.iter().enumerate() {
            eigenvectors[(i, j)] = z;
        }
    }
    let clusters = cluster(
        &eigenvalues,
        crate::tolerance::CLUSTER_RADIUS * scale,
    );
    SpectrumResult {
        eigenvalues,
        clusters,
        method: Method::KrylovExtremal,
        residual_bound,
        eigenvectors: Some(eigenvectors),
    }
}

// ═══════════════════════════════════════════════════════════════════════
// Power iteration
// ═══════════════════════════════════════════════════════════════════════

/// Outcome of [`power_iteration`].
#[derive(Clone, Debug)]
pub struct PowerOutcome {
    /// Rayleigh quotient at the final iterate.
    pub eigenvalue: Complex64,
    pub vector: Vec<Complex64>,
    pub iterations: usize,
    /// ‖Av − λv‖ / |λ| at the final iterate.
    pub residual: f64,
}

/// Power iteration from a caller-supplied start vector (falls back to a
/// seeded random one). Converges to the dominant eigenpair; on a
/// nonnegative irreducible operator started from a positive vector this is
/// the Perron–Frobenius pair.
pub fn power_iteration(
    apply: MatrixFreeApply,
    dim: usize,
    start: Option<&[Complex64]>,
    max_iterations: usize,
    tol: f64,
    seed: u64,
) -> Result<PowerOutcome, SpectralError> {
    let mut v = match start {
        Some(s) => s.to_vec(),
        None => seeded_vector(dim, seed),
    };
    let n0 = vec_norm(&v);
    if n0 == 0.0 {
        return Err(SpectralError::NonConvergence {
            iterations: 0,
            residual: f64::INFINITY,
        });
    }
    for z in &mut v {
        *z /= n0;
    }
    let mut best_residual = f64::INFINITY;
    for it in 1..=max_iterations {
        let av = apply(&v);
        let lambda = vec_dot(&v, &av);
        let scale = lambda.norm().max(1e-300);
        let mut residual_vec = av.clone();
        vec_axpy(&mut residual_vec, -lambda, &v);
        let residual = vec_norm(&residual_vec) / scale;
        best_residual = best_residual.min(residual);
        if residual <= tol {
            return Ok(PowerOutcome {
                eigenvalue: lambda,
                vector: v,
                iterations: it,
                residual,
            });
        }
        let an = vec_norm(&av);
        if an == 0.0 {
            // The iterate landed in the kernel; the dominant eigenvalue on
            // this invariant cone is 0.
            return Ok(PowerOutcome {
                eigenvalue: Complex64::ZERO,
                vector: v,
                iterations: it,
                residual: 0.0,
            });
        }
        v = av.into_iter().map(|z| z / an).collect();
    }
    Err(SpectralError::NonConvergence {
        iterations: max_iterations,
        residual: best_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{xyz_hamiltonian, LinearMap};
    use ndarray::array;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn diag_map(entries: &[f64]) -> LinearMap {
        let n = entries.len();
        let length = n.trailing_zeros() as usize;
        assert_eq!(1 << length, n, "test diagonal needs a power-of-two size");
        let mut m = Array2::zeros((n, n));
        for (i, &d) in entries.iter().enumerate() {
            m[(i, i)] = c(d, 0.0);
        }
        LinearMap::dense(length, length, m).unwrap()
    }

    #[test]
    fn hermitian_solver_handles_a_diagonal() {
        let m = diag_map(&[1.0, -1.0]);
        let s = eig_dense_hermitian(&m, None).unwrap();
        assert_eq!(s.eigenvalues.len(), 2);
        assert!((s.eigenvalues[0] - c(1.0, 0.0)).norm() < 1e-14);
        assert!((s.eigenvalues[1] - c(-1.0, 0.0)).norm() < 1e-14);
        assert!(s.residual_bound < 1e-12);
        assert_eq!(s.method, Method::DenseHermitian);
    }

    #[test]
    fn hermitian_solver_rejects_non_hermitian_input() {
        let m = array![[c(0.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]];
        let map = LinearMap::dense(1, 1, m).unwrap();
        assert!(matches!(
            eig_dense_hermitian(&map, None),
            Err(SpectralError::NotHermitian { .. })
        ));
    }

    #[test]
    fn xyz_ground_state_at_l3_zeta_one() {
        let h = xyz_hamiltonian(3, 2.0, 0.0, 0.0).unwrap();
        let s = eig_dense_hermitian(&h, None).unwrap();
        let min = s.eigenvalues.last().unwrap();
        assert!((min.re + 3.0).abs() < 1e-12);
        // Bottom cluster has multiplicity 2: eigenvalues are sorted
        // descending, so the last cluster is the ground-state one.
        let bottom = s.clusters.last().unwrap();
        assert!((bottom.value.re + 3.0).abs() < 1e-12);
        assert_eq!(bottom.multiplicity, 2);
    }

    #[test]
    fn hermitian_eigenvectors_reconstruct_the_matrix() {
        // Random 64×64 Hermitian matrix from a fixed seed.
        let n = 64;
        let raw = seeded_vector(n * n, 99);
        let mut m = Array2::zeros((n, n));
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = raw[i * n + j];
            }
        }
        let m = {
            let adj = m.t().mapv(|z: Complex64| z.conj());
            (&m + &adj).mapv(|z| 0.5 * z)
        };
        let map = LinearMap::dense(6, 6, m.clone()).unwrap();
        let s = eig_dense_hermitian(&map, None).unwrap();
        let v = s.eigenvectors.as_ref().unwrap();

        // Orthonormality ‖V†V − I‖_max.
        let mut dev = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let g: Complex64 = v
                    .column(i)
                    .iter()
                    .zip(v.column(j))
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                dev = dev.max((g - expected).norm());
            }
        }
        assert!(dev < 1e-11, "eigenvector orthonormality violated: {dev:.3e}");

        // Reconstruction A = V Λ V†.
        let mut rebuilt = Array2::<Complex64>::zeros((n, n));
        for k in 0..n {
            let lam = s.eigenvalues[k];
            for i in 0..n {
                for j in 0..n {
                    rebuilt[(i, j)] += lam * v[(i, k)] * v[(j, k)].conj();
                }
            }
        }
        let err = (&rebuilt - &m).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(err < 1e-11, "spectral reconstruction off by {err:.3e}");
    }

    #[test]
    fn general_solver_finds_rotation_and_companion_spectra() {
        let rot = array![[c(0.0, 0.0), c(-1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]];
        let s = eig_dense_general(&LinearMap::dense(1, 1, rot).unwrap()).unwrap();
        assert!((s.eigenvalues[0] - c(0.0, 1.0)).norm() < 1e-14);
        assert!((s.eigenvalues[1] - c(0.0, -1.0)).norm() < 1e-14);

        // Companion matrix of x⁴ − 1 (power-of-two size): fourth roots of
        // unity.
        let mut comp = Array2::zeros((4, 4));
        for i in 1..4 {
            comp[(i, i - 1)] = c(1.0, 0.0);
        }
        comp[(0, 3)] = c(1.0, 0.0);
        let s = eig_dense_general(&LinearMap::dense(2, 2, comp).unwrap()).unwrap();
        for root in [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)] {
            let hit = s.eigenvalues.iter().any(|z| (z - root).norm() < 1e-12);
            assert!(hit, "missing root {root}");
        }
        assert!(s.residual_bound < 1e-12);
    }

    #[test]
    fn values_only_general_solver_matches_the_full_one() {
        let raw = seeded_vector(16 * 16, 123);
        let mut m = Array2::zeros((16, 16));
        for i in 0..16 {
            for j in 0..16 {
                m[(i, j)] = c(raw[i * 16 + j].re, 0.0);
            }
        }
        let map = LinearMap::dense(4, 4, m).unwrap();
        let full = eig_dense_general(&map).unwrap();
        let fast = eig_dense_general_values(&map).unwrap();
        assert!(fast.eigenvectors.is_none());
        for (a, b) in full.eigenvalues.iter().zip(&fast.eigenvalues) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn clustering_follows_single_linkage_semantics() {
        let vals = [c(8.0, 0.0), c(8.0 + 1e-12, 0.0), c(5.0, 0.0)];
        let cl = cluster(&vals, 1e-8);
        assert_eq!(cl.len(), 2);
        assert!((cl[0].value.re - 8.0).abs() < 1e-9);
        assert_eq!(cl[0].multiplicity, 2);
        assert_eq!(cl[1].multiplicity, 1);

        assert!(cluster(&[], 1e-8).is_empty());

        // Chaining: pairwise steps of 2e-8 under a 3e-8 radius merge all
        // three even though the extremes are 4e-8 apart.
        let chain = [c(1.0, 0.0), c(1.0 + 2e-8, 0.0), c(1.0 + 4e-8, 0.0)];
        let cl = cluster(&chain, 3e-8);
        assert_eq!(cl.len(), 1);
        assert_eq!(cl[0].multiplicity, 3);

        let total: usize = cl.iter().map(|c| c.multiplicity).sum();
        assert_eq!(total, chain.len());
    }

    #[test]
    fn lanczos_finds_the_top_of_a_diagonal() {
        let entries: Vec<f64> = (1..=128).map(|i| i as f64).collect();
        let apply = move |x: &[Complex64]| -> Vec<Complex64> {
            x.iter()
                .enumerate()
                .map(|(i, &v)| v * (i + 1) as f64)
                .collect()
        };
        let opts = KrylovOptions {
            k: 3,
            which: SpectralEnd::Largest,
            symmetric: true,
            ..Default::default()
        };
        let s = krylov_extremal(&apply, entries.len(), &opts).unwrap();
        assert_eq!(s.eigenvalues.len(), 3);
        assert!((s.eigenvalues[0].re - 128.0).abs() < 1e-8);
        assert!((s.eigenvalues[1].re - 127.0).abs() < 1e-8);
        assert!((s.eigenvalues[2].re - 126.0).abs() < 1e-8);
        assert!(s.residual_bound < 1e-8);
    }

    #[test]
    fn lanczos_resolves_a_degenerate_extremal_pair() {
        // diag(5, 5, 1, 2, 3, ...): the doubly degenerate 5 needs
        // deflation; a single Krylov sequence would report it once.
        let mut entries = vec![5.0, 5.0];
        entries.extend((1..=62).map(|i| i as f64 / 31.0));
        let apply = {
            let entries = entries.clone();
            move |x: &[Complex64]| -> Vec<Complex64> {
                x.iter().zip(&entries).map(|(&v, &d)| v * d).collect()
            }
        };
        let opts = KrylovOptions {
            k: 2,
            which: SpectralEnd::Largest,
            symmetric: true,
            ..Default::default()
        };
        let s = krylov_extremal(&apply, entries.len(), &opts).unwrap();
        assert!((s.eigenvalues[0].re - 5.0).abs() < 1e-8);
        assert!((s.eigenvalues[1].re - 5.0).abs() < 1e-8);
        let v = s.eigenvectors.as_ref().unwrap();
        let overlap = vec_dot(&v.column(0).to_vec(), &v.column(1).to_vec()).norm();
        assert!(overlap < 1e-8, "deflated eigenvectors not orthogonal");
    }

    #[test]
    fn lanczos_agrees_with_dense_on_the_xyz_chain() {
        let h = xyz_hamiltonian(6, 1.5, 0.5, -0.375).unwrap();
        let dense = eig_dense_hermitian(&h, None).unwrap();
        let bottom_dense = dense.eigenvalues.last().unwrap().re;

        let hh = h.clone();
        let apply = move |x: &[Complex64]| -> Vec<Complex64> {
            let psi = StateVector::from_amplitudes(6, x.to_vec()).unwrap();
            hh.apply(&psi).unwrap().amplitudes().to_vec()
        };
        let opts = KrylovOptions {
            k: 1,
            which: SpectralEnd::Smallest,
            symmetric: true,
            ..Default::default()
        };
        let s = krylov_extremal(&apply, 64, &opts).unwrap();
        assert!(
            (s.eigenvalues[0].re - bottom_dense).abs() <= 1e-8 * bottom_dense.abs(),
            "krylov {} vs dense {}",
            s.eigenvalues[0].re,
            bottom_dense
        );
    }

    #[test]
    fn arnoldi_finds_the_dominant_eigenvalue_of_a_rotation_scaling() {
        // Block diag(2·R(θ), 0.5): dominant eigenvalues 2e^{±iθ}.
        let theta = 0.7f64;
        let m = [
            [2.0 * theta.cos(), -2.0 * theta.sin(), 0.0],
            [2.0 * theta.sin(), 2.0 * theta.cos(), 0.0],
            [0.0, 0.0, 0.5],
        ];
        let apply = move |x: &[Complex64]| -> Vec<Complex64> {
            (0..3)
                .map(|i| (0..3).map(|j| m[i][j] * x[j]).sum())
                .collect()
        };
        let opts = KrylovOptions {
            k: 2,
            which: SpectralEnd::LargestMagnitude,
            symmetric: false,
            ..Default::default()
        };
        let s = krylov_extremal(&apply, 3, &opts).unwrap();
        for z in &s.eigenvalues {
            assert!((z.norm() - 2.0).abs() < 1e-8);
        }
        assert!(s.eigenvalues.iter().any(|z| z.im > 0.0));
        assert!(s.eigenvalues.iter().any(|z| z.im < 0.0));
    }

    #[test]
    fn krylov_rejects_oversized_requests() {
        let apply = |x: &[Complex64]| x.to_vec();
        assert!(matches!(
            krylov_extremal(&apply, 4, &KrylovOptions { k: 5, ..Default::default() }),
            Err(SpectralError::KTooLarge { k: 5, dim: 4 })
        ));
    }

    #[test]
    fn power_iteration_respects_perron_frobenius() {
        // Random positive 50×50 matrix: the dominant eigenvector must be
        // strictly positive (up to global phase, which the positive start
        // pins to +1).
        let raw = seeded_vector(50 * 50, 2024);
        let m: Vec<Vec<f64>> = (0..50)
            .map(|i| (0..50).map(|j| raw[i * 50 + j].re.abs() + 0.05).collect())
            .collect();
        let apply = move |x: &[Complex64]| -> Vec<Complex64> {
            (0..50)
                .map(|i| (0..50).map(|j| m[i][j] * x[j]).sum())
                .collect()
        };
        let start = vec![Complex64::ONE; 50];
        let out = power_iteration(&apply, 50, Some(&start), 10_000, 1e-12, 1).unwrap();
        assert!(out.eigenvalue.re > 0.0);
        assert!(out.eigenvalue.im.abs() < 1e-12);
        for z in &out.vector {
            assert!(z.re > 0.0, "Perron eigenvector must be positive");
            assert!(z.im.abs() < 1e-12);
        }
        assert!(out.residual < 1e-10);
    }

    #[test]
    fn power_iteration_reports_non_convergence() {
        // Two eigenvalues of equal magnitude and opposite sign never settle.
        let apply = |x: &[Complex64]| vec![x[1], x[0]];
        let start = [c(1.0, 0.0), c(0.3, 0.0)];
        let out = power_iteration(&apply, 2, Some(&start), 50, 1e-12, 1);
        assert!(matches!(out, Err(SpectralError::NonConvergence { .. })));
    }

    #[test]
    fn subspace_restriction_diagonalizes_an_invariant_block() {
        // diag(1, 2, 3, 4) restricted to span{e0, e2} → {1, 3}.
        let m = diag_map(&[1.0, 2.0, 3.0, 4.0]);
        let mut cols = Array2::zeros((4, 2));
        cols[(0, 0)] = c(1.0, 0.0);
        cols[(2, 1)] = c(1.0, 0.0);
        let sub = Subspace::from_columns(cols).unwrap();
        let s = eig_dense_hermitian(&m, Some(&sub)).unwrap();
        assert_eq!(s.eigenvalues.len(), 2);
        assert!((s.eigenvalues[0].re - 3.0).abs() < 1e-14);
        assert!((s.eigenvalues[1].re - 1.0).abs() < 1e-14);

        let skewed = Array2::from_shape_fn((4, 2), |(i, j)| c((i + j) as f64, 0.0));
        assert!(matches!(
            Subspace::from_columns(skewed),
            Err(SpectralError::NotOrthonormal(_))
        ));
    }

    #[test]
    fn dense_budgets_are_enforced() {
        let apply_id: crate::hilbert::ApplyFn = std::sync::Arc::new(|psi: &StateVector| psi.clone());
        let big = LinearMap::matrix_free(13, 13, apply_id, None).unwrap();
        assert!(matches!(
            eig_dense_hermitian(&big, None),
            Err(SpectralError::DimensionOverBudget { .. })
        ));
        let medium_apply: crate::hilbert::ApplyFn = std::sync::Arc::new(|psi: &StateVector| psi.clone());
        let medium = LinearMap::matrix_free(12, 12, medium_apply, None).unwrap();
        assert!(matches!(
            eig_dense_general(&medium),
            Err(SpectralError::DimensionOverBudget { .. })
        ));
    }
}
