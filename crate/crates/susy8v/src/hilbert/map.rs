//! Linear maps between chain Hilbert spaces.
//!
//! One container holds the three operator realisations used throughout the
//! crate: dense matrices, sparse triplet matrices (stored
//! compressed-by-column), and matrix-free apply closures. Dense and sparse
//! maps derive their adjoint from the stored entries; matrix-free maps
//! carry an explicit adjoint closure when one exists.

use super::state::check_length;
use super::{HilbertError, StateVector};
use ndarray::Array2;
use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;

/// Operator realisation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Dense,
    SparseTriplet,
    MatrixFree,
}

pub type ApplyFn = Arc<dyn Fn(&StateVector) -> StateVector + Send + Sync>;

/// A linear map from the L_in-site chain space to the L_out-site one.
#[derive(Clone)]
pub struct LinearMap {
    length_in: usize,
    length_out: usize,
    repr: Repr,
}

#[derive(Clone)]
enum Repr {
    Dense(Arc<Array2<Complex64>>),
    Sparse(Arc<CscMatrix>),
    MatrixFree {
        forward: ApplyFn,
        adjoint: Option<ApplyFn>,
    },
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinearMap")
            .field("length_in", &self.length_in)
            .field("length_out", &self.length_out)
            .field("kind", &self.kind())
            .finish()
    }
}

/// Compressed-column sparse storage built from (row, col, value) triplets.
struct CscMatrix {
    rows: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<usize>,
    values: Vec<Complex64>,
}

impl CscMatrix {
    fn from_triplets(
        rows: usize,
        cols: usize,
        mut triplets: Vec<(usize, usize, Complex64)>,
    ) -> Result<Self, HilbertError> {
        for &(r, c, _) in &triplets {
            if r >= rows || c >= cols {
                return Err(HilbertError::TripletOutOfBounds {
                    row: r,
                    col: c,
                    rows,
                    cols,
                });
            }
        }
        triplets.sort_unstable_by_key(|&(r, c, _)| (c, r));
        let mut col_ptr = vec![0usize; cols + 1];
        let mut row_idx = Vec::with_capacity(triplets.len());
        let mut values = Vec::with_capacity(triplets.len());
        let mut last = None;
        for (r, c, v) in triplets {
            if last == Some((r, c)) {
                // Duplicate coordinates are adjacent after the sort; merge.
                *values.last_mut().unwrap() += v;
            } else {
                row_idx.push(r);
                values.push(v);
                col_ptr[c + 1] += 1;
                last = Some((r, c));
            }
        }
        for c in 0..cols {
            col_ptr[c + 1] += col_ptr[c];
        }
        Ok(Self {
            rows,
            col_ptr,
            row_idx,
            values,
        })
    }

    fn apply(&self, x: &[Complex64], out: &mut [Complex64]) {
        debug_assert_eq!(out.len(), self.rows);
        for (c, &xc) in x.iter().enumerate() {
            if xc == Complex64::ZERO {
                continue;
            }
            for k in self.col_ptr[c]..self.col_ptr[c + 1] {
                out[self.row_idx[k]] += self.values[k] * xc;
            }
        }
    }

    fn apply_adjoint(&self, x: &[Complex64], out: &mut [Complex64]) {
        for (c, o) in out.iter_mut().enumerate() {
            let mut acc = Complex64::ZERO;
            for k in self.col_ptr[c]..self.col_ptr[c + 1] {
                acc += self.values[k].conj() * x[self.row_idx[k]];
            }
            *o += acc;
        }
    }

    fn triplets(&self) -> Vec<(usize, usize, Complex64)> {
        let cols = self.col_ptr.len() - 1;
        let mut out = Vec::with_capacity(self.values.len());
        for c in 0..cols {
            for k in self.col_ptr[c]..self.col_ptr[c + 1] {
                out.push((self.row_idx[k], c, self.values[k]));
            }
        }
        out
    }
}

impl LinearMap {
    /// Wraps a dense matrix of shape (2^length_out, 2^length_in).
    pub fn dense(
        length_in: usize,
        length_out: usize,
        matrix: Array2<Complex64>,
    ) -> Result<Self, HilbertError> {
        check_length(length_in)?;
        check_length(length_out)?;
        let expected = (1usize << length_out, 1usize << length_in);
        if matrix.dim() != expected {
            return Err(HilbertError::ShapeMismatch {
                got: matrix.dim(),
                expected,
            });
        }
        Ok(Self {
            length_in,
            length_out,
            repr: Repr::Dense(Arc::new(matrix)),
        })
    }

    /// Builds a sparse map from (row, col, value) triplets; duplicate
    /// coordinates are summed.
    pub fn from_triplets(
        length_in: usize,
        length_out: usize,
        triplets: Vec<(usize, usize, Complex64)>,
    ) -> Result<Self, HilbertError> {
        check_length(length_in)?;
        check_length(length_out)?;
        let csc = CscMatrix::from_triplets(1 << length_out, 1 << length_in, triplets)?;
        Ok(Self {
            length_in,
            length_out,
            repr: Repr::Sparse(Arc::new(csc)),
        })
    }

    /// Wraps apply closures. `adjoint` may be omitted when no caller needs
    /// it; [`LinearMap::apply_adjoint`] then reports `MissingAdjoint`.
    pub fn matrix_free(
        length_in: usize,
        length_out: usize,
        forward: ApplyFn,
        adjoint: Option<ApplyFn>,
    ) -> Result<Self, HilbertError> {
        check_length(length_in)?;
        check_length(length_out)?;
        Ok(Self {
            length_in,
            length_out,
            repr: Repr::MatrixFree { forward, adjoint },
        })
    }

    pub fn kind(&self) -> MapKind {
        match &self.repr {
            Repr::Dense(_) => MapKind::Dense,
            Repr::Sparse(_) => MapKind::SparseTriplet,
            Repr::MatrixFree { .. } => MapKind::MatrixFree,
        }
    }

    pub fn length_in(&self) -> usize {
        self.length_in
    }

    pub fn length_out(&self) -> usize {
        self.length_out
    }

    pub fn dim_in(&self) -> usize {
        1 << self.length_in
    }

    pub fn dim_out(&self) -> usize {
        1 << self.length_out
    }

    /// Applies the map.
    pub fn apply(&self, psi: &StateVector) -> Result<StateVector, HilbertError> {
        if psi.length() != self.length_in {
            return Err(HilbertError::LengthMismatch {
                got: psi.length(),
                expected: self.length_in,
            });
        }
        match &self.repr {
            Repr::Dense(m) => {
                let mut out = StateVector::zero(self.length_out)?;
                let x = psi.amplitudes();
                for (r, o) in out.amplitudes_mut().iter_mut().enumerate() {
                    let mut acc = Complex64::ZERO;
                    for (c, &xc) in x.iter().enumerate() {
                        acc += m[(r, c)] * xc;
                    }
                    *o = acc;
                }
                Ok(out)
            }
            Repr::Sparse(s) => {
                let mut out = StateVector::zero(self.length_out)?;
                s.apply(psi.amplitudes(), out.amplitudes_mut());
                Ok(out)
            }
            Repr::MatrixFree { forward, .. } => {
                let out = forward(psi);
                debug_assert_eq!(out.length(), self.length_out);
                Ok(out)
            }
        }
    }

    /// Applies the conjugate transpose.
    pub fn apply_adjoint(&self, psi: &StateVector) -> Result<StateVector, HilbertError> {
        if psi.length() != self.length_out {
            return Err(HilbertError::LengthMismatch {
                got: psi.length(),
                expected: self.length_out,
            });
        }
        match &self.repr {
            Repr::Dense(m) => {
                let mut out = StateVector::zero(self.length_in)?;
                let x = psi.amplitudes();
                for (c, o) in out.amplitudes_mut().iter_mut().enumerate() {
                    let mut acc = Complex64::ZERO;
                    for (r, &xr) in x.iter().enumerate() {
                        acc += m[(r, c)].conj() * xr;
                    }
                    *o = acc;
                }
                Ok(out)
            }
            Repr::Sparse(s) => {
                let mut out = StateVector::zero(self.length_in)?;
                s.apply_adjoint(psi.amplitudes(), out.amplitudes_mut());
                Ok(out)
            }
            Repr::MatrixFree { adjoint, .. } => match adjoint {
                Some(f) => {
                    let out = f(psi);
                    debug_assert_eq!(out.length(), self.length_in);
                    Ok(out)
                }
                None => Err(HilbertError::MissingAdjoint),
            },
        }
    }

    /// The adjoint as a map of its own.
    pub fn adjoint(&self) -> Result<Self, HilbertError> {
        let repr = match &self.repr {
            Repr::Dense(m) => Repr::Dense(Arc::new(m.t().mapv(|z| z.conj()))),
            Repr::Sparse(s) => {
                let flipped = s
                    .triplets()
                    .into_iter()
                    .map(|(r, c, v)| (c, r, v.conj()))
                    .collect();
                Repr::Sparse(Arc::new(CscMatrix::from_triplets(
                    1 << self.length_in,
                    1 << self.length_out,
                    flipped,
                )?))
            }
            Repr::MatrixFree { forward, adjoint } => match adjoint {
                Some(a) => Repr::MatrixFree {
                    forward: a.clone(),
                    adjoint: Some(forward.clone()),
                },
                None => return Err(HilbertError::MissingAdjoint),
            },
        };
        Ok(Self {
            length_in: self.length_out,
            length_out: self.length_in,
            repr,
        })
    }

    /// Dense realisation as a (2^L_out × 2^L_in) matrix. `budget` caps the
    /// larger dimension; matrix-free maps are expanded column by column.
    pub fn to_dense(&self, budget: usize) -> Result<Array2<Complex64>, HilbertError> {
        let dim = self.dim_in().max(self.dim_out());
        if dim > budget {
            return Err(HilbertError::DenseBudgetExceeded { dim, budget });
        }
        match &self.repr {
            Repr::Dense(m) => Ok(m.as_ref().clone()),
            Repr::Sparse(s) => {
                let mut out = Array2::zeros((self.dim_out(), self.dim_in()));
                for (r, c, v) in s.triplets() {
                    out[(r, c)] += v;
                }
                Ok(out)
            }
            Repr::MatrixFree { forward, .. } => {
                let mut out = Array2::zeros((self.dim_out(), self.dim_in()));
                for c in 0..self.dim_in() {
                    let mut e = StateVector::zero(self.length_in)?;
                    e.amplitudes_mut()[c] = Complex64::ONE;
                    let col = forward(&e);
                    for (r, &v) in col.amplitudes().iter().enumerate() {
                        out[(r, c)] = v;
                    }
                }
                Ok(out)
            }
        }
    }

    /// self ∘ inner as a matrix-free map (adjoint available when both
    /// factors provide one).
    pub fn compose(&self, inner: &Self) -> Result<Self, HilbertError> {
        if inner.length_out != self.length_in {
            return Err(HilbertError::LengthMismatch {
                got: inner.length_out,
                expected: self.length_in,
            });
        }
        let outer_f = self.clone();
        let inner_f = inner.clone();
        let forward: ApplyFn = Arc::new(move |psi: &StateVector| {
            let mid = inner_f.apply(psi).expect("composition length checked");
            outer_f.apply(&mid).expect("composition length checked")
        });
        let adjoint: Option<ApplyFn> = if self.has_adjoint() && inner.has_adjoint() {
            let outer_a = self.clone();
            let inner_a = inner.clone();
            Some(Arc::new(move |psi: &StateVector| {
                let mid = outer_a.apply_adjoint(psi).expect("composition length checked");
                inner_a
                    .apply_adjoint(&mid)
                    .expect("composition length checked")
            }))
        } else {
            None
        };
        Self::matrix_free(inner.length_in, self.length_out, forward, adjoint)
    }

    fn has_adjoint(&self) -> bool {
        !matches!(&self.repr, Repr::MatrixFree { adjoint: None, .. })
    }
}
