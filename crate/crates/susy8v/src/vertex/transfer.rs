//! The eight-vertex R-matrix and the periodic transfer matrix.
//!
//! The transfer matrix T = tr₀(R_{0L}⋯R_{01}) is realised twice: a dense
//! build that evaluates every entry as the trace of a product of 2×2
//! auxiliary-space weight matrices, and a matrix-free sweep that contracts
//! one site at a time in O(L·2^L) per apply. The two routes share nothing
//! but the weight table, so their agreement is a meaningful consistency
//! check rather than a tautology.

use super::{VertexError, VertexWeights};
use crate::hilbert::{ApplyFn, LinearMap, StateVector};
use ndarray::Array2;
use num_complex::Complex64;
use std::sync::Arc;

/// Largest chain length realised as a dense 2^L × 2^L matrix.
pub const DENSE_SITE_LIMIT: usize = 12;

/// The 4×4 R-matrix as a two-site map: diagonal (a, b, b, a) and
/// antidiagonal (d, c, c, d) in the basis |↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩.
pub fn r_matrix(w: &VertexWeights) -> LinearMap {
    let e = |x: f64| Complex64::new(x, 0.0);
    // Basis codes: |↑↑⟩=0, |↑↓⟩=2, |↓↑⟩=1, |↓↓⟩=3 (site 1 is bit 0).
    let triplets = vec![
        (0, 0, e(w.a())),
        (3, 3, e(w.a())),
        (2, 2, e(w.b())),
        (1, 1, e(w.b())),
        (2, 1, e(w.c())),
        (1, 2, e(w.c())),
        (0, 3, e(w.d())),
        (3, 0, e(w.d())),
    ];
    LinearMap::from_triplets(2, 2, triplets).expect("static 4×4 triplets are in range")
}

/// Auxiliary-space weight matrices: `table[s_out][s_in][ν_out][ν_in]` is the
/// R-matrix element ⟨ν_out s_out|R|ν_in s_in⟩ with ↑ = 0 and ↓ = 1.
pub(crate) type WeightTable = [[[[f64; 2]; 2]; 2]; 2];

pub(crate) fn weight_table(w: &VertexWeights) -> WeightTable {
    let mut t = [[[[0.0; 2]; 2]; 2]; 2];
    t[0][0][0][0] = w.a();
    t[0][0][1][1] = w.b();
    t[1][1][0][0] = w.b();
    t[1][1][1][1] = w.a();
    t[0][1][0][1] = w.d();
    t[0][1][1][0] = w.c();
    t[1][0][0][1] = w.c();
    t[1][0][1][0] = w.d();
    t
}

/// ⟨row|T|col⟩ as the trace of the site-ordered product of weight matrices.
/// Each weight matrix is diagonal or antidiagonal in the auxiliary indices,
/// so exactly one path survives per starting auxiliary spin.
fn transfer_entry(table: &WeightTable, length: usize, row: usize, col: usize) -> f64 {
    let mut total = 0.0;
    for start in 0..2usize {
        let mut aux = start;
        let mut product = 1.0;
        for p in 0..length {
            let s_out = (row >> p) & 1;
            let s_in = (col >> p) & 1;
            let aux_out = if s_out == s_in { aux } else { 1 - aux };
            product *= table[s_out][s_in][aux_out][aux];
            aux = aux_out;
            if product == 0.0 {
                break;
            }
        }
        if aux == start {
            total += product;
        }
    }
    total
}

/// One transfer-matrix contraction sweep. `g[ν][ν₀]` holds the partial
/// amplitudes with open auxiliary indices; every processed site replaces its
/// input bit by the output bit in place. `transpose` contracts with the
/// transposed weight matrices in reversed site order, which realises Tᵗ; the
/// weights are real, so that is also the adjoint.
fn sweep(table: &WeightTable, length: usize, amps: &[Complex64], transpose: bool) -> Vec<Complex64> {
    let dim = 1usize << length;
    debug_assert_eq!(amps.len(), dim);
    let mut g = [
        [amps.to_vec(), vec![Complex64::ZERO; dim]],
        [vec![Complex64::ZERO; dim], amps.to_vec()],
    ];
    let sites: Vec<usize> = if transpose {
        (0..length).rev().collect()
    } else {
        (0..length).collect()
    };
    let lookup = |s_out: usize, s_in: usize, a_out: usize, a_in: usize| {
        if transpose {
            table[s_in][s_out][a_in][a_out]
        } else {
            table[s_out][s_in][a_out][a_in]
        }
    };
    for &p in &sites {
        let bit = 1usize << p;
        for nu0 in 0..2usize {
            for base in 0..dim {
                if base & bit != 0 {
                    continue;
                }
                let codes = [base, base | bit];
                let v = [
                    [g[0][nu0][codes[0]], g[0][nu0][codes[1]]],
                    [g[1][nu0][codes[0]], g[1][nu0][codes[1]]],
                ];
                for a_out in 0..2usize {
                    for s_out in 0..2usize {
                        let mut acc = Complex64::ZERO;
                        for a_in in 0..2usize {
                            for s_in in 0..2usize {
                                let wgt = lookup(s_out, s_in, a_out, a_in);
                                if wgt != 0.0 {
                                    acc += wgt * v[a_in][s_in];
                                }
                            }
                        }
                        g[a_out][nu0][codes[s_out]] = acc;
                    }
                }
            }
        }
    }
    let mut out = vec![Complex64::ZERO; dim];
    for code in 0..dim {
        out[code] = g[0][0][code] + g[1][1][code];
    }
    out
}

/// Dense transfer matrix via entry-by-entry trace products. Fails above
/// [`DENSE_SITE_LIMIT`] sites.
pub fn transfer_matrix_dense(w: &VertexWeights, length: usize) -> Result<LinearMap, VertexError> {
    if length > DENSE_SITE_LIMIT {
        return Err(VertexError::ChainTooLong {
            length,
            limit: DENSE_SITE_LIMIT,
        });
    }
    let table = weight_table(w);
    let dim = 1usize << length;
    let mut matrix = Array2::zeros((dim, dim));
    for row in 0..dim {
        for col in 0..dim {
            // An odd number of auxiliary-spin flips cannot close the trace.
            if (row ^ col).count_ones() % 2 == 1 {
                continue;
            }
            let value = transfer_entry(&table, length, row, col);
            if value != 0.0 {
                matrix[(row, col)] = Complex64::new(value, 0.0);
            }
        }
    }
    Ok(LinearMap::dense(length, length, matrix)?)
}

/// Matrix-free transfer matrix; the adjoint sweep is included.
pub fn transfer_matrix_free(w: &VertexWeights, length: usize) -> Result<LinearMap, VertexError> {
    let table = weight_table(w);
    let forward: ApplyFn = Arc::new(move |psi: &StateVector| {
        let out = sweep(&table, psi.length(), psi.amplitudes(), false);
        StateVector::from_amplitudes(psi.length(), out).expect("sweep preserves dimension")
    });
    let adjoint: ApplyFn = Arc::new(move |psi: &StateVector| {
        let out = sweep(&table, psi.length(), psi.amplitudes(), true);
        StateVector::from_amplitudes(psi.length(), out).expect("sweep preserves dimension")
    });
    Ok(LinearMap::matrix_free(length, length, forward, Some(adjoint))?)
}

/// T = tr₀(R_{0L}⋯R_{01}): dense up to [`DENSE_SITE_LIMIT`] sites,
/// matrix-free beyond.
pub fn transfer_matrix(w: &VertexWeights, length: usize) -> Result<LinearMap, VertexError> {
    if length <= DENSE_SITE_LIMIT {
        transfer_matrix_dense(w, length)
    } else {
        transfer_matrix_free(w, length)
    }
}
