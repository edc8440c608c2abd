//! One-sided (Hestenes) Jacobi SVD for dense complex matrices.
//!
//! Columns of a working copy are orthogonalized pairwise by complex plane
//! rotations; at convergence the column norms are the singular values. The
//! method is slow for large matrices but delivers high relative accuracy,
//! which is what the predicate layers need at n ≤ a few dozen.

use super::matrix::{inner, norm2, Matrix, C64, ONE, ZERO};
use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 60;

/// Singular values at or below `RANK_CUTOFF * s_1` are treated as zero.
pub const RANK_CUTOFF: f64 = 1e-10;

/// Rotation is skipped when `|<w_i, w_j>| <= ORTHO_EPS * |w_i| |w_j|`.
const ORTHO_EPS: f64 = 1e-15;

/// Thin SVD `A = U diag(s) V*` with `r = min(rows, cols)` terms.
#[derive(Debug, Clone)]
pub struct SvdFactors {
    /// rows × r, orthonormal columns.
    pub u: Matrix,
    /// Decreasing, nonnegative.
    pub singular_values: Vec<f64>,
    /// cols × r, orthonormal columns.
    pub v: Matrix,
}

impl SvdFactors {
    pub fn largest(&self) -> f64 {
        self.singular_values[0]
    }

    /// Number of singular values above the relative rank cutoff.
    pub fn rank(&self) -> usize {
        let s1 = self.largest();
        if s1 == 0.0 {
            return 0;
        }
        self.singular_values
            .iter()
            .take_while(|&&s| s > RANK_CUTOFF * s1)
            .count()
    }

    pub fn u_col(&self, i: usize) -> Vec<C64> {
        self.u.col(i)
    }

    pub fn v_col(&self, i: usize) -> Vec<C64> {
        self.v.col(i)
    }

    /// `U diag(s) V*`
    pub fn reconstruct(&self) -> Matrix {
        let s = &self.singular_values;
        let us = Matrix::from_fn(self.u.rows(), s.len(), |i, j| self.u[(i, j)] * s[j]);
        &us * &self.v.adjoint()
    }
}

pub fn svd(a: &Matrix) -> Result<SvdFactors> {
    if a.rows() >= a.cols() {
        jacobi_tall(a)
    } else {
        let f = jacobi_tall(&a.adjoint())?;
        Ok(SvdFactors {
            u: f.v,
            singular_values: f.singular_values,
            v: f.u,
        })
    }
}

pub fn singular_values(a: &Matrix) -> Result<Vec<f64>> {
    Ok(svd(a)?.singular_values)
}

fn jacobi_tall(a: &Matrix) -> Result<SvdFactors> {
    let (m, n) = a.shape();
    let mut w: Vec<Vec<C64>> = (0..n).map(|j| a.col(j)).collect();
    let mut v: Vec<Vec<C64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { ONE } else { ZERO }).collect())
        .collect();

    // columns below eps * ‖A‖_F are zero at working precision; rotating
    // them against exact dependents never settles
    let floor = f64::EPSILON * a.frobenius_norm();
    let mut converged = n == 1;
    let mut worst = 0.0;
    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        worst = 0.0_f64;
        for i in 0..n - 1 {
            for j in i + 1..n {
                let alpha: f64 = w[i].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = w[j].iter().map(|z| z.norm_sqr()).sum();
                // gamma = w_i^H w_j
                let gamma: C64 = inner(&w[j], &w[i]);
                let g = gamma.norm();
                let (ni, nj) = (alpha.sqrt(), beta.sqrt());
                let scale = ni * nj;
                if g == 0.0 || g <= ORTHO_EPS * scale || ni <= floor || nj <= floor {
                    continue;
                }
                worst = worst.max(g / scale);
                rotated = true;

                let phase_conj = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;

                rotate_pair(&mut w, i, j, c, s, phase_conj);
                rotate_pair(&mut v, i, j, c, s, phase_conj);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence {
            routine: "one-sided Jacobi SVD",
            iterations: MAX_SWEEPS,
            residual: worst,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = w.iter().map(|c| norm2(c)).collect();
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]));

    let singular_values: Vec<f64> = order.iter().map(|&k| norms[k]).collect();
    let mut u_cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    let mut missing = Vec::new();
    for (slot, &k) in order.iter().enumerate() {
        let s = norms[k];
        if s > f64::MIN_POSITIVE * 1e10 {
            u_cols.push(w[k].iter().map(|z| z / s).collect());
        } else {
            u_cols.push(vec![ZERO; m]);
            missing.push(slot);
        }
    }
    for slot in missing {
        let filler = complete_orthonormal(&u_cols, slot, m);
        u_cols[slot] = filler;
    }
    let v_cols: Vec<Vec<C64>> = order.iter().map(|&k| v[k].clone()).collect();

    Ok(SvdFactors {
        u: Matrix::from_columns(&u_cols),
        singular_values,
        v: Matrix::from_columns(&v_cols),
    })
}

#[inline]
fn rotate_pair(cols: &mut [Vec<C64>], i: usize, j: usize, c: f64, s: f64, phase_conj: C64) {
    let (left, right) = cols.split_at_mut(j);
    let ci = &mut left[i];
    let cj = &mut right[0];
    for (xi, xj) in ci.iter_mut().zip(cj.iter_mut()) {
        let a = *xi;
        let b = *xj * phase_conj;
        *xi = a * c - b * s;
        *xj = a * s + b * c;
    }
}

/// A unit vector orthogonal to every nonzero column in `cols` except `skip`.
fn complete_orthonormal(cols: &[Vec<C64>], skip: usize, m: usize) -> Vec<C64> {
    let mut best: Option<Vec<C64>> = None;
    let mut best_norm = 0.0;
    for e in 0..m {
        let mut cand: Vec<C64> = (0..m).map(|i| if i == e { ONE } else { ZERO }).collect();
        for _pass in 0..2 {
            for (k, c) in cols.iter().enumerate() {
                if k == skip || norm2(c) == 0.0 {
                    continue;
                }
                let proj = inner(&cand, c);
                for (x, y) in cand.iter_mut().zip(c) {
                    *x -= proj * y;
                }
            }
        }
        let nrm = norm2(&cand);
        if nrm > best_norm {
            best_norm = nrm;
            best = Some(cand.iter().map(|z| z / nrm).collect());
        }
        if nrm > 0.5 {
            break;
        }
    }
    best.expect("orthogonal complement is nonempty")
}

/// Orthonormal basis of the complement of span(`basis`) in C^dim.
/// `basis` columns must be orthonormal.
pub fn orthonormal_complement(basis: &[Vec<C64>], dim: usize) -> Vec<Vec<C64>> {
    let mut out: Vec<Vec<C64>> = Vec::new();
    let target = dim - basis.len();
    for e in 0..dim {
        if out.len() == target {
            break;
        }
        let mut cand: Vec<C64> = (0..dim).map(|i| if i == e { ONE } else { ZERO }).collect();
        for _pass in 0..2 {
            for c in basis.iter().chain(out.iter()) {
                let proj = inner(&cand, c);
                for (x, y) in cand.iter_mut().zip(c) {
                    *x -= proj * y;
                }
            }
        }
        let nrm = norm2(&cand);
        if nrm > 1e-8 {
            out.push(cand.iter().map(|z| z / nrm).collect());
        }
    }
    out
}

/// Orthonormal basis of ker(A) ⊂ C^cols, using the relative rank cutoff.
pub fn null_space(a: &Matrix) -> Result<Vec<Vec<C64>>> {
    let f = svd(a)?;
    let rank = f.rank();
    let row_space: Vec<Vec<C64>> = (0..rank).map(|i| f.v_col(i)).collect();
    Ok(orthonormal_complement(&row_space, a.cols()))
}

/// Orthonormal basis of range(A) ⊂ C^rows.
pub fn range_basis(a: &Matrix) -> Result<Vec<Vec<C64>>> {
    let f = svd(a)?;
    Ok((0..f.rank()).map(|i| f.u_col(i)).collect())
}
