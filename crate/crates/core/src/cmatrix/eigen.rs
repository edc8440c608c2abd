//! Eigenvalue routines: cyclic Jacobi for Hermitian matrices and
//! Hessenberg reduction followed by shifted complex QR for general ones.

use super::matrix::{Matrix, C64, ONE, ZERO};
use crate::error::{Error, Result};

const JACOBI_SWEEPS: usize = 60;

/// Eigen-decomposition of a Hermitian matrix: ascending real eigenvalues and
/// matching orthonormal eigenvectors (columns of `vectors`).
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

impl HermitianEigen {
    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        *self.values.last().unwrap()
    }

    pub fn top_vector(&self) -> Vec<C64> {
        self.vectors.col(self.values.len() - 1)
    }
}

/// Jacobi eigensolver. The strictly lower triangle is ignored in favour of
/// the upper one, so slightly non-Hermitian input is symmetrized implicitly.
pub fn hermitian_eigen(h: &Matrix) -> Result<HermitianEigen> {
    if !h.is_square() {
        return Err(Error::Shape(format!(
            "Hermitian eigensolver needs a square matrix, got {}x{}",
            h.rows(),
            h.cols()
        )));
    }
    let n = h.rows();
    let mut a = h.hermitian_part();
    let mut v = Matrix::identity(n);
    let fro = a.frobenius_norm();
    let threshold = 1e-16 * fro;

    let mut converged = n == 1 || fro == 0.0;
    let mut off = 0.0;
    for _ in 0..JACOBI_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        off = 0.0_f64;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let hpq = a[(p, q)];
                let g = hpq.norm();
                off = off.max(g);
                if g <= threshold {
                    continue;
                }
                rotated = true;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let phase_conj = (hpq / g).conj();
                let zeta = (aqq - app) / (2.0 * g);
                let t = if zeta == 0.0 {
                    1.0
                } else {
                    zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                // G = diag(1, e^{-i phi}) * [[c, s], [-s, c]]
                let g_pp = C64::new(c, 0.0);
                let g_pq = C64::new(s, 0.0);
                let g_qp = phase_conj * (-s);
                let g_qq = phase_conj * c;

                for k in 0..n {
                    let x = a[(k, p)];
                    let y = a[(k, q)];
                    a[(k, p)] = x * g_pp + y * g_qp;
                    a[(k, q)] = x * g_pq + y * g_qq;
                }
                for k in 0..n {
                    let x = a[(p, k)];
                    let y = a[(q, k)];
                    a[(p, k)] = g_pp.conj() * x + g_qp.conj() * y;
                    a[(q, k)] = g_pq.conj() * x + g_qq.conj() * y;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
                for k in 0..n {
                    let x = v[(k, p)];
                    let y = v[(k, q)];
                    v[(k, p)] = x * g_pp + y * g_qp;
                    v[(k, q)] = x * g_pq + y * g_qq;
                }
            }
        }
        if !rotated {
            converged = true;
        }
    }
    if !converged {
        return Err(Error::Convergence {
            routine: "Hermitian Jacobi eigensolver",
            iterations: JACOBI_SWEEPS,
            residual: off,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = v.columns(&order);
    Ok(HermitianEigen { values, vectors })
}

/// Eigenvalues (with multiplicity) of a general square matrix.
pub fn eigenvalues(a: &Matrix) -> Result<Vec<C64>> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "eigenvalues need a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let mut h = hessenberg(a);
    let mut eigs = Vec::with_capacity(n);
    let cap = 100 * n;
    let mut total_iter = 0usize;
    let mut since_deflation = 0usize;
    let mut hi = n - 1;

    loop {
        if hi == 0 {
            eigs.push(h[(0, 0)]);
            break;
        }
        // locate the active unreduced block [lo, hi]
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let diag = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            let scale = if diag == 0.0 { h.max_abs() } else { diag };
            if sub <= f64::EPSILON * scale {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eigs.push(h[(hi, hi)]);
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        if total_iter >= cap {
            return Err(Error::Convergence {
                routine: "Hessenberg QR",
                iterations: total_iter,
                residual: h[(hi, hi - 1)].norm(),
            });
        }
        total_iter += 1;
        since_deflation += 1;

        let shift = if since_deflation % 11 == 10 {
            // exceptional shift to break cycles
            h[(hi, hi)] + C64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        qr_step(&mut h, lo, hi, shift);
    }
    Ok(eigs)
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half_diff = (a - d) * 0.5;
    let disc = (half_diff * half_diff + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let mu1 = mid + disc;
    let mu2 = mid - disc;
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

/// One explicitly shifted QR step on the window `lo..=hi` of an upper
/// Hessenberg matrix (eigenvalues only, no Schur vectors).
fn qr_step(h: &mut Matrix, lo: usize, hi: usize, shift: C64) {
    for k in lo..=hi {
        h[(k, k)] -= shift;
    }
    let mut rots: Vec<(f64, C64)> = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let x = h[(k, k)];
        let y = h[(k + 1, k)];
        let (c, s) = givens(x, y);
        for j in k..=hi {
            let p = h[(k, j)];
            let q = h[(k + 1, j)];
            h[(k, j)] = p * c + s * q;
            h[(k + 1, j)] = -s.conj() * p + q * c;
        }
        rots.push((c, s));
    }
    for (offset, &(c, s)) in rots.iter().enumerate() {
        let k = lo + offset;
        let last_row = (k + 2).min(hi);
        for i in lo..=last_row {
            let p = h[(i, k)];
            let q = h[(i, k + 1)];
            h[(i, k)] = p * c + q * s.conj();
            h[(i, k + 1)] = -p * s + q * c;
        }
    }
    for k in lo..=hi {
        h[(k, k)] += shift;
    }
}

/// (c, s) with c real such that [[c, s], [-conj(s), c]] maps (x, y) to (r, 0).
fn givens(x: C64, y: C64) -> (f64, C64) {
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, ZERO);
    }
    let ax = x.norm();
    if ax == 0.0 {
        return (0.0, y.conj() / ay);
    }
    let r = ax.hypot(ay);
    let c = ax / r;
    let s = (x / ax) * y.conj() / r;
    (c, s)
}

/// Householder reduction to upper Hessenberg form.
pub fn hessenberg(a: &Matrix) -> Matrix {
    let n = a.rows();
    let mut h = a.clone();
    if n < 3 {
        return h;
    }
    for k in 0..n - 2 {
        let x: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let alpha_norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if alpha_norm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 {
            ONE
        } else {
            x[0] / x[0].norm()
        };
        // v = x + phase*|x| e1, reflector P = I - 2 v v*/(v*v)
        let mut v = x.clone();
        v[0] += phase * alpha_norm;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // left: H[k+1.., :] -= 2 v (v* H) / vnorm2
        for j in 0..n {
            let dot: C64 = v
                .iter()
                .enumerate()
                .map(|(t, vi)| vi.conj() * h[(k + 1 + t, j)])
                .sum();
            let f = dot * (2.0 / vnorm2);
            for (t, vi) in v.iter().enumerate() {
                h[(k + 1 + t, j)] -= vi * f;
            }
        }
        // right: H[:, k+1..] -= 2 (H v) v* / vnorm2
        for i in 0..n {
            let dot: C64 = v
                .iter()
                .enumerate()
                .map(|(t, vi)| h[(i, k + 1 + t)] * vi)
                .sum();
            let f = dot * (2.0 / vnorm2);
            for (t, vi) in v.iter().enumerate() {
                h[(i, k + 1 + t)] -= f * vi.conj();
            }
        }
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_re(mut v: Vec<C64>) -> Vec<C64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn diagonal_and_nilpotent() {
        let e = sorted_re(eigenvalues(&Matrix::diag_real(&[2.0, 1.0])).unwrap());
        assert!((e[0] - C64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((e[1] - C64::new(2.0, 0.0)).norm() < 1e-14);

        let n = Matrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(eigenvalues(&n).unwrap().iter().all(|z| z.norm() < 1e-14));

        // trace 0, determinant 0
        let a = Matrix::from_real_rows(&[&[1.0, 1.0], &[-1.0, -1.0]]);
        assert!(eigenvalues(&a).unwrap().iter().all(|z| z.norm() < 1e-7));
    }

    #[test]
    fn rotation_has_imaginary_pair() {
        let j = Matrix::from_real_rows(&[&[0.0, -1.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 0.0, 3.0]]);
        let e = sorted_re(eigenvalues(&j).unwrap());
        assert!(e.iter().any(|z| (z - C64::new(0.0, 1.0)).norm() < 1e-12));
        assert!(e.iter().any(|z| (z - C64::new(0.0, -1.0)).norm() < 1e-12));
        assert!(e.iter().any(|z| (z - C64::new(3.0, 0.0)).norm() < 1e-12));
    }

    #[test]
    fn hermitian_jacobi_small() {
        let h = Matrix::from_rows(&[
            &[C64::new(2.0, 0.0), C64::new(0.0, 1.0)],
            &[C64::new(0.0, -1.0), C64::new(2.0, 0.0)],
        ]);
        let e = hermitian_eigen(&h).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] - 3.0).abs() < 1e-14);
        let x = e.top_vector();
        let hx = h.mul_vec(&x);
        for (a, b) in hx.iter().zip(&x) {
            assert!((a - b * 3.0).norm() < 1e-13);
        }
    }
}
