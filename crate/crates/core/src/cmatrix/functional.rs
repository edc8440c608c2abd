use super::eigen::hermitian_eigen;
use super::matrix::{inner, Matrix, C64};
use super::svd::{orthonormal_complement, svd, SvdFactors, RANK_CUTOFF};
use crate::error::{Error, Result};

/// Hermitian tolerance used by the Löwner test.
pub const HERMITIAN_TOL: f64 = 1e-9;

/// Polar factors `A = U |A|`.
#[derive(Debug, Clone)]
pub struct PolarFactors {
    /// Partial isometry mapping range(|A|) onto range(A).
    pub isometry: Matrix,
    /// `|A| = (A*A)^{1/2}`, positive semidefinite, cols × cols.
    pub modulus: Matrix,
}

pub fn polar(a: &Matrix) -> Result<PolarFactors> {
    let f = svd(a)?;
    Ok(polar_from_svd(&f, a.rows(), a.cols()))
}

pub(crate) fn polar_from_svd(f: &SvdFactors, rows: usize, cols: usize) -> PolarFactors {
    let rank = f.rank();
    let s = &f.singular_values;
    let mut isometry = Matrix::zeros(rows, cols);
    for k in 0..rank {
        for i in 0..rows {
            let ui = f.u[(i, k)];
            for j in 0..cols {
                isometry[(i, j)] += ui * f.v[(j, k)].conj();
            }
        }
    }
    let modulus = spectral_sum(&f.v, &s[..rank], |x| x);
    PolarFactors { isometry, modulus }
}

/// `V diag(g(s_i)) V*` summed over the given (leading) columns of `v`.
fn spectral_sum(v: &Matrix, s: &[f64], g: impl Fn(f64) -> f64) -> Matrix {
    let m = v.rows();
    let mut out = Matrix::zeros(m, m);
    for (k, &sk) in s.iter().enumerate() {
        let w = g(sk);
        if w == 0.0 {
            continue;
        }
        for i in 0..m {
            let vi = v[(i, k)] * w;
            for j in 0..m {
                out[(i, j)] += vi * v[(j, k)].conj();
            }
        }
    }
    out
}

/// `|A|^t` via the SVD. Null singular directions stay null, so `t = 0`
/// yields the right support projection rather than the identity.
pub fn abs_power(a: &Matrix, t: f64) -> Result<Matrix> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::Domain(format!(
            "abs_power exponent must be finite and >= 0, got {t}"
        )));
    }
    let f = svd(a)?;
    let rank = f.rank();
    Ok(spectral_sum(&f.v, &f.singular_values[..rank], |x| {
        x.powf(t)
    }))
}

/// Löwner order `P >= Q`: smallest eigenvalue of `P - Q` is at least
/// `-tol * max(1, |P|, |Q|)` (spectral norms).
pub fn loewner_geq(p: &Matrix, q: &Matrix, tol: f64) -> Result<bool> {
    if !p.same_shape(q) || !p.is_square() {
        return Err(Error::Shape(format!(
            "Löwner comparison of {}x{} and {}x{}",
            p.rows(),
            p.cols(),
            q.rows(),
            q.cols()
        )));
    }
    if !p.is_hermitian(HERMITIAN_TOL) || !q.is_hermitian(HERMITIAN_TOL) {
        return Err(Error::Domain(
            "Löwner order needs Hermitian operands".into(),
        ));
    }
    let ep = hermitian_eigen(p)?;
    let eq = hermitian_eigen(q)?;
    let scale = 1f64
        .max(ep.min().abs().max(ep.max().abs()))
        .max(eq.min().abs().max(eq.max().abs()));
    let diff = hermitian_eigen(&(p - q))?;
    Ok(diff.min() >= -tol * scale)
}

/// Inverse through the SVD; fails when the smallest singular value is at or
/// below the rank cutoff.
pub fn inverse(a: &Matrix) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::Shape("inverse of a non-square matrix".into()));
    }
    let f = svd(a)?;
    let n = a.rows();
    let s = &f.singular_values;
    if s[0] == 0.0 || s[n - 1] <= RANK_CUTOFF * s[0] {
        return Err(Error::Precondition(format!(
            "matrix is numerically singular (s_min/s_max = {:e})",
            if s[0] == 0.0 { 0.0 } else { s[n - 1] / s[0] }
        )));
    }
    let vs = Matrix::from_fn(n, n, |i, j| f.v[(i, j)] / s[j]);
    Ok(&vs * &f.u.adjoint())
}

/// Principal angles (radians, ascending) between subspaces spanned by the
/// orthonormal bases `x` and `y`, computed from sines so tiny angles keep
/// full accuracy.
pub fn principal_angles(x: &[Vec<C64>], y: &[Vec<C64>], dim: usize) -> Result<Vec<f64>> {
    if x.is_empty() || y.is_empty() {
        return Ok(Vec::new());
    }
    let (small, big) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    // residual of `small` after projecting onto span(big)
    let mut resid: Vec<Vec<C64>> = Vec::with_capacity(small.len());
    for s in small {
        let mut r = s.clone();
        for b in big {
            let c = inner(&r, b);
            for (ri, bi) in r.iter_mut().zip(b) {
                *ri -= c * bi;
            }
        }
        resid.push(r);
    }
    let m = Matrix::from_columns(&resid);
    debug_assert_eq!(m.rows(), dim);
    let sines = svd(&m)?.singular_values;
    let mut angles: Vec<f64> = sines.iter().map(|s| s.clamp(0.0, 1.0).asin()).collect();
    angles.sort_by(f64::total_cmp);
    Ok(angles)
}

/// True when the two subspaces share a nonzero vector, judged by the
/// smallest principal angle.
pub fn subspaces_intersect(
    x: &[Vec<C64>],
    y: &[Vec<C64>],
    dim: usize,
    angle_tol: f64,
) -> Result<bool> {
    let angles = principal_angles(x, y, dim)?;
    Ok(angles.first().is_some_and(|&a| a <= angle_tol))
}

/// Equality of subspaces: equal dimension and every principal angle small.
pub fn subspaces_equal(x: &[Vec<C64>], y: &[Vec<C64>], dim: usize, angle_tol: f64) -> Result<bool> {
    if x.len() != y.len() {
        return Ok(false);
    }
    if x.is_empty() {
        return Ok(true);
    }
    let angles = principal_angles(x, y, dim)?;
    Ok(angles.iter().all(|&a| a <= angle_tol))
}

/// Orthogonal projection onto span of the orthonormal columns.
pub fn projection_onto(basis: &[Vec<C64>], dim: usize) -> Matrix {
    let mut p = Matrix::zeros(dim, dim);
    for b in basis {
        p = &p + &Matrix::outer(b, b);
    }
    p
}

pub fn complement_projection(basis: &[Vec<C64>], dim: usize) -> Matrix {
    projection_onto(&orthonormal_complement(basis, dim), dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close_mat(a: &Matrix, b: &Matrix, tol: f64) -> bool {
        (a - b).frobenius_norm() <= tol
    }

    #[test]
    fn polar_of_diagonal() {
        let a = Matrix::diag_real(&[0.5, -0.5]);
        let p = polar(&a).unwrap();
        assert!(close_mat(
            &p.modulus,
            &Matrix::diag_real(&[0.5, 0.5]),
            1e-14
        ));
        assert!(close_mat(
            &p.isometry,
            &Matrix::diag_real(&[1.0, -1.0]),
            1e-14
        ));
    }

    #[test]
    fn polar_of_psd_is_projection() {
        let p = Matrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]);
        let f = polar(&p).unwrap();
        assert!(close_mat(&f.modulus, &p, 1e-14));
        let proj = Matrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]);
        assert!(close_mat(&f.isometry, &proj, 1e-14));
    }

    #[test]
    fn polar_of_rank_one_example() {
        // |A| = V diag(2, 0) V* with v1 = (1, 1)/sqrt 2, so |A| = [[1,1],[1,1]]
        let a = Matrix::from_real_rows(&[&[1.0, 1.0], &[-1.0, -1.0]]);
        let f = polar(&a).unwrap();
        assert!(close_mat(
            &f.modulus,
            &Matrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]),
            1e-14
        ));
        assert!(close_mat(&(&f.isometry * &f.modulus), &a, 1e-14));
    }

    #[test]
    fn abs_power_examples() {
        let r = abs_power(&Matrix::diag_real(&[4.0, 1.0]), 0.5).unwrap();
        assert!(close_mat(&r, &Matrix::diag_real(&[2.0, 1.0]), 1e-14));
        let r = abs_power(&Matrix::diag_real(&[0.5, -0.5]), 1.0).unwrap();
        assert!(close_mat(&r, &Matrix::diag_real(&[0.5, 0.5]), 1e-14));
        let a = Matrix::from_real_rows(&[&[1.0, 1.0], &[-1.0, -1.0]]);
        let r = abs_power(&a, 2.0).unwrap();
        assert!(close_mat(
            &r,
            &Matrix::from_real_rows(&[&[2.0, 2.0], &[2.0, 2.0]]),
            1e-13
        ));
        // 0^0 = 0: support projection
        let r = abs_power(&Matrix::diag_real(&[3.0, 0.0]), 0.0).unwrap();
        assert!(close_mat(&r, &Matrix::diag_real(&[1.0, 0.0]), 1e-14));
        assert!(abs_power(&a, -1.0).is_err());
    }

    #[test]
    fn loewner_examples() {
        let i2 = Matrix::identity(2);
        assert!(loewner_geq(&i2, &Matrix::zeros(2, 2), 1e-10).unwrap());
        assert!(!loewner_geq(&Matrix::diag_real(&[0.5, 0.5]), &i2, 1e-10).unwrap());
        let a = Matrix::from_real_rows(&[&[1.0, 1.0], &[-1.0, -1.0]]);
        let m = abs_power(&(&i2 + &a), 1.0).unwrap();
        assert!(!loewner_geq(&m, &i2, 1e-10).unwrap());
        let non_herm = Matrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(
            loewner_geq(&non_herm, &i2, 1e-10),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn inverse_and_singular() {
        let a = Matrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 1.0]]);
        let inv = inverse(&a).unwrap();
        assert!(close_mat(&(&a * &inv), &Matrix::identity(2), 1e-14));
        let s = Matrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]);
        assert!(matches!(inverse(&s), Err(Error::Precondition(_))));
    }

    #[test]
    fn angles_between_coordinate_planes() {
        let e = |k: usize| -> Vec<C64> {
            (0..3)
                .map(|i| {
                    if i == k {
                        C64::new(1.0, 0.0)
                    } else {
                        C64::new(0.0, 0.0)
                    }
                })
                .collect()
        };
        let xy = vec![e(0), e(1)];
        let yz = vec![e(1), e(2)];
        let ang = principal_angles(&xy, &yz, 3).unwrap();
        assert!(ang[0].abs() < 1e-15);
        assert!((ang[1] - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!(subspaces_intersect(&xy, &yz, 3, 1e-7).unwrap());
        assert!(!subspaces_intersect(&[e(0)], &[e(2)], 3, 1e-7).unwrap());
    }
}
