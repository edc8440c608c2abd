//! Orthogonality predicates: Birkhoff–James (by direct minimization and by
//! the semi-inner product), isosceles orthogonality, disjoint supports,
//! Clarkson–McCarthy equality detection and the Löwner-domination tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cmatrix::{
    abs_power, loewner_geq, null_space, subspaces_equal, svd, Matrix, C64, ONE, ZERO,
};
use crate::error::{Error, Result};
use crate::norms::{schatten_norm, schatten_norm_pow, NormSpec, INF};
use crate::search::nelder_mead_2d;

/// Relative threshold for the support residuals.
pub const SUPPORT_TOL: f64 = 1e-9;

/// Principal-angle threshold (radians) for kernel comparisons.
pub const KERNEL_ANGLE_TOL: f64 = 1e-6;

/// Exponents at which the Löwner-domination test checks B-J orthogonality.
pub const DOMINATION_EXPONENTS: [f64; 5] = [1.0, 1.5, 2.0, 3.0, INF];

const GRID_RADII: usize = 32;
const GRID_ANGLES: usize = 32;

/// Outcome of an orthogonality query.
///
/// `holds` is `gap >= -tolerance`. For Birkhoff–James queries the gap is
/// `min_γ ‖A + γB‖ - ‖A‖` and `extremal_scalar` is the minimizing γ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub extremal_scalar: C64,
    pub gap: f64,
    pub tolerance: f64,
    /// Set when an operand is zero and the relation holds trivially.
    pub degenerate: bool,
}

impl Verdict {
    fn decide(extremal_scalar: C64, gap: f64, tolerance: f64) -> Self {
        Self {
            holds: gap >= -tolerance,
            extremal_scalar,
            gap,
            tolerance,
            degenerate: false,
        }
    }

    fn trivial(tolerance: f64) -> Self {
        Self {
            holds: true,
            extremal_scalar: ZERO,
            gap: 0.0,
            tolerance,
            degenerate: true,
        }
    }
}

fn check_shapes(a: &Matrix, b: &Matrix) -> Result<()> {
    if a.same_shape(b) {
        Ok(())
    } else {
        Err(Error::Shape(format!(
            "operands are {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )))
    }
}

fn check_bj_spec(spec: NormSpec) -> Result<()> {
    spec.validate()?;
    if !spec.is_norm() {
        return Err(Error::Unsupported(format!(
            "orthogonality predicates need a norm, not the quasi-norm {spec:?}"
        )));
    }
    if !spec.is_exact() {
        return Err(Error::Unsupported(format!(
            "{spec:?} is only available as a heuristic lower bound; use p in {{1, 2, ∞}}"
        )));
    }
    Ok(())
}

/// Birkhoff–James orthogonality `A ⊥ B`: `‖A‖ <= ‖A + γB‖` for every γ ∈ ℂ.
///
/// `γ ↦ ‖A + γB‖` is convex and any minimizer satisfies `|γ| <= 2‖A‖/‖B‖`,
/// so a polar grid of radius `4‖A‖/‖B‖` followed by simplex refinement
/// locates the global minimum. The tolerance is `tol * ‖A‖`.
pub fn bj_definitional(a: &Matrix, b: &Matrix, spec: NormSpec, tol: f64) -> Result<Verdict> {
    check_shapes(a, b)?;
    check_bj_spec(spec)?;
    let norm_a = spec.norm(a)?;
    let norm_b = spec.norm(b)?;
    let tolerance = tol * norm_a;
    if norm_b == 0.0 || norm_a == 0.0 {
        return Ok(Verdict::trivial(tolerance));
    }
    let g = |gamma: C64| -> f64 {
        let m = a + &b.scale(gamma);
        spec.norm(&m).unwrap_or(f64::INFINITY)
    };
    let (gamma, min) = minimize_over_plane(g, 4.0 * norm_a / norm_b, norm_a);
    Ok(Verdict::decide(gamma, min - norm_a, tolerance))
}

/// Global minimum of a convex function on ℂ with a known value `at_zero` at 0
/// and a minimizer inside the disk of the given radius.
fn minimize_over_plane(g: impl Fn(C64) -> f64, radius: f64, at_zero: f64) -> (C64, f64) {
    let mut best = (ZERO, at_zero);
    for k in 1..=GRID_RADII {
        let r = radius * k as f64 / GRID_RADII as f64;
        for j in 0..GRID_ANGLES {
            let z = C64::from_polar(r, std::f64::consts::TAU * j as f64 / GRID_ANGLES as f64);
            let v = g(z);
            if v < best.1 {
                best = (z, v);
            }
        }
    }
    let f = |x: [f64; 2]| g(C64::new(x[0], x[1]));
    let mut step = radius / GRID_RADII as f64;
    for _ in 0..6 {
        let (x, v) = nelder_mead_2d(f, [best.0.re, best.0.im], step, 400);
        if v < best.1 {
            best = (C64::new(x[0], x[1]), v);
        }
        step *= 0.25;
    }
    best
}

/// The semi-inner product `[B, A] = ‖A‖_p^{2-p} tr(|A|^{p-1} U* B)` where
/// `A = U|A|`. Returns 0 for `A = 0`.
pub fn semi_inner_product(b: &Matrix, a: &Matrix, p: f64) -> Result<C64> {
    check_shapes(a, b)?;
    if p.is_nan() || p < 1.0 || p.is_infinite() {
        return Err(Error::Unsupported(format!(
            "semi-inner product needs 1 <= p < ∞, got {p}"
        )));
    }
    let f = svd(a)?;
    let rank = f.rank();
    if rank == 0 {
        return Ok(ZERO);
    }
    let s = &f.singular_values;
    let norm_a = s.iter().map(|x| x.powf(p)).sum::<f64>().powf(1.0 / p);
    // tr(|A|^{p-1} U* B) = Σ s_i^{p-1} u_i* B v_i
    let mut acc = ZERO;
    for (i, si) in s.iter().enumerate().take(rank) {
        let bv = b.mul_vec(&f.v_col(i));
        let ui = f.u_col(i);
        let uib: C64 = ui.iter().zip(&bv).map(|(u, x)| u.conj() * x).sum();
        acc += uib * si.powf(p - 1.0);
    }
    Ok(acc * norm_a.powf(2.0 - p))
}

/// Birkhoff–James orthogonality through the semi-inner product:
/// `A ⊥ B` iff `[B, A] = 0`, valid for `1 < p < ∞` where the Schatten norm is
/// Gâteaux differentiable.
pub fn bj_trace(a: &Matrix, b: &Matrix, p: f64, tol: f64) -> Result<bool> {
    if !(p > 1.0 && p < INF) {
        return Err(Error::Unsupported(format!(
            "the trace characterization needs 1 < p < ∞, got {p}; use bj_definitional"
        )));
    }
    let norm_a = schatten_norm(a, p)?;
    if norm_a == 0.0 {
        return Err(Error::Precondition("bj_trace needs A ≠ 0".into()));
    }
    let norm_b = schatten_norm(b, p)?;
    let sip = semi_inner_product(b, a, p)?;
    Ok(sip.norm() <= tol * norm_a * norm_b)
}

/// Isosceles orthogonality `‖A + B‖_p = ‖A - B‖_p`, and in complex mode also
/// `‖A + iB‖_p = ‖A - iB‖_p`, each within `tol (‖A‖_p + ‖B‖_p)`.
///
/// The gap is minus the largest discrepancy; `extremal_scalar` is the
/// direction (1 or i) where it occurs.
pub fn isosceles(a: &Matrix, b: &Matrix, p: f64, complex_mode: bool, tol: f64) -> Result<Verdict> {
    check_shapes(a, b)?;
    if p.is_nan() || p < 1.0 {
        return Err(Error::Unsupported(format!(
            "isosceles orthogonality needs p >= 1, got {p}"
        )));
    }
    let tolerance = tol * (schatten_norm(a, p)? + schatten_norm(b, p)?);
    let dirs: &[C64] = if complex_mode {
        &[ONE, C64::new(0.0, 1.0)]
    } else {
        &[ONE]
    };
    let mut worst = (ONE, 0.0_f64);
    for &d in dirs {
        let db = b.scale(d);
        let plus = schatten_norm(&(a + &db), p)?;
        let minus = schatten_norm(&(a - &db), p)?;
        let diff = (plus - minus).abs();
        if diff > worst.1 {
            worst = (d, diff);
        }
    }
    Ok(Verdict::decide(worst.0, -worst.1, tolerance))
}

/// Support disjointness residuals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupportReport {
    pub right_disjoint: bool,
    pub left_disjoint: bool,
    /// `‖A B*‖_F / (‖A‖_F ‖B‖_F)`: zero iff ker(A)^⊥ ⟂ ker(B)^⊥.
    pub right_residual: f64,
    /// `‖A* B‖_F / (‖A‖_F ‖B‖_F)`: zero iff range(A) ⟂ range(B).
    pub left_residual: f64,
    pub degenerate: bool,
}

impl SupportReport {
    pub fn disjoint(&self) -> bool {
        self.right_disjoint && self.left_disjoint
    }
}

pub fn disjoint_supports(a: &Matrix, b: &Matrix) -> Result<SupportReport> {
    check_shapes(a, b)?;
    let scale = a.frobenius_norm() * b.frobenius_norm();
    if scale == 0.0 {
        return Ok(SupportReport {
            right_disjoint: true,
            left_disjoint: true,
            right_residual: 0.0,
            left_residual: 0.0,
            degenerate: true,
        });
    }
    let right_residual = (a * &b.adjoint()).frobenius_norm() / scale;
    let left_residual = (&a.adjoint() * b).frobenius_norm() / scale;
    Ok(SupportReport {
        right_disjoint: right_residual <= SUPPORT_TOL,
        left_disjoint: left_residual <= SUPPORT_TOL,
        right_residual,
        left_residual,
        degenerate: false,
    })
}

/// `‖A+B‖_p^p + ‖A-B‖_p^p - 2(‖A‖_p^p + ‖B‖_p^p)`: nonpositive for
/// `0 < p <= 2`, nonnegative for `p >= 2`, zero exactly on disjoint supports
/// (and always at p = 2).
pub fn clarkson_gap(a: &Matrix, b: &Matrix, p: f64) -> Result<f64> {
    check_shapes(a, b)?;
    let sum = schatten_norm_pow(&(a + b), p)?;
    let diff = schatten_norm_pow(&(a - b), p)?;
    Ok(sum + diff - 2.0 * (schatten_norm_pow(a, p)? + schatten_norm_pow(b, p)?))
}

/// `‖A - B‖_p^p = ‖A + B‖_p^p = ‖A‖_p^p + ‖B‖_p^p`, each equality within
/// `tol (‖A‖_p^p + ‖B‖_p^p)`.
pub fn norm_additivity(a: &Matrix, b: &Matrix, p: f64, tol: f64) -> Result<bool> {
    check_shapes(a, b)?;
    let target = schatten_norm_pow(a, p)? + schatten_norm_pow(b, p)?;
    let sum = schatten_norm_pow(&(a + b), p)?;
    let diff = schatten_norm_pow(&(a - b), p)?;
    let slack = tol * target.max(f64::MIN_POSITIVE);
    Ok((sum - target).abs() <= slack && (diff - target).abs() <= slack)
}

/// γ values used by the Löwner tests: `±1/m, ±i/m` for m ∈ {1, 2, 4, 8, 16}
/// followed by 32 seeded points uniform in the disk of radius 2.
pub fn default_gamma_samples(seed: u64) -> Vec<C64> {
    let mut out = Vec::with_capacity(52);
    for m in [1.0, 2.0, 4.0, 8.0, 16.0] {
        let r = 1.0 / m;
        out.extend([
            C64::new(r, 0.0),
            C64::new(-r, 0.0),
            C64::new(0.0, r),
            C64::new(0.0, -r),
        ]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..32 {
        let r = 2.0 * rng.random::<f64>().sqrt();
        let t = std::f64::consts::TAU * rng.random::<f64>();
        out.push(C64::from_polar(r, t));
    }
    out
}

/// `|I + γA| >= I` for every sampled γ.
pub fn loewner_identity_test(a: &Matrix, gamma_samples: &[C64], tol: f64) -> Result<bool> {
    if !a.is_square() {
        return Err(Error::Shape(
            "Löwner identity test needs a square matrix".into(),
        ));
    }
    let id = Matrix::identity(a.rows());
    for &g in gamma_samples {
        let m = abs_power(&(&id + &a.scale(g)), 1.0)?;
        if !loewner_geq(&m, &id, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Hypothesis and conclusions of the Löwner-domination theorem for a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominationReport {
    /// `|B + γA| >= |B|` at every sampled γ.
    pub dominates: bool,
    /// `tr(B*A) = 0`.
    pub trace_orthogonal: bool,
    /// `ker(B + γA) = ker B ∩ ker A` at every sampled γ ≠ 0.
    pub kernel_identity: bool,
    /// `B ⊥ A` in every Schatten norm of [`DOMINATION_EXPONENTS`].
    pub bj_all_p: bool,
}

pub fn loewner_domination(
    b: &Matrix,
    a: &Matrix,
    gamma_samples: &[C64],
    tol: f64,
) -> Result<DominationReport> {
    check_shapes(a, b)?;
    if !a.is_square() {
        return Err(Error::Shape(
            "Löwner domination needs square matrices".into(),
        ));
    }
    let n = a.rows();
    let abs_b = abs_power(b, 1.0)?;
    let mut dominates = true;
    for &g in gamma_samples {
        let m = abs_power(&(b + &a.scale(g)), 1.0)?;
        if !loewner_geq(&m, &abs_b, tol)? {
            dominates = false;
            break;
        }
    }

    let scale = a.frobenius_norm() * b.frobenius_norm();
    let trace_orthogonal = b.adjoint().trace_of_product(a).norm() <= tol * scale;

    let common = null_space(&b.vstack(a))?;
    let mut kernel_identity = true;
    for &g in gamma_samples.iter().filter(|g| g.norm() > 0.0) {
        let k = null_space(&(b + &a.scale(g)))?;
        if !subspaces_equal(&k, &common, n, KERNEL_ANGLE_TOL)? {
            kernel_identity = false;
            break;
        }
    }

    let mut bj_all_p = true;
    for p in DOMINATION_EXPONENTS {
        if !bj_definitional(b, a, NormSpec::Schatten(p), tol)?.holds {
            bj_all_p = false;
            break;
        }
    }
    Ok(DominationReport {
        dominates,
        trace_orthogonal,
        kernel_identity,
        bj_all_p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_TOL;

    fn example_a() -> Matrix {
        Matrix::from_real_rows(&[&[1.0, 1.0], &[-1.0, -1.0]])
    }

    #[test]
    fn identity_orthogonal_to_traceless_diagonal() {
        let a = Matrix::diag_real(&[0.5, -0.5]);
        for p in [1.0, 1.5, 2.0, 3.0, INF] {
            let v = bj_definitional(&Matrix::identity(2), &a, NormSpec::Schatten(p), DEFAULT_TOL)
                .unwrap();
            assert!(v.holds, "p = {p}: {v:?}");
        }
    }

    #[test]
    fn diag_orthogonal_to_identity_in_trace_norm() {
        let b = Matrix::diag_real(&[1.0, 0.0]);
        let v = bj_definitional(
            &b,
            &Matrix::identity(2),
            NormSpec::Schatten(1.0),
            DEFAULT_TOL,
        )
        .unwrap();
        assert!(v.holds, "{v:?}");
    }

    #[test]
    fn self_orthogonality_fails_at_minus_one() {
        let a = example_a();
        for spec in [
            NormSpec::Schatten(1.0),
            NormSpec::Schatten(2.0),
            NormSpec::spectral(),
            NormSpec::InducedLp(1.0),
        ] {
            let v = bj_definitional(&a, &a, spec, DEFAULT_TOL).unwrap();
            assert!(!v.holds);
            assert!((v.extremal_scalar + ONE).norm() < 1e-6, "{spec:?}: {v:?}");
        }
    }

    #[test]
    fn zero_operand_is_degenerate() {
        let v = bj_definitional(
            &example_a(),
            &Matrix::zeros(2, 2),
            NormSpec::Schatten(2.0),
            DEFAULT_TOL,
        )
        .unwrap();
        assert!(v.holds && v.degenerate && v.gap == 0.0);
        assert!(bj_definitional(
            &example_a(),
            &example_a(),
            NormSpec::Schatten(0.5),
            DEFAULT_TOL
        )
        .is_err());
        assert!(bj_definitional(
            &example_a(),
            &example_a(),
            NormSpec::InducedLp(3.0),
            DEFAULT_TOL
        )
        .is_err());
    }

    #[test]
    fn semi_inner_product_examples() {
        let a = Matrix::from_rows(&[
            &[C64::new(1.0, 2.0), C64::new(0.5, 0.0)],
            &[C64::new(0.0, -1.0), C64::new(2.0, 0.3)],
        ]);
        for p in [1.0, 1.5, 2.0, 3.0] {
            let na = schatten_norm(&a, p).unwrap();
            let v = semi_inner_product(&a, &a, p).unwrap();
            assert!((v - C64::new(na * na, 0.0)).norm() < 1e-12, "p = {p}");
        }
        let t = Matrix::diag_real(&[0.5, -0.5]);
        for p in [1.0, 2.0, 3.0] {
            assert!(
                semi_inner_product(&t, &Matrix::identity(2), p)
                    .unwrap()
                    .norm()
                    < 1e-15
            );
        }
        // ‖diag(2,1)‖_3 = 9^{1/3}, tr(|A|^2 B) = 4 + 1 = 5
        let v =
            semi_inner_product(&Matrix::identity(2), &Matrix::diag_real(&[2.0, 1.0]), 3.0).unwrap();
        let expected = 5.0 * 9f64.powf(-1.0 / 3.0);
        assert!((v.re - expected).abs() < 1e-13 && v.im.abs() < 1e-15);
        assert!((expected - 2.403_749_7).abs() < 1e-6);
        assert_eq!(
            semi_inner_product(&t, &Matrix::zeros(2, 2), 2.0).unwrap(),
            ZERO
        );
    }

    #[test]
    fn trace_form_examples() {
        let t = Matrix::diag_real(&[0.5, -0.5]);
        assert!(bj_trace(&Matrix::identity(2), &t, 2.0, DEFAULT_TOL).unwrap());
        assert!(!bj_trace(&example_a(), &example_a(), 2.0, DEFAULT_TOL).unwrap());
        assert!(matches!(
            bj_trace(&t, &t, 1.0, DEFAULT_TOL),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            bj_trace(&t, &t, INF, DEFAULT_TOL),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            bj_trace(&Matrix::zeros(2, 2), &t, 2.0, DEFAULT_TOL),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn isosceles_examples() {
        let e11 = Matrix::diag_real(&[1.0, 0.0]);
        let e22 = Matrix::diag_real(&[0.0, 1.0]);
        assert!(
            isosceles(&e11, &e22, 1.5, false, DEFAULT_TOL)
                .unwrap()
                .holds
        );
        assert!(
            !isosceles(&e11, &Matrix::identity(2), 1.0, false, DEFAULT_TOL)
                .unwrap()
                .holds
        );
        let n = Matrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(
            isosceles(&n, &n.transpose(), 2.0, true, DEFAULT_TOL)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn support_examples() {
        let e11 = Matrix::diag_real(&[1.0, 0.0]);
        let r = disjoint_supports(&e11, &Matrix::diag_real(&[0.0, 1.0])).unwrap();
        assert!(r.disjoint());
        let r = disjoint_supports(&e11, &Matrix::identity(2)).unwrap();
        assert!(!r.right_disjoint && !r.left_disjoint);
        // e1⊗e1 and e2⊗e1: ranges e1, e2 are orthogonal, co-ranges coincide
        let e21 = Matrix::from_real_rows(&[&[0.0, 0.0], &[1.0, 0.0]]);
        let r = disjoint_supports(&e11, &e21).unwrap();
        assert!(r.left_disjoint && !r.right_disjoint, "{r:?}");
        let r = disjoint_supports(&e11, &Matrix::zeros(2, 2)).unwrap();
        assert!(r.disjoint() && r.degenerate);
    }

    #[test]
    fn clarkson_examples() {
        let e11 = Matrix::diag_real(&[1.0, 0.0]);
        let e22 = Matrix::diag_real(&[0.0, 1.0]);
        assert!(clarkson_gap(&e11, &e22, 3.0).unwrap().abs() < 1e-14);
        assert!((clarkson_gap(&e11, &e11, 3.0).unwrap() - 4.0).abs() < 1e-13);
        let a = example_a();
        let b = Matrix::from_rows(&[&[C64::new(0.3, 1.0), ONE], &[ZERO, C64::new(-2.0, 0.5)]]);
        assert!(clarkson_gap(&a, &b, 2.0).unwrap().abs() < 1e-12);
    }

    #[test]
    fn additivity_examples() {
        let e11 = Matrix::diag_real(&[1.0, 0.0]);
        let e22 = Matrix::diag_real(&[0.0, 1.0]);
        assert!(norm_additivity(&e11, &e22, 1.5, DEFAULT_TOL).unwrap());
        assert!(!norm_additivity(&e11, &Matrix::identity(2), 1.0, DEFAULT_TOL).unwrap());
        let l = C64::new(0.3, -2.0);
        let m = C64::new(-1.7, 0.4);
        assert!(norm_additivity(&e11.scale(l), &e22.scale(m), 0.7, DEFAULT_TOL).unwrap());
    }

    #[test]
    fn loewner_identity_examples() {
        let samples = default_gamma_samples(1);
        assert_eq!(samples.len(), 52);
        assert!(samples[20..].iter().all(|g| g.norm() <= 2.0));
        assert!(loewner_identity_test(&Matrix::zeros(3, 3), &samples, DEFAULT_TOL).unwrap());
        assert!(
            !loewner_identity_test(&Matrix::identity(3), &[C64::new(-1.0, 0.0)], DEFAULT_TOL)
                .unwrap()
        );
    }

    #[test]
    fn domination_example_pair() {
        let samples = default_gamma_samples(7);
        let r =
            loewner_domination(&Matrix::identity(2), &example_a(), &samples, DEFAULT_TOL).unwrap();
        assert!(r.trace_orthogonal && r.bj_all_p && !r.dominates, "{r:?}");

        let b = Matrix::from_real_rows(&[&[1.0, 2.0], &[0.5, -1.0]]);
        let r = loewner_domination(&b, &Matrix::zeros(2, 2), &samples, DEFAULT_TOL).unwrap();
        assert!(
            r.dominates && r.trace_orthogonal && r.kernel_identity && r.bj_all_p,
            "{r:?}"
        );
    }
}
