//! Norm-parallelism: the definitional search over the unit circle, trace
//! characterizations, parallelism to the identity, norming sets and the
//! Hilbert witness criterion.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::cmatrix::{abs_power, eigenvalues, inner, inverse, norm2, svd, Matrix, C64, ONE, ZERO};
use crate::error::{Error, Result};
use crate::norms::{
    induced_norm, induced_norm_with, lp_norm, normalize_lp, numerical_radius_banach,
    numerical_radius_hilbert, schatten_norm, unit_phase, vector_norm, NormSpec, INF,
};
use crate::ortho::semi_inner_product;
use crate::search::{circle_max, AscentOptions};

/// θ-grid size for the search over the unit circle.
pub const CIRCLE_GRID: usize = 720;

/// Relative threshold on the second singular value of `[vec A, vec B]`.
pub const DEPENDENCE_TOL: f64 = 1e-9;

/// Number of sampled unit vectors used to spot-check an ε-isometry.
pub const ISOMETRY_SAMPLES: usize = 1000;

/// Outcome of a parallelism query: `max_λ ‖A + λB‖` against `‖A‖ + ‖B‖`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParallelVerdict {
    pub holds: bool,
    pub lambda_star: C64,
    pub achieved: f64,
    pub target: f64,
    pub tolerance: f64,
    /// Set when an operand is zero and parallelism holds trivially.
    pub degenerate: bool,
}

impl ParallelVerdict {
    pub fn gap(&self) -> f64 {
        self.achieved - self.target
    }

    fn trivial(target: f64, tolerance: f64) -> Self {
        Self {
            holds: true,
            lambda_star: ONE,
            achieved: target,
            target,
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

fn maximize_on_circle(
    norm_a: f64,
    norm_b: f64,
    tol: f64,
    h: impl Fn(f64) -> f64,
) -> ParallelVerdict {
    let target = norm_a + norm_b;
    let tolerance = tol * target;
    if norm_a == 0.0 || norm_b == 0.0 {
        return ParallelVerdict::trivial(target, tolerance);
    }
    let (theta, achieved) = circle_max(h, CIRCLE_GRID, 3, 1e-10);
    ParallelVerdict {
        holds: target - achieved <= tolerance,
        lambda_star: C64::from_polar(1.0, theta),
        achieved,
        target,
        tolerance,
        degenerate: false,
    }
}

/// `A ∥ B`: `‖A + λB‖ = ‖A‖ + ‖B‖` for some unimodular λ, decided within
/// `tol (‖A‖ + ‖B‖)`.
pub fn parallel_definitional(
    a: &Matrix,
    b: &Matrix,
    spec: NormSpec,
    tol: f64,
) -> Result<ParallelVerdict> {
    check_shapes(a, b)?;
    spec.validate()?;
    if !spec.is_norm() {
        return Err(Error::Unsupported(format!(
            "parallelism needs a norm, not the quasi-norm {spec:?}"
        )));
    }
    if !spec.is_exact() {
        return Err(Error::Unsupported(format!(
            "{spec:?} is only available as a heuristic lower bound; use p in {{1, 2, ∞}}"
        )));
    }
    let norm_a = spec.norm(a)?;
    let norm_b = spec.norm(b)?;
    Ok(maximize_on_circle(norm_a, norm_b, tol, |theta| {
        let m = a + &b.scale(C64::from_polar(1.0, theta));
        spec.norm(&m).unwrap_or(f64::NAN)
    }))
}

/// Parallelism of vectors under `VectorLp` or `VectorMax`.
pub fn vector_parallel(x: &[C64], y: &[C64], spec: NormSpec, tol: f64) -> Result<ParallelVerdict> {
    if x.len() != y.len() {
        return Err(Error::Shape(format!(
            "vectors of length {} and {}",
            x.len(),
            y.len()
        )));
    }
    let norm_x = vector_norm(x, spec)?;
    let norm_y = vector_norm(y, spec)?;
    Ok(maximize_on_circle(norm_x, norm_y, tol, |theta| {
        let l = C64::from_polar(1.0, theta);
        let v: Vec<C64> = x.iter().zip(y).map(|(a, b)| a + l * b).collect();
        vector_norm(&v, spec).unwrap_or(f64::NAN)
    }))
}

/// Second singular value of `[vec A, vec B]` at most `1e-9` times the first.
pub fn linearly_dependent(a: &Matrix, b: &Matrix) -> Result<bool> {
    check_shapes(a, b)?;
    let m = Matrix::from_columns(&[a.vectorize(), b.vectorize()]);
    let s = svd(&m)?.singular_values;
    Ok(s[0] == 0.0 || s[1] <= DEPENDENCE_TOL * s[0])
}

/// Trace condition `‖A‖_p |tr(|A|^{p-1} U* B)| = ‖B‖_p tr(|A|^p)`, within
/// `tol ‖A‖_p^p ‖B‖_p`, for `1 < p < ∞`. Swapping the arguments gives the
/// mirrored condition.
pub fn parallel_trace_p(a: &Matrix, b: &Matrix, p: f64, tol: f64) -> Result<bool> {
    check_shapes(a, b)?;
    if !(p > 1.0 && p < INF) {
        return Err(Error::Unsupported(format!(
            "the trace characterization of parallelism needs 1 < p < ∞, got {p}"
        )));
    }
    let norm_a = schatten_norm(a, p)?;
    let norm_b = schatten_norm(b, p)?;
    if norm_a == 0.0 || norm_b == 0.0 {
        return Err(Error::Precondition(
            "parallel_trace_p needs A ≠ 0 and B ≠ 0".into(),
        ));
    }
    // [B, A] = ‖A‖^{2-p} tr(|A|^{p-1} U* B)
    let t = semi_inner_product(b, a, p)?.norm() * norm_a.powf(p - 2.0);
    let lhs = norm_a * t;
    let rhs = norm_b * norm_a.powf(p);
    Ok((lhs - rhs).abs() <= tol * norm_a.powf(p) * norm_b)
}

/// Trace-norm parallelism for invertible A: `|tr(|A| A^{-1} B)| = ‖B‖_1`.
pub fn parallel_trace_class(a: &Matrix, b: &Matrix, tol: f64) -> Result<bool> {
    check_shapes(a, b)?;
    let inv = inverse(a).map_err(|e| match e {
        Error::Precondition(msg) => Error::Precondition(format!(
            "{msg}; the invertible-case trace test does not apply, use parallel_definitional"
        )),
        other => other,
    })?;
    let t = (&abs_power(a, 1.0)? * &inv).trace_of_product(b);
    let norm_b = schatten_norm(b, 1.0)?;
    Ok((t.norm() - norm_b).abs() <= tol * norm_b)
}

/// `|tr A| = n^{(p-1)/p} ‖A‖_p` within `tol ‖A‖_p`, for `1 <= p < ∞`.
pub fn parallel_identity_trace(a: &Matrix, p: f64, tol: f64) -> Result<bool> {
    if !a.is_square() {
        return Err(Error::Shape(
            "parallelism to the identity needs a square matrix".into(),
        ));
    }
    if !(1.0..INF).contains(&p) {
        return Err(Error::Unsupported(format!(
            "trace test needs 1 <= p < ∞, got {p}"
        )));
    }
    let n = a.rows() as f64;
    let norm = schatten_norm(a, p)?;
    Ok((a.trace().norm() - n.powf((p - 1.0) / p) * norm).abs() <= tol * norm)
}

/// Numerical radius and operator norm compared by `parallel_identity_radius`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusComparison {
    pub holds: bool,
    pub radius: f64,
    pub norm: f64,
}

/// `A ∥ I` decided through `‖A‖ = w(A)` (Hilbert: `Schatten(∞)` or
/// `InducedLp(2)`) or `‖A‖ = v(A)` on ℓp, `1 < p < ∞`. Agreement is
/// required within `tol ‖A‖`.
pub fn parallel_identity_radius(a: &Matrix, spec: NormSpec, tol: f64) -> Result<RadiusComparison> {
    if !a.is_square() {
        return Err(Error::Shape(
            "parallelism to the identity needs a square matrix".into(),
        ));
    }
    let hilbert = matches!(spec, NormSpec::Schatten(p) if p == INF)
        || matches!(spec, NormSpec::InducedLp(p) if p == 2.0);
    let (radius, norm) = match spec {
        _ if hilbert => (numerical_radius_hilbert(a)?.value, schatten_norm(a, INF)?),
        NormSpec::InducedLp(p) if p > 1.0 && p < INF => (
            numerical_radius_banach(a, p)?.value,
            induced_norm(a, p)?.value,
        ),
        other => {
            return Err(Error::Unsupported(format!(
            "radius test supports the spectral norm and induced ℓp with 1 < p < ∞, got {other:?}"
        )))
        }
    };
    Ok(RadiusComparison {
        holds: (radius - norm).abs() <= tol * norm,
        radius,
        norm,
    })
}

/// Unimodular λ with `λ‖A‖` an eigenvalue of A, if one exists. The operator
/// norm is spectral for `Schatten(∞)` and induced ℓp for `InducedLp(p)`.
pub fn eigen_parallel_identity(a: &Matrix, spec: NormSpec, tol: f64) -> Result<Option<C64>> {
    if !a.is_square() {
        return Err(Error::Shape(
            "eigenvalue criterion needs a square matrix".into(),
        ));
    }
    let norm = match spec {
        NormSpec::Schatten(p) if p == INF => schatten_norm(a, INF)?,
        NormSpec::InducedLp(p) if p >= 1.0 => induced_norm(a, p)?.value,
        other => {
            return Err(Error::Unsupported(format!(
                "{other:?} is not an operator norm"
            )))
        }
    };
    if norm == 0.0 {
        return Ok(None);
    }
    let mut best: Option<C64> = None;
    for mu in eigenvalues(a)? {
        if (mu.norm() - norm).abs() <= tol * norm && best.is_none_or(|b| mu.norm() > b.norm()) {
            best = Some(mu);
        }
    }
    Ok(best.map(unit_phase))
}

/// A finite sample of `M_A = {x : ‖x‖ = 1, ‖Ax‖ = ‖A‖}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormingSet {
    pub vectors: Vec<Vec<C64>>,
    /// True when `vectors` is derived in closed form (an orthonormal basis of
    /// the top right-singular subspace, or the complete finite set).
    pub exact: bool,
    pub norm: f64,
}

/// Norm-attaining unit vectors of A as an operator on ℓp.
///
/// Real matrices are treated over the real field and antipodal pairs `±x`
/// are listed; complex matrices get one representative per phase class.
pub fn norming_set(a: &Matrix, spec: NormSpec) -> Result<NormingSet> {
    let p = match spec {
        NormSpec::Schatten(p) if p == INF => 2.0,
        NormSpec::InducedLp(p) | NormSpec::VectorLp(p) if p >= 1.0 => p,
        NormSpec::VectorMax => INF,
        other => return Err(Error::Unsupported(format!("no norming set for {other:?}"))),
    };
    let real = a.is_real();
    if p == 2.0 {
        spectral_norming_set(a)
    } else if p == INF {
        Ok(max_norm_norming_set(a, real))
    } else if p == 1.0 {
        Ok(trace_column_norming_set(a, real))
    } else {
        sampled_norming_set(a, p, real)
    }
}

fn spectral_norming_set(a: &Matrix) -> Result<NormingSet> {
    let f = svd(a)?;
    let s1 = f.largest();
    let k = f
        .singular_values
        .iter()
        .filter(|&&s| s >= s1 * (1.0 - 1e-10))
        .count();
    Ok(NormingSet {
        vectors: (0..k).map(|i| f.v_col(i)).collect(),
        exact: true,
        norm: s1,
    })
}

fn with_antipodes(vectors: Vec<Vec<C64>>, real: bool) -> Vec<Vec<C64>> {
    if !real {
        return vectors;
    }
    vectors
        .into_iter()
        .flat_map(|v| {
            let neg = v.iter().map(|z| -z).collect();
            [v, neg]
        })
        .collect()
}

// ℓ∞: the norm is the largest absolute row sum, attained at the conjugate
// phases of a maximizing row.
fn max_norm_norming_set(a: &Matrix, real: bool) -> NormingSet {
    let sums: Vec<f64> = (0..a.rows())
        .map(|i| a.row(i).iter().map(|z| z.norm()).sum())
        .collect();
    let top = sums.iter().copied().fold(0.0, f64::max);
    let mut vectors: Vec<Vec<C64>> = Vec::new();
    let mut exact = real;
    for (i, &s) in sums.iter().enumerate() {
        if s < top * (1.0 - 1e-12) {
            continue;
        }
        if a.row(i).iter().any(|z| z.norm() == 0.0) {
            exact = false;
        }
        let x: Vec<C64> = a.row(i).iter().map(|&z| unit_phase(z).conj()).collect();
        if !vectors.iter().any(|v| same_up_to_phase(v, &x)) {
            vectors.push(x);
        }
    }
    NormingSet {
        vectors: with_antipodes(vectors, real),
        exact,
        norm: top,
    }
}

// ℓ1: extreme points e_j of maximal column sum.
fn trace_column_norming_set(a: &Matrix, real: bool) -> NormingSet {
    let sums: Vec<f64> = (0..a.cols())
        .map(|j| a.col(j).iter().map(|z| z.norm()).sum())
        .collect();
    let top = sums.iter().copied().fold(0.0, f64::max);
    let winners: Vec<usize> = (0..a.cols())
        .filter(|&j| sums[j] >= top * (1.0 - 1e-12))
        .collect();
    let vectors = winners
        .iter()
        .map(|&j| {
            (0..a.cols())
                .map(|i| if i == j { ONE } else { ZERO })
                .collect()
        })
        .collect();
    NormingSet {
        vectors: with_antipodes(vectors, real),
        exact: real && winners.len() == 1,
        norm: top,
    }
}

fn sampled_norming_set(a: &Matrix, p: f64, real: bool) -> Result<NormingSet> {
    let opts = AscentOptions::new(real);
    let norm = induced_norm_with(a, p, &opts)?.value;
    let mut found: Vec<Vec<C64>> = Vec::new();
    let starts = crate::search::start_vectors(a.cols(), &opts);
    for x0 in starts {
        let (v, x) = crate::search::ascend_from(
            x0,
            &|x: &mut Vec<C64>| normalize_lp(x, p),
            &|x: &[C64]| lp_norm(&a.mul_vec(x), p),
            &opts,
        );
        if v >= norm * (1.0 - 1e-7) {
            let x = canonical_phase(x);
            if !found.iter().any(|f| same_up_to_phase(f, &x)) {
                found.push(x);
            }
        }
    }
    Ok(NormingSet {
        vectors: with_antipodes(found, real),
        exact: false,
        norm,
    })
}

fn same_up_to_phase(x: &[C64], y: &[C64]) -> bool {
    let nx = norm2(x);
    let ny = norm2(y);
    nx > 0.0 && ny > 0.0 && inner(x, y).norm() >= nx * ny * (1.0 - 1e-8)
}

/// Rotates `x` so its largest-modulus entry is real and positive.
fn canonical_phase(mut x: Vec<C64>) -> Vec<C64> {
    let mut k = 0;
    for i in 1..x.len() {
        if x[i].norm() > x[k].norm() * (1.0 + 1e-9) {
            k = i;
        }
    }
    let ph = unit_phase(x[k]).conj();
    x.iter_mut().for_each(|z| *z *= ph);
    x
}

/// Hilbert-space witness for `A ∥ B`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HilbertWitness {
    /// `max_{‖x‖=1} |⟨Ax, Bx⟩|`.
    pub value: f64,
    pub witness: Vec<C64>,
    pub holds: bool,
    /// Unimodular μ with `Ax/‖A‖ ≈ μ Bx/‖B‖` at the witness.
    pub alignment: C64,
    /// `‖Ax/‖A‖ - μ Bx/‖B‖‖`.
    pub alignment_residual: f64,
    /// `max(‖A‖ - ‖Ax‖, ‖B‖ - ‖Bx‖)`, the distance from `M_A ∩ M_B`.
    pub attainment_defect: f64,
}

/// Decides `A ∥ B` in the spectral norm through
/// `max_{‖x‖=1} |⟨Ax, Bx⟩| = ‖A‖ ‖B‖`.
///
/// Since `⟨Ax, Bx⟩ = x*(B*A)x`, the maximum is the numerical radius of
/// `B*A` and the witness is its maximizing vector.
pub fn hilbert_parallel_witness(a: &Matrix, b: &Matrix, tol: f64) -> Result<HilbertWitness> {
    check_shapes(a, b)?;
    let na = schatten_norm(a, INF)?;
    let nb = schatten_norm(b, INF)?;
    let r = numerical_radius_hilbert(&(&b.adjoint() * a))?;
    let x = r.witness_vector;
    let ax = a.mul_vec(&x);
    let bx = b.mul_vec(&x);
    let alignment = unit_phase(inner(&ax, &bx));
    let alignment_residual = if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        let d: Vec<C64> = ax
            .iter()
            .zip(&bx)
            .map(|(u, v)| u / na - alignment * v / nb)
            .collect();
        norm2(&d)
    };
    Ok(HilbertWitness {
        value: r.value,
        holds: r.value >= na * nb * (1.0 - tol),
        alignment,
        alignment_residual,
        attainment_defect: (na - norm2(&ax)).max(nb - norm2(&bx)),
        witness: x,
    })
}

/// Result of the ε-isometry transfer check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsometryTransfer {
    /// Verdict for `UAU⁻¹ ∥ UBU⁻¹` in the spectral norm.
    pub conjugated_parallel: ParallelVerdict,
    /// `‖A + λB‖` at the λ of the conjugated verdict.
    pub achieved: f64,
    /// `((1-ε)/(1+ε))² (‖A‖ + ‖B‖)`.
    pub bound: f64,
    /// `achieved >= bound - tol (‖A‖ + ‖B‖)`; true when the conjugated pair
    /// is not parallel, since the bound is then not claimed.
    pub lower_bound_ok: bool,
    /// Largest observed `|‖Ux‖ - 1|` over the unit sphere.
    pub distortion: f64,
}

/// Checks the transfer bound `‖A + λB‖ >= ((1-ε)/(1+ε))² (‖A‖ + ‖B‖)` for an
/// ε-isometry U of Euclidean space, with λ taken from `UAU⁻¹ ∥ UBU⁻¹`.
///
/// U is validated exactly through its extreme singular values (the sup and
/// inf of `‖Ux‖` on the sphere) and additionally spot-checked on
/// [`ISOMETRY_SAMPLES`] seeded unit vectors.
pub fn epsilon_isometry_transfer(
    a: &Matrix,
    b: &Matrix,
    u: &Matrix,
    eps: f64,
    tol: f64,
) -> Result<IsometryTransfer> {
    check_shapes(a, b)?;
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::Domain(format!("ε must lie in [0, 1), got {eps}")));
    }
    if !u.is_square() || u.rows() != a.rows() || !a.is_square() {
        return Err(Error::Shape(
            "ε-isometry transfer needs square operands of one size".into(),
        ));
    }
    let u_inv = inverse(u)?;
    let s = svd(u)?.singular_values;
    let distortion = (s[0] - 1.0).max(1.0 - s[s.len() - 1]);
    let slack = 1e-12;
    if distortion > eps + slack {
        return Err(Error::Precondition(format!(
            "U distorts norms by {distortion:e}, more than ε = {eps}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x15_0e7a);
    for _ in 0..ISOMETRY_SAMPLES {
        let mut x: Vec<C64> = (0..u.cols())
            .map(|_| {
                C64::new(
                    StandardNormal.sample(&mut rng),
                    StandardNormal.sample(&mut rng),
                )
            })
            .collect();
        normalize_lp(&mut x, 2.0);
        let r = norm2(&u.mul_vec(&x));
        if r < 1.0 - eps - slack || r > 1.0 + eps + slack {
            return Err(Error::Precondition(format!(
                "sampled ‖Ux‖ = {r} violates ε = {eps}"
            )));
        }
    }

    let conj = |m: &Matrix| &(u * m) * &u_inv;
    let spec = NormSpec::spectral();
    let conjugated_parallel = parallel_definitional(&conj(a), &conj(b), spec, tol)?;
    let total = schatten_norm(a, INF)? + schatten_norm(b, INF)?;
    let achieved = schatten_norm(&(a + &b.scale(conjugated_parallel.lambda_star)), INF)?;
    let ratio = (1.0 - eps) / (1.0 + eps);
    let bound = ratio * ratio * total;
    Ok(IsometryTransfer {
        conjugated_parallel,
        achieved,
        bound,
        lower_bound_ok: !conjugated_parallel.holds || achieved >= bound - tol * total,
        distortion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_TOL;

    const TOL: f64 = DEFAULT_TOL;

    fn e10() -> Matrix {
        Matrix::diag_real(&[1.0, 0.0])
    }

    #[test]
    fn diag_and_identity_in_three_norms() {
        let i2 = Matrix::identity(2);
        let v = parallel_definitional(&e10(), &i2, NormSpec::Schatten(1.0), TOL).unwrap();
        assert!(v.holds && (v.achieved - 3.0).abs() < 1e-12, "{v:?}");
        let v = parallel_definitional(&e10(), &i2, NormSpec::spectral(), TOL).unwrap();
        assert!(v.holds && (v.achieved - 2.0).abs() < 1e-12);
        let v = parallel_definitional(&e10(), &i2, NormSpec::Schatten(2.0), TOL).unwrap();
        assert!(!v.holds);
        assert!((v.achieved - 5f64.sqrt()).abs() < 1e-12);
        assert!((v.target - (1.0 + 2f64.sqrt())).abs() < 1e-12);
        assert!((v.lambda_star.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn max_norm_vectors() {
        let c = |re: f64| C64::new(re, 0.0);
        let v = vector_parallel(
            &[c(1.0), c(0.0)],
            &[c(1.0), c(1.0)],
            NormSpec::VectorMax,
            TOL,
        )
        .unwrap();
        assert!(v.holds && (v.lambda_star - ONE).norm() < 1e-6);
        let v = vector_parallel(
            &[c(1.0), c(-1.0)],
            &[c(-1.0), c(-1.0)],
            NormSpec::VectorMax,
            TOL,
        )
        .unwrap();
        assert!(v.holds && (v.achieved - 2.0).abs() < 1e-12);
        let v = vector_parallel(
            &[c(0.0), c(1.0)],
            &[c(-1.0), c(0.0)],
            NormSpec::VectorMax,
            TOL,
        )
        .unwrap();
        assert!(!v.holds && (v.achieved - 1.0).abs() < 1e-12);
        let x = [C64::new(0.3, -1.0), c(2.0), C64::new(0.0, 0.5)];
        let y: Vec<C64> = x.iter().map(|z| z * 5.0).collect();
        for spec in [
            NormSpec::VectorMax,
            NormSpec::VectorLp(1.0),
            NormSpec::VectorLp(3.0),
        ] {
            assert!(vector_parallel(&x, &y, spec, TOL).unwrap().holds);
        }
    }

    #[test]
    fn dependence_examples() {
        let a = Matrix::from_rows(&[&[C64::new(1.0, 2.0), ONE], &[ZERO, C64::new(0.0, -3.0)]]);
        assert!(linearly_dependent(&a, &a.scale(C64::new(2.0, 1.0))).unwrap());
        assert!(!linearly_dependent(&e10(), &Matrix::identity(2)).unwrap());
        assert!(linearly_dependent(&a, &Matrix::zeros(2, 2)).unwrap());
    }

    #[test]
    fn trace_p_examples() {
        let a = Matrix::from_rows(&[&[C64::new(1.0, 2.0), ONE], &[ZERO, C64::new(0.0, -3.0)]]);
        for p in [1.5, 2.0, 3.0] {
            assert!(parallel_trace_p(&a, &a.scale_real(3.0), p, TOL).unwrap());
            assert!(parallel_trace_p(&a, &a.scale(C64::from_polar(0.7, 2.1)), p, TOL).unwrap());
        }
        assert!(!parallel_trace_p(&e10(), &Matrix::identity(2), 2.0, TOL).unwrap());
        assert!(!parallel_trace_p(&Matrix::identity(2), &e10(), 2.0, TOL).unwrap());
        assert!(parallel_trace_p(&a, &a, 1.0, TOL).is_err());
    }

    #[test]
    fn trace_class_examples() {
        let i2 = Matrix::identity(2);
        assert!(parallel_trace_class(&i2, &e10(), TOL).unwrap());
        assert!(!parallel_trace_class(&i2, &Matrix::diag_real(&[1.0, -1.0]), TOL).unwrap());
        let d = Matrix::diag_real(&[2.0, 1.0]);
        assert!(parallel_trace_class(&d, &d, TOL).unwrap());
        match parallel_trace_class(&e10(), &i2, TOL) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("parallel_definitional")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn identity_trace_examples() {
        for n in 1..5 {
            for p in [1.0, 1.5, 2.0, 3.0] {
                assert!(parallel_identity_trace(&Matrix::identity(n), p, TOL).unwrap());
                let rot = Matrix::identity(n).scale(C64::from_polar(1.0, 0.9));
                assert!(parallel_identity_trace(&rot, p, TOL).unwrap());
            }
        }
        assert!(!parallel_identity_trace(&e10(), 2.0, TOL).unwrap());
        assert!(parallel_identity_trace(&e10(), 1.0, TOL).unwrap());
    }

    #[test]
    fn radius_examples() {
        let jordan = Matrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let r = parallel_identity_radius(&jordan, NormSpec::spectral(), TOL).unwrap();
        assert!(!r.holds && (r.radius - 0.5).abs() < 1e-9);
        let neg = Matrix::identity(3).scale_real(-1.0);
        assert!(
            parallel_identity_radius(&neg, NormSpec::spectral(), TOL)
                .unwrap()
                .holds
        );
        assert!(
            parallel_definitional(&neg, &Matrix::identity(3), NormSpec::spectral(), TOL)
                .unwrap()
                .holds
        );
        let normal = Matrix::diag(&[C64::new(0.0, 2.0), ONE, C64::new(-1.0, 1.0)]);
        assert!(
            parallel_identity_radius(&normal, NormSpec::InducedLp(2.0), TOL)
                .unwrap()
                .holds
        );
        assert!(parallel_identity_radius(&normal, NormSpec::Schatten(2.0), TOL).is_err());
    }

    #[test]
    fn eigen_criterion_examples() {
        let d = Matrix::diag_real(&[2.0, 1.0]);
        let l = eigen_parallel_identity(&d, NormSpec::spectral(), TOL)
            .unwrap()
            .unwrap();
        assert!((l - ONE).norm() < 1e-12);
        let jordan = Matrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(eigen_parallel_identity(&jordan, NormSpec::spectral(), TOL)
            .unwrap()
            .is_none());
        let shift = Matrix::from_fn(4, 4, |i, j| if i == j + 1 { ONE } else { ZERO });
        assert!(eigen_parallel_identity(&shift, NormSpec::spectral(), TOL)
            .unwrap()
            .is_none());
        assert!(
            !parallel_definitional(&shift, &Matrix::identity(4), NormSpec::spectral(), TOL)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn norming_set_examples() {
        let m = norming_set(&Matrix::diag_real(&[2.0, 1.0]), NormSpec::spectral()).unwrap();
        assert!(m.exact && m.vectors.len() == 1 && (m.vectors[0][0].norm() - 1.0).abs() < 1e-12);

        let a = Matrix::from_real_rows(&[&[0.5, 0.5], &[0.5, -0.5]]);
        let m = norming_set(&a, NormSpec::VectorMax).unwrap();
        let has = |x: [f64; 2]| {
            m.vectors.iter().any(|v| {
                (v[0] - C64::new(x[0], 0.0)).norm() < 1e-12
                    && (v[1] - C64::new(x[1], 0.0)).norm() < 1e-12
            })
        };
        assert!(has([1.0, -1.0]) && has([-1.0, -1.0]));
        assert!((m.norm - 1.0).abs() < 1e-15);

        let m = norming_set(
            &Matrix::diag_real(&[1.0, -3.0, 2.0]),
            NormSpec::InducedLp(3.0),
        )
        .unwrap();
        assert!(!m.exact && m.vectors.len() == 2, "{m:?}");
        for v in &m.vectors {
            assert!((v[1].norm() - 1.0).abs() < 1e-6 && v[0].norm() < 1e-4 && v[2].norm() < 1e-4);
        }
    }

    #[test]
    fn hilbert_witness_examples() {
        let a = Matrix::from_real_rows(&[&[1.0, 2.0], &[0.0, -1.0]]);
        let w = hilbert_parallel_witness(&a, &a, TOL).unwrap();
        let na = schatten_norm(&a, INF).unwrap();
        assert!(w.holds && (w.value - na * na).abs() < 1e-10);
        assert!(w.attainment_defect < 1e-8 && w.alignment_residual < 1e-6);

        let w = hilbert_parallel_witness(&e10(), &Matrix::diag_real(&[0.0, 1.0]), TOL).unwrap();
        assert!(!w.holds && w.value.abs() < 1e-15);
        let w = hilbert_parallel_witness(&e10(), &Matrix::identity(2), TOL).unwrap();
        assert!(w.holds && (w.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn epsilon_isometry_examples() {
        let a = Matrix::from_real_rows(&[&[2.0, 0.0], &[0.0, 1.0]]);
        let b = Matrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -0.5]]);
        let t = 0.4_f64;
        let rot = Matrix::from_real_rows(&[&[t.cos(), -t.sin()], &[t.sin(), t.cos()]]);
        let r = epsilon_isometry_transfer(&a, &b, &rot, 0.0, TOL).unwrap();
        assert!(r.conjugated_parallel.holds && r.lower_bound_ok);
        assert!((r.achieved - 3.0).abs() < 1e-12 && (r.bound - 3.0).abs() < 1e-12);

        let u =
            &Matrix::identity(2) + &Matrix::from_real_rows(&[&[0.003, -0.004], &[0.002, 0.001]]);
        let r = epsilon_isometry_transfer(&a, &b, &u, 0.01, TOL).unwrap();
        assert!(r.lower_bound_ok && r.distortion <= 0.01);

        let c = Matrix::diag_real(&[1.0, 0.0]);
        let d = Matrix::diag_real(&[0.0, 1.0]);
        let r = epsilon_isometry_transfer(&c, &d, &rot, 0.0, TOL).unwrap();
        assert!(!r.conjugated_parallel.holds);

        let big = Matrix::identity(2).scale_real(1.5);
        assert!(matches!(
            epsilon_isometry_transfer(&a, &b, &big, 0.1, TOL),
            Err(Error::Precondition(_))
        ));
    }
}
