//! The suite registry: one randomized property per theorem, each trial a
//! seeded draw checked against the predicates of `ortho` and `parallel`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::ensembles::{
    complex_gauss, dependent_pair, disjoint_pair, ginibre, intersecting_projections, nilpotent,
    normal, orthogonal_corange_pair, orthogonal_range_pair, psd, real_ginibre,
    spectral_parallel_pair, trace_parallel_pair, transversal_projections, unitary, EnsembleKind,
};
use super::Trial;
use crate::cmatrix::{
    abs_power, hermitian_eigen, singular_values, subspaces_intersect, Matrix, C64,
};
use crate::error::Result;
use crate::norms::{
    lp_norm, normalize_lp, numerical_radius_banach, numerical_radius_hilbert, schatten_norm,
    schatten_norm_pow, NormSpec, INF,
};
use crate::ortho::{
    bj_definitional, bj_trace, clarkson_gap, default_gamma_samples, disjoint_supports, isosceles,
    loewner_domination, loewner_identity_test, norm_additivity, semi_inner_product,
    KERNEL_ANGLE_TOL,
};
use crate::parallel::{
    eigen_parallel_identity, epsilon_isometry_transfer, hilbert_parallel_witness,
    linearly_dependent, parallel_definitional, parallel_identity_radius, parallel_trace_p,
    vector_parallel,
};
use crate::DEFAULT_TOL;

/// Relative slack for inequalities that hold exactly in exact arithmetic.
pub const INEQUALITY_TOL: f64 = 1e-9;
/// Relative threshold for "equality" in the Clarkson equality case and for
/// the disjointness products.
pub const EQUALITY_TOL: f64 = 1e-7;
/// Support residual bound accepted after a positive BJ verdict.
pub const RESIDUAL_TOL: f64 = 1e-6;
/// Relative accuracy of the semi-inner-product axioms.
pub const AXIOM_TOL: f64 = 1e-8;
/// Perturbation size of the near-disjoint positive ensemble.
pub const NEAR_DISJOINT_DELTA: f64 = 1e-2;
/// Agreement required between witness data and exact values.
pub const WITNESS_TOL: f64 = 1e-6;
/// Seed of the γ samples used by the Löwner suites.
pub const GAMMA_SEED: u64 = 0x6a33a;

fn spec(p: f64) -> NormSpec {
    NormSpec::Schatten(p)
}

fn label(p: f64) -> String {
    if p.is_infinite() {
        "p=inf".into()
    } else {
        format!("p={p}")
    }
}

/// `‖A*A B*B‖_F` and `‖AA* BB*‖_F` relative to `‖A‖_F² ‖B‖_F²`.
fn support_products(a: &Matrix, b: &Matrix) -> (f64, f64) {
    let scale = (a.frobenius_norm() * b.frobenius_norm()).powi(2);
    if scale == 0.0 {
        return (0.0, 0.0);
    }
    let right = (&(&a.adjoint() * a) * &(&b.adjoint() * b)).frobenius_norm() / scale;
    let left = (&(a * &a.adjoint()) * &(b * &b.adjoint())).frobenius_norm() / scale;
    (right, left)
}

// S1: Clarkson–McCarthy directions and the equality case.
pub(super) fn s1(t: &mut Trial) -> Result<()> {
    let n = t.n;
    let (a, b) = match t.leg_name() {
        "generic" => t.kind.pair(&mut t.rng, n),
        "disjoint" => disjoint_pair(&mut t.rng, n, t.kind == EnsembleKind::Psd),
        _ => orthogonal_corange_pair(&mut t.rng, n),
    };
    t.input("A", &a);
    t.input("B", &b);
    let (right, left) = support_products(&a, &b);
    let two_sided = right <= EQUALITY_TOL && left <= EQUALITY_TOL;
    if t.leg_name() == "disjoint" {
        t.check(
            "constructed pair has A*AB*B = 0",
            right <= EQUALITY_TOL,
            right,
        );
    }
    let supports = disjoint_supports(&a, &b)?;
    t.check(
        "disjoint_supports agrees with the products",
        supports.disjoint() == two_sided,
        right.max(left),
    );
    for p in [0.5, 1.5, 2.0, 3.0] {
        let scale = 2.0 * (schatten_norm_pow(&a, p)? + schatten_norm_pow(&b, p)?);
        let gap = clarkson_gap(&a, &b, p)? / scale;
        let direction_ok = if p < 2.0 {
            gap <= INEQUALITY_TOL
        } else {
            gap >= -INEQUALITY_TOL
        };
        t.check(
            format!("{} inequality direction", label(p)),
            direction_ok,
            gap,
        );
        if p == 2.0 {
            t.check(
                "p=2 parallelogram identity",
                gap.abs() <= INEQUALITY_TOL,
                gap,
            );
        } else {
            let equal = norm_additivity(&a, &b, p, EQUALITY_TOL)?;
            t.check(
                format!("{} equality iff two-sided disjointness", label(p)),
                equal == two_sided,
                gap,
            );
        }
    }
    Ok(())
}

// S2: disjoint supports give mutual BJ orthogonality.
pub(super) fn s2(t: &mut Trial) -> Result<()> {
    let n = t.n;
    let (a, b) = match t.leg_name() {
        "psd_disjoint" => disjoint_pair(&mut t.rng, n, true),
        "disjoint" => disjoint_pair(&mut t.rng, n, false),
        _ => {
            let (b, a) = orthogonal_range_pair(&mut t.rng, n);
            (a, b)
        }
    };
    t.input("A", &a);
    t.input("B", &b);
    for p in [1.0, 1.5, 2.0, 3.0] {
        let ab = bj_definitional(&a, &b, spec(p), DEFAULT_TOL)?;
        let ba = bj_definitional(&b, &a, spec(p), DEFAULT_TOL)?;
        t.check(format!("{} A ⊥ B", label(p)), ab.holds, ab.gap);
        t.check(format!("{} B ⊥ A", label(p)), ba.holds, ba.gap);
        if p > 1.0 {
            let tr = bj_trace(&a, &b, p, DEFAULT_TOL)? && bj_trace(&b, &a, p, DEFAULT_TOL)?;
            t.check(
                format!("{} trace criterion both ways", label(p)),
                tr,
                ab.gap.min(ba.gap),
            );
        }
    }
    Ok(())
}

// S3: on the positive cone, BJ orthogonality forces disjoint supports.
pub(super) fn s3(t: &mut Trial) -> Result<()> {
    let n = t.n;
    let (a, b) = match t.leg_name() {
        "generic" => (psd(&mut t.rng, n, n), psd(&mut t.rng, n, n)),
        "disjoint" => disjoint_pair(&mut t.rng, n, true),
        _ => {
            let (a, b) = disjoint_pair(&mut t.rng, n, true);
            let u = hermitian_eigen(&a)?.top_vector();
            let bump = Matrix::outer(&u, &u).scale_real(NEAR_DISJOINT_DELTA * b.frobenius_norm());
            (a, &b + &bump)
        }
    };
    t.input("A", &a);
    t.input("B", &b);
    let supports = disjoint_supports(&a, &b)?;
    let residual = supports.right_residual.max(supports.left_residual);
    for p in [1.5, 2.0, 3.0] {
        let v = bj_definitional(&a, &b, spec(p), DEFAULT_TOL)?;
        t.check(
            format!("{} BJ implies residuals <= {RESIDUAL_TOL:e}", label(p)),
            !v.holds || residual <= RESIDUAL_TOL,
            residual,
        );
        match t.leg_name() {
            "disjoint" => t.check(
                format!("{} constructed pair is BJ", label(p)),
                v.holds,
                v.gap,
            ),
            "near_disjoint" => t.check(
                format!("{} perturbed pair is not BJ", label(p)),
                !v.holds,
                v.gap,
            ),
            _ => {}
        }
        t.check(
            format!("{} trace criterion agrees", label(p)),
            bj_trace(&a, &b, p, DEFAULT_TOL)? == v.holds,
            v.gap,
        );
    }
    Ok(())
}

// S4: isosceles versus BJ on the positive cone, the p = 1 law and the
// McCarthy bounds.
pub(super) fn s4(t: &mut Trial) -> Result<()> {
    let n = t.n;
    let (a, b) = match t.leg_name() {
        "generic" => (psd(&mut t.rng, n, n), psd(&mut t.rng, n, n)),
        _ => disjoint_pair(&mut t.rng, n, true),
    };
    t.input("A", &a);
    t.input("B", &b);
    for p in [1.5, 2.0] {
        let iso = isosceles(&a, &b, p, false, DEFAULT_TOL)?;
        let bj = bj_definitional(&a, &b, spec(p), DEFAULT_TOL)?;
        t.check(
            format!("{} isosceles iff BJ", label(p)),
            iso.holds == bj.holds,
            iso.gap,
        );
    }
    let iso1 = isosceles(&a, &b, 1.0, false, DEFAULT_TOL)?;
    let scale = a.frobenius_norm() * b.frobenius_norm();
    let commute_zero =
        (&a * &b).frobenius_norm().max((&b * &a).frobenius_norm()) <= EQUALITY_TOL * scale;
    t.check(
        "p=1 isosceles iff AB = BA = 0",
        iso1.holds == commute_zero,
        iso1.gap,
    );
    for p in [1.0, 1.5] {
        let iso = isosceles(&a, &b, p, false, DEFAULT_TOL)?;
        if iso.holds {
            let add = norm_additivity(&a, &b, p, EQUALITY_TOL)?;
            t.check(
                format!("{} isosceles gives additivity", label(p)),
                add,
                iso.gap,
            );
        }
    }
    for p in [1.0, 1.5, 2.0, 3.0] {
        let sum = schatten_norm_pow(&(&a + &b), p)?;
        let parts = schatten_norm_pow(&a, p)? + schatten_norm_pow(&b, p)?;
        let lower = 2f64.powf(1.0 - p) * sum - parts;
        let upper = parts - sum;
        t.check(
            format!("{} McCarthy bounds", label(p)),
            lower <= INEQUALITY_TOL * sum && upper <= INEQUALITY_TOL * sum,
            lower.max(upper) / sum,
        );
    }
    Ok(())
}

fn random_scalar(rng: &mut ChaCha8Rng) -> C64 {
    complex_gauss(rng)
}

// S5: semi-inner-product axioms and agreement of the trace test with the
// definitional optimizer.
pub(super) fn s5(t: &mut Trial) -> Result<()> {
    let n = t.n;
    let constructed = t.leg_name() == "orthogonalized";
    let (a, mut b) = t.kind.pair(&mut t.rng, n);
    // a dependent pair (2x2 nilpotents) orthogonalizes to rounding noise
    if constructed && linearly_dependent(&a, &b)? {
        b = ginibre(&mut t.rng, n, n);
    }
    let c = ginibre(&mut t.rng, n, n);
    t.input("A", &a);
    t.input("B", &b);
    t.input("C", &c);
    let (alpha, beta, gamma) = (
        random_scalar(&mut t.rng),
        random_scalar(&mut t.rng),
        random_scalar(&mut t.rng),
    );
    for p in [1.5, 2.0, 3.0] {
        let b = if constructed {
            // B - ([B, A] / ‖A‖²) A has [·, A] = 0
            let na = schatten_norm(&a, p)?;
            &b - &a.scale(semi_inner_product(&b, &a, p)? / (na * na))
        } else {
            b.clone()
        };
        let def = bj_definitional(&a, &b, spec(p), DEFAULT_TOL)?;
        let tr = bj_trace(&a, &b, p, DEFAULT_TOL)?;
        t.check(
            format!("{} trace test agrees with definition", label(p)),
            tr == def.holds,
            def.gap,
        );
        if constructed {
            t.check(
                format!("{} constructed pair is orthogonal", label(p)),
                def.holds,
                def.gap,
            );
        }
    }
    for p in [1.0, 1.5, 2.0, 3.0] {
        let sip = |x: &Matrix, y: &Matrix| semi_inner_product(x, y, p);
        let (na, nb, nc) = (
            schatten_norm(&a, p)?,
            schatten_norm(&b, p)?,
            schatten_norm(&c, p)?,
        );
        let d1 = (sip(&a, &a)? - na * na).norm() / (na * na);
        t.check(format!("{} [A, A] = ‖A‖²", label(p)), d1 <= AXIOM_TOL, d1);
        let lhs = sip(&(&a.scale(alpha) + &b.scale(beta)), &c)?;
        let rhs = alpha * sip(&a, &c)? + beta * sip(&b, &c)?;
        let d2 = (lhs - rhs).norm() / ((alpha.norm() * na + beta.norm() * nb) * nc);
        t.check(
            format!("{} linear in the first slot", label(p)),
            d2 <= AXIOM_TOL,
            d2,
        );
        let d3 = (sip(&a, &b.scale(gamma))? - gamma.conj() * sip(&a, &b)?).norm()
            / (gamma.norm() * na * nb);
        t.check(
            format!("{} conjugate homogeneous in the second slot", label(p)),
            d3 <= AXIOM_TOL,
            d3,
        );
        let d4 = sip(&a, &b)?.norm() / (na * nb) - 1.0;
        t.check(format!("{} Cauchy–Schwarz", label(p)), d4 <= AXIOM_TOL, d4);
    }
    Ok(())
}

// S6: I ⊥ A iff tr A = 0.
pub(super) fn s6(t: &mut Trial) -> Result<()> {
    let n = t.n;
    let mut a = t.kind.single(&mut t.rng, n);
    if t.leg_name() == "traceless" {
        let shift = a.trace() / n as f64;
        a = &a - &Matrix::identity(n).scale(shift);
    }
    t.input("A", &a);
    let id = Matrix::identity(n);
    for p in [1.0, 2.0, 3.0] {
        let v = bj_definitional(&id, &a, spec(p), DEFAULT_TOL)?;
        let traceless = a.trace().norm() <= DEFAULT_TOL * schatten_norm(&a, p)?;
        t.check(
            format!("{} I ⊥ A iff tr A = 0", label(p)),
            v.holds == traceless,
            v.gap,
        );
    }
    Ok(())
}

// S7: |I + γA| >= I for all γ, and |I + γA| = |I - γA| for all γ, only at A = 0.
pub(super) fn s7(t: &mut Trial) -> Result<()> {
    let n = t.n;
    let g = t.kind.single(&mut t.rng, n);
    let a = match t.leg_name() {
        "generic" => g,
        "zero" => Matrix::zeros(n, n),
        "skew_hermitian" => (&g - &g.adjoint()).scale_real(0.5),
        _ => g.hermitian_part(),
    };
    t.input("A", &a);
    let samples = default_gamma_samples(GAMMA_SEED);
    let zero = a.is_zero();
    let lowner = loewner_identity_test(&a, &samples, INEQUALITY_TOL)?;
    t.check("Löwner test holds iff A = 0", lowner == zero, a.max_abs());
    let id = Matrix::identity(n);
    let mut worst = 0.0_f64;
    for &g in &samples {
        let plus = abs_power(&(&id + &a.scale(g)), 1.0)?;
        let minus = abs_power(&(&id - &a.scale(g)), 1.0)?;
        worst =
            worst.max((&plus - &minus).frobenius_norm() / (1.0 + g.norm() * a.frobenius_norm()));
    }
    t.check(
        "|I + γA| = |I - γA| on samples iff A = 0",
        (worst <= INEQUALITY_TOL) == zero,
        worst,
    );
    if lowner {
        for p in [1.0, 2.0, 3.0] {
            let v = bj_definitional(&id, &a, spec(p), DEFAULT_TOL)?;
            t.check(
                format!("{} Löwner test implies I ⊥ A", label(p)),
                v.holds,
                v.gap,
            );
        }
    }
    Ok(())
}

// S8: sampled domination |B + γA| >= |B| and its conclusions.
pub(super) fn s8(t: &mut Trial) -> Result<()> {
    let n = t.n;
    let (b, a) = match t.leg_name() {
        "orthogonal_ranges" => orthogonal_range_pair(&mut t.rng, n),
        "generic" => (ginibre(&mut t.rng, n, n), ginibre(&mut t.rng, n, n)),
        _ => {
            let b = ginibre(&mut t.rng, n, n);
            let s = 0.25 + t.rng.random::<f64>();
            let a = b.scale_real(s);
            (b, a)
        }
    };
    t.input("B", &b);
    t.input("A", &a);
    let samples = default_gamma_samples(GAMMA_SEED);
    let r = loewner_domination(&b, &a, &samples, INEQUALITY_TOL)?;
    let cross = &b.adjoint() * &a;
    let scale = a.frobenius_norm() * b.frobenius_norm();
    let cross_zero = cross.frobenius_norm() <= EQUALITY_TOL * scale;
    if r.dominates {
        t.check(
            "domination gives tr(B*A) = 0",
            r.trace_orthogonal,
            cross.trace().norm() / scale,
        );
        t.check(
            "domination gives the kernel identity",
            r.kernel_identity,
            0.0,
        );
        t.check("domination gives B ⊥ A for all p", r.bj_all_p, 0.0);
        let sa = singular_values(&a)?;
        let sb = singular_values(&b)?;
        let singular = |s: &[f64]| s[s.len() - 1] <= EQUALITY_TOL * s[0];
        t.check(
            "domination gives a singular operand",
            singular(&sa) || singular(&sb),
            sa[n - 1].min(sb[n - 1]),
        );
    }
    // B*A >= 0 on both constructed legs, where domination is equivalent to B*A = 0
    if t.leg_name() != "generic" {
        t.check(
            "with B*A >= 0: domination iff B*A = 0",
            r.dominates == cross_zero,
            cross.frobenius_norm() / scale,
        );
    }
    Ok(())
}

// S9: parallelism iff linear dependence for 1 < p < ∞, and its failure at
// p ∈ {1, ∞}.
pub(super) fn s9(t: &mut Trial) -> Result<()> {
    let n = t.n;
    match t.leg_name() {
        "counterexample" => {
            let (a1, b1) = trace_parallel_pair(&mut t.rng, n);
            let (ai, bi) = spectral_parallel_pair(&mut t.rng, n, false);
            t.input("A_trace", &a1);
            t.input("B_trace", &b1);
            t.input("A_spectral", &ai);
            t.input("B_spectral", &bi);
            let e11 = Matrix::diag_real(&[1.0, 0.0]);
            let id = Matrix::identity(2);
            for (name, a, b, p) in [
                ("trace pair", &a1, &b1, 1.0),
                ("spectral pair", &ai, &bi, INF),
                ("diag(1,0), I", &e11, &id, 1.0),
                ("diag(1,0), I", &e11, &id, INF),
            ] {
                let v = parallel_definitional(a, b, spec(p), DEFAULT_TOL)?;
                let dep = linearly_dependent(a, b)?;
                t.check(
                    format!("{} {name}: parallel but independent", label(p)),
                    v.holds && !dep,
                    v.gap(),
                );
            }
            for (a, b) in [(&a1, &b1), (&ai, &bi)] {
                let v = parallel_definitional(a, b, spec(2.0), DEFAULT_TOL)?;
                t.check("p=2 independent pair is not parallel", !v.holds, v.gap());
            }
        }
        leg => {
            let (a, b) = if leg == "dependent" {
                dependent_pair(&mut t.rng, n)
            } else {
                (ginibre(&mut t.rng, n, n), ginibre(&mut t.rng, n, n))
            };
            t.input("A", &a);
            t.input("B", &b);
            let dep = linearly_dependent(&a, &b)?;
            t.check("ensemble certificate", dep == (leg == "dependent"), 0.0);
            for p in [1.5, 2.0, 3.0] {
                let v = parallel_definitional(&a, &b, spec(p), DEFAULT_TOL)?;
                t.check(
                    format!("{} parallel iff dependent", label(p)),
                    v.holds == dep,
                    v.gap(),
                );
            }
        }
    }
    Ok(())
}

// S10: the four-way trace characterization.
pub(super) fn s10(t: &mut Trial) -> Result<()> {
    let n = t.n;
    let (a, b) = if t.leg_name() == "dependent" {
        dependent_pair(&mut t.rng, n)
    } else {
        (ginibre(&mut t.rng, n, n), ginibre(&mut t.rng, n, n))
    };
    t.input("A", &a);
    t.input("B", &b);
    let dep = linearly_dependent(&a, &b)?;
    for p in [1.5, 2.0, 3.0] {
        let v = parallel_definitional(&a, &b, spec(p), DEFAULT_TOL)?;
        let ii = parallel_trace_p(&a, &b, p, DEFAULT_TOL)?;
        let iii = parallel_trace_p(&b, &a, p, DEFAULT_TOL)?;
        t.check(
            format!("{} parallel = (ii) = (iii) = dependent", label(p)),
            v.holds == dep && ii == dep && iii == dep,
            v.gap(),
        );
    }
    Ok(())
}

/// Upper-triangular `D + N` with Gaussian diagonal and strictly upper part.
fn triangular_perturbation(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let d: Vec<C64> = (0..n).map(|_| complex_gauss(rng)).collect();
    &Matrix::diag(&d) + &nilpotent(rng, n)
}

// S11: A ∥ I iff w(A) = ‖A‖, and v = w on Euclidean space.
pub(super) fn s11(t: &mut Trial) -> Result<()> {
    let n = t.n;
    let normal_leg = t.leg_name() == "normal";
    let a = if normal_leg {
        normal(&mut t.rng, n)
    } else {
        triangular_perturbation(&mut t.rng, n)
    };
    t.input("A", &a);
    let id = Matrix::identity(n);
    let par = parallel_definitional(&a, &id, NormSpec::spectral(), DEFAULT_TOL)?;
    let radius = parallel_identity_radius(&a, NormSpec::spectral(), DEFAULT_TOL)?;
    t.check("A ∥ I iff w(A) = ‖A‖", par.holds == radius.holds, par.gap());
    t.check(
        "ensemble direction",
        par.holds == normal_leg,
        (radius.radius - radius.norm) / radius.norm,
    );
    if normal_leg {
        let w = radius.radius;
        t.check(
            "w(A) = ‖A‖",
            (w - radius.norm).abs() <= EQUALITY_TOL,
            w - radius.norm,
        );
        if (t.offset / 2).is_multiple_of(2) {
            let v = numerical_radius_banach(&a, 2.0)?.value;
            t.check(
                "Banach radius at p=2 equals w",
                (v - w).abs() <= WITNESS_TOL * w,
                (v - w) / w,
            );
        }
    }
    Ok(())
}

/// Truncated shift of size k: ones on the subdiagonal.
pub fn truncated_shift(k: usize) -> Matrix {
    Matrix::from_fn(k, k, |i, j| {
        if i == j + 1 {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

// S12: A ∥ I iff λ‖A‖ is an eigenvalue for some unimodular λ.
pub(super) fn s12(t: &mut Trial) -> Result<()> {
    let n = t.n;
    let a = match t.leg_name() {
        "normal" => normal(&mut t.rng, n),
        "nilpotent" => nilpotent(&mut t.rng, n),
        _ => truncated_shift(2 + t.offset / 3 % 7),
    };
    t.input("A", &a);
    let k = a.rows();
    let par = parallel_definitional(&a, &Matrix::identity(k), NormSpec::spectral(), DEFAULT_TOL)?;
    let eig = eigen_parallel_identity(&a, NormSpec::spectral(), DEFAULT_TOL)?;
    t.check(
        "eigenvalue criterion agrees with parallelism",
        eig.is_some() == par.holds,
        par.gap(),
    );
    t.check(
        "ensemble direction",
        par.holds == (t.leg_name() == "normal"),
        par.gap(),
    );
    if t.leg_name() == "shift" {
        let w = numerical_radius_hilbert(&a)?.value;
        let exact = (std::f64::consts::PI / (k + 1) as f64).cos();
        t.check(
            format!("w of the {k}x{k} shift is cos(π/{})", k + 1),
            (w - exact).abs() <= WITNESS_TOL,
            w - exact,
        );
    }
    Ok(())
}

// S13: powers of a nilpotent are never parallel; orthogonal projections are
// parallel iff their ranges meet.
pub(super) fn s13(t: &mut Trial) -> Result<()> {
    let n = t.n;
    match t.leg_name() {
        "nilpotent" => {
            // m = 2 leaves no pair below the vanishing power
            let m = t.rng.random_range(3.min(n)..=n.min(6));
            let a = nilpotent(&mut t.rng, m);
            t.input("A", &a);
            // A^m = 0 is trivially parallel to everything, so j < m
            for k in 1..m {
                for j in (k + 1)..m {
                    let (ak, aj) = (a.pow(k as u32), a.pow(j as u32));
                    let v = parallel_definitional(&ak, &aj, NormSpec::spectral(), DEFAULT_TOL)?;
                    t.check(format!("A^{k} not parallel to A^{j}"), !v.holds, v.gap());
                }
            }
        }
        leg => {
            let (p, q) = if leg == "intersecting" {
                intersecting_projections(&mut t.rng, n)
            } else {
                transversal_projections(&mut t.rng, n)
            };
            t.input("P", &p);
            t.input("Q", &q);
            let basis = |m: &Matrix| -> Result<Vec<Vec<C64>>> {
                let f = crate::cmatrix::svd(m)?;
                Ok((0..f.rank()).map(|i| f.u_col(i)).collect())
            };
            let meet = subspaces_intersect(&basis(&p)?, &basis(&q)?, n, KERNEL_ANGLE_TOL)?;
            t.check("ensemble certificate", meet == (leg == "intersecting"), 0.0);
            let v = parallel_definitional(&p, &q, NormSpec::spectral(), DEFAULT_TOL)?;
            t.check("P ∥ Q iff ranges meet", v.holds == meet, v.gap());
        }
    }
    Ok(())
}

/// Diagonal real operator with `‖D‖ = 1` attained on exactly the
/// coordinates in `ties`.
fn tied_diagonal(rng: &mut ChaCha8Rng, n: usize, ties: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
            if i < ties {
                sign
            } else {
                sign * rng.random_range(0.1..0.9)
            }
        })
        .collect()
}

// S14: unitary invariance, the ε-isometry bound and norm-attainment
// transfer on ℓp.
pub(super) fn s14(t: &mut Trial) -> Result<()> {
    let n = t.n;
    match t.leg_name() {
        "conjugation" => {
            let (a, b) = if t.rng.random::<bool>() {
                spectral_parallel_pair(&mut t.rng, n, false)
            } else {
                (ginibre(&mut t.rng, n, n), ginibre(&mut t.rng, n, n))
            };
            let w = unitary(&mut t.rng, n);
            t.input("A", &a);
            t.input("B", &b);
            t.input("W", &w);
            let conj = |m: &Matrix| &(&w * m) * &w.adjoint();
            for p in [1.0, 2.0, INF] {
                let before = parallel_definitional(&a, &b, spec(p), DEFAULT_TOL)?;
                let after = parallel_definitional(&conj(&a), &conj(&b), spec(p), DEFAULT_TOL)?;
                let drift = (before.achieved - after.achieved).abs() / before.target;
                t.check(
                    format!("{} verdict invariant under conjugation", label(p)),
                    before.holds == after.holds && drift <= INEQUALITY_TOL,
                    drift,
                );
            }
        }
        "isometry" => {
            let eps = if (t.offset / 3).is_multiple_of(2) {
                0.01
            } else {
                0.05
            };
            let r = ginibre(&mut t.rng, n, n);
            let u = &Matrix::identity(n) + &r.scale_real(0.9 * eps / schatten_norm(&r, INF)?);
            let u_inv = crate::cmatrix::inverse(&u)?;
            // pull a parallel pair back through U so the conjugated pair is parallel
            let (a0, b0) = spectral_parallel_pair(&mut t.rng, n, false);
            let a = &(&u_inv * &a0) * &u;
            let b = &(&u_inv * &b0) * &u;
            t.input("A", &a);
            t.input("B", &b);
            t.input("U", &u);
            let r = epsilon_isometry_transfer(&a, &b, &u, eps, DEFAULT_TOL)?;
            t.check(
                format!("eps={eps} conjugated pair is parallel"),
                r.conjugated_parallel.holds,
                r.conjugated_parallel.gap(),
            );
            let total = schatten_norm(&a, INF)? + schatten_norm(&b, INF)?;
            t.check(
                format!("eps={eps} transfer bound"),
                r.lower_bound_ok && r.achieved <= total * (1.0 + INEQUALITY_TOL),
                (r.achieved - r.bound) / total,
            );
            let ratio = (1.0 - eps) / (1.0 + eps);
            let na = schatten_norm(&a, INF)?;
            let nc = schatten_norm(&a0, INF)?;
            t.check(
                format!("eps={eps} conjugation distorts norms by at most (1+ε)/(1-ε)"),
                ratio * na <= nc * (1.0 + INEQUALITY_TOL)
                    && nc <= na / ratio * (1.0 + INEQUALITY_TOL),
                nc / na,
            );
        }
        _ => {
            let p = [1.5, 3.0, INF][t.offset / 3 % 3];
            let ties = t.rng.random_range(1..=n.min(3));
            let d = tied_diagonal(&mut t.rng, n, ties);
            let dm = Matrix::diag_real(&d);
            let sample = |rng: &mut ChaCha8Rng| -> Vec<C64> {
                let mut x: Vec<C64> = (0..n)
                    .map(|i| {
                        if p.is_infinite() {
                            // max-norm: a saturated tied coordinate suffices
                            if i == 0 {
                                C64::new(if rng.random::<bool>() { 1.0 } else { -1.0 }, 0.0)
                            } else {
                                C64::new(rng.random_range(-1.0..1.0), 0.0)
                            }
                        } else if i < ties {
                            C64::new(rng.random_range(-1.0..1.0), 0.0)
                        } else {
                            C64::new(0.0, 0.0)
                        }
                    })
                    .collect();
                if !p.is_infinite() {
                    normalize_lp(&mut x, p);
                }
                x
            };
            let x = sample(&mut t.rng);
            let y = if t.rng.random::<bool>() && !p.is_infinite() {
                x.iter().map(|z| -z).collect()
            } else {
                sample(&mut t.rng)
            };
            t.input("D", &dm);
            t.input("x", &Matrix::column(&x));
            t.input("y", &Matrix::column(&y));
            let vspec = if p.is_infinite() {
                NormSpec::VectorMax
            } else {
                NormSpec::VectorLp(p)
            };
            let (dx, dy) = (dm.mul_vec(&x), dm.mul_vec(&y));
            for (v, dv) in [(&x, &dx), (&y, &dy)] {
                let defect = (lp_norm(v, p) - lp_norm(dv, p)).abs();
                t.check(
                    format!("{} sample lies in the norming set", label(p)),
                    defect <= INEQUALITY_TOL,
                    defect,
                );
            }
            let xy = vector_parallel(&x, &y, vspec, DEFAULT_TOL)?;
            let images = vector_parallel(&dx, &dy, vspec, DEFAULT_TOL)?;
            t.check(
                format!("{} parallel images give parallel vectors", label(p)),
                !images.holds || xy.holds,
                xy.gap(),
            );
            if !p.is_infinite() {
                t.check(
                    format!("{} smooth case: x ∥ y iff Dx ∥ Dy", label(p)),
                    xy.holds == images.holds,
                    images.gap(),
                );
            }
        }
    }
    Ok(())
}

// S15: the Hilbert witness x ∈ M_A ∩ M_B with Ax/‖A‖ = μ Bx/‖B‖.
pub(super) fn s15(t: &mut Trial) -> Result<()> {
    let n = t.n;
    let leg = t.leg_name();
    let real = leg.starts_with("real");
    let (a, b) = match leg {
        "real_parallel" | "complex_parallel" => spectral_parallel_pair(&mut t.rng, n, real),
        "real_generic" => (
            real_ginibre(&mut t.rng, n, n),
            real_ginibre(&mut t.rng, n, n),
        ),
        _ => (ginibre(&mut t.rng, n, n), ginibre(&mut t.rng, n, n)),
    };
    t.input("A", &a);
    t.input("B", &b);
    let par = parallel_definitional(&a, &b, NormSpec::spectral(), DEFAULT_TOL)?;
    let w = hilbert_parallel_witness(&a, &b, DEFAULT_TOL)?;
    t.check(
        "witness criterion agrees with parallelism",
        w.holds == par.holds,
        par.gap(),
    );
    t.check(
        "ensemble direction",
        par.holds == leg.ends_with("parallel"),
        par.gap(),
    );
    if !w.holds {
        return Ok(());
    }
    let (na, nb) = (schatten_norm(&a, INF)?, schatten_norm(&b, INF)?);
    let defect = w.attainment_defect / na.max(nb);
    t.check("witness lies in M_A ∩ M_B", defect <= WITNESS_TOL, defect);
    t.check(
        "Ax/‖A‖ = μ Bx/‖B‖",
        w.alignment_residual <= WITNESS_TOL,
        w.alignment_residual,
    );
    if real {
        let off = (w.alignment.re.abs() - 1.0).abs().max(w.alignment.im.abs());
        t.check("real pair aligns with μ = ±1", off <= WITNESS_TOL, off);
    }
    // sup of |⟨Bx, y⟩| over Ax ∥ y is attained at y = Ax/‖Ax‖
    let ax = a.mul_vec(&w.witness);
    let bx = b.mul_vec(&w.witness);
    let nax = crate::cmatrix::norm2(&ax);
    let attained = crate::cmatrix::inner(&bx, &ax).norm() / nax;
    t.check(
        "sup |⟨Bx, y⟩| attains ‖B‖",
        (attained - nb).abs() <= WITNESS_TOL * nb,
        (attained - nb) / nb,
    );
    // A ∥ B iff A ⊥ (‖B‖A + λ‖A‖B) for some unimodular λ; the one that
    // works is -λ* where ‖A + λ*B‖ = ‖A‖ + ‖B‖. The witness phase μ is that
    // maximizer to machine precision, the grid search only to about √ε.
    let phase_gap = (w.alignment - par.lambda_star).norm();
    t.check("witness phase matches λ*", phase_gap <= 1e-3, phase_gap);
    let dir = &a.scale_real(nb) - &b.scale(w.alignment * na);
    let bj = bj_definitional(&a, &dir, NormSpec::spectral(), DEFAULT_TOL)?;
    t.check("A ⊥ ‖B‖A + λ‖A‖B", bj.holds, bj.gap);
    Ok(())
}
