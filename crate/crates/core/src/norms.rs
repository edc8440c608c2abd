//! Schatten (quasi-)norms, vector ℓp norms, induced ℓp operator norms and the
//! Hilbert and Banach numerical radii.

use serde::{Deserialize, Serialize};

use crate::cmatrix::{hermitian_eigen, singular_values, svd, Matrix, C64, ONE, ZERO};
use crate::error::{Error, Result};
use crate::search::{circle_max, sphere_ascent, AscentOptions};

pub const INF: f64 = f64::INFINITY;

/// Grid size of the phase sweep used for the Hilbert numerical radius.
pub const RADIUS_GRID: usize = 1024;

/// Serde adapter for exponents: finite values as numbers, `∞` as `"inf"`.
pub mod exponent {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &f64, s: S) -> Result<S::Ok, S::Error> {
        if p.is_infinite() && *p > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*p)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(p) => Ok(p),
            Repr::Text(t) => match t.trim().to_ascii_lowercase().as_str() {
                "inf" | "infinity" | "∞" => Ok(f64::INFINITY),
                other => other
                    .parse()
                    .map_err(|_| de::Error::custom(format!("invalid exponent {t:?}"))),
            },
        }
    }
}

/// Selects the ambient norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "p", rename_all = "snake_case")]
pub enum NormSpec {
    /// Schatten p-norm, `0 < p <= ∞` (quasi-norm below 1, spectral norm at ∞).
    Schatten(#[serde(with = "exponent")] f64),
    /// Operator norm induced by ℓp on both sides, `1 <= p <= ∞`.
    InducedLp(#[serde(with = "exponent")] f64),
    /// ℓp norm of the entries read as one vector.
    VectorLp(#[serde(with = "exponent")] f64),
    /// Max modulus of the entries.
    VectorMax,
}

impl NormSpec {
    pub const fn spectral() -> Self {
        NormSpec::Schatten(INF)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            NormSpec::Schatten(p) if p > 0.0 && !p.is_nan() => Ok(()),
            NormSpec::InducedLp(p) | NormSpec::VectorLp(p) if p >= 1.0 => Ok(()),
            NormSpec::VectorMax => Ok(()),
            other => Err(Error::Unsupported(format!(
                "invalid norm parameter in {other:?}"
            ))),
        }
    }

    /// True for the specs whose predicates are decided by convex searches on
    /// a genuine norm (not a quasi-norm).
    pub fn is_norm(&self) -> bool {
        match *self {
            NormSpec::Schatten(p) => p >= 1.0,
            _ => self.validate().is_ok(),
        }
    }

    /// Induced norms for p outside {1, 2, ∞} are computed by multistart
    /// ascent and are only certified lower bounds.
    pub fn is_exact(&self) -> bool {
        match *self {
            NormSpec::InducedLp(p) => p == 1.0 || p == 2.0 || p == INF,
            _ => true,
        }
    }

    pub fn norm(&self, a: &Matrix) -> Result<f64> {
        self.validate()?;
        match *self {
            NormSpec::Schatten(p) => schatten_norm(a, p),
            NormSpec::InducedLp(p) => Ok(induced_norm(a, p)?.value),
            NormSpec::VectorLp(p) => Ok(lp_norm(a.as_slice(), p)),
            NormSpec::VectorMax => Ok(max_norm(a.as_slice())),
        }
    }
}

/// `(Σ s_i^p)^{1/p}`, or `s_1` for `p = ∞`.
pub fn schatten_norm(a: &Matrix, p: f64) -> Result<f64> {
    if p.is_nan() || p <= 0.0 {
        return Err(Error::Unsupported(format!(
            "Schatten exponent must be positive, got {p}"
        )));
    }
    let s = singular_values(a)?;
    Ok(lp_of_reals(&s, p))
}

/// `‖A‖_p^p = Σ s_i^p` for finite `p > 0`.
pub fn schatten_norm_pow(a: &Matrix, p: f64) -> Result<f64> {
    if p.is_nan() || p <= 0.0 || p.is_infinite() {
        return Err(Error::Unsupported(format!(
            "p-th power needs finite p > 0, got {p}"
        )));
    }
    let s = singular_values(a)?;
    Ok(s.iter().map(|x| x.powf(p)).sum())
}

fn lp_of_reals(s: &[f64], p: f64) -> f64 {
    let top = s.iter().fold(0.0_f64, |m, &x| m.max(x.abs()));
    if p.is_infinite() || top == 0.0 {
        return top;
    }
    top * s
        .iter()
        .map(|x| (x.abs() / top).powf(p))
        .sum::<f64>()
        .powf(1.0 / p)
}

pub fn lp_norm(x: &[C64], p: f64) -> f64 {
    let mods: Vec<f64> = x.iter().map(|z| z.norm()).collect();
    lp_of_reals(&mods, p)
}

pub fn max_norm(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Vector norm under `spec`, which must be `VectorLp` or `VectorMax`.
pub fn vector_norm(x: &[C64], spec: NormSpec) -> Result<f64> {
    match spec {
        NormSpec::VectorLp(p) if p >= 1.0 => Ok(lp_norm(x, p)),
        NormSpec::VectorMax => Ok(max_norm(x)),
        other => Err(Error::Unsupported(format!(
            "{other:?} is not a vector norm"
        ))),
    }
}

/// Scales `x` onto the unit sphere of ℓp (max norm for `p = ∞`).
pub fn normalize_lp(x: &mut [C64], p: f64) {
    let n = lp_norm(x, p);
    if n > 0.0 {
        x.iter_mut().for_each(|z| *z /= n);
    }
}

/// Value of a norm or radius together with the vector (and phase) realizing it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusResult {
    pub value: f64,
    pub witness_vector: Vec<C64>,
    pub witness_phase: C64,
}

pub(crate) fn unit_phase(z: C64) -> C64 {
    if z.norm() == 0.0 {
        ONE
    } else {
        z / z.norm()
    }
}

/// Operator norm of `A` on ℓp, `1 <= p <= ∞`.
///
/// Closed forms for p ∈ {1, 2, ∞}; otherwise the best value found by
/// multistart ascent of `‖Ax‖_p` over the unit sphere (a lower bound).
pub fn induced_norm(a: &Matrix, p: f64) -> Result<RadiusResult> {
    induced_norm_with(a, p, &AscentOptions::new(false))
}

pub fn induced_norm_with(a: &Matrix, p: f64, opts: &AscentOptions) -> Result<RadiusResult> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::Unsupported(format!(
            "induced norm needs p >= 1, got {p}"
        )));
    }
    let (rows, cols) = a.shape();
    if p == 1.0 {
        let mut best = (0usize, -1.0);
        for j in 0..cols {
            let s: f64 = (0..rows).map(|i| a[(i, j)].norm()).sum();
            if s > best.1 {
                best = (j, s);
            }
        }
        let w = (0..cols)
            .map(|j| if j == best.0 { ONE } else { ZERO })
            .collect();
        return Ok(RadiusResult {
            value: best.1,
            witness_vector: w,
            witness_phase: ONE,
        });
    }
    if p == INF {
        let mut best = (0usize, -1.0);
        for i in 0..rows {
            let s: f64 = a.row(i).iter().map(|z| z.norm()).sum();
            if s > best.1 {
                best = (i, s);
            }
        }
        let w = a
            .row(best.0)
            .iter()
            .map(|&z| unit_phase(z).conj())
            .collect();
        return Ok(RadiusResult {
            value: best.1,
            witness_vector: w,
            witness_phase: ONE,
        });
    }
    if p == 2.0 {
        let f = svd(a)?;
        return Ok(RadiusResult {
            value: f.largest(),
            witness_vector: f.v_col(0),
            witness_phase: ONE,
        });
    }
    let (value, x) = sphere_ascent(
        cols,
        |x: &mut Vec<C64>| normalize_lp(x, p),
        |x: &[C64]| lp_norm(&a.mul_vec(x), p),
        opts,
    );
    Ok(RadiusResult {
        value,
        witness_vector: x,
        witness_phase: ONE,
    })
}

/// Hilbert numerical radius `w(A) = max_θ λ_max(Re(e^{iθ} A))`.
pub fn numerical_radius_hilbert(a: &Matrix) -> Result<RadiusResult> {
    if !a.is_square() {
        return Err(Error::Shape(
            "numerical radius needs a square matrix".into(),
        ));
    }
    let top = |theta: f64| -> f64 {
        let rot = a.scale(C64::from_polar(1.0, theta));
        hermitian_eigen(&rot.hermitian_part())
            .map(|e| e.max())
            .unwrap_or(f64::NAN)
    };
    let (theta, _) = circle_max(top, RADIUS_GRID, 3, 1e-10);
    let phase = C64::from_polar(1.0, theta);
    let eig = hermitian_eigen(&a.scale(phase).hermitian_part())?;
    Ok(RadiusResult {
        value: eig.max(),
        witness_vector: eig.top_vector(),
        witness_phase: phase,
    })
}

/// Norming functional of a unit vector of ℓp applied to `y`:
/// `Σ conj(sgn x_i) |x_i|^{p-1} y_i / ‖x‖_p^{p-1}`.
pub fn lp_duality_pairing(x: &[C64], y: &[C64], p: f64) -> C64 {
    let nx = lp_norm(x, p);
    if nx == 0.0 {
        return ZERO;
    }
    let acc: C64 = x
        .iter()
        .zip(y)
        .map(|(&xi, &yi)| {
            let m = xi.norm() / nx;
            if m == 0.0 {
                ZERO
            } else {
                unit_phase(xi).conj() * m.powf(p - 1.0) * yi
            }
        })
        .sum();
    acc
}

/// Banach numerical radius `v(A)` on ℓp^n, `1 < p < ∞`, by multistart ascent
/// of `|x*(Ax)|` over the unit sphere.
pub fn numerical_radius_banach(a: &Matrix, p: f64) -> Result<RadiusResult> {
    numerical_radius_banach_with(a, p, &AscentOptions::new(false))
}

pub fn numerical_radius_banach_with(
    a: &Matrix,
    p: f64,
    opts: &AscentOptions,
) -> Result<RadiusResult> {
    if !a.is_square() {
        return Err(Error::Shape(
            "numerical radius needs a square matrix".into(),
        ));
    }
    if !(p > 1.0 && p < INF) {
        return Err(Error::Unsupported(format!(
            "Banach numerical radius is implemented for smooth ℓp, 1 < p < ∞; got {p}"
        )));
    }
    let functional = |x: &[C64]| lp_duality_pairing(x, &a.mul_vec(x), p);
    let (value, x) = sphere_ascent(
        a.cols(),
        |x: &mut Vec<C64>| normalize_lp(x, p),
        |x: &[C64]| functional(x).norm(),
        opts,
    );
    let phase = unit_phase(functional(&x));
    Ok(RadiusResult {
        value,
        witness_vector: x,
        witness_phase: phase,
    })
}
