//! Seeded random matrix ensembles, including constructive ones that satisfy
//! a structural certificate by design.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::cmatrix::{inner, norm2, projection_onto, Matrix, C64, ZERO};

/// Ensemble families selectable from a suite configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnsembleKind {
    Ginibre,
    Psd,
    Unitary,
    Projection,
    Nilpotent,
    PartialIsometry,
    DisjointPair,
    DependentPair,
    CommutingKernelPair,
}

impl EnsembleKind {
    pub const ALL: [EnsembleKind; 9] = [
        EnsembleKind::Ginibre,
        EnsembleKind::Psd,
        EnsembleKind::Unitary,
        EnsembleKind::Projection,
        EnsembleKind::Nilpotent,
        EnsembleKind::PartialIsometry,
        EnsembleKind::DisjointPair,
        EnsembleKind::DependentPair,
        EnsembleKind::CommutingKernelPair,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EnsembleKind::Ginibre => "ginibre",
            EnsembleKind::Psd => "psd",
            EnsembleKind::Unitary => "unitary",
            EnsembleKind::Projection => "projection",
            EnsembleKind::Nilpotent => "nilpotent",
            EnsembleKind::PartialIsometry => "partial_isometry",
            EnsembleKind::DisjointPair => "disjoint_pair",
            EnsembleKind::DependentPair => "dependent_pair",
            EnsembleKind::CommutingKernelPair => "commuting_kernel_pair",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    /// A pair drawn from this family: two independent draws for single-matrix
    /// families, the constructed pair otherwise.
    pub fn pair(self, rng: &mut ChaCha8Rng, n: usize) -> (Matrix, Matrix) {
        match self {
            EnsembleKind::DisjointPair => disjoint_pair(rng, n, false),
            EnsembleKind::DependentPair => dependent_pair(rng, n),
            EnsembleKind::CommutingKernelPair => orthogonal_range_pair(rng, n),
            single => (single.single(rng, n), single.single(rng, n)),
        }
    }

    pub fn single(self, rng: &mut ChaCha8Rng, n: usize) -> Matrix {
        match self {
            EnsembleKind::Ginibre => ginibre(rng, n, n),
            EnsembleKind::Psd => psd(rng, n, n),
            EnsembleKind::Unitary => unitary(rng, n),
            EnsembleKind::Projection => {
                let r = rng.random_range(1..n);
                projection(rng, n, r)
            }
            EnsembleKind::Nilpotent => nilpotent(rng, n),
            EnsembleKind::PartialIsometry => {
                let r = rng.random_range(1..n);
                partial_isometry(rng, n, r)
            }
            pair_kind => pair_kind.pair(rng, n).0,
        }
    }
}

fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// Standard complex Gaussian, `E|z|^2 = 1`.
pub fn complex_gauss(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(gauss(rng), gauss(rng)) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn ginibre(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| complex_gauss(rng))
}

pub fn real_ginibre(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| C64::new(gauss(rng), 0.0))
}

/// `G G* / n` with `G` of size n × rank.
pub fn psd(rng: &mut ChaCha8Rng, n: usize, rank: usize) -> Matrix {
    let g = ginibre(rng, n, rank);
    (&g * &g.adjoint()).scale_real(1.0 / n as f64)
}

/// Gram–Schmidt on Gaussian columns. The first `k` columns are orthonormal;
/// with `real` the entries stay real.
fn orthonormal_columns(rng: &mut ChaCha8Rng, n: usize, k: usize, real: bool) -> Vec<Vec<C64>> {
    extend_orthonormal(rng, n, Vec::with_capacity(k), k, real)
}

/// Extends an orthonormal family to `k` vectors with Gaussian directions.
fn extend_orthonormal(
    rng: &mut ChaCha8Rng,
    n: usize,
    mut out: Vec<Vec<C64>>,
    k: usize,
    real: bool,
) -> Vec<Vec<C64>> {
    while out.len() < k {
        let mut v: Vec<C64> = (0..n)
            .map(|_| {
                if real {
                    C64::new(gauss(rng), 0.0)
                } else {
                    complex_gauss(rng)
                }
            })
            .collect();
        // two passes keep the basis orthonormal to working precision
        for _ in 0..2 {
            for q in &out {
                let c = inner(&v, q);
                v.iter_mut().zip(q).for_each(|(vi, qi)| *vi -= c * qi);
            }
        }
        let nv = norm2(&v);
        if nv > 1e-6 {
            v.iter_mut().for_each(|z| *z /= nv);
            out.push(v);
        }
    }
    out
}

pub fn unitary(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    Matrix::from_columns(&orthonormal_columns(rng, n, n, false))
}

pub fn real_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    Matrix::from_columns(&orthonormal_columns(rng, n, n, true))
}

/// Orthogonal projection onto a random subspace of dimension `rank`.
pub fn projection(rng: &mut ChaCha8Rng, n: usize, rank: usize) -> Matrix {
    projection_onto(&orthonormal_columns(rng, n, rank, false), n)
}

/// Strictly upper-triangular Gaussian matrix (nilpotent of index n almost
/// surely).
pub fn nilpotent(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    Matrix::from_fn(n, n, |i, j| if j > i { complex_gauss(rng) } else { ZERO })
}

pub fn partial_isometry(rng: &mut ChaCha8Rng, n: usize, rank: usize) -> Matrix {
    let u = orthonormal_columns(rng, n, rank, false);
    let v = orthonormal_columns(rng, n, rank, false);
    let mut m = Matrix::zeros(n, n);
    for (a, b) in u.iter().zip(&v) {
        m = &m + &Matrix::outer(a, b);
    }
    m
}

/// Orthogonal projections whose ranges share exactly one random direction.
pub fn intersecting_projections(rng: &mut ChaCha8Rng, n: usize) -> (Matrix, Matrix) {
    let u = orthonormal_columns(rng, n, 1, false);
    let r1 = rng.random_range(1..=n);
    let r2 = rng.random_range(1..=(n + 1 - r1));
    let p = extend_orthonormal(rng, n, u.clone(), r1, false);
    let q = extend_orthonormal(rng, n, u, r2, false);
    (projection_onto(&p, n), projection_onto(&q, n))
}

/// Orthogonal projections onto independent random subspaces with
/// `r1 + r2 <= n`, so the ranges meet only in 0.
pub fn transversal_projections(rng: &mut ChaCha8Rng, n: usize) -> (Matrix, Matrix) {
    let r1 = rng.random_range(1..n);
    let r2 = rng.random_range(1..=(n - r1));
    let p = orthonormal_columns(rng, n, r1, false);
    let q = orthonormal_columns(rng, n, r2, false);
    (projection_onto(&p, n), projection_onto(&q, n))
}

/// Normal matrix `U diag(d) U*` with a random complex spectrum.
pub fn normal(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let u = unitary(rng, n);
    let d: Vec<C64> = (0..n).map(|_| complex_gauss(rng)).collect();
    &(&u * &Matrix::diag(&d)) * &u.adjoint()
}

fn block_split(rng: &mut ChaCha8Rng, n: usize) -> usize {
    rng.random_range(1..n)
}

/// Embeds `a` (k × k) and `b` ((n-k) × (n-k)) as complementary diagonal
/// blocks.
fn blocks(a: &Matrix, b: &Matrix) -> (Matrix, Matrix) {
    let k = a.rows();
    let n = k + b.rows();
    let x = Matrix::from_fn(n, n, |i, j| if i < k && j < k { a[(i, j)] } else { ZERO });
    let y = Matrix::from_fn(n, n, |i, j| {
        if i >= k && j >= k {
            b[(i - k, j - k)]
        } else {
            ZERO
        }
    });
    (x, y)
}

/// Pair with disjoint supports: complementary diagonal blocks, then a joint
/// unitary change of basis (`W (A ⊕ 0) W*` for psd pairs, `W1 (A ⊕ 0) W2`
/// otherwise).
pub fn disjoint_pair(rng: &mut ChaCha8Rng, n: usize, positive: bool) -> (Matrix, Matrix) {
    let k = block_split(rng, n);
    let (a, b) = if positive {
        (psd(rng, k, k), psd(rng, n - k, n - k))
    } else {
        (ginibre(rng, k, k), ginibre(rng, n - k, n - k))
    };
    let (x, y) = blocks(&a, &b);
    let w1 = unitary(rng, n);
    let w2 = if positive {
        w1.adjoint()
    } else {
        unitary(rng, n)
    };
    (&(&w1 * &x) * &w2, &(&w1 * &y) * &w2)
}

/// `(A, αA)` with α a random nonzero complex scalar.
pub fn dependent_pair(rng: &mut ChaCha8Rng, n: usize) -> (Matrix, Matrix) {
    let a = ginibre(rng, n, n);
    let alpha = C64::from_polar(
        0.25 + 2.0 * rng.random::<f64>(),
        std::f64::consts::TAU * rng.random::<f64>(),
    );
    let b = a.scale(alpha);
    (a, b)
}

/// `(B, A) = (P G1, (I - P) G2)` for a random orthogonal projection P, so
/// that `B* A = 0` (orthogonal ranges).
pub fn orthogonal_range_pair(rng: &mut ChaCha8Rng, n: usize) -> (Matrix, Matrix) {
    let r = block_split(rng, n);
    let p = projection(rng, n, r);
    let q = &Matrix::identity(n) - &p;
    let g1 = ginibre(rng, n, n);
    let g2 = ginibre(rng, n, n);
    (&p * &g1, &q * &g2)
}

/// `(A, B) = (G1 P, G2 (I - P))`: right supports disjoint, ranges
/// overlapping.
pub fn orthogonal_corange_pair(rng: &mut ChaCha8Rng, n: usize) -> (Matrix, Matrix) {
    let r = block_split(rng, n);
    let p = projection(rng, n, r);
    let q = &Matrix::identity(n) - &p;
    (&ginibre(rng, n, n) * &p, &ginibre(rng, n, n) * &q)
}

/// Pair that is parallel in the spectral norm but linearly independent:
/// `W1 (s ⊕ A') W2` and `W1 (t ⊕ B') W2` with `‖A'‖ <= 0.8 s`,
/// `‖B'‖ <= 0.8 t`.
pub fn spectral_parallel_pair(rng: &mut ChaCha8Rng, n: usize, real: bool) -> (Matrix, Matrix) {
    loop {
        let (a, b) = spectral_parallel_draw(rng, n, real);
        if well_separated(&a, &b) {
            return (a, b);
        }
    }
}

/// Frobenius cosine at most 0.99, so the pair stays clearly independent.
fn well_separated(a: &Matrix, b: &Matrix) -> bool {
    let c = inner(a.as_slice(), b.as_slice()).norm() / (a.frobenius_norm() * b.frobenius_norm());
    c <= 0.99
}

fn spectral_parallel_draw(rng: &mut ChaCha8Rng, n: usize, real: bool) -> (Matrix, Matrix) {
    let s = 0.5 + rng.random::<f64>();
    let t = 0.5 + rng.random::<f64>();
    let tail = |scale: f64, rng: &mut ChaCha8Rng| {
        let g = if real {
            real_ginibre(rng, n - 1, n - 1)
        } else {
            ginibre(rng, n - 1, n - 1)
        };
        let norm = crate::norms::schatten_norm(&g, f64::INFINITY)
            .unwrap_or(1.0)
            .max(1e-12);
        g.scale_real(0.8 * scale * rng.random::<f64>() / norm)
    };
    let a_tail = tail(s, rng);
    let b_tail = tail(t, rng);
    let embed = |head: f64, rest: &Matrix| {
        Matrix::from_fn(n, n, |i, j| match (i, j) {
            (0, 0) => C64::new(head, 0.0),
            (0, _) | (_, 0) => ZERO,
            _ => rest[(i - 1, j - 1)],
        })
    };
    let (w1, w2) = if real {
        (real_orthogonal(rng, n), real_orthogonal(rng, n))
    } else {
        (unitary(rng, n), unitary(rng, n))
    };
    let a = &(&w1 * &embed(s, &a_tail)) * &w2;
    let b = &(&w1 * &embed(t, &b_tail)) * &w2;
    (a, b)
}

/// Pair sharing the polar isometry, `(U P1, U P2)` with commuting psd P1,
/// P2: parallel in the trace norm but linearly independent.
pub fn trace_parallel_pair(rng: &mut ChaCha8Rng, n: usize) -> (Matrix, Matrix) {
    loop {
        let (a, b) = trace_parallel_draw(rng, n);
        if well_separated(&a, &b) {
            return (a, b);
        }
    }
}

fn trace_parallel_draw(rng: &mut ChaCha8Rng, n: usize) -> (Matrix, Matrix) {
    let u = unitary(rng, n);
    let w = unitary(rng, n);
    let d1: Vec<f64> = (0..n).map(|_| 0.1 + rng.random::<f64>()).collect();
    let d2: Vec<f64> = (0..n).map(|_| 0.1 + rng.random::<f64>()).collect();
    let p1 = &(&w * &Matrix::diag_real(&d1)) * &w.adjoint();
    let p2 = &(&w * &Matrix::diag_real(&d2)) * &w.adjoint();
    (&u * &p1, &u * &p2)
}
