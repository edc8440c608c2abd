//! Small deterministic optimizers shared by the norm and predicate layers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::cmatrix::{C64, ONE, ZERO};

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section maximization of `f` on `[lo, hi]` until the bracket is
/// shorter than `xtol`. Returns `(argmax, max)`.
pub fn golden_section_max(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    xtol: f64,
) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > xtol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Maximizes a `2π`-periodic function: `grid` equispaced samples, then
/// golden-section refinement in the neighbourhood of the `windows` best
/// local grid maxima. Returns `(theta, value)`.
pub fn circle_max(f: impl Fn(f64) -> f64, grid: usize, windows: usize, xtol: f64) -> (f64, f64) {
    let step = std::f64::consts::TAU / grid as f64;
    let samples: Vec<f64> = (0..grid).map(|k| f(k as f64 * step)).collect();
    let mut peaks: Vec<usize> = (0..grid)
        .filter(|&k| {
            let prev = samples[(k + grid - 1) % grid];
            let next = samples[(k + 1) % grid];
            samples[k] >= prev && samples[k] >= next
        })
        .collect();
    peaks.sort_by(|&a, &b| samples[b].total_cmp(&samples[a]).then(a.cmp(&b)));
    peaks.truncate(windows.max(1));

    let mut best_k = 0;
    for k in 1..grid {
        if samples[k] > samples[best_k] {
            best_k = k;
        }
    }
    let mut best = (best_k as f64 * step, samples[best_k]);
    for &k in &peaks {
        let center = k as f64 * step;
        let (t, v) = golden_section_max(&f, center - step, center + step, xtol);
        if v > best.1 {
            best = (t, v);
        }
    }
    (best.0.rem_euclid(std::f64::consts::TAU), best.1)
}

/// Nelder–Mead minimization in two real variables.
pub fn nelder_mead_2d(
    f: impl Fn([f64; 2]) -> f64,
    start: [f64; 2],
    initial_step: f64,
    max_iter: usize,
) -> ([f64; 2], f64) {
    let mut simplex = [
        start,
        [start[0] + initial_step, start[1]],
        [start[0], start[1] + initial_step],
    ];
    let mut vals = simplex.map(&f);
    let xtol = 1e-13 * (1.0 + start[0].abs().max(start[1].abs()));

    for _ in 0..max_iter {
        // order: best, middle, worst
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        simplex = idx.map(|i| simplex[i]);
        vals = idx.map(|i| vals[i]);

        let size = (1..3)
            .map(|k| {
                (simplex[k][0] - simplex[0][0])
                    .abs()
                    .max((simplex[k][1] - simplex[0][1]).abs())
            })
            .fold(0.0, f64::max);
        if size < xtol {
            break;
        }

        let centroid = [
            (simplex[0][0] + simplex[1][0]) / 2.0,
            (simplex[0][1] + simplex[1][1]) / 2.0,
        ];
        let along = |t: f64| {
            [
                centroid[0] + t * (simplex[2][0] - centroid[0]),
                centroid[1] + t * (simplex[2][1] - centroid[1]),
            ]
        };
        let xr = along(-1.0);
        let fr = f(xr);
        if fr < vals[0] {
            let xe = along(-2.0);
            let fe = f(xe);
            if fe < fr {
                simplex[2] = xe;
                vals[2] = fe;
            } else {
                simplex[2] = xr;
                vals[2] = fr;
            }
        } else if fr < vals[1] {
            simplex[2] = xr;
            vals[2] = fr;
        } else {
            let (xc, fc) = if fr < vals[2] {
                let xc = along(-0.5);
                (xc, f(xc))
            } else {
                let xc = along(0.5);
                (xc, f(xc))
            };
            if fc < vals[2].min(fr) {
                simplex[2] = xc;
                vals[2] = fc;
            } else {
                for k in 1..3 {
                    simplex[k] = [
                        simplex[0][0] + 0.5 * (simplex[k][0] - simplex[0][0]),
                        simplex[0][1] + 0.5 * (simplex[k][1] - simplex[0][1]),
                    ];
                    vals[k] = f(simplex[k]);
                }
            }
        }
    }
    let mut best = 0;
    for k in 1..3 {
        if vals[k] < vals[best] {
            best = k;
        }
    }
    (simplex[best], vals[best])
}

#[derive(Debug, Clone, Copy)]
pub struct AscentOptions {
    pub starts: usize,
    pub steps: usize,
    pub seed: u64,
    /// Restrict the search to real vectors.
    pub real: bool,
}

impl AscentOptions {
    pub const DEFAULT_SEED: u64 = 0x5eed_1ab5;

    pub fn new(real: bool) -> Self {
        Self {
            starts: 64,
            steps: 500,
            seed: Self::DEFAULT_SEED,
            real,
        }
    }
}

/// Deterministic start vectors: the coordinate basis first, then seeded
/// Gaussian draws.
pub fn start_vectors(dim: usize, opts: &AscentOptions) -> Vec<Vec<C64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut out = Vec::with_capacity(opts.starts);
    for k in 0..opts.starts {
        if k < dim {
            out.push((0..dim).map(|i| if i == k { ONE } else { ZERO }).collect());
        } else {
            out.push(
                (0..dim)
                    .map(|_| {
                        let re: f64 = StandardNormal.sample(&mut rng);
                        let im: f64 = if opts.real {
                            0.0
                        } else {
                            StandardNormal.sample(&mut rng)
                        };
                        C64::new(re, im)
                    })
                    .collect(),
            );
        }
    }
    out
}

/// Multistart projected gradient ascent over a unit sphere.
///
/// `normalize` maps a nonzero vector onto the sphere; `objective` is
/// evaluated on normalized vectors only. Gradients come from central
/// differences in the real coordinates, steps are accepted only when they
/// increase the objective (step halving otherwise). Starts run in parallel
/// but the reduction is by start index, so the result is deterministic.
pub fn sphere_ascent<N, F>(
    dim: usize,
    normalize: N,
    objective: F,
    opts: &AscentOptions,
) -> (f64, Vec<C64>)
where
    N: Fn(&mut Vec<C64>) + Sync,
    F: Fn(&[C64]) -> f64 + Sync,
{
    let starts = start_vectors(dim, opts);
    let results: Vec<(f64, Vec<C64>)> = starts
        .into_par_iter()
        .map(|x0| ascend_from(x0, &normalize, &objective, opts))
        .collect();
    let mut best = 0;
    for k in 1..results.len() {
        if results[k].0 > results[best].0 {
            best = k;
        }
    }
    results.into_iter().nth(best).expect("at least one start")
}

pub(crate) fn ascend_from<N, F>(
    mut x: Vec<C64>,
    normalize: &N,
    objective: &F,
    opts: &AscentOptions,
) -> (f64, Vec<C64>)
where
    N: Fn(&mut Vec<C64>),
    F: Fn(&[C64]) -> f64,
{
    let dim = x.len();
    normalize(&mut x);
    let mut fx = objective(&x);
    let mut step = 0.1;
    let h = 1e-7;
    for _ in 0..opts.steps {
        let mut grad = vec![ZERO; dim];
        for i in 0..dim {
            let parts: &[C64] = if opts.real {
                &[ONE]
            } else {
                &[ONE, C64::new(0.0, 1.0)]
            };
            for (slot, &dir) in parts.iter().enumerate() {
                let mut xp = x.clone();
                xp[i] += dir * h;
                normalize(&mut xp);
                let mut xm = x.clone();
                xm[i] -= dir * h;
                normalize(&mut xm);
                let d = (objective(&xp) - objective(&xm)) / (2.0 * h);
                if slot == 0 {
                    grad[i].re = d;
                } else {
                    grad[i].im = d;
                }
            }
        }
        let gnorm = grad.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if gnorm < 1e-14 {
            break;
        }
        let mut improved = false;
        for _ in 0..40 {
            let mut cand: Vec<C64> = x
                .iter()
                .zip(&grad)
                .map(|(a, g)| a + g * (step / gnorm))
                .collect();
            normalize(&mut cand);
            let fc = objective(&cand);
            if fc > fx {
                x = cand;
                fx = fc;
                improved = true;
                step = (step * 2.0).min(1.0);
                break;
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    (fx, x)
}
