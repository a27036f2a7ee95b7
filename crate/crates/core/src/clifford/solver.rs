//! Damped Gauss-Newton search for points on the Case-1 constraint variety.
//!
//! Unknowns are the real and imaginary parts of `α₀..α₃` (8 reals); the
//! residual is the 4-vector of [`constraint_values`]. With more unknowns
//! than equations each step is the damped minimum-norm update
//! `δ = −Jᵀ(JJᵀ + λ𝟙)⁻¹r`.

use nalgebra::{Matrix4, SMatrix, Vector4};

use super::{constraint_values, CliffordCoeffs, Variant};
use crate::random;
use crate::tensalg::C64;
use crate::{Error, Result};

type Jacobian = SMatrix<f64, 4, 8>;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    pub max_iter: usize,
    pub tol: f64,
    pub variant: Variant,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { max_iter: 500, tol: 1e-10, variant: Variant::BbbAab }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOutcome {
    pub coeffs: CliffordCoeffs,
    pub iterations: usize,
    pub residuals: [f64; 4],
    pub restarts: usize,
}

fn unpack(x: &[f64; 8]) -> [C64; 4] {
    std::array::from_fn(|j| C64::new(x[2 * j], x[2 * j + 1]))
}

fn pack(alpha: &[C64; 4]) -> [f64; 8] {
    std::array::from_fn(|k| if k % 2 == 0 { alpha[k / 2].re } else { alpha[k / 2].im })
}

fn values(x: &[f64; 8]) -> Vector4<f64> {
    Vector4::from(constraint_values(&unpack(x)))
}

fn max_abs(r: &Vector4<f64>) -> f64 {
    r.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Row `k` holds the gradient of constraint `k` with respect to
/// `(Re α₀, Im α₀, ..., Re α₃, Im α₃)`.
fn jacobian(x: &[f64; 8]) -> Jacobian {
    // d Re(a b̄) / d(a, b) = (b, a) componentwise.
    let mut j = Jacobian::zeros();
    let mut add = |row: usize, a: usize, b: usize, sign: f64| {
        for c in 0..2 {
            j[(row, 2 * a + c)] += sign * 2.0 * x[2 * b + c];
            j[(row, 2 * b + c)] += sign * 2.0 * x[2 * a + c];
        }
    };
    add(0, 0, 1, 1.0);
    add(0, 3, 2, -1.0);
    add(1, 0, 2, 1.0);
    add(1, 3, 1, -1.0);
    add(2, 0, 3, 1.0);
    add(2, 1, 2, -1.0);
    for k in 0..8 {
        j[(3, k)] = 2.0 * x[k];
    }
    j
}

fn random_start(seed: u64, stream: u64) -> [f64; 8] {
    let v = random::unit_vector(&mut random::rng(seed, stream), 4);
    pack(&[v[0], v[1], v[2], v[3]])
}

fn perturb(x: &mut [f64; 8], seed: u64, stream: u64) {
    let mut r = random::rng(seed ^ 0x5eed, stream);
    for (xi, n) in x.iter_mut().zip(random::gaussian_vector(&mut r, 4).iter().flat_map(|z| [z.re, z.im])) {
        *xi += 1e-3 * n;
    }
}

/// Search from a seeded random point on the unit sphere.
pub fn solve_constraints(seed: u64, opts: SolverOptions) -> Result<SolveOutcome> {
    run(random_start(seed, 0), seed, opts)
}

/// Search from the given coefficients (returns immediately if they already
/// satisfy the tolerance).
pub fn solve_constraints_from(start: &CliffordCoeffs, seed: u64, opts: SolverOptions) -> Result<SolveOutcome> {
    run(pack(&start.alpha), seed, SolverOptions { variant: start.variant, ..opts })
}

fn run(mut x: [f64; 8], seed: u64, opts: SolverOptions) -> Result<SolveOutcome> {
    let finish = |x: &[f64; 8], iterations: usize, restarts: usize| {
        let coeffs = CliffordCoeffs::new(unpack(x), opts.variant);
        SolveOutcome { residuals: coeffs.constraint_residual(), coeffs, iterations, restarts }
    };

    let mut r = values(&x);
    let mut best = (max_abs(&r), x);
    if best.0 <= opts.tol {
        return Ok(finish(&x, 0, 0));
    }

    let mut lambda = 1e-3;
    let mut restarts = 0usize;
    let mut stalled = 0usize;
    for iter in 1..=opts.max_iter {
        let j = jacobian(&x);
        let jjt: Matrix4<f64> = j * j.transpose();
        // A rank-deficient Jacobian marks a degenerate start (e.g. ties
        // among the moduli); nudge off it.
        if jjt.determinant().abs() < 1e-14 {
            perturb(&mut x, seed, iter as u64);
            r = values(&x);
            continue;
        }
        let step = (jjt + Matrix4::identity() * lambda)
            .lu()
            .solve(&r)
            .map(|y| -(j.transpose() * y));
        let Some(step) = step else {
            lambda *= 10.0;
            continue;
        };
        let mut trial = x;
        for (t, d) in trial.iter_mut().zip(step.iter()) {
            *t += d;
        }
        let r_trial = values(&trial);
        if r_trial.norm() < r.norm() {
            x = trial;
            r = r_trial;
            lambda = (lambda / 3.0).max(1e-15);
            stalled = 0;
        } else {
            lambda *= 4.0;
            stalled += 1;
        }

        let m = max_abs(&r);
        if m < best.0 {
            best = (m, x);
        }
        if m <= opts.tol {
            return Ok(finish(&x, iter, restarts));
        }
        if stalled > 30 || lambda > 1e10 {
            restarts += 1;
            x = random_start(seed, restarts as u64);
            r = values(&x);
            lambda = 1e-3;
            stalled = 0;
        }
    }
    Err(Error::NoConvergence { iterations: opts.max_iter, best: best.0 })
}
