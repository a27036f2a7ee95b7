//! Unitarity certificates and spectrum comparison.

use std::cmp::Ordering;

use crate::tensalg::{ComplexMatrix, C64};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitarityReport {
    /// `‖R†R − 𝟙‖_F / ‖𝟙‖_F`.
    pub residual_rrdag: f64,
    /// `max |·|λᵢ| − 1|`.
    pub eigen_moduli_max_dev: f64,
    pub is_unitary: bool,
}

pub fn certify(r: &ComplexMatrix, tol: f64) -> Result<UnitarityReport> {
    if !r.is_square() {
        return Err(Error::DimensionMismatch(format!("certify needs a square matrix, got {}x{}", r.rows(), r.cols())));
    }
    let residual_rrdag = (&r.dagger() * r).identity_residual();
    let eigen_moduli_max_dev = r.eigenvalues()?.iter().map(|l| (l.norm() - 1.0).abs()).fold(0.0, f64::max);
    Ok(UnitarityReport {
        residual_rrdag,
        eigen_moduli_max_dev,
        is_unitary: residual_rrdag <= tol && eigen_moduli_max_dev <= tol,
    })
}

/// Total order used for phase sorting: argument in `(−π, π]`, then modulus.
pub fn phase_order(a: &C64, b: &C64) -> Ordering {
    a.arg().total_cmp(&b.arg()).then(a.norm().total_cmp(&b.norm()))
}

/// Numerical eigenvalues sorted by phase.
pub fn spectrum(r: &ComplexMatrix) -> Result<Vec<C64>> {
    let mut ev = r.eigenvalues()?;
    ev.sort_by(phase_order);
    Ok(ev)
}

/// Bottleneck distance between two multisets: the smallest `d` such that
/// the points can be paired with every pair at distance `≤ d`.
/// Different sizes give `f64::INFINITY`.
pub fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    if a.is_empty() {
        return 0.0;
    }
    let n = a.len();
    let dist: Vec<f64> = a.iter().flat_map(|x| b.iter().map(move |y| (x - y).norm())).collect();
    let mut levels = dist.clone();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    let (mut lo, mut hi) = (0, levels.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if perfect_matching(n, |i, j| dist[i * n + j] <= levels[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    levels[lo]
}

fn perfect_matching(n: usize, allowed: impl Fn(usize, usize) -> bool) -> bool {
    fn augment(i: usize, allowed: &dyn Fn(usize, usize) -> bool, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for j in 0..seen.len() {
            if allowed(i, j) && !seen[j] {
                seen[j] = true;
                if owner[j].is_none_or(|k| augment(k, allowed, seen, owner)) {
                    owner[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; n];
    (0..n).all(|i| augment(i, &allowed, &mut vec![false; n], &mut owner))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use crate::tensalg::c64;

    #[test]
    fn identity_and_scaled_identity() {
        let r = certify(&ComplexMatrix::identity(8), 1e-12).unwrap();
        assert_eq!((r.residual_rrdag, r.eigen_moduli_max_dev, r.is_unitary), (0.0, 0.0, true));
        let r = certify(&ComplexMatrix::identity(4).scale_real(2.0), 1e-12).unwrap();
        assert!((r.residual_rrdag - 3.0).abs() < 1e-14);
        assert!((r.eigen_moduli_max_dev - 1.0).abs() < 1e-14);
        assert!(!r.is_unitary);
    }

    #[test]
    fn rejects_non_square() {
        assert!(certify(&ComplexMatrix::zeros(2, 3), 1e-12).is_err());
    }

    #[test]
    fn spectrum_is_phase_sorted() {
        let d = ComplexMatrix::diag(&[c64(1., 0.), c64(-1., 0.), c64(0., 1.), c64(0., -1.)]);
        let s = spectrum(&d).unwrap();
        let args: Vec<f64> = s.iter().map(|z| z.arg()).collect();
        assert!(args.windows(2).all(|w| w[0] <= w[1]));
        assert!(multiset_distance(&s, &[c64(0., -1.), c64(1., 0.), c64(0., 1.), c64(-1., 0.)]) < 1e-14);
    }

    #[test]
    fn bottleneck_distance() {
        let a = [c64(0., 0.), c64(1., 0.), c64(1., 0.)];
        let b = [c64(1., 0.), c64(0.1, 0.), c64(1., 0.)];
        assert!((multiset_distance(&a, &b) - 0.1).abs() < 1e-15);
        let b = [c64(1., 0.), c64(1., 0.), c64(1., 0.)];
        assert!((multiset_distance(&a, &b) - 1.0).abs() < 1e-15);
        assert_eq!(multiset_distance(&a, &b[..2]), f64::INFINITY);
    }

    #[test]
    fn haar_unitary_certifies() {
        let mut rng = random::rng(3, 0);
        let u = random::unitary(&mut rng, 8);
        assert!(certify(&u, 1e-12).unwrap().is_unitary);
    }
}
