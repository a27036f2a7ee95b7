//! Decompositions backed by `nalgebra`.

use nalgebra::DMatrix;

use super::{ComplexMatrix, C64};
use crate::{Error, Result};

/// Relative threshold on `σ_min / σ_max` below which a matrix is singular.
pub const SINGULAR_RTOL: f64 = 1e-12;

const EIG_MAX_ITER: usize = 10_000;

fn to_na(m: &ComplexMatrix) -> DMatrix<C64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.as_slice())
}

fn from_na(m: &DMatrix<C64>) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

impl ComplexMatrix {
    /// Singular values in descending order.
    pub fn singular_values(&self) -> Vec<f64> {
        let svd = to_na(self).svd(false, false);
        let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }

    /// True when `σ_min < 1e-12·σ_max` (or the matrix is zero).
    pub fn is_singular(&self) -> bool {
        let s = self.singular_values();
        let max = s.first().copied().unwrap_or(0.0);
        let min = s.last().copied().unwrap_or(0.0);
        max == 0.0 || min < SINGULAR_RTOL * max
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        if self.is_singular() {
            return Err(Error::Singular);
        }
        let inv = to_na(self).lu().try_inverse().ok_or(Error::Singular)?;
        Ok(from_na(&inv))
    }

    pub fn determinant(&self) -> Result<C64> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        Ok(to_na(self).determinant())
    }

    /// The unitary factor `Q` of `self = QR`, with the phases of `R`'s
    /// diagonal absorbed so that Gaussian input yields Haar-distributed `Q`.
    pub fn unitary_factor(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("QR of a non-square matrix".into()));
        }
        let qr = to_na(self).qr();
        let (q, r) = (qr.q(), qr.r());
        let n = self.rows();
        Ok(Self::from_fn(n, n, |i, j| {
            let d = r[(j, j)];
            let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
            q[(i, j)] * phase
        }))
    }

    /// Eigenvalues (unordered) from a complex Schur decomposition.
    pub fn eigenvalues(&self) -> Result<Vec<C64>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("eigenvalues of a non-square matrix".into()));
        }
        let schur = nalgebra::Schur::try_new(to_na(self), f64::EPSILON, EIG_MAX_ITER)
            .ok_or(Error::EigenNoConvergence(EIG_MAX_ITER))?;
        let (_, t) = schur.unpack();
        Ok(t.diagonal().iter().copied().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::super::pauli::{swap, x, y, z};
    use super::super::{c64, residual};
    use super::*;

    #[test]
    fn phase_diagonal_inverse_is_dagger() {
        let d = ComplexMatrix::diag(&[
            c64(1., 0.),
            C64::from_polar(1.0, 0.3),
            C64::from_polar(1.0, -1.2),
            C64::from_polar(1.0, 2.9),
        ]);
        assert!(residual(&d.inverse().unwrap(), &d.dagger()) < 1e-15);
    }

    #[test]
    fn identity_is_self_inverse() {
        let i = ComplexMatrix::identity(4);
        assert_eq!(i.inverse().unwrap(), i);
        assert_eq!(i.dagger(), i);
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let m = ComplexMatrix::from_real_rows([[1., 2.], [2., 4.]]);
        assert_eq!(m.inverse().unwrap_err().to_string(), "singular matrix");
        let tiny = ComplexMatrix::from_real_rows([[1., 0.], [0., 1e-14]]);
        assert!(tiny.inverse().is_err());
    }

    fn sorted(mut v: Vec<C64>) -> Vec<C64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn eigenvalues_of_permutation_like_operators() {
        // Permutation-like inputs are where unshifted QR iterations stall.
        let pz = swap().kron(&z());
        let ev = sorted(pz.eigenvalues().unwrap());
        let want = [-1., -1., -1., -1., 1., 1., 1., 1.];
        for (e, w) in ev.iter().zip(want) {
            assert!((e - c64(w, 0.)).norm() < 1e-12, "{ev:?}");
        }

        let xxy = x().kron(&x()).kron(&y());
        for e in xxy.eigenvalues().unwrap() {
            assert!((e.norm() - 1.0).abs() < 1e-12);
        }
        let shift = ComplexMatrix::from_real_rows([[0., 1., 0.], [0., 0., 1.], [1., 0., 0.]]);
        for e in shift.eigenvalues().unwrap() {
            assert!((e.powu(3) - c64(1., 0.)).norm() < 1e-12);
        }
    }
}
