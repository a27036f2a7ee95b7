//! Standard single- and two-qubit matrices.

use super::{c64, ComplexMatrix};

pub fn identity2() -> ComplexMatrix {
    ComplexMatrix::identity(2)
}

pub fn x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows([[0., 1.], [1., 0.]])
}

pub fn y() -> ComplexMatrix {
    ComplexMatrix::from_rows([[c64(0., 0.), c64(0., -1.)], [c64(0., 1.), c64(0., 0.)]])
}

pub fn z() -> ComplexMatrix {
    ComplexMatrix::from_real_rows([[1., 0.], [0., -1.]])
}

pub fn hadamard() -> ComplexMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_real_rows([[h, h], [h, -h]])
}

/// `Π⁺ = (𝟙 + Z)/2`, the projector onto `|0⟩`.
pub fn proj_plus() -> ComplexMatrix {
    ComplexMatrix::from_real_rows([[1., 0.], [0., 0.]])
}

/// `Π⁻ = (𝟙 − Z)/2`, the projector onto `|1⟩`.
pub fn proj_minus() -> ComplexMatrix {
    ComplexMatrix::from_real_rows([[0., 0.], [0., 1.]])
}

/// The two-qubit permutation (SWAP) operator `P`.
pub fn swap() -> ComplexMatrix {
    ComplexMatrix::from_real_rows([
        [1., 0., 0., 0.],
        [0., 0., 1., 0.],
        [0., 1., 0., 0.],
        [0., 0., 0., 1.],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_algebra() {
        let i = c64(0., 1.);
        assert_eq!(&x() * &y(), z().scale(i));
        assert_eq!(&y() * &z(), x().scale(i));
        assert_eq!(&proj_plus() + &proj_minus(), identity2());
        assert!((&hadamard() * &hadamard()).identity_residual() < 1e-15);
    }
}
