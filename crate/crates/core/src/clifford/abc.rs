use super::{require_anticommuting, word3};
use crate::tensalg::{ComplexMatrix, C64};
use crate::Result;

/// Where the appended third generator `C` sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CPlacement {
    /// `αAᵢAⱼCₖ + βBᵢBⱼCₖ`.
    Last,
    /// `αCᵢAⱼAₖ + βCᵢBⱼBₖ`.
    First,
}

/// A mutually anticommuting triple.
#[derive(Clone, Debug)]
pub struct CliffordTriple {
    pub a: ComplexMatrix,
    pub b: ComplexMatrix,
    pub c: ComplexMatrix,
}

impl CliffordTriple {
    pub fn new(a: ComplexMatrix, b: ComplexMatrix, c: ComplexMatrix) -> Result<Self> {
        require_anticommuting(&a, &b)?;
        require_anticommuting(&b, &c)?;
        require_anticommuting(&c, &a)?;
        Ok(Self { a, b, c })
    }

    /// `(A, B, C) = (X, Z, Y)`.
    pub fn pauli() -> Self {
        use crate::tensalg::pauli::{x, y, z};
        Self { a: x(), b: z(), c: y() }
    }
}

/// `αAAC + βBBC` or `αCAA + βCBB`.
pub fn abc_tetra(alpha: C64, beta: C64, t: &CliffordTriple, placement: CPlacement) -> Result<ComplexMatrix> {
    require_anticommuting(&t.a, &t.b)?;
    require_anticommuting(&t.b, &t.c)?;
    require_anticommuting(&t.c, &t.a)?;
    let (first, second) = match placement {
        CPlacement::Last => (word3(&t.a, &t.a, &t.c), word3(&t.b, &t.b, &t.c)),
        CPlacement::First => (word3(&t.c, &t.a, &t.a), word3(&t.c, &t.b, &t.b)),
    };
    Ok(first.scale(alpha) + second.scale(beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use crate::simplex::tetra_vertex;
    use crate::tensalg::pauli::{x, y, z};
    use crate::tensalg::{c64, residual};

    fn display(alpha: C64, beta: C64) -> ComplexMatrix {
        let i = c64(0., 1.);
        let (a, b) = (i * alpha, i * beta);
        let o = c64(0., 0.);
        ComplexMatrix::from_rows([
            [o, -b, o, o, o, o, o, -a],
            [b, o, o, o, o, o, a, o],
            [o, o, o, b, o, -a, o, o],
            [o, o, -b, o, a, o, o, o],
            [o, o, o, -a, o, b, o, o],
            [o, o, a, o, -b, o, o, o],
            [o, -a, o, o, o, o, o, -b],
            [a, o, o, o, o, o, b, o],
        ])
    }

    #[test]
    fn reproduces_the_explicit_matrix() {
        let mut r = random::rng(8, 0);
        for _ in 0..10 {
            let (al, be) = (random::gaussian(&mut r), random::gaussian(&mut r));
            let m = abc_tetra(al, be, &CliffordTriple::pauli(), CPlacement::Last).unwrap();
            assert!(residual(&m, &display(al, be)) < 1e-15);
        }
    }

    #[test]
    fn orthogonal_phases_are_unitary_solutions() {
        let (phi, theta) = (0.7f64, -1.9f64);
        let al = C64::from_polar(phi.sin(), theta);
        let be = C64::from_polar(phi.cos(), theta + std::f64::consts::FRAC_PI_2);
        for placement in [CPlacement::Last, CPlacement::First] {
            let m = abc_tetra(al, be, &CliffordTriple::pauli(), placement).unwrap();
            assert!((&m.dagger() * &m).identity_residual() < 1e-14);
            assert!(tetra_vertex(&m).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn single_word_and_equal_phases() {
        let m = abc_tetra(c64(1., 0.), c64(0., 0.), &CliffordTriple::pauli(), CPlacement::Last).unwrap();
        assert_eq!(m, x().kron(&x()).kron(&y()));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let m = abc_tetra(c64(h, 0.), c64(h, 0.), &CliffordTriple::pauli(), CPlacement::Last).unwrap();
        assert!((&m.dagger() * &m).identity_residual() > 0.5);
    }

    #[test]
    fn triple_must_anticommute() {
        assert!(CliffordTriple::new(x(), z(), x()).is_err());
        assert!(CliffordTriple::new(x(), z(), y()).is_ok());
    }
}
