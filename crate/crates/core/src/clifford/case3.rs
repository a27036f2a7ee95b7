use crate::tensalg::{ComplexMatrix, C64};

/// The 27 coefficients `α_{m,n,ℓ}` of `Σ α_{mnℓ}(A_m)ᵢ(A_n)ⱼ(A_ℓ)ₖ` over the
/// local basis `A₁ = 𝟙`, `A₂ = Π⁻`, `A₃ = Π⁺`. Indices are 1-based in the
/// accessors; storage is `9(m−1) + 3(n−1) + (ℓ−1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectorCoeffs {
    pub coeffs: [C64; 27],
}

/// `A_m` evaluated on the basis state `|s⟩`: `𝟙 → 1`, `Π⁻ → [s = 1]`,
/// `Π⁺ → [s = 0]`.
fn local(m: usize, s: usize) -> f64 {
    match (m, s) {
        (1, _) | (2, 1) | (3, 0) => 1.0,
        _ => 0.0,
    }
}

impl ProjectorCoeffs {
    pub fn zero() -> Self {
        Self { coeffs: [C64::new(0.0, 0.0); 27] }
    }

    fn index(m: usize, n: usize, l: usize) -> usize {
        assert!((1..=3).contains(&m) && (1..=3).contains(&n) && (1..=3).contains(&l), "indices are 1..=3");
        9 * (m - 1) + 3 * (n - 1) + (l - 1)
    }

    pub fn get(&self, m: usize, n: usize, l: usize) -> C64 {
        self.coeffs[Self::index(m, n, l)]
    }

    pub fn set(&mut self, m: usize, n: usize, l: usize, value: C64) {
        self.coeffs[Self::index(m, n, l)] = value;
    }

    /// Every coefficient equal to `e^{iΦ}/8`.
    pub fn uniform(phi: f64) -> Self {
        Self { coeffs: [C64::from_polar(0.125, phi); 27] }
    }

    /// Coefficients on the projector products `Π^{s₁}⊗Π^{s₂}⊗Π^{s₃}` that
    /// reproduce the given Z-basis diagonal.
    pub fn from_diagonal(diag: [C64; 8]) -> Self {
        let mut p = Self::zero();
        for (s, &d) in diag.iter().enumerate() {
            let pick = |bit: usize| if (s >> bit) & 1 == 1 { 2 } else { 3 };
            p.set(pick(2), pick(1), pick(0), d);
        }
        p
    }

    /// `diag(β₁, −β₁, β₂, −β₂, β₃, −β₃, β₄, −β₄)`.
    pub fn from_beta_pattern(beta: [C64; 4]) -> Self {
        Self::from_diagonal(std::array::from_fn(|s| if s % 2 == 0 { beta[s / 2] } else { -beta[s / 2] }))
    }
}

/// The eight Z-basis diagonal entries of the Case-3 operator.
pub fn case3_diagonal(p: &ProjectorCoeffs) -> [C64; 8] {
    std::array::from_fn(|s| {
        let (s1, s2, s3) = ((s >> 2) & 1, (s >> 1) & 1, s & 1);
        let mut acc = C64::new(0.0, 0.0);
        for m in 1..=3 {
            for n in 1..=3 {
                for l in 1..=3 {
                    let w = local(m, s1) * local(n, s2) * local(l, s3);
                    if w != 0.0 {
                        acc += p.get(m, n, l) * w;
                    }
                }
            }
        }
        acc
    })
}

/// The (diagonal) 8×8 Case-3 operator.
pub fn case3_tetra(p: &ProjectorCoeffs) -> ComplexMatrix {
    ComplexMatrix::diag(&case3_diagonal(p))
}
