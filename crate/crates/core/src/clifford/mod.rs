//! Tetrahedron operators built from anticommuting pairs and triples.
//!
//! Case 1 uses `A² = B² = 𝟙`, Case 2 a nilpotent `B`, Case 3 the orthogonal
//! projectors `Π± = (𝟙 ± Z)/2`. The triple constructions `αAAC + βBBC` and
//! `αCAA + βCBB` live in [`abc`].

pub mod abc;
mod case2;
mod case3;
mod solver;

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

pub use case2::{case2_tetra, nilpotency_check};
pub use case3::{case3_diagonal, case3_tetra, ProjectorCoeffs};
pub use solver::{solve_constraints, solve_constraints_from, SolveOutcome, SolverOptions};

use crate::tensalg::{c64, pauli, ComplexMatrix, C64};
use crate::{Error, Result};

/// Tolerance on `‖AB + BA‖` accepted as anticommuting.
pub const ANTICOMMUTE_TOL: f64 = 1e-12;

/// `a₁X + a₂Y + a₃Z`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliVector {
    pub a1: C64,
    pub a2: C64,
    pub a3: C64,
}

impl PauliVector {
    pub fn new(a1: C64, a2: C64, a3: C64) -> Self {
        Self { a1, a2, a3 }
    }

    pub fn real(a1: f64, a2: f64, a3: f64) -> Self {
        Self::new(c64(a1, 0.), c64(a2, 0.), c64(a3, 0.))
    }

    pub fn materialize(&self) -> ComplexMatrix {
        pauli::x().scale(self.a1) + pauli::y().scale(self.a2) + pauli::z().scale(self.a3)
    }

    /// Complex bilinear `Σ aⱼbⱼ`.
    pub fn dot(&self, other: &Self) -> C64 {
        self.a1 * other.a1 + self.a2 * other.a2 + self.a3 * other.a3
    }

    /// `Σ aⱼ² = 1`, i.e. the matrix squares to `𝟙`.
    pub fn is_case1_admissible(&self) -> bool {
        (self.dot(self) - 1.0).norm() <= 1e-12
    }
}

/// Which pair of words the coefficients multiply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `α₀BBB + α₁AAB + α₂ABA + α₃BAA`.
    BbbAab,
    /// `α₀AAA + α₁BBA + α₂BAB + α₃ABB`.
    AaaBba,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::BbbAab => "BBB_AAB",
            Variant::AaaBba => "AAA_BBA",
        }
    }
}

/// Case-1 coefficients `α₀..α₃` together with the word variant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CliffordCoeffs {
    pub alpha: [C64; 4],
    pub variant: Variant,
}

impl CliffordCoeffs {
    pub fn new(alpha: [C64; 4], variant: Variant) -> Self {
        Self { alpha, variant }
    }

    pub fn real(alpha: [f64; 4], variant: Variant) -> Self {
        Self::new(alpha.map(|a| c64(a, 0.)), variant)
    }

    /// Coefficients given as `rⱼe^{iθⱼ}`.
    pub fn from_polar(r: [f64; 4], theta: [f64; 4], variant: Variant) -> Self {
        Self::new(std::array::from_fn(|j| C64::from_polar(r[j], theta[j])), variant)
    }

    pub fn with_variant(self, variant: Variant) -> Self {
        Self { variant, ..self }
    }

    /// The four constraint residuals (see [`constraint_residual`]).
    pub fn constraint_residual(&self) -> [f64; 4] {
        constraint_residual(self)
    }

    pub fn max_constraint_residual(&self) -> f64 {
        self.constraint_residual().into_iter().fold(0.0, f64::max)
    }
}

/// `‖AB + BA‖_F`, failing when it exceeds the tolerance.
pub(crate) fn require_anticommuting(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.rows() != 2 || a.cols() != 2 || b.rows() != 2 || b.cols() != 2 {
        return Err(Error::DimensionMismatch("Clifford generators must be 2x2".into()));
    }
    let r = a.anticommutator(b)?.frobenius();
    if r > ANTICOMMUTE_TOL * (a.frobenius() * b.frobenius()).max(1.0) {
        return Err(Error::NotAnticommuting(r));
    }
    Ok(())
}

pub(crate) fn word3(p: &ComplexMatrix, q: &ComplexMatrix, r: &ComplexMatrix) -> ComplexMatrix {
    p.kron(q).kron(r)
}

fn words(a: &ComplexMatrix, b: &ComplexMatrix, variant: Variant) -> [ComplexMatrix; 4] {
    match variant {
        Variant::BbbAab => [word3(b, b, b), word3(a, a, b), word3(a, b, a), word3(b, a, a)],
        Variant::AaaBba => [word3(a, a, a), word3(b, b, a), word3(b, a, b), word3(a, b, b)],
    }
}

/// `Σ αₜ·wordₜ` for an anticommuting pair `(A, B)`.
pub fn clifford_tetra(c: &CliffordCoeffs, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    require_anticommuting(a, b)?;
    Ok(combine(c, a, b))
}

pub(crate) fn combine(c: &CliffordCoeffs, a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    words(a, b, c.variant)
        .iter()
        .zip(c.alpha)
        .fold(ComplexMatrix::zeros(8, 8), |acc, (w, al)| acc + w.scale(al))
}

/// The canonical representative `(A, B) = (X, Z)`.
pub fn clifford_tetra_xz(c: &CliffordCoeffs) -> ComplexMatrix {
    combine(c, &pauli::x(), &pauli::z())
}

/// `Re(a·b̄)`.
#[inline]
fn re_conj(a: C64, b: C64) -> f64 {
    a.re * b.re + a.im * b.im
}

/// The signed constraint values `(c₁, c₂, c₃, c₄)`; all vanish exactly on
/// unitary Case-1 coefficients.
///
/// `c₁ = 2Re(α₀ᾱ₁) − 2Re(α₃ᾱ₂)`, `c₂ = 2Re(α₀ᾱ₂) − 2Re(α₃ᾱ₁)`,
/// `c₃ = 2Re(α₀ᾱ₃) − 2Re(α₁ᾱ₂)`, `c₄ = Σ|αₜ|² − 1`.
pub fn constraint_values(alpha: &[C64; 4]) -> [f64; 4] {
    let [a0, a1, a2, a3] = *alpha;
    [
        2.0 * re_conj(a0, a1) - 2.0 * re_conj(a3, a2),
        2.0 * re_conj(a0, a2) - 2.0 * re_conj(a3, a1),
        2.0 * re_conj(a0, a3) - 2.0 * re_conj(a1, a2),
        alpha.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0,
    ]
}

/// Absolute values of the three bilinear constraints and `|Σ|αₜ|² − 1|`.
pub fn constraint_residual(c: &CliffordCoeffs) -> [f64; 4] {
    constraint_values(&c.alpha).map(f64::abs)
}

/// Rows of the table of solutions with all moduli equal to ½.
///
/// Row 1: `(e^{iψ}, e^{iψ}, e^{iφ}, e^{iφ})/2`, row 2: `(ψ, φ, ψ, φ)`,
/// row 3: `(ψ, φ, φ, ψ)`.
pub fn table1_solution(row: u8, psi: f64, phi: f64) -> Result<CliffordCoeffs> {
    let (p, f) = (C64::from_polar(0.5, psi), C64::from_polar(0.5, phi));
    let alpha = match row {
        1 => [p, p, f, f],
        2 => [p, f, p, f],
        3 => [p, f, f, p],
        _ => return Err(Error::Domain(format!("table row {row} does not exist (1..=3)"))),
    };
    Ok(CliffordCoeffs::new(alpha, Variant::BbbAab))
}

/// Sign choice for two-branch formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "+" | "plus" | "+1" | "1" => Some(Sign::Plus),
            "-" | "minus" | "-1" => Some(Sign::Minus),
            _ => None,
        }
    }
}

/// Solutions with three or two equal moduli.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Table2Kind {
    /// `(te^{iγ}, √(1−3t²)e^{iθ}, te^{iγ}, te^{iγ})`. The constraints force
    /// `cos(γ − θ) = t/√(1−3t²)`; `branch` picks `θ = γ ∓ arccos(·)`.
    ThreeEqual { t: f64, gamma: f64, branch: Sign },
    /// `(s, −i√(1−s²), is, −√(1−s²))/√2`.
    TwoEqual { s: f64 },
}

/// The phase `θ` paired with `(t, γ)` in the three-equal family.
pub fn three_equal_theta(t: f64, gamma: f64, branch: Sign) -> Result<f64> {
    let u2 = 1.0 - 3.0 * t * t;
    if t.is_nan() || t < 0.0 || u2 < 0.0 {
        return Err(Error::Domain(format!("three-equal family needs t ≥ 0 and 1 − 3t² ≥ 0 (t = {t})")));
    }
    let ratio = t / u2.sqrt();
    if ratio > 1.0 + 1e-15 {
        return Err(Error::Domain(format!(
            "three-equal family needs t ≤ 1/2 so that cos(γ − θ) = t/√(1 − 3t²) is attainable (t = {t})"
        )));
    }
    Ok(gamma - branch.value() * ratio.min(1.0).acos())
}

pub fn table2_solution(kind: Table2Kind) -> Result<CliffordCoeffs> {
    let alpha = match kind {
        Table2Kind::ThreeEqual { t, gamma, branch } => {
            let theta = three_equal_theta(t, gamma, branch)?;
            let g = C64::from_polar(t, gamma);
            [g, C64::from_polar((1.0 - 3.0 * t * t).sqrt(), theta), g, g]
        }
        Table2Kind::TwoEqual { s } => {
            if !(-1.0..=1.0).contains(&s) {
                return Err(Error::Domain(format!("two-equal family needs |s| ≤ 1 (s = {s})")));
            }
            let u = (1.0 - s * s).sqrt();
            [
                c64(s, 0.),
                C64::from_polar(u, -FRAC_PI_2),
                C64::from_polar(s, FRAC_PI_2),
                C64::from_polar(u, PI),
            ]
            .map(|z| z * FRAC_1_SQRT_2)
        }
    };
    Ok(CliffordCoeffs::new(alpha, Variant::BbbAab))
}

/// `α₀ = cos φ·e^{iθ}`, `α₃ = sin φ·e^{i(θ+π/2)}`, `α₁ = α₂ = 0`.
pub fn two_zero_solution(phi: f64, theta: f64) -> CliffordCoeffs {
    CliffordCoeffs::new(
        [
            C64::from_polar(phi.cos(), theta),
            c64(0., 0.),
            c64(0., 0.),
            C64::from_polar(phi.sin(), theta + FRAC_PI_2),
        ],
        Variant::BbbAab,
    )
}

/// The six-digit numerical solution with all moduli distinct.
pub fn six_digit_numeric_point() -> CliffordCoeffs {
    CliffordCoeffs::from_polar(
        [0.743304, 0.489214, 0.369857, 0.267161],
        [-3.48761, 1.40343, 4.64383, -0.781393],
        Variant::BbbAab,
    )
}

/// Closed-form eigenvalues of a Case-1 operator:
/// `±(αⱼ − Σ_{k≠j} αₖ)` for `j = 0..3`.
pub fn case1_eigenvalues(c: &CliffordCoeffs) -> Vec<C64> {
    let total: C64 = c.alpha.iter().sum();
    c.alpha
        .iter()
        .flat_map(|&a| {
            let e = a - (total - a);
            [e, -e]
        })
        .collect()
}

/// The diagonal form `diag(l, p, q, r) ⊗ Z` shares its spectrum with a
/// Case-1 operator under `l = α₁+α₂+α₃−α₀`, `p = α₀+α₂+α₃−α₁`,
/// `q = α₀+α₁+α₃−α₂`, `r = α₀+α₁+α₂−α₃`.
pub fn diagonal_identification(c: &CliffordCoeffs) -> [C64; 4] {
    let [a0, a1, a2, a3] = c.alpha;
    [a1 + a2 + a3 - a0, a0 + a2 + a3 - a1, a0 + a1 + a3 - a2, a0 + a1 + a2 - a3]
}
