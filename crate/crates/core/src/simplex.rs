//! Simplex-type relations and their residual checkers.
//!
//! A [`SimplexRelation`] lists the factors on each side of an operator word
//! identity. Each factor names an operator slot and the ordered register
//! sites it acts on; operators are bound to slots when the relation is
//! checked. Products are read left to right as written, so the rightmost
//! factor acts first on a state.

use crate::random;
use crate::tensalg::{residual, ComplexMatrix, EmbeddedOperator, C64, DENSE_CAP};
use crate::{Error, Result};

/// Number of probe vectors used by matrix-free checks unless overridden.
pub const DEFAULT_PROBES: usize = 20;

/// Tolerance of the commutant precondition in [`spectral_tetra`].
pub const COMMUTANT_TOL: f64 = 1e-10;

/// One factor of a relation word: operator slot plus the sites it acts on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub slot: usize,
    pub sites: Vec<usize>,
}

impl Factor {
    pub fn new(slot: usize, sites: &[usize]) -> Self {
        Self { slot, sites: sites.to_vec() }
    }
}

/// `Π lhs = rhs_scale · Π rhs` on an `n_sites` qubit register.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexRelation {
    pub name: String,
    pub n_sites: usize,
    pub lhs: Vec<Factor>,
    pub rhs: Vec<Factor>,
    pub rhs_scale: C64,
}

/// How a relation is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    /// Full register matrices (dimension at most [`DENSE_CAP`]).
    Dense,
    /// Random probe vectors; never forms register matrices.
    MatrixFree { probes: usize, seed: u64 },
}

impl CheckMode {
    pub fn matrix_free(seed: u64) -> Self {
        Self::MatrixFree { probes: DEFAULT_PROBES, seed }
    }
}

fn word(slot: usize, sites: &[&[usize]]) -> Vec<Factor> {
    sites.iter().map(|s| Factor::new(slot, s)).collect()
}

fn reversed(f: &[Factor]) -> Vec<Factor> {
    f.iter().rev().cloned().collect()
}

impl SimplexRelation {
    /// A relation whose right side is the reversed left word on one slot.
    pub fn reversal(name: &str, n_sites: usize, sites: &[&[usize]], rhs_scale: C64) -> Self {
        let lhs = word(0, sites);
        let rhs = reversed(&lhs);
        Self { name: name.into(), n_sites, lhs, rhs, rhs_scale }
    }

    /// `R₁₂₃R₁₄₅R₂₄₆R₃₅₆ = R₃₅₆R₂₄₆R₁₄₅R₁₂₃`.
    pub fn tetra_vertex() -> Self {
        Self::reversal("tetra-vertex", 6, &[&[1, 2, 3], &[1, 4, 5], &[2, 4, 6], &[3, 5, 6]], C64::new(1.0, 0.0))
    }

    /// `R₁₂₃R₁₂₄R₁₃₄R₂₃₄ = R₂₃₄R₁₃₄R₁₂₄R₁₂₃`.
    pub fn tetra_edge() -> Self {
        Self::reversal("tetra-edge", 4, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]], C64::new(1.0, 0.0))
    }

    /// The vertex tetrahedron word with an overall `−1` on the right.
    pub fn anti_tetra_vertex() -> Self {
        Self::reversal("anti-tetra-vertex", 6, &[&[1, 2, 3], &[1, 4, 5], &[2, 4, 6], &[3, 5, 6]], C64::new(-1.0, 0.0))
    }

    /// `R₁₂₃R₁₄₅R₂₄₆R₃₅₆ = s · R₃₅₆R⁽⁻⁾₂₄₆R⁽⁻⁾₁₄₅R₁₂₃` with `R` in slot 0 and
    /// `R⁽⁻⁾` in slot 1.
    pub fn signed_word_tetra(rhs_scale: C64) -> Self {
        let lhs = word(0, &[&[1, 2, 3], &[1, 4, 5], &[2, 4, 6], &[3, 5, 6]]);
        let rhs = vec![
            Factor::new(0, &[3, 5, 6]),
            Factor::new(1, &[2, 4, 6]),
            Factor::new(1, &[1, 4, 5]),
            Factor::new(0, &[1, 2, 3]),
        ];
        Self { name: "signed-word-tetra".into(), n_sites: 6, lhs, rhs, rhs_scale }
    }

    /// `Y₁₂Y₂₃Y₁₂ = Y₂₃Y₁₂Y₂₃`.
    pub fn ybe_braided() -> Self {
        let lhs = word(0, &[&[1, 2], &[2, 3], &[1, 2]]);
        let rhs = word(0, &[&[2, 3], &[1, 2], &[2, 3]]);
        Self { name: "ybe-braided".into(), n_sites: 3, lhs, rhs, rhs_scale: C64::new(1.0, 0.0) }
    }

    /// `Y₁₂Y₁₃Y₂₃ = α·Y₂₃Y₁₃Y₁₂`; `α = 1` is the vertex Yang-Baxter equation.
    pub fn ybe_vertex_scaled(alpha: C64) -> Self {
        Self::reversal("ybe-vertex", 3, &[&[1, 2], &[1, 3], &[2, 3]], alpha)
    }

    pub fn ybe_vertex() -> Self {
        Self::ybe_vertex_scaled(C64::new(1.0, 0.0))
    }

    /// `R₁₂₃₄R₁₅₆₇R₂₅₈₉R₃,₆,₈,₁₀R₄,₇,₉,₁₀ = s · reverse`.
    pub fn four_simplex_scaled(rhs_scale: C64) -> Self {
        Self::reversal(
            if rhs_scale == C64::new(1.0, 0.0) { "four-simplex" } else { "anti-four-simplex" },
            10,
            &[&[1, 2, 3, 4], &[1, 5, 6, 7], &[2, 5, 8, 9], &[3, 6, 8, 10], &[4, 7, 9, 10]],
            rhs_scale,
        )
    }

    pub fn four_simplex() -> Self {
        Self::four_simplex_scaled(C64::new(1.0, 0.0))
    }

    /// The six-factor 5-simplex vertex relation on 15 sites.
    pub fn five_simplex() -> Self {
        Self::reversal(
            "five-simplex",
            15,
            &[
                &[1, 2, 3, 4, 5],
                &[1, 6, 7, 8, 9],
                &[2, 6, 10, 11, 12],
                &[3, 7, 10, 13, 14],
                &[4, 8, 11, 13, 15],
                &[5, 9, 12, 14, 15],
            ],
            C64::new(1.0, 0.0),
        )
    }

    /// Register dimension `2^n_sites`.
    pub fn dim(&self) -> usize {
        1 << self.n_sites
    }

    fn bind(&self, side: &[Factor], slots: &[&ComplexMatrix]) -> Result<Vec<EmbeddedOperator>> {
        side.iter()
            .map(|f| {
                let op = slots.get(f.slot).ok_or_else(|| {
                    Error::DimensionMismatch(format!("no operator bound to slot {}", f.slot))
                })?;
                EmbeddedOperator::new((*op).clone(), &f.sites, self.n_sites)
            })
            .collect()
    }

    /// Residual of the relation with `slots[i]` bound to slot `i`.
    ///
    /// Dense: `‖L − sR‖_F / max(1, ‖sR‖_F)`. Matrix-free: the largest
    /// `‖Lv − sRv‖ / max(1, ‖sRv‖)` over the probe vectors.
    pub fn check(&self, slots: &[&ComplexMatrix], mode: CheckMode) -> Result<f64> {
        let lhs = self.bind(&self.lhs, slots)?;
        let rhs = self.bind(&self.rhs, slots)?;
        match mode {
            CheckMode::Dense => {
                if self.dim() > DENSE_CAP {
                    return Err(Error::TooLarge { dim: self.dim(), cap: DENSE_CAP });
                }
                let l = dense_product(&lhs, self.dim())?;
                let r = dense_product(&rhs, self.dim())?.scale(self.rhs_scale);
                Ok(residual(&l, &r))
            }
            CheckMode::MatrixFree { probes, seed } => {
                if probes == 0 {
                    return Err(Error::Domain("matrix-free checks need at least one probe".into()));
                }
                let mut worst = 0.0f64;
                for k in 0..probes {
                    let v = probe_vector(self.dim(), seed, k as u64);
                    let l = apply_word(&lhs, v.clone())?;
                    let r = apply_word(&rhs, v)?;
                    let mut diff = 0.0;
                    let mut norm = 0.0;
                    for (a, b) in l.iter().zip(&r) {
                        let sb = b * self.rhs_scale;
                        diff += (a - sb).norm_sqr();
                        norm += sb.norm_sqr();
                    }
                    worst = worst.max(diff.sqrt() / norm.sqrt().max(1.0));
                }
                Ok(worst)
            }
        }
    }

    /// Look up a built-in relation by its CLI name.
    pub fn builtin(name: &str) -> Option<Self> {
        Some(match name {
            "tetra-vertex" | "vertex" => Self::tetra_vertex(),
            "tetra-edge" | "edge" => Self::tetra_edge(),
            "anti-tetra" | "anti-tetra-vertex" => Self::anti_tetra_vertex(),
            "ybe-braided" => Self::ybe_braided(),
            "ybe-vertex" => Self::ybe_vertex(),
            "4simplex" | "four-simplex" => Self::four_simplex(),
            "anti4" | "anti-four-simplex" => Self::four_simplex_scaled(C64::new(-1.0, 0.0)),
            "5simplex" | "five-simplex" => Self::five_simplex(),
            _ => return None,
        })
    }

    /// Names accepted by [`SimplexRelation::builtin`].
    pub const BUILTIN_NAMES: &'static [&'static str] =
        &["tetra-vertex", "tetra-edge", "anti-tetra", "ybe-braided", "ybe-vertex", "4simplex", "anti4", "5simplex"];
}

/// Probe `index` of `seed`: complex Gaussian components, unit norm.
pub fn probe_vector(dim: usize, seed: u64, index: u64) -> Vec<C64> {
    random::unit_vector(&mut random::rng(seed, index), dim)
}

fn dense_product(word: &[EmbeddedOperator], dim: usize) -> Result<ComplexMatrix> {
    let mut acc = ComplexMatrix::identity(dim);
    for f in word.iter().rev() {
        acc = f.apply_left(&acc)?;
    }
    Ok(acc)
}

fn apply_word(word: &[EmbeddedOperator], mut v: Vec<C64>) -> Result<Vec<C64>> {
    for f in word.iter().rev() {
        f.apply_in_place(&mut v)?;
    }
    Ok(v)
}

/// Generic entry point: residual of `rel` with the given slot bindings.
pub fn check_relation(rel: &SimplexRelation, slots: &[&ComplexMatrix], mode: CheckMode) -> Result<f64> {
    rel.check(slots, mode)
}

fn expect_side(m: &ComplexMatrix, side: usize, what: &str) -> Result<()> {
    if m.rows() != side || m.cols() != side {
        return Err(Error::DimensionMismatch(format!(
            "{what} must be {side}x{side}, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// Vertex tetrahedron residual of an 8×8 operator.
pub fn tetra_vertex(r: &ComplexMatrix) -> Result<f64> {
    expect_side(r, 8, "R")?;
    SimplexRelation::tetra_vertex().check(&[r], CheckMode::Dense)
}

/// Edge (Frenkel-Moore) tetrahedron residual of an 8×8 operator.
pub fn tetra_edge(r: &ComplexMatrix) -> Result<f64> {
    expect_side(r, 8, "R")?;
    SimplexRelation::tetra_edge().check(&[r], CheckMode::Dense)
}

pub fn ybe_braided(y: &ComplexMatrix) -> Result<f64> {
    expect_side(y, 4, "Y")?;
    SimplexRelation::ybe_braided().check(&[y], CheckMode::Dense)
}

pub fn ybe_vertex(y: &ComplexMatrix) -> Result<f64> {
    expect_side(y, 4, "Y")?;
    SimplexRelation::ybe_vertex().check(&[y], CheckMode::Dense)
}

/// Residuals of `Y₁₂Y₁₃Y₂₃ = α·Y₂₃Y₁₃Y₁₂` and `M₁M₂Y₁₂ = α⁻¹·Y₁₂M₁M₂`.
pub fn generalized_ybe(y: &ComplexMatrix, m: &ComplexMatrix, alpha: C64) -> Result<(f64, f64)> {
    expect_side(y, 4, "Y")?;
    expect_side(m, 2, "M")?;
    if alpha.norm() == 0.0 {
        return Err(Error::Domain("alpha must be nonzero".into()));
    }
    let yb = SimplexRelation::ybe_vertex_scaled(alpha).check(&[y], CheckMode::Dense)?;
    let mm = m.kron(m);
    let mm_res = residual(&(&mm * y), &(y * &mm).scale(alpha.inv()));
    Ok((yb, mm_res))
}

pub fn anti_tetra_vertex(r: &ComplexMatrix) -> Result<f64> {
    expect_side(r, 8, "R")?;
    SimplexRelation::anti_tetra_vertex().check(&[r], CheckMode::Dense)
}

/// Residual of `R₁₂₃R₁₄₅R₂₄₆R₃₅₆ = s·R₃₅₆R⁽⁻⁾₂₄₆R⁽⁻⁾₁₄₅R₁₂₃`.
pub fn signed_word_tetra(r: &ComplexMatrix, r_minus: &ComplexMatrix, rhs_scale: C64) -> Result<f64> {
    expect_side(r, 8, "R")?;
    expect_side(r_minus, 8, "R⁽⁻⁾")?;
    SimplexRelation::signed_word_tetra(rhs_scale).check(&[r, r_minus], CheckMode::Dense)
}

pub fn four_simplex(r: &ComplexMatrix) -> Result<f64> {
    expect_side(r, 16, "R")?;
    SimplexRelation::four_simplex().check(&[r], CheckMode::Dense)
}

/// Anti-4-simplex residual (`rhs_scale = −1`).
pub fn anti_four_simplex(r: &ComplexMatrix) -> Result<f64> {
    expect_side(r, 16, "R")?;
    SimplexRelation::four_simplex_scaled(C64::new(-1.0, 0.0)).check(&[r], CheckMode::Dense)
}

/// 5-simplex residual; always matrix-free (the register has dimension 2¹⁵).
pub fn five_simplex(r: &ComplexMatrix, probes: usize, seed: u64) -> Result<f64> {
    expect_side(r, 32, "R")?;
    SimplexRelation::five_simplex().check(&[r], CheckMode::MatrixFree { probes, seed })
}

/// Spectral parameters of the four tetrahedron factors, named after the
/// Yang-Baxter factor each inherits: `T₁₂₃ ← μ₁₂`, `T₁₄₅ ← μ₁₃`,
/// `T₂₄₆ ← μ₂₃`; `T₃₅₆` carries an independent value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralParams {
    pub mu12: f64,
    pub mu13: f64,
    pub mu23: f64,
    pub mu_free: f64,
}

/// Residual of the spectral tetrahedron relation for `T(μ) = Y(μ) ⊗ M`.
///
/// Fails with [`Error::IncompatibleSpectral`] if `[Y(μ), M⊗M] ≠ 0` at any of
/// the four parameter values.
pub fn spectral_tetra(
    family: impl Fn(f64) -> ComplexMatrix,
    m: &ComplexMatrix,
    params: SpectralParams,
) -> Result<f64> {
    expect_side(m, 2, "M")?;
    let mm = m.kron(m);
    let mus = [params.mu12, params.mu13, params.mu23, params.mu_free];
    let mut ts = Vec::with_capacity(4);
    for mu in mus {
        let y = family(mu);
        expect_side(&y, 4, "Y(μ)")?;
        let comm = residual(&(&y * &mm), &(&mm * &y));
        if comm > COMMUTANT_TOL {
            return Err(Error::IncompatibleSpectral(comm));
        }
        ts.push(y.kron(m));
    }
    let lhs = vec![
        Factor::new(0, &[1, 2, 3]),
        Factor::new(1, &[1, 4, 5]),
        Factor::new(2, &[2, 4, 6]),
        Factor::new(3, &[3, 5, 6]),
    ];
    let rel = SimplexRelation {
        name: "spectral-tetra".into(),
        n_sites: 6,
        rhs: reversed(&lhs),
        lhs,
        rhs_scale: C64::new(1.0, 0.0),
    };
    rel.check(&[&ts[0], &ts[1], &ts[2], &ts[3]], CheckMode::Dense)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensalg::c64;
    use crate::tensalg::pauli::{identity2, swap, x, y, z};

    fn clifford_simplest() -> ComplexMatrix {
        // ½(BBB + AAB + ABA + BAA) with A = X, B = Z.
        let (a, b) = (x(), z());
        let w = |p: &ComplexMatrix, q: &ComplexMatrix, r: &ComplexMatrix| p.kron(q).kron(r);
        (w(&b, &b, &b) + w(&a, &a, &b) + w(&a, &b, &a) + w(&b, &a, &a)).scale_real(0.5)
    }

    #[test]
    fn identity_solves_every_builtin_exactly() {
        for name in SimplexRelation::BUILTIN_NAMES {
            let rel = SimplexRelation::builtin(name).unwrap();
            let k = rel.lhs[0].sites.len();
            let id = ComplexMatrix::identity(1 << k);
            let mode = if rel.dim() > DENSE_CAP { CheckMode::matrix_free(1) } else { CheckMode::Dense };
            let r = rel.check(&[&id], mode).unwrap();
            if rel.rhs_scale == c64(1., 0.) {
                assert_eq!(r, 0.0, "{name}");
            } else {
                assert!(r > 1.0, "{name}");
            }
        }
    }

    #[test]
    fn simplest_clifford_operator_solves_both_forms() {
        let r = clifford_simplest();
        assert!(tetra_vertex(&r).unwrap() <= 1e-12);
        assert!(tetra_edge(&r).unwrap() <= 1e-12);
    }

    #[test]
    fn random_unitary_fails_vertex_form() {
        let u = random::unitary(&mut random::rng(11, 0), 8);
        assert!(tetra_vertex(&u).unwrap() > 0.05);
    }

    #[test]
    fn ybe_forms() {
        let id = ComplexMatrix::identity(4);
        assert_eq!(ybe_braided(&id).unwrap(), 0.0);
        assert_eq!(ybe_vertex(&id).unwrap(), 0.0);
        assert!(ybe_braided(&swap()).unwrap() < 1e-15);
        assert!(ybe_vertex(&swap()).unwrap() < 1e-15);
    }

    #[test]
    fn generalized_ybe_trivial_and_alpha_zero() {
        let (a, b) = generalized_ybe(&ComplexMatrix::identity(4), &identity2(), c64(1., 0.)).unwrap();
        assert_eq!((a, b), (0.0, 0.0));
        assert!(generalized_ybe(&ComplexMatrix::identity(4), &identity2(), c64(0., 0.)).is_err());
    }

    #[test]
    fn anti_relation_and_identity() {
        let w = |p: &ComplexMatrix, q: &ComplexMatrix, r: &ComplexMatrix| p.kron(q).kron(r);
        let (a, b, c) = (x(), z(), y());
        let r = w(&a, &b, &c) + w(&b, &a, &c);
        assert!(anti_tetra_vertex(&r).unwrap() <= 1e-12);
        let id = anti_tetra_vertex(&ComplexMatrix::identity(8)).unwrap();
        assert!((id - 2.0).abs() < 1e-12);
    }

    #[test]
    fn signed_word_identity() {
        let id = ComplexMatrix::identity(8);
        assert_eq!(signed_word_tetra(&id, &id, c64(1., 0.)).unwrap(), 0.0);
    }

    #[test]
    fn wrong_sizes_are_rejected() {
        assert!(matches!(tetra_vertex(&ComplexMatrix::identity(4)), Err(Error::DimensionMismatch(_))));
        assert!(matches!(five_simplex(&ComplexMatrix::identity(32), 0, 1), Err(Error::Domain(_))));
        let rel = SimplexRelation::five_simplex();
        let id = ComplexMatrix::identity(32);
        assert!(matches!(rel.check(&[&id], CheckMode::Dense), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn matrix_free_agrees_with_dense_on_a_solution() {
        let r = clifford_simplest();
        let rel = SimplexRelation::tetra_vertex();
        let dense = rel.check(&[&r], CheckMode::Dense).unwrap();
        let free = rel.check(&[&r], CheckMode::MatrixFree { probes: 50, seed: 3 }).unwrap();
        assert!((dense - free).abs() <= 1e-9);
    }

    #[test]
    fn probes_are_deterministic_per_index() {
        assert_eq!(probe_vector(16, 5, 2), probe_vector(16, 5, 2));
        assert_ne!(probe_vector(16, 5, 2), probe_vector(16, 5, 3));
    }

    #[test]
    fn spectral_diagonal_family() {
        let fam = |mu: f64| {
            ComplexMatrix::diag(&[c64(1., 0.), C64::from_polar(1., mu), C64::from_polar(1., mu), c64(1., 0.)])
        };
        let p = SpectralParams { mu12: 0.3, mu13: -1.1, mu23: 2.0, mu_free: 0.7 };
        assert!(spectral_tetra(fam, &z(), p).unwrap() <= 1e-12);
    }

    #[test]
    fn spectral_rejects_incompatible_m() {
        let fam = |_: f64| swap().scale(c64(0., 1.)) + ComplexMatrix::identity(4);
        let p = SpectralParams { mu12: 0.0, mu13: 0.0, mu23: 0.0, mu_free: 0.0 };
        assert!(spectral_tetra(fam, &x(), p).is_ok());
        let fam = |mu: f64| ComplexMatrix::diag(&[c64(1., 0.), C64::from_polar(1., mu), c64(2., 0.), c64(1., 0.)]);
        let err = spectral_tetra(fam, &x(), p).unwrap_err();
        assert!(err.to_string().starts_with("M incompatible with Y(μ)"));
    }
}
