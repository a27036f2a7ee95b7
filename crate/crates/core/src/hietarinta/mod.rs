//! The invertible 4×4 Yang-Baxter classes, their compatible single-site
//! operators `M`, the lifts `Y⊗M` / `M⊗Y`, and local gauge conjugation.
//!
//! Class matrices are returned in braided form; [`vertex_form`] applies the
//! swap before lifting.

mod families;

pub use families::{
    certify_family, sample_point, unitary_family, FamilyCertificate, FamilyOutcome, FamilyRow, UnitaryFamilyPoint,
    FAMILY_TOL,
};

use rand::Rng;

use crate::clifford::Sign;
use crate::random;
use crate::simplex::{tetra_vertex, ybe_vertex};
use crate::tensalg::{c64, pauli, residual, ComplexMatrix, C64};
use crate::{Error, Result};

/// Tolerance for the lift preconditions.
pub const LIFT_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HClassId {
    H31,
    H21,
    H22,
    H23,
    H11,
    H12,
    H13,
    H14,
    H01,
    H02,
    Perm,
}

impl HClassId {
    pub const ALL: [HClassId; 11] = [
        HClassId::H31,
        HClassId::H21,
        HClassId::H22,
        HClassId::H23,
        HClassId::H11,
        HClassId::H12,
        HClassId::H13,
        HClassId::H14,
        HClassId::H01,
        HClassId::H02,
        HClassId::Perm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HClassId::H31 => "H31",
            HClassId::H21 => "H21",
            HClassId::H22 => "H22",
            HClassId::H23 => "H23",
            HClassId::H11 => "H11",
            HClassId::H12 => "H12",
            HClassId::H13 => "H13",
            HClassId::H14 => "H14",
            HClassId::H01 => "H01",
            HClassId::H02 => "H02",
            HClassId::Perm => "PERM",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let key = s.to_ascii_uppercase().replace([',', '_', ' '], "");
        Self::ALL.into_iter().find(|c| c.name() == key || (key == "P" && *c == HClassId::Perm))
    }

    /// Parameter names in the order [`HClass::with_params`] expects them.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            HClassId::H31 | HClassId::H23 => &["k", "p", "q", "s"],
            HClassId::H21 | HClassId::H22 | HClassId::H12 | HClassId::H13 | HClassId::H14 => &["k", "p", "q"],
            HClassId::H11 => &["p", "q"],
            HClassId::H01 | HClassId::H02 | HClassId::Perm => &[],
        }
    }
}

impl std::fmt::Display for HClassId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A class together with its scalar parameters. Unused parameters are zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HClass {
    pub id: HClassId,
    pub k: C64,
    pub p: C64,
    pub q: C64,
    pub s: C64,
}

const ZERO: C64 = c64(0., 0.);

impl HClass {
    fn raw(id: HClassId, k: C64, p: C64, q: C64, s: C64) -> Self {
        Self { id, k, p, q, s }
    }

    /// Parameters listed in [`HClassId::param_names`] order.
    pub fn with_params(id: HClassId, params: &[C64]) -> Result<Self> {
        let names = id.param_names();
        if params.len() != names.len() {
            return Err(Error::Domain(format!(
                "{id} takes {} parameter(s) ({}), got {}",
                names.len(),
                names.join(", "),
                params.len()
            )));
        }
        let mut c = Self::raw(id, ZERO, ZERO, ZERO, ZERO);
        for (name, &v) in names.iter().zip(params) {
            match *name {
                "k" => c.k = v,
                "p" => c.p = v,
                "q" => c.q = v,
                _ => c.s = v,
            }
        }
        Ok(c)
    }

    pub fn params(&self) -> Vec<C64> {
        self.id
            .param_names()
            .iter()
            .map(|n| match *n {
                "k" => self.k,
                "p" => self.p,
                "q" => self.q,
                _ => self.s,
            })
            .collect()
    }

    pub fn h31(k: C64, p: C64, q: C64, s: C64) -> Self {
        Self::raw(HClassId::H31, k, p, q, s)
    }
    pub fn h21(k: C64, p: C64, q: C64) -> Self {
        Self::raw(HClassId::H21, k, p, q, ZERO)
    }
    pub fn h22(k: C64, p: C64, q: C64) -> Self {
        Self::raw(HClassId::H22, k, p, q, ZERO)
    }
    pub fn h23(k: C64, p: C64, q: C64, s: C64) -> Self {
        Self::raw(HClassId::H23, k, p, q, s)
    }
    pub fn h11(p: C64, q: C64) -> Self {
        Self::raw(HClassId::H11, ZERO, p, q, ZERO)
    }
    pub fn h12(k: C64, p: C64, q: C64) -> Self {
        Self::raw(HClassId::H12, k, p, q, ZERO)
    }
    pub fn h13(k: C64, p: C64, q: C64) -> Self {
        Self::raw(HClassId::H13, k, p, q, ZERO)
    }
    pub fn h14(k: C64, p: C64, q: C64) -> Self {
        Self::raw(HClassId::H14, k, p, q, ZERO)
    }
    pub fn h01() -> Self {
        Self::raw(HClassId::H01, ZERO, ZERO, ZERO, ZERO)
    }
    pub fn h02() -> Self {
        Self::raw(HClassId::H02, ZERO, ZERO, ZERO, ZERO)
    }
    pub fn perm() -> Self {
        Self::raw(HClassId::Perm, ZERO, ZERO, ZERO, ZERO)
    }
}

/// The braided-form class matrix.
pub fn build_yb(c: &HClass) -> ComplexMatrix {
    let (k, p, q, s) = (c.k, c.p, c.q, c.s);
    let o = ZERO;
    let one = c64(1., 0.);
    let rows = match c.id {
        HClassId::H31 => [[k, o, o, o], [o, o, p, o], [o, q, o, o], [o, o, o, s]],
        HClassId::H21 => [[k * k, o, o, o], [o, k * k - p * q, k * p, o], [o, k * q, o, o], [o, o, o, k * k]],
        HClassId::H22 => [[k * k, o, o, o], [o, k * k - p * q, k * p, o], [o, k * q, o, o], [o, o, o, -p * q]],
        HClassId::H23 => [[k, p, q, s], [o, o, k, p], [o, k, o, q], [o, o, o, k]],
        HClassId::H11 => {
            let (pp, qq, pq) = (p * p, q * q, p * q);
            [
                [pp + pq * 2.0 - qq, o, o, pp - qq],
                [o, pp - qq, pp + qq, o],
                [o, pp + qq, pp - qq, o],
                [pp - qq, o, o, pp - pq * 2.0 - qq],
            ]
        }
        HClassId::H12 => [[p, o, o, k], [o, p - q, p, o], [o, q, o, o], [o, o, o, -q]],
        HClassId::H13 => {
            let kk = k * k;
            [[kk, -k * p, k * p, p * q], [o, o, kk, k * q], [o, kk, o, -k * q], [o, o, o, kk]]
        }
        HClassId::H14 => [[o, o, o, p], [o, k, o, o], [o, o, k, o], [q, o, o, o]],
        HClassId::H01 => [[one, o, o, one], [o, o, -one, o], [o, -one, o, o], [o, o, o, one]],
        HClassId::H02 => [[one, o, o, one], [o, one, one, o], [o, -one, one, o], [-one, o, o, one]],
        HClassId::Perm => return pauli::swap(),
    };
    ComplexMatrix::from_rows(rows)
}

/// [`build_yb`], failing when the matrix is singular.
pub fn build_invertible(c: &HClass) -> Result<ComplexMatrix> {
    let y = build_yb(c);
    if y.is_singular() {
        return Err(Error::Singular);
    }
    Ok(y)
}

/// `P·Y`, turning a braided solution into a vertex-form one.
pub fn vertex_form(y_braided: &ComplexMatrix) -> ComplexMatrix {
    &pauli::swap() * y_braided
}

/// Shapes of single-site operators commuting with `Y` through `M⊗M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MForm {
    /// `(m₁, 0; 0, m₄)`.
    Diagonal,
    /// `(0, 0; m₃, 0)`.
    LowerNilpotent,
    /// `(0, m₂; 0, 0)`.
    UpperNilpotent,
    /// `(m₁, m₂; 0, m₁)`.
    UpperToeplitz,
    PauliZ,
    /// `(1, ±w; ±w, w²)` with `w = √(p−q)/√(p+q)`.
    H11ProjectorSym(Sign),
    /// `(1, ±w; ∓w, −w²)`.
    H11ProjectorAnti(Sign),
    /// `(±√(p+q)/√k, 1; 0, 0)`.
    H12Projector(Sign),
    /// `(0, 1; ±√q/√p, 0)`.
    H14OffDiagonal(Sign),
    /// Any `(m₁, m₂; m₃, m₄)`.
    General,
}

impl MForm {
    pub fn free_params(self) -> &'static [&'static str] {
        match self {
            MForm::Diagonal => &["m1", "m4"],
            MForm::LowerNilpotent => &["m3"],
            MForm::UpperNilpotent => &["m2"],
            MForm::UpperToeplitz => &["m1", "m2"],
            MForm::General => &["m1", "m2", "m3", "m4"],
            _ => &[],
        }
    }

    pub fn describe(self) -> String {
        match self {
            MForm::Diagonal => "(m1, 0; 0, m4)".into(),
            MForm::LowerNilpotent => "(0, 0; m3, 0)".into(),
            MForm::UpperNilpotent => "(0, m2; 0, 0)".into(),
            MForm::UpperToeplitz => "(m1, m2; 0, m1)".into(),
            MForm::PauliZ => "Z".into(),
            MForm::H11ProjectorSym(s) => format!("(1, {0}w; {0}w, w^2), w = sqrt(p-q)/sqrt(p+q)", s.symbol()),
            MForm::H11ProjectorAnti(s) => {
                let t = if s == Sign::Plus { '-' } else { '+' };
                format!("(1, {}w; {t}w, -w^2), w = sqrt(p-q)/sqrt(p+q)", s.symbol())
            }
            MForm::H12Projector(s) => format!("({}sqrt(p+q)/sqrt(k), 1; 0, 0)", s.symbol()),
            MForm::H14OffDiagonal(s) => format!("(0, 1; {}sqrt(q)/sqrt(p), 0)", s.symbol()),
            MForm::General => "(m1, m2; m3, m4)".into(),
        }
    }

    /// Evaluate the form for a class and its free parameters.
    pub fn materialize(self, c: &HClass, free: &[C64]) -> Result<ComplexMatrix> {
        let want = self.free_params().len();
        if free.len() != want {
            return Err(Error::Domain(format!("{} takes {want} free parameter(s), got {}", self.describe(), free.len())));
        }
        let o = ZERO;
        let one = c64(1., 0.);
        let m = match self {
            MForm::Diagonal => [[free[0], o], [o, free[1]]],
            MForm::LowerNilpotent => [[o, o], [free[0], o]],
            MForm::UpperNilpotent => [[o, free[0]], [o, o]],
            MForm::UpperToeplitz => [[free[0], free[1]], [o, free[0]]],
            MForm::PauliZ => return Ok(pauli::z()),
            MForm::H11ProjectorSym(sg) => {
                let w = ratio_sqrt(c.p - c.q, c.p + c.q)? * sg.value();
                [[one, w], [w, w * w]]
            }
            MForm::H11ProjectorAnti(sg) => {
                let w = ratio_sqrt(c.p - c.q, c.p + c.q)? * sg.value();
                [[one, w], [-w, -w * w]]
            }
            MForm::H12Projector(sg) => [[ratio_sqrt(c.p + c.q, c.k)? * sg.value(), one], [o, o]],
            MForm::H14OffDiagonal(sg) => [[o, one], [ratio_sqrt(c.q, c.p)? * sg.value(), o]],
            MForm::General => [[free[0], free[1]], [free[2], free[3]]],
        };
        Ok(ComplexMatrix::from_rows(m))
    }
}

/// `√a/√b` with principal square roots.
pub fn ratio_sqrt(a: C64, b: C64) -> Result<C64> {
    if b.norm() == 0.0 {
        return Err(Error::BranchSingularity);
    }
    Ok(a.sqrt() / b.sqrt())
}

/// One entry of a class's compatibility list.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MOption {
    pub form: MForm,
    /// Whether the generic member is invertible.
    pub invertible: bool,
}

const fn opt(form: MForm, invertible: bool) -> MOption {
    MOption { form, invertible }
}

/// Single-site operators `M` with `[Y, M⊗M] = 0`.
///
/// For `H23` the compatible upper-triangular operators have equal diagonal
/// entries.
pub fn compatible_m(c: &HClass) -> Vec<MOption> {
    use MForm::*;
    use Sign::{Minus, Plus};
    match c.id {
        HClassId::H31 | HClassId::H22 => vec![opt(Diagonal, true)],
        HClassId::H21 => vec![opt(Diagonal, true), opt(LowerNilpotent, false), opt(UpperNilpotent, false)],
        HClassId::H23 => vec![opt(UpperToeplitz, true)],
        HClassId::H11 => vec![
            opt(PauliZ, true),
            opt(H11ProjectorSym(Plus), false),
            opt(H11ProjectorSym(Minus), false),
            opt(H11ProjectorAnti(Plus), false),
            opt(H11ProjectorAnti(Minus), false),
        ],
        HClassId::H12 => vec![opt(PauliZ, true), opt(H12Projector(Plus), false), opt(H12Projector(Minus), false)],
        HClassId::H13 => vec![opt(UpperToeplitz, true), opt(UpperNilpotent, false)],
        HClassId::H14 => vec![opt(PauliZ, true), opt(H14OffDiagonal(Plus), true), opt(H14OffDiagonal(Minus), true)],
        HClassId::H01 => vec![opt(PauliZ, true), opt(UpperNilpotent, false)],
        HClassId::H02 => vec![opt(PauliZ, true)],
        HClassId::Perm => vec![opt(General, true)],
    }
}

impl MOption {
    /// Materialize with complex Gaussian free parameters.
    pub fn sample(&self, c: &HClass, rng: &mut impl Rng) -> Result<ComplexMatrix> {
        let free: Vec<C64> = (0..self.form.free_params().len()).map(|_| random::gaussian(rng)).collect();
        self.form.materialize(c, &free)
    }
}

/// A class point with complex Gaussian parameters.
pub fn sample_class(id: HClassId, rng: &mut impl Rng) -> HClass {
    let params: Vec<C64> = id.param_names().iter().map(|_| random::gaussian(rng)).collect();
    HClass::with_params(id, &params).expect("parameter count matches the class")
}

/// Relative residual of `[Y, M⊗M]`.
pub fn commutant_residual(y: &ComplexMatrix, m: &ComplexMatrix) -> Result<f64> {
    if y.rows() != 4 || !y.is_square() || m.rows() != 2 || !m.is_square() {
        return Err(Error::DimensionMismatch("commutant check needs a 4x4 Y and a 2x2 M".into()));
    }
    let mm = m.kron(m);
    Ok(residual(&(y * &mm), &(&mm * y)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Placement {
    /// `T = Y₁₂M₃`.
    YM,
    /// `T = M₁Y₂₃`.
    MY,
}

impl Placement {
    pub fn name(self) -> &'static str {
        match self {
            Placement::YM => "YxM",
            Placement::MY => "MxY",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "yxm" | "ym" | "y⊗m" | "y-m" => Some(Placement::YM),
            "mxy" | "my" | "m⊗y" | "m-y" => Some(Placement::MY),
            _ => None,
        }
    }
}

/// `Y⊗M` or `M⊗Y` for a vertex-form `Y`; both preconditions are checked.
pub fn lift(y_vertex: &ComplexMatrix, m: &ComplexMatrix, placement: Placement) -> Result<ComplexMatrix> {
    let comm = commutant_residual(y_vertex, m)?;
    if comm > LIFT_TOL {
        return Err(Error::Precondition { what: "[Y, M⊗M] ≠ 0".into(), residual: comm });
    }
    let yb = ybe_vertex(y_vertex)?;
    if yb > LIFT_TOL {
        return Err(Error::Precondition { what: "Y fails the vertex Yang-Baxter equation".into(), residual: yb });
    }
    Ok(lift_unchecked(y_vertex, m, placement))
}

pub(crate) fn lift_unchecked(y: &ComplexMatrix, m: &ComplexMatrix, placement: Placement) -> ComplexMatrix {
    match placement {
        Placement::YM => y.kron(m),
        Placement::MY => m.kron(y),
    }
}

/// `κ` and an invertible `Q` acting as `κ·Q^{⊗n}·(·)·Q^{−⊗n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeTransform {
    q: ComplexMatrix,
    kappa: C64,
}

impl GaugeTransform {
    pub fn new(q: ComplexMatrix, kappa: C64) -> Result<Self> {
        if q.rows() != 2 || q.cols() != 2 {
            return Err(Error::DimensionMismatch("gauge Q must be 2x2".into()));
        }
        if q.determinant()?.norm() <= 1e-12 {
            return Err(Error::Singular);
        }
        Ok(Self { q, kappa })
    }

    pub fn from_q(q: ComplexMatrix) -> Result<Self> {
        Self::new(q, c64(1., 0.))
    }

    pub fn identity() -> Self {
        Self { q: ComplexMatrix::identity(2), kappa: c64(1., 0.) }
    }

    pub fn q(&self) -> &ComplexMatrix {
        &self.q
    }

    pub fn kappa(&self) -> C64 {
        self.kappa
    }

    /// `κ·Q^{⊗n}·R·(Q⁻¹)^{⊗n}` for a `2ⁿ × 2ⁿ` operator.
    pub fn conjugate(&self, r: &ComplexMatrix) -> Result<ComplexMatrix> {
        let n = sites_of(r)?;
        let qi = self.q.inverse()?;
        let big_q = ComplexMatrix::kron_all(std::iter::repeat_n(&self.q, n));
        let big_qi = ComplexMatrix::kron_all(std::iter::repeat_n(&qi, n));
        Ok((&(&big_q * r) * &big_qi).scale(self.kappa))
    }
}

fn sites_of(r: &ComplexMatrix) -> Result<usize> {
    let d = r.rows();
    if !r.is_square() || d < 2 || !d.is_power_of_two() {
        return Err(Error::DimensionMismatch(format!("expected a square 2^n operator, got {}x{}", r.rows(), r.cols())));
    }
    Ok(d.trailing_zeros() as usize)
}

pub fn gauge_conjugate(r: &ComplexMatrix, g: &GaugeTransform) -> Result<ComplexMatrix> {
    g.conjugate(r)
}

/// `H·R⁻¹ − R†·H` with `H = (Q†Q)^{⊗n}`; it vanishes exactly when the
/// `Q`-conjugate of `R` is unitary.
pub fn deviation(r: &ComplexMatrix, q: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = sites_of(r)?;
    let g = &q.dagger() * q;
    let h = ComplexMatrix::kron_all(std::iter::repeat_n(&g, n));
    let ri = r.inverse()?;
    Ok(&h * &ri - &r.dagger() * &h)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaugeMetricStructure {
    /// `z = q₁q̄₂ + q₃q̄₄`, the off-diagonal entry of `Q†Q`.
    pub z: C64,
    pub qdagq_diagonal: bool,
    pub h_diag_nonzero: bool,
    pub h_offdiag_all_or_none: bool,
}

/// Structure of `H = (Q†Q)^{⊗3}` for a 2×2 gauge matrix.
pub fn gauge_metric_structure(q: &ComplexMatrix) -> Result<GaugeMetricStructure> {
    let g = GaugeTransform::from_q(q.clone())?;
    let q = g.q();
    let (q1, q2, q3, q4) = (q[(0, 0)], q[(0, 1)], q[(1, 0)], q[(1, 1)]);
    let z = q1 * q2.conj() + q3 * q4.conj();
    let qq = &q.dagger() * q;
    let h = qq.kron(&qq).kron(&qq);
    let tol = 1e-12 * h.max_abs().max(1.0);
    let mut zero_off = 0usize;
    let mut off = 0usize;
    let mut diag_ok = true;
    for i in 0..8 {
        for j in 0..8 {
            let v = h[(i, j)].norm();
            if i == j {
                diag_ok &= v > tol;
            } else {
                off += 1;
                zero_off += usize::from(v <= tol);
            }
        }
    }
    Ok(GaugeMetricStructure {
        z,
        qdagq_diagonal: z.norm() <= 1e-12 * qq.max_abs().max(1.0),
        h_diag_nonzero: diag_ok,
        h_offdiag_all_or_none: zero_off == 0 || zero_off == off,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReductionReport {
    /// `‖(Q⊗Q)(αXX + βZZ)(Q⊗Q)⁻¹ − Y_target‖`, relative.
    pub clifford_to_h14: f64,
    /// `‖Q·Y·Q⁻¹ + Z‖` for the appended Pauli `Y`.
    pub appended_to_minus_z: f64,
    /// Diagonal `Q` on the projector solution versus the `H31` diagonal.
    pub projector_to_h31_diagonal: f64,
    /// Antidiagonal `Q`, reversed diagonal.
    pub projector_to_h31_antidiagonal: f64,
}

/// `Q = ½(√p/√(α−β), i√p/√(α−β); i, 1)`.
pub fn reduction_q(alpha: C64, beta: C64, p: C64) -> Result<ComplexMatrix> {
    let d = alpha - beta;
    if d.norm() <= 1e-14 * alpha.norm().max(beta.norm()).max(1.0) {
        return Err(Error::BranchSingularity);
    }
    let w = p.sqrt() / d.sqrt();
    let i = c64(0., 1.);
    Ok(ComplexMatrix::from_rows([[w, i * w], [i, c64(1., 0.)]]).scale_real(0.5))
}

/// The target `(0,0,0,p; 0,0,α+β,0; 0,α+β,0,0; (α−β)²/p,0,0,0)`.
pub fn reduction_h14_target(alpha: C64, beta: C64, p: C64) -> ComplexMatrix {
    let o = ZERO;
    let k = alpha + beta;
    let q = (alpha - beta) * (alpha - beta) / p;
    ComplexMatrix::from_rows([[o, o, o, p], [o, o, k, o], [o, k, o, o], [q, o, o, o]])
}

/// The two-site projector solution `α₁𝟙 + α₂Π⁺ᵢ + α₃Π⁺ⱼ + α₄Π⁻ᵢ + α₅Π⁻ⱼ
/// + α₆Π⁺Π⁺ + α₇Π⁻Π⁻ + α₈Π⁺Π⁻ + α₉Π⁻Π⁺`.
pub fn projector_yb(a: &[C64; 9]) -> ComplexMatrix {
    let (i, pp, pm) = (pauli::identity2(), pauli::proj_plus(), pauli::proj_minus());
    let terms = [
        i.kron(&i),
        pp.kron(&i),
        i.kron(&pp),
        pm.kron(&i),
        i.kron(&pm),
        pp.kron(&pp),
        pm.kron(&pm),
        pp.kron(&pm),
        pm.kron(&pp),
    ];
    terms.iter().zip(a).fold(ComplexMatrix::zeros(4, 4), |acc, (t, &c)| acc + t.scale(c))
}

/// `diag(α₁+α₂+α₃+α₆, α₁+α₂+α₅+α₈, α₁+α₃+α₄+α₉, α₁+α₄+α₅+α₇)`.
pub fn projector_h31_diagonal(a: &[C64; 9]) -> [C64; 4] {
    [a[0] + a[1] + a[2] + a[5], a[0] + a[1] + a[4] + a[7], a[0] + a[2] + a[3] + a[8], a[0] + a[3] + a[4] + a[6]]
}

/// Numerically checks both reductions of the Clifford-built Yang-Baxter
/// operators to the catalog classes.
pub fn reduction_equivalences(alpha: C64, beta: C64, p: C64, projector: &[C64; 9], q_diag: (C64, C64)) -> Result<ReductionReport> {
    let q = reduction_q(alpha, beta, p)?;
    let g = GaugeTransform::from_q(q)?;
    let ab = pauli::x().kron(&pauli::x()).scale(alpha) + pauli::z().kron(&pauli::z()).scale(beta);
    let clifford_to_h14 = residual(&g.conjugate(&ab)?, &reduction_h14_target(alpha, beta, p));
    let appended_to_minus_z = residual(&g.conjugate(&pauli::y())?, &-pauli::z());

    let y = projector_yb(projector);
    let d = projector_h31_diagonal(projector);
    let (q1, q4) = q_diag;
    let diag = GaugeTransform::from_q(ComplexMatrix::diag(&[q1, q4]))?;
    let projector_to_h31_diagonal = residual(&diag.conjugate(&y)?, &ComplexMatrix::diag(&d));
    let anti = GaugeTransform::from_q(ComplexMatrix::from_rows([[ZERO, q4], [q1, ZERO]]))?;
    let reversed = [d[3], d[2], d[1], d[0]];
    let projector_to_h31_antidiagonal = residual(&anti.conjugate(&y)?, &ComplexMatrix::diag(&reversed));
    Ok(ReductionReport { clifford_to_h14, appended_to_minus_z, projector_to_h31_diagonal, projector_to_h31_antidiagonal })
}

/// Lifts `Y` and checks the vertex tetrahedron relation on the result.
pub fn lift_and_check(y_vertex: &ComplexMatrix, m: &ComplexMatrix, placement: Placement) -> Result<(ComplexMatrix, f64)> {
    let t = lift(y_vertex, m, placement)?;
    let r = tetra_vertex(&t)?;
    Ok((t, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use crate::simplex::ybe_braided;

    fn sample_class(id: HClassId, rng: &mut impl rand::Rng) -> HClass {
        let params: Vec<C64> = id.param_names().iter().map(|_| random::gaussian(rng)).collect();
        HClass::with_params(id, &params).unwrap()
    }

    #[test]
    fn every_class_is_braided() {
        let mut rng = random::rng(11, 0);
        for id in HClassId::ALL {
            for _ in 0..20 {
                let y = build_yb(&sample_class(id, &mut rng));
                assert!(ybe_braided(&y).unwrap() <= 1e-12, "{id}");
                assert!(ybe_vertex(&vertex_form(&y)).unwrap() <= 1e-12, "{id}");
            }
        }
    }

    #[test]
    fn h11_corner_and_identity_like_h31() {
        let y = build_yb(&HClass::h11(c64(2., 0.), c64(1., 0.)));
        assert_eq!(y[(0, 0)], c64(7., 0.));
        assert_eq!(y[(3, 3)], c64(-1., 0.));
        let one = c64(1., 0.);
        let y = build_yb(&HClass::h31(one, one, one, one));
        assert_eq!(y, pauli::swap());
        assert_eq!(ybe_braided(&y).unwrap(), 0.0);
    }

    #[test]
    fn singular_parameters_are_rejected() {
        let one = c64(1., 0.);
        assert!(build_invertible(&HClass::h31(one, ZERO, one, one)).is_err());
        assert!(build_invertible(&HClass::h31(one, one, one, one)).is_ok());
    }

    #[test]
    fn compatible_forms_commute() {
        let mut rng = random::rng(12, 0);
        for id in HClassId::ALL {
            for _ in 0..20 {
                let c = sample_class(id, &mut rng);
                let y = vertex_form(&build_yb(&c));
                for o in compatible_m(&c) {
                    let free: Vec<C64> = o.form.free_params().iter().map(|_| random::gaussian(&mut rng)).collect();
                    let m = o.form.materialize(&c, &free).unwrap();
                    assert!(commutant_residual(&y, &m).unwrap() <= 1e-10, "{id} {:?}", o.form);
                    assert_eq!(o.invertible, !m.is_singular(), "{id} {:?}", o.form);
                    for pl in [Placement::YM, Placement::MY] {
                        let t = lift_unchecked(&y, &m, pl);
                        assert!(tetra_vertex(&t).unwrap() <= 1e-10, "{id} {:?}", o.form);
                    }
                }
            }
        }
    }

    #[test]
    fn projector_options_are_rank_one() {
        let c = HClass::h11(c64(2., 0.3), c64(0.7, -0.2));
        let d = HClass::h12(c64(1.5, 0.), c64(2., 0.3), c64(0.7, -0.2));
        for (c, o) in compatible_m(&c).into_iter().map(|o| (c, o)).chain(compatible_m(&d).into_iter().map(|o| (d, o))) {
            if o.invertible {
                continue;
            }
            let m = o.form.materialize(&c, &[]).unwrap();
            assert!(residual(&(&m * &m), &m.scale(m.trace())) <= 1e-12);
            let unit = m.scale(m.trace().inv());
            assert!(residual(&(&unit * &unit), &unit) <= 1e-12);
        }
    }

    #[test]
    fn h14_offdiagonal_at_unit_parameters() {
        let one = c64(1., 0.);
        let c = HClass::h14(one, one, one);
        let m = MForm::H14OffDiagonal(Sign::Minus).materialize(&c, &[]).unwrap();
        assert_eq!(m, ComplexMatrix::from_real_rows([[0., 1.], [-1., 0.]]));
    }

    #[test]
    fn h23_needs_equal_diagonal() {
        let mut rng = random::rng(13, 0);
        let c = sample_class(HClassId::H23, &mut rng);
        let y = vertex_form(&build_yb(&c));
        let m = ComplexMatrix::from_real_rows([[1., 0.5], [0., 2.]]);
        assert!(commutant_residual(&y, &m).unwrap() > 1e-3);
    }

    #[test]
    fn lift_preconditions() {
        let (t, r) = lift_and_check(&pauli::swap(), &ComplexMatrix::identity(2), Placement::YM).unwrap();
        assert_eq!(t, pauli::swap().kron(&ComplexMatrix::identity(2)));
        assert!(r <= 1e-12);
        let y = vertex_form(&build_yb(&HClass::h02()));
        match lift(&y, &pauli::x(), Placement::YM) {
            Err(Error::Precondition { residual, .. }) => assert!(residual > 0.1),
            other => panic!("{other:?}"),
        }
        let not_yb = ComplexMatrix::from_real_rows([[1., 2., 0., 0.], [0., 1., 0., 0.], [0., 0., 1., 0.], [0., 0., 3., 1.]]);
        assert!(lift(&not_yb, &ComplexMatrix::identity(2), Placement::YM).is_err());
    }

    #[test]
    fn gauge_identity_and_singular() {
        let mut rng = random::rng(14, 0);
        let r = random::gaussian_matrix(&mut rng, 8);
        assert_eq!(gauge_conjugate(&r, &GaugeTransform::identity()).unwrap(), r);
        assert!(matches!(GaugeTransform::from_q(ComplexMatrix::from_real_rows([[1., 2.], [2., 4.]])), Err(Error::Singular)));
    }

    #[test]
    fn gauge_preserves_solutions() {
        let mut rng = random::rng(15, 0);
        let one = c64(1., 0.);
        let y = vertex_form(&build_yb(&HClass::h14(one, c64(0.3, 1.), c64(-2., 0.5))));
        let t = lift(&y, &pauli::z(), Placement::MY).unwrap();
        for _ in 0..50 {
            let g = GaugeTransform::new(random::invertible(&mut rng, 2), random::phase(&mut rng)).unwrap();
            assert!(tetra_vertex(&gauge_conjugate(&t, &g).unwrap()).unwrap() <= 1e-8);
        }
    }

    #[test]
    fn deviation_examples() {
        let mut rng = random::rng(16, 0);
        let u = random::unitary(&mut rng, 8);
        assert!(deviation(&u, &ComplexMatrix::identity(2)).unwrap().max_abs() <= 1e-12);

        let (q1, q2, q4) = (c64(1.2, 0.3), c64(-0.4, 0.9), c64(0.5, -0.7));
        let q = ComplexMatrix::from_rows([[q1, q2], [-q1 * q2.conj() / q4.conj(), q4]]);
        let ph = |t: f64| C64::from_polar(1.0, t);
        let y = ComplexMatrix::diag(&[c64(1., 0.), ph(0.4), ph(-1.1), ph(2.0)]);
        let t = y.kron(&pauli::z());
        assert!(deviation(&t, &q).unwrap().frobenius() <= 1e-10);

        let y = ComplexMatrix::diag(&[c64(1., 0.), c64(2., 0.), ph(-1.1), ph(2.0)]);
        let t = y.kron(&pauli::z());
        let d = deviation(&t, &q).unwrap().frobenius();
        assert!(d > 0.5);
        let conj = gauge_conjugate(&t, &GaugeTransform::from_q(q).unwrap()).unwrap();
        assert!((&conj.dagger() * &conj).identity_residual() > 1e-3);
    }

    #[test]
    fn gauge_metric_all_or_none() {
        let p = gauge_metric_structure(&ComplexMatrix::diag(&[c64(2., 0.), c64(0., 3.)])).unwrap();
        assert_eq!(p.z, ZERO);
        assert!(p.qdagq_diagonal && p.h_diag_nonzero && p.h_offdiag_all_or_none);

        let q = ComplexMatrix::from_real_rows([[1., 1.], [0., 1.]]);
        let p = gauge_metric_structure(&q).unwrap();
        assert_eq!(p.z, c64(1., 0.));
        assert!(!p.qdagq_diagonal && p.h_diag_nonzero && p.h_offdiag_all_or_none);
        let qq = &q.dagger() * &q;
        let h = qq.kron(&qq).kron(&qq);
        assert!(h.as_slice().iter().all(|e| e.norm() > 0.5));
    }

    #[test]
    fn clifford_and_projector_reductions() {
        let one = c64(1., 0.);
        let mut a = [ZERO; 9];
        a[0] = one;
        let r = reduction_equivalences(one, ZERO, one, &a, (c64(2., 0.), c64(0., -1.))).unwrap();
        assert!(r.clifford_to_h14 <= 1e-10 && r.appended_to_minus_z <= 1e-10, "{r:?}");
        assert_eq!(r.projector_to_h31_diagonal, 0.0);
        assert!(r.projector_to_h31_antidiagonal <= 1e-15);
        assert!(matches!(reduction_equivalences(one, one, one, &a, (one, one)), Err(Error::BranchSingularity)));

        let mut rng = random::rng(17, 0);
        for _ in 0..20 {
            let (al, be, p) = (random::gaussian(&mut rng), random::gaussian(&mut rng), random::gaussian(&mut rng));
            let a: [C64; 9] = std::array::from_fn(|_| random::gaussian(&mut rng));
            let r = reduction_equivalences(al, be, p, &a, (random::gaussian(&mut rng), random::gaussian(&mut rng))).unwrap();
            assert!(r.clifford_to_h14 <= 1e-10, "{r:?}");
            assert!(r.appended_to_minus_z <= 1e-10, "{r:?}");
            assert!(r.projector_to_h31_diagonal <= 1e-12 && r.projector_to_h31_antidiagonal <= 1e-12, "{r:?}");
        }
    }

    #[test]
    fn class_names_round_trip() {
        for id in HClassId::ALL {
            assert_eq!(HClassId::parse(id.name()), Some(id));
        }
        assert_eq!(HClassId::parse("h1,4"), Some(HClassId::H14));
        assert_eq!(HClassId::parse("P"), Some(HClassId::Perm));
    }
}
