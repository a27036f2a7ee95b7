//! The twelve lifted unitary families: six seeds, each in both placements.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use rand::Rng;

use super::{build_yb, lift_unchecked, vertex_form, GaugeTransform, HClass, Placement};
use crate::clifford::Sign;
use crate::random;
use crate::simplex::tetra_vertex;
use crate::tensalg::{c64, pauli, ComplexMatrix, C64};
use crate::unitary::{certify, multiset_distance, UnitarityReport};
use crate::{Error, Result};

/// Tolerance on unitarity, the tetrahedron residual and the spectrum.
pub const FAMILY_TOL: f64 = 1e-10;
/// Relative tolerance on the defining constraints of a point.
pub const CONSTRAINT_TOL: f64 = 1e-12;

/// Seed operator and its free parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilyRow {
    /// `diag(1, p, q, r) ⊗ Z`, phases `p, q, r`.
    DiagonalPhases { p: C64, q: C64, r: C64 },
    /// `P·Y_{H02}/√2 ⊗ Z`.
    ScaledH02,
    /// `(0,0,0,p; 0,0,1,0; 0,1,0,0; q,0,0,0) ⊗ Z`.
    AntiDiagonalZ { p: C64, q: C64 },
    /// Anti-diagonal seed with phases `e^{iθp}, e^{iθq}` and
    /// `M = (0, 1; ±√e^{iθq}/√e^{iθp}, 0)`.
    AntiDiagonalPhases { theta_p: f64, theta_q: f64, branch: Sign },
    /// `X⊗X ⊗ (0, 1; ±1, 0)`.
    AntiDiagonalUnit { branch: Sign },
    /// `P ⊗ M` with `M ∈ U(2)`.
    Permutation { m: ComplexMatrix },
}

impl FamilyRow {
    /// Index among the seven unitary rows (1 is the Clifford family).
    pub fn index(&self) -> u8 {
        match self {
            FamilyRow::DiagonalPhases { .. } => 2,
            FamilyRow::ScaledH02 => 3,
            FamilyRow::AntiDiagonalZ { .. } => 4,
            FamilyRow::AntiDiagonalPhases { .. } => 5,
            FamilyRow::AntiDiagonalUnit { .. } => 6,
            FamilyRow::Permutation { .. } => 7,
        }
    }

    pub fn id(&self) -> String {
        format!("row{}", self.index())
    }

    /// Name of the Yang-Baxter family the row descends from.
    pub fn alias(&self) -> &'static str {
        match self.index() {
            2 => "family-1 (H31)",
            3 => "family-2 (H02)",
            4 => "family-3 (H14, M = Z)",
            5 => "family-3 (H14, off-diagonal M)",
            6 => "family-4 (H14, p = q = 1)",
            _ => "family-5 (permutation)",
        }
    }

    pub fn branch(&self) -> Option<Sign> {
        match self {
            FamilyRow::AntiDiagonalPhases { branch, .. } | FamilyRow::AntiDiagonalUnit { branch } => Some(*branch),
            _ => None,
        }
    }

    /// Vertex-form Yang-Baxter seed.
    pub fn y_vertex(&self) -> ComplexMatrix {
        let one = c64(1., 0.);
        match self {
            FamilyRow::DiagonalPhases { p, q, r } => ComplexMatrix::diag(&[one, *p, *q, *r]),
            FamilyRow::ScaledH02 => vertex_form(&build_yb(&HClass::h02())).scale_real(FRAC_1_SQRT_2),
            FamilyRow::AntiDiagonalZ { p, q } => vertex_form(&build_yb(&HClass::h14(one, *p, *q))),
            FamilyRow::AntiDiagonalPhases { theta_p, theta_q, .. } => {
                vertex_form(&build_yb(&HClass::h14(one, C64::from_polar(1., *theta_p), C64::from_polar(1., *theta_q))))
            }
            FamilyRow::AntiDiagonalUnit { .. } => vertex_form(&build_yb(&HClass::h14(one, one, one))),
            FamilyRow::Permutation { .. } => pauli::swap(),
        }
    }

    /// Lower-left entry `c` of the off-diagonal `M = (0, 1; c, 0)`.
    fn offdiag_entry(&self) -> Option<C64> {
        match self {
            FamilyRow::AntiDiagonalPhases { theta_p, theta_q, branch } => {
                Some(C64::from_polar(1., *theta_q).sqrt() / C64::from_polar(1., *theta_p).sqrt() * branch.value())
            }
            FamilyRow::AntiDiagonalUnit { branch } => Some(c64(branch.value(), 0.)),
            _ => None,
        }
    }

    pub fn m(&self) -> ComplexMatrix {
        if let Some(c) = self.offdiag_entry() {
            return ComplexMatrix::from_rows([[c64(0., 0.), c64(1., 0.)], [c, c64(0., 0.)]]);
        }
        match self {
            FamilyRow::Permutation { m } => m.clone(),
            _ => pauli::z(),
        }
    }

    /// Closed-form spectrum of the seed lift (before the `κ` factor).
    ///
    /// For the off-diagonal rows, with `c` the lower-left entry of `M` and
    /// `s = √c`: `{±s ×2, ±s·e^{i(θp+θq)/2} ×2}`.
    pub fn eigen_formula(&self) -> Vec<C64> {
        let pm = |v: &[C64]| v.iter().flat_map(|&z| [z, -z]).collect::<Vec<_>>();
        let one = c64(1., 0.);
        match self {
            FamilyRow::DiagonalPhases { p, q, r } => pm(&[one, *p, *q, *r]),
            FamilyRow::ScaledH02 => {
                pm(&[one, one, c64(FRAC_1_SQRT_2, FRAC_1_SQRT_2), c64(FRAC_1_SQRT_2, -FRAC_1_SQRT_2)])
            }
            FamilyRow::AntiDiagonalZ { p, q } => {
                let w = (p * q).sqrt();
                pm(&[one, one, w, w])
            }
            FamilyRow::AntiDiagonalPhases { theta_p, theta_q, .. } => {
                let s = self.offdiag_entry().unwrap().sqrt();
                let t = s * C64::from_polar(1., (theta_p + theta_q) / 2.);
                pm(&[s, s, t, t])
            }
            FamilyRow::AntiDiagonalUnit { .. } => {
                let s = self.offdiag_entry().unwrap().sqrt();
                pm(&[s, s, s, s])
            }
            FamilyRow::Permutation { m } => {
                let (m1, m2, m3, m4) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
                let root = ((m1 - m4) * (m1 - m4) + m2 * m3 * 4.0).sqrt();
                let x1 = [(root + m1 + m4) * 0.5, (-root + m1 + m4) * 0.5];
                let x2 = [(root - m1 - m4) * 0.5, (-root - m1 - m4) * 0.5];
                [x1[0], x1[1], x1[0], x1[1], x1[0], x1[1], x2[0], x2[1]].to_vec()
            }
        }
    }

    /// Phase-row closed form with the second quadruple conjugated: `{±e^{−i(θp−θq)/4} ×2,
    /// ±e^{−i(θp+3θq)/4} ×2}`, independent of the sign branch. It does not
    /// match the numerical spectrum; see [`FamilyRow::eigen_formula`].
    pub fn conjugated_phase_formula(theta_p: f64, theta_q: f64) -> Vec<C64> {
        let a = C64::from_polar(1., -(theta_p - theta_q) / 4.);
        let b = C64::from_polar(1., -(theta_p + 3. * theta_q) / 4.);
        vec![a, -a, a, -a, b, -b, b, -b]
    }
}

/// One point of a lifted unitary family.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryFamilyPoint {
    pub row: FamilyRow,
    pub placement: Placement,
    /// `(q₁, q₂, q₃, q₄)`, row-major entries of `Q`.
    pub q: [C64; 4],
    pub kappa: C64,
}

impl UnitaryFamilyPoint {
    /// A point with `Q = 𝟙` and `κ = 1`.
    pub fn new(row: FamilyRow, placement: Placement) -> Self {
        let (o, one) = (c64(0., 0.), c64(1., 0.));
        Self { row, placement, q: [one, o, o, one], kappa: one }
    }

    pub fn q_matrix(&self) -> ComplexMatrix {
        let [a, b, c, d] = self.q;
        ComplexMatrix::from_rows([[a, b], [c, d]])
    }

    /// Named constraint residuals; each must vanish for the point to be
    /// admissible.
    pub fn constraints(&self) -> Vec<(String, f64)> {
        let [q1, q2, q3, q4] = self.q;
        let x = q1.norm_sqr() + q3.norm_sqr();
        let y = q2.norm_sqr() + q4.norm_sqr();
        let z = q1 * q2.conj() + q3 * q4.conj();
        let scale = x.max(y).max(1.0);
        let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(1.0);
        let unit = |v: C64| (v.norm() - 1.0).abs();
        let z_zero = ("q3 = -q1 conj(q2)/conj(q4)".to_string(), z.norm() / scale);
        let equal_moduli = ("|q1| = |q4|".to_string(), rel(q1.norm_sqr(), q4.norm_sqr()));
        let mut out = vec![("|kappa| = 1".to_string(), unit(self.kappa))];
        match &self.row {
            FamilyRow::DiagonalPhases { p, q, r } => {
                out.push(("|p|=1".into(), unit(*p)));
                out.push(("|q|=1".into(), unit(*q)));
                out.push(("|r|=1".into(), unit(*r)));
                out.push(z_zero);
            }
            FamilyRow::ScaledH02 | FamilyRow::AntiDiagonalPhases { .. } => {
                out.push(z_zero);
                out.push(equal_moduli);
            }
            FamilyRow::AntiDiagonalZ { p, q } => {
                out.push(z_zero);
                out.push(("|q1|^2 = |q| |q4|^2".into(), rel(q1.norm_sqr(), q.norm() * q4.norm_sqr())));
                out.push(("|q4|^2 = |p| |q1|^2".into(), rel(q4.norm_sqr(), p.norm() * q1.norm_sqr())));
            }
            FamilyRow::AntiDiagonalUnit { branch } => {
                out.push(("|q1|^2 + |q3|^2 = |q2|^2 + |q4|^2".into(), rel(x, y)));
                match branch {
                    Sign::Plus => out.push(("Im(q1 conj(q2) + q3 conj(q4)) = 0".into(), z.im.abs() / scale)),
                    Sign::Minus => out.push(("q1 conj(q2) + q3 conj(q4) = 0".into(), z.norm() / scale)),
                }
            }
            FamilyRow::Permutation { m } => {
                out.push(("Q in U(2)".into(), (&self.q_matrix().dagger() * &self.q_matrix()).identity_residual()));
                out.push(("M in U(2)".into(), (&m.dagger() * m).identity_residual()));
            }
        }
        out
    }

    /// First constraint exceeding [`CONSTRAINT_TOL`], as an error.
    pub fn check_constraints(&self) -> Result<()> {
        match self.constraints().into_iter().find(|(_, r)| r.is_nan() || *r > CONSTRAINT_TOL) {
            Some((name, _)) => Err(Error::Constraint(name)),
            None => Ok(()),
        }
    }

    /// Closed-form spectrum including `κ`.
    pub fn eigen_formula(&self) -> Vec<C64> {
        self.row.eigen_formula().into_iter().map(|e| e * self.kappa).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyCertificate {
    pub constraints: Vec<(String, f64)>,
    pub unitarity: UnitarityReport,
    pub tetra_vertex: f64,
    /// Bottleneck distance between the numerical and closed-form spectra.
    pub eigen_distance: f64,
    pub eigenvalues: Vec<C64>,
}

impl FamilyCertificate {
    pub fn passes(&self) -> bool {
        self.unitarity.is_unitary && self.tetra_vertex <= FAMILY_TOL && self.eigen_distance <= FAMILY_TOL
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyOutcome {
    pub t: ComplexMatrix,
    pub certificate: FamilyCertificate,
}

/// `κ·Q^{⊗3}·(Y⊗M or M⊗Y)·Q^{−⊗3}` with its certificate.
pub fn unitary_family(pt: &UnitaryFamilyPoint) -> Result<FamilyOutcome> {
    pt.check_constraints()?;
    let g = GaugeTransform::new(pt.q_matrix(), pt.kappa)?;
    let seed = lift_unchecked(&pt.row.y_vertex(), &pt.row.m(), pt.placement);
    let t = g.conjugate(&seed)?;
    let certificate = certify_family(&t, pt)?;
    Ok(FamilyOutcome { t, certificate })
}

/// Certificate of an already-built operator against a point's formulas.
pub fn certify_family(t: &ComplexMatrix, pt: &UnitaryFamilyPoint) -> Result<FamilyCertificate> {
    let unitarity = certify(t, FAMILY_TOL)?;
    let eigenvalues = crate::unitary::spectrum(t)?;
    Ok(FamilyCertificate {
        constraints: pt.constraints(),
        unitarity,
        tetra_vertex: tetra_vertex(t)?,
        eigen_distance: multiset_distance(&eigenvalues, &pt.eigen_formula()),
        eigenvalues,
    })
}

fn angle(rng: &mut impl Rng) -> f64 {
    rng.random_range(-PI..PI)
}

fn modulus(rng: &mut impl Rng) -> f64 {
    rng.random_range(0.3..2.0)
}

/// `(q₁, q₂, −q₁q̄₂/q̄₄, q₄)`.
fn diagonal_qdagq(q1: C64, q2: C64, q4: C64) -> [C64; 4] {
    [q1, q2, -q1 * q2.conj() / q4.conj(), q4]
}

/// A random admissible point of row `2..=7`.
pub fn sample_point(row: u8, placement: Placement, branch: Sign, rng: &mut impl Rng) -> Result<UnitaryFamilyPoint> {
    let phase = random::phase;
    let kappa = phase(rng);
    let polar = |r: f64, t: f64| C64::from_polar(r, t);
    let (row, q) = match row {
        2 => {
            let q = diagonal_qdagq(polar(modulus(rng), angle(rng)), random::gaussian(rng), polar(modulus(rng), angle(rng)));
            (FamilyRow::DiagonalPhases { p: phase(rng), q: phase(rng), r: phase(rng) }, q)
        }
        3 | 5 => {
            let a = modulus(rng);
            let q = diagonal_qdagq(polar(a, angle(rng)), random::gaussian(rng), polar(a, angle(rng)));
            let fr = if row == 3 {
                FamilyRow::ScaledH02
            } else {
                FamilyRow::AntiDiagonalPhases { theta_p: angle(rng), theta_q: angle(rng), branch }
            };
            (fr, q)
        }
        4 => {
            let (a, d) = (modulus(rng), modulus(rng));
            let q = diagonal_qdagq(polar(a, angle(rng)), random::gaussian(rng), polar(d, angle(rng)));
            let p = polar(d * d / (a * a), angle(rng));
            let qq = polar(a * a / (d * d), angle(rng));
            (FamilyRow::AntiDiagonalZ { p, q: qq }, q)
        }
        6 => {
            let v = random::unitary(rng, 2);
            let a = modulus(rng);
            let h = match branch {
                Sign::Plus => {
                    let b = a * rng.random_range(-0.9..0.9);
                    ComplexMatrix::from_real_rows([[a, b], [b, a]])
                }
                Sign::Minus => ComplexMatrix::identity(2).scale_real(a),
            };
            let q = &v * &h;
            (FamilyRow::AntiDiagonalUnit { branch }, [q[(0, 0)], q[(0, 1)], q[(1, 0)], q[(1, 1)]])
        }
        7 => {
            let q = random::unitary(rng, 2);
            (FamilyRow::Permutation { m: random::unitary(rng, 2) }, [q[(0, 0)], q[(0, 1)], q[(1, 0)], q[(1, 1)]])
        }
        _ => return Err(Error::Domain(format!("lifted unitary rows are 2..=7, got {row}"))),
    };
    Ok(UnitaryFamilyPoint { row, placement, q, kappa })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_diagonal_point() {
        let one = c64(1., 0.);
        let pt = UnitaryFamilyPoint::new(FamilyRow::DiagonalPhases { p: one, q: one, r: one }, Placement::YM);
        let out = unitary_family(&pt).unwrap();
        assert!(out.certificate.passes());
        let plus = out.certificate.eigenvalues.iter().filter(|e| (*e - one).norm() < 1e-12).count();
        assert_eq!(plus, 4);
    }

    #[test]
    fn h02_point_spectrum() {
        let pt = UnitaryFamilyPoint::new(FamilyRow::ScaledH02, Placement::MY);
        let out = unitary_family(&pt).unwrap();
        assert!(out.certificate.passes(), "{:?}", out.certificate);
    }

    #[test]
    fn unit_parameters_of_the_z_row() {
        let one = c64(1., 0.);
        let pt = UnitaryFamilyPoint::new(FamilyRow::AntiDiagonalZ { p: one, q: one }, Placement::YM);
        let ev = unitary_family(&pt).unwrap().certificate.eigenvalues;
        assert_eq!(ev.iter().filter(|e| (*e - one).norm() < 1e-12).count(), 4);
        assert_eq!(ev.iter().filter(|e| (*e + one).norm() < 1e-12).count(), 4);
    }

    #[test]
    fn phase_row_spectrum() {
        let row = FamilyRow::AntiDiagonalPhases { theta_p: PI / 2., theta_q: 0., branch: Sign::Plus };
        let pt = UnitaryFamilyPoint::new(row, Placement::YM);
        let out = unitary_family(&pt).unwrap();
        assert!(out.certificate.passes());
        let num = &out.certificate.eigenvalues;
        let e8 = C64::from_polar(1., -PI / 8.);
        let e38 = C64::from_polar(1., PI / 8.);
        let expect = [e8, -e8, e8, -e8, e38, -e38, e38, -e38];
        assert!(multiset_distance(num, &expect) < 1e-12);
        let conjugated = FamilyRow::conjugated_phase_formula(PI / 2., 0.);
        assert!(multiset_distance(num, &conjugated) > 0.1);
    }

    #[test]
    fn minus_branch_of_unit_row_has_imaginary_spectrum() {
        let pt = UnitaryFamilyPoint::new(FamilyRow::AntiDiagonalUnit { branch: Sign::Minus }, Placement::YM);
        let out = unitary_family(&pt).unwrap();
        assert!(out.certificate.eigenvalues.iter().all(|e| (e.re).abs() < 1e-12 && (e.im.abs() - 1.).abs() < 1e-12));
    }

    #[test]
    fn constraint_violation_is_named() {
        let pt = UnitaryFamilyPoint::new(
            FamilyRow::DiagonalPhases { p: c64(2., 0.), q: c64(1., 0.), r: c64(1., 0.) },
            Placement::YM,
        );
        assert_eq!(unitary_family(&pt).unwrap_err().to_string(), "|p|=1 violated");
    }

    #[test]
    fn unit_row_minus_branch_needs_vanishing_z() {
        let a = 1.3f64;
        let b = 0.4;
        let h = ComplexMatrix::from_real_rows([[a, b], [b, a]]);
        let q = [h[(0, 0)], h[(0, 1)], h[(1, 0)], h[(1, 1)]];
        let mut pt = UnitaryFamilyPoint::new(FamilyRow::AntiDiagonalUnit { branch: Sign::Plus }, Placement::YM);
        pt.q = q;
        assert!(unitary_family(&pt).unwrap().certificate.passes());
        pt.row = FamilyRow::AntiDiagonalUnit { branch: Sign::Minus };
        assert!(pt.check_constraints().is_err());
        let seed = lift_unchecked(&pt.row.y_vertex(), &pt.row.m(), pt.placement);
        let t = GaugeTransform::from_q(pt.q_matrix()).unwrap().conjugate(&seed).unwrap();
        assert!((&t.dagger() * &t).identity_residual() > 1e-3);
    }

    #[test]
    fn sampled_points_certify() {
        let mut rng = random::rng(21, 0);
        for row in 2..=7u8 {
            for placement in [Placement::YM, Placement::MY] {
                for branch in [Sign::Plus, Sign::Minus] {
                    for _ in 0..5 {
                        let pt = sample_point(row, placement, branch, &mut rng).unwrap();
                        let out = unitary_family(&pt).unwrap();
                        assert!(out.certificate.passes(), "row {row} {placement:?} {branch:?}: {:?}", out.certificate);
                    }
                }
            }
        }
    }

    #[test]
    fn permutation_row_commutes_with_any_q() {
        let mut rng = random::rng(22, 0);
        for _ in 0..10 {
            let q = random::gaussian_matrix(&mut rng, 2);
            let qq = q.kron(&q);
            assert_eq!(&qq * &pauli::swap(), &pauli::swap() * &qq);
        }
    }
}
