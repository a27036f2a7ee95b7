//! Higher-simplex operators built from lower-simplex solutions, and the
//! operator words in three anticommuting generators `A`, `B`, `C`.
//!
//! A 4-simplex operator acts on four qubits, a 5-simplex operator on five.
//! Lifts pad a Yang-Baxter (vertex form) or tetrahedron base with copies of
//! a single-qubit `M` on the remaining legs.

use crate::clifford::abc::CliffordTriple;
use crate::simplex::{self, CheckMode, SimplexRelation};
use crate::tensalg::{pauli, residual, ComplexMatrix, C64};
use crate::{Error, Result};

/// Tolerance on `[base, M⊗…⊗M]` and on the base's own relation.
pub const LIFT_TOL: f64 = 1e-10;

/// A base operator padded with `M` on every other leg.
///
/// The base occupies the consecutive legs `position..position + base_legs`.
/// A 4×4 base is a vertex-form Yang-Baxter operator, an 8×8 base a
/// tetrahedron operator.
#[derive(Clone, Debug)]
pub struct LiftSpec {
    base: ComplexMatrix,
    m: ComplexMatrix,
    position: usize,
}

impl LiftSpec {
    pub fn new(base: ComplexMatrix, m: ComplexMatrix, position: usize) -> Result<Self> {
        if !base.is_square() || !(base.rows() == 4 || base.rows() == 8) {
            return Err(Error::DimensionMismatch(format!("lift base must be 4x4 or 8x8, got {}x{}", base.rows(), base.cols())));
        }
        if m.rows() != 2 || m.cols() != 2 {
            return Err(Error::DimensionMismatch(format!("M must be 2x2, got {}x{}", m.rows(), m.cols())));
        }
        Ok(Self { base, m, position })
    }

    pub fn base(&self) -> &ComplexMatrix {
        &self.base
    }

    pub fn m(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn position(&self) -> usize {
        self.position
    }

    /// 2 for a Yang-Baxter base, 3 for a tetrahedron base.
    pub fn base_legs(&self) -> usize {
        self.base.rows().trailing_zeros() as usize
    }

    /// Human-readable placement such as `MYM` or `TM`.
    pub fn pattern(&self, legs: usize) -> String {
        let tag = if self.base_legs() == 2 { "Y" } else { "T" };
        let mut s = String::new();
        let mut leg = 0;
        while leg < legs {
            if leg == self.position {
                s.push_str(tag);
                leg += self.base_legs();
            } else {
                s.push('M');
                leg += 1;
            }
        }
        s
    }

    /// `‖[base, M^{⊗k}]‖ / max(1, ‖M^{⊗k} base‖)` with `k` the base leg count.
    pub fn commutant_residual(&self) -> f64 {
        let mk = ComplexMatrix::kron_all(std::iter::repeat_n(&self.m, self.base_legs()));
        residual(&(&self.base * &mk), &(&mk * &self.base))
    }

    /// Residual of the base against its own relation (vertex Yang-Baxter or
    /// vertex tetrahedron).
    pub fn base_residual(&self) -> Result<f64> {
        match self.base_legs() {
            2 => simplex::ybe_vertex(&self.base),
            _ => simplex::tetra_vertex(&self.base),
        }
    }

    /// The padded operator on `legs` qubits, without any precondition check.
    pub fn operator(&self, legs: usize) -> Result<ComplexMatrix> {
        if self.position + self.base_legs() > legs {
            return Err(Error::Domain(format!(
                "base at leg {} does not fit in {legs} legs",
                self.position
            )));
        }
        let mut out = ComplexMatrix::identity(1);
        let mut leg = 0;
        while leg < legs {
            if leg == self.position {
                out = out.kron(&self.base);
                leg += self.base_legs();
            } else {
                out = out.kron(&self.m);
                leg += 1;
            }
        }
        Ok(out)
    }

    fn checked_operator(&self, legs: usize) -> Result<ComplexMatrix> {
        let op = self.operator(legs)?;
        let comm = self.commutant_residual();
        if comm > LIFT_TOL {
            return Err(Error::Precondition { what: "base does not commute with M⊗…⊗M".into(), residual: comm });
        }
        let base = self.base_residual()?;
        if base > LIFT_TOL {
            return Err(Error::Precondition { what: "base does not solve its relation".into(), residual: base });
        }
        Ok(op)
    }
}

/// The 16×16 operator; fails if the commutant or base relation fails.
pub fn lift_4simplex(spec: &LiftSpec) -> Result<ComplexMatrix> {
    spec.checked_operator(4)
}

/// The 32×32 operator; fails if the commutant or base relation fails.
pub fn lift_5simplex(spec: &LiftSpec) -> Result<ComplexMatrix> {
    spec.checked_operator(5)
}

/// Outcome of lifting and checking a spec against the next simplex relation.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftReport {
    pub pattern: String,
    pub commutant: f64,
    pub base: f64,
    pub simplex: f64,
    /// `Some((probes, seed))` when the check was matrix-free.
    pub probes: Option<(usize, u64)>,
}

/// Commutant and base residuals are reported before the lift is checked;
/// a failing precondition still yields a report with the simplex residual
/// of the unchecked operator.
pub fn verify_lift_4(spec: &LiftSpec) -> Result<LiftReport> {
    let op = spec.operator(4)?;
    Ok(LiftReport {
        pattern: spec.pattern(4),
        commutant: spec.commutant_residual(),
        base: spec.base_residual()?,
        simplex: simplex::four_simplex(&op)?,
        probes: None,
    })
}

pub fn verify_lift_5(spec: &LiftSpec, probes: usize, seed: u64) -> Result<LiftReport> {
    let op = spec.operator(5)?;
    Ok(LiftReport {
        pattern: spec.pattern(5),
        commutant: spec.commutant_residual(),
        base: spec.base_residual()?,
        simplex: simplex::five_simplex(&op, probes, seed)?,
        probes: Some((probes, seed)),
    })
}

/// Commutant residuals `‖[T, M⊗M⊗M]‖` for `M ∈ {𝟙, X, Y, Z}`.
pub fn tetra_commutant_candidates(t: &ComplexMatrix) -> Result<Vec<(&'static str, f64)>> {
    if t.rows() != 8 || !t.is_square() {
        return Err(Error::DimensionMismatch("tetrahedron base must be 8x8".into()));
    }
    let candidates = [("I", pauli::identity2()), ("X", pauli::x()), ("Y", pauli::y()), ("Z", pauli::z())];
    Ok(candidates
        .into_iter()
        .map(|(name, m)| {
            let mmm = m.kron(&m).kron(&m);
            (name, residual(&(t * &mmm), &(&mmm * t)))
        })
        .collect())
}

/// Anti-4-simplex residual: the 10-site relation with an overall `−1`.
pub fn anti_4simplex(r: &ComplexMatrix) -> Result<f64> {
    simplex::anti_four_simplex(r)
}

/// `Σ cₜ · wordₜ` where each word is a string over `A`, `B`, `C`, read as a
/// Kronecker product from the first leg.
pub fn abc_word(terms: &[(C64, &str)], t: &CliffordTriple) -> Result<ComplexMatrix> {
    let len = terms.first().map(|(_, w)| w.chars().count()).ok_or_else(|| Error::Domain("empty word sum".into()))?;
    let mut out = ComplexMatrix::zeros(1 << len, 1 << len);
    for &(coeff, w) in terms {
        if w.chars().count() != len {
            return Err(Error::Domain(format!("word `{w}` does not have length {len}")));
        }
        let mut op = ComplexMatrix::identity(1);
        for ch in w.chars() {
            op = op.kron(match ch {
                'A' => &t.a,
                'B' => &t.b,
                'C' => &t.c,
                other => return Err(Error::Domain(format!("letter `{other}` is not one of A, B, C"))),
            });
        }
        out = out + op.scale(coeff);
    }
    Ok(out)
}

/// Two-word tetrahedron operators `αw₁ + βw₂` and the relation each solves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignedWord {
    /// `αACA + βBCB`; `R R R R = R R⁽⁻⁾ R⁽⁻⁾ R`.
    AcaBcb,
    /// `αABC + βBAC`; anti-tetrahedron.
    AbcBac,
    /// `αACB + βBCA`; `R R R R = −R R⁽⁻⁾ R⁽⁻⁾ R`.
    AcbBca,
    /// `αCAB + βCBA`; anti-tetrahedron.
    CabCba,
}

impl SignedWord {
    pub const ALL: [SignedWord; 4] = [SignedWord::AcaBcb, SignedWord::AbcBac, SignedWord::AcbBca, SignedWord::CabCba];

    pub fn words(self) -> (&'static str, &'static str) {
        match self {
            SignedWord::AcaBcb => ("ACA", "BCB"),
            SignedWord::AbcBac => ("ABC", "BAC"),
            SignedWord::AcbBca => ("ACB", "BCA"),
            SignedWord::CabCba => ("CAB", "CBA"),
        }
    }

    pub fn name(self) -> String {
        let (u, v) = self.words();
        format!("{u}+{v}")
    }

    /// Overall factor on the right-hand side.
    pub fn rhs_scale(self) -> C64 {
        match self {
            SignedWord::AcaBcb => C64::new(1.0, 0.0),
            _ => C64::new(-1.0, 0.0),
        }
    }

    /// Whether the middle two right-hand factors carry `R⁽⁻⁾ = αw₁ − βw₂`.
    pub fn uses_minus(self) -> bool {
        matches!(self, SignedWord::AcaBcb | SignedWord::AcbBca)
    }

    /// `(R, R⁽⁻⁾)`; `R⁽⁻⁾ = R` for the variants that do not use it.
    pub fn operators(self, alpha: C64, beta: C64, t: &CliffordTriple) -> Result<(ComplexMatrix, ComplexMatrix)> {
        let (u, v) = self.words();
        let r = abc_word(&[(alpha, u), (beta, v)], t)?;
        let r_minus = if self.uses_minus() { abc_word(&[(alpha, u), (-beta, v)], t)? } else { r.clone() };
        Ok((r, r_minus))
    }

    pub fn residual(self, alpha: C64, beta: C64, t: &CliffordTriple) -> Result<f64> {
        let (r, r_minus) = self.operators(alpha, beta, t)?;
        simplex::signed_word_tetra(&r, &r_minus, self.rhs_scale())
    }
}

/// `αAACC + βBBCC` (`C` last) or `αCCAA + βCCBB` (`C` first).
pub fn cc_four_simplex(alpha: C64, beta: C64, t: &CliffordTriple, c_first: bool) -> Result<ComplexMatrix> {
    let words = if c_first { ("CCAA", "CCBB") } else { ("AACC", "BBCC") };
    abc_word(&[(alpha, words.0), (beta, words.1)], t)
}

/// `αAAAC + βBBBC`, an anti-4-simplex operator.
pub fn anti_four_simplex_word(alpha: C64, beta: C64, t: &CliffordTriple) -> Result<ComplexMatrix> {
    abc_word(&[(alpha, "AAAC"), (beta, "BBBC")], t)
}

/// `αAAAAC + βBBBBC`, a 5-simplex operator.
pub fn five_simplex_word(alpha: C64, beta: C64, t: &CliffordTriple) -> Result<ComplexMatrix> {
    abc_word(&[(alpha, "AAAAC"), (beta, "BBBBC")], t)
}

/// The 5-simplex relation checked matrix-free with the default probe count.
pub fn five_simplex_check(r: &ComplexMatrix, seed: u64) -> Result<f64> {
    SimplexRelation::five_simplex().check(&[r], CheckMode::matrix_free(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{clifford_tetra_xz, CliffordCoeffs, Variant};
    use crate::hietarinta::{build_yb, vertex_form, HClass};
    use crate::random;
    use crate::tensalg::c64;
    use crate::tensalg::pauli::{identity2, swap, x, y, z};

    fn h31_vertex(seed: u64) -> ComplexMatrix {
        let mut r = random::rng(seed, 0);
        let k = random::phase(&mut r);
        vertex_form(&build_yb(&HClass::h31(k, random::phase(&mut r), random::phase(&mut r), random::phase(&mut r))))
    }

    #[test]
    fn trivial_lifts() {
        let spec = LiftSpec::new(swap(), identity2(), 0).unwrap();
        let r = lift_4simplex(&spec).unwrap();
        assert_eq!(simplex::four_simplex(&r).unwrap(), 0.0);
        let r = lift_5simplex(&spec).unwrap();
        assert!(simplex::five_simplex(&r, 20, 1).unwrap() < 1e-14);
    }

    #[test]
    fn y_lifts_in_every_placement() {
        let y = h31_vertex(4);
        for pos in 0..3 {
            let spec = LiftSpec::new(y.clone(), z(), pos).unwrap();
            let rep = verify_lift_4(&spec).unwrap();
            assert!(rep.commutant < 1e-14 && rep.base < 1e-12, "{rep:?}");
            assert!(rep.simplex <= 1e-10, "{} {}", rep.pattern, rep.simplex);
        }
        assert_eq!(LiftSpec::new(y.clone(), z(), 1).unwrap().pattern(4), "MYM");
        for pos in 0..4 {
            let spec = LiftSpec::new(y.clone(), z(), pos).unwrap();
            let rep = verify_lift_5(&spec, 20, 9).unwrap();
            assert!(rep.simplex <= 1e-8, "{} {}", rep.pattern, rep.simplex);
            assert_eq!(rep.probes, Some((20, 9)));
        }
    }

    #[test]
    fn commutant_violation_is_rejected() {
        let spec = LiftSpec::new(h31_vertex(5), x(), 0).unwrap();
        assert!(spec.commutant_residual() > 0.1);
        assert!(matches!(lift_4simplex(&spec), Err(Error::Precondition { .. })));
        assert!(verify_lift_4(&spec).unwrap().simplex > 1e-6);
    }

    #[test]
    fn tetra_base_lifts_with_commuting_pauli() {
        let c = CliffordCoeffs::real([0.5; 4], Variant::BbbAab);
        let t = clifford_tetra_xz(&c);
        let cands = tetra_commutant_candidates(&t).unwrap();
        let ok: Vec<&str> = cands.iter().filter(|(_, r)| *r <= LIFT_TOL).map(|(n, _)| *n).collect();
        assert_eq!(ok, ["I", "Z"]);
        let bad = LiftSpec::new(t.clone(), y(), 0).unwrap();
        assert!(bad.commutant_residual() > 0.1);
        let spec = LiftSpec::new(t.clone(), z(), 0).unwrap();
        assert_eq!(spec.pattern(4), "TM");
        assert!(simplex::four_simplex(&lift_4simplex(&spec).unwrap()).unwrap() <= 1e-10);
        assert!(simplex::five_simplex(&lift_5simplex(&spec).unwrap(), 20, 3).unwrap() <= 1e-8);
    }

    #[test]
    fn abc_word_parses_letters() {
        let t = CliffordTriple::pauli();
        let w = abc_word(&[(c64(1., 0.), "AC")], &t).unwrap();
        assert!(residual(&w, &x().kron(&y())) == 0.0);
        assert!(abc_word(&[(c64(1., 0.), "AD")], &t).is_err());
        assert!(abc_word(&[(c64(1., 0.), "A"), (c64(1., 0.), "AB")], &t).is_err());
        assert!(abc_word(&[], &t).is_err());
    }

    #[test]
    fn signed_words_solve_their_relations() {
        let t = CliffordTriple::pauli();
        let mut r = random::rng(21, 0);
        for _ in 0..5 {
            let (a, b) = (random::gaussian(&mut r), random::gaussian(&mut r));
            for w in SignedWord::ALL {
                assert!(w.residual(a, b, &t).unwrap() <= 1e-12, "{}", w.name());
            }
        }
    }

    #[test]
    fn signed_word_without_minus_factor_fails() {
        let t = CliffordTriple::pauli();
        let (a, b) = (c64(0.8, 0.1), c64(-0.3, 0.7));
        let (r, _) = SignedWord::AcaBcb.operators(a, b, &t).unwrap();
        assert!(simplex::tetra_vertex(&r).unwrap() > 1e-3);
    }

    #[test]
    fn higher_words() {
        let t = CliffordTriple::pauli();
        let (a, b) = (c64(0.6, -0.2), c64(0.1, 0.9));
        for c_first in [false, true] {
            let r = cc_four_simplex(a, b, &t, c_first).unwrap();
            assert!(simplex::four_simplex(&r).unwrap() <= 1e-10);
        }
        let r = anti_four_simplex_word(c64(1., 0.), c64(1., 0.), &t).unwrap();
        assert!(anti_4simplex(&r).unwrap() <= 1e-10);
        assert!(anti_4simplex(&ComplexMatrix::identity(16)).unwrap() > 1.0);
        let r = five_simplex_word(c64(1., 0.), c64(1., 0.), &t).unwrap();
        assert!(five_simplex_check(&r, 7).unwrap() <= 1e-8);
    }

    #[test]
    fn anti_residual_is_phase_invariant() {
        let t = CliffordTriple::pauli();
        let r = anti_four_simplex_word(c64(0.7, 0.2), c64(-0.4, 1.1), &t).unwrap();
        let base = anti_4simplex(&r).unwrap();
        let mut rng = random::rng(8, 0);
        for _ in 0..10 {
            let ph = random::phase(&mut rng);
            assert!((anti_4simplex(&r.scale(ph)).unwrap() - base).abs() <= 1e-12 * base.max(1.0));
        }
    }
}
