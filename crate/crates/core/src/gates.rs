//! Quantum gates realised as products of tetrahedron operators on a
//! three-qubit register.
//!
//! Every factor is an 8×8 operator `R_{ijk}` placed on the register sites
//! `(i, j, k)`. A recipe's product is `F₁·F₂·…·Fₙ`.

use std::f64::consts::FRAC_PI_2;

use crate::simplex::tetra_vertex;
use crate::tensalg::{c64, pauli, residual, ComplexMatrix, EmbeddedOperator, C64};
use crate::unitary::certify;
use crate::{Error, Result};

/// Tolerance for recipe verification.
pub const GATE_TOL: f64 = 1e-10;

/// One tetrahedron factor of a recipe.
#[derive(Clone, Debug)]
pub struct GateFactor {
    pub label: String,
    embedded: EmbeddedOperator,
}

impl GateFactor {
    pub fn new(label: impl Into<String>, local: ComplexMatrix, sites: [usize; 3]) -> Result<Self> {
        Ok(Self { label: label.into(), embedded: EmbeddedOperator::new(local, &sites, 3)? })
    }

    /// The operator `R_{ijk}` in its own leg order.
    pub fn local(&self) -> &ComplexMatrix {
        self.embedded.op()
    }

    pub fn embedded(&self) -> &EmbeddedOperator {
        &self.embedded
    }

    /// The factor as an operator on the register.
    pub fn register_matrix(&self) -> ComplexMatrix {
        self.embedded.embed().expect("three sites are below the dense cap")
    }
}

#[derive(Clone, Debug)]
pub struct GateRecipe {
    pub name: String,
    pub sites: [usize; 3],
    pub factors: Vec<GateFactor>,
    /// Canonical gate on the register.
    pub target: ComplexMatrix,
}

/// Per-factor and product checks of a recipe.
#[derive(Clone, Debug, PartialEq)]
pub struct GateReport {
    pub factor_residuals: Vec<f64>,
    pub factor_unitary: Vec<bool>,
    pub product_residual: f64,
}

impl GateReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.product_residual <= tol && self.factor_residuals.iter().all(|&r| r <= tol) && self.factor_unitary.iter().all(|&u| u)
    }
}

/// The ordered product of the factors; `𝟙₈` for an empty recipe.
pub fn compose(recipe: &GateRecipe) -> Result<ComplexMatrix> {
    recipe.factors.iter().try_fold(ComplexMatrix::identity(8), |acc, f| {
        let m = f.register_matrix();
        acc.try_matmul(&m)
    })
}

pub fn verify(recipe: &GateRecipe) -> Result<GateReport> {
    let mut factor_residuals = Vec::with_capacity(recipe.factors.len());
    let mut factor_unitary = Vec::with_capacity(recipe.factors.len());
    for f in &recipe.factors {
        factor_residuals.push(tetra_vertex(f.local())?);
        factor_unitary.push(certify(f.local(), GATE_TOL)?.is_unitary);
    }
    let product_residual = residual(&compose(recipe)?, &recipe.target);
    Ok(GateReport { factor_residuals, factor_unitary, product_residual })
}

fn on_leg(u: &ComplexMatrix, leg: usize) -> ComplexMatrix {
    let i = pauli::identity2();
    let mut legs = [&i, &i, &i];
    legs[leg - 1] = u;
    ComplexMatrix::kron_all(legs)
}

/// `𝟙 − c·(a ⊗ b ⊗ d)`.
fn one_minus(c: C64, a: &ComplexMatrix, b: &ComplexMatrix, d: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::identity(8) - a.kron(b).kron(d).scale(c)
}

fn register_target(local: ComplexMatrix, sites: [usize; 3]) -> Result<ComplexMatrix> {
    EmbeddedOperator::new(local, &sites, 3)?.embed()
}

/// `𝓖(φ, ψ) = diag(e^{i(φ+ψ)}, e^{i(ψ−φ+π)})`.
pub fn g_phase(phi: f64, psi: f64) -> ComplexMatrix {
    ComplexMatrix::diag(&[C64::from_polar(1., phi + psi), C64::from_polar(1., psi - phi + std::f64::consts::PI)])
}

/// `U_{φ,ψ} = e^{iψ}(cos φ, i sin φ; i sin φ, cos φ)`.
pub fn u_phi_psi(phi: f64, psi: f64) -> ComplexMatrix {
    let (c, s) = (phi.cos(), phi.sin());
    ComplexMatrix::from_rows([[c64(c, 0.), c64(0., s)], [c64(0., s), c64(c, 0.)]]).scale(C64::from_polar(1., psi))
}

/// `diag(𝟙, U)` on `n` controls plus one target.
fn controlled(u: &ComplexMatrix, controls: u32) -> ComplexMatrix {
    let d = 2usize << controls;
    let mut m = ComplexMatrix::identity(d);
    for r in 0..2 {
        for c in 0..2 {
            m[(d - 2 + r, d - 2 + c)] = u[(r, c)];
        }
    }
    m
}

/// Canonical targets in local leg order.
pub mod targets {
    use super::*;

    pub fn cz() -> ComplexMatrix {
        ComplexMatrix::diag(&[1., 1., 1., -1.].map(|v| c64(v, 0.)))
    }

    pub fn cnot() -> ComplexMatrix {
        ComplexMatrix::from_real_rows([[1., 0., 0., 0.], [0., 1., 0., 0.], [0., 0., 0., 1.], [0., 0., 1., 0.]])
    }

    pub fn iswap() -> ComplexMatrix {
        let (o, l, i) = (c64(0., 0.), c64(1., 0.), c64(0., 1.));
        ComplexMatrix::from_rows([[l, o, o, o], [o, o, i, o], [o, i, o, o], [o, o, o, l]])
    }

    pub fn ccz() -> ComplexMatrix {
        let mut d = [c64(1., 0.); 8];
        d[7] = c64(-1., 0.);
        ComplexMatrix::diag(&d)
    }

    pub fn toffoli() -> ComplexMatrix {
        ComplexMatrix::from_fn(8, 8, |r, c| {
            let image = if c >= 6 { c ^ 1 } else { c };
            c64(f64::from(u8::from(r == image)), 0.)
        })
    }

    /// Controlled swap of legs 2 and 3 on leg 1.
    pub fn fredkin() -> ComplexMatrix {
        ComplexMatrix::from_fn(8, 8, |r, c| {
            let image = if c == 5 || c == 6 { 11 - c } else { c };
            c64(f64::from(u8::from(r == image)), 0.)
        })
    }

    /// Toffoli with a `−1` on `|101⟩`.
    pub fn margolus() -> ComplexMatrix {
        let mut m = toffoli();
        m[(5, 5)] = c64(-1., 0.);
        m
    }

    /// `diag(𝟙₆, (i cos λ, sin λ; sin λ, i cos λ))`.
    pub fn deutsch(lambda: f64) -> ComplexMatrix {
        let (c, s) = (lambda.cos(), lambda.sin());
        let block = ComplexMatrix::from_rows([[c64(0., c), c64(s, 0.)], [c64(s, 0.), c64(0., c)]]);
        super::controlled(&block, 2)
    }
}

/// `R = 𝟙 − 2Γ⁻` with `Γ⁻ = (𝟙 − H)/2`, i.e. a Hadamard on `leg`.
fn hadamard_factor(leg: usize, sites: [usize; 3]) -> Result<GateFactor> {
    let gamma = (pauli::identity2() - pauli::hadamard()).scale_real(0.5);
    let r = ComplexMatrix::identity(8) - on_leg(&gamma, leg).scale_real(2.0);
    GateFactor::new(format!("H{}", leg_name(leg)), r, sites)
}

fn leg_name(leg: usize) -> char {
    ['i', 'j', 'k'][leg - 1]
}

fn ccz_factor(sites: [usize; 3]) -> Result<GateFactor> {
    let pm = pauli::proj_minus();
    GateFactor::new("CCZ", one_minus(c64(2., 0.), &pm, &pm, &pm), sites)
}

/// `U_i = λ₊𝟙 + (λ₋ − λ₊)Γ⁻` on leg `site` of the default sites.
pub fn single_qubit_gate(u: &ComplexMatrix, site: usize) -> Result<GateRecipe> {
    single_qubit_gate_on(u, site, [1, 2, 3])
}

pub fn single_qubit_gate_on(u: &ComplexMatrix, site: usize, sites: [usize; 3]) -> Result<GateRecipe> {
    if u.rows() != 2 || u.cols() != 2 {
        return Err(Error::DimensionMismatch("single-qubit gate must be 2x2".into()));
    }
    if !(1..=3).contains(&site) {
        return Err(Error::InvalidSites);
    }
    let rep = certify(u, GATE_TOL)?;
    if !rep.is_unitary {
        return Err(Error::NotUnitary(rep.residual_rrdag.max(rep.eigen_moduli_max_dev)));
    }
    let ev = u.eigenvalues()?;
    let (lp, lm) = (ev[0], ev[1]);
    let i2 = pauli::identity2();
    let local = if (lp - lm).norm() <= 1e-12 {
        i2.scale((lp + lm) * 0.5)
    } else {
        let gamma_minus = (u - &i2.scale(lp)).scale((lm - lp).inv());
        i2.scale(lp) + gamma_minus.scale(lm - lp)
    };
    let r = on_leg(&local, site);
    let target = register_target(on_leg(u, site), sites)?;
    Ok(GateRecipe { name: "single".into(), sites, factors: vec![GateFactor::new("U", r, sites)?], target })
}

pub fn cz() -> Result<GateRecipe> {
    cz_on([1, 2, 3])
}

pub fn cz_on(sites: [usize; 3]) -> Result<GateRecipe> {
    let pm = pauli::proj_minus();
    let f = GateFactor::new("CZ", one_minus(c64(2., 0.), &pm, &pm, &pauli::identity2()), sites)?;
    Ok(GateRecipe { name: "cz".into(), sites, factors: vec![f], target: register_target(targets::cz().kron(&pauli::identity2()), sites)? })
}

pub fn cnot() -> Result<GateRecipe> {
    cnot_on([1, 2, 3])
}

pub fn cnot_on(sites: [usize; 3]) -> Result<GateRecipe> {
    let h = hadamard_factor(2, sites)?;
    let cz = cz_on(sites)?.factors.remove(0);
    Ok(GateRecipe {
        name: "cnot".into(),
        sites,
        factors: vec![h.clone(), cz, h],
        target: register_target(targets::cnot().kron(&pauli::identity2()), sites)?,
    })
}

/// `H_j·[𝟙 − ½(𝟙−Z)⊗(𝟙−𝓖(φ,ψ)Z)]·H_j`, a controlled `U_{φ,ψ}`.
pub fn controlled_u(phi: f64, psi: f64) -> Result<GateRecipe> {
    controlled_u_on(phi, psi, [1, 2, 3])
}

pub fn controlled_u_on(phi: f64, psi: f64, sites: [usize; 3]) -> Result<GateRecipe> {
    let i2 = pauli::identity2();
    let a = &i2 - &pauli::z();
    let b = &i2 - &(&g_phase(phi, psi) * &pauli::z());
    let core = one_minus(c64(0.5, 0.), &a, &b, &i2);
    let h = hadamard_factor(2, sites)?;
    Ok(GateRecipe {
        name: "controlled-u".into(),
        sites,
        factors: vec![h.clone(), GateFactor::new("R(phi,psi)", core, sites)?, h],
        target: register_target(controlled(&u_phi_psi(phi, psi), 1).kron(&i2), sites)?,
    })
}

pub fn swap() -> Result<GateRecipe> {
    let sites = [1, 2, 3];
    let p = pauli::swap().kron(&pauli::identity2());
    Ok(GateRecipe { name: "swap".into(), sites, factors: vec![GateFactor::new("P", p.clone(), sites)?], target: p })
}

/// `P_{ij}·[𝟙 + (−1+i)Π⁻ᵢ + (−1+i)Π⁻ⱼ + (2−2i)Π⁻ᵢΠ⁻ⱼ]`.
pub fn iswap() -> Result<GateRecipe> {
    let sites = [1, 2, 3];
    let (i2, pm) = (pauli::identity2(), pauli::proj_minus());
    let w = c64(-1., 1.);
    let phase = i2.kron(&i2) + pm.kron(&i2).scale(w) + i2.kron(&pm).scale(w) + pm.kron(&pm).scale(c64(2., -2.));
    Ok(GateRecipe {
        name: "iswap".into(),
        sites,
        factors: vec![
            GateFactor::new("P", pauli::swap().kron(&i2), sites)?,
            GateFactor::new("phase", phase.kron(&i2), sites)?,
        ],
        target: targets::iswap().kron(&i2),
    })
}

pub fn ccz() -> Result<GateRecipe> {
    let sites = [1, 2, 3];
    Ok(GateRecipe { name: "ccz".into(), sites, factors: vec![ccz_factor(sites)?], target: targets::ccz() })
}

pub fn toffoli() -> Result<GateRecipe> {
    toffoli_on([1, 2, 3])
}

pub fn toffoli_on(sites: [usize; 3]) -> Result<GateRecipe> {
    let h = hadamard_factor(3, sites)?;
    Ok(GateRecipe {
        name: "toffoli".into(),
        sites,
        factors: vec![h.clone(), ccz_factor(sites)?, h],
        target: register_target(targets::toffoli(), sites)?,
    })
}

/// `H_k·[𝟙 − Π⁻ᵢΠ⁻ⱼ(𝟙 − 𝓖(φ,ψ)ₖZₖ)]·H_k`, a doubly controlled `U_{φ,ψ}`.
pub fn controlled_controlled_u(phi: f64, psi: f64) -> Result<GateRecipe> {
    let sites = [1, 2, 3];
    let pm = pauli::proj_minus();
    let c = &pauli::identity2() - &(&g_phase(phi, psi) * &pauli::z());
    let h = hadamard_factor(3, sites)?;
    Ok(GateRecipe {
        name: "cc-u".into(),
        sites,
        factors: vec![h.clone(), GateFactor::new("T(phi,psi)", one_minus(c64(1., 0.), &pm, &pm, &c), sites)?, h],
        target: controlled(&u_phi_psi(phi, psi), 2),
    })
}

/// The doubly controlled `U_{−λ, π/2}`.
pub fn deutsch(lambda: f64) -> Result<GateRecipe> {
    let mut r = controlled_controlled_u(-lambda, FRAC_PI_2)?;
    r.name = "deutsch".into();
    r.target = targets::deutsch(lambda);
    Ok(r)
}

/// `[𝟙 − 2Π⁻ᵢΠ⁺ⱼΠ⁻ₖ]·T_{ijk}`.
pub fn margolus() -> Result<GateRecipe> {
    let sites = [1, 2, 3];
    let (pm, pp) = (pauli::proj_minus(), pauli::proj_plus());
    let mut factors = vec![GateFactor::new("phase", one_minus(c64(2., 0.), &pm, &pp, &pm), sites)?];
    factors.extend(toffoli_on(sites)?.factors);
    Ok(GateRecipe { name: "margolus".into(), sites, factors, target: targets::margolus() })
}

/// `H_j·CCZ·H_j · T_{ijk} · H_j·CCZ·H_j`.
pub fn fredkin() -> Result<GateRecipe> {
    let sites = [1, 2, 3];
    let hj = hadamard_factor(2, sites)?;
    let mut factors = vec![hj.clone(), ccz_factor(sites)?, hj.clone()];
    factors.extend(toffoli_on(sites)?.factors);
    factors.extend([hj.clone(), ccz_factor(sites)?, hj]);
    Ok(GateRecipe { name: "fredkin".into(), sites, factors, target: targets::fredkin() })
}

/// Names accepted by [`by_name`].
pub const GATE_NAMES: &[&str] =
    &["cz", "cnot", "controlled-u", "swap", "iswap", "ccz", "toffoli", "deutsch", "margolus", "fredkin"];

/// Looks a recipe up by name; `params` supplies `phi`, `psi` or `lambda`.
pub fn by_name(name: &str, params: &[(String, f64)]) -> Result<GateRecipe> {
    let get = |k: &str, default: f64| params.iter().find(|(n, _)| n == k).map_or(default, |(_, v)| *v);
    let known: &[&str] = match name {
        "controlled-u" | "controlled_u" | "cu" => &["phi", "psi"],
        "deutsch" => &["lambda"],
        _ => &[],
    };
    if let Some((bad, _)) = params.iter().find(|(n, _)| !known.contains(&n.as_str())) {
        return Err(Error::Domain(format!("gate {name} does not take parameter `{bad}`")));
    }
    match name {
        "cz" => cz(),
        "cnot" => cnot(),
        "controlled-u" | "controlled_u" | "cu" => controlled_u(get("phi", FRAC_PI_2), get("psi", -FRAC_PI_2)),
        "swap" => swap(),
        "iswap" => iswap(),
        "ccz" => ccz(),
        "toffoli" => toffoli(),
        "deutsch" => deutsch(get("lambda", 0.0)),
        "margolus" => margolus(),
        "fredkin" => fredkin(),
        _ => Err(Error::Domain(format!("unknown gate `{name}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;

    fn basis(i: usize) -> Vec<C64> {
        (0..8).map(|k| c64(f64::from(u8::from(k == i)), 0.)).collect()
    }

    fn assert_recipe(r: &GateRecipe, tol: f64) {
        let rep = verify(r).unwrap();
        assert!(rep.passes(tol), "{}: {rep:?}", r.name);
    }

    #[test]
    fn every_named_recipe_verifies() {
        for name in GATE_NAMES {
            assert_recipe(&by_name(name, &[]).unwrap(), 1e-12);
        }
    }

    #[test]
    fn single_qubit_gates() {
        let r = single_qubit_gate(&pauli::x(), 1).unwrap();
        assert_eq!(r.factors[0].local(), &on_leg(&pauli::x(), 1));
        assert_recipe(&r, 1e-12);
        let r = single_qubit_gate(&pauli::identity2(), 2).unwrap();
        assert_eq!(compose(&r).unwrap(), ComplexMatrix::identity(8));
        let r = single_qubit_gate(&pauli::hadamard(), 1).unwrap();
        assert!(residual(&compose(&r).unwrap(), &pauli::hadamard().kron(&ComplexMatrix::identity(4))) <= 1e-12);
        assert!(matches!(single_qubit_gate(&pauli::x().scale_real(2.), 1), Err(Error::NotUnitary(_))));

        let mut rng = random::rng(31, 0);
        for site in 1..=3 {
            let u = random::unitary(&mut rng, 2);
            assert_recipe(&single_qubit_gate(&u, site).unwrap(), 1e-10);
        }
    }

    #[test]
    fn cz_and_toffoli_actions() {
        let out = compose(&cz().unwrap()).unwrap().apply(&basis(0b110)).unwrap();
        assert_eq!(out[0b110], c64(-1., 0.));
        let out = compose(&toffoli().unwrap()).unwrap().apply(&basis(0b110)).unwrap();
        assert!((out[0b111] - 1.0).norm() < 1e-12);
        let out = compose(&fredkin().unwrap()).unwrap().apply(&basis(0b101)).unwrap();
        assert!((out[0b110] - 1.0).norm() < 1e-12);
        let out = compose(&swap().unwrap()).unwrap().apply(&basis(0b011)).unwrap();
        assert_eq!(out[0b101], c64(1., 0.));
        let out = compose(&iswap().unwrap()).unwrap().apply(&basis(0b010)).unwrap();
        assert!((out[0b100] - c64(0., 1.)).norm() < 1e-12);
    }

    #[test]
    fn controlled_u_special_points() {
        let c = compose(&controlled_u(FRAC_PI_2, -FRAC_PI_2).unwrap()).unwrap();
        assert!(residual(&c, &compose(&cnot().unwrap()).unwrap()) <= 1e-12);
        let c = compose(&controlled_u(0., 0.).unwrap()).unwrap();
        assert!(c.identity_residual() <= 1e-12);
        let mut rng = random::rng(32, 0);
        for _ in 0..10 {
            let (phi, psi) = (rand::Rng::random_range(&mut rng, -3.0..3.0), rand::Rng::random_range(&mut rng, -3.0..3.0));
            assert_recipe(&controlled_u(phi, psi).unwrap(), 1e-12);
        }
    }

    #[test]
    fn deutsch_matches_doubly_controlled_formula() {
        for lambda in [0.0, 0.3, FRAC_PI_2, 2.0] {
            let d = compose(&deutsch(lambda).unwrap()).unwrap();
            assert!(residual(&d, &controlled(&u_phi_psi(-lambda, FRAC_PI_2), 2)) <= 1e-12);
            assert!(residual(&d, &targets::deutsch(lambda)) <= 1e-12);
        }
        let d = compose(&deutsch(0.0).unwrap()).unwrap();
        assert!((d[(6, 6)] - c64(0., 1.)).norm() < 1e-12 && d[(6, 7)].norm() < 1e-12);
    }

    #[test]
    fn margolus_differs_from_toffoli_by_one_phase() {
        let m = compose(&margolus().unwrap()).unwrap();
        let t = targets::toffoli();
        let mut flips = 0;
        for r in 0..8 {
            for c in 0..8 {
                assert!((m[(r, c)].norm() - t[(r, c)].norm()).abs() < 1e-12);
                if (m[(r, c)] + t[(r, c)]).norm() < 1e-12 && t[(r, c)].norm() > 0.5 {
                    flips += 1;
                    assert_eq!((r, c), (0b101, 0b101));
                }
            }
        }
        assert_eq!(flips, 1);
    }

    #[test]
    fn other_site_assignments() {
        for sites in [[2, 1, 3], [3, 1, 2], [1, 3, 2]] {
            assert_recipe(&cnot_on(sites).unwrap(), 1e-12);
            assert_recipe(&toffoli_on(sites).unwrap(), 1e-12);
        }
    }

    #[test]
    fn empty_and_corrupted() {
        let mut r = cnot().unwrap();
        r.factors.clear();
        assert_eq!(compose(&r).unwrap(), ComplexMatrix::identity(8));

        let mut r = cnot().unwrap();
        let mut rng = random::rng(33, 0);
        r.factors[1] = GateFactor::new("bad", random::unitary(&mut rng, 8), [1, 2, 3]).unwrap();
        let rep = verify(&r).unwrap();
        assert!(rep.factor_residuals[1] > 1e-3);
        assert!(!rep.passes(1e-10));
    }

    #[test]
    fn unknown_gate_or_parameter() {
        assert!(by_name("nope", &[]).is_err());
        assert!(by_name("cnot", &[("phi".into(), 1.0)]).is_err());
        assert!(by_name("deutsch", &[("lambda".into(), 1.0)]).is_ok());
    }
}
