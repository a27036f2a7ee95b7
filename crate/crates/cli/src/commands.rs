use std::fs;
use std::path::{Path, PathBuf};

use tetragate::archive::{self, Report};
use tetragate::clifford::{
    case1_eigenvalues, clifford_tetra_xz, solve_constraints, CliffordCoeffs, Sign, SolverOptions, Variant,
};
use tetragate::gates::{self, GATE_TOL};
use tetragate::hietarinta::{unitary_family, FamilyRow, Placement, UnitaryFamilyPoint};
use tetragate::simplex::{tetra_edge, tetra_vertex, CheckMode, SimplexRelation, DEFAULT_PROBES};
use tetragate::tensalg::DENSE_CAP;
use tetragate::unitary::{certify, multiset_distance, spectrum};
use tetragate::{c64, ComplexMatrix, Error, C64, DEFAULT_TOL, MATRIX_FREE_TOL};

use crate::params::Params;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Failed(String),
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Failed(e.to_string())
    }
}

fn fmt_c(z: C64) -> String {
    // Values that round to zero print without a sign.
    let clean = |v: f64| if v.abs() < 5e-13 { 0.0 } else { v };
    format!("{:.12}{:+.12}i", clean(z.re), clean(z.im))
}

fn fmt_list(v: &[C64]) -> String {
    v.iter().map(|&z| fmt_c(z)).collect::<Vec<_>>().join(" ")
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn catalog_list(unitary_only: bool) -> Outcome {
    let records = if unitary_only { archive::unitary_catalog() } else { archive::catalog() };
    let blocks: Vec<String> = records.iter().map(ToString::to_string).collect();
    print!("{}", blocks.join("\n"));
    Ok(())
}

pub fn catalog_show(id: &str) -> Outcome {
    let rec = archive::catalog()
        .into_iter()
        .find(|r| r.family_id == id)
        .or_else(|| archive::catalog().into_iter().find(|r| r.aliases.iter().any(|a| a == id)))
        .ok_or_else(|| usage(format!("no catalog record `{id}`")))?;
    print!("{rec}");
    Ok(())
}

pub struct BuildArgs {
    pub family: String,
    pub params: String,
    pub placement: Option<String>,
    pub branch: Option<String>,
    pub aaa_bba: bool,
    pub out: Option<PathBuf>,
    pub report: Option<PathBuf>,
}

/// `row3-MxY` → `(3, Some(MxY))`.
fn parse_family(id: &str) -> Result<(u8, Option<Placement>), Failure> {
    let bad = || usage(format!("unknown family `{id}` (expected row1..row7, optionally with -YxM or -MxY)"));
    let rest = id.strip_prefix("row").ok_or_else(bad)?;
    let (num, placement) = match rest.split_once('-') {
        Some((n, p)) => (n, Some(Placement::parse(p).ok_or_else(bad)?)),
        None => (rest, None),
    };
    let row: u8 = num.parse().map_err(|_| bad())?;
    if !(1..=7).contains(&row) {
        return Err(bad());
    }
    Ok((row, placement))
}

fn finish_build(t: &ComplexMatrix, report: &Report, passes: bool, args: &BuildArgs) -> Outcome {
    print!("{report}");
    if let Some(path) = &args.out {
        archive::write_matrix(t, path)?;
    }
    if let Some(path) = &args.report {
        report.write(path)?;
    }
    if passes {
        Ok(())
    } else {
        Err(Failure::Failed("certification failed".into()))
    }
}

pub fn build(args: &BuildArgs) -> Outcome {
    let (row, id_placement) = parse_family(&args.family)?;
    let mut params = Params::parse(&args.params).map_err(usage)?;
    let placement = match (&args.placement, id_placement) {
        (Some(p), id) => {
            let p = Placement::parse(p).ok_or_else(|| usage(format!("unknown placement `{p}` (YxM or MxY)")))?;
            if id.is_some_and(|i| i != p) {
                return Err(usage("placement given twice with different values"));
            }
            Some(p)
        }
        (None, id) => id,
    };
    let branch = match &args.branch {
        Some(b) => {
            if !matches!(row, 5 | 6) {
                return Err(usage(format!("row{row} has no sign branch")));
            }
            Sign::parse(b).ok_or_else(|| usage(format!("unknown branch `{b}` (+ or -)")))?
        }
        None => Sign::Plus,
    };
    if row == 1 {
        if placement.is_some() {
            return Err(usage("row1 has no lift placement"));
        }
        return build_row1(&mut params, args);
    }
    if args.aaa_bba {
        return Err(usage("--variant applies to row1 only"));
    }
    let placement = placement.unwrap_or(Placement::YM);
    let one = c64(1., 0.);
    let family_row = match row {
        2 => FamilyRow::DiagonalPhases {
            p: params.complex("p", one).map_err(usage)?,
            q: params.complex("q", one).map_err(usage)?,
            r: params.complex("r", one).map_err(usage)?,
        },
        3 => FamilyRow::ScaledH02,
        4 => FamilyRow::AntiDiagonalZ {
            p: params.complex("p", one).map_err(usage)?,
            q: params.complex("q", one).map_err(usage)?,
        },
        5 => FamilyRow::AntiDiagonalPhases {
            theta_p: params.real("thetap", 0.0).map_err(usage)?,
            theta_q: params.real("thetaq", 0.0).map_err(usage)?,
            branch,
        },
        6 => FamilyRow::AntiDiagonalUnit { branch },
        _ => {
            let m = params.quad("m").map_err(usage)?.unwrap_or([one, c64(0., 0.), c64(0., 0.), one]);
            FamilyRow::Permutation { m: ComplexMatrix::from_rows([[m[0], m[1]], [m[2], m[3]]]) }
        }
    };
    let mut pt = UnitaryFamilyPoint::new(family_row, placement);
    if let Some(q) = params.quad("q").map_err(usage)? {
        pt.q = q;
    }
    pt.kappa = params.complex("kappa", one).map_err(usage)?;
    params.finish().map_err(usage)?;

    let outcome = match unitary_family(&pt) {
        Err(Error::Constraint(name)) => return Err(Failure::Failed(format!("{name} violated"))),
        other => other?,
    };
    let cert = &outcome.certificate;
    let mut report = Report::new();
    report.push("family", pt.row.id()).push("alias", pt.row.alias()).push("placement", placement.name());
    if let Some(b) = pt.row.branch() {
        report.push("branch", b.symbol());
    }
    report.push("q", fmt_list(&pt.q)).push("kappa", fmt_c(pt.kappa));
    for (name, r) in &cert.constraints {
        report.push(format!("constraint {name}"), format!("{r:.3e}"));
    }
    report
        .push("unitarity_residual", format!("{:.3e}", cert.unitarity.residual_rrdag))
        .push("eigen_moduli_max_dev", format!("{:.3e}", cert.unitarity.eigen_moduli_max_dev))
        .push("tetra_vertex", format!("{:.3e}", cert.tetra_vertex))
        .push("eigen_formula_distance", format!("{:.3e}", cert.eigen_distance))
        .push("eigenvalues", fmt_list(&cert.eigenvalues))
        .push("status", status(cert.passes()));
    finish_build(&outcome.t, &report, cert.passes(), args)
}

const CASE1_CONSTRAINTS: [&str; 4] = [
    "Re(a0 conj(a1)) = Re(a3 conj(a2))",
    "Re(a0 conj(a2)) = Re(a3 conj(a1))",
    "Re(a0 conj(a3)) = Re(a1 conj(a2))",
    "|a0|^2+|a1|^2+|a2|^2+|a3|^2 = 1",
];

fn case1_report(c: &CliffordCoeffs, report: &mut Report) -> Result<(ComplexMatrix, bool), Failure> {
    let t = clifford_tetra_xz(c);
    let unit = certify(&t, DEFAULT_TOL)?;
    let vertex = tetra_vertex(&t)?;
    let edge = tetra_edge(&t)?;
    let ev = spectrum(&t)?;
    let dist = multiset_distance(&ev, &case1_eigenvalues(c));
    for (name, r) in CASE1_CONSTRAINTS.iter().zip(c.constraint_residual()) {
        report.push(format!("constraint {name}"), format!("{r:.3e}"));
    }
    let passes = unit.is_unitary && vertex <= DEFAULT_TOL && edge <= DEFAULT_TOL && dist <= DEFAULT_TOL;
    report
        .push("unitarity_residual", format!("{:.3e}", unit.residual_rrdag))
        .push("eigen_moduli_max_dev", format!("{:.3e}", unit.eigen_moduli_max_dev))
        .push("tetra_vertex", format!("{vertex:.3e}"))
        .push("tetra_edge", format!("{edge:.3e}"))
        .push("eigen_formula_distance", format!("{dist:.3e}"))
        .push("eigenvalues", fmt_list(&ev))
        .push("status", status(passes));
    Ok((t, passes))
}

fn build_row1(params: &mut Params, args: &BuildArgs) -> Outcome {
    let half = c64(0.5, 0.);
    let mut alpha = [half; 4];
    for (k, a) in alpha.iter_mut().enumerate() {
        *a = params.complex(&format!("a{k}"), half).map_err(usage)?;
    }
    params.finish().map_err(usage)?;
    let variant = if args.aaa_bba { Variant::AaaBba } else { Variant::BbbAab };
    let c = CliffordCoeffs::new(alpha, variant);
    if let Some((name, _)) = CASE1_CONSTRAINTS.iter().zip(c.constraint_residual()).find(|(_, r)| r.is_nan() || *r > DEFAULT_TOL) {
        return Err(Failure::Failed(format!("{name} violated")));
    }
    let mut report = Report::new();
    report.push("family", "row1").push("variant", variant.name());
    for (k, a) in alpha.iter().enumerate() {
        report.push(format!("a{k}"), fmt_c(*a));
    }
    let (t, passes) = case1_report(&c, &mut report)?;
    finish_build(&t, &report, passes, args)
}

pub fn verify(relation: &str, input: &Path, probes: Option<usize>, seed: u64, tol: Option<f64>) -> Outcome {
    let rel = SimplexRelation::builtin(relation).ok_or_else(|| {
        usage(format!("unknown relation `{relation}` (one of {})", SimplexRelation::BUILTIN_NAMES.join(", ")))
    })?;
    let m = archive::read_matrix(input)?;
    let legs = rel.lhs[0].sites.len();
    if m.rows() != 1 << legs || m.cols() != 1 << legs {
        return Err(Failure::Failed(format!(
            "dimension mismatch: {relation} needs a {0}x{0} matrix, got {1}x{2}",
            1 << legs,
            m.rows(),
            m.cols()
        )));
    }
    let mode = match probes {
        Some(0) => return Err(usage("--probes must be positive")),
        Some(p) => CheckMode::MatrixFree { probes: p, seed },
        None if rel.dim() > DENSE_CAP => CheckMode::MatrixFree { probes: DEFAULT_PROBES, seed },
        None => CheckMode::Dense,
    };
    let tol = tol.unwrap_or(if mode == CheckMode::Dense { DEFAULT_TOL } else { MATRIX_FREE_TOL });
    let residual = rel.check(&[&m], mode)?;
    let ok = residual <= tol;
    let mut report = Report::new();
    report.push("relation", &rel.name).push("input", input.display());
    match mode {
        CheckMode::Dense => report.push("mode", "dense"),
        CheckMode::MatrixFree { probes, seed } => report.push("mode", "matrix-free").push("probes", probes).push("seed", seed),
    };
    report.push("residual", format!("{residual:.3e}")).push("tol", format!("{tol:.1e}")).push("status", status(ok));
    print!("{report}");
    if ok {
        Ok(())
    } else {
        Err(Failure::Failed(format!("residual {residual:.3e} exceeds {tol:.1e}")))
    }
}

pub fn gate(name: &str, params: &str, emit: Option<&Path>) -> Outcome {
    let mut p = Params::parse(params).map_err(usage)?;
    let values = p.all_real().map_err(usage)?;
    if !gates::GATE_NAMES.contains(&name) && !matches!(name, "controlled_u" | "cu") {
        return Err(usage(format!("unknown gate `{name}` (one of {})", gates::GATE_NAMES.join(", "))));
    }
    let recipe = gates::by_name(name, &values).map_err(|e| usage(e.to_string()))?;
    let rep = gates::verify(&recipe)?;
    let product = gates::compose(&recipe)?;
    let ok = rep.passes(GATE_TOL);
    let mut report = Report::new();
    report.push("gate", &recipe.name).push("sites", format!("{:?}", recipe.sites));
    for (k, v) in &values {
        report.push(format!("param {k}"), v);
    }
    report.push("factors", recipe.factors.len());
    for (k, f) in recipe.factors.iter().enumerate() {
        report.push(
            format!("factor {} {}", k + 1, f.label),
            format!(
                "sites {:?} tetra_vertex {:.3e} unitary {}",
                f.embedded().sites(),
                rep.factor_residuals[k],
                rep.factor_unitary[k]
            ),
        );
    }
    report.push("max_factor_residual", format!("{:.3e}", rep.factor_residuals.iter().fold(0.0f64, |a, &b| a.max(b))));
    report.push("product_residual", format!("{:.3e}", rep.product_residual));
    if recipe.name == "deutsch" {
        report.push("u_block", fmt_list(&[product[(6, 6)], product[(6, 7)], product[(7, 6)], product[(7, 7)]]));
    }
    report.push("status", status(ok));
    print!("{report}");
    if let Some(dir) = emit {
        fs::create_dir_all(dir).map_err(Error::from)?;
        archive::write_matrix(&product, dir.join("product.simplexmat"))?;
        archive::write_matrix(&recipe.target, dir.join("target.simplexmat"))?;
        for (k, f) in recipe.factors.iter().enumerate() {
            archive::write_matrix(f.local(), dir.join(format!("factor_{}.simplexmat", k + 1)))?;
        }
        report.write(dir.join("report.txt"))?;
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Failed(format!("{} recipe failed verification", recipe.name)))
    }
}

pub fn solve_case1(seed: u64, tol: f64, max_iter: usize, aaa_bba: bool, out: Option<&Path>) -> Outcome {
    if tol.is_nan() || tol <= 0.0 {
        return Err(usage("--tol must be positive"));
    }
    let variant = if aaa_bba { Variant::AaaBba } else { Variant::BbbAab };
    let sol = solve_constraints(seed, SolverOptions { max_iter, tol, variant })?;
    let mut report = Report::new();
    report.push("problem", "clifford-case1").push("seed", seed).push("variant", variant.name());
    for (k, a) in sol.coeffs.alpha.iter().enumerate() {
        report.push(format!("a{k}"), format!("{} (r {:.12} theta {:+.12})", fmt_c(*a), a.norm(), a.arg()));
    }
    report.push("iterations", sol.iterations).push("restarts", sol.restarts);
    let (t, _) = case1_report(&sol.coeffs, &mut report)?;
    print!("{report}");
    if let Some(path) = out {
        archive::write_matrix(&t, path)?;
    }
    Ok(())
}

pub fn export(dir: &Path, unitary_only: bool) -> Outcome {
    fs::create_dir_all(dir).map_err(Error::from)?;
    let records = if unitary_only { archive::unitary_catalog() } else { archive::catalog() };
    archive::write_manifest(&records, dir.join("catalog.manifest"))?;
    let mut written = 1;
    let one = c64(1., 0.);
    write_sample(dir, "row1", &clifford_tetra_xz(&CliffordCoeffs::real([0.5; 4], Variant::BbbAab)), &mut written)?;
    for rec in archive::unitary_catalog().iter().filter(|r| r.family_id != "row1") {
        let (row, placement) = parse_family(&rec.family_id)?;
        let fr = match row {
            2 => FamilyRow::DiagonalPhases { p: one, q: one, r: one },
            3 => FamilyRow::ScaledH02,
            4 => FamilyRow::AntiDiagonalZ { p: one, q: one },
            5 => FamilyRow::AntiDiagonalPhases { theta_p: 0.0, theta_q: 0.0, branch: Sign::Plus },
            6 => FamilyRow::AntiDiagonalUnit { branch: Sign::Plus },
            _ => FamilyRow::Permutation { m: ComplexMatrix::identity(2) },
        };
        let pt = UnitaryFamilyPoint::new(fr, placement.unwrap_or(Placement::YM));
        write_sample(dir, &rec.family_id, &unitary_family(&pt)?.t, &mut written)?;
    }
    let gate_dir = dir.join("gates");
    fs::create_dir_all(&gate_dir).map_err(Error::from)?;
    for name in gates::GATE_NAMES {
        let recipe = gates::by_name(name, &[])?;
        write_sample(&gate_dir, name, &gates::compose(&recipe)?, &mut written)?;
    }
    let mut report = Report::new();
    report.push("directory", dir.display()).push("records", records.len()).push("files", written);
    print!("{report}");
    Ok(())
}

fn write_sample(dir: &Path, name: &str, m: &ComplexMatrix, written: &mut usize) -> Outcome {
    archive::write_matrix(m, dir.join(format!("{name}.simplexmat")))?;
    *written += 1;
    Ok(())
}
