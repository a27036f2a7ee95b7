//! Matrix files, the family catalog and its manifest format, and plain-text
//! reports.
//!
//! A manifest is a sequence of blocks separated by blank lines. Each line of
//! a block is `key: value`; repeated keys (`alias`, `param`, `constraint`)
//! accumulate in order.

use std::collections::HashSet;
use std::fmt::{self, Write as _};
use std::fs;
use std::path::Path;

use crate::tensalg::{parse_simplexmat, to_simplexmat, ComplexMatrix};
use crate::{Error, Result};

pub fn write_matrix(m: &ComplexMatrix, path: impl AsRef<Path>) -> Result<()> {
    let text = to_simplexmat(m)?;
    fs::write(path, text)?;
    Ok(())
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<ComplexMatrix> {
    parse_simplexmat(&fs::read_to_string(path)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RecordKind {
    /// A lifted or Clifford family that is unitary on its whole domain.
    Unitary,
    /// A tetrahedron construction that is unitary only on part of its
    /// parameter space, or never.
    Construction,
    /// A 4- or 5-simplex operator, or a word solving a signed relation.
    Higher,
}

impl RecordKind {
    pub fn name(self) -> &'static str {
        match self {
            RecordKind::Unitary => "unitary",
            RecordKind::Construction => "construction",
            RecordKind::Higher => "higher",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "unitary" => Some(RecordKind::Unitary),
            "construction" => Some(RecordKind::Construction),
            "higher" => Some(RecordKind::Higher),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSpec {
    pub name: String,
    pub domain: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogRecord {
    pub family_id: String,
    pub kind: RecordKind,
    pub aliases: Vec<String>,
    /// `YxM`, `MxY`, or `-` when the construction has no lift placement.
    pub placement: String,
    pub params: Vec<ParamSpec>,
    pub constraints: Vec<String>,
    pub eigenvalues: String,
    /// Short description of how the operator is built.
    pub anchor: String,
}

impl CatalogRecord {
    fn lines(&self) -> Vec<(&'static str, String)> {
        let mut out = vec![("family_id", self.family_id.clone()), ("kind", self.kind.name().to_string())];
        out.extend(self.aliases.iter().map(|a| ("alias", a.clone())));
        out.push(("placement", self.placement.clone()));
        out.extend(self.params.iter().map(|p| ("param", format!("{} | {}", p.name, p.domain))));
        out.extend(self.constraints.iter().map(|c| ("constraint", c.clone())));
        out.push(("eigenvalues", self.eigenvalues.clone()));
        out.push(("anchor", self.anchor.clone()));
        out
    }
}

impl fmt::Display for CatalogRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.lines() {
            writeln!(f, "{k}: {v}")?;
        }
        Ok(())
    }
}

fn check_unique<'a>(ids: impl IntoIterator<Item = &'a str>) -> Result<()> {
    let mut seen = HashSet::new();
    for id in ids {
        if !seen.insert(id) {
            return Err(Error::DuplicateId(id.to_string()));
        }
    }
    Ok(())
}

pub fn manifest_to_string(records: &[CatalogRecord]) -> Result<String> {
    check_unique(records.iter().map(|r| r.family_id.as_str()))?;
    let mut out = String::new();
    for (i, r) in records.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for (k, v) in r.lines() {
            if v.contains('\n') || v.trim() != v || v.is_empty() {
                return Err(Error::Domain(format!("value of `{k}` in `{}` must be a non-empty trimmed single line", r.family_id)));
            }
            let _ = writeln!(out, "{k}: {v}");
        }
    }
    Ok(out)
}

pub fn parse_manifest(text: &str) -> Result<Vec<CatalogRecord>> {
    let mut records = Vec::new();
    let mut block: Vec<(usize, &str, &str)> = Vec::new();
    for (n, line) in text.lines().enumerate().chain(std::iter::once((usize::MAX, ""))) {
        if line.trim().is_empty() {
            if !block.is_empty() {
                records.push(parse_block(&block)?);
                block.clear();
            }
            continue;
        }
        let (k, v) = line
            .split_once(": ")
            .ok_or_else(|| Error::Parse(format!("line {}: expected `key: value`", n + 1)))?;
        block.push((n + 1, k, v));
    }
    check_unique(records.iter().map(|r: &CatalogRecord| r.family_id.as_str()))?;
    Ok(records)
}

fn parse_block(block: &[(usize, &str, &str)]) -> Result<CatalogRecord> {
    let (mut id, mut kind, mut placement, mut eigen, mut anchor) = (None, None, None, None, None);
    let (mut aliases, mut params, mut constraints) = (Vec::new(), Vec::new(), Vec::new());
    for &(n, k, v) in block {
        let once = |slot: &mut Option<String>| {
            if slot.replace(v.to_string()).is_some() {
                Err(Error::Parse(format!("line {n}: repeated key `{k}`")))
            } else {
                Ok(())
            }
        };
        match k {
            "family_id" => once(&mut id)?,
            "kind" => once(&mut kind)?,
            "placement" => once(&mut placement)?,
            "eigenvalues" => once(&mut eigen)?,
            "anchor" => once(&mut anchor)?,
            "alias" => aliases.push(v.to_string()),
            "constraint" => constraints.push(v.to_string()),
            "param" => {
                let (name, domain) =
                    v.split_once(" | ").ok_or_else(|| Error::Parse(format!("line {n}: expected `param: name | domain`")))?;
                params.push(ParamSpec { name: name.to_string(), domain: domain.to_string() });
            }
            _ => return Err(Error::Parse(format!("line {n}: unknown key `{k}`"))),
        }
    }
    let first = block[0].0;
    let need = |v: Option<String>, key: &str| v.ok_or_else(|| Error::Parse(format!("block at line {first}: missing `{key}`")));
    let kind_text = need(kind, "kind")?;
    Ok(CatalogRecord {
        family_id: need(id, "family_id")?,
        kind: RecordKind::parse(&kind_text).ok_or_else(|| Error::Parse(format!("unknown kind `{kind_text}`")))?,
        aliases,
        placement: need(placement, "placement")?,
        params,
        constraints,
        eigenvalues: need(eigen, "eigenvalues")?,
        anchor: need(anchor, "anchor")?,
    })
}

pub fn write_manifest(records: &[CatalogRecord], path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, manifest_to_string(records)?)?;
    Ok(())
}

pub fn read_manifest(path: impl AsRef<Path>) -> Result<Vec<CatalogRecord>> {
    parse_manifest(&fs::read_to_string(path)?)
}

fn param(name: &str, domain: &str) -> ParamSpec {
    ParamSpec { name: name.into(), domain: domain.into() }
}

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

const Z_ZERO: &str = "q3 = -q1 conj(q2)/conj(q4)";
const KAPPA: &str = "|kappa| = 1";

fn gauge_params() -> Vec<ParamSpec> {
    vec![param("q1,q2,q3,q4", "complex, Q = (q1, q2; q3, q4) invertible"), param("kappa", "complex, |kappa| = 1")]
}

fn lifted(row: u8, placement: &str) -> CatalogRecord {
    let (alias, mut params, constraints, eigen, anchor): (&str, Vec<ParamSpec>, Vec<&str>, &str, &str) = match row {
        2 => (
            "family-1 (H31)",
            vec![param("p", "complex, |p| = 1"), param("q", "complex, |q| = 1"), param("r", "complex, |r| = 1")],
            vec!["|p|=1", "|q|=1", "|r|=1", Z_ZERO],
            "kappa * {±1, ±p, ±q, ±r}",
            "Y = diag(1, p, q, r), M = Z",
        ),
        3 => (
            "family-2 (H02)",
            vec![],
            vec![Z_ZERO, "|q1| = |q4|"],
            "kappa * {±1 x2, ±(1+i)/√2, ±(1-i)/√2}",
            "Y = P H02 / √2, M = Z",
        ),
        4 => (
            "family-3 (H14, M = Z)",
            vec![param("p", "complex, nonzero"), param("q", "complex, nonzero")],
            vec![Z_ZERO, "|q1|^2 = |q| |q4|^2", "|q4|^2 = |p| |q1|^2"],
            "kappa * {±1 x2, ±√(pq) x2}",
            "Y = anti-diagonal (p, 1, 1, q), M = Z",
        ),
        5 => (
            "family-3 (H14, off-diagonal M)",
            vec![param("thetap", "real"), param("thetaq", "real"), param("branch", "+ or -")],
            vec![Z_ZERO, "|q1| = |q4|"],
            "kappa * {±s x2, ±s e^{i(thetap+thetaq)/2} x2}, s = √c",
            "Y = anti-diagonal (e^{i thetap}, 1, 1, e^{i thetaq}), M = (0, 1; c, 0), c = ±√e^{i thetaq}/√e^{i thetap}",
        ),
        6 => (
            "family-4 (H14, p = q = 1)",
            vec![param("branch", "+ or -")],
            vec![
                "|q1|^2 + |q3|^2 = |q2|^2 + |q4|^2",
                "Im(q1 conj(q2) + q3 conj(q4)) = 0 (branch +)",
                "q1 conj(q2) + q3 conj(q4) = 0 (branch -)",
            ],
            "kappa * {±1 x4} (branch +), kappa * {±i x4} (branch -)",
            "Y = X⊗X, M = (0, 1; ±1, 0)",
        ),
        _ => (
            "family-5 (permutation)",
            vec![param("m1,m2,m3,m4", "complex, M = (m1, m2; m3, m4) in U(2)")],
            vec!["Q in U(2)", "M in U(2)"],
            "kappa * {X1± x3, X2±}, X1± = (m1+m4 ± w)/2, X2± = (-m1-m4 ± w)/2, w = √((m1-m4)^2 + 4 m2 m3)",
            "Y = P, M arbitrary unitary",
        ),
    };
    params.extend(gauge_params());
    let mut cs = vec![KAPPA.to_string()];
    cs.extend(constraints.iter().map(|s| s.to_string()));
    CatalogRecord {
        family_id: format!("row{row}-{placement}"),
        kind: RecordKind::Unitary,
        aliases: vec![alias.to_string(), format!("row{row}")],
        placement: placement.to_string(),
        params,
        constraints: cs,
        eigenvalues: eigen.to_string(),
        anchor: format!("{anchor}, placement {placement}, conjugated by kappa Q⊗Q⊗Q"),
    }
}

fn clifford_row() -> CatalogRecord {
    CatalogRecord {
        family_id: "row1".into(),
        kind: RecordKind::Unitary,
        aliases: strings(&["clifford-case1"]),
        placement: "-".into(),
        params: vec![
            param("alpha0,alpha1,alpha2,alpha3", "complex"),
            param("variant", "BBB_AAB or AAA_BBA"),
            param("A,B", "anticommuting, Hermitian, squaring to 1"),
        ],
        constraints: strings(&[
            "2Re(alpha0 conj(alpha1)) = 2Re(alpha3 conj(alpha2))",
            "2Re(alpha0 conj(alpha2)) = 2Re(alpha3 conj(alpha1))",
            "2Re(alpha0 conj(alpha3)) = 2Re(alpha1 conj(alpha2))",
            "|alpha0|^2 + |alpha1|^2 + |alpha2|^2 + |alpha3|^2 = 1",
        ]),
        eigenvalues: "±(alpha_j - sum_{k != j} alpha_k), j = 0..3".into(),
        anchor: "alpha0 BBB + alpha1 AAB + alpha2 ABA + alpha3 BAA".into(),
    }
}

fn construction(id: &str, kind: RecordKind, params: Vec<ParamSpec>, constraints: &[&str], eigen: &str, anchor: &str) -> CatalogRecord {
    CatalogRecord {
        family_id: id.into(),
        kind,
        aliases: vec![],
        placement: "-".into(),
        params,
        constraints: strings(constraints),
        eigenvalues: eigen.into(),
        anchor: anchor.into(),
    }
}

/// The 13 unitary families: the Clifford family, then rows 2–7 in each
/// placement.
pub fn unitary_catalog() -> Vec<CatalogRecord> {
    let mut out = vec![clifford_row()];
    for row in 2..=7 {
        for placement in ["YxM", "MxY"] {
            out.push(lifted(row, placement));
        }
    }
    out
}

/// The unitary families followed by the other constructions.
pub fn catalog() -> Vec<CatalogRecord> {
    use RecordKind::{Construction, Higher};
    let mut out = unitary_catalog();
    out.extend([
        construction(
            "clifford-case2",
            Construction,
            vec![param("a,b,c,d", "real"), param("thetaa,thetab,thetac,thetad", "real")],
            &["unitary only when a = b = c = 0 and |d| = 1"],
            "those of the A-word part (nilpotent part contributes none)",
            "A = Z, B = X + iY; one A-word plus nilpotent words",
        ),
        construction(
            "clifford-case3",
            Construction,
            vec![param("alpha_{m,n,l}", "27 complex, m,n,l in {1, Pi-, Pi+}")],
            &["unitary when all 8 diagonal entries have modulus 1"],
            "the 8 diagonal entries",
            "sum of triple products of 1, (1-Z)/2, (1+Z)/2",
        ),
        construction(
            "abc-c-last",
            Construction,
            vec![param("alpha,beta", "complex")],
            &["unitary when |alpha|^2 + |beta|^2 = 1 and cos(theta_alpha - theta_beta) = 0"],
            "no closed form",
            "alpha AAC + beta BBC, (A, B, C) mutually anticommuting",
        ),
        construction(
            "abc-c-first",
            Construction,
            vec![param("alpha,beta", "complex")],
            &["unitary when |alpha|^2 + |beta|^2 = 1 and cos(theta_alpha - theta_beta) = 0"],
            "no closed form",
            "alpha CAA + beta CBB, (A, B, C) mutually anticommuting",
        ),
        construction(
            "lift-4simplex-y",
            Higher,
            vec![param("Y", "vertex-form Yang-Baxter"), param("M", "2x2, [Y, M⊗M] = 0"), param("position", "0, 1 or 2")],
            &["[Y, M⊗M] = 0"],
            "no closed form",
            "YMM, MYM or MMY on four legs",
        ),
        construction(
            "lift-5simplex-y",
            Higher,
            vec![param("Y", "vertex-form Yang-Baxter"), param("M", "2x2, [Y, M⊗M] = 0"), param("position", "0..3")],
            &["[Y, M⊗M] = 0"],
            "no closed form",
            "YMMM, MYMM, MMYM or MMMY on five legs",
        ),
        construction(
            "lift-tetra",
            Higher,
            vec![param("T", "tetrahedron operator"), param("M", "2x2, [T, M⊗M⊗M] = 0")],
            &["[T, M⊗M⊗M] = 0"],
            "no closed form",
            "TM (4-simplex) or TMM (5-simplex)",
        ),
        construction(
            "word-aca-bcb",
            Higher,
            vec![param("alpha,beta", "complex")],
            &[],
            "no closed form",
            "alpha ACA + beta BCB; RRRR = R R(-) R(-) R with R(-) = alpha ACA - beta BCB",
        ),
        construction(
            "word-abc-bac",
            Higher,
            vec![param("alpha,beta", "complex")],
            &[],
            "no closed form",
            "alpha ABC + beta BAC; anti-tetrahedron",
        ),
        construction(
            "word-acb-bca",
            Higher,
            vec![param("alpha,beta", "complex")],
            &[],
            "no closed form",
            "alpha ACB + beta BCA; RRRR = -R R(-) R(-) R",
        ),
        construction(
            "word-cab-cba",
            Higher,
            vec![param("alpha,beta", "complex")],
            &[],
            "no closed form",
            "alpha CAB + beta CBA; anti-tetrahedron",
        ),
        construction(
            "word-aacc-bbcc",
            Higher,
            vec![param("alpha,beta", "complex"), param("C position", "first or last")],
            &[],
            "no closed form",
            "alpha AACC + beta BBCC or alpha CCAA + beta CCBB; 4-simplex",
        ),
        construction(
            "word-aaac-bbbc",
            Higher,
            vec![param("alpha,beta", "complex")],
            &[],
            "no closed form",
            "alpha AAAC + beta BBBC; anti-4-simplex",
        ),
        construction(
            "word-aaaac-bbbbc",
            Higher,
            vec![param("alpha,beta", "complex")],
            &[],
            "no closed form",
            "alpha AAAAC + beta BBBBC; 5-simplex",
        ),
    ]);
    out
}

/// Ordered `key: value` lines.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub entries: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl fmt::Display) -> &mut Self {
        self.entries.push((key.into(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_string())?;
        Ok(())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k}: {v}")?;
        }
        Ok(())
    }
}
