//! Python bindings for `tetragate`.
//!
//! Matrices cross the boundary as [`Matrix`] objects, or as nested lists of
//! complex numbers wherever a function accepts `rows`.

use num_complex::Complex64;
use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use tetragate::archive;
use tetragate::clifford::{self, CliffordCoeffs, Sign, SolverOptions, Variant};
use tetragate::gates;
use tetragate::hietarinta::{self, FamilyRow, HClass, HClassId, Placement, UnitaryFamilyPoint};
use tetragate::higher::{self, LiftSpec};
use tetragate::simplex::{self, CheckMode, SimplexRelation};
use tetragate::tensalg;
use tetragate::unitary;
use tetragate::{ComplexMatrix, EmbeddedOperator, Error};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Dense complex matrix.
#[pyclass(module = "tetragate_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct Matrix {
    inner: ComplexMatrix,
}

impl From<ComplexMatrix> for Matrix {
    fn from(inner: ComplexMatrix) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl Matrix {
    #[new]
    fn new(rows: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if n == 0 || m == 0 || rows.iter().any(|r| r.len() != m) {
            return Err(PyValueError::new_err("rows must be a non-empty rectangular list of lists"));
        }
        Ok(ComplexMatrix::new(n, m, rows.into_iter().flatten().collect()).map_err(err)?.into())
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        ComplexMatrix::identity(n).into()
    }

    /// Pauli matrix by name: `I`, `X`, `Y`, `Z`, `H` or `SWAP`.
    #[staticmethod]
    fn pauli(name: &str) -> PyResult<Self> {
        use tensalg::pauli;
        let m = match name.to_ascii_uppercase().as_str() {
            "I" => pauli::identity2(),
            "X" => pauli::x(),
            "Y" => pauli::y(),
            "Z" => pauli::z(),
            "H" => pauli::hadamard(),
            "SWAP" | "P" => pauli::swap(),
            _ => return Err(PyValueError::new_err(format!("unknown Pauli name `{name}`"))),
        };
        Ok(m.into())
    }

    #[staticmethod]
    fn from_simplexmat(text: &str) -> PyResult<Self> {
        Ok(tensalg::parse_simplexmat(text).map_err(err)?.into())
    }

    #[staticmethod]
    fn read(path: &str) -> PyResult<Self> {
        Ok(archive::read_matrix(path).map_err(err)?.into())
    }

    fn write(&self, path: &str) -> PyResult<()> {
        archive::write_matrix(&self.inner, path).map_err(err)
    }

    fn to_simplexmat(&self) -> PyResult<String> {
        tensalg::to_simplexmat(&self.inner).map_err(err)
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        (self.inner.rows(), self.inner.cols())
    }

    fn to_list(&self) -> Vec<Vec<Complex64>> {
        (0..self.inner.rows()).map(|i| self.inner.row(i).to_vec()).collect()
    }

    fn __getitem__(&self, idx: (usize, usize)) -> PyResult<Complex64> {
        if idx.0 >= self.inner.rows() || idx.1 >= self.inner.cols() {
            return Err(PyIndexError::new_err("matrix index out of range"));
        }
        Ok(self.inner[idx])
    }

    fn __matmul__(&self, other: PyRef<'_, Matrix>) -> PyResult<Self> {
        Ok(self.inner.try_matmul(&other.inner).map_err(err)?.into())
    }

    fn __add__(&self, other: PyRef<'_, Matrix>) -> PyResult<Self> {
        Ok(self.inner.try_add(&other.inner).map_err(err)?.into())
    }

    fn __sub__(&self, other: PyRef<'_, Matrix>) -> PyResult<Self> {
        Ok(self.inner.try_sub(&other.inner).map_err(err)?.into())
    }

    fn scale(&self, s: Complex64) -> Self {
        self.inner.scale(s).into()
    }

    fn kron(&self, other: PyRef<'_, Matrix>) -> Self {
        self.inner.kron(&other.inner).into()
    }

    fn dagger(&self) -> Self {
        self.inner.dagger().into()
    }

    fn inverse(&self) -> PyResult<Self> {
        Ok(self.inner.inverse().map_err(err)?.into())
    }

    fn frobenius(&self) -> f64 {
        self.inner.frobenius()
    }

    /// `‖self − other‖_F / max(1, ‖other‖_F)`.
    fn residual(&self, other: PyRef<'_, Matrix>) -> PyResult<f64> {
        if self.shape() != other.shape() {
            return Err(PyValueError::new_err("shape mismatch"));
        }
        Ok(tensalg::residual(&self.inner, &other.inner))
    }

    fn eigenvalues(&self) -> PyResult<Vec<Complex64>> {
        unitary::spectrum(&self.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Matrix({}x{})", self.inner.rows(), self.inner.cols())
    }

    fn __eq__(&self, other: PyRef<'_, Matrix>) -> bool {
        self.inner == other.inner
    }
}

/// `op` acting on `sites` (1-based, ordered) of an `n_sites` qubit register.
#[pyfunction]
fn embed(op: PyRef<'_, Matrix>, sites: Vec<usize>, n_sites: usize) -> PyResult<Matrix> {
    Ok(tensalg::embed(&op.inner, &sites, n_sites).map_err(err)?.into())
}

/// Applies an embedded operator to a state vector without forming it.
#[pyfunction]
fn apply_embedded(op: PyRef<'_, Matrix>, sites: Vec<usize>, n_sites: usize, v: Vec<Complex64>) -> PyResult<Vec<Complex64>> {
    EmbeddedOperator::new(op.inner.clone(), &sites, n_sites).and_then(|e| e.apply(&v)).map_err(err)
}

/// Residual of a built-in relation; `probes` switches to the matrix-free check.
#[pyfunction]
#[pyo3(signature = (relation, r, probes=None, seed=0))]
fn check_relation(relation: &str, r: PyRef<'_, Matrix>, probes: Option<usize>, seed: u64) -> PyResult<f64> {
    let rel = SimplexRelation::builtin(relation).ok_or_else(|| {
        PyValueError::new_err(format!("unknown relation `{relation}` (one of {})", SimplexRelation::BUILTIN_NAMES.join(", ")))
    })?;
    let mode = match probes {
        Some(p) => CheckMode::MatrixFree { probes: p, seed },
        None if rel.dim() > tensalg::DENSE_CAP => CheckMode::matrix_free(seed),
        None => CheckMode::Dense,
    };
    rel.check(&[&r.inner], mode).map_err(err)
}

#[pyfunction]
fn relation_names() -> Vec<&'static str> {
    SimplexRelation::BUILTIN_NAMES.to_vec()
}

#[pyfunction]
fn tetra_vertex(r: PyRef<'_, Matrix>) -> PyResult<f64> {
    simplex::tetra_vertex(&r.inner).map_err(err)
}

#[pyfunction]
fn tetra_edge(r: PyRef<'_, Matrix>) -> PyResult<f64> {
    simplex::tetra_edge(&r.inner).map_err(err)
}

#[pyfunction]
fn ybe_braided(y: PyRef<'_, Matrix>) -> PyResult<f64> {
    simplex::ybe_braided(&y.inner).map_err(err)
}

#[pyfunction]
fn ybe_vertex(y: PyRef<'_, Matrix>) -> PyResult<f64> {
    simplex::ybe_vertex(&y.inner).map_err(err)
}

/// Unitarity certificate as a dict.
#[pyfunction]
#[pyo3(signature = (r, tol=tetragate::DEFAULT_TOL))]
fn certify<'py>(py: Python<'py>, r: PyRef<'_, Matrix>, tol: f64) -> PyResult<Bound<'py, PyDict>> {
    let rep = unitary::certify(&r.inner, tol).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("residual_rrdag", rep.residual_rrdag)?;
    d.set_item("eigen_moduli_max_dev", rep.eigen_moduli_max_dev)?;
    d.set_item("is_unitary", rep.is_unitary)?;
    Ok(d)
}

fn variant(name: &str) -> PyResult<Variant> {
    match name.to_ascii_uppercase().replace('-', "_").as_str() {
        "BBB_AAB" => Ok(Variant::BbbAab),
        "AAA_BBA" => Ok(Variant::AaaBba),
        _ => Err(PyValueError::new_err(format!("unknown variant `{name}` (BBB_AAB or AAA_BBA)"))),
    }
}

/// The Case-1 operator `Σ αₜ·wordₜ` with `(A, B) = (a, b)`, default `(X, Z)`.
#[pyfunction]
#[pyo3(signature = (alpha, variant="BBB_AAB", a=None, b=None))]
fn clifford_tetra(
    alpha: [Complex64; 4],
    variant: &str,
    a: Option<PyRef<'_, Matrix>>,
    b: Option<PyRef<'_, Matrix>>,
) -> PyResult<Matrix> {
    let c = CliffordCoeffs::new(alpha, self::variant(variant)?);
    let a = a.map_or_else(tensalg::pauli::x, |m| m.inner.clone());
    let b = b.map_or_else(tensalg::pauli::z, |m| m.inner.clone());
    Ok(clifford::clifford_tetra(&c, &a, &b).map_err(err)?.into())
}

#[pyfunction]
fn constraint_residual(alpha: [Complex64; 4]) -> [f64; 4] {
    CliffordCoeffs::new(alpha, Variant::BbbAab).constraint_residual()
}

/// Seeded search for unitary Case-1 coefficients; returns `(alpha, iterations)`.
#[pyfunction]
#[pyo3(signature = (seed, tol=1e-10, max_iter=500))]
fn solve_clifford(seed: u64, tol: f64, max_iter: usize) -> PyResult<([Complex64; 4], usize)> {
    let out = clifford::solve_constraints(seed, SolverOptions { max_iter, tol, variant: Variant::BbbAab }).map_err(err)?;
    Ok((out.coeffs.alpha, out.iterations))
}

/// Braided Yang-Baxter matrix of a named class (`H31` ... `H02`, `PERM`).
#[pyfunction]
#[pyo3(signature = (name, params=vec![]))]
fn yang_baxter_class(name: &str, params: Vec<Complex64>) -> PyResult<Matrix> {
    let id = HClassId::parse(name).ok_or_else(|| PyValueError::new_err(format!("unknown class `{name}`")))?;
    let c = HClass::with_params(id, &params).map_err(err)?;
    Ok(hietarinta::build_yb(&c).into())
}

fn placement(name: &str) -> PyResult<Placement> {
    Placement::parse(name).ok_or_else(|| PyValueError::new_err(format!("unknown placement `{name}` (YxM or MxY)")))
}

/// `Y⊗M` or `M⊗Y` for a vertex-form `Y`, with both preconditions checked.
#[pyfunction]
#[pyo3(signature = (y_vertex, m, placement="YxM"))]
fn lift(y_vertex: PyRef<'_, Matrix>, m: PyRef<'_, Matrix>, placement: &str) -> PyResult<Matrix> {
    Ok(hietarinta::lift(&y_vertex.inner, &m.inner, self::placement(placement)?).map_err(err)?.into())
}

/// A point of lifted unitary row 2..7 and its certificate.
///
/// Keyword parameters: `p, q, r` (row 2), `p, q` (row 4), `theta_p, theta_q`
/// (row 5), `m` (row 7, 2x2 rows); `branch` for rows 5 and 6; `q_entries`
/// and `kappa` for the gauge.
#[pyfunction]
#[pyo3(signature = (row, placement="YxM", branch="+", q_entries=None, kappa=Complex64::new(1.0, 0.0), **kwargs))]
fn unitary_family<'py>(
    py: Python<'py>,
    row: u8,
    placement: &str,
    branch: &str,
    q_entries: Option<[Complex64; 4]>,
    kappa: Complex64,
    kwargs: Option<&Bound<'py, PyDict>>,
) -> PyResult<(Matrix, Bound<'py, PyDict>)> {
    let (zero, one) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    let item = |k: &str| kwargs.map(|d| d.get_item(k)).transpose().map(Option::flatten);
    let get = |k: &str, default: Complex64| -> PyResult<Complex64> { item(k)?.map_or(Ok(default), |v| v.extract()) };
    let angle = |k: &str| -> PyResult<f64> { item(k)?.map_or(Ok(0.0), |v| v.extract()) };
    let allowed: &[&str] = match row {
        2 => &["p", "q", "r"],
        4 => &["p", "q"],
        5 => &["theta_p", "theta_q"],
        7 => &["m"],
        _ => &[],
    };
    for key in kwargs.iter().flat_map(|d| d.keys()) {
        let key: String = key.extract()?;
        if !allowed.contains(&key.as_str()) {
            return Err(PyValueError::new_err(format!("row {row} does not take parameter `{key}`")));
        }
    }
    let sign = Sign::parse(branch).ok_or_else(|| PyValueError::new_err(format!("unknown branch `{branch}`")))?;
    let fr = match row {
        2 => FamilyRow::DiagonalPhases { p: get("p", one)?, q: get("q", one)?, r: get("r", one)? },
        3 => FamilyRow::ScaledH02,
        4 => FamilyRow::AntiDiagonalZ { p: get("p", one)?, q: get("q", one)? },
        5 => FamilyRow::AntiDiagonalPhases { theta_p: angle("theta_p")?, theta_q: angle("theta_q")?, branch: sign },
        6 => FamilyRow::AntiDiagonalUnit { branch: sign },
        7 => {
            let m: Vec<Vec<Complex64>> = match item("m")? {
                Some(v) => v.extract()?,
                None => vec![vec![one, zero], vec![zero, one]],
            };
            FamilyRow::Permutation { m: Matrix::new(m)?.inner }
        }
        _ => return Err(PyValueError::new_err(format!("lifted unitary rows are 2..7, got {row}"))),
    };
    let mut pt = UnitaryFamilyPoint::new(fr, self::placement(placement)?);
    if let Some(q) = q_entries {
        pt.q = q;
    }
    pt.kappa = kappa;
    let out = hietarinta::unitary_family(&pt).map_err(err)?;
    let c = &out.certificate;
    let d = PyDict::new(py);
    d.set_item("unitarity_residual", c.unitarity.residual_rrdag)?;
    d.set_item("tetra_vertex", c.tetra_vertex)?;
    d.set_item("eigen_formula_distance", c.eigen_distance)?;
    d.set_item("eigenvalues", c.eigenvalues.clone())?;
    d.set_item("passes", c.passes())?;
    Ok((out.t.into(), d))
}

/// Composes a gate recipe; returns the product, target and check results.
#[pyfunction]
#[pyo3(signature = (name, **params))]
fn gate<'py>(py: Python<'py>, name: &str, params: Option<&Bound<'py, PyDict>>) -> PyResult<Bound<'py, PyDict>> {
    let values: Vec<(String, f64)> = match params {
        Some(d) => d.iter().map(|(k, v)| Ok((k.extract()?, v.extract()?))).collect::<PyResult<_>>()?,
        None => vec![],
    };
    let recipe = gates::by_name(name, &values).map_err(err)?;
    let rep = gates::verify(&recipe).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("name", recipe.name.clone())?;
    d.set_item("factors", recipe.factors.iter().map(|f| f.label.clone()).collect::<Vec<_>>())?;
    d.set_item("product", Matrix::from(gates::compose(&recipe).map_err(err)?))?;
    d.set_item("target", Matrix::from(recipe.target.clone()))?;
    d.set_item("factor_residuals", rep.factor_residuals.clone())?;
    d.set_item("product_residual", rep.product_residual)?;
    d.set_item("passes", rep.passes(gates::GATE_TOL))?;
    Ok(d)
}

#[pyfunction]
fn gate_names() -> Vec<&'static str> {
    gates::GATE_NAMES.to_vec()
}

/// 4-simplex lift of a vertex-form `Y` (4x4) or tetrahedron `T` (8x8) with
/// `M` on the remaining legs; `position` is the 0-based leg of the base.
#[pyfunction]
fn lift_4simplex(base: PyRef<'_, Matrix>, m: PyRef<'_, Matrix>, position: usize) -> PyResult<Matrix> {
    let spec = LiftSpec::new(base.inner.clone(), m.inner.clone(), position).map_err(err)?;
    Ok(higher::lift_4simplex(&spec).map_err(err)?.into())
}

#[pyfunction]
fn lift_5simplex(base: PyRef<'_, Matrix>, m: PyRef<'_, Matrix>, position: usize) -> PyResult<Matrix> {
    let spec = LiftSpec::new(base.inner.clone(), m.inner.clone(), position).map_err(err)?;
    Ok(higher::lift_5simplex(&spec).map_err(err)?.into())
}

#[pyfunction]
fn anti_4simplex(r: PyRef<'_, Matrix>) -> PyResult<f64> {
    higher::anti_4simplex(&r.inner).map_err(err)
}

/// Catalog records as dicts; `kind` is `unitary` or `all`.
#[pyfunction]
#[pyo3(signature = (kind="all"))]
fn catalog<'py>(py: Python<'py>, kind: &str) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let records = match kind {
        "unitary" => archive::unitary_catalog(),
        "all" => archive::catalog(),
        _ => return Err(PyValueError::new_err(format!("unknown kind `{kind}` (unitary or all)"))),
    };
    records
        .into_iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("family_id", r.family_id)?;
            d.set_item("kind", r.kind.name())?;
            d.set_item("aliases", r.aliases)?;
            d.set_item("placement", r.placement)?;
            d.set_item("params", r.params.into_iter().map(|p| (p.name, p.domain)).collect::<Vec<_>>())?;
            d.set_item("constraints", r.constraints)?;
            d.set_item("eigenvalues", r.eigenvalues)?;
            d.set_item("anchor", r.anchor)?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
pub fn tetragate_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Matrix>()?;
    m.add_function(wrap_pyfunction!(embed, m)?)?;
    m.add_function(wrap_pyfunction!(apply_embedded, m)?)?;
    m.add_function(wrap_pyfunction!(check_relation, m)?)?;
    m.add_function(wrap_pyfunction!(relation_names, m)?)?;
    m.add_function(wrap_pyfunction!(tetra_vertex, m)?)?;
    m.add_function(wrap_pyfunction!(tetra_edge, m)?)?;
    m.add_function(wrap_pyfunction!(ybe_braided, m)?)?;
    m.add_function(wrap_pyfunction!(ybe_vertex, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(clifford_tetra, m)?)?;
    m.add_function(wrap_pyfunction!(constraint_residual, m)?)?;
    m.add_function(wrap_pyfunction!(solve_clifford, m)?)?;
    m.add_function(wrap_pyfunction!(yang_baxter_class, m)?)?;
    m.add_function(wrap_pyfunction!(lift, m)?)?;
    m.add_function(wrap_pyfunction!(unitary_family, m)?)?;
    m.add_function(wrap_pyfunction!(gate, m)?)?;
    m.add_function(wrap_pyfunction!(gate_names, m)?)?;
    m.add_function(wrap_pyfunction!(lift_4simplex, m)?)?;
    m.add_function(wrap_pyfunction!(lift_5simplex, m)?)?;
    m.add_function(wrap_pyfunction!(anti_4simplex, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add("DEFAULT_TOL", tetragate::DEFAULT_TOL)?;
    m.add("MATRIX_FREE_TOL", tetragate::MATRIX_FREE_TOL)?;
    Ok(())
}
