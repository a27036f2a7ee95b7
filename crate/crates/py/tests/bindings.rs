use std::ffi::CString;

use pyo3::prelude::*;
use pyo3::types::{PyDict, PyModule};

fn with_module(code: &str) {
    Python::initialize();
    Python::attach(|py| {
        let m = PyModule::new(py, "tetragate_py").unwrap();
        tetragate_py::tetragate_py(&m).unwrap();
        let globals = PyDict::new(py);
        globals.set_item("tg", m).unwrap();
        let src = CString::new(code).unwrap();
        if let Err(e) = py.run(&src, Some(&globals), None) {
            panic!("{e}");
        }
    });
}

#[test]
fn matrix_round_trips_through_python() {
    with_module(
        r#"
m = tg.Matrix([[1, 2j], [3, 4]])
assert m.shape == (2, 2)
assert m[0, 1] == 2j
assert m.to_list() == [[1, 2j], [3, 4]]
assert tg.Matrix.from_simplexmat(m.to_simplexmat()) == m
assert (m @ m.inverse()).residual(tg.Matrix.identity(2)) < 1e-14
"#,
    );
}

#[test]
fn family_and_relation_checks() {
    with_module(
        r#"
t, cert = tg.unitary_family(4, placement="MxY", p=1, q=1)
assert cert["passes"]
assert tg.tetra_vertex(t) <= 1e-10
assert tg.certify(t)["is_unitary"]
try:
    tg.unitary_family(2, p=2)
    raise AssertionError("accepted |p| = 2")
except ValueError as e:
    assert "|p|=1 violated" in str(e)
"#,
    );
}

#[test]
fn gates_and_lifts() {
    with_module(
        r#"
assert all(tg.gate(n)["passes"] for n in tg.gate_names())
assert tg.gate("deutsch", **{"lambda": 0.3})["passes"]
y = tg.Matrix.pauli("SWAP")
assert tg.check_relation("4simplex", tg.lift_4simplex(y, tg.Matrix.pauli("Z"), 1)) <= 1e-10
"#,
    );
}

#[test]
fn apply_matches_embed() {
    with_module(
        r#"
op = tg.Matrix.pauli("X").kron(tg.Matrix.pauli("Y"))
v = [complex(k, -k) for k in range(8)]
dense = tg.embed(op, [3, 1], 3)
w = tg.apply_embedded(op, [3, 1], 3, v)
expected = [sum(dense[i, j] * v[j] for j in range(8)) for i in range(8)]
assert max(abs(a - b) for a, b in zip(w, expected)) < 1e-14
"#,
    );
}
