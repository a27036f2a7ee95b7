"""Smoke test for the tetragate_py extension.

Build it first with `cargo build -p tetragate-py --release`; the script
falls back to loading the shared library straight from target/.
"""

import cmath
import importlib.machinery
import importlib.util
import math
import sys
from pathlib import Path


def load():
    try:
        import tetragate_py

        return tetragate_py
    except ImportError:
        pass
    root = Path(__file__).resolve().parent.parent / "target"
    for profile in ("release", "debug"):
        for name in ("libtetragate_py.so", "libtetragate_py.dylib", "tetragate_py.dll"):
            path = root / profile / name
            if path.exists():
                loader = importlib.machinery.ExtensionFileLoader("tetragate_py", str(path))
                spec = importlib.util.spec_from_file_location("tetragate_py", path, loader=loader)
                module = importlib.util.module_from_spec(spec)
                loader.exec_module(module)
                return module
    sys.exit("tetragate_py not found; run `cargo build -p tetragate-py --release`")


def main():
    tg = load()
    tol = tg.DEFAULT_TOL

    x, z = tg.Matrix.pauli("X"), tg.Matrix.pauli("Z")
    assert x.kron(z).shape == (4, 4)
    assert tg.embed(x, [1], 2).residual(x.kron(tg.Matrix.identity(2))) == 0.0

    r = tg.clifford_tetra([0.5, 0.5, 0.5, 0.5])
    assert tg.certify(r)["is_unitary"]
    assert tg.tetra_vertex(r) <= tol and tg.tetra_edge(r) <= tol
    assert max(tg.constraint_residual([0.5, 0.5, 0.5, 0.5])) == 0.0

    alpha, _ = tg.solve_clifford(7)
    assert max(tg.constraint_residual(alpha)) <= tol

    t, cert = tg.unitary_family(2, p=1j, q=-1, r=1)
    assert cert["passes"], cert
    assert tg.check_relation("tetra-vertex", t) <= tol
    t5, cert5 = tg.unitary_family(5, placement="MxY", branch="-", theta_p=1.0, theta_q=0.3)
    assert cert5["passes"], cert5
    assert all(abs(abs(e) - 1) <= 1e-10 for e in t5.eigenvalues())

    y = tg.yang_baxter_class("H31", [1, 1j, -1, cmath.exp(0.4j)])
    assert tg.ybe_braided(y) <= 1e-12

    for name in tg.gate_names():
        g = tg.gate(name)
        assert g["passes"], name
    cu = tg.gate("controlled-u", phi=math.pi / 2, psi=-math.pi / 2)
    assert cu["product"].residual(tg.gate("cnot")["target"]) <= 1e-12

    swap = tg.Matrix.pauli("SWAP")
    lifted = tg.lift_4simplex(swap, tg.Matrix.identity(2), 0)
    assert tg.check_relation("4simplex", lifted) <= tol
    five = tg.lift_5simplex(swap, tg.Matrix.identity(2), 0)
    assert tg.check_relation("5simplex", five, probes=4, seed=1) <= tg.MATRIX_FREE_TOL

    text = t.to_simplexmat()
    assert tg.Matrix.from_simplexmat(text) == t

    assert len(tg.catalog("unitary")) == 13

    try:
        tg.unitary_family(2, p=2)
    except ValueError as e:
        assert "|p|=1 violated" in str(e)
    else:
        raise AssertionError("constraint violation not reported")

    try:
        tg.unitary_family(3, p=1)
    except ValueError:
        pass
    else:
        raise AssertionError("unknown parameter accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
