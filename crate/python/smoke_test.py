#!/usr/bin/env python3
"""Smoke test for the qpg_py extension module.

Builds nothing itself: compile the module first with

    cargo build --release -p qpg-python

then run

    python3 python/smoke_test.py
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        REPO / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libqpg_py.so", "qpg_py.so", "libqpg_py.dylib")
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("qpg_py library not found; run `cargo build --release -p qpg-python` first")
    stage = Path(tempfile.mkdtemp(prefix="qpg-py-"))
    shutil.copy2(built, stage / "qpg_py.so")
    sys.path.insert(0, str(stage))
    import qpg_py

    return qpg_py


def approx(a, b, tol=1e-9):
    assert abs(a - b) <= tol, f"{a} != {b} (tol {tol})"


def main():
    qpg = load_module()

    # Basis bookkeeping.
    basis = qpg.SystemBasis(1)
    assert basis.dim == 12
    assert qpg.SystemBasis(8).dim == 243
    assert basis.state_at(basis.index_of("c", 1, 1)) == ("c", 1, 1)

    # Closed-form amplitudes.
    assert qpg.amplitude_cjk(1.0, 0.0, 0.0, False, False) == 1.0 + 0.0j
    approx(qpg.amplitude_cjk(1.0, 0.0, math.pi, True, False).real, -1.0, 1e-12)
    w01, w11 = qpg.rabi_frequencies(1.0, 0.0)
    approx(w01, 2.0, 1e-12)
    approx(w11, 2.0 * math.sqrt(2.0), 1e-12)

    # Canonical gate list: the fastest realization flips |1,1> at gt = 37.70.
    table = qpg.table_solutions()
    assert len(table) == 10
    first = table[0]
    assert (first.gate, first.m, first.n) == ("U1", 0, 6)
    approx(first.gt, 2.0 * math.pi * 6.0, 1e-9)

    # Hamiltonian structure: |a,0,0><c,1,0| element equals g.
    params = qpg.ModelParams.symmetric(1.0, 0.0)
    h = qpg.hamiltonian_at(params, basis, 0.0)
    ia = basis.index_of("a", 0, 0)
    ic = basis.index_of("c", 1, 0)
    assert h[ia][ic] == 1.0 + 0.0j
    assert h[ic][ia] == 1.0 + 0.0j

    # Numerical evolution: half a Rabi oscillation empties |c,1,0>.
    psi0 = qpg.basis_state(basis, "c", 1, 0)
    psi = qpg.evolve(psi0, params, math.pi / 2.0)
    assert abs(psi.amplitude("c", 1, 0)) < 1e-6
    approx(psi.norm(), 1.0, 1e-9)

    # Gate fidelity at the first realization's interaction time.
    f = qpg.gate_fidelity(params, "u1", first.gt, "numeric")
    assert f >= 0.99
    approx(f, qpg.gate_fidelity(params, "u1", first.gt, "analytic"), 1e-6)

    # Entanglement generated from injected coherent light.
    basis8 = qpg.SystemBasis(8)
    alpha = complex(math.sqrt(0.5), 0.0)
    coherent = qpg.coherent_product_state(alpha, alpha, basis8)
    assert qpg.concurrence_computational(coherent) < 1e-12
    evolved = qpg.evolve(coherent, params, first.gt)
    c = qpg.concurrence_computational(evolved)
    assert abs(c - 0.734) < 0.005, c

    # Trace endpoints.
    gts, fs = qpg.fidelity_trace(params, "u1", 50.0, 101)
    assert len(gts) == len(fs) == 101
    approx(fs[0], 0.25, 1e-9)

    print("smoke test passed")


if __name__ == "__main__":
    main()
