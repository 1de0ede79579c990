"""Smoke tests for the _plsat extension module (run under ctest)."""

import math
import os
import sys

# the package wrapper lives next to this test; the extension comes from PYTHONPATH
pkg_dir = os.environ.get("PLSAT_PY_PKG")
if pkg_dir:
    sys.path.insert(0, pkg_dir)

import _plsat as m


def test_beta0():
    b0 = m.solve_beta0()
    assert 3.25 <= b0 <= 3.28, b0
    residual = m.riemann_zeta(b0 - 2.0) - 3.0 * m.riemann_zeta(b0 - 1.0)
    assert abs(residual) < 1e-4, residual


def test_dist():
    z = m.DistSpec.parse("zeta:2.0")
    assert abs(z.pmf(1) - 6.0 / math.pi**2) < 1e-9
    assert z.tail(1) == 1.0
    assert m.DistSpec.constant(5).moment(2) == 25.0
    assert m.DistSpec.pareto_tail(1.5).moment(2) is None
    assert m.threshold_side("zeta:4.0") == "sat"
    assert m.threshold_side("zeta:3.0") == "unsat"


def test_generate_and_decide():
    f = m.generate("zeta:4.0", 2000, 2, seed=7)
    st = f.stats()
    assert st.sn == 2 * f.clause_count
    res = m.decide(f)
    assert res["verdict"] in ("SAT", "UNSAT")
    if res["verdict"] == "SAT":
        model = res["assignment"]
        for c in range(f.clause_count):
            lits = f.clause(c)
            assert any((lit > 0) == model[abs(lit) - 1] for lit in lits)


def test_dimacs_roundtrip():
    f = m.generate("const:3", 40, 2, seed=3)
    g = m.parse_dimacs(f.to_dimacs())
    assert g.to_dimacs() == f.to_dimacs()


def test_determinism():
    a = m.generate("zeta:3.5", 500, 2, seed=11).to_dimacs()
    b = m.generate("zeta:3.5", 500, 2, seed=11).to_dimacs()
    assert a == b


def test_tspan_soundness():
    hits = 0
    for seed in range(5):
        f = m.generate("const:5", 20000, 2, seed=seed)
        assert f.stats().ratio > 1.0
        out = m.tspan_search(f, alpha=math.inf, seed=seed)
        if out["outcome"] == "found":
            hits += 1
            assert m.decide(f)["verdict"] == "UNSAT"
    assert hits >= 1, "span search never succeeded on supercritical instances"


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        test()
        print(f"ok {test.__name__}")
    print(f"{len(tests)} python smoke tests passed")


if __name__ == "__main__":
    main()
