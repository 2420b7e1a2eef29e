"""Smoke tests for the python bindings.

The module is imported from the CMake build tree when the wheel is not
installed; see conftest.py.
"""

import json
import math

import _satham as sat


DEMO = "p cnf 3 2\n1 -2 0\n2 3 0\n"


def test_parse_and_solve():
    info = sat.parse_dimacs_summary(DEMO)
    assert info["n"] == 3 and info["m"] == 2
    model = sat.brute_force_sat(DEMO)
    assert model is not None
    assert sat.evaluate(DEMO, model)


def test_unsat_returns_none():
    assert sat.brute_force_sat("p cnf 1 2\n1 0\n-1 0\n") is None


def test_verifier_matches_evaluation():
    for x in range(8):
        bits = format(x, "03b")
        assert sat.verifier_output_bit(DEMO, bits) == sat.evaluate(DEMO, bits)


def test_dual_clock_table_first_rows():
    rows = sat.clock_table("dual", a=3, d=2)
    assert rows[0] == "100000"
    assert rows[4] == "010111"
    assert len(rows) == 12
    assert sat.clock_conditions_ok("dual", a=3, d=2)


def test_trivial_reduction_energies():
    inst = sat.sat_to_klh_trivial(DEMO)
    rep = sat.ground_energy(inst["hamiltonian_json"])
    assert abs(rep["lambda"]) < 1e-10  # the demo formula is satisfiable

    unsat = sat.sat_to_klh_trivial("p cnf 1 2\n1 0\n-1 0\n")
    rep = sat.ground_energy(unsat["hamiltonian_json"])
    assert rep["lambda"] >= 1.0 - 1e-10


def test_partition_function_and_estimator():
    inst = sat.sat_to_klh_trivial(DEMO)
    ham = inst["hamiltonian_json"]
    z0 = sat.exact_partition_function(ham, 0.0)
    assert math.isclose(z0, 8.0)
    est = json.loads(sat.approximate_qpf(ham, beta=1.0, c=1, backend="oracle", seed=5))
    z = sat.exact_partition_function(ham, 1.0)
    assert abs(est["z_tilde"] / z - 1.0) <= 1.0 / 3.0


def test_construction_summary():
    out = json.loads(sat.sat_to_3lh_summary(DEMO, epsilon=0.125, d=2))
    assert out["locality"] == 3
    assert out["provenance"]["total_width"] == out["provenance"]["circuit_width"] + \
        out["provenance"]["clock_width"]
