"""Compilation, simulation, sampling, estimation and QASM round trips."""

import json
import math
from importlib import resources

import numpy as np
import pytest

from conftest import random_hypergraph
from hyperbell import (
    BlochVector,
    Circuit,
    Gate,
    Hypergraph,
    ObservableFamily,
    ancilla_purity,
    basis_change_u3,
    build_hypergraph_state,
    catalog_entry,
    circuit_from_dict,
    circuit_to_dict,
    emit_qasm,
    estimate_mermin,
    estimate_monomial,
    hypergraph_circuit,
    main_register_state,
    measurement_circuit,
    mermin_expectation,
    monomial_expectation,
    parse_qasm,
    phase_distance,
    sample,
    simulate,
)
from hyperbell.circuits import u3_matrix
from hyperbell.mermin import family_from_dict, observable_matrix


def gate_counts(c):
    out = {}
    for g in c.gates:
        out[g.kind] = out.get(g.kind, 0) + 1
    return out


def test_g17_ladder_shape():
    c = hypergraph_circuit(catalog_entry("G17").graph())
    assert c.num_main == 4
    assert c.num_ancillas == 2
    assert gate_counts(c) == {"h": 4, "ccx": 4, "cz": 1}


def test_lc4_direct_cz():
    c = hypergraph_circuit(catalog_entry("LC4").graph())
    assert c.num_ancillas == 0
    assert gate_counts(c) == {"h": 4, "cz": 3}


def test_size_three_edge_uses_h_toffoli_h():
    c = hypergraph_circuit(Hypergraph(3, [[1, 2, 3]]))
    kinds = [g.kind for g in c.gates]
    assert kinds == ["h", "h", "h", "h", "ccx", "h"]
    assert c.num_ancillas == 0


def test_single_vertex_edge_is_z():
    g = Hypergraph(2, [[2]])
    c = hypergraph_circuit(g)
    state = main_register_state(c)
    assert phase_distance(state, build_hypergraph_state(g)) < 1e-12


def test_ancilla_pool_shared_across_edges():
    g = Hypergraph(5, [[1, 2, 3, 4], [2, 3, 4, 5], [1, 2, 3, 4, 5]])
    c = hypergraph_circuit(g)
    assert c.num_ancillas == 3  # max edge size 5 -> 3, reused by the 4-edges
    state = main_register_state(c)
    assert phase_distance(state, build_hypergraph_state(g)) < 1e-12
    assert ancilla_purity(c) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("name", ["G7", "G17", "G24", "S4", "LC4", "CCZ3"])
def test_catalog_circuits_reproduce_states(name):
    entry = catalog_entry(name)
    c = hypergraph_circuit(entry.graph())
    state = main_register_state(c)
    assert phase_distance(state, entry.state()) < 1e-12


def test_random_circuits_reproduce_states(rng):
    for _ in range(25):
        n = int(rng.integers(2, 6))
        g = random_hypergraph(rng, n)
        c = hypergraph_circuit(g)
        full = simulate(c)
        assert phase_distance(main_register_state(c, full), build_hypergraph_state(g)) < 1e-12
        assert ancilla_purity(c, full) == pytest.approx(1.0, abs=1e-10)


def test_simulator_qubit_cap():
    g = Hypergraph(12, [list(range(1, 13))])  # 12 main + 10 ancillas
    with pytest.raises(ValueError):
        simulate(hypergraph_circuit(g))


def test_u3_rotates_direction_to_z(rng):
    for _ in range(100):
        v = BlochVector(*rng.normal(size=3))
        u = u3_matrix(*basis_change_u3(v))
        m = observable_matrix(v)
        z = np.diag([1.0, -1.0])
        assert np.abs(u.conj().T @ z @ u - m).max() < 1e-12


def test_measurement_statistics_match_observable(rng):
    # exact parity expectation through the compiled circuit equals the
    # direct monomial expectation
    entry = catalog_entry("CCZ3")
    state, g = entry.state(), entry.graph()
    for _ in range(10):
        dirs = [BlochVector(*rng.normal(size=3)) for _ in range(3)]
        mc = measurement_circuit(hypergraph_circuit(g), dirs)
        from hyperbell.circuits import _exact_parity_expectation

        assert _exact_parity_expectation(mc) == pytest.approx(
            monomial_expectation(state, dirs), abs=1e-12
        )


def test_sample_ghz_outcomes_correlated():
    # H(0); CZ; H(1) prepares (|00> + |11>)/sqrt(2)
    gates = [
        Gate("h", (0,)),
        Gate("h", (1,)),
        Gate("cz", (0, 1)),
        Gate("h", (1,)),
        Gate("measure", (0,), clbit=0),
        Gate("measure", (1,), clbit=1),
    ]
    c = Circuit(2, 0, gates, num_clbits=2)
    counts = sample(c, shots=4096, seed=5)
    assert set(counts.counts) == {"00", "11"}
    assert counts.shots == 4096


def test_sample_deterministic_and_seeded():
    g = catalog_entry("CCZ3").graph()
    dirs = [BlochVector(0.0, 0.0, 1.0)] * 3
    mc = measurement_circuit(hypergraph_circuit(g), dirs)
    c1 = sample(mc, shots=512, seed=9)
    c2 = sample(mc, shots=512, seed=9)
    c3 = sample(mc, shots=512, seed=10)
    assert c1 == c2
    assert c1 != c3


def test_estimate_monomial_parity():
    from hyperbell import ShotCounts

    counts = ShotCounts({"00": 3, "01": 1, "11": 4}, 8)
    assert estimate_monomial(counts) == pytest.approx((3 - 1 + 4) / 8)


def test_estimate_mermin_exact_matches_expectation():
    with resources.files("hyperbell").joinpath("data/sec53_family.json").open() as fh:
        fam = family_from_dict(json.load(fh))
    entry = catalog_entry("CCZ3")
    exact = estimate_mermin(entry.graph(), fam, shots=None)
    assert exact == pytest.approx(mermin_expectation(entry.state(), fam), abs=1e-12)


def test_estimate_mermin_shots_concentrate():
    with resources.files("hyperbell").joinpath("data/sec53_family.json").open() as fh:
        fam = family_from_dict(json.load(fh))
    entry = catalog_entry("CCZ3")
    exact = mermin_expectation(entry.state(), fam)
    v = estimate_mermin(entry.graph(), fam, shots=8192, seed=3)
    assert v == pytest.approx(exact, abs=0.1)


def test_qasm_round_trip_catalog():
    for name in ("G17", "LC4", "CCZ3"):
        c = hypergraph_circuit(catalog_entry(name).graph())
        back = parse_qasm(emit_qasm(c), num_main=c.num_main)
        assert back == c


def test_qasm_round_trip_with_measurements(rng):
    g = catalog_entry("G17").graph()
    dirs = [BlochVector(*rng.normal(size=3)) for _ in range(4)]
    mc = measurement_circuit(hypergraph_circuit(g), dirs)
    back = parse_qasm(emit_qasm(mc), num_main=4)
    assert back == mc  # float params survive repr round trip exactly


def test_qasm_accepts_pi_expressions():
    text = "\n".join(
        [
            "OPENQASM 2.0;",
            'include "qelib1.inc";',
            "qreg q[1];",
            "u3(pi/2,0,pi) q[0];",
        ]
    )
    c = parse_qasm(text)
    assert c.gates[0].params == pytest.approx((math.pi / 2, 0.0, math.pi))


def test_qasm_rejects_unknown_lines():
    with pytest.raises(ValueError):
        parse_qasm("OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[1];\n")


def test_circuit_json_round_trip():
    c = hypergraph_circuit(catalog_entry("G17").graph())
    assert circuit_from_dict(circuit_to_dict(c)) == c


def test_circuit_invariants_enforced():
    with pytest.raises(ValueError):
        Circuit(1, 0, [Gate("measure", (0,), clbit=0), Gate("h", (0,))], num_clbits=1)
    with pytest.raises(ValueError):
        Circuit(1, 0, [Gate("h", (1,))])
    with pytest.raises(ValueError):
        Gate("cz", (0, 0))
    with pytest.raises(ValueError):
        Gate("u3", (0,), (1.0,))
