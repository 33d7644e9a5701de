"""Acceptance gate.

One test per published acceptance criterion, each emitting a single
"ACCEPTANCE <id>: PASS/FAIL" line (visible with -s or -rA; the test
outcome itself mirrors the line).  Criterion 5 is split into lettered
sub-parts because its clauses have independent budgets.

Criterion 5a (the G7 singular-point count) is implemented faithfully and
is expected to FAIL: the reference label says four A1 points, but the
section polynomial of the cataloged state provably has exactly two
critical points on the torus charts (stable across seeds, start budgets
and chart choices; the advertised all-ones point does not satisfy f = 0
for any sign vector compatible with the edge structure).  The discrepancy
is reported, not suppressed.  See README, "Known discrepancies".
"""

import json
import math
import time
from importlib import resources

import numpy as np
import pytest

from conftest import random_hypergraph
from hyperbell import (
    BlochVector,
    OptimizationConfig,
    SectionConfig,
    StateVector,
    analyze_section,
    ancilla_purity,
    build_hypergraph_state,
    catalog_entry,
    estimate_mermin,
    hdet_2222,
    hdet_zero,
    hypergraph_circuit,
    infer_hypergraph,
    k_uniform,
    kuniform_section_survey,
    main_register_state,
    mermin_expectation,
    mermin_pair_expectation,
    observable_matrix,
    optimize_mu,
    optimize_mu_tilde,
    phase_distance,
    quartic_discriminant,
    schlafli_quartic,
    simulate,
)
from hyperbell.mermin import family_from_dict
from hyperbell.singular import projective_distance

SEEDS = (0, 1, 2)

MU_TABLE = {
    "G7": 1.50000,
    "G17": 1.43329,
    "G24": 1.71310,
    "S4": 2.82843,
    "LC4": 1.41421,
}
MU_TILDE_TABLE = {"G7": 2.28571, "G17": 2.07172, "S4": 8.0, "LC4": 2.0}
KUNIFORM_TABLE = {
    (5, 2): 4.0,
    (5, 3): 2.45751,
    (5, 4): 2.02319,
    (5, 5): 1.29200,
    (6, 2): 5.65685,
    (6, 3): 2.85947,
    (6, 4): 3.29038,
    (6, 5): 3.20848,
    (6, 6): 1.14326,
}

_collected_mu_values = []  # (n, value) pairs feeding the criterion-9 bound check


def _line(name, ok, detail):
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'} - {detail}")
    return ok


def _best_mu(state, tilde=False, restarts=None, iterations=None):
    best = None
    for seed in SEEDS:
        kw = {"seed": seed}
        if restarts:
            kw["restarts"] = restarts
        if iterations:
            kw["iterations"] = iterations
        run = optimize_mu_tilde if tilde else optimize_mu
        value = run(state, OptimizationConfig(**kw)).value
        if not tilde:
            _collected_mu_values.append((state.n, value))
        best = value if best is None else max(best, value)
    return best


def test_criterion_1_mu_table():
    """Table rows G7/G17/G24/S4/LC4 within 1e-2, each row under 30 s."""
    results, ok = [], True
    for name, ref in MU_TABLE.items():
        t0 = time.perf_counter()
        best = _best_mu(catalog_entry(name).state())
        dt = time.perf_counter() - t0
        good = abs(best - ref) <= 1e-2 and dt <= 30.0
        ok &= good
        results.append(f"{name} {best:.5f} (ref {ref:.5f}, {dt:.1f}s)")
    assert _line("1 mu-table", ok, "; ".join(results))


def test_criterion_2_mu_tilde():
    """mu~ rows within 2e-2."""
    results, ok = [], True
    for name, ref in MU_TILDE_TABLE.items():
        best = _best_mu(catalog_entry(name).state(), tilde=True)
        good = abs(best - ref) <= 2e-2
        ok &= good
        results.append(f"{name} {best:.5f} (ref {ref:.5f})")
    assert _line("2 mu-tilde", ok, "; ".join(results))


def test_criterion_3_kuniform():
    """k-uniform table: n=5 at 1e-2, n=6 at 2e-2 (enlarged budget), <= 5 min.

    Reference values are reach-or-exceed targets capped by 2^((n-1)/2).
    """
    t0 = time.perf_counter()
    results, ok = [], True
    for (n, k), ref in sorted(KUNIFORM_TABLE.items()):
        state = build_hypergraph_state(k_uniform(n, k))
        tol, restarts, iters = (1e-2, None, None) if n == 5 else (2e-2, 30, 9000)
        best = _best_mu(state, restarts=restarts, iterations=iters)
        bound = 2 ** ((n - 1) / 2)
        good = best >= ref - tol and best <= bound + 1e-9
        ok &= good
        results.append(f"({n},{k}) {best:.5f} (ref {ref:.5f})")
    total = time.perf_counter() - t0
    ok &= total <= 300.0
    assert _line("3 kuniform", ok, f"{'; '.join(results)}; total {total:.0f}s")


def test_criterion_4_hyperdeterminant(rng):
    """Zero/nonzero split, SL invariance at 1e-8, degree-24 scaling."""
    zero_amps = np.zeros(16, dtype=complex)
    zero_amps[0] = 1.0
    zeros_ok = all(
        hdet_zero(s)[0]
        for s in (
            catalog_entry("G17").state(),
            catalog_entry("G7").state(),
            StateVector(4, zero_amps),
        )
    )
    nonzero_ok = not hdet_zero(catalog_entry("G24").state())[0]

    from conftest import RawTensor

    t = rng.normal(size=16) + 1j * rng.normal(size=16)
    t /= np.linalg.norm(t)
    base = quartic_discriminant(schlafli_quartic(RawTensor(4, t)))
    sl_ok = True
    for _ in range(100):
        ms = []
        for _ in range(4):
            m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            ms.append(m / np.sqrt(np.linalg.det(m)))
        t4 = np.einsum(
            "ia,jb,kc,ld,abcd->ijkl", *ms, t.reshape(2, 2, 2, 2)
        ).reshape(16)
        value = quartic_discriminant(schlafli_quartic(RawTensor(4, t4)))
        sl_ok &= abs(value - base) <= 1e-8 * abs(base)

    scale_ok = True
    for c in (1.7, 0.4 - 0.9j):
        scaled = quartic_discriminant(schlafli_quartic(RawTensor(4, c * t)))
        scale_ok &= abs(scaled - c**24 * base) <= 1e-8 * abs(c**24 * base)

    ok = zeros_ok and nonzero_ok and sl_ok and scale_ok
    assert _line(
        "4 hyperdeterminant",
        ok,
        f"zeros {zeros_ok}, G24 nonzero {nonzero_ok}, "
        f"SL x100 {sl_ok}, degree-24 {scale_ok}",
    )


_section_clock = {"elapsed": 0.0}


def _timed_section(state, config):
    t0 = time.perf_counter()
    rep = analyze_section(state, config)
    _section_clock["elapsed"] += time.perf_counter() - t0
    return rep


def test_criterion_5a_g7_four_points():
    """Reference count for G7: four merged corank-0 points.

    Faithful check, expected RED: the analysis robustly finds exactly two
    (the (1 : 1 +/- sqrt 2) orbit); see the module docstring and README.
    """
    reports = [
        _timed_section(catalog_entry("G7").state(), SectionConfig(starts=300, seed=s))
        for s in SEEDS
    ]
    counts = [len(r.points) for r in reports]
    coranks_ok = all(p.hessian_corank == 0 for r in reports for p in r.points)
    stable = len(set(counts)) == 1
    ok = stable and coranks_ok and counts[0] == 4
    _line(
        "5a G7 four points",
        ok,
        f"found {counts[0]} corank-0 points (stable across {len(SEEDS)} seeds: "
        f"{stable}); reference count 4 not reproduced - the all-ones reference "
        "point has f != 0 for every sign vector compatible with the edge set",
    )
    assert ok, (
        f"G7 section: reference says 4 singular points, analysis finds "
        f"{counts[0]} (seeds {SEEDS}, 300 starts/chart, coranks all 0: "
        f"{coranks_ok}). The two found points sit at (1 : 1 +/- sqrt 2) "
        "patterns to 1e-8 and exhaust the critical locus; no sign "
        "assignment over the edge structure admits the advertised third "
        "and fourth points. Reported, not suppressed; see README "
        "'Known discrepancies'."
    )


def test_criterion_5b_g7_sqrt2_points():
    """The two reference sqrt-2 chart points are found to 1e-8."""
    rep = _timed_section(catalog_entry("G7").state(), SectionConfig(starts=300, seed=0))
    roots = []
    for p in rep.points:
        ratios = []
        for pair in p.projective:
            arr = np.array(pair)
            lead = arr[np.argmax(np.abs(arr))]
            arr = arr / lead
            ratios.append(arr[1] / arr[0])
        good_pattern = (
            abs(ratios[1]) < 1e-8
            and abs(ratios[2] + 1.0) < 1e-8
            and abs(ratios[0] - ratios[3]) < 1e-8
        )
        if good_pattern:
            roots.append(complex(ratios[0]))
    hits = {
        r: any(abs(root - r) < 1e-8 for root in roots)
        for r in (1.0 + math.sqrt(2.0), 1.0 - math.sqrt(2.0))
    }
    ok = all(hits.values()) and len(rep.points) == 2
    assert _line(
        "5b G7 sqrt2 points",
        ok,
        f"roots {sorted(x.real for x in roots)} match 1 +/- sqrt 2 to 1e-8",
    )


def test_criterion_5c_g24_smooth():
    rep = _timed_section(catalog_entry("G24").state(), SectionConfig(starts=500, seed=0))
    ok = rep.verdict == "Smooth" and not rep.points
    assert _line("5c G24 smooth", ok, f"verdict {rep.verdict} at 500 starts/chart")


def test_criterion_5d_g17_six_points():
    sets = []
    for seed in SEEDS:
        rep = _timed_section(
            catalog_entry("G17").state(), SectionConfig(starts=400, seed=seed)
        )
        sets.append(rep.points)
    counts = [len(s) for s in sets]
    coranks_ok = all(p.hessian_corank == 0 for s in sets for p in s)
    identical = all(
        len(s) == len(sets[0])
        and all(
            min(projective_distance(p.projective, q.projective) for q in sets[0])
            < 1e-6
            for p in s
        )
        for s in sets[1:]
    )
    ok = counts == [6, 6, 6] and coranks_ok and identical
    assert _line(
        "5d G17 six points",
        ok,
        f"counts {counts}, corank-0 {coranks_ok}, identical merged sets {identical}",
    )


def test_criterion_5e_n5_survey_and_budget():
    t0 = time.perf_counter()
    survey = kuniform_section_survey(5, config=SectionConfig(starts=200, seed=0))
    _section_clock["elapsed"] += time.perf_counter() - t0
    expected = {
        2: "NonIsolatedCandidate",
        3: "Smooth",
        4: "IsolatedSingular",
        5: "NonIsolatedCandidate",
    }
    verdicts = {k: survey[k].verdict for k in sorted(survey)}
    survey_ok = verdicts == expected and all(
        p.hessian_corank == 0 for p in survey[4].points
    )
    budget_ok = _section_clock["elapsed"] <= 600.0
    ok = survey_ok and budget_ok
    assert _line(
        "5e n=5 survey",
        ok,
        f"verdicts {verdicts}; section wall time {_section_clock['elapsed']:.0f}s",
    )


def test_criterion_6_circuit_equivalence(rng):
    """200 random connected hypergraphs (n <= 5): 1e-12 states, 1e-10 purity."""
    worst_dev, worst_pur = 0.0, 0.0
    for _ in range(200):
        n = int(rng.integers(2, 6))
        g = random_hypergraph(rng, n)
        c = hypergraph_circuit(g)
        full = simulate(c)
        dev = phase_distance(main_register_state(c, full), build_hypergraph_state(g))
        pur = abs(ancilla_purity(c, full) - 1.0)
        worst_dev, worst_pur = max(worst_dev, dev), max(worst_pur, pur)
    ok = worst_dev <= 1e-12 and worst_pur <= 1e-10
    assert _line(
        "6 circuit equivalence",
        ok,
        f"200 graphs, worst deviation {worst_dev:.2e}, worst purity gap {worst_pur:.2e}",
    )


def test_criterion_7_measurement_lemma(rng):
    """1000 (state, direction) pairs: rotated-Z expectation == direct."""
    from hyperbell.circuits import basis_change_u3, u3_matrix
    from hyperbell._kernels import apply_single_qubit

    worst = 0.0
    z = np.diag([1.0 + 0j, -1.0])
    for _ in range(1000):
        n = int(rng.integers(1, 4))
        amps = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
        amps /= np.linalg.norm(amps)
        qubit = int(rng.integers(1, n + 1))
        bit = n - qubit
        v = BlochVector(*rng.normal(size=3))
        m = observable_matrix(v)

        direct = amps.copy()
        apply_single_qubit(direct, bit, m[0, 0], m[0, 1], m[1, 0], m[1, 1])
        direct_val = np.vdot(amps, direct).real

        u = u3_matrix(*basis_change_u3(v))
        rotated = amps.copy()
        apply_single_qubit(rotated, bit, u[0, 0], u[0, 1], u[1, 0], u[1, 1])
        after_z = rotated.copy()
        apply_single_qubit(after_z, bit, z[0, 0], z[0, 1], z[1, 0], z[1, 1])
        rotated_val = np.vdot(rotated, after_z).real

        worst = max(worst, abs(direct_val - rotated_val))
    ok = worst <= 1e-12
    assert _line("7 measurement lemma", ok, f"1000 pairs, worst gap {worst:.2e}")


def test_criterion_8_case_study():
    """Worked 3-qubit example: exact 1.52 +/- 0.02; shots land within 0.1
    in at least 99 of 100 seeded runs; hardware-noise values are out of
    scope and deliberately not reproduced."""
    with resources.files("hyperbell").joinpath("data/sec53_family.json").open() as fh:
        fam = family_from_dict(json.load(fh))
    entry = catalog_entry("CCZ3")
    exact = mermin_expectation(entry.state(), fam)
    exact_ok = abs(exact - 1.52) <= 0.02
    hits = sum(
        abs(estimate_mermin(entry.graph(), fam, shots=8192, seed=run) - exact) <= 0.1
        for run in range(100)
    )
    ok = exact_ok and hits >= 99
    assert _line(
        "8 case study", ok, f"exact {exact:.5f}, shot runs within 0.1: {hits}/100"
    )


def test_criterion_9_property_suites(rng):
    """QM bound, ANF round trip, expansion-vs-dense, LU twirl of mu."""
    # (a) every optimizer output collected above respects 2^((n-1)/2)
    bound_ok = all(
        v <= 2 ** ((n - 1) / 2) + 1e-9 for n, v in _collected_mu_values
    )
    if not _collected_mu_values:  # criterion tests can run standalone
        r = optimize_mu(catalog_entry("LC4").state(),
                        OptimizationConfig(restarts=4, iterations=1500, seed=0))
        bound_ok = r.value <= 2 ** 1.5 + 1e-9

    # (b) ANF round trip over random hypergraphs n <= 5
    anf_ok = True
    for _ in range(100):
        n = int(rng.integers(1, 6))
        g = random_hypergraph(rng, max(n, 2), connected=False)
        anf_ok &= infer_hypergraph(build_hypergraph_state(g)) == g

    # (c) expansion vs dense operator for n <= 4 at 1e-10
    from test_mermin import dense_mermin_pair, random_family

    dense_ok = True
    for n in (2, 3, 4):
        for _ in range(5):
            fam = random_family(rng, n)
            amps = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
            amps /= np.linalg.norm(amps)
            state = StateVector(n, amps)
            m_op, _ = dense_mermin_pair(fam)
            dense_val = np.vdot(amps, m_op @ amps).real
            dense_ok &= abs(mermin_pair_expectation(state, fam)[0] - dense_val) <= 1e-10

    # (d) mu is LU invariant: 20 random local-unitary twirls of G7
    base_state = catalog_entry("G7").state()
    ref = MU_TABLE["G7"]
    twirl_ok = True
    for _ in range(20):
        us = []
        for _ in range(4):
            q, r_ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
            us.append(q * (np.diag(r_) / np.abs(np.diag(r_))))
        t = np.einsum(
            "ia,jb,kc,ld,abcd->ijkl", *us, base_state.amps.reshape(2, 2, 2, 2)
        ).reshape(16)
        twirled = StateVector(4, t / np.linalg.norm(t))
        value = optimize_mu(twirled, OptimizationConfig(seed=0)).value
        twirl_ok &= abs(value - ref) <= 2e-2

    ok = bound_ok and anf_ok and dense_ok and twirl_ok
    assert _line(
        "9 property suites",
        ok,
        f"QM bound {bound_ok}, ANF round-trip {anf_ok}, "
        f"expansion-vs-dense {dense_ok}, LU twirl {twirl_ok}",
    )
