"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s``.
"""

import csv
import time
from importlib import resources

import numpy as np
import pytest

from multiswap.analytics import precision
from multiswap.builder import (
    build_network,
    derive_permutation_table,
    initial_state,
    pair_coverage_map,
)
from multiswap.circuits import count_resources
from multiswap.cli import main
from multiswap.estimation import (
    TallyRecord,
    estimate,
    estimate_all_overlaps,
    oracle_distribution,
    plan_for,
    replay,
)
from multiswap.fixtures import (
    load_ensemble,
    reference_counts,
    reference_estimates,
    reference_exact_overlaps,
    reference_table_rows,
)
from multiswap.san import build_san_network, san_pair_coverage
from multiswap.sim import measure_probabilities, project_qubits, run_statevector
from multiswap.states import exact_overlap, tensor_product
from multiswap.swaptest import VARIANTS, verdict_probability

from conftest import random_ensemble, random_state


def _ok(name: str, detail: str = ""):
    print(f"\nACCEPTANCE {name}: PASS {detail}")


def test_c01_exact_overlaps_match_recorded_table(d0):
    start = time.perf_counter()
    reference = reference_exact_overlaps()
    assert len(reference) == 28
    worst = 0.0
    for (i, j), expected in reference.items():
        value = d0.overlap(i, j)
        worst = max(worst, abs(value - expected))
        assert value == pytest.approx(expected, abs=5e-4), (i, j)
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    _ok("C1", f"(28 overlaps within 5e-4, worst {worst:.1e}, {elapsed:.2f}s)")


def test_c02_worked_estimate_and_erratum_annotation():
    est = estimate(TallyRecord((6, 7), t0=601, t1=403))
    assert est.estimate == pytest.approx(0.1972, abs=1e-4)
    assert est.estimate == pytest.approx(reference_estimates()[(6, 7)], abs=1e-4)
    fixture = resources.files("multiswap.data").joinpath("reference_counts.txt").read_text()
    assert "0.4441" in fixture and "0.1972" in fixture  # erratum annotated inline
    _ok("C2", "(2*601/1004 - 1 = 0.1972; 0.4441 erratum annotated in fixture)")


def test_c03_statistical_reproduction_all_ensembles(tmp_path):
    start = time.perf_counter()
    out = tmp_path / "run0"
    assert main(
        ["estimate", "bundled", "--shots", "8192", "--seed", "7",
         "--out-dir", str(out)]
    ) == 0
    with open(out / "estimates.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 28
    hits = sum(
        1
        for row in rows
        if abs(float(row["estimate"]) - float(row["exact"]))
        <= 3.0 / np.sqrt(int(row["samples"]))
    )
    assert hits / len(rows) >= 0.95
    fractions = [hits / 28]
    for idx in range(1, 10):
        result = estimate_all_overlaps(load_ensemble(idx), shots=8192, seed=7)
        assert len(result.estimates) == 28
        good = sum(
            1
            for est in result.estimates
            if abs(est.estimate - est.exact) <= 3.0 * est.stderr
        )
        assert good / 28 >= 0.95, f"ensemble d{idx}"
        fractions.append(good / 28)
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    _ok("C3", f"(10 ensembles, in-band fractions {min(fractions):.2f}..1.00, {elapsed:.1f}s)")


def test_c04_resource_counts_match_closed_forms():
    start = time.perf_counter()
    for n in (4, 8, 16, 32):
        k = n.bit_length() - 1
        new = count_resources(build_network(n)[0])
        assert new.cswap_count == (k - 1) * 2 ** (k - 1)
        assert new.ancilla_count == 2 * (k - 1)
        san = count_resources(build_san_network(n)[0])
        assert san.cswap_count == 3 * (2 ** (k - 1) - 1)
        assert san.ancilla_count == 3 * (k - 1)
    new8 = count_resources(build_network(8)[0])
    san8 = count_resources(build_san_network(8)[0])
    assert (new8.cswap_count, new8.ancilla_count) == (8, 4)
    assert (san8.cswap_count, san8.ancilla_count) == (9, 6)
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    _ok("C4", f"(n in 4..32 closed forms; anchors 8/4 and 9/6; {elapsed:.2f}s)")


def test_c05_decoder_correctness_against_statevector():
    rng = np.random.default_rng(2025)
    for n in (4, 8):
        circuit, plan = build_network(n)
        table = derive_permutation_table(plan)
        for _ in range(20):
            ensemble = random_ensemble(rng, n)
            out = run_statevector(circuit, initial_state(ensemble, plan))
            for outcome, row in table.rows.items():
                _, conditioned = project_qubits(out, range(plan.ancilla_count), outcome)
                expected = tensor_product([ensemble.state(i) for i in row])
                assert exact_overlap(conditioned, expected) >= 1 - 1e-10
    _, plan4 = build_network(4)
    slot_multiset = {
        frozenset(map(frozenset, slots))
        for slots in derive_permutation_table(plan4).slot_map.values()
    }
    reference = reference_table_rows("new_n4")
    ref_multiset = {
        frozenset(frozenset(p) for p in zip(*[iter(row)] * 2))
        for row in reference.values()
    }
    assert slot_multiset == ref_multiset
    _ok("C5", "(20 random ensembles x all outcomes, fidelity >= 1 - 1e-10)")


def test_c06_oracle_equivalence():
    start = time.perf_counter()
    rng = np.random.default_rng(404)
    for n in (4, 8):
        ensemble = random_ensemble(rng, n)
        padded, _, circuit, plan, table = plan_for(ensemble, "new", "standard")
        full = measure_probabilities(circuit, initial_state(padded, plan))
        model = oracle_distribution(padded, table)
        keys = set(full) | set(model)
        tv = 0.5 * sum(abs(full.get(k, 0.0) - model.get(k, 0.0)) for k in keys)
        assert tv <= 1e-9, n
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    _ok("C6", f"(total variation <= 1e-9 for n=4,8; {elapsed:.2f}s)")


def test_c07_pair_coverage_all_sizes():
    for n in (4, 8, 16, 32):
        table = derive_permutation_table(build_network(n)[1])
        coverage = pair_coverage_map(table)
        assert len(coverage) == n * (n - 1) // 2
        assert all(coverage.values())
    for n in (4, 8, 16):
        coverage = san_pair_coverage(n)
        assert len(coverage) == n * (n - 1) // 2
        assert all(coverage.values())
    _ok("C7", "(zero uncovered pairs, new n<=32 and baseline n<=16)")


def test_c08_precision_law(d0):
    shots = 100000
    new = estimate_all_overlaps(d0, "new", shots=shots, seed=55)
    san = estimate_all_overlaps(d0, "san", shots=shots, seed=55)
    avg_new = sum(est.samples for est in new.estimates) / 28
    avg_san = sum(est.samples for est in san.estimates) / 28
    ratio = avg_new / avg_san
    assert ratio == pytest.approx(4.0, rel=0.05)
    for n in range(2, 65):
        model = precision(n, shots)
        assert model.ratio == model.n / 2.0
    _ok("C8", f"(empirical ratio {ratio:.3f} at N=1e5; model ratio n/2 exact)")


def test_c09_recorded_counts_replay(d0):
    counts = reference_counts()
    assert counts.counts["11111010"] == 48  # duplicate rows merged
    _, _, _, _, table = plan_for(d0, "new", "standard")
    report = replay(counts, table, d0, reference=reference_estimates(), tolerance=1e-3)
    assert len(report.estimates) == 28
    assert all(est.samples > 0 for est in report.estimates)
    assert set(report.flags.values()) <= {"ok", "deviates"}
    deviating = {pair for pair, flag in report.flags.items() if flag == "deviates"}
    # three published estimate values cannot be reproduced from the published
    # counts; surfacing them as flags is the required deliverable
    assert deviating == {(1, 8), (2, 7), (3, 6)}
    assert report.flags[(6, 7)] == "ok"
    _ok("C9", "(28 pairs tallied, duplicate merged to 48, 3 deviations flagged)")


def test_c10_variant_equivalence():
    rng = np.random.default_rng(909)
    for width in (1, 2, 3):
        for _ in range(100):
            a, b = random_state(rng, width), random_state(rng, width)
            probs = [verdict_probability(v, a, b) for v in VARIANTS]
            assert max(probs) - min(probs) <= 1e-10
    _ok("C10", "(4 variants agree to 1e-10 on 100 pairs per width 1..3)")
