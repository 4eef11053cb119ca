from collections import Counter

import numpy as np
import pytest

from multiswap.estimation import (
    CountsTable,
    TallyRecord,
    analytic_estimates,
    estimate,
    estimate_all_overlaps,
    oracle_distribution,
    oracle_sample,
    plan_for,
    replay,
    run_experiment,
    tally,
)
from multiswap.fixtures import reference_counts, reference_estimates
from multiswap.builder import initial_state
from multiswap.sim import measure_probabilities
from multiswap.states import StateEnsemble, basis_state

from conftest import random_ensemble


def test_estimate_worked_example():
    est = estimate(TallyRecord((6, 7), t0=601, t1=403))
    assert est.estimate == pytest.approx(0.1972, abs=1e-4)
    assert est.samples == 1004
    assert est.stderr == pytest.approx(1 / np.sqrt(1004))


def test_estimate_extremes():
    assert estimate(TallyRecord((1, 2), 500, 0)).estimate == 1.0
    assert estimate(TallyRecord((1, 2), 250, 250)).estimate == 0.0


def test_estimate_without_samples_is_marked_not_crashed():
    est = estimate(TallyRecord((1, 2), 0, 0))
    assert est.estimate is None
    assert est.samples == 0
    assert est.stderr is None


def test_tally_worked_example_from_recorded_counts(d0):
    counts = reference_counts()
    assert counts.total_shots == 8192
    assert counts.counts["11111010"] == 48  # duplicate rows merged
    _, _, _, _, table = plan_for(d0, "new", "standard")
    records = {rec.pair: rec for rec in tally(counts, table)}
    assert records[(6, 7)].t0 == 601
    assert records[(6, 7)].t1 == 403
    assert len(records) == 28
    assert all(rec.samples > 0 for rec in records.values())


def test_tally_rejects_wrong_layout(d0):
    _, _, _, _, table = plan_for(d0, "new", "standard")
    bad = CountsTable(("s1", "s2", "r1"), "new", Counter({"000": 1}))
    with pytest.raises(ValueError, match="expected"):
        tally(bad, table)


def test_tally_uniform_synthetic_counts_cover_every_pair(d0):
    ensemble = StateEnsemble(d0.states[:4])
    _, _, _, plan, table = plan_for(ensemble, "new", "standard")
    labels = plan.measured_labels()
    keys = [format(i, "04b") for i in range(16)]
    counts = CountsTable(labels, "new", Counter({k: 5 for k in keys}))
    records = tally(counts, table)
    assert len(records) == 6
    assert all(rec.samples > 0 for rec in records)


def test_run_experiment_deterministic(d0):
    first = run_experiment(d0, "new", shots=2048, seed=11)
    second = run_experiment(d0, "new", shots=2048, seed=11)
    assert first.counts == second.counts
    assert first.labels == second.labels
    third = run_experiment(d0, "new", shots=2048, seed=12)
    assert first.counts != third.counts


def test_run_experiment_identical_basis_states_never_fail():
    ensemble = StateEnsemble(tuple(basis_state(1) for _ in range(4)))
    counts = run_experiment(ensemble, "new", shots=512, seed=3)
    for key in counts.counts:
        assert key[2:] == "00"  # both slot verdicts always succeed


def test_qubit_cap_error_names_oracle(d0):
    with pytest.raises(ValueError, match="oracle"):
        run_experiment(d0, "new", shots=16, seed=0, engine="statevector", max_qubits=10)


def test_auto_prefers_statevector_then_oracle(d0):
    result = estimate_all_overlaps(d0, shots=64, seed=0, engine="auto")
    assert result.engine == "statevector"
    result = estimate_all_overlaps(d0, shots=64, seed=0, engine="auto", max_qubits=10)
    assert result.engine == "oracle"


@pytest.mark.parametrize("n", [4, 8])
def test_oracle_distribution_matches_full_circuit(n):
    rng = np.random.default_rng(60 + n)
    ensemble = random_ensemble(rng, n)
    padded, _, circuit, plan, table = plan_for(ensemble, "new", "standard")
    full = measure_probabilities(circuit, initial_state(padded, plan))
    model = oracle_distribution(padded, table)
    keys = set(full) | set(model)
    tv = 0.5 * sum(abs(full.get(k, 0.0) - model.get(k, 0.0)) for k in keys)
    assert tv <= 1e-9


def test_oracle_identical_states_all_verdicts_zero():
    ensemble = StateEnsemble(tuple(basis_state(1) for _ in range(4)))
    _, _, _, _, table = plan_for(ensemble, "new", "standard")
    counts = oracle_sample(ensemble, table, shots=400, seed=5)
    for key in counts.counts:
        assert key[2:] == "00"


def test_oracle_scales_past_the_statevector_cap():
    rng = np.random.default_rng(9)
    ensemble = random_ensemble(rng, 64)
    result = estimate_all_overlaps(ensemble, shots=20000, seed=2, engine="oracle")
    assert result.engine == "oracle"
    assert len(result.estimates) == 64 * 63 // 2
    sampled = [est for est in result.estimates if est.samples > 0]
    assert len(sampled) == len(result.estimates)


def test_sample_bookkeeping_identities(d0):
    shots = 4096
    new = estimate_all_overlaps(d0, "new", shots=shots, seed=21)
    assert sum(est.samples for est in new.estimates) == shots * 4
    san = estimate_all_overlaps(d0, "san", shots=shots, seed=21)
    assert sum(est.samples for est in san.estimates) == shots


def test_padded_run_reports_only_real_pairs(d0):
    five = StateEnsemble(d0.states[:5])
    result = estimate_all_overlaps(five, shots=2048, seed=4)
    assert {est.pair for est in result.estimates} == {
        (i, j) for i in range(1, 6) for j in range(i + 1, 6)
    }


def test_estimates_converge_with_shot_count(d0):
    worst = []
    for shots in (1000, 10000, 100000):
        result = estimate_all_overlaps(d0, shots=shots, seed=31)
        worst.append(
            max(abs(est.estimate - est.exact) for est in result.estimates)
        )
        # every pair within its own 3 sigma band
        assert all(
            abs(est.estimate - est.exact) <= 3 * est.stderr
            for est in result.estimates
        )
    assert worst[-1] < worst[0]


def test_estimator_is_unbiased_across_seeds():
    rng = np.random.default_rng(77)
    ensemble = random_ensemble(rng, 4)
    _, _, _, _, table = plan_for(ensemble, "new", "standard")
    shots, seeds = 2000, 60
    sums = {pair: 0.0 for pair in ensemble.pairs()}
    for seed in range(seeds):
        counts = oracle_sample(ensemble, table, shots, seed)
        for rec in tally(counts, table):
            sums[rec.pair] += 2.0 * rec.t0 / rec.samples - 1.0
    for (i, j), total in sums.items():
        o = ensemble.overlap(i, j)
        mean = total / seeds
        # per-seed sd is at most 1/sqrt(m); the mean tightens by sqrt(seeds)
        m = shots / 2
        assert abs(mean - o) <= 3.0 / np.sqrt(m * seeds)


def test_analytic_estimates_sit_on_the_diagonal(d0):
    for est in analytic_estimates(d0):
        assert est.estimate == pytest.approx(est.exact, abs=1e-10)


def test_replay_round_trips_run_counts(d0):
    result = estimate_all_overlaps(d0, shots=4096, seed=13)
    _, _, _, _, table = plan_for(d0, "new", "standard")
    report = replay(result.counts, table, d0)
    assert report.total_shots == 4096
    by_pair = {est.pair: est for est in report.estimates}
    for est in result.estimates:
        assert by_pair[est.pair].estimate == est.estimate
        assert by_pair[est.pair].samples == est.samples


def test_replay_recorded_run_against_published_estimates(d0):
    counts = reference_counts()
    _, _, _, _, table = plan_for(d0, "new", "standard")
    report = replay(counts, table, d0, reference=reference_estimates(), tolerance=1e-3)
    assert len(report.estimates) == 28
    assert report.total_shots == 8192
    # most published estimates are reproduced from the published counts
    # bit-for-bit; the handful that are not get flagged, which is the point
    agreeing = [p for p, f in report.flags.items() if f == "ok"]
    assert len(agreeing) >= 25
    assert report.flags[(6, 7)] == "ok"


def test_replay_size_mismatch(d0):
    counts = reference_counts()
    small = StateEnsemble(d0.states[:4])
    _, _, _, _, table = plan_for(d0, "new", "standard")
    with pytest.raises(ValueError, match="registers"):
        replay(counts, table, small)


def test_destructive_final_variant_pipeline(d0):
    ensemble = StateEnsemble(d0.states[:4])
    result = estimate_all_overlaps(
        ensemble, shots=200000, seed=19, final_variant="destructive"
    )
    assert len(result.estimates) == 6
    for est in result.estimates:
        assert abs(est.estimate - est.exact) <= 4 * est.stderr
