"""End-to-end overlap estimation: shot runs, tallying, decoding, replay.

Two engines produce shot counts. The statevector engine simulates the full
circuit exactly and samples the measured marginal. The permutation-oracle
engine exploits the network's structure: the ancilla marginal is exactly
uniform, and conditioned on an ancilla outcome each slot is an independent
swap test on a known pair, so counts can be drawn from closed-form
Bernoullis with no statevector. The two induced distributions are equal,
which the test suite checks to machine precision.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import san as san_mod
from .builder import (
    LayoutPlan,
    PermutationTable,
    build_un,
    derive_permutation_table,
    initial_state,
    pad_inputs,
    pair_coverage_map,
)
from .circuits import CircuitIR
from .sim import MAX_QUBITS, measured_distribution, sample_from_distribution, shot_rng
from .states import StateEnsemble
from .swaptest import destructive_decode

SCHEMES = ("new", "san")
ENGINES = ("statevector", "oracle", "auto")

_ORACLE_CHUNK = 1 << 15


@dataclass(frozen=True)
class CountsTable:
    """Shot counts keyed by outcome bitstring (ancilla bits, then result bits)."""

    labels: tuple[str, ...]
    scheme: str
    counts: Counter

    def __post_init__(self):
        width = len(self.labels)
        for key, cnt in self.counts.items():
            if len(key) != width or set(key) - {"0", "1"}:
                raise ValueError(f"malformed outcome key {key!r} for {width} bits")
            if cnt < 0:
                raise ValueError("counts must be non-negative")

    @property
    def total_shots(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True)
class TallyRecord:
    """Verdict counts pooled over every (outcome, slot) entry testing a pair."""

    pair: tuple[int, int]
    t0: int
    t1: int
    entries: tuple[tuple[str, int], ...] = ()

    @property
    def samples(self) -> int:
        return self.t0 + self.t1


@dataclass(frozen=True)
class OverlapEstimate:
    """Estimated vs exact overlap for one pair; estimate is None if unsampled."""

    pair: tuple[int, int]
    exact: float | None
    estimate: float | None
    samples: int
    stderr: float | None

    def __post_init__(self):
        if self.estimate is not None and not -1.0 <= self.estimate <= 1.0 + 1e-12:
            raise ValueError(f"estimate {self.estimate} outside [-1, 1]")


def estimate(record: TallyRecord, exact: float | None = None) -> OverlapEstimate:
    """2*t0/(t0+t1) - 1 with a 1/sqrt(m) error bound; never crashes on m=0."""
    m = record.samples
    if m == 0:
        return OverlapEstimate(record.pair, exact, None, 0, None)
    value = 2.0 * record.t0 / m - 1.0
    return OverlapEstimate(record.pair, exact, value, m, 1.0 / np.sqrt(m))


def plan_for(
    ensemble: StateEnsemble, scheme: str = "new", final_variant: str = "standard"
) -> tuple[StateEnsemble, tuple[int, ...], CircuitIR, LayoutPlan, PermutationTable]:
    """Pad the ensemble, build its circuit, and derive the decoder table."""
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")
    padded, pad_labels = pad_inputs(ensemble)
    if scheme == "new":
        circuit, plan = build_un(padded.n, padded.width, final_variant)
    else:
        circuit, plan = san_mod.build_san_un(padded.n, padded.width, final_variant)
    return padded, pad_labels, circuit, plan, derive_permutation_table(plan)


def _slot_verdicts(bits: str, plan_slots: int, width: int, destructive: bool):
    """Per-slot verdict bits from the result portion of an outcome string."""
    if not destructive:
        return [int(b) for b in bits]
    w = width
    out = []
    for i in range(plan_slots):
        seg = bits[2 * i * w : 2 * (i + 1) * w]
        out.append(destructive_decode(seg, w))
    return out


def tally(
    counts: CountsTable,
    table: PermutationTable,
    *,
    width: int = 1,
    real_labels: set[int] | None = None,
) -> list[TallyRecord]:
    """Pool verdict counts per unordered real pair across outcomes and slots.

    The ancilla prefix of each outcome selects the permutation row; the
    slot's verdict bit then increments t0 or t1 of the slot's pair. Ordered
    duplicates such as (1,4) and (4,1) pool together: swap-test verdicts are
    symmetric in the two registers.
    """
    d = table.ancilla_count
    n_slots = len(table.slots)
    destructive = any(lbl.startswith("q") for lbl in counts.labels[d:])
    expected = d + (2 * n_slots * width if destructive else n_slots)
    if len(counts.labels) != expected:
        raise ValueError(
            f"counts layout has {len(counts.labels)} bits, expected {expected}"
        )
    real = real_labels if real_labels is not None else set(range(1, table.n + 1))
    t0: Counter = Counter()
    t1: Counter = Counter()
    for key, cnt in counts.counts.items():
        if len(key) != expected:
            raise ValueError(f"outcome {key!r} has wrong length")
        prefix, rest = key[:d], key[d:]
        pairs = table.slot_map[prefix]
        verdicts = _slot_verdicts(rest, n_slots, width, destructive)
        for (a, b), v in zip(pairs, verdicts):
            if a not in real or b not in real:
                continue
            pair = (min(a, b), max(a, b))
            if v == 0:
                t0[pair] += cnt
            else:
                t1[pair] += cnt
    coverage = pair_coverage_map(table, tuple(sorted(set(range(1, table.n + 1)) - real)))
    return [
        TallyRecord(pair, t0.get(pair, 0), t1.get(pair, 0), tuple(entries))
        for pair, entries in sorted(coverage.items())
    ]


def _overlap_lookup(ensemble: StateEnsemble) -> dict[tuple[int, int], float]:
    return {
        (i, j): ensemble.overlap(i, j)
        for i, j in itertools.combinations(range(1, ensemble.n + 1), 2)
    }


def _oracle_success_matrix(
    ensemble: StateEnsemble, table: PermutationTable
) -> tuple[list[str], np.ndarray]:
    """P(verdict=0) per (ancilla outcome, slot) from exact overlaps."""
    overlaps = _overlap_lookup(ensemble)
    outcomes = table.outcomes()
    p0 = np.empty((len(outcomes), len(table.slots)))
    for r, outcome in enumerate(outcomes):
        for c, (a, b) in enumerate(table.slot_map[outcome]):
            key = (min(a, b), max(a, b))
            p0[r, c] = (1.0 + overlaps[key]) / 2.0
    return outcomes, p0


def oracle_sample(
    ensemble: StateEnsemble, table: PermutationTable, shots: int, seed: int
) -> CountsTable:
    """Sample counts from the closed-form model: uniform ancilla outcome,
    then one Bernoulli verdict per slot. Scales to register counts far beyond
    the dense statevector cap."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    if ensemble.n != table.n:
        raise ValueError("ensemble size does not match the table (pad first)")
    outcomes, p0 = _oracle_success_matrix(ensemble, table)
    d = table.ancilla_count
    n_slots = len(table.slots)
    weights = 1 << np.arange(n_slots - 1, -1, -1, dtype=np.int64)
    rng = shot_rng(seed)
    tallies: Counter = Counter()
    for start in range(0, shots, _ORACLE_CHUNK):
        m = min(_ORACLE_CHUNK, shots - start)
        anc = rng.integers(0, 1 << d, size=m)
        fails = (rng.random((m, n_slots)) >= p0[anc]).astype(np.int64)
        keys = (anc.astype(np.int64) << n_slots) | (fails @ weights)
        values, cnts = np.unique(keys, return_counts=True)
        for v, c in zip(values, cnts):
            tallies[int(v)] += int(c)
    nbits = d + n_slots
    counts = Counter({format(key, f"0{nbits}b"): c for key, c in tallies.items()})
    labels = tuple(f"s{i + 1}" for i in range(d)) + tuple(
        f"r{i + 1}" for i in range(n_slots)
    )
    return CountsTable(labels, "new" if len(table.slots) > 1 else "san", counts)


def oracle_distribution(
    ensemble: StateEnsemble, table: PermutationTable
) -> dict[str, float]:
    """The oracle's analytic outcome distribution (small circuits only)."""
    outcomes, p0 = _oracle_success_matrix(ensemble, table)
    d = table.ancilla_count
    n_slots = len(table.slots)
    if d + n_slots > 24:
        raise ValueError("analytic distribution too large to enumerate")
    dist: dict[str, float] = {}
    base = 1.0 / (1 << d)
    for r, outcome in enumerate(outcomes):
        probs = np.array([1.0])
        for c in range(n_slots):
            probs = np.outer(probs, [p0[r, c], 1.0 - p0[r, c]]).reshape(-1)
        for idx, p in enumerate(probs):
            dist[outcome + format(idx, f"0{n_slots}b")] = base * float(p)
    return dist


def _run_counts(
    padded: StateEnsemble,
    circuit: CircuitIR,
    plan: LayoutPlan,
    table: PermutationTable,
    scheme: str,
    shots: int,
    seed: int,
    engine: str,
    max_qubits: int,
) -> tuple[CountsTable, str]:
    if shots < 1:
        raise ValueError("shots must be >= 1")
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")
    if engine == "auto":
        engine = "statevector" if plan.total_qubits <= max_qubits else "oracle"
    if engine == "oracle":
        counts = oracle_sample(padded, table, shots, seed)
        return CountsTable(counts.labels, scheme, counts.counts), engine
    if plan.total_qubits > max_qubits:
        raise ValueError(
            f"{plan.total_qubits} qubits exceed the statevector cap of "
            f"{max_qubits}; re-run with engine='oracle'"
        )
    labels, probs = measured_distribution(
        circuit, initial_state(padded, plan), max_qubits=max_qubits
    )
    idx = sample_from_distribution(probs, shots, seed)
    values, cnts = np.unique(idx, return_counts=True)
    nbits = len(labels)
    counts = Counter(
        {format(int(v), f"0{nbits}b"): int(c) for v, c in zip(values, cnts)}
    )
    return CountsTable(labels, scheme, counts), engine


def run_experiment(
    ensemble: StateEnsemble,
    scheme: str = "new",
    shots: int = 8192,
    seed: int = 0,
    final_variant: str = "standard",
    engine: str = "auto",
    *,
    max_qubits: int = MAX_QUBITS,
) -> CountsTable:
    """Build the scheme's circuit and return sampled counts.

    ``engine="auto"`` uses the dense statevector whenever the circuit fits
    under the qubit cap and the permutation oracle otherwise. The oracle
    engine always emits standard-variant verdict bits.
    """
    padded, _, circuit, plan, table = plan_for(ensemble, scheme, final_variant)
    counts, _ = _run_counts(
        padded, circuit, plan, table, scheme, shots, seed, engine, max_qubits
    )
    return counts


@dataclass(frozen=True)
class RunResult:
    """Everything a finished estimation run produced."""

    counts: CountsTable
    estimates: tuple[OverlapEstimate, ...]
    plan: LayoutPlan
    pad_labels: tuple[int, ...]
    engine: str


def estimate_all_overlaps(
    ensemble: StateEnsemble,
    scheme: str = "new",
    shots: int = 8192,
    seed: int = 0,
    final_variant: str = "standard",
    engine: str = "auto",
    *,
    max_qubits: int = MAX_QUBITS,
) -> RunResult:
    """One-call pipeline: run, tally, and estimate every real pair."""
    padded, pad_labels, circuit, plan, table = plan_for(ensemble, scheme, final_variant)
    counts, used_engine = _run_counts(
        padded, circuit, plan, table, scheme, shots, seed, engine, max_qubits
    )
    real = set(range(1, padded.n + 1)) - set(pad_labels)
    records = tally(counts, table, width=padded.width, real_labels=real)
    overlaps = _overlap_lookup(padded)
    estimates = tuple(estimate(rec, overlaps[rec.pair]) for rec in records)
    return RunResult(counts, estimates, plan, pad_labels, used_engine)


def analytic_estimates(
    ensemble: StateEnsemble, scheme: str = "new"
) -> tuple[OverlapEstimate, ...]:
    """Noise-free estimates from exact per-slot probabilities (no sampling)."""
    padded, pad_labels, _, plan, table = plan_for(ensemble, scheme, "standard")
    coverage = pair_coverage_map(table, pad_labels)
    overlaps = _overlap_lookup(padded)
    out = []
    for pair in sorted(coverage):
        p0 = (1.0 + overlaps[pair]) / 2.0
        out.append(OverlapEstimate(pair, overlaps[pair], 2.0 * p0 - 1.0, 0, None))
    return tuple(out)


@dataclass(frozen=True)
class ReplayReport:
    """Re-derived estimates for recorded counts, with discrepancy flags."""

    estimates: tuple[OverlapEstimate, ...]
    reference: dict[tuple[int, int], float]
    flags: dict[tuple[int, int], str]
    total_shots: int
    tolerance: float


def replay(
    counts: CountsTable,
    table: PermutationTable,
    ensemble: StateEnsemble,
    *,
    pad_labels: tuple[int, ...] = (),
    width: int = 1,
    reference: dict[tuple[int, int], float] | None = None,
    tolerance: float = 0.05,
) -> ReplayReport:
    """Decode recorded counts into per-pair estimates and flag deviations.

    ``reference`` defaults to the ensemble's exact overlaps; a pair is
    flagged "deviates" when |estimate - reference| exceeds ``tolerance`` and
    "unsampled" when no shot reached it.
    """
    padded, auto_pads = pad_inputs(ensemble)
    pad_labels = pad_labels or auto_pads
    if padded.n != table.n:
        raise ValueError(
            f"counts are for {table.n} registers but states give {padded.n}"
        )
    real = set(range(1, padded.n + 1)) - set(pad_labels)
    records = tally(counts, table, width=width, real_labels=real)
    overlaps = _overlap_lookup(padded)
    ref = reference if reference is not None else overlaps
    estimates = []
    flags = {}
    for rec in records:
        est = estimate(rec, overlaps[rec.pair])
        estimates.append(est)
        if est.estimate is None:
            flags[rec.pair] = "unsampled"
        elif rec.pair in ref and abs(est.estimate - ref[rec.pair]) > tolerance:
            flags[rec.pair] = "deviates"
        else:
            flags[rec.pair] = "ok"
    return ReplayReport(tuple(estimates), dict(ref), flags, counts.total_shots, tolerance)
