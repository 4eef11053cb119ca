"""Exact dense statevector execution, probability extraction, shot sampling.

Qubit 0 is the most significant bit of a basis index, so the joint state of
registers listed in order is their Kronecker product in that order.

Shot sampling uses the counter-based Philox generator keyed by the run seed;
shot i consumes the i-th uniform of the stream, so a run partitioned across
workers by shot index reproduces the serial result exactly.
"""

from __future__ import annotations

from collections import Counter

import numpy as np

from .circuits import CircuitIR, Gate
from .states import PureState

# Dense simulation only; beyond this many qubits use the permutation oracle
# in multiswap.estimation instead.
MAX_QUBITS = 26


def _check_size(qubit_count: int, max_qubits: int):
    if qubit_count > max_qubits:
        raise ValueError(
            f"circuit has {qubit_count} qubits, above the dense statevector cap "
            f"of {max_qubits}; use the permutation oracle engine for larger runs"
        )


def _apply_gate(psi: np.ndarray, gate: Gate) -> np.ndarray:
    """Apply gate to psi shaped [2]*Q, targets given by gate.qubits."""
    m = len(gate.qubits)
    u = gate.matrix.reshape((2,) * (2 * m))
    psi = np.tensordot(u, psi, axes=(tuple(range(m, 2 * m)), gate.qubits))
    # tensordot leaves the gate's output axes first; put them back in place
    return np.moveaxis(psi, tuple(range(m)), gate.qubits)


def run_statevector(
    circuit: CircuitIR, input_state: PureState, *, max_qubits: int = MAX_QUBITS
) -> PureState:
    """Evolve the input through every gate and return the exact output state."""
    if input_state.width != circuit.qubit_count:
        raise ValueError(
            f"input width {input_state.width} != circuit qubits {circuit.qubit_count}"
        )
    _check_size(circuit.qubit_count, max_qubits)
    psi = input_state.amplitudes.reshape((2,) * circuit.qubit_count).copy()
    for gate in circuit.gates:
        psi = _apply_gate(psi, gate)
    return PureState(psi.reshape(-1), circuit.qubit_count)


def measured_distribution(
    circuit: CircuitIR, input_state: PureState, *, max_qubits: int = MAX_QUBITS
) -> tuple[tuple[str, ...], np.ndarray]:
    """Exact marginal over the measured qubits, in declared label order.

    Returns (labels, p) where p[i] is the probability of the bitstring whose
    leftmost bit (first label) is the most significant bit of i.
    """
    if not circuit.measured:
        raise ValueError("circuit declares no measured qubits")
    out = run_statevector(circuit, input_state, max_qubits=max_qubits)
    q = circuit.qubit_count
    probs = np.abs(out.amplitudes.reshape((2,) * q)) ** 2
    keep = list(circuit.measured_qubits)
    drop = tuple(i for i in range(q) if i not in set(keep))
    if drop:
        probs = probs.sum(axis=drop)
        # axes of the reduced tensor follow the original qubit order
        remaining = [i for i in range(q) if i not in set(drop)]
        order = [remaining.index(qb) for qb in keep]
    else:
        order = [list(range(q)).index(qb) for qb in keep]
    probs = np.transpose(probs, order).reshape(-1)
    return circuit.labels, probs


def bitstring(index: int, nbits: int) -> str:
    return format(index, f"0{nbits}b")


def measure_probabilities(
    circuit: CircuitIR, input_state: PureState, *, max_qubits: int = MAX_QUBITS
) -> dict[str, float]:
    """Outcome distribution over measured bits as {bitstring: probability}."""
    labels, probs = measured_distribution(circuit, input_state, max_qubits=max_qubits)
    n = len(labels)
    return {bitstring(i, n): float(p) for i, p in enumerate(probs) if p > 0.0}


def shot_rng(seed: int) -> np.random.Generator:
    """The run's named generator: counter-based Philox keyed by the seed."""
    return np.random.Generator(np.random.Philox(key=np.uint64(seed)))


def sample_from_distribution(probs: np.ndarray, shots: int, seed: int) -> np.ndarray:
    """Draw i.i.d. outcome indices, one uniform per shot index."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    total = probs.sum()
    if not np.isclose(total, 1.0, atol=1e-9):
        raise ValueError(f"probabilities sum to {total}, not 1")
    cdf = np.cumsum(probs)
    cdf[-1] = 1.0
    u = shot_rng(seed).random(shots)
    return np.searchsorted(cdf, u, side="right")


def sample_shots(
    circuit: CircuitIR,
    input_state: PureState,
    shots: int,
    seed: int,
    *,
    max_qubits: int = MAX_QUBITS,
) -> Counter:
    """Multiset of measured bitstrings drawn i.i.d. from the exact marginal."""
    labels, probs = measured_distribution(circuit, input_state, max_qubits=max_qubits)
    idx = sample_from_distribution(probs, shots, seed)
    values, counts = np.unique(idx, return_counts=True)
    n = len(labels)
    return Counter({bitstring(int(v), n): int(c) for v, c in zip(values, counts)})


def project_qubits(
    state: PureState, qubits, bits: str
) -> tuple[float, PureState | None]:
    """Condition on measuring ``qubits`` (in the given order) as ``bits``.

    Returns (probability, normalized post-measurement state on the remaining
    qubits in their original order), or (0.0, None) for an impossible outcome.
    """
    qubits = list(qubits)
    if len(qubits) != len(bits):
        raise ValueError("one bit per projected qubit required")
    q = state.width
    psi = state.amplitudes.reshape((2,) * q)
    index = [slice(None)] * q
    for qb, b in zip(qubits, bits):
        index[qb] = int(b)
    sub = psi[tuple(index)].reshape(-1)
    prob = float(np.sum(np.abs(sub) ** 2))
    if prob <= 0.0:
        return 0.0, None
    return prob, PureState(sub / np.sqrt(prob), q - len(qubits))
