"""OpenQASM 2.0 export for circuit IRs."""

from __future__ import annotations

from .circuits import CircuitIR

_SIMPLE = {"H": "h", "X": "x", "Z": "z", "CNOT": "cx", "SWAP": "swap"}


def to_qasm(circuit: CircuitIR, *, decompose_cswap: bool = False) -> str:
    """Serialize to OpenQASM 2.0 with one quantum register.

    CSWAP is emitted as the library ``cswap`` gate by default, or expanded to
    cx/ccx with ``decompose_cswap=True`` (SWAP likewise expands to three cx).
    CCZ is always expanded to h/ccx/h since the standard header lacks it.
    """
    lines = ['OPENQASM 2.0;', 'include "qelib1.inc";', f"qreg q[{circuit.qubit_count}];"]
    if circuit.measured:
        lines.append(f"creg c[{len(circuit.measured)}];")
    for gate in circuit.gates:
        lines += _gate_lines(gate.kind, gate.qubits, decompose_cswap)
    for bit, (qubit, _) in enumerate(circuit.measured):
        lines.append(f"measure q[{qubit}] -> c[{bit}];")
    return "\n".join(lines) + "\n"


def _gate_lines(kind: str, qubits: tuple[int, ...], decompose: bool) -> list[str]:
    def fmt(name, *qs):
        return f"{name} {','.join(f'q[{q}]' for q in qs)};"

    if kind in _SIMPLE and not (kind == "SWAP" and decompose):
        return [fmt(_SIMPLE[kind], *qubits)]
    if kind == "SWAP":
        a, b = qubits
        return [fmt("cx", a, b), fmt("cx", b, a), fmt("cx", a, b)]
    if kind == "CCZ":
        c1, c2, t = qubits
        return [fmt("h", t), fmt("ccx", c1, c2, t), fmt("h", t)]
    if kind == "CSWAP":
        c, a, b = qubits
        if not decompose:
            return [fmt("cswap", c, a, b)]
        return [fmt("cx", b, a), fmt("ccx", c, a, b), fmt("cx", b, a)]
    raise ValueError(f"cannot export gate kind {kind!r}")
