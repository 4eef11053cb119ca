"""The four-input building block: two ancillas route all six pairs.

Two controlled swap fans act on the register groups: rule 1 exchanges the
2nd and 3rd groups, rule 2 the 2nd and 4th. Conditioning on the two ancilla
bits leaves the registers holding a known permutation of the inputs, so the
two final swap-test slots (q1,q2) and (q3,q4) reach every pair.
"""

from multiswap.builder import (
    build_u4,
    build_un,
    derive_permutation_table,
    initial_state,
    pair_coverage_map,
)
from multiswap.fixtures import load_ensemble
from multiswap.qasm import to_qasm
from multiswap.sim import project_qubits, run_statevector
from multiswap.states import StateEnsemble, exact_overlap, tensor_product

ensemble = StateEnsemble(load_ensemble(0).states[:4])

circuit, plan = build_u4()
table = derive_permutation_table(plan)

print("outcome  registers      slot pairs")
for outcome in table.outcomes():
    row = "".join(str(i) for i in table.rows[outcome])
    print(f"  {outcome}     {row}          {table.slot_map[outcome]}")

print("\npair coverage over (outcome, slot):")
for pair, entries in pair_coverage_map(table).items():
    print(f"  {pair}: {entries}")

print("\nstatevector check: conditioning on each outcome yields the permuted inputs")
output = run_statevector(circuit, initial_state(ensemble, plan))
for outcome, row in table.rows.items():
    prob, conditioned = project_qubits(output, range(plan.ancilla_count), outcome)
    expected = tensor_product([ensemble.state(i) for i in row])
    fidelity = exact_overlap(conditioned, expected)
    print(f"  outcome {outcome}: probability {prob:.4f}, fidelity to expectation {fidelity:.12f}")

full, _ = build_un(4, 1, "standard")
print("\nfull 4-state circuit as OpenQASM 2.0:\n")
print(to_qasm(full))
