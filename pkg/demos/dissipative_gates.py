"""Quantum gates run by dissipation alone.

A two-node walk with forward hop sqrt(p) U and return hop sqrt(q) U^dag
settles into q |psi><psi| at node 1 plus p U|psi><psi|U^dag at node 2:
finding the walker at node 2 means the gate fired. Demonstrated for the
X gate, a Hadamard, and the two-qubit CNOT.
"""

import numpy as np

from oqwalk import build_gate_walk, find_steady_state, node_fidelity, occupation, pure_state
from oqwalk.linalg import CNOT, HADAMARD, PAULI_X, basis_ket

print("X gate, p = 3/4, input |0>")
spec = build_gate_walk(PAULI_X, 0.75)
result = find_steady_state(spec, pure_state(1, basis_ket(2, 0)))
occ = occupation(result.state)
print(f"  converged in {result.iterations} steps; "
      f"node weights {occ[1]:.4f} / {occ[2]:.4f}")
print(f"  state at node 2 vs X|0> = |1>: fidelity "
      f"{node_fidelity(result.state, 2, basis_ket(2, 1)):.12f}")

print()
print("Hadamard, p = 1/2, input |0>")
spec = build_gate_walk(HADAMARD, 0.5)
result = find_steady_state(spec, pure_state(1, basis_ket(2, 0)))
plus = (basis_ket(2, 0) + basis_ket(2, 1)) / np.sqrt(2)
print(f"  read-out probability {occupation(result.state)[2]:.4f}, "
      f"fidelity to |+>: {node_fidelity(result.state, 2, plus):.12f}")

print()
print("CNOT, p = 1/2, input |10> (control set)")
spec = build_gate_walk(CNOT, 0.5)
result = find_steady_state(spec, pure_state(1, basis_ket(4, 2)))
print(f"  read-out probability {occupation(result.state)[2]:.4f}, "
      f"fidelity to |11>: {node_fidelity(result.state, 2, basis_ket(4, 3)):.12f}")
