"""Sorting two unpolarized qubits into Bell states by position.

The four-node grid runs two independent parity-sorting walks: the
horizontal one separates the ZZ parity, the vertical one the XX parity.
An unpolarized two-qubit pair dropped on any node ends up as an even
mixture of the four Bell states, each pinned to its own corner, so a
position measurement hands you a known Bell pair.
"""

from oqwalk import (
    BELL_NODE_STATES,
    build_bell_grid,
    find_steady_state,
    mixed_state,
    node_fidelity,
    occupation,
)

spec = build_bell_grid()
names = {"UL": "psi-", "UR": "phi-", "DL": "psi+", "DR": "phi+"}

for start in ("UL", "DR"):
    result = find_steady_state(spec, mixed_state(start, 4))
    occ = occupation(result.state)
    print(f"unpolarized pair started at {start} "
          f"(settled in {result.iterations} steps):")
    for node in spec.nodes:
        fid = node_fidelity(result.state, node, BELL_NODE_STATES[node])
        print(f"  corner {node}: weight {occ[node]:.4f}, "
              f"fidelity to {names[node]}: {fid:.12f}")
    print()

print("a Bell state is already home: psi- at UL survives one step intact")
from oqwalk import pure_state, step  # noqa: E402

state = pure_state("UL", BELL_NODE_STATES["UL"])
after = step(spec, state)
print(f"  occupation after one step: {occupation(after)}")
