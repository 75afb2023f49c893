"""Open-quantum-walk engine: graph specs, block evolution, steady states.

An open quantum walk lives on a finite directed graph. Each edge
(source -> target) carries a transition operator acting on the walker's
internal d-dimensional Hilbert space, and each node's outgoing family
must satisfy the completeness relation sum_K K^dag K = I so that total
probability is conserved. The walker's state is a collection of
unnormalized positive blocks, one per occupied node; the trace of a
block is the occupation probability of its node.

One step maps the block at node i to

    rho_i'  =  sum over incoming edges (j -> i) of  K_ji rho_j K_ji^dag

which keeps the state block-diagonal in position: position coherences
can never build up, so storage stays at O(V d^2) instead of O((V d)^2).
The dense full-space map (``full_map_step``) implements the same
dynamics on the complete V*d x V*d density matrix and is kept as a
brute-force cross-check of the block evolution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable

import numpy as np

from .linalg import DEFAULT_TOL, as_operator, trace_distance

Node = Hashable

# Blocks with less occupation weight than this are dropped after each
# step; keeps line-walk storage proportional to the reachable window.
PRUNE_TRACE = 1e-15


@dataclass(frozen=True)
class WalkSpec:
    """A walk graph with one transition operator per directed edge.

    nodes       ordered node labels (order fixes all summation and
                serialization order; builders list them sorted)
    dim         internal Hilbert-space dimension, shared by all operators
    transitions (source, target) -> dim x dim complex matrix; absent
                edges are implicit zero operators
    """

    nodes: tuple
    dim: int
    transitions: dict
    _incoming: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        nodes = tuple(self.nodes)
        if not nodes:
            raise ValueError("a walk needs at least one node")
        if len(set(nodes)) != len(nodes):
            raise ValueError("duplicate node labels")
        if self.dim < 1:
            raise ValueError("internal dimension must be >= 1")
        node_set = set(nodes)
        clean = {}
        for (src, tgt), op in self.transitions.items():
            if src not in node_set or tgt not in node_set:
                raise ValueError(f"edge ({src!r} -> {tgt!r}) uses unknown nodes")
            m = as_operator(op)
            if m.shape[0] != self.dim:
                raise ValueError(
                    f"operator on edge ({src!r} -> {tgt!r}) has dimension "
                    f"{m.shape[0]}, expected {self.dim}")
            m = m.copy()
            m.setflags(write=False)
            clean[(src, tgt)] = m
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "transitions", clean)
        # Incoming edges per target, sorted by source position in the
        # node order; step() sums in exactly this order so results are
        # bitwise reproducible.
        order = {n: k for k, n in enumerate(nodes)}
        incoming: dict = {n: [] for n in nodes}
        for (src, tgt), op in clean.items():
            incoming[tgt].append((src, op))
        for tgt in incoming:
            incoming[tgt].sort(key=lambda pair: order[pair[0]])
        object.__setattr__(self, "_incoming", incoming)

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    def incoming(self, target: Node) -> list:
        """(source, operator) pairs feeding the target node, in node order."""
        return self._incoming[target]

    def outgoing(self, source: Node) -> list:
        """(target, operator) pairs leaving the source node, in node order."""
        order = {n: k for k, n in enumerate(self.nodes)}
        out = [(tgt, op) for (src, tgt), op in self.transitions.items() if src == source]
        out.sort(key=lambda pair: order[pair[0]])
        return out


@dataclass
class ValidationReport:
    """Per-node completeness residuals for a WalkSpec."""

    residuals: dict
    tol: float

    @property
    def ok(self) -> bool:
        return all(r <= self.tol for r in self.residuals.values())

    def worst(self) -> float:
        return max(self.residuals.values())

    def __str__(self) -> str:
        lines = [f"completeness tolerance: {self.tol:g}"]
        for node, r in self.residuals.items():
            flag = "ok" if r <= self.tol else "FAIL"
            lines.append(f"  node {node!r}: residual {r:.3e} [{flag}]")
        lines.append("accepted" if self.ok else "rejected")
        return "\n".join(lines)


def validate_walk(spec: WalkSpec, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Check the per-node completeness relation sum_K K^dag K = I.

    The sum at each source node runs over its stored outgoing edges.
    A node with no outgoing edges has residual 1 (the zero map loses
    all probability).
    """
    residuals = {}
    for src in spec.nodes:
        acc = np.zeros((spec.dim, spec.dim), dtype=complex)
        for (s, _t), op in spec.transitions.items():
            if s == src:
                acc += op.conj().T @ op
        residuals[src] = float(np.max(np.abs(acc - np.eye(spec.dim))))
    return ValidationReport(residuals=residuals, tol=tol)


@dataclass
class WalkerState:
    """Unnormalized positive blocks keyed by node; Tr(block) = occupation."""

    blocks: dict

    def __post_init__(self):
        clean = {}
        for node, m in self.blocks.items():
            a = as_operator(m)
            a = a.copy()
            a.setflags(write=False)
            clean[node] = a
        self.blocks = clean

    def total_trace(self) -> float:
        return float(sum(np.trace(b).real for b in self.blocks.values()))

    def block(self, node: Node) -> np.ndarray | None:
        return self.blocks.get(node)


def pure_state(node: Node, psi: np.ndarray) -> WalkerState:
    """Walker localized at one node with a pure internal state."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    return WalkerState({node: np.outer(psi, psi.conj())})


def mixed_state(node: Node, dim: int) -> WalkerState:
    """Walker localized at one node with the maximally mixed internal state."""
    return WalkerState({node: np.eye(dim, dtype=complex) / dim})


def state_trace_distance(a: WalkerState, b: WalkerState) -> float:
    """Sum of per-node trace distances; missing blocks count as zero.

    Equals the trace distance between the corresponding block-diagonal
    full-space density matrices.
    """
    total = 0.0
    zeros: dict[int, np.ndarray] = {}
    for node in a.blocks.keys() | b.blocks.keys():
        x = a.blocks.get(node)
        y = b.blocks.get(node)
        if x is None and y is None:
            continue
        ref = x if x is not None else y
        z = zeros.setdefault(ref.shape[0], np.zeros_like(ref))
        total += trace_distance(x if x is not None else z,
                                y if y is not None else z)
    return total


def _check_state(spec: WalkSpec, state: WalkerState) -> None:
    for node, block in state.blocks.items():
        if node not in spec._incoming:
            raise ValueError(f"state occupies unknown node {node!r}")
        if block.shape[0] != spec.dim:
            raise ValueError(
                f"block at node {node!r} has dimension {block.shape[0]}, "
                f"spec expects {spec.dim}")


def step(spec: WalkSpec, state: WalkerState) -> WalkerState:
    """Advance the walk by one step.

    The block landing on each target node is the sum over its incoming
    edges of K rho_source K^dag, accumulated in node order. Blocks whose
    trace falls below PRUNE_TRACE are dropped.
    """
    _check_state(spec, state)
    new_blocks = {}
    for target in spec.nodes:
        acc = None
        for source, op in spec.incoming(target):
            rho = state.blocks.get(source)
            if rho is None:
                continue
            term = op @ rho @ op.conj().T
            acc = term if acc is None else acc + term
        if acc is not None and float(np.trace(acc).real) > PRUNE_TRACE:
            new_blocks[target] = acc
    return WalkerState(new_blocks)


def run(spec: WalkSpec, initial: WalkerState, n_steps: int,
        record_every: int = 1) -> list[tuple[int, WalkerState]]:
    """Evolve for n_steps, recording (step index, state) snapshots.

    Snapshot 0 is the initial state; afterwards one snapshot is taken
    every record_every steps, and the final state is always included.
    """
    if n_steps < 0:
        raise ValueError("n_steps must be >= 0")
    if record_every < 1:
        raise ValueError("record_every must be >= 1")
    trajectory = [(0, initial)]
    state = initial
    for k in range(1, n_steps + 1):
        state = step(spec, state)
        if k % record_every == 0 or k == n_steps:
            trajectory.append((k, state))
    return trajectory


@dataclass
class SteadyStateResult:
    """Outcome of fixed-point iteration.

    converged is False when max_iter steps never brought two successive
    states within tol of each other; that is a legitimate outcome (a
    translation-invariant line walk has no fixed point), so it is
    reported as a flag rather than raised.
    """

    state: WalkerState
    iterations: int
    converged: bool
    residual: float


def find_steady_state(spec: WalkSpec, initial: WalkerState,
                      tol: float = DEFAULT_TOL,
                      max_iter: int = 10 ** 6) -> SteadyStateResult:
    """Iterate the walk map until two successive states agree within tol.

    Returns the first iterate whose total trace distance to its
    predecessor is <= tol, with the number of steps applied.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    state = initial
    residual = float("inf")
    for n in range(1, max_iter + 1):
        nxt = step(spec, state)
        residual = state_trace_distance(nxt, state)
        if residual <= tol:
            return SteadyStateResult(nxt, n, True, residual)
        state = nxt
    return SteadyStateResult(state, max_iter, False, residual)


# ----------------------------------------------------------------------
# Dense full-space oracle.
#
# The full density matrix lives on (internal) x (position) with the
# internal index as the most significant factor: entry order is
# (a, i), (b, j) -> [a * V + i, b * V + j] for internal a, b and
# position i, j. A block-diagonal state embeds as
# sum_i kron(rho_i, E_ii).
# ----------------------------------------------------------------------

def _node_index(spec: WalkSpec) -> dict:
    return {n: k for k, n in enumerate(spec.nodes)}


def to_full_density(spec: WalkSpec, state: WalkerState) -> np.ndarray:
    """Embed a block state as a dense V*d x V*d density matrix."""
    _check_state(spec, state)
    v = spec.node_count
    d = spec.dim
    idx = _node_index(spec)
    full = np.zeros((d * v, d * v), dtype=complex)
    view = full.reshape(d, v, d, v)
    for node, block in state.blocks.items():
        i = idx[node]
        view[:, i, :, i] = block
    return full


def extract_blocks(spec: WalkSpec, full: np.ndarray) -> tuple[WalkerState, float]:
    """Read the position-diagonal blocks out of a full density matrix.

    Returns the block state and the largest magnitude found in any
    position-off-diagonal block (which the walk map sends to zero in a
    single step).
    """
    v = spec.node_count
    d = spec.dim
    full = as_operator(full)
    if full.shape[0] != d * v:
        raise ValueError(
            f"full matrix has dimension {full.shape[0]}, expected {d * v}")
    view = full.reshape(d, v, d, v)
    blocks = {}
    for i, node in enumerate(spec.nodes):
        block = np.array(view[:, i, :, i])
        if float(np.trace(block).real) > PRUNE_TRACE:
            blocks[node] = block
    off_diag = 0.0
    for i in range(v):
        for j in range(v):
            if i != j:
                m = float(np.max(np.abs(view[:, i, :, j])))
                off_diag = max(off_diag, m)
    return WalkerState(blocks), off_diag


def full_map_step(spec: WalkSpec, full: np.ndarray) -> np.ndarray:
    """One step of the walk as a dense operator-sum map on V*d x V*d.

    Each edge contributes the Kraus operator kron(K, |target><source|).
    Output is block-diagonal in position for any input. This is the
    O((V d)^2) oracle against which the block evolution is checked.
    """
    v = spec.node_count
    d = spec.dim
    full = as_operator(full)
    if full.shape[0] != d * v:
        raise ValueError(
            f"full matrix has dimension {full.shape[0]}, expected {d * v}")
    idx = _node_index(spec)
    out = np.zeros_like(full)
    for (src, tgt), op in spec.transitions.items():
        shift = np.zeros((v, v), dtype=complex)
        shift[idx[tgt], idx[src]] = 1.0
        kraus = np.kron(op, shift)
        out += kraus @ full @ kraus.conj().T
    return out
