import numpy as np
import pytest

from oqwalk.core import (
    WalkerState,
    WalkSpec,
    extract_blocks,
    find_steady_state,
    full_map_step,
    mixed_state,
    pure_state,
    run,
    state_trace_distance,
    step,
    to_full_density,
    validate_walk,
)
from oqwalk.linalg import PAULI_X, basis_ket, is_psd, outer
from oqwalk.scenarios import build_gate_walk, build_line_walk

from oracles import (
    enumerate_hop_paths,
    random_block_state,
    random_density,
    random_kraus_family,
)


def two_node_spec(b1, c1, b2, c2):
    """Fully connected two-node walk: b_i hops out of node i, c_i stays."""
    return WalkSpec(
        nodes=(1, 2),
        dim=b1.shape[0],
        transitions={(1, 2): b1, (1, 1): c1, (2, 1): b2, (2, 2): c2},
    )


def random_two_node(rng, dim=2):
    b1, c1 = random_kraus_family(dim, 2, rng)
    b2, c2 = random_kraus_family(dim, 2, rng)
    return two_node_spec(b1, c1, b2, c2)


# ---------------------------------------------------------------- spec


def test_spec_rejects_unknown_nodes_and_bad_dims():
    with pytest.raises(ValueError):
        WalkSpec(nodes=(1,), dim=2, transitions={(1, 2): np.eye(2)})
    with pytest.raises(ValueError):
        WalkSpec(nodes=(1, 2), dim=2, transitions={(1, 2): np.eye(3)})
    with pytest.raises(ValueError):
        WalkSpec(nodes=(1, 1), dim=2, transitions={})
    with pytest.raises(ValueError):
        WalkSpec(nodes=(1,), dim=2, transitions={(1, 1): np.ones((2, 3))})


def test_validate_accepts_line_walk_exactly():
    spec, _ = build_line_walk(np.arccos(0.8), 4)
    report = validate_walk(spec)
    assert report.ok
    assert report.worst() <= 1e-12


def test_validate_rejects_overcomplete_family():
    spec = two_node_spec(np.eye(2), np.eye(2), np.eye(2), np.eye(2))
    report = validate_walk(spec)
    assert not report.ok
    assert abs(report.residuals[1] - 1.0) < 1e-12
    assert abs(report.residuals[2] - 1.0) < 1e-12


def test_validate_accepts_cnot_gate_walk():
    from oqwalk.linalg import CNOT

    report = validate_walk(build_gate_walk(CNOT, 0.5))
    assert report.ok and report.worst() <= 1e-12


# ---------------------------------------------------------------- step


def test_step_identity_self_loop_fixed():
    spec = WalkSpec(nodes=("a",), dim=2, transitions={("a", "a"): np.eye(2)})
    state = WalkerState({"a": np.eye(2) / 2})
    out = step(spec, state)
    assert np.array_equal(out.blocks["a"], state.blocks["a"])


def test_step_splits_line_blocks():
    spec, _ = build_line_walk(np.arccos(0.8), 3)
    rho = random_density(2, np.random.default_rng(0))
    out = step(spec, WalkerState({0: rho}))
    right = spec.transitions[(0, 1)]
    left = spec.transitions[(0, -1)]
    assert set(out.blocks) == {1, -1}
    assert np.allclose(out.blocks[1], right @ rho @ right.conj().T)
    assert np.allclose(out.blocks[-1], left @ rho @ left.conj().T)


def test_step_two_node_recursion_exact():
    # one step must equal the closed-form two-node recursion bit for bit
    rng = np.random.default_rng(42)
    for _ in range(10):
        spec = random_two_node(rng)
        b1, c1 = spec.transitions[(1, 2)], spec.transitions[(1, 1)]
        b2, c2 = spec.transitions[(2, 1)], spec.transitions[(2, 2)]
        blocks = random_block_state([1, 2], 2, rng)
        out = step(spec, WalkerState(blocks))
        r1, r2 = blocks[1], blocks[2]
        expected1 = c1 @ r1 @ c1.conj().T + b2 @ r2 @ b2.conj().T
        expected2 = c2 @ r2 @ c2.conj().T + b1 @ r1 @ b1.conj().T
        assert np.array_equal(out.blocks[1], expected1)
        assert np.array_equal(out.blocks[2], expected2)


def test_step_preserves_trace_and_positivity():
    rng = np.random.default_rng(3)
    spec = random_two_node(rng, dim=3)
    state = WalkerState(random_block_state([1, 2], 3, rng))
    for _ in range(50):
        state = step(spec, state)
        assert abs(state.total_trace() - 1.0) < 1e-12
        for block in state.blocks.values():
            assert is_psd(block, 1e-10)


def test_step_rejects_mismatched_state():
    spec = random_two_node(np.random.default_rng(1))
    with pytest.raises(ValueError):
        step(spec, WalkerState({3: np.eye(2) / 2}))
    with pytest.raises(ValueError):
        step(spec, WalkerState({1: np.eye(3) / 3}))


# ---------------------------------------------------------------- run


def test_run_zero_steps_returns_initial():
    spec, init = build_line_walk(np.arccos(0.8), 2)
    traj = run(spec, init, 0)
    assert len(traj) == 1
    assert traj[0][0] == 0
    assert traj[0][1] is init


def test_run_line_two_steps_occupation():
    spec, init = build_line_walk(np.arccos(0.8), 2)
    traj = run(spec, init, 2)
    occ = {n: float(np.trace(b).real) for n, b in traj[-1][1].blocks.items()}
    # exact values 353/625, 144/625, 128/625
    assert occ.keys() == {2, 0, -2}
    assert abs(occ[2] - 353 / 625) < 1e-14
    assert abs(occ[0] - 144 / 625) < 1e-14
    assert abs(occ[-2] - 128 / 625) < 1e-14


def test_run_matches_path_enumeration():
    theta = np.arccos(0.8)
    spec, _ = build_line_walk(theta, 6)
    rng = np.random.default_rng(8)
    rho0 = random_density(2, rng)
    traj = run(spec, WalkerState({0: rho0}), 6)
    right = spec.transitions[(0, 1)]
    left = spec.transitions[(0, -1)]
    expected = enumerate_hop_paths(rho0, right, left, 6)
    final = traj[-1][1].blocks
    for pos, block in expected.items():
        weight = float(np.trace(block).real)
        if weight > 1e-15:
            assert np.max(np.abs(final[pos] - block)) < 1e-13
        else:
            assert pos not in final or np.trace(final[pos]).real < 1e-14


def test_run_record_every():
    spec, init = build_line_walk(np.arccos(0.8), 7)
    traj = run(spec, init, 7, record_every=3)
    assert [k for k, _ in traj] == [0, 3, 6, 7]
    for _, state in traj:
        assert abs(state.total_trace() - 1.0) < 1e-10


# ------------------------------------------------------- dense oracle


def test_full_density_round_trip():
    rng = np.random.default_rng(12)
    spec = random_two_node(rng)
    state = WalkerState(random_block_state([1, 2], 2, rng))
    full = to_full_density(spec, state)
    assert abs(np.trace(full).real - 1.0) < 1e-12
    back, off_diag = extract_blocks(spec, full)
    assert off_diag == 0.0
    for node, block in state.blocks.items():
        assert np.array_equal(back.blocks[node], block)


def test_full_density_single_node_embedding():
    spec = WalkSpec(nodes=("a",), dim=2, transitions={("a", "a"): np.eye(2)})
    rho = outer(basis_ket(2, 0))
    full = to_full_density(spec, WalkerState({"a": rho}))
    assert np.array_equal(full, rho)


def test_full_density_two_node_layout():
    spec = random_two_node(np.random.default_rng(0))
    state = WalkerState({1: np.eye(2) / 2})
    full = to_full_density(spec, state)
    # internal index major, position minor: node-1 entries sit at even
    # rows/columns
    expected = np.kron(np.eye(2) / 2, np.diag([1.0, 0.0]))
    assert np.array_equal(full, expected)


def test_full_map_agrees_with_block_step():
    rng = np.random.default_rng(77)
    for dim in (2, 3):
        spec = random_two_node(rng, dim=dim)
        state = WalkerState(random_block_state([1, 2], dim, rng))
        full = to_full_density(spec, state)
        for _ in range(50):
            state = step(spec, state)
            full = full_map_step(spec, full)
            blocks, off_diag = extract_blocks(spec, full)
            assert off_diag <= 1e-12
            assert state_trace_distance(state, blocks) < 1e-12
            for node in state.blocks:
                assert np.max(np.abs(state.blocks[node] - blocks.blocks[node])) < 1e-10


def test_full_map_agrees_on_scenario_walks():
    # every scenario family small enough for the dense map (V*d <= 16)
    from oqwalk.linalg import CNOT
    from oqwalk.scenarios import (
        build_bell_grid,
        build_dqc_chain,
        build_state_prep,
        build_transport_chain,
    )
    from oracles import random_unitary

    rng = np.random.default_rng(16)
    specs = [
        build_line_walk(np.arccos(0.8), 1)[0],
        build_gate_walk(CNOT, 0.5),
        build_state_prep(1.0, 0.5, 0.3),
        build_bell_grid(),
        build_transport_chain(8, 16 / 25)[0],
        build_dqc_chain([random_unitary(2, rng) for _ in range(7)], 0.7)[0],
    ]
    for spec in specs:
        state = WalkerState(random_block_state(spec.nodes, spec.dim, rng))
        full = to_full_density(spec, state)
        for _ in range(50):
            state = step(spec, state)
            full = full_map_step(spec, full)
        dense_blocks, off_diag = extract_blocks(spec, full)
        assert off_diag <= 1e-12
        for node in spec.nodes:
            a = state.blocks.get(node)
            b = dense_blocks.blocks.get(node)
            zero = np.zeros((spec.dim, spec.dim))
            diff = np.max(np.abs((a if a is not None else zero)
                                 - (b if b is not None else zero)))
            assert diff <= 1e-10, f"node {node}: {diff:.3e}"


def test_full_map_diagonalizes_in_one_step():
    # an input with position coherences loses them after a single step
    rng = np.random.default_rng(5)
    spec = random_two_node(rng)
    full = random_density(4, rng)
    _, off_before = extract_blocks(spec, full)
    assert off_before > 1e-3  # genuinely off-diagonal input
    out = full_map_step(spec, full)
    _, off_after = extract_blocks(spec, out)
    assert off_after <= 1e-12
    assert abs(np.trace(out).real - 1.0) < 1e-12


def test_full_map_identity_walk_fixed_point():
    spec = WalkSpec(nodes=("a",), dim=2, transitions={("a", "a"): np.eye(2)})
    rho = random_density(2, np.random.default_rng(2))
    assert np.allclose(full_map_step(spec, rho), rho)


# ------------------------------------------------------- steady state


def test_find_steady_state_gate_walk():
    psi = basis_ket(2, 0)
    spec = build_gate_walk(PAULI_X, 0.75)
    result = find_steady_state(spec, pure_state(1, psi))
    assert result.converged
    expected = WalkerState({
        1: 0.25 * outer(psi),
        2: 0.75 * outer(PAULI_X @ psi),
    })
    assert state_trace_distance(result.state, expected) < 1e-9


def test_find_steady_state_is_fixed_point():
    spec = build_gate_walk(PAULI_X, 0.6)
    result = find_steady_state(spec, mixed_state(1, 2))
    again = step(spec, result.state)
    assert state_trace_distance(again, result.state) <= 1e-10


def test_find_steady_state_line_never_converges():
    spec, init = build_line_walk(np.arccos(0.8), 30)
    result = find_steady_state(spec, init, tol=1e-10, max_iter=25)
    assert not result.converged
    assert result.iterations == 25
    assert result.residual > 1e-3


def test_find_steady_state_tol_validation():
    spec = build_gate_walk(PAULI_X, 0.5)
    with pytest.raises(ValueError):
        find_steady_state(spec, mixed_state(1, 2), tol=0.0)


def test_state_trace_distance_missing_blocks():
    a = WalkerState({1: np.eye(2) / 2})
    b = WalkerState({2: np.eye(2) / 2})
    assert abs(state_trace_distance(a, b) - 1.0) < 1e-12
    assert state_trace_distance(a, a) == 0.0


def test_trace_preserved_over_ten_thousand_steps():
    # long-horizon drift check on every scenario family; the line walk
    # runs on a small ring so the step cost stays bounded
    from oqwalk.linalg import CNOT
    from oqwalk.scenarios import (
        build_bell_grid,
        build_dqc_chain,
        build_state_prep,
        build_transport_chain,
    )
    from oracles import random_unitary

    rng = np.random.default_rng(10_000)
    line_spec, line_init = build_line_walk(np.arccos(0.8), 10)
    cases = [
        ("line-ring", line_spec, line_init),
        ("gate", build_gate_walk(random_unitary(2, rng), 0.3),
         mixed_state(1, 2)),
        ("cnot", build_gate_walk(CNOT, 0.5), mixed_state(1, 4)),
        ("state_prep", build_state_prep(0.7, 2.1, 0.4), mixed_state(1, 2)),
        ("bell", build_bell_grid(), mixed_state("UL", 4)),
        ("transport", *build_transport_chain(10, 16 / 25)),
        ("dqc", *build_dqc_chain([random_unitary(2, rng) for _ in range(4)],
                                 0.6)),
    ]
    for label, spec, state in cases:
        worst = 0.0
        for k in range(10_000):
            state = step(spec, state)
            worst = max(worst, abs(state.total_trace() - 1.0))
        assert worst <= 1e-10, f"{label}: trace drifted by {worst:.3e}"
        for block in state.blocks.values():
            assert is_psd(block, 1e-10), f"{label}: block lost positivity"
