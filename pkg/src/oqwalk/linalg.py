"""Dense complex linear algebra for small internal Hilbert spaces.

Everything here operates on plain numpy arrays of dtype complex128.
Operators are square matrices, state vectors ("kets") are 1-d arrays of
unit Euclidean norm, density matrices are Hermitian positive
semidefinite. Typical dimensions are 2 to 8, so no sparse or
structured storage is used anywhere.

Tensor-product convention: ``kron(a, b)`` uses the standard row-major
block layout (numpy.kron), and for multi-qubit operators qubit 1 is
always the most significant factor. So ``kron(X, I2)`` flips qubit 1 of
a two-qubit register, and the basis order is |00>, |01>, |10>, |11>.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

DEFAULT_TOL = 1e-10

# Single-qubit constants.
IDENTITY_2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
S_GATE = np.array([[1, 0], [0, 1j]], dtype=complex)
T_GATE = np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=complex)

# Two-qubit CNOT, control on qubit 1 (most significant factor).
CNOT = np.array(
    [[1, 0, 0, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1],
     [0, 0, 1, 0]],
    dtype=complex,
)

KET_ZERO = np.array([1, 0], dtype=complex)
KET_ONE = np.array([0, 1], dtype=complex)
KET_PLUS = np.array([1, 1], dtype=complex) / np.sqrt(2)
KET_MINUS = np.array([1, -1], dtype=complex) / np.sqrt(2)

# Bell states in the |q1 q2> basis order above.
BELL_PSI_PLUS = np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2)
BELL_PSI_MINUS = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)
BELL_PHI_PLUS = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
BELL_PHI_MINUS = np.array([1, 0, 0, -1], dtype=complex) / np.sqrt(2)

for _a in (IDENTITY_2, PAULI_X, PAULI_Y, PAULI_Z, HADAMARD, S_GATE, T_GATE,
           CNOT, KET_ZERO, KET_ONE, KET_PLUS, KET_MINUS, BELL_PSI_PLUS,
           BELL_PSI_MINUS, BELL_PHI_PLUS, BELL_PHI_MINUS):
    _a.setflags(write=False)
del _a


def as_operator(a: np.ndarray) -> np.ndarray:
    """Coerce to a square complex128 matrix, rejecting anything else."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def as_ket(psi: Sequence[complex], tol: float = 1e-12) -> np.ndarray:
    """Coerce to a complex unit vector; raises if the norm is off by > tol."""
    v = np.asarray(psi, dtype=complex).reshape(-1)
    if v.size < 1:
        raise ValueError("empty state vector")
    norm_sq = float(np.vdot(v, v).real)
    if abs(norm_sq - 1.0) > tol:
        raise ValueError(f"state vector is not normalized: |psi|^2 = {norm_sq}")
    return v


def normalized(psi: Sequence[complex]) -> np.ndarray:
    v = np.asarray(psi, dtype=complex).reshape(-1)
    n = np.linalg.norm(v)
    if n == 0:
        raise ValueError("cannot normalize the zero vector")
    return v / n


def basis_ket(dim: int, index: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor product with the first factor most significant."""
    return np.kron(as_operator(a), as_operator(b))


def adjoint(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a, dtype=complex).conj().T


def outer(psi: np.ndarray, phi: np.ndarray | None = None) -> np.ndarray:
    """|psi><phi| (|psi><psi| when phi is omitted)."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    phi = psi if phi is None else np.asarray(phi, dtype=complex).reshape(-1)
    return np.outer(psi, phi.conj())


def projector(psi: np.ndarray) -> np.ndarray:
    return outer(psi)


def apply_kraus(rho: np.ndarray, ops: Sequence[np.ndarray]) -> np.ndarray:
    """Apply the operator-sum map rho -> sum_K K rho K^dag.

    All operators and rho must share one dimension. The output is
    Hermitian for Hermitian input and positive semidefinite for PSD
    input; the map preserves trace exactly when sum_K K^dag K = I.
    """
    rho = as_operator(rho)
    out = np.zeros_like(rho)
    for k in ops:
        k = as_operator(k)
        if k.shape != rho.shape:
            raise ValueError(
                f"operator dimension {k.shape[0]} does not match state dimension {rho.shape[0]}")
        out += k @ rho @ k.conj().T
    return out


def completeness_residual(ops: Sequence[np.ndarray]) -> float:
    """Max-entry deviation of sum_K K^dag K from the identity."""
    mats = [as_operator(k) for k in ops]
    if not mats:
        raise ValueError("empty operator family")
    dim = mats[0].shape[0]
    acc = np.zeros((dim, dim), dtype=complex)
    for k in mats:
        if k.shape[0] != dim:
            raise ValueError("operator family has mixed dimensions")
        acc += k.conj().T @ k
    return float(np.max(np.abs(acc - np.eye(dim))))


def is_hermitian(a: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    a = np.asarray(a, dtype=complex)
    return a.ndim == 2 and a.shape[0] == a.shape[1] and bool(
        np.max(np.abs(a - a.conj().T)) <= tol)


def hermitian_eigenvalues(a: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, ascending.

    Raises ValueError when the input deviates from Hermiticity by more
    than tol in any entry.
    """
    a = as_operator(a)
    dev = float(np.max(np.abs(a - a.conj().T)))
    if dev > tol:
        raise ValueError(f"matrix is not Hermitian (max deviation {dev:.3e})")
    return np.linalg.eigvalsh(a)


def is_psd(a: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True iff a is Hermitian within tol and min eigenvalue >= -tol."""
    a = as_operator(a)
    if float(np.max(np.abs(a - a.conj().T))) > tol:
        return False
    return bool(np.linalg.eigvalsh(a)[0] >= -tol)


def is_unitary(a: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    a = as_operator(a)
    return bool(np.max(np.abs(a.conj().T @ a - np.eye(a.shape[0]))) <= tol)


def trace_distance(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Half the trace norm of rho - sigma (both Hermitian, same dim)."""
    rho = as_operator(rho)
    sigma = as_operator(sigma)
    if rho.shape != sigma.shape:
        raise ValueError(
            f"dimension mismatch: {rho.shape[0]} vs {sigma.shape[0]}")
    diff = rho - sigma
    # Eigenvalues of the Hermitian part; inputs are Hermitian by contract.
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh((diff + diff.conj().T) / 2))))


def pure_fidelity(rho: np.ndarray, psi: np.ndarray) -> float:
    """<psi| rho |psi> as a real number.

    For an unnormalized positive block this is the joint weight of psi,
    bounded by the trace of the block.
    """
    rho = as_operator(rho)
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.size != rho.shape[0]:
        raise ValueError(
            f"dimension mismatch: state {psi.size} vs operator {rho.shape[0]}")
    return float(np.real(psi.conj() @ rho @ psi))
