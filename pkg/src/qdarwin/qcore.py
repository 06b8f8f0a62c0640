"""Dense complex linear algebra for small qubit registers.

Conventions used throughout the package:

* amplitudes and matrices are ``complex128``;
* basis ordering is ``|q_0 q_1 ... q_{n-1}>`` with **qubit 0 the most
  significant bit** of the flat index;
* entropies are in bits (base-2 logarithms).

States stay dense: the register cap elsewhere is 14 qubits (16384
amplitudes) and reduced matrices stay at or below 256 x 256, so LAPACK-backed
numpy is the right tool.  The gate/partial-trace inner loops live in
:mod:`qdarwin.kernels`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from . import kernels

#: |amplitude norm - 1| tolerated on state construction.
NORM_ATOL = 1e-10
#: max |M - M^dagger| entry tolerated for "Hermitian" inputs.
HERMITIAN_ATOL = 1e-12
#: |trace - 1| tolerated for density matrices.
TRACE_ATOL = 1e-10
#: max |U^dagger U - I| entry tolerated for "unitary" inputs.
UNITARY_ATOL = 1e-10
#: eigenvalues in [EIG_CLAMP_FLOOR, 0) are clamped to 0; below is an error.
EIG_CLAMP_FLOOR = -1e-10
#: eigenvalues below this contribute nothing to the entropy.
EIG_ZERO_CUTOFF = 1e-12


def _require_power_of_two(n: int, what: str) -> int:
    if n < 1 or (n & (n - 1)) != 0:
        raise ValueError(f"{what} must be a power of two, got {n}")
    return n.bit_length() - 1


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized pure state of an n-qubit register."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if amps.ndim != 1:
            raise ValueError("amplitudes must be a 1-D array")
        _require_power_of_two(amps.size, "amplitude count")
        norm_sq = float(np.real(np.vdot(amps, amps)))
        if abs(norm_sq - 1.0) > NORM_ATOL:
            raise ValueError(f"state is not normalized: sum |a|^2 = {norm_sq!r}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def num_qubits(self) -> int:
        return self.amplitudes.size.bit_length() - 1

    def __repr__(self):
        return f"StateVector(num_qubits={self.num_qubits})"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace operator on a qubit subset.

    Hermiticity and trace are checked on construction; positivity is checked
    where the spectrum is actually computed (:func:`vn_entropy`).
    """

    matrix: np.ndarray

    def __post_init__(self):
        mat = np.ascontiguousarray(self.matrix, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("density matrix must be square")
        _require_power_of_two(mat.shape[0], "density matrix dimension")
        if np.abs(mat - mat.conj().T).max() > HERMITIAN_ATOL:
            raise ValueError("density matrix is not Hermitian")
        trace = complex(np.trace(mat))
        if abs(trace - 1.0) > TRACE_ATOL:
            raise ValueError(f"density matrix trace is {trace!r}, expected 1")
        mat.flags.writeable = False
        object.__setattr__(self, "matrix", mat)

    @property
    def num_qubits(self) -> int:
        return self.matrix.shape[0].bit_length() - 1

    def __repr__(self):
        return f"DensityMatrix(num_qubits={self.num_qubits})"


class EigenDecomposition(NamedTuple):
    """Eigenvalues (ascending) and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def tensor(a, b):
    """Kronecker composition of two states or two operators.

    ``(a (x) b)[i * dim_b + j] = a[i] * b[j]``; mixing a state with an
    operator is rejected.
    """
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        return StateVector(np.kron(a.amplitudes, b.amplitudes))
    if isinstance(a, StateVector) or isinstance(b, StateVector):
        raise TypeError("tensor requires two states or two matrices, not a mix")
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def is_unitary(u: np.ndarray, atol: float = UNITARY_ATOL) -> bool:
    u = np.asarray(u, dtype=np.complex128)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    eye = np.eye(u.shape[0])
    return bool(np.abs(u.conj().T @ u - eye).max() <= atol)


def apply_local_unitary(state: StateVector, u, targets: Iterable[int]) -> StateVector:
    """Apply a k-qubit unitary to the listed qubits of the full register.

    ``targets`` is ordered: ``targets[0]`` is the most significant qubit of
    the gate's own basis, matching the register convention.
    """
    targets = tuple(int(q) for q in targets)
    n = state.num_qubits
    if len(set(targets)) != len(targets):
        raise ValueError(f"duplicate target index in {targets}")
    if any(q < 0 or q >= n for q in targets):
        raise ValueError(f"target out of range for {n} qubits: {targets}")
    u = np.ascontiguousarray(u, dtype=np.complex128)
    dim = 1 << len(targets)
    if u.shape != (dim, dim):
        raise ValueError(
            f"unitary of shape {u.shape} does not act on {len(targets)} qubit(s)"
        )
    if not is_unitary(u):
        raise ValueError("matrix is not unitary within tolerance")
    return StateVector(kernels.apply_gate(state.amplitudes, u, targets, n))


def partial_trace(state: StateVector, keep: Iterable[int]) -> DensityMatrix:
    """Reduced density matrix of ``keep`` (a set; result uses ascending order).

    An empty ``keep`` yields the scalar density matrix ``[[1]]``.
    """
    n = state.num_qubits
    keep = tuple(sorted(set(int(q) for q in keep)))
    if any(q < 0 or q >= n for q in keep):
        raise ValueError(f"keep indices out of range for {n} qubits: {keep}")
    return DensityMatrix(kernels.reduced_density(state.amplitudes, keep, n))


def hermitian_eig(h) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Backed by LAPACK (``numpy.linalg.eigh``); a failure to converge raises.
    """
    h = np.asarray(h, dtype=np.complex128)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError("expected a square matrix")
    if np.abs(h - h.conj().T).max() > HERMITIAN_ATOL:
        raise ValueError("matrix is not Hermitian within tolerance")
    eigenvalues, eigenvectors = np.linalg.eigh(h)
    return EigenDecomposition(eigenvalues, eigenvectors)


def expm_minus_i_h_t(h, t: float) -> np.ndarray:
    """Unitary exp(-i H t) for Hermitian H (hbar = 1)."""
    eigenvalues, eigenvectors = hermitian_eig(h)
    phases = np.exp(-1j * eigenvalues * float(t))
    return (eigenvectors * phases) @ eigenvectors.conj().T


def vn_entropy(rho: DensityMatrix) -> float:
    """Von Neumann entropy in bits.

    Eigenvalues in ``[-1e-10, 0)`` are numerical noise and clamp to zero;
    anything more negative means broken positivity and raises.  Eigenvalues
    below 1e-12 contribute nothing.
    """
    eigenvalues = np.linalg.eigvalsh(rho.matrix)
    if eigenvalues.size and eigenvalues[0] < EIG_CLAMP_FLOOR:
        raise ValueError(
            f"density matrix has negative eigenvalue {eigenvalues[0]!r}"
        )
    probs = eigenvalues[eigenvalues >= EIG_ZERO_CUTOFF]
    if probs.size == 0:
        return 0.0
    return max(float(-(probs * np.log2(probs)).sum()), 0.0)
