"""Hot statevector kernels: local gate application and reduced-density gather.

Everything here works on raw ``complex128`` amplitude arrays.  Qubit 0 is the
most significant bit of the basis index, so qubit ``q`` of an ``n``-qubit
register lives at bit position ``n - 1 - q`` of the flat index.

Each kernel has a numba implementation (explicit bit loops) and a numpy
implementation (reshape/transpose).  ``qdarwin.backend`` picks one at import
time; the private ``*_numpy`` / ``*_loop`` functions stay importable so the
test suite can cross-check the two paths against each other.
"""

from __future__ import annotations

import numpy as np

from .backend import NUMBA_ENABLED

if NUMBA_ENABLED:
    from numba import njit
else:  # keep the loop sources usable as plain python
    def njit(*args, **kwargs):
        def wrap(func):
            return func

        if args and callable(args[0]):
            return args[0]
        return wrap


def _bit_positions(qubits, num_qubits):
    """Flat-index bit positions of the given qubits (qubit 0 = MSB)."""
    return np.array([num_qubits - 1 - q for q in qubits], dtype=np.int64)


def _gate_offsets(targets, num_qubits):
    """Index offsets of the 2^k gate basis states, gate qubit 0 = gate MSB."""
    k = len(targets)
    pos = _bit_positions(targets, num_qubits)
    offsets = np.zeros(1 << k, dtype=np.int64)
    for j in range(1 << k):
        off = 0
        for m in range(k):
            if (j >> (k - 1 - m)) & 1:
                off |= 1 << pos[m]
        offsets[j] = off
    return offsets


@njit(cache=True)
def _apply_gate_loop(amps, u, sorted_pos, offsets):
    k = sorted_pos.shape[0]
    dim = offsets.shape[0]
    out = np.empty_like(amps)
    n_groups = amps.shape[0] >> k
    for g in range(n_groups):
        base = g
        for m in range(k):
            p = sorted_pos[m]
            base = ((base >> p) << (p + 1)) | (base & ((1 << p) - 1))
        for i in range(dim):
            acc = 0.0 + 0.0j
            for j in range(dim):
                acc += u[i, j] * amps[base | offsets[j]]
            out[base | offsets[i]] = acc
    return out


@njit(cache=True)
def _gather_loop(amps, row_off, col_off):
    rows = row_off.shape[0]
    cols = col_off.shape[0]
    mat = np.empty((rows, cols), dtype=np.complex128)
    for a in range(rows):
        ra = row_off[a]
        for b in range(cols):
            mat[a, b] = amps[ra | col_off[b]]
    return mat


def _subset_offsets(qubits, num_qubits):
    """All index offsets spanned by a qubit subset, subset order = MSB first."""
    k = len(qubits)
    pos = _bit_positions(qubits, num_qubits)
    offsets = np.zeros(1 << k, dtype=np.int64)
    for a in range(1 << k):
        off = 0
        for m in range(k):
            if (a >> (k - 1 - m)) & 1:
                off |= 1 << pos[m]
        offsets[a] = off
    return offsets


def _apply_gate_numba(amps, u, targets, num_qubits):
    sorted_pos = np.sort(_bit_positions(targets, num_qubits))
    offsets = _gate_offsets(targets, num_qubits)
    return _apply_gate_loop(amps, u, sorted_pos, offsets)


def _apply_gate_numpy(amps, u, targets, num_qubits):
    k = len(targets)
    psi = amps.reshape((2,) * num_qubits)
    gate = u.reshape((2,) * (2 * k))
    moved = np.tensordot(gate, psi, axes=(tuple(range(k, 2 * k)), targets))
    return np.moveaxis(moved, range(k), targets).reshape(-1)


def _gather_numba(amps, keep, num_qubits):
    rest = tuple(q for q in range(num_qubits) if q not in set(keep))
    row_off = _subset_offsets(keep, num_qubits)
    col_off = _subset_offsets(rest, num_qubits)
    return _gather_loop(amps, row_off, col_off)


def _gather_numpy(amps, keep, num_qubits):
    rest = tuple(q for q in range(num_qubits) if q not in set(keep))
    psi = amps.reshape((2,) * num_qubits)
    return psi.transpose(keep + rest).reshape(1 << len(keep), -1)


def apply_gate(amps, u, targets, num_qubits):
    """Apply a 2^k x 2^k unitary to the listed qubits of an amplitude array."""
    if num_qubits == 0:
        raise ValueError("cannot apply a gate to an empty register")
    if NUMBA_ENABLED:
        return _apply_gate_numba(amps, u, targets, num_qubits)
    return _apply_gate_numpy(amps, u, targets, num_qubits)


def reduced_density(amps, keep, num_qubits):
    """Reduced density matrix over ``keep`` (ascending), tracing the rest.

    Returns the Gram matrix M M^dagger of the amplitude matrix M whose rows
    are indexed by the kept qubits and columns by the traced ones.  The
    gather always takes the numpy transpose path: the benchmark shows it
    beating the explicit loop at every register size (numpy's permuted copy
    is already optimal, and the Gram matmul is BLAS either way); the numba
    variant stays around as an independent cross-check.
    """
    mat = _gather_numpy(amps, tuple(keep), num_qubits)
    return mat @ mat.conj().T
