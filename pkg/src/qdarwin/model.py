"""Collision model: register layout, Hamiltonians, initial states, evolution.

A register holds the system qubits first (one or two), then the environment
ancillas ``E_1 ... E_N``.  Each collision applies the pair unitary
``exp(-i (H_system + H_ancilla + H_interaction) t)`` to the system qubits and
one ancilla, walking the chain ``E_1, E_2, ..., E_N`` once.  ``t`` is the
duration of a single collision, not a running clock: a sweep re-runs the
whole chain for every ``t``.

Ancillas not taking part in a collision are frozen by default (their free
evolution would only attach local phases); ``idle_ancilla_phases=True``
switches those phases on for sensitivity checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, sqrt

import numpy as np

from .qcore import StateVector, apply_local_unitary, expm_minus_i_h_t, tensor

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
IDENTITY_2 = np.eye(2, dtype=np.complex128)

KET_0 = np.array([1, 0], dtype=np.complex128)
KET_1 = np.array([0, 1], dtype=np.complex128)
KET_PLUS = np.array([1, 1], dtype=np.complex128) / sqrt(2)
KET_MINUS = np.array([1, -1], dtype=np.complex128) / sqrt(2)

#: Free Hamiltonian of every qubit (system and ancilla alike), hbar = 1.
FREE_HAMILTONIAN = 0.5 * SIGMA_Z

#: Default cap on register width; 2 system qubits + 12 ancillas.
MAX_TOTAL_QUBITS = 14


@dataclass(frozen=True)
class RegisterLayout:
    """Maps roles to qubit indices: system qubits first, then E_1 ... E_N."""

    system_size: int
    num_ancillas: int
    max_qubits: int = MAX_TOTAL_QUBITS

    def __post_init__(self):
        if self.system_size not in (1, 2):
            raise ValueError(f"system_size must be 1 or 2, got {self.system_size}")
        if self.num_ancillas < 2:
            raise ValueError(f"need at least 2 ancillas, got {self.num_ancillas}")
        if self.total_qubits > self.max_qubits:
            raise ValueError(
                f"{self.total_qubits} qubits exceed the cap of {self.max_qubits}"
            )

    @property
    def total_qubits(self) -> int:
        return self.system_size + self.num_ancillas

    @property
    def system_qubits(self) -> tuple[int, ...]:
        return tuple(range(self.system_size))

    def ancilla_qubit(self, k: int) -> int:
        """Register index of ancilla E_k, k = 1 ... N."""
        if not 1 <= k <= self.num_ancillas:
            raise ValueError(f"ancilla label {k} outside 1..{self.num_ancillas}")
        return self.system_size - 1 + k

    @property
    def ancilla_qubits(self) -> tuple[int, ...]:
        return tuple(range(self.system_size, self.total_qubits))


@dataclass(frozen=True)
class CouplingSpec:
    """Heisenberg couplings J_x, J_y, J_z and intra-system coupling epsilon."""

    j_x: float
    j_y: float
    j_z: float
    epsilon: float = 0.0

    @classmethod
    def dephasing(cls, j: float = 1.0, epsilon: float = 0.0) -> "CouplingSpec":
        """Pure dephasing regime: J_x = J_y = 0, J_z = J."""
        return cls(j_x=0.0, j_y=0.0, j_z=j, epsilon=epsilon)

    @classmethod
    def exchange(cls, j: float = 1.0, epsilon: float = 0.0) -> "CouplingSpec":
        """Exchange regime: J_x = J_y = J, J_z = 0."""
        return cls(j_x=j, j_y=j, j_z=0.0, epsilon=epsilon)


#: preset name -> (system_size, entangled S-E_1 block builder, fresh-ancilla ket)
_STATE_PRESETS = {}


def _register_presets():
    phi_1q = (tensor(KET_MINUS, KET_PLUS) + tensor(KET_PLUS, KET_MINUS)) / sqrt(2)
    phi_2q = (
        tensor(tensor(KET_MINUS, KET_PLUS), KET_MINUS)
        + tensor(tensor(KET_PLUS, KET_MINUS), KET_PLUS)
    ) / sqrt(2)
    _STATE_PRESETS["dephasing-1q"] = (1, phi_1q, KET_PLUS)
    _STATE_PRESETS["dephasing-2q"] = (2, phi_2q, KET_PLUS)
    _STATE_PRESETS["exchange-1q"] = (1, phi_1q, KET_0)
    _STATE_PRESETS["exchange-2q"] = (2, phi_2q, KET_0)


_register_presets()

STATE_PRESET_NAMES = tuple(sorted(_STATE_PRESETS))


@dataclass(frozen=True)
class CollisionConfig:
    """Everything needed to run one collision sweep at a fixed duration.

    ``coupled_system_qubit`` picks which system qubit the ancilla couples to
    in the two-qubit case: ``"both"`` (default) reads the system operator in
    the Heisenberg coupling as collective, ``0``/``1`` couple a single qubit.
    Only the collective choice keeps the two-qubit dephasing TMI non-negative.
    """

    layout: RegisterLayout
    couplings: CouplingSpec
    duration: float
    initial_state_preset: str
    coupled_system_qubit: int | str = "both"
    idle_ancilla_phases: bool = False

    def __post_init__(self):
        if self.duration < 0:
            raise ValueError(f"collision duration must be >= 0, got {self.duration}")
        if self.initial_state_preset not in _STATE_PRESETS:
            raise ValueError(
                f"unknown initial state preset {self.initial_state_preset!r}; "
                f"choose from {STATE_PRESET_NAMES}"
            )
        preset_size = _STATE_PRESETS[self.initial_state_preset][0]
        if preset_size != self.layout.system_size:
            raise ValueError(
                f"preset {self.initial_state_preset!r} is for a "
                f"{preset_size}-qubit system, layout has {self.layout.system_size}"
            )
        if self.coupled_system_qubit not in (0, 1, "both"):
            raise ValueError("coupled_system_qubit must be 0, 1 or 'both'")
        if self.coupled_system_qubit == 1 and self.layout.system_size == 1:
            raise ValueError("single-qubit system has no second qubit to couple")


def system_hamiltonian(layout: RegisterLayout, couplings: CouplingSpec) -> np.ndarray:
    """System Hamiltonian: 1/2 sigma_z per qubit, plus the epsilon flip-flop
    coupling (sigma_x sigma_x + sigma_y sigma_y) for the two-qubit system."""
    if layout.system_size == 1:
        return FREE_HAMILTONIAN.copy()
    h = tensor(FREE_HAMILTONIAN, IDENTITY_2) + tensor(IDENTITY_2, FREE_HAMILTONIAN)
    h += couplings.epsilon * (tensor(SIGMA_X, SIGMA_X) + tensor(SIGMA_Y, SIGMA_Y))
    return h


def interaction_hamiltonian(couplings: CouplingSpec) -> np.ndarray:
    """Heisenberg system-ancilla coupling sum_j J_j sigma^j (x) sigma^j (4x4)."""
    return (
        couplings.j_x * tensor(SIGMA_X, SIGMA_X)
        + couplings.j_y * tensor(SIGMA_Y, SIGMA_Y)
        + couplings.j_z * tensor(SIGMA_Z, SIGMA_Z)
    )


def _embedded_interaction(config: CollisionConfig) -> np.ndarray:
    """Interaction embedded into (system qubits, ancilla), dim 2^(s+1)."""
    paulis = (
        (config.couplings.j_x, SIGMA_X),
        (config.couplings.j_y, SIGMA_Y),
        (config.couplings.j_z, SIGMA_Z),
    )
    s = config.layout.system_size
    if s == 1:
        return interaction_hamiltonian(config.couplings)
    dim = 1 << (s + 1)
    h = np.zeros((dim, dim), dtype=np.complex128)
    which = config.coupled_system_qubit
    for j, sigma in paulis:
        if j == 0.0:
            continue
        if which in (0, "both"):
            h += j * tensor(tensor(sigma, IDENTITY_2), sigma)
        if which in (1, "both"):
            h += j * tensor(tensor(IDENTITY_2, sigma), sigma)
    return h


def collision_pair_hamiltonian(config: CollisionConfig) -> np.ndarray:
    """Generator of one collision on (system, ancilla): H_S + H_E + H_int."""
    s = config.layout.system_size
    h_sys = system_hamiltonian(config.layout, config.couplings)
    h = tensor(h_sys, IDENTITY_2)
    h += tensor(np.eye(1 << s, dtype=np.complex128), FREE_HAMILTONIAN)
    h += _embedded_interaction(config)
    return h


def collision_unitary(config: CollisionConfig) -> np.ndarray:
    """Unitary exp(-i (H_0 + H_int) t) of a single collision."""
    return expm_minus_i_h_t(collision_pair_hamiltonian(config), config.duration)


def initial_state(preset: str, layout: RegisterLayout) -> StateVector:
    """Initial register state: entangled (S, E_1) block, fresh E_2 ... E_N.

    Presets: ``dephasing-1q`` / ``dephasing-2q`` use
    ``(|-+> + |+->)/sqrt(2)`` resp. ``(|-+-> + |+-+>)/sqrt(2)`` with every
    fresh ancilla in ``|+>``; the ``exchange-*`` presets share the entangled
    blocks but start fresh ancillas in ``|0>``.
    """
    if preset not in _STATE_PRESETS:
        raise ValueError(
            f"unknown initial state preset {preset!r}; choose from {STATE_PRESET_NAMES}"
        )
    preset_size, phi, eta = _STATE_PRESETS[preset]
    if preset_size != layout.system_size:
        raise ValueError(
            f"preset {preset!r} is for a {preset_size}-qubit system, "
            f"layout has {layout.system_size}"
        )
    amps = phi
    for _ in range(2, layout.num_ancillas + 1):
        amps = np.kron(amps, eta)
    return StateVector(amps)


def dicke_state(n: int, d: int) -> StateVector:
    """Equal superposition of all n-qubit basis states with d excitations."""
    if n < 1:
        raise ValueError(f"need at least one qubit, got {n}")
    if not 0 <= d <= n:
        raise ValueError(f"excitation count {d} outside 0..{n}")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amp = 1.0 / sqrt(comb(n, d))
    for idx in range(1 << n):
        if idx.bit_count() == d:
            amps[idx] = amp
    return StateVector(amps)


def _check_orthonormal_rows(mat: np.ndarray, what: str):
    gram = mat @ mat.conj().T
    if np.abs(gram - np.eye(mat.shape[0])).max() > 1e-10:
        raise ValueError(f"{what} are not orthonormal")


def branching_state(
    alphas,
    num_ancillas: int,
    pointer_states=None,
    env_states=None,
) -> StateVector:
    """Branching superposition sum_k alpha_k |phi_k> (x) |eta_k^1 ... eta_k^N>.

    ``pointer_states`` holds the orthonormal system branch states as rows of
    a (K, 2^s) array; ``env_states`` holds per-ancilla branch states, either
    one (K, 2) array shared by every site or an (N, K, 2) stack.  Defaults
    are the computational basis (so K <= 2).
    """
    alphas = np.asarray(alphas, dtype=np.complex128).reshape(-1)
    k = alphas.size
    total = float(np.sum(np.abs(alphas) ** 2))
    if abs(total - 1.0) > 1e-10:
        raise ValueError(f"branch weights must sum to 1, got {total!r}")
    if num_ancillas < 1:
        raise ValueError("need at least one ancilla site")

    if pointer_states is None:
        if k > 2:
            raise ValueError("default single-qubit pointer basis supports K <= 2")
        pointer_states = np.eye(2, dtype=np.complex128)[:k]
    pointer_states = np.asarray(pointer_states, dtype=np.complex128)
    if pointer_states.shape[0] != k:
        raise ValueError("need one pointer state per branch")
    _check_orthonormal_rows(pointer_states, "pointer states")

    if env_states is None:
        if k > 2:
            raise ValueError("default qubit environment basis supports K <= 2")
        env_states = np.eye(2, dtype=np.complex128)[:k]
    env_states = np.asarray(env_states, dtype=np.complex128)
    if env_states.ndim == 2:
        env_states = np.broadcast_to(env_states, (num_ancillas,) + env_states.shape)
    if env_states.shape[:2] != (num_ancillas, k):
        raise ValueError("env_states must be (K, 2) or (num_ancillas, K, 2)")
    for site in range(num_ancillas):
        _check_orthonormal_rows(env_states[site], f"site {site + 1} branch states")

    dim = pointer_states.shape[1] * 2**num_ancillas
    amps = np.zeros(dim, dtype=np.complex128)
    for branch in range(k):
        vec = pointer_states[branch]
        for site in range(num_ancillas):
            vec = np.kron(vec, env_states[site, branch])
        amps += alphas[branch] * vec
    return StateVector(amps)


def scrambled_example_state(n: int, record_branch: bool = False) -> StateVector:
    """Antiredundancy example: (|0>|D_n^(2)> + |1>|D_n^(1)>)/sqrt(2).

    The system qubit sits at index 0, the n environment qubits follow.  The
    two branches are orthogonal, so the explicit 1/sqrt(2) normalizes.

    ``record_branch=True`` appends one extra qubit marking the branch.  That
    qubit never joins a fragment; its only effect is to make every reduced
    state of (system, fragment) branch-diagonal, i.e. it evaluates the
    branch mixture instead of the coherent superposition.  The two readings
    differ sharply: adjacent Dicke excitation numbers leak coherence into
    even single-ancilla reductions, so the coherent state leaves every
    fragment well informed, while the branch mixture hides the system from
    every small fragment (the S-shaped, negative-TMI regime).
    """
    if n < 2:
        raise ValueError(f"need at least 2 environment qubits, got {n}")
    branch_0 = np.kron(KET_0, dicke_state(n, 2).amplitudes)
    branch_1 = np.kron(KET_1, dicke_state(n, 1).amplitudes)
    if record_branch:
        branch_0 = np.kron(branch_0, KET_0)
        branch_1 = np.kron(branch_1, KET_1)
    return StateVector((branch_0 + branch_1) / sqrt(2))


def run_collisions(config: CollisionConfig) -> StateVector:
    """Evolve the register through one collision with each of E_1 ... E_N."""
    layout = config.layout
    state = initial_state(config.initial_state_preset, layout)
    u = collision_unitary(config)
    if config.idle_ancilla_phases:
        u_free = expm_minus_i_h_t(FREE_HAMILTONIAN, config.duration)
    for k in range(1, layout.num_ancillas + 1):
        targets = layout.system_qubits + (layout.ancilla_qubit(k),)
        state = apply_local_unitary(state, u, targets)
        if config.idle_ancilla_phases:
            for idle in range(1, layout.num_ancillas + 1):
                if idle != k:
                    state = apply_local_unitary(
                        state, u_free, (layout.ancilla_qubit(idle),)
                    )
    return state
