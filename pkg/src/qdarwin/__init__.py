"""Collision-model simulator and analysis toolkit for quantum Darwinism
and information scrambling."""

__version__ = "0.1.0"

from .backend import active_backend
from .qcore import (
    DensityMatrix,
    EigenDecomposition,
    StateVector,
    apply_local_unitary,
    expm_minus_i_h_t,
    hermitian_eig,
    partial_trace,
    tensor,
    vn_entropy,
)
from .model import (
    CollisionConfig,
    CouplingSpec,
    RegisterLayout,
    branching_state,
    collision_unitary,
    dicke_state,
    initial_state,
    interaction_hamiltonian,
    run_collisions,
    scrambled_example_state,
    system_hamiltonian,
)
from .infometrics import (
    FragmentSample,
    MIProfile,
    PartitionSample,
    ProfileThresholds,
    TMISeries,
    averaged_mi_profile,
    averaged_tmi,
    classify_profile,
    mutual_information,
    redundancy_fraction,
    subsystem_entropy,
    tmi,
)
from .experiments import DEFAULT_T_GRID, ExperimentSpec, run_preset, run_sweep

__all__ = [
    "__version__",
    "active_backend",
    "DensityMatrix",
    "EigenDecomposition",
    "StateVector",
    "apply_local_unitary",
    "expm_minus_i_h_t",
    "hermitian_eig",
    "partial_trace",
    "tensor",
    "vn_entropy",
    "CollisionConfig",
    "CouplingSpec",
    "RegisterLayout",
    "branching_state",
    "collision_unitary",
    "dicke_state",
    "initial_state",
    "interaction_hamiltonian",
    "run_collisions",
    "scrambled_example_state",
    "system_hamiltonian",
    "FragmentSample",
    "MIProfile",
    "PartitionSample",
    "ProfileThresholds",
    "TMISeries",
    "averaged_mi_profile",
    "averaged_tmi",
    "classify_profile",
    "mutual_information",
    "redundancy_fraction",
    "subsystem_entropy",
    "tmi",
    "DEFAULT_T_GRID",
    "ExperimentSpec",
    "run_preset",
    "run_sweep",
]
