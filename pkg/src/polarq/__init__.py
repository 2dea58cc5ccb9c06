"""Polar molecules in pendular states as qubit arrays.

Field-dressed rotor spectra, dipole-dipole coupled many-body Hamiltonians in
the qubit subspace, pairwise entanglement of the ground state, empirical
fits for excitation probability and concurrence, and a small gate-model
toolkit for the associated circuit constructions.
"""

from . import circuits
from .entangle import (
    ConcurrenceMap,
    ReducedDensity,
    concurrence,
    entanglement_of_formation,
    pairwise_concurrence_map,
    reduce,
    spin_flip,
)
from .fits import (
    FitParamsF,
    FitParamsK,
    ResidualReport,
    ValidityWarning,
    c_fit,
    f_of_x,
    k_of_x,
    p_fit,
    residual_report,
)
from .lattice import (
    ArrayGeometry,
    DegenerateGeometryError,
    PairCoupling,
    angular_factor,
    custom_array,
    linear_array,
    pair_couplings,
    square_array,
)
from .manybody import (
    CapacityError,
    LabelingError,
    QubitHamiltonian,
    Spectrum,
    UnderflowWarning,
    build_hamiltonian,
    energy_gap,
    frequency_shift,
    p_not_all_zero,
    perturbative_ground_state,
    spectrum,
    thermal_excitation,
)
from .pendular import (
    FIELD_UNIT_FACTOR,
    ConvergenceError,
    PendularSolution,
    QubitPair,
    build_pendular_hamiltonian,
    cos_theta_matrix,
    field_to_x,
    qubit_pair,
    solve_pendular,
)

__version__ = "0.1.0"

__all__ = [
    "circuits",
    "ConcurrenceMap",
    "ReducedDensity",
    "concurrence",
    "entanglement_of_formation",
    "pairwise_concurrence_map",
    "reduce",
    "spin_flip",
    "FitParamsF",
    "FitParamsK",
    "ResidualReport",
    "ValidityWarning",
    "c_fit",
    "f_of_x",
    "k_of_x",
    "p_fit",
    "residual_report",
    "ArrayGeometry",
    "DegenerateGeometryError",
    "PairCoupling",
    "angular_factor",
    "custom_array",
    "linear_array",
    "pair_couplings",
    "square_array",
    "CapacityError",
    "LabelingError",
    "QubitHamiltonian",
    "Spectrum",
    "UnderflowWarning",
    "build_hamiltonian",
    "energy_gap",
    "frequency_shift",
    "p_not_all_zero",
    "perturbative_ground_state",
    "spectrum",
    "thermal_excitation",
    "FIELD_UNIT_FACTOR",
    "ConvergenceError",
    "PendularSolution",
    "QubitPair",
    "build_pendular_hamiltonian",
    "cos_theta_matrix",
    "field_to_x",
    "qubit_pair",
    "solve_pendular",
    "__version__",
]
