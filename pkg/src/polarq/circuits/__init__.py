"""Gate-model toolkit: simulation, cluster states, diagonal-unitary
compilation, IQP probabilities, and the pulse-sequence CNOT check."""

from .core import (
    Circuit,
    CircuitError,
    Gate,
    GraphError,
    StateVector,
    circuit_from_text,
    circuit_to_text,
    cluster_circuit,
    cluster_stabilizer_check,
    prepare_cluster_state,
    simulate,
)
from .diagonal import (
    DiagonalUnitary,
    circulant_walk_phases,
    compile_diagonal,
    iqp_probability,
    long_range_cnot,
    walsh_coefficients,
)
from .nmr import CNOT_MATRIX, CnotSequenceReport, nmr_cnot_sequence

__all__ = [
    "Circuit",
    "CircuitError",
    "Gate",
    "GraphError",
    "StateVector",
    "circuit_from_text",
    "circuit_to_text",
    "cluster_circuit",
    "cluster_stabilizer_check",
    "prepare_cluster_state",
    "simulate",
    "DiagonalUnitary",
    "circulant_walk_phases",
    "compile_diagonal",
    "iqp_probability",
    "long_range_cnot",
    "walsh_coefficients",
    "CNOT_MATRIX",
    "CnotSequenceReport",
    "nmr_cnot_sequence",
]
