"""Gate application, cluster states, and circuit serialization.

Every gate kernel is checked against a literal Kronecker-product unitary
assembled in the same big-endian convention (qubit 0 = leftmost factor).
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polarq.circuits import (
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

H = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
X = np.array([[0, 1], [1, 0]])
Z = np.diag([1, -1])


def rz(theta):
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def kron_1q(u, q, n):
    out = np.array([[1.0]])
    for k in range(n):
        out = np.kron(out, u if k == q else np.eye(2))
    return out


def kron_2q(name, a, b, n):
    """Projector decomposition: control a, second operand b."""
    p0, p1 = np.diag([1.0, 0.0]), np.diag([0.0, 1.0])
    if name == "CNOT":
        return kron_pair(p0, np.eye(2), a, b, n) + kron_pair(p1, X, a, b, n)
    if name == "CZ":
        return kron_pair(p0, np.eye(2), a, b, n) + kron_pair(p1, Z, a, b, n)
    if name == "SWAP":
        return (
            kron_2q("CNOT", a, b, n)
            @ kron_2q("CNOT", b, a, n)
            @ kron_2q("CNOT", a, b, n)
        )
    raise AssertionError(name)


def kron_pair(ua, ub, a, b, n):
    out = np.array([[1.0 + 0j]])
    for k in range(n):
        out = np.kron(out, ua if k == a else ub if k == b else np.eye(2))
    return out


def dense_unitary(circuit):
    dim = 1 << circuit.n
    cols = []
    for b in range(dim):
        cols.append(simulate(circuit, StateVector.basis(circuit.n, b)).amplitudes)
    return np.array(cols).T


@pytest.mark.parametrize("name,u", [("H", H), ("X", X), ("Z", Z)])
@pytest.mark.parametrize("q,n", [(0, 1), (0, 3), (1, 3), (2, 3)])
def test_single_qubit_gates_match_kron(name, u, q, n):
    got = dense_unitary(Circuit(n=n, gates=(Gate(name, (q,)),)))
    assert np.max(np.abs(got - kron_1q(u, q, n))) < 1e-12


@pytest.mark.parametrize("q,n", [(0, 2), (1, 2), (2, 3)])
def test_rz_matches_kron(q, n):
    got = dense_unitary(Circuit(n=n, gates=(Gate("RZ", (q,), 0.7),)))
    assert np.max(np.abs(got - kron_1q(rz(0.7), q, n))) < 1e-12


def test_global_phase_gate():
    got = dense_unitary(Circuit(n=2, gates=(Gate("PHASE", (), -1.3),)))
    assert np.max(np.abs(got - np.exp(-1.3j) * np.eye(4))) < 1e-12


@pytest.mark.parametrize("name", ["CNOT", "CZ", "SWAP"])
@pytest.mark.parametrize("a,b,n", [(0, 1, 2), (1, 0, 2), (0, 2, 3), (2, 0, 3), (1, 2, 4)])
def test_two_qubit_gates_match_kron(name, a, b, n):
    got = dense_unitary(Circuit(n=n, gates=(Gate(name, (a, b)),)))
    assert np.max(np.abs(got - kron_2q(name, a, b, n))) < 1e-12


def test_cnot_truth_table():
    c = Circuit(n=2, gates=(Gate("CNOT", (0, 1)),))
    for src, dst in [(0b00, 0b00), (0b01, 0b01), (0b10, 0b11), (0b11, 0b10)]:
        out = simulate(c, StateVector.basis(2, src)).amplitudes
        assert out[dst] == pytest.approx(1.0)


def test_gate_sequencing_and_identities():
    c = Circuit(n=1, gates=(Gate("H", (0,)), Gate("H", (0,))))
    assert np.allclose(dense_unitary(c), np.eye(2), atol=1e-12)
    empty = Circuit(n=3, gates=())
    assert np.allclose(dense_unitary(empty), np.eye(8), atol=1e-15)
    chained = Circuit(n=2, gates=(Gate("X", (0,)),)).then(
        Circuit(n=2, gates=(Gate("CNOT", (0, 1)),))
    )
    assert simulate(chained).amplitudes[0b11] == pytest.approx(1.0)


def test_gate_count_and_nearest_neighbor_flag():
    c = Circuit(
        n=3,
        gates=(Gate("H", (0,)), Gate("CNOT", (0, 1)), Gate("CNOT", (1, 2))),
    )
    assert c.gate_count() == 3
    assert c.gate_count("CNOT") == 2
    assert c.nearest_neighbor
    far = Circuit(n=3, gates=(Gate("CNOT", (0, 2)),))
    assert not far.nearest_neighbor


@pytest.mark.parametrize(
    "gate",
    [
        Gate("H", (0, 1)),
        Gate("CNOT", (1, 1)),
        Gate("RZ", (0,)),
        Gate("H", (0,), theta=0.5),
        Gate("RZ", (0,), theta=float("nan")),
        Gate("PHASE", (0,), theta=0.5),
        Gate("Q", (0,)),
        Gate("H", (5,)),
    ],
)
def test_gate_validation(gate):
    with pytest.raises(CircuitError):
        Circuit(n=2, gates=(gate,))


def test_circuit_needs_a_qubit():
    with pytest.raises(CircuitError):
        Circuit(n=0, gates=())


def test_state_vector_validation():
    with pytest.raises(ValueError):
        StateVector(n=2, amplitudes=np.ones(4, dtype=complex))
    with pytest.raises(ValueError):
        StateVector(n=2, amplitudes=np.zeros(3, dtype=complex))
    with pytest.raises(ValueError):
        simulate(Circuit(n=2, gates=()), StateVector.basis(3, 0))


def test_cluster_single_qubit_is_plus():
    state = prepare_cluster_state([], 1)
    assert np.allclose(state.amplitudes, np.full(2, 1 / np.sqrt(2)), atol=1e-12)
    assert cluster_stabilizer_check(state, []) == pytest.approx([1.0], abs=1e-12)


def test_cluster_two_qubit_amplitudes():
    state = prepare_cluster_state([(0, 1)], 2)
    want = np.array([1, 1, 1, -1]) / 2
    assert np.allclose(state.amplitudes, want, atol=1e-12)


def test_cluster_circuit_composition():
    c = cluster_circuit([(0, 1), (1, 2)], 3)
    assert c.gate_count("H") == 3
    assert c.gate_count("CZ") == 2
    checks = cluster_stabilizer_check(simulate(c), [(0, 1), (1, 2)])
    assert checks == pytest.approx([1.0, 1.0, 1.0], abs=1e-12)


def test_stabilizer_detects_wrong_state():
    zeros = StateVector.basis(3, 0)
    # <000| X_a ... |000> = 0 for every vertex
    assert cluster_stabilizer_check(zeros, [(0, 1)]) == pytest.approx(
        [0.0, 0.0, 0.0], abs=1e-12
    )


def test_graph_validation():
    with pytest.raises(GraphError):
        cluster_circuit([(0, 0)], 3)
    with pytest.raises(GraphError):
        cluster_circuit([(0, 1), (1, 0)], 3)
    with pytest.raises(GraphError):
        cluster_circuit([(0, 5)], 3)


def test_serialization_round_trip_explicit():
    c = Circuit(
        n=4,
        gates=(
            Gate("H", (0,)),
            Gate("RZ", (2,), -0.123456789012345),
            Gate("CNOT", (0, 3)),
            Gate("PHASE", (), 2.5),
            Gate("SWAP", (1, 2)),
        ),
    )
    text = circuit_to_text(c)
    assert text.startswith("# qubits=4\n")
    back = circuit_from_text(text)
    assert back.n == c.n
    assert back.gates == c.gates


def test_serialization_errors():
    with pytest.raises(CircuitError):
        circuit_from_text("H 0\n")
    with pytest.raises(CircuitError):
        circuit_from_text("# qubits=2\nQUUX 0\n")
    with pytest.raises(CircuitError):
        circuit_from_text("# qubits=2\nRZ 0\n")
    with pytest.raises(CircuitError):
        circuit_from_text("# qubits=2\nCNOT 0,x\n")


@st.composite
def random_circuits(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    gates = []
    for _ in range(draw(st.integers(min_value=0, max_value=12))):
        kind = draw(st.sampled_from(["H", "X", "Z", "RZ", "PHASE", "CNOT", "CZ", "SWAP"]))
        if kind in ("CNOT", "CZ", "SWAP"):
            if n < 2:
                continue
            a = draw(st.integers(min_value=0, max_value=n - 1))
            b = draw(st.integers(min_value=0, max_value=n - 1).filter(lambda v: v != a))
            gates.append(Gate(kind, (a, b)))
        elif kind == "RZ":
            q = draw(st.integers(min_value=0, max_value=n - 1))
            theta = draw(st.floats(min_value=-10, max_value=10, allow_nan=False))
            gates.append(Gate("RZ", (q,), theta))
        elif kind == "PHASE":
            theta = draw(st.floats(min_value=-10, max_value=10, allow_nan=False))
            gates.append(Gate("PHASE", (), theta))
        else:
            q = draw(st.integers(min_value=0, max_value=n - 1))
            gates.append(Gate(kind, (q,)))
    return Circuit(n=n, gates=tuple(gates))


@settings(deadline=None, max_examples=40)
@given(random_circuits())
def test_serialization_round_trip_random(circuit):
    back = circuit_from_text(circuit_to_text(circuit))
    assert back.n == circuit.n
    assert back.gates == circuit.gates


@settings(deadline=None, max_examples=25)
@given(random_circuits())
def test_simulation_preserves_norm(circuit):
    out = simulate(circuit)
    assert np.linalg.norm(out.amplitudes) == pytest.approx(1.0, abs=1e-10)
