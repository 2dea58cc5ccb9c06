"""Statevector circuit simulator over a small fixed gate vocabulary.

Gates: H, X, Z, RZ(theta), global PHASE(theta), CNOT, CZ, SWAP.  Qubit 0 is
the most significant bit of the basis index, matching the many-body module,
so reshaping an amplitude vector to [2]*n puts qubit q on axis q.
RZ(theta) = diag(e^{-i theta/2}, e^{+i theta/2}).

Circuits serialize one gate per line as ``GATE q[,q2][,theta]`` under a
``# qubits=N`` header; the round-trip is exact because angles are written
with repr.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

SINGLE_QUBIT_GATES = ("H", "X", "Z", "RZ")
TWO_QUBIT_GATES = ("CNOT", "CZ", "SWAP")

_H = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)
_X = np.array([[0.0, 1.0], [1.0, 0.0]])
_Z = np.array([[1.0, 0.0], [0.0, -1.0]])


class CircuitError(ValueError):
    """Malformed gate: bad name, bad qubit index, or missing angle."""


class GraphError(ValueError):
    """Graph is not simple (self-loop or repeated edge)."""


@dataclass(frozen=True)
class Gate:
    """One gate: name, qubit tuple (empty for PHASE), optional angle."""

    name: str
    qubits: tuple[int, ...] = ()
    theta: float | None = None


def _check_gate(g: Gate, n: int) -> None:
    if g.name in SINGLE_QUBIT_GATES:
        if len(g.qubits) != 1:
            raise CircuitError(f"{g.name} takes one qubit, got {g.qubits}")
    elif g.name in TWO_QUBIT_GATES:
        if len(g.qubits) != 2 or g.qubits[0] == g.qubits[1]:
            raise CircuitError(f"{g.name} takes two distinct qubits, got {g.qubits}")
    elif g.name == "PHASE":
        if g.qubits:
            raise CircuitError(f"PHASE is global, got qubits {g.qubits}")
    else:
        raise CircuitError(f"unknown gate {g.name!r}")
    if any(not 0 <= q < n for q in g.qubits):
        raise CircuitError(f"{g.name} on {g.qubits} out of range for n={n}")
    if g.name in ("RZ", "PHASE"):
        if g.theta is None or not math.isfinite(g.theta):
            raise CircuitError(f"{g.name} needs a finite angle, got {g.theta}")
    elif g.theta is not None:
        raise CircuitError(f"{g.name} takes no angle")


@dataclass(frozen=True, eq=False)
class Circuit:
    """Ordered gate list on n qubits; validated on construction."""

    n: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise CircuitError(f"need at least one qubit, got n={self.n}")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            _check_gate(g, self.n)

    @property
    def nearest_neighbor(self) -> bool:
        """True iff every two-qubit gate acts on adjacent indices."""
        return all(
            abs(g.qubits[0] - g.qubits[1]) == 1
            for g in self.gates
            if g.name in TWO_QUBIT_GATES
        )

    def gate_count(self, name: str | None = None) -> int:
        if name is None:
            return len(self.gates)
        return sum(1 for g in self.gates if g.name == name)

    def then(self, other: "Circuit") -> "Circuit":
        if other.n != self.n:
            raise CircuitError(f"cannot join circuits on {self.n} and {other.n} qubits")
        return Circuit(n=self.n, gates=self.gates + other.gates)


@dataclass(frozen=True, eq=False)
class StateVector:
    """2^n complex amplitudes, unit norm, qubit 0 = most significant bit."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.shape != (1 << self.n,):
            raise ValueError(
                f"need {1 << self.n} amplitudes for n={self.n}, got {amp.shape}"
            )
        if abs(np.linalg.norm(amp) - 1.0) > 1e-10:
            raise ValueError("state vector is not normalized within 1e-10")
        object.__setattr__(self, "amplitudes", amp)

    @classmethod
    def basis(cls, n: int, index: int = 0) -> "StateVector":
        amp = np.zeros(1 << n, dtype=complex)
        amp[index] = 1.0
        return cls(n=n, amplitudes=amp)


def _apply_single(amp: np.ndarray, u: np.ndarray, q: int, n: int) -> np.ndarray:
    t = amp.reshape([2] * n)
    t = np.moveaxis(np.tensordot(u, t, axes=(1, q)), 0, q)
    return t.reshape(-1)


def _apply_gate(amp: np.ndarray, g: Gate, n: int) -> np.ndarray:
    if g.name == "H":
        return _apply_single(amp, _H, g.qubits[0], n)
    if g.name == "X":
        return _apply_single(amp, _X, g.qubits[0], n)
    if g.name == "Z":
        return _apply_single(amp, _Z, g.qubits[0], n)
    if g.name == "RZ":
        rz = np.array(
            [[cmath.exp(-0.5j * g.theta), 0.0], [0.0, cmath.exp(0.5j * g.theta)]]
        )
        return _apply_single(amp, rz, g.qubits[0], n)
    if g.name == "PHASE":
        return amp * cmath.exp(1j * g.theta)
    if g.name == "CNOT":
        c, t = g.qubits
        a = amp.reshape([2] * n).copy()
        sel: list = [slice(None)] * n
        sel[c] = 1
        # axis t shifts down by one inside the control=1 slice when t > c
        a[tuple(sel)] = np.flip(a[tuple(sel)], axis=t if t < c else t - 1)
        return a.reshape(-1)
    if g.name == "CZ":
        a, b = g.qubits
        t = amp.reshape([2] * n).copy()
        sel = [slice(None)] * n
        sel[a] = 1
        sel[b] = 1
        t[tuple(sel)] = -t[tuple(sel)]
        return t.reshape(-1)
    if g.name == "SWAP":
        a, b = g.qubits
        return np.swapaxes(amp.reshape([2] * n), a, b).reshape(-1)
    raise CircuitError(f"unknown gate {g.name!r}")


def simulate(circuit: Circuit, state: StateVector | None = None) -> StateVector:
    """Apply the circuit gate by gate; defaults to the |00...0> input."""
    if state is None:
        state = StateVector.basis(circuit.n)
    if state.n != circuit.n:
        raise CircuitError(
            f"state on {state.n} qubits does not match circuit on {circuit.n}"
        )
    amp = state.amplitudes
    for g in circuit.gates:
        amp = _apply_gate(amp, g, circuit.n)
    return StateVector(n=circuit.n, amplitudes=amp)


def _check_graph(edges, n: int) -> list[tuple[int, int]]:
    seen = set()
    out = []
    for a, b in edges:
        if a == b:
            raise GraphError(f"self-loop on vertex {a}")
        if not (0 <= a < n and 0 <= b < n):
            raise GraphError(f"edge ({a}, {b}) out of range for n={n}")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise GraphError(f"repeated edge {key}")
        seen.add(key)
        out.append(key)
    return out


def cluster_circuit(edges, n: int) -> Circuit:
    """H on every qubit, then CZ across every edge of the graph."""
    es = _check_graph(edges, n)
    gates = [Gate("H", (q,)) for q in range(n)]
    gates += [Gate("CZ", e) for e in es]
    return Circuit(n=n, gates=tuple(gates))


def cluster_stabilizer_check(state: StateVector, edges) -> list[float]:
    """<K_a> for every vertex, K_a = X_a prod_{b in N(a)} Z_b.

    Each expectation is +1 exactly when the state is the cluster state of
    the graph.
    """
    es = _check_graph(edges, state.n)
    neighbors: dict[int, list[int]] = {a: [] for a in range(state.n)}
    for a, b in es:
        neighbors[a].append(b)
        neighbors[b].append(a)
    out = []
    for a in range(state.n):
        phi = _apply_single(state.amplitudes, _X, a, state.n)
        for b in neighbors[a]:
            phi = _apply_single(phi, _Z, b, state.n)
        out.append(float(np.vdot(state.amplitudes, phi).real))
    return out


def prepare_cluster_state(edges, n: int) -> StateVector:
    """Cluster state of the graph, verified against its stabilizers.

    Raises:
        GraphError: graph has a self-loop or repeated edge.
    """
    state = simulate(cluster_circuit(edges, n))
    checks = cluster_stabilizer_check(state, edges)
    if any(abs(v - 1.0) > 1e-10 for v in checks):
        raise AssertionError(f"stabilizer check failed: {checks}")
    return state


def circuit_to_text(circuit: Circuit) -> str:
    """Serialize: header line, then one ``GATE q[,q2][,theta]`` per line."""
    lines = [f"# qubits={circuit.n}"]
    for g in circuit.gates:
        parts = [str(q) for q in g.qubits]
        if g.theta is not None:
            parts.append(repr(g.theta))
        lines.append(f"{g.name} {','.join(parts)}" if parts else g.name)
    return "\n".join(lines) + "\n"


def circuit_from_text(text: str) -> Circuit:
    """Parse the serialization produced by circuit_to_text.

    Raises:
        CircuitError: missing header, unknown gate, or malformed arguments.
    """
    n = None
    gates = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if body.startswith("qubits="):
                n = int(body.removeprefix("qubits="))
            continue
        name, _, rest = line.partition(" ")
        args = [a for a in rest.split(",") if a.strip()] if rest.strip() else []
        if name not in SINGLE_QUBIT_GATES + TWO_QUBIT_GATES + ("PHASE",):
            raise CircuitError(f"line {lineno}: unknown gate {name!r}")
        try:
            if name == "RZ":
                gates.append(Gate("RZ", (int(args[0]),), float(args[1])))
            elif name == "PHASE":
                gates.append(Gate("PHASE", (), float(args[0])))
            elif name in TWO_QUBIT_GATES:
                gates.append(Gate(name, (int(args[0]), int(args[1]))))
            else:
                gates.append(Gate(name, (int(args[0]),)))
        except (IndexError, ValueError) as exc:
            raise CircuitError(f"line {lineno}: cannot parse {line!r}") from exc
    if n is None:
        raise CircuitError("missing '# qubits=N' header")
    return Circuit(n=n, gates=tuple(gates))
