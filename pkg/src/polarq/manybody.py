"""Qubit-basis many-body Hamiltonian for an array of pendular-state molecules.

Each molecule is truncated to its two lowest pendular states, so N molecules
span a 2^N product basis.  Basis index b stores molecule i's state in bit
(n-1-i): molecule 0 is the most significant bit and |00...0> is index 0.
The Hamiltonian, in units of B, is

    H = sum_i diag(w0, w1)_i
      + sum_{i<j} omega_ij (1 - 3 cos^2 alpha_ij) (M_i x M_j),

with M = [[c0, xme], [xme, c1]] the cos(theta) matrix in the qubit pair.
Dense diagonalization runs up to 14 qubits; above that an iterative
extremal-eigenpair solver works matrix-free up to the 24-qubit capacity cap.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh

from .lattice import PairCoupling, angular_factor
from .pendular import QubitPair

DENSE_LIMIT = 14
CAPACITY_LIMIT = 24

# Thermal occupations below this are indistinguishable from underflow noise.
_PROBABILITY_FLOOR = 1e-300


class CapacityError(ValueError):
    """Requested molecule count exceeds the 2^24 state-space cap."""


class NormalizationError(ValueError):
    """State vector is not normalized to within 1e-9."""


class InsufficientSpectrumError(ValueError):
    """Operation needs the full spectrum but only part was computed."""


class PerturbationInvalidError(ValueError):
    """Unperturbed levels are degenerate (dw = 0), corrections diverge."""


class LabelingError(RuntimeError):
    """Two eigenstates claim the same maximal-overlap basis label."""


class SolverError(RuntimeError):
    """Iterative eigensolver failed to converge."""


class UnderflowWarning(RuntimeWarning):
    """A probability underflowed to zero and is reported as 0."""


def _coupling_strengths(
    couplings: list[PairCoupling] | tuple[PairCoupling, ...], n: int
) -> list[tuple[int, int, float]]:
    out = []
    for c in couplings:
        if not (0 <= c.i < c.j < n):
            raise IndexError(
                f"coupling ({c.i}, {c.j}) out of range for n={n} molecules"
            )
        out.append((c.i, c.j, c.omega * angular_factor(c.alpha)))
    return out


@dataclass(frozen=True, eq=False)
class QubitHamiltonian:
    """Hamiltonian of n coupled molecules in the 2^n qubit basis, units of B.

    matrix is the dense array for n <= 14 and None above that; the spectral
    routines then fall back to matrix-free application built from qp and
    couplings.
    """

    n: int
    dim: int
    qp: QubitPair
    couplings: tuple[PairCoupling, ...]
    matrix: np.ndarray | None

    def diagonal(self) -> np.ndarray:
        """One-site part plus diagonal coupling contributions, length 2^n."""
        if self.matrix is not None:
            return np.diagonal(self.matrix).copy()
        ones = np.bitwise_count(np.arange(self.dim, dtype=np.uint64)).astype(float)
        diag = self.n * self.qp.w0 + (self.qp.w1 - self.qp.w0) * ones
        m_diag = np.array([self.qp.c0, self.qp.c1])
        for i, j, g in _coupling_strengths(self.couplings, self.n):
            bi = (np.arange(self.dim) >> (self.n - 1 - i)) & 1
            bj = (np.arange(self.dim) >> (self.n - 1 - j)) & 1
            diag += g * m_diag[bi] * m_diag[bj]
        return diag

    def apply(self, v: np.ndarray) -> np.ndarray:
        """H @ v without materializing H."""
        if self.matrix is not None:
            return self.matrix @ v
        m = np.array([[self.qp.c0, self.qp.xme], [self.qp.xme, self.qp.c1]])
        ones = np.bitwise_count(np.arange(self.dim, dtype=np.uint64)).astype(float)
        out = (self.n * self.qp.w0 + (self.qp.w1 - self.qp.w0) * ones) * v
        for i, j, g in _coupling_strengths(self.couplings, self.n):
            t = v.reshape([2] * self.n)
            t = np.moveaxis(np.tensordot(m, t, axes=(1, i)), 0, i)
            t = np.moveaxis(np.tensordot(m, t, axes=(1, j)), 0, j)
            out = out + g * t.reshape(-1)
        return out


def build_hamiltonian(
    qp: QubitPair, couplings: list[PairCoupling], n: int
) -> QubitHamiltonian:
    """Assemble the 2^n qubit-basis Hamiltonian.

    Args:
        qp: single-molecule energies and cos(theta) matrix elements.
        couplings: pairwise Omega_ij/B entries with field angles.
        n: molecule count, 1 <= n <= 24.

    Raises:
        CapacityError: n > 24.
        IndexError: a coupling references a site >= n.
    """
    if n < 1:
        raise ValueError(f"need at least one molecule, got n={n}")
    if n > CAPACITY_LIMIT:
        raise CapacityError(f"n={n} exceeds the {CAPACITY_LIMIT}-molecule cap")
    strengths = _coupling_strengths(couplings, n)
    dim = 1 << n
    if n > DENSE_LIMIT:
        return QubitHamiltonian(
            n=n, dim=dim, qp=qp, couplings=tuple(couplings), matrix=None
        )
    ones = np.bitwise_count(np.arange(dim, dtype=np.uint64)).astype(float)
    h = np.diag(n * qp.w0 + (qp.w1 - qp.w0) * ones)
    m = np.array([[qp.c0, qp.xme], [qp.xme, qp.c1]])
    cols = np.arange(dim)
    for i, j, g in strengths:
        si, sj = n - 1 - i, n - 1 - j
        bi = (cols >> si) & 1
        bj = (cols >> sj) & 1
        cleared = cols & ~(1 << si) & ~(1 << sj)
        for vi in (0, 1):
            for vj in (0, 1):
                rows = cleared | (vi << si) | (vj << sj)
                h[rows, cols] += g * m[vi, bi] * m[vj, bj]
    return QubitHamiltonian(n=n, dim=dim, qp=qp, couplings=tuple(couplings), matrix=h)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Ascending eigenvalues and orthonormal eigenvector columns.

    dim records the full state-space size so consumers can tell a partial
    spectrum from a complete one.  Eigenvector phases are fixed by making the
    largest-magnitude amplitude positive.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    dim: int

    @property
    def complete(self) -> bool:
        return len(self.eigenvalues) == self.dim


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    for k in range(vectors.shape[1]):
        dom = np.argmax(np.abs(vectors[:, k]))
        if vectors[dom, k] < 0:
            vectors[:, k] = -vectors[:, k]
    return vectors


def spectrum(h: QubitHamiltonian, k: int | str = "all") -> Spectrum:
    """Lowest k eigenpairs of h, or all of them.

    Dense mode (n <= 14) supports k = "all"; the matrix-free iterative mode
    needs an explicit small k.

    Raises:
        SolverError: the iterative solver did not converge.
    """
    if h.matrix is not None:
        w, v = np.linalg.eigh(h.matrix)
        if k != "all":
            if not (1 <= int(k) <= h.dim):
                raise ValueError(f"k must be in [1, {h.dim}], got {k}")
            w, v = w[: int(k)], v[:, : int(k)]
        return Spectrum(eigenvalues=w, eigenvectors=_fix_phases(v), dim=h.dim)
    if k == "all":
        raise InsufficientSpectrumError(
            f"full spectrum unavailable for n={h.n} > {DENSE_LIMIT}; pass a small k"
        )
    op = LinearOperator(
        (h.dim, h.dim), matvec=h.apply, dtype=float  # type: ignore[arg-type]
    )
    v0 = np.full(h.dim, 1.0 / np.sqrt(h.dim))
    try:
        w, v = eigsh(op, k=int(k), which="SA", v0=v0)
    except ArpackNoConvergence as exc:
        residuals = [
            float(np.linalg.norm(h.apply(vec) - val * vec))
            for val, vec in zip(exc.eigenvalues, exc.eigenvectors.T)
        ]
        raise SolverError(
            f"eigensolver converged only {len(exc.eigenvalues)}/{k} pairs; "
            f"residuals of the converged ones: {residuals}"
        ) from exc
    order = np.argsort(w)
    return Spectrum(
        eigenvalues=w[order], eigenvectors=_fix_phases(v[:, order]), dim=h.dim
    )


def p_not_all_zero(ground: np.ndarray) -> float:
    """Probability that the ground state is anywhere outside |00...0>.

    Raises:
        NormalizationError: input norm deviates from 1 by more than 1e-9.
    """
    v = np.asarray(ground)
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > 1e-9:
        raise NormalizationError(f"state norm {norm} is not 1 within 1e-9")
    p = 1.0 - float(np.abs(v[0]) ** 2)
    return min(max(p, 0.0), 1.0)


def energy_gap(spec: Spectrum) -> float:
    """E1 - E0 in units of B."""
    if len(spec.eigenvalues) < 2:
        raise ValueError("need at least two eigenvalues for a gap")
    return float(spec.eigenvalues[1] - spec.eigenvalues[0])


def thermal_excitation(spec: Spectrum, kt: float) -> float:
    """Boltzmann probability of not being in the ground state at kT/B = kt.

    The sums are taken after subtracting E0, so only excitation energies
    enter the exponentials.  kt = 0 returns exactly 0.  A positive result
    that underflows below 1e-300 is reported as 0 with an UnderflowWarning.

    Raises:
        InsufficientSpectrumError: spec does not contain all 2^n levels.
    """
    if kt < 0:
        raise ValueError(f"kt must be >= 0, got {kt}")
    if not spec.complete:
        raise InsufficientSpectrumError(
            f"thermal sum needs all {spec.dim} levels, got {len(spec.eigenvalues)}"
        )
    if kt == 0:
        return 0.0
    shifted = spec.eigenvalues - spec.eigenvalues[0]
    with np.errstate(under="ignore"):
        excited = float(np.exp(-shifted[1:] / kt).sum())
    p = excited / (1.0 + excited)
    if p < _PROBABILITY_FLOOR:
        warnings.warn(
            f"thermal excitation underflowed ({p!r}); reporting 0",
            UnderflowWarning,
            stacklevel=2,
        )
        return 0.0
    return p


def perturbative_ground_state(
    qp: QubitPair, couplings: list[PairCoupling], n: int
) -> tuple[np.ndarray, float]:
    """First-order ground state and the quadratic excitation-probability bound.

    The corrected state mixes |00...0> with the single- and double-excitation
    states each pair coupling reaches: amplitude -g c0 xme / dw on each
    single excitation and -g xme^2 / (2 dw) on each double excitation, then
    normalized.  The bound is n * omega_eff^2 * vbar^2 where omega_eff is the
    largest |coupling strength| and vbar the largest per-site accumulated
    matrix element, which caps p_not_all_zero of the exact ground state in
    the perturbative regime.

    Raises:
        PerturbationInvalidError: dw = 0.
    """
    if n < 1:
        raise ValueError(f"need at least one molecule, got n={n}")
    if n > CAPACITY_LIMIT:
        raise CapacityError(f"n={n} exceeds the {CAPACITY_LIMIT}-molecule cap")
    strengths = _coupling_strengths(couplings, n)
    dw = qp.dw
    if dw == 0:
        raise PerturbationInvalidError("qubit splitting dw is zero")
    psi = np.zeros(1 << n)
    psi[0] = 1.0
    omega_eff = max((abs(g) for _, _, g in strengths), default=0.0)
    site_sums = np.zeros(n)
    for i, j, g in strengths:
        amp_single = -g * qp.c0 * qp.xme / dw
        psi[1 << (n - 1 - i)] += amp_single
        psi[1 << (n - 1 - j)] += amp_single
        psi[(1 << (n - 1 - i)) | (1 << (n - 1 - j))] += -g * qp.xme**2 / (2 * dw)
        if omega_eff > 0:
            site_sums[i] += (g / omega_eff) * qp.c0 * qp.xme
            site_sums[j] += (g / omega_eff) * qp.c0 * qp.xme
    psi /= np.linalg.norm(psi)
    vbar = float(np.max(np.abs(site_sums))) if omega_eff > 0 else 0.0
    return psi, n * omega_eff**2 * vbar**2


def frequency_shift(qp: QubitPair, omega: float, alpha: float) -> float:
    """Conditional transition-frequency shift of a coupled molecule pair.

    Diagonalizes the two-molecule Hamiltonian, labels each eigenstate by the
    basis state it overlaps most, and returns
    |(E_11 - E_10) - (E_01 - E_00)| in units of B: how much molecule 1's
    transition moves when molecule 0 is flipped.

    Raises:
        LabelingError: two eigenstates map to the same basis label.
    """
    h = build_hamiltonian(qp, [PairCoupling(i=0, j=1, omega=omega, alpha=alpha)], 2)
    spec = spectrum(h, "all")
    labels = {}
    for col in range(4):
        lab = int(np.argmax(np.abs(spec.eigenvectors[:, col])))
        if lab in labels:
            raise LabelingError(
                f"eigenstates {labels[lab]} and {col} both look like basis "
                f"state {lab:02b}"
            )
        labels[lab] = col
    e = {lab: float(spec.eigenvalues[col]) for lab, col in labels.items()}
    return abs((e[0b11] - e[0b10]) - (e[0b01] - e[0b00]))
