"""Shared fixtures: session-cached qubit pairs and chain ground states."""

import pytest

from polarq import (
    build_hamiltonian,
    linear_array,
    pair_couplings,
    qubit_pair,
    solve_pendular,
    spectrum,
)


@pytest.fixture(scope="session")
def qp():
    """Qubit pair at reduced field x, cached across the whole run."""
    cache = {}

    def get(x: float):
        if x not in cache:
            cache[x] = qubit_pair(solve_pendular(x))
        return cache[x]

    return get


@pytest.fixture(scope="session")
def chain_spectrum(qp):
    """Full spectrum of an n-molecule chain at (x, omega), cached."""
    cache = {}

    def get(n: int, x: float, omega: float):
        key = (n, x, omega)
        if key not in cache:
            h = build_hamiltonian(qp(x), pair_couplings(linear_array(n), omega), n)
            cache[key] = spectrum(h, "all")
        return cache[key]

    return get
