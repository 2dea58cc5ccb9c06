#!/usr/bin/env python3
"""Print how well the fitted formulas track exact diagonalization.

Covers the excitation-probability fit over its (n, x, omega) grid and the
concurrence fit at n=2, and prints max/mean relative errors per grid.

Usage: python scripts/fit_residual_report.py
"""

import sys

import numpy as np

from polarq import (
    build_hamiltonian,
    c_fit,
    concurrence,
    linear_array,
    p_fit,
    p_not_all_zero,
    pair_couplings,
    qubit_pair,
    reduce,
    residual_report,
    solve_pendular,
    spectrum,
)


def _ground(qp, n, omega):
    h = build_hamiltonian(qp, pair_couplings(linear_array(n), omega), n)
    return spectrum(h, "all").eigenvectors[:, 0]


def main() -> int:
    print("excitation-probability fit, linear chains")
    print(f"{'n':>3} {'x':>5} {'omega':>9} {'exact':>12} {'fit':>12} {'rel':>8}")
    exact_vals, fit_vals = [], []
    for x in (2.0, 3.0, 4.9):
        qp = qubit_pair(solve_pendular(x))
        for n in range(4, 9):
            for omega in (1e-4, 1e-3):
                exact = p_not_all_zero(_ground(qp, n, omega))
                fit = p_fit(n, x, omega)
                exact_vals.append(exact)
                fit_vals.append(fit)
                rel = abs(fit - exact) / exact
                print(
                    f"{n:>3} {x:>5} {omega:>9.0e} {exact:>12.4e} "
                    f"{fit:>12.4e} {rel:>8.2%}"
                )
    rep = residual_report(np.array(exact_vals), np.array(fit_vals))
    print(f"max {rep.max_relative_error:.2%}  mean {rep.mean_relative_error:.2%}")

    print("\nconcurrence fit, n=2, omega=1e-3")
    print(f"{'x':>5} {'exact':>12} {'fit':>12} {'rel':>8}")
    exact_vals, fit_vals = [], []
    for x in (1.0, 2.0, 4.0):
        qp = qubit_pair(solve_pendular(x))
        c = concurrence(reduce(_ground(qp, 2, 1e-3), 0, 1))
        fit = c_fit(x, 1e-3)
        exact_vals.append(c)
        fit_vals.append(fit)
        print(f"{x:>5} {c:>12.4e} {fit:>12.4e} {abs(fit - c) / c:>8.2%}")
    rep = residual_report(np.array(exact_vals), np.array(fit_vals))
    print(f"max {rep.max_relative_error:.2%}  mean {rep.mean_relative_error:.2%}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
