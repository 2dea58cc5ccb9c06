"""Empirical formulas for excitation probability and pairwise concurrence.

Two fitted closed forms summarize the exact diagonalization results:

  P  ~  (N - 2) * f(x) * (10^4 * Omega/B)^2        with f an asymmetric
                                                    double-sigmoid in x,
  C_nn  ~  K(x) * Omega/B                           with K a single sigmoid.

Both parameter sets are frozen defaults on their dataclasses but can be
overridden, e.g. to test sensitivity or re-fit.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

# Stated calibration window of the P fit: N > 3, 0 < x <= 8, Omega/B <= 1e-2.
P_FIT_OMEGA_MAX = 1e-2
P_FIT_X_MAX = 8.0


class ValidityWarning(UserWarning):
    """Inputs fall outside the calibration window of a fitted formula."""


@dataclass(frozen=True)
class FitParamsF:
    """Double-sigmoid parameters of f(x) in the excitation-probability fit."""

    y0: float = 3.25724e-11
    a: float = 8.89294e-10
    xc: float = 0.78549
    dx1: float = 0.28914
    dx2: float = 1.50288


@dataclass(frozen=True)
class FitParamsK:
    """Sigmoid parameters of K(x) in the concurrence fit."""

    a1: float = 0.01092
    a2: float = 0.2195
    x0: float = 0.9658
    dx: float = 0.9743


def f_of_x(x: float, params: FitParamsF = FitParamsF()) -> float:
    """Asymmetric double sigmoidal f(x).

    f = y0 + A / (1 + e^{-(x-xc)/dx1}) * (1 - 1 / (1 + e^{-(x-xc)/dx2})).
    """
    if x <= 0:
        raise ValueError(f"f(x) is calibrated for x > 0, got {x}")
    rise = 1.0 / (1.0 + math.exp(-(x - params.xc) / params.dx1))
    fall = 1.0 - 1.0 / (1.0 + math.exp(-(x - params.xc) / params.dx2))
    return params.y0 + params.a * rise * fall


def p_fit(
    n: int, x: float, omega: float, params: FitParamsF = FitParamsF()
) -> float:
    """Fitted ground-state excitation probability (n - 2) f(x) (10^4 omega)^2.

    Inputs outside the calibration window (n > 3, 0 < x <= 8,
    0 <= omega <= 1e-2) emit a ValidityWarning but still evaluate.
    """
    if omega < 0:
        raise ValueError(f"omega must be >= 0, got {omega}")
    if n <= 3 or not 0 < x <= P_FIT_X_MAX or omega > P_FIT_OMEGA_MAX:
        warnings.warn(
            f"(n={n}, x={x}, omega={omega}) outside the fit's calibration "
            f"window n>3, 0<x<=8, omega<=1e-2",
            ValidityWarning,
            stacklevel=2,
        )
    return (n - 2) * f_of_x(x, params) * (1e4 * omega) ** 2


def k_of_x(x: float, params: FitParamsK = FitParamsK()) -> float:
    """Concurrence-per-coupling factor K(x) = a1 + a2 / (1 + e^{(x-x0)/dx})."""
    if x < 0:
        raise ValueError(f"K(x) is calibrated for x >= 0, got {x}")
    return params.a1 + params.a2 / (1.0 + math.exp((x - params.x0) / params.dx))


def c_fit(x: float, omega: float, params: FitParamsK = FitParamsK()) -> float:
    """Fitted nearest-neighbor concurrence K(x) * omega."""
    if omega < 0:
        raise ValueError(f"omega must be >= 0, got {omega}")
    return k_of_x(x, params) * omega


@dataclass(frozen=True, eq=False)
class ResidualReport:
    """Pointwise relative errors of a fit against exact values."""

    relative_errors: np.ndarray
    max_relative_error: float
    mean_relative_error: float


def residual_report(exact, fitted) -> ResidualReport:
    """Relative errors |fitted - exact| / |exact| over aligned grids.

    Points where exact = 0 contribute 0 when fitted = 0 too, else inf.

    Raises:
        ValueError: grid shapes differ.
    """
    e = np.asarray(exact, dtype=float)
    f = np.asarray(fitted, dtype=float)
    if e.shape != f.shape:
        raise ValueError(f"grid shapes differ: {e.shape} vs {f.shape}")
    diff = np.abs(f - e)
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(diff == 0, 0.0, diff / np.abs(e))
    return ResidualReport(
        relative_errors=rel,
        max_relative_error=float(np.max(rel)) if rel.size else 0.0,
        mean_relative_error=float(np.mean(rel)) if rel.size else 0.0,
    )
