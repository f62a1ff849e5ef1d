"""Simultaneous polynomial root finding (Aberth-Ehrlich) with a companion-matrix fallback."""
from __future__ import annotations

import logging
from typing import Sequence

import numpy as np
from numpy.polynomial import Polynomial

from lgmirror.errors import ConvergenceError, InvalidInputError

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-12
MAX_ITER = 500
# after this many sweeps a stalled iteration is accepted if it is below STALL_TOL
STALL_AFTER = 50
STALL_TOL = 1e-8


def _as_poly(coeffs: Polynomial | Sequence[complex]) -> Polynomial:
    poly = coeffs if isinstance(coeffs, Polynomial) else Polynomial(np.asarray(coeffs, dtype=complex))
    poly = poly.trim()
    if poly.degree() < 1:
        raise InvalidInputError("polynomial must have degree at least 1")
    return poly


def initial_guesses(poly: Polynomial) -> np.ndarray:
    """Points on a circle of the Fujiwara radius, rotated off the real axis."""
    c = np.asarray(poly.coef, dtype=complex)
    n = len(c) - 1
    lead = c[-1]
    ratios = [abs(c[n - i] / lead) ** (1.0 / i) for i in range(1, n + 1)]
    radius = 2.0 * max(max(ratios), 1e-12)
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    return radius * np.exp(1j * angles)


def aberth(poly: Polynomial, z0: np.ndarray, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITER) -> tuple[np.ndarray, int, float]:
    """Run Aberth sweeps from z0; returns (roots, iterations, last relative correction)."""
    dpoly = poly.deriv()
    z = np.array(z0, dtype=complex)
    n = len(z)
    step = np.inf
    for it in range(1, max_iter + 1):
        p, dp = poly(z), dpoly(z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            newton = np.where(dp != 0, p / dp, p)
            w = newton / (1.0 - newton * inv.sum(axis=1))
        if not np.all(np.isfinite(w)):
            break
        z = z - w
        step = float(np.max(np.abs(w) / np.maximum(1.0, np.abs(z)))) if n else 0.0
        if step < tol or (it >= STALL_AFTER and step < STALL_TOL):
            return z, it, step
    return z, max_iter, step


def polish(poly: Polynomial, z: np.ndarray, sweeps: int = 3) -> np.ndarray:
    dpoly = poly.deriv()
    z = np.array(z, dtype=complex)
    for _ in range(sweeps):
        dp = dpoly(z)
        ok = dp != 0
        z[ok] = z[ok] - poly(z[ok]) / dp[ok]
    return z


def solve_polynomial(
    coeffs: Polynomial | Sequence[complex],
    tol: float = DEFAULT_TOL,
    initial: np.ndarray | None = None,
) -> np.ndarray:
    """All complex roots; coefficients are in ascending order of degree."""
    poly = _as_poly(coeffs)
    n = poly.degree()
    z0 = np.asarray(initial, dtype=complex) if initial is not None and len(initial) == n else initial_guesses(poly)
    roots, iterations, step = aberth(poly, z0, tol)
    if step < STALL_TOL and np.all(np.isfinite(roots)):
        logger.debug(f"aberth converged in {iterations} sweeps (step {step:.2e})")
        return roots

    logger.warning(f"aberth stalled at step {step:.2e} after {iterations} sweeps, using companion eigenvalues")
    roots = polish(poly, poly.roots().astype(complex))
    if not np.all(np.isfinite(roots)):
        raise ConvergenceError(f"no finite roots for polynomial of degree {n}")
    return roots


def min_separation(roots: np.ndarray) -> float:
    if len(roots) < 2:
        return np.inf
    diff = np.abs(roots[:, None] - roots[None, :])
    np.fill_diagonal(diff, np.inf)
    return float(diff.min())
