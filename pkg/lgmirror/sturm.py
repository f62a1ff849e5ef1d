"""Exact real-root counts for h(y) = y^k - (y - t0)^2 by Sturm sequences.

Substituting y = t0 w gives h = t0^2 (c w^k - (w - 1)^2) with c = t0^(k-2), so the
count only depends on c and stays in exact rational arithmetic.
"""
from __future__ import annotations

import logging

import numpy as np
from sympy import Poly, Rational, sqf_list, sturm, symbols

from lgmirror.errors import CheckFailure, InvalidInputError
from lgmirror.models import SturmCount

logger = logging.getLogger(__name__)

w = symbols("w")

IMAG_TOL = 1e-9


def t_double(k: int) -> float:
    """The t0 at which h acquires a double real root: ((k-2)/k)(2/k)^(2/(k-2))."""
    return (k - 2) / k * (2 / k) ** (2 / (k - 2))


def t_double_bound(k: int) -> float:
    """t0 solving (1/t0)^(k-2) = ((k/(k-2))^(k-2) - 1) k^2/4."""
    return (((k / (k - 2)) ** (k - 2) - 1) * k * k / 4) ** (-1 / (k - 2))


def _reduced(k: int, c: Rational) -> Poly:
    return Poly(c * w ** k - (w - 1) ** 2, w, domain="QQ")


def _sign_changes(values: list) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _real_roots(poly: Poly) -> int:
    """Distinct real roots: sign changes of the Sturm chain at -oo minus those at +oo."""
    if poly.degree() < 1:
        return 0
    chain = sturm(poly)
    at_minus = [p.LC() * (-1) ** p.degree() for p in chain]
    at_plus = [p.LC() for p in chain]
    return _sign_changes(at_minus) - _sign_changes(at_plus)


def _counts(k: int, c: Rational) -> tuple[int, int]:
    g = _reduced(k, c)
    distinct = _real_roots(g)
    _, factors = sqf_list(g)
    with_multiplicity = sum(m * _real_roots(Poly(f, w, domain="QQ")) for f, m in factors)
    return distinct, with_multiplicity


def numeric_real_roots(k: int, t0: float) -> int:
    """Independent count from floating-point roots of y^k - (y - t0)^2."""
    coeffs = np.zeros(k + 1)
    coeffs[0] = 1.0
    coeffs[-3:] += [-1.0, 2 * t0, -t0 * t0]
    roots = np.roots(coeffs)
    return int(np.sum(np.abs(roots.imag) < IMAG_TOL))


def _check_k(k: int) -> None:
    if k < 3:
        raise InvalidInputError(f"k must be at least 3, got {k}")


def sturm_real_roots(k: int, t0: float, cross_check: bool = True) -> SturmCount:
    _check_k(k)
    if t0 <= 0:
        raise InvalidInputError(f"t0 must be positive, got {t0}")
    c = Rational(str(t0)) ** (k - 2)
    distinct, with_multiplicity = _counts(k, c)
    numeric = numeric_real_roots(k, t0) if cross_check else None
    if numeric is not None and numeric != distinct and distinct == with_multiplicity:
        raise CheckFailure(
            f"Sturm count {distinct} disagrees with numeric count {numeric} for k={k}, t0={t0}",
            details={"k": k, "t0": t0, "sturm": distinct, "numeric": numeric},
        )
    logger.debug(f"k={k}, t0={t0}: {distinct} distinct real roots ({with_multiplicity} with multiplicity)")
    return SturmCount(
        k=k, t0=t0, distinct=distinct, with_multiplicity=with_multiplicity, numeric=numeric,
        t_double=t_double(k), t_double_bound=t_double_bound(k),
    )


def sturm_at_double_point(k: int) -> SturmCount:
    """Counts at the exact double point, where c = ((k-2)/k)^(k-2) 4/k^2."""
    _check_k(k)
    c = Rational(k - 2, k) ** (k - 2) * Rational(4, k * k)
    distinct, with_multiplicity = _counts(k, c)
    if with_multiplicity != distinct + 1:
        raise CheckFailure(f"no double root detected at t_double for k={k}: {distinct} vs {with_multiplicity}")
    return SturmCount(
        k=k, t0=t_double(k), distinct=distinct, with_multiplicity=with_multiplicity,
        t_double=t_double(k), t_double_bound=t_double_bound(k),
    )
