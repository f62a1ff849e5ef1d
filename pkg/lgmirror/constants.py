"""Formal structure constants of the A-side gluing morphisms and their naming."""
from __future__ import annotations

from lgmirror.models import MonomialCoeff

AXES = ("x", "y", "z")

# symbol families: alpha_<a>_<b> for mu2 between the x, y, z generators,
# alpha_delta_<g>/alpha_p<j>_dtilde for the delta gluings, eta_<axis>_<i> for the
# B_i kernels, theta_<j>_<i> for the McKay squares, q_<i>_<j> Novikov weights
FAMILIES = ("alpha", "eta", "theta", "q")


def alpha(a: str, b: str) -> MonomialCoeff:
    return MonomialCoeff.symbol(f"alpha_{a}_{b}")


def eta(axis: str, i: int) -> MonomialCoeff:
    return MonomialCoeff.symbol(f"eta_{axis}_{i}")


def theta(j: int, i: int) -> MonomialCoeff:
    return MonomialCoeff.symbol(f"theta_{j}_{i}")


def novikov(i: int, j: int) -> MonomialCoeff:
    return MonomialCoeff.symbol(f"q_{i}_{j}")


def anti_ratio(a: str, b: str) -> MonomialCoeff:
    """alpha_{a,b}/alpha_{b,a}, the ratio between the two ways of reaching the third generator."""
    return alpha(a, b) / alpha(b, a)


def mckay_ratio(i: int) -> MonomialCoeff:
    return theta(1, i) / theta(2, i)


def delta_ratio(axis: str) -> MonomialCoeff:
    p = "p2" if axis == "x" else "p1"
    return MonomialCoeff.symbol(f"alpha_delta_{axis}0") / MonomialCoeff.symbol(f"alpha_{p}_dtilde")


def qc_monomial() -> MonomialCoeff:
    """alpha_xy alpha_yz alpha_zx / (alpha_yx alpha_zy alpha_xz); equals -q_C."""
    return anti_ratio("x", "y") * anti_ratio("y", "z") * anti_ratio("z", "x")


def rewrite_rules(k: int) -> dict[str, MonomialCoeff]:
    """Eliminate alpha_x_z with q_C = 1 and eta_y_i through the cross-ratios q_{1,i}."""
    rules = {"alpha_x_z": -(alpha("x", "y") * alpha("y", "z") * alpha("z", "x")) / (alpha("y", "x") * alpha("z", "y"))}
    for i in range(2, k + 2):
        rules[f"eta_y_{i}"] = eta("y", 1) * eta("x", i) / (eta("x", 1) * novikov(1, i))
    return rules


def cross_ratio(i: int, j: int) -> MonomialCoeff:
    return (eta("y", i) / eta("x", i)) / (eta("y", j) / eta("x", j))
