"""Critical points, branch points and gradient bounds of the LG potential f_s = P(y)/(xy) + s x + T(y)."""
from __future__ import annotations

import logging
from math import gcd

import numpy as np
from numpy.polynomial import Polynomial
from scipy.optimize import linear_sum_assignment

from lgmirror.errors import CheckFailure, InvalidInputError, TrackingError
from lgmirror.models import (
    BranchKind, BranchPoint, BranchSet, CriticalPoint, CriticalSet, CriticalType, LGSpec, NewtonCount,
    PalaisSmaleResult,
)
from lgmirror.roots import DEFAULT_TOL, min_separation, solve_polynomial

logger = logging.getLogger(__name__)

# a type III point must sit within this fraction of the P-root spacing
CLUSTER_FRACTION = 0.25
SEPARATION_WARNING = 10.0
# cluster types are read off at s <= ASYMPTOTIC_S / k^3 and continued from there
ASYMPTOTIC_S = 1e-6
CONTINUATION_RATIO = 1.5
CONTINUATION_SAFETY = 4.0
MIN_LOG_STEP = 1e-6
# relative twin offset above which |t| is no longer small against the outer radius
TWIN_REGIME = 0.5


# --- polynomial data ---

def p_poly(spec: LGSpec) -> Polynomial:
    if spec.q is None:
        return Polynomial([1.0, 1.0]) ** (spec.k + 1) + spec.delta
    poly = Polynomial([1.0])
    for q in spec.q:
        poly = poly * Polynomial([q, 1.0])
    return poly


def t_poly(spec: LGSpec) -> Polynomial:
    return Polynomial([0.0, *spec.tau])


def p_roots(spec: LGSpec) -> np.ndarray:
    roots = solve_polynomial(p_poly(spec))
    sep = min_separation(roots)
    if sep < 1e-9 * max(1.0, float(np.max(np.abs(roots)))):
        raise InvalidInputError(f"P has a repeated root (separation {sep:.2e}); the potential is degenerate")
    return roots


def critical_polynomial(spec: LGSpec) -> Polynomial:
    """(P - yP')^2 - P y^3 T'(y)^2 / s, of degree 2k+2."""
    p, dt = p_poly(spec), t_poly(spec).deriv()
    y = Polynomial([0.0, 1.0])
    return (p - y * p.deriv()) ** 2 - p * y ** 3 * dt ** 2 / spec.s


def branch_polynomial(spec: LGSpec, t: complex) -> Polynomial:
    """4sP(y) - y(t - T(y))^2, whose roots are the branch points over t."""
    y = Polynomial([0.0, 1.0])
    gap = Polynomial([complex(t)]) - t_poly(spec)
    return 4 * spec.s * Polynomial(p_poly(spec).coef.astype(complex)) - y * gap ** 2


def type_one_prediction(k: int, s: float) -> float:
    """Asymptotic |t| of the type I critical values, ((k-2)/k)(1/(k^2 s))^(1/(k-2))."""
    return (k - 2) / k * (1.0 / (k * k * s)) ** (1.0 / (k - 2))


def type_one_displayed(k: int, s: float) -> float:
    return (k - 2) / k * (1.0 / s) ** (1.0 / (k - 2))


def outer_branch_prediction(k: int, s: float) -> float:
    return (1.0 / (4 * s)) ** (1.0 / (k - 2))


def _geomean(values: list[complex]) -> float:
    return float(np.exp(np.mean(np.log(np.abs(values))))) if values else 0.0


# --- critical points ---

def _cluster_predictions(spec: LGSpec) -> tuple[np.ndarray, list[CriticalType]]:
    """Asymptotic positions: y^3 = s/tau_1^2 for type II, k^2 y^(k-2) = tau_1^2/s for type I."""
    k, s = spec.k, spec.s
    # clusters are predicted from the linear term of T
    tau = abs(spec.tau[0]) or 1.0
    small = (s / tau ** 2) ** (1 / 3) * np.exp(2j * np.pi * np.arange(3) / 3)
    large = (tau ** 2 / (k * k * s)) ** (1 / (k - 2)) * np.exp(2j * np.pi * np.arange(k - 2) / (k - 2))
    return np.concatenate([small, large]), [CriticalType.II] * 3 + [CriticalType.I] * (k - 2)


def _label_by_prediction(spec: LGSpec, ys: np.ndarray) -> list[CriticalType]:
    """Labels in the asymptotic regime: III by nearest roots of P, then I and II by predicted position."""
    roots_p = p_roots(spec)
    _, cols = linear_sum_assignment(np.abs(roots_p[:, None] - ys[None, :]))
    labels = [CriticalType.III] * len(ys)
    rest = [i for i in range(len(ys)) if i not in set(int(c) for c in cols)]
    predicted, kinds = _cluster_predictions(spec)
    # match on a log scale: |log(y / predicted)|
    cost = np.abs(np.log(ys[rest][:, None] / predicted[None, :]))
    for r, c in zip(*linear_sum_assignment(cost)):
        labels[rest[int(r)]] = kinds[int(c)]
    return labels


def _continue_in_s(spec: LGSpec, start: np.ndarray, s_start: float, tol: float) -> np.ndarray:
    """Follow the critical points from s_start up to spec.s in geometric steps; start order is kept."""
    current = start
    at, target = np.log(s_start), np.log(spec.s)
    h = np.log(CONTINUATION_RATIO)
    while at < target:
        last = h >= target - at
        s_new = spec.s if last else float(np.exp(at + h))
        poly = critical_polynomial(spec.model_copy(update={"s": s_new}))
        candidate = solve_polynomial(poly, tol=tol, initial=current)
        cost = np.abs(current[:, None] - candidate[None, :])
        rows, cols = linear_sum_assignment(cost)
        ordered = np.empty_like(candidate)
        ordered[rows] = candidate[cols]
        moved = np.abs(ordered - current)
        gaps = np.abs(ordered[:, None] - ordered[None, :])
        np.fill_diagonal(gaps, np.inf)
        # each root must move well inside the gap to its nearest neighbour
        if np.all(CONTINUATION_SAFETY * moved < gaps.min(axis=1)):
            current = ordered
            at = target if last else at + h
            h = min(2 * h, np.log(CONTINUATION_RATIO))
            continue
        h /= 2
        if h < MIN_LOG_STEP:
            raise TrackingError(
                f"cannot follow the critical points past s={s_new:.6g} for k={spec.k}",
                report={"s": s_new, "displacement": float(moved.max())},
            )
    return current


def _cluster_labels(spec: LGSpec, ys: np.ndarray, tol: float) -> list[CriticalType]:
    """Types are fixed deep in the asymptotic regime and carried to spec.s by continuation."""
    s_ref = ASYMPTOTIC_S / spec.k ** 3
    if spec.s <= s_ref:
        return _label_by_prediction(spec, ys)
    ref_spec = spec.model_copy(update={"s": s_ref})
    ref = solve_polynomial(critical_polynomial(ref_spec), tol=tol)
    ref_labels = _label_by_prediction(ref_spec, ref)
    tracked = _continue_in_s(spec, ref, s_ref, tol)
    rows, cols = linear_sum_assignment(np.abs(tracked[:, None] - ys[None, :]))
    labels = [CriticalType.III] * len(ys)
    for r, c in zip(rows, cols):
        labels[int(c)] = ref_labels[int(r)]
    logger.debug(f"cluster labels for k={spec.k}, s={spec.s} continued from s={s_ref:.3g}")
    return labels


def critical_set(spec: LGSpec, tol: float = DEFAULT_TOL) -> CriticalSet:
    if tol <= 0:
        raise InvalidInputError(f"tol must be positive, got {tol}")
    k, s = spec.k, spec.s
    roots_p = p_roots(spec)
    ys = solve_polynomial(critical_polynomial(spec), tol=tol)
    if len(ys) != 2 * k + 2:
        raise CheckFailure(f"expected {2 * k + 2} critical points, found {len(ys)}")

    p, dp, dt = p_poly(spec), p_poly(spec).deriv(), t_poly(spec).deriv()
    xs = (p(ys) - ys * dp(ys)) / (ys ** 2 * dt(ys))
    ts = 2 * s * xs + t_poly(spec)(ys)

    # type III: one critical point per root of P, by optimal assignment
    cost = np.abs(roots_p[:, None] - ys[None, :])
    rows, cols = linear_sum_assignment(cost)
    assigned = cost[rows, cols]
    limit = CLUSTER_FRACTION * min_separation(roots_p)
    if assigned.max() > limit:
        raise CheckFailure(
            f"a critical point assigned to a root of P lies {assigned.max():.3e} away (limit {limit:.3e})",
            details={"distances": assigned.tolist()},
        )
    three = {int(c) for c in cols}
    kinds = dict(enumerate(_cluster_labels(spec, ys, tol)))
    if any((kinds[i] == CriticalType.III) != (i in three) for i in kinds):
        raise CheckFailure(f"continued cluster labels disagree with the roots of P for k={k}, s={s}")

    non_three = [i for i in range(len(ys)) if kinds[i] != CriticalType.III]
    nearest = min(float(np.min(np.abs(roots_p - ys[i]))) for i in non_three)
    separation = nearest / max(float(assigned.max()), 1e-300)
    if separation < SEPARATION_WARNING:
        logger.warning(f"weak cluster separation {separation:.2f} for k={k}, s={s}")

    points = [CriticalPoint(y=complex(ys[i]), x=complex(xs[i]), t=complex(ts[i]), kind=kinds[i]) for i in range(len(ys))]
    counts = {kind.value: sum(1 for p in points if p.kind == kind) for kind in CriticalType}
    if counts != {"I": k - 2, "II": 3, "III": k + 1}:
        raise CheckFailure(f"unexpected cluster counts {counts}")
    type_one = [p.t for p in points if p.kind == CriticalType.I]
    return CriticalSet(
        k=k, s=s, points=points, counts=counts, separation=separation,
        type_one_geomean=_geomean(type_one),
        type_one_predicted=type_one_prediction(k, s),
        type_one_displayed=type_one_displayed(k, s),
    )


def real_critical_points(cs: CriticalSet, tol: float = 1e-9) -> list[CriticalPoint]:
    """Critical points with y, x and t all real up to tol (relative)."""
    def real(z: complex) -> bool:
        return abs(z.imag) <= tol * max(1.0, abs(z))
    return [p for p in cs.points if real(p.y) and real(p.x) and real(p.t)]


# --- branch points ---

def classify_branch_points(spec: LGSpec, t: complex, ys: np.ndarray) -> list[BranchKind]:
    kinds = [BranchKind.OUTER] * len(ys)
    near_zero = int(np.argmin(np.abs(ys)))
    kinds[near_zero] = BranchKind.NEAR_ZERO
    gaps = np.abs(t_poly(spec)(ys) - t)
    gaps[near_zero] = np.inf
    for i in np.argsort(gaps)[:2]:
        kinds[int(i)] = BranchKind.TWIN
    return kinds


def branch_points(spec: LGSpec, t: complex, tol: float = DEFAULT_TOL) -> BranchSet:
    k, s = spec.k, spec.s
    t = complex(t)
    ys = solve_polynomial(branch_polynomial(spec, t), tol=tol)
    if len(ys) != k + 1:
        raise CheckFailure(f"expected {k + 1} branch points, found {len(ys)}")
    kinds = classify_branch_points(spec, t, ys)
    points = [BranchPoint(y=complex(y), kind=kind) for y, kind in zip(ys, kinds)]
    twins = [p.y for p in points if p.kind == BranchKind.TWIN]
    outer = [p.y for p in points if p.kind == BranchKind.OUTER]

    predicted = outer_branch_prediction(k, s)
    offset = max(abs(complex(t_poly(spec)(y)) - t) for y in twins)
    in_regime = abs(t) > 0 and offset / abs(t) <= TWIN_REGIME and predicted >= 2 * abs(t)
    if not in_regime:
        logger.warning(f"t={t} is outside the regime 1/s >> |t| >> 0 for k={k}, s={s}")
    return BranchSet(
        k=k, s=s, t=t, points=points,
        outer_geomean=_geomean(outer),
        outer_predicted=predicted,
        twin_separation=abs(twins[0] - twins[1]),
        in_regime=in_regime,
    )


# --- lattice count ---

def newton_polygon_count(k: int) -> NewtonCount:
    """Lattice points of the triangle (-1,-1), (1,0), (-1,k); checks Pick's formula."""
    if k < 3 or k % 2 == 0:
        raise InvalidInputError(f"k must be odd and at least 3, got {k}")
    verts = [(-1, -1), (1, 0), (-1, k)]
    edges = list(zip(verts, verts[1:] + verts[:1]))

    def side(a: tuple[int, int], b: tuple[int, int], p: tuple[int, int]) -> int:
        return (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])

    total = 0
    for px in range(-1, 2):
        for py in range(-1, k + 1):
            signs = [side(a, b, (px, py)) for a, b in edges]
            if all(v >= 0 for v in signs) or all(v <= 0 for v in signs):
                total += 1
    boundary = sum(gcd(abs(b[0] - a[0]), abs(b[1] - a[1])) for a, b in edges)
    two_volume = abs(sum(a[0] * b[1] - b[0] * a[1] for a, b in edges))
    interior = total - boundary
    if two_volume != 2 * interior + boundary - 2:
        raise CheckFailure(f"Pick's formula fails: 2A={two_volume}, i={interior}, b={boundary}")
    return NewtonCount(interior=interior, boundary=boundary, two_volume=two_volume)


# --- gradient bound ---

def gradient_norm_sq(spec: LGSpec, x: np.ndarray, y: np.ndarray, z: np.ndarray, s: float | None = None) -> np.ndarray:
    """|grad f|^2 on the hypersurface zx = P(y), in the metric with log y as coordinate.

    Written as a sum of squared 2x2 minors of (grad f, grad g) over |grad g|^2 so it
    cannot go negative through cancellation.
    """
    s = spec.s if s is None else s
    p, dp, dt = p_poly(spec), p_poly(spec).deriv(), t_poly(spec).deriv()
    py, dpy, dty = p(y), dp(y), dt(y)
    c12 = -s * y * dpy - y * dty * z + z ** 2 / y
    c13 = s * x - z / y
    c23 = x * y * dty - py / y + dpy
    norm = np.abs(z) ** 2 + np.abs(y * dpy) ** 2 + np.abs(x) ** 2
    return (np.abs(c12) ** 2 + np.abs(c13) ** 2 + np.abs(c23) ** 2) / norm


def palais_smale_sample(
    spec: LGSpec,
    radius: float = 1e3,
    n_samples: int = 10_000,
    seed: int = 0,
    s: float | None = None,
) -> PalaisSmaleResult:
    """Sample the gradient outside the polydisc of the given radius and compare with s^2/2."""
    s = spec.s if s is None else s
    if s < 0:
        raise InvalidInputError(f"s must be non-negative, got {s}")
    rng = np.random.default_rng(seed)
    p = p_poly(spec)
    y = radius * rng.uniform(1.0, 10.0, n_samples) * np.exp(2j * np.pi * rng.random(n_samples))
    py = p(y)
    lo, hi = np.log(radius), np.log(np.abs(py) / radius)
    x = np.exp(rng.uniform(lo, np.maximum(lo, hi))) * np.exp(2j * np.pi * rng.random(n_samples))
    z = py / x

    residual = float(np.max(np.abs(z * x - py) / np.maximum(1.0, np.abs(py))))
    if residual >= 1e-9:
        raise CheckFailure(f"samples are off the hypersurface (relative residual {residual:.2e})")

    values = gradient_norm_sq(spec, x, y, z, s)
    bound = 0.5 * s * s
    violations = int(np.sum(values < bound))
    if violations:
        logger.warning(f"{violations}/{n_samples} samples fall below s^2/2 = {bound:.3e} (min {values.min():.3e})")
    return PalaisSmaleResult(
        k=spec.k, s=s, radius=radius, samples=n_samples,
        minimum=float(values.min()), bound=bound, max_residual=residual, violations=violations,
    )
