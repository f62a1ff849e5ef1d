"""Continuation of branch points along paths in the t-plane and the resulting permutations."""
from __future__ import annotations

import logging
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from lgmirror.errors import CheckFailure, InvalidInputError, TrackingError
from lgmirror.lg_numerics import branch_polynomial, classify_branch_points, critical_set, t_poly
from lgmirror.models import (
    BranchKind, Collision, CriticalType, LGSpec, RadialCollisionReport, RootTrajectory, SectorMonodromy,
)
from lgmirror.roots import min_separation, solve_polynomial

logger = logging.getLogger(__name__)

MAX_STEP = 0.05
SAFETY = 4.0
MIN_STEP = 1e-9
COLLISION_TOL = 1e-6


def _match(old: np.ndarray, new: np.ndarray) -> tuple[np.ndarray, float]:
    """Reorder new so that new[i] continues old[i]; returns (ordered, max displacement)."""
    cost = np.abs(old[:, None] - new[None, :])
    rows, cols = linear_sum_assignment(cost)
    ordered = np.empty_like(new)
    ordered[rows] = new[cols]
    return ordered, float(cost[rows, cols].max())


def _closest_pair(roots: np.ndarray) -> tuple[int, int]:
    diff = np.abs(roots[:, None] - roots[None, :])
    np.fill_diagonal(diff, np.inf)
    i, j = np.unravel_index(int(np.argmin(diff)), diff.shape)
    return (int(min(i, j)), int(max(i, j)))


def permutation_between(start: np.ndarray, end: np.ndarray) -> list[int]:
    """perm[i] = j when strand i ends at the position root j started from."""
    cost = np.abs(end[:, None] - start[None, :])
    rows, cols = linear_sum_assignment(cost)
    perm = [0] * len(start)
    for r, c in zip(rows, cols):
        perm[int(r)] = int(c)
    return perm


def compose(first: list[int], second: list[int]) -> list[int]:
    """Run first, then second."""
    return [second[j] for j in first]


def inverse(perm: list[int]) -> list[int]:
    inv = [0] * len(perm)
    for i, j in enumerate(perm):
        inv[j] = i
    return inv


def track_roots(
    spec: LGSpec,
    t_path: Sequence[complex],
    max_step: float = MAX_STEP,
    safety: float = SAFETY,
    min_step: float = MIN_STEP,
) -> RootTrajectory:
    """Follow the branch points along the polyline through t_path.

    A step is accepted only if the closest pair of new roots is more than
    ``safety`` times the largest matching displacement; otherwise it is halved.
    """
    if len(t_path) < 1:
        raise InvalidInputError("t_path must contain at least one point")
    if max_step <= 0 or safety <= 1:
        raise InvalidInputError("need max_step > 0 and safety > 1")
    nodes = [complex(t) for t in t_path]
    current = solve_polynomial(branch_polynomial(spec, nodes[0]))
    ts, history, collisions = [nodes[0]], [current.copy()], []
    halvings = 0

    for a, b in zip(nodes, nodes[1:]):
        length = abs(b - a)
        done = 0.0
        h = min(max_step, length)
        while done < length:
            h = min(h, length - done)
            last = h >= length - done
            t_new = b if last else a + (b - a) * (done + h) / length
            candidate = solve_polynomial(branch_polynomial(spec, t_new), initial=current)
            ordered, displacement = _match(current, candidate)
            separation = min_separation(ordered)
            if separation > safety * displacement or displacement == 0.0:
                done = length if last else done + h
                current = ordered
                ts.append(t_new)
                history.append(current.copy())
                if separation < COLLISION_TOL:
                    collisions.append(Collision(step=len(ts) - 1, pair=_closest_pair(current), separation=separation))
                h = min(2 * h, max_step)
                continue
            h /= 2
            halvings += 1
            logger.debug(f"halving step at t={t_new:.6g}: separation {separation:.3e}, displacement {displacement:.3e}")
            if h < min_step:
                raise TrackingError(
                    f"cannot match roots near t={t_new:.9g}",
                    report={"t": str(t_new), "separation": separation, "displacement": displacement, "step": len(ts)},
                )
    if halvings:
        logger.warning(f"{halvings} step halvings while tracking {len(ts)} steps for k={spec.k}")
    return RootTrajectory(
        t_path=ts,
        roots=[list(map(complex, r)) for r in history],
        permutation=permutation_between(history[0], history[-1]),
        collisions=collisions,
        halvings=halvings,
    )


def _arc(t0: complex, angle: float, max_step: float) -> list[complex]:
    # chords of an arc under max_step stay within max_step^2/(8|t|) of the circle
    pieces = max(8, int(np.ceil(abs(angle) * abs(t0) / max_step)))
    return [t0 * np.exp(1j * angle * j / pieces) for j in range(pieces + 1)]


def _twin_order(spec: LGSpec, t: complex, roots: np.ndarray) -> list[int]:
    """Twin indices ordered by Re(T(y)/t), larger first."""
    kinds = classify_branch_points(spec, t, roots)
    twins = [i for i, kind in enumerate(kinds) if kind == BranchKind.TWIN]
    tvals = t_poly(spec)(roots)
    return sorted(twins, key=lambda i: -(tvals[i] / t).real)


def sector_monodromy(spec: LGSpec, t0: complex, sectors: int = 1, max_step: float = MAX_STEP) -> SectorMonodromy:
    """Rotate t by 2 pi sectors/(k-2) and read the twin exchange off the Re(y/t) ordering."""
    t0 = complex(t0)
    angle = 2 * np.pi * sectors / (spec.k - 2)
    traj = track_roots(spec, _arc(t0, angle, max_step), max_step=max_step)
    start, end = np.array(traj.roots[0]), np.array(traj.roots[-1])
    t1 = traj.t_path[-1]

    start_twins = _twin_order(spec, t0, start)
    end_twins = _twin_order(spec, t1, end)
    start_kinds = classify_branch_points(spec, t0, start)
    end_kinds = classify_branch_points(spec, t1, end)

    perm = list(range(len(start)))
    for strand, slot in zip(end_twins, start_twins):
        perm[strand] = slot
    zero_start = start_kinds.index(BranchKind.NEAR_ZERO)
    zero_end = end_kinds.index(BranchKind.NEAR_ZERO)
    perm[zero_end] = zero_start
    outer_start = [i for i, kd in enumerate(start_kinds) if kd == BranchKind.OUTER]
    outer_end = [i for i, kd in enumerate(end_kinds) if kd == BranchKind.OUTER]
    if outer_start:
        cost = np.abs(end[outer_end][:, None] - start[outer_start][None, :])
        rows, cols = linear_sum_assignment(cost)
        for r, c in zip(rows, cols):
            perm[outer_end[r]] = outer_start[c]
    return SectorMonodromy(
        k=spec.k, t0=t0, sectors=sectors, twins=(start_twins[0], start_twins[1]),
        permutation=perm, trajectory=traj,
    )


def loop_monodromy(spec: LGSpec, t0: complex, turns: int = 1, max_step: float = MAX_STEP) -> RootTrajectory:
    """Closed circular loops |t| = |t0|; negative turns run clockwise."""
    if turns == 0:
        raise InvalidInputError("turns must be nonzero")
    return track_roots(spec, _arc(complex(t0), 2 * np.pi * turns, max_step), max_step=max_step)


def twin_transposition(spec: LGSpec, t0: complex, roots: Sequence[complex]) -> list[int]:
    """The permutation exchanging the two twins among roots over t0 and fixing everything else."""
    roots = np.asarray(roots, dtype=complex)
    a, b = _twin_order(spec, complex(t0), roots)
    perm = list(range(len(roots)))
    perm[a], perm[b] = b, a
    return perm


def radial_collision(
    spec: LGSpec,
    t0: float,
    gap: float = 1e-7,
    ratio: float = 0.5,
    fit_points: int = 8,
    max_step: float = MAX_STEP,
) -> RadialCollisionReport:
    """Move t along the real axis towards the first type I critical value and watch the larger twin meet the outer branch point."""
    critical = critical_set(spec)
    real_type_one = [
        p.t.real for p in critical.points
        if p.kind == CriticalType.I and abs(p.t.imag) <= 1e-9 * abs(p.t) and p.t.real > 0
    ]
    if not real_type_one:
        raise CheckFailure("no real positive type I critical value")
    t_c = min(real_type_one)
    if not 0 < t0 < t_c:
        raise InvalidInputError(f"t0={t0} must lie in (0, {t_c:.6g})")

    nodes = [float(t0)]
    remaining = t_c - t0
    while remaining > gap:
        remaining *= ratio
        nodes.append(t_c - max(remaining, gap))
    traj = track_roots(spec, nodes, max_step=max_step)
    at_nodes = {t: np.array(r) for t, r in zip(traj.t_path, traj.roots)}
    snapshots = [at_nodes[complex(t)] for t in nodes]

    first = snapshots[0]
    twins = sorted(np.argsort(np.abs(first - t0))[:2], key=lambda i: first[i].real)
    small, large = int(twins[0]), int(twins[1])
    real = [i for i in range(len(first)) if abs(first[i].imag) < 1e-9 * max(1.0, abs(first[i])) and i not in (small, large)]
    target = max(real, key=lambda i: first[i].real)

    distances = [float(abs(r[target] - r[large])) for r in snapshots]
    monotone = all(b < a for a, b in zip(distances, distances[1:]))
    twins_ordered = all(r[small].real < r[large].real for r in snapshots)
    max_imag = max(float(max(abs(r[i].imag) for i in (small, large, target))) for r in snapshots)

    # d^2 is linear in t near the fold; extrapolate it to zero
    tail_t = np.array(nodes[-fit_points:])
    tail_d2 = np.array(distances[-fit_points:]) ** 2
    slope, intercept = np.polyfit(tail_t, tail_d2, 1)
    t_estimate = float(-intercept / slope)
    report = RadialCollisionReport(
        k=spec.k, s=spec.s, t0=t0, t_critical=t_c, t_estimate=t_estimate,
        relative_error=abs(t_estimate - t_c) / t_c,
        distances=distances, monotone=monotone, twins_ordered=twins_ordered,
        max_imag=max_imag, final_distance=distances[-1],
    )
    logger.info(f"radial collision k={spec.k}: t_c={t_c:.9g}, estimate {t_estimate:.9g}")
    return report
