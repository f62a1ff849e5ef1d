"""JSON reports and CSV root trajectories."""
from __future__ import annotations

import csv
import logging
from pathlib import Path
from typing import Sequence

import numpy as np

from lgmirror.errors import InvalidInputError
from lgmirror.models import LGSpec, Report, RootTrajectory
from lgmirror.monodromy import track_roots

logger = logging.getLogger(__name__)

PERMUTATION_PREFIX = "# permutation:"


def report_json(report: Report, include_timings: bool = False) -> str:
    """Timings are left out by default so that reruns produce identical files."""
    exclude = None if include_timings else {"timings"}
    return report.model_dump_json(indent=2, exclude=exclude)


def write_report(report: Report, out_dir: str | Path, include_timings: bool = False) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{report.suite}.json"
    path.write_text(report_json(report, include_timings) + "\n")
    logger.info(f"wrote {path} ({report.status.value})")
    return path


# --- trajectories ---

def constant_path(t0: complex, steps: int) -> list[complex]:
    return [complex(t0)] * (steps + 1)


def line_path(t0: complex, t1: complex, steps: int) -> list[complex]:
    if steps < 1:
        raise InvalidInputError(f"steps must be positive, got {steps}")
    return [complex(t0) + (complex(t1) - complex(t0)) * j / steps for j in range(steps + 1)]


def rotation_path(t0: complex, angle: float, steps: int) -> list[complex]:
    """t0 e^{i angle j/steps}; the last node is set exactly for full turns."""
    if steps < 1:
        raise InvalidInputError(f"steps must be positive, got {steps}")
    nodes = [complex(t0) * complex(np.exp(1j * angle * j / steps)) for j in range(steps + 1)]
    turns = angle / (2 * np.pi)
    if abs(turns - round(turns)) < 1e-12:
        nodes[-1] = complex(t0)
    return nodes


def _rows_at_nodes(traj: RootTrajectory, nodes: Sequence[complex]) -> list[tuple[complex, list[complex]]]:
    """Pick the tracked roots at the requested nodes out of the adaptive steps."""
    rows = []
    cursor = 0
    for t in nodes:
        while traj.t_path[cursor] != t:
            cursor += 1
        rows.append((t, traj.roots[cursor]))
    return rows


def emit_trajectories(spec: LGSpec, path: Sequence[complex], out: str | Path, max_step: float = 0.05) -> RootTrajectory:
    """Track the branch points along path and write one CSV row per path node.

    Columns are step, t_re, t_im, then root_i_re, root_i_im per strand; the first
    line is a comment holding the start-to-end permutation.
    """
    nodes = [complex(t) for t in path]
    if not nodes:
        raise InvalidInputError("path must contain at least one point")
    distinct = _distinct(nodes)
    traj = track_roots(spec, distinct, max_step=max_step)
    rows = _expand(_rows_at_nodes(traj, distinct), nodes)

    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    strands = spec.k + 1
    with out.open("w", newline="") as fh:
        fh.write(f"{PERMUTATION_PREFIX} {' '.join(map(str, traj.permutation))}\n")
        writer = csv.writer(fh)
        header = ["step", "t_re", "t_im"]
        for i in range(strands):
            header += [f"root_{i}_re", f"root_{i}_im"]
        writer.writerow(header)
        for step, (t, roots) in enumerate(rows):
            row = [step, repr(t.real), repr(t.imag)]
            for y in roots:
                row += [repr(y.real), repr(y.imag)]
            writer.writerow(row)
    logger.info(f"wrote {len(rows)} rows for k={spec.k} to {out}")
    return traj


def _distinct(nodes: list[complex]) -> list[complex]:
    """Drop consecutive repeats; a constant path collapses to its single point."""
    kept = [nodes[0]]
    for t in nodes[1:]:
        if t != kept[-1]:
            kept.append(t)
    return kept


def _expand(rows: list[tuple[complex, list[complex]]], nodes: list[complex]) -> list[tuple[complex, list[complex]]]:
    """Repeat rows for consecutive repeated nodes so every requested node has a row."""
    out, it = [], iter(rows)
    current = next(it)
    for t in nodes:
        if t != current[0]:
            current = next(it)
        out.append(current)
    return out


def read_trajectories(path: str | Path) -> tuple[list[int], list[list[float]]]:
    """(permutation, numeric rows without the step column)."""
    with Path(path).open(newline="") as fh:
        first = fh.readline()
        if not first.startswith(PERMUTATION_PREFIX):
            raise InvalidInputError(f"{path} has no permutation line")
        perm = [int(v) for v in first[len(PERMUTATION_PREFIX):].split()]
        reader = csv.reader(fh)
        next(reader)
        rows = [[float(v) for v in row[1:]] for row in reader]
    return perm, rows
