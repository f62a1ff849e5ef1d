"""The six-step braid taking the rotated collection to the line-bundle collection, as move data."""
from __future__ import annotations

import logging
from pathlib import Path

from lgmirror.errors import CheckFailure, InvalidInputError
from lgmirror.lattice import class_preset, format_class, parse_class, same_up_to_sign, xk_fiber_basis
from lgmirror.models import BraidScript, BraidStep, ExceptionalSequence, Move, MoveOp, StepReplay
from lgmirror.mutations import flip_sign, mutate_left, mutate_right, transpose

logger = logging.getLogger(__name__)

MOVES = {
    MoveOp.LEFT: mutate_left,
    MoveOp.RIGHT: mutate_right,
    MoveOp.TRANSPOSE: transpose,
    MoveOp.SIGN: flip_sign,
}


def _left(*positions: int) -> list[Move]:
    return [Move(op=MoveOp.LEFT, at=at) for at in positions]


def _desc(k: int) -> range:
    return range(k - 1, 1, -1)


def _seed(k: int) -> list[str]:
    return ["P-2", "P-1", "P0", *["B"] * (k + 1), *[f"R_{i}" for i in _desc(k)]]


def _step_moves(k: int) -> list[list[Move]]:
    step1 = _left(3, 2, 1, 4, 3, 2)
    for j in range(k - 2):
        step1 += _left(*range(k + 4 + j, 6 + 2 * j, -1))

    step2 = _left(2)
    for j in range(k - 2):
        step2 += _left(7 + 2 * j)

    step3: list[Move] = []
    for j in range(1, k - 2):
        step3 += _left(*range(6 + 2 * j, 6 + j, -1))
    step3 += [Move(op=MoveOp.RIGHT, at=1), Move(op=MoveOp.RIGHT, at=3)]

    step4 = _left(*range(6, k + 4))
    step5 = _left(*range(5, 2 * k + 2)) + _left(*range(4, k + 2))
    step6 = _left(*range(3, k + 1)) + _left(*range(k + 3, 2 * k + 1))
    return [step1, step2, step3, step4, step5, step6]


def _expected(k: int) -> list[list[str]]:
    ls = [f"l_{i}" for i in _desc(k)]
    step1 = ["l", "l", "b-4a-2l", "b-2a-l", "b", "l"]
    step2 = ["l", "b-4a-l", "l", "b-2a-l", "b", "l"]
    for li in ls:
        step1 += [li, "l"]
        step2 += [f"{li}-l", li]
    step3 = ["b-4a-l", "b-4a", "b-2a-l", "b-2a", "b", "l", *[f"{li}-l" for li in ls], *ls]
    step4 = ["b-4a-l", "b-4a", "b-2a-l", "b-2a", "b", *ls, "l", *ls]
    step5 = ["b-4a-l", "b-4a", "b-2a-l", *ls, "b-2a", "b-l", *ls, "b"]
    step6 = [
        "b-4a-l", "b-4a", *[f"b-2a-l-{li}" for li in ls], "b-2a-l", "b-2a",
        *[f"b-l-{li}" for li in ls], "b-l", "b",
    ]
    return [step1, step2, step3, step4, step5, step6]


_DESCRIPTIONS = [
    "move k-2 of the B's past the R_i so that they alternate; mutate two B's left of the P's",
    "move one B over P_-2 and mutate k-2 pairs",
    "pass the l_i-l to the left by orthogonality; right mutate the two other B's",
    "push the middle B past half of the classes on its right",
    "push P_0 all the way to the right, then b-2a through the l_i",
    "push b-2a-l and b-l through",
]


def xk_braid_script(k: int) -> BraidScript:
    if k < 3 or k % 2 == 0:
        raise InvalidInputError(f"k must be odd and at least 3, got {k}")
    steps = []
    for n, (moves, expected, description) in enumerate(zip(_step_moves(k), _expected(k), _DESCRIPTIONS), start=1):
        steps.append(BraidStep(name=f"step{n}", description=description, moves=moves, expected=expected))

    # the source display drops the B=l that follows b
    step1 = steps[0]
    step1.displayed = step1.expected[:5] + step1.expected[6:]
    step1.errata.append("display omits the l between b and l_{k-1}; restored from the class count")

    step6 = steps[5]
    shown = list(step6.expected)
    shown[2] = f"b-2a-l_{k - 1}"
    shown[k - 1] = "b-2a-l_2"
    step6.displayed = shown
    step6.errata.append(f"display writes b-2a-l_{k - 1} and b-2a-l_2 where the replay gives b-2a-l-l_i")
    return BraidScript(k=k, seed=_seed(k), steps=steps)


def seed_sequence(script: BraidScript) -> ExceptionalSequence:
    basis = xk_fiber_basis(script.k)
    return ExceptionalSequence(basis=basis, classes=[class_preset(script.k, name) for name in script.seed])


def apply_moves(seq: ExceptionalSequence, moves: list[Move]) -> ExceptionalSequence:
    for move in moves:
        seq = MOVES[move.op](seq, move.at)
    return seq


def _mismatches(classes: list[str], expected: list[str], seq: ExceptionalSequence) -> list[int]:
    bad = [i for i, (got, want) in enumerate(zip(seq.classes, expected))
           if not same_up_to_sign(got, parse_class(want, seq.basis))]
    if len(classes) != len(expected):
        bad += list(range(min(len(classes), len(expected)), max(len(classes), len(expected))))
    return bad


def replay(script: BraidScript) -> list[StepReplay]:
    """Run every step and diff it against its expected list; never stops early."""
    seq = seed_sequence(script)
    results = []
    for step in script.steps:
        seq = apply_moves(seq, step.moves)
        classes = [format_class(x) for x in seq.classes]
        result = StepReplay(
            name=step.name,
            classes=classes,
            expected=step.expected,
            mismatches=_mismatches(classes, step.expected, seq),
            display_mismatches=_mismatches(classes, step.displayed, seq) if step.displayed is not None else [],
            errata=step.errata,
        )
        if not result.matched:
            logger.warning(f"braid k={script.k} {step.name} diverges at positions {result.mismatches}")
        results.append(result)
    return results


def braid_script(k: int) -> list[ExceptionalSequence]:
    """One sequence per step; raises at the first step whose classes diverge."""
    script = xk_braid_script(k)
    seq = seed_sequence(script)
    sequences = []
    for step in script.steps:
        seq = apply_moves(seq, step.moves)
        bad = _mismatches([format_class(x) for x in seq.classes], step.expected, seq)
        if bad:
            raise CheckFailure(
                f"braid k={k} diverges at {step.name}",
                details={"step": step.name, "positions": bad, "classes": [format_class(x) for x in seq.classes]},
            )
        sequences.append(seq)
    return sequences


def save_script(script: BraidScript, path: str | Path) -> None:
    Path(path).write_text(script.model_dump_json(indent=2))


def load_script(path: str | Path) -> BraidScript:
    return BraidScript.model_validate_json(Path(path).read_text())
