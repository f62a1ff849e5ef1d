"""Mutations of exceptional sequences at the level of homology classes."""
from __future__ import annotations

import logging
from itertools import product

from lgmirror.errors import CheckFailure, InvalidInputError
from lgmirror.lattice import pair
from lgmirror.models import ExceptionalSequence, FiberBasis, GramMatrix, HomologyClass

logger = logging.getLogger(__name__)


def make_sequence(basis: FiberBasis, classes: list[HomologyClass]) -> ExceptionalSequence:
    return ExceptionalSequence(basis=basis, classes=list(classes))


def _check_position(seq: ExceptionalSequence, i: int) -> None:
    if not 1 <= i < len(seq):
        raise InvalidInputError(f"mutation position {i} out of range for a sequence of length {len(seq)}")


def _replace(seq: ExceptionalSequence, i: int, first: HomologyClass, second: HomologyClass) -> ExceptionalSequence:
    classes = list(seq.classes)
    classes[i - 1], classes[i] = first, second
    return ExceptionalSequence(basis=seq.basis, classes=classes)


def mutate_left(seq: ExceptionalSequence, i: int) -> ExceptionalSequence:
    """Move element i+1 past element i: (a, b) -> (b - <a,b>a, a). Positions are 1-based."""
    _check_position(seq, i)
    a, b = seq.classes[i - 1], seq.classes[i]
    return _replace(seq, i, b - pair(a, b) * a, a)


def mutate_right(seq: ExceptionalSequence, i: int) -> ExceptionalSequence:
    """Move element i past element i+1: (a, b) -> (b, a - <a,b>b)."""
    _check_position(seq, i)
    a, b = seq.classes[i - 1], seq.classes[i]
    return _replace(seq, i, b, a - pair(a, b) * b)


def transpose(seq: ExceptionalSequence, i: int) -> ExceptionalSequence:
    _check_position(seq, i)
    a, b = seq.classes[i - 1], seq.classes[i]
    if pair(a, b):
        logger.warning(f"transposing non-orthogonal classes at position {i}")
    return _replace(seq, i, b, a)


def flip_sign(seq: ExceptionalSequence, i: int) -> ExceptionalSequence:
    if not 1 <= i <= len(seq):
        raise InvalidInputError(f"sign flip position {i} out of range")
    classes = list(seq.classes)
    classes[i - 1] = -classes[i - 1]
    return ExceptionalSequence(basis=seq.basis, classes=classes)


def mutation_matrix(seq: ExceptionalSequence, i: int, left: bool = True) -> list[list[int]]:
    """Integer matrix M with new classes = M @ old classes."""
    _check_position(seq, i)
    n = len(seq)
    c = pair(seq.classes[i - 1], seq.classes[i])
    m = [[int(r == col) for col in range(n)] for r in range(n)]
    p = i - 1
    m[p][p], m[p][p + 1], m[p + 1][p], m[p + 1][p + 1] = (-c, 1, 1, 0) if left else (0, 1, 1, -c)
    return m


def left_dual(seq: ExceptionalSequence) -> ExceptionalSequence:
    """Left mutate each element through everything before it, returning the dual order."""
    result = seq
    for p in range(1, len(seq)):
        for pos in range(p, 0, -1):
            result = mutate_left(result, pos)
    return result


def seifert_gram(seq: ExceptionalSequence) -> GramMatrix:
    n = len(seq)
    entries = [[0] * n for _ in range(n)]
    for i in range(n):
        entries[i][i] = 1
        for j in range(i + 1, n):
            entries[i][j] = pair(seq.classes[i], seq.classes[j])
    return GramMatrix(entries=entries)


def conjugate_gram(gram: GramMatrix, m: list[list[int]]) -> list[list[int]]:
    """M G M^T, the Gram matrix expected after a mutation with matrix M."""
    n = len(m)
    g = gram.entries
    mg = [[sum(m[r][a] * g[a][c] for a in range(n)) for c in range(n)] for r in range(n)]
    return [[sum(mg[r][a] * m[c][a] for a in range(n)) for c in range(n)] for r in range(n)]


# --- weighted path sums ---

ONE_STEP_WEIGHT = 2
TWO_STEP_WEIGHT = -1


def signed_sum_paths(m: int) -> int:
    """Sum over all paths 0 -> m with unit jumps weighted 2 and double jumps weighted -1."""
    total = 0
    for jumps in range(m // 2 + 1):
        singles = m - 2 * jumps
        for layout in product((1, 2), repeat=singles + jumps):
            if layout.count(2) != jumps:
                continue
            total += ONE_STEP_WEIGHT ** singles * TWO_STEP_WEIGHT ** jumps
    return total


def path_sum_lemma(m: int) -> list[int]:
    """s_1..s_m from s_i = 2 s_{i-1} - s_{i-2}, checked against enumeration and i+1."""
    if m < 1:
        raise InvalidInputError(f"m must be at least 1, got {m}")
    s = [1, 2]
    for _ in range(2, m + 1):
        s.append(ONE_STEP_WEIGHT * s[-1] + TWO_STEP_WEIGHT * s[-2])
    sums = s[1:m + 1]
    for i, value in enumerate(sums, start=1):
        enumerated = signed_sum_paths(i)
        if value != enumerated or value != i + 1:
            raise CheckFailure(f"path sum s_{i}: recursion {value}, enumeration {enumerated}, expected {i + 1}")
    return sums
