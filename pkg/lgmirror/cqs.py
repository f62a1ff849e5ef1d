"""Integer combinatorics of a cyclic quotient singularity 1/n(1,q)."""
from __future__ import annotations

import logging
from fractions import Fraction
from math import gcd

from lgmirror.errors import CheckFailure, InvalidInputError
from lgmirror.models import (
    ArcDirection, CoreArc, CoreEnd, CoreSchedule, CQSDescriptor, HandleSchedule,
)

logger = logging.getLogger(__name__)


def _validate(n: int, q: int) -> None:
    if not 1 <= q < n:
        raise InvalidInputError(f"need 1 <= q < n, got n={n}, q={q}")
    if gcd(n, q) != 1:
        raise InvalidInputError(f"n={n} and q={q} are not coprime")


def hj_expand(n: int, q: int) -> list[int]:
    """Hirzebruch-Jung continued fraction n/q = b_1 - 1/(b_2 - ...), all b_t >= 2."""
    _validate(n, q)
    b: list[int] = []
    num, den = n, q
    while den:
        bt = -(-num // den)
        b.append(bt)
        num, den = den, bt * den - num
    return b


def hj_value(b: list[int]) -> Fraction:
    value = Fraction(b[-1])
    for bt in reversed(b[:-1]):
        value = bt - 1 / value
    return value


def i_series(n: int, q: int) -> list[int]:
    b = hj_expand(n, q)
    series = [n, q]
    for bt in b:
        series.append(bt * series[-1] - series[-2])
    if series[-1] != 0:
        raise CheckFailure(f"I-series of 1/{n}(1,{q}) does not terminate at 0: {series}")
    return series[1:]


def j_series(n: int, q: int) -> list[int]:
    b = hj_expand(n, q)
    series = [0, 1]
    for bt in b:
        series.append(bt * series[-1] - series[-2])
    return series[1:]


def p_sequence(n: int, q: int) -> list[int]:
    """P_0 = 1, P_1 = b_1, P_i = b_i P_{i-1} - P_{i-2}; i_{j+1} maps to n - P_j."""
    b = hj_expand(n, q)
    seq = [1, b[0]]
    for bt in b[1:]:
        seq.append(bt * seq[-1] - seq[-2])
    return seq


def non_special_residues(n: int, q: int) -> list[int]:
    special = set(i_series(n, q))
    return [a for a in range(1, n) if a not in special]


def describe(n: int, q: int) -> CQSDescriptor:
    return CQSDescriptor(n=n, q=q, b=hj_expand(n, q), i_series=i_series(n, q), j_series=j_series(n, q))


def _gluing(a: int, n: int, q: int) -> int:
    return (-a * pow(q, -1, n)) % n


def order_map(n: int, q: int) -> dict[int, int]:
    """The residue map a -> -a q^{-1} mod n on I', checked to be order-preserving."""
    special = i_series(n, q)
    images = {a: _gluing(a, n, q) for a in special}
    values = [images[a] for a in special]
    if any(hi <= lo for hi, lo in zip(values, values[1:])):
        raise CheckFailure(f"residue map is not order-preserving on I'({n},{q}): {images}")

    # image of i_{j+1} is n - P_j
    for a, pj in zip(special, p_sequence(n, q)):
        if images[a] != (n - pj) % n:
            raise CheckFailure(f"image of {a} is {images[a]}, P-recursion predicts {(n - pj) % n}")
    return images


def handle_schedule(n: int, q: int) -> HandleSchedule:
    _validate(n, q)
    return HandleSchedule(
        n=n,
        q=q,
        gluings=[(a, _gluing(a, n, q)) for a in range(n)],
        special_subset=i_series(n, q),
        non_special=non_special_residues(n, q),
    )


# Top-to-bottom order of the four cores: 1+d+q, d+q, 1+d+q-j_t q, d+q-j_t q
_VERTICAL = (0, 2, 1, 3)


def core_schedule(n: int, q: int, d: int) -> CoreSchedule:
    special = i_series(n, q)
    if not 0 < d < n or d in special:
        raise InvalidInputError(f"d={d} is not a non-special residue of 1/{n}(1,{q})")

    chain = [n, *special]
    t = next(t for t in range(1, len(chain)) if chain[t - 1] > d > chain[t])
    jt = j_series(n, q)[t - 1]
    raw = [1 + d + q, 1 + d + q - jt * q, d + q, d + q - jt * q]
    cores = [r % n for r in raw]

    # duplicates are stacked as parallel translates, ranked from the bottom
    translates = [0] * 4
    for residue in set(cores):
        stacked = [pos for pos in reversed(_VERTICAL) if cores[pos] == residue]
        for rank, pos in enumerate(stacked):
            translates[pos] = rank

    joins = [
        CoreArc(start=0, start_end=CoreEnd.NEGATIVE, end=2, end_end=CoreEnd.NEGATIVE, direction=ArcDirection.DOWN),
        CoreArc(start=0, start_end=CoreEnd.POSITIVE, end=1, end_end=CoreEnd.POSITIVE, direction=ArcDirection.UP),
        CoreArc(start=1, start_end=CoreEnd.NEGATIVE, end=3, end_end=CoreEnd.NEGATIVE, direction=ArcDirection.DOWN),
        CoreArc(start=2, start_end=CoreEnd.POSITIVE, end=3, end_end=CoreEnd.POSITIVE, direction=ArcDirection.UP),
    ]
    logger.debug(f"core schedule 1/{n}(1,{q}) d={d}: t={t}, cores={cores}, translates={translates}")
    return CoreSchedule(n=n, q=q, d=d, t=t, cores=cores, translates=translates, joins=joins)
