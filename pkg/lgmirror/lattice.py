"""Homology of the Lefschetz fiber as an integer lattice with an antisymmetric form."""
from __future__ import annotations

import logging
import math
import re

from lgmirror.errors import InvalidInputError
from lgmirror.models import FiberBasis, GradedCrossing, HomologyClass

logger = logging.getLogger(__name__)

# one signed term of a class expression: "-2l", "+l_3", "b", "4a"
_TERM = re.compile(r"\s*([+-])?\s*(\d*)\s*(l_\d+|[A-Za-z]\w*)\s*")


def _require_odd(k: int) -> None:
    if k < 3 or k % 2 == 0:
        raise InvalidInputError(f"k must be odd and at least 3, got {k}")


def general_basis(labels: list[str], form: list[list[int]]) -> FiberBasis:
    """A fiber basis with an arbitrary antisymmetric form, e.g. meridians W_j."""
    return FiberBasis(labels=list(labels), form=[list(row) for row in form])


def xk_fiber_basis(k: int) -> FiberBasis:
    _require_odd(k)
    labels = ["l", *[f"l_{i}" for i in range(2, k)], "a", "b"]
    idx = {label: i for i, label in enumerate(labels)}
    form = [[0] * len(labels) for _ in labels]

    def put(x: str, y: str, value: int) -> None:
        form[idx[x]][idx[y]] = value
        form[idx[y]][idx[x]] = -value

    for i in range(2, k):
        put("l", f"l_{i}", -1)
        for j in range(i + 1, k):
            put(f"l_{i}", f"l_{j}", -1)
    put("a", "b", -1)
    put("b", "l", 1)
    return FiberBasis(labels=labels, form=form)


def pair(x: HomologyClass, y: HomologyClass) -> int:
    if x.basis != y.basis:
        raise InvalidInputError("cannot pair classes over different bases")
    form = x.basis.form
    return sum(
        xi * form[i][j] * yj
        for i, xi in enumerate(x.coeffs) if xi
        for j, yj in enumerate(y.coeffs) if yj
    )


def parse_class(expr: str, basis: FiberBasis) -> HomologyClass:
    """Parse a linear expression such as ``b-4a-2l`` or ``l_3-2l_4+l``."""
    coeffs = [0] * basis.rank
    pos = 0
    text = expr.strip()
    if not text:
        raise InvalidInputError("empty class expression")
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise InvalidInputError(f"cannot parse class expression {expr!r} at offset {pos}")
        sign, mult, symbol = m.groups()
        if pos > 0 and sign is None:
            raise InvalidInputError(f"missing operator before {symbol!r} in {expr!r}")
        value = int(mult) if mult else 1
        coeffs[basis.index(symbol)] += -value if sign == "-" else value
        pos = m.end()
    return HomologyClass(coeffs=coeffs, basis=basis)


def format_class(x: HomologyClass) -> str:
    parts = []
    for label, c in zip(x.basis.labels, x.coeffs):
        if not c:
            continue
        mag = "" if abs(c) == 1 else str(abs(c))
        parts.append(("-" if c < 0 else "+") + mag + label)
    if not parts:
        return "0"
    text = "".join(parts)
    return text[1:] if text.startswith("+") else text


def normalize_sign(x: HomologyClass) -> HomologyClass:
    """Choose the orientation whose first nonzero coordinate is positive."""
    for c in x.coeffs:
        if c:
            return x if c > 0 else -x
    return x


def same_up_to_sign(x: HomologyClass, y: HomologyClass) -> bool:
    return normalize_sign(x) == normalize_sign(y)


def class_L(k: int, j: int) -> HomologyClass:
    _require_odd(k)
    if not 2 <= j <= k - 1:
        raise InvalidInputError(f"L_j needs 2 <= j <= {k - 1}, got j={j}")
    basis = xk_fiber_basis(k)
    x = (k - 1 - j) * basis.unit("l") + basis.unit(f"l_{j}")
    return x if j % 2 == 0 else -x


def l_collection(k: int) -> list[HomologyClass]:
    """The ordered collection L_{k-1}, ..., L_2."""
    return [class_L(k, j) for j in range(k - 1, 1, -1)]


def _dual_L(k: int, i: int, basis: FiberBasis) -> HomologyClass:
    l = basis.unit
    if i == k - 1:
        return l(f"l_{k - 1}")
    if i == k - 2:
        return l(f"l_{k - 2}") - 2 * l(f"l_{k - 1}") + l("l")
    return l(f"l_{i}") - 2 * l(f"l_{i + 1}") + l(f"l_{i + 2}")


def class_preset(k: int, name: str) -> HomologyClass:
    """Named classes: P-1, P0, P1, P~, P-2, B (or B_i), R_i, L_j and Ltilde_j."""
    basis = xk_fiber_basis(k)
    l, a, b = basis.unit("l"), basis.unit("a"), basis.unit("b")
    fixed = {
        "P-1": b - l - 2 * a,
        "P0": b,
        "P1": b + l + 2 * a,
        "P~": 2 * b + 2 * a + l,
        "P-2": b - 4 * a - 2 * l,
        "B": l,
    }
    if name in fixed:
        return fixed[name]
    family, _, index = name.partition("_")
    if index.isdigit():
        i = int(index)
        if family == "B" and 1 <= i <= k + 1:
            return l
        if family == "R" and 2 <= i <= k - 1:
            return basis.unit(f"l_{i}") - (i - 1) * l
        if family == "L" and 2 <= i <= k - 1:
            return class_L(k, i)
        if family == "Ltilde" and 2 <= i <= k - 1:
            return _dual_L(k, i, basis)
    raise InvalidInputError(f"unknown class preset {name!r} for k={k}")


def dehn_twist(x: HomologyClass, w: HomologyClass, m: int) -> HomologyClass:
    """Picard-Lefschetz action x -> x + m<x,W>W."""
    return x + (m * pair(x, w)) * w


def twist_line_bundle(v0: HomologyClass, meridians: list[HomologyClass], degrees: list[int]) -> HomologyClass:
    """Twist the longitude V_0 along the meridians W_j, m_j times each."""
    if len(meridians) != len(degrees):
        raise InvalidInputError("need one degree per meridian")
    x = v0
    for w, m in zip(meridians, degrees):
        x = dehn_twist(x, w, m)
    return x


def seidel_degree(c: GradedCrossing) -> int:
    return math.floor((c.alpha_upper + c.shift_upper) - (c.alpha_lower + c.shift_lower)) + 1


def crossing(kind: str, k: int, i: int, shifted: bool = False) -> GradedCrossing:
    """Representative graded crossings between Ltilde_i and Ltilde_{i+1} (p) or Ltilde_{i+2} (g).

    The preliminary phase lifts differ by less than one for p-type and by
    between one and two for g-type crossings; the shifted grading moves
    Ltilde_j by k - j.
    """
    gaps = {"p": (1, 0.5), "g": (2, 1.5)}
    if kind not in gaps:
        raise InvalidInputError(f"unknown crossing kind {kind!r}")
    step, gap = gaps[kind]
    return GradedCrossing(
        alpha_lower=2.0,
        alpha_upper=2.0 + gap,
        shift_lower=k - i if shifted else 0,
        shift_upper=k - i - step if shifted else 0,
    )


def cf_dimension(x: HomologyClass, y: HomologyClass) -> int:
    """|<x,y>|; this is the Floer dimension only for minimally intersecting pairs."""
    return abs(pair(x, y))


def cf_table(k: int) -> list[tuple[str, str, int]]:
    """Listed dimensions of the Floer complexes between the collection's objects."""
    table = []
    for i in range(2, k - 1):
        table.append((f"Ltilde_{i}", f"Ltilde_{i + 1}", 2))
    for i in range(2, k - 2):
        table.append((f"Ltilde_{i}", f"Ltilde_{i + 2}", 1))
    table += [
        ("P0", "P~", 3),
        ("P~", "P1", 3),
        ("P0", "P1", 3),
        ("P0", "B", 1),
        ("P1", "B", 1),
        ("P~", "B", 2),
        (f"Ltilde_{k - 1}", "P0", 0),
        (f"Ltilde_{k - 2}", "P0", 1),
        (f"Ltilde_{k - 1}", "P~", 1),
        (f"Ltilde_{k - 2}", "P~", 3),
        (f"Ltilde_{k - 1}", "P1", 1),
        (f"Ltilde_{k - 2}", "P1", 2),
        (f"Ltilde_{k - 1}", "B", 1),
        (f"Ltilde_{k - 2}", "B", 1),
    ]
    return table


def cf_mismatches(k: int) -> list[tuple[str, str, int, int]]:
    """Entries of cf_table whose predicted dimension differs from the listed one."""
    bad = []
    for left, right, listed in cf_table(k):
        predicted = cf_dimension(class_preset(k, left), class_preset(k, right))
        if predicted != listed:
            bad.append((left, right, listed, predicted))
    if bad:
        logger.warning(f"CF table mismatches for k={k}: {bad}")
    return bad
