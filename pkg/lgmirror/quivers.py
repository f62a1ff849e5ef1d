"""The McKay quiver, the X_{k+1} gluing quiver and its A-side counterpart with formal constants."""
from __future__ import annotations

import logging
from fractions import Fraction
from pathlib import Path
from typing import Callable

from lgmirror import constants as C
from lgmirror.errors import CheckFailure, InvalidInputError
from lgmirror.models import (
    Arrow, MonomialCoeff, NormalizationResult, Quiver, Relation, RelationTerm,
)

logger = logging.getLogger(__name__)

# (rational scalar, monomial) multiplying a path in a relation
Coeff = tuple[Fraction, MonomialCoeff]

ONE: Coeff = (Fraction(1), MonomialCoeff())
MINUS_ONE: Coeff = (Fraction(-1), MonomialCoeff())


def _term(path: list[str], coeff: Coeff = ONE) -> RelationTerm:
    return RelationTerm(scalar=coeff[0], monomial=coeff[1], path=path)


def _mckay_arrows(k: int) -> list[Arrow]:
    arrows = []
    for i in range(2, k - 1):
        for j in (1, 2):
            arrows.append(Arrow(source=f"e_{i}", target=f"e_{i + 1}", label=f"p{j}_{i}", pre_shift_degree=1))
    return arrows


def _mckay_relations(k: int, ratio: Callable[[int], Coeff]) -> list[Relation]:
    rels = []
    for i in range(2, k - 2):
        src, tgt = f"e_{i}", f"e_{i + 2}"
        rels.append(Relation(label=f"mckay_{i}", source=src, target=tgt, terms=[
            _term([f"p1_{i}", f"p1_{i + 1}"]), _term([f"p2_{i}", f"p2_{i + 1}"], ratio(i)),
        ]))
        rels.append(Relation(label=f"mckay_12_{i}", source=src, target=tgt, terms=[_term([f"p1_{i}", f"p2_{i + 1}"])]))
        rels.append(Relation(label=f"mckay_21_{i}", source=src, target=tgt, terms=[_term([f"p2_{i}", f"p1_{i + 1}"])]))
    return rels


def mckay_quiver(k: int) -> Quiver:
    """Ext quiver of e_2, ..., e_{k-1} for a 1/k(1,1) point, shifted into degree 0."""
    if k < 3:
        raise InvalidInputError(f"k must be at least 3, got {k}")
    return Quiver(
        name=f"mckay_{k}",
        vertices=[f"e_{i}" for i in range(2, k)],
        arrows=_mckay_arrows(k),
        relations=_mckay_relations(k, lambda i: ONE),
    )


def _require_gluing_k(k: int) -> None:
    # delta_prime leaves e_{k-2} and is killed by p1_{k-3}, p2_{k-3} out of e_{k-3}; at k = 3 there is no e_{k-3}
    if k < 5 or k % 2 == 0:
        raise InvalidInputError(f"the gluing quiver needs odd k >= 5, got {k}")


def _gluing_quiver(
    name: str,
    k: int,
    mckay: Callable[[int], Coeff],
    anti: dict[str, Coeff],
    kernel: Callable[[int], tuple[Coeff, Coeff]],
    delta: dict[str, Coeff],
    rewrite_rules: dict[str, MonomialCoeff] | None = None,
) -> Quiver:
    """Shared shape of the B-side and A-side quivers; only the relation coefficients differ."""
    _require_gluing_k(k)
    blocks = [f"B{i}" for i in range(1, k + 2)]
    vertices = [f"e_{i}" for i in range(2, k)] + ["PhiO", "PhiT", "PhiOH"] + blocks

    arrows = _mckay_arrows(k)
    arrows.append(Arrow(source=f"e_{k - 2}", target="PhiO", label="delta_prime"))
    arrows.append(Arrow(source=f"e_{k - 1}", target="PhiT", label="delta_tilde"))
    for g in C.AXES:
        arrows.append(Arrow(source="PhiO", target="PhiT", label=f"{g}0"))
    for g in C.AXES:
        arrows.append(Arrow(source="PhiT", target="PhiOH", label=f"{g}1"))
    for i, block in enumerate(blocks, start=1):
        arrows.append(Arrow(source="PhiOH", target=block, label=f"r_{i}"))

    rels = _mckay_relations(k, mckay)
    for j in (1, 2):
        rels.append(Relation(label=f"p{j}_delta", source=f"e_{k - 3}", target="PhiO",
                             terms=[_term([f"p{j}_{k - 3}", "delta_prime"])]))
    for a, b in (("x", "y"), ("x", "z"), ("y", "z")):
        rels.append(Relation(label=f"anti_{a}{b}", source="PhiO", target="PhiOH", terms=[
            _term([f"{a}0", f"{b}1"]), _term([f"{b}0", f"{a}1"], anti[a + b]),
        ]))
    for g in C.AXES:
        rels.append(Relation(label=f"square_{g}", source="PhiO", target="PhiOH", terms=[_term([f"{g}0", f"{g}1"])]))
    for i, block in enumerate(blocks, start=1):
        cx, cy = kernel(i)
        rels.append(Relation(label=f"kernel_{i}", source="PhiT", target=block, terms=[
            _term(["x1", f"r_{i}"], cx), _term(["y1", f"r_{i}"], cy),
        ]))
    for g in ("x", "y"):
        rels.append(Relation(label=f"dtilde_{g}", source=f"e_{k - 1}", target="PhiOH",
                             terms=[_term(["delta_tilde", f"{g}1"])]))
    rels.append(Relation(label="delta_x", source=f"e_{k - 2}", target="PhiT", terms=[
        _term(["delta_prime", "x0"]), _term([f"p2_{k - 2}", "delta_tilde"], delta["x"]),
    ]))
    rels.append(Relation(label="delta_y", source=f"e_{k - 2}", target="PhiT", terms=[
        _term(["delta_prime", "y0"]), _term([f"p1_{k - 2}", "delta_tilde"], delta["y"]),
    ]))
    return Quiver(name=name, vertices=vertices, arrows=arrows, relations=rels, rewrite_rules=rewrite_rules or {})


def _b_side_anti() -> dict[str, Coeff]:
    return {"xy": ONE, "xz": ONE, "yz": ONE}


def xk_quiver(k: int, points: list[tuple[Fraction | int, Fraction | int]]) -> Quiver:
    """Gluing quiver of the X_{k+1} collection; point i blows up the line a_i x + b_i y = 0.

    Needs odd k >= 5. The relations p_{j,k-3} delta_prime = 0 start at e_{k-3},
    so the McKay chain e_2 .. e_{k-1} must reach below e_{k-2}. For k = 3 that
    chain is just e_2 and the quiver is not defined; use mckay_quiver(3) instead.
    """
    if len(points) != k + 1:
        raise InvalidInputError(f"need {k + 1} points, got {len(points)}")
    pts = [(Fraction(a), Fraction(b)) for a, b in points]
    for i, (a, b) in enumerate(pts):
        if a == 0 and b == 0:
            raise InvalidInputError(f"point {i + 1} is (0, 0)")
        for j in range(i):
            c, d = pts[j]
            if a * d - b * c == 0:
                raise InvalidInputError(f"points {j + 1} and {i + 1} are proportional")
    return _gluing_quiver(
        f"xk_{k}", k,
        mckay=lambda i: ONE,
        anti=_b_side_anti(),
        kernel=lambda i: ((pts[i - 1][0], MonomialCoeff()), (pts[i - 1][1], MonomialCoeff())),
        delta={"x": MINUS_ONE, "y": MINUS_ONE},
    )


def xk_template(k: int, points: list[MonomialCoeff]) -> Quiver:
    """The X_{k+1} quiver with a_i = 1 and monomial b_i, the target of the normalisation."""
    return _gluing_quiver(
        f"xk_{k}_template", k,
        mckay=lambda i: ONE,
        anti=_b_side_anti(),
        kernel=lambda i: (ONE, (Fraction(1), points[i - 1])),
        delta={"x": MINUS_ONE, "y": MINUS_ONE},
        rewrite_rules=C.rewrite_rules(k),
    )


def fukaya_quiver(k: int) -> Quiver:
    """A-side gluing quiver with mu2 structure constants as formal symbols and q_C = 1."""
    return _gluing_quiver(
        f"fukaya_{k}", k,
        mckay=lambda i: (Fraction(-1), C.mckay_ratio(i)),
        anti={a + b: (Fraction(-1), C.anti_ratio(a, b)) for a, b in (("x", "y"), ("x", "z"), ("y", "z"))},
        kernel=lambda i: ((Fraction(1), C.eta("y", i)), (Fraction(-1), C.eta("x", i))),
        delta={g: (Fraction(-1), C.delta_ratio(g)) for g in ("x", "y")},
        rewrite_rules=C.rewrite_rules(k),
    )


# --- normalisation ---

def _k_of(quiver: Quiver) -> int:
    return sum(v.startswith("e_") for v in quiver.vertices) + 2


def _base_scale() -> MonomialCoeff:
    return C.eta("x", 1) / C.eta("y", 1)


def rescaling(k: int) -> dict[str, MonomialCoeff]:
    """Factors c_g with g -> c_g g that turn every A-side relation into its B-side form."""
    r1, r3 = C.anti_ratio("x", "y"), C.anti_ratio("y", "z")
    e = _base_scale()
    factors = {
        "x1": e,
        "y1": -(r1 * e),
        "z1": r3 * r1 * e,
        "delta_tilde": C.delta_ratio("x").inverse(),
        f"p1_{k - 2}": C.delta_ratio("x") / C.delta_ratio("y"),
    }
    # each p1_i enters mckay_{i-1} and mckay_i, so the factors are chained downwards
    for i in range(k - 3, 1, -1):
        factors[f"p1_{i}"] = -(C.mckay_ratio(i) / factors[f"p1_{i + 1}"])
    return factors


def displayed_rescaling(k: int) -> dict[str, MonomialCoeff]:
    """The factors as the source writes them down."""
    factors = dict(rescaling(k))
    factors["y1"] = -(C.anti_ratio("y", "x") * _base_scale().inverse())
    for i in range(2, k - 2):
        factors[f"p1_{i}"] = -(C.theta(2, i) / C.theta(1, i))
    return factors


def compare_rescalings(k: int) -> list[tuple[str, str, str, bool]]:
    """(arrow, displayed factor, normalising factor, agree) per rescaled arrow."""
    rules = C.rewrite_rules(k)
    used, shown = rescaling(k), displayed_rescaling(k)
    rows = []
    for label in used:
        u, d = used[label].substitute(rules), shown[label].substitute(rules)
        rows.append((label, str(d), str(u), u == d))
    return rows


def _normalized_terms(rel: Relation, factors: dict[str, MonomialCoeff], rules: dict[str, MonomialCoeff]) -> list[tuple[tuple[str, ...], Fraction, MonomialCoeff]]:
    scaled = []
    for term in rel.terms:
        mono = term.monomial
        for label in term.path:
            if label in factors:
                mono = mono * factors[label]
        scaled.append(RelationTerm(scalar=term.scalar, monomial=mono.substitute(rules), path=term.path).canonical())
    lead = scaled[0]
    return [
        (tuple(t.path), t.scalar / lead.scalar, t.monomial / lead.monomial)
        for t in scaled
    ]


def _signature(rel: Relation, rules: dict[str, MonomialCoeff]) -> list[tuple[tuple[str, ...], Fraction, MonomialCoeff]]:
    return _normalized_terms(rel, {}, rules)


def normalize_constants(fq: Quiver) -> NormalizationResult:
    """Rescale the A-side arrows and check every relation against the B-side template."""
    k = _k_of(fq)
    rules = fq.rewrite_rules
    factors = rescaling(k)
    ratio = -(C.anti_ratio("x", "y") * _base_scale())
    points = [(-(ratio * C.novikov(1, i))).substitute(rules) if i > 1 else -ratio for i in range(1, k + 2)]
    template = {rel.label: rel for rel in xk_template(k, points).relations}

    failures = []
    relations = []
    for rel in fq.relations:
        got = _normalized_terms(rel, factors, rules)
        want = _signature(template[rel.label], rules)
        if got != want:
            failures.append(rel.label)
            logger.error(f"relation {rel.label} does not normalise: got {got}, expected {want}")
            continue
        relations.append(Relation(
            label=rel.label, source=rel.source, target=rel.target,
            terms=[RelationTerm(scalar=s, monomial=m, path=list(p)) for p, s, m in got],
        ))
    if failures:
        raise CheckFailure(f"{len(failures)} relations fail to normalise", details={"relations": failures})

    quiver = Quiver(name=f"{fq.name}_normalized", vertices=fq.vertices, arrows=fq.arrows,
                    relations=relations, rewrite_rules=rules)
    return NormalizationResult(k=k, quiver=quiver, rescaling=factors, ratio=ratio, points=points)


def normalized_points(result: NormalizationResult, q_values: list[Fraction | int], rho: Fraction | int = 1) -> list[tuple[Fraction, Fraction]]:
    """Numeric points (1, -q_{1,i} rho) once the coordinates are rescaled so that the ratio is rho.

    ``q_values`` holds q_{1,2}, ..., q_{1,k+1}; q_{1,1} is 1.
    """
    if len(q_values) != result.k:
        raise InvalidInputError(f"need {result.k} values q_1_2..q_1_{result.k + 1}, got {len(q_values)}")
    values = {f"q_1_{i}": Fraction(v) for i, v in enumerate(q_values, start=2)}
    pts = []
    for point in result.points:
        rel = point / result.ratio
        pts.append((Fraction(1), rel.evaluate(values) * Fraction(rho)))
    return pts


def save_quiver(quiver: Quiver, path: str | Path) -> None:
    Path(path).write_text(quiver.model_dump_json(indent=2))


def load_quiver(path: str | Path) -> Quiver:
    return Quiver.model_validate_json(Path(path).read_text())
