"""Path algebras of acyclic quivers modulo relations, over specialised rational constants.

Hom(src, v) is built vertex by vertex in topological order. It is the sum of
Hom(src, u) . a over the arrows a: u -> v, modulo the images of the relations
ending at v. No path enumeration is needed, so the cost grows with the hom
dimensions rather than the number of paths.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from lgmirror.errors import InvalidInputError
from lgmirror.models import GramMatrix, Quiver

logger = logging.getLogger(__name__)

Path = tuple[str, ...]
Vector = dict[Path, Fraction]
Coords = list[Fraction]


def _qq(x: Fraction):
    return QQ(x.numerator, x.denominator)


def _fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def _rref(rows: list[Coords], width: int) -> tuple[list[Coords], list[int]]:
    if not rows or not width:
        return [], []
    dm = DomainMatrix([[_qq(c) for c in row] for row in rows], (len(rows), width), QQ)
    reduced, pivots = dm.rref()
    return [[_fraction(c) for c in row] for row in reduced.to_list()[:len(pivots)]], list(pivots)


def specialize(quiver: Quiver, seed: int = 0) -> dict[str, Fraction]:
    """Random positive rationals for every formal constant left after the rewrite rules."""
    rng = np.random.default_rng(seed)
    return {
        name: Fraction(int(rng.integers(1, 100)), int(rng.integers(1, 100)))
        for name in sorted(quiver.symbols())
    }


@dataclass
class _Layer:
    """Hom(src, v) as generators (arrow into v, basis index at its source) modulo relation rows."""
    offsets: dict[str, int] = field(default_factory=dict)
    width: int = 0
    rows: list[Coords] = field(default_factory=list)
    pivots: list[int] = field(default_factory=list)
    free: list[int] = field(default_factory=list)
    reps: list[Path] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.free)

    def reduce(self, gens: Coords) -> Coords:
        for row, col in zip(self.rows, self.pivots):
            factor = gens[col]
            if factor:
                gens = [a - factor * b for a, b in zip(gens, row)]
        return [gens[i] for i in self.free]


class PathAlgebra:
    def __init__(self, quiver: Quiver, values: dict[str, Fraction] | None = None):
        self.quiver = quiver
        self.values = values if values is not None else specialize(quiver)
        self._order = {v: i for i, v in enumerate(quiver.vertices)}
        self._outgoing: dict[str, list[tuple[str, str]]] = defaultdict(list)
        self._incoming: dict[str, list[str]] = defaultdict(list)
        for arrow in quiver.arrows:
            self._outgoing[arrow.source].append((arrow.label, arrow.target))
            self._incoming[arrow.target].append(arrow.label)
        self._target = {a.label: a.target for a in quiver.arrows}
        self._source = {a.label: a.source for a in quiver.arrows}
        self._relations = self._relation_vectors()
        self._layers: dict[str, dict[str, _Layer]] = {}
        self.paths = lru_cache(maxsize=None)(self._paths)

    def _paths(self, src: str, tgt: str) -> list[Path]:
        """Every path from src to tgt; exponential in general, for listings only."""
        found: list[Path] = []
        stack: list[tuple[str, Path]] = [(src, ())]
        while stack:
            at, path = stack.pop()
            if at == tgt:
                found.append(path)
                continue
            for label, nxt in self._outgoing[at]:
                stack.append((nxt, path + (label,)))
        return sorted(found, key=lambda p: (len(p), p))

    def _relation_vectors(self) -> dict[str, list[tuple[str, Vector]]]:
        """Relations grouped by target vertex, constants evaluated."""
        rules = self.quiver.rewrite_rules
        by_target: dict[str, list[tuple[str, Vector]]] = defaultdict(list)
        for rel in self.quiver.relations:
            vec: Vector = defaultdict(Fraction)
            for term in rel.terms:
                weight = term.scalar * term.monomial.substitute(rules).evaluate(self.values)
                vec[tuple(term.path)] += weight
            by_target[rel.target].append((rel.source, {p: c for p, c in vec.items() if c}))
        return by_target

    # --- quotient spaces ---

    def _layers_from(self, src: str) -> dict[str, _Layer]:
        if src not in self._order:
            raise InvalidInputError(f"unknown vertex {src!r}")
        if src in self._layers:
            return self._layers[src]
        layers: dict[str, _Layer] = {src: _Layer(free=[0], reps=[()])}
        self._layers[src] = layers
        for v in self.quiver.vertices[self._order[src] + 1:]:
            layer = _Layer()
            for label in self._incoming[v]:
                below = layers.get(self._source[label])
                if below is None or not below.dim:
                    continue
                layer.offsets[label] = layer.width
                layer.width += below.dim
            rows = []
            for rel_src, rho in self._relations.get(v, []):
                start = layers.get(rel_src)
                if start is None:
                    continue
                for b in range(start.dim):
                    unit = [Fraction(int(i == b)) for i in range(start.dim)]
                    row = self._relation_row(src, layer, rel_src, unit, rho)
                    if any(row):
                        rows.append(row)
            layer.rows, layer.pivots = _rref(rows, layer.width)
            taken = set(layer.pivots)
            layer.free = [i for i in range(layer.width) if i not in taken]
            reps = {}
            for label, offset in layer.offsets.items():
                for i, rep in enumerate(layers[self._source[label]].reps):
                    reps[offset + i] = rep + (label,)
            layer.reps = [reps[i] for i in layer.free]
            layers[v] = layer
        logger.debug(f"{self.quiver.name}: built hom spaces from {src}")
        return layers

    def _relation_row(self, src: str, layer: _Layer, rel_src: str, x: Coords, rho: Vector) -> Coords:
        """Generator coordinates at the relation target of x . rho, x in Hom(src, rel_src)."""
        gens = [Fraction(0)] * layer.width
        for path, c in rho.items():
            y, at = x, rel_src
            for label in path[:-1]:
                y, at = self._times_arrow(src, y, label), self._target[label]
            last = path[-1]
            if last not in layer.offsets:
                continue
            offset = layer.offsets[last]
            for i, value in enumerate(y):
                gens[offset + i] += c * value
        return gens

    def _times_arrow(self, src: str, x: Coords, label: str) -> Coords:
        """Right multiplication Hom(src, u) -> Hom(src, w) by the arrow u -> w."""
        layer = self._layers_from(src)[self._target[label]]
        if label not in layer.offsets:
            return [Fraction(0)] * layer.dim
        gens = [Fraction(0)] * layer.width
        offset = layer.offsets[label]
        for i, value in enumerate(x):
            gens[offset + i] = value
        return layer.reduce(gens)

    def _element(self, src: str, tgt: str, path: Path) -> Coords:
        at = src
        for label in path:
            if self._source.get(label) != at:
                raise InvalidInputError(f"path {path} does not run from {src} to {tgt}")
            at = self._target[label]
        if at != tgt:
            raise InvalidInputError(f"path {path} does not run from {src} to {tgt}")
        x = [Fraction(1)]
        for label in path:
            x = self._times_arrow(src, x, label)
        return x

    # --- public surface ---

    def dimension(self, src: str, tgt: str) -> int:
        if tgt not in self._order:
            raise InvalidInputError(f"unknown vertex {tgt!r}")
        layer = self._layers_from(src).get(tgt)
        return layer.dim if layer is not None else 0

    def quotient_basis(self, src: str, tgt: str) -> list[Path]:
        """One representative path per basis vector of Hom(src, tgt)."""
        if not self.dimension(src, tgt):
            return []
        return list(self._layers_from(src)[tgt].reps)

    def normal_form(self, src: str, tgt: str, vector: Vector) -> Vector:
        """Unique representative supported on the quotient basis."""
        basis = self.quotient_basis(src, tgt)
        coords = [Fraction(0)] * len(basis)
        for p, c in vector.items():
            x = self._element(src, tgt, tuple(p))
            coords = [a + c * b for a, b in zip(coords, x)]
        return {basis[i]: c for i, c in enumerate(coords) if c}

    def compose(self, first: Vector, second: Vector) -> Vector:
        """first then second, i.e. second . first in composition notation."""
        out: Vector = defaultdict(Fraction)
        for p, a in first.items():
            for q, b in second.items():
                out[p + q] += a * b
        return {p: c for p, c in out.items() if c}

    def composition_rank(self, src: str, mid: str, tgt: str) -> int:
        """Dimension of the image of Hom(src, mid) x Hom(mid, tgt) in Hom(src, tgt)."""
        width = self.dimension(src, tgt)
        rows = []
        for p in self.quotient_basis(src, mid):
            for q in self.quotient_basis(mid, tgt):
                x = self._element(src, tgt, p + q)
                if any(x):
                    rows.append([_qq(c) for c in x])
        if not rows or not width:
            return 0
        return DomainMatrix(rows, (len(rows), width), QQ).rank()


def hom_dims(quiver: Quiver, seed: int = 0) -> list[list[int]]:
    algebra = PathAlgebra(quiver, specialize(quiver, seed))
    vs = quiver.vertices
    dims = [[algebra.dimension(a, b) if i <= j else 0 for j, b in enumerate(vs)] for i, a in enumerate(vs)]
    logger.debug(f"hom dims of {quiver.name}: {dims}")
    return dims


def euler_gram(quiver: Quiver, seed: int = 0) -> GramMatrix:
    graded = [a.label for a in quiver.arrows if a.degree != 0]
    if graded:
        raise InvalidInputError(f"{quiver.name} has arrows outside degree 0: {graded}")
    return GramMatrix(entries=hom_dims(quiver, seed))
