"""Consolidated Pydantic models for the mirror-symmetry verification toolkit."""
from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Any, Mapping

from pydantic import (
    BaseModel, ConfigDict, Field, computed_field, field_serializer, field_validator,
    model_validator,
)

from lgmirror.errors import InvalidInputError


# --- Enums ---

class CoreEnd(str, Enum):
    POSITIVE = "+"
    NEGATIVE = "-"


class ArcDirection(str, Enum):
    UP = "up"
    DOWN = "down"


class MoveOp(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    TRANSPOSE = "transpose"
    SIGN = "sign"


class CriticalType(str, Enum):
    I = "I"
    II = "II"
    III = "III"


class BranchKind(str, Enum):
    OUTER = "outer"
    NEAR_ZERO = "near_zero"
    TWIN = "twin"


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"


# --- Cyclic quotient singularities ---

class CQSDescriptor(BaseModel):
    n: int
    q: int
    b: list[int]
    i_series: list[int]
    j_series: list[int]


class HandleSchedule(BaseModel):
    n: int
    q: int
    # (a, -a*q^{-1} mod n): handle a on the positive boundary, its image on the negative one
    gluings: list[tuple[int, int]]
    special_subset: list[int]
    non_special: list[int] = Field(default_factory=list)


class CoreArc(BaseModel):
    start: int
    start_end: CoreEnd
    end: int
    end_end: CoreEnd
    direction: ArcDirection


class CoreSchedule(BaseModel):
    n: int
    q: int
    d: int
    t: int
    cores: list[int]
    # 0 = original core, 1 = parallel translate sitting above it
    translates: list[int]
    joins: list[CoreArc]


# --- Fiber lattice ---

class FiberBasis(BaseModel):
    model_config = ConfigDict(frozen=True)

    labels: list[str]
    form: list[list[int]]

    @model_validator(mode="after")
    def _check_form(self) -> FiberBasis:
        size = len(self.labels)
        if len(set(self.labels)) != size:
            raise ValueError("basis labels must be distinct")
        if len(self.form) != size or any(len(row) != size for row in self.form):
            raise ValueError(f"form must be {size}x{size}")
        for i in range(size):
            for j in range(size):
                if self.form[i][j] != -self.form[j][i]:
                    raise ValueError(f"form is not antisymmetric at ({self.labels[i]}, {self.labels[j]})")
        return self

    @property
    def rank(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InvalidInputError(f"unknown basis symbol {label!r}") from None

    def unit(self, label: str) -> HomologyClass:
        coeffs = [0] * self.rank
        coeffs[self.index(label)] = 1
        return HomologyClass(coeffs=coeffs, basis=self)

    def zero(self) -> HomologyClass:
        return HomologyClass(coeffs=[0] * self.rank, basis=self)


class HomologyClass(BaseModel):
    model_config = ConfigDict(frozen=True)

    coeffs: list[int]
    basis: FiberBasis = Field(exclude=True, repr=False)

    @model_validator(mode="after")
    def _check_length(self) -> HomologyClass:
        if len(self.coeffs) != self.basis.rank:
            raise ValueError(f"expected {self.basis.rank} coefficients, got {len(self.coeffs)}")
        return self

    def _require_same_basis(self, other: HomologyClass) -> None:
        if other.basis != self.basis:
            raise InvalidInputError("homology classes live over different bases")

    def __add__(self, other: HomologyClass) -> HomologyClass:
        self._require_same_basis(other)
        return HomologyClass(coeffs=[a + b for a, b in zip(self.coeffs, other.coeffs)], basis=self.basis)

    def __sub__(self, other: HomologyClass) -> HomologyClass:
        return self + (-other)

    def __neg__(self) -> HomologyClass:
        return HomologyClass(coeffs=[-a for a in self.coeffs], basis=self.basis)

    def __mul__(self, m: int) -> HomologyClass:
        return HomologyClass(coeffs=[m * a for a in self.coeffs], basis=self.basis)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)


class GradedCrossing(BaseModel):
    alpha_lower: float
    alpha_upper: float
    shift_lower: int = 0
    shift_upper: int = 0


# --- Exceptional sequences ---

class ExceptionalSequence(BaseModel):
    model_config = ConfigDict(frozen=True)

    basis: FiberBasis
    classes: list[HomologyClass]

    @model_validator(mode="after")
    def _check_basis(self) -> ExceptionalSequence:
        for x in self.classes:
            if x.basis != self.basis:
                raise ValueError("all classes must live over the sequence basis")
        return self

    def __len__(self) -> int:
        return len(self.classes)


class GramMatrix(BaseModel):
    entries: list[list[int]]

    @model_validator(mode="after")
    def _check_seifert_shape(self) -> GramMatrix:
        size = len(self.entries)
        for i, row in enumerate(self.entries):
            if len(row) != size:
                raise ValueError("Gram matrix must be square")
            if row[i] != 1:
                raise ValueError(f"diagonal entry {i} is {row[i]}, expected 1")
            if any(row[j] != 0 for j in range(i)):
                raise ValueError(f"row {i} has nonzero entries below the diagonal")
        return self

    def absolute(self) -> GramMatrix:
        return GramMatrix(entries=[[abs(v) for v in row] for row in self.entries])


# --- Braid scripts ---

class Move(BaseModel):
    op: MoveOp
    # 1-based; pair moves act on elements (at, at+1), sign flips on element at
    at: int


class BraidStep(BaseModel):
    name: str
    description: str = ""
    moves: list[Move] = Field(default_factory=list)
    expected: list[str] = Field(default_factory=list)
    # the literal source display where it differs from the replayed list
    displayed: list[str] | None = None
    errata: list[str] = Field(default_factory=list)


class BraidScript(BaseModel):
    k: int
    seed: list[str]
    steps: list[BraidStep]


class StepReplay(BaseModel):
    name: str
    classes: list[str]
    expected: list[str]
    mismatches: list[int] = Field(default_factory=list)
    display_mismatches: list[int] = Field(default_factory=list)
    errata: list[str] = Field(default_factory=list)

    @property
    def matched(self) -> bool:
        return not self.mismatches


# --- Quivers ---

class MonomialCoeff(BaseModel):
    model_config = ConfigDict(frozen=True)

    sign: int = 1
    exponents: dict[str, int] = Field(default_factory=dict)

    @model_validator(mode="before")
    @classmethod
    def _drop_zero_exponents(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("exponents"):
            data = {**data, "exponents": {k: v for k, v in sorted(data["exponents"].items()) if v}}
        return data

    @field_validator("sign")
    @classmethod
    def _unit_sign(cls, v: int) -> int:
        if v not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        return v

    @classmethod
    def symbol(cls, name: str, power: int = 1) -> MonomialCoeff:
        return cls(exponents={name: power})

    @classmethod
    def ratio(cls, numerator: list[str], denominator: list[str], sign: int = 1) -> MonomialCoeff:
        exps: dict[str, int] = {}
        for name in numerator:
            exps[name] = exps.get(name, 0) + 1
        for name in denominator:
            exps[name] = exps.get(name, 0) - 1
        return cls(sign=sign, exponents=exps)

    def __mul__(self, other: MonomialCoeff) -> MonomialCoeff:
        exps = dict(self.exponents)
        for name, power in other.exponents.items():
            exps[name] = exps.get(name, 0) + power
        return MonomialCoeff(sign=self.sign * other.sign, exponents=exps)

    def inverse(self) -> MonomialCoeff:
        return MonomialCoeff(sign=self.sign, exponents={k: -v for k, v in self.exponents.items()})

    def __truediv__(self, other: MonomialCoeff) -> MonomialCoeff:
        return self * other.inverse()

    def __neg__(self) -> MonomialCoeff:
        return MonomialCoeff(sign=-self.sign, exponents=self.exponents)

    def __pow__(self, n: int) -> MonomialCoeff:
        return MonomialCoeff(
            sign=self.sign if n % 2 else 1,
            exponents={k: v * n for k, v in self.exponents.items()},
        )

    def symbols(self) -> set[str]:
        return set(self.exponents)

    def substitute(self, rules: Mapping[str, MonomialCoeff]) -> MonomialCoeff:
        result = MonomialCoeff(sign=self.sign)
        for name, power in self.exponents.items():
            factor = rules.get(name, MonomialCoeff.symbol(name))
            result = result * factor ** power
        return result

    def evaluate(self, values: Mapping[str, Fraction]) -> Fraction:
        value = Fraction(self.sign)
        for name, power in self.exponents.items():
            value *= Fraction(values[name]) ** power
        return value

    def __str__(self) -> str:
        body = "*".join(name if p == 1 else f"{name}^{p}" for name, p in self.exponents.items())
        if not body:
            return "1" if self.sign > 0 else "-1"
        return body if self.sign > 0 else f"-{body}"


class RelationTerm(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    scalar: Fraction = Fraction(1)
    monomial: MonomialCoeff = Field(default_factory=MonomialCoeff)
    # arrow labels in traversal order; the composite g∘f is written [f, g]
    path: list[str]

    @field_validator("scalar", mode="before")
    @classmethod
    def _as_fraction(cls, v: Any) -> Fraction:
        return Fraction(v) if not isinstance(v, Fraction) else v

    @field_serializer("scalar")
    def _scalar_to_str(self, v: Fraction) -> str:
        return str(v)

    def canonical(self) -> RelationTerm:
        """Fold the monomial sign into the rational scalar."""
        return RelationTerm(
            scalar=self.scalar * self.monomial.sign,
            monomial=MonomialCoeff(exponents=self.monomial.exponents),
            path=self.path,
        )

    def weight(self, values: Mapping[str, Fraction]) -> Fraction:
        return self.scalar * self.monomial.evaluate(values)


class Relation(BaseModel):
    label: str
    source: str
    target: str
    terms: list[RelationTerm]


class Arrow(BaseModel):
    source: str
    target: str
    label: str
    degree: int = 0
    pre_shift_degree: int | None = None


class Quiver(BaseModel):
    name: str
    vertices: list[str]
    arrows: list[Arrow]
    relations: list[Relation] = Field(default_factory=list)
    rewrite_rules: dict[str, MonomialCoeff] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_shape(self) -> Quiver:
        order = {v: i for i, v in enumerate(self.vertices)}
        labels: dict[str, Arrow] = {}
        for arrow in self.arrows:
            if arrow.source not in order or arrow.target not in order:
                raise ValueError(f"arrow {arrow.label} uses an unknown vertex")
            if order[arrow.source] >= order[arrow.target]:
                raise ValueError(f"arrow {arrow.label} does not go forward in vertex order")
            if arrow.label in labels:
                raise ValueError(f"duplicate arrow label {arrow.label}")
            labels[arrow.label] = arrow
        for rel in self.relations:
            for term in rel.terms:
                at = rel.source
                for label in term.path:
                    arrow = labels.get(label)
                    if arrow is None or arrow.source != at:
                        raise ValueError(f"relation {rel.label}: path {term.path} does not start at {rel.source}")
                    at = arrow.target
                if at != rel.target:
                    raise ValueError(f"relation {rel.label}: path {term.path} does not end at {rel.target}")
        return self

    def arrow(self, label: str) -> Arrow:
        for arrow in self.arrows:
            if arrow.label == label:
                return arrow
        raise InvalidInputError(f"unknown arrow {label!r}")

    def symbols(self) -> set[str]:
        found: set[str] = set()
        for rel in self.relations:
            for term in rel.terms:
                found |= term.monomial.substitute(self.rewrite_rules).symbols()
        return found


class NormalizationResult(BaseModel):
    k: int
    quiver: Quiver
    rescaling: dict[str, MonomialCoeff]
    # rho = -(alpha_x_y/alpha_y_x)(eta_x_1/eta_y_1); point i is (1, b_i), b_i = -q_{1,i}*rho
    ratio: MonomialCoeff
    points: list[MonomialCoeff]


# --- Landau-Ginzburg numerics ---

class LGSpec(BaseModel):
    k: int = 5
    s: float = 1e-2
    delta: float = 1e-2
    # explicit roots are -q_i; None selects P = (1+y)^{k+1} + delta
    q: list[float] | None = None
    tau: list[float] = Field(default_factory=lambda: [1.0])

    @model_validator(mode="after")
    def _check(self) -> LGSpec:
        if self.k < 3 or self.k % 2 == 0:
            raise ValueError(f"k must be odd and at least 3, got {self.k}")
        if not self.s > 0:
            raise ValueError(f"s must be positive, got {self.s}")
        if self.q is not None and len(self.q) != self.k + 1:
            raise ValueError(f"expected {self.k + 1} values of q, got {len(self.q)}")
        if not 1 <= len(self.tau) <= (self.k - 1) // 2:
            raise ValueError(f"tau must have between 1 and {(self.k - 1) // 2} entries")
        return self


class CriticalPoint(BaseModel):
    y: complex
    x: complex
    t: complex
    kind: CriticalType


class CriticalSet(BaseModel):
    k: int
    s: float
    points: list[CriticalPoint]
    counts: dict[str, int]
    # smallest distance of a non-III point to the roots of P over the largest III distance
    separation: float
    type_one_geomean: float
    type_one_predicted: float
    type_one_displayed: float

    def of_kind(self, kind: CriticalType) -> list[CriticalPoint]:
        return [p for p in self.points if p.kind == kind]


class BranchPoint(BaseModel):
    y: complex
    kind: BranchKind


class BranchSet(BaseModel):
    k: int
    s: float
    t: complex
    points: list[BranchPoint]
    outer_geomean: float
    outer_predicted: float
    twin_separation: float
    in_regime: bool = True

    def of_kind(self, kind: BranchKind) -> list[complex]:
        return [p.y for p in self.points if p.kind == kind]


class Collision(BaseModel):
    step: int
    pair: tuple[int, int]
    separation: float


class RootTrajectory(BaseModel):
    t_path: list[complex]
    roots: list[list[complex]]
    permutation: list[int]
    collisions: list[Collision] = Field(default_factory=list)
    halvings: int = 0


class SectorMonodromy(BaseModel):
    k: int
    t0: complex
    sectors: int
    twins: tuple[int, int]
    permutation: list[int]
    trajectory: RootTrajectory


class RadialCollisionReport(BaseModel):
    k: int
    s: float
    t0: float
    t_critical: float
    t_estimate: float
    relative_error: float
    distances: list[float]
    monotone: bool
    twins_ordered: bool
    max_imag: float
    final_distance: float


class SturmCount(BaseModel):
    k: int
    t0: float
    distinct: int
    with_multiplicity: int
    numeric: int | None = None
    t_double: float
    t_double_bound: float


class PalaisSmaleResult(BaseModel):
    k: int
    s: float
    radius: float
    samples: int
    minimum: float
    bound: float
    max_residual: float
    violations: int = 0


class NewtonCount(BaseModel):
    interior: int
    boundary: int
    two_volume: int


# --- Reports ---

class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class Report(BaseModel):
    suite: str
    params: dict[str, Any] = Field(default_factory=dict)
    checks: list[CheckResult] = Field(default_factory=list)
    payload: dict[str, Any] = Field(default_factory=dict)
    timings: dict[str, float] = Field(default_factory=dict)
    error: str | None = None
    exit_code: int = 0

    @computed_field
    @property
    def status(self) -> CheckStatus:
        if self.error is None and all(c.passed for c in self.checks):
            return CheckStatus.PASS
        return CheckStatus.FAIL
