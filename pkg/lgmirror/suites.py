"""Named verification suites and the runner that turns their outcome into a report and an exit code."""
from __future__ import annotations

import logging
import time
from abc import ABC, abstractmethod
from math import gcd
from pathlib import Path
from typing import Any, Mapping

from pydantic import ValidationError

from config import Config
from lgmirror import cqs, lattice, lg_numerics, monodromy, mutations, path_algebra, quivers, sturm
from lgmirror.braid_moves import replay, xk_braid_script
from lgmirror.errors import CheckFailure, ConvergenceError, InvalidInputError, TrackingError
from lgmirror.models import CheckResult, LGSpec, Report
from lgmirror.reports import write_report

logger = logging.getLogger(__name__)

GRAM_KS = range(3, 16, 2)
CF_KS = (5, 7, 9)
BRAID_KS = (5, 7)
QUIVER_KS = (5, 7)
PICK_KS = (3, 5, 7)
CRITICAL_SWEEP = [(k, s) for k in (3, 5, 7) for s in (1e-2, 1e-3)]
# (k, s) deep enough in the asymptotic regime for the type I radius
TYPE_ONE_CASES = ((3, 1e-5), (5, 1e-8))
BRANCH_CASE = (5, 1e-4, 1.0)
MONODROMY_KS = (5, 7)
MONODROMY_S = 1e-6
RADIAL_CASE = (5, 1e-4, 1.0)
STURM_KS = (5, 7, 9)
STURM_BELOW = (0.25, 0.5, 0.9)
STURM_ABOVE = (1.1, 1.5, 3.0)
ORDER_MAP_LIMIT = 200
PATH_SUM_LIMIT = 12
RELATIVE_TOL = 0.05


def _points(k: int) -> list[tuple[int, int]]:
    return [(1, -i) for i in range(1, k + 2)]


def _is_transposition(perm: list[int]) -> bool:
    moved = [i for i, j in enumerate(perm) if i != j]
    return len(moved) == 2 and perm[moved[0]] == moved[1]


class BaseSuite(ABC):
    name: str = ""
    description: str = ""

    def __init__(self):
        self.last_error: str | None = None

    @abstractmethod
    def run(self, params: Config, report: Report) -> None:
        """Append checks and payload to report; raise to abort the suite."""

    def check(self, report: Report, name: str, passed: bool, detail: str = "") -> bool:
        report.checks.append(CheckResult(name=name, passed=bool(passed), detail=detail))
        if not passed:
            logger.warning(f"{self.name}: check {name} failed {detail}")
        return bool(passed)

    def safe_run(self, params: Config) -> Report:
        report = Report(suite=self.name, params=params.as_dict())
        start = time.perf_counter()
        try:
            self.run(params, report)
            self.last_error = None
        except CheckFailure as e:
            self._fail(report, e, 1)
            report.payload["failure"] = e.details
        except (InvalidInputError, ValidationError) as e:
            self._fail(report, e, 2)
        except TrackingError as e:
            self._fail(report, e, 3)
            report.payload["tracking"] = e.report
        except ConvergenceError as e:
            self._fail(report, e, 3)
        except Exception as e:
            self._fail(report, e, 1)
        report.timings["seconds"] = time.perf_counter() - start
        if report.error is None:
            report.exit_code = 0 if all(c.passed for c in report.checks) else 1
        return report

    def _fail(self, report: Report, error: Exception, code: int) -> None:
        self.last_error = str(error)
        logger.exception(f"Suite {self.name} failed")
        report.error = f"{type(error).__name__}: {error}"
        report.exit_code = code


class CQSSuite(BaseSuite):
    name = "cqs"
    description = "Hirzebruch-Jung data, handle and core schedules, and the order-preserving residue map"

    def run(self, params: Config, report: Report) -> None:
        n, q = params.N, params.Q
        descriptor = cqs.describe(n, q)
        images = cqs.order_map(n, q)
        schedule = cqs.handle_schedule(n, q)
        report.payload.update(
            descriptor=descriptor.model_dump(mode="json"),
            non_special=schedule.non_special,
            order_map={str(a): b for a, b in images.items()},
            p_sequence=cqs.p_sequence(n, q),
            cores=[cqs.core_schedule(n, q, d).model_dump(mode="json") for d in schedule.non_special],
        )
        self.check(report, "hj_value", cqs.hj_value(descriptor.b) * q == n)
        self.check(report, "order_map", True, f"{len(images)} special residues")

        failures, shape = [], []
        for m in range(2, ORDER_MAP_LIMIT + 1):
            for r in range(1, m):
                if gcd(m, r) != 1:
                    continue
                series = cqs.i_series(m, r)
                if len(series) != len(cqs.hj_expand(m, r)) + 1 or any(b >= a for a, b in zip(series, series[1:])):
                    shape.append((m, r))
                try:
                    cqs.order_map(m, r)
                except CheckFailure:
                    failures.append((m, r))
        self.check(report, "i_series_shape", not shape, f"{len(shape)} bad series up to n={ORDER_MAP_LIMIT}")
        self.check(report, "order_map_sweep", not failures, f"{len(failures)} failures up to n={ORDER_MAP_LIMIT}")


class GramSuite(BaseSuite):
    name = "gram"
    description = "Left dual of the L-collection against the McKay quiver, Seifert rows, Gram conjugation, Floer table, path sums"

    def run(self, params: Config, report: Report) -> None:
        bad_gram, bad_row, bad_conj = [], [], []
        for k in GRAM_KS:
            basis = lattice.xk_fiber_basis(k)
            seq = mutations.make_sequence(basis, lattice.l_collection(k))
            dual = mutations.seifert_gram(mutations.left_dual(seq))
            euler = path_algebra.euler_gram(quivers.mckay_quiver(k), params.SEED)
            if [[abs(v) for v in row] for row in dual.entries] != euler.entries:
                bad_gram.append(k)
            gram = mutations.seifert_gram(seq)
            row = gram.entries[0]
            if row != [(-1) ** j * (j + 1) for j in range(len(row))]:
                bad_row.append(k)
            for i in range(1, len(seq)):
                for left, move in ((True, mutations.mutate_left), (False, mutations.mutate_right)):
                    expected = mutations.conjugate_gram(gram, mutations.mutation_matrix(seq, i, left))
                    if mutations.seifert_gram(move(seq, i)).entries != expected:
                        bad_conj.append((k, i, left))
            if k == params.K:
                report.payload.update(left_dual_gram=dual.entries, euler_gram=euler.entries)
        self.check(report, "gram_match", not bad_gram, f"mismatch for k={bad_gram}" if bad_gram else "")
        self.check(report, "seifert_first_row", not bad_row, f"mismatch for k={bad_row}" if bad_row else "")
        self.check(report, "gram_conjugation", not bad_conj, f"mismatch at {bad_conj}" if bad_conj else "")

        for k in CF_KS:
            bad = lattice.cf_mismatches(k)
            self.check(report, f"cf_table_k{k}", not bad, str(bad) if bad else f"{len(lattice.cf_table(k))} entries")

        sums = mutations.path_sum_lemma(PATH_SUM_LIMIT)
        report.payload["path_sums"] = sums
        self.check(report, "path_sum_lemma", sums == [i + 1 for i in range(1, PATH_SUM_LIMIT + 1)])


class BraidSuite(BaseSuite):
    name = "braid"
    description = "Replay of the six-step mutation braid"

    def run(self, params: Config, report: Report) -> None:
        for k in BRAID_KS:
            steps = replay(xk_braid_script(k))
            for step in steps:
                self.check(report, f"k{k}_{step.name}", step.matched,
                           f"positions {step.mismatches}" if step.mismatches else "")
            report.payload[f"k{k}"] = [
                {"name": s.name, "classes": s.classes, "display_mismatches": s.display_mismatches, "errata": s.errata}
                for s in steps
            ]


class QuiverSuite(BaseSuite):
    name = "quiver"
    description = "Hom dimensions and compositions of the X_{k+1} gluing quiver"

    def run(self, params: Config, report: Report) -> None:
        for k in QUIVER_KS:
            xq = quivers.xk_quiver(k, _points(k))
            algebra = path_algebra.PathAlgebra(xq, path_algebra.specialize(xq, params.SEED))
            targets = ["PhiO", "PhiT", "PhiOH", "B1"]
            from_km2 = [algebra.dimension(f"e_{k - 2}", v) for v in targets]
            from_km1 = [algebra.dimension(f"e_{k - 1}", v) for v in targets]
            kernel = [algebra.dimension("PhiT", f"B{i}") for i in range(1, k + 2)]
            self.check(report, f"k{k}_from_e_k-2", from_km2 == [1, 3, 2, 1], str(from_km2))
            self.check(report, f"k{k}_from_e_k-1", from_km1 == [0, 1, 1, 1], str(from_km1))
            self.check(report, f"k{k}_kernel_dims", all(d == 2 for d in kernel), str(kernel))
            through_o = algebra.composition_rank(f"e_{k - 2}", "PhiO", "PhiT")
            through_e = algebra.composition_rank(f"e_{k - 2}", f"e_{k - 1}", "PhiT")
            self.check(report, f"k{k}_compositions", (through_o, through_e) == (3, 2), f"{through_o}, {through_e}")
            if k == params.K:
                report.payload["hom_dims"] = path_algebra.hom_dims(xq, params.SEED)
                report.payload["vertices"] = xq.vertices

        k = params.K
        euler = path_algebra.euler_gram(quivers.mckay_quiver(k), params.SEED)
        report.payload["mckay_euler"] = euler.entries
        expected = [[1 if i == j else 2 if j == i + 1 else 1 if j == i + 2 else 0 for j in range(k - 2)] for i in range(k - 2)]
        self.check(report, "mckay_euler", euler.entries == expected)


class NormalizeSuite(BaseSuite):
    name = "normalize"
    description = "Rescaling the A-side constants into the B-side relations"

    def run(self, params: Config, report: Report) -> None:
        k = params.K
        result = quivers.normalize_constants(quivers.fukaya_quiver(k))
        self.check(report, "relations_normalize", True, f"{len(result.quiver.relations)} relations")
        report.payload.update(
            ratio=str(result.ratio),
            points=[str(p) for p in result.points],
            rescaling={label: str(f) for label, f in result.rescaling.items()},
            displayed=[
                {"arrow": a, "displayed": d, "used": u, "agree": ok} for a, d, u, ok in quivers.compare_rescalings(k)
            ],
        )
        pts = quivers.normalized_points(result, list(range(2, k + 2)))
        self.check(report, "points", pts == [(1, -i) for i in range(1, k + 2)], str([f"({a}, {b})" for a, b in pts]))
        dims = path_algebra.hom_dims(quivers.xk_quiver(k, pts), params.SEED)
        self.check(report, "normalized_hom_dims", dims == path_algebra.hom_dims(quivers.xk_quiver(k, _points(k)), params.SEED))
        try:
            quivers.xk_quiver(k, quivers.normalized_points(result, [1] * k))
            rejected = False
        except InvalidInputError:
            rejected = True
        self.check(report, "coincident_points_rejected", rejected)


class CriticalSuite(BaseSuite):
    name = "critical"
    description = "Critical points of the LG potential: counts, clusters, real points, type I radius"

    def run(self, params: Config, report: Report) -> None:
        for k, s in CRITICAL_SWEEP:
            cs = lg_numerics.critical_set(LGSpec(k=k, s=s, delta=params.DELTA), params.TOL)
            self.check(report, f"counts_k{k}_s{s:g}", len(cs.points) == 2 * k + 2, str(cs.counts))

        spec = LGSpec(k=params.K, s=params.S, delta=params.DELTA)
        cs = lg_numerics.critical_set(spec, params.TOL)
        real = lg_numerics.real_critical_points(cs)
        self.check(report, "real_points", len(real) == 2 and all(p.y.real > 0 for p in real)
                   and sum(p.x.real > 0 for p in real) >= 1, f"{len(real)} real")
        report.payload["critical_set"] = cs.model_dump(mode="json")

        for k, s in TYPE_ONE_CASES:
            cs = lg_numerics.critical_set(LGSpec(k=k, s=s, delta=params.DELTA), params.TOL)
            err = abs(cs.type_one_geomean - cs.type_one_predicted) / cs.type_one_predicted
            report.payload[f"type_one_k{k}"] = {
                "measured": cs.type_one_geomean, "predicted": cs.type_one_predicted,
                "displayed": cs.type_one_displayed, "relative_error": err,
            }
            self.check(report, f"type_one_k{k}", err < RELATIVE_TOL, f"relative error {err:.3e}")


class BranchSuite(BaseSuite):
    name = "branch"
    description = "Branch points of the y-projection: counts and outer radius"

    def run(self, params: Config, report: Report) -> None:
        k, s, t = BRANCH_CASE
        bs = lg_numerics.branch_points(LGSpec(k=k, s=s, delta=params.DELTA), t)
        err = abs(bs.outer_geomean - bs.outer_predicted) / bs.outer_predicted
        self.check(report, "count", len(bs.points) == k + 1)
        self.check(report, "in_regime", bs.in_regime)
        self.check(report, "outer_radius", err < RELATIVE_TOL, f"relative error {err:.3e}")
        report.payload["branch_set"] = bs.model_dump(mode="json")


class MonodromySuite(BaseSuite):
    name = "monodromy"
    description = "Twin exchange under sector rotation, full loops, and the radial collision"

    def run(self, params: Config, report: Report) -> None:
        t0 = complex(params.T0)
        for k in MONODROMY_KS:
            spec = LGSpec(k=k, s=MONODROMY_S, delta=params.DELTA)
            sector = monodromy.sector_monodromy(spec, t0, max_step=params.MAX_STEP)
            swap = monodromy.twin_transposition(spec, t0, sector.trajectory.roots[0])
            self.check(report, f"k{k}_sector", sector.permutation == swap,
                       f"{sector.permutation} vs {swap}")
            once = monodromy.loop_monodromy(spec, t0, 1, max_step=params.MAX_STEP)
            twice = monodromy.loop_monodromy(spec, t0, 2, max_step=params.MAX_STEP)
            self.check(report, f"k{k}_loop", _is_transposition(once.permutation), str(once.permutation))
            self.check(report, f"k{k}_double_loop", twice.permutation == list(range(k + 1)), str(twice.permutation))
            report.payload[f"k{k}"] = {
                "sector": sector.permutation, "loop": once.permutation,
                "steps": len(once.t_path), "halvings": once.halvings,
            }

        k, s, start = RADIAL_CASE
        radial = monodromy.radial_collision(LGSpec(k=k, s=s, delta=params.DELTA), start, max_step=params.MAX_STEP)
        self.check(report, "radial_estimate", radial.relative_error < 1e-4, f"relative error {radial.relative_error:.3e}")
        self.check(report, "radial_monotone", radial.monotone)
        self.check(report, "radial_twins_ordered", radial.twins_ordered)
        self.check(report, "radial_real", radial.max_imag < 1e-3, f"max imaginary part {radial.max_imag:.3e}")
        report.payload["radial"] = radial.model_dump(mode="json", exclude={"distances"})


class SturmSuite(BaseSuite):
    name = "sturm"
    description = "Real roots of y^k - (y - t0)^2 on both sides of the double point"

    def run(self, params: Config, report: Report) -> None:
        for k in STURM_KS:
            t_star = sturm.t_double(k)
            below = [sturm.sturm_real_roots(k, f * t_star) for f in STURM_BELOW]
            above = [sturm.sturm_real_roots(k, f * t_star) for f in STURM_ABOVE]
            self.check(report, f"k{k}_below", all(c.distinct == 3 and c.numeric == 3 for c in below))
            self.check(report, f"k{k}_above", all(c.distinct == 1 and c.numeric == 1 for c in above))
            double = sturm.sturm_at_double_point(k)
            self.check(report, f"k{k}_double", (double.distinct, double.with_multiplicity) == (2, 3))
            report.payload[f"k{k}"] = {"t_double": t_star, "t_double_bound": sturm.t_double_bound(k)}


class PalaisSmaleSuite(BaseSuite):
    name = "palais-smale"
    description = "Sampled gradient lower bound outside a polydisc"

    def run(self, params: Config, report: Report) -> None:
        spec = LGSpec(k=params.K, s=params.S, delta=params.DELTA)
        result = lg_numerics.palais_smale_sample(spec, params.RADIUS, params.SAMPLES, params.SEED)
        flat = lg_numerics.palais_smale_sample(spec, params.RADIUS, params.SAMPLES, params.SEED, s=0.0)
        self.check(report, "half_s_squared", result.violations == 0,
                   f"{result.violations}/{result.samples} below {result.bound:.3e}, min {result.minimum:.3e}")
        self.check(report, "nonnegative_at_s0", flat.minimum >= 0.0, f"min {flat.minimum:.3e}")
        report.payload.update(sample=result.model_dump(mode="json"), s_zero=flat.model_dump(mode="json"))


class PickSuite(BaseSuite):
    name = "pick"
    description = "Lattice points of the Newton polygon and Pick's formula"

    def run(self, params: Config, report: Report) -> None:
        for k in sorted(set(PICK_KS) | {params.K}):
            count = lg_numerics.newton_polygon_count(k)
            got = (count.interior, count.boundary, count.two_volume)
            self.check(report, f"k{k}", got == ((k + 1) // 2, k + 3, 2 * k + 2), str(got))
            if k == params.K:
                report.payload.update(count.model_dump())


class AllSuite(BaseSuite):
    name = "all"
    description = "Every suite above"

    def run(self, params: Config, report: Report) -> None:
        codes = []
        for name, suite in SUITES.items():
            if name == self.name:
                continue
            sub = suite.safe_run(params)
            codes.append(sub.exit_code)
            report.checks += [CheckResult(name=f"{name}/{c.name}", passed=c.passed, detail=c.detail) for c in sub.checks]
            if sub.error:
                report.checks.append(CheckResult(name=f"{name}/error", passed=False, detail=sub.error))
            report.payload[name] = sub.status.value
            report.timings[name] = sub.timings.get("seconds", 0.0)
        report.payload["exit_codes"] = codes
        # a usage or convergence failure in any suite outranks plain check failures
        worst = max(codes, default=0)
        if worst > 1:
            report.error = f"a suite exited with code {worst}"
            report.exit_code = worst


SUITES: dict[str, BaseSuite] = {
    suite.name: suite
    for suite in (
        CQSSuite(), GramSuite(), BraidSuite(), QuiverSuite(), NormalizeSuite(), CriticalSuite(),
        BranchSuite(), MonodromySuite(), SturmSuite(), PalaisSmaleSuite(), PickSuite(), AllSuite(),
    )
}


def get_suite(name: str) -> BaseSuite:
    suite = SUITES.get(name)
    if suite is None:
        raise InvalidInputError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    return suite


def get_all_suites() -> list[BaseSuite]:
    return list(SUITES.values())


def run_suite(name: str, params: Config | Mapping[str, Any] | None = None, out: str | Path | None = None) -> Report:
    """Run one suite; writes <out>/<name>.json when out is given."""
    suite = get_suite(name)
    if not isinstance(params, Config):
        params = Config().merged(params or {})
    logger.info(f"running suite {name}")
    report = suite.safe_run(params)
    if out is not None:
        write_report(report, out)
    return report
