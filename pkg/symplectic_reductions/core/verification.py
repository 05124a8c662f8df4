"""
Verification Runner

Property suites over the configured (n, m) grid. Each check is a pure
function returning a CheckResult; checks may run on a thread pool and the
report lists them sorted by name.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple

from sympy import ImmutableMatrix

from ..exceptions import (
    InvalidParameterError,
    NonGenericPointError,
    ResourceBoundError,
    SymplecticReductionError,
)
from ..models.matrices import ComponentDescriptor
from ..models.partition import GroupKind, GroupType
from ..models.report import CheckResult, VerificationReport
from ..models.weights import BlockPosition, DominantWeight
from ..models.geometry import BaseKind, BaseVariety, InventoryStatus, VerdictCase
from ..services.geometry import GeometryClassifier
from ..services.momentmap import MomentMapService
from ..services.partitions import OrbitClassifier
from ..services.repthy import RepresentationCalculator
from ..utils.cache import ResultCache
from ..utils.config_manager import Config
from ..utils.rng import SeededRng

logger = logging.getLogger(__name__)

Check = Tuple[str, Callable[[], Tuple[bool, Dict[str, Any]]]]

# Fixed seeds for the tangent dimension battery, and the share that must be generic
SEED_BATTERY = 100
GENERIC_RATE = 0.95

# Largest n and m scanned for the clause disjointness
THEOREM_SCAN_LIMIT = 50

# Invariant dimensions of Sp_4 representations under Sp_2 x 1
SP4_SP2_INVARIANTS = {(0, 0): 1, (1, 0): 2, (1, 1): 1, (2, 0): 3}

# (kind, n, m) -> expected verdict case
VERDICT_EXAMPLES = {
    (GroupKind.GL, 3, 4): VerdictCase.SYMPLECTIC_UNIQUE_DESING,
    (GroupKind.O, 5, 3): VerdictCase.SYMPLECTIC_UNIQUE_DESING,
    (GroupKind.GL, 1, 3): VerdictCase.DESING_STRICTLY_DOMINATES,
    (GroupKind.SP, 4, 5): VerdictCase.DESING_STRICTLY_DOMINATES,
    (GroupKind.SP, 4, 3): VerdictCase.NOT_COVERED,
}


class VerificationRunner:
    """Runs the named verification suites."""

    SUITES = ["dims", "factor", "h0", "cauchy", "ks", "springer", "theorems"]

    def __init__(self, config: Optional[Config] = None, cache: Optional[ResultCache] = None):
        """
        Initialize the runner.

        Args:
            config (Config, optional): Grid, bounds, seed and worker count
            cache (ResultCache, optional): Shared result cache
        """
        self.config = config or Config()
        self.calculator = RepresentationCalculator(self.config, cache)

    def run(self, suite: str) -> VerificationReport:
        """
        Run a suite, or every suite for ``"all"``.

        Raises:
            InvalidParameterError: unknown suite name
            ResourceBoundError: a check exceeded the configured bounds
        """
        names = self.SUITES if suite == "all" else [suite]
        if any(name not in self.SUITES for name in names):
            raise InvalidParameterError(f"unknown suite {suite!r}; choose from {self.SUITES + ['all']}")

        checks: List[Check] = []
        for name in names:
            checks.extend(getattr(self, f"_suite_{name}")())
        logger.info("Running %d checks of suite %s with %d worker(s)", len(checks), suite, self.config.workers)

        with ThreadPoolExecutor(max_workers=self.config.workers) as pool:
            results = list(pool.map(self._execute, checks))
        results.sort(key=lambda r: r.name)

        report = VerificationReport(suite, self.config.seed, tuple(results))
        for failure in report.failures:
            logger.warning("Check %s failed: %s", failure.name, failure.witness)
        return report

    def _execute(self, check: Check) -> CheckResult:
        name, function = check
        try:
            passed, witness = function()
        except ResourceBoundError:
            raise
        except SymplecticReductionError as e:
            return CheckResult(name, False, {"error": f"{type(e).__name__}: {e}", "seed": self.config.seed})
        return CheckResult(name, bool(passed), witness)

    def _grid(self, kinds: Tuple[GroupKind, ...] = (GroupKind.GL, GroupKind.SP), max_n: Optional[int] = None,
              max_m: Optional[int] = None) -> Iterator[Tuple[GroupKind, int, int]]:
        max_n = min(max_n or self.config.grid_max_n, self.config.grid_max_n)
        max_m = min(max_m or self.config.grid_max_m, self.config.grid_max_m)
        for kind in kinds:
            for n in range(1, max_n + 1):
                if kind is GroupKind.SP and n % 2:
                    continue
                for m in range(1, max_m + 1):
                    yield kind, n, m

    # dims

    @staticmethod
    def expected_component_count(kind: GroupKind, n: int, m: int) -> int:
        if kind is GroupKind.GL:
            if m <= n:
                return m + 1
            return 2 * n - m + 1 if m < 2 * n else 1
        return 1 if m > n else 2

    @staticmethod
    def expected_zero_fiber_dim(kind: GroupKind, n: int, m: int) -> int:
        if kind is GroupKind.GL:
            if m >= 2 * n:
                return 2 * n * m - n * n
            return n * m + (m * m // 4 if m % 2 == 0 else (m * m - 1) // 4)
        if m > n:
            return 2 * m * n - n * (n + 1) // 2
        return m * n + m * (m - 1) // 2

    def _zero_fiber_check(self, kind: GroupKind, n: int, m: int):
        rng = SeededRng(self.config.seed).spawn(("dims", kind.value, n, m))
        components = MomentMapService.zero_fiber_components(kind, n, m)
        top = max(c.dim for c in components)
        tangent = {}
        violations = []
        generic_rates = {}
        for component in components:
            stream = rng.spawn(component.name)
            point = MomentMapService.sample_component(component, stream.spawn("generic"))
            tangent[component.name] = MomentMapService.tangent_dim(point)
            for i in range(self.config.sample_count):
                sample = MomentMapService.draw(component, stream.spawn(i))
                if kind is GroupKind.GL:
                    conditions = MomentMapService.gl_component_conditions(sample, component.index)
                else:
                    conditions = {"moment": MomentMapService.in_zero_fiber(sample)}
                failed = sorted(name for name, holds in conditions.items() if not holds)
                if failed:
                    violations.append({"component": component.name, "sample": i, "failed": failed})
            if component.dim == top:
                generic_rates[component.name] = self.generic_rate(component)
        passed = (len(components) == self.expected_component_count(kind, n, m)
                  and top == self.expected_zero_fiber_dim(kind, n, m)
                  and all(tangent[c.name] == c.dim for c in components)
                  and not violations
                  and all(rate >= GENERIC_RATE for rate in generic_rates.values()))
        return passed, {"seed": self.config.seed, "stream": rng.describe(), "components": len(components),
                        "top_dim": top, "tangent_dims": tangent, "violations": violations,
                        "generic_rates": generic_rates}

    @staticmethod
    def generic_rate(component: ComponentDescriptor) -> float:
        """Share of the fixed seed battery whose (resampled) point has the component dimension."""
        generic = 0
        for seed in range(SEED_BATTERY):
            stream = SeededRng(seed).spawn(("battery", component.group.kind.value, component.n,
                                            component.m, component.name))
            try:
                point = MomentMapService.sample_component(component, stream)
            except NonGenericPointError:
                continue
            generic += MomentMapService.tangent_dim(point) == component.dim
        return generic / SEED_BATTERY

    def _orbit_dim_check(self, kind: GroupKind, max_m: int):
        mismatches = []
        for m in range(1, max_m + 1):
            ambient = GroupType(kind, m if kind is GroupKind.GL else 2 * m)
            for label in OrbitClassifier.two_bounded_labels(ambient):
                oracle = ambient.algebra_dim - OrbitClassifier.centralizer_dim(label)
                closed = OrbitClassifier.closed_form_dim(label)
                N = label.partition.twos
                if kind is GroupKind.GL:
                    expected = 2 * N * (m - N)
                elif kind is GroupKind.O:
                    expected = 2 * m * N - N * (N + 1)
                else:
                    expected = closed
                if not oracle == closed == expected:
                    mismatches.append({"label": str(label), "oracle": oracle, "closed_form": closed})
        return not mismatches, {"max_m": max_m, "mismatches": mismatches}

    def _base_dim_check(self, max_m: int):
        dims = GeometryClassifier.base_dims(max_m)
        mismatches = {name: list(pair) for name, pair in dims.items() if pair[0] != pair[1]}
        return not mismatches, {"max_m": max_m, "bases": len(dims), "mismatches": mismatches}

    def _base_form_check(self, max_m: int):
        forms, mismatches = {}, []
        for kind in (BaseKind.GRASSMANNIAN, BaseKind.ISOTROPIC_SP, BaseKind.ISOTROPIC_SO):
            fitted = GeometryClassifier.fit_base_dim(kind)
            forms[kind.value] = str(fitted)
            for m in range(1, max_m + 1):
                for k in range(m + 1):
                    closed = BaseVariety(kind, m, k).dim
                    if fitted.subs({GeometryClassifier.K: k, GeometryClassifier.M: m}) != closed:
                        mismatches.append({"kind": kind.value, "m": m, "k": k, "closed_form": closed})
        return not mismatches, {"max_m": max_m, "fitted": forms, "mismatches": mismatches}

    def _suite_dims(self) -> List[Check]:
        checks: List[Check] = []
        for kind, n, m in self._grid():
            checks.append((f"dims.zero_fiber.{kind.value}.n{n}.m{m}",
                           lambda k=kind, a=n, b=m: self._zero_fiber_check(k, a, b)))
        checks.append(("dims.orbits.gl", lambda: self._orbit_dim_check(GroupKind.GL, min(8, self.config.grid_max_m))))
        checks.append(("dims.orbits.so", lambda: self._orbit_dim_check(GroupKind.O, 5)))
        checks.append(("dims.orbits.sp", lambda: self._orbit_dim_check(GroupKind.SP, 5)))
        checks.append(("dims.bases", lambda: self._base_dim_check(min(6, self.config.grid_max_m))))
        checks.append(("dims.base_forms", lambda: self._base_form_check(8)))
        return checks

    # factor

    @staticmethod
    def _invertible(rng: SeededRng, size: int) -> ImmutableMatrix:
        attempt = 0
        while True:
            g = rng.spawn(attempt).integer_matrix(size, size)
            if g.det() != 0:
                return g
            attempt += 1

    def _factor_check(self, n: int, m: int):
        rng = SeededRng(self.config.seed).spawn(("factor", n, m))
        N = min(m // 2, n)
        failures = []
        for rank in range(N + 1):
            f = MomentMapService.two_nilpotent_normal_form(rank, m)
            for i in range(self.config.sample_count):
                g = self._invertible(rng.spawn((rank, i)), m)
                conjugate = ImmutableMatrix(g * f * g.inv())
                pair = MomentMapService.factor_two_nilpotent(conjugate, n)
                if MomentMapService.quotient_gl(pair) != conjugate or not MomentMapService.moment_gl(pair).is_zero_matrix:
                    failures.append({"rank": rank, "sample": i})

        ranks = set()
        for component in MomentMapService.zero_fiber_components(GroupKind.GL, n, m):
            for i in range(self.config.sample_count):
                image = MomentMapService.quotient_gl(MomentMapService.draw(component, rng.spawn((component.name, i))))
                ranks.add(image.rank())
                if not (image * image).is_zero_matrix:
                    failures.append({"component": component.name, "sample": i, "square_zero": False})
        passed = not failures and max(ranks) <= N
        return passed, {"seed": self.config.seed, "stream": rng.describe(), "N": N,
                        "quotient_ranks": sorted(ranks), "failures": failures}

    def _suite_factor(self) -> List[Check]:
        return [(f"factor.gl.n{n}.m{m}", lambda a=n, b=m: self._factor_check(a, b))
                for _, n, m in self._grid((GroupKind.GL,), max_n=3, max_m=6)]

    # h0

    def _branching_check(self, n: int):
        group = GroupType.general_linear(n)
        bound = self.config.weight_bound
        mismatches = []
        for weight in self.calculator.dominant_weights(group, bound, bound):
            for k in range(n + 1):
                gt = self.calculator.gt_invariant_dim(weight, k)
                subgroup = GroupType.general_linear(k)
                first = self.calculator.ct_invariant_dim(weight, subgroup, BlockPosition.FIRST)
                last = self.calculator.ct_invariant_dim(weight, subgroup, BlockPosition.LAST)
                if not gt == first == last:
                    mismatches.append({"weight": list(weight.entries), "k": k, "gt": gt, "ct": [first, last]})
        return not mismatches, {"n": n, "weight_bound": bound, "mismatches": mismatches}

    def _vector_rep_check(self):
        mismatches = []
        for _, n, m in self._grid((GroupKind.GL,)):
            if m % 2 or m >= 2 * n:
                continue
            vector = DominantWeight.gl(*([1] + [0] * (n - 1)))
            values = (self.calculator.h0(GroupKind.GL, n, m, vector),
                      self.calculator.h0(GroupKind.GL, n, m, vector.dual()))
            if values != (m // 2, m // 2):
                mismatches.append({"n": n, "m": m, "h0": list(values)})
        return not mismatches, {"mismatches": mismatches}

    def _sp_spot_check(self):
        subgroup = GroupType.symplectic(2)
        values = {str(list(entries)): self.calculator.ct_invariant_dim(DominantWeight.sp(*entries), subgroup)
                  for entries in SP4_SP2_INVARIANTS}
        expected = {str(list(entries)): value for entries, value in SP4_SP2_INVARIANTS.items()}
        return values == expected, {"values": values, "expected": expected}

    def _suite_h0(self) -> List[Check]:
        checks: List[Check] = [(f"h0.branching.gl{n}", lambda a=n: self._branching_check(a))
                               for n in range(1, min(4, self.config.max_rank) + 1)]
        checks.append(("h0.vector_representation", self._vector_rep_check))
        checks.append(("h0.sp4_sp2", self._sp_spot_check))
        return checks

    # cauchy / ks

    def _suite_cauchy(self) -> List[Check]:
        size = min(3, self.config.max_rank)

        def check(n: int, m: int):
            report = self.calculator.cauchy_check(n, m, self.config.degree_bound)
            return report.passed, report.to_dict()

        return [(f"cauchy.n{n}.m{m}", lambda a=n, b=m: check(a, b))
                for n in range(1, size + 1) for m in range(1, size + 1)]

    def _suite_ks(self) -> List[Check]:
        def check(n: int):
            report = self.calculator.ks_presentation_check(n, self.config.weight_bound)
            return report.passed, report.to_dict()

        return [(f"ks.n{n}", lambda a=n: check(a)) for n in range(1, min(3, self.config.max_rank) + 1)]

    # springer

    @staticmethod
    def expected_springer_count(kind: GroupKind, m: int, N: int) -> int:
        if kind is GroupKind.GL:
            return 1 if 2 * N == m else 2
        if kind is GroupKind.SP:
            return 1 if N == m else 0
        if N == m - 1:
            return 2
        return 1 if N == m else 0

    def _springer_check(self, kind: GroupKind, max_m: int):
        mismatches = []
        for m in range(1, max_m + 1):
            ambient = GroupType(kind, m if kind is GroupKind.GL else 2 * m)
            for label in OrbitClassifier.two_bounded_labels(ambient):
                models = GeometryClassifier.springer_desings(label)
                N = label.partition.twos
                expected = self.expected_springer_count(kind, m, N)
                dims_ok = all(model.total_dim == OrbitClassifier.closed_form_dim(label) for model in models)
                distinct = len(set(models)) == len(models)
                if len(models) != expected or not dims_ok or not distinct:
                    mismatches.append({"label": str(label), "models": [model.name for model in models],
                                       "expected": expected})
        return not mismatches, {"max_m": max_m, "mismatches": mismatches}

    def _suite_springer(self) -> List[Check]:
        return [(f"springer.{kind.value}", lambda k=kind: self._springer_check(k, 6))
                for kind in (GroupKind.GL, GroupKind.SP, GroupKind.O)]

    # theorems

    def _disjointness_check(self):
        overlaps = []
        for kind in GroupKind:
            for n in range(1, THEOREM_SCAN_LIMIT + 1):
                for m in range(1, THEOREM_SCAN_LIMIT + 1):
                    if (GeometryClassifier.unique_clause_holds(kind, n, m)
                            and GeometryClassifier.domination_clause_holds(kind, n, m)):
                        overlaps.append([kind.value, n, m])
        return not overlaps, {"limit": THEOREM_SCAN_LIMIT, "overlaps": overlaps}

    def _verdict_examples_check(self):
        wrong = {f"{k.value}.n{n}.m{m}": GeometryClassifier.verdict(k, n, m).case.value
                 for (k, n, m), case in VERDICT_EXAMPLES.items()
                 if GeometryClassifier.verdict(k, n, m).case is not case}
        return not wrong, {"wrong": wrong}

    def _model_check(self):
        mismatches = []
        for kind, n, m in self._grid():
            verdict = GeometryClassifier.verdict(kind, n, m)
            quotient = GeometryClassifier.symplectic_reduction(kind, n, m)
            model = verdict.model
            if model is not None and model.total_dim != quotient.dim:
                mismatches.append({"case": [kind.value, n, m], "model": model.name, "quotient_dim": quotient.dim})
            if verdict.case is VerdictCase.SYMPLECTIC_UNIQUE_DESING:
                springer = GeometryClassifier.springer_desings(quotient.components[0])
                if springer != [model]:
                    mismatches.append({"case": [kind.value, n, m], "springer": [s.name for s in springer]})
        return not mismatches, {"mismatches": mismatches}

    def _reduction_check(self):
        failures = []
        covered = 0
        for kind, n, m in self._grid():
            if GeometryClassifier.is_excluded(kind, n, m):
                continue
            covered += 1
            report = GeometryClassifier.reduction_consistency(kind, n, m)
            if not report.passed:
                failures.append({"case": [kind.value, n, m], "report": report.to_dict()})
        return not failures, {"covered": covered, "failures": failures}

    def _hilb_check(self):
        wrong = []
        for m in range(2, self.config.grid_max_m + 1):
            gl1 = GeometryClassifier.hilb_components(GroupKind.GL, 1, m)
            if gl1.status is not InventoryStatus.EXACT or gl1.component_dims != (2 * m - 2, 2 * m - 2):
                wrong.append(["gl", 1, m])
            sp2 = GeometryClassifier.hilb_components(GroupKind.SP, 2, m)
            expected = InventoryStatus.EXACT if m == 2 else InventoryStatus.IRREDUCIBLE
            if sp2.status is not expected:
                wrong.append(["sp", 2, m])
            if m >= 4:
                gl2 = GeometryClassifier.hilb_components(GroupKind.GL, 2, m)
                if gl2.component_dims != (4 * m - 8, 4 * m - 5):
                    wrong.append(["gl", 2, m])
        return not wrong, {"wrong": wrong}

    def _suite_theorems(self) -> List[Check]:
        return [
            ("theorems.disjoint", self._disjointness_check),
            ("theorems.verdict_examples", self._verdict_examples_check),
            ("theorems.model_dims", self._model_check),
            ("theorems.reduction_consistency", self._reduction_check),
            ("theorems.hilb_inventory", self._hilb_check),
        ]
