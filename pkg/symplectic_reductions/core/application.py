"""
Core Application Module

Orchestrates the services into full analyses of one (G, n, m) and into
classification tables.
"""

import logging
from typing import Any, Dict, Iterable, List, Optional

from sympy import ImmutableMatrix

from ..exceptions import InvalidParameterError, NonGenericPointError
from ..models.geometry import QuotientDescription, VerdictCase
from ..models.matrices import ComponentDescriptor, MatrixPair, SpPoint
from ..models.partition import GroupKind, GroupType
from ..models.report import CheckResult, H0Entry, ReductionReport, TableRow
from ..services.geometry import GeometryClassifier
from ..services.momentmap import MomentMapService, Point
from ..services.partitions import hyperbolic_swap
from ..services.repthy import RepresentationCalculator
from ..utils.cache import ResultCache
from ..utils.config_manager import Config
from ..utils.rng import SeededRng

logger = logging.getLogger(__name__)


def quotient_image(point: Point) -> ImmutableMatrix:
    """Image of a zero-fibre point under the quotient morphism: u2 u1 (GL) or tw w (Sp)."""
    if isinstance(point, MatrixPair):
        return MomentMapService.quotient_gl(point)
    return ImmutableMatrix(MomentMapService.sp_transpose(point) * point.w)


class ReductionApp:
    """
    Main application class of the symplectic reduction toolkit.

    Holds the effective configuration, the optional result cache and the
    representation-theory calculator shared by all analyses of a run.
    """

    def __init__(self, config: Optional[Config] = None, cache: Optional[ResultCache] = None):
        """
        Initialize the application.

        Args:
            config (Config, optional): Effective settings; defaults when omitted
            cache (ResultCache, optional): Result cache; opened from
                ``config.cache_path`` when omitted and a path is configured
        """
        self.config = config or Config()
        if cache is None and self.config.cache_path:
            cache = ResultCache(self.config.cache_path)
        self.cache = cache
        self.calculator = RepresentationCalculator(self.config, self.cache)

    def get_version(self) -> str:
        """Get the toolkit version."""
        from .. import __version__
        return __version__

    # Analysis

    def analyze(self, kind: GroupKind, n: int, m: int) -> ReductionReport:
        """
        Run every module on (G, n, m) and assemble the report.

        Args:
            kind: Acting group family
            n: dim V
            m: dim V' (GL), half of dim E (Sp) or dim E (O)

        Returns:
            ReductionReport; verdict-only content for O(V)

        Raises:
            InvalidParameterError: invalid (G, n, m)
            ResourceBoundError: an h0 value beyond the configured bounds
        """
        MomentMapService.validate_parameters(kind, n, m)
        logger.info("Analyzing %s n=%d m=%d (seed %d)", kind.value, n, m, self.config.seed)

        verdict = GeometryClassifier.verdict(kind, n, m)
        inventory = GeometryClassifier.hilb_components(kind, n, m)
        notes = [c for c in verdict.citations if c.startswith("unverified")]

        if kind is GroupKind.O:
            notes.append("O(V): verdict-only support, the quotient and zero fibre are not modeled")
            checks = [self._check_clauses(kind, n, m)]
            return ReductionReport(kind, n, m, (), None, (), None, verdict, inventory,
                                   tuple(checks), tuple(notes), self.config.seed)

        components = MomentMapService.zero_fiber_components(kind, n, m)
        quotient = GeometryClassifier.symplectic_reduction(kind, n, m)
        model = GeometryClassifier.hilbert_chow_model(kind, n, m)

        h0_table: List[H0Entry] = []
        if GeometryClassifier.is_excluded(kind, n, m):
            notes.append("excluded odd regime: h0, the main component and its model are not available")
        else:
            bound = self.config.weight_bound
            for weight in self.calculator.dominant_weights(GroupType(kind, n), bound, bound):
                h0_table.append(H0Entry(weight, self.calculator.h0(kind, n, m, weight)))

        samples = self._sample_components(components)
        checks = [
            self._check_zero_fiber(components, samples),
            self._check_quotient(samples, quotient),
            self._check_clauses(kind, n, m),
        ]
        if kind is GroupKind.SP and m <= n:
            checks.append(self._check_sp_classification(components, samples))
        if model is not None:
            checks.append(CheckResult("geometry.model_dim", model.total_dim == quotient.dim,
                                      {"model": model.name, "model_dim": model.total_dim,
                                       "quotient_dim": quotient.dim}))
        if not GeometryClassifier.is_excluded(kind, n, m):
            consistency = GeometryClassifier.reduction_consistency(kind, n, m)
            checks.append(CheckResult("geometry.reduction_consistency", consistency.passed,
                                      consistency.to_dict()))
        if verdict.case is VerdictCase.SYMPLECTIC_UNIQUE_DESING:
            springer = GeometryClassifier.springer_desings(quotient.components[0])
            checks.append(CheckResult("geometry.springer_unique", springer == [model],
                                      {"springer": [s.name for s in springer],
                                       "model": model.name if model else None}))

        return ReductionReport(kind, n, m, tuple(components), quotient, tuple(h0_table), model,
                               verdict, inventory, tuple(checks), tuple(notes), self.config.seed)

    def _sample_components(self, components: List[ComponentDescriptor]) -> Dict[str, Optional[List[Point]]]:
        """``sample_count`` generic points per component; None when no generic point was found."""
        samples: Dict[str, Optional[List[Point]]] = {}
        for component in components:
            sample = MomentMapService.sampler(component, self.config.seed)
            try:
                samples[component.name] = [sample(i) for i in range(self.config.sample_count)]
            except NonGenericPointError as e:
                logger.warning("%s", e)
                samples[component.name] = None
        return samples

    def _check_zero_fiber(self, components: List[ComponentDescriptor],
                          samples: Dict[str, Optional[List[Point]]]) -> CheckResult:
        witness: Dict[str, Any] = {"seed": self.config.seed, "samples": self.config.sample_count,
                                   "components": {}}
        passed = True
        for component in components:
            points = samples[component.name]
            if points is None:
                witness["components"][component.name] = {"dim": component.dim, "generic": False}
                passed = False
                continue
            in_fiber = all(MomentMapService.in_zero_fiber(p) for p in points)
            dim = MomentMapService.tangent_dim(points[0])
            passed = passed and in_fiber and dim == component.dim
            witness["components"][component.name] = {"dim": component.dim, "tangent_dim": dim,
                                                     "in_zero_fiber": in_fiber}
        return CheckResult("momentmap.tangent_dims", passed, witness)

    def _check_quotient(self, samples: Dict[str, Optional[List[Point]]],
                        quotient: QuotientDescription) -> CheckResult:
        bound = max(s.label.partition.twos for s in quotient.strata)
        ranks = set()
        passed = True
        for points in samples.values():
            for point in points or ():
                image = quotient_image(point)
                ranks.add(image.rank())
                passed = passed and (image * image).is_zero_matrix
        passed = passed and max(ranks, default=0) <= bound
        return CheckResult("momentmap.quotient_square_zero", passed,
                           {"seed": self.config.seed, "rank_bound": bound, "ranks": sorted(ranks)})

    def _check_sp_classification(self, components: List[ComponentDescriptor],
                                 samples: Dict[str, Optional[List[Point]]]) -> CheckResult:
        rng = SeededRng(self.config.seed).spawn("classify")
        witness: Dict[str, Any] = {"seed": self.config.seed, "mismatches": [], "skipped": 0}
        for component in components:
            swap = hyperbolic_swap(component.m)
            for i, point in enumerate(samples[component.name] or ()):
                try:
                    tag = MomentMapService.classify_sp_component(point)
                    g = MomentMapService.random_special_orthogonal(component.m, rng.spawn((component.name, i)))
                    moved = MomentMapService.classify_sp_component(MomentMapService.act_orthogonal(point, g))
                    flipped = MomentMapService.classify_sp_component(SpPoint(point.n, point.m, point.w * swap))
                except NonGenericPointError:
                    logger.debug("Skipping rank-deficient sample %d of %s", i, component.name)
                    witness["skipped"] += 1
                    continue
                if tag is not component.tag or moved is not tag or flipped is tag:
                    witness["mismatches"].append({"component": component.name, "sample": i})
        return CheckResult("momentmap.classify_sp", not witness["mismatches"], witness)

    def _check_clauses(self, kind: GroupKind, n: int, m: int) -> CheckResult:
        unique = GeometryClassifier.unique_clause_holds(kind, n, m)
        dominates = GeometryClassifier.domination_clause_holds(kind, n, m)
        return CheckResult("geometry.clauses_disjoint", not (unique and dominates),
                           {"unique": unique, "dominates": dominates})

    # Tables

    def table_row(self, kind: GroupKind, n: int, m: int) -> TableRow:
        try:
            MomentMapService.validate_parameters(kind, n, m)
        except InvalidParameterError:
            return TableRow(n, m, False)
        verdict = GeometryClassifier.verdict(kind, n, m)
        model_dim = verdict.model.total_dim if verdict.model else None
        if kind is GroupKind.O:
            return TableRow(n, m, True, None, None, verdict.case.value, verdict.springer_count, model_dim)
        quotient = GeometryClassifier.symplectic_reduction(kind, n, m)
        return TableRow(n, m, True, GeometryClassifier.rank_bound(kind, n, m), quotient.dim,
                        verdict.case.value, verdict.springer_count, model_dim)

    def table(self, kind: GroupKind, n_values: Iterable[int], m_values: Iterable[int]) -> List[TableRow]:
        """One row per (n, m); rows with invalid parameters are marked invalid."""
        m_values = list(m_values)
        return [self.table_row(kind, n, m) for n in n_values for m in m_values]
