"""
Geometry Classifier Service
Describes symplectic reductions as nilpotent orbit closures, lists Springer
desingularizations, supplies the bundle models of the main component of the
invariant Hilbert scheme and decides which classification clause applies.
"""

import logging
from typing import Dict, List, Optional, Tuple

from sympy import Integer, Matrix, expand, linsolve, symbols

from ..exceptions import (
    ExcludedRegimeError,
    InvalidParameterError,
    QuotientNotModeledError,
    SymplecticReductionError,
    UnsupportedRegimeError,
)
from ..models.geometry import (
    BaseKind,
    BaseVariety,
    BundleModel,
    ConsistencyReport,
    FiberFunctor,
    HilbInventory,
    InventoryStatus,
    QuotientDescription,
    Stratum,
    Verdict,
    VerdictCase,
)
from ..models.partition import GroupKind, GroupType, OrbitLabel, OrbitTag, Partition
from .momentmap import MomentMapService
from .partitions import OrbitClassifier

logger = logging.getLogger(__name__)


class GeometryClassifier:
    """Service for the geometry of symplectic reductions and their desingularizations."""

    # Clause descriptions recorded in verdict citations
    UNIQUE_CLAUSES = {
        GroupKind.GL: "unique symplectic desingularization: GL(V), dim V >= m - 1, m even",
        GroupKind.O: "unique symplectic desingularization: O(V), dim V >= 2m - 1",
        GroupKind.SP: "unique symplectic desingularization: Sp(V), dim V and m even, dim V >= 2m - 2",
    }

    DOMINATION_CLAUSES = {
        GroupKind.GL: "desingularization strictly dominating the symplectic ones: GL(V), "
                      "dim V = 1 and m >= 3, or dim V = 2 and m >= 4",
        GroupKind.O: "desingularization strictly dominating the symplectic ones: O(V), "
                     "dim V = 1 < m, or dim V = 2 <= m",
        GroupKind.SP: "desingularization strictly dominating the symplectic ones: Sp(V), "
                      "dim V = 2 < m, or dim V = 4 <= m",
    }

    NOT_COVERED = "outside both classification clauses; no extrapolation"

    # Variables of the fitted base dimension polynomials
    K, M = symbols("k m")

    # Acting group of each base variety
    _AMBIENT = {
        BaseKind.GRASSMANNIAN: GroupKind.GL,
        BaseKind.TWO_STEP_FLAG: GroupKind.GL,
        BaseKind.ISOTROPIC_SP: GroupKind.SP,
        BaseKind.ISOTROPIC_SO: GroupKind.O,
    }

    # Regimes

    @classmethod
    def is_excluded(cls, kind: GroupKind, n: int, m: int) -> bool:
        """GL with m odd < 2n and Sp with m odd < n: h0 and the main component are not modeled."""
        if kind is GroupKind.GL:
            return m % 2 == 1 and m < 2 * n
        if kind is GroupKind.SP:
            return m % 2 == 1 and m < n
        return False

    @classmethod
    def rank_bound(cls, kind: GroupKind, n: int, m: int) -> int:
        """
        Number of parts equal to 2 in the top stratum of the quotient.

        Raises:
            QuotientNotModeledError: for O(V)
        """
        MomentMapService.validate_parameters(kind, n, m)
        if kind is GroupKind.GL:
            return min(m // 2, n)
        if kind is GroupKind.SP:
            if m > n:
                return n
            return m if m % 2 == 0 else m - 1
        raise QuotientNotModeledError("the quotient for O(V) is not modeled")

    # Quotient

    @classmethod
    def _stratum(cls, ambient: GroupType, twos: int, tag: Optional[OrbitTag] = None) -> Stratum:
        label = OrbitLabel(ambient, Partition.two_bounded(twos, ambient.dim - 2 * twos), tag)
        return Stratum(label, OrbitClassifier.closed_form_dim(label))

    @classmethod
    def symplectic_reduction(cls, kind: GroupKind, n: int, m: int) -> QuotientDescription:
        """
        Describe mu^-1(0)//G as a union of closures of 2-nilpotent orbits.

        GL: the closure of [2^N, 1^(m-2N)] in gl_m, N = min(m // 2, n), with
        strata U_0..U_N. Sp (inside so_2m): the closure of [2^n, 1^(2m-2n)] when
        m > n; the two closures of [2^m]^I and [2^m]^II when m <= n is even; the
        closure of [2^(m-1), 1^2] when m < n is odd. Sp strata run over even i.

        Args:
            kind: Acting group family
            n: dim V
            m: dim V' (GL) or half of dim E (Sp)

        Returns:
            QuotientDescription with strata, components and singular locus

        Raises:
            QuotientNotModeledError: for O(V)
        """
        N = cls.rank_bound(kind, n, m)

        if kind is GroupKind.GL:
            ambient = GroupType.general_linear(m)
            strata = [cls._stratum(ambient, i) for i in range(N + 1)]
            singular = strata[N - 1].label if N > 0 else None
            return QuotientDescription(GroupType(kind, n), m, (strata[-1].label,), tuple(strata), singular)

        ambient = GroupType.orthogonal(2 * m)
        if m <= n and m % 2 == 0:
            lower = [cls._stratum(ambient, i) for i in range(0, m - 1, 2)]
            tops = [cls._stratum(ambient, m, OrbitTag.I), cls._stratum(ambient, m, OrbitTag.II)]
            singular = lower[-1].label
            return QuotientDescription(GroupType(kind, n), m, tuple(t.label for t in tops),
                                       tuple(lower + tops), singular)

        strata = [cls._stratum(ambient, i) for i in range(0, N + 1, 2)]
        singular = strata[-2].label if len(strata) > 1 else None
        excluded = cls.is_excluded(kind, n, m)
        if excluded:
            logger.info("Sp with m=%d odd < n=%d: quotient described, h0 unavailable", m, n)
        return QuotientDescription(GroupType(kind, n), m, (strata[-1].label,), tuple(strata),
                                   singular, h0_available=not excluded)

    # Springer desingularizations

    @classmethod
    def springer_desings(cls, label: OrbitLabel) -> List[BundleModel]:
        """
        Springer desingularizations of an orbit closure, as cotangent bundle models.

        gl_m, [2^N, 1^(m-2N)]: T*Gr(N, m) and T*Gr(m-N, m), a single model when
        N = m/2. sp_2m: T*IG(m, 2m) exactly when N = m. so_2m: T*OG^I and
        T*OG^II of (m, 2m) when N = m - 1, the one matching the tag when N = m,
        none otherwise.

        Raises:
            UnsupportedRegimeError: a part larger than 2, or so of odd size
        """
        partition = label.partition
        if not partition.is_two_bounded:
            raise UnsupportedRegimeError(f"Springer models are implemented for parts <= 2, got {partition}")
        kind, m, N = label.ambient.kind, label.m, partition.twos

        if kind is GroupKind.GL:
            ranks = [N] if 2 * N == m else [N, m - N]
            return [BundleModel(BaseVariety(BaseKind.GRASSMANNIAN, m, k), FiberFunctor.HOM_QUOTIENT_TAUT)
                    for k in ranks]

        if kind is GroupKind.SP:
            if N != m:
                return []
            return [BundleModel(BaseVariety(BaseKind.ISOTROPIC_SP, m, m), FiberFunctor.SYM2_TAUT)]

        if label.ambient.dim % 2:
            raise UnsupportedRegimeError(f"Springer models for {label.ambient} (odd size) are not implemented")
        if N == m - 1:
            tags = [OrbitTag.I, OrbitTag.II]
        elif N == m:
            tags = [label.tag]
        else:
            return []
        return [BundleModel(BaseVariety(BaseKind.ISOTROPIC_SO, m, m, tag=tag), FiberFunctor.LAMBDA2_TAUT)
                for tag in tags]

    # Main component of the invariant Hilbert scheme

    @classmethod
    def hilbert_chow_model(cls, kind: GroupKind, n: int, m: int) -> Optional[BundleModel]:
        """
        Bundle model of the main component, or None when no model is known.

        GL: Hom(V/T, T) over Gr(m/2, m) if n >= m - 1 and m even; Hom(V/T2, T1)
        over F_{1,m-1} if n = 1, m >= 3; its blow-up along the zero section over
        F_{2,m-2} if n = 2, m >= 4. Sp: Lambda2(T) over OG(2, 2m) if m > n = 2;
        blown up over OG(4, 2m) if m > n = 4; Lambda2(T) over OG^I(m, 2m) if
        n >= 2m - 2 with m even; blown up over OG^I(4, 8) if m = n = 4.
        """
        MomentMapService.validate_parameters(kind, n, m)
        if kind is GroupKind.GL:
            if n >= m - 1 and m % 2 == 0:
                return BundleModel(BaseVariety(BaseKind.GRASSMANNIAN, m, m // 2), FiberFunctor.HOM_QUOTIENT_TAUT)
            if n == 1 and m >= 3:
                return BundleModel(BaseVariety(BaseKind.TWO_STEP_FLAG, m, 1, b=m - 1),
                                   FiberFunctor.HOM_QUOTIENT2_TAUT1)
            if n == 2 and m >= 4:
                return BundleModel(BaseVariety(BaseKind.TWO_STEP_FLAG, m, 2, b=m - 2),
                                   FiberFunctor.HOM_QUOTIENT2_TAUT1, blow_up=True)
            return None

        if kind is GroupKind.SP:
            if m > n == 2:
                return BundleModel(BaseVariety(BaseKind.ISOTROPIC_SO, m, 2), FiberFunctor.LAMBDA2_TAUT)
            if m > n == 4:
                return BundleModel(BaseVariety(BaseKind.ISOTROPIC_SO, m, 4), FiberFunctor.LAMBDA2_TAUT,
                                   blow_up=True)
            if n >= 2 * m - 2 and m % 2 == 0:
                return BundleModel(BaseVariety(BaseKind.ISOTROPIC_SO, m, m, tag=OrbitTag.I),
                                   FiberFunctor.LAMBDA2_TAUT)
            if m == n == 4:
                return BundleModel(BaseVariety(BaseKind.ISOTROPIC_SO, 4, 4, tag=OrbitTag.I),
                                   FiberFunctor.LAMBDA2_TAUT, blow_up=True)
            return None

        logger.debug("No main-component model for O(V)")
        return None

    # Classification

    @classmethod
    def unique_clause_holds(cls, kind: GroupKind, n: int, m: int) -> bool:
        if kind is GroupKind.GL:
            return n >= m - 1 and m % 2 == 0
        if kind is GroupKind.O:
            return n >= 2 * m - 1
        return n % 2 == 0 and m % 2 == 0 and n >= 2 * m - 2

    @classmethod
    def domination_clause_holds(cls, kind: GroupKind, n: int, m: int) -> bool:
        if kind is GroupKind.GL:
            return (n == 1 and m >= 3) or (n == 2 and m >= 4)
        if kind is GroupKind.O:
            return (n == 1 < m) or (n == 2 <= m)
        return (n == 2 < m) or (n == 4 <= m)

    @classmethod
    def _unverified_notes(cls, kind: GroupKind, n: int, m: int) -> Tuple[str, ...]:
        notes = []
        if kind is GroupKind.GL and n in (1, 2) and m >= 2 * n + 1:
            notes.append("unverified: domination of both Springer desingularizations is asserted, "
                         "not checked symbolically")
        if kind is GroupKind.SP and n in (2, 4) and m == n + 1:
            notes.append("unverified: domination of both Springer desingularizations is asserted, "
                         "not checked symbolically")
        if kind is GroupKind.SP and n == 4:
            notes.append("unverified: the dim V = 4 case is stated as analogous to dim V = 2")
        return tuple(notes)

    @classmethod
    def springer_count(cls, kind: GroupKind, n: int, m: int) -> Optional[int]:
        """Springer desingularizations of one quotient component; None when the quotient is not modeled."""
        if kind is GroupKind.O:
            return 1 if cls.unique_clause_holds(kind, n, m) else None
        quotient = cls.symplectic_reduction(kind, n, m)
        return len(cls.springer_desings(quotient.components[0]))

    @classmethod
    def verdict(cls, kind: GroupKind, n: int, m: int) -> Verdict:
        """
        Decide which classification clause applies to (G, n, m).

        Raises:
            InvalidParameterError: n or m below 1, or Sp with n odd
            SymplecticReductionError: both clauses hold (never expected)
        """
        MomentMapService.validate_parameters(kind, n, m)
        unique = cls.unique_clause_holds(kind, n, m)
        dominates = cls.domination_clause_holds(kind, n, m)
        if unique and dominates:
            raise SymplecticReductionError(f"classification clauses overlap at ({kind.value}, {n}, {m})")

        count = cls.springer_count(kind, n, m)
        model = cls.hilbert_chow_model(kind, n, m)
        if unique:
            return Verdict(VerdictCase.SYMPLECTIC_UNIQUE_DESING, count, model, (cls.UNIQUE_CLAUSES[kind],))
        if dominates:
            citations = (cls.DOMINATION_CLAUSES[kind],) + cls._unverified_notes(kind, n, m)
            return Verdict(VerdictCase.DESING_STRICTLY_DOMINATES, count, model, citations)
        return Verdict(VerdictCase.NOT_COVERED, count, model, (cls.NOT_COVERED,))

    # Dimension bookkeeping

    @classmethod
    def general_fiber_dim(cls, kind: GroupKind, n: int, m: int) -> int:
        """
        Dimension of the general fibre of the quotient morphism.

        GL: n^2 (m >= 2n) or N(2n - N) with N = m/2. Sp: n(n+1)/2 (m >= n) or
        nm - m(m-1)/2.

        Raises:
            ExcludedRegimeError: m odd below 2n (GL) or n (Sp)
            QuotientNotModeledError: for O(V)
        """
        MomentMapService.validate_parameters(kind, n, m)
        if kind is GroupKind.O:
            raise QuotientNotModeledError("the general fibre for O(V) is not modeled")
        if cls.is_excluded(kind, n, m):
            raise ExcludedRegimeError(f"({kind.value}, n={n}, m={m}) lies in the excluded odd regime")
        if kind is GroupKind.GL:
            if m >= 2 * n:
                return n * n
            half = m // 2
            return half * (2 * n - half)
        if m >= n:
            return n * (n + 1) // 2
        return n * m - m * (m - 1) // 2

    @classmethod
    def reduction_consistency(cls, kind: GroupKind, n: int, m: int) -> ConsistencyReport:
        """
        Dimension arithmetic of the reduction to the smaller module.

        The main component fibres over A0 (F_{N,m-N} for GL, OG(N, 2m) with
        N = min(m, n) for Sp) with fibre the main component for the smaller
        module, of dimension N^2 (GL) or N(N-1)/2 (Sp).

        Raises:
            ExcludedRegimeError: m odd below 2n (GL) or n (Sp)
            QuotientNotModeledError: for O(V)
        """
        general = cls.general_fiber_dim(kind, n, m)
        quotient = cls.symplectic_reduction(kind, n, m)
        zero_fiber_dim = max(c.dim for c in MomentMapService.zero_fiber_components(kind, n, m))

        if kind is GroupKind.GL:
            N = min(m // 2, n)
            base = BaseVariety(BaseKind.TWO_STEP_FLAG, m, N, b=m - N)
            fiber_dim = N * N
        else:
            N = min(m, n)
            base = BaseVariety(BaseKind.ISOTROPIC_SO, m, N, tag=OrbitTag.I if N == m else None)
            fiber_dim = N * (N - 1) // 2

        report = ConsistencyReport(base, base.dim, fiber_dim, quotient.dim, zero_fiber_dim, general)
        if not report.passed:
            logger.warning("Dimension bookkeeping fails for (%s, %d, %d): %s", kind.value, n, m, report.to_dict())
        return report

    @classmethod
    def homogeneous_dim(cls, base: BaseVariety) -> int:
        """
        dim H - dim P from the stabilizer of the standard (isotropic) flag.

        The rank of Y -> (entries of Y below the flag blocks) over a basis of
        the Lie algebra of H = GL_m, Sp_2m or SO_2m equals the codimension of
        the parabolic subalgebra.
        """
        kind = cls._AMBIENT[base.kind]
        size = base.m if kind is GroupKind.GL else 2 * base.m
        basis = OrbitClassifier.algebra_basis(GroupType(kind, size))
        steps = [base.k] if base.b is None else [base.k, base.b]
        positions = sorted({(i, j) for step in steps for i in range(step, size) for j in range(step)})
        if not positions:
            return 0
        columns = [[element[i, j] for i, j in positions] for element in basis]
        return Matrix(columns).rank()

    @classmethod
    def fit_base_dim(cls, kind: BaseKind, max_m: int = 3):
        """
        Quadratic polynomial in (k, m) through the oracle dimensions of every
        base variety of ``kind`` with m <= max_m.

        Raises:
            InvalidParameterError: two-step flags, or too few data points to fix the fit
            SymplecticReductionError: no quadratic polynomial fits the oracle values
        """
        if kind is BaseKind.TWO_STEP_FLAG:
            raise InvalidParameterError("two-step flags depend on three parameters")
        k, m = cls.K, cls.M
        monomials = [k * m, k ** 2, m ** 2, k, m, Integer(1)]
        coefficients = symbols(f"c0:{len(monomials)}")
        ansatz = sum(c * t for c, t in zip(coefficients, monomials))
        equations = [ansatz.subs({k: kk, m: mm}) - cls.homogeneous_dim(BaseVariety(kind, mm, kk))
                     for mm in range(1, max_m + 1) for kk in range(mm + 1)]
        solutions = linsolve(equations, coefficients)
        if not solutions:
            raise SymplecticReductionError(f"no quadratic dimension formula fits {kind.value}")
        values = next(iter(solutions))
        if any(value.free_symbols for value in values):
            raise InvalidParameterError(f"max_m = {max_m} leaves the {kind.value} fit underdetermined")
        return expand(ansatz.subs(dict(zip(coefficients, values))))

    # Invariant Hilbert scheme

    @classmethod
    def hilb_components(cls, kind: GroupKind, n: int, m: int) -> HilbInventory:
        """Known irreducible components of the invariant Hilbert scheme."""
        MomentMapService.validate_parameters(kind, n, m)
        if kind is GroupKind.GL:
            if n == 1 and m >= 2:
                return HilbInventory(
                    InventoryStatus.EXACT, 2, (2 * m - 2, 2 * m - 2), 2 * m - 2,
                    ("second component: homogeneous ideals, isomorphic to P(h<=1)",),
                )
            if n >= 2 and m >= 2 * n:
                main = 2 * n * (m - n)
                if n == 2:
                    return HilbInventory(
                        InventoryStatus.AT_LEAST, 2, (main, 4 * m - 5), main,
                        ("homogeneous-ideal component of dimension 4m - 5 exceeds the main component",),
                    )
                return HilbInventory(InventoryStatus.AT_LEAST, 2, (), main)
        elif kind is GroupKind.SP and n == 2:
            if m >= 3:
                return HilbInventory(InventoryStatus.IRREDUCIBLE, 1, (4 * m - 6,), 4 * m - 6,
                                     ("the Hilbert scheme is the main component",))
            if m == 2:
                return HilbInventory(
                    InventoryStatus.EXACT, 2, (2, 2), 2,
                    ("two smooth components H_I and H_II meeting along the homogeneous ideals",),
                )
        elif kind is GroupKind.O and m >= n == 2:
            return HilbInventory(InventoryStatus.IRREDUCIBLE, 1, (), None, ("dimension not modeled",))
        return HilbInventory(InventoryStatus.UNKNOWN)

    # Tables

    @classmethod
    def base_dims(cls, max_m: int) -> Dict[str, Tuple[int, int]]:
        """Closed-form and oracle dimensions of every base variety with m <= max_m, keyed by name."""
        result: Dict[str, Tuple[int, int]] = {}
        for m in range(1, max_m + 1):
            for k in range(m + 1):
                bases = [BaseVariety(BaseKind.GRASSMANNIAN, m, k),
                         BaseVariety(BaseKind.ISOTROPIC_SP, m, k),
                         BaseVariety(BaseKind.ISOTROPIC_SO, m, k)]
                bases.extend(BaseVariety(BaseKind.TWO_STEP_FLAG, m, k, b=b) for b in range(k, m + 1))
                for base in bases:
                    result[base.name] = (base.dim, cls.homogeneous_dim(base))
        if not result:
            raise InvalidParameterError("max_m must be positive")
        return result
