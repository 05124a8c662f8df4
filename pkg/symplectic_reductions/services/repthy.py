"""
Representation Calculator Service
Dimensions and characters of irreducible GL_n and Sp_n representations,
invariant dimensions under block subgroups (the Hilbert function h0 of the
general quotient fibre), the Cauchy decomposition of a matrix space and the
monomial presentation of the U x U'-invariants.
"""

import itertools
import logging
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from sympy import Poly, symbols

from ..exceptions import (
    ExcludedRegimeError,
    InvalidParameterError,
    QuotientNotModeledError,
    ResourceBoundError,
    SymplecticReductionError,
)
from ..models.partition import GroupKind, GroupType
from ..models.report import CauchyReport, DegreeCount, PresentationReport
from ..models.weights import BlockPosition, DominantWeight, LaurentPolynomial, MonomialXY
from ..utils.cache import ResultCache
from ..utils.config_manager import Config
from .partitions import OrbitClassifier

logger = logging.getLogger(__name__)

Terms = Tuple[Tuple[Tuple[int, ...], int], ...]


def _interlacing(row: Tuple[int, ...]) -> List[Tuple[int, ...]]:
    """Rows nu of length len(row) - 1 with row[i] >= nu[i] >= row[i + 1]."""
    ranges = [range(row[i + 1], row[i] + 1) for i in range(len(row) - 1)]
    return [tuple(nu) for nu in itertools.product(*ranges)]


@lru_cache(maxsize=None)
def _gl_character_terms(row: Tuple[int, ...]) -> Terms:
    # Sum over Gelfand-Tsetlin patterns; coordinate k gets |row_k| - |row_(k-1)|
    if not row:
        return (((), 1),)
    terms: Dict[Tuple[int, ...], int] = {}
    for nu in _interlacing(row):
        step = sum(row) - sum(nu)
        for exponent, coefficient in _gl_character_terms(nu):
            key = exponent + (step,)
            terms[key] = terms.get(key, 0) + coefficient
    return tuple(sorted(terms.items()))


@lru_cache(maxsize=None)
def _gt_chain_count(row: Tuple[int, ...], level: int) -> int:
    if len(row) == level:
        return int(all(e == 0 for e in row))
    return sum(_gt_chain_count(nu, level) for nu in _interlacing(row))


def _sp_positive_roots(rank: int) -> List[Tuple[int, ...]]:
    roots = []
    for i in range(rank):
        for j in range(i + 1, rank):
            for sign in (-1, 1):
                root = [0] * rank
                root[i], root[j] = 1, sign
                roots.append(tuple(root))
        root = [0] * rank
        root[i] = 2
        roots.append(tuple(root))
    return roots


def _sp_dominant(weight: Sequence[int]) -> Tuple[int, ...]:
    return tuple(sorted((abs(w) for w in weight), reverse=True))


def _sp_depth(top: Tuple[int, ...], weight: Tuple[int, ...]) -> Optional[int]:
    """Sum of simple-root coefficients of top - weight, None unless it lies in the positive root cone."""
    diff = [a - b for a, b in zip(top, weight)]
    partial, depth = 0, 0
    for value in diff[:-1]:
        partial += value
        if partial < 0:
            return None
        depth += partial
    total = sum(diff)
    if total < 0 or total % 2:
        return None
    return depth + total // 2


@lru_cache(maxsize=None)
def _sp_dominant_multiplicities(top: Tuple[int, ...]) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    # Freudenthal's recursion over dominant weights below the highest weight
    rank = len(top)
    rho = tuple(range(rank, 0, -1))
    candidates = []
    for nu in itertools.combinations_with_replacement(range(top[0] if top else 0, -1, -1), rank):
        depth = _sp_depth(top, nu)
        if depth is not None:
            candidates.append((depth, nu))
    candidates.sort()

    def norm(v: Sequence[int]) -> int:
        return sum(x * x for x in v)

    top_norm = norm([a + b for a, b in zip(top, rho)])
    positive_roots = _sp_positive_roots(rank)
    multiplicities: Dict[Tuple[int, ...], int] = {}
    for depth, mu in candidates:
        if depth == 0:
            multiplicities[mu] = 1
            continue
        numerator = 0
        for alpha in positive_roots:
            k = 1
            while True:
                shifted = tuple(a + k * b for a, b in zip(mu, alpha))
                found = multiplicities.get(_sp_dominant(shifted))
                if found is None:
                    break
                numerator += found * sum(a * b for a, b in zip(shifted, alpha))
                k += 1
        denominator = top_norm - norm([a + b for a, b in zip(mu, rho)])
        value = Fraction(2 * numerator, denominator)
        if value.denominator != 1:
            raise SymplecticReductionError(f"non-integral multiplicity {value} at {mu} in Sp weight {top}")
        if value:
            multiplicities[mu] = int(value)
    return tuple(sorted(multiplicities.items()))


def _signed_orbit(weight: Tuple[int, ...]) -> List[Tuple[int, ...]]:
    orbit = set()
    for signs in itertools.product((1, -1), repeat=len(weight)):
        signed = tuple(s * w for s, w in zip(signs, weight))
        orbit.update(itertools.permutations(signed))
    return sorted(orbit)


@lru_cache(maxsize=None)
def _weyl_denominator(kind: GroupKind, rank: int) -> LaurentPolynomial:
    """Product of (1 - t^alpha) over all roots alpha of GL_rank or Sp_2rank."""
    variables = [f"t{i + 1}" for i in range(rank)]
    product = LaurentPolynomial.one(variables)
    roots = []
    if kind is GroupKind.GL:
        for i in range(rank):
            for j in range(rank):
                if i != j:
                    root = [0] * rank
                    root[i], root[j] = 1, -1
                    roots.append(root)
    else:
        for root in _sp_positive_roots(rank):
            roots.append(list(root))
            roots.append([-r for r in root])
    for root in roots:
        product = product * (LaurentPolynomial.one(variables) - LaurentPolynomial.monomial(variables, tuple(root)))
    return product


class RepresentationCalculator:
    """
    Service for representation-theoretic computations.

    Holds the resource bounds of the current configuration and an optional
    result cache shared by invariant-dimension queries.
    """

    def __init__(self, config: Optional[Config] = None, cache: Optional[ResultCache] = None):
        """
        Initialize the calculator.

        Args:
            config (Config, optional): Resource bounds; defaults when omitted
            cache (ResultCache, optional): Result cache
        """
        self.config = config or Config()
        self.cache = cache

    def _cached(self, operation: str, arguments: Sequence, compute: Callable[[], int]) -> int:
        if self.cache is None:
            return int(compute())
        return self.cache.get_or_compute(operation, arguments, compute)

    @staticmethod
    def _variables(weight: DominantWeight) -> List[str]:
        return [f"t{i + 1}" for i in range(weight.rank)]

    def _check_weight_bounds(self, weight: DominantWeight):
        if weight.rank > self.config.max_rank or weight.weight_size > self.config.max_weight:
            raise ResourceBoundError(
                f"{weight} exceeds the bounds rank <= {self.config.max_rank}, "
                f"sum |lambda_i| <= {self.config.max_weight}"
            )

    # Dimensions and characters

    def weyl_dim(self, weight: DominantWeight) -> int:
        """Dimension of the irreducible representation with highest weight lambda (Weyl's formula)."""
        entries = weight.entries
        value = Fraction(1)
        if weight.group.kind is GroupKind.GL:
            for i in range(len(entries)):
                for j in range(i + 1, len(entries)):
                    value *= Fraction(entries[i] - entries[j] + j - i, j - i)
            return int(value)

        rank = len(entries)
        rho = [rank - i for i in range(rank)]
        shifted = [e + r for e, r in zip(entries, rho)]
        for i in range(rank):
            value *= Fraction(shifted[i], rho[i])
            for j in range(i + 1, rank):
                value *= Fraction((shifted[i] - shifted[j]) * (shifted[i] + shifted[j]),
                                  (rho[i] - rho[j]) * (rho[i] + rho[j]))
        return int(value)

    def character(self, weight: DominantWeight) -> LaurentPolynomial:
        """
        Formal character in the torus variables t1..tr.

        GL_n through Gelfand-Tsetlin patterns; Sp_n through Freudenthal
        multiplicities of dominant weights extended over signed permutations.
        """
        variables = self._variables(weight)
        if weight.group.kind is GroupKind.GL:
            return LaurentPolynomial(variables, dict(_gl_character_terms(weight.entries)))
        terms: Dict[Tuple[int, ...], int] = {}
        for dominant, multiplicity in _sp_dominant_multiplicities(weight.entries):
            for exponent in _signed_orbit(dominant):
                terms[exponent] = multiplicity
        return LaurentPolynomial(variables, terms)

    def dominant_weights(self, group: GroupType, max_entry: int,
                         max_size: Optional[int] = None) -> List[DominantWeight]:
        """
        Dominant weights of GL_n (entries in [-max_entry, max_entry]) or Sp_n
        (entries in [0, max_entry]), optionally with sum |lambda_i| <= max_size.
        """
        if group.kind is GroupKind.GL:
            values, length = range(max_entry, -max_entry - 1, -1), group.dim
        elif group.kind is GroupKind.SP:
            values, length = range(max_entry, -1, -1), group.half
        else:
            raise InvalidParameterError("weights are modeled for GL_n and Sp_n only")
        weights = []
        for entries in itertools.combinations_with_replacement(values, length):
            if max_size is None or sum(abs(e) for e in entries) <= max_size:
                weights.append(DominantWeight(group, entries))
        return weights

    # Invariants under block subgroups

    def gt_invariant_dim(self, weight: DominantWeight, k: int) -> int:
        """
        Dimension of the GL_k-invariants of the GL_n-irreducible lambda.

        GL_k acts on the first k coordinates. Counts interlacing chains from
        lambda at level n down to the zero weight at level k.

        Raises:
            InvalidParameterError: not a GL weight, or k outside [0, n]
        """
        if weight.group.kind is not GroupKind.GL:
            raise InvalidParameterError("Gelfand-Tsetlin branching applies to GL_n weights")
        if not 0 <= k <= weight.rank:
            raise InvalidParameterError(f"k must lie in [0, {weight.rank}], got {k}")
        return self._cached("gt_invariant_dim", [list(weight.entries), k],
                            lambda: _gt_chain_count(weight.entries, k))

    def ct_invariant_dim(self, weight: DominantWeight, subgroup: GroupType,
                         block: BlockPosition = BlockPosition.FIRST) -> int:
        """
        Dimension of the invariants of a block subgroup, by Weyl integration.

        (1/|W'|) times the constant term of chi restricted to the subgroup torus
        times the product of (1 - t^alpha) over the subgroup roots; the other
        torus coordinates are set to 1.

        Args:
            weight: Highest weight of the GL_n or Sp_n representation
            subgroup: GL_k or Sp_2k of the same family
            block: Coordinates occupied by the subgroup

        Raises:
            ResourceBoundError: rank or weight beyond the configured bounds
        """
        group = weight.group
        if subgroup.kind is not group.kind or subgroup.dim > group.dim:
            raise InvalidParameterError(f"{subgroup.group_name} is not a block subgroup of {group.group_name}")
        self._check_weight_bounds(weight)

        def compute() -> int:
            rank = weight.rank
            k = subgroup.dim if group.kind is GroupKind.GL else subgroup.half
            keep = range(k) if block is BlockPosition.FIRST else range(rank - k, rank)
            denominator = _weyl_denominator(group.kind, k)
            # subgroup torus coordinates renamed t1..tk to match the denominator
            restricted = LaurentPolynomial(denominator.variables,
                                           self.character(weight).restrict(list(keep)).terms)
            total = restricted.pairing_constant_term(denominator)
            order = factorial(k) * (2 ** k if group.kind is GroupKind.SP else 1)
            quotient, remainder = divmod(total, order)
            if remainder:
                raise SymplecticReductionError(f"constant term {total} not divisible by |W'| = {order}")
            return quotient

        return self._cached("ct_invariant_dim",
                            [group.kind.value, list(weight.entries), subgroup.dim, block.value], compute)

    def h0(self, kind: GroupKind, n: int, m: int, weight: DominantWeight) -> int:
        """
        Hilbert function of the general fibre of the quotient morphism.

        dim M when m >= 2n (GL) or m >= n (Sp); otherwise dim M^G' with
        G' = GL_{n - m/2} or Sp_{n - m}.

        Raises:
            ExcludedRegimeError: GL with m odd < 2n, or Sp with m odd < n
            QuotientNotModeledError: for O(V)
        """
        if kind is GroupKind.O:
            raise QuotientNotModeledError("h0 is not modeled for O(V)")
        if weight.group != GroupType(kind, n):
            raise InvalidParameterError(f"{weight} is not a weight of {GroupType(kind, n).group_name}")
        if kind is GroupKind.GL:
            if m >= 2 * n:
                return self.weyl_dim(weight)
            if m % 2 == 0:
                return self.gt_invariant_dim(weight, n - m // 2)
            raise ExcludedRegimeError(f"GL with m={m} odd and m < 2n={2 * n}: the general fibre is not modeled")
        if m >= n:
            return self.weyl_dim(weight)
        if m % 2 == 0:
            return self.ct_invariant_dim(weight, GroupType.symplectic(n - m))
        raise ExcludedRegimeError(f"Sp with m={m} odd and m < n={n}: the general fibre is not modeled")

    # Cauchy decomposition

    def _check_cauchy_bounds(self, n: int, m: int, degree_bound: int):
        if min(n, m) < 1 or degree_bound < 0:
            raise InvalidParameterError("matrix sizes must be positive and the degree non-negative")
        if max(n, m) > self.config.max_rank or degree_bound > self.config.max_weight:
            raise ResourceBoundError(
                f"Cauchy check limited to sizes <= {self.config.max_rank} and degree <= {self.config.max_weight}"
            )

    def cauchy_check(self, n: int, m: int, degree_bound: int) -> CauchyReport:
        """
        Compare the bigraded character of C[Mat(n x m)] with sum_lambda s_lambda(x) s_lambda(y).

        The left side is prod 1/(1 - x_i y_j) truncated at degree_bound; the right
        side runs over partitions with at most min(n, m) parts.

        Returns:
            CauchyReport with the per-degree dimensions of both sides
        """
        self._check_cauchy_bounds(n, m, degree_bound)
        x = symbols(f"x1:{n + 1}")
        y = symbols(f"y1:{m + 1}")
        gens = x + y
        variables = [str(symbol) for symbol in gens]
        x_positions = list(range(n))

        def truncate(poly: Poly) -> Poly:
            kept = {e: c for e, c in poly.as_dict().items() if sum(e[:n]) <= degree_bound}
            return Poly.from_dict(kept, *gens, domain="ZZ")

        product = Poly(1, *gens, domain="ZZ")
        for xi in x:
            for yj in y:
                series = Poly(sum((xi * yj) ** a for a in range(degree_bound + 1)), *gens, domain="ZZ")
                product = truncate(product * series)
        lhs = LaurentPolynomial.from_poly(variables, product)

        rhs = LaurentPolynomial(variables, {})
        for degree in range(degree_bound + 1):
            for shape in OrbitClassifier.partitions_of(degree, min(n, m)):
                s_x = _gl_character_terms(tuple(shape.parts) + (0,) * (n - shape.length))
                s_y = _gl_character_terms(tuple(shape.parts) + (0,) * (m - shape.length))
                rhs = rhs + (LaurentPolynomial(variables, {ex + (0,) * m: c for ex, c in s_x})
                             * LaurentPolynomial(variables, {(0,) * n + ey: c for ey, c in s_y}))

        degrees = []
        for degree in range(degree_bound + 1):
            left = lhs.graded_piece(degree, x_positions)
            right = rhs.graded_piece(degree, x_positions)
            degrees.append(DegreeCount(degree, left.evaluate_at_one(), right.evaluate_at_one(), left == right))
        report = CauchyReport(n, m, degree_bound, tuple(degrees))
        if not report.passed:
            logger.warning("Cauchy decomposition mismatch for n=%d, m=%d", n, m)
        return report

    # Monomial presentation of the U x U'-invariants

    def lambda_monomial(self, weight: DominantWeight) -> MonomialXY:
        """
        The monomial of GL(V)-weight lambda.

        With t the number of non-negative entries: y_i gets lambda_i - lambda_(i+1)
        for i < t and y_t gets lambda_t; x_(n-t) gets -lambda_(t+1) and
        x_(n-t-j) gets lambda_(t+j) - lambda_(t+j+1) for j >= 1.
        """
        if weight.group.kind is not GroupKind.GL:
            raise InvalidParameterError("the monomial presentation is for GL_n weights")
        lam, n = weight.entries, weight.rank
        t = sum(1 for e in lam if e >= 0)
        x, y = [0] * n, [0] * n
        for i in range(1, t + 1):
            y[i - 1] = lam[i - 1] - lam[i] if i < t else lam[t - 1]
        if t < n:
            x[n - t - 1] = -lam[t]
            for j in range(1, n - t):
                x[n - t - j - 1] = lam[t + j - 1] - lam[t + j]
        return MonomialXY(tuple(x), tuple(y))

    @staticmethod
    def monomial_weight(monomial: MonomialXY) -> Tuple[int, ...]:
        """T-weight: y_j has eps_1 + .. + eps_j, x_i has -(eps_(n-i+1) + .. + eps_n)."""
        n = monomial.n
        weight = [0] * n
        for j, b in enumerate(monomial.y, start=1):
            for coordinate in range(j):
                weight[coordinate] += b
        for i, a in enumerate(monomial.x, start=1):
            for coordinate in range(n - i, n):
                weight[coordinate] -= a
        return tuple(weight)

    @staticmethod
    def monomial_dual_weight(monomial: MonomialXY) -> Tuple[int, ...]:
        """T'-weight: x_i has eps'_1 + .. + eps'_i, y_j has -(eps'_(n-j+1) + .. + eps'_n)."""
        n = monomial.n
        weight = [0] * n
        for i, a in enumerate(monomial.x, start=1):
            for coordinate in range(i):
                weight[coordinate] += a
        for j, b in enumerate(monomial.y, start=1):
            for coordinate in range(n - j, n):
                weight[coordinate] -= b
        return tuple(weight)

    def ks_presentation_check(self, n: int, weight_bound: int) -> PresentationReport:
        """
        Verify the monomial-weight bijection for the U x U'-invariants.

        Enumerates admissible monomials of degree <= weight_bound and checks that
        their GL(V)-weights are dominant and pairwise distinct, that the T'-weight
        is lambda*, that lambda_monomial inverts the map, that every dominant
        weight whose monomial is in range is reached, and that
        weyl_dim(lambda) = weyl_dim(lambda*).

        Raises:
            ResourceBoundError: n or weight_bound beyond the configured bounds
        """
        if n < 1 or weight_bound < 0:
            raise InvalidParameterError("n must be positive and the weight bound non-negative")
        if n > self.config.max_rank or weight_bound > self.config.max_weight:
            raise ResourceBoundError(
                f"presentation check limited to n <= {self.config.max_rank}, bound <= {self.config.max_weight}"
            )
        group = GroupType.general_linear(n)
        failures: List[str] = []
        seen: Dict[Tuple[int, ...], MonomialXY] = {}
        monomial_count = 0

        for exponents in itertools.product(range(weight_bound + 1), repeat=2 * n):
            if sum(exponents) > weight_bound:
                continue
            monomial = MonomialXY(exponents[:n], exponents[n:])
            if not monomial.is_admissible:
                continue
            monomial_count += 1
            weight = self.monomial_weight(monomial)
            if any(weight[i] < weight[i + 1] for i in range(n - 1)):
                failures.append(f"{monomial} has non-dominant weight {weight}")
                continue
            if weight in seen:
                failures.append(f"{monomial} and {seen[weight]} share weight {weight}")
                continue
            seen[weight] = monomial
            lam = DominantWeight(group, weight)
            if self.monomial_dual_weight(monomial) != lam.dual().entries:
                failures.append(f"T'-weight of {monomial} is {self.monomial_dual_weight(monomial)}, "
                                f"expected {lam.dual().entries} (convention mismatch)")
            if self.lambda_monomial(lam) != monomial:
                failures.append(f"lambda_monomial{weight} = {self.lambda_monomial(lam)}, expected {monomial}")
            if self.weyl_dim(lam) != self.weyl_dim(lam.dual()):
                failures.append(f"dim M != dim M* for {lam}")

        for lam in self.dominant_weights(group, weight_bound):
            monomial = self.lambda_monomial(lam)
            if not monomial.is_admissible:
                failures.append(f"lambda_monomial{lam.entries} = {monomial} is not admissible")
            elif monomial.degree <= weight_bound and lam.entries not in seen:
                failures.append(f"{lam} is not the weight of any admissible monomial")

        report = PresentationReport(n, weight_bound, monomial_count, len(seen), tuple(failures))
        if failures:
            logger.warning("Monomial presentation check failed for n=%d: %s", n, failures[0])
        return report
