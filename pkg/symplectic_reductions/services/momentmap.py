"""
Moment Map Service
Exact models of the moment maps for GL(V) and Sp(V) acting on W, their zero
fibres and components, point sampling, tangent-space certificates, the
factorization of 2-nilpotents through V and the Sp component classifier.
"""

import logging
from typing import Callable, Dict, List, Union

from sympy import ImmutableMatrix, Matrix, eye, zeros

from ..exceptions import (
    InvalidParameterError,
    NonGenericPointError,
    NotInZeroFiberError,
    NotTwoNilpotentError,
    QuotientNotModeledError,
    RankBoundError,
    ShapeMismatchError,
)
from ..models.matrices import (
    ComponentDescriptor,
    MatrixPair,
    SpPoint,
    split_quadratic_gram,
    symplectic_gram,
)
from ..models.partition import GroupKind, GroupType, OrbitTag
from ..utils.rng import SeededRng
from .partitions import hyperbolic_swap

logger = logging.getLogger(__name__)

Point = Union[MatrixPair, SpPoint]

# Attempts at drawing a point where the tangent dimension is the component dimension
MAX_SAMPLE_ATTEMPTS = 10


def _stack_rank(columns: List[List]) -> int:
    if not columns or not columns[0]:
        return 0
    return Matrix(columns).rank()


class MomentMapService:
    """Service for moment maps, zero fibres and their components."""

    @classmethod
    def validate_parameters(cls, kind: GroupKind, n: int, m: int):
        """
        Check (G, n, m).

        Raises:
            InvalidParameterError: n or m below 1, or Sp with n odd
        """
        if not isinstance(n, int) or not isinstance(m, int) or n < 1 or m < 1:
            raise InvalidParameterError(f"n and m must be positive integers, got n={n!r}, m={m!r}")
        if kind is GroupKind.SP and n % 2:
            raise InvalidParameterError(f"Sp(V) needs dim V = n even, got n={n}")

    # GL(V)

    @classmethod
    def moment_gl(cls, pair: MatrixPair) -> ImmutableMatrix:
        """mu(u1, u2) = u1 u2 in gl(V); the pair lies in the zero fibre iff it vanishes."""
        return ImmutableMatrix(pair.u1 * pair.u2)

    @classmethod
    def quotient_gl(cls, pair: MatrixPair) -> ImmutableMatrix:
        """The quotient morphism (u1, u2) -> u2 u1 in gl(V') = gl_m."""
        return ImmutableMatrix(pair.u2 * pair.u1)

    @classmethod
    def act_gl(cls, pair: MatrixPair, g: ImmutableMatrix, h: ImmutableMatrix) -> MatrixPair:
        """Action of (g, h) in GL(V) x GL(V'): (u1, u2) -> (g u1 h^-1, h u2 g^-1)."""
        return MatrixPair(pair.n, pair.m, g * pair.u1 * h.inv(), h * pair.u2 * g.inv())

    # Sp(V)

    @classmethod
    def sp_transpose(cls, point: SpPoint) -> ImmutableMatrix:
        """
        The transpose tw: V -> E of w: E -> V.

        Characterized by q(tw(v), e) = omega(v, w(e)) with q(e, e') = e^T Q e' and
        omega(v, v') = v^T Omega v'; concretely tw = Q^-1 w^T Omega^T.
        """
        q = split_quadratic_gram(point.m)
        omega = symplectic_gram(point.n)
        return ImmutableMatrix(q.inv() * point.w.T * omega.T)

    @classmethod
    def sp_cotranspose(cls, u: ImmutableMatrix, n: int, m: int) -> ImmutableMatrix:
        """
        The transpose back of u: V -> E, a map E -> V.

        Characterized by omega(tu(e), v) = q(e, u(v)); applied to the transpose of w
        it returns -w.
        """
        if u.shape != (2 * m, n):
            raise ShapeMismatchError(f"u must be {2 * m}x{n}, got {u.rows}x{u.cols}")
        q = split_quadratic_gram(m)
        omega = symplectic_gram(n)
        return ImmutableMatrix(omega.T.inv() * u.T * q)

    @classmethod
    def sp_moment(cls, point: SpPoint) -> ImmutableMatrix:
        """mu(w) = w tw in End(V)."""
        return ImmutableMatrix(point.w * cls.sp_transpose(point))

    @classmethod
    def sp_moment_zero(cls, point: SpPoint) -> bool:
        return cls.sp_moment(point).is_zero_matrix

    @classmethod
    def act_orthogonal(cls, point: SpPoint, g: ImmutableMatrix) -> SpPoint:
        """Action of g in O(E): w -> w g^-1."""
        return SpPoint(point.n, point.m, point.w * g.inv())

    @classmethod
    def random_special_orthogonal(cls, m: int, rng: SeededRng, factors: int = 3) -> ImmutableMatrix:
        """
        A random element of SO(E) with rational entries.

        Product of Levi elements [[A, 0], [0, A^-T]] and unipotent elements
        [[I, B], [0, I]], [[I, 0], [C, I]] with B, C skew-symmetric.
        """
        g = eye(2 * m)
        for step in range(factors):
            stream = rng.spawn(("so", step))
            a = stream.integer_matrix(m, m)
            while a.det() == 0:
                a = stream.integer_matrix(m, m)
            levi = zeros(2 * m, 2 * m)
            levi[:m, :m] = a
            levi[m:, m:] = a.inv().T
            b = stream.integer_matrix(m, m)
            c = stream.integer_matrix(m, m)
            upper, lower = eye(2 * m), eye(2 * m)
            upper[:m, m:] = b - b.T
            lower[m:, :m] = c - c.T
            g = g * levi * upper * lower
        return ImmutableMatrix(g)

    # Components

    @classmethod
    def zero_fiber_components(cls, kind: GroupKind, n: int, m: int) -> List[ComponentDescriptor]:
        """
        Irreducible components of the zero fibre.

        GL: X_p of dimension p(m - p) + mn for p in [0, m] (m <= n), [m - n, n]
        (n < m < 2n) or {n} (m >= 2n). Sp: one component of dimension
        2mn - n(n+1)/2 when m > n; components X_I, X_II of dimension mn + m(m-1)/2
        when m <= n.

        Raises:
            QuotientNotModeledError: for the orthogonal group
        """
        cls.validate_parameters(kind, n, m)
        group = GroupType(kind, n)

        if kind is GroupKind.GL:
            if m <= n:
                indices = range(0, m + 1)
            elif m < 2 * n:
                indices = range(m - n, n + 1)
            else:
                indices = range(n, n + 1)
            return [ComponentDescriptor(group, m, p * (m - p) + m * n, index=p) for p in indices]

        if kind is GroupKind.SP:
            if m > n:
                return [ComponentDescriptor(group, m, 2 * m * n - n * (n + 1) // 2)]
            dim = m * n + m * (m - 1) // 2
            return [ComponentDescriptor(group, m, dim, tag=OrbitTag.I),
                    ComponentDescriptor(group, m, dim, tag=OrbitTag.II)]

        raise QuotientNotModeledError("the zero fibre for O(V) is not modeled")

    @classmethod
    def base_point(cls, component: ComponentDescriptor) -> Point:
        """The point of the component with every fibre coordinate set to zero."""
        if component.group.kind is GroupKind.GL:
            return MatrixPair.zero(component.n, component.m)
        return SpPoint.zero(component.n, component.m)

    @classmethod
    def draw(cls, component: ComponentDescriptor, rng: SeededRng) -> Point:
        """A random point of the component, not necessarily generic."""
        n, m = component.n, component.m
        if component.group.kind is GroupKind.GL:
            # L = span(e_1..e_p) in V': u2 lands in L, u1 vanishes on L
            p = component.index
            u2 = zeros(m, n)
            u1 = zeros(n, m)
            if p > 0:
                u2[:p, :] = rng.integer_matrix(p, n)
            if p < m:
                u1[:, p:] = rng.integer_matrix(n, m - p)
            return MatrixPair(n, m, u1, u2)

        # L = span(e_1..e_k) isotropic in E; w vanishes on L-perp, so only the
        # f_1..f_k columns are non-zero
        k = n if m > n else m
        w = zeros(n, 2 * m)
        w[:, m:m + k] = rng.integer_matrix(n, k)
        w = ImmutableMatrix(w)
        if component.tag is OrbitTag.II:
            w = w * hyperbolic_swap(m)
        return SpPoint(n, m, w)

    @classmethod
    def sample_component(cls, component: ComponentDescriptor, rng: Union[SeededRng, int]) -> Point:
        """
        Draw a generic point of a zero-fibre component.

        A point is generic when its tangent dimension equals the component
        dimension; degenerate draws are retried up to MAX_SAMPLE_ATTEMPTS times.

        Args:
            component: Component to sample
            rng: Stream or integer seed

        Returns:
            MatrixPair (GL) or SpPoint (Sp), deterministic for a fixed seed

        Raises:
            NonGenericPointError: when every attempt was degenerate
        """
        stream = rng if isinstance(rng, SeededRng) else SeededRng(rng)
        for attempt in range(MAX_SAMPLE_ATTEMPTS):
            point = cls.draw(component, stream.spawn(("sample", attempt)))
            if cls.tangent_dim(point) == component.dim:
                return point
            logger.debug("Resampling degenerate point of %s (attempt %d, seed %s)",
                         component.name, attempt, stream.describe())
        raise NonGenericPointError(
            f"no generic point of {component.name} after {MAX_SAMPLE_ATTEMPTS} attempts "
            f"(seed {stream.describe()})"
        )

    @classmethod
    def in_zero_fiber(cls, point: Point) -> bool:
        if isinstance(point, MatrixPair):
            return cls.moment_gl(point).is_zero_matrix
        return cls.sp_moment_zero(point)

    @classmethod
    def gl_component_conditions(cls, pair: MatrixPair, p: int) -> Dict[str, bool]:
        """
        The conditions cutting out the closure of X_p: u1 u2 = 0,
        rank u2 <= min(n, p) and dim ker u1 >= max(m - n, p).
        """
        n, m = pair.n, pair.m
        return {
            "moment": cls.moment_gl(pair).is_zero_matrix,
            "rank_u2": pair.u2.rank() <= min(n, p),
            "kernel_u1": m - pair.u1.rank() >= max(m - n, p),
        }

    @classmethod
    def tangent_dim(cls, point: Point) -> int:
        """
        Dimension of the Zariski tangent space of the zero fibre at a point.

        GL: 2mn - rank of (a1, a2) -> a1 u2 + u1 a2 into gl(V). Sp: 2mn - rank of
        a -> a tw + w ta into {A : A Omega symmetric}, read through the upper
        triangle of a Q w^T + w Q a^T.

        Raises:
            NotInZeroFiberError: the point is not in the zero fibre
        """
        if not cls.in_zero_fiber(point):
            raise NotInZeroFiberError("tangent dimension is only certified on the zero fibre")

        n, m = point.n, point.m
        columns: List[List] = []
        if isinstance(point, MatrixPair):
            for i in range(n):
                for j in range(m):
                    unit = zeros(n, m)
                    unit[i, j] = 1
                    columns.append(list(unit * point.u2))
            for i in range(m):
                for j in range(n):
                    unit = zeros(m, n)
                    unit[i, j] = 1
                    columns.append(list(point.u1 * unit))
        else:
            q = split_quadratic_gram(m)
            qwt = q * point.w.T
            for i in range(n):
                for j in range(2 * m):
                    unit = zeros(n, 2 * m)
                    unit[i, j] = 1
                    image = unit * qwt
                    image = image + image.T
                    columns.append([image[r, c] for r in range(n) for c in range(r, n)])
        return 2 * m * n - _stack_rank(columns)

    # Quotient

    @classmethod
    def two_nilpotent_normal_form(cls, rank: int, m: int) -> ImmutableMatrix:
        """f_l = u2^l u1^l: e_{m-l+j} -> e_j for j < l."""
        form = zeros(m, m)
        for j in range(rank):
            form[j, m - rank + j] = 1
        return ImmutableMatrix(form)

    @classmethod
    def normal_form_pair(cls, rank: int, n: int, m: int) -> MatrixPair:
        """Base pair (u1^l, u2^l) with u1^l = [[0, I_l], [0, 0]] and u2^l = [[I_l, 0], [0, 0]]."""
        if rank > min(m // 2, n):
            raise RankBoundError(f"rank {rank} exceeds N = min(m // 2, n) = {min(m // 2, n)}")
        u1 = zeros(n, m)
        u2 = zeros(m, n)
        for j in range(rank):
            u1[j, m - rank + j] = 1
            u2[j, j] = 1
        return MatrixPair(n, m, u1, u2)

    @classmethod
    def factor_two_nilpotent(cls, f: ImmutableMatrix, n: int) -> MatrixPair:
        """
        Factor a 2-nilpotent F in gl_m through V.

        Builds a basis (F c_1..F c_l, kernel complement, c_1..c_l) from the pivot
        columns c_j of F; h, its inverse change of basis, conjugates F to f_l and
        the result is (u1^l h, h^-1 u2^l).

        Args:
            f: Square matrix with F^2 = 0
            n: dim V

        Returns:
            MatrixPair with u2 u1 = F and u1 u2 = 0

        Raises:
            NotTwoNilpotentError: F^2 != 0
            RankBoundError: rank F > min(m // 2, n)
        """
        f = ImmutableMatrix(f)
        if not f.is_square:
            raise ShapeMismatchError(f"F must be square, got {f.rows}x{f.cols}")
        if not (f * f).is_zero_matrix:
            raise NotTwoNilpotentError("F^2 != 0")
        m = f.rows
        _, pivots = f.rref()
        rank = len(pivots)
        base = cls.normal_form_pair(rank, n, m)
        if rank == 0:
            return base

        images = [f[:, c] for c in pivots]
        preimages = [eye(m)[:, c] for c in pivots]
        middle: List[Matrix] = []
        current = Matrix.hstack(*images)
        for vector in f.nullspace():
            if len(middle) == m - 2 * rank:
                break
            candidate = Matrix.hstack(current, vector)
            if candidate.rank() > current.rank():
                middle.append(vector)
                current = candidate
        basis = Matrix.hstack(*images, *middle, *preimages)
        h = ImmutableMatrix(basis.inv())
        return MatrixPair(n, m, base.u1 * h, basis * base.u2)

    # Sp components

    @classmethod
    def classify_sp_component(cls, point: SpPoint) -> OrbitTag:
        """
        Component tag of a generic zero-fibre point when m <= n.

        L = im tw is maximal isotropic in E; the tag is I iff
        dim(L cap L0) = m mod 2 for the reference L0 = span(e_1..e_m).

        Raises:
            InvalidParameterError: m > n
            NotInZeroFiberError: w tw != 0
            NonGenericPointError: rank w < m
        """
        n, m = point.n, point.m
        if m > n:
            raise InvalidParameterError(f"the zero fibre is irreducible for m > n (m={m}, n={n})")
        if not cls.sp_moment_zero(point):
            raise NotInZeroFiberError("w tw != 0")
        if point.w.rank() < m:
            raise NonGenericPointError(f"rank w < m = {m}: non-generic, unclassifiable at this point")
        isotropic = cls.sp_transpose(point)
        reference = eye(2 * m)[:, :m]
        meet = 2 * m - Matrix.hstack(isotropic, reference).rank()
        return OrbitTag.I if (meet - m) % 2 == 0 else OrbitTag.II

    @classmethod
    def sampler(cls, component: ComponentDescriptor, seed: int) -> Callable[[int], Point]:
        """Function i -> i-th reproducible sample of a component."""
        root = SeededRng(seed).spawn(("component", component.group.kind.value, component.n,
                                      component.m, component.name))
        return lambda i: cls.sample_component(component, root.spawn(i))
