"""
Orbit Classifier Service
Classifies nilpotent orbits of gl, sp and so by partitions and computes their
dimensions, closure order and normality.
"""

import logging
from functools import lru_cache
from typing import List, Optional, Tuple

from sympy import ImmutableMatrix, Matrix, zeros

from ..exceptions import InvalidParameterError, PartitionSizeError, UnsupportedRegimeError
from ..models.partition import (
    GroupKind,
    GroupType,
    OrbitLabel,
    OrbitTag,
    Partition,
    parity_condition_holds,
)

logger = logging.getLogger(__name__)


def _unit(size: int, row: int, col: int) -> Matrix:
    unit = zeros(size, size)
    unit[row, col] = 1
    return unit


@lru_cache(maxsize=None)
def _algebra_basis(kind: GroupKind, dim: int) -> Tuple[ImmutableMatrix, ...]:
    if kind is GroupKind.GL:
        return tuple(ImmutableMatrix(_unit(dim, i, j)) for i in range(dim) for j in range(dim))

    if dim % 2:
        raise UnsupportedRegimeError(f"matrix model of {kind.value}_{dim} needs even size")
    m = dim // 2
    # X = [[A, B], [C, -A^T]] with B, C symmetric (sp) or skew (so)
    sign = 1 if kind is GroupKind.SP else -1
    basis = []
    for i in range(m):
        for j in range(m):
            basis.append(_unit(dim, i, j) - _unit(dim, m + j, m + i))
    first = 0 if kind is GroupKind.SP else 1
    for i in range(m):
        for j in range(i + first, m):
            upper = _unit(dim, i, m + j) + sign * _unit(dim, j, m + i)
            lower = _unit(dim, m + i, j) + sign * _unit(dim, m + j, i)
            if i == j:
                upper, lower = _unit(dim, i, m + i), _unit(dim, m + i, i)
            basis.append(upper)
            basis.append(lower)
    return tuple(ImmutableMatrix(b) for b in basis)


def hyperbolic_swap(m: int, pair: Optional[int] = None) -> ImmutableMatrix:
    """
    Permutation matrix exchanging e_pair and f_pair in the split basis of a 2m-space.

    It preserves the split quadratic form and has determinant -1. The last
    pair is used when ``pair`` is omitted.
    """
    pair = m - 1 if pair is None else pair
    if not 0 <= pair < m:
        raise InvalidParameterError(f"hyperbolic pair index must lie in [0, {m}), got {pair}")
    swap = Matrix.eye(2 * m)
    swap[pair, pair] = 0
    swap[m + pair, m + pair] = 0
    swap[pair, m + pair] = 1
    swap[m + pair, pair] = 1
    return ImmutableMatrix(swap)


class OrbitClassifier:
    """Service for nilpotent orbit classification in gl_m, sp_2m and so_N."""

    @classmethod
    def transpose(cls, partition: Partition) -> Partition:
        """Conjugate partition (column lengths of the Young diagram)."""
        return partition.transpose()

    @classmethod
    def validate_orbit(cls, ambient: GroupType, partition: Partition) -> List[OrbitLabel]:
        """
        List the orbit labels attached to a partition.

        Args:
            ambient: Ambient Lie algebra
            partition: Candidate partition

        Returns:
            Empty list on parity failure; two labels (I, II) for very even so
            partitions; one label otherwise.

        Raises:
            PartitionSizeError: if the partition size is not the matrix size
        """
        if partition.size != ambient.dim:
            raise PartitionSizeError(
                f"partition {partition} has size {partition.size}, expected {ambient.dim} for {ambient}"
            )
        if not parity_condition_holds(ambient.kind, partition):
            return []
        if ambient.kind is GroupKind.O and partition.is_very_even:
            return [OrbitLabel(ambient, partition, OrbitTag.I), OrbitLabel(ambient, partition, OrbitTag.II)]
        return [OrbitLabel(ambient, partition)]

    @classmethod
    def two_bounded_labels(cls, ambient: GroupType) -> List[OrbitLabel]:
        """All orbit labels of the ambient algebra whose partitions have parts <= 2."""
        labels = []
        for twos in range(ambient.dim // 2 + 1):
            labels.extend(cls.validate_orbit(ambient, Partition.two_bounded(twos, ambient.dim - 2 * twos)))
        return labels

    @classmethod
    def partitions_of(cls, size: int, max_parts: Optional[int] = None) -> List[Partition]:
        """Partitions of ``size`` with at most ``max_parts`` parts, in reverse lexicographic order."""
        limit = size if max_parts is None else max_parts

        def build(remaining: int, largest: int, slots: int) -> List[Tuple[int, ...]]:
            if remaining == 0:
                return [()]
            if slots == 0:
                return []
            result = []
            for part in range(min(remaining, largest), 0, -1):
                result.extend((part,) + rest for rest in build(remaining - part, part, slots - 1))
            return result

        return [Partition(parts) for parts in build(size, size, limit)]

    @classmethod
    def algebra_basis(cls, ambient: GroupType) -> Tuple[ImmutableMatrix, ...]:
        """Basis of gl_m, or of sp_2m / so_2m in the split-form matrix realization."""
        return _algebra_basis(ambient.kind, ambient.dim)

    @classmethod
    def representative(cls, label: OrbitLabel) -> ImmutableMatrix:
        """
        Explicit nilpotent matrix in the orbit.

        gl: Jordan blocks. sp/so with parts <= 2: [[0, B], [0, 0]] with B = diag(1^N, 0)
        (sp) or N/2 blocks [[0, 1], [-1, 0]] (so). Tag II is the conjugate of tag I by
        the swap of the last hyperbolic pair.

        Raises:
            UnsupportedRegimeError: sp/so partition with a part > 2
        """
        ambient, partition = label.ambient, label.partition
        size = ambient.dim
        matrix = zeros(size, size)

        if ambient.kind is GroupKind.GL:
            start = 0
            for part in partition:
                for offset in range(part - 1):
                    matrix[start + offset, start + offset + 1] = 1
                start += part
            return ImmutableMatrix(matrix)

        if not partition.is_two_bounded:
            raise UnsupportedRegimeError(f"no matrix representative for {label} (parts > 2)")

        m, rank = ambient.half, partition.twos
        if ambient.kind is GroupKind.SP:
            for i in range(rank):
                matrix[i, m + i] = 1
        else:
            for i in range(0, rank, 2):
                matrix[i, m + i + 1] = 1
                matrix[i + 1, m + i] = -1
        representative = ImmutableMatrix(matrix)
        if label.tag is OrbitTag.II:
            swap = hyperbolic_swap(m)
            representative = ImmutableMatrix(swap * representative * swap)
        return representative

    @classmethod
    def centralizer_dim(cls, label: OrbitLabel) -> int:
        """
        Dimension of the centralizer of the representative inside the ambient algebra.

        Computed as dim h minus the exact rank of Y -> [Y, X] on a basis of h.
        """
        x = cls.representative(label)
        basis = cls.algebra_basis(label.ambient)
        columns = [list(b * x - x * b) for b in basis]
        if not columns:
            return 0
        image = Matrix(columns).T
        return len(basis) - image.rank()

    @classmethod
    def closed_form_dim(cls, label: OrbitLabel) -> int:
        """
        Orbit dimension from the partition alone.

        With s the transpose partition: gl_m: m^2 - sum s_i^2; sp_N: dim sp_N -
        (sum s_i^2 + #odd parts)/2; so_N: dim so_N - (sum s_i^2 - #odd parts)/2.
        """
        ambient, partition = label.ambient, label.partition
        squares = sum(s * s for s in partition.transpose())
        odd_parts = sum(1 for p in partition if p % 2)
        if ambient.kind is GroupKind.GL:
            return ambient.dim * ambient.dim - squares
        if ambient.kind is GroupKind.SP:
            return ambient.algebra_dim - (squares + odd_parts) // 2
        return ambient.algebra_dim - (squares - odd_parts) // 2

    @classmethod
    def orbit_dim(cls, label: OrbitLabel) -> int:
        """
        Dimension of the adjoint orbit.

        gl uses the closed form; sp/so use the centralizer oracle on the explicit
        representative, falling back to the closed form for parts > 2 or odd so.
        """
        if label.ambient.kind is GroupKind.GL:
            return cls.closed_form_dim(label)
        if not label.partition.is_two_bounded or label.ambient.dim % 2:
            logger.debug("Using closed-form dimension for %s", label)
            return cls.closed_form_dim(label)
        return label.ambient.algebra_dim - cls.centralizer_dim(label)

    @classmethod
    def closure_leq(cls, a: OrbitLabel, b: OrbitLabel) -> bool:
        """
        Whether the closure of O_a is contained in the closure of O_b.

        Raises:
            InvalidParameterError: different ambient algebras
            UnsupportedRegimeError: a partition with a part > 2
        """
        if a.ambient != b.ambient:
            raise InvalidParameterError(f"cannot compare orbits of {a.ambient} and {b.ambient}")
        if not (a.partition.is_two_bounded and b.partition.is_two_bounded):
            raise UnsupportedRegimeError("closure order is implemented for parts <= 2 only")
        if a == b:
            return True
        if a.tag is not None and b.tag is not None:
            return False
        return a.partition.twos <= b.partition.twos

    @classmethod
    def is_normal(cls, label: OrbitLabel) -> Optional[bool]:
        """
        Normality of the orbit closure.

        Returns:
            True when a known criterion applies (gl always, sp with d1 + d2 <= 4,
            so with d1 <= 2); None (unknown) otherwise.
        """
        parts = label.partition.parts + (0, 0)
        kind = label.ambient.kind
        if kind is GroupKind.GL:
            return True
        if kind is GroupKind.SP and parts[0] + parts[1] <= 4:
            return True
        if kind is GroupKind.O and parts[0] <= 2:
            return True
        return None
