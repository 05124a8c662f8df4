"""
Exact matrix models for points of W and components of the zero fibre.

W = Hom(V', V) x Hom(V, V') for G = GL(V), and W = Hom(E, V) for G = Sp(V),
where dim V = n, dim V' = m and E = V' + V'* carries the split quadratic form.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from sympy import ImmutableMatrix, eye, zeros

from ..exceptions import InvalidParameterError, ShapeMismatchError
from .partition import GroupKind, GroupType, OrbitTag

# Exact rational matrices
ExactMatrix = ImmutableMatrix


def symplectic_gram(n: int) -> ImmutableMatrix:
    """Gram matrix [[0, I], [-I, 0]] of the symplectic form on V (n even)."""
    if n % 2:
        raise InvalidParameterError(f"symplectic space must have even dimension, got {n}")
    half = n // 2
    gram = zeros(n, n)
    gram[:half, half:] = eye(half)
    gram[half:, :half] = -eye(half)
    return ImmutableMatrix(gram)


def split_quadratic_gram(m: int) -> ImmutableMatrix:
    """Gram matrix [[0, I], [I, 0]] of the split quadratic form on E (dim 2m)."""
    gram = zeros(2 * m, 2 * m)
    gram[:m, m:] = eye(m)
    gram[m:, :m] = eye(m)
    return ImmutableMatrix(gram)


def matrix_to_rows(matrix: ImmutableMatrix) -> List[List[str]]:
    """Exact entries as strings ('3', '-1/2'), row by row."""
    return [[str(matrix[i, j]) for j in range(matrix.cols)] for i in range(matrix.rows)]


def _check_shape(name: str, matrix: ImmutableMatrix, rows: int, cols: int):
    if matrix.shape != (rows, cols):
        raise ShapeMismatchError(f"{name} must be {rows}x{cols}, got {matrix.rows}x{matrix.cols}")


@dataclass(frozen=True)
class MatrixPair:
    """A point (u1, u2) of W for G = GL(V): u1 in Hom(V', V) (n x m), u2 in Hom(V, V') (m x n)."""

    n: int
    m: int
    u1: ImmutableMatrix
    u2: ImmutableMatrix

    def __post_init__(self):
        object.__setattr__(self, "u1", ImmutableMatrix(self.u1))
        object.__setattr__(self, "u2", ImmutableMatrix(self.u2))
        _check_shape("u1", self.u1, self.n, self.m)
        _check_shape("u2", self.u2, self.m, self.n)

    @classmethod
    def zero(cls, n: int, m: int) -> "MatrixPair":
        return cls(n, m, ImmutableMatrix(zeros(n, m)), ImmutableMatrix(zeros(m, n)))

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "m": self.m, "u1": matrix_to_rows(self.u1), "u2": matrix_to_rows(self.u2)}


@dataclass(frozen=True)
class SpPoint:
    """A point w in Hom(E, V) for G = Sp(V): an n x 2m matrix, n even."""

    n: int
    m: int
    w: ImmutableMatrix

    def __post_init__(self):
        if self.n % 2:
            raise InvalidParameterError(f"Sp(V) needs dim V even, got n={self.n}")
        object.__setattr__(self, "w", ImmutableMatrix(self.w))
        _check_shape("w", self.w, self.n, 2 * self.m)

    @classmethod
    def zero(cls, n: int, m: int) -> "SpPoint":
        return cls(n, m, ImmutableMatrix(zeros(n, 2 * m)))

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "m": self.m, "w": matrix_to_rows(self.w)}


@dataclass(frozen=True)
class ComponentDescriptor:
    """
    An irreducible component of the zero fibre.

    GL components X_p carry the index p (dimension of the subspace L of V' on
    which u1 vanishes); Sp components carry a tag when there are two of them.
    """

    group: GroupType
    m: int
    dim: int
    index: Optional[int] = None
    tag: Optional[OrbitTag] = None

    def __post_init__(self):
        if self.group.kind is GroupKind.GL and self.index is None:
            raise InvalidParameterError("GL components are labelled by an index p")
        if self.group.kind is GroupKind.SP and self.index is not None:
            raise InvalidParameterError("Sp components are labelled by a tag, not an index")
        if self.dim < 0:
            raise InvalidParameterError(f"component dimension must be non-negative, got {self.dim}")

    @property
    def n(self) -> int:
        return self.group.dim

    @property
    def name(self) -> str:
        if self.index is not None:
            return f"X_{self.index}"
        return f"X_{self.tag.value}" if self.tag else "X"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "group": self.group.to_dict(),
            "n": self.n,
            "m": self.m,
            "dim": self.dim,
            "index": self.index,
            "tag": self.tag.value if self.tag else None,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ComponentDescriptor":
        tag = data.get("tag")
        return cls(
            group=GroupType.from_dict(data["group"]),
            m=int(data["m"]),
            dim=int(data["dim"]),
            index=data.get("index"),
            tag=OrbitTag(tag) if tag else None,
        )
