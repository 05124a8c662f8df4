"""
Partition, GroupType and OrbitLabel models for nilpotent orbit classification.
"""

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, Optional, Tuple

from ..exceptions import InvalidParameterError, PartitionSizeError


class GroupKind(Enum):
    """The three classical families."""
    GL = "gl"
    O = "o"
    SP = "sp"


class OrbitTag(Enum):
    """Labels of the two SO-orbits attached to a very even partition."""
    I = "I"    # noqa: E741
    II = "II"


@dataclass(frozen=True)
class GroupType:
    """
    A classical group or Lie algebra of a given matrix size.

    ``dim`` is the size of the matrices: m for gl_m, 2m for sp_2m and so_2m, and n
    for an acting group GL_n, O_n or Sp_n.
    """

    kind: GroupKind
    dim: int

    def __post_init__(self):
        if not isinstance(self.kind, GroupKind):
            object.__setattr__(self, "kind", GroupKind(self.kind))
        if not isinstance(self.dim, int) or self.dim < 0:
            raise InvalidParameterError(f"matrix size must be a non-negative integer, got {self.dim!r}")
        if self.kind is GroupKind.SP and self.dim % 2:
            raise InvalidParameterError(f"symplectic matrix size must be even, got {self.dim}")

    @classmethod
    def general_linear(cls, dim: int) -> "GroupType":
        return cls(GroupKind.GL, dim)

    @classmethod
    def orthogonal(cls, dim: int) -> "GroupType":
        return cls(GroupKind.O, dim)

    @classmethod
    def symplectic(cls, dim: int) -> "GroupType":
        return cls(GroupKind.SP, dim)

    @property
    def half(self) -> int:
        """m for sp_2m / so_2m; the rank of the torus of Sp_2m."""
        return self.dim // 2

    @property
    def algebra_name(self) -> str:
        prefix = {GroupKind.GL: "gl", GroupKind.O: "so", GroupKind.SP: "sp"}[self.kind]
        return f"{prefix}_{self.dim}"

    @property
    def group_name(self) -> str:
        prefix = {GroupKind.GL: "GL", GroupKind.O: "O", GroupKind.SP: "Sp"}[self.kind]
        return f"{prefix}_{self.dim}"

    @property
    def algebra_dim(self) -> int:
        """Dimension of the Lie algebra."""
        if self.kind is GroupKind.GL:
            return self.dim * self.dim
        if self.kind is GroupKind.SP:
            return self.dim * (self.dim + 1) // 2
        return self.dim * (self.dim - 1) // 2

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "dim": self.dim}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "GroupType":
        return cls(GroupKind(data["kind"]), int(data["dim"]))

    def __str__(self) -> str:
        return self.algebra_name


@dataclass(frozen=True)
class Partition:
    """A partition d_1 >= d_2 >= ... >= d_k >= 1."""

    parts: Tuple[int, ...] = ()
    size: int = field(init=False)

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise InvalidParameterError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise InvalidParameterError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "size", sum(parts))

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @classmethod
    def two_bounded(cls, twos: int, ones: int) -> "Partition":
        """The partition [2^twos, 1^ones]."""
        if twos < 0 or ones < 0:
            raise InvalidParameterError(f"multiplicities must be non-negative: {twos}, {ones}")
        return cls((2,) * twos + (1,) * ones)

    def multiplicity(self, part: int) -> int:
        return self.parts.count(part)

    @property
    def largest(self) -> int:
        return self.parts[0] if self.parts else 0

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def twos(self) -> int:
        """Number of parts equal to 2 (the rank of a 2-nilpotent of this type)."""
        return self.multiplicity(2)

    @property
    def is_two_bounded(self) -> bool:
        return self.largest <= 2

    @property
    def is_very_even(self) -> bool:
        """All parts even, each with even multiplicity (and the partition non-empty)."""
        counts = Counter(self.parts)
        return bool(self.parts) and all(p % 2 == 0 and c % 2 == 0 for p, c in counts.items())

    def transpose(self) -> "Partition":
        return Partition(tuple(sum(1 for p in self.parts if p > i) for i in range(self.largest)))

    def to_list(self):
        return list(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __str__(self) -> str:
        if not self.parts:
            return "[]"
        blocks = []
        for part in sorted(set(self.parts), reverse=True):
            count = self.multiplicity(part)
            blocks.append(str(part) if count == 1 else f"{part}^{count}")
        return "[" + ",".join(blocks) + "]"


def parity_condition_holds(kind: GroupKind, partition: Partition) -> bool:
    """
    Parity rule for nilpotent orbits.

    sp: every odd part has even multiplicity; so: every even part has even
    multiplicity; gl: no condition.
    """
    counts = Counter(partition.parts)
    if kind is GroupKind.SP:
        return all(c % 2 == 0 for p, c in counts.items() if p % 2 == 1)
    if kind is GroupKind.O:
        return all(c % 2 == 0 for p, c in counts.items() if p % 2 == 0)
    return True


@dataclass(frozen=True)
class OrbitLabel:
    """A nilpotent orbit in the ambient Lie algebra, indexed by a partition and an optional tag."""

    ambient: GroupType
    partition: Partition
    tag: Optional[OrbitTag] = None

    def __post_init__(self):
        if self.partition.size != self.ambient.dim:
            raise PartitionSizeError(
                f"partition {self.partition} has size {self.partition.size}, "
                f"but {self.ambient} acts on dimension {self.ambient.dim}"
            )
        if not parity_condition_holds(self.ambient.kind, self.partition):
            raise InvalidParameterError(
                f"partition {self.partition} fails the parity condition for {self.ambient}"
            )
        needs_tag = self.ambient.kind is GroupKind.O and self.partition.is_very_even
        if needs_tag and self.tag is None:
            raise InvalidParameterError(f"very even partition {self.partition} in {self.ambient} needs a tag")
        if not needs_tag and self.tag is not None:
            raise InvalidParameterError(f"partition {self.partition} in {self.ambient} takes no tag")

    @property
    def m(self) -> int:
        """m for gl_m; half the matrix size for sp/so."""
        return self.ambient.dim if self.ambient.kind is GroupKind.GL else self.ambient.half

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ambient": self.ambient.to_dict(),
            "partition": self.partition.to_list(),
            "tag": self.tag.value if self.tag else None,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "OrbitLabel":
        tag = data.get("tag")
        return cls(
            ambient=GroupType.from_dict(data["ambient"]),
            partition=Partition(tuple(data["partition"])),
            tag=OrbitTag(tag) if tag else None,
        )

    def __str__(self) -> str:
        suffix = f"^{self.tag.value}" if self.tag else ""
        return f"{self.partition}{suffix} in {self.ambient}"
