"""
Symbolic geometric models: base varieties, bundle models, quotient
descriptions, verdicts and Hilbert-scheme inventories.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Tuple

from ..exceptions import InvalidParameterError
from .partition import GroupType, OrbitLabel, OrbitTag


class BaseKind(Enum):
    """Homogeneous base varieties."""
    GRASSMANNIAN = "Gr"
    TWO_STEP_FLAG = "F"
    ISOTROPIC_SP = "IG"
    ISOTROPIC_SO = "OG"


class FiberFunctor(Enum):
    """Fibres of the homogeneous vector bundles, in terms of tautological bundles."""
    HOM_QUOTIENT_TAUT = "Hom(V/T,T)"
    HOM_QUOTIENT2_TAUT1 = "Hom(V/T2,T1)"
    LAMBDA2_TAUT = "Lambda2(T)"
    SYM2_TAUT = "S2(T)"


# Base kind each fibre functor lives on
FIBER_BASES = {
    FiberFunctor.HOM_QUOTIENT_TAUT: BaseKind.GRASSMANNIAN,
    FiberFunctor.HOM_QUOTIENT2_TAUT1: BaseKind.TWO_STEP_FLAG,
    FiberFunctor.LAMBDA2_TAUT: BaseKind.ISOTROPIC_SO,
    FiberFunctor.SYM2_TAUT: BaseKind.ISOTROPIC_SP,
}


class VerdictCase(Enum):
    SYMPLECTIC_UNIQUE_DESING = "SymplecticUniqueDesing"
    DESING_STRICTLY_DOMINATES = "DesingStrictlyDominates"
    NOT_COVERED = "NotCoveredByTheorems"


class InventoryStatus(Enum):
    EXACT = "exact"
    AT_LEAST = "at_least"
    IRREDUCIBLE = "irreducible"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class BaseVariety:
    """
    Gr(k, m), the two-step flag variety F_{k,b}(C^m), IG(k, 2m) or OG(k, 2m).

    ``tag`` picks one of the two components of OG(m, 2m).
    """

    kind: BaseKind
    m: int
    k: int
    b: Optional[int] = None
    tag: Optional[OrbitTag] = None

    def __post_init__(self):
        if not 0 <= self.k <= self.m:
            raise InvalidParameterError(f"subspace dimension {self.k} outside [0, {self.m}]")
        if self.kind is BaseKind.TWO_STEP_FLAG:
            if self.b is None or not self.k <= self.b <= self.m:
                raise InvalidParameterError(f"flag F_{{{self.k},{self.b}}} needs k <= b <= m = {self.m}")
        elif self.b is not None:
            raise InvalidParameterError(f"{self.kind.value} takes a single subspace dimension")
        if self.tag is not None and not (self.kind is BaseKind.ISOTROPIC_SO and self.k == self.m):
            raise InvalidParameterError("only OG(m, 2m) has tagged components")

    @property
    def dim(self) -> int:
        k, m = self.k, self.m
        if self.kind is BaseKind.GRASSMANNIAN:
            return k * (m - k)
        if self.kind is BaseKind.TWO_STEP_FLAG:
            return k * (m - k) + (self.b - k) * (m - self.b)
        if self.kind is BaseKind.ISOTROPIC_SP:
            return 2 * k * (m - k) + k * (k + 1) // 2
        return 2 * k * (m - k) + k * (k - 1) // 2

    @property
    def name(self) -> str:
        if self.kind is BaseKind.GRASSMANNIAN:
            return f"Gr({self.k},{self.m})"
        if self.kind is BaseKind.TWO_STEP_FLAG:
            return f"F_{{{self.k},{self.b}}}(C^{self.m})"
        tag = f"^{self.tag.value}" if self.tag else ""
        return f"{self.kind.value}{tag}({self.k},{2 * self.m})"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "m": self.m,
            "k": self.k,
            "b": self.b,
            "tag": self.tag.value if self.tag else None,
            "dim": self.dim,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BaseVariety":
        tag = data.get("tag")
        return cls(BaseKind(data["kind"]), int(data["m"]), int(data["k"]), data.get("b"),
                   OrbitTag(tag) if tag else None)


@dataclass(frozen=True)
class BundleModel:
    """Total space of a homogeneous vector bundle, optionally blown up along its zero section."""

    base: BaseVariety
    fiber: FiberFunctor
    blow_up: bool = False

    def __post_init__(self):
        if FIBER_BASES[self.fiber] is not self.base.kind:
            raise InvalidParameterError(f"{self.fiber.value} is not a bundle over {self.base.name}")

    @property
    def fiber_rank(self) -> int:
        k, m = self.base.k, self.base.m
        if self.fiber is FiberFunctor.HOM_QUOTIENT_TAUT:
            return k * (m - k)
        if self.fiber is FiberFunctor.HOM_QUOTIENT2_TAUT1:
            return k * (m - self.base.b)
        if self.fiber is FiberFunctor.LAMBDA2_TAUT:
            return k * (k - 1) // 2
        return k * (k + 1) // 2

    @property
    def total_dim(self) -> int:
        return self.base.dim + self.fiber_rank

    @property
    def name(self) -> str:
        body = f"{self.fiber.value} over {self.base.name}"
        return f"Bl_0({body})" if self.blow_up else body

    def to_dict(self) -> Dict[str, Any]:
        return {
            "base": self.base.to_dict(),
            "fiber": self.fiber.value,
            "blow_up": self.blow_up,
            "fiber_rank": self.fiber_rank,
            "total_dim": self.total_dim,
            "name": self.name,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BundleModel":
        return cls(BaseVariety.from_dict(data["base"]), FiberFunctor(data["fiber"]), bool(data["blow_up"]))


@dataclass(frozen=True)
class Stratum:
    label: OrbitLabel
    dim: int

    def to_dict(self) -> Dict[str, Any]:
        return {"label": self.label.to_dict(), "dim": self.dim, "name": str(self.label.partition)
                + (f"^{self.label.tag.value}" if self.label.tag else "")}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Stratum":
        return cls(OrbitLabel.from_dict(data["label"]), int(data["dim"]))


@dataclass(frozen=True)
class QuotientDescription:
    """
    The symplectic reduction as a union of nilpotent orbit closures.

    ``singular_locus`` is None when the quotient is smooth.
    """

    group: GroupType
    m: int
    components: Tuple[OrbitLabel, ...]
    strata: Tuple[Stratum, ...]
    singular_locus: Optional[OrbitLabel] = None
    h0_available: bool = True

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "strata", tuple(self.strata))
        labels = {s.label for s in self.strata}
        if not self.components or any(c not in labels for c in self.components):
            raise InvalidParameterError("every component must be a stratum")

    @property
    def n(self) -> int:
        return self.group.dim

    @property
    def is_reducible(self) -> bool:
        return len(self.components) > 1

    @property
    def dim(self) -> int:
        return max(s.dim for s in self.strata)

    @property
    def is_smooth(self) -> bool:
        return self.singular_locus is None

    def stratum_dim(self, label: OrbitLabel) -> int:
        for stratum in self.strata:
            if stratum.label == label:
                return stratum.dim
        raise InvalidParameterError(f"{label} is not a stratum")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "group": self.group.to_dict(),
            "m": self.m,
            "components": [c.to_dict() for c in self.components],
            "strata": [s.to_dict() for s in self.strata],
            "singular_locus": self.singular_locus.to_dict() if self.singular_locus else None,
            "is_reducible": self.is_reducible,
            "dim": self.dim,
            "h0_available": self.h0_available,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "QuotientDescription":
        singular = data.get("singular_locus")
        return cls(
            group=GroupType.from_dict(data["group"]),
            m=int(data["m"]),
            components=tuple(OrbitLabel.from_dict(c) for c in data["components"]),
            strata=tuple(Stratum.from_dict(s) for s in data["strata"]),
            singular_locus=OrbitLabel.from_dict(singular) if singular else None,
            h0_available=bool(data.get("h0_available", True)),
        )


@dataclass(frozen=True)
class Verdict:
    case: VerdictCase
    springer_count: Optional[int] = None
    model: Optional[BundleModel] = None
    citations: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "citations", tuple(self.citations))
        if self.case is VerdictCase.SYMPLECTIC_UNIQUE_DESING and not (self.springer_count or 0) >= 1:
            raise InvalidParameterError("a unique symplectic desingularization needs a Springer desingularization")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "case": self.case.value,
            "springer_count": self.springer_count,
            "model": self.model.to_dict() if self.model else None,
            "citations": list(self.citations),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Verdict":
        model = data.get("model")
        return cls(VerdictCase(data["case"]), data.get("springer_count"),
                   BundleModel.from_dict(model) if model else None, tuple(data.get("citations", ())))


@dataclass(frozen=True)
class HilbInventory:
    """Known irreducible components of the invariant Hilbert scheme."""

    status: InventoryStatus
    component_count: Optional[int] = None
    component_dims: Tuple[int, ...] = ()
    main_dim: Optional[int] = None
    notes: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "component_dims", tuple(self.component_dims))
        object.__setattr__(self, "notes", tuple(self.notes))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status.value,
            "component_count": self.component_count,
            "component_dims": list(self.component_dims),
            "main_dim": self.main_dim,
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "HilbInventory":
        return cls(InventoryStatus(data["status"]), data.get("component_count"),
                   tuple(data.get("component_dims", ())), data.get("main_dim"), tuple(data.get("notes", ())))


@dataclass(frozen=True)
class ConsistencyReport:
    """Dimension bookkeeping of the reduction to the smaller module W'."""

    base: BaseVariety
    a0_dim: int
    fiber_dim: int
    quotient_dim: int
    zero_fiber_dim: int
    general_fiber_dim: int

    @property
    def reduction_holds(self) -> bool:
        return self.a0_dim + self.fiber_dim == self.quotient_dim

    @property
    def fiber_holds(self) -> bool:
        return self.zero_fiber_dim - self.quotient_dim == self.general_fiber_dim

    @property
    def passed(self) -> bool:
        return self.reduction_holds and self.fiber_holds

    def to_dict(self) -> Dict[str, Any]:
        return {
            "base": self.base.to_dict(),
            "a0_dim": self.a0_dim,
            "fiber_dim": self.fiber_dim,
            "quotient_dim": self.quotient_dim,
            "zero_fiber_dim": self.zero_fiber_dim,
            "general_fiber_dim": self.general_fiber_dim,
            "passed": self.passed,
        }
