"""
Report models: check results, representation-theory reports, the full
reduction report and table rows.
"""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .geometry import BundleModel, HilbInventory, QuotientDescription, Verdict
from .matrices import ComponentDescriptor
from .partition import GroupKind
from .weights import DominantWeight

SCHEMA_VERSION = "1.0"


@dataclass(frozen=True)
class DegreeCount:
    degree: int
    lhs: int
    rhs: int
    equal: bool

    def to_dict(self) -> Dict[str, Any]:
        return {"degree": self.degree, "lhs": self.lhs, "rhs": self.rhs, "equal": self.equal}


@dataclass(frozen=True)
class CauchyReport:
    n: int
    m: int
    degree_bound: int
    degrees: Tuple[DegreeCount, ...]

    @property
    def passed(self) -> bool:
        return all(d.equal for d in self.degrees)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "m": self.m,
            "degree_bound": self.degree_bound,
            "passed": self.passed,
            "degrees": [d.to_dict() for d in self.degrees],
        }


@dataclass(frozen=True)
class PresentationReport:
    n: int
    weight_bound: int
    monomial_count: int
    weight_count: int
    failures: Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "weight_bound": self.weight_bound,
            "monomial_count": self.monomial_count,
            "weight_count": self.weight_count,
            "passed": self.passed,
            "failures": list(self.failures),
        }


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one named check; ``witness`` holds JSON-ready evidence (seeds, values)."""

    name: str
    passed: bool
    witness: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "witness": self.witness}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CheckResult":
        return cls(data["name"], bool(data["passed"]), dict(data.get("witness", {})))


@dataclass(frozen=True)
class H0Entry:
    weight: DominantWeight
    value: int

    def to_dict(self) -> Dict[str, Any]:
        return {"weight": self.weight.to_dict(), "value": self.value}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "H0Entry":
        return cls(DominantWeight.from_dict(data["weight"]), int(data["value"]))


@dataclass(frozen=True)
class ReductionReport:
    """Structured result of one (G, n, m) analysis."""

    group: GroupKind
    n: int
    m: int
    zero_fiber: Tuple[ComponentDescriptor, ...]
    quotient: Optional[QuotientDescription]
    h0_table: Tuple[H0Entry, ...]
    model: Optional[BundleModel]
    verdict: Verdict
    hilb_inventory: HilbInventory
    verification: Tuple[CheckResult, ...] = ()
    notes: Tuple[str, ...] = ()
    seed: int = 0
    schema_version: str = SCHEMA_VERSION

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.verification)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "input": {"group": self.group.value, "n": self.n, "m": self.m, "seed": self.seed},
            "zero_fiber": [c.to_dict() for c in self.zero_fiber],
            "quotient": self.quotient.to_dict() if self.quotient else None,
            "h0_table": [entry.to_dict() for entry in self.h0_table],
            "model": self.model.to_dict() if self.model else None,
            "verdict": self.verdict.to_dict(),
            "hilb_inventory": self.hilb_inventory.to_dict(),
            "verification": [check.to_dict() for check in sorted(self.verification, key=lambda c: c.name)],
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        """Stable, key-sorted JSON document."""
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ReductionReport":
        quotient = data.get("quotient")
        model = data.get("model")
        return cls(
            group=GroupKind(data["input"]["group"]),
            n=int(data["input"]["n"]),
            m=int(data["input"]["m"]),
            zero_fiber=tuple(ComponentDescriptor.from_dict(c) for c in data["zero_fiber"]),
            quotient=QuotientDescription.from_dict(quotient) if quotient else None,
            h0_table=tuple(H0Entry.from_dict(e) for e in data["h0_table"]),
            model=BundleModel.from_dict(model) if model else None,
            verdict=Verdict.from_dict(data["verdict"]),
            hilb_inventory=HilbInventory.from_dict(data["hilb_inventory"]),
            verification=tuple(CheckResult.from_dict(c) for c in data["verification"]),
            notes=tuple(data.get("notes", ())),
            seed=int(data["input"].get("seed", 0)),
            schema_version=data.get("schema_version", SCHEMA_VERSION),
        )

    @classmethod
    def from_json(cls, document: str) -> "ReductionReport":
        return cls.from_dict(json.loads(document))


@dataclass(frozen=True)
class VerificationReport:
    suite: str
    seed: int
    checks: Tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.passed,
            "checks": [check.to_dict() for check in self.checks],
        }


@dataclass(frozen=True)
class TableRow:
    """One (n, m) row of the classification table; ``valid`` is False when (G, n, m) is not admissible."""

    n: int
    m: int
    valid: bool
    rank_bound: Optional[int] = None
    quotient_dim: Optional[int] = None
    verdict: Optional[str] = None
    springer_count: Optional[int] = None
    model_dim: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "m": self.m,
            "valid": self.valid,
            "N": self.rank_bound,
            "quotient_dim": self.quotient_dim,
            "verdict": self.verdict,
            "springer_count": self.springer_count,
            "model_dim": self.model_dim,
        }
