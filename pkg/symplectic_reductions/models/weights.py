"""
Weight, character and monomial models for the representation-theory service.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

from sympy import Poly, Symbol

from ..exceptions import InvalidParameterError
from .partition import GroupKind, GroupType


class BlockPosition(Enum):
    """Where a block subgroup sits inside the ambient group."""
    FIRST = "first"
    LAST = "last"


@dataclass(frozen=True)
class DominantWeight:
    """
    Highest weight of an irreducible representation.

    GL_n: n weakly decreasing integers (possibly negative). Sp_n: n/2 weakly
    decreasing non-negative integers.
    """

    group: GroupType
    entries: Tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        kind = self.group.kind
        if kind is GroupKind.O:
            raise InvalidParameterError("weights are modeled for GL_n and Sp_n only")
        expected = self.group.dim if kind is GroupKind.GL else self.group.half
        if len(entries) != expected:
            raise InvalidParameterError(
                f"{self.group.group_name} weights have {expected} entries, got {len(entries)}"
            )
        if any(entries[i] < entries[i + 1] for i in range(len(entries) - 1)):
            raise InvalidParameterError(f"weight entries must be weakly decreasing: {entries}")
        if kind is GroupKind.SP and entries and entries[-1] < 0:
            raise InvalidParameterError(f"Sp weights are non-negative: {entries}")

    @classmethod
    def gl(cls, *entries: int) -> "DominantWeight":
        return cls(GroupType.general_linear(len(entries)), tuple(entries))

    @classmethod
    def sp(cls, *entries: int) -> "DominantWeight":
        return cls(GroupType.symplectic(2 * len(entries)), tuple(entries))

    @property
    def rank(self) -> int:
        return len(self.entries)

    @property
    def weight_size(self) -> int:
        """Sum of absolute values of the entries."""
        return sum(abs(e) for e in self.entries)

    @property
    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def dual(self) -> "DominantWeight":
        """lambda* = (-lambda_n, ..., -lambda_1); Sp weights are self-dual."""
        if self.group.kind is GroupKind.SP:
            return self
        return DominantWeight(self.group, tuple(-e for e in reversed(self.entries)))

    def to_dict(self) -> Dict[str, Any]:
        return {"group": self.group.to_dict(), "entries": list(self.entries)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DominantWeight":
        return cls(GroupType.from_dict(data["group"]), tuple(data["entries"]))

    def __str__(self) -> str:
        return f"{self.group.group_name}({', '.join(str(e) for e in self.entries)})"


Exponent = Tuple[int, ...]


class LaurentPolynomial:
    """
    Integer Laurent polynomial in named variables.

    Terms map exponent vectors to non-zero coefficients. Instances are never
    mutated after construction; arithmetic returns new polynomials.
    """

    __slots__ = ("variables", "_terms")

    def __init__(self, variables: Sequence[str], terms: Optional[Mapping[Exponent, int]] = None):
        self.variables: Tuple[str, ...] = tuple(variables)
        cleaned: Dict[Exponent, int] = {}
        for exponent, coefficient in (terms or {}).items():
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != len(self.variables):
                raise InvalidParameterError(
                    f"exponent {exponent} does not match variables {self.variables}"
                )
            if coefficient:
                cleaned[exponent] = cleaned.get(exponent, 0) + int(coefficient)
        self._terms = {e: c for e, c in cleaned.items() if c}

    @classmethod
    def monomial(cls, variables: Sequence[str], exponent: Exponent, coefficient: int = 1) -> "LaurentPolynomial":
        return cls(variables, {tuple(exponent): coefficient})

    @classmethod
    def one(cls, variables: Sequence[str]) -> "LaurentPolynomial":
        return cls.monomial(variables, (0,) * len(variables))

    @property
    def terms(self) -> Dict[Exponent, int]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponent, int]]:
        return iter(sorted(self._terms.items()))

    def coefficient(self, exponent: Iterable[int]) -> int:
        return self._terms.get(tuple(exponent), 0)

    def _check_compatible(self, other: "LaurentPolynomial"):
        if self.variables != other.variables:
            raise InvalidParameterError(f"variables differ: {self.variables} vs {other.variables}")

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        self._check_compatible(other)
        terms = dict(self._terms)
        for exponent, coefficient in other._terms.items():
            terms[exponent] = terms.get(exponent, 0) + coefficient
        return LaurentPolynomial(self.variables, terms)

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + other.scale(-1)

    def _to_poly(self) -> Tuple[Poly, Exponent]:
        """sympy Poly of the terms with exponents shifted to be non-negative, and the shift."""
        shift = tuple(min(e[i] for e in self._terms) for i in range(len(self.variables)))
        shifted = {tuple(a - s for a, s in zip(e, shift)): c for e, c in self._terms.items()}
        return Poly.from_dict(shifted, *[Symbol(name) for name in self.variables], domain="ZZ"), shift

    @classmethod
    def from_poly(cls, variables: Sequence[str], poly: Poly,
                  shift: Optional[Exponent] = None) -> "LaurentPolynomial":
        """Terms of a sympy Poly in ``variables``, exponents moved by ``shift``."""
        shift = shift or (0,) * len(variables)
        return cls(variables, {tuple(a + s for a, s in zip(e, shift)): int(c) for e, c in poly.as_dict().items()})

    def __mul__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        self._check_compatible(other)
        if not self._terms or not other._terms:
            return LaurentPolynomial(self.variables)
        if not self.variables:
            return LaurentPolynomial((), {(): self.constant_term() * other.constant_term()})
        left, left_shift = self._to_poly()
        right, right_shift = other._to_poly()
        shift = tuple(a + b for a, b in zip(left_shift, right_shift))
        return LaurentPolynomial.from_poly(self.variables, left * right, shift)

    def scale(self, factor: int) -> "LaurentPolynomial":
        return LaurentPolynomial(self.variables, {e: c * factor for e, c in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.variables == other.variables and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.variables, frozenset(self._terms.items())))

    def __len__(self) -> int:
        return len(self._terms)

    def evaluate_at_one(self) -> int:
        """Sum of coefficients (all variables set to 1)."""
        return sum(self._terms.values())

    def constant_term(self) -> int:
        return self._terms.get((0,) * len(self.variables), 0)

    def restrict(self, keep: Sequence[int]) -> "LaurentPolynomial":
        """Set every variable outside ``keep`` to 1."""
        variables = [self.variables[i] for i in keep]
        terms: Dict[Exponent, int] = {}
        for exponent, coefficient in self._terms.items():
            reduced = tuple(exponent[i] for i in keep)
            terms[reduced] = terms.get(reduced, 0) + coefficient
        return LaurentPolynomial(variables, terms)

    def graded_piece(self, degree: int, positions: Optional[Sequence[int]] = None) -> "LaurentPolynomial":
        """Terms whose exponents over ``positions`` (default all) sum to ``degree``."""
        indices = range(len(self.variables)) if positions is None else positions
        return LaurentPolynomial(
            self.variables,
            {e: c for e, c in self._terms.items() if sum(e[i] for i in indices) == degree},
        )

    def pairing_constant_term(self, other: "LaurentPolynomial") -> int:
        """Constant term of self * other without expanding the product."""
        self._check_compatible(other)
        return sum(c * other._terms.get(tuple(-x for x in e), 0) for e, c in self._terms.items())

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for exponent, coefficient in sorted(self._terms.items(), reverse=True):
            factors = []
            for name, power in zip(self.variables, exponent):
                if power == 1:
                    factors.append(name)
                elif power:
                    factors.append(f"{name}^{power}")
            body = "*".join(factors) or "1"
            if coefficient == 1:
                pieces.append(body)
            elif body == "1":
                pieces.append(str(coefficient))
            else:
                pieces.append(f"{coefficient}*{body}")
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.variables}, {self._terms})"


@dataclass(frozen=True)
class MonomialXY:
    """
    Monomial x_1^a_1..x_n^a_n y_1^b_1..y_n^b_n in the U x U'-invariants.

    x_i spans the highest weight line of Lambda^i V'' (x) Lambda^i V*, y_j that of
    Lambda^j V''* (x) Lambda^j V.
    """

    x: Tuple[int, ...]
    y: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(int(a) for a in self.x))
        object.__setattr__(self, "y", tuple(int(b) for b in self.y))
        if len(self.x) != len(self.y):
            raise InvalidParameterError("x and y exponent vectors must have the same length")
        if any(a < 0 for a in self.x + self.y):
            raise InvalidParameterError(f"exponents must be non-negative: {self.x}, {self.y}")

    @classmethod
    def one(cls, n: int) -> "MonomialXY":
        return cls((0,) * n, (0,) * n)

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def degree(self) -> int:
        return sum(self.x) + sum(self.y)

    @property
    def is_admissible(self) -> bool:
        """No x_r y_s with r + s > n (1-based) divides the monomial."""
        top_x = max((r + 1 for r, a in enumerate(self.x) if a), default=0)
        top_y = max((s + 1 for s, b in enumerate(self.y) if b), default=0)
        return top_x == 0 or top_y == 0 or top_x + top_y <= self.n

    def to_dict(self) -> Dict[str, Any]:
        return {"x": list(self.x), "y": list(self.y)}

    def __str__(self) -> str:
        factors = []
        for name, powers in (("x", self.x), ("y", self.y)):
            for i, power in enumerate(powers, start=1):
                if power == 1:
                    factors.append(f"{name}{i}")
                elif power:
                    factors.append(f"{name}{i}^{power}")
        return "*".join(factors) or "1"
