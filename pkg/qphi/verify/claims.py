from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Optional

from ..core.errors import ContractViolation

PROVED = "proved"
EMPIRICAL = "empirical"


@dataclass(frozen=True)
class Relation:
    """Right side c * f(a'n + b') of a congruence relation."""

    c: int
    a: int
    b: int


@dataclass(frozen=True)
class CongruenceClaim:
    """f(an + b) == 0, or == c * f(a'n + b'), modulo M for n in 0..n_range-1."""

    source: str
    a: int
    b: int
    modulus: int
    n_range: int
    rhs: Optional[Relation] = None
    label: str = PROVED

    def __post_init__(self) -> None:
        if self.a < 1 or not 0 <= self.b < self.a:
            raise ContractViolation(f"progression {self.a}n+{self.b} needs a >= 1 and 0 <= b < a")
        if self.modulus < 2:
            raise ContractViolation(f"modulus must be >= 2, got {self.modulus}")
        if self.n_range < 1:
            raise ContractViolation(f"n_range must be >= 1, got {self.n_range}")
        if self.rhs is not None and (self.rhs.a < 1 or not 0 <= self.rhs.b < self.rhs.a):
            raise ContractViolation(f"relation progression {self.rhs.a}n+{self.rhs.b} needs a' >= 1 and 0 <= b' < a'")
        if self.label not in (PROVED, EMPIRICAL):
            raise ContractViolation(f"label must be '{PROVED}' or '{EMPIRICAL}', got {self.label!r}")

    def needed_order(self, n_range: Optional[int] = None) -> int:
        last = (self.n_range if n_range is None else n_range) - 1
        need = self.a * last + self.b
        if self.rhs is not None:
            need = max(need, self.rhs.a * last + self.rhs.b)
        return need

    def max_instances(self, order: int) -> int:
        """Largest n_range whose instances all fit within ``order``."""
        count = (order - self.b) // self.a + 1 if order >= self.b else 0
        if self.rhs is not None:
            rhs_count = (order - self.rhs.b) // self.rhs.a + 1 if order >= self.rhs.b else 0
            count = min(count, rhs_count)
        return max(count, 0)

    def with_n_range(self, n_range: int) -> "CongruenceClaim":
        return CongruenceClaim(self.source, self.a, self.b, self.modulus, n_range, self.rhs, self.label)

    def describe(self) -> str:
        lhs = f"{self.source}({self.a}n+{self.b})"
        rhs = "0" if self.rhs is None else f"{self.rhs.c}*{self.source}({self.rhs.a}n+{self.rhs.b})"
        return f"{lhs} == {rhs} (mod {self.modulus})"

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "source": self.source,
            "a": str(self.a),
            "b": str(self.b),
            "modulus": str(self.modulus),
            "n_range": str(self.n_range),
            "label": self.label,
        }
        if self.rhs is not None:
            data["rhs"] = {"c": str(self.rhs.c), "a": str(self.rhs.a), "b": str(self.rhs.b)}
        return data

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "CongruenceClaim":
        rhs = data.get("rhs")
        relation = Relation(int(rhs["c"]), int(rhs["a"]), int(rhs["b"])) if rhs else None
        return cls(
            source=str(data.get("source", "cphi6")),
            a=int(data["a"]),
            b=int(data["b"]),
            modulus=int(data["modulus"]),
            n_range=int(data["n_range"]),
            rhs=relation,
            label=str(data.get("label", PROVED)),
        )
