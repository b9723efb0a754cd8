"""The proof ledger: named identity, congruence and golden-value entries.

A ledger file is JSON::

    {
      "version": "1",
      "definitions": {"I": <expr>, ...},
      "entries": [
        {"kind": "identity", "name": ..., "lhs": <expr>, "rhs": <expr>,
         "mode": "exact" | {"mod": M}, "order": N, "quick_order": n},
        {"kind": "congruence", "name": ..., "source": "cphi6", "a": ..., ...},
        {"kind": "golden", "name": ..., "source": "cphi6", "n": ...,
         "factors": [["2", 1], ...], "p": "3", "exponent": 5}
      ]
    }

Expressions are trees of ``{"op": ...}`` nodes understood by the
constructor registry, plus ``{"op": "ref", "name": ...}`` pointing into
``definitions``.
"""
from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Dict, List, Optional, Tuple, Union

from ..core.errors import LedgerError, QphiError
from ..core.series import EXACT, CoefficientRing
from .claims import CongruenceClaim

IDENTITY = "identity"
CONGRUENCE = "congruence"
GOLDEN = "golden"

_ORACLE_SOURCE = re.compile(r"^cphi([1-9])$")


@dataclass(frozen=True)
class IdentityEntry:
    name: str
    lhs: Dict[str, Any]
    rhs: Dict[str, Any]
    modulus: Optional[int]
    order: int
    quick_order: Optional[int] = None
    kind: str = field(default=IDENTITY, init=False)

    @property
    def exact(self) -> bool:
        return self.modulus is None

    def mode_label(self) -> str:
        return "exact" if self.modulus is None else f"mod {self.modulus}"

    def ring(self, base_modulus: int) -> CoefficientRing:
        """Ring both sides are evaluated in; comparison is then modulo ``modulus``."""
        if self.modulus is None:
            return EXACT
        return congruence_ring(self.modulus, base_modulus)


@dataclass(frozen=True)
class CongruenceEntry:
    name: str
    claim: CongruenceClaim
    kind: str = field(default=CONGRUENCE, init=False)


@dataclass(frozen=True)
class GoldenEntry:
    """source[n] equals the product of ``factors`` and v_p of it is ``exponent``."""

    name: str
    source: str
    n: int
    factors: Tuple[Tuple[int, int], ...]
    p: int
    exponent: int
    kind: str = field(default=GOLDEN, init=False)

    @property
    def expected(self) -> int:
        value = 1
        for base, e in self.factors:
            value *= base ** e
        return value


Entry = Union[IdentityEntry, CongruenceEntry, GoldenEntry]


def congruence_ring(modulus: int, base_modulus: int) -> CoefficientRing:
    """Z/base when the modulus divides it (so one series serves every such claim), else Z/modulus."""
    if base_modulus % modulus == 0:
        return CoefficientRing.mod(base_modulus)
    return CoefficientRing.mod(modulus)


def _positive(data: Dict[str, Any], key: str, name: str, minimum: int = 0) -> int:
    try:
        value = int(data[key])
    except KeyError:
        raise LedgerError(f"entry {name!r} is missing '{key}'") from None
    except (TypeError, ValueError):
        raise LedgerError(f"entry {name!r}: '{key}' must be an integer, got {data[key]!r}") from None
    if value < minimum:
        raise LedgerError(f"entry {name!r}: '{key}' must be >= {minimum}, got {value}")
    return value


def _parse_mode(mode: Any, name: str) -> Optional[int]:
    if mode in (None, "exact"):
        return None
    if isinstance(mode, dict) and "mod" in mode:
        modulus = _positive(mode, "mod", name, minimum=2)
        return modulus
    raise LedgerError(f"entry {name!r}: mode must be 'exact' or {{'mod': M}}, got {mode!r}")


def _parse_entry(data: Dict[str, Any]) -> Entry:
    if not isinstance(data, dict):
        raise LedgerError(f"ledger entry must be an object, got {data!r}")
    name = data.get("name")
    if not name or not isinstance(name, str):
        raise LedgerError(f"ledger entry without a name: {data!r}")
    kind = data.get("kind")
    if kind == IDENTITY:
        for side in ("lhs", "rhs"):
            if not isinstance(data.get(side), dict):
                raise LedgerError(f"entry {name!r}: '{side}' must be an expression object")
        quick = data.get("quick_order")
        return IdentityEntry(
            name=name,
            lhs=data["lhs"],
            rhs=data["rhs"],
            modulus=_parse_mode(data.get("mode"), name),
            order=_positive(data, "order", name),
            quick_order=None if quick is None else _positive(data, "quick_order", name),
        )
    if kind == CONGRUENCE:
        try:
            claim = CongruenceClaim.from_json(data)
        except KeyError as exc:
            raise LedgerError(f"entry {name!r} is missing {exc}") from None
        except (QphiError, TypeError, ValueError) as exc:
            raise LedgerError(f"entry {name!r}: {exc}") from None
        return CongruenceEntry(name=name, claim=claim)
    if kind == GOLDEN:
        raw = data.get("factors")
        if not isinstance(raw, list) or not raw:
            raise LedgerError(f"entry {name!r}: 'factors' must be a non-empty list of [base, exponent]")
        try:
            factors = tuple((int(base), int(e)) for base, e in raw)
        except (TypeError, ValueError):
            raise LedgerError(f"entry {name!r}: malformed factor list {raw!r}") from None
        return GoldenEntry(
            name=name,
            source=str(data.get("source", "cphi6")),
            n=_positive(data, "n", name),
            factors=factors,
            p=_positive(data, "p", name, minimum=2),
            exponent=_positive(data, "exponent", name),
        )
    raise LedgerError(f"entry {name!r}: unknown kind {kind!r}")


@dataclass
class Ledger:
    entries: List[Entry]
    definitions: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    version: str = "1"
    digest: str = ""
    path: str = ""

    def names(self) -> List[str]:
        return [e.name for e in self.entries]

    def get(self, name: str) -> Entry:
        for entry in self.entries:
            if entry.name == name:
                return entry
        raise KeyError(f"Unknown ledger entry: {name}")

    def select(self, names: Optional[List[str]] = None) -> List[Entry]:
        """Entries in ledger order, restricted to ``names`` when given."""
        if not names:
            return list(self.entries)
        missing = [n for n in names if n not in self.names()]
        if missing:
            raise LedgerError(f"unknown ledger entries: {', '.join(missing)}")
        wanted = set(names)
        return [e for e in self.entries if e.name in wanted]

    def source_node(self, source: str) -> Dict[str, Any]:
        """Expression for a coefficient source: a definition, or cphiK for K colors."""
        if source in self.definitions:
            return {"op": "ref", "name": source}
        match = _ORACLE_SOURCE.match(source)
        if match:
            k = int(match.group(1))
            return {"op": "cphi6_gen"} if k == 6 else {"op": "cphi_oracle", "k": k}
        raise LedgerError(f"unknown coefficient source {source!r}")

    def info(self) -> Dict[str, str]:
        return {"path": self.path, "sha256": self.digest, "version": self.version}


def parse_ledger(text: str, path: str = "") -> Ledger:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LedgerError(f"ledger {path or '<text>'} is not valid JSON: {exc}") from None
    if isinstance(data, list):
        data = {"entries": data}
    if not isinstance(data, dict) or not isinstance(data.get("entries"), list):
        raise LedgerError("ledger must be a list of entries or an object with 'entries'")
    definitions = data.get("definitions") or {}
    if not isinstance(definitions, dict) or not all(isinstance(v, dict) for v in definitions.values()):
        raise LedgerError("ledger 'definitions' must map names to expression objects")
    entries = [_parse_entry(item) for item in data["entries"]]
    seen = set()
    for entry in entries:
        if entry.name in seen:
            raise LedgerError(f"duplicate ledger entry: {entry.name}")
        seen.add(entry.name)
    return Ledger(
        entries=entries,
        definitions=definitions,
        version=str(data.get("version", "1")),
        digest=hashlib.sha256(text.encode("utf-8")).hexdigest(),
        path=path,
    )


def load_ledger(path: Optional[str] = None) -> Ledger:
    """Load ``path``, or the ledger shipped with the package."""
    if path is None:
        text = resources.files("qphi.data").joinpath("ledger.json").read_text(encoding="utf-8")
        return parse_ledger(text, path="qphi/data/ledger.json")
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        raise LedgerError(f"cannot read ledger {path}: {exc}") from None
    return parse_ledger(text, path=path)
