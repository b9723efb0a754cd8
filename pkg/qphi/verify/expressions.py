from __future__ import annotations

from typing import Any, Dict, Optional, Tuple

from ..builders.builtin import default_registry
from ..core.cache import SeriesMemo
from ..core.errors import InsufficientOrder, LedgerError
from ..core.registry import ConstructorRegistry, node_key
from ..core.series import CoefficientRing, Series


class ExpressionEvaluator:
    """Evaluates ledger expression trees at a requested order and ring.

    Each node asks its children for exactly the order it needs (an
    extraction at (m, r) asks for m*N + r, a substitution q -> q^m for
    N // m). Named ``ref`` nodes resolve through ``definitions``.
    """

    def __init__(
        self,
        registry: Optional[ConstructorRegistry] = None,
        definitions: Optional[Dict[str, Dict[str, Any]]] = None,
        memo: Optional[SeriesMemo] = None,
    ) -> None:
        self.registry = registry or default_registry()
        self.definitions = dict(definitions or {})
        self.memo = memo if memo is not None else SeriesMemo()

    def evaluate(self, node: Dict[str, Any], order: int, ring: CoefficientRing, _refs: Tuple[str, ...] = ()) -> Series:
        if not isinstance(node, dict) or "op" not in node:
            raise LedgerError(f"expression must be an object with an 'op', got {node!r}")
        if order < 0:
            raise InsufficientOrder(f"negative order {order} requested for op {node['op']}")
        if node["op"] == "ref":
            name = node.get("name")
            if set(node) - {"op", "name"}:
                raise LedgerError(f"unexpected parameter for ref {name!r}")
            if name not in self.definitions:
                raise LedgerError(f"undefined series reference: {name!r}")
            if name in _refs:
                raise LedgerError(f"circular series reference: {' -> '.join(_refs + (name,))}")
            return self.evaluate(self.definitions[name], order, ring, _refs + (name,))

        key = node_key(node)
        cached = self.memo.get(key, order, ring)
        if cached is not None:
            return cached
        result = self.registry.call(node, order, ring, lambda child, n: self.evaluate(child, n, ring, _refs))
        if result.order != order:
            result = result.truncate(order)
        self.memo.put(key, result)
        return result
