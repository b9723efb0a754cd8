from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional

from .errors import LedgerError
from .series import CoefficientRing, Series

# fn(node, order, ring, evaluate) -> Series; evaluate(child_node, order) recurses.
Evaluate = Callable[[Dict[str, Any], int], Series]
ConstructorFunc = Callable[[Dict[str, Any], int, CoefficientRing, Evaluate], Series]


@dataclass
class ConstructorSpec:
    name: str
    description: str
    parameters: Optional[Dict[str, str]] = None
    fn: Optional[ConstructorFunc] = None


class ConstructorRegistry:
    """Named series constructors that expression trees refer to by ``op``."""

    def __init__(self) -> None:
        self._ops: Dict[str, ConstructorSpec] = {}

    def register(self, spec: ConstructorSpec) -> None:
        if spec.name in self._ops:
            raise ValueError(f"Constructor already registered: {spec.name}")
        if spec.fn is None:
            raise ValueError(f"Constructor function is required: {spec.name}")
        self._ops[spec.name] = spec

    def _validate(self, name: str, node: Dict[str, Any]) -> Optional[str]:
        params = self.get_spec(name).parameters or {}
        for key in node:
            if key != "op" and key not in params:
                return f"unexpected parameter '{key}' for op {name}"
        return None

    def call(self, node: Dict[str, Any], order: int, ring: CoefficientRing, evaluate: Evaluate) -> Series:
        name = node.get("op")
        if name not in self._ops:
            raise KeyError(f"Unknown constructor: {name}")
        err = self._validate(name, node)
        if err:
            raise LedgerError(err)
        return self._ops[name].fn(node, order, ring, evaluate)

    def list_specs(self) -> List[Dict[str, Any]]:
        return [
            {
                "name": spec.name,
                "description": spec.description,
                "parameters": spec.parameters or {},
            }
            for spec in self._ops.values()
        ]

    def get_spec(self, name: str) -> ConstructorSpec:
        if name not in self._ops:
            raise KeyError(f"Unknown constructor: {name}")
        return self._ops[name]

    def __contains__(self, name: str) -> bool:
        return name in self._ops


def node_key(node: Dict[str, Any]) -> str:
    """Canonical text of an expression node, used as a memo key."""
    return json.dumps(node, sort_keys=True, separators=(",", ":"))
