from __future__ import annotations

from typing import Any, Dict, List, Optional

from ..core.errors import LedgerError
from ..core.registry import ConstructorRegistry, ConstructorSpec, Evaluate
from ..core.series import (
    CoefficientRing,
    Series,
    add,
    extract_progression,
    inverse,
    mul,
    negate,
    negate_variable,
    power,
    scale,
    shift,
    substitute_power,
)
from .frobenius import cphi6_3n1, cphi6_gen, cphi_oracle, quadform_theta
from .products import ProductSpec, eta_quotient, jacobi_cube, pochhammer
from .theta import ThetaKind, a_cube_root_dissection, eval_at_signed_power, theta_alt_signed, theta_sum


def _int(node: Dict[str, Any], key: str, default: Optional[int] = None, minimum: Optional[int] = None) -> int:
    if key not in node:
        if default is None:
            raise LedgerError(f"op {node.get('op')} needs '{key}'")
        return default
    value = node[key]
    try:
        value = int(value)
    except (TypeError, ValueError):
        raise LedgerError(f"op {node.get('op')}: '{key}' must be an integer, got {value!r}") from None
    if minimum is not None and value < minimum:
        raise LedgerError(f"op {node.get('op')}: '{key}' must be >= {minimum}, got {value}")
    return value


def _child(node: Dict[str, Any], key: str = "arg") -> Dict[str, Any]:
    child = node.get(key)
    if not isinstance(child, dict):
        raise LedgerError(f"op {node.get('op')} needs an expression under '{key}'")
    return child


def _children(node: Dict[str, Any]) -> List[Dict[str, Any]]:
    args = node.get("args")
    if not isinstance(args, list) or not args or not all(isinstance(a, dict) for a in args):
        raise LedgerError(f"op {node.get('op')} needs a non-empty list of expressions under 'args'")
    return args


class BuiltinConstructors:
    def __init__(self, registry: ConstructorRegistry) -> None:
        self.registry = registry

    def register_all(self) -> None:
        r = self.registry
        # Leaves
        r.register(ConstructorSpec(name="one", description="The constant series 1.", parameters={}, fn=self._one))
        r.register(ConstructorSpec(name="zero", description="The zero series.", parameters={}, fn=self._zero))
        r.register(ConstructorSpec(name="q", description="The monomial q^k.", parameters={"k": "int"}, fn=self._q))
        r.register(ConstructorSpec(name="eta", description="Eta quotient prod (q^a;q^b)^e.", parameters={"factors": "[[a,b,e],...]"}, fn=self._eta))
        r.register(ConstructorSpec(name="pochhammer", description="(q^a;q^b)_inf.", parameters={"a": "int", "b": "int"}, fn=self._pochhammer))
        r.register(ConstructorSpec(
            name="theta",
            description="Named theta series f(+-q^m), from its sum or its alternate form.",
            parameters={"kind": "phi|psi|a|X|Y", "form": "sum|alt", "sign": "+1|-1", "m": "int"},
            fn=self._theta,
        ))
        r.register(ConstructorSpec(name="jacobi_cube", description="sum (-1)^n (2n+1) q^{n(n+1)/2}.", parameters={}, fn=self._jacobi_cube))
        r.register(ConstructorSpec(name="a_split", description="One half of a(q) = a(q^3) + 6q(q^9;q^9)^3/(q^3;q^3).", parameters={"part": "0|1"}, fn=self._a_split))
        r.register(ConstructorSpec(name="cphi6_gen", description="sum cphi_6(n) q^n from the closed theta formula.", parameters={}, fn=self._cphi6_gen))
        r.register(ConstructorSpec(name="cphi_oracle", description="sum cphi_k(n) q^n from the quadratic-form definition.", parameters={"k": "int"}, fn=self._cphi_oracle))
        r.register(ConstructorSpec(name="cphi6_3n1", description="sum cphi_6(3n+1) q^n from the closed 3n+1 formula.", parameters={"constants": "{name: int}", "prefactors": "{name: [[a,b,e],...]}"}, fn=self._cphi6_3n1))
        r.register(ConstructorSpec(name="quadform_theta", description="Theta series of the k-color quadratic form.", parameters={"k": "int"}, fn=self._quadform_theta))
        # Arithmetic
        r.register(ConstructorSpec(name="add", description="Sum of args.", parameters={"args": "[expr,...]"}, fn=self._add))
        r.register(ConstructorSpec(name="sub", description="args[0] - args[1].", parameters={"args": "[expr, expr]"}, fn=self._sub))
        r.register(ConstructorSpec(name="mul", description="Product of args.", parameters={"args": "[expr,...]"}, fn=self._mul))
        r.register(ConstructorSpec(name="neg", description="-arg.", parameters={"arg": "expr"}, fn=self._neg))
        r.register(ConstructorSpec(name="scale", description="c * arg.", parameters={"c": "int", "arg": "expr"}, fn=self._scale))
        r.register(ConstructorSpec(name="pow", description="arg^k, k >= 0.", parameters={"k": "int", "arg": "expr"}, fn=self._pow))
        r.register(ConstructorSpec(name="shift", description="q^k * arg.", parameters={"k": "int", "arg": "expr"}, fn=self._shift))
        r.register(ConstructorSpec(name="inverse", description="1/arg.", parameters={"arg": "expr"}, fn=self._inverse))
        # Index maps
        r.register(ConstructorSpec(name="extract", description="Coefficients m*n + r of arg, reindexed by n.", parameters={"m": "int", "r": "int", "arg": "expr"}, fn=self._extract))
        r.register(ConstructorSpec(name="subst", description="arg(q^m).", parameters={"m": "int", "arg": "expr"}, fn=self._subst))
        r.register(ConstructorSpec(name="negvar", description="arg(-q).", parameters={"arg": "expr"}, fn=self._negvar))
        r.register(ConstructorSpec(name="signed", description="arg(+-q^m).", parameters={"sign": "+1|-1", "m": "int", "arg": "expr"}, fn=self._signed))

    # Leaves
    def _one(self, node: Dict[str, Any], order: int, ring: CoefficientRing, evaluate: Evaluate) -> Series:
        return Series.one(order, ring)

    def _zero(self, node: Dict[str, Any], order: int, ring: CoefficientRing, evaluate: Evaluate) -> Series:
        return Series.zero(order, ring)

    def _q(self, node: Dict[str, Any], order: int, ring: CoefficientRing, evaluate: Evaluate) -> Series:
        return Series.monomial(_int(node, "k", minimum=0), order, ring)

    def _eta(self, node: Dict[str, Any], order: int, ring: CoefficientRing, evaluate: Evaluate) -> Series:
        return eta_quotient(ProductSpec.from_json(node.get("factors")), order, ring)

    def _pochhammer(self, node: Dict[str, Any], order: int, ring: CoefficientRing, evaluate: Evaluate) -> Series:
        return pochhammer(_int(node, "a"), _int(node, "b"), order, ring)

    def _theta(self, node: Dict[str, Any], order: int, ring: CoefficientRing, evaluate: Evaluate) -> Series:
        kind = ThetaKind.parse(node.get("kind", ""))
        form = node.get("form", "sum")
        if form not in ("sum", "alt"):
            raise LedgerError(f"theta form must be 'sum' or 'alt', got {form!r}")
        sign = _int(node, "sign", default=1)
        m = _int(node, "m", default=1, minimum=1)
        if form == "alt":
            return theta_alt_signed(kind, sign, m, order, ring)
        return eval_at_signed_power(theta_sum(kind, order // m, ring), sign, m, order)

    def _jacobi_cube(self, node: Dict[str, Any], order: int, ring: CoefficientRing, evaluate: Evaluate) -> Series:
        return jacobi_cube(order, ring)

    def _a_split(self, node: Dict[str, Any], order: int, ring: CoefficientRing, evaluate: Evaluate) -> Series:
        part = _int(node, "part")
        if part not in (0, 1):
            raise LedgerError(f"a_split part must be 0 or 1, got {part}")
        return a_cube_root_dissection(order, ring)[part]

    def _cphi6_gen(self, node: Dict[str, Any], order: int, ring: CoefficientRing, evaluate: Evaluate) -> Series:
        return cphi6_gen(order, ring)

    def _cphi_oracle(self, node: Dict[str, Any], order: int, ring: CoefficientRing, evaluate: Evaluate) -> Series:
        return cphi_oracle(_int(node, "k"), order, ring)

    def _cphi6_3n1(self, node: Dict[str, Any], order: int, ring: CoefficientRing, evaluate: Evaluate) -> Series:
        constants = node.get("constants") or {}
        prefactors = node.get("prefactors") or {}
        if not isinstance(constants, dict) or not isinstance(prefactors, dict):
            raise LedgerError("cphi6_3n1 constants and prefactors must be objects")
        specs = {name: ProductSpec.from_json(factors) for name, factors in prefactors.items()}
        return cphi6_3n1(order, ring, constants, specs)

    def _quadform_theta(self, node: Dict[str, Any], order: int, ring: CoefficientRing, evaluate: Evaluate) -> Series:
        theta = quadform_theta(_int(node, "k"), order).coeffs
        return Series.from_coeffs(theta.coeffs, ring, order)

    # Arithmetic
    def _add(self, node: Dict[str, Any], order: int, ring: CoefficientRing, evaluate: Evaluate) -> Series:
        parts = [evaluate(c, order) for c in _children(node)]
        total = parts[0]
        for p in parts[1:]:
            total = add(total, p)
        return total

    def _sub(self, node: Dict[str, Any], order: int, ring: CoefficientRing, evaluate: Evaluate) -> Series:
        args = _children(node)
        if len(args) != 2:
            raise LedgerError("sub takes exactly two args")
        return add(evaluate(args[0], order), negate(evaluate(args[1], order)))

    def _mul(self, node: Dict[str, Any], order: int, ring: CoefficientRing, evaluate: Evaluate) -> Series:
        parts = [evaluate(c, order) for c in _children(node)]
        total = parts[0]
        for p in parts[1:]:
            total = mul(total, p)
        return total

    def _neg(self, node: Dict[str, Any], order: int, ring: CoefficientRing, evaluate: Evaluate) -> Series:
        return negate(evaluate(_child(node), order))

    def _scale(self, node: Dict[str, Any], order: int, ring: CoefficientRing, evaluate: Evaluate) -> Series:
        return scale(evaluate(_child(node), order), _int(node, "c"))

    def _pow(self, node: Dict[str, Any], order: int, ring: CoefficientRing, evaluate: Evaluate) -> Series:
        return power(evaluate(_child(node), order), _int(node, "k", minimum=0))

    def _shift(self, node: Dict[str, Any], order: int, ring: CoefficientRing, evaluate: Evaluate) -> Series:
        k = _int(node, "k", minimum=0)
        if k > order:
            return Series.zero(order, ring)
        return shift(evaluate(_child(node), order - k), k, order)

    def _inverse(self, node: Dict[str, Any], order: int, ring: CoefficientRing, evaluate: Evaluate) -> Series:
        return inverse(evaluate(_child(node), order))

    # Index maps
    def _extract(self, node: Dict[str, Any], order: int, ring: CoefficientRing, evaluate: Evaluate) -> Series:
        m = _int(node, "m", minimum=1)
        r = _int(node, "r", minimum=0)
        if r >= m:
            raise LedgerError(f"extract residue {r} must be < {m}")
        return extract_progression(evaluate(_child(node), m * order + r), m, r)

    def _subst(self, node: Dict[str, Any], order: int, ring: CoefficientRing, evaluate: Evaluate) -> Series:
        m = _int(node, "m", minimum=1)
        return substitute_power(evaluate(_child(node), order // m), m, order)

    def _negvar(self, node: Dict[str, Any], order: int, ring: CoefficientRing, evaluate: Evaluate) -> Series:
        return negate_variable(evaluate(_child(node), order))

    def _signed(self, node: Dict[str, Any], order: int, ring: CoefficientRing, evaluate: Evaluate) -> Series:
        m = _int(node, "m", minimum=1)
        return eval_at_signed_power(evaluate(_child(node), order // m), _int(node, "sign"), m, order)


def default_registry() -> ConstructorRegistry:
    registry = ConstructorRegistry()
    BuiltinConstructors(registry).register_all()
    return registry
