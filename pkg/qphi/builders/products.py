"""Pochhammer products, eta quotients and the Jacobi cube expansion."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Sequence, Tuple

from ..core.cache import SeriesMemo
from ..core.errors import ContractViolation
from ..core.series import EXACT, CoefficientRing, Series, inverse, mul, power

Factor = Tuple[int, int, int]

# Shared by every caller in the process; results never depend on it.
PRODUCT_MEMO = SeriesMemo()


@dataclass(frozen=True)
class ProductSpec:
    """A formal eta quotient: prod (q^a; q^b)_inf^e over canonical factors.

    Canonical form is built at construction: 1 <= a <= b, factors with the
    same (a, b) merged, zero exponents dropped, sorted by (b, a).
    """

    factors: Tuple[Factor, ...] = ()

    @classmethod
    def of(cls, factors: Iterable[Sequence[int]]) -> "ProductSpec":
        merged: Dict[Tuple[int, int], int] = {}
        for item in factors:
            if len(item) != 3:
                raise ContractViolation(f"factor must be (a, b, e), got {item!r}")
            a, b, e = (int(x) for x in item)
            if not 1 <= a <= b:
                raise ContractViolation(f"(q^{a}; q^{b}) is not canonical: need 1 <= a <= b")
            if e == 0:
                continue
            merged[(a, b)] = merged.get((a, b), 0) + e
        canonical = tuple(sorted(((a, b, e) for (a, b), e in merged.items() if e != 0), key=lambda f: (f[1], f[0])))
        return cls(canonical)

    @classmethod
    def eta(cls, *pairs: Tuple[int, int]) -> "ProductSpec":
        """Shorthand for quotients of (q^k; q^k)_inf: ``eta((1, -2), (2, 5))``."""
        return cls.of((k, k, e) for k, e in pairs)

    def __mul__(self, other: "ProductSpec") -> "ProductSpec":
        return ProductSpec.of(self.factors + other.factors)

    def negated(self) -> "ProductSpec":
        return ProductSpec.of((a, b, -e) for a, b, e in self.factors)

    def to_json(self) -> List[List[int]]:
        return [list(f) for f in self.factors]

    @classmethod
    def from_json(cls, data: Any) -> "ProductSpec":
        if not isinstance(data, list):
            raise ContractViolation(f"product spec must be a list of [a, b, e], got {data!r}")
        return cls.of(data)


def _pentagonal(order: int) -> List[int]:
    # (q;q)_inf = sum_k (-1)^k q^{k(3k-1)/2}, k over Z
    values = [0] * (order + 1)
    k = 0
    while True:
        hit = False
        for j in ((k, -k) if k else (0,)):
            exp = j * (3 * j - 1) // 2
            if exp <= order:
                values[exp] += -1 if k & 1 else 1
                hit = True
        if not hit:
            return values
        k += 1


def _direct(a: int, b: int, order: int, ring: CoefficientRing) -> List[int]:
    values = [1] + [0] * order
    j = a
    while j <= order:
        # multiply in place by (1 - q^j); older entries are read before they are overwritten
        values[j:] = [ring.normalize(x - y) for x, y in zip(values[j:], values)]
        j += b
    return values


def pochhammer(a: int, b: int, order: int, ring: CoefficientRing = EXACT, fast: bool = True) -> Series:
    """(q^a; q^b)_inf truncated at ``order``.

    (q;q)_inf goes through Euler's pentagonal-number expansion unless
    ``fast`` is False; every other product multiplies its factors out.
    """
    if not 1 <= a <= b:
        raise ContractViolation(f"(q^{a}; q^{b}) is not canonical: need 1 <= a <= b")
    if order < 0:
        raise ContractViolation(f"order must be >= 0, got {order}")
    key = ("pochhammer", a, b, fast)
    cached = PRODUCT_MEMO.get(key, order, ring)
    if cached is not None:
        return cached
    if fast and a == 1 and b == 1:
        values = _pentagonal(order)
    else:
        values = _direct(a, b, order, ring)
    result = Series.from_coeffs(values, ring, order)
    PRODUCT_MEMO.put(key, result)
    return result


def eta_quotient(spec: ProductSpec, order: int, ring: CoefficientRing = EXACT) -> Series:
    """Product of pochhammer(a, b)^e; negative exponents use one inverse per factor."""
    key = ("eta", spec.factors)
    cached = PRODUCT_MEMO.get(key, order, ring)
    if cached is not None:
        return cached
    result = Series.one(order, ring)
    for a, b, e in spec.factors:
        base = pochhammer(a, b, order, ring)
        if e < 0:
            inv_key = ("pochhammer-inverse", a, b)
            inv = PRODUCT_MEMO.get(inv_key, order, ring)
            if inv is None:
                inv = inverse(base)
                PRODUCT_MEMO.put(inv_key, inv)
            base = inv
        result = mul(result, power(base, abs(e)))
    PRODUCT_MEMO.put(key, result)
    return result


def jacobi_cube(order: int, ring: CoefficientRing = EXACT) -> Series:
    """sum_{n>=0} (-1)^n (2n+1) q^{n(n+1)/2}, i.e. (q;q)_inf^3 by Jacobi's identity."""
    if order < 0:
        raise ContractViolation(f"order must be >= 0, got {order}")
    values = [0] * (order + 1)
    n = 0
    while n * (n + 1) // 2 <= order:
        values[n * (n + 1) // 2] = (-1) ** n * (2 * n + 1)
        n += 1
    return Series.from_coeffs(values, ring, order)
