"""Named theta series: phi, psi, the cubic theta a(q), X and Y.

Each is available from its defining sum (``theta_sum``) and from an
independent second representation (``theta_alt``): an eta quotient for
phi, psi, X, Y and the Lambert series for a(q).
"""
from __future__ import annotations

import math
from enum import Enum
from typing import Dict, List, Optional, Tuple

from ..core.errors import ContractViolation
from ..core.series import EXACT, CoefficientRing, Series, negate_variable, shift, substitute_power
from .products import ProductSpec, eta_quotient


class ThetaKind(str, Enum):
    PHI = "phi"
    PSI = "psi"
    A = "a"
    X = "X"
    Y = "Y"

    @classmethod
    def parse(cls, tag: str) -> "ThetaKind":
        try:
            return cls(tag)
        except ValueError:
            raise ContractViolation(f"unknown theta kind {tag!r}; expected one of {[k.value for k in cls]}") from None


PRODUCT_FORMS: Dict[ThetaKind, ProductSpec] = {
    ThetaKind.PHI: ProductSpec.eta((2, 5), (1, -2), (4, -2)),
    ThetaKind.PSI: ProductSpec.eta((2, 2), (1, -1)),
    ThetaKind.X: ProductSpec.eta((2, 2), (3, 1), (12, 1), (1, -1), (4, -1), (6, -1)),
    ThetaKind.Y: ProductSpec.eta((2, 1), (3, 2), (1, -1), (6, -1)),
}

# phi(-q) and psi(-q)
PHI_NEG_PRODUCT = ProductSpec.eta((1, 2), (2, -1))
PSI_NEG_PRODUCT = ProductSpec.eta((1, 1), (4, 1), (2, -1))

NEG_PRODUCT_FORMS: Dict[ThetaKind, ProductSpec] = {
    ThetaKind.PHI: PHI_NEG_PRODUCT,
    ThetaKind.PSI: PSI_NEG_PRODUCT,
}


def _index_bound(order: int) -> int:
    return math.isqrt(order) + 1


def _sum_over_integers(exponent, order: int) -> List[int]:
    # exponent(n) is a quadratic with positive leading coefficient
    values = [0] * (order + 1)
    bound = _index_bound(order)
    for n in range(-bound, bound + 1):
        e = exponent(n)
        if 0 <= e <= order:
            values[e] += 1
    return values


def _a_lattice(order: int) -> List[int]:
    values = [0] * (order + 1)
    # m^2 + mn + n^2 >= 3n^2/4, so |n|, |m| <= 2*sqrt(N/3) < 2*sqrt(N)
    bound = 2 * math.isqrt(order) + 2
    for m in range(-bound, bound + 1):
        for n in range(-bound, bound + 1):
            e = m * m + m * n + n * n
            if e <= order:
                values[e] += 1
    return values


def _a_lambert(order: int) -> List[int]:
    # 1 + 6 sum_j chi(j) q^j / (1 - q^j), chi(j) = +1, -1, 0 for j = 1, 2, 0 mod 3
    values = [1] + [0] * order
    for j in range(1, order + 1):
        chi = (0, 1, -1)[j % 3]
        if chi:
            for t in range(j, order + 1, j):
                values[t] += 6 * chi
    return values


def theta_sum(kind: ThetaKind, order: int, ring: CoefficientRing = EXACT) -> Series:
    kind = ThetaKind.parse(kind)
    if order < 0:
        raise ContractViolation(f"order must be >= 0, got {order}")
    if kind is ThetaKind.PHI:
        values = _sum_over_integers(lambda n: n * n, order)
    elif kind is ThetaKind.PSI:
        values = [0] * (order + 1)
        n = 0
        while n * (n + 1) // 2 <= order:
            values[n * (n + 1) // 2] += 1
            n += 1
    elif kind is ThetaKind.X:
        values = _sum_over_integers(lambda n: 3 * n * n + 2 * n, order)
    elif kind is ThetaKind.Y:
        values = _sum_over_integers(lambda n: n * (3 * n + 1) // 2, order)
    else:
        values = _a_lattice(order)
    return Series.from_coeffs(values, ring, order)


def theta_alt(kind: ThetaKind, order: int, ring: CoefficientRing = EXACT) -> Series:
    kind = ThetaKind.parse(kind)
    if order < 0:
        raise ContractViolation(f"order must be >= 0, got {order}")
    if kind is ThetaKind.A:
        return Series.from_coeffs(_a_lambert(order), ring, order)
    return eta_quotient(PRODUCT_FORMS[kind], order, ring)


def eval_at_signed_power(f: Series, sign: int, m: int, order: Optional[int] = None) -> Series:
    """f(q^m) for sign=+1, f(-q^m) for sign=-1.

    For f(-q^m) the coefficient at q^{mn} picks up (-1)^n. ``order``
    defaults to f's order and may go up to m*order(f) + m - 1.
    """
    if sign not in (1, -1):
        raise ContractViolation(f"sign must be +1 or -1, got {sign}")
    base = negate_variable(f) if sign < 0 else f
    return substitute_power(base, m, order)


def theta_alt_signed(kind: ThetaKind, sign: int, m: int, order: int, ring: CoefficientRing = EXACT) -> Series:
    """The alternate form of f(+-q^m) through q^order.

    phi(-q) and psi(-q) have eta quotients of their own; those are expanded
    directly instead of flipping signs in the plain product form.
    """
    kind = ThetaKind.parse(kind)
    if m < 1:
        raise ContractViolation(f"m must be >= 1, got {m}")
    if sign == -1 and kind in NEG_PRODUCT_FORMS:
        return substitute_power(eta_quotient(NEG_PRODUCT_FORMS[kind], order // m, ring), m, order)
    return eval_at_signed_power(theta_alt(kind, order // m, ring), sign, m, order)


def a_cube_root_dissection(order: int, ring: CoefficientRing = EXACT) -> Tuple[Series, Series]:
    """(a(q^3), 6q (q^9;q^9)^3/(q^3;q^3)), both truncated at ``order``; they sum to a(q)."""
    a_low = theta_sum(ThetaKind.A, order // 3, ring)
    first = substitute_power(a_low, 3, order)
    quotient = eta_quotient(ProductSpec.eta((9, 3), (3, -1)), max(order - 1, 0), ring)
    second = shift(quotient, 1, order) * 6
    return first, second
