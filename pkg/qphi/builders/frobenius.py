"""Generating functions for k-colored generalized Frobenius partitions.

Three independent routes are provided:

* ``cphi_oracle`` - the defining form Theta_k(q) / (q;q)^k, with Theta_k
  counted by lattice-point dynamic programming;
* ``cphi6_gen`` - the closed theta-function formula for k = 6;
* ``cphi6_3n1`` - the closed formula for the 3n+1 subsequence when k = 6.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Dict, Mapping, Optional, TypeVar

import numpy as np

from ..core.errors import ContractViolation
from ..core.series import EXACT, CoefficientRing, Series, inverse, mul, power, shift, substitute_power
from .products import ProductSpec, eta_quotient, pochhammer
from .theta import ThetaKind, theta_sum

MAX_COLORS = 8

V = TypeVar("V")


@dataclass(frozen=True)
class QuadFormTheta:
    k: int
    order: int
    coeffs: Series


def _check_colors(k: int, order: int) -> None:
    if not 1 <= k <= MAX_COLORS:
        raise ContractViolation(f"number of colors must be in 1..{MAX_COLORS}, got {k}")
    if order < 0:
        raise ContractViolation(f"order must be >= 0, got {order}")


def quadform_theta(k: int, order: int) -> QuadFormTheta:
    """Theta series of Q(m) = sum m_i^2 + sum_{i<j} m_i m_j on Z^{k-1}.

    Uses 2Q = s^2 + t with s = sum m_i, t = sum m_i^2, placing one variable
    at a time into a table indexed by (s, t). With L variables still to
    place, the smallest reachable 2Q is t + s^2/(L+1), so states with
    s^2 + (L+1) t > (L+1) 2N are dropped.
    """
    _check_colors(k, order)
    dims = k - 1
    limit = 2 * order
    s_max = math.isqrt(limit * max(dims, 1)) + 1
    width = 2 * s_max + 1
    table = np.zeros((width, limit + 1), dtype=np.int64)
    table[s_max, 0] = 1
    s_axis = np.arange(-s_max, s_max + 1, dtype=np.int64)[:, None]
    t_axis = np.arange(0, limit + 1, dtype=np.int64)[None, :]
    m_max = math.isqrt(limit)
    for placed in range(1, dims + 1):
        remaining = dims - placed
        nxt = np.zeros_like(table)
        for m in range(-m_max, m_max + 1):
            sq = m * m
            lo, hi = max(0, -m), min(width, width - m)
            nxt[lo + m : hi + m, sq:] += table[lo:hi, : limit + 1 - sq]
        keep = s_axis * s_axis + (remaining + 1) * t_axis <= (remaining + 1) * limit
        table = np.where(keep, nxt, 0)
    values = [0] * (order + 1)
    s_idx, t_idx = np.nonzero(table)
    for i, t in zip(s_idx.tolist(), t_idx.tolist()):
        s = i - s_max
        twice = s * s + t
        if twice <= limit:
            values[twice // 2] += int(table[i, t])
    return QuadFormTheta(k=k, order=order, coeffs=Series.from_coeffs(values, EXACT, order))


def quadform_theta_bruteforce(k: int, order: int) -> Series:
    """Direct enumeration over the box |m_i| <= sqrt(2N); small N only."""
    _check_colors(k, order)
    bound = math.isqrt(2 * order)
    values = [0] * (order + 1)
    rng = range(-bound, bound + 1)
    for vec in itertools.product(rng, repeat=k - 1):
        s = sum(vec)
        q = (s * s + sum(m * m for m in vec)) // 2
        if q <= order:
            values[q] += 1
    return Series.from_coeffs(values, EXACT, order)


def partition_power(k: int, order: int, ring: CoefficientRing = EXACT) -> Series:
    """1/(q;q)_inf^k, the k-colored partition generating function."""
    return power(inverse(pochhammer(1, 1, order, ring)), k)


def cphi_oracle(k: int, order: int, ring: CoefficientRing = EXACT) -> Series:
    theta = quadform_theta(k, order).coeffs
    if not ring.is_exact:
        theta = Series.from_coeffs(theta.coeffs, ring, order)
    return mul(theta, partition_power(k, order, ring))


def cphi6_gen(order: int, ring: CoefficientRing = EXACT) -> Series:
    """sum cphi_6(n) q^n from

    (phi^3(q) phi(q^2) phi(q^6) + 24 q psi^3(q) psi(q^2) psi(q^3)
     + 4 q^2 phi^3(q) psi(q^4) psi(q^12)) / (q;q)^6
    """
    if order < 0:
        raise ContractViolation(f"order must be >= 0, got {order}")
    phi = theta_sum(ThetaKind.PHI, order, ring)
    psi = theta_sum(ThetaKind.PSI, order, ring)

    def at(f: Series, m: int) -> Series:
        return substitute_power(f.truncate(order // m), m, order)

    phi3 = power(phi, 3)
    first = mul(mul(phi3, at(phi, 2)), at(phi, 6))
    if order >= 1:
        low = order - 1
        second = shift(mul(mul(power(psi.truncate(low), 3), at(psi, 2).truncate(low)), at(psi, 3).truncate(low)), 1, order) * 24
    else:
        second = Series.zero(order, ring)
    if order >= 2:
        low = order - 2
        third = shift(mul(mul(phi3.truncate(low), at(psi, 4).truncate(low)), at(psi, 12).truncate(low)), 2, order) * 4
    else:
        third = Series.zero(order, ring)
    return mul(first + second + third, partition_power(6, order, ring))


# Literal constants of the 3n+1 formula, grouped by bracket.
THREE_N_PLUS_ONE_CONSTANTS: Dict[str, int] = {
    "outer": 9,
    "first_a5": 2,
    "first_a2": 189,
    "second_a6": 2,
    "second_a3": 378,
    "second_c6": 1458,
    "third_a5": 36,
    "third_a2": 1944,
}

# c = (q^3;q^3)^3 / (q;q); the c-powers are kept apart and multiplied into
# each prefactor where the term needs them.
THREE_N_PLUS_ONE_PREFACTORS: Dict[str, ProductSpec] = {
    "first": ProductSpec.eta((2, 5), (3, 6), (1, -22), (4, -2)),
    "second": ProductSpec.eta((3, 9), (4, 1), (6, 2), (1, -23), (2, -1), (12, -1)),
    "third": ProductSpec.eta((3, 9), (12, 2), (1, -23), (6, -1)),
    "c1": ProductSpec.eta((3, 3), (1, -1)),
    "c3": ProductSpec.eta((3, 9), (1, -3)),
    "c4": ProductSpec.eta((3, 12), (1, -4)),
    "c6": ProductSpec.eta((3, 18), (1, -6)),
}


def _override(defaults: Mapping[str, V], given: Optional[Mapping[str, V]], what: str) -> Dict[str, V]:
    merged = dict(defaults)
    if given:
        unknown = set(given) - set(merged)
        if unknown:
            raise ContractViolation(f"unknown 3n+1 {what}: {sorted(unknown)}")
        merged.update(given)
    return merged


def cphi6_3n1(
    order: int,
    ring: CoefficientRing = EXACT,
    constants: Optional[Mapping[str, int]] = None,
    prefactors: Optional[Mapping[str, ProductSpec]] = None,
) -> Series:
    """sum cphi_6(3n+1) q^n, assembled term by term.

    9 * ( F1 (2 a^5 c + 189 q a^2 c^4)
        + F2 (2 a^6 + 378 q a^3 c^3 + 1458 q^2 c^6)
        - F3 (36 q a^5 c + 1944 q^2 a^2 c^4) )

    with a = a(q), c = (q^3;q^3)^3/(q;q) and the eta-quotient prefactors
    F1, F2, F3. ``constants`` overrides any of the literal coefficients and
    ``prefactors`` any of the eta quotients (F1..F3 and the c-powers).
    """
    if order < 0:
        raise ContractViolation(f"order must be >= 0, got {order}")
    k = {name: int(v) for name, v in _override(THREE_N_PLUS_ONE_CONSTANTS, constants, "constants").items()}
    p = _override(THREE_N_PLUS_ONE_PREFACTORS, prefactors, "prefactors")

    a = theta_sum(ThetaKind.A, order, ring)
    a2 = power(a, 2)
    a3 = mul(a2, a)
    a5 = mul(a3, a2)
    a6 = mul(a3, a3)

    def eta(*names: str) -> Series:
        spec = ProductSpec()
        for name in names:
            spec = spec * p[name]
        return eta_quotient(spec, order, ring)

    def q_times(f: Series, j: int) -> Series:
        if order < j:
            return Series.zero(order, ring)
        return shift(f.truncate(order - j), j, order)

    first = mul(eta("first", "c1"), a5) * k["first_a5"] + q_times(mul(eta("first", "c4"), a2), 1) * k["first_a2"]
    second = (
        mul(eta("second"), a6) * k["second_a6"]
        + q_times(mul(eta("second", "c3"), a3), 1) * k["second_a3"]
        + q_times(eta("second", "c6"), 2) * k["second_c6"]
    )
    third = q_times(mul(eta("third", "c1"), a5), 1) * k["third_a5"] + q_times(mul(eta("third", "c4"), a2), 2) * k["third_a2"]
    return (first + second - third) * k["outer"]
