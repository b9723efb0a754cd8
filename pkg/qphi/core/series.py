"""Truncated formal power series over Z or Z/MZ.

A :class:`Series` of order ``N`` knows the coefficients of ``q^0`` through
``q^N`` inclusive. Everything here is a pure function of its inputs; series
are immutable, so they can be shared freely between worker threads.

Modular convolutions run through numpy with int64 accumulators whenever the
worst-case sum ``(M-1)^2 * (N+1)`` cannot overflow, otherwise through plain
Python integers. Both paths are exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import ContractViolation, InsufficientOrder, NonInvertible, RingMismatch

_INT64_SAFE = 2**62


@dataclass(frozen=True)
class CoefficientRing:
    """Z when ``modulus`` is None, Z/MZ otherwise (representatives in [0, M))."""

    modulus: Optional[int] = None

    def __post_init__(self) -> None:
        if self.modulus is not None:
            if not isinstance(self.modulus, int) or isinstance(self.modulus, bool):
                raise ContractViolation(f"modulus must be an int, got {self.modulus!r}")
            if self.modulus < 2:
                raise ContractViolation(f"modulus must be >= 2, got {self.modulus}")

    @classmethod
    def exact(cls) -> "CoefficientRing":
        return cls(None)

    @classmethod
    def mod(cls, modulus: int) -> "CoefficientRing":
        return cls(int(modulus))

    @classmethod
    def parse(cls, text: str) -> "CoefficientRing":
        """Parse the CLI spelling: ``exact`` or ``mod:M``."""
        value = (text or "").strip().lower()
        if value in {"exact", "z"}:
            return cls.exact()
        if value.startswith("mod:"):
            try:
                return cls.mod(int(value[4:]))
            except ValueError:
                raise ContractViolation(f"bad ring modulus: {text!r}") from None
        raise ContractViolation(f"unknown ring {text!r}; expected 'exact' or 'mod:M'")

    @property
    def is_exact(self) -> bool:
        return self.modulus is None

    @property
    def label(self) -> str:
        return "Z" if self.modulus is None else f"Z/{self.modulus}Z"

    def normalize(self, value: int) -> int:
        return int(value) if self.modulus is None else int(value) % self.modulus

    def is_unit(self, value: int) -> bool:
        if self.modulus is None:
            return value in (1, -1)
        return gcd(int(value), self.modulus) == 1

    def unit_inverse(self, value: int) -> int:
        if not self.is_unit(value):
            raise NonInvertible(f"{value} is not a unit in {self.label}")
        if self.modulus is None:
            return int(value)
        return pow(int(value), -1, self.modulus)

    def reduce(self, value: int, modulus: int) -> int:
        """Image of ``value`` under the reduction map into Z/modulus Z."""
        if self.modulus is not None and self.modulus % modulus != 0:
            raise ContractViolation(f"cannot reduce {self.label} modulo {modulus}")
        return int(value) % modulus

    def to_json(self) -> Union[str, Dict[str, int]]:
        return "Z" if self.modulus is None else {"mod": self.modulus}

    @classmethod
    def from_json(cls, data: Any) -> "CoefficientRing":
        if data == "Z":
            return cls.exact()
        if isinstance(data, dict) and "mod" in data:
            return cls.mod(int(data["mod"]))
        raise ContractViolation(f"bad ring description: {data!r}")


EXACT = CoefficientRing.exact()


@dataclass(frozen=True)
class Series:
    ring: CoefficientRing
    coeffs: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) == 0:
            raise ContractViolation("a series needs at least its constant term")

    # Construction
    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], ring: CoefficientRing = EXACT, order: Optional[int] = None) -> "Series":
        values = [ring.normalize(c) for c in coeffs]
        if order is None:
            order = len(values) - 1
        if order < 0:
            raise ContractViolation(f"order must be >= 0, got {order}")
        if len(values) < order + 1:
            values.extend([0] * (order + 1 - len(values)))
        return cls(ring, tuple(values[: order + 1]))

    @classmethod
    def zero(cls, order: int, ring: CoefficientRing = EXACT) -> "Series":
        return cls.from_coeffs([], ring, order)

    @classmethod
    def one(cls, order: int, ring: CoefficientRing = EXACT) -> "Series":
        return cls.from_coeffs([1], ring, order)

    @classmethod
    def monomial(cls, power: int, order: int, ring: CoefficientRing = EXACT, coefficient: int = 1) -> "Series":
        if power < 0:
            raise ContractViolation("negative powers of q are not power series")
        values = [0] * (order + 1)
        if power <= order:
            values[power] = coefficient
        return cls.from_coeffs(values, ring, order)

    # Basic accessors
    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, index: int) -> int:
        if index < 0 or index > self.order:
            raise InsufficientOrder(f"coefficient {index} outside 0..{self.order}")
        return self.coeffs[index]

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise InsufficientOrder(f"cannot extend a series of order {self.order} to {order}")
        return Series(self.ring, self.coeffs[: order + 1])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    # Operators delegate to the module functions below
    def __add__(self, other: Union["Series", int]) -> "Series":
        return add(self, _lift(other, self))

    __radd__ = __add__

    def __sub__(self, other: Union["Series", int]) -> "Series":
        return add(self, negate(_lift(other, self)))

    def __rsub__(self, other: int) -> "Series":
        return add(_lift(other, self), negate(self))

    def __neg__(self) -> "Series":
        return negate(self)

    def __mul__(self, other: Union["Series", int]) -> "Series":
        if isinstance(other, Series):
            return mul(self, other)
        return scale(self, other)

    def __rmul__(self, other: int) -> "Series":
        return scale(self, other)

    def __pow__(self, k: int) -> "Series":
        return power(self, k)

    def __repr__(self) -> str:
        shown = ", ".join(str(c) for c in self.coeffs[:8])
        tail = ", ..." if self.order >= 8 else ""
        return f"Series({self.ring.label}, order={self.order}, [{shown}{tail}])"

    # Serialization
    def to_json(self) -> Dict[str, Any]:
        return {"ring": self.ring.to_json(), "order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @staticmethod
    def from_json(data: Dict[str, Any]) -> "Series":
        ring = CoefficientRing.from_json(data["ring"])
        coeffs = [int(c) for c in data["coeffs"]]
        order = int(data["order"])
        if len(coeffs) != order + 1:
            raise ContractViolation(f"series claims order {order} but carries {len(coeffs)} coefficients")
        return Series.from_coeffs(coeffs, ring, order)


def _lift(value: Union[Series, int], like: Series) -> Series:
    if isinstance(value, Series):
        return value
    return Series.monomial(0, like.order, like.ring, coefficient=int(value))


def _check_ring(a: Series, b: Series) -> None:
    if a.ring != b.ring:
        raise RingMismatch(f"ring mismatch: {a.ring.label} vs {b.ring.label}")


def _numpy_ok(ring: CoefficientRing, length: int) -> bool:
    m = ring.modulus
    return m is not None and (m - 1) * (m - 1) * max(length, 1) < _INT64_SAFE


def _convolve(x: Sequence[int], y: Sequence[int], length: int, ring: CoefficientRing) -> List[int]:
    if _numpy_ok(ring, length):
        prod = np.convolve(np.asarray(x[:length], dtype=np.int64), np.asarray(y[:length], dtype=np.int64))
        return [int(v) for v in (prod[:length] % ring.modulus)]
    # Iterate over the sparser operand.
    if sum(1 for v in x[:length] if v) > sum(1 for v in y[:length] if v):
        x, y = y, x
    out = [0] * length
    for i, xi in enumerate(x[:length]):
        if not xi:
            continue
        window = y[: length - i]
        out[i:] = [o + xi * yj for o, yj in zip(out[i:], window)]
    return out


# Operations
def add(a: Series, b: Series) -> Series:
    _check_ring(a, b)
    n = min(a.order, b.order) + 1
    return Series.from_coeffs((x + y for x, y in zip(a.coeffs[:n], b.coeffs[:n])), a.ring, n - 1)


def negate(a: Series) -> Series:
    return Series.from_coeffs((-c for c in a.coeffs), a.ring, a.order)


def scale(a: Series, c: int) -> Series:
    c = int(c)
    return Series.from_coeffs((c * x for x in a.coeffs), a.ring, a.order)


def shift(a: Series, k: int, order: Optional[int] = None) -> Series:
    """Multiply by ``q^k``; the result keeps ``order`` (default: a's order)."""
    if k < 0:
        raise ContractViolation("shift needs k >= 0")
    n = a.order if order is None else order
    if n > a.order + k:
        raise InsufficientOrder(f"q^{k} times a series of order {a.order} is only known through {a.order + k}")
    return Series.from_coeffs([0] * k + list(a.coeffs), a.ring, n)


def mul(a: Series, b: Series) -> Series:
    _check_ring(a, b)
    n = min(a.order, b.order) + 1
    return Series.from_coeffs(_convolve(a.coeffs, b.coeffs, n, a.ring), a.ring, n - 1)


def power(a: Series, k: int) -> Series:
    """``a**k`` for k >= 0 by repeated squaring."""
    if k < 0:
        raise ContractViolation("power needs k >= 0; invert first")
    result = Series.one(a.order, a.ring)
    base = a
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def inverse(a: Series) -> Series:
    """Multiplicative inverse through order N.

    b_0 = a_0^{-1}, b_n = -a_0^{-1} * sum_{j=1..n} a_j b_{n-j}.
    """
    ring = a.ring
    inv0 = ring.unit_inverse(a.coeffs[0])
    n = a.order + 1
    if _numpy_ok(ring, n):
        m = ring.modulus
        av = np.asarray(a.coeffs, dtype=np.int64)
        bv = np.zeros(n, dtype=np.int64)
        bv[0] = inv0
        for i in range(1, n):
            s = int(np.dot(av[1 : i + 1], bv[i - 1 :: -1]))
            bv[i] = (-inv0 * s) % m
        return Series.from_coeffs((int(v) for v in bv), ring, n - 1)
    support = [(j, c) for j, c in enumerate(a.coeffs) if j and c]
    b = [inv0] + [0] * (n - 1)
    for i in range(1, n):
        s = 0
        for j, c in support:
            if j > i:
                break
            s += c * b[i - j]
        b[i] = ring.normalize(-inv0 * s)
    return Series.from_coeffs(b, ring, n - 1)


def substitute_power(a: Series, m: int, order: Optional[int] = None) -> Series:
    """``a(q^m)``.

    The result has a's order unless ``order`` is given; any order up to
    ``m*order(a) + m - 1`` is fully determined by a.
    """
    if m < 1:
        raise ContractViolation(f"substitute_power needs m >= 1, got {m}")
    n = a.order if order is None else order
    if n > m * a.order + m - 1:
        raise InsufficientOrder(f"a(q^{m}) from order {a.order} is only known through {m * a.order + m - 1}")
    values = [0] * (n + 1)
    for i in range(0, n // m + 1):
        values[m * i] = a.coeffs[i]
    return Series(a.ring, tuple(values))


def negate_variable(a: Series) -> Series:
    """``a(-q)``."""
    return Series.from_coeffs((-c if i & 1 else c for i, c in enumerate(a.coeffs)), a.ring, a.order)


def extract_progression(a: Series, m: int, r: int) -> Series:
    """Coefficient n of the result is coefficient m*n + r of a."""
    if m < 1:
        raise ContractViolation(f"extract_progression needs m >= 1, got {m}")
    if not 0 <= r < m:
        raise ContractViolation(f"residue {r} outside 0..{m - 1}")
    if r > a.order:
        raise InsufficientOrder(f"no coefficient of the form {m}n+{r} within order {a.order}")
    return Series(a.ring, a.coeffs[r::m])


def reduce_mod(a: Series, modulus: int) -> Series:
    """Entrywise reduction into Z/modulus Z.

    Accepts exact series, and modular series whose modulus is a multiple
    of ``modulus``.
    """
    if modulus < 2:
        raise ContractViolation(f"reduce_mod needs M >= 2, got {modulus}")
    target = CoefficientRing.mod(modulus)
    return Series(target, tuple(a.ring.reduce(c, modulus) for c in a.coeffs))


def equals_to_order(a: Series, b: Series, order: Optional[int] = None) -> bool:
    return first_difference(a, b, order) is None


def first_difference(a: Series, b: Series, order: Optional[int] = None) -> Optional[int]:
    """Smallest index where a and b disagree, or None."""
    _check_ring(a, b)
    n = min(a.order, b.order) if order is None else order
    if n > a.order or n > b.order:
        raise InsufficientOrder(f"cannot compare through {n}: orders are {a.order} and {b.order}")
    for i in range(n + 1):
        if a.coeffs[i] != b.coeffs[i]:
            return i
    return None
