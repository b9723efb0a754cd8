from __future__ import annotations

import logging
import time
from typing import Optional

from ..core.errors import InsufficientOrder, QphiError, RingMismatch
from ..core.series import Series, first_difference, reduce_mod
from .claims import CongruenceClaim
from .expressions import ExpressionEvaluator
from .ledger import GoldenEntry, IdentityEntry
from .report import Status, VerificationReport, Witness

_logger = logging.getLogger(__name__)


def _elapsed_ms(started: float) -> float:
    return (time.perf_counter() - started) * 1000.0


def _error(name: str, checked_through: int, started: float, exc: BaseException, label: str = "") -> VerificationReport:
    detail = f"{type(exc).__name__}: {exc}"
    _logger.debug("%s errored: %s", name, detail)
    return VerificationReport(name=name, status=Status.ERROR, checked_through=checked_through, elapsed_ms=_elapsed_ms(started), detail=detail, label=label)


def check_identity(
    entry: IdentityEntry,
    evaluator: Optional[ExpressionEvaluator] = None,
    order: Optional[int] = None,
    base_modulus: int = 3 ** 7,
) -> VerificationReport:
    """Compare both sides of ``entry`` on coefficients 0..order.

    Exact entries are evaluated over Z; ``mod M`` entries in Z/base when M
    divides the base modulus, otherwise in Z/M, and compared after reduction
    to Z/M. Evaluation problems produce an Error report, never an exception.
    """
    started = time.perf_counter()
    evaluator = evaluator or ExpressionEvaluator()
    n = entry.order if order is None else order
    try:
        ring = entry.ring(base_modulus)
        lhs = evaluator.evaluate(entry.lhs, n, ring)
        rhs = evaluator.evaluate(entry.rhs, n, ring)
        if entry.modulus is not None:
            lhs = reduce_mod(lhs, entry.modulus)
            rhs = reduce_mod(rhs, entry.modulus)
        index = first_difference(lhs, rhs, n)
    except (QphiError, KeyError, ArithmeticError, ValueError) as exc:
        return _error(entry.name, n, started, exc)
    if index is None:
        return VerificationReport(name=entry.name, status=Status.PASS, checked_through=n, elapsed_ms=_elapsed_ms(started))
    return VerificationReport(
        name=entry.name,
        status=Status.FAIL,
        checked_through=n,
        elapsed_ms=_elapsed_ms(started),
        first_failure=Witness(index, lhs[index], rhs[index]),
        detail=f"sides differ ({entry.mode_label()})",
    )


def check_congruence(claim: CongruenceClaim, coeffs: Series, name: Optional[str] = None) -> VerificationReport:
    """Check every instance n in 0..n_range-1 of ``claim`` against ``coeffs``.

    The witness index is the coefficient index a*n + b of the first
    failing instance; values are reported reduced modulo M.
    """
    started = time.perf_counter()
    name = name or claim.describe()
    need = claim.needed_order()
    label = claim.label
    try:
        if coeffs.order < need:
            raise InsufficientOrder(f"claim needs coefficients through {need}, have {coeffs.order}")
        if not coeffs.ring.is_exact and coeffs.ring.modulus % claim.modulus != 0:
            raise RingMismatch(f"coefficients in {coeffs.ring.label} cannot decide a claim mod {claim.modulus}")
    except QphiError as exc:
        return _error(name, need, started, exc, label)
    m = claim.modulus
    for n in range(claim.n_range):
        index = claim.a * n + claim.b
        lhs = coeffs[index] % m
        rhs = 0 if claim.rhs is None else (claim.rhs.c * coeffs[claim.rhs.a * n + claim.rhs.b]) % m
        if lhs != rhs:
            return VerificationReport(
                name=name,
                status=Status.FAIL,
                checked_through=need,
                elapsed_ms=_elapsed_ms(started),
                first_failure=Witness(index, lhs, rhs),
                detail=f"n={n} breaks {claim.describe()}",
                label=label,
            )
    return VerificationReport(
        name=name,
        status=Status.PASS,
        checked_through=need,
        elapsed_ms=_elapsed_ms(started),
        detail=f"{claim.n_range} instances",
        label=label,
    )


def valuation(value: int, p: int) -> Optional[int]:
    """p-adic valuation of a nonzero integer; None for zero."""
    if value == 0:
        return None
    v = 0
    while value % p == 0:
        value //= p
        v += 1
    return v


def check_golden(entry: GoldenEntry, coeffs: Series) -> VerificationReport:
    """source[n] must equal the listed factorization exactly, and v_p must be ``exponent``."""
    started = time.perf_counter()
    try:
        if not coeffs.ring.is_exact:
            raise RingMismatch(f"golden value {entry.name} needs exact coefficients, got {coeffs.ring.label}")
        value = coeffs[entry.n]
    except QphiError as exc:
        return _error(entry.name, entry.n, started, exc)
    expected = entry.expected
    if value != expected:
        return VerificationReport(
            name=entry.name,
            status=Status.FAIL,
            checked_through=entry.n,
            elapsed_ms=_elapsed_ms(started),
            first_failure=Witness(entry.n, value, expected),
            detail="value differs from the listed factorization",
        )
    v = valuation(value, entry.p)
    if v != entry.exponent:
        return VerificationReport(
            name=entry.name,
            status=Status.FAIL,
            checked_through=entry.n,
            elapsed_ms=_elapsed_ms(started),
            first_failure=Witness(entry.n, value, expected),
            detail=f"v_{entry.p} is {v}, expected {entry.exponent}",
        )
    return VerificationReport(
        name=entry.name,
        status=Status.PASS,
        checked_through=entry.n,
        elapsed_ms=_elapsed_ms(started),
        detail=f"v_{entry.p} = {v}",
    )
