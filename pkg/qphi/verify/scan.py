from __future__ import annotations

import logging
import math
from functools import reduce
from typing import List, Optional, Sequence

from ..builders.frobenius import cphi6_gen, cphi_oracle
from ..core.errors import ContractViolation
from ..core.series import CoefficientRing, Series
from .claims import EMPIRICAL, CongruenceClaim

_logger = logging.getLogger(__name__)


def _implied_by(claim: CongruenceClaim, other: CongruenceClaim) -> bool:
    # other's progression contains claim's and other's modulus is a multiple of claim's
    return (
        other is not claim
        and claim.a % other.a == 0
        and claim.b % other.a == other.b
        and other.modulus % claim.modulus == 0
        and (other.a, other.modulus) != (claim.a, claim.modulus)
    )


def scan_congruences(
    k: int,
    max_a: int,
    moduli: Sequence[int],
    order: int,
    min_witnesses: int = 10,
    minimal: bool = True,
    coeffs: Optional[Series] = None,
) -> List[CongruenceClaim]:
    """Progressions an+b (a <= max_a) on which cphi_k vanishes mod M for every available n.

    Only progressions with at least ``min_witnesses`` instances up to
    ``order`` are considered. With ``minimal`` a claim implied by a coarser
    progression with a modulus at least as strong is dropped. Results are
    labelled empirical and sorted by (a, b, M).
    """
    if not moduli:
        return []
    if any(m < 2 for m in moduli):
        raise ContractViolation(f"moduli must all be >= 2, got {list(moduli)}")
    if max_a < 1 or order < 0 or min_witnesses < 1:
        raise ContractViolation("scan needs max_a >= 1, order >= 0 and min_witnesses >= 1")
    if coeffs is None:
        ring = CoefficientRing.mod(reduce(lambda x, y: x * y // math.gcd(x, y), moduli))
        coeffs = cphi6_gen(order, ring) if k == 6 else cphi_oracle(k, order, ring)
    elif coeffs.order < order:
        _logger.warning("scan asked for q^%d but the series stops at q^%d; scanning to q^%d", order, coeffs.order, coeffs.order)
        order = coeffs.order
    values = coeffs.coeffs
    source = f"cphi{k}"

    found: List[CongruenceClaim] = []
    for a in range(1, max_a + 1):
        for b in range(a):
            count = (order - b) // a + 1 if order >= b else 0
            if count < min_witnesses:
                continue
            instances = values[b : a * (count - 1) + b + 1 : a]
            for m in sorted(set(moduli)):
                if all(v % m == 0 for v in instances):
                    found.append(CongruenceClaim(source, a, b, m, count, label=EMPIRICAL))
    if minimal:
        found = [c for c in found if not any(_implied_by(c, other) for other in found)]
    found.sort(key=lambda c: (c.a, c.b, c.modulus))
    _logger.info("scan of %s up to q^%d found %d congruences", source, order, len(found))
    return found
