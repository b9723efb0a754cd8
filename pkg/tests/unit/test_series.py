"""
Unit tests for qphi/core/series.py
Ring laws, truncation, index maps and reduction on randomized series
"""

import random
import sys
import os
import unittest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..'))

from qphi.core.errors import ContractViolation, InsufficientOrder, NonInvertible, RingMismatch
from qphi.core.series import (
    EXACT,
    CoefficientRing,
    Series,
    add,
    equals_to_order,
    extract_progression,
    first_difference,
    inverse,
    mul,
    negate,
    negate_variable,
    power,
    reduce_mod,
    shift,
    substitute_power,
)

RINGS = [EXACT, CoefficientRing.mod(4), CoefficientRing.mod(27), CoefficientRing.mod(2187)]


def random_series(rng, ring, order=None, unit=False):
    order = rng.randint(0, 25) if order is None else order
    values = [rng.randint(-50, 50) for _ in range(order + 1)]
    if unit:
        values[0] = rng.choice([1, -1])
    return Series.from_coeffs(values, ring, order)


class TestCoefficientRing(unittest.TestCase):
    """Test suite for CoefficientRing"""

    def test_parse_exact_and_mod(self):
        """Test CLI spellings parse to the right rings"""
        self.assertTrue(CoefficientRing.parse("exact").is_exact)
        self.assertEqual(CoefficientRing.parse("mod:2187").modulus, 2187)

    def test_parse_rejects_garbage(self):
        """Test unknown spellings raise ContractViolation"""
        for text in ("mod:x", "ring", "mod:1"):
            with self.assertRaises(ContractViolation):
                CoefficientRing.parse(text)

    def test_modulus_must_be_at_least_two(self):
        """Test Z/1Z is rejected"""
        with self.assertRaises(ContractViolation):
            CoefficientRing.mod(1)

    def test_json_forms(self):
        """Test ring JSON form matches the report schema"""
        self.assertEqual(EXACT.to_json(), "Z")
        self.assertEqual(CoefficientRing.mod(9).to_json(), {"mod": 9})
        self.assertEqual(CoefficientRing.from_json({"mod": 9}), CoefficientRing.mod(9))

    def test_unit_inverse(self):
        """Test unit inverses and non-units"""
        ring = CoefficientRing.mod(27)
        self.assertEqual((ring.unit_inverse(2) * 2) % 27, 1)
        with self.assertRaises(NonInvertible):
            ring.unit_inverse(3)
        with self.assertRaises(NonInvertible):
            EXACT.unit_inverse(2)

    def test_reduce_needs_dividing_modulus(self):
        """Test Z/2187 reduces to Z/27 but not to Z/4"""
        ring = CoefficientRing.mod(2187)
        self.assertEqual(ring.reduce(100, 27), 100 % 27)
        with self.assertRaises(ContractViolation):
            ring.reduce(100, 4)


class TestSeriesBasics(unittest.TestCase):
    """Test suite for Series construction and accessors"""

    def test_from_coeffs_pads_and_normalizes(self):
        """Test padding to the order and reduction into the ring"""
        s = Series.from_coeffs([-1, 5], CoefficientRing.mod(4), 3)
        self.assertEqual(s.coeffs, (3, 1, 0, 0))
        self.assertEqual(s.order, 3)

    def test_getitem_beyond_order(self):
        """Test reading past the order raises InsufficientOrder"""
        s = Series.one(2)
        self.assertEqual(s[0], 1)
        with self.assertRaises(InsufficientOrder):
            s[3]

    def test_truncate_cannot_extend(self):
        """Test truncate refuses to invent coefficients"""
        with self.assertRaises(InsufficientOrder):
            Series.one(2).truncate(5)

    def test_ring_mismatch(self):
        """Test combining series from different rings is refused"""
        with self.assertRaises(RingMismatch):
            add(Series.one(3), Series.one(3, CoefficientRing.mod(9)))

    def test_json_round_trip_big_integers(self):
        """Test big integers survive as decimal strings"""
        big = 20029030597437898896898971631 * 3949235117518927056389
        s = Series.from_coeffs([1, big, -big])
        data = s.to_json()
        self.assertEqual(data["coeffs"][1], str(big))
        self.assertEqual(Series.from_json(data), s)

    def test_operators(self):
        """Test operator sugar agrees with the module functions"""
        a = Series.from_coeffs([1, 2, 3])
        b = Series.from_coeffs([0, 1, 1])
        self.assertEqual(a + b, add(a, b))
        self.assertEqual(a * b, mul(a, b))
        self.assertEqual((a - a).is_zero(), True)
        self.assertEqual((2 * a).coeffs, (2, 4, 6))
        self.assertEqual((a + 1).coeffs, (2, 2, 3))
        self.assertEqual(a ** 2, mul(a, a))


class TestSeriesRingLaws(unittest.TestCase):
    """Randomized ring laws over Z and Z/MZ (1000 cases, fixed seed)"""

    def test_ring_laws(self):
        """Test associativity, commutativity, distributivity and identities"""
        rng = random.Random(20240611)
        for case in range(1000):
            ring = RINGS[case % len(RINGS)]
            order = rng.randint(0, 20)
            a, b, c = (random_series(rng, ring, order) for _ in range(3))
            one = Series.one(order, ring)
            zero = Series.zero(order, ring)
            self.assertEqual(add(a, b), add(b, a))
            self.assertEqual(mul(a, b), mul(b, a))
            self.assertEqual(add(add(a, b), c), add(a, add(b, c)))
            self.assertEqual(mul(mul(a, b), c), mul(a, mul(b, c)))
            self.assertEqual(mul(a, add(b, c)), add(mul(a, b), mul(a, c)))
            self.assertEqual(mul(a, one), a)
            self.assertEqual(add(a, zero), a)
            self.assertTrue(add(a, negate(a)).is_zero())

    def test_inverse(self):
        """Test a * inverse(a) == 1 whenever the constant term is a unit"""
        rng = random.Random(7)
        for case in range(300):
            ring = RINGS[case % len(RINGS)]
            a = random_series(rng, ring, unit=True)
            self.assertEqual(mul(a, inverse(a)), Series.one(a.order, ring))

    def test_inverse_non_unit(self):
        """Test a non-unit constant term raises NonInvertible"""
        with self.assertRaises(NonInvertible):
            inverse(Series.from_coeffs([3, 1], CoefficientRing.mod(27)))
        with self.assertRaises(NonInvertible):
            inverse(Series.from_coeffs([0, 1]))

    def test_power_matches_repeated_product(self):
        """Test power by squaring against naive repeated multiplication"""
        rng = random.Random(11)
        for case in range(100):
            ring = RINGS[case % len(RINGS)]
            a = random_series(rng, ring, order=12)
            k = rng.randint(0, 7)
            naive = Series.one(12, ring)
            for _ in range(k):
                naive = mul(naive, a)
            self.assertEqual(power(a, k), naive)

    def test_mul_uses_smaller_order(self):
        """Test products are only known through the smaller order"""
        a = Series.from_coeffs([1, 1, 1, 1, 1])
        b = Series.from_coeffs([1, 1])
        self.assertEqual(mul(a, b).coeffs, (1, 2))

    def test_large_modulus_python_path(self):
        """Test a modulus too large for int64 products stays exact"""
        big = CoefficientRing.mod(2 ** 61 - 1)
        rng = random.Random(3)
        a = random_series(rng, EXACT, order=15)
        b = random_series(rng, EXACT, order=15)
        self.assertEqual(reduce_mod(mul(a, b), 2 ** 61 - 1), mul(reduce_mod(a, 2 ** 61 - 1), reduce_mod(b, 2 ** 61 - 1)))
        self.assertEqual(reduce_mod(mul(a, b), 2 ** 61 - 1).ring, big)


class TestTruncationAndReduction(unittest.TestCase):
    """Truncation coherence and reduction commutation"""

    def test_truncation_commutes_with_operations(self):
        """Test computing then truncating equals truncating then computing"""
        rng = random.Random(99)
        for case in range(200):
            ring = RINGS[case % len(RINGS)]
            a = random_series(rng, ring, order=20, unit=True)
            b = random_series(rng, ring, order=20)
            n = rng.randint(0, 20)
            self.assertEqual(mul(a, b).truncate(n), mul(a.truncate(n), b.truncate(n)))
            self.assertEqual(inverse(a).truncate(n), inverse(a.truncate(n)))
            self.assertEqual(power(a, 3).truncate(n), power(a.truncate(n), 3))

    def test_reduce_mod_commutes(self):
        """Test reduction is a ring homomorphism Z -> Z/M and Z/2187 -> Z/27"""
        rng = random.Random(5)
        for _ in range(200):
            a = random_series(rng, EXACT, order=15, unit=True)
            b = random_series(rng, EXACT, order=15)
            for m in (4, 27, 2187):
                self.assertEqual(reduce_mod(mul(a, b), m), mul(reduce_mod(a, m), reduce_mod(b, m)))
                self.assertEqual(reduce_mod(add(a, b), m), add(reduce_mod(a, m), reduce_mod(b, m)))
                self.assertEqual(reduce_mod(inverse(a), m), inverse(reduce_mod(a, m)))
            self.assertEqual(reduce_mod(reduce_mod(a, 2187), 27), reduce_mod(a, 27))

    def test_reduce_mod_rejects_incompatible_modulus(self):
        """Test Z/27 cannot be reduced modulo 4"""
        with self.assertRaises(ContractViolation):
            reduce_mod(Series.one(3, CoefficientRing.mod(27)), 4)


class TestIndexMaps(unittest.TestCase):
    """shift, substitute_power, negate_variable and extract_progression"""

    def test_shift(self):
        """Test shift keeps the order and refuses unknown coefficients"""
        a = Series.from_coeffs([1, 2, 3])
        self.assertEqual(shift(a, 2).coeffs, (0, 0, 1))
        self.assertEqual(shift(a, 2, 4).coeffs, (0, 0, 1, 2, 3))
        with self.assertRaises(InsufficientOrder):
            shift(a, 1, 4)

    def test_substitute_power(self):
        """Test a(q^m) and its determined order"""
        a = Series.from_coeffs([1, 2, 3])
        self.assertEqual(substitute_power(a, 3, 8).coeffs, (1, 0, 0, 2, 0, 0, 3, 0, 0))
        with self.assertRaises(InsufficientOrder):
            substitute_power(a, 3, 9)

    def test_negate_variable(self):
        """Test a(-q) flips odd coefficients"""
        a = Series.from_coeffs([1, 2, 3, 4])
        self.assertEqual(negate_variable(a).coeffs, (1, -2, 3, -4))

    def test_extract_progression(self):
        """Test coefficient n of the result is coefficient m*n + r"""
        a = Series.from_coeffs(range(10))
        self.assertEqual(extract_progression(a, 3, 1).coeffs, (1, 4, 7))
        with self.assertRaises(ContractViolation):
            extract_progression(a, 3, 3)
        with self.assertRaises(InsufficientOrder):
            extract_progression(Series.one(1), 3, 2)

    def test_dissection_reconstruction(self):
        """Test sum_r q^r * extract(a, m, r)(q^m) == a on random series"""
        rng = random.Random(1234)
        for case in range(1000):
            ring = RINGS[case % len(RINGS)]
            a = random_series(rng, ring, order=rng.randint(6, 30))
            m = rng.randint(1, 5)
            total = Series.zero(a.order, ring)
            for r in range(min(m, a.order + 1)):
                part = extract_progression(a, m, r)
                total = add(total, shift(substitute_power(part, m, a.order - r), r, a.order))
            self.assertEqual(total, a)

    def test_first_difference(self):
        """Test first_difference reports the smallest disagreeing index"""
        a = Series.from_coeffs([1, 2, 3, 4])
        b = Series.from_coeffs([1, 2, 5, 4])
        self.assertEqual(first_difference(a, b), 2)
        self.assertIsNone(first_difference(a, b, 1))
        self.assertTrue(equals_to_order(a, b, 1))
        with self.assertRaises(InsufficientOrder):
            first_difference(a, b, 9)


if __name__ == '__main__':
    unittest.main()
