"""
Unit tests for qphi/verify/scan.py
"""

import sys
import os
import unittest

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..'))

from qphi.builders.frobenius import cphi6_gen
from qphi.core.errors import ContractViolation
from qphi.core.series import CoefficientRing, Series
from qphi.verify.scan import scan_congruences


def triples(claims):
    return {(c.a, c.b, c.modulus) for c in claims}


class TestScanCongruences(unittest.TestCase):
    """Test suite for scan_congruences"""

    def test_small_progressions(self):
        """Test the known mod 4 and mod 9 progressions turn up by q^200"""
        found = scan_congruences(6, 3, [4, 9], 200)
        for expected in ((2, 1, 4), (3, 1, 9), (3, 2, 9)):
            self.assertIn(expected, triples(found))
        self.assertTrue(all(c.label == "empirical" for c in found))
        self.assertTrue(all(c.source == "cphi6" for c in found))

    def test_sorted(self):
        """Test results are sorted by (a, b, M)"""
        found = scan_congruences(6, 9, [4, 9, 27], 300)
        keys = [(c.a, c.b, c.modulus) for c in found]
        self.assertEqual(keys, sorted(keys))

    def test_empty_moduli(self):
        """Test no moduli means no claims"""
        self.assertEqual(scan_congruences(6, 27, [], 500), [])

    def test_bad_arguments(self):
        """Test nonsense arguments are contract violations"""
        with self.assertRaises(ContractViolation):
            scan_congruences(6, 3, [1], 50)
        with self.assertRaises(ContractViolation):
            scan_congruences(6, 0, [4], 50)

    def test_minimal_drops_implied(self):
        """Test 6n+1 mod 4 is dropped because 2n+1 mod 4 already covers it"""
        full = triples(scan_congruences(6, 6, [4], 200, minimal=False))
        minimal = triples(scan_congruences(6, 6, [4], 200))
        self.assertIn((6, 1, 4), full)
        self.assertNotIn((6, 1, 4), minimal)
        self.assertIn((2, 1, 4), minimal)

    def test_min_witnesses(self):
        """Test progressions with too few instances are skipped"""
        coeffs = Series.from_coeffs([0] * 20)
        found = scan_congruences(6, 5, [2], 19, min_witnesses=5, minimal=False, coeffs=coeffs)
        self.assertIn((4, 3, 2), triples(found))
        self.assertNotIn((5, 0, 2), triples(found))

    def test_short_series_limits_the_range(self):
        """Test a supplied series shorter than the order caps the instance count"""
        coeffs = Series.from_coeffs([0] * 41)
        found = {(c.a, c.b, c.modulus): c for c in scan_congruences(6, 27, [2], 2000, minimal=False, coeffs=coeffs)}
        self.assertEqual(found[(2, 1, 2)].n_range, 20)
        self.assertNotIn((27, 16, 2), found)
        self.assertTrue(all(c.n_range == (40 - c.b) // c.a + 1 for c in found.values()))

    def test_short_series_respects_min_witnesses(self):
        """Test 27n+16 mod 243 from a series through q^100 has 4 instances, too few by default"""
        coeffs = cphi6_gen(100, CoefficientRing.mod(2187))
        self.assertNotIn((27, 16, 243), triples(scan_congruences(6, 27, [243], 2000, coeffs=coeffs)))
        found = scan_congruences(6, 27, [243], 2000, min_witnesses=3, minimal=False, coeffs=coeffs)
        claim = next(c for c in found if (c.a, c.b) == (27, 16))
        self.assertEqual(claim.n_range, 4)

    def test_other_color_counts(self):
        """Test k = 1 uses the oracle: p(5n+4) == 0 mod 5"""
        self.assertIn((5, 4, 5), triples(scan_congruences(1, 5, [5], 200)))

    @pytest.mark.slow
    def test_finds_27n16(self):
        """Test the mod 243 progression 27n+16 is rediscovered by q^2000"""
        self.assertIn((27, 16, 243), triples(scan_congruences(6, 27, [243], 2000)))


if __name__ == '__main__':
    unittest.main()
