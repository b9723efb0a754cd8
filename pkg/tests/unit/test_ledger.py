"""
Unit tests for qphi/verify/ledger.py
"""

import json
import sys
import os
import tempfile
import unittest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..'))

from qphi.core.errors import LedgerError
from qphi.core.series import EXACT, CoefficientRing
from qphi.verify.ledger import (
    CongruenceEntry,
    GoldenEntry,
    IdentityEntry,
    congruence_ring,
    load_ledger,
    parse_ledger,
)

THEOREMS = ("thm-27n16", "thm-81n61", "thm-243n142", "thm-729n547", "thm-relation")
PROOF_CHAIN = (
    "lemma-3dis", "3n1-vs-gen", "start", "term1", "term2", "eq-I", "eq-J", "eq-K",
    "eq-9n7", "Jdisc", "eq-27n7", "mod81result",
)


def identity(name, **extra):
    data = {"kind": "identity", "name": name, "lhs": {"op": "one"}, "rhs": {"op": "one"}, "order": 5}
    data.update(extra)
    return data


class TestShippedLedger(unittest.TestCase):
    """The ledger bundled with the package"""

    @classmethod
    def setUpClass(cls):
        cls.ledger = load_ledger()

    def test_contains_theorems_and_chain(self):
        """Test every theorem, proof step and golden value is present"""
        names = self.ledger.names()
        for name in THEOREMS + PROOF_CHAIN + ("golden-16", "golden-61", "golden-547", "conjecture-729"):
            self.assertIn(name, names)

    def test_theorem_claims(self):
        """Test the four congruences and the relation carry the right parameters"""
        claim = self.ledger.get("thm-27n16").claim
        self.assertEqual((claim.a, claim.b, claim.modulus), (27, 16, 243))
        claim = self.ledger.get("thm-729n547").claim
        self.assertEqual((claim.a, claim.b, claim.modulus), (729, 547, 243))
        relation = self.ledger.get("thm-relation").claim.rhs
        self.assertEqual((relation.c, relation.a, relation.b), (3, 9, 7))

    def test_conjecture_is_empirical(self):
        """Test the mod 729 observation is labelled empirical"""
        self.assertEqual(self.ledger.get("conjecture-729").claim.label, "empirical")

    def test_golden_values(self):
        """Test golden-16 expands to cphi_6(16)"""
        entry = self.ledger.get("golden-16")
        self.assertIsInstance(entry, GoldenEntry)
        self.assertEqual(entry.expected, 593915814)
        self.assertEqual((entry.p, entry.exponent), (3, 5))

    def test_kinds(self):
        """Test entry kinds parse to their classes"""
        self.assertIsInstance(self.ledger.get("lemma-3dis"), IdentityEntry)
        self.assertIsInstance(self.ledger.get("thm-81n61"), CongruenceEntry)
        self.assertTrue(self.ledger.get("lemma-3dis").exact)
        self.assertEqual(self.ledger.get("eq-K").modulus, 27)

    def test_references_resolve(self):
        """Test every ref in the ledger names a definition"""
        def refs(node):
            if isinstance(node, dict):
                if node.get("op") == "ref":
                    yield node["name"]
                for value in node.values():
                    yield from refs(value)
            elif isinstance(node, list):
                for value in node:
                    yield from refs(value)

        for entry in self.ledger.entries:
            if isinstance(entry, IdentityEntry):
                for name in list(refs(entry.lhs)) + list(refs(entry.rhs)):
                    self.assertIn(name, self.ledger.definitions, entry.name)
        for definition in self.ledger.definitions.values():
            for name in refs(definition):
                self.assertIn(name, self.ledger.definitions)

    def test_info_and_digest(self):
        """Test the digest is a sha256 hex string"""
        info = self.ledger.info()
        self.assertEqual(len(info["sha256"]), 64)
        self.assertEqual(info["version"], self.ledger.version)


class TestParseLedger(unittest.TestCase):
    """parse_ledger and entry validation"""

    def test_list_form(self):
        """Test a bare list of entries is accepted"""
        ledger = parse_ledger(json.dumps([identity("one")]))
        self.assertEqual(ledger.names(), ["one"])
        self.assertEqual(ledger.definitions, {})

    def test_modes(self):
        """Test exact and mod modes"""
        ledger = parse_ledger(json.dumps([identity("e", mode="exact"), identity("m", mode={"mod": "27"})]))
        self.assertIsNone(ledger.get("e").modulus)
        self.assertEqual(ledger.get("m").modulus, 27)
        self.assertEqual(ledger.get("m").mode_label(), "mod 27")

    def test_errors(self):
        """Test malformed ledgers raise LedgerError"""
        bad = [
            "not json",
            json.dumps({"entries": "nope"}),
            json.dumps([identity("x"), identity("x")]),
            json.dumps([identity("x", kind="lemma")]),
            json.dumps([identity("x", mode={"mod": 1})]),
            json.dumps([identity("x", mode="fuzzy")]),
            json.dumps([{"kind": "identity", "name": "x", "lhs": {"op": "one"}, "order": 5}]),
            json.dumps([{"kind": "identity", "lhs": {"op": "one"}, "rhs": {"op": "one"}, "order": 5}]),
            json.dumps([identity("x", order="many")]),
            json.dumps([{"kind": "congruence", "name": "c", "a": "27", "b": "16", "n_range": "3"}]),
            json.dumps([{"kind": "congruence", "name": "c", "a": "27", "b": "27", "modulus": "243", "n_range": "3"}]),
            json.dumps([{"kind": "golden", "name": "g", "n": "16", "factors": [], "p": "3", "exponent": 5}]),
            json.dumps({"definitions": {"x": 3}, "entries": []}),
        ]
        for text in bad:
            with self.subTest(text=text[:40]):
                with self.assertRaises(LedgerError):
                    parse_ledger(text)

    def test_select_and_get(self):
        """Test selection keeps ledger order and rejects unknown names"""
        ledger = parse_ledger(json.dumps([identity("a"), identity("b"), identity("c")]))
        self.assertEqual([e.name for e in ledger.select(["c", "a"])], ["a", "c"])
        self.assertEqual(len(ledger.select()), 3)
        with self.assertRaises(LedgerError):
            ledger.select(["zzz"])
        with self.assertRaises(KeyError):
            ledger.get("zzz")

    def test_source_node(self):
        """Test coefficient sources resolve to definitions or color counts"""
        ledger = parse_ledger(json.dumps({"definitions": {"f": {"op": "one"}}, "entries": [identity("a")]}))
        self.assertEqual(ledger.source_node("f"), {"op": "ref", "name": "f"})
        self.assertEqual(ledger.source_node("cphi6"), {"op": "cphi6_gen"})
        self.assertEqual(ledger.source_node("cphi4"), {"op": "cphi_oracle", "k": 4})
        with self.assertRaises(LedgerError):
            ledger.source_node("cphi12")

    def test_load_from_path(self):
        """Test loading a file and reporting an unreadable one"""
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "ledger.json")
            with open(path, "w", encoding="utf-8") as f:
                json.dump([identity("a")], f)
            self.assertEqual(load_ledger(path).path, path)
            with self.assertRaises(LedgerError):
                load_ledger(os.path.join(tmp, "missing.json"))

    def test_digest_changes_with_content(self):
        """Test the digest identifies the ledger text"""
        one = parse_ledger(json.dumps([identity("a")]))
        two = parse_ledger(json.dumps([identity("b")]))
        self.assertNotEqual(one.digest, two.digest)


class TestCongruenceRing(unittest.TestCase):
    """Ring choice for congruence entries"""

    def test_divisors_share_the_base_ring(self):
        """Test moduli dividing 3^7 evaluate in Z/2187, others in Z/M"""
        self.assertEqual(congruence_ring(243, 2187), CoefficientRing.mod(2187))
        self.assertEqual(congruence_ring(4, 2187), CoefficientRing.mod(4))
        self.assertEqual(IdentityEntry("x", {}, {}, None, 3).ring(2187), EXACT)


if __name__ == '__main__':
    unittest.main()
