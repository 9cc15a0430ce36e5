from unittest import TestCase, main

from rfgrowth import arith, quotsearch
from rfgrowth.quotsearch import (OrderCapError, PermGroup, QuotientSearchError, QuotientSearcher, UndetectedError,
                                 compose, from_cycles, min_quotient)
from rfgrowth.witness import QuotientWitness
from rfgrowth.words import A, B, FREE2, HEISENBERG, Z2, commutator, multiply, power


class PermutationTest(TestCase):
    def test_composition_acts_left_first(self):
        x, y = (1, 0, 2), (0, 2, 1)
        self.assertEqual(compose(x, y), (2, 0, 1))
        self.assertEqual(quotsearch.eval_word((1, 2), [x, y]), compose(x, y))
        self.assertEqual(quotsearch.eval_word((1, -1), [x, y]), quotsearch.identity(3))

    def test_cycles(self):
        self.assertEqual(from_cycles(3, [(1, 2)]), (1, 0, 2))
        x = from_cycles(5, [(1, 2), (3, 4, 5)])
        self.assertEqual(quotsearch.cycle_type(x), (3, 2))
        self.assertEqual(quotsearch.perm_order(x), 6)

    def test_conjugacy_representatives(self):
        reps = quotsearch.conjugacy_representatives(4)
        self.assertEqual(len(reps), 5)
        self.assertEqual(reps[0], (0, 1, 2, 3))


class PermGroupTest(TestCase):
    @classmethod
    def setUpClass(cls):
        cls.s3 = PermGroup([(1, 0, 2), (1, 2, 0)])
        cls.d8 = PermGroup([(1, 2, 3, 0), (0, 3, 2, 1)])
        cls.z4 = PermGroup([(1, 2, 3, 0)])

    def test_orders(self):
        self.assertEqual(self.s3.order, 6)
        self.assertEqual(self.d8.order, 8)
        self.assertEqual(quotsearch.group_order([(1, 2, 3, 0)]), 4)
        self.assertIn((2, 3, 0, 1), self.z4)

    def test_order_cap(self):
        self.assertRaises(OrderCapError, PermGroup, [(1, 0, 2, 3, 4), (1, 2, 3, 4, 0)], 100)

    def test_nilpotency(self):
        self.assertFalse(quotsearch.is_nilpotent(self.s3))
        self.assertIsNone(quotsearch.nilpotency_class(self.s3))
        self.assertEqual(quotsearch.nilpotency_class(self.d8), 2)
        self.assertEqual(quotsearch.nilpotency_class(self.z4), 1)
        self.assertEqual(quotsearch.nilpotency_class(PermGroup([(0, 1, 2)])), 0)

    def test_sylow_criterion_matches_lower_central_series(self):
        a4 = PermGroup([(1, 2, 0, 3), (0, 2, 3, 1)])
        z6 = PermGroup([(1, 0, 2, 3, 4), (0, 1, 3, 4, 2)])
        d12 = PermGroup([(1, 2, 3, 4, 5, 0), (0, 5, 4, 3, 2, 1)])
        d16 = PermGroup([(1, 2, 3, 4, 5, 6, 7, 0), (0, 7, 6, 5, 4, 3, 2, 1)])
        for group in (self.s3, self.d8, self.z4, a4, z6, d12, d16):
            self.assertEqual(quotsearch._sylow_nilpotent(group.elements), quotsearch.is_nilpotent(group), group)
        self.assertEqual([quotsearch.is_nilpotent(g) for g in (a4, z6, d12, d16)], [False, True, False, True])

    def test_nilpotent_order_bound(self):
        self.assertEqual(quotsearch.nilpotent_order_bound(4), 8)
        self.assertEqual(quotsearch.nilpotent_order_bound(6), 6)
        self.assertEqual(quotsearch.nilpotent_order_bound(8), 128)


class QuotientSearchTest(TestCase):
    @classmethod
    def setUpClass(cls):
        cls.c = commutator(A, B)

    def test_free_group(self):
        self.assertEqual(min_quotient(FREE2, A).k, 2)
        self.assertEqual(min_quotient(FREE2, power(A, 2)).k, 3)
        result = min_quotient(FREE2, self.c)
        self.assertEqual(result.k, 6)
        self.assertTrue(result.exact)
        self.assertTrue(quotsearch.check_witness(FREE2, self.c, result.witness))

    def test_nilpotent_variant(self):
        result = min_quotient(FREE2, self.c, variant='nilpotent')
        self.assertEqual(result.k, 8)
        self.assertEqual(result.lower, 8)
        self.assertTrue(quotsearch.check_witness(FREE2, self.c, result.witness, 'nilpotent'))
        self.assertEqual(quotsearch.nilpotency_class(PermGroup(result.witness.data)), 2)

    def test_free_abelian(self):
        for x in range(-3, 4):
            for y in range(-3, 4):
                if (x, y) == (0, 0):
                    continue
                word = multiply(power(A, x), power(B, y))
                self.assertEqual(min_quotient(Z2, word).k, arith.k_int_vector((x, y)), (x, y))

    def test_heisenberg(self):
        result = min_quotient(HEISENBERG, self.c)
        self.assertEqual(result.k, 8)
        self.assertTrue(result.exact)

    def test_undetected(self):
        with self.assertRaises(UndetectedError) as cm:
            QuotientSearcher(q_max=4).search(HEISENBERG, power(self.c, 2))
        self.assertEqual(cm.exception.lower, 5)

    def test_bad_input(self):
        self.assertRaises(ValueError, min_quotient, FREE2, A, variant='solvable')
        self.assertRaises(QuotientSearchError, min_quotient, FREE2, ())
        self.assertRaises(QuotientSearchError, min_quotient, FREE2, (3,))

    def test_tampered_witness(self):
        witness = min_quotient(FREE2, self.c).witness
        wrong = QuotientWitness(order=12, kind=witness.kind, data=witness.data)
        self.assertFalse(quotsearch.check_witness(FREE2, self.c, wrong))
        z3 = QuotientWitness(3, 'symmetric-image', ((1, 2, 0), (0, 1, 2)))
        self.assertTrue(quotsearch.check_witness(FREE2, A, z3))
        self.assertFalse(quotsearch.check_witness(FREE2, B, z3))

    def test_weight_bound(self):
        self.assertEqual(quotsearch.weight_bound(3), 16)
        self.assertIs(quotsearch.default_searcher(8), quotsearch.default_searcher(8))


if __name__ == "__main__":
    main()
