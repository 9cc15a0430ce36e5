from unittest import TestCase, main

import numpy as np

from rfgrowth import nilpotent
from rfgrowth.internals import golden
from rfgrowth.matrices import elementary, is_identity
from rfgrowth.nilpotent import NilpotentError
from rfgrowth.quotsearch import QuotientSearcher
from rfgrowth.witness import QuotientWitness
from rfgrowth.words import A, B, commutator, iterated_commutator


class NilpotentTest(TestCase):
    @classmethod
    def setUpClass(cls):
        cls.heis = nilpotent.ball(3, 4)

    def test_ball_sizes(self):
        self.assertEqual([len(nilpotent.ball(3, r)) for r in range(4)], [1, 5, 17, 53])
        self.assertIn(elementary(3, 1, 3, 1), self.heis)
        self.assertEqual(self.heis.length(elementary(3, 1, 3, 1)), 4)

    def test_ball_golden(self):
        self.assertEqual(len(self.heis), golden('heis_ball_size', '4'))
        self.assertEqual(len(nilpotent.ball(3, 8)), golden('heis_ball_size', '8'))

    def test_exact_variants_agree(self):
        for entry in self.heis:
            if entry.length == 0:
                continue
            self.assertTrue(np.array_equal(nilpotent.word_to_unitri(entry.word), entry.element))
            value = nilpotent.k_exact_heisenberg(entry.word)
            nil = nilpotent.k_exact_heisenberg(entry.word, 'nilpotent')
            self.assertEqual((nil.upper, nil.lower), (value.upper, value.lower))
            self.assertTrue(value.exact)
            self.assertLessEqual(value.upper, nilpotent.k_congruence_unitri(entry.element)[0])

    def test_generators(self):
        self.assertEqual(len(nilpotent.unitri_generators(4)), 3)
        self.assertEqual(nilpotent.hirsch_unitri(3), 3)
        self.assertRaises(NilpotentError, nilpotent.hirsch_unitri, 1)
        self.assertRaises(NilpotentError, nilpotent.as_unitri, elementary(3, 2, 1, 1))

    def test_words(self):
        self.assertEqual(nilpotent.word_to_unitri(commutator(A, B)).tolist(), elementary(3, 1, 3, 1).tolist())
        self.assertTrue(is_identity(nilpotent.word_to_unitri(iterated_commutator([1, 2, 1]))))
        self.assertRaises(NilpotentError, nilpotent.word_to_unitri, (3,))

    def test_congruence(self):
        g = elementary(3, 1, 3, 6).dot(elementary(3, 1, 2, 4))
        size, witness = nilpotent.k_congruence_unitri(g)
        self.assertEqual(size, 27)
        self.assertEqual(witness, QuotientWitness(order=27, kind='congruence-mod-m', data=('UT', 3, 3)))
        self.assertTrue(nilpotent.unitri_witness_detects(g, witness))
        self.assertFalse(nilpotent.unitri_witness_detects(elementary(3, 1, 2, 3), witness))
        self.assertRaises(NilpotentError, nilpotent.least_detecting_prime, elementary(3, 1, 2, 0))

    def test_primorial_prime(self):
        self.assertEqual(nilpotent.primorial_prime(1), 2)
        self.assertEqual(nilpotent.primorial_prime(6), 5)
        self.assertEqual(nilpotent.primorial_prime(29), 5)
        self.assertEqual(nilpotent.primorial_prime(30), 7)

    def test_exact_heisenberg(self):
        value = nilpotent.k_exact_heisenberg(commutator(A, B))
        self.assertEqual((value.upper, value.lower), (8, 8))
        # c² survives on no more than 5 points; the congruence bound takes over
        value = nilpotent.k_exact_heisenberg(commutator(A, B) * 2, searcher=QuotientSearcher(q_max=5))
        self.assertEqual(value.upper, 27)
        self.assertEqual(value.lower, 6)

    def test_growth(self):
        table = nilpotent.F_nilpotent(3, 3)
        self.assertEqual(table.group_id, 'unitri(3)')
        self.assertEqual([row.F for row in table], [8, 27, 27])
        exact = nilpotent.F_nilpotent(3, 2, 'exact')
        self.assertEqual(exact.group_id, 'heis')
        self.assertEqual(exact[0].F, 2)
        self.assertRaises(NilpotentError, nilpotent.F_nilpotent, 4, 2, 'exact')
        self.assertRaises(ValueError, nilpotent.F_nilpotent, 3, 2, 'guess')


if __name__ == "__main__":
    main()
