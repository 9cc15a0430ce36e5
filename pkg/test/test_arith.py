from math import isnan
from unittest import TestCase, main

from rfgrowth import arith
from rfgrowth.arith import ArithError, QuadInt
from rfgrowth.witness import QuotientWitness


class ArithTest(TestCase):
    def test_psi(self):
        self.assertEqual(arith.psi(0), 1)
        self.assertEqual(arith.psi(3), 6)
        self.assertEqual(arith.psi(10), 2520)
        self.assertRaises(ValueError, arith.psi, -1)

    def test_k_int(self):
        q, witness = arith.k_int(2520)
        self.assertEqual(q, 11)
        self.assertEqual(witness, QuotientWitness(order=11, kind='congruence-mod-m', data=('Z', 11)))
        self.assertEqual(arith.k_int(1)[0], 2)
        self.assertEqual(arith.k_int(-6)[0], 4)
        self.assertRaises(ArithError, arith.k_int, 0)
        self.assertEqual(arith.k_int_array(6).tolist(), [2, 3, 2, 3, 2, 4])

    def test_F_int(self):
        self.assertEqual(arith.F_int(6), (4, 6))
        self.assertEqual(arith.F_int(6, 'lcm-jump'), (4, 6))
        self.assertEqual(arith.F_int(1, 'lcm-jump'), (2, 1))
        self.assertRaises(ValueError, arith.F_int, 0)
        self.assertRaises(ValueError, arith.F_int, 5, 'guess')

    def test_methods_agree(self):
        prefix = arith.F_int_prefix(300)
        for n in range(1, 301):
            self.assertEqual(prefix[n - 1][0], arith.F_int(n, 'lcm-jump')[0])

    def test_psi_jumps(self):
        self.assertEqual(arith.psi_jumps(1, 100), [1, 2, 6, 12, 60])

    def test_vectors(self):
        self.assertEqual(arith.k_int_vector((0, 6)), 4)
        self.assertEqual(arith.k_int_vector((3, 6)), 2)
        self.assertRaises(ArithError, arith.vector_witness, (0, 0))
        self.assertRaises(ValueError, arith.vector_witness, (1, 2), 3)
        self.assertEqual(arith.ell1_sphere(1, 2), [(1, 0), (0, 1), (0, -1), (-1, 0)])
        self.assertEqual(len(arith.ell1_sphere(2, 3)), 18)

    def test_lcm_extremal(self):
        self.assertTrue(arith.verify_lcm_extremal(8).passed)
        self.assertRaises(ValueError, arith.verify_lcm_extremal, 2)

    def test_split_types(self):
        self.assertEqual(arith.split_type(5, -1).kind, 'split')
        self.assertEqual(arith.split_type(3, -1), arith.PrimeSplit(3, 'inert', 9))
        self.assertEqual(arith.split_type(2, -1).kind, 'ramified')
        self.assertEqual(arith.split_type(2, 5).kind, 'inert')
        self.assertEqual(arith.split_type(11, 5).kind, 'split')
        self.assertRaises(ArithError, arith.split_type, 4, -1)

    def test_quadratic_integers(self):
        self.assertRaises(ArithError, QuadInt, 1, 1, 4)
        self.assertEqual(QuadInt(2, 1, -1).norm, 5)
        self.assertEqual(QuadInt(1, 1, 5).norm, 1)
        self.assertTrue(QuadInt(0, 0, 2).is_zero)

    def test_k_ring(self):
        k, witness = arith.k_ring(QuadInt(2, 0, -1))
        self.assertEqual(k, 5)
        self.assertTrue(arith.ring_witness_detects(QuadInt(2, 0, -1), witness))
        self.assertFalse(arith.ring_witness_detects(QuadInt(5, 0, -1), witness))
        self.assertEqual(arith.k_ring(QuadInt(1, 0, -1))[0], 2)
        self.assertRaises(ArithError, arith.k_ring, QuadInt(0, 0, -1))

    def test_brute_oracle(self):
        self.assertEqual(arith.brute_k_ring(QuadInt(2, 0, -1), 20)[0], 5)
        for a, b in arith.ell1_sphere(2, 2):
            g = QuadInt(a, b, 5)
            self.assertEqual(arith.brute_k_ring(g, 40)[0], arith.k_ring(g)[0])

    def test_growth_in_rings(self):
        best, argmax = arith.F_quad(-1, 1)
        self.assertEqual(best, 2)
        self.assertEqual(argmax, QuadInt(1, 0, -1))
        df = arith.ratio_table_log('z', [1, 6, 60])
        self.assertEqual(df['F'].tolist(), [2, 4, 7])
        self.assertTrue(isnan(df['ratio'].iloc[0]))
        self.assertRaises(ValueError, arith.ratio_table_log, 'free(2)', [2])


if __name__ == "__main__":
    main()
