from unittest import TestCase, main

from rfgrowth import slk
from rfgrowth.matrices import elementary, identity_matrix
from rfgrowth.slk import CongruenceExhausted, SLError
from rfgrowth.witness import QuotientWitness


class SLTest(TestCase):
    @classmethod
    def setUpClass(cls):
        cls.sl2 = slk.sl_ball(2, 3)

    def test_orders(self):
        expected = {(2, 2): 6, (2, 3): 24, (2, 4): 48, (2, 5): 120, (3, 2): 168, (2, 11): 1320, (2, 12): 1152}
        for (k, m), order in expected.items():
            self.assertEqual(slk.order_slk_mod(k, m), order)
        self.assertEqual(slk.brute_order_slk_mod(2, 3), 24)
        self.assertEqual(slk.brute_order_slk_mod(2, 4), 48)
        self.assertRaises(ValueError, slk.order_slk_mod, 2, 1)
        self.assertRaises(SLError, slk.order_slk_mod, 1, 5)

    def test_nonmonotone_levels(self):
        drops = slk.nonmonotone_levels(2, 12)
        self.assertEqual(drops[12], 1152)
        self.assertNotIn(11, drops)

    def test_balls(self):
        self.assertEqual([len(slk.sl_ball(2, r)) for r in range(3)], [1, 5, 17])
        self.assertEqual(len(slk.sl_generators(3)), 12)
        self.assertRaises(SLError, slk.sl_ball, 2, 12)
        self.assertRaises(SLError, slk.as_sl, elementary(2, 1, 2, 1) * 2)

    def test_least_detecting_modulus(self):
        self.assertEqual(slk.least_detecting_modulus(elementary(2, 1, 2, 6)), 4)
        self.assertEqual(slk.least_detecting_modulus(elementary(2, 1, 2, 12)), 5)
        self.assertRaises(CongruenceExhausted, slk.least_detecting_modulus, elementary(2, 1, 2, 6), 3)
        self.assertRaises(SLError, slk.least_detecting_modulus, identity_matrix(2))

    def test_k_congruence(self):
        size, witness = slk.k_congruence_sl(elementary(2, 1, 2, 6))
        self.assertEqual(size, 48)
        self.assertEqual(witness, QuotientWitness(order=48, kind='congruence-mod-m', data=('SL', 2, 4)))
        self.assertTrue(slk.sl_witness_detects(elementary(2, 1, 2, 6), witness))
        self.assertFalse(slk.sl_witness_detects(elementary(2, 1, 2, 4), witness))
        self.assertEqual(slk.k_congruence_sl(elementary(2, 1, 2, 2520))[0], 1320)
        self.assertRaises(SLError, slk.k_congruence_sl, identity_matrix(3))

    def test_restricted_scan_matches_full_scan(self):
        for entry in self.sl2:
            if entry.length == 0:
                continue
            self.assertEqual(slk.k_congruence_sl(entry.element, 20)[0],
                             slk.k_congruence_sl(entry.element, 20, restrict_prime_powers=False)[0])

    def test_embedding(self):
        g = elementary(2, 2, 1, 3)
        big = slk.embed_sl2(g)
        self.assertEqual(big.shape, (3, 3))
        self.assertEqual(big[:2, :2].tolist(), g.tolist())
        _, witness = slk.k_congruence_sl(big)
        restricted = slk.restrict_witness(witness)
        self.assertEqual(restricted.data, ('SL', 2, witness.data[2]))
        self.assertTrue(slk.sl_witness_detects(g, restricted))

    def test_witness_elementary(self):
        self.assertEqual(slk.witness_elementary(3, 4).tolist(), elementary(3, 1, 2, 12).tolist())
        self.assertTrue(slk.verify_sl_lower(3, range(1, 7)).passed)

    def test_upper_bound_report(self):
        report = slk.verify_sl_upper(2, 3)
        self.assertTrue(report.passed)
        self.assertEqual([c.name for c in report], ['envelope', 'loglog_slope', 'mechanism'])
        self.assertEqual(len(slk.verify_sl_upper(2, 0)), 0)

    def test_growth_labels(self):
        self.assertEqual(slk.F_sl(2, 1)[0].F, 6)
        self.assertEqual(slk.F_sl(2, 1)[0].method, 'congruence-upper')
        self.assertEqual(slk.F_sl(3, 1)[0].method, 'congruence')


if __name__ == "__main__":
    main()
