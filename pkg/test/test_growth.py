from unittest import TestCase, main

from rfgrowth import growth
from rfgrowth.arith import F_int_prefix
from rfgrowth.growth import GrowthError, UnknownGroup, compute_growth, get_family, k_value
from rfgrowth.matrices import elementary, format_matrix


class FamilyTest(TestCase):
    def test_registry(self):
        self.assertEqual(get_family('z').group_id, 'z')
        self.assertEqual(get_family('zd(3)').d, 3)
        self.assertEqual(get_family('quad(-1)').D, -1)
        self.assertEqual(get_family('sl(3)').generating_set, 'E_ij(±1)')
        for bad in ('foo', 'quad(4)', 'sl(4)', 'zd(0)'):
            self.assertRaises(UnknownGroup, get_family, bad)

    def test_methods(self):
        self.assertEqual(growth.methods(get_family('z')), ['exact'])
        self.assertEqual(growth.methods(get_family('free(2)')), ['exact', 'nilpotent', 'congruence'])
        self.assertEqual(growth.methods(get_family('grig')), ['congruence'])
        self.assertRaises(GrowthError, growth.variant_of, get_family('sl(2)'), 'exact')

    def test_heisenberg_radius_cap(self):
        heis = get_family('heis')
        self.assertRaises(GrowthError, heis.ball, 100)
        self.assertRaises(GrowthError, compute_growth, 'heis', 9)
        self.assertEqual(len(heis.ball(2)), 17)
        self.assertRaises(GrowthError, heis.ball, 2, radius_cap=1)

    def test_sanov(self):
        self.assertEqual(format_matrix(growth.sanov_matrix((1, 2))), '5,2;2,1')


class KValueTest(TestCase):
    def test_integers(self):
        value, family = k_value('z', '2520')
        self.assertEqual((value.upper, value.lower), (11, 11))
        self.assertTrue(family.check_witness(2520, value.witness))
        self.assertRaises(GrowthError, k_value, 'z', '0')
        self.assertRaises(GrowthError, k_value, 'z', 'ten')

    def test_words(self):
        value, _ = k_value('free(2)', 'ABab')
        self.assertEqual(value.upper, 6)
        value, _ = k_value('free(2)', 'ABab', 'nilpotent')
        self.assertEqual(value.upper, 8)
        value, _ = k_value('free(2)', 'a', 'congruence')
        self.assertEqual(value.upper, 24)
        self.assertRaises(GrowthError, k_value, 'free(2)', 'aA')
        self.assertRaises(GrowthError, k_value, 'heis', 'abABAbaB')

    def test_matrices_and_tree(self):
        value, _ = k_value('sl(2)', format_matrix(elementary(2, 1, 2, 6)))
        self.assertEqual(value.upper, 48)
        value, _ = k_value('unitri(3)', '1,4,6;0,1,0;0,0,1')
        self.assertEqual(value.upper, 27)
        value, _ = k_value('grig', 'd')
        self.assertEqual((value.lower, value.upper), (2, 128))
        self.assertRaises(GrowthError, k_value, 'grig', 'adadadad')
        self.assertRaises(GrowthError, k_value, 'sl(2)', '2,0;0,2')
        self.assertRaises(GrowthError, k_value, 'sl(2)', '1,1;0,1', 'any')


class ComputeGrowthTest(TestCase):
    def test_integers(self):
        table = compute_growth('z', 12)
        self.assertEqual([row.F for row in table], [F for F, _ in F_int_prefix(12)])
        self.assertEqual(table[5].argmax, '6')

    def test_lattices(self):
        table = compute_growth('zd(2)', 6, workers=2)
        self.assertEqual([row.F for row in table], [F for F, _ in F_int_prefix(6)])
        self.assertEqual(table, compute_growth('zd(2)', 6))

    def test_groups(self):
        self.assertEqual([row.F for row in compute_growth('free(2)', 2)], [2, 3])
        self.assertEqual(compute_growth('sl(2)', 1)[0].method, 'congruence-upper')
        self.assertEqual(compute_growth('grig', 1)[0].F, 128)
        self.assertEqual(compute_growth('quad(-1)', 1)[0].F, 2)
        self.assertRaises(ValueError, compute_growth, 'z', -1)

    def test_witness_summary(self):
        self.assertEqual(growth.witness_summary('lcm', 10), {'element': '2520', 'k': 11, 'witness': 'congruence-mod-m;11;Z,11'})
        summary = growth.witness_summary('elementary', 4)
        self.assertEqual(summary['least_level'], 5)
        summary = growth.witness_summary('grig-deep', 2)
        self.assertEqual((summary['length'], summary['depth']), (16, 4))
        self.assertRaises(ValueError, growth.witness_summary, 'random', 3)


if __name__ == "__main__":
    main()
