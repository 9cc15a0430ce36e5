from unittest import TestCase, main

from pandas import DataFrame

from rfgrowth.table import GrowthRow, GrowthTable, KValue, TableError, assemble_growth
from rfgrowth.witness import QuotientWitness


def witness(q):
    return QuotientWitness(order=q, kind='congruence-mod-m', data=('Z', q))


class GrowthTableTest(TestCase):
    @classmethod
    def setUpClass(cls):
        cls.values = {'x': KValue(3, 3, witness(3)), 'y': KValue(5, 2, witness(5)), 'z': KValue(None, 4, None)}
        cls.spheres = {0: ['e'], 1: ['x', 'y'], 2: ['z']}
        cls.table = assemble_growth('test', 'x,y', 'exact', cls.spheres, cls.values.get, lambda e: e,
                                    lambda e: {'x': 1, 'y': 1, 'z': 2}[e])

    def test_assembly(self):
        first, second = self.table
        self.assertEqual((first.F, first.F_lower, first.argmax, first.method), (5, 3, 'y', 'exact-bracket'))
        self.assertEqual(first.witness, witness(5))
        self.assertFalse(first.exact)
        self.assertEqual((second.F, second.F_lower, second.argmax, second.method), (4, 4, 'z', 'exact-lower'))
        self.assertIsNone(second.witness)

    def test_exact_rows(self):
        table = assemble_growth('test', 'x', 'exact', {1: ['x']}, self.values.get, lambda e: e, lambda e: 1)
        self.assertTrue(table[0].exact)
        self.assertEqual(table[0].method, 'exact')
        self.assertTrue(KValue(3, 3, None).exact)

    def test_append_checks(self):
        table = GrowthTable('test', 'x', 'exact')
        table.append(GrowthRow(2, 4, 4, 'x', 2, None, 'exact'))
        self.assertRaises(TableError, table.append, GrowthRow(1, 4, 4, 'x', 1, None, 'exact'))
        self.assertRaises(TableError, table.append, GrowthRow(3, 3, 3, 'x', 3, None, 'exact'))
        self.assertRaises(TableError, table.append, GrowthRow(3, 4, 5, 'x', 3, None, 'exact'))

    def test_outputs(self):
        csv = self.table.to_csv()
        self.assertTrue(csv.startswith('n,F,argmax,word_length,witness_kind,witness_order,method\n'))
        self.assertIn('1,5,y,1,congruence-mod-m,5,exact-bracket\n', csv)
        df = self.table.to_df()
        self.assertIsInstance(df, DataFrame)
        self.assertEqual(df.growth.group_id, 'test')
        self.assertEqual(df.growth.witnesses, [witness(5), None])
        self.assertEqual(self.table.to_dict()['rows'][0]['F'], '5')
        self.assertEqual(self.table, GrowthTable('test', 'x,y', 'exact', self.table.to_list()))


if __name__ == "__main__":
    main()
