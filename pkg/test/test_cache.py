import os
from pathlib import Path
from tempfile import TemporaryDirectory
from unittest import TestCase, main

from rfgrowth.cache import CacheError, ResultCache
from rfgrowth.constants import CACHE_ENV, TOOL_VERSION
from rfgrowth.growth import compute_growth, get_family, k_value
from rfgrowth.table import KValue


class ResultCacheTest(TestCase):
    @classmethod
    def setUpClass(cls):
        cls.integers = get_family('z')
        cls.grig = get_family('grig')

    def setUp(self):
        self.tmp = TemporaryDirectory()
        self.cache = ResultCache(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def test_paths(self):
        self.assertEqual(self.cache.path('free(2)', 'any').name, 'free_2.any.tsv')
        self.assertEqual(self.cache.path('quad(-1)', 'any').name, 'quad_1.any.tsv')

    def test_round_trip_through_disk(self):
        value, _ = k_value('z', '2520', cache=self.cache)
        text = Path(self.tmp.name, 'z.any.tsv').read_text()
        self.assertEqual(text, f'2520\t11\tcongruence-mod-m;11;Z,11\t{TOOL_VERSION}\n')
        self.assertEqual(ResultCache(self.tmp.name).get(self.integers, 2520, 'any'), value)

    def test_bracketed_values(self):
        value, _ = k_value('grig', 'd', cache=self.cache)
        self.assertIn('\t2:128\t', Path(self.tmp.name, 'grig.congruence.tsv').read_text())
        self.assertEqual(ResultCache(self.tmp.name).get(self.grig, 'd', 'congruence'), value)

    def test_reverification(self):
        with open(self.cache.path('z', 'any'), 'w') as f:
            f.write(f'12\t2\tcongruence-mod-m;2;Z,2\t{TOOL_VERSION}\n')
            f.write(f'7\t2\tcongruence-mod-m;2;Z,2\told\n')
            f.write(f'5\tx\tnot-a-witness\t{TOOL_VERSION}\n')
        with self.assertLogs('rfgrowth.cache', level='WARNING'):
            self.assertIsNone(self.cache.get(self.integers, 12, 'any'))
        self.assertIsNone(self.cache.get(self.integers, 7, 'any'))
        self.assertIsNone(self.cache.get(self.integers, 5, 'any'))

    def test_search_bound_keeps_runs_identical(self):
        cold_small, _ = k_value('free(2)', 'ABab', 'nilpotent', q_max=4)
        cold_large, _ = k_value('free(2)', 'ABab', 'nilpotent', q_max=8)
        warm_small, _ = k_value('free(2)', 'ABab', 'nilpotent', q_max=4, cache=self.cache)
        warm_large, _ = k_value('free(2)', 'ABab', 'nilpotent', q_max=8, cache=self.cache)
        self.assertEqual(warm_small, cold_small)
        self.assertEqual(warm_large, cold_large)
        keys = [line.split('\t')[0] for line in Path(self.tmp.name, 'free_2.nilpotent.tsv').read_text().splitlines()]
        self.assertEqual(sorted(keys), ['ABab@q4', 'ABab@q8'])
        reread = ResultCache(self.tmp.name)
        self.assertEqual(k_value('free(2)', 'ABab', 'nilpotent', q_max=8, cache=reread)[0], cold_large)
        self.assertEqual(k_value('free(2)', 'ABab', 'nilpotent', q_max=4, cache=reread)[0], cold_small)

    def test_growth_tables_identical_with_and_without_cache(self):
        uncached = compute_growth('free(2)', 2, q_max=5).to_csv()
        cold = compute_growth('free(2)', 2, q_max=5, cache=self.cache).to_csv()
        warm = compute_growth('free(2)', 2, q_max=5, cache=ResultCache(self.tmp.name)).to_csv()
        self.assertEqual(cold, uncached)
        self.assertEqual(warm, uncached)

    def test_skips_values_without_witness(self):
        self.cache.put(self.integers, 3, 'any', KValue(None, 9, None))
        self.assertFalse(self.cache.path('z', 'any').exists())

    def test_clear(self):
        k_value('z', '6', cache=self.cache)
        self.cache.clear()
        self.assertEqual(list(Path(self.tmp.name).glob('*.tsv')), [])
        self.assertIsNone(self.cache.get(self.integers, 6, 'any'))

    def test_directory_from_environment(self):
        previous = os.environ.get(CACHE_ENV)
        os.environ[CACHE_ENV] = os.path.join(self.tmp.name, 'env')
        try:
            self.assertEqual(ResultCache().directory, Path(self.tmp.name, 'env'))
        finally:
            if previous is None:
                del os.environ[CACHE_ENV]
            else:
                os.environ[CACHE_ENV] = previous

    def test_unusable_directory(self):
        blocker = Path(self.tmp.name, 'file')
        blocker.write_text('')
        self.assertRaises(CacheError, ResultCache, str(blocker))


if __name__ == "__main__":
    main()
