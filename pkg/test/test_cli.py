import io
import json
import os
from contextlib import redirect_stderr, redirect_stdout
from tempfile import TemporaryDirectory
from unittest import TestCase, main

from rfgrowth.cli import _main


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = _main(argv)
    return code, out.getvalue(), err.getvalue()


class CliTest(TestCase):
    def test_kval(self):
        code, out, _ = run(['kval', '--group', 'z', '--element', '2520', '--no-cache'])
        self.assertEqual(code, 0)
        lines = out.splitlines()
        self.assertEqual(lines[0], 'k = 11')
        self.assertTrue(lines[1].startswith('witness: '))

    def test_witness(self):
        code, out, _ = run(['witness', '--kind', 'lcm', '--n', '10'])
        self.assertEqual(code, 0)
        summary = json.loads(out)
        self.assertEqual(summary['element'], '2520')
        self.assertEqual(summary['k'], 11)

    def test_growth_stdout(self):
        code, out, _ = run(['growth', '--group', 'z', '--radius', '6', '--no-cache'])
        self.assertEqual(code, 0)
        lines = out.splitlines()
        self.assertEqual(lines[0], 'n,F,argmax,word_length,witness_kind,witness_order,method')
        self.assertEqual(len(lines), 7)

    def test_growth_files(self):
        with TemporaryDirectory() as tmp:
            csv_path = os.path.join(tmp, 'z.csv')
            json_path = os.path.join(tmp, 'z.json')
            self.assertEqual(run(['growth', '--group', 'z', '--radius', '4', '--out', csv_path, '--no-cache'])[0], 0)
            self.assertEqual(run(['growth', '--group', 'z', '--radius', '4', '--out', json_path, '--no-cache'])[0], 0)
            with open(csv_path) as f:
                self.assertEqual(len(f.read().splitlines()), 5)
            with open(json_path) as f:
                self.assertEqual(len(json.load(f)['rows']), 4)
            code, _, err = run(['growth', '--group', 'z', '--radius', '4', '--out', os.path.join(tmp, 'z.txt'), '--no-cache'])
            self.assertEqual(code, 2)
            self.assertIn('rfg: error:', err)

    def test_unknown_group(self):
        code, _, err = run(['kval', '--group', 'baumslag', '--element', 'a', '--no-cache'])
        self.assertEqual(code, 2)
        self.assertIn('baumslag', err)

    def test_bad_arguments(self):
        with redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit):
                _main(['verify', '--suite', 'everything'])
            with self.assertRaises(SystemExit):
                _main([])


if __name__ == "__main__":
    main()
