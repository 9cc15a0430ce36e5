from unittest import TestCase, main

from rfgrowth.words import (A, B, FREE2, HEISENBERG, Presentation, WordError, commutator, format_word, invert,
                            iterated_commutator, multiply, parse_word, power, reduce_word)


class WordsTest(TestCase):
    def test_reduction(self):
        self.assertEqual(reduce_word([1, -1, 2]), (2,))
        self.assertEqual(reduce_word([1, 2, -2, -1]), ())
        self.assertRaises(WordError, reduce_word, [1, 0])

    def test_inverse_and_powers(self):
        self.assertEqual(invert((1, 2)), (-2, -1))
        self.assertEqual(multiply((1, 2), invert((1, 2))), ())
        self.assertEqual(power(A, 3), (1, 1, 1))
        self.assertEqual(power(A, -2), (-1, -1))

    def test_commutators(self):
        self.assertEqual(format_word(commutator(A, B)), 'ABab')
        weight3 = iterated_commutator([1, 2, 1])
        self.assertEqual(format_word(weight3), 'BAbABaba')
        self.assertEqual(len(weight3), 8)
        self.assertRaises(WordError, iterated_commutator, [1])

    def test_parse_and_format(self):
        self.assertEqual(parse_word('aB'), (1, -2))
        self.assertEqual(parse_word('aA'), ())
        self.assertEqual(parse_word('1'), ())
        self.assertEqual(format_word(()), '1')
        self.assertRaises(WordError, parse_word, 'c', 2)
        self.assertRaises(WordError, parse_word, 'a?')

    def test_presentations(self):
        self.assertEqual(FREE2.symmetric_generators(), [1, -1, 2, -2])
        self.assertEqual(len(HEISENBERG.relators), 2)
        self.assertEqual(HEISENBERG.parse('ab'), (1, 2))
        self.assertRaises(WordError, Presentation, 'bad', 2, ((1, -1),))
        self.assertRaises(WordError, Presentation, 'bad', 1, ((2,),))


if __name__ == "__main__":
    main()
