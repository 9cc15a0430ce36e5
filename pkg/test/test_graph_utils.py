from unittest import TestCase, main

from rfgrowth.graph_utils import StateCapError, ball_bfs, spheres
from rfgrowth.words import reduce_word


class GraphUtilsTest(TestCase):
    @classmethod
    def setUpClass(cls):
        cls.steps = [(x, (x,)) for x in (1, -1, 2, -2)]
        cls.free = ball_bfs((), cls.steps, lambda w, s: reduce_word(w + s), 3)

    def test_integer_ball(self):
        entries = ball_bfs(0, [(1, 1), (-1, -1)], lambda x, s: x + s, 3)
        self.assertEqual([e.element for e in entries], [0, 1, -1, 2, -2, 3, -3])
        self.assertEqual({n: len(layer) for n, layer in spheres(entries).items()}, {0: 1, 1: 2, 2: 2, 3: 2})

    def test_free_ball(self):
        self.assertEqual(len(self.free), 53)
        for entry in self.free:
            self.assertEqual(len(entry.element), entry.length)
            self.assertEqual(reduce_word(entry.word), entry.element)

    def test_state_cap(self):
        self.assertRaises(StateCapError, ball_bfs, 0, [(1, 1), (-1, -1)], lambda x, s: x + s, 3, cap=5)

    def test_workers_do_not_change_the_ball(self):
        threaded = ball_bfs((), self.steps, lambda w, s: reduce_word(w + s), 3, workers=3)
        self.assertEqual(threaded, self.free)

    def test_exact_comparison_on_key_collisions(self):
        # parity key collides constantly; `same` keeps the ball exact
        entries = ball_bfs(0, [(1, 1), (-1, -1)], lambda x, s: x + s, 2, key=lambda x: x % 2, same=lambda x, y: x == y)
        self.assertEqual(sorted(e.element for e in entries), [-2, -1, 0, 1, 2])


if __name__ == "__main__":
    main()
