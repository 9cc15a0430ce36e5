from typing import Dict, List, Sequence, Tuple

import numpy as np
from sympy import Matrix

from rfgrowth.constants import DEFAULT_STATE_CAP
from rfgrowth.graph_utils import BallEntry, ball_bfs, spheres


class MatrixError(ValueError):
    ...


def identity_matrix(k: int) -> np.ndarray:
    m = np.zeros((k, k), dtype=object)
    for i in range(k):
        m[i, i] = 1
    return m


def elementary(k: int, i: int, j: int, t: int = 1) -> np.ndarray:
    """
    ``E_ij(t)``: the identity plus ``t`` at row ``i``, column ``j`` (1-based).
    """
    if i == j:
        raise MatrixError('An elementary matrix needs i ≠ j.')
    m = identity_matrix(k)
    m[i - 1, j - 1] = t
    return m


def as_matrix(rows) -> np.ndarray:
    m = np.array([[int(x) for x in row] for row in rows], dtype=object)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise MatrixError('Expected a square matrix.')
    return m


def mat_key(m: np.ndarray) -> Tuple[int, ...]:
    return tuple(m.flat)


def is_identity(m: np.ndarray) -> bool:
    return mat_key(m) == mat_key(identity_matrix(m.shape[0]))


def is_identity_mod(m: np.ndarray, q: int) -> bool:
    return not np.any((m - identity_matrix(m.shape[0])) % q)


def max_entry(m: np.ndarray) -> int:
    return max(abs(x) for x in m.flat)


def determinant(m: np.ndarray) -> int:
    return int(Matrix(m.tolist()).det())


def parse_matrix(text: str) -> np.ndarray:
    """
    Parses the canonical encoding: rows separated by ``;``, entries by ``,``,
    for example ``1,2;0,1``.
    """
    try:
        return as_matrix([row.split(',') for row in text.strip().split(';')])
    except ValueError as e:
        raise MatrixError(f"Could not parse the matrix '{text}'.") from e


def format_matrix(m: np.ndarray) -> str:
    return ';'.join(','.join(str(x) for x in row) for row in m.tolist())


class MatrixBall:
    """
    A word-metric ball of matrices, each stored with its word length and a
    geodesic word over the generator letters.
    """
    def __init__(self, name: str, radius: int, entries: List[BallEntry]) -> None:
        self.name = name
        self.radius = radius
        self.entries = entries
        self.lengths: Dict[Tuple[int, ...], int] = {mat_key(e.element): e.length for e in entries}

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __contains__(self, m: np.ndarray) -> bool:
        return mat_key(m) in self.lengths

    def __repr__(self) -> str:
        return f'Ball of {self.name}, radius {self.radius}: {len(self)} elements'

    def length(self, m: np.ndarray) -> int:
        return self.lengths[mat_key(m)]

    def spheres(self) -> Dict[int, List[BallEntry]]:
        return spheres(self.entries)

    def max_entries(self) -> List[int]:
        """
        Largest entry magnitude over the ball of each radius ``0, ..., radius``.
        """
        out, current = [], 0
        layers = self.spheres()
        for n in range(self.radius + 1):
            for entry in layers.get(n, []):
                current = max(current, max_entry(entry.element))
            out.append(current)
        return out


def matrix_ball(name: str, steps: Sequence[Tuple[object, np.ndarray]], radius: int, **kwargs) -> MatrixBall:
    """
    The exact ball of the given radius for the generators in ``steps``,
    deduplicated by matrix.

    Parameters
    ==========
    name : :obj:`str`
    steps : :obj:`list` of :obj:`tuple`
        ``(letter, matrix)`` pairs of a symmetric generating set.
    radius : :obj:`int`
    cap : :obj:`int` = 2000000
        State cap; exceeding it raises :class:`.StateCapError`.
    workers : :obj:`int` = 1
        Threads for frontier expansion.
    """
    if radius < 0:
        raise ValueError('The radius must be non-negative.')
    k = steps[0][1].shape[0]
    entries = ball_bfs(identity_matrix(k), steps, lambda m, g: m.dot(g), radius,
                       key=mat_key, cap=kwargs.pop('cap', DEFAULT_STATE_CAP), workers=kwargs.pop('workers', 1))
    return MatrixBall(name, radius, entries)
