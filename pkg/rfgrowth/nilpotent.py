import logging
from typing import List, Tuple

import numpy as np
from sympy import nextprime, primorial

from rfgrowth.constants import RADIUS_CAPS
from rfgrowth.graph_utils import BallEntry
from rfgrowth.matrices import MatrixBall, elementary, format_matrix, identity_matrix, is_identity, is_identity_mod, matrix_ball
from rfgrowth.quotsearch import QuotientSearcher, UndetectedError, default_searcher
from rfgrowth.table import GrowthTable, KValue, assemble_growth
from rfgrowth.witness import QuotientWitness
from rfgrowth.words import HEISENBERG, Word, format_word

logger = logging.getLogger(__name__)


class NilpotentError(ValueError):
    ...


def as_unitri(m: np.ndarray) -> np.ndarray:
    """
    Checks that ``m`` is upper unitriangular and returns it.
    """
    d = m.shape[0]
    for i in range(d):
        if m[i, i] != 1 or any(m[i, j] != 0 for j in range(i)):
            raise NilpotentError(f'{format_matrix(m)} is not upper unitriangular.')
    return m


def unitri_generators(d: int) -> List[np.ndarray]:
    """
    The superdiagonal generators ``E_{i,i+1}(1)`` of ``U_d(ℤ)``.
    """
    if d < 2:
        raise NilpotentError(f'U_d needs d ≥ 2, got {d}.')
    return [elementary(d, i, i + 1) for i in range(1, d)]


def hirsch_unitri(d: int) -> int:
    """
    The Hirsch length ``d(d-1)/2`` of ``U_d(ℤ)``.
    """
    if d < 2:
        raise NilpotentError(f'U_d needs d ≥ 2, got {d}.')
    return d * (d - 1) // 2


def _steps(d: int):
    steps = []
    for i, g in enumerate(unitri_generators(d)):
        inv = g.copy()
        inv[i, i + 1] = -1
        steps += [(i + 1, g), (-(i + 1), inv)]
    return steps


def ball(d: int, radius: int, **kwargs) -> MatrixBall:
    """
    The ball of ``U_d(ℤ)`` for the generators ``E_{i,i+1}(±1)``. Letter ``a``
    is ``E₁₂``, ``b`` is ``E₂₃`` and so on; see :func:`.matrix_ball` for the
    keyword arguments.
    """
    if radius < 0:
        raise NilpotentError('The radius must be non-negative.')
    return matrix_ball(f'U_{d}(ℤ)', _steps(d), radius, **kwargs)


def word_to_unitri(word: Word, d: int = 3) -> np.ndarray:
    """
    Evaluates a word in the superdiagonal generators (``a ↦ E₁₂``, ``b ↦ E₂₃``, ...).
    """
    steps = dict(_steps(d))
    m = identity_matrix(d)
    for letter in word:
        if letter not in steps:
            raise NilpotentError(f'{format_word((letter,))} is not a generator of U_{d}.')
        m = m.dot(steps[letter])
    return m


def least_detecting_prime(m: np.ndarray) -> int:
    """
    The least prime ``p`` with ``m ≢ I (mod p)``.
    """
    if is_identity(m):
        raise NilpotentError('The identity survives in no quotient.')
    p = 2
    while is_identity_mod(m, p):
        p = nextprime(p)
    return p


def k_congruence_unitri(m: np.ndarray) -> Tuple[int, QuotientWitness]:
    """
    Detects ``m`` in ``U_d(ℤ/p)`` for the least prime ``p`` that does not kill
    it. The order ``p^(d(d-1)/2)`` is an upper bound for ``k``.
    """
    as_unitri(m)
    d = m.shape[0]
    p = least_detecting_prime(m)
    size = p ** hirsch_unitri(d)
    return size, QuotientWitness(order=size, kind='congruence-mod-m', data=('UT', d, p))


def unitri_witness_detects(m: np.ndarray, witness: QuotientWitness) -> bool:
    tag, d, p = witness.data
    return tag == 'UT' and d == m.shape[0] and witness.order == p ** hirsch_unitri(d) and not is_identity_mod(m, p)


def primorial_prime(bound: int) -> int:
    """
    The least prime whose primorial exceeds ``bound``. No nonzero integer of
    magnitude at most ``bound`` is divisible by every prime up to it.
    """
    p = 2
    while primorial(p, nth=False) <= bound:
        p = nextprime(p)
    return p


def k_exact_heisenberg(word: Word, variant: str = 'any', searcher: QuotientSearcher = None) -> KValue:
    """
    ``k`` of a word in the Heisenberg presentation by quotient search. Words
    with no detecting quotient up to ``q_max`` fall back to the congruence
    bound, bracketed below by ``q_max + 1``.
    """
    searcher = searcher or default_searcher()
    try:
        result = searcher.search(HEISENBERG, word, variant)
        return KValue(result.k, result.lower, result.witness)
    except UndetectedError as e:
        upper, witness = k_congruence_unitri(word_to_unitri(word))
        logger.debug(f'{format_word(word)} undetected below degree {e.lower}, congruence bound {upper}')
        return KValue(upper, min(e.lower, upper), witness)


def F_nilpotent(d: int, radius: int, method: str = 'congruence', **kwargs) -> GrowthTable:
    """
    Residual finiteness growth of ``U_d(ℤ)`` over the balls of radius
    ``1, ..., radius``.

    Parameters
    ==========
    d : :obj:`int`
    radius : :obj:`int`
    method : :obj:`str` = 'congruence'
        ``congruence`` uses :func:`k_congruence_unitri`; ``exact`` (``d = 3``
        only) runs the quotient search on the Heisenberg presentation and
        cross-checks every value against the congruence bound.
    variant : :obj:`str` = 'any'
        ``any`` or ``nilpotent`` for the exact method.
    searcher : :class:`.QuotientSearcher` = None
    cap : :obj:`int` = 2000000
    workers : :obj:`int` = 1
    """
    variant = kwargs.pop('variant', 'any')
    searcher = kwargs.pop('searcher', None)
    if method == 'exact':
        if d != 3:
            raise NilpotentError('The exact method needs d = 3.')
        if radius > RADIUS_CAPS['heis-exact']:
            raise NilpotentError(f"The exact method is capped at radius {RADIUS_CAPS['heis-exact']}.")

        def k_of(entry: BallEntry) -> KValue:
            value = k_exact_heisenberg(entry.word, variant, searcher)
            cong, _ = k_congruence_unitri(entry.element)
            if value.lower > cong:
                raise NilpotentError(f'{format_word(entry.word)}: lower bound {value.lower} exceeds congruence bound {cong}.')
            return value

        group_id, encode = 'heis', lambda e: format_word(e.word)
    elif method == 'congruence':
        def k_of(entry: BallEntry) -> KValue:
            size, witness = k_congruence_unitri(entry.element)
            return KValue(size, size, witness)

        group_id, encode = f'unitri({d})', lambda e: format_matrix(e.element)
    else:
        raise ValueError("'method' should be either 'congruence' or 'exact'")

    nil_ball = ball(d, radius, **kwargs)
    logger.info(f'{nil_ball}')
    return assemble_growth(group_id, 'E_(i,i+1)(±1)', method, nil_ball.spheres(), k_of, encode, lambda e: e.length)
