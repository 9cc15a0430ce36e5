"""
The first Grigorchuk group Γ acting on the binary tree.

Elements are strings over ``abcd``. Words act left to right: the leftmost
letter acts first. The generators satisfy

- ``a`` flips the first bit,
- ``b = (a, c)``, ``c = (a, d)``, ``d = (1, b)`` with no swap.

Level-``k`` actions are permutations of the ``2^k`` vertices of depth ``k``,
a vertex indexed by its binary string read with the first letter as the most
significant bit.
"""
import logging
from functools import lru_cache
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from rfgrowth.constants import GRIG_BFS_MAX_LEVEL, GRIG_DEPTH_CAP, GRIG_FINGERPRINT_LEVEL, RADIUS_CAPS
from rfgrowth.graph_utils import ball_bfs, spheres
from rfgrowth.table import GrowthTable, KValue, assemble_growth
from rfgrowth.witness import QuotientWitness

logger = logging.getLogger(__name__)

LETTERS = 'abcd'
_WREATH = {'b': ('a', 'c'), 'c': ('a', 'd'), 'd': ('', 'b')}
_KLEIN = {frozenset('bc'): 'd', frozenset('bd'): 'c', frozenset('cd'): 'b'}
BASE_WITNESS = 'abadabad'
_SUBSTITUTION = {'a': 'aca', 'b': 'd', 'c': 'b', 'd': 'c'}
_PHI = {'a': 'd', 'b': '', 'c': 'a', 'd': 'a'}


class GrigError(ValueError):
    ...


class Sections(NamedTuple):
    g0: str
    g1: str
    swap: bool


def _check_letters(w: str):
    bad = set(w) - set(LETTERS)
    if bad:
        raise GrigError(f"Letters {sorted(bad)} are not generators of Γ (expected a subset of 'abcd').")


def reduce(w: str) -> str:
    """
    Cancels equal neighbours and merges neighbouring letters of ``bcd`` into
    the third one, until neither applies.
    """
    _check_letters(w)
    stack: List[str] = []
    for letter in w:
        while True:
            if not stack:
                stack.append(letter)
                break
            top = stack[-1]
            if top == letter:
                stack.pop()
                break
            if top != 'a' and letter != 'a':
                stack.pop()
                letter = _KLEIN[frozenset((top, letter))]
                continue
            stack.append(letter)
            break
    return ''.join(stack)


def inverse(g: str) -> str:
    return g[::-1]


def multiply(*words: str) -> str:
    return reduce(''.join(words))


@lru_cache(maxsize=None)
def _sections_left(g: str) -> Sections:
    sec0, sec1 = [], []
    flip = 0
    for letter in g:
        if letter == 'a':
            flip ^= 1
        else:
            pair = _WREATH[letter]
            sec0.append(pair[flip])
            sec1.append(pair[1 - flip])
    return Sections(reduce(''.join(sec0)), reduce(''.join(sec1)), bool(flip))


def sections(g: str, convention: str = 'left') -> Sections:
    """
    The wreath decomposition ``g = (g0, g1)`` followed by a swap of the two
    subtrees when ``swap`` is set.

    Parameters
    ==========
    g : :obj:`str`
    convention : :obj:`str` = 'left'
        ``left``: the leftmost letter acts first. ``right``: the rightmost
        letter acts first.
    """
    g = reduce(g)
    if convention == 'left':
        return _sections_left(g)
    elif convention == 'right':
        s = _sections_left(g[::-1])
        return Sections(s.g0[::-1], s.g1[::-1], s.swap)
    else:
        raise ValueError("'convention' should be either 'left' or 'right'")


def _act_letter(letter: str, bits: List[int]):
    i = 0
    while i < len(bits) and letter:
        if letter == 'a':
            bits[i] ^= 1
            return
        letter = _WREATH[letter][bits[i]]
        i += 1


def act(g: str, s: str) -> str:
    """
    The image of the vertex ``s`` (a binary string) under ``g``, letter by
    letter from the defining equations.
    """
    _check_letters(g)
    bits = [int(x) for x in s]
    for letter in g:
        _act_letter(letter, bits)
    return ''.join(str(x) for x in bits)


def act_by_sections(g: str, s: str) -> str:
    """
    The image of ``s`` under ``g`` computed through the wreath recursion.
    """
    if not s:
        return s
    sec = sections(g)
    first = int(s[0])
    rest = act_by_sections(sec[first], s[1:])
    return str(first ^ sec.swap) + rest


@lru_cache(maxsize=None)
def _is_trivial(g: str) -> bool:
    if len(g) <= 1:
        return g == ''
    sec = _sections_left(g)
    if sec.swap:
        return False
    return _is_trivial(sec.g0) and _is_trivial(sec.g1)


def is_trivial(g: str) -> bool:
    """
    Whether ``g = 1`` in Γ. Sections of a reduced word are at most about half
    as long, so the recursion terminates.
    """
    return _is_trivial(reduce(g))


def equal(g: str, h: str) -> bool:
    return is_trivial(g + inverse(h))


@lru_cache(maxsize=None)
def _depth(g: str) -> int:
    # sections cycle (b → c → d → b), so search level by level
    frontier, seen = [g], {g}
    for level in range(1, GRIG_DEPTH_CAP + 1):
        nxt = []
        for h in frontier:
            sec = _sections_left(h)
            if sec.swap:
                return level
            for s in (sec.g0, sec.g1):
                if s not in seen and not _is_trivial(s):
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    raise GrigError(f'{g} acts trivially up to level {GRIG_DEPTH_CAP}.')


def depth(g: str, method: str = 'sections') -> int:
    """
    The least level ``k ≥ 1`` on which ``g`` acts nontrivially.

    Parameters
    ==========
    g : :obj:`str`
        A nontrivial element.
    method : :obj:`str` = 'sections'
        ``sections`` recurses on the wreath decomposition; ``action`` scans the
        level actions ``k = 1, 2, ...`` up to level 16.
    """
    g = reduce(g)
    if is_trivial(g):
        raise GrigError('The identity has no depth.')
    if method == 'sections':
        return _depth(g)
    elif method == 'action':
        for k in range(1, GRIG_DEPTH_CAP + 1):
            if not np.array_equal(level_action(g, k), np.arange(2 ** k)):
                return k
        raise GrigError(f'{g} acts trivially up to level {GRIG_DEPTH_CAP}.')
    else:
        raise ValueError("'method' should be either 'sections' or 'action'")


def depth_bound(g: str) -> int:
    """
    ``⌈log₂|g|⌉ + 2`` for ``|g| ≥ 2``, and 3 for single letters.
    """
    n = len(reduce(g))
    if n <= 1:
        return 3
    return (n - 1).bit_length() + 2


@lru_cache(maxsize=None)
def letter_action(letter: str, k: int) -> np.ndarray:
    """
    The permutation of the level-``k`` vertices induced by a generator.
    """
    size = 2 ** k
    if k == 0:
        return np.zeros(1, dtype=np.int64)
    h = size // 2
    if letter == 'a':
        return np.concatenate([np.arange(h) + h, np.arange(h)])
    left, right = _WREATH[letter]
    lower_left = letter_action(left, k - 1) if left else np.arange(h)
    return np.concatenate([lower_left, letter_action(right, k - 1) + h])


def level_action(g: str, k: int) -> np.ndarray:
    """
    The permutation of the level-``k`` vertices induced by ``g``.
    """
    _check_letters(g)
    result = np.arange(2 ** k)
    for letter in g:
        result = letter_action(letter, k)[result]
    return result


def truncate(action: np.ndarray) -> np.ndarray:
    """
    The level ``k - 1`` action of a level ``k`` action.
    """
    return action[0::2] >> 1


def _portrait_codes(actions: np.ndarray, k: int) -> np.ndarray:
    codes = np.zeros(len(actions), dtype=np.int64)
    for level in range(k):
        for prefix in range(2 ** level):
            leaf = prefix << (k - level)
            bit = (actions[:, leaf].astype(np.int64) >> (k - 1 - level)) & 1
            codes = (codes << 1) | bit
    return codes


def _gamma_order_bfs(k: int) -> int:
    if k > GRIG_BFS_MAX_LEVEL:
        raise GrigError(f'The closure of Γ_{k} is beyond the cap of level {GRIG_BFS_MAX_LEVEL}.')
    if k == 0:
        return 1
    generators = [letter_action(letter, k).astype(np.uint8) for letter in LETTERS]
    layer = np.arange(2 ** k, dtype=np.uint8)[None, :]
    layer_codes = _portrait_codes(layer, k)
    previous_codes = np.zeros(0, dtype=np.int64)
    total = 1
    while len(layer):
        candidates = np.concatenate([s[layer] for s in generators])
        codes, index = np.unique(_portrait_codes(candidates, k), return_index=True)
        fresh = ~np.isin(codes, layer_codes) & ~np.isin(codes, previous_codes)
        previous_codes = layer_codes
        layer, layer_codes = candidates[index[fresh]], codes[fresh]
        total += len(layer)
        logger.debug(f'Γ_{k}: layer of {len(layer)}, total {total}')
    return total


def gamma_order(k: int, method: str = 'formula') -> int:
    """
    The order of the level-``k`` quotient ``Γ_k``.

    Parameters
    ==========
    k : :obj:`int`
    method : :obj:`str` = 'formula'
        ``formula``: ``2^(5·2^(k-3) + 2)`` for ``k ≥ 3``, the closure below.
        ``bfs``: closes the four generator actions under composition
        (``k ≤ 5``). Every generator is an involution, so a breadth-first layer
        only meets itself and the two neighbouring layers.
    """
    if k < 0:
        raise ValueError('The level must be non-negative.')
    if method == 'formula':
        if k < 3:
            return _gamma_order_bfs(k)
        return 2 ** (5 * 2 ** (k - 3) + 2)
    elif method == 'bfs':
        return _gamma_order_bfs(k)
    else:
        raise ValueError("'method' should be either 'formula' or 'bfs'")


def level_sections(g: str, k: int) -> Optional[List[str]]:
    """
    The ``2^k`` sections of ``g`` at level ``k``, indexed like the vertices, or
    ``None`` when ``g`` moves some vertex of level ``k``.
    """
    current = [reduce(g)]
    for _ in range(k):
        nxt = []
        for h in current:
            sec = _sections_left(h)
            if sec.swap:
                return None
            nxt += [sec.g0, sec.g1]
        current = nxt
    return current


def substitute(g: str) -> str:
    """
    The substitution ``a → aca, b → d, c → b, d → c``. The image of ``g`` in
    the level stabiliser has sections ``(φ(g), g)`` with ``φ`` sending
    ``a → d, b → 1, c → a, d → a``, and ``φ`` kills the base witness.
    """
    return reduce(''.join(_SUBSTITUTION[x] for x in reduce(g)))


def phi(g: str) -> str:
    """
    The first section of :func:`substitute`: ``a → d, b → 1, c → a, d → a``.
    """
    return reduce(''.join(_PHI[x] for x in reduce(g)))


def witness_deep(k: int) -> str:
    """
    An element fixing level ``k`` whose level-``k`` sections are all trivial
    except the last one, which is ``(ab)²``. Its length is ``2^(k+2)`` and its
    depth ``k + 2``.
    """
    if k < 1:
        raise ValueError('witness_deep needs k ≥ 1.')
    g = BASE_WITNESS
    for _ in range(k - 1):
        g = substitute(g)
    verify_deep(g, k)
    return g


def verify_deep(g: str, k: int):
    secs = level_sections(g, k)
    if secs is None:
        raise GrigError(f'{g} does not fix level {k}.')
    *rest, last = secs
    if any(not is_trivial(s) for s in rest) or not equal(last, 'abab'):
        raise GrigError(f'The level-{k} sections of {g} are not (1, ..., 1, (ab)²).')


def k_congruence_grig(g: str) -> Tuple[int, int, QuotientWitness]:
    """
    Brackets ``k_Γ(g)``: the level quotient ``Γ_D`` at the depth ``D`` of ``g``
    detects it, and every quotient detecting it has order at least
    ``|Γ_{max(1, D - 6)}|``.

    Returns
    =======
    (lower, upper, witness)
    """
    d = depth(g)
    upper = gamma_order(d)
    lower = gamma_order(max(1, d - 6))
    return lower, upper, QuotientWitness(order=upper, kind='tree-level', data=('grig', d))


def grig_witness_detects(g: str, witness: QuotientWitness) -> bool:
    tag, level = witness.data
    return (tag == 'grig' and witness.order == gamma_order(level)
            and not np.array_equal(level_action(g, level), np.arange(2 ** level)))


def _fingerprint(g: str) -> bytes:
    return level_action(g, GRIG_FINGERPRINT_LEVEL).tobytes()


def grig_ball(radius: int, **kwargs):
    """
    The ball of Γ for the generators ``a, b, c, d``. Elements are reduced
    words, deduplicated by their level-8 action with an exact triviality test
    on collisions.
    """
    radius_cap = kwargs.pop('radius_cap', RADIUS_CAPS['grig'])
    if radius > radius_cap:
        raise GrigError(f'Radius {radius} exceeds the cap {radius_cap} for Γ.')
    steps = [(letter, letter) for letter in LETTERS]
    return ball_bfs('', steps, lambda g, x: reduce(g + x), radius,
                    key=_fingerprint, same=equal, **kwargs)


def F_grig(radius: int, **kwargs) -> GrowthTable:
    """
    Residual finiteness growth of Γ over the balls of radius
    ``1, ..., radius``. Each element contributes the bracket of
    :func:`k_congruence_grig`; ``F`` is the upper end.
    """
    entries = grig_ball(radius, **kwargs)

    def k_of(entry) -> KValue:
        lower, upper, witness = k_congruence_grig(entry.element)
        return KValue(upper, lower, witness)

    return assemble_growth('grig', 'a,b,c,d', 'level', spheres(entries), k_of,
                           lambda e: e.element, lambda e: e.length)
