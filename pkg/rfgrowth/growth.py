import logging
import re
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from rfgrowth import arith, grig, nilpotent, quotsearch, slk
from rfgrowth.constants import DEFAULT_Q_MAX, GROUP_IDS, RADIUS_CAPS
from rfgrowth.graph_utils import BallEntry, ball_bfs, spheres
from rfgrowth.matrices import MatrixError, elementary, format_matrix, identity_matrix, is_identity, parse_matrix
from rfgrowth.table import GrowthTable, KValue, assemble_growth
from rfgrowth.witness import QuotientWitness
from rfgrowth.words import FREE2, HEISENBERG, WordError, format_word, reduce_word

logger = logging.getLogger(__name__)

METHOD_VARIANTS = {'exact': 'any', 'nilpotent': 'nilpotent', 'congruence': 'congruence'}


class UnknownGroup(Exception):
    def __init__(self, group_id: str) -> None:
        super().__init__(f"Unknown group '{group_id}'. Known groups: {', '.join(GROUP_IDS)}.")
        self.group_id = group_id


class GrowthError(ValueError):
    ...


class Family:
    """
    A group with a fixed generating set: how to parse, encode and enumerate its
    elements and how to compute and check their ``k`` values.

    ``encode`` is the display form used in the ``argmax`` column and accepted
    by ``parse``; ``key`` is the canonical form used by the cache.
    """
    group_id: str
    generating_set: str
    variants: Tuple[str, ...] = ('any',)

    def __repr__(self) -> str:
        return f'{type(self).__name__}({self.group_id} over {self.generating_set})'

    def check_variant(self, variant: str):
        if variant not in self.variants:
            raise GrowthError(f"Variant '{variant}' is not available for {self.group_id} (choose from {', '.join(self.variants)}).")

    def parse(self, text: str):
        raise NotImplementedError

    def encode(self, element) -> str:
        raise NotImplementedError

    def key(self, element) -> str:
        return self.encode(element)

    def is_identity(self, element) -> bool:
        raise NotImplementedError

    def ball(self, radius: int, **kwargs) -> List[BallEntry]:
        raise NotImplementedError

    def k_value(self, element, variant: str = 'any', **kwargs) -> KValue:
        raise NotImplementedError

    def check_witness(self, element, witness: QuotientWitness, variant: str = 'any') -> bool:
        raise NotImplementedError

    def search_bound(self, variant: str, **kwargs) -> Optional[int]:
        """
        The permutation degree bound the value of ``variant`` depends on, or
        ``None`` when it does not depend on a search.
        """
        return None


class IntegerFamily(Family):
    group_id = 'z'
    generating_set = '±1'

    def parse(self, text: str) -> int:
        try:
            return int(text)
        except ValueError as e:
            raise GrowthError(f"'{text}' is not an integer.") from e

    def encode(self, element: int) -> str:
        return str(element)

    def is_identity(self, element: int) -> bool:
        return element == 0

    def ball(self, radius: int, **kwargs) -> List[BallEntry]:
        return ball_bfs(0, [(1, 1), (-1, -1)], lambda x, s: x + s, radius, **kwargs)

    def k_value(self, element: int, variant: str = 'any', **kwargs) -> KValue:
        q, witness = arith.k_int(element)
        return KValue(q, q, witness)

    def check_witness(self, element: int, witness: QuotientWitness, variant: str = 'any') -> bool:
        tag, q = witness.data
        return tag == 'Z' and witness.order == q and element % q != 0


class LatticeFamily(Family):
    """
    ``ℤ^d`` over the unit vectors.
    """
    def __init__(self, d: int) -> None:
        if d < 1:
            raise GrowthError(f'zd(d) needs d ≥ 1, got {d}.')
        self.d = d
        self.group_id = f'zd({d})'
        self.generating_set = '±e_i'

    def parse(self, text: str) -> Tuple[int, ...]:
        try:
            v = tuple(int(x) for x in text.split(','))
        except ValueError as e:
            raise GrowthError(f"'{text}' is not a comma-separated integer vector.") from e
        if len(v) != self.d:
            raise GrowthError(f'Expected {self.d} coordinates, got {len(v)}.')
        return v

    def encode(self, element: Tuple[int, ...]) -> str:
        return ','.join(str(x) for x in element)

    def is_identity(self, element) -> bool:
        return not any(element)

    def ball(self, radius: int, **kwargs) -> List[BallEntry]:
        steps = []
        for i in range(self.d):
            for t in (1, -1):
                e = [0] * self.d
                e[i] = t
                steps.append(((i + 1) * t, tuple(e)))
        return ball_bfs((0,) * self.d, steps, lambda x, s: tuple(a + b for a, b in zip(x, s)), radius, **kwargs)

    def k_value(self, element, variant: str = 'any', **kwargs) -> KValue:
        q, witness = arith.vector_witness(element, self.d)
        return KValue(q, q, witness)

    def check_witness(self, element, witness: QuotientWitness, variant: str = 'any') -> bool:
        tag, i, q = witness.data
        return tag == 'Zd' and witness.order == q and 0 <= i < self.d and element[i] % q != 0


class QuadraticFamily(Family):
    """
    The additive group of the ring of integers of ``ℚ(√D)`` over ``{±1, ±ω}``,
    with ring quotients.
    """
    def __init__(self, D: int) -> None:
        arith.check_squarefree(D)
        self.D = D
        self.group_id = f'quad({D})'
        self.generating_set = '±1,±ω'

    def parse(self, text: str) -> arith.QuadInt:
        try:
            a, b = (int(x) for x in text.split(','))
        except ValueError as e:
            raise GrowthError(f"'{text}' is not of the form a,b.") from e
        return arith.QuadInt(a, b, self.D)

    def encode(self, element: arith.QuadInt) -> str:
        return f'{element.a},{element.b}'

    def is_identity(self, element: arith.QuadInt) -> bool:
        return element.is_zero

    def ball(self, radius: int, **kwargs) -> List[BallEntry]:
        steps = [(1, (1, 0)), (-1, (-1, 0)), (2, (0, 1)), (-2, (0, -1))]
        entries = ball_bfs((0, 0), steps, lambda x, s: (x[0] + s[0], x[1] + s[1]), radius, **kwargs)
        return [BallEntry(arith.QuadInt(*e.element, self.D), e.length, e.word) for e in entries]

    def k_value(self, element: arith.QuadInt, variant: str = 'any', **kwargs) -> KValue:
        size, witness = arith.k_ring(element, kwargs.get('norm_bound'))
        return KValue(size, size, witness)

    def check_witness(self, element: arith.QuadInt, witness: QuotientWitness, variant: str = 'any') -> bool:
        return witness.data[0] == 'quad' and arith.ring_witness_detects(element, witness)


def sanov_matrix(word) -> np.ndarray:
    """
    The image of a free-group word under ``a ↦ E₁₂(2)``, ``b ↦ E₂₁(2)``, a
    faithful representation into ``SL_2(ℤ)``.
    """
    images = {1: elementary(2, 1, 2, 2), -1: elementary(2, 1, 2, -2),
              2: elementary(2, 2, 1, 2), -2: elementary(2, 2, 1, -2)}
    m = identity_matrix(2)
    for letter in word:
        m = m.dot(images[letter])
    return m


class WordFamily(Family):
    """
    Groups given by a presentation on ``a, b``, with elements as reduced
    words.
    """
    variants = ('any', 'nilpotent', 'congruence')

    def __init__(self, presentation) -> None:
        self.presentation = presentation
        self.group_id = presentation.name
        self.generating_set = 'a,b'

    def parse(self, text: str):
        try:
            return self.presentation.parse(text)
        except WordError as e:
            raise GrowthError(str(e)) from e

    def encode(self, element) -> str:
        return format_word(element)

    def is_identity(self, element) -> bool:
        return len(element) == 0

    def _searcher(self, kwargs) -> quotsearch.QuotientSearcher:
        return kwargs.get('searcher') or quotsearch.default_searcher(kwargs.get('q_max') or DEFAULT_Q_MAX)

    def search_bound(self, variant: str, **kwargs) -> Optional[int]:
        return None if variant == 'congruence' else self._searcher(kwargs).q_max

    def check_witness(self, element, witness: QuotientWitness, variant: str = 'any') -> bool:
        if witness.kind == 'symmetric-image':
            return quotsearch.check_witness(self.presentation, element, witness, variant)
        return self._check_matrix_witness(element, witness)

    def _check_matrix_witness(self, element, witness: QuotientWitness) -> bool:
        raise NotImplementedError


class FreeFamily(WordFamily):
    def __init__(self) -> None:
        super().__init__(FREE2)

    def ball(self, radius: int, **kwargs) -> List[BallEntry]:
        steps = [(x, (x,)) for x in self.presentation.symmetric_generators()]
        return ball_bfs((), steps, lambda w, s: reduce_word(w + s), radius, **kwargs)

    def k_value(self, element, variant: str = 'any', **kwargs) -> KValue:
        self.check_variant(variant)
        if variant == 'congruence':
            size, witness = slk.k_congruence_sl(sanov_matrix(element))
            return KValue(size, size, witness)
        try:
            result = self._searcher(kwargs).search(self.presentation, element, variant)
            return KValue(result.k, result.lower, result.witness)
        except quotsearch.UndetectedError as e:
            return KValue(None, e.lower, None)

    def _check_matrix_witness(self, element, witness: QuotientWitness) -> bool:
        return slk.sl_witness_detects(sanov_matrix(element), witness)


class HeisenbergFamily(WordFamily):
    def __init__(self) -> None:
        super().__init__(HEISENBERG)

    def key(self, element) -> str:
        return format_matrix(nilpotent.word_to_unitri(element))

    def is_identity(self, element) -> bool:
        return is_identity(nilpotent.word_to_unitri(element))

    def ball(self, radius: int, **kwargs) -> List[BallEntry]:
        radius_cap = kwargs.pop('radius_cap', RADIUS_CAPS['heis-exact'])
        if radius > radius_cap:
            raise GrowthError(f'Radius {radius} exceeds the cap {radius_cap} for heis; use unitri(3) beyond it.')
        return [BallEntry(e.word, e.length, e.word) for e in nilpotent.ball(3, radius, **kwargs)]

    def k_value(self, element, variant: str = 'any', **kwargs) -> KValue:
        self.check_variant(variant)
        if variant == 'congruence':
            size, witness = nilpotent.k_congruence_unitri(nilpotent.word_to_unitri(element))
            return KValue(size, size, witness)
        return nilpotent.k_exact_heisenberg(element, variant, self._searcher(kwargs))

    def _check_matrix_witness(self, element, witness: QuotientWitness) -> bool:
        return nilpotent.unitri_witness_detects(nilpotent.word_to_unitri(element), witness)


class MatrixFamily(Family):
    variants = ('congruence',)

    def parse(self, text: str) -> np.ndarray:
        try:
            m = parse_matrix(text)
        except MatrixError as e:
            raise GrowthError(str(e)) from e
        if m.shape[0] != self.dimension:
            raise GrowthError(f'Expected a {self.dimension}×{self.dimension} matrix, got {text}.')
        return self.validate(m)

    def encode(self, element: np.ndarray) -> str:
        return format_matrix(element)

    def is_identity(self, element: np.ndarray) -> bool:
        return is_identity(element)

    def validate(self, m: np.ndarray) -> np.ndarray:
        return m


class UnitriangularFamily(MatrixFamily):
    def __init__(self, d: int) -> None:
        nilpotent.hirsch_unitri(d)
        self.dimension = d
        self.group_id = f'unitri({d})'
        self.generating_set = 'E_(i,i+1)(±1)'

    def validate(self, m: np.ndarray) -> np.ndarray:
        try:
            return nilpotent.as_unitri(m)
        except nilpotent.NilpotentError as e:
            raise GrowthError(str(e)) from e

    def ball(self, radius: int, **kwargs) -> List[BallEntry]:
        return nilpotent.ball(self.dimension, radius, **kwargs).entries

    def k_value(self, element: np.ndarray, variant: str = 'congruence', **kwargs) -> KValue:
        self.check_variant(variant)
        size, witness = nilpotent.k_congruence_unitri(element)
        return KValue(size, size, witness)

    def check_witness(self, element: np.ndarray, witness: QuotientWitness, variant: str = 'congruence') -> bool:
        return nilpotent.unitri_witness_detects(element, witness)


class SLFamily(MatrixFamily):
    def __init__(self, k: int) -> None:
        if k not in (2, 3):
            raise UnknownGroup(f'sl({k})')
        self.dimension = k
        self.group_id = f'sl({k})'
        self.generating_set = 'E_ij(±1)'
        # SL_2(ℤ) has non-congruence quotients, so its values are upper bounds
        self.upper_only = k == 2

    def validate(self, m: np.ndarray) -> np.ndarray:
        try:
            return slk.as_sl(m)
        except slk.SLError as e:
            raise GrowthError(str(e)) from e

    def ball(self, radius: int, **kwargs) -> List[BallEntry]:
        return slk.sl_ball(self.dimension, radius, **kwargs).entries

    def k_value(self, element: np.ndarray, variant: str = 'congruence', **kwargs) -> KValue:
        self.check_variant(variant)
        size, witness = slk.k_congruence_sl(element, kwargs.get('m_max'))
        return KValue(size, size, witness)

    def check_witness(self, element: np.ndarray, witness: QuotientWitness, variant: str = 'congruence') -> bool:
        return slk.sl_witness_detects(element, witness)


class GrigorchukFamily(Family):
    group_id = 'grig'
    generating_set = 'a,b,c,d'
    variants = ('congruence',)

    def parse(self, text: str) -> str:
        text = text.strip()
        if text == '1':
            return ''
        try:
            return grig.reduce(text)
        except grig.GrigError as e:
            raise GrowthError(str(e)) from e

    def encode(self, element: str) -> str:
        return element or '1'

    def is_identity(self, element: str) -> bool:
        return grig.is_trivial(element)

    def ball(self, radius: int, **kwargs) -> List[BallEntry]:
        return grig.grig_ball(radius, **kwargs)

    def k_value(self, element: str, variant: str = 'congruence', **kwargs) -> KValue:
        self.check_variant(variant)
        lower, upper, witness = grig.k_congruence_grig(element)
        return KValue(upper, lower, witness)

    def check_witness(self, element: str, witness: QuotientWitness, variant: str = 'congruence') -> bool:
        return grig.grig_witness_detects(element, witness)


_PARAMETERIZED = re.compile(r'^(zd|quad|unitri|sl)\((-?\d+)\)$')


def get_family(group_id: str) -> Family:
    """
    The :class:`.Family` for a group id such as ``z``, ``zd(3)``,
    ``quad(-1)``, ``free(2)``, ``heis``, ``unitri(4)``, ``sl(2)`` or ``grig``.
    Raises :class:`.UnknownGroup` for anything else.
    """
    fixed = {'z': IntegerFamily, 'free(2)': FreeFamily, 'heis': HeisenbergFamily, 'grig': GrigorchukFamily}
    if group_id in fixed:
        return fixed[group_id]()
    match = _PARAMETERIZED.match(group_id.replace(' ', ''))
    if not match:
        raise UnknownGroup(group_id)
    name, value = match.group(1), int(match.group(2))
    try:
        return {'zd': LatticeFamily, 'quad': QuadraticFamily, 'unitri': UnitriangularFamily, 'sl': SLFamily}[name](value)
    except (ValueError, arith.ArithError) as e:
        raise UnknownGroup(group_id) from e


def methods(family: Family) -> List[str]:
    """
    The growth methods available for a family.
    """
    if family.variants == ('any',):
        return ['exact']
    return [m for m, v in METHOD_VARIANTS.items() if v in family.variants]


def variant_of(family: Family, method: str) -> str:
    if method not in methods(family):
        raise GrowthError(f"Method '{method}' is not available for {family.group_id} (choose from {', '.join(methods(family))}).")
    return METHOD_VARIANTS[method]


def k_value(group_id: str, element: Any, variant: str = None, **kwargs) -> Tuple[KValue, Family]:
    """
    ``k`` of one element, given either parsed or in its text encoding.

    Parameters
    ==========
    group_id : :obj:`str`
    element : :obj:`object`
    variant : :obj:`str` = None
        ``any``, ``nilpotent`` or ``congruence``; defaults to the first variant
        the group supports.
    q_max : :obj:`int` = 8
    cache : :class:`.ResultCache` = None
    """
    family = get_family(group_id)
    variant = variant or family.variants[0]
    family.check_variant(variant)
    if isinstance(element, str):
        element = family.parse(element)
    if family.is_identity(element):
        raise GrowthError('element is trivial; k undefined')
    cache = kwargs.pop('cache', None)
    if cache is not None:
        bound = family.search_bound(variant, **kwargs)
        value = cache.get(family, element, variant, bound)
        if value is not None:
            return value, family
    value = family.k_value(element, variant, **kwargs)
    if cache is not None:
        cache.put(family, element, variant, value, bound)
    return value, family


def compute_growth(group_id: str, radius: int, method: str = None, **kwargs) -> GrowthTable:
    """
    Computes the growth table of a group over the balls of radius
    ``1, ..., radius`` by evaluating every nontrivial element of the ball.

    Parameters
    ==========
    group_id : :obj:`str`
    radius : :obj:`int`
    method : :obj:`str` = None
        ``exact``, ``nilpotent`` or ``congruence``, as available for the
        group; defaults to the first one.
    cache : :class:`.ResultCache` = None
        Per-element values are read from and written to it.
    workers : :obj:`int` = 1
        Threads evaluating elements concurrently; the table does not depend on
        this value.
    q_max : :obj:`int` = 8
    cap : :obj:`int` = 2000000
        Ball state cap.
    """
    family = get_family(group_id)
    method = method or methods(family)[0]
    variant = variant_of(family, method)
    cache = kwargs.pop('cache', None)
    workers = kwargs.pop('workers', 1)
    ball_kwargs = {k: kwargs.pop(k) for k in ('cap', 'radius_cap') if k in kwargs}
    if radius < 0:
        raise ValueError('The radius must be non-negative.')

    entries = [e for e in family.ball(radius, **ball_kwargs) if e.length > 0]
    logger.info(f'{family}: {len(entries)} nontrivial elements up to radius {radius}')

    def evaluate(entry: BallEntry) -> KValue:
        return k_value(group_id, entry.element, variant, cache=cache, **kwargs)[0]

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(evaluate, entries))
    else:
        values = [evaluate(e) for e in entries]

    evaluated = spheres([BallEntry((e.element, v), e.length, e.word) for e, v in zip(entries, values)])
    label = method + '-upper' if getattr(family, 'upper_only', False) else method
    table = assemble_growth(family.group_id, family.generating_set, label, evaluated,
                            lambda e: e.element[1], lambda e: family.encode(e.element[0]), lambda e: e.length)
    for row in table:
        if row.witness is not None and not family.check_witness(family.parse(row.argmax), row.witness, variant):
            raise GrowthError(f'The witness of row n={row.n} does not detect {row.argmax}.')
    return table


def witness_summary(kind: str, n: int) -> Dict[str, Any]:
    """
    Builds one of the explicit witnesses and measures it.

    Parameters
    ==========
    kind : :obj:`str`
        ``lcm``: ``ψ(n)`` in ℤ. ``elementary``: ``E₁₂(ψ(n))`` in ``SL_3(ℤ)``.
        ``grig-deep``: the deep element of Γ fixing level ``n``.
    n : :obj:`int`
    """
    if kind == 'lcm':
        m = arith.psi(n)
        q, witness = arith.k_int(m)
        return {'element': str(m), 'k': q, 'witness': witness.encode()}
    elif kind == 'elementary':
        g = slk.witness_elementary(3, n)
        size, witness = slk.k_congruence_sl(g)
        return {'element': format_matrix(g), 'least_level': slk.least_detecting_modulus(g),
                'k': size, 'witness': witness.encode()}
    elif kind == 'grig-deep':
        g = grig.witness_deep(n)
        lower, upper, witness = grig.k_congruence_grig(g)
        return {'element': g, 'length': len(g), 'depth': grig.depth(g),
                'k_lower': lower, 'k_upper': upper, 'witness': witness.encode()}
    raise ValueError("'kind' should be one of 'lcm', 'elementary' or 'grig-deep'")
