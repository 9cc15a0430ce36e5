import logging
from concurrent.futures import ProcessPoolExecutor
from itertools import permutations, product
from math import factorial
from threading import Lock
from typing import Dict, List, NamedTuple, Optional, Sequence, Set, Tuple

from sympy import factorint, ilcm
from sympy.ntheory import multiplicity
from sympy.utilities.iterables import partitions

from rfgrowth.constants import DEFAULT_ORDER_CAP, DEFAULT_Q_MAX
from rfgrowth.words import Presentation, Word, format_word
from rfgrowth.witness import QuotientWitness

logger = logging.getLogger(__name__)

Perm = Tuple[int, ...]


class QuotientSearchError(ValueError):
    ...


class OrderCapError(Exception):
    def __init__(self, cap: int) -> None:
        super().__init__(f'order exceeds cap ({cap})')
        self.cap = cap


class UndetectedError(Exception):
    def __init__(self, word: Word, lower: int) -> None:
        super().__init__(f'undetected below bound: {format_word(word)} survives in no quotient of order < {lower} (k > {lower - 1})')
        self.word = word
        self.lower = lower


def identity(q: int) -> Perm:
    return tuple(range(q))


def compose(x: Perm, y: Perm) -> Perm:
    """
    The product ``x·y``: ``x`` acts first, so ``(x·y)[i] = y[x[i]]``.
    """
    return tuple([y[i] for i in x])


def inverse(x: Perm) -> Perm:
    inv = [0] * len(x)
    for i, j in enumerate(x):
        inv[j] = i
    return tuple(inv)


def from_cycles(q: int, cycles: Sequence[Sequence[int]]) -> Perm:
    """
    Builds a permutation of ``{1, ..., q}`` from 1-based cycles, for example
    ``from_cycles(3, [(1, 2)])``. The result is 0-based.
    """
    images = list(range(q))
    for cycle in cycles:
        for i, point in enumerate(cycle):
            images[point - 1] = cycle[(i + 1) % len(cycle)] - 1
    return tuple(images)


def cycle_type(x: Perm) -> Tuple[int, ...]:
    seen, lengths = set(), []
    for start in range(len(x)):
        if start in seen:
            continue
        length, point = 0, start
        while point not in seen:
            seen.add(point)
            point = x[point]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def perm_order(x: Perm) -> int:
    order = 1
    for length in cycle_type(x):
        order = ilcm(order, length)
    return order


def commutator_perm(x: Perm, y: Perm) -> Perm:
    return compose(compose(inverse(x), inverse(y)), compose(x, y))


def is_transitive(images: Sequence[Perm]) -> bool:
    q = len(images[0])
    orbit, stack = {0}, [0]
    while stack:
        point = stack.pop()
        for image in images:
            target = image[point]
            if target not in orbit:
                orbit.add(target)
                stack.append(target)
    return len(orbit) == q


def eval_word(word: Word, images: Sequence[Perm]) -> Perm:
    """
    Evaluates a word on generator images, left to right.
    """
    if len(images) == 0:
        raise QuotientSearchError('At least one generator image is needed.')
    q = len(images[0])
    if any(len(image) != q for image in images):
        raise QuotientSearchError('All images must act on the same point set.')
    result = identity(q)
    inverses = {}
    for letter in word:
        index = abs(letter) - 1
        if index >= len(images):
            raise QuotientSearchError(f'The letter {format_word((letter,))} has no image ({len(images)} generators).')
        if letter > 0:
            result = compose(result, images[index])
        else:
            if index not in inverses:
                inverses[index] = inverse(images[index])
            result = compose(result, inverses[index])
    return result


def _trace(point: int, word: Word, images: Sequence[Perm], inverses: Sequence[Perm]) -> int:
    for letter in word:
        point = images[letter - 1][point] if letter > 0 else inverses[-letter - 1][point]
    return point


def _fixes_all(word: Word, images: Sequence[Perm], inverses: Sequence[Perm]) -> bool:
    return all(_trace(p, word, images, inverses) == p for p in range(len(images[0])))


def _moves_some(word: Word, images: Sequence[Perm], inverses: Sequence[Perm]) -> bool:
    return any(_trace(p, word, images, inverses) != p for p in range(len(images[0])))


def _closure(generators: Sequence[Perm], cap: int) -> Optional[List[Perm]]:
    """
    Elements of the generated group in breadth-first order, or ``None`` once
    more than ``cap`` elements have been found.
    """
    start = identity(len(generators[0]))
    seen = {start}
    elements = [start]
    i = 0
    while i < len(elements):
        element = elements[i]
        i += 1
        for generator in generators:
            product_ = compose(element, generator)
            if product_ not in seen:
                seen.add(product_)
                elements.append(product_)
                if len(elements) > cap:
                    return None
    return elements


class PermGroup:
    """
    The subgroup of a symmetric group generated by a list of permutations,
    fully enumerated.

    Parameters
    ==========
    generators : :obj:`list` of permutations
        0-based permutation tuples on the same point set.
    cap : :obj:`int` = 40320
        Largest order enumerated; a larger group raises :class:`.OrderCapError`.
    """
    def __init__(self, generators: Sequence[Perm], cap: int = DEFAULT_ORDER_CAP) -> None:
        if len(generators) == 0:
            raise QuotientSearchError('A group needs at least one generator.')
        self.generators = [tuple(g) for g in generators]
        self.degree = len(self.generators[0])
        elements = _closure(self.generators, cap)
        if elements is None:
            raise OrderCapError(cap)
        self.elements = elements
        self._element_set = set(elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, element: Perm) -> bool:
        return tuple(element) in self._element_set

    def __repr__(self) -> str:
        return f'PermGroup of order {self.order} on {self.degree} points'

    @property
    def order(self) -> int:
        return len(self.elements)


def group_order(generators: Sequence[Perm], cap: int = DEFAULT_ORDER_CAP) -> int:
    """
    The exact order of the group generated by ``generators``.
    """
    return PermGroup(generators, cap).order


def _normal_closure(seeds: Set[Perm], generators: Sequence[Perm], degree: int) -> Set[Perm]:
    conjugates, stack = set(seeds), list(seeds)
    inverses = [inverse(g) for g in generators]
    while stack:
        element = stack.pop()
        for g, g_inv in zip(generators, inverses):
            c = compose(compose(g_inv, element), g)
            if c not in conjugates:
                conjugates.add(c)
                stack.append(c)
    nontrivial = [c for c in conjugates if c != identity(degree)]
    if not nontrivial:
        return {identity(degree)}
    return set(_closure(nontrivial, float('inf')))


def lower_central_series(group: PermGroup) -> List[Set[Perm]]:
    """
    ``γ₁ = G ⊇ γ₂ ⊇ ...`` computed inside the enumerated element set, with
    ``γᵢ₊₁`` the normal closure of ``[x, s]`` for ``x ∈ γᵢ`` and ``s`` a
    generator. Stops when the series stabilizes.
    """
    series = [set(group.elements)]
    while True:
        current = series[-1]
        seeds = {commutator_perm(x, s) for x in current for s in group.generators}
        following = _normal_closure(seeds, group.generators, group.degree)
        if len(following) == len(current):
            return series
        series.append(following)
        if len(following) == 1:
            return series


def is_nilpotent(group: PermGroup) -> bool:
    """
    ``True`` iff the lower central series reaches the trivial group.
    """
    return len(lower_central_series(group)[-1]) == 1


def nilpotency_class(group: PermGroup) -> Optional[int]:
    """
    The nilpotency class (0 for the trivial group), or ``None`` when the group
    is not nilpotent.
    """
    series = lower_central_series(group)
    if len(series[-1]) != 1:
        return None
    return len(series) - 1


def _sylow_nilpotent(elements: Sequence[Perm]) -> bool:
    # nilpotent iff for every p the p-elements number exactly |G|_p
    order = len(elements)
    element_orders = [perm_order(x) for x in elements]
    for p, e in factorint(order).items():
        p_elements = sum(1 for o in element_orders if o == p ** multiplicity(p, o))
        if p_elements != p ** e:
            return False
    return True


def nilpotent_order_bound(q: int) -> int:
    """
    The largest possible order of a transitive nilpotent group of degree ``q``:
    such a group is a product of p-groups, the one for ``p`` acting faithfully
    on ``p^e`` points where ``p^e`` exactly divides ``q``.
    """
    bound = 1
    for p, e in factorint(q).items():
        bound *= p ** multiplicity(p, factorial(p ** e))
    return bound


def conjugacy_representatives(q: int) -> List[Perm]:
    """
    One permutation per cycle type of degree ``q``, cycles laid out on
    consecutive points, ordered by the ascending tuple of descending parts
    (the identity first).
    """
    types = []
    for parts in partitions(q):
        types.append(tuple(sorted((k for k, m in parts.items() for _ in range(m)), reverse=True)))
    reps = []
    for parts in sorted(types):
        images, start = [], 0
        for length in parts:
            images.extend(start + (i + 1) % length for i in range(length))
            start += length
        reps.append(tuple(images))
    return reps


class Candidate(NamedTuple):
    index: Tuple[int, int]
    images: Tuple[Perm, ...]
    inverses: Tuple[Perm, ...]
    order: int


class SearchResult(NamedTuple):
    """
    The outcome of a quotient search: ``k`` is the least image order found, and
    every detecting quotient has order at least ``lower``.
    """
    k: int
    witness: QuotientWitness
    lower: int

    @property
    def exact(self) -> bool:
        return self.lower >= self.k


def _tuples(presentation: Presentation, q: int, nilpotent: bool, rank: int = None):
    """
    Generator-image tuples of degree ``q`` in enumeration order: the first image
    runs over conjugacy-class representatives, the others over all permutations
    in lexicographic order. For the nilpotent filter every image must have order
    dividing :func:`nilpotent_order_bound`.
    """
    bound = nilpotent_order_bound(q) if nilpotent else None
    reps = conjugacy_representatives(q)
    others = list(permutations(range(q)))
    if bound is not None:
        others = [x for x in others if bound % perm_order(x) == 0]
    for r, rep in enumerate(reps):
        if rank is not None and r != rank:
            continue
        if bound is not None and bound % perm_order(rep) != 0:
            continue
        for i, rest in enumerate(product(others, repeat=presentation.num_generators - 1)):
            yield (r, i), (rep,) + rest


def _admissible_partition(presentation: Presentation, q: int, nilpotent: bool, order_cap: int, rank: int = None) -> List[Candidate]:
    bound = nilpotent_order_bound(q) if nilpotent else None
    cap = min(order_cap, bound) if bound is not None else order_cap
    found = []
    for index, images in _tuples(presentation, q, nilpotent, rank):
        inverses = tuple(inverse(x) for x in images)
        if not all(_fixes_all(r, images, inverses) for r in presentation.relators):
            continue
        if not is_transitive(images):
            continue
        if bound is not None and len(images) > 1:
            x, y = images[0], images[1]
            if bound % perm_order(compose(x, y)) or bound % perm_order(compose(x, inverses[1])):
                continue
        elements = _closure(images, cap)
        if elements is None:
            continue
        if nilpotent and not _sylow_nilpotent(elements):
            continue
        found.append(Candidate(index, images, inverses, len(elements)))
    return found


class QuotientSearcher:
    """
    Exhaustive search for the smallest finite quotient of a finitely presented
    group in which a word survives.

    Degrees ``q = 2, 3, ...`` are scanned in order. At each degree every tuple
    of generator images in the symmetric group on ``q`` points is considered
    (up to simultaneous conjugation), and a tuple is accepted when its image is
    transitive, kills every relator, moves the target word and passes the
    filter. The least image order wins, ties going to the first tuple in
    enumeration order. Once a quotient of order ``k`` is found only degrees
    below ``k`` are scanned. Every quotient of order ``N`` acts regularly on
    ``N`` points, so the answer is exact when every degree below it was scanned.

    Parameters
    ==========
    q_max : :obj:`int` = 8
        Largest degree scanned.
    order_cap : :obj:`int` = 40320
        Images of larger order are skipped when no quotient is known yet.
    workers : :obj:`int` = 1
        Processes used to enumerate admissible tuples, one partition per
        conjugacy class of the first image.
    """
    def __init__(self, q_max: int = DEFAULT_Q_MAX, **kwargs) -> None:
        self.q_max = q_max
        self.order_cap = kwargs.pop('order_cap', DEFAULT_ORDER_CAP)
        self.workers = kwargs.pop('workers', 1)
        self._admissible: Dict[tuple, List[Candidate]] = {}
        self._lock = Lock()

    def __repr__(self) -> str:
        return f'QuotientSearcher(q_max={self.q_max}, order_cap={self.order_cap}, workers={self.workers})'

    def admissible(self, presentation: Presentation, q: int, nilpotent: bool) -> List[Candidate]:
        """
        The accepted image tuples of degree ``q`` independent of any target
        word, memoized per presentation.
        """
        key = (presentation, q, nilpotent)
        with self._lock:
            if key in self._admissible:
                return self._admissible[key]
        logger.debug('enumerating admissible tuples of %s at degree %d (nilpotent=%s)', presentation.name, q, nilpotent)
        if self.workers > 1:
            ranks = range(len(conjugacy_representatives(q)))
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                parts = pool.map(_admissible_partition, *zip(*[(presentation, q, nilpotent, self.order_cap, r) for r in ranks]))
                found = [c for part in parts for c in part]
        else:
            found = _admissible_partition(presentation, q, nilpotent, self.order_cap)
        logger.debug('%d admissible tuples at degree %d', len(found), q)
        with self._lock:
            self._admissible[key] = found
        return found

    def _scan_lazily(self, presentation: Presentation, word: Word, q: int, best: Optional[Candidate]) -> Optional[Candidate]:
        for index, images in _tuples(presentation, q, False):
            inverses = tuple(inverse(x) for x in images)
            if not _moves_some(word, images, inverses):
                continue
            if not is_transitive(images):
                continue
            cap = best.order - 1 if best is not None else self.order_cap
            elements = _closure(images, cap)
            if elements is None:
                continue
            best = Candidate(index, images, inverses, len(elements))
        return best

    def search(self, presentation: Presentation, word: Word, variant: str = 'any') -> SearchResult:
        """
        Finds the smallest quotient detecting ``word``.

        Parameters
        ==========
        presentation : :class:`.Presentation`
            The group.
        word : :obj:`Word`
            A reduced, nonempty word.
        variant : :obj:`str` = 'any'
            ``any`` or ``nilpotent``.
        """
        if variant not in ('any', 'nilpotent'):
            raise ValueError("'variant' should be either 'any' or 'nilpotent'")
        if len(word) == 0:
            raise QuotientSearchError('The empty word is trivial; k is undefined.')
        if any(abs(l) > presentation.num_generators for l in word):
            raise QuotientSearchError(f'{format_word(word)} uses a generator outside {presentation.name}.')
        nilpotent = variant == 'nilpotent'
        memoize = nilpotent or len(presentation.relators) > 0

        best: Optional[Candidate] = None
        best_degree = None
        scanned = 1
        for q in range(2, self.q_max + 1):
            if best is not None and q >= best.order:
                break
            if memoize:
                for candidate in self.admissible(presentation, q, nilpotent):
                    if best is not None and candidate.order >= best.order:
                        continue
                    if _moves_some(word, candidate.images, candidate.inverses):
                        best = candidate
                        best_degree = q
            else:
                found = self._scan_lazily(presentation, word, q, best)
                if found is not best:
                    best, best_degree = found, q
            scanned = q
            logger.debug('%s: degree %d scanned, best %s', format_word(word), q, best.order if best else None)

        if best is None:
            raise UndetectedError(word, scanned + 1)
        witness = QuotientWitness(order=best.order, kind='symmetric-image', data=best.images)
        logger.debug('%s: k = %d on %d points', format_word(word), best.order, best_degree)
        return SearchResult(k=best.order, witness=witness, lower=min(best.order, scanned + 1))


_default_searchers: Dict[int, QuotientSearcher] = {}


def default_searcher(q_max: int = DEFAULT_Q_MAX) -> QuotientSearcher:
    if q_max not in _default_searchers:
        _default_searchers[q_max] = QuotientSearcher(q_max=q_max)
    return _default_searchers[q_max]


def min_quotient(presentation: Presentation, word: Word, q_max: int = DEFAULT_Q_MAX, variant: str = 'any') -> SearchResult:
    """
    The smallest finite quotient of ``presentation`` in which ``word`` survives,
    optionally restricted to nilpotent quotients. Raises
    :class:`.UndetectedError` when no quotient is found up to degree ``q_max``.
    """
    return default_searcher(q_max).search(presentation, word, variant)


def check_witness(presentation: Presentation, word: Word, witness: QuotientWitness, variant: str = 'any') -> bool:
    """
    Re-verifies a symmetric-image witness: every relator maps to the identity,
    ``word`` does not, and the image has the recorded order.
    """
    if witness.kind != 'symmetric-image' or len(witness.data) != presentation.num_generators:
        return False
    images = witness.data
    q = len(images[0])
    if any(eval_word(r, images) != identity(q) for r in presentation.relators):
        return False
    if eval_word(word, images) == identity(q):
        return False
    try:
        group = PermGroup(images, cap=witness.order)
    except OrderCapError:
        return False
    if group.order != witness.order:
        return False
    return variant != 'nilpotent' or is_nilpotent(group)


def weight_bound(weight: int) -> int:
    """
    Lower bound for a nilpotent quotient in which a left-normed commutator of
    the given weight survives: the quotient has class at least ``weight``, so
    one of its Sylow subgroups does too and has order at least ``2^(weight+1)``.
    """
    return 2 ** (weight + 1)
