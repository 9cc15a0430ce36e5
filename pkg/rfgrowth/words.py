from dataclasses import dataclass, field
from itertools import chain
from typing import Iterable, List, Sequence, Tuple

Word = Tuple[int, ...]

LETTERS = 'abcdefghijklmnopqrstuvwxyz'


class WordError(ValueError):
    ...


def reduce_word(word: Iterable[int]) -> Word:
    """
    Freely reduces a word. Letters are signed generator indices: ``i`` for the
    ``i``-th generator (starting at 1) and ``-i`` for its inverse.
    """
    stack = []
    for letter in word:
        if letter == 0:
            raise WordError('0 is not a valid letter; generators are numbered from 1.')
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def invert(word: Sequence[int]) -> Word:
    return tuple(-letter for letter in reversed(word))


def multiply(*words: Sequence[int]) -> Word:
    return reduce_word(chain(*words))


def power(word: Sequence[int], n: int) -> Word:
    if n < 0:
        return reduce_word(invert(word) * -n)
    return reduce_word(tuple(word) * n)


def commutator(x: Sequence[int], y: Sequence[int]) -> Word:
    """
    The commutator ``[x, y] = x⁻¹y⁻¹xy``.
    """
    return multiply(invert(x), invert(y), x, y)


def iterated_commutator(letters: Sequence[int]) -> Word:
    """
    The left-normed commutator ``[[...[a₁, a₂], a₃], ..., aₙ]`` of single
    letters, fully expanded and freely reduced.

    Parameters
    ==========
    letters : :obj:`list` of :obj:`int`
        Signed generator indices ``a₁, ..., aₙ`` with ``n ≥ 2``.
    """
    if len(letters) < 2:
        raise WordError(f'An iterated commutator needs at least 2 letters, got {len(letters)}.')
    word = (letters[0],)
    for letter in letters[1:]:
        word = commutator(word, (letter,))
    return word


def parse_word(text: str, num_generators: int = None) -> Word:
    """
    Parses a letter string: ``a`` is the first generator, ``A`` its inverse,
    ``b`` the second, and so on. ``1`` or the empty string is the empty word.
    The result is freely reduced.
    """
    text = text.strip()
    if text in ('', '1'):
        return ()
    letters = []
    for char in text:
        index = LETTERS.find(char.lower())
        if index < 0:
            raise WordError(f"'{char}' is not a generator letter.")
        if num_generators is not None and index >= num_generators:
            raise WordError(f"'{char}' is out of range for {num_generators} generators.")
        letters.append(index + 1 if char.islower() else -(index + 1))
    return reduce_word(letters)


def format_word(word: Sequence[int]) -> str:
    if len(word) == 0:
        return '1'
    return ''.join(LETTERS[l - 1] if l > 0 else LETTERS[-l - 1].upper() for l in word)


@dataclass(frozen=True)
class Presentation:
    """
    A finite presentation: generators ``a, b, ...`` and a tuple of reduced
    relators.

    Parameters
    ==========
    name : :obj:`str`
        The group id the presentation belongs to.
    num_generators : :obj:`int`
        Number of generators, at least 1.
    relators : :obj:`tuple` of :obj:`Word` = ()
        Relators, each freely reduced.
    """
    name: str
    num_generators: int
    relators: Tuple[Word, ...] = field(default=())

    def __post_init__(self):
        if self.num_generators < 1:
            raise WordError('A presentation needs at least one generator.')
        for relator in self.relators:
            if reduce_word(relator) != tuple(relator):
                raise WordError(f'The relator {format_word(relator)} is not reduced.')
            if any(abs(l) > self.num_generators for l in relator):
                raise WordError(f'The relator {format_word(relator)} uses an unknown generator.')

    def __repr__(self) -> str:
        gens = ', '.join(LETTERS[:self.num_generators])
        rels = ', '.join(format_word(r) for r in self.relators)
        return f'{self.name} = <{gens} | {rels}>'

    def symmetric_generators(self) -> List[int]:
        """
        Returns the symmetric generating set as letters, in the fixed order
        ``a, A, b, B, ...``.
        """
        return list(chain.from_iterable((i, -i) for i in range(1, self.num_generators + 1)))

    def parse(self, text: str) -> Word:
        return parse_word(text, self.num_generators)


A, B = (1,), (2,)

Z = Presentation('z', 1)
FREE2 = Presentation('free(2)', 2)
Z2 = Presentation('zd(2)', 2, (commutator(A, B),))
HEISENBERG = Presentation('heis', 2, (commutator(A, commutator(A, B)), commutator(B, commutator(A, B))))
