from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, Hashable, List, NamedTuple, Sequence, Tuple

from rfgrowth.constants import DEFAULT_STATE_CAP


class StateCapError(Exception):
    def __init__(self, cap: int) -> None:
        super().__init__(f'The ball exceeded the state cap of {cap} elements. Lower the radius or raise the cap.')
        self.cap = cap


class BallEntry(NamedTuple):
    element: Any
    length: int
    word: Tuple


def _expand(frontier: List[BallEntry], steps: Sequence[Tuple[Any, Any]], multiply: Callable, key: Callable):
    expanded = []
    for entry in frontier:
        for letter, generator in steps:
            element = multiply(entry.element, generator)
            expanded.append((key(element), element, entry.word + (letter,)))
    return expanded


def _chunks(items: list, n: int):
    size = -(-len(items) // n)
    return [items[i:i + size] for i in range(0, len(items), size)]


def ball_bfs(root: Any, steps: Sequence[Tuple[Any, Any]], multiply: Callable, radius: int, **kwargs) -> List[BallEntry]:
    """
    Enumerates the ball of the given radius around ``root`` in a word metric,
    layer by layer. Entries come back in breadth-first order (by length, then by
    the order of ``steps``), each with a geodesic word.

    Parameters
    ==========
    root : :obj:`object`
        The identity element.
    steps : :obj:`list` of :obj:`tuple`
        ``(letter, generator)`` pairs of the symmetric generating set.
    multiply : :obj:`callable`
        ``multiply(element, generator)`` returns the product, the element acting
        first.
    radius : :obj:`int`
        The radius of the ball.
    key : :obj:`callable` = None
        Maps an element to a hashable deduplication key. Defaults to the
        element itself.
    same : :obj:`callable` = None
        Exact equality test used when two elements share a key. When omitted,
        equal keys mean equal elements.
    cap : :obj:`int` = 2000000
        Maximum number of elements; exceeding it raises :class:`.StateCapError`.
    workers : :obj:`int` = 1
        Threads used to expand each frontier. Deduplication always runs in
        frontier order, so the result does not depend on this value.
    """
    key = kwargs.pop('key', None) or (lambda x: x)
    same = kwargs.pop('same', None)
    cap = kwargs.pop('cap', DEFAULT_STATE_CAP)
    workers = kwargs.pop('workers', 1)

    seen: Dict[Hashable, List[Any]] = {key(root): [root]}
    entries = [BallEntry(root, 0, ())]
    frontier = entries[:]

    for depth in range(1, radius + 1):
        if workers > 1 and len(frontier) > workers:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                parts = pool.map(lambda chunk: _expand(chunk, steps, multiply, key), _chunks(frontier, workers))
                expanded = [item for part in parts for item in part]
        else:
            expanded = _expand(frontier, steps, multiply, key)

        next_frontier = []
        for k, element, word in expanded:
            bucket = seen.get(k)
            if bucket is not None:
                if same is None or any(same(element, other) for other in bucket):
                    continue
                bucket.append(element)
            else:
                seen[k] = [element]
            entry = BallEntry(element, depth, word)
            entries.append(entry)
            next_frontier.append(entry)
            if len(entries) > cap:
                raise StateCapError(cap)
        frontier = next_frontier

    return entries


def spheres(entries: List[BallEntry]) -> Dict[int, List[BallEntry]]:
    """
    Groups ball entries by word length.
    """
    layers: Dict[int, List[BallEntry]] = {}
    for entry in entries:
        layers.setdefault(entry.length, []).append(entry)
    return layers
