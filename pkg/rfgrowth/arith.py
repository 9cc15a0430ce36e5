import logging
from dataclasses import dataclass
from functools import reduce
from math import ceil, log
from typing import Iterator, List, NamedTuple, Sequence, Tuple

import numpy as np
from pandas import DataFrame
from sympy import divisors, factorint, ilcm, isprime, jacobi_symbol, mod_inverse, primerange
from sympy.ntheory import multiplicity, sqrt_mod

from rfgrowth.constants import MIN_NORM_BOUND
from rfgrowth.report import Report
from rfgrowth.witness import QuotientWitness

logger = logging.getLogger(__name__)


class ArithError(ValueError):
    ...


def psi(r: int) -> int:
    """
    ``ψ(r) = lcm(1, ..., r)``, with ``ψ(0) = ψ(1) = 1``.
    """
    if r < 0:
        raise ValueError(f'psi is defined for r ≥ 0, got {r}.')
    return reduce(ilcm, range(1, r + 1), 1)


def least_non_divisor(m: int) -> int:
    q = 2
    while m % q == 0:
        q += 1
    return q


def k_int(m: int) -> Tuple[int, QuotientWitness]:
    """
    The order of the smallest quotient ``ℤ/q`` in which ``m`` survives, with
    its witness.

    Parameters
    ==========
    m : :obj:`int`
        A nonzero integer.
    """
    if m == 0:
        raise ArithError('element is trivial; k undefined')
    q = least_non_divisor(m)
    return q, QuotientWitness(order=q, kind='congruence-mod-m', data=('Z', q))


def k_int_array(n_max: int) -> np.ndarray:
    """
    ``k_int`` of ``1, ..., n_max`` as an array (entry ``i`` is ``k_int(i + 1)``).
    """
    values = np.arange(1, n_max + 1, dtype=np.int64)
    ks = np.zeros(n_max, dtype=np.int64)
    undecided = np.ones(n_max, dtype=bool)
    q = 2
    while undecided.any():
        hit = undecided & (values % q != 0)
        ks[hit] = q
        undecided &= ~hit
        q += 1
    return ks


def F_int(n: int, method: str = 'exact-scan') -> Tuple[int, int]:
    """
    ``F_ℤ(n)`` over the generating set ``{±1}``, with the least maximizer.

    Parameters
    ==========
    n : :obj:`int`
        The radius, at least 1.
    method : :obj:`str` = 'exact-scan'
        ``exact-scan`` maximizes ``k_int`` over ``1, ..., n``; ``lcm-jump``
        evaluates ``k_int(ψ(m))`` for the largest ``m`` with ``ψ(m) ≤ n``.
    """
    if n < 1:
        raise ValueError(f'F_int needs n ≥ 1, got {n}.')
    if method == 'exact-scan':
        ks = k_int_array(n)
        argmax = int(np.argmax(ks))
        return int(ks[argmax]), argmax + 1
    elif method == 'lcm-jump':
        m, current = 1, 1
        while ilcm(current, m + 1) <= n:
            m += 1
            current = ilcm(current, m)
        return least_non_divisor(current), current
    raise ValueError("'method' should be either 'exact-scan' or 'lcm-jump'")


def F_int_prefix(n_max: int) -> List[Tuple[int, int]]:
    """
    ``F_int(n, 'exact-scan')`` for every ``n = 1, ..., n_max`` in one pass.
    """
    ks = k_int_array(n_max)
    rows, best, argmax = [], 0, 0
    for i, k in enumerate(ks.tolist()):
        if k > best:
            best, argmax = k, i + 1
        rows.append((best, argmax))
    return rows


def psi_jumps(low: int, high: int) -> List[int]:
    """
    The distinct values ``ψ(m)`` in ``[low, high]``.
    """
    jumps, m, current = [], 1, 1
    while current <= high:
        if current >= low and (not jumps or jumps[-1] != current):
            jumps.append(current)
        m += 1
        current = ilcm(current, m)
    return jumps


def k_int_vector(v: Sequence[int], d: int = None) -> int:
    """
    ``k`` of a vector in ``ℤ^d``: the least ``k_int`` over its nonzero
    coordinates.
    """
    return vector_witness(v, d)[0]


def vector_witness(v: Sequence[int], d: int = None) -> Tuple[int, QuotientWitness]:
    if d is not None and len(v) != d:
        raise ValueError(f'Expected a vector of dimension {d}, got {len(v)}.')
    nonzero = [(least_non_divisor(x), i) for i, x in enumerate(v) if x != 0]
    if not nonzero:
        raise ArithError('element is trivial; k undefined')
    q, i = min(nonzero)
    return q, QuotientWitness(order=q, kind='congruence-mod-m', data=('Zd', i, q))


def ell1_sphere(n: int, d: int) -> List[Tuple[int, ...]]:
    """
    Integer vectors of ℓ¹ norm exactly ``n`` in dimension ``d``, in descending
    lexicographic order.
    """
    def vectors(n, d):
        if d == 1:
            return [(n,), (-n,)] if n > 0 else [(0,)]
        out = []
        for x in range(-n, n + 1):
            for rest in vectors(n - abs(x), d - 1):
                out.append((x,) + rest)
        return out

    return sorted(set(vectors(n, d)), reverse=True)


def verify_lcm_extremal(M: int) -> Report:
    """
    Checks that ``k_int`` is maximized on ``[1, ψ(m)]`` at ``ψ(m)`` and that no
    ``l`` strictly between ``ψ(m)`` and ``ψ(m + 1)`` beats it, for ``m ≤ M``.
    """
    if M < 3:
        raise ValueError(f'verify_lcm_extremal needs M ≥ 3, got {M}.')
    report = Report('arith')
    ks = k_int_array(psi(M + 1)).tolist()
    counterexample = None
    running_max = 0
    position = 0
    for m in range(1, M + 1):
        low, high = psi(m), psi(m + 1)
        k_low = ks[low - 1]
        while position < low:
            running_max = max(running_max, ks[position])
            position += 1
        if running_max != k_low:
            counterexample = f'max of k_int on [1, {low}] is {running_max}, but k_int({low}) = {k_low}'
            break
        worse = [l for l in range(low + 1, high) if ks[l - 1] > k_low]
        if worse:
            counterexample = f'k_int({worse[0]}) = {ks[worse[0] - 1]} > k_int({low}) = {k_low}'
            break
    report.add('lcm_extremal', counterexample is None, counterexample or f'k_int maximal at psi(m) for all m ≤ {M}, l < {psi(M + 1)}')
    return report


def check_squarefree(D: int):
    if D in (0, 1):
        raise ArithError(f'D must be a squarefree integer other than 0 and 1, got {D}.')
    if any(e > 1 for e in factorint(abs(D)).values()):
        raise ArithError(f'D = {D} is not squarefree.')


def discriminant(D: int) -> int:
    return D if D % 4 == 1 else 4 * D


@dataclass(frozen=True)
class QuadInt:
    """
    An element ``a + b·ω`` of the ring of integers of ``ℚ(√D)``, where
    ``ω = √D`` if ``D ≡ 2, 3 (mod 4)`` and ``ω = (1 + √D)/2`` if ``D ≡ 1 (mod 4)``.

    Parameters
    ==========
    a : :obj:`int`
    b : :obj:`int`
    D : :obj:`int`
        A squarefree integer other than 0 and 1.
    """
    a: int
    b: int
    D: int

    def __post_init__(self):
        check_squarefree(self.D)

    def __repr__(self) -> str:
        return f'QuadInt({self.a} + {self.b}ω, D={self.D})'

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    @property
    def norm(self) -> int:
        if self.D % 4 == 1:
            return self.a * self.a + self.a * self.b + self.b * self.b * (1 - self.D) // 4
        return self.a * self.a - self.D * self.b * self.b

    @property
    def height(self) -> int:
        return max(abs(self.a), abs(self.b))


class PrimeSplit(NamedTuple):
    p: int
    kind: str
    residue_field_size: int


def split_type(p: int, D: int) -> PrimeSplit:
    """
    Classifies how the rational prime ``p`` decomposes in the ring of integers
    of ``ℚ(√D)``, using the Kronecker symbol of the field discriminant.
    """
    if not isprime(p):
        raise ArithError(f'{p} is not prime.')
    check_squarefree(D)
    disc = discriminant(D)
    if disc % p == 0:
        kind = 'ramified'
    elif p == 2:
        kind = 'split' if disc % 8 == 1 else 'inert'
    else:
        kind = 'split' if jacobi_symbol(disc % p, p) == 1 else 'inert'
    return PrimeSplit(p=p, kind=kind, residue_field_size=p * p if kind == 'inert' else p)


def minimal_polynomial(D: int) -> Tuple[int, int]:
    """
    ``(c1, c0)`` with ``ω² + c1·ω + c0 = 0``.
    """
    if D % 4 == 1:
        return -1, -(D - 1) // 4
    return 0, -D


def roots_mod_p(D: int, p: int) -> List[int]:
    """
    The roots of the minimal polynomial of ω modulo ``p``, ascending.
    """
    c1, c0 = minimal_polynomial(D)
    if p == 2:
        return [x for x in (0, 1) if (x * x + c1 * x + c0) % 2 == 0]
    delta = (c1 * c1 - 4 * c0) % p
    inv2 = mod_inverse(2, p)
    return sorted({((-c1 + s) * inv2) % p for s in (sqrt_mod(delta, p, all_roots=True) or [])})


def lift_root(D: int, r: int, p: int, e: int) -> int:
    """
    Hensel-lifts a simple root ``r`` of the minimal polynomial from ``p`` to ``p^e``.
    """
    c1, c0 = minimal_polynomial(D)
    modulus = p
    for _ in range(1, e):
        modulus *= p
        r = (r - (r * r + c1 * r + c0) * mod_inverse(2 * r + c1, modulus)) % modulus
    return r


class PrimeIdeal(NamedTuple):
    p: int
    kind: str
    norm: int
    root: int


def prime_ideals(D: int, bound: int) -> Iterator[PrimeIdeal]:
    """
    Prime ideals of norm at most ``bound``, by ascending rational prime.
    """
    for p in primerange(2, bound + 1):
        split = split_type(p, D)
        if split.residue_field_size > bound:
            continue
        if split.kind == 'inert':
            yield PrimeIdeal(p, 'inert', p * p, -1)
        else:
            for r in roots_mod_p(D, p):
                yield PrimeIdeal(p, split.kind, p, r)


def _v(p: int, x: int) -> float:
    return float('inf') if x == 0 else multiplicity(p, x)


def valuation(g: QuadInt, ideal: PrimeIdeal) -> int:
    """
    The exponent of ``ideal`` in the factorization of ``(g)``.
    """
    if g.is_zero:
        raise ArithError('element is trivial; k undefined')
    if ideal.kind == 'inert':
        return int(min(_v(ideal.p, g.a), _v(ideal.p, g.b)))
    if ideal.kind == 'ramified':
        return multiplicity(ideal.p, g.norm)
    e, limit = 0, multiplicity(ideal.p, g.norm)
    while e < limit:
        r = lift_root(g.D, ideal.root, ideal.p, e + 1)
        if (g.a + g.b * r) % ideal.p ** (e + 1) != 0:
            break
        e += 1
    return e


def default_norm_bound(g: QuadInt) -> int:
    return max(MIN_NORM_BOUND, ceil(4 * log(max(g.height, 1)) ** 2))


def k_ring(g: QuadInt, norm_bound: int = None) -> Tuple[int, QuotientWitness]:
    """
    The order of the smallest quotient ring ``O/I`` in which ``g`` survives.
    The minimum is attained at a prime power ``𝔭^(v+1)`` with ``v`` the
    valuation of ``g`` at ``𝔭``, so the search runs over prime ideals by
    ascending norm.

    Parameters
    ==========
    g : :class:`.QuadInt`
        A nonzero element.
    norm_bound : :obj:`int` = None
        Largest quotient order searched. Defaults to
        ``max(100, 4·ln(height)²)``. Exhausting the bound raises
        :class:`.ArithError`.
    """
    if g.is_zero:
        raise ArithError('element is trivial; k undefined')
    bound = norm_bound or default_norm_bound(g)
    best = None
    for ideal in prime_ideals(g.D, bound):
        if best is not None and ideal.p > best[0]:
            break
        e = valuation(g, ideal) + 1
        size = ideal.norm ** e
        if size <= bound and (best is None or size < best[0]):
            best = (size, ideal, e)
    if best is None:
        raise ArithError(f'No ideal of norm ≤ {bound} detects {g}; raise norm_bound.')
    size, ideal, e = best
    logger.debug('k_ring(%s) = %d via prime %d (%s), exponent %d', g, size, ideal.p, ideal.kind, e)
    return size, QuotientWitness(order=size, kind='residue-field', data=('quad', g.D, ideal.p, e, ideal.root))


def ring_witness_detects(g: QuadInt, witness: QuotientWitness) -> bool:
    _, D, p, e, root = witness.data
    if D != g.D or g.is_zero:
        return False
    split = split_type(p, D)
    norm = split.residue_field_size
    ideal = PrimeIdeal(p, split.kind, norm, root)
    if split.kind != 'inert' and root not in roots_mod_p(D, p):
        return False
    return witness.order == norm ** e and valuation(g, ideal) < e


def brute_k_ring(g: QuadInt, norm_max: int):
    """
    Independent oracle for :func:`k_ring`: scans every ideal of index at most
    ``norm_max``, written as a sublattice ``{x(α, 0) + y(γ, δ)}`` of ``ℤ ⊕ ℤω``
    in Hermite normal form and closed under multiplication by ω. Returns
    ``(index, (α, γ, δ))`` for the first ideal missing ``g``, or ``None``.
    """
    c1, c0 = minimal_polynomial(g.D)

    def times_omega(s, t):
        # ω·(s + tω) = s·ω + t·ω², with ω² = -c1·ω - c0
        return -c0 * t, s - c1 * t

    def contains(s, t, alpha, gamma, delta):
        if t % delta:
            return False
        return (s - (t // delta) * gamma) % alpha == 0

    for index in range(2, norm_max + 1):
        for alpha in divisors(index):
            delta = index // alpha
            for gamma in range(alpha):
                if not contains(*times_omega(alpha, 0), alpha, gamma, delta):
                    continue
                if not contains(*times_omega(gamma, delta), alpha, gamma, delta):
                    continue
                if not contains(g.a, g.b, alpha, gamma, delta):
                    return index, (alpha, gamma, delta)
    return None


def F_quad(D: int, n: int, **kwargs) -> Tuple[int, QuadInt]:
    """
    ``F`` of the ring of integers of ``ℚ(√D)`` over the generating set
    ``{±1, ±ω}``: the maximum of :func:`k_ring` over ``|a| + |b| ≤ n``.
    """
    best, argmax = 0, None
    for m in range(1, n + 1):
        for a, b in ell1_sphere(m, 2):
            k, _ = k_ring(QuadInt(a, b, D), **kwargs)
            if k > best:
                best, argmax = k, QuadInt(a, b, D)
    return best, argmax


def ratio_table_log(group: str, ns: Sequence[int], **kwargs) -> DataFrame:
    """
    Rows ``(n, F(n), F(n)/ln n)`` for ``ℤ`` (``group='z'``) or a quadratic ring
    (``group='quad(D)'``). The ratio is NaN at ``n = 1``.
    """
    ns = list(ns)
    if ns != sorted(ns):
        raise ValueError("'ns' should be ascending")
    if group == 'z':
        values = [F_int(n, method='lcm-jump')[0] for n in ns]
    elif group.startswith('quad(') and group.endswith(')'):
        D = int(group[5:-1])
        values = [F_quad(D, n, **kwargs)[0] for n in ns]
    else:
        raise ValueError("'group' should be either 'z' or 'quad(D)'")
    n_arr = np.array(ns, dtype=float)
    F_arr = np.array(values, dtype=float)
    with np.errstate(divide='ignore', invalid='ignore'):
        ratio = np.where(n_arr > 1, F_arr / np.log(n_arr), np.nan)
    return DataFrame({'n': ns, 'F': values, 'ratio': ratio})
