import logging
from itertools import product
from typing import Dict, List, Tuple

import numpy as np
from scipy.stats import linregress
from sympy import factorint

from rfgrowth.arith import k_int, least_non_divisor, psi
from rfgrowth.constants import RADIUS_CAPS
from rfgrowth.matrices import (MatrixBall, determinant, elementary, format_matrix, identity_matrix, is_identity,
                               is_identity_mod, matrix_ball, max_entry)
from rfgrowth.report import Report
from rfgrowth.table import GrowthTable, KValue, assemble_growth
from rfgrowth.witness import QuotientWitness

logger = logging.getLogger(__name__)


class SLError(ValueError):
    ...


class CongruenceExhausted(Exception):
    def __init__(self, m_max: int) -> None:
        super().__init__(f'No congruence quotient of level at most {m_max} detects the element.')
        self.m_max = m_max


def _check_dimension(k: int):
    if k < 2:
        raise SLError(f'SL_k needs k ≥ 2, got {k}.')


def as_sl(m: np.ndarray) -> np.ndarray:
    """
    Checks that ``m`` has determinant 1 and returns it.
    """
    if determinant(m) != 1:
        raise SLError(f'{format_matrix(m)} does not have determinant 1.')
    return m


def sl_generators(k: int) -> List[np.ndarray]:
    """
    The elementary matrices ``E_ij(±1)``, ``i ≠ j``, generating ``SL_k(ℤ)``.
    """
    _check_dimension(k)
    return [g for _, g in _steps(k)]


def _steps(k: int):
    return [((i, j, t), elementary(k, i, j, t))
            for i in range(1, k + 1) for j in range(1, k + 1) if i != j for t in (1, -1)]


def sl_ball(k: int, radius: int, **kwargs) -> MatrixBall:
    """
    The exact ball of ``SL_k(ℤ)`` for the generators ``E_ij(±1)``.

    Parameters
    ==========
    k : :obj:`int`
    radius : :obj:`int`
    radius_cap : :obj:`int` = None
        Largest radius allowed; defaults to 11 for ``k = 2`` and 6 for ``k = 3``.
    cap : :obj:`int` = 2000000
    workers : :obj:`int` = 1
    """
    _check_dimension(k)
    radius_cap = kwargs.pop('radius_cap', RADIUS_CAPS.get(f'sl({k})'))
    if radius_cap is not None and radius > radius_cap:
        raise SLError(f'Radius {radius} exceeds the cap {radius_cap} for SL_{k}.')
    return matrix_ball(f'SL_{k}(ℤ)', _steps(k), radius, **kwargs)


def order_sl_prime_power(k: int, p: int, e: int) -> int:
    """
    ``|SL_k(ℤ/p^e)| = p^((e-1)(k²-1)) · p^(k(k-1)/2) · ∏_{i=2..k} (p^i - 1)``.
    """
    order = p ** ((e - 1) * (k * k - 1)) * p ** (k * (k - 1) // 2)
    for i in range(2, k + 1):
        order *= p ** i - 1
    return order


def order_slk_mod(k: int, m: int) -> int:
    """
    The order of ``SL_k(ℤ/m)``, multiplicative over the prime powers of ``m``.
    """
    _check_dimension(k)
    if m < 2:
        raise ValueError(f'The modulus must be at least 2, got {m}.')
    order = 1
    for p, e in factorint(m).items():
        order *= order_sl_prime_power(k, p, e)
    return order


def _det_small(entries: Tuple[int, ...], k: int) -> int:
    if k == 2:
        a, b, c, d = entries
        return a * d - b * c
    if k == 3:
        a, b, c, d, e, f, g, h, i = entries
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    return determinant(np.array(entries, dtype=object).reshape(k, k))


def brute_order_slk_mod(k: int, m: int) -> int:
    """
    Counts the ``k×k`` matrices over ``ℤ/m`` with determinant 1 by enumerating
    all ``m^(k²)`` of them.
    """
    _check_dimension(k)
    return sum(1 for entries in product(range(m), repeat=k * k) if _det_small(entries, k) % m == 1)


def is_prime_power(q: int) -> bool:
    return q >= 2 and len(factorint(q)) == 1


def default_m_max(g: np.ndarray) -> int:
    return 2 * max_entry(g - identity_matrix(g.shape[0])) + 2


def least_detecting_modulus(g: np.ndarray, m_max: int = None, prime_powers_only: bool = True) -> int:
    """
    The least modulus ``q ≤ m_max`` (a prime power unless
    ``prime_powers_only`` is off) with ``g ≢ I (mod q)``.
    """
    if is_identity(g):
        raise SLError('The identity survives in no quotient.')
    m_max = m_max or default_m_max(g)
    for q in range(2, m_max + 1):
        if (not prime_powers_only or is_prime_power(q)) and not is_identity_mod(g, q):
            return q
    raise CongruenceExhausted(m_max)


def k_congruence_sl(g: np.ndarray, m_max: int = None, **kwargs) -> Tuple[int, QuotientWitness]:
    """
    The least order of a congruence quotient ``SL_k(ℤ/q)`` in which ``g`` is
    not the identity, over levels ``q ≤ m_max``. The least level wins ties.

    Parameters
    ==========
    g : :class:`numpy.ndarray`
        A nonidentity matrix of determinant 1.
    m_max : :obj:`int` = None
        Largest level scanned; defaults to ``2·max|g - I| + 2``.
    restrict_prime_powers : :obj:`bool` = True
        Scan prime-power levels only. Every detecting level has a detecting
        prime-power divisor whose quotient order divides its own, so the
        minimum does not change.
    """
    restrict = kwargs.pop('restrict_prime_powers', True)
    if is_identity(g):
        raise SLError('The identity survives in no quotient.')
    k = g.shape[0]
    m_max = m_max or default_m_max(g)
    best = None
    for q in range(2, m_max + 1):
        if restrict and not is_prime_power(q):
            continue
        if is_identity_mod(g, q):
            continue
        order = order_slk_mod(k, q)
        if best is None or order < best[0]:
            best = (order, q)
    if best is None:
        raise CongruenceExhausted(m_max)
    order, q = best
    return order, QuotientWitness(order=order, kind='congruence-mod-m', data=('SL', k, q))


def sl_witness_detects(g: np.ndarray, witness: QuotientWitness) -> bool:
    tag, k, q = witness.data
    return tag == 'SL' and k == g.shape[0] and witness.order == order_slk_mod(k, q) and not is_identity_mod(g, q)


def witness_elementary(k: int, n: int) -> np.ndarray:
    """
    ``E₁₂(ψ(n))``: a short element surviving only in quotients of level
    larger than ``n``.
    """
    _check_dimension(k)
    return elementary(k, 1, 2, psi(n))


def embed_sl2(g: np.ndarray, k: int = 3) -> np.ndarray:
    """
    Embeds ``g ∈ SL_2(ℤ)`` block-diagonally into ``SL_k(ℤ)``.
    """
    m = identity_matrix(k)
    m[:2, :2] = g
    return m


def restrict_witness(witness: QuotientWitness) -> QuotientWitness:
    """
    Restricts a congruence witness of ``SL_k`` to the embedded ``SL_2``: the
    image of the copy in ``SL_k(ℤ/q)`` is ``SL_2(ℤ/q)``.
    """
    tag, k, q = witness.data
    if tag != 'SL':
        raise SLError(f'Cannot restrict the witness {witness}.')
    return QuotientWitness(order=order_slk_mod(2, q), kind=witness.kind, data=('SL', 2, q))


def F_sl(k: int, radius: int, **kwargs) -> GrowthTable:
    """
    Residual finiteness growth of ``SL_k(ℤ)`` over congruence quotients. For
    ``k = 2`` the values are upper bounds only, and the method says so.
    """
    return _growth(k, sl_ball(k, radius, **kwargs))


def _growth(k: int, sl: MatrixBall) -> GrowthTable:
    def k_of(entry) -> KValue:
        size, witness = k_congruence_sl(entry.element)
        return KValue(size, size, witness)

    method = 'congruence' if k > 2 else 'congruence-upper'
    return assemble_growth(f'sl({k})', 'E_ij(±1)', method, sl.spheres(), k_of,
                           lambda e: format_matrix(e.element), lambda e: e.length)


def verify_sl_lower(k: int, ns: List[int]) -> Report:
    """
    Checks, for each ``n``, that ``E₁₂(ψ(n))`` survives only at prime-power
    levels larger than ``n``, that the least such level is the least non-divisor
    of ``ψ(n)``, and that its congruence value is at least ``n``.
    """
    _check_dimension(k)
    report = Report('sl_lower')
    if k == 2:
        logger.warning('SL_2(ℤ) lacks the congruence subgroup property; the lower bound is congruence data only.')
    for n in ns:
        g = witness_elementary(k, n)
        q = least_detecting_modulus(g)
        size, witness = k_congruence_sl(g)
        expected, _ = k_int(psi(n))
        report.add(f'least_level_n={n}', q == expected and q > n, f'E12(psi({n})) first survives mod {q}, least non-divisor {expected}')
        report.add(f'order_n={n}', size >= n, f'k_congruence = {size} via {witness.encode()}')
    return report


def verify_sl_upper(k: int, radius: int, **kwargs) -> Report:
    """
    Measures ``F(n)`` over the ball and fits the polynomial envelope
    ``F(n) ≤ C·n^(k²-1)``: reports ``C``, checks the log-log slope, and checks
    the detection mechanism on every element. Each nonidentity element has a
    nonzero entry ``e`` of ``g - I`` with ``|e| ≤ λ^n + 1`` (``λ`` measured), and
    ``g`` survives modulo a prime power no larger than the least non-divisor
    of ``e``.
    """
    report = Report('sl_upper')
    if radius < 1:
        return report
    sl = sl_ball(k, radius, **kwargs)
    table = _growth(k, sl)
    exponent = k * k - 1
    ns = np.array([row.n for row in table], dtype=float)
    Fs = np.array([row.F for row in table], dtype=float)
    C = float(np.max(Fs / ns ** exponent))
    report.add('envelope', True, f'F(n) ≤ {C:.4g}·n^{exponent} for n ≤ {radius}; F = {[row.F for row in table]}')
    if len(table) >= 3:
        fit = linregress(np.log(ns), np.log(Fs))
        report.add('loglog_slope', fit.slope <= exponent + 0.5, f'slope {fit.slope:.3f} against exponent {exponent}')

    maxima = sl.max_entries()
    lam = max(maxima[n] ** (1 / n) for n in range(1, radius + 1))
    mechanism = True
    for entry in sl:
        if entry.length == 0:
            continue
        diff = entry.element - identity_matrix(k)
        smallest = min(abs(x) for x in diff.flat if x != 0)
        q = least_detecting_modulus(entry.element)
        if smallest > lam ** entry.length + 1 + 1e-9 or q > least_non_divisor(smallest):
            mechanism = False
            report.add('mechanism', False, f'{format_matrix(entry.element)}: entry {smallest}, level {q}')
            break
    if mechanism:
        report.add('mechanism', True, f'λ = {lam:.4f} over {len(sl)} elements')
    return report


def nonmonotone_levels(k: int, m_max: int) -> Dict[int, int]:
    """
    The levels ``m ≤ m_max`` with ``|SL_k(ℤ/m)| < |SL_k(ℤ/(m-1))|``, mapped to
    the order.
    """
    return {m: order_slk_mod(k, m) for m in range(3, m_max + 1) if order_slk_mod(k, m) < order_slk_mod(k, m - 1)}

