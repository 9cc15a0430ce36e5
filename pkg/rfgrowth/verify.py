import logging
from typing import Callable, Dict

import numpy as np
from sympy import isprime, prime

from rfgrowth import arith, grig, nilpotent, quotsearch, slk
from rfgrowth.growth import compute_growth, get_family
from rfgrowth.internals import golden
from rfgrowth.matrices import elementary, format_matrix, is_identity
from rfgrowth.report import Report
from rfgrowth.words import A, B, FREE2, HEISENBERG, commutator, format_word, iterated_commutator, power

logger = logging.getLogger(__name__)

SUITES: Dict[str, Callable[..., Report]] = {}


def suite(name: str):
    def register(func):
        SUITES[name] = func
        return func
    return register


def _search_value(presentation, word, variant):
    """
    ``(k, lower, result)`` with ``k`` ``None`` when nothing is found up to
    ``q_max``.
    """
    try:
        result = quotsearch.min_quotient(presentation, word, variant=variant)
        return result.k, result.lower, result
    except quotsearch.UndetectedError as e:
        return None, e.lower, None


@suite('arith')
def arith_suite(**kwargs) -> Report:
    n_max = kwargs.pop('n_max', 10_000)
    jump_high = kwargs.pop('jump_high', 10 ** 6)
    M = kwargs.pop('M', 8)
    report = Report('arith')

    for r in ('2', '3', '10'):
        report.add(f'psi({r})', arith.psi(int(r)) == golden('psi', r), f'psi({r}) = {arith.psi(int(r))}')

    prefix = arith.F_int_prefix(n_max)
    mismatch = next((n for n in range(1, n_max + 1) if arith.F_int(n, 'lcm-jump')[0] != prefix[n - 1][0]), None)
    report.add('F_int_methods_agree', mismatch is None,
               f'exact-scan = lcm-jump for n ≤ {n_max}' if mismatch is None else f'methods differ at n = {mismatch}')

    ratios = arith.ratio_table_log('z', arith.psi_jumps(100, jump_high))
    inside = ratios['ratio'].between(1.0, 2.5).all()
    report.add('F_int_log_ratio', bool(inside),
               f"F(n)/ln n in [{ratios['ratio'].min():.3f}, {ratios['ratio'].max():.3f}] over {len(ratios)} jumps up to {jump_high}")

    report.extend(arith.verify_lcm_extremal(M))
    k_psi = [arith.k_int(arith.psi(m))[0] for m in range(1, 31)]
    report.add('k_psi_nondecreasing', all(x <= y for x, y in zip(k_psi, k_psi[1:])), f'k_Z(psi(m)) for m ≤ 30: {k_psi}')

    D = -1
    disc = arith.discriminant(D)
    wrong = []
    for p in range(2, 51):
        if not isprime(p):
            continue
        c1, c0 = arith.minimal_polynomial(D)
        roots = [x for x in range(p) if (x * x + c1 * x + c0) % p == 0]
        direct = 'ramified' if disc % p == 0 else ('split' if len(roots) == 2 else 'inert')
        if arith.split_type(p, D).kind != direct:
            wrong.append(p)
    report.add('split_type_D=-1', not wrong, 'matches root counting for p ≤ 50' if not wrong else f'differs at {wrong}')

    primes = [prime(i) for i in range(1, 201)]
    density = sum(arith.split_type(p, D).kind == 'split' for p in primes) / len(primes)
    report.add('split_density', abs(density - 0.5) <= 0.10, f'{density:.3f} of the first 200 primes split')

    k, witness = arith.k_ring(arith.QuadInt(2, 0, -1))
    report.add('k_ring(2)', k == golden('k_ring', 'quad(-1):2:0'), f'k_ring(2) in Z[i] = {k} via {witness.encode()}')

    disagreements = []
    for D in (-1, 2, 5):
        for n in range(1, 4):
            for a, b in arith.ell1_sphere(n, 2):
                g = arith.QuadInt(a, b, D)
                brute = arith.brute_k_ring(g, 60)
                fast, _ = arith.k_ring(g)
                if brute is None or brute[0] != fast:
                    disagreements.append(f'{g}: {fast} vs {brute}')
    report.add('k_ring_oracle', not disagreements,
               'k_ring agrees with ideal enumeration on radius-3 balls of D = -1, 2, 5' if not disagreements else '; '.join(disagreements[:5]))

    larger = [(D, m) for D in (-1, 2, 5) for m in range(1, 51)
              if arith.k_int(m)[0] > arith.k_ring(arith.QuadInt(m, 0, D))[0]]
    report.add('ring_extension', not larger, 'k_Z(m) ≤ k_O(m) for m ≤ 50' if not larger else f'fails at {larger[:5]}')
    return report


@suite('products')
def products_suite(**kwargs) -> Report:
    n_max = kwargs.pop('n_max', 100)
    n_max_3 = kwargs.pop('n_max_3', 20)
    report = Report('products')
    table_radius = 12
    prefix = arith.F_int_prefix(max(n_max, n_max_3, table_radius))
    for d, bound in ((2, n_max), (3, n_max_3)):
        best, mismatch = 0, None
        for n in range(1, bound + 1):
            for v in arith.ell1_sphere(n, d):
                best = max(best, arith.k_int_vector(v))
            if best != prefix[n - 1][0]:
                mismatch = n
                break
        report.add(f'product_law_d={d}', mismatch is None,
                   f'F_Z^{d}(n) = F_Z(n) for n ≤ {bound}' if mismatch is None else f'differs at n = {mismatch}')

    table = compute_growth('zd(2)', table_radius)
    report.add('zd(2)_table', [row.F for row in table] == [prefix[n - 1][0] for n in range(1, table_radius + 1)],
               f'zd(2) growth table rows: {[row.F for row in table]}')
    return report


@suite('monotonicity')
def monotonicity_suite(**kwargs) -> Report:
    m_max = kwargs.pop('m_max', 6)
    radius = kwargs.pop('radius', 3)
    report = Report('monotonicity')

    c = commutator(A, B)
    for m in range(1, m_max + 1):
        k, lower, _ = _search_value(HEISENBERG, power(c, m), 'any')
        k_z, _ = arith.k_int(m)
        bound = k if k is not None else lower
        report.add(f'center_of_heis_c^{m}', k_z <= bound,
                   f'k_Z({m}) = {k_z}, k_heis(c^{m}) ' + (f'= {k}' if k is not None else f'≥ {lower}'))

    for m in range(1, m_max + 1):
        k, _, _ = _search_value(FREE2, power(A, m), 'any')
        k_z, _ = arith.k_int(m)
        report.add(f'cyclic_in_free_a^{m}', k == k_z, f'k_Z({m}) = {k_z}, k_free(a^{m}) = {k}')

    failures = []
    for entry in slk.sl_ball(2, radius):
        if entry.length == 0:
            continue
        k2, _ = slk.k_congruence_sl(entry.element)
        _, w3 = slk.k_congruence_sl(slk.embed_sl2(entry.element))
        restricted = slk.restrict_witness(w3)
        if not slk.sl_witness_detects(entry.element, restricted) or k2 > restricted.order:
            failures.append(format_matrix(entry.element))
    report.add('sl2_in_sl3', not failures,
               f'SL3 congruence witnesses restrict to SL2 witnesses on the radius-{radius} ball' if not failures else f'fails for {failures[:3]}')

    free = get_family('free(2)')
    below = []
    for entry in free.ball(min(radius, 2)):
        if entry.length == 0:
            continue
        exact = free.k_value(entry.element)
        congruence = free.k_value(entry.element, 'congruence')
        if exact.upper is None or congruence.upper < exact.upper:
            below.append(format_word(entry.element))
    report.add('free_via_sl2', not below,
               'Sanov congruence values bound the exact free values from above' if not below else f'fails for {below[:3]}')
    return report


@suite('nilpotent')
def nilpotent_suite(**kwargs) -> Report:
    radius = kwargs.pop('radius', 6)
    exact_radius = kwargs.pop('exact_radius', 3)
    dichotomy_radius = kwargs.pop('dichotomy_radius', 4)
    report = Report('nilpotent')

    ball_radii = (0, 1, 2, 3, 4, 8)
    sizes = [len(nilpotent.ball(3, r)) for r in ball_radii]
    report.add('heis_ball_sizes', sizes == [golden('heis_ball_size', str(r)) for r in ball_radii], f'{dict(zip(ball_radii, sizes))}')
    report.add('hirsch', [nilpotent.hirsch_unitri(d) for d in (2, 3, 4)] == [1, 3, 6], 'h(U_d) = d(d-1)/2')

    g = elementary(3, 1, 3, 6).dot(elementary(3, 1, 2, 4))
    size, witness = nilpotent.k_congruence_unitri(g)
    report.add('k_congruence_unitri', size == golden('k_congruence_unitri', 'E13(6)E12(4)'), f'{size} via {witness.encode()}')

    nil_ball = nilpotent.ball(3, radius)
    maxima = nil_ball.max_entries()
    table = nilpotent.F_nilpotent(3, radius)
    over = [row.n for row in table if row.F > nilpotent.primorial_prime(maxima[row.n]) ** 3]
    report.add('congruence_bound', not over,
               f'F(n) ≤ p*^3 for n ≤ {radius}; F = {[row.F for row in table]}' if not over else f'exceeded at n = {over}')

    try:
        exact = nilpotent.F_nilpotent(3, exact_radius, 'exact')
        report.add('exact_below_congruence', True, f'exact F = {[row.F for row in exact]} ({exact[-1].method})')
    except nilpotent.NilpotentError as e:
        report.add('exact_below_congruence', False, str(e))

    free_nil = compute_growth('free(2)', dichotomy_radius, 'nilpotent')
    heis_nil = compute_growth('heis', dichotomy_radius, 'nilpotent')
    free_max, heis_max = free_nil[-1].F_lower, heis_nil[-1].F
    report.add('dichotomy', free_max >= heis_max,
               f'radius {dichotomy_radius}: F^nil free ≥ {free_max}, F^nil heis ≤ {heis_max}')
    weight3 = iterated_commutator([1, 2, 1])
    k3, lower3, _ = _search_value(FREE2, weight3, 'nilpotent')
    k3_lower = max(lower3, quotsearch.weight_bound(3))
    trivial = is_identity(nilpotent.word_to_unitri(weight3))
    report.add('weight_3_separation', trivial and k3_lower > heis_max,
               f'{format_word(weight3)} is trivial in U3 and has k^nil ≥ {k3_lower} in free(2)')
    return report


@suite('sl')
def sl_suite(**kwargs) -> Report:
    m_max = kwargs.pop('m_max', 30)
    lower_ns = kwargs.pop('lower_ns', list(range(1, 13)))
    upper_radius = kwargs.pop('upper_radius', 6)
    oracle_radius = kwargs.pop('oracle_radius', 6)
    report = Report('sl')

    for k, m in ((2, 2), (2, 3), (2, 4), (2, 5), (3, 2)):
        formula, brute = slk.order_slk_mod(k, m), slk.brute_order_slk_mod(k, m)
        report.add(f'order_sl{k}_mod_{m}', formula == brute == golden('order_slk_mod', f'{k}:{m}'), f'formula {formula}, enumeration {brute}')

    broken = []
    for k in (2, 3):
        for m in range(2, m_max + 1):
            for a in range(2, m):
                b = m // a
                if a * b == m and b >= 2 and np.gcd(a, b) == 1 and slk.order_slk_mod(k, m) != slk.order_slk_mod(k, a) * slk.order_slk_mod(k, b):
                    broken.append((k, a, b))
    report.add('multiplicative', not broken, f'|SL_k(Z/ab)| = |SL_k(Z/a)|·|SL_k(Z/b)| for coprime ab ≤ {m_max}' if not broken else f'{broken[:3]}')

    small = [m for m in range(2, m_max + 1) if slk.order_slk_mod(2, m) < m]
    report.add('order_at_least_level', not small, f'|SL_2(Z/m)| ≥ m for m ≤ {m_max}')
    drops = slk.nonmonotone_levels(2, m_max)
    report.add('order_nonmonotone_levels', True, f'|SL_2(Z/m)| drops at m = {sorted(drops)}')

    for name in ('E12(6)', 'E12(2520)'):
        t = int(name[4:-1])
        size, _ = slk.k_congruence_sl(elementary(2, 1, 2, t))
        report.add(f'k_congruence_sl_{name}', size == golden('k_congruence_sl', name), f'{size}')

    report.extend(slk.verify_sl_lower(3, lower_ns))
    report.extend(slk.verify_sl_upper(2, upper_radius))

    ball = slk.sl_ball(2, oracle_radius)
    differing = []
    for entry in ball:
        if entry.length == 0:
            continue
        try:
            restricted = slk.k_congruence_sl(entry.element, m_max)[0]
        except slk.CongruenceExhausted:
            restricted = None
        try:
            full = slk.k_congruence_sl(entry.element, m_max, restrict_prime_powers=False)[0]
        except slk.CongruenceExhausted:
            full = None
        if restricted != full:
            differing.append(format_matrix(entry.element))
    report.add('prime_power_restriction', not differing,
               f'restricted and full scans agree on {len(ball)} elements, m ≤ {m_max}' if not differing else f'{differing[:3]}')

    rng = np.random.default_rng(0)
    entries = ball.entries
    bad = 0
    for _ in range(100):
        g, h = (entries[i].element for i in rng.integers(len(entries), size=2))
        m = int(rng.integers(2, m_max + 1))
        if ((g.dot(h) - (g % m).dot(h % m)) % m != 0).any():
            bad += 1
    report.add('reduction_homomorphism', bad == 0, f'{100 - bad}/100 random pairs')
    return report


@suite('grig')
def grig_suite(**kwargs) -> Report:
    radius = kwargs.pop('radius', 12)
    trivial_radius = kwargs.pop('trivial_radius', 10)
    deep_max = kwargs.pop('deep_max', 8)
    samples = kwargs.pop('samples', 10_000)
    report = Report('grig')

    for k in range(1, 6):
        bfs = grig.gamma_order(k, 'bfs')
        formula = grig.gamma_order(k)
        report.add(f'gamma_order_{k}', bfs == formula == golden('gamma_order', str(k)), f'bfs {bfs}, formula {formula}')

    mismatched = [(x, k) for x in grig.LETTERS for k in range(1, 9)
                  if not np.array_equal(grig.truncate(grig.letter_action(x, k)), grig.letter_action(x, k - 1))]
    report.add('truncation', not mismatched, 'level actions truncate compatibly up to level 8')

    entries = grig.grig_ball(radius)
    sizes = [sum(1 for e in entries if e.length <= r) for r in range(5)]
    report.add('ball_sizes', sizes == [golden('grig_ball_size', str(r)) for r in range(5)], f'{sizes}; radius {radius}: {len(entries)}')

    long_sections, deep = [], []
    for entry in entries:
        g = entry.element
        s = grig.sections(g)
        if 2 * max(len(s.g0), len(s.g1)) > len(g) + 1:
            long_sections.append(g)
        if g and grig.depth(g) > grig.depth_bound(g):
            deep.append(g)
    report.add('contraction', not long_sections, f'|g_i| ≤ (|g|+1)/2 on {len(entries)} elements' if not long_sections else f'{long_sections[:3]}')
    report.add('depth_bound', not deep, 'depth ≤ ⌈log2|g|⌉ + 2' if not deep else f'{deep[:3]}')

    disagree = [e.element for e in entries if 0 < e.length <= trivial_radius
                and grig.depth(e.element) != grig.depth(e.element, 'action')]
    identities = [e.element for e in entries if e.length > 0 and grig.is_trivial(e.element)]
    report.add('word_problem', not disagree and not identities,
               f'nontrivial with matching depths up to radius {trivial_radius}' if not disagree and not identities else f'{(disagree + identities)[:3]}')
    report.add('relations', grig.is_trivial('adadadad') and not grig.is_trivial('ab'), '(ad)^4 = 1, ab ≠ 1')

    wrong_deep = []
    for k in range(1, deep_max + 1):
        try:
            g = grig.witness_deep(k)
            if len(g) != 2 ** (k + 2) or grig.depth(g) != k + 2:
                wrong_deep.append(f'k={k}: length {len(g)}, depth {grig.depth(g)}')
        except grig.GrigError as e:
            wrong_deep.append(str(e))
    report.add('witness_deep', not wrong_deep, f'sections verified for k ≤ {deep_max}, lengths 2^(k+2)' if not wrong_deep else '; '.join(wrong_deep))

    valid = []
    for convention in ('left', 'right'):
        s = grig.sections(grig.BASE_WITNESS, convention)
        if not s.swap and grig.is_trivial(s.g0) and grig.equal(s.g1, 'abab'):
            valid.append(convention)
    report.add('base_identity', 'left' in valid, f'(abad)^2 = (1, (ab)^2) under conventions {valid}')

    rng = np.random.default_rng(0)
    differ = 0
    for _ in range(samples):
        g = ''.join(rng.choice(list(grig.LETTERS), size=int(rng.integers(1, 13))))
        s = ''.join(str(x) for x in rng.integers(0, 2, size=int(rng.integers(1, 9))))
        if grig.act(g, s) != grig.act_by_sections(g, s):
            differ += 1
    report.add('evaluators_agree', differ == 0, f'{samples - differ}/{samples} random pairs')

    bad_substitution = []
    for entry in entries:
        if entry.length > 6:
            break
        s = grig.sections(grig.substitute(entry.element))
        if s.swap or not grig.equal(s.g0, grig.phi(entry.element)) or not grig.equal(s.g1, entry.element):
            bad_substitution.append(entry.element)
    report.add('substitution_sections', not bad_substitution, 'σ(g) = (φ(g), g) up to radius 6' if not bad_substitution else f'{bad_substitution[:3]}')

    table = grig.F_grig(min(radius, 10))
    F = [row.F for row in table]
    report.add('F_grig', F == [golden('F_grig', str(n)) for n in range(1, len(table) + 1)], f'{F}; first at {table[0].argmax}')
    return report


@suite('nilquot')
def nilquot_suite(**kwargs) -> Report:
    report = Report('nilquot')
    c = commutator(A, B)
    weight3 = iterated_commutator([1, 2, 1])
    cases = [
        ('k_free(a)', FREE2, A, 'any', 'any:a', None),
        ('k_free(aa)', FREE2, power(A, 2), 'any', 'any:aa', None),
        ('k_free([a,b])', FREE2, c, 'any', 'any:[a:b]', None),
        ('k_nil_free([a,b])', FREE2, c, 'nilpotent', 'nilpotent:[a:b]', 2),
        ('k_nil_free([[a,b],a])', FREE2, weight3, 'nilpotent', 'nilpotent:[[a:b]:a]', 3),
        ('k_heis([a,b])', HEISENBERG, c, 'any', 'any:[a:b]', None),
    ]
    for name, presentation, word, variant, args, weight in cases:
        k, lower, result = _search_value(presentation, word, variant)
        quantity = 'k_heis' if presentation is HEISENBERG else 'k_free'
        if weight is not None:
            lower = max(lower, quotsearch.weight_bound(weight))
        expected = golden(quantity, args)
        if result is None:
            report.add(name, False, f'undetected up to q_max, lower bound {lower}')
            continue
        verified = quotsearch.check_witness(presentation, word, result.witness, variant)
        detail = f'{k} (certified ≥ {lower}) via {result.witness}'
        if variant == 'nilpotent':
            group = quotsearch.PermGroup(result.witness.data)
            detail += f', class {quotsearch.nilpotency_class(group)}'
        report.add(name, k == expected and lower == k and verified, detail)
        if weight is not None:
            report.add(f'{name}_weight_bound', k >= quotsearch.weight_bound(weight), f"{k} ≥ {quotsearch.weight_bound(weight)}")
    return report


def verify_suite(name: str, **kwargs) -> Report:
    """
    Runs a registered suite, or every suite for ``all``.

    Parameters
    ==========
    name : :obj:`str`
        ``arith``, ``products``, ``monotonicity``, ``nilpotent``, ``sl``,
        ``grig``, ``nilquot`` or ``all``.
    """
    if name == 'all':
        report = Report('all')
        for func in SUITES.values():
            report.extend(func())
        return report
    if name not in SUITES:
        raise ValueError(f"Unknown suite '{name}'. Choose from {', '.join(list(SUITES) + ['all'])}.")
    return SUITES[name](**kwargs)
