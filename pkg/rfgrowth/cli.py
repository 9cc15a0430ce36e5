import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from rfgrowth.cache import CacheError, ResultCache
from rfgrowth.constants import DEFAULT_Q_MAX, TOOL_VERSION, VARIANTS
from rfgrowth.growth import GrowthError, UnknownGroup, compute_growth, k_value, witness_summary
from rfgrowth.verify import SUITES, verify_suite

logger = logging.getLogger(__name__)


def _cache(args) -> Optional[ResultCache]:
    if getattr(args, 'no_cache', False):
        return None
    try:
        return ResultCache()
    except CacheError as e:
        logger.warning(f'{e}; continuing without a cache')
        return None


def _kval(args) -> int:
    value, family = k_value(args.group, args.element, args.variant, q_max=args.qmax, cache=_cache(args))
    if value.upper is None:
        print(f'k ≥ {value.lower} (no detecting quotient found)')
    elif value.exact:
        print(f'k = {value.upper}')
    else:
        print(f'{value.lower} ≤ k ≤ {value.upper}')
    print(f'witness: {value.witness.encode() if value.witness else "-"}')
    return 0


def _growth(args) -> int:
    table = compute_growth(args.group, args.radius, args.method, cache=_cache(args),
                           workers=args.workers, q_max=args.qmax)
    if args.out is None:
        print(table.to_csv(), end='')
    elif args.out.endswith('.json'):
        table.to_json(args.out)
    elif args.out.endswith('.csv'):
        table.to_csv(args.out)
    else:
        raise ValueError(f"'--out' should end in .csv or .json, got {args.out}")
    return 0


def _verify(args) -> int:
    report = verify_suite(args.suite)
    print(report.to_json())
    return 0 if report.passed else 1


def _witness(args) -> int:
    print(json.dumps(witness_summary(args.kind, args.n), indent=2))
    return 0


def _main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(prog='rfg', description='residual finiteness growth lab')
    parser.add_argument('--version', action='version', version=f'%(prog)s {TOOL_VERSION}')
    parser.add_argument(
        '--log-level',
        default='WARNING',
        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
        help='Logging level for progress messages on stderr.',
    )
    subparsers = parser.add_subparsers(dest='command', required=True)

    kval_parser = subparsers.add_parser('kval', help='Compute k of one element.')
    kval_parser.add_argument('--group', required=True, help="Group id, e.g. 'z', 'free(2)', 'sl(3)', 'grig'.")
    kval_parser.add_argument('--element', required=True, help='Element in the group\'s canonical encoding.')
    kval_parser.add_argument('--variant', choices=VARIANTS, default=None)
    kval_parser.add_argument('--qmax', type=int, default=DEFAULT_Q_MAX, help='Largest permutation degree searched.')
    kval_parser.add_argument('--no-cache', action='store_true', help='Neither read nor write the result cache.')
    kval_parser.set_defaults(handler=_kval)

    growth_parser = subparsers.add_parser('growth', help='Compute the growth table over balls.')
    growth_parser.add_argument('--group', required=True)
    growth_parser.add_argument('--radius', type=int, required=True)
    growth_parser.add_argument('--method', choices=['exact', 'nilpotent', 'congruence'], default=None)
    growth_parser.add_argument('--out', default=None, help='Output path ending in .csv or .json; CSV on stdout if omitted.')
    growth_parser.add_argument('--workers', type=int, default=1)
    growth_parser.add_argument('--qmax', type=int, default=DEFAULT_Q_MAX)
    growth_parser.add_argument('--no-cache', action='store_true', help='Neither read nor write the result cache.')
    growth_parser.set_defaults(handler=_growth)

    verify_parser = subparsers.add_parser('verify', help='Run a verification suite.')
    verify_parser.add_argument('--suite', choices=list(SUITES) + ['all'], default='all')
    verify_parser.set_defaults(handler=_verify)

    witness_parser = subparsers.add_parser('witness', help='Build an explicit witness and measure it.')
    witness_parser.add_argument('--kind', choices=['lcm', 'elementary', 'grig-deep'], required=True)
    witness_parser.add_argument('--n', type=int, required=True)
    witness_parser.set_defaults(handler=_witness)

    args = parser.parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level), format='%(levelname)s %(name)s: %(message)s')
    try:
        return args.handler(args)
    except (UnknownGroup, GrowthError, ValueError) as e:
        print(f'rfg: error: {e}', file=sys.stderr)
        return 2


def main():
    raise SystemExit(_main())


if __name__ == '__main__':
    main()
