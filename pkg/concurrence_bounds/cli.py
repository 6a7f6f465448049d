"""Command-line interface: bound reports, noise sweeps, thresholds, selftest.

Exit codes: 0 on success (``bound``: state certified entangled), 1 when
``bound`` does not detect entanglement, a threshold never fires or a
selftest suite fails, 2 on any input error.
"""
import argparse
import sys
from pathlib import Path
from typing import Optional

import orjson

from concurrence_bounds import __version__
from concurrence_bounds.bounds import format_report, report
from concurrence_bounds.config import Config, Tolerances, dump_config, load_config
from concurrence_bounds.errors import ConcurrenceError, NeverPositiveError, NoCrossingError
from concurrence_bounds.log import configure_logging, logger, verbosity_level
from concurrence_bounds.selftest import run_selftest
from concurrence_bounds.statefile import save_state
from concurrence_bounds.sweep import (
    BOUND_NAMES, FAMILIES, StateFamily, build_family, find_crossover,
    find_threshold, grid, scan, write_csv,
)

EXIT_OK = 0
EXIT_UNDETECTED = 1
EXIT_ERROR = 2


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f'must be positive, got {text}')
    return value


def _family_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument('--file', type=Path, help='state file (JSON: dims + matrix of [re, im])')
    parent.add_argument('--n', type=int, default=3, help='qubit count for ghz/product (default: 3)')
    parent.add_argument('--weights', type=float, nargs=5,
                        metavar=('LAM0P', 'LAM0M', 'LAM1', 'LAM2', 'LAM3'),
                        help='DCT weights, lam0p + lam0m + 2(lam1 + lam2 + lam3) = 1')
    return parent


def _tolerance_options() -> argparse.ArgumentParser:
    # SUPPRESS keeps a --tol given before the subcommand from being reset
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument('--tol', type=_positive_float, default=argparse.SUPPRESS,
                        help='Hermiticity, trace and positivity tolerance for input states')
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='concurrence-bounds',
        description='Lower and upper bounds on multipartite concurrence.')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('--config', type=Path, help='YAML or JSON configuration file')
    parser.add_argument('--export-config', action='store_true',
                        help='print the effective configuration as YAML and exit')
    parser.add_argument('--tol', type=_positive_float,
                        help='Hermiticity, trace and positivity tolerance for input states')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='-v for progress, -vv for per-cut detail')
    parser.add_argument('--log-file', help='also write a DEBUG log to this file')

    family = _family_options()
    tolerance = _tolerance_options()
    sub = parser.add_subparsers(dest='command')

    p = sub.add_parser('bound', parents=[family, tolerance], help='print every bound for one state')
    p.add_argument('--family', choices=[f for f in FAMILIES if f != 'file'])
    p.add_argument('--noise', type=float, help='evaluate (1-x)/D I + x rho at this x')
    p.add_argument('--json', action='store_true', help='print the report as JSON')
    p.add_argument('--save-state', type=Path, help='write the evaluated state to this file')
    p.add_argument('--workers', type=int, help='threads for per-cut evaluation')
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser('scan', parents=[family, tolerance], help='sweep the noise parameter, write CSV')
    p.add_argument('--family', choices=[f for f in FAMILIES if f != 'file'], default='ghz')
    p.add_argument('--xmin', type=float, default=0.0)
    p.add_argument('--xmax', type=float, default=1.0)
    p.add_argument('--steps', type=int, default=100)
    p.add_argument('--out', type=Path, help='CSV path (default: stdout)')
    p.add_argument('--workers', type=int, help='threads for grid points')
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser('threshold', parents=[family, tolerance],
                       help='smallest noise parameter where a lower bound fires')
    p.add_argument('family', choices=FAMILIES)
    p.add_argument('bound', choices=BOUND_NAMES + ('crossover',))
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser('selftest', parents=[tolerance], help='run the seeded property suites')
    p.add_argument('--samples', type=int, default=200)
    p.add_argument('--seed', type=int, default=20240607)
    p.set_defaults(func=cmd_selftest)
    return parser


def _resolve_family(args, tol: Tolerances, name: Optional[str]) -> StateFamily:
    if args.file is not None and name not in (None, 'file'):
        raise ConcurrenceError(f'--file cannot be combined with family {name}')
    if args.file is not None or name == 'file':
        return build_family('file', path=args.file, tol=tol)
    if name is None:
        raise ConcurrenceError('give a state with --file or --family')
    return build_family(name, n=args.n, weights=args.weights, tol=tol)


# =============================================================================
# Subcommands
# =============================================================================

def cmd_bound(args, config: Config, tol: Tolerances) -> int:
    family = _resolve_family(args, tol, args.family)
    state = family.base if args.noise is None else family.at(args.noise)
    rep = report(state, tol, args.workers or config.scan.workers)
    if args.save_state:
        save_state(args.save_state, state)
    if args.json:
        print(orjson.dumps(rep.to_dict(), option=orjson.OPT_INDENT_2).decode())
    else:
        print(format_report(rep))
    return EXIT_OK if rep.entangled else EXIT_UNDETECTED


def cmd_scan(args, config: Config, tol: Tolerances) -> int:
    family = _resolve_family(args, tol, None if args.file else args.family)
    xs = grid(args.xmin, args.xmax, args.steps)
    rows = scan(family, xs, tol, args.workers or config.scan.workers)
    if args.out:
        with open(args.out, 'w', newline='', encoding='utf-8') as f:
            write_csv(rows, f, config.scan.digits)
        logger.info('wrote {} rows to {}', len(rows), args.out)
    else:
        write_csv(rows, sys.stdout, config.scan.digits)
    return EXIT_OK


def cmd_threshold(args, config: Config, tol: Tolerances) -> int:
    family = _resolve_family(args, tol, args.family)
    try:
        if args.bound == 'crossover':
            value = find_crossover(family, tol, config.scan)
        else:
            value = find_threshold(family, args.bound, tol, config.scan)
    except (NeverPositiveError, NoCrossingError) as exc:
        print(f'Error: {exc}', file=sys.stderr)
        return EXIT_UNDETECTED
    print(f'{value:.6f}')
    return EXIT_OK


def cmd_selftest(args, config: Config, tol: Tolerances) -> int:
    results = run_selftest(args.samples, args.seed, tol)
    for res in results:
        status = 'PASS' if res.ok else 'FAIL'
        print(f'  [{status}] {res.name} ({res.passed}/{res.passed + res.failed})')
        for detail in res.failures[:5]:
            print(f'    {detail}')
    failed = sum(1 for r in results if not r.ok)
    print(f"\n{'=' * 60}")
    print(f'Suites: {len(results) - failed}/{len(results)} passed')
    return EXIT_OK if failed == 0 else EXIT_UNDETECTED


# =============================================================================
# Entry point
# =============================================================================

def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.config is not None and not args.config.exists():
        print(f'Error: Config file not found: {args.config}', file=sys.stderr)
        return EXIT_ERROR
    try:
        config = load_config(args.config) if args.config else Config()
    except ConcurrenceError as exc:
        print(f'Error: {args.config}: {exc}', file=sys.stderr)
        return EXIT_ERROR

    if args.export_config:
        print(dump_config(config), end='')
        return EXIT_OK

    configure_logging(verbosity_level(args.verbose, config.logging.level),
                      args.log_file or config.logging.file)
    tol = config.tolerances if args.tol is None else config.tolerances.with_validation(args.tol)

    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_ERROR

    try:
        return args.func(args, config, tol)
    except (ConcurrenceError, OSError) as exc:
        logger.debug('{} failed: {!r}', args.command, exc)
        print(f'Error: {exc}', file=sys.stderr)
        return EXIT_ERROR
