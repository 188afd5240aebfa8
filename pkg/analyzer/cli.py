"""
Command-line interface for the toric exceptional collection toolkit.

Usage:
    python -m analyzer.cli describe P3
    python -m analyzer.cli describe --fan my_fan.json
    python -m analyzer.cli table1 [--rows 1,2,5]
    python -m analyzer.cli frobenius fano3-11 [--method sweep --lmax 12]
    python -m analyzer.cli check dP6 king --group full --strong
    python -m analyzer.cli export V4 --output data/fans/V4.json
    python -m analyzer.cli group dP6

Every subcommand accepts --json for machine output on stdout. Exit codes:
0 success, 1 a mathematical check failed, 2 invalid input.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

# Add parent directory for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from toric.divisor_theory import picard
from toric.errors import ToricError
from toric.fan_geometry import Fan
from toric.utils import (
    COLLECTIONS_DIR, DEFAULT_SWEEP_LMAX, dump_json, load_json, logger, save_json, set_verbosity,
)

from analyzer.catalog import COLLECTION_NAMES, CatalogEntry, named_collection, resolve
from analyzer.exceptional import Collection
from analyzer.invariant_scorer import (
    InvariantScorer, load_group, render_check, render_classes, render_mapping, render_table,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2

DESCRIBE_FIELDS = ['name', 'rank', 'rays', 'k0', 'rho', 'aut', 'rho_G', 'smooth', 'complete', 'fano']


def _target(args) -> CatalogEntry:
    """Resolve the positional target or --fan file into a catalog entry."""
    if getattr(args, 'fan', None):
        path = Path(args.fan)
        fan = Fan.from_json(load_json(path))
        return CatalogEntry(name=path.stem, fan=fan, provenance=str(path))
    if not args.target:
        raise ToricError("Give a catalog name or --fan FILE")
    return resolve(args.target)


def _emit(args, report: dict, text: str) -> None:
    if args.json:
        print(dump_json(report))
    else:
        print(text)


def cmd_describe(args) -> int:
    entry = _target(args)
    report = InvariantScorer().describe(entry)
    _emit(args, report, render_mapping(report, DESCRIBE_FIELDS))
    return EXIT_OK


def _parse_rows(text: Optional[str]) -> Optional[List[int]]:
    if not text:
        return None
    try:
        return [int(x) for x in text.split(',') if x.strip()]
    except ValueError:
        raise ToricError(f"--rows must be a comma-separated list of integers, got '{text}'")


def cmd_table1(args) -> int:
    report = InvariantScorer().score_table(_parse_rows(args.rows))
    _emit(args, report, render_table(report))
    return EXIT_OK if report['all_passed'] else EXIT_CHECK_FAILED


def cmd_frobenius(args) -> int:
    entry = _target(args)
    report = InvariantScorer().frobenius(entry, method=args.method, lmax=args.lmax)
    _emit(args, report, render_classes(report))
    return EXIT_OK


def _collection(entry: CatalogEntry, spec: str) -> Collection:
    """
    A named collection, a JSON collection file in the fan's ray order, or the
    stem of a file under data/collections/.
    """
    path = Path(spec)
    if spec.endswith('.json') or path.is_file():
        return Collection.from_json(picard(entry.fan), load_json(path))
    bundled = COLLECTIONS_DIR / f"{spec}.json"
    if spec not in COLLECTION_NAMES and bundled.is_file():
        return Collection.from_json(picard(entry.fan), load_json(bundled))
    return named_collection(entry, spec)


def cmd_check(args) -> int:
    entry = _target(args)
    coll = _collection(entry, args.collection)
    mode, data = args.group, None
    if mode not in ('full', 'none', 'symmetric'):
        data = load_json(Path(mode))
        mode = 'file'
    group = load_group(entry, mode, data)
    report = InvariantScorer().check(entry, coll, group, strong=args.strong, collection_name=args.collection)
    _emit(args, report, render_check(report))
    if not args.json:
        print(f"\n{'✅ PASS' if report['passed'] else '❌ FAIL'}")
    return EXIT_OK if report['passed'] else EXIT_CHECK_FAILED


def cmd_export(args) -> int:
    entry = _target(args)
    data = entry.fan.to_json()
    if args.output:
        save_json(data, Path(args.output))
    if args.json or not args.output:
        print(dump_json(data))
    else:
        print(f"✅ Exported {entry.name} to {args.output}")
    return EXIT_OK


def cmd_group(args) -> int:
    entry = _target(args)
    report = InvariantScorer().group(entry)
    text = render_mapping(report, ['name', 'order', 'abelian', 'element_orders'])
    _emit(args, report, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='analyzer.cli',
        description='Build toric varieties from fans and verify exceptional collections of line bundles',
    )
    parser.add_argument('--verbose', action='store_true', help='Debug logging (includes acyclicity sampling)')
    parser.add_argument('--quiet', action='store_true', help='Only warnings and errors')
    sub = parser.add_subparsers(dest='command', required=True)

    def add_target(p):
        p.add_argument('target', nargs='?', help='Catalog name, e.g. P3, dP6, fano3-11, V4, A3, P2xP1')
        p.add_argument('--fan', type=str, help='Fan JSON file instead of a catalog name')
        p.add_argument('--json', action='store_true', help='Emit JSON on stdout')

    p = sub.add_parser('describe', help='Structural invariants of a fan')
    add_target(p)
    p.set_defaults(func=cmd_describe)

    p = sub.add_parser('table1', help='Recompute the Fano 3-fold invariant table')
    p.add_argument('--rows', type=str, help='Comma-separated row numbers (default: all)')
    p.add_argument('--json', action='store_true', help='Emit JSON on stdout')
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser('frobenius', help='Frobenius summand classes')
    add_target(p)
    p.add_argument('--method', choices=['exact', 'sweep'], default='exact')
    p.add_argument('--lmax', type=int, default=DEFAULT_SWEEP_LMAX, help='Highest level for --method sweep')
    p.set_defaults(func=cmd_frobenius)

    p = sub.add_parser('check', help='Verify a collection of line bundles')
    p.add_argument('target', help='Catalog name, or "-" with --fan')
    p.add_argument('collection', help='Collection name, JSON file, or the stem of a file in data/collections')
    p.add_argument('--fan', type=str, help='Fan JSON file instead of a catalog name')
    p.add_argument('--group', default='none', help='full, none, symmetric, or a JSON file of matrices')
    p.add_argument('--strong', action='store_true', help='Also require forward higher Ext to vanish')
    p.add_argument('--json', action='store_true', help='Emit JSON on stdout')
    p.set_defaults(func=cmd_check)

    p = sub.add_parser('export', help='Write a catalog fan as JSON')
    add_target(p)
    p.add_argument('--output', type=str, help='Destination file (default: stdout)')
    p.set_defaults(func=cmd_export)

    p = sub.add_parser('group', help='Fan automorphism group report')
    add_target(p)
    p.set_defaults(func=cmd_group)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT_ERROR if e.code else EXIT_OK
    set_verbosity(verbose=args.verbose, quiet=args.quiet)

    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as e:
        print(f"❌ Error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except Exception as e:
        logger.exception("Unexpected error")
        print(f"❌ Unexpected error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == '__main__':
    sys.exit(main())
