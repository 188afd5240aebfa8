"""
Export catalog fans as JSON golden files.

Writes data/fans/<name>.json for every constructible catalog entry and
data/fans/expected.json with the expected Fano 3-fold invariant rows.
"""

import sys
import argparse
from pathlib import Path

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from analyzer.catalog import FANO3_EXPECTED, INVARIANT_COLUMNS, constructible_rows, fano3, resolve
from toric.utils import FANS_DIR, logger, save_json

EXTRA_TARGETS = ['P1', 'P2', 'P1xP1', 'F1', 'F2', 'dP6', 'dP7', 'dP8', 'V2', 'V4', 'A2', 'A3']


def export_catalog(out_dir: Path, targets=None) -> int:
    """Write every fan and the expected table; returns the number of files."""
    written = 0
    entries = [fano3(i) for i in constructible_rows()]
    entries += [resolve(name) for name in (targets or EXTRA_TARGETS)]
    for entry in entries:
        save_json(entry.fan.to_json(), out_dir / f"{entry.name}.json")
        written += 1

    expected = {
        f"fano3-{i}": dict(zip(INVARIANT_COLUMNS, row)) for i, row in sorted(FANO3_EXPECTED.items())
    }
    save_json(expected, out_dir / 'expected.json')
    logger.info(f"Exported {written} fans to {out_dir}")
    return written + 1


def main():
    parser = argparse.ArgumentParser(description='Export catalog fans as JSON')
    parser.add_argument('--out', type=str, default=str(FANS_DIR), help='Output directory')
    parser.add_argument('--targets', type=str, help='Comma-separated extra catalog names')
    args = parser.parse_args()

    try:
        targets = args.targets.split(',') if args.targets else None
        count = export_catalog(Path(args.out), targets)
    except (ValueError, OSError) as e:
        print(f"\n❌ Error: {e}")
        sys.exit(2)

    print(f"\n✅ Wrote {count} files to {args.out}")


if __name__ == '__main__':
    main()
