"""
Toric Exceptional Collections - Analysis Engine

- frobenius.py: Frobenius pushforward summands of line bundles
- exceptional.py: Exceptional / strong / stable / block checks on collections
- catalog.py: Named fans (surfaces, Fano 3-folds, V_n, Weyl fans) and collections
- invariant_scorer.py: Invariant rows and reports for the CLI and batch script
- cli.py: Command-line interface (python -m analyzer.cli)
"""

from .frobenius import FrobeniusSet, frob_set, frob_sweep, frob_antinef, frob_summands
from .exceptional import (
    Collection,
    CheckReport,
    Witness,
    check_exceptional,
    check_strong,
    check_stable,
    decompose_blocks,
    verify_collection,
    order_collection,
    exterior_product,
)
from .catalog import CatalogEntry, Invariants, compute_invariants, resolve, named_collection, fano3
from .invariant_scorer import InvariantScorer, load_group

__all__ = [
    'FrobeniusSet', 'frob_set', 'frob_sweep', 'frob_antinef', 'frob_summands',
    'Collection', 'CheckReport', 'Witness', 'check_exceptional', 'check_strong', 'check_stable',
    'decompose_blocks', 'verify_collection', 'order_collection', 'exterior_product',
    'CatalogEntry', 'Invariants', 'compute_invariants', 'resolve', 'named_collection', 'fano3',
    'InvariantScorer', 'load_group',
]
