"""
Toric Exceptional Collections - Geometry Package

This package holds the exact geometric core:

- lattice_core.py: Smith normal form, kernels, rational feasibility
- fan_geometry.py: Fans, validation, products, blowups, projective bundles
- divisor_theory.py: Picard lattice, wall intersections, nef/ample/Fano
- cohomology.py: Line bundle cohomology and Ext tables
- symmetry.py: Fan automorphism groups and their Picard action
- utils.py: Shared logger, project paths and JSON helpers
"""

from .utils import (
    logger,
    set_verbosity,
    dump_json,
    save_json,
    load_json,
    save_processed_data,
    load_processed_data,
)
from .errors import (
    ToricError,
    DimensionMismatchError,
    FanError,
    TorsionError,
    NotStableError,
    BlockDecompositionError,
    NotConstructibleError,
    UnknownTargetError,
)
from .fan_geometry import (
    Fan,
    Wall,
    validate,
    is_smooth,
    is_complete,
    product,
    star_subdivision,
    projectivize,
    walls,
    projective_space,
    point_fan,
    is_isomorphic,
)
from .divisor_theory import (
    TDivisor,
    PicClass,
    PicardLattice,
    picard,
    class_of,
    wall_relation,
    intersect,
    is_nef,
    is_ample,
    anticanonical,
    canonical_divisor,
    is_fano,
    polytope_points,
)
from .cohomology import (
    CohomologyTable,
    CohomologyCalculator,
    reduced_cohomology,
    line_bundle_cohomology,
    ext_table,
    euler_char,
)
from .symmetry import (
    FanAutomorphism,
    FanAutGroup,
    fan_automorphisms,
    pic_action,
    invariant_rank,
    orbits,
)

__all__ = [
    'logger',
    'set_verbosity',
    'dump_json',
    'save_json',
    'load_json',
    'save_processed_data',
    'load_processed_data',
    'ToricError',
    'DimensionMismatchError',
    'FanError',
    'TorsionError',
    'NotStableError',
    'BlockDecompositionError',
    'NotConstructibleError',
    'UnknownTargetError',
    'Fan',
    'Wall',
    'validate',
    'is_smooth',
    'is_complete',
    'product',
    'star_subdivision',
    'projectivize',
    'walls',
    'projective_space',
    'point_fan',
    'is_isomorphic',
    'TDivisor',
    'PicClass',
    'PicardLattice',
    'picard',
    'class_of',
    'wall_relation',
    'intersect',
    'is_nef',
    'is_ample',
    'anticanonical',
    'canonical_divisor',
    'is_fano',
    'polytope_points',
    'CohomologyTable',
    'CohomologyCalculator',
    'reduced_cohomology',
    'line_bundle_cohomology',
    'ext_table',
    'euler_char',
    'FanAutomorphism',
    'FanAutGroup',
    'fan_automorphisms',
    'pic_action',
    'invariant_rank',
    'orbits',
]
