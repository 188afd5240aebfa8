"""
Frobenius Summands - Line bundles split off the toric Frobenius pushforward.

For the level-l Frobenius, each residue t in {0..l-1}^n of M/lM contributes
the class of sum(floor(<t, v_rho>/l) D_rho). The union over all levels is
finite. It is computed exactly by searching floor vectors b whose chamber
{u in [0,1)^n : b_rho <= <u, v_rho> < b_rho + 1} is nonempty.
"""

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

from toric.divisor_theory import PicClass, PicardLattice, TDivisor, is_nef
from toric.fan_geometry import Fan
from toric.lattice_core import rational_feasible
from toric.utils import DEFAULT_SWEEP_LMAX, logger


@dataclass(frozen=True)
class FrobeniusSet:
    """Distinct Frobenius summand classes, optionally broken down by level."""
    classes: Tuple[PicClass, ...]
    per_level: Optional[Dict[int, FrozenSet[PicClass]]] = None

    def __len__(self) -> int:
        return len(self.classes)

    def __contains__(self, cls: PicClass) -> bool:
        return cls in set(self.classes)

    def to_dict(self) -> dict:
        data = {
            'count': len(self.classes),
            'classes': [list(c.coords) for c in self.classes],
        }
        if self.per_level is not None:
            data['per_level'] = {str(l): len(s) for l, s in sorted(self.per_level.items())}
        return data


def frob_summands(fan: Fan, lat: PicardLattice, level: int) -> Counter:
    """
    Multiset of summand classes of the level-l Frobenius pushforward.

    Args:
        fan: Smooth complete fan
        lat: Its Picard lattice
        level: Frobenius level l >= 1

    Returns:
        Counter mapping PicClass -> multiplicity, total l^n
    """
    if level < 1:
        raise ValueError(f"Frobenius level must be positive, got {level}")
    floors = Counter()
    for t in itertools.product(range(level), repeat=fan.rank):
        floors[tuple(sum(a * b for a, b in zip(t, v)) // level for v in fan.rays)] += 1
    result = Counter()
    for b, count in floors.items():
        result[lat.class_of(b)] += count
    return result


def frobenius_multiplicities(fan: Fan, lat: PicardLattice, level: int) -> List[Tuple[PicClass, int]]:
    """Summand classes at one level with their multiplicities, sorted by class."""
    return sorted(frob_summands(fan, lat, level).items())


def _unit_cube(n: int):
    weak = [(tuple(int(i == k) for i in range(n)), 0) for k in range(n)]
    strict = [(tuple(-int(i == k) for i in range(n)), -1) for k in range(n)]
    return weak, strict


def frob_set(fan: Fan, lat: PicardLattice) -> FrobeniusSet:
    """
    Every class occurring as a Frobenius summand at some level.

    Floor vectors are assigned ray by ray; a partial assignment is kept only
    while its chamber inside the unit cube stays feasible over Q.
    """
    n = fan.rank
    ranges = [
        range(sum(x for x in v if x < 0), sum(x for x in v if x > 0) + 1)
        for v in fan.rays
    ]
    floor_vectors = []

    def search(rho: int, weak: list, strict: list, partial: list) -> None:
        if rho == fan.n_rays:
            floor_vectors.append(tuple(partial))
            return
        v = fan.rays[rho]
        negated = tuple(-x for x in v)
        for b in ranges[rho]:
            w = weak + [(v, b)]
            s = strict + [(negated, -b - 1)]
            if rational_feasible(w, s, dim=n) is None:
                continue
            search(rho + 1, w, s, partial + [b])

    weak, strict = _unit_cube(n)
    search(0, weak, strict, [])
    logger.debug(f"Frobenius chamber search found {len(floor_vectors)} floor vectors")

    classes = sorted({lat.class_of(b) for b in floor_vectors})
    return FrobeniusSet(classes=tuple(classes))


def frob_sweep(fan: Fan, lat: PicardLattice, lmax: int = DEFAULT_SWEEP_LMAX) -> FrobeniusSet:
    """Union of summand classes over levels 1..lmax, with per-level sets."""
    per_level = {}
    union = set()
    for level in range(1, lmax + 1):
        level_set = frozenset(frob_summands(fan, lat, level))
        per_level[level] = level_set
        union |= level_set
    logger.debug(f"Frobenius sweep to level {lmax}: {len(union)} classes")
    return FrobeniusSet(classes=tuple(sorted(union)), per_level=per_level)


def frob_antinef(fan: Fan, lat: PicardLattice, frob: Optional[FrobeniusSet] = None) -> Tuple[PicClass, ...]:
    """Frobenius classes c with -c nef."""
    frob = frob if frob is not None else frob_set(fan, lat)
    return tuple(c for c in frob.classes if is_nef(fan, lat, -c))
