"""
Line bundle cohomology on smooth complete toric varieties.

For a divisor D = sum a_rho D_rho and a weight m, the support pattern is the
set of rays with <m, v_rho> < -a_rho. The weight contributes the reduced
cohomology of the subcomplex of the fan spanned by its pattern, shifted by
one degree; summing over weights gives h^i(O(D)).

Weights are only enumerated inside an integer box around the shifted
arrangement <m, v_rho> = -a_rho - 1/2. No lattice point lies on a shifted
hyperplane, so every weight outside the box shares its pattern with an
unbounded chamber, and those patterns are acyclic.
"""

import itertools
import logging
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple, Union

import numpy as np

from toric.divisor_theory import (
    PicClass, PicardLattice, TDivisor, arrangement_vertices, as_divisor, canonical_divisor, picard,
)
from toric.errors import DimensionMismatchError, ToricError
from toric.fan_geometry import Fan
from toric.lattice_core import rational_rank
from toric.utils import ACYCLICITY_SAMPLES, logger

SupportPattern = FrozenSet[int]


@dataclass(frozen=True)
class CohomologyTable:
    """Dimensions h^0..h^n."""
    dims: Tuple[int, ...]

    def is_zero(self) -> bool:
        return all(d == 0 for d in self.dims)

    def higher_vanish(self) -> bool:
        """h^i = 0 for every i > 0."""
        return all(d == 0 for d in self.dims[1:])

    def is_point_like(self) -> bool:
        """(1, 0, ..., 0), the table of the structure sheaf."""
        return self.dims[0] == 1 and self.higher_vanish()

    def euler(self) -> int:
        return sum((-1) ** i * d for i, d in enumerate(self.dims))

    def nonzero_degrees(self) -> List[Tuple[int, int]]:
        return [(i, d) for i, d in enumerate(self.dims) if d != 0]

    def to_list(self) -> List[int]:
        return list(self.dims)


class CohomologyCalculator:
    """
    Cohomology on one fan, with memo tables.

    Reduced cohomology is cached per support pattern and full tables per
    Picard class, since cohomology only depends on the class.
    """

    def __init__(self, fan: Fan, lat: PicardLattice):
        self.fan = fan
        self.lat = lat
        self._pattern_memo: Dict[SupportPattern, Tuple[int, ...]] = {}
        self._class_memo: Dict[PicClass, CohomologyTable] = {}
        self._faces_by_size: Dict[int, List[Tuple[int, ...]]] = {}
        for cone in fan.cones:
            self._faces_by_size.setdefault(len(cone), []).append(tuple(sorted(cone)))
        for faces in self._faces_by_size.values():
            faces.sort()
        self._rays = np.array(fan.rays, dtype=object).reshape(fan.n_rays, fan.rank)

    # -------------------------------------------------------------------------
    # Reduced cohomology of support subcomplexes
    # -------------------------------------------------------------------------

    def reduced(self, S: Iterable[int]) -> Tuple[int, ...]:
        """
        Reduced cohomology dims H~^-1 .. H~^(n-1) of the subcomplex on S.

        Faces are the cones of the fan whose rays all lie in S; the empty
        face makes the complex augmented.
        """
        pattern = frozenset(S)
        cached = self._pattern_memo.get(pattern)
        if cached is not None:
            return cached
        if any(i < 0 or i >= self.fan.n_rays for i in pattern):
            raise DimensionMismatchError(f"Pattern {sorted(pattern)} references a missing ray")
        dims = self._compute_reduced(pattern)
        self._pattern_memo[pattern] = dims
        return dims

    def _compute_reduced(self, pattern: SupportPattern) -> Tuple[int, ...]:
        n = self.fan.rank
        faces = {
            size: [f for f in self._faces_by_size.get(size, []) if pattern.issuperset(f)]
            for size in range(n + 1)
        }
        index = {size: {f: i for i, f in enumerate(fs)} for size, fs in faces.items()}

        # boundary_rank[size]: rank of the map from faces of `size` to faces of size-1
        boundary_rank = {}
        for size in range(1, n + 1):
            rows, cols = len(faces[size - 1]), len(faces[size])
            if rows == 0 or cols == 0:
                boundary_rank[size] = 0
                continue
            matrix = [[0] * cols for _ in range(rows)]
            for j, face in enumerate(faces[size]):
                for k in range(size):
                    sub = face[:k] + face[k + 1:]
                    matrix[index[size - 1][sub]][j] = (-1) ** k
            boundary_rank[size] = rational_rank(matrix, cols)
        boundary_rank[n + 1] = 0

        # H~ in degree size-1 (size = number of rays, the empty face has size 0)
        return tuple(
            len(faces[size]) - boundary_rank.get(size, 0) - boundary_rank[size + 1]
            for size in range(n + 1)
        )

    # -------------------------------------------------------------------------
    # Line bundle cohomology
    # -------------------------------------------------------------------------

    def weight_box(self, D: TDivisor) -> List[range]:
        """Integer box containing every weight with a possibly non-acyclic pattern."""
        shifted = [-a - Fraction(1, 2) for a in D.coeffs]
        vertices = arrangement_vertices(self.fan, shifted)
        return [
            range(math.floor(min(v[k] for v in vertices)) - 1, math.ceil(max(v[k] for v in vertices)) + 2)
            for k in range(self.fan.rank)
        ]

    def pattern_of(self, D: TDivisor, m: Sequence[int]) -> SupportPattern:
        return frozenset(
            i for i, (v, a) in enumerate(zip(self.fan.rays, D.coeffs))
            if sum(x * y for x, y in zip(m, v)) < -a
        )

    def table(self, D: Union[TDivisor, PicClass]) -> CohomologyTable:
        """Cohomology table of O(D); memoized per class."""
        divisor = as_divisor(self.lat, D)
        cls = D if isinstance(D, PicClass) else self.lat.class_of(divisor)
        cached = self._class_memo.get(cls)
        if cached is not None:
            return cached
        table = self._compute_table(divisor)
        self._class_memo[cls] = table
        return table

    table_for_class = table

    def _compute_table(self, D: TDivisor) -> CohomologyTable:
        n = self.fan.rank
        if n == 0:
            return CohomologyTable((1,))
        box = self.weight_box(D)
        weights = np.array(list(itertools.product(*box)), dtype=object).reshape(-1, n)
        pairing = weights.dot(self._rays.T)
        bounds = np.array([-a for a in D.coeffs], dtype=object)
        patterns = np.asarray(pairing < bounds, dtype=bool)
        unique, counts = np.unique(patterns, axis=0, return_counts=True)

        dims = [0] * (n + 1)
        for row, count in zip(unique, counts):
            reduced = self.reduced(i for i, flag in enumerate(row) if flag)
            for i in range(n + 1):
                dims[i] += int(count) * reduced[i]

        if logger.isEnabledFor(logging.DEBUG):
            self._check_outside(D, box)
        return CohomologyTable(tuple(dims))

    def _check_outside(self, D: TDivisor, box: List[range]) -> None:
        """Sample weights beyond the box and confirm their patterns are acyclic."""
        rng = random.Random(hash(D.coeffs))
        for _ in range(ACYCLICITY_SAMPLES):
            axis = rng.randrange(len(box))
            m = [rng.randint(r.start - 3, r.stop + 2) for r in box]
            m[axis] = box[axis].start - 1 - rng.randrange(4) if rng.random() < 0.5 \
                else box[axis].stop + rng.randrange(4)
            reduced = self.reduced(self.pattern_of(D, m))
            logger.debug(f"Acyclicity sample {m}: {reduced}")
            if any(reduced):
                raise ToricError(f"Weight {m} outside the cohomology box has a non-acyclic pattern")

    def ext(self, D1: Union[TDivisor, PicClass], D2: Union[TDivisor, PicClass]) -> CohomologyTable:
        """Ext^i(O(D1), O(D2)) = H^i(O(D2 - D1))."""
        if isinstance(D1, PicClass) and isinstance(D2, PicClass):
            return self.table(D2 - D1)
        return self.table(as_divisor(self.lat, D2) - as_divisor(self.lat, D1))

    def euler(self, D: Union[TDivisor, PicClass]) -> int:
        return self.table(D).euler()


@lru_cache(maxsize=None)
def calculator_for(fan: Fan) -> CohomologyCalculator:
    """Shared calculator per fan so memo tables survive across calls."""
    return CohomologyCalculator(fan, picard(fan))


def _calculator(fan: Fan, lat: PicardLattice) -> CohomologyCalculator:
    if lat.fan != fan:
        raise DimensionMismatchError("Picard lattice belongs to a different fan")
    return calculator_for(fan)


def reduced_cohomology(fan: Fan, S: Iterable[int]) -> Tuple[int, ...]:
    """Reduced cohomology dims H~^-1 .. H~^(n-1) of the support subcomplex."""
    return calculator_for(fan).reduced(S)


def line_bundle_cohomology(fan: Fan, lat: PicardLattice, D: Union[TDivisor, PicClass]) -> CohomologyTable:
    return _calculator(fan, lat).table(D)


def ext_table(fan: Fan, lat: PicardLattice, D1, D2) -> CohomologyTable:
    return _calculator(fan, lat).ext(D1, D2)


def euler_char(fan: Fan, lat: PicardLattice, D) -> int:
    return _calculator(fan, lat).euler(D)


def serre_dual(fan: Fan, lat: PicardLattice, D: Union[TDivisor, PicClass]) -> TDivisor:
    """K - D."""
    return canonical_divisor(fan) - as_divisor(lat, D)
