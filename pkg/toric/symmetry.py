"""
Fan automorphism groups and their action on the Picard lattice.
"""

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from toric.divisor_theory import PicClass, PicardLattice, TDivisor, picard
from toric.errors import DimensionMismatchError, FanError, NotStableError, ToricError
from toric.fan_geometry import Fan, lattice_maps
from toric.lattice_core import rational_rank
from toric.utils import logger

Matrix = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class FanAutomorphism:
    """A lattice automorphism with matrix . v_rho = v_{ray_perm[rho]}."""
    matrix: Matrix
    ray_perm: Tuple[int, ...]

    def compose(self, other: 'FanAutomorphism') -> 'FanAutomorphism':
        """self after other."""
        n = len(self.matrix)
        product = tuple(
            tuple(sum(self.matrix[i][k] * other.matrix[k][j] for k in range(n)) for j in range(n))
            for i in range(n)
        )
        return FanAutomorphism(product, tuple(self.ray_perm[i] for i in other.ray_perm))

    def inverse(self) -> 'FanAutomorphism':
        """self^(order - 1); fan automorphisms have finite order."""
        power = self
        while not power.compose(self).is_identity():
            power = power.compose(self)
        return power

    def is_identity(self) -> bool:
        return self.ray_perm == tuple(range(len(self.ray_perm))) and _is_identity(self.matrix)

    def order(self) -> int:
        k, power = 1, self
        while not power.is_identity():
            power = power.compose(self)
            k += 1
        return k

    def permute(self, D: TDivisor) -> TDivisor:
        """Pushforward of a divisor: the coefficient of rho moves to ray_perm[rho]."""
        if len(D.coeffs) != len(self.ray_perm):
            raise DimensionMismatchError("Divisor length differs from the ray count")
        moved = [0] * len(D.coeffs)
        for rho, a in enumerate(D.coeffs):
            moved[self.ray_perm[rho]] = a
        return TDivisor(tuple(moved))


def _is_identity(matrix: Matrix) -> bool:
    return all(matrix[i][j] == int(i == j) for i in range(len(matrix)) for j in range(len(matrix)))


@dataclass(frozen=True)
class FanAutGroup:
    """A group of fan automorphisms, sorted by ray permutation."""
    fan: Fan
    elements: Tuple[FanAutomorphism, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def pic_matrices(self) -> Tuple[Matrix, ...]:
        """Per-element matrices on canonical Picard coordinates (column action)."""
        lat = picard(self.fan)
        basis = lat.basis()
        matrices = []
        for g in self.elements:
            columns = [lat.class_of(g.permute(lat.lift(e))).coords for e in basis]
            matrices.append(tuple(
                tuple(columns[j][i] for j in range(lat.rank)) for i in range(lat.rank)
            ))
        return tuple(matrices)

    @classmethod
    def from_elements(cls, fan: Fan, elements: Iterable[FanAutomorphism]) -> 'FanAutGroup':
        """
        Build a subgroup from an explicit element list.

        Raises:
            ToricError: if the list is not closed under composition or lacks
                the identity
        """
        unique = {g.ray_perm: g for g in elements}
        if not any(g.is_identity() for g in unique.values()):
            raise ToricError("Subgroup is missing the identity")
        for g, h in itertools.product(unique.values(), repeat=2):
            if g.compose(h).ray_perm not in unique:
                raise ToricError("Element list is not closed under composition")
        return cls(fan=fan, elements=tuple(sorted(unique.values(), key=lambda g: g.ray_perm)))

    def is_abelian(self) -> bool:
        return all(g.compose(h).ray_perm == h.compose(g).ray_perm
                   for g, h in itertools.combinations(self.elements, 2))


def _ray_permutation(fan: Fan, matrix: Matrix) -> Optional[Tuple[int, ...]]:
    n = fan.rank
    perm = []
    for v in fan.rays:
        image = tuple(sum(matrix[r][c] * v[c] for c in range(n)) for r in range(n))
        try:
            perm.append(fan.ray_index(image))
        except FanError:
            return None
    return tuple(perm)


def automorphism_from_matrix(fan: Fan, matrix: Sequence[Sequence[int]]) -> FanAutomorphism:
    """
    Wrap a matrix as a fan automorphism.

    Raises:
        FanError: if the matrix does not permute the rays and maximal cones
    """
    m = tuple(tuple(int(x) for x in row) for row in matrix)
    if len(m) != fan.rank or any(len(row) != fan.rank for row in m):
        raise DimensionMismatchError(f"Expected a {fan.rank}x{fan.rank} matrix")
    perm = _ray_permutation(fan, m)
    if perm is None or len(set(perm)) != fan.n_rays:
        raise FanError("Matrix does not permute the rays of the fan")
    cones = set(fan.max_cones)
    if any(frozenset(perm[i] for i in c) not in cones for c in fan.max_cones):
        raise FanError("Matrix does not permute the maximal cones of the fan")
    return FanAutomorphism(m, perm)


@lru_cache(maxsize=None)
def fan_automorphisms(fan: Fan) -> FanAutGroup:
    """
    Every lattice automorphism preserving the fan.

    Candidates send the first maximal cone's basis to each ordering of each
    maximal cone; integrality and cone preservation are checked exactly.
    """
    logger.info(f"Enumerating automorphisms of a rank-{fan.rank} fan with {fan.n_rays} rays")
    elements = {}
    for matrix in lattice_maps(fan, fan):
        perm = _ray_permutation(fan, matrix)
        elements[perm] = FanAutomorphism(matrix, perm)
    group = FanAutGroup(fan=fan, elements=tuple(sorted(elements.values(), key=lambda g: g.ray_perm)))
    logger.info(f"Found {group.order} automorphisms")
    return group


# =============================================================================
# PICARD ACTION
# =============================================================================

def pic_action(group: FanAutGroup, lat: PicardLattice) -> Tuple[Matrix, ...]:
    if lat.fan != group.fan:
        raise DimensionMismatchError("Picard lattice belongs to a different fan")
    return group.pic_matrices


def act(matrix: Matrix, cls: PicClass) -> PicClass:
    """Apply a Picard matrix to a class."""
    return PicClass(tuple(sum(row[j] * cls.coords[j] for j in range(len(row))) for row in matrix))


def invariant_rank(group: FanAutGroup, lat: PicardLattice) -> int:
    """Rank of the sublattice of Pic fixed by every element."""
    rows = []
    for P in pic_action(group, lat):
        for i, row in enumerate(P):
            rows.append([x - int(i == j) for j, x in enumerate(row)])
    return lat.rank - rational_rank(rows, lat.rank)


def orbits(group: FanAutGroup, classes: Sequence[PicClass]) -> List[List[PicClass]]:
    """
    Orbit partition of a class set, listed in order of first appearance.

    Raises:
        NotStableError: if some element sends a class outside the set
    """
    position = {c: i for i, c in enumerate(classes)}
    matrices = group.pic_matrices
    seen = set()
    result = []
    for c in classes:
        if c in seen:
            continue
        orbit = {c}
        for P in matrices:
            image = act(P, c)
            if image not in position:
                raise NotStableError(f"Class {list(c.coords)} is sent outside the set, to {list(image.coords)}")
            orbit.add(image)
        seen |= orbit
        result.append(sorted(orbit, key=position.get))
    return result


def vn_symmetric_subgroup(fan: Fan, n: int) -> FanAutGroup:
    """
    The subgroup S_{n+1} x C_2 acting on V_n.

    S_{n+1} permutes e_1..e_{n+1} (with e_{n+1} = -(e_1+...+e_n)) and C_2 is
    the central symmetry -1.
    """
    basis = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    basis.append(tuple(-1 for _ in range(n)))
    elements = []
    for perm in itertools.permutations(range(n + 1)):
        columns = [basis[perm[i]] for i in range(n)]
        for sign in (1, -1):
            matrix = tuple(tuple(sign * columns[c][r] for c in range(n)) for r in range(n))
            elements.append(automorphism_from_matrix(fan, matrix))
    return FanAutGroup.from_elements(fan, elements)


def group_report(group: FanAutGroup) -> Dict:
    """Order, abelian flag, element orders and per-element data."""
    return {
        'order': group.order,
        'abelian': group.is_abelian(),
        'element_orders': sorted(g.order() for g in group.elements),
        'elements': [
            {'ray_perm': list(g.ray_perm), 'matrix': [list(row) for row in g.matrix]}
            for g in group.elements
        ],
    }
