"""
Simplicial fans: validation, structural predicates and constructors.

A fan is stored as its lattice rank, the primitive ray generators and the
maximal cones as sets of ray indices. Only simplicial fans whose maximal
cones are full-dimensional are representable. Constructors return rays in
lexicographic order so indices are reproducible across runs.
"""

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from toric.errors import FanError
from toric.lattice_core import (
    determinant, int_matrix, rational_feasible, rational_inverse, solve_rational,
)
from toric.utils import FACE_CHECK_MAX_CONES, logger

Ray = Tuple[int, ...]
Cone = FrozenSet[int]


@dataclass(frozen=True)
class Fan:
    """A simplicial fan with full-dimensional maximal cones."""
    rank: int
    rays: Tuple[Ray, ...]
    max_cones: Tuple[Cone, ...]

    @classmethod
    def build(cls, rank: int, rays: Iterable[Sequence[int]],
              max_cones: Iterable[Iterable[int]]) -> 'Fan':
        """Normalize containers; cones are sorted by their index tuples."""
        ray_tuple = tuple(tuple(int(x) for x in r) for r in rays)
        cones = sorted({frozenset(int(i) for i in c) for c in max_cones}, key=lambda c: sorted(c))
        return cls(rank=int(rank), rays=ray_tuple, max_cones=tuple(cones))

    @cached_property
    def _ray_lookup(self) -> Dict[Ray, int]:
        return {r: i for i, r in enumerate(self.rays)}

    def ray_index(self, vector: Sequence[int]) -> int:
        """Index of the ray with the given generator."""
        key = tuple(int(x) for x in vector)
        if key not in self._ray_lookup:
            raise FanError(f"{key} is not a ray of the fan")
        return self._ray_lookup[key]

    @cached_property
    def cones(self) -> FrozenSet[Cone]:
        """Every cone of the fan (all faces of all maximal cones)."""
        faces = set()
        for cone in self.max_cones:
            members = sorted(cone)
            for k in range(len(members) + 1):
                faces.update(frozenset(s) for s in itertools.combinations(members, k))
        return frozenset(faces)

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    @property
    def n_max_cones(self) -> int:
        return len(self.max_cones)

    def cone_matrix(self, cone: Iterable[int]) -> List[Ray]:
        """Ray generators of a cone, in ascending index order."""
        return [self.rays[i] for i in sorted(cone)]

    def to_json(self) -> dict:
        return {
            'rank': self.rank,
            'rays': [list(r) for r in self.rays],
            'max_cones': [sorted(c) for c in self.max_cones],
        }

    @classmethod
    def from_json(cls, data: dict) -> 'Fan':
        """Load a fan from its JSON form and validate it."""
        try:
            fan = cls.build(data['rank'], data['rays'], data['max_cones'])
        except (KeyError, TypeError) as e:
            raise FanError(f"Malformed fan JSON: {e}") from e
        failures = validate(fan)
        if failures:
            raise FanError("Invalid fan: " + "; ".join(failures))
        return fan


@dataclass(frozen=True)
class Wall:
    """A ridge together with its two adjacent maximal cones."""
    ridge: Cone
    left: int
    right: int


def point_fan() -> Fan:
    """The rank-0 fan of a point: no rays, one empty maximal cone."""
    return Fan(rank=0, rays=(), max_cones=(frozenset(),))


def canonical_fan(rank: int, rays: Sequence[Sequence[int]],
                  max_cones: Iterable[Iterable[int]]) -> Fan:
    """Re-index a fan so its rays are in lexicographic order."""
    order = sorted(range(len(rays)), key=lambda i: tuple(rays[i]))
    new_index = {old: new for new, old in enumerate(order)}
    return Fan.build(
        rank,
        [rays[i] for i in order],
        [[new_index[i] for i in cone] for cone in max_cones],
    )


def projective_space(n: int) -> Fan:
    """Fan of P^n: rays e_1..e_n and -(e_1+...+e_n)."""
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    cones = [[j for j in range(n + 1) if j != i] for i in range(n + 1)]
    return canonical_fan(n, rays, cones)


# =============================================================================
# VALIDATION AND PREDICATES
# =============================================================================

def _separated(fan: Fan, c1: Cone, c2: Cone) -> bool:
    """Check that two simplicial cones meet exactly in their common face."""
    common = c1 & c2
    weak = []
    strict = []
    for i in common:
        weak.append((fan.rays[i], 0))
        weak.append((tuple(-x for x in fan.rays[i]), 0))
    for i in c1 - common:
        strict.append((fan.rays[i], 0))
    for i in c2 - common:
        strict.append((tuple(-x for x in fan.rays[i]), 0))
    return rational_feasible(weak, strict, dim=fan.rank) is not None


def validate(fan: Fan) -> List[str]:
    """
    Check the fan invariants.

    Verifies primitive distinct rays of the right length, maximal cones of
    size rank with linearly independent rays, every ray used, and (for fans
    with at most FACE_CHECK_MAX_CONES maximal cones) that any two maximal
    cones meet in a common face.

    Returns:
        List of failure messages; empty when the fan is valid
    """
    failures = []
    n = fan.rank
    if n < 0:
        return [f"negative rank {n}"]

    for i, ray in enumerate(fan.rays):
        if len(ray) != n:
            failures.append(f"ray {i} has length {len(ray)}, expected {n}")
            continue
        if all(x == 0 for x in ray):
            failures.append(f"ray {i} is zero")
        elif gcd(*ray) != 1:
            failures.append(f"ray {i} = {ray} is not primitive")
    if len(set(fan.rays)) != len(fan.rays):
        failures.append("rays are not pairwise distinct")
    if failures:
        return failures

    if not fan.max_cones:
        failures.append("fan has no maximal cones")
    used = set()
    for cone in fan.max_cones:
        if any(i < 0 or i >= fan.n_rays for i in cone):
            failures.append(f"cone {sorted(cone)} references a missing ray")
            continue
        if len(cone) != n:
            failures.append(f"cone {sorted(cone)} has {len(cone)} rays, expected {n}")
            continue
        if n and determinant(int_matrix(fan.cone_matrix(cone))) == 0:
            failures.append(f"cone {sorted(cone)} has linearly dependent rays")
        used |= cone
    for i in range(fan.n_rays):
        if i not in used:
            failures.append(f"ray {i} lies in no maximal cone")
    if failures:
        return failures

    if fan.n_max_cones <= FACE_CHECK_MAX_CONES:
        for c1, c2 in itertools.combinations(fan.max_cones, 2):
            if not _separated(fan, c1, c2):
                failures.append(f"cones {sorted(c1)} and {sorted(c2)} overlap beyond a common face")
    else:
        logger.debug(f"Skipping pairwise face check on {fan.n_max_cones} cones")
    return failures


def require_valid(fan: Fan) -> None:
    """Raise FanError listing every validation failure."""
    failures = validate(fan)
    if failures:
        raise FanError("Invalid fan: " + "; ".join(failures))


def is_smooth(fan: Fan) -> bool:
    """True iff every maximal cone's ray matrix has determinant +-1."""
    if fan.rank == 0:
        return True
    return all(abs(determinant(int_matrix(fan.cone_matrix(c)))) == 1 for c in fan.max_cones)


def _ridge_map(fan: Fan) -> Dict[Cone, List[int]]:
    ridges: Dict[Cone, List[int]] = {}
    for idx, cone in enumerate(fan.max_cones):
        for i in cone:
            ridges.setdefault(cone - {i}, []).append(idx)
    return ridges


def is_complete(fan: Fan) -> bool:
    """True iff every ridge lies in exactly two maximal cones."""
    if fan.rank == 0:
        return True
    return all(len(owners) == 2 for owners in _ridge_map(fan).values())


def require_smooth_complete(fan: Fan) -> None:
    if not is_smooth(fan):
        raise FanError("fan is not smooth")
    if not is_complete(fan):
        raise FanError("fan is not complete")


def walls(fan: Fan) -> List[Wall]:
    """
    Every ridge of a complete fan with its two adjacent maximal cones.

    Raises:
        FanError: if some ridge is a boundary ridge
    """
    result = []
    for ridge, owners in sorted(_ridge_map(fan).items(), key=lambda kv: sorted(kv[0])):
        if len(owners) != 2:
            raise FanError(f"ridge {sorted(ridge)} lies in {len(owners)} maximal cones")
        result.append(Wall(ridge=ridge, left=owners[0], right=owners[1]))
    return result


# =============================================================================
# CONSTRUCTORS
# =============================================================================

def product(f1: Fan, f2: Fan) -> Fan:
    """Product fan: rays embedded in N1 + N2, cones all sigma1 x sigma2."""
    n1, n2 = f1.rank, f2.rank
    rays = [tuple(r) + (0,) * n2 for r in f1.rays]
    rays += [(0,) * n1 + tuple(r) for r in f2.rays]
    offset = f1.n_rays
    cones = [set(c1) | {offset + i for i in c2} for c1 in f1.max_cones for c2 in f2.max_cones]
    return canonical_fan(n1 + n2, rays, cones)


def product_ray_map(product_fan: Fan, factor: Fan, offset: int) -> List[int]:
    """
    Indices in a product fan of a factor's embedded rays.

    Args:
        product_fan: The product fan
        factor: One of its factors
        offset: Coordinate position where the factor's lattice starts

    Returns:
        List mapping factor ray index -> product ray index
    """
    n = product_fan.rank
    result = []
    for ray in factor.rays:
        vector = [0] * n
        vector[offset:offset + factor.rank] = ray
        result.append(product_fan.ray_index(vector))
    return result


def star_subdivision(fan: Fan, cone: Iterable[int]) -> Fan:
    """
    Star subdivision of a smooth fan at one of its cones (toric blowup).

    Args:
        fan: Smooth fan
        cone: Ray indices of a cone of dimension >= 2

    Returns:
        New fan with the ray sum(v_i for i in cone) added
    """
    tau = frozenset(cone)
    if len(tau) < 2:
        raise FanError("star subdivision needs a cone of dimension >= 2")
    if tau not in fan.cones:
        raise FanError(f"{sorted(tau)} is not a cone of the fan")
    if not is_smooth(fan):
        raise FanError("star subdivision requires a smooth fan")

    new_ray = tuple(sum(fan.rays[i][k] for i in tau) for k in range(fan.rank))
    new_index = fan.n_rays
    rays = list(fan.rays) + [new_ray]
    cones = []
    for sigma in fan.max_cones:
        if tau <= sigma:
            cones.extend((sigma - {i}) | {new_index} for i in tau)
        else:
            cones.append(sigma)
    return canonical_fan(fan.rank, rays, cones)


def projectivize(base: Fan, twists: Sequence[Sequence[int]], r: int) -> Fan:
    """
    Fan of P(O + O(D_1) + ... + O(D_r)) over a smooth complete base.

    Fiber rays are f_1..f_r and f_0 = -(f_1+...+f_r); a base ray v is lifted
    to (v, D_1[v], ..., D_r[v]). Over P^1 with twist a*(point at the ray -1)
    this gives the Hirzebruch rays e_1, e_2, -e_2 and -e_1 + a e_2.

    Args:
        base: Smooth complete base fan
        twists: r torus-invariant divisors on the base (coefficient lists)
        r: Fiber rank
    """
    if len(twists) != r:
        raise FanError(f"expected {r} twist divisors, got {len(twists)}")
    if not (is_smooth(base) and is_complete(base)):
        raise FanError("projectivize requires a smooth complete base")
    for D in twists:
        if len(D) != base.n_rays:
            raise FanError("twist divisor length differs from the base ray count")

    n = base.rank
    rays = [tuple(v) + tuple(int(D[i]) for D in twists) for i, v in enumerate(base.rays)]
    fiber = [(0,) * n + tuple(int(j == k) for j in range(r)) for k in range(r)]
    fiber.append((0,) * n + (-1,) * r)
    offset = base.n_rays
    rays += fiber
    cones = []
    for sigma in base.max_cones:
        for skip in range(r + 1):
            cones.append(set(sigma) | {offset + k for k in range(r + 1) if k != skip})
    return canonical_fan(n + r, rays, cones)


# =============================================================================
# ISOMORPHISM
# =============================================================================

def lattice_maps(source: Fan, target: Fan):
    """
    Yield every GL(n, Z) matrix carrying the source rays onto the target rays
    and maximal cones onto maximal cones.

    The first maximal cone of the source is a lattice basis (smooth fans);
    each candidate sends it to an ordered maximal cone of the target. Matrices
    act on column vectors and are returned as tuples of rows.
    """
    n = source.rank
    if n != target.rank or source.n_rays != target.n_rays or \
            source.n_max_cones != target.n_max_cones:
        return
    if n == 0:
        yield ()
        return
    basis_cone = sorted(source.max_cones[0])
    B = [source.rays[i] for i in basis_cone]
    # Columns of B are the basis vectors: A @ B^T = T^T, so A = T^T (B^T)^-1.
    Bt_inv = rational_inverse([[B[j][i] for j in range(n)] for i in range(n)])
    if Bt_inv is None:
        return
    target_rays = set(target.rays)
    target_cones = {frozenset(target.rays[i] for i in c) for c in target.max_cones}
    for cone in target.max_cones:
        for images in itertools.permutations(sorted(cone)):
            T = [target.rays[i] for i in images]
            A = []
            integral = True
            for row in range(n):
                entries = [sum(T[k][row] * Bt_inv[k][col] for k in range(n)) for col in range(n)]
                if any(e.denominator != 1 for e in entries):
                    integral = False
                    break
                A.append(tuple(int(e) for e in entries))
            if not integral or abs(determinant(int_matrix(A))) != 1:
                continue
            mapped = {tuple(sum(A[r][c] * v[c] for c in range(n)) for r in range(n)): v
                      for v in source.rays}
            if set(mapped) != target_rays:
                continue
            image_of = {v: w for w, v in mapped.items()}
            image_cones = {frozenset(image_of[source.rays[i]] for i in c) for c in source.max_cones}
            if image_cones != target_cones:
                continue
            yield tuple(A)


def is_isomorphic(f1: Fan, f2: Fan) -> Optional[Tuple[Tuple[int, ...], ...]]:
    """Return a lattice isomorphism f1 -> f2 as a matrix, or None."""
    return next(lattice_maps(f1, f2), None)


def solve_in_cone(fan: Fan, cone: Iterable[int], vector: Sequence[int]):
    """Coordinates of a vector in the basis given by a full-dimensional cone."""
    members = sorted(cone)
    B = fan.cone_matrix(members)
    columns = [[B[j][i] for j in range(len(members))] for i in range(fan.rank)]
    solution = solve_rational(columns, vector)
    if solution is None:
        raise FanError(f"cone {members} is not full-dimensional")
    return dict(zip(members, solution))
