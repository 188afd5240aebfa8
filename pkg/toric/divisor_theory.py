"""
Torus-invariant divisors, the Picard lattice and intersection numbers.

The Picard group of a smooth complete fan is the cokernel of the map
m -> (<m, v_rho>)_rho. Its Smith normal form fixes canonical class
coordinates once per fan, which makes PicClass values usable as dictionary
keys across the whole toolkit.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from toric.errors import DimensionMismatchError, FanError, TorsionError
from toric.fan_geometry import Fan, Wall, is_complete, is_smooth, solve_in_cone, walls
from toric.lattice_core import SNFDecomposition, int_matrix, rational_inverse, smith_normal_form


@dataclass(frozen=True)
class TDivisor:
    """Torus-invariant divisor sum(a_rho D_rho), indexed by the fan's ray order."""
    coeffs: Tuple[int, ...]

    @classmethod
    def of(cls, coeffs: Iterable[int]) -> 'TDivisor':
        return cls(tuple(int(a) for a in coeffs))

    @classmethod
    def zero(cls, n_rays: int) -> 'TDivisor':
        return cls((0,) * n_rays)

    @classmethod
    def prime(cls, n_rays: int, index: int) -> 'TDivisor':
        """The prime divisor D_rho of ray `index`."""
        return cls(tuple(int(i == index) for i in range(n_rays)))

    def _check(self, other: 'TDivisor') -> None:
        if len(self.coeffs) != len(other.coeffs):
            raise DimensionMismatchError(
                f"Divisors of length {len(self.coeffs)} and {len(other.coeffs)}"
            )

    def __add__(self, other: 'TDivisor') -> 'TDivisor':
        self._check(other)
        return TDivisor(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: 'TDivisor') -> 'TDivisor':
        self._check(other)
        return TDivisor(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> 'TDivisor':
        return TDivisor(tuple(-a for a in self.coeffs))

    def scale(self, k: int) -> 'TDivisor':
        return TDivisor(tuple(k * a for a in self.coeffs))

    def __len__(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True, order=True)
class PicClass:
    """A line bundle class in canonical Picard coordinates."""
    coords: Tuple[int, ...]

    def __add__(self, other: 'PicClass') -> 'PicClass':
        return PicClass(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: 'PicClass') -> 'PicClass':
        return PicClass(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> 'PicClass':
        return PicClass(tuple(-a for a in self.coords))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)


@dataclass(frozen=True)
class PicardLattice:
    """
    Presentation Div_T -> Pic for a smooth complete fan.

    With R the ray matrix and R = U S V its Smith form, the canonical
    coordinates of a divisor a are the last (#rays - rank) entries of U^-1 a.
    """
    fan: Fan
    snf: SNFDecomposition
    rank: int

    def class_of(self, D: Union[TDivisor, Sequence[int]]) -> PicClass:
        coeffs = D.coeffs if isinstance(D, TDivisor) else tuple(D)
        m = self.fan.n_rays
        if len(coeffs) != m:
            raise DimensionMismatchError(f"Divisor has {len(coeffs)} coefficients, fan has {m} rays")
        n = self.fan.rank
        U_inv = self.snf.U_inv
        return PicClass(tuple(
            int(sum(U_inv[i, j] * coeffs[j] for j in range(m))) for i in range(n, m)
        ))

    def lift(self, cls: PicClass) -> TDivisor:
        """Canonical divisor representative of a class."""
        if len(cls.coords) != self.rank:
            raise DimensionMismatchError(f"Class has {len(cls.coords)} coordinates, Pic has rank {self.rank}")
        m, n = self.fan.n_rays, self.fan.rank
        U = self.snf.U
        return TDivisor(tuple(
            int(sum(U[i, n + k] * cls.coords[k] for k in range(self.rank))) for i in range(m)
        ))

    def zero(self) -> PicClass:
        return PicClass((0,) * self.rank)

    def basis(self) -> List[PicClass]:
        return [PicClass(tuple(int(i == j) for j in range(self.rank))) for i in range(self.rank)]


def picard(fan: Fan) -> PicardLattice:
    """
    Build the Picard lattice of a smooth complete fan.

    Raises:
        FanError: if the fan is not smooth and complete
        TorsionError: if the cokernel is not free of rank #rays - rank
    """
    return _picard_cached(fan)


@lru_cache(maxsize=None)
def _picard_cached(fan: Fan) -> PicardLattice:
    if not (is_smooth(fan) and is_complete(fan)):
        raise FanError("Picard lattice requires a smooth complete fan")
    n, m = fan.rank, fan.n_rays
    if n == 0:
        return PicardLattice(fan=fan, snf=smith_normal_form(int_matrix([], cols=0)), rank=0)
    R = int_matrix(fan.rays)
    snf = smith_normal_form(R)
    factors = snf.invariant_factors
    if len(factors) != n or any(d != 1 for d in factors):
        raise TorsionError(f"Picard quotient has invariant factors {factors}")
    return PicardLattice(fan=fan, snf=snf, rank=m - n)


def class_of(lat: PicardLattice, D: Union[TDivisor, Sequence[int]]) -> PicClass:
    return lat.class_of(D)


def as_divisor(lat: PicardLattice, D: Union[TDivisor, PicClass]) -> TDivisor:
    """Accept either a divisor or a class; classes are lifted."""
    if isinstance(D, PicClass):
        return lat.lift(D)
    if len(D.coeffs) != lat.fan.n_rays:
        raise DimensionMismatchError(f"Divisor has {len(D.coeffs)} coefficients, fan has {lat.fan.n_rays} rays")
    return D


def principal_divisor(fan: Fan, m: Sequence[int]) -> TDivisor:
    """div(chi^m) = sum <m, v_rho> D_rho."""
    return TDivisor(tuple(sum(a * b for a, b in zip(m, v)) for v in fan.rays))


# =============================================================================
# WALLS AND INTERSECTIONS
# =============================================================================

def wall_relation(fan: Fan, w: Wall) -> Tuple[int, ...]:
    """
    The linear relation sum(b_rho v_rho) = 0 attached to a wall.

    b is 1 on the two rays completing the ridge into the adjacent maximal
    cones and is supported on those rays plus the ridge.

    Raises:
        FanError: if the completing rays do not give a unimodular relation
    """
    left = fan.max_cones[w.left]
    right = fan.max_cones[w.right]
    (rho,) = left - w.ridge
    (rho_prime,) = right - w.ridge
    coords = solve_in_cone(fan, left, fan.rays[rho_prime])
    if coords[rho] != -1:
        raise FanError(f"Wall {sorted(w.ridge)} has no unimodular relation (smooth fan expected)")
    b = [0] * fan.n_rays
    b[rho] = 1
    b[rho_prime] = 1
    for i in w.ridge:
        x = coords[i]
        if x.denominator != 1:
            raise FanError(f"Wall {sorted(w.ridge)} has a non-integral relation")
        b[i] = -int(x)
    return tuple(b)


@lru_cache(maxsize=None)
def wall_relations(fan: Fan) -> Tuple[Tuple[Wall, Tuple[int, ...]], ...]:
    """Every wall of the fan with its relation, in wall order."""
    return tuple((w, wall_relation(fan, w)) for w in walls(fan))


def intersect(D: TDivisor, wall: Union[Wall, Sequence[int]], fan: Optional[Fan] = None) -> int:
    """
    Degree D . C_w of a divisor on the curve of a wall.

    Args:
        D: Torus-invariant divisor
        wall: A Wall of `fan`, or its precomputed relation
        fan: The fan the wall belongs to; required when `wall` is a Wall

    Raises:
        DimensionMismatchError: if the divisor and relation lengths differ
    """
    if isinstance(wall, Wall):
        if fan is None:
            raise FanError("intersect() needs the fan to compute a wall relation")
        relation = wall_relation(fan, wall)
    else:
        relation = wall
    if len(D.coeffs) != len(relation):
        raise DimensionMismatchError("Divisor and wall relation differ in length")
    return sum(a * b for a, b in zip(D.coeffs, relation))


def wall_degrees(fan: Fan, lat: PicardLattice, D: Union[TDivisor, PicClass]) -> List[int]:
    divisor = as_divisor(lat, D)
    return [intersect(divisor, b) for _, b in wall_relations(fan)]


def is_nef(fan: Fan, lat: PicardLattice, D: Union[TDivisor, PicClass]) -> bool:
    """Nef iff every wall degree is >= 0."""
    return all(d >= 0 for d in wall_degrees(fan, lat, D))


def is_ample(fan: Fan, lat: PicardLattice, D: Union[TDivisor, PicClass]) -> bool:
    """Ample iff every wall degree is > 0."""
    return all(d > 0 for d in wall_degrees(fan, lat, D))


def anticanonical(fan: Fan) -> TDivisor:
    return TDivisor((1,) * fan.n_rays)


def canonical_divisor(fan: Fan) -> TDivisor:
    return TDivisor((-1,) * fan.n_rays)


def is_fano(fan: Fan) -> bool:
    """True iff -K = sum D_rho is ample."""
    lat = picard(fan)
    return is_ample(fan, lat, anticanonical(fan))


# =============================================================================
# POLYTOPES
# =============================================================================

@lru_cache(maxsize=None)
def vertex_systems(fan: Fan) -> Tuple[Tuple[Tuple[int, ...], Tuple[Tuple[Fraction, ...], ...]], ...]:
    """
    Rational inverses of every linearly independent n-subset of rays.

    Each entry is (ray indices, inverse of the matrix with those rays as
    rows); solving <m, v_i> = c_i for the subset is then m = inverse @ c.
    """
    systems = []
    for subset in itertools.combinations(range(fan.n_rays), fan.rank):
        inverse = rational_inverse([fan.rays[i] for i in subset])
        if inverse is not None:
            systems.append((subset, tuple(tuple(row) for row in inverse)))
    return tuple(systems)


def arrangement_vertices(fan: Fan, rhs: Sequence) -> List[Tuple[Fraction, ...]]:
    """Intersection points of n independent hyperplanes <m, v_rho> = rhs_rho."""
    points = []
    for subset, inverse in vertex_systems(fan):
        c = [rhs[i] for i in subset]
        points.append(tuple(sum(row[k] * c[k] for k in range(len(c))) for row in inverse))
    return points


def polytope_points(fan: Fan, D: TDivisor) -> List[Tuple[int, ...]]:
    """
    Lattice points m with <m, v_rho> >= -a_rho for every ray.

    The search box is the integer hull of the polytope's vertices; points are
    returned in lexicographic order.
    """
    if len(D.coeffs) != fan.n_rays:
        raise DimensionMismatchError("Divisor length differs from the ray count")
    if fan.rank == 0:
        return [()]
    bounds = [-a for a in D.coeffs]

    def inside(m) -> bool:
        return all(sum(x * y for x, y in zip(m, v)) >= b for v, b in zip(fan.rays, bounds))

    vertices = [p for p in arrangement_vertices(fan, bounds) if inside(p)]
    if not vertices:
        return []
    ranges = [
        range(math.floor(min(p[k] for p in vertices)), math.ceil(max(p[k] for p in vertices)) + 1)
        for k in range(fan.rank)
    ]
    return [m for m in itertools.product(*ranges) if inside(m)]
