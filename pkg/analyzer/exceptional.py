"""
Exceptional collection checks for line bundles on toric varieties.

Every verdict comes back as a CheckReport. A false flag always carries
witnesses (i, j, degree, dimension) naming the Ext group that fails to
vanish, so reports can be audited by hand.
"""

import heapq
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from toric.cohomology import CohomologyCalculator, calculator_for
from toric.divisor_theory import PicClass, PicardLattice, TDivisor, picard
from toric.errors import BlockDecompositionError, DimensionMismatchError, ToricError
from toric.fan_geometry import Fan, product, product_ray_map
from toric.symmetry import FanAutGroup, Matrix, act, orbits
from toric.utils import logger


@dataclass(frozen=True)
class Collection:
    """Ordered line bundle classes with optional declared block ends."""
    items: Tuple[PicClass, ...]
    block_bounds: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if len(set(self.items)) != len(self.items):
            raise ToricError("Collection items are not distinct classes")
        if self.block_bounds is not None:
            bounds = list(self.block_bounds)
            if bounds != sorted(set(bounds)) or any(b < 1 or b > len(self.items) for b in bounds):
                raise ToricError(f"Block bounds {bounds} are not increasing indices in range")

    def __len__(self) -> int:
        return len(self.items)

    @classmethod
    def from_divisors(cls, lat: PicardLattice, divisors: Sequence[Sequence[int]],
                      block_bounds: Optional[Sequence[int]] = None) -> 'Collection':
        items = tuple(lat.class_of(TDivisor.of(d)) for d in divisors)
        return cls(items, tuple(block_bounds) if block_bounds is not None else None)

    @classmethod
    def from_json(cls, lat: PicardLattice, data: dict) -> 'Collection':
        """Load {"divisors": [[...]], "blocks": [...]?} in the fan's ray order."""
        try:
            divisors = data['divisors']
        except (KeyError, TypeError) as e:
            raise ToricError(f"Malformed collection JSON: {e}") from e
        return cls.from_divisors(lat, divisors, data.get('blocks'))

    def to_json(self, lat: PicardLattice) -> dict:
        data = {'divisors': [list(lat.lift(c).coeffs) for c in self.items]}
        if self.block_bounds is not None:
            data['blocks'] = list(self.block_bounds)
        return data

    def declared_blocks(self) -> Optional[List[List[int]]]:
        if self.block_bounds is None:
            return None
        blocks, start = [], 0
        for end in self.block_bounds:
            blocks.append(list(range(start, end)))
            start = end
        if start < len(self.items):
            blocks.append(list(range(start, len(self.items))))
        return blocks


@dataclass(frozen=True)
class Witness:
    """A nonvanishing Ext^degree(E_i, E_j) of the given dimension."""
    i: int
    j: int
    degree: int
    dim: int
    kind: str

    def to_dict(self) -> Dict:
        return {'i': self.i, 'j': self.j, 'degree': self.degree, 'dim': self.dim, 'kind': self.kind}


@dataclass
class CheckReport:
    """Verdicts for one collection."""
    exceptional: Optional[bool] = None
    strong: Optional[bool] = None
    stable: Optional[bool] = None
    blocks: Optional[List[List[int]]] = None
    block_error: Optional[str] = None
    length_vs_k0: Optional[Tuple[int, int]] = None
    failures: List[Witness] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def full_rank(self) -> Optional[bool]:
        if self.length_vs_k0 is None:
            return None
        return self.length_vs_k0[0] == self.length_vs_k0[1]

    @property
    def passed(self) -> bool:
        flags = (self.exceptional, self.strong, self.stable, self.full_rank)
        return all(f is not False for f in flags) and self.block_error is None

    def merge(self, other: 'CheckReport') -> 'CheckReport':
        """Combine two reports; fields set in `other` win."""
        for name in ('exceptional', 'strong', 'stable', 'blocks', 'block_error', 'length_vs_k0'):
            value = getattr(other, name)
            if value is not None:
                setattr(self, name, value)
        self.failures.extend(w for w in other.failures if w not in self.failures)
        self.notes.extend(other.notes)
        return self

    def to_dict(self) -> Dict:
        """Convert to dictionary for JSON serialization."""
        return {
            'passed': self.passed,
            'exceptional': self.exceptional,
            'strong': self.strong,
            'stable': self.stable,
            'blocks': self.blocks,
            'block_sizes': [len(b) for b in self.blocks] if self.blocks is not None else None,
            'block_error': self.block_error,
            'length': self.length_vs_k0[0] if self.length_vs_k0 else None,
            'k0': self.length_vs_k0[1] if self.length_vs_k0 else None,
            'failures': [w.to_dict() for w in self.failures],
            'notes': list(self.notes),
        }


def _calculator(fan: Fan, lat: PicardLattice) -> CohomologyCalculator:
    if lat.fan != fan:
        raise DimensionMismatchError("Picard lattice belongs to a different fan")
    return calculator_for(fan)


# =============================================================================
# VERDICTS
# =============================================================================

def check_exceptional(fan: Fan, lat: PicardLattice, coll: Collection) -> CheckReport:
    """
    Self-Ext must be (1, 0, ..., 0) and every backward Ext(E_i, E_j), i > j,
    must vanish in all degrees.
    """
    calc = _calculator(fan, lat)
    failures = []
    for i, E in enumerate(coll.items):
        table = calc.ext(E, E)
        if not table.is_point_like():
            for degree, dim in table.nonzero_degrees():
                if degree != 0 or dim != 1:
                    failures.append(Witness(i, i, degree, dim, 'self'))
    for i in range(len(coll.items)):
        for j in range(i):
            table = calc.ext(coll.items[i], coll.items[j])
            for degree, dim in table.nonzero_degrees():
                failures.append(Witness(i, j, degree, dim, 'backward'))
    return CheckReport(exceptional=not failures, failures=failures)


def check_strong(fan: Fan, lat: PicardLattice, coll: Collection) -> CheckReport:
    """Exceptional, and forward Ext(E_i, E_j), i < j, vanishes in positive degrees."""
    report = check_exceptional(fan, lat, coll)
    calc = _calculator(fan, lat)
    forward = []
    for i in range(len(coll.items)):
        for j in range(i + 1, len(coll.items)):
            table = calc.ext(coll.items[i], coll.items[j])
            for degree, dim in table.nonzero_degrees():
                if degree > 0:
                    forward.append(Witness(i, j, degree, dim, 'forward'))
    report.failures.extend(forward)
    report.strong = bool(report.exceptional) and not forward
    return report


def check_stable(group: FanAutGroup, coll: Collection) -> CheckReport:
    """Stable iff every Picard matrix of the group permutes the class set."""
    members = set(coll.items)
    notes = []
    for g, P in zip(group.elements, group.pic_matrices):
        for i, c in enumerate(coll.items):
            image = act(P, c)
            if image not in members:
                notes.append(
                    f"item {i} {list(c.coords)} maps to {list(image.coords)} "
                    f"under ray permutation {list(g.ray_perm)}"
                )
                break
        if notes:
            break
    return CheckReport(stable=not notes, notes=notes)


def _has_ext(calc: CohomologyCalculator, A: PicClass, B: PicClass) -> bool:
    return not calc.ext(A, B).is_zero()


def decompose_blocks(fan: Fan, lat: PicardLattice, group: FanAutGroup, coll: Collection) -> CheckReport:
    """
    Split a stable collection into orbit blocks and order them.

    Orbits must be totally orthogonal, and "A before B when some Ext(a, b)
    is nonzero" must be acyclic on orbits. Ties go to the orbit appearing
    first in the collection.

    Raises:
        NotStableError: if the collection is not stable
        BlockDecompositionError: orbit not orthogonal, or cyclic precedence
    """
    calc = _calculator(fan, lat)
    position = {c: i for i, c in enumerate(coll.items)}
    orbit_list = orbits(group, list(coll.items))

    for orbit in orbit_list:
        for a in orbit:
            for b in orbit:
                if a != b and _has_ext(calc, a, b):
                    raise BlockDecompositionError(
                        f"orbit of item {position[orbit[0]]} is not orthogonal: "
                        f"Ext(item {position[a]}, item {position[b]}) != 0"
                    )

    k = len(orbit_list)
    successors = {x: set() for x in range(k)}
    indegree = [0] * k
    for x in range(k):
        for y in range(k):
            if x != y and any(_has_ext(calc, a, b) for a in orbit_list[x] for b in orbit_list[y]):
                successors[x].add(y)
                indegree[y] += 1

    first = [min(position[c] for c in orbit) for orbit in orbit_list]
    ready = [(first[x], x) for x in range(k) if indegree[x] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        _, x = heapq.heappop(ready)
        order.append(x)
        for y in successors[x]:
            indegree[y] -= 1
            if indegree[y] == 0:
                heapq.heappush(ready, (first[y], y))
    if len(order) != k:
        raise BlockDecompositionError("orbit precedence is cyclic")

    blocks = [sorted(position[c] for c in orbit_list[x]) for x in order]
    return CheckReport(stable=True, blocks=blocks)


def fullness_rank_check(fan: Fan, coll: Collection) -> Tuple[int, int, bool]:
    """Length against the number of maximal cones (rank of K_0)."""
    length, k0 = len(coll.items), fan.n_max_cones
    return length, k0, length == k0


def verify_collection(fan: Fan, lat: PicardLattice, coll: Collection,
                      group: Optional[FanAutGroup] = None, strong: bool = True) -> CheckReport:
    """
    Run every requested check and assemble one report.

    Args:
        fan: Smooth complete fan
        lat: Its Picard lattice
        coll: The collection
        group: Symmetry group for stability and blocks, or None to skip
        strong: Also require forward higher Ext to vanish
    """
    report = check_strong(fan, lat, coll) if strong else check_exceptional(fan, lat, coll)
    length, k0, _ = fullness_rank_check(fan, coll)
    report.length_vs_k0 = (length, k0)

    declared = coll.declared_blocks()
    if declared is not None:
        calc = _calculator(fan, lat)
        for block in declared:
            for i in block:
                for j in block:
                    if i != j and _has_ext(calc, coll.items[i], coll.items[j]):
                        report.block_error = f"declared block {block} is not orthogonal at ({i}, {j})"
        if report.block_error is None:
            report.blocks = declared

    if group is not None:
        report.merge(check_stable(group, coll))
        if report.stable and report.exceptional:
            try:
                report.merge(decompose_blocks(fan, lat, group, coll))
            except BlockDecompositionError as e:
                report.block_error = str(e)

    logger.debug(f"Collection of length {length}: passed={report.passed}")
    return report


# =============================================================================
# CONSTRUCTIONS
# =============================================================================

def order_collection(fan: Fan, lat: PicardLattice, classes: Sequence[PicClass]) -> Collection:
    """
    Order a class set so that all backward Ext groups vanish.

    A must precede B whenever Ext(A, B) != 0. Among available classes the
    smallest in canonical order goes first.

    Raises:
        BlockDecompositionError: if the precedence relation has a cycle
    """
    calc = _calculator(fan, lat)
    items = sorted(set(classes))
    successors = {c: [] for c in items}
    indegree = {c: 0 for c in items}
    for a in items:
        for b in items:
            if a != b and _has_ext(calc, a, b):
                successors[a].append(b)
                indegree[b] += 1

    ready = [c for c in items if indegree[c] == 0]
    heapq.heapify(ready)
    ordered = []
    while ready:
        a = heapq.heappop(ready)
        ordered.append(a)
        for b in successors[a]:
            indegree[b] -= 1
            if indegree[b] == 0:
                heapq.heappush(ready, b)
    if len(ordered) != len(items):
        raise BlockDecompositionError(
            f"class set is not orderable: {len(items) - len(ordered)} classes lie on a cycle"
        )
    return Collection(tuple(ordered))


def twist(coll: Collection, L: PicClass) -> Collection:
    """Tensor every item with L."""
    return Collection(tuple(c + L for c in coll.items), coll.block_bounds)


def apply_group_element(coll: Collection, matrix: Matrix) -> Collection:
    """Apply one Picard matrix to every item, keeping the order."""
    return Collection(tuple(act(matrix, c) for c in coll.items), coll.block_bounds)


def exterior_product(fan_x: Fan, coll_x: Collection,
                     fan_y: Fan, coll_y: Collection) -> Tuple[Fan, Collection]:
    """
    Exterior product collection on X x Y, ordered lexicographically.

    Returns:
        (product fan, collection of A_i boxtimes B_j ordered by (i, j))
    """
    fan = product(fan_x, fan_y)
    lat = picard(fan)
    lat_x, lat_y = picard(fan_x), picard(fan_y)
    map_x = product_ray_map(fan, fan_x, 0)
    map_y = product_ray_map(fan, fan_y, fan_x.rank)

    def pull_back(D: TDivisor, ray_map: List[int]) -> TDivisor:
        coeffs = [0] * fan.n_rays
        for i, a in enumerate(D.coeffs):
            coeffs[ray_map[i]] = a
        return TDivisor(tuple(coeffs))

    items = []
    for a in coll_x.items:
        Da = pull_back(lat_x.lift(a), map_x)
        for b in coll_y.items:
            items.append(lat.class_of(Da + pull_back(lat_y.lift(b), map_y)))
    return fan, Collection(tuple(items))
