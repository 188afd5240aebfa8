import random

import pytest

from analyzer.catalog import constructible_rows, resolve
from toric.cohomology import (
    CohomologyCalculator, calculator_for, ext_table, line_bundle_cohomology, reduced_cohomology,
    serre_dual,
)
from toric.divisor_theory import TDivisor, canonical_divisor, is_nef, picard, polytope_points
from toric.errors import DimensionMismatchError
from toric.symmetry import fan_automorphisms
from toric.utils import set_verbosity


def _h(entry, D):
    return line_bundle_cohomology(entry.fan, picard(entry.fan), D).to_list()


def test_reduced_cohomology_of_support_complexes(p2, p1p1):
    assert reduced_cohomology(p2.fan, []) == (1, 0, 0)
    assert reduced_cohomology(p2.fan, [0]) == (0, 0, 0)
    assert reduced_cohomology(p2.fan, [0, 1, 2]) == (0, 0, 1)

    fan = p1p1.fan
    opposite = [fan.ray_index((1, 0)), fan.ray_index((-1, 0))]
    assert reduced_cohomology(fan, opposite) == (0, 1, 0)


def test_reduced_cohomology_rejects_missing_rays(p2):
    with pytest.raises(DimensionMismatchError):
        reduced_cohomology(p2.fan, [7])


@pytest.mark.parametrize('k, expected', [
    (0, [1, 0, 0]),
    (1, [3, 0, 0]),
    (2, [6, 0, 0]),
    (-1, [0, 0, 0]),
    (-2, [0, 0, 0]),
    (-3, [0, 0, 1]),
    (-4, [0, 0, 3]),
])
def test_projective_plane_line_bundles(p2, k, expected):
    assert _h(p2, TDivisor.prime(3, 0).scale(k)) == expected


def test_projective_line(p1):
    assert _h(p1, TDivisor.of([-2, 0])) == [0, 1]
    assert _h(p1, TDivisor.of([0, -3])) == [0, 2]
    assert _h(p1, TDivisor.of([2, 1])) == [4, 0]


def test_kunneth_on_p1xp1(p1p1):
    fan = p1p1.fan
    a = TDivisor.prime(4, fan.ray_index((1, 0)))
    b = TDivisor.prime(4, fan.ray_index((0, 1)))
    assert _h(p1p1, a.scale(-2)) == [0, 1, 0]
    assert _h(p1p1, a.scale(-2) + b) == [0, 2, 0]
    assert _h(p1p1, a.scale(-2) + b.scale(-2)) == [0, 0, 1]
    assert _h(p1p1, a.scale(1) + b.scale(-1)) == [0, 0, 0]


def _p1_cohomology(a):
    return [max(a + 1, 0), max(-a - 1, 0)]


@pytest.mark.parametrize('a', range(-4, 5))
def test_projective_line_closed_form(p1, a):
    assert _h(p1, TDivisor.of([a, 0])) == _p1_cohomology(a)


@pytest.mark.parametrize('a', range(-4, 5))
@pytest.mark.parametrize('b', range(-4, 5))
def test_kunneth_closed_form_on_p1xp1(p1p1, a, b):
    fan = p1p1.fan
    A = TDivisor.prime(4, fan.ray_index((1, 0)))
    B = TDivisor.prime(4, fan.ray_index((0, 1)))
    (x0, x1), (y0, y1) = _p1_cohomology(a), _p1_cohomology(b)
    assert _h(p1p1, A.scale(a) + B.scale(b)) == [x0 * y0, x0 * y1 + x1 * y0, x1 * y1]


def test_cohomology_depends_only_on_class(dp6):
    fan = dp6.fan
    lat = picard(fan)
    D = TDivisor.of([1, -2, 0, 3, 1, -1])
    m = (2, -1)
    shifted = D + TDivisor(tuple(sum(x * y for x, y in zip(m, v)) for v in fan.rays))
    fresh = CohomologyCalculator(fan, lat)
    assert fresh.table(D) == fresh.table(shifted)
    assert fresh.table(D) == fresh.table(lat.class_of(D))


@pytest.mark.parametrize('name', ['p2', 'p1p1', 'f1', 'f2', 'dp6'])
def test_serre_duality_on_random_divisors(request, name):
    entry = request.getfixturevalue(name)
    fan = entry.fan
    lat = picard(fan)
    rng = random.Random(2024)
    for _ in range(100):
        D = TDivisor.of(rng.randint(-3, 3) for _ in range(fan.n_rays))
        h = _h(entry, D)
        dual = _h(entry, serre_dual(fan, lat, D))
        assert h == list(reversed(dual))


def test_serre_dual_is_canonical_minus_d(p2):
    lat = picard(p2.fan)
    D = TDivisor.of([1, 0, 2])
    assert serre_dual(p2.fan, lat, D) == canonical_divisor(p2.fan) - D


@pytest.mark.parametrize('name', ['p2', 'p1p1', 'f2', 'dp6'])
def test_demazure_vanishing_for_nef_divisors(request, name):
    entry = request.getfixturevalue(name)
    fan = entry.fan
    lat = picard(fan)
    rng = random.Random(7)
    checked = 0
    while checked < 10:
        D = TDivisor.of(rng.randint(0, 3) for _ in range(fan.n_rays))
        if not is_nef(fan, lat, D):
            continue
        h = _h(entry, D)
        assert h[0] == len(polytope_points(fan, D))
        assert all(x == 0 for x in h[1:])
        checked += 1


def test_ext_and_self_ext(p2):
    lat = picard(p2.fan)
    H = lat.class_of(TDivisor.prime(3, 0))
    assert ext_table(p2.fan, lat, H, H).is_point_like()
    assert ext_table(p2.fan, lat, H, lat.zero()).is_zero()
    assert ext_table(p2.fan, lat, lat.zero(), H).to_list() == [3, 0, 0]


def test_euler_characteristic(p2):
    calc = calculator_for(p2.fan)
    # chi(O(k)) = (k+1)(k+2)/2 on P^2
    for k in range(-5, 4):
        assert calc.euler(TDivisor.prime(3, 0).scale(k)) == (k + 1) * (k + 2) // 2


def test_debug_mode_samples_outside_the_box(dp6):
    fresh = CohomologyCalculator(dp6.fan, picard(dp6.fan))
    set_verbosity(verbose=True)
    try:
        table = fresh.table(TDivisor.of([-1, 0, -2, 0, 1, -1]))
    finally:
        set_verbosity()
    assert len(table.dims) == 3


def test_structure_sheaf_and_canonical_on_p3(p3):
    lat = picard(p3.fan)
    assert line_bundle_cohomology(p3.fan, lat, lat.zero()).to_list() == [1, 0, 0, 0]
    K = canonical_divisor(p3.fan)
    assert line_bundle_cohomology(p3.fan, lat, K).to_list() == [0, 0, 0, 1]


@pytest.mark.parametrize('name', ['p1p1', 'f1', 'dp6'])
def test_cohomology_is_invariant_under_fan_automorphisms(request, name):
    entry = request.getfixturevalue(name)
    fan = entry.fan
    group = fan_automorphisms(fan)
    rng = random.Random(11)
    for _ in range(20):
        D = TDivisor.of(rng.randint(-3, 3) for _ in range(fan.n_rays))
        h = _h(entry, D)
        for g in group.elements:
            assert _h(entry, g.permute(D)) == h


@pytest.mark.parametrize('name', [
    'P1', 'P2', 'P3', 'P1xP1', 'F1', 'F2', 'F3', 'dP6', 'dP7', 'dP8', 'P2xP1', 'V2', 'V4', 'A1', 'A2', 'A3',
    *(pytest.param(f'fano3-{i}', marks=pytest.mark.slow) for i in constructible_rows()),
])
def test_structure_sheaf_has_only_global_sections(name):
    fan = resolve(name).fan
    lat = picard(fan)
    assert line_bundle_cohomology(fan, lat, lat.zero()).to_list() == [1] + [0] * fan.rank
