import pytest

from analyzer.catalog import (
    COLLECTION_NAMES, FANO3_EXPECTED, OPTIONAL_ROWS, constructible_rows, default_collection, fano3,
    named_collection, resolve, surface, v_fano, vn_class, vn_collection, vn_cone_count,
    vn_coordinates, vn_involution_matrix, vn_labels, vn_picard_basis, vn_ray_indices, weyl_a,
)
from analyzer.exceptional import verify_collection
from toric.divisor_theory import TDivisor, is_fano, picard
from toric.errors import NotConstructibleError, UnknownTargetError
from toric.fan_geometry import is_complete, is_isomorphic, is_smooth
from toric.symmetry import FanAutGroup, act, automorphism_from_matrix, fan_automorphisms


@pytest.mark.parametrize('name, rank, rays, cones', [
    ('P1', 1, 2, 2),
    ('P3', 3, 4, 4),
    ('F(2)', 2, 4, 4),
    ('dP6', 2, 6, 6),
    ('dP7', 2, 5, 5),
    ('dP8', 2, 4, 4),
    ('P2xP1', 3, 5, 6),
    ('P1xP1xP1', 3, 6, 8),
    ('V2', 2, 6, 6),
    ('A3', 3, 14, 24),
])
def test_resolve_shapes(name, rank, rays, cones):
    fan = resolve(name).fan
    assert (fan.rank, fan.n_rays, fan.n_max_cones) == (rank, rays, cones)


def test_f_names_are_aliases():
    assert resolve('F(2)').fan == resolve('F2').fan


@pytest.mark.parametrize('name', ['nope', 'V3', 'P0', 'fano3-19', 'A0', 'dP9'])
def test_unknown_names(name):
    with pytest.raises(UnknownTargetError):
        resolve(name)


@pytest.mark.parametrize('index', OPTIONAL_ROWS)
def test_optional_rows_are_not_constructible(index):
    with pytest.raises(NotConstructibleError):
        fano3(index)


def test_constructible_rows():
    assert constructible_rows() == [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 15, 17]
    assert len(FANO3_EXPECTED) == 18


def test_del_pezzo_surfaces_are_fano():
    for name in ('dP6', 'dP7', 'dP8'):
        fan = surface(name).fan
        assert is_smooth(fan) and is_complete(fan) and is_fano(fan)


def test_fano3_entries_carry_expected_rows():
    entry = fano3(2)
    assert entry.expected == (5, 6, 6, 2, 2, 7, 6)
    assert entry.name == 'fano3-2'
    assert fano3(1).kind == 'projective'
    assert fano3(8).kind == 'product'
    assert [f.name for f in fano3(8).factors] == ['P1', 'P1', 'P1']


# =============================================================================
# V_n
# =============================================================================

def test_vn_cone_count():
    assert vn_cone_count(2) == 6
    assert vn_cone_count(4) == 30
    assert vn_cone_count(6) == 140


def test_v2_is_dp6(dp6, v2):
    assert is_isomorphic(v2.fan, dp6.fan) is not None


def test_v4_fan():
    fan = v_fano(4).fan
    assert (fan.n_rays, fan.n_max_cones) == (10, 30)
    assert is_smooth(fan) and is_complete(fan)
    assert is_fano(fan)


def test_vn_labels():
    assert len(vn_labels(2)) == 6
    labels = vn_labels(4)
    assert len(labels) == 30
    sizes = [len(J) for _, J in labels]
    assert sizes == sorted(sizes, reverse=True)


def test_vn_collection_sizes(v2):
    coll = vn_collection(v2)
    assert len(coll) == 6
    assert len(vn_collection(v_fano(4))) == 30


def test_v2_collection_is_stable_under_the_full_group(v2):
    fan = v2.fan
    group = fan_automorphisms(fan)
    assert group.order == 12
    report = verify_collection(fan, picard(fan), vn_collection(v2), group=group, strong=True)
    assert report.passed
    assert report.exceptional and report.strong and report.stable
    assert report.length_vs_k0 == (6, 6)
    assert [len(b) for b in report.blocks] == [2, 3, 1]

    # Blocks follow decreasing |J|, each holding one {c, |J| - c} orbit
    labels = vn_labels(2)
    keys = [{(len(labels[i][1]), min(labels[i][0], len(labels[i][1]) - labels[i][0])) for i in block}
            for block in report.blocks]
    assert keys == [{(3, 1)}, {(2, 1)}, {(0, 0)}]


def test_vn_picard_basis_spans(v2):
    lat = picard(v2.fan)
    basis = vn_picard_basis(v2)
    classes = [lat.class_of(D) for D in basis]
    assert len(set(classes)) == 4
    # ebar_i = H - (E_1 + E_2 + E_3) + E_i
    _, ebar = vn_ray_indices(v2.fan, 2)
    for i, idx in enumerate(ebar):
        coords = [1] + [-1 + int(j == i) for j in range(3)]
        expected = vn_class(lat, basis, coords)
        assert lat.class_of(TDivisor.prime(6, idx)) == expected


@pytest.mark.parametrize('n', [2, 4])
def test_involution_matrix_swaps_labels(n):
    M = vn_involution_matrix(n)
    for c, J in vn_labels(n):
        x = vn_coordinates(n, c, J)
        image = [sum(M[r][k] * x[k] for k in range(n + 2)) for r in range(n + 2)]
        assert image == vn_coordinates(n, len(J) - c, J)


def test_involution_matrix_is_the_central_symmetry():
    entry = v_fano(4)
    fan = entry.fan
    lat = picard(fan)
    basis = vn_picard_basis(entry)
    identity = automorphism_from_matrix(fan, [[int(i == j) for j in range(4)] for i in range(4)])
    minus = automorphism_from_matrix(fan, [[-int(i == j) for j in range(4)] for i in range(4)])
    group = FanAutGroup.from_elements(fan, [identity, minus])
    P = group.pic_matrices[[g.is_identity() for g in group.elements].index(False)]
    for c, J in vn_labels(4):
        cls = vn_class(lat, basis, vn_coordinates(4, c, J))
        assert act(P, cls) == vn_class(lat, basis, vn_coordinates(4, len(J) - c, J))


# =============================================================================
# Weyl fans
# =============================================================================

@pytest.mark.parametrize('n, cones', [(1, 2), (2, 6), (3, 24)])
def test_weyl_fan_is_smooth_and_complete(n, cones):
    fan = weyl_a(n).fan
    assert fan.n_max_cones == cones
    assert fan.n_rays == 2 ** (n + 1) - 2
    assert is_smooth(fan) and is_complete(fan)


# =============================================================================
# Named collections
# =============================================================================

def test_named_collection_errors(p2, dp6):
    with pytest.raises(UnknownTargetError):
        named_collection(p2, 'nope')
    with pytest.raises(UnknownTargetError):
        named_collection(p2, 'vn')
    with pytest.raises(UnknownTargetError):
        named_collection(dp6, 'beilinson')
    with pytest.raises(UnknownTargetError):
        named_collection(p2, 'king')
    with pytest.raises(UnknownTargetError):
        named_collection(p2, 'exterior')
    assert 'bondal-uehara' in COLLECTION_NAMES


def test_default_collections(p2, f1, dp6):
    assert len(default_collection(p2)) == 3
    assert len(default_collection(f1)) == 4
    assert len(default_collection(dp6)) == 6
    assert len(default_collection(resolve('P2xP1'))) == 6
    assert len(named_collection(resolve('dP6xP1'), 'exterior')) == 12


def test_bondal_uehara_on_dp6(dp6):
    coll = named_collection(dp6, 'bondal-uehara')
    assert len(coll) == 6
