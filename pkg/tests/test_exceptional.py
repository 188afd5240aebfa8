import pytest

from analyzer.catalog import beilinson, hirzebruch_collection, king, named_collection, p1p1 as p1p1_collection
from analyzer.exceptional import (
    Collection, apply_group_element, check_exceptional, check_stable, check_strong, decompose_blocks,
    exterior_product, fullness_rank_check, order_collection, twist, verify_collection,
)
from toric.divisor_theory import picard
from toric.errors import BlockDecompositionError, ToricError
from toric.symmetry import fan_automorphisms
from toric.utils import load_json


def _verify(entry, coll, group=True, strong=True):
    fan = entry.fan
    g = fan_automorphisms(fan) if group else None
    return verify_collection(fan, picard(fan), coll, group=g, strong=strong)


def test_beilinson_on_projective_plane(p2):
    report = _verify(p2, beilinson(p2))
    assert report.exceptional and report.strong and report.stable
    assert report.length_vs_k0 == (3, 3)
    assert [len(b) for b in report.blocks] == [1, 1, 1]
    assert report.passed
    assert report.failures == []


def test_reversed_beilinson_fails_with_witness(p2):
    coll = named_collection(p2, 'beilinson-reversed')
    report = check_exceptional(p2.fan, picard(p2.fan), coll)
    assert report.exceptional is False
    assert any(w.kind == 'backward' and w.degree == 0 and w.dim == 3 for w in report.failures)
    assert not report.passed


def test_p1p1_collection_blocks(p1p1):
    report = _verify(p1p1, p1p1_collection(p1p1))
    assert report.passed
    assert [len(b) for b in report.blocks] == [1, 2, 1]
    assert report.length_vs_k0 == (4, 4)


@pytest.mark.parametrize('name', ['f1', 'f2'])
def test_hirzebruch_collection(request, name):
    entry = request.getfixturevalue(name)
    report = _verify(entry, hirzebruch_collection(entry))
    assert report.passed
    assert report.blocks == [[0], [1], [2], [3]]


def test_king_collection_on_dp6(dp6):
    report = _verify(dp6, king(dp6))
    assert report.passed
    assert report.blocks == [[0], [1, 2, 3], [4, 5]]
    assert report.length_vs_k0 == (6, 6)


def test_king_collection_from_file(dp6, data_dir):
    lat = picard(dp6.fan)
    coll = Collection.from_json(lat, load_json(data_dir / 'collections' / 'dp6_king.json'))
    assert coll.items == king(dp6).items
    assert coll.declared_blocks() == [[0], [1, 2, 3], [4, 5]]


def test_exceptional_but_not_strong(p1p1, ray_class):
    lat = picard(p1p1.fan)
    E = ray_class(p1p1, (1, 0), -2) + ray_class(p1p1, (0, 1))
    coll = Collection((lat.zero(), E))

    assert check_exceptional(p1p1.fan, lat, coll).exceptional
    report = check_strong(p1p1.fan, lat, coll)
    assert report.exceptional and not report.strong
    assert report.failures[0].to_dict() == {'i': 0, 'j': 1, 'degree': 1, 'dim': 2, 'kind': 'forward'}


def test_non_stable_collection(p1p1, ray_class):
    lat = picard(p1p1.fan)
    coll = Collection((lat.zero(), ray_class(p1p1, (1, 0))))
    report = check_stable(fan_automorphisms(p1p1.fan), coll)
    assert report.stable is False
    assert report.notes


def test_declared_blocks_must_be_orthogonal(p2):
    coll = Collection(beilinson(p2).items, (2,))
    report = _verify(p2, coll, group=False)
    assert report.block_error is not None
    assert not report.passed


def test_non_orthogonal_orbit_is_a_block_error(p1p1, ray_class):
    # (1,-2) and (-2,1) are swapped by the group but Ext^1 between them is 8-dimensional
    lat = picard(p1p1.fan)
    a, b = ray_class(p1p1, (1, 0)), ray_class(p1p1, (0, 1))
    coll = Collection((a - b - b, b - a - a))
    with pytest.raises(BlockDecompositionError):
        decompose_blocks(p1p1.fan, lat, fan_automorphisms(p1p1.fan), coll)


def test_fullness_rank_check(p2):
    coll = Collection(beilinson(p2).items[:2])
    assert fullness_rank_check(p2.fan, coll) == (2, 3, False)
    report = _verify(p2, coll, group=False)
    assert report.full_rank is False
    assert not report.passed


def test_collection_validation(p2):
    items = beilinson(p2).items
    with pytest.raises(ToricError):
        Collection((items[0], items[0]))
    with pytest.raises(ToricError):
        Collection(items, (2, 1))
    with pytest.raises(ToricError):
        Collection(items, (4,))


def test_order_collection_sorts_by_ext_precedence(p2):
    lat = picard(p2.fan)
    items = beilinson(p2).items
    ordered = order_collection(p2.fan, lat, [items[2], items[0], items[1]])
    assert ordered.items == items


def test_order_collection_reports_cycle(p2):
    lat = picard(p2.fan)
    H = beilinson(p2).items[1]
    with pytest.raises(BlockDecompositionError):
        order_collection(p2.fan, lat, [lat.zero(), H + H + H])


def test_twist_invariance(dp6, ray_class):
    coll = king(dp6)
    L = ray_class(dp6, (1, 1), 5) + ray_class(dp6, (0, -1), -3)
    assert _verify(dp6, twist(coll, L), group=False).passed


def test_automorphism_invariance(dp6):
    group = fan_automorphisms(dp6.fan)
    coll = king(dp6)
    lat = picard(dp6.fan)
    for P in group.pic_matrices:
        moved = apply_group_element(coll, P)
        assert check_strong(dp6.fan, lat, moved).strong


def test_exterior_product_on_p2_x_p1(p1, p2):
    fan, coll = exterior_product(p2.fan, beilinson(p2), p1.fan, beilinson(p1))
    report = verify_collection(fan, picard(fan), coll, group=None, strong=True)
    assert report.passed
    assert report.length_vs_k0 == (6, 6)


def test_collection_json_round_trip(dp6):
    lat = picard(dp6.fan)
    coll = king(dp6)
    assert Collection.from_json(lat, coll.to_json(lat)) == coll


def test_malformed_collection_json(p2):
    with pytest.raises(ToricError):
        Collection.from_json(picard(p2.fan), {'items': []})
