import pytest

from analyzer.catalog import FANO3_DEVIATIONS, FANO3_EXPECTED, fano3, reconciled_expected
from analyzer.invariant_scorer import (
    STATUS_DEVIATION, STATUS_FAIL, STATUS_PASS, STATUS_SKIPPED, InvariantScorer, render_table,
)


@pytest.fixture
def patched_row1(monkeypatch):
    """Row 1 with aut expected as 25; the cached entry is built before patching."""
    fano3(1)
    monkeypatch.setitem(FANO3_EXPECTED, 1, (4, 4, 25, 1, 1, 4, 4))
    return monkeypatch


def test_projective_space_row_passes():
    row = InvariantScorer().score_row(1)
    assert row['status'] == STATUS_PASS
    assert row['mismatches'] == [] and row['deviations'] == []


def test_recorded_deviation_is_reported_with_its_reason(patched_row1):
    patched_row1.setitem(FANO3_DEVIATIONS, 1, {'aut': (24, 'recorded for the test')})
    report = InvariantScorer().score_table([1])
    row = report['rows'][0]
    assert row['status'] == STATUS_DEVIATION
    assert row['deviations'] == [
        {'column': 'aut', 'computed': 24, 'expected': 25, 'reason': 'recorded for the test'}
    ]
    assert report['summary'] == {'passed': 0, 'failed': 0, 'skipped': 0, 'deviations': 1}
    assert report['all_passed']
    text = render_table(report)
    assert '24*' in text
    assert 'recorded for the test' in text


def test_deviation_with_a_different_value_still_fails(patched_row1):
    patched_row1.setitem(FANO3_DEVIATIONS, 1, {'aut': (12, 'stale')})
    report = InvariantScorer().score_table([1])
    assert report['rows'][0]['status'] == STATUS_FAIL
    assert report['rows'][0]['mismatches'] == ['aut']
    assert not report['all_passed']
    assert '24!=25' in render_table(report)


def test_optional_rows_are_skipped():
    row = InvariantScorer().score_row(13)
    assert row['status'] == STATUS_SKIPPED
    assert row['deviations'] == []


@pytest.mark.parametrize('index', [1, 5, 7])
def test_reconciled_expected_substitutes_recorded_values(index):
    expected = list(FANO3_EXPECTED[index])
    if index == 7:
        expected[2] = 2
    assert reconciled_expected(index) == tuple(expected)
