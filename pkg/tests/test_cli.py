import json

from analyzer.cli import EXIT_CHECK_FAILED, EXIT_INPUT_ERROR, EXIT_OK, main


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_describe_json(capsys):
    assert main(['describe', 'P2', '--json']) == EXIT_OK
    report = _json(capsys)
    assert report['aut'] == 6
    assert report['k0'] == 3
    assert report['fano'] is True


def test_describe_text(capsys):
    assert main(['describe', 'dP6']) == EXIT_OK
    out = capsys.readouterr().out
    assert 'dP6' in out
    assert 'aut' in out


def test_unknown_target_is_an_input_error(capsys):
    assert main(['describe', 'nope']) == EXIT_INPUT_ERROR
    assert '❌ Error' in capsys.readouterr().err


def test_missing_subcommand():
    assert main([]) == EXIT_INPUT_ERROR


def test_check_reports_failure_exit_code(capsys):
    assert main(['check', 'P2', 'beilinson-reversed']) == EXIT_CHECK_FAILED
    assert '❌ FAIL' in capsys.readouterr().out


def test_check_king_with_full_group(capsys):
    code = main(['check', 'dP6', 'king', '--group', 'full', '--strong', '--json'])
    assert code == EXIT_OK
    report = _json(capsys)
    assert report['passed'] is True
    assert report['block_sizes'] == [1, 3, 2]
    assert report['group_order'] == 12


def test_check_collection_file(capsys, data_dir):
    path = data_dir / 'collections' / 'dp6_king.json'
    assert main(['check', 'dP6', str(path), '--strong']) == EXIT_OK
    assert '✅ PASS' in capsys.readouterr().out


def test_check_bundled_collection_by_stem(capsys):
    assert main(['check', 'P2', 'p2_beilinson', '--strong', '--json']) == EXIT_OK
    report = _json(capsys)
    assert report['passed'] is True
    assert report['length'] == 3


def test_check_with_group_file(capsys, tmp_path):
    group_file = tmp_path / 'swap.json'
    group_file.write_text(json.dumps([[[1, 0], [0, 1]], [[0, 1], [1, 0]]]))
    code = main(['check', 'P2', 'beilinson', '--group', str(group_file), '--json'])
    assert code == EXIT_OK
    assert _json(capsys)['group_order'] == 2


def test_check_symmetric_group_needs_vn(capsys):
    assert main(['check', 'P2', 'beilinson', '--group', 'symmetric']) == EXIT_INPUT_ERROR


def test_frobenius_sweep(capsys):
    assert main(['frobenius', 'P1', '--method', 'sweep', '--lmax', '3', '--json']) == EXIT_OK
    report = _json(capsys)
    assert report['count'] == 2
    assert report['per_level'] == {'1': 1, '2': 2, '3': 2}


def test_export_then_describe_file(capsys, tmp_path):
    out = tmp_path / 'f1.json'
    assert main(['export', 'F1', '--output', str(out)]) == EXIT_OK
    capsys.readouterr()
    assert main(['describe', '--fan', str(out), '--json']) == EXIT_OK
    report = _json(capsys)
    assert report['name'] == 'f1'
    assert report['rays'] == 4
    assert report['aut'] == 2


def test_overlapping_fan_file_is_rejected(capsys, data_dir):
    path = data_dir / 'fans' / 'bad_overlap.json'
    assert main(['describe', '--fan', str(path)]) == EXIT_INPUT_ERROR
    assert 'overlap' in capsys.readouterr().err


def test_table1_single_rows(capsys):
    assert main(['table1', '--rows', '1', '--json']) == EXIT_OK
    report = _json(capsys)
    assert report['rows'][0]['status'] == 'PASS'

    assert main(['table1', '--rows', '13']) == EXIT_OK
    assert 'SKIPPED' in capsys.readouterr().out


def test_table1_bad_rows_argument(capsys):
    assert main(['table1', '--rows', 'one']) == EXIT_INPUT_ERROR


def test_group_report(capsys):
    assert main(['group', 'P1xP1', '--json']) == EXIT_OK
    report = _json(capsys)
    assert report['order'] == 8
    assert report['abelian'] is False
