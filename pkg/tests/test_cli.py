import json

import pytest
import yaml

import umbral_cli
from exactalg import Poly1
from suites import RANDOM_TRUNCATION
from umbral_cli import EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, dumps, main, xd_form
from umbral_errors import InternalConsistencyError


def run_json(capsys, *argv):
    code = main([*argv, '--format', 'json'])
    return code, json.loads(capsys.readouterr().out)


# -- family ---------------------------------------------------------------------

def test_family_bernoulli2_json(capsys):
    code, payload = run_json(capsys, 'family', 'bernoulli2', '--degree', '2')
    assert code == EXIT_OK
    assert payload['polys'] == [["1"], ["1/2", "1"], ["-1/12", "0", "1/2"]]
    assert payload['Q'] == [["0"], ["1"], ["1/2"]]
    assert payload['P'] == [["1"], ["1/2"], ["1/6"]]


def test_family_legendre_derived_has_no_p(capsys):
    code, payload = run_json(capsys, 'family', 'legendre_derived', '-n', '4')
    assert code == EXIT_OK
    assert payload['Q'] == [["0"], ["1"], ["0", "1"]]
    assert payload['P'] is None


def test_family_from_preset(capsys):
    code, payload = run_json(capsys, 'family', '--preset', 'hermite_unit', '-n', '2')
    assert code == EXIT_OK
    assert payload['family'] == {"name": "hermite", "trunc": 2, "params": {"nu": "1"}}
    assert payload['polys'][2] == ["-1/2", "0", "1/2"]


def test_family_text_output(capsys):
    assert main(['family', 'hermite', '--nu', '1', '-n', '2', '--format', 'text']) == EXIT_OK
    out = capsys.readouterr().out
    assert 'p_2(x) = -1/2 + 1/2*x^2' in out
    assert 'Q = (1) D' in out


@pytest.mark.parametrize("argv", [
    ['family', 'hermite', '--nu', '0.5'],
    ['family', 'hermite'],
    ['family', '--preset', 'no_such_preset'],
    ['family'],
])
def test_family_usage_errors(argv):
    assert main(argv) == EXIT_USAGE


def test_unknown_family_is_rejected_by_the_parser():
    with pytest.raises(SystemExit) as info:
        main(['family', 'chebyshev'])
    assert info.value.code == EXIT_USAGE


def test_negative_degree():
    with pytest.raises(SystemExit) as info:
        main(['family', 'powers', '-n', '-1'])
    assert info.value.code == EXIT_USAGE


# -- construct --------------------------------------------------------------------

def test_construct_yaml(tmp_path, capsys):
    doc = tmp_path / 'seq.yaml'
    doc.write_text(yaml.safe_dump({"polys": [["1"], ["0", "1"], ["0", "0", "1/2"]]}))
    code, payload = run_json(capsys, 'construct', str(doc))
    assert code == EXIT_OK
    assert payload['Q'] == [["0"], ["1"]]
    assert payload['report']['ok'] is True
    assert payload['basic']['polys'][2] == ["0", "0", "1/2"]


def test_construct_truncates_to_degree(tmp_path, capsys):
    doc = tmp_path / 'seq.json'
    doc.write_text(json.dumps({"polys": [["1"], ["1", "1"], ["0", "1", "1"], ["2", "0", "0", "3"]]}))
    code, payload = run_json(capsys, 'construct', str(doc), '-n', '2')
    assert code == EXIT_OK
    assert payload['basic']['trunc'] == 2


def test_construct_names_the_bad_index(tmp_path, capsys):
    doc = tmp_path / 'seq.json'
    doc.write_text(json.dumps({"polys": [["1"], ["0", "1"], ["0", "1"]]}))
    assert main(['construct', str(doc)]) == EXIT_VIOLATION
    assert 'index 2' in capsys.readouterr().err


@pytest.mark.parametrize("content", [
    '{"polys": [["1"], ["0", "0.5"]]}',
    '{"polys": [["1"], ',
    '{"other": []}',
    '{"polys": [1, 2]}',
])
def test_construct_bad_documents(tmp_path, content):
    doc = tmp_path / 'seq.json'
    doc.write_text(content)
    assert main(['construct', str(doc)]) == EXIT_USAGE


def test_construct_missing_file(tmp_path):
    assert main(['construct', str(tmp_path / 'missing.json')]) == EXIT_USAGE

def test_construct_directory_is_a_usage_error(tmp_path, capsys):
    assert main(['construct', str(tmp_path)]) == EXIT_USAGE
    assert 'Traceback' not in capsys.readouterr().err



# -- verify -----------------------------------------------------------------------

def test_verify_coalgebra_hermite(capsys):
    code, payload = run_json(capsys, 'verify', 'coalgebra', '--family', 'hermite',
                             '--nu', '3/2', '-n', '6')
    assert code == EXIT_OK
    assert payload['ok'] is True


def test_verify_sym_conjugate_monomials_fails(capsys):
    code, payload = run_json(capsys, 'verify', 'sym', '--sequence', 'm-conjugate', '-n', '4')
    assert code == EXIT_VIOLATION
    assert payload['summary']['failed'] == 1


def test_verify_cauchy_legendre(capsys):
    assert main(['verify', 'cauchy', '--family', 'legendre_derived', '-n', '6']) == EXIT_OK
    assert '✅' in capsys.readouterr().out


def test_verify_all_family_suites(capsys):
    code, payload = run_json(capsys, 'verify', 'all', '--family', 'laguerre', '--alpha=-1/2', '-n', '4')
    assert code == EXIT_OK
    assert [s['suite'] for s in payload['suites']] == [
        'convolution', 'sheffer', 'cauchy', 'generator', 'coalgebra']


def test_verify_writes_report(tmp_path, capsys):
    out = tmp_path / 'report.xlsx'
    code = main(['verify', 'random', '-n', '4', '--runs', '3', '-o', str(out)])
    assert code == EXIT_OK
    assert out.exists()
    assert 'Report saved' in capsys.readouterr().out


def test_verify_family_suite_without_family():
    assert main(['verify', 'convolution', '-n', '4']) == EXIT_USAGE


def test_verify_bad_shift_constant():
    assert main(['verify', 'coalgebra', '--family', 'powers', '--c', '1.5']) == EXIT_USAGE


def test_xd_form_drops_trailing_zeros():
    assert xd_form([Poly1(), Poly1.constant(1), Poly1(), Poly1()]) == [["0"], ["1"]]
    assert xd_form([Poly1()]) == []


def test_random_suite_defaults_to_pipeline_degree(capsys):
    code, payload = run_json(capsys, 'verify', 'random', '--runs', '2')
    assert code == EXIT_OK
    [row] = payload['suites'][0]['results']
    assert row['checked_degrees'] == [0, RANDOM_TRUNCATION]


def test_explicit_degree_overrides_random_default(capsys):
    code, payload = run_json(capsys, 'verify', 'random', '--runs', '2', '-n', '3')
    assert code == EXIT_OK
    assert payload['suites'][0]['results'][0]['checked_degrees'] == [0, 3]


def test_unexpected_engine_error_is_a_violation(monkeypatch, capsys):
    def broken(*args, **kwargs):
        raise InternalConsistencyError("P and Q fail to commute at x^3")

    monkeypatch.setattr(umbral_cli, 'run_suite', broken)
    assert main(['verify', 'cauchy', '--family', 'powers', '-n', '3']) == EXIT_VIOLATION
    err = capsys.readouterr().err
    assert 'InternalConsistencyError' in err
    assert 'Traceback' not in err


@pytest.mark.parametrize("argv", [
    ['family', 'hermite', '--nu', '3/2', '-n', '4'],
    ['verify', 'coalgebra', '--family', 'bernoulli2', '-n', '3'],
])
def test_json_output_is_byte_stable(capsys, argv):
    main([*argv, '--format', 'json'])
    first = capsys.readouterr().out
    main([*argv, '--format', 'json'])
    second = capsys.readouterr().out
    assert first == second
    assert dumps(json.loads(first)) + "\n" == first
