from fractions import Fraction

import pytest

import suites
from analysis import shifted_comultiplication
from families import family_P, make_spec
from suites import FAMILY_SUITES, RANDOM_TRUNCATION, SUITES, SuiteResult, expected_shift, run_suite
from umbral_core import PolySeq, VerifyReport, basic_from_q, build_F

N = 5


@pytest.mark.parametrize("suite", FAMILY_SUITES)
@pytest.mark.parametrize("spec", [
    make_spec('hermite', N, nu=Fraction(3, 2)),
    make_spec('bernoulli2', N),
    make_spec('laguerre', N, alpha=Fraction(-1, 2)),
], ids=lambda spec: getattr(spec, 'name', spec))
def test_family_suites_pass(suite, spec):
    results = run_suite(suite, spec=spec, trunc=N)
    assert results
    assert all(r.ok for r in results), [r.to_json() for r in results if not r.ok]


@pytest.mark.parametrize("name", ['legendre_derived', 'hermite_derived'])
@pytest.mark.parametrize("suite", ['convolution', 'sheffer', 'cauchy', 'generator'])
def test_derived_families_pass(suite, name):
    assert all(r.ok for r in run_suite(suite, spec=make_spec(name, N), trunc=N))


def test_generator_details_report_whether_it_is_d():
    [row] = run_suite('generator', spec=make_spec('bernoulli2', N))
    assert row.details['generator_is_D'] is True
    [row] = run_suite('generator', spec=make_spec('legendre_derived', N))
    assert row.details['generator_is_D'] is False


def test_generator_row_fails_when_q_is_d_but_the_generator_is_not(monkeypatch):
    def doubled_basic(Q):
        basic = basic_from_q(Q)
        return PolySeq([p if n == 0 else p.scale(2) for n, p in enumerate(basic)])

    monkeypatch.setattr(suites, 'basic_from_q', doubled_basic)
    [row] = run_suite('generator', spec=make_spec('powers', N))
    assert not row.ok
    assert row.details['generator_is_D'] is False


def test_expected_shift_reads_c_off_the_sheffer_operator():
    assert expected_shift(shifted_comultiplication(Fraction(-2, 3), N)) == Fraction(-2, 3)
    assert expected_shift(build_F(family_P(make_spec('powers', N)))) == 0
    assert expected_shift(build_F(family_P(make_spec('hermite', N, nu=1)))) is None


def test_powers_are_detected_as_the_shift():
    results = run_suite('coalgebra', spec=make_spec('powers', N))
    detection = next(r for r in results if r.label == 'powers: bialgebra detection')
    assert detection.ok and detection.details['c'] == '0'


def test_bialgebra_detection_row_can_fail(monkeypatch):
    monkeypatch.setattr(suites, 'bialgebra_detect', lambda F: None)
    results = run_suite('coalgebra', spec=make_spec('powers', N))
    detection = next(r for r in results if r.label == 'powers: bialgebra detection')
    assert not detection.ok


def test_coalgebra_at_degree_zero_has_no_false_violation():
    results = run_suite('coalgebra', spec=make_spec('powers', 0), c=Fraction(1))
    assert all(r.ok for r in results)
    assert not any('bialgebra detection' in r.label for r in results)


def test_coalgebra_reports_hermite_as_non_multiplicative():
    results = run_suite('coalgebra', spec=make_spec('hermite', N, nu=1), c=Fraction(1))
    detection = next(r for r in results if r.label == 'hermite: bialgebra detection')
    assert detection.details['c'] is None
    counit = next(r for r in results if r.label == 'hermite: counit')
    assert counit.details['counit'][:3] == ['1', '0', '1']
    assert all(r.ok for r in results)


def test_sym_suite_on_elementary_functions():
    results = run_suite('sym', trunc=4, sequence='e', scale=Fraction(3))
    assert all(r.ok for r in results)
    sheffer = results[-1]
    assert sheffer.details['c'] == '3'


def test_sym_suite_flags_conjugate_monomials():
    results = run_suite('sym', trunc=4, sequence='m-conjugate')
    failed = [r for r in results if not r.ok]
    assert [r.label for r in failed] == ['(m-conjugate): full divided powers']
    assert results[-1].details['shift_invariant'] is False


def test_expansion_suite():
    assert all(r.ok for r in run_suite('expansion', trunc=N, seed=3, runs=4))


def test_random_suite():
    [row] = run_suite('random', trunc=4, seed=10, runs=6, workers=2)
    assert row.ok
    assert row.details['first_seed'] == 10

def test_random_suite_defaults_to_the_pipeline_degree():
    [row] = run_suite('random', runs=2)
    assert row.report.checked_degrees == (0, RANDOM_TRUNCATION)



def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite('nonsense', trunc=N)
    assert 'nonsense' not in SUITES


def test_suite_result_json():
    report = VerifyReport((0, 2))
    report.add(1, None, None, "broken")
    data = SuiteResult("label", report, {"k": 1}).to_json()
    assert data == {"label": "label", "ok": False, "checked_degrees": [0, 2],
                    "violations": [{"degree": 1, "lhs": None, "rhs": None, "note": "broken"}],
                    "details": {"k": 1}}
