import json

import pytest
from openpyxl import load_workbook

from report_generator import VerificationReportGenerator
from suites import SuiteResult, run_suite
from umbral_core import VerifyReport


@pytest.fixture
def runs():
    failing = VerifyReport((0, 3))
    failing.add(2, "lhs", "rhs", "identity fails")
    return [
        ('expansion', run_suite('expansion', trunc=3, runs=2)),
        ('handmade', [SuiteResult("always fails", failing)]),
    ]


def test_summary_counts(runs):
    summary = VerificationReportGenerator(runs).summary()
    assert summary == {'total': 3, 'passed': 2, 'failed': 1, 'pass_rate': '66.7%'}


def test_empty_summary():
    assert VerificationReportGenerator([]).summary()['pass_rate'] == 'N/A'


def test_to_dict_keeps_suite_order(runs):
    data = VerificationReportGenerator(runs).to_dict()
    assert data['ok'] is False
    assert [s['suite'] for s in data['suites']] == ['expansion', 'handmade']
    assert data['suites'][1]['results'][0]['violations'][0]['degree'] == 2


def test_json_report(runs, tmp_path):
    path = tmp_path / 'report.json'
    VerificationReportGenerator(runs).save(str(path))
    assert json.loads(path.read_text(encoding='utf-8'))['summary']['failed'] == 1


def test_html_report(runs, tmp_path):
    path = tmp_path / 'report.html'
    VerificationReportGenerator(runs, title="Nightly").save(str(path))
    html = path.read_text(encoding='utf-8')
    assert 'Nightly' in html
    assert 'always fails' in html


def test_excel_report(runs, tmp_path):
    path = tmp_path / 'report.xlsx'
    VerificationReportGenerator(runs).save(str(path))
    wb = load_workbook(path)
    assert wb.sheetnames == ['Summary', 'Suites', 'Violations']
    assert wb['Suites'].max_row == 4
    assert wb['Violations'].cell(row=2, column=4).value == 'identity fails'


def test_unsupported_extension(runs, tmp_path):
    with pytest.raises(ValueError):
        VerificationReportGenerator(runs).save(str(tmp_path / 'report.pdf'))
