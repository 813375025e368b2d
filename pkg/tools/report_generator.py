#!/usr/bin/env python3
"""
Verification Report Generator
Renders suite results as canonical JSON, an HTML dashboard or an Excel workbook.
"""

import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

from jinja2 import Template
from openpyxl import Workbook
from openpyxl.styles import Alignment, Font, PatternFill

from suites import SuiteResult

logger = logging.getLogger(__name__)

SuiteRun = Tuple[str, Sequence[SuiteResult]]


class VerificationReportGenerator:
    """Collects suite runs and writes them out in one of three formats"""

    HTML_TEMPLATE = '''<!DOCTYPE html>
<html lang="en">
<head>
    <meta charset="UTF-8">
    <title>Umbral Verification Report - {{ title }}</title>
    <style>
        body { font-family: -apple-system, BlinkMacSystemFont, 'Segoe UI', Roboto, sans-serif; margin: 0; padding: 20px; background: #f5f5f5; }
        .header { background: linear-gradient(135deg, #1a1a2e 0%, #16213e 100%); color: white; padding: 24px; border-radius: 8px; }
        .header .subtitle { opacity: 0.8; font-size: 0.9rem; }
        .stats { display: grid; grid-template-columns: repeat(4, 1fr); gap: 16px; margin: 20px 0; }
        .stat { background: white; padding: 16px; border-radius: 8px; text-align: center; box-shadow: 0 1px 3px rgba(0,0,0,0.1); }
        .stat .value { font-size: 2rem; font-weight: bold; }
        .stat.pass .value { color: #10b981; }
        .stat.fail .value { color: #ef4444; }
        table { width: 100%; border-collapse: collapse; background: white; border-radius: 8px; overflow: hidden; }
        th { background: #1a1a2e; color: white; padding: 10px; text-align: left; }
        td { padding: 8px 10px; border-bottom: 1px solid #eee; vertical-align: top; }
        .status.pass { color: #10b981; font-weight: bold; }
        .status.fail { color: #ef4444; font-weight: bold; }
        details pre { white-space: pre-wrap; font-size: 0.8rem; background: #fafafa; padding: 8px; }
    </style>
</head>
<body>
    <div class="header">
        <h1>{{ title }}</h1>
        <div class="subtitle">{{ subtitle }}</div>
    </div>
    <div class="stats">
        <div class="stat"><div class="value">{{ stats.total }}</div>Checks</div>
        <div class="stat pass"><div class="value">{{ stats.passed }}</div>Passed</div>
        <div class="stat fail"><div class="value">{{ stats.failed }}</div>Failed</div>
        <div class="stat"><div class="value">{{ stats.pass_rate }}</div>Pass rate</div>
    </div>
    <table>
        <tr><th>#</th><th>Suite</th><th>Check</th><th>Degrees</th><th>Status</th><th>Violations</th></tr>
        {% for row in rows %}
        <tr>
            <td>{{ loop.index }}</td>
            <td>{{ row.suite }}</td>
            <td>{{ row.label }}</td>
            <td>{{ row.checked_degrees[0] }}..{{ row.checked_degrees[1] }}</td>
            <td class="status {{ 'pass' if row.ok else 'fail' }}">{{ '✅ PASS' if row.ok else '❌ FAIL' }}</td>
            <td>
                {% if row.violations %}
                <details>
                    <summary>{{ row.violations|length }} violation(s)</summary>
                    {% for v in row.violations %}
                    <pre>degree {{ v.degree }}: {{ v.note }}
lhs = {{ v.lhs }}
rhs = {{ v.rhs }}</pre>
                    {% endfor %}
                </details>
                {% elif row.details %}
                <details><summary>details</summary><pre>{{ row.details }}</pre></details>
                {% endif %}
            </td>
        </tr>
        {% endfor %}
    </table>
</body>
</html>
'''

    def __init__(self, runs: Sequence[SuiteRun], title: str = "Umbral Toolkit"):
        self.runs = list(runs)
        self.title = title

    # -- data ------------------------------------------------------------------

    def rows(self) -> List[Dict]:
        out = []
        for suite, results in self.runs:
            for result in results:
                row = result.to_json()
                row['suite'] = suite
                out.append(row)
        return out

    def summary(self) -> Dict:
        rows = self.rows()
        passed = sum(1 for r in rows if r['ok'])
        total = len(rows)
        return {
            'total': total,
            'passed': passed,
            'failed': total - passed,
            'pass_rate': f"{(passed / total * 100):.1f}%" if total else "N/A",
        }

    def to_dict(self) -> Dict:
        return {
            'ok': all(r['ok'] for r in self.rows()),
            'summary': self.summary(),
            'suites': [{'suite': suite, 'results': [r.to_json() for r in results]}
                       for suite, results in self.runs],
        }

    # -- renderers -------------------------------------------------------------

    def generate_json_report(self, output_path: str):
        with open(output_path, 'w', encoding='utf-8') as f:
            json.dump(self.to_dict(), f, indent=2, sort_keys=False)

    def generate_html_report(self, output_path: str):
        """Generate HTML dashboard report"""
        subtitle = f"{len(self.runs)} suite(s) • Generated {datetime.now().strftime('%Y-%m-%d %H:%M')}"
        html = Template(self.HTML_TEMPLATE).render(
            title=self.title,
            subtitle=subtitle,
            stats=self.summary(),
            rows=self.rows(),
        )
        with open(output_path, 'w', encoding='utf-8') as f:
            f.write(html)

    def generate_excel_report(self, output_path: str):
        """Generate Excel report with Summary, Suites and Violations sheets"""
        wb = Workbook()
        header_fill = PatternFill(start_color="1a1a2e", end_color="1a1a2e", fill_type="solid")
        header_font = Font(color="FFFFFF", bold=True)
        pass_fill = PatternFill(start_color="10b981", end_color="10b981", fill_type="solid")
        fail_fill = PatternFill(start_color="ef4444", end_color="ef4444", fill_type="solid")

        stats = self.summary()
        ws_summary = wb.active
        ws_summary.title = "Summary"
        summary_data = [
            [f"{self.title} Verification Report", ""],
            ["Generated", datetime.now().strftime('%Y-%m-%d %H:%M:%S')],
            ["Suites", ", ".join(suite for suite, _ in self.runs)],
            ["", ""],
            ["SUMMARY", ""],
            ["Total Checks", stats['total']],
            ["Passed ✅", stats['passed']],
            ["Failed ❌", stats['failed']],
            ["Pass Rate", stats['pass_rate']],
        ]
        for row_idx, row_data in enumerate(summary_data, 1):
            for col_idx, value in enumerate(row_data, 1):
                cell = ws_summary.cell(row=row_idx, column=col_idx, value=value)
                if row_idx in (1, 5):
                    cell.font = Font(bold=True, size=14)
        ws_summary.column_dimensions['A'].width = 20
        ws_summary.column_dimensions['B'].width = 40

        ws_suites = wb.create_sheet("Suites")
        headers = ["#", "Suite", "Check", "Degrees", "Status", "Violations"]
        for col_idx, header in enumerate(headers, 1):
            cell = ws_suites.cell(row=1, column=col_idx, value=header)
            cell.fill = header_fill
            cell.font = header_font
        rows = self.rows()
        for row_idx, row in enumerate(rows, 2):
            lo, hi = row['checked_degrees']
            ws_suites.cell(row=row_idx, column=1, value=row_idx - 1)
            ws_suites.cell(row=row_idx, column=2, value=row['suite'])
            ws_suites.cell(row=row_idx, column=3, value=row['label'])
            ws_suites.cell(row=row_idx, column=4, value=f"{lo}..{hi}")
            status = ws_suites.cell(row=row_idx, column=5, value="✅ PASS" if row['ok'] else "❌ FAIL")
            status.fill = pass_fill if row['ok'] else fail_fill
            status.font = Font(color="FFFFFF", bold=True)
            ws_suites.cell(row=row_idx, column=6, value=len(row['violations']))
        for col, width in zip("ABCDEF", (6, 14, 50, 10, 12, 12)):
            ws_suites.column_dimensions[col].width = width

        ws_violations = wb.create_sheet("Violations")
        for col_idx, header in enumerate(["Suite", "Check", "Degree", "Note", "LHS", "RHS"], 1):
            cell = ws_violations.cell(row=1, column=col_idx, value=header)
            cell.fill = header_fill
            cell.font = header_font
        out_row = 2
        for row in rows:
            for v in row['violations']:
                values = [row['suite'], row['label'], v['degree'], v['note'],
                          json.dumps(v['lhs'])[:2000], json.dumps(v['rhs'])[:2000]]
                for col_idx, value in enumerate(values, 1):
                    cell = ws_violations.cell(row=out_row, column=col_idx, value=value)
                    cell.alignment = Alignment(wrap_text=col_idx >= 4, vertical='top')
                out_row += 1
        for col, width in zip("ABCDEF", (14, 40, 8, 40, 60, 60)):
            ws_violations.column_dimensions[col].width = width

        wb.save(output_path)

    def save(self, output_path: str) -> str:
        """Pick the renderer from the file extension."""
        suffix = Path(output_path).suffix.lower()
        if suffix == '.xlsx':
            self.generate_excel_report(output_path)
        elif suffix in ('.html', '.htm'):
            self.generate_html_report(output_path)
        elif suffix == '.json':
            self.generate_json_report(output_path)
        else:
            raise ValueError(f"unsupported report format '{suffix}' (use .json, .html or .xlsx)")
        logger.info(f"Report written: {output_path}")
        return output_path
