"""routes/tools_run.py – run_tool dispatcher + family catalogue"""
import sys
import uuid
import traceback
from pathlib import Path

from flask import Blueprint, request, jsonify

run_bp = Blueprint('run', __name__)

TOOLS = ('family', 'construct', 'verify')


def _tools_on_path():
    from config import CONFIG
    if CONFIG['TOOLS_FOLDER'] not in sys.path:
        sys.path.insert(0, CONFIG['TOOLS_FOLDER'])


def _degree(params, default=None) -> int:
    from config import CONFIG
    try:
        degree = int(params.get('degree', CONFIG['TRUNCATION'] if default is None else default))
    except (TypeError, ValueError):
        raise ValueError(f"degree must be an integer, got {params.get('degree')!r}")
    if not 0 <= degree <= CONFIG['MAX_TRUNCATION']:
        raise ValueError(f"degree must be between 0 and {CONFIG['MAX_TRUNCATION']}, got {degree}")
    return degree


def _spec(params, degree, name_key):
    from umbral_cli import resolve_spec
    return resolve_spec(params.get(name_key), params.get('preset'), degree,
                        params.get('nu'), params.get('alpha'), params.get('a'))


def _run_family(params):
    from umbral_cli import family_payload
    return family_payload(_spec(params, _degree(params), 'name'))


def _run_construct(params):
    from umbral_cli import construct_payload
    document = params.get('sequence')
    if document is None:
        raise ValueError("params.sequence (a PolySeq document) is required")
    degree = _degree(params) if 'degree' in params else None
    return construct_payload(document, degree)


def _run_verify(params):
    from config import CONFIG
    from exactalg import parse_rational
    from report_generator import VerificationReportGenerator
    from suites import RANDOM_TRUNCATION
    from umbral_cli import collect_runs

    suite = params.get('suite', '')
    degree = _degree(params, RANDOM_TRUNCATION if suite == 'random' else None)
    spec = None
    if params.get('family') or params.get('preset'):
        spec = _spec(params, degree, 'family')
    suite_params = {
        'seed': int(params.get('seed', CONFIG['SEED'])),
        'sequence': params.get('sequence', 'e'),
        'scale': parse_rational(params.get('scale', '1')),
        'c': parse_rational(params.get('c', '0')),
    }
    if suite == 'random':
        suite_params['runs'] = int(params.get('runs', CONFIG['RANDOM_RUNS']))
    elif 'runs' in params:
        suite_params['runs'] = int(params['runs'])
    runs = collect_runs(suite, spec, degree, suite_params)

    output_dir = Path(CONFIG['OUTPUT_FOLDER'])
    output_dir.mkdir(parents=True, exist_ok=True)
    out_name = f"{uuid.uuid4().hex}_{suite}"
    html_name = out_name + '_report.html'
    xlsx_name = out_name + '_report.xlsx'
    generator = VerificationReportGenerator(runs, title=f"Suite {suite}")
    generator.save(str(output_dir / html_name))
    generator.save(str(output_dir / xlsx_name))

    result = generator.to_dict()
    result['outputs'] = [
        {"file": html_name, "label": "Verification Dashboard (HTML)", "preview": True},
        {"file": xlsx_name, "label": "Verification Report (Excel)"},
    ]
    return result


@run_bp.route('/run_tool', methods=['POST'])
def run_tool():
    from config import logger
    _tools_on_path()
    from umbral_errors import InternalConsistencyError, UmbralError

    data = request.get_json(force=True, silent=True) or {}
    tool = str(data.get('tool', '')).strip()
    params = data.get('params', {}) or {}

    if tool not in TOOLS:
        return jsonify({"error": f"Unknown tool: {tool}"}), 400
    if not isinstance(params, dict):
        return jsonify({"error": "params must be an object"}), 400

    try:
        if tool == 'family':
            result = _run_family(params)
        elif tool == 'construct':
            result = _run_construct(params)
        else:
            result = _run_verify(params)
        logger.info(f"Tool {tool} finished")
        return jsonify({"status": "success", "tool": tool, "result": result})

    except InternalConsistencyError as e:
        logger.error(f"Tool {tool} failed: {e}\n{traceback.format_exc()}")
        return jsonify({"error": str(e)}), 500
    except (UmbralError, ValueError) as e:
        logger.warning(f"Tool {tool} rejected: {e}")
        return jsonify({"error": str(e)}), 400
    except Exception as e:
        logger.error(f"Tool {tool} failed: {e}\n{traceback.format_exc()}")
        return jsonify({"error": str(e), "detail": traceback.format_exc()}), 500


@run_bp.route('/families')
def families():
    """Family names, their required parameters and the named presets."""
    _tools_on_path()
    from families import FAMILIES_WITH_P, FAMILY_PARAMS, load_family_presets
    return jsonify({
        "families": [
            {"name": name, "params": list(keys), "sheffer_operator": name in FAMILIES_WITH_P}
            for name, keys in FAMILY_PARAMS.items()
        ],
        "presets": load_family_presets(),
    })
