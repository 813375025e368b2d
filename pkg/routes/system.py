"""routes/system.py – index, health, status, download, preview, cleanup"""
import os
import sys
from datetime import datetime
from pathlib import Path

from flask import Blueprint, send_from_directory, jsonify, abort

system_bp = Blueprint('system', __name__)


def _report_files():
    from config import CONFIG
    folder = Path(CONFIG['OUTPUT_FOLDER'])
    return [f for f in folder.glob('*') if f.is_file()] if folder.exists() else []


@system_bp.route('/')
def home():
    from config import VERSION
    return jsonify({
        "name": "Umbral Toolkit",
        "version": VERSION,
        "endpoints": ["/families", "/run_tool", "/health", "/status",
                      "/download/<file>", "/preview/<file>", "/cleanup"],
    })


@system_bp.route('/health')
def health():
    """Health check endpoint for monitoring"""
    from config import VERSION
    return jsonify({
        'status': 'healthy',
        'timestamp': datetime.now().isoformat(),
        'version': VERSION
    })


@system_bp.route('/status')
def status():
    """Detailed status endpoint"""
    from config import CONFIG, VERSION
    if CONFIG['TOOLS_FOLDER'] not in sys.path:
        sys.path.insert(0, CONFIG['TOOLS_FOLDER'])
    from suites import SUITES

    try:
        files = _report_files()
        return jsonify({
            'status': 'running',
            'timestamp': datetime.now().isoformat(),
            'version': VERSION,
            'config': {
                'host': CONFIG['HOST'],
                'port': CONFIG['PORT'],
                'truncation': CONFIG['TRUNCATION'],
                'max_truncation': CONFIG['MAX_TRUNCATION'],
                'seed': CONFIG['SEED'],
                'random_runs': CONFIG['RANDOM_RUNS'],
                'timeout_seconds': CONFIG['TIMEOUT_SECONDS'],
                'cleanup_hours': CONFIG['CLEANUP_HOURS'],
            },
            'files': {
                'reports': len(files),
                'reports_size_mb': round(sum(f.stat().st_size for f in files) / (1024 * 1024), 2),
            },
            'suites_available': list(SUITES),
        })
    except Exception as e:
        return jsonify({'status': 'error', 'message': str(e)}), 500


def _existing_report(filename):
    from config import CONFIG
    safe = os.path.basename(filename)
    folder = CONFIG['OUTPUT_FOLDER']
    if not (Path(folder) / safe).exists():
        abort(404)
    return folder, safe


@system_bp.route('/download/<filename>')
def download(filename):
    folder, safe = _existing_report(filename)
    return send_from_directory(folder, safe, as_attachment=True)


@system_bp.route('/preview/<filename>')
def preview(filename):
    folder, safe = _existing_report(filename)
    return send_from_directory(folder, safe)


@system_bp.route('/cleanup', methods=['POST'])
def cleanup():
    from config import cleanup_old_files, logger
    try:
        removed = cleanup_old_files()
        return jsonify({'success': True, 'message': 'Cleanup completed', 'cleaned': {'reports': removed}})
    except Exception as e:
        logger.error(f"Cleanup error: {e}", exc_info=True)
        return jsonify({'success': False, 'error': str(e)}), 500
