"""
config.py  –  Shared configuration, logging, and utilities
Imported by app.py, the route blueprints and the command-line entry point.
"""

import os
import sys
import json
import time
import logging
from pathlib import Path
from datetime import datetime

VERSION = '1.0.0'


def load_config() -> dict:
    config = {
        'HOST':              os.environ.get('UMBRAL_HOST', '0.0.0.0'),
        'PORT':              int(os.environ.get('UMBRAL_PORT', '5000')),
        'DEBUG':             os.environ.get('UMBRAL_DEBUG', 'False').lower() == 'true',
        'SECRET_KEY':        os.environ.get('UMBRAL_SECRET_KEY',
                                            'change-this-in-production-' + os.urandom(16).hex()),
        'TRUNCATION':        int(os.environ.get('UMBRAL_TRUNCATION', '12')),
        'MAX_TRUNCATION':    int(os.environ.get('UMBRAL_MAX_TRUNCATION', '24')),
        'SEED':              int(os.environ.get('UMBRAL_SEED', '42')),
        'RANDOM_RUNS':       int(os.environ.get('UMBRAL_RANDOM_RUNS', '100')),
        'OUTPUT_FORMAT':     os.environ.get('UMBRAL_FORMAT', 'text'),
        'OUTPUT_FOLDER':     os.environ.get('UMBRAL_OUTPUT_FOLDER', 'static/outputs'),
        'TOOLS_FOLDER':      os.environ.get('UMBRAL_TOOLS_FOLDER', 'tools'),
        'LOG_FOLDER':        os.environ.get('UMBRAL_LOG_FOLDER', 'logs'),
        'TIMEOUT_SECONDS':   int(os.environ.get('UMBRAL_TIMEOUT', '300')),
        'CLEANUP_HOURS':     int(os.environ.get('UMBRAL_CLEANUP_HOURS', '24')),
    }

    config_file = Path('config.json')
    if config_file.exists():
        try:
            with open(config_file) as f:
                config.update(json.load(f))
        except Exception as e:
            print(f"Warning: Could not load config.json: {e}", file=sys.stderr)

    if config['OUTPUT_FORMAT'] not in ('text', 'json'):
        print(f"Warning: unknown UMBRAL_FORMAT '{config['OUTPUT_FORMAT']}', using text", file=sys.stderr)
        config['OUTPUT_FORMAT'] = 'text'

    # Make all folder paths absolute relative to this file's directory
    base = os.path.dirname(os.path.abspath(__file__))
    for key in ('OUTPUT_FOLDER', 'TOOLS_FOLDER', 'LOG_FOLDER'):
        if not os.path.isabs(config[key]):
            config[key] = os.path.join(base, config[key])

    return config


CONFIG = load_config()

logger = logging.getLogger('umbral')


def setup_logging(stream=None) -> logging.Logger:
    """Daily log file plus one console stream (stdout for the server, stderr for the CLI)."""
    log_folder = Path(CONFIG['LOG_FOLDER'])
    log_folder.mkdir(parents=True, exist_ok=True)
    log_file = log_folder / f"umbral_{datetime.now().strftime('%Y%m%d')}.log"
    logging.basicConfig(
        level=logging.DEBUG if CONFIG['DEBUG'] else logging.INFO,
        format='%(asctime)s | %(levelname)s | %(message)s',
        handlers=[
            logging.FileHandler(log_file),
            logging.StreamHandler(stream or sys.stdout)
        ]
    )
    return logger


def cleanup_old_files() -> int:
    """Remove report files older than CLEANUP_HOURS; returns how many went."""
    removed = 0
    try:
        cutoff = time.time() - (CONFIG['CLEANUP_HOURS'] * 3600)
        fp = Path(CONFIG['OUTPUT_FOLDER'])
        if fp.exists():
            for f in fp.iterdir():
                if f.is_file() and f.stat().st_mtime < cutoff:
                    f.unlink()
                    removed += 1
                    logger.info(f"Cleaned up: {f.name}")
    except Exception as e:
        logger.error(f"Cleanup error: {e}")
    return removed
