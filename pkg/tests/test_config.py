import json
import os
import time

import config


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv('UMBRAL_TRUNCATION', '7')
    monkeypatch.setenv('UMBRAL_FORMAT', 'json')
    cfg = config.load_config()
    assert cfg['TRUNCATION'] == 7
    assert cfg['OUTPUT_FORMAT'] == 'json'
    assert os.path.isabs(cfg['OUTPUT_FOLDER'])


def test_unknown_format_falls_back_to_text(monkeypatch, capsys):
    monkeypatch.setenv('UMBRAL_FORMAT', 'xml')
    assert config.load_config()['OUTPUT_FORMAT'] == 'text'
    assert 'unknown UMBRAL_FORMAT' in capsys.readouterr().err


def test_config_json_overlay(monkeypatch, tmp_path):
    (tmp_path / 'config.json').write_text(json.dumps({"SEED": 7, "MAX_TRUNCATION": 10}))
    monkeypatch.chdir(tmp_path)
    cfg = config.load_config()
    assert cfg['SEED'] == 7
    assert cfg['MAX_TRUNCATION'] == 10


def test_cleanup_removes_only_old_reports(monkeypatch, tmp_path):
    monkeypatch.setitem(config.CONFIG, 'OUTPUT_FOLDER', str(tmp_path))
    old, fresh = tmp_path / 'old.html', tmp_path / 'fresh.html'
    old.write_text('x')
    fresh.write_text('x')
    stale = time.time() - (config.CONFIG['CLEANUP_HOURS'] + 1) * 3600
    os.utime(old, (stale, stale))
    assert config.cleanup_old_files() == 1
    assert fresh.exists() and not old.exists()
