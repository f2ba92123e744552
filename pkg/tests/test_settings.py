from __future__ import annotations

import os
import json
from pathlib import Path

from epsec._core.settings import Settings, open_settings, get_config_path


def test_config_path_follows_xdg(isolated_config: Path):
    path = get_config_path()
    assert path == isolated_config / 'epsec'
    assert os.environ['EPSEC_CONFIG_PATH'] == str(path)


def test_defaults_are_written(isolated_config: Path):
    with open_settings() as settings:
        assert settings == Settings()

    written = json.loads((isolated_config / 'epsec' / 'settings.json').read_text())
    assert written == {
        'selftest_samples': 200,
        'scenario_seed': 0,
        'log_to_file': False,
        'enable_debug': False,
    }


def test_write_mode_persists(tmp_path: Path):
    path = tmp_path / 'custom.json'
    with open_settings('w', json_file_path=path) as settings:
        settings.selftest_samples = 1000

    with open_settings(json_file_path=path) as settings:
        assert settings.selftest_samples == 1000


def test_read_mode_does_not_persist(tmp_path: Path):
    path = tmp_path / 'custom.json'
    with open_settings(json_file_path=path) as settings:
        settings.scenario_seed = 9

    with open_settings(json_file_path=path) as settings:
        assert settings.scenario_seed == 0


def test_unknown_keys_are_ignored(tmp_path: Path):
    path = tmp_path / 'custom.json'
    path.write_text(json.dumps({'scenario_seed': 4, 'theme': 'dark'}))
    with open_settings(json_file_path=path) as settings:
        assert settings.scenario_seed == 4


def test_invalid_file_falls_back_to_defaults(tmp_path: Path):
    path = tmp_path / 'custom.json'
    path.write_text('{not json')
    with open_settings(json_file_path=path) as settings:
        assert settings == Settings()
