from __future__ import annotations

import os
import sys
import json
from typing import Any, Literal, Optional, Generator
from pathlib import Path
from contextlib import contextmanager
from dataclasses import asdict, fields, dataclass

from .logger import LOGGER


def get_config_path(app_name: str = 'epsec') -> Path:
    """
    Get the config directory path for the application.

    Args:
        app_name (str): The name of the application

    Returns:
        Path: The config directory path for the application.
    """
    home = Path.home()

    if sys.platform == 'win32':
        env = os.getenv('LOCALAPPDATA')
        path = (
            Path(env) / app_name
            if env
            else home / 'AppData' / 'Local' / app_name
        )
    else:
        env = os.environ.get('XDG_CONFIG_HOME')
        path = (
            Path(env) / app_name
            if env
            else home / '.config' / app_name
        )

    os.environ['EPSEC_CONFIG_PATH'] = str(path)
    os.environ.setdefault('EPSEC_SETTINGS_PATH', str(path / 'settings.json'))

    return path


@dataclass
class Settings:
    selftest_samples: int = 200
    scenario_seed: int = 0
    log_to_file: bool = False
    enable_debug: bool = False

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Settings:
        """Build settings from a JSON mapping, ignoring unknown keys."""
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in known})


@contextmanager
def open_settings(
    mode: Literal['r', 'w'] = 'r',
    *, json_file_path: Optional[Path] = None
) -> Generator[Settings, Any, None]:
    """Open settings context manager.

    ```
    with open_settings(mode='w') as s:
        s.selftest_samples = 1000
    ```
    """
    if json_file_path is None:
        get_config_path()
        json_file_path = Path(os.environ['EPSEC_SETTINGS_PATH'])

    try:
        with json_file_path.open() as f:
            settings = Settings.from_dict(json.load(f))
        LOGGER.debug('Settings loaded from %s', json_file_path)

    except FileNotFoundError:
        settings = Settings()
        json_file_path.parent.mkdir(parents=True, exist_ok=True)
        with json_file_path.open('w') as f:
            json.dump(asdict(settings), f, indent=4)

    except Exception as e:
        LOGGER.error('Invalid settings file %s. Using defaults: %s', json_file_path, e)
        settings = Settings()

    yield settings

    if mode != 'w':
        return

    with json_file_path.open('w') as f:
        json.dump(asdict(settings), f, indent=4)
