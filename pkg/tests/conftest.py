from __future__ import annotations

from typing import Generator
from pathlib import Path

import pytest

from epsec import AesKey128, IntegrityContext, parse_bits
from epsec._core.logger import LOGGER
from epsec._core.vectors import EIA2_WORKED


@pytest.fixture(autouse=True)
def isolated_config(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Generator[Path, None, None]:
    """Keep settings and logs out of the real config directory."""
    monkeypatch.setenv('XDG_CONFIG_HOME', str(tmp_path))
    monkeypatch.setenv('EPSEC_CONFIG_PATH', str(tmp_path / 'epsec'))
    monkeypatch.setenv('EPSEC_SETTINGS_PATH', str(tmp_path / 'epsec' / 'settings.json'))
    monkeypatch.delenv('EPSEC_KEY', raising=False)

    handlers = list(LOGGER.handlers)
    yield tmp_path
    for handler in LOGGER.handlers[:]:
        if handler not in handlers:
            LOGGER.removeHandler(handler)
            handler.close()


@pytest.fixture()
def worked_key() -> AesKey128:
    return AesKey128.from_hex(EIA2_WORKED.key)


@pytest.fixture()
def worked_ctx(worked_key: AesKey128) -> IntegrityContext:
    return IntegrityContext(worked_key, EIA2_WORKED.count, EIA2_WORKED.bearer,
                            EIA2_WORKED.direction)


@pytest.fixture()
def worked_message():
    return parse_bits(EIA2_WORKED.message)
