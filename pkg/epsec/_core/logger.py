from __future__ import annotations

import os
import sys
import logging
from typing import TextIO, Optional
from pathlib import Path
from logging.handlers import TimedRotatingFileHandler

USER_LEVEL = 25
logging.addLevelName(USER_LEVEL, 'USER')

LOG_FILE_FORMAT = logging.Formatter(' | '.join([
    '%(asctime)s',
    '%(levelname)-8s',
    '%(threadName)-10s ID:%(thread)-15d',
    '%(message)s'
]), '%Y-%m-%d %H:%M:%S')

LOG_CONSOLE_FORMAT = logging.Formatter(' | '.join([
    '%(asctime)s',
    '%(levelname)-8s',
    '%(threadName)-10s',
    '%(message)s'
]), '%H:%M:%S')


class EpsecLogger(logging.Logger):
    def __init__(self, name: str = 'epsec') -> None:
        super().__init__(name)
        self.setLevel(logging.DEBUG)

    def has_handler(self, name: str) -> bool:
        return any(handler.get_name() == name for handler in self.handlers)


def log_file_handler(config_path: Path) -> TimedRotatingFileHandler:
    log_dir = config_path / 'logs'
    log_dir.mkdir(parents=True, exist_ok=True)

    handler = TimedRotatingFileHandler(
        filename=log_dir / 'epsec.log',
        when='midnight',
        backupCount=7
    )

    handler.setLevel(logging.DEBUG)
    handler.set_name('file_handler')
    handler.setFormatter(LOG_FILE_FORMAT)

    return handler


def console_handler() -> logging.StreamHandler[TextIO]:
    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(logging.DEBUG)
    handler.set_name('console_handler')
    handler.setFormatter(LOG_CONSOLE_FORMAT)
    return handler


def enable_console_logging() -> None:
    """Attach the debug console handler once."""
    if not LOGGER.has_handler('console_handler'):
        LOGGER.addHandler(console_handler())


def enable_file_logging(config_path: Path) -> None:
    """Attach the rotating file handler once."""
    if not LOGGER.has_handler('file_handler'):
        LOGGER.addHandler(log_file_handler(config_path))


def write_log(msg: str, *, stream: Optional[TextIO] = None) -> None:
    """Write a log level USER message to the logger.

    Args:
        msg (str): The message to log.
        stream (Optional[TextIO], optional): The stream to write to. Defaults to None.

    ```
    write_log('f0668c1e')
    write_log('f0668c1e', stream=sys.stdout)
    ```

    """
    if stream:
        try:
            stream.write(msg + '\n')
            stream.flush()
        except Exception as e:
            LOGGER.error('Invalid stream: %s', e)

    LOGGER.log(USER_LEVEL, msg)


LOGGER = EpsecLogger()
if os.getenv('EPSEC_DEBUG') == '1':
    enable_console_logging()
