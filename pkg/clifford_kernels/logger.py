import logging
import os

from bento_lib.logging import log_level_from_str

__all__ = [
    "logger",
]

logging.basicConfig(level=logging.NOTSET)

logger = logging.getLogger(__package__)
logger.setLevel(log_level_from_str(os.environ.get("LOG_LEVEL", "info").lower().strip()))
