from __future__ import annotations

import logging
import os

from dotenv import load_dotenv

from schemas.models import RuntimeSettings

load_dotenv()

logger = logging.getLogger(__name__)

# ---------------------------------------------------------------------------
# Singleton settings
# ---------------------------------------------------------------------------
_SETTINGS: RuntimeSettings | None = None


def get_settings() -> RuntimeSettings:
    """Return module-level settings read once from the environment."""
    global _SETTINGS
    if _SETTINGS is None:
        _SETTINGS = RuntimeSettings(
            log_dir=os.getenv("DP1_LCT_LOG_DIR", "logs"),
            log_level=os.getenv("DP1_LCT_LOG_LEVEL", "INFO"),
            workers=int(os.getenv("DP1_LCT_WORKERS", "4")),
        )
        logger.debug("Runtime settings loaded: %s", _SETTINGS.model_dump())
    return _SETTINGS


def reset_settings() -> None:
    """Forget the cached settings so the next get_settings() re-reads the environment."""
    global _SETTINGS
    _SETTINGS = None
