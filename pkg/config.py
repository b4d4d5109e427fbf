"""
Configuration for loopconf.
Defaults come from the environment (a local .env is merged first); CLI flags
and request fields override them per run.
"""
import os

from dotenv import load_dotenv

load_dotenv()


def _int(name, default):
    value = os.environ.get(name)
    if value is None or not value.strip():
        return default
    try:
        return int(value)
    except ValueError:
        raise RuntimeError(f"{name} must be an integer, got {value!r}") from None


class Config:
    """Base configuration."""
    VERSION = "0.1.0"

    WINDOW = _int("LOOPCONF_WINDOW", 4)
    DEG_BOUND = _int("LOOPCONF_DEG_BOUND", 6)
    ALPHA_BAND = _int("LOOPCONF_ALPHA_BAND", 8)
    SEED = _int("LOOPCONF_SEED", None)
    TRIALS = _int("LOOPCONF_TRIALS", 100)
    FORMAT = os.environ.get("LOOPCONF_FORMAT", "text").strip().lower()
    LOG_LEVEL = os.environ.get("LOOPCONF_LOG_LEVEL", "WARNING").strip().upper()

    # Largest window the service accepts; sweeps grow with the cube of the window
    MAX_SERVICE_WINDOW = _int("LOOPCONF_MAX_SERVICE_WINDOW", 6)
    DEBUG = os.environ.get("FLASK_DEBUG", "false").lower() in ("true", "on", "1")
