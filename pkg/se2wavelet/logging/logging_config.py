"""
Logger selection for the se2wavelet command line.

Every feature logs under its own name (circle, plane, wavelet, ...). Records are
written to stderr and filtered by logger-name prefix, chosen either explicitly
(--logs / LOG_ONLY) or through a preset (LOG_PRESET).
"""
import logging
import sys
from typing import Dict, Iterable, List, Optional

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

NUMERIC_LOGGERS: List[str] = ["circle", "group", "irrep", "plane", "wavelet", "cr", "bargmann"]

LOGGER_PRESETS: Dict[str, List[str]] = {
    "minimal": ["cli", "verify"],
    "verify_only": ["verify"],
    "numerics": NUMERIC_LOGGERS,
    "workers": ["worker"],
    "performance": ["performance_tracker"],
    "all_app": ["cli", "verify", *NUMERIC_LOGGERS],
    "debug": ["cli", "verify", *NUMERIC_LOGGERS, "worker", "performance_tracker"],
}


class LoggerFilter(logging.Filter):
    """Passes records whose logger name starts with one of the given prefixes"""

    def __init__(self, prefixes: Iterable[str]):
        super().__init__()
        self.prefixes = tuple(prefixes)

    def filter(self, record: logging.LogRecord) -> bool:
        return record.name.startswith(self.prefixes)


def _stderr_handler(level: int, prefixes: List[str]) -> logging.Handler:
    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt="%Y-%m-%d %H:%M:%S"))
    if prefixes:
        handler.addFilter(LoggerFilter(prefixes))
    return handler


def setup_specific_logging(allowed_loggers: Optional[List[str]] = None, level: int = logging.INFO) -> List[str]:
    """
    Replace the root handlers with a single stderr handler showing `allowed_loggers`.

    None selects the minimal preset. Returns the prefixes in effect.
    """
    prefixes = list(LOGGER_PRESETS["minimal"] if allowed_loggers is None else allowed_loggers)

    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
    root.addHandler(_stderr_handler(level, prefixes))
    root.setLevel(level)

    logging.getLogger("cli").debug(f"🔍 Showing loggers: {', '.join(prefixes)}")
    return prefixes


def use_preset(preset_name: str, level: int = logging.INFO) -> Optional[List[str]]:
    prefixes = LOGGER_PRESETS.get(preset_name)
    if prefixes is None:
        logging.getLogger("cli").warning(
            f"❌ Unknown log preset '{preset_name}', choose from {', '.join(LOGGER_PRESETS)}"
        )
        return None
    return setup_specific_logging(prefixes, level=level)


def configure_from_settings(log_only: str, log_preset: str, level: int = logging.INFO) -> List[str]:
    """LOG_ONLY wins over LOG_PRESET; an unknown preset means minimal."""
    explicit = [name.strip() for name in log_only.split(",") if name.strip()]
    if explicit:
        return setup_specific_logging(explicit, level=level)
    return setup_specific_logging(LOGGER_PRESETS.get(log_preset, LOGGER_PRESETS["minimal"]), level=level)
