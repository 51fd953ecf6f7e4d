"""
Engine configuration - typed access to the PRABHAKAR settings dict
"""
import logging
from typing import Any, Dict

from django.conf import settings

logger = logging.getLogger(__name__)

DEFAULTS: Dict[str, Any] = {
    'SERIES_TOL': 1e-14,
    'SERIES_MAX_TERMS': 2000,
    'ASYMPTOTIC_ORDER': 12,
    'ASYMPTOTIC_MAX_ORDER': 24,
    'COMPENSATED_ORDER': 16,
    'THRESHOLD_FLOOR': 5.0,
    'THRESHOLD_SCALE': 8.0,
    'THRESHOLD_PEAK_LOG': 18.42,
    'NEGATIVE_AXIS_SERIES_RHO': 15.0,
    'RECESSIVE_TERMS': True,
    'DEGENERATE_SHIFT_TOL': 1e-12,
    'HEAT_T_SWITCH': 1e6,
    'HEAT_OUTER_MAX_TERMS': 600,
    'PHI_MAX_TERMS': 20000,
    'TABLE_CACHE_TIMEOUT': None,
}


def _parse(name: str, raw: str) -> Any:
    """Parse an environment string like the default of name."""
    default = DEFAULTS[name]
    text = raw.strip()
    if isinstance(default, bool):
        return text.lower() in ('1', 'true', 'yes', 'on')
    if default is None:
        return None if text.lower() in ('', 'none') else float(text)
    try:
        return type(default)(text)
    except ValueError as exc:
        raise ValueError(f"PRABHAKAR_{name}={raw!r} is not a valid {type(default).__name__}") from exc


def engine_setting(name: str) -> Any:
    """
    Read one engine setting, falling back to the built-in default.

    Overrides come from settings.PRABHAKAR; string values (as read from
    PRABHAKAR_<NAME> environment variables) are parsed like the default.

    Args:
        name: Key of the PRABHAKAR settings dict

    Returns:
        The configured value
    """
    if name not in DEFAULTS:
        raise KeyError(f"Unknown engine setting: {name}")
    overrides = getattr(settings, 'PRABHAKAR', {}) if settings.configured else {}
    if name not in overrides:
        return DEFAULTS[name]
    value = overrides[name]
    return _parse(name, value) if isinstance(value, str) else value
