"""
Configuration for mvlab.

Values come from the ``MVLAB`` dictionary in Django settings, then from
environment variables, then from command-line flags (highest precedence).
"""

import logging
import os
from dataclasses import dataclass

from .exceptions import PreconditionError

logger = logging.getLogger(__name__)

DEFAULTS = {
    "SEED": 0,
    "ORDER": 4,
    "SAMPLES": 1000,
    "EXHAUSTIVE_LIMIT": 200,
}

ENVIRONMENT_VARIABLES = {
    "SEED": "MVLAB_SEED",
    "ORDER": "MVLAB_ORDER",
    "SAMPLES": "MVLAB_SAMPLES",
    "EXHAUSTIVE_LIMIT": "MVLAB_EXHAUSTIVE_LIMIT",
}


@dataclass(frozen=True)
class Budget:
    """How much checking a law receives: Farey order, sample count, exhaustive threshold and seed."""

    seed: int = 0
    order: int = 4
    samples: int = 1000
    exhaustive_limit: int = 200

    def __post_init__(self):
        for name in ("order", "samples", "exhaustive_limit"):
            value = getattr(self, name)
            if value <= 0:
                raise PreconditionError(f"{name} must be a positive integer, got {value}")


def get_settings_dict():
    """Return the MVLAB settings dictionary, or {} outside a configured Django project."""
    try:
        from django.conf import settings

        if not settings.configured:
            return {}
        return getattr(settings, "MVLAB", {}) or {}
    except ImportError:
        return {}


def get_budget(**overrides) -> Budget:
    values = dict(DEFAULTS)
    values.update({key: value for key, value in get_settings_dict().items() if key in DEFAULTS})
    for key, variable in ENVIRONMENT_VARIABLES.items():
        raw = os.getenv(variable)
        if raw is None or raw == "":
            continue
        try:
            values[key] = int(raw)
        except ValueError:
            logger.warning(f"Ignoring non-integer {variable}={raw!r}")
    for key, value in overrides.items():
        if value is not None:
            values[key.upper()] = value
    return Budget(
        seed=int(values["SEED"]),
        order=int(values["ORDER"]),
        samples=int(values["SAMPLES"]),
        exhaustive_limit=int(values["EXHAUSTIVE_LIMIT"]),
    )


def configure():
    """Configure standalone Django settings for the command-line entry point."""
    import django
    from django.conf import settings

    if settings.configured:
        return
    from .logging_config import get_logging_config

    settings.configure(
        INSTALLED_APPS=["mvlab"],
        LOGGING=get_logging_config(),
        MVLAB={},
        USE_TZ=True,
    )
    django.setup()
