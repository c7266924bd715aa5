"""
Django settings for the test suite; no database is needed.
"""

from mvlab.logging_config import get_logging_config

SECRET_KEY = "test-secret-key-for-testing-only"
DEBUG = True

INSTALLED_APPS = [
    "mvlab",
]

LOGGING = get_logging_config()

# mvlab: small budgets keep the suite fast; the CLI tests override them per call
MVLAB = {
    "SEED": 0,
    "ORDER": 4,
    "SAMPLES": 200,
    "EXHAUSTIVE_LIMIT": 200,
}

USE_TZ = True
