"""
Example Django project configuration using django-mvlab.
"""

# settings.py

INSTALLED_APPS = [
    "django.contrib.contenttypes",
    # Checks de MV-álgebras via `python manage.py mvlab ...`
    "mvlab",
    # Your apps
    "myapp",
]

# Logging configuration: reports on stdout, JSON logs with trace context on stderr
from mvlab.logging_config import get_logging_config

LOGGING = get_logging_config()

# Orçamento dos checks (opcional); MVLAB_* e flags da linha de comando têm precedência
MVLAB = {
    "SEED": 42,
    "ORDER": 6,
    "SAMPLES": 2000,
    "EXHAUSTIVE_LIMIT": 300,
    "RESOURCE_ATTRIBUTES": {
        "team": "algebra",
        "project": "mv-modules",
    },
}
