import os

from django.apps import AppConfig


class MvlabConfig(AppConfig):
    """Django AppConfig for mvlab."""

    name = "mvlab"
    verbose_name = "MV-algebra laboratory"

    def ready(self):
        """Configure tracing once Django is ready, unless opentelemetry-instrument already did."""
        try:
            if not os.getenv("OTEL_PYTHON_INSTRUMENTATION_ENABLED"):
                from .otel_config import configure_opentelemetry_safe

                configure_opentelemetry_safe()
        except Exception as e:
            import logging

            logger = logging.getLogger(__name__)
            logger.error(f"Error in MvlabConfig.ready(): {e}")
