"""
OpenTelemetry setup for mvlab.

Every report-producing operation runs inside a span and bumps a counter.
Exporters are configured through the standard OTEL_* environment variables
(or by running under ``opentelemetry-instrument``).
"""

import functools
import logging
import os
import sys

from opentelemetry import metrics, trace
from opentelemetry.sdk.resources import Resource

logger = logging.getLogger(__name__)

tracer = trace.get_tracer("mvlab")
meter = metrics.get_meter("mvlab")
checks_counter = meter.create_counter("mvlab.checks", description="Report-producing checks run by mvlab")


def get_resource():
    """Create the Resource; OTEL_SERVICE_NAME and OTEL_RESOURCE_ATTRIBUTES are read by the SDK."""
    from .conf import get_settings_dict

    resource_attrs = {"service.name": os.getenv("OTEL_SERVICE_NAME", "mvlab")}
    resource_attrs.update(get_settings_dict().get("RESOURCE_ATTRIBUTES", {}))
    return Resource.create(resource_attrs)


def setup_tracing():
    """Install an SDK TracerProvider unless one is already configured."""
    if os.getenv("OTEL_PYTHON_INSTRUMENTATION_ENABLED"):
        logger.info("TracerProvider configured by auto-instrumentation")
        return

    current_provider = trace.get_tracer_provider()
    if hasattr(current_provider, "resource") and current_provider.resource:
        logger.info("TracerProvider already configured")
        return

    from opentelemetry.sdk.trace import TracerProvider

    provider = TracerProvider(resource=get_resource())
    if os.getenv("OTEL_TRACES_EXPORTER") == "console":
        from opentelemetry.sdk.trace.export import ConsoleSpanExporter, SimpleSpanProcessor

        provider.add_span_processor(SimpleSpanProcessor(ConsoleSpanExporter(out=sys.stderr)))
    trace.set_tracer_provider(provider)
    logger.info("OpenTelemetry tracing configured via environment variables")


def configure_opentelemetry_safe():
    """Never raises: a missing exporter must not stop a check from running."""
    try:
        setup_tracing()
    except Exception as e:
        logger.error(f"OpenTelemetry configuration failed silently: {e}")


def traced_check(name):
    """Run the decorated report-producing function inside a span named ``mvlab.<name>``."""

    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            with tracer.start_as_current_span(f"mvlab.{name}") as span:
                report = func(*args, **kwargs)
                try:
                    verdict = getattr(report, "verdict", None)
                    span.set_attribute("mvlab.instance", str(getattr(report, "instance", "")))
                    span.set_attribute("mvlab.cases", int(getattr(report, "cases", 0) or 0))
                    span.set_attribute("mvlab.verdict", str(verdict))
                    checks_counter.add(1, {"check": name, "verdict": str(verdict)})
                except Exception as e:
                    logger.warning(f"Failed to record telemetry for {name}: {e}")
                return report

        return wrapper

    return decorator
