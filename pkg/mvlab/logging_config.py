"""
Logging configuration for mvlab.

Reports go to stdout; log records go to stderr. Outside local development each
record is one JSON line carrying the OpenTelemetry trace context and whichever
check fields (instance, law, ...) the caller passed in ``extra``.
"""

import json
import logging
import os
from datetime import datetime, timezone

from opentelemetry import trace

CONTEXT_FIELDS = ("instance", "law", "check", "seed")


def _timestamp() -> str:
    return datetime.now(timezone.utc).isoformat().replace("+00:00", "Z")


def _trace_context() -> dict:
    span_context = trace.get_current_span().get_span_context()
    if not span_context.is_valid:
        return {}
    return {"trace_id": format(span_context.trace_id, "032x"), "span_id": format(span_context.span_id, "016x")}


class JSONFormatterWithTrace(logging.Formatter):
    """One JSON object per record, with trace ids and the check context of the record."""

    def format(self, record):
        entry = {
            "timestamp": _timestamp(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        try:
            entry.update({"module": record.module, "function": record.funcName, "line": record.lineno})
            entry.update(_trace_context())
            entry.update({name: getattr(record, name) for name in CONTEXT_FIELDS if hasattr(record, name)})
            if record.exc_info:
                entry["exception"] = self.formatException(record.exc_info)
        except Exception as e:
            # keep the record even when the trace context is unavailable
            entry["otel_error"] = str(e)
        return json.dumps(entry, ensure_ascii=False, default=str)


def _logger(level: str) -> dict:
    return {"handlers": ["console"], "level": level, "propagate": False}


def get_logging_config():
    """dictConfig for the command line and for host projects that install the app."""
    level = os.getenv("MVLAB_LOG_LEVEL", "WARNING")
    local = os.getenv("MVLAB_ENVIRONMENT", "local") == "local"
    return {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {
            "json_with_trace": {"()": "mvlab.logging_config.JSONFormatterWithTrace"},
            "verbose": {"format": "{levelname} {asctime} {name} {message}", "style": "{"},
        },
        "handlers": {
            "console": {
                "class": "logging.StreamHandler",
                "stream": "ext://sys.stderr",
                "formatter": "verbose" if local else "json_with_trace",
            },
        },
        "loggers": {
            "mvlab": _logger(level),
            "opentelemetry": _logger("WARNING"),
        },
        "root": {"handlers": ["console"], "level": level},
    }
