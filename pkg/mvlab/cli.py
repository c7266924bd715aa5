"""
Standalone entry point: ``mvlab <subcommand> ...`` without a host Django project.
"""

import logging
import sys
from typing import List, Optional

from django.core.management.base import CommandError

from .conf import configure

logger = logging.getLogger(__name__)

USAGE = (
    "usage: mvlab {check-axioms,radical,is-domain,is-pmv-plus,tensor,module-check,embed-unit,"
    "lift,lift-hom,adjoint-check,witness-nonequivalence} [options]\n"
)


def run_command(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand and return its exit code; the report goes to stdout."""
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv:
        sys.stderr.write(USAGE)
        return 2

    configure()
    from .management.commands.mvlab import Command

    command = Command()
    try:
        command.run_from_argv(["mvlab", "mvlab", *argv])
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 1
    except CommandError as e:
        # raised by a subcommand parser outside run_from_argv's error handling
        sys.stderr.write(f"{USAGE}error: {e}\n")
        return 2
    return 0


def main():
    sys.exit(run_command())
