"""Helpers shared by the structural management commands."""

import json

from django.core.management.base import CommandError

from inputselect.structural.exceptions import Infeasible, ParseError, StructuralError, TooLarge
from inputselect.structural.utils.instances import InstanceFile, read_instance

EXIT_INFEASIBLE = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def load_instance(path: str) -> InstanceFile:
    try:
        return read_instance(path)
    except ParseError as exc:
        raise CommandError(f"{path}: {exc}", returncode=EXIT_USAGE) from exc
    except OSError as exc:
        raise CommandError(str(exc), returncode=EXIT_USAGE) from exc


def command_error(exc: StructuralError) -> CommandError:
    """The CommandError (and exit status) a library error maps to."""
    if isinstance(exc, Infeasible):
        return CommandError(str(exc), returncode=EXIT_INFEASIBLE)
    # ParseError, BadSpec and the core validation errors subclass ValueError or IndexError.
    if isinstance(exc, (ValueError, IndexError, TooLarge)):
        return CommandError(str(exc), returncode=EXIT_USAGE)
    return CommandError(f"internal error: {exc}", returncode=EXIT_INTERNAL)


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)
