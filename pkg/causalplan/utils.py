"""Provides utility functions, custom exceptions, and global configurations.

This module defines common file paths, the debug switch, the logging setup
used by the command line, and the custom exception classes shared by every
stage of the planner (parsing, transformation, encoding, solving, search).
"""

import logging
import os
from importlib.resources import files
from pathlib import Path
from typing import Protocol

# Package internal files
PACKAGE_DIR = Path(str(files("causalplan")))
BENCHMARKS_DIR = PACKAGE_DIR / "benchmarks"

# User output directory
USER_DIR = Path.home() / ".causalplan"
USER_OUTPUT_DIR = USER_DIR / "output"


# Debugging
def DEBUG() -> bool:
    """Check if the application is in debug mode.

    Returns:
        True if the 'DEBUG' environment variable is set to '1', False otherwise.

    """
    return os.environ.get("DEBUG", "0") == "1"


def setup_logging(level: int) -> None:
    """Route the package loggers to a rich console handler.

    Args:
        level: The logging level for the `causalplan` logger hierarchy.

    """
    from rich.logging import RichHandler

    logger = logging.getLogger("causalplan")
    logger.setLevel(level)
    if not any(isinstance(h, RichHandler) for h in logger.handlers):
        handler = RichHandler(show_path=DEBUG(), rich_tracebacks=DEBUG())
        handler.setFormatter(logging.Formatter("%(message)s"))
        logger.addHandler(handler)


# Custom Exceptions
class Positioned(Protocol):
    """Anything carrying a 1-based source position."""

    line: int
    column: int


class PddlError(Exception):
    """Base class for errors located in a PDDL source."""

    line: int = 0
    column: int = 0
    path: Path | None = None

    def at(self, node: "Positioned") -> "PddlError":
        """Attach the position of a source node and return the exception itself."""
        self.line = node.line
        self.column = node.column
        return self

    def located(self, path: Path) -> "PddlError":
        """Attach the source path and return the exception itself."""
        self.path = path
        return self

    def message(self) -> str:
        """Return the message without location."""
        raise NotImplementedError

    def __str__(self) -> str:
        """Return a `file:line:col: message` diagnostic."""
        prefix = str(self.path) if self.path else "<input>"
        return f"{prefix}:{self.line}:{self.column}: {self.message()}"


class PddlSyntaxError(PddlError):
    """Exception raised when a PDDL text cannot be parsed."""

    def __init__(self, line: int, column: int, message: str) -> None:
        """Initialize the PddlSyntaxError exception.

        Args:
            line: The 1-based line of the offending token.
            column: The 1-based column of the offending token.
            message: What was expected at that position.

        """
        self.line = line
        self.column = column
        self.detail = message

    def message(self) -> str:
        """Return the syntax message."""
        return f"syntax error: {self.detail}"


class UnsupportedFeature(PddlError):
    """Exception raised for PDDL constructs outside the supported fragment."""

    def __init__(self, feature: str, line: int = 0, column: int = 0) -> None:
        """Initialize the UnsupportedFeature exception.

        Args:
            feature: The name of the rejected construct or requirement flag.
            line: The 1-based line where it occurs.
            column: The 1-based column where it occurs.

        """
        self.feature = feature
        self.line = line
        self.column = column

    def message(self) -> str:
        """Return the unsupported-fragment message."""
        return f"unsupported fragment: {self.feature}"


class BindingError(PddlError):
    """Exception raised when a name does not resolve against the declarations."""

    def __init__(self, kind: str, name: str, detail: str = "") -> None:
        """Initialize the BindingError exception.

        Args:
            kind: What was looked up (predicate, object, sort, variable).
            name: The unresolved name.
            detail: Optional extra context such as an arity mismatch.

        """
        self.kind = kind
        self.name = name
        self.detail = detail

    def message(self) -> str:
        """Return the binding message."""
        message = f"undeclared {self.kind} '{self.name}'"
        return f"{message} ({self.detail})" if self.detail else message


class SortError(PddlError):
    """Exception raised when an argument does not fit the declared sort."""

    def __init__(self, message: str) -> None:
        """Initialize the SortError exception.

        Args:
            message: Description of the mismatch.

        """
        self.detail = message

    def message(self) -> str:
        """Return the sort message."""
        return f"sort error: {self.detail}"


class EffectConflict(Exception):
    """Exception raised when a ground action writes two values to one point."""

    def __init__(self, action: str, point: str) -> None:
        """Initialize the EffectConflict exception.

        Args:
            action: The printed ground action.
            point: The printed function point written twice.

        """
        self.action = action
        self.point = point

    def __str__(self) -> str:
        """Return a user-friendly string representation of the exception."""
        return f"Conflicting effects of {self.action} on {self.point}"


class CapacityError(Exception):
    """Exception raised when a model exceeds the configured variable limit."""

    def __init__(self, count: int, limit: int) -> None:
        """Initialize the CapacityError exception.

        Args:
            count: Number of variables requested.
            limit: Configured maximum.

        """
        self.count = count
        self.limit = limit

    def __str__(self) -> str:
        """Return a user-friendly string representation of the exception."""
        return f"Model needs {self.count} variables, limit is {self.limit}"


class PropagatorContractError(Exception):
    """Exception raised when a propagator emits an invalid reason clause."""

    def __init__(self, propagator: str, clause: list[int], detail: str) -> None:
        """Initialize the PropagatorContractError exception.

        Args:
            propagator: Name of the offending propagator.
            clause: The literals it produced.
            detail: Which part of the contract was broken.

        """
        self.propagator = propagator
        self.clause = clause
        self.detail = detail

    def __str__(self) -> str:
        """Return a user-friendly string representation of the exception."""
        return f"Propagator {self.propagator} broke its contract ({self.detail}): {self.clause}"


class InternalError(Exception):
    """Exception raised when a cross-module check fails."""

    def __init__(self, message: str) -> None:
        """Initialize the InternalError exception.

        Args:
            message: Diagnostic describing the failed check.

        """
        self.message = message

    def __str__(self) -> str:
        """Return a user-friendly string representation of the exception."""
        return f"Internal error: {self.message}"


class OracleRefusal(Exception):
    """Exception raised when the breadth-first oracle exceeds its state budget."""

    def __init__(self, states: int, limit: int) -> None:
        """Initialize the OracleRefusal exception.

        Args:
            states: Number of states stored when the search stopped.
            limit: Configured maximum number of stored states.

        """
        self.states = states
        self.limit = limit

    def __str__(self) -> str:
        """Return a user-friendly string representation of the exception."""
        return f"State space exceeds the oracle budget ({self.states} > {self.limit} states)"


class MemoryLimitExceeded(Exception):
    """Exception raised by the allocation watchdog."""

    def __init__(self, used_mb: float, limit_mb: float) -> None:
        """Initialize the MemoryLimitExceeded exception.

        Args:
            used_mb: Resident memory observed, in megabytes.
            limit_mb: Configured limit, in megabytes.

        """
        self.used_mb = used_mb
        self.limit_mb = limit_mb

    def __str__(self) -> str:
        """Return a user-friendly string representation of the exception."""
        return f"Memory limit reached ({self.used_mb:.0f} MB > {self.limit_mb:.0f} MB)"


def memory_usage_mb() -> float:
    """Return the peak resident set size of the current process in megabytes."""
    import resource
    import sys

    peak = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    # Linux reports kilobytes, macOS bytes
    return peak / (1024 * 1024) if sys.platform == "darwin" else peak / 1024
