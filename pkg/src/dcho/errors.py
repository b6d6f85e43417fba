"""Exception types shared across the simulator modules.

The CLI maps these to exit codes: usage problems exit 1, ParseError and
ValidationError (and any other ConfigError) exit 2, everything else that
escapes a run exits 3.
"""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of an operation."""


class ConfigError(ValueError):
    """A configuration value or combination is invalid."""


class ParseError(ConfigError):
    """A scenario file could not be read or decoded; names path and field."""


class ValidationError(ConfigError):
    """A parsed scenario violates a cross-field invariant."""


class StateError(RuntimeError):
    """An operation was requested in a state that forbids it."""


class IoError(OSError):
    """A result file could not be written."""
