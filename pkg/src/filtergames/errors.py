"""Domain exceptions.

Every error the library raises on purpose derives from FilterGameError and
carries a ``kind`` tag; the CLI maps kinds to exit codes and the service maps
them to HTTP statuses.
"""


class FilterGameError(Exception):
    kind = "error"


class SpecParseError(FilterGameError, ValueError):
    """A mini-language string (strategy, filter, partition, g-function) did not parse."""

    kind = "parse"


class PreconditionError(FilterGameError):
    kind = "precondition"


class OutOfRangeError(FilterGameError):
    """A lookup fell beyond a finite partition's coverage."""

    kind = "out-of-range"


class UnsupportedKindError(FilterGameError):
    """The filter kind does not support the requested operation."""

    kind = "unsupported-kind"


class NoSelectorError(FilterGameError):
    """A partition block has no eligible element left to select."""

    kind = "no-selector"


class ResourceCapError(FilterGameError):
    """An exhaustive fallback or a value-size budget was exceeded."""

    kind = "resource-cap"


class InsufficientHorizonError(FilterGameError):
    """A construction could not produce enough innings within its budgets."""

    kind = "insufficient-horizon"
