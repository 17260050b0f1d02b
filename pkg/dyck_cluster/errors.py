"""
Error types raised by the library.

Everything derives from ValueError so callers that only care about bad
input can keep catching the built-in.
"""


class DyckClusterError(ValueError):
    """Base class for all library errors."""


class InvalidInputError(DyckClusterError):
    """Malformed word, chain spec, series or dimension vector."""


class InvalidShiftError(DyckClusterError):
    """A unitary shift produced a word that is not a Dyck path."""


class SizeLimitError(DyckClusterError):
    """An enumeration bound or the seed exploration cap was exceeded."""


class IndexRangeError(DyckClusterError):
    """A 1-based index fell outside its allowed range."""


class DivisibilityError(DyckClusterError):
    """A Laurent polynomial division did not come out exact."""


class InvariantBreach(DyckClusterError):
    """An internal consistency check failed."""


# Exit codes used by the command line front end
EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def exit_code_for(error: Exception) -> int:
    """Map an exception to the CLI exit status."""
    if isinstance(error, (DivisibilityError, InvariantBreach)):
        return EXIT_INTERNAL
    return EXIT_USAGE
