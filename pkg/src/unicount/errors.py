"""Exception hierarchy shared by the library and the command line."""


class UnicountError(Exception):
    """Base class for every error raised by this package."""


class InputError(UnicountError, ValueError):
    """Invalid user input: malformed files, bad matrices, violated preconditions."""


class DegenerateError(InputError):
    """The operation needs a full-dimensional body."""


class BudgetExceeded(InputError):
    """A sweep would enumerate more work than the configured budget allows."""


class NotUniversallyEqual(InputError):
    """Raised by ``decompose`` when the two polygons have different counting functions."""


class InvariantError(UnicountError, RuntimeError):
    """An internal invariant failed. Always a bug, never a valid outcome."""
