"""Exception types shared across the package."""


class SchreierLabError(Exception):
    """Base class for all schreierlab-specific failures."""


class GroupTooLargeError(SchreierLabError):
    """Raised when an enumeration would exceed the configured order cap."""


class SubgroupLimitError(SchreierLabError):
    """Raised when a subgroup enumeration exceeds the configured count limit."""


class NotASubgroupError(SchreierLabError):
    """Raised when a claimed subgroup relation does not hold."""


class DisconnectedGraphError(SchreierLabError):
    """Raised when an operation requires a connected Schreier graph."""


class SearchSpaceError(SchreierLabError):
    """Raised when an exhaustive search would exceed its configured cap."""


class MatrixTooLargeError(SchreierLabError):
    """Raised when a dense eigensolve would exceed the dimension cap."""
