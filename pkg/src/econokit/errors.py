"""Exception hierarchy.

Every error raised on bad data or a numerically degenerate problem derives
from :class:`EconokitError`, which the CLI maps to exit status 1.
"""


class EconokitError(ValueError):
    """Base class for data and numerical errors."""


class RankDeficientError(EconokitError):
    def __init__(self, column: str):
        super().__init__(f"design matrix is rank deficient: column {column!r} is linearly dependent on the others")
        self.column = column


class ExactFitError(EconokitError):
    """The regression fits the data exactly, so error-variance based inference is undefined."""


class CriticalValueNotTabulated(EconokitError):
    pass
