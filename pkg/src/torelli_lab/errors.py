"""Exception hierarchy shared across the package.

``TorelliLabError`` marks a computation that failed for a mathematical or
numerical reason (CLI exit code 1).  ``UsageError`` marks invalid parameters
or inputs (CLI exit code 2).
"""


class TorelliLabError(Exception):
    pass


class UsageError(TorelliLabError):
    pass
