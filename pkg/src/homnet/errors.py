"""Exception hierarchy shared by all homnet modules.

The CLI maps these onto exit codes: :class:`UsageError` and its
subclasses exit with 2, any other :class:`HomnetError` with 1.
"""


class HomnetError(Exception):
    """Base class for all homnet failures."""


class UsageError(HomnetError):
    """A caller violated an operation's precondition or passed bad arguments."""


class ValidationError(UsageError):
    """Input data is well-formed but semantically invalid (unknown ids, bad values)."""


class ParseError(ValidationError):
    """An input file is malformed; carries the offending line number."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        prefix = ""
        if path is not None:
            prefix = f"{path}:"
            if line is not None:
                prefix += f"{line}:"
            prefix += " "
        super().__init__(prefix + message)
