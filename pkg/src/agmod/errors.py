"""Exception hierarchy; the CLI maps these onto exit codes."""


class AgmodError(Exception):
    """Base class for all package errors."""


class InputError(AgmodError):
    """Malformed user input (expression syntax, instance file, bad flag).

    Carries an optional (line, col) position, both 1-based.
    """

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            where = f"line {line}" + (f", col {col}" if col is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)


class NeedLargerTruncation(AgmodError):
    """Internal signal: a stabilization detector failed at the current
    truncation degree.  Callers double the truncation and retry."""


class TruncationExhausted(AgmodError):
    """Truncation doubling hit the cap without stabilizing."""


class SuperficialSearchFailed(AgmodError):
    """Random search for a verified superficial form ran out of retries.

    Over a large prime field this indicates a modeling error or a genuinely
    degenerate instance, so the diagnostics are kept.
    """

    def __init__(self, message, diagnostics=None):
        self.diagnostics = diagnostics or []
        super().__init__(message)
