"""Exception hierarchy.

Every error carries a short ``code`` (``E_SYNTAX``, ``E_NOTEXACT``, ...) so the
command line layer can report it without string matching.
"""


class GardnerError(Exception):
    code = "E_GENERIC"

    def __str__(self):
        msg = super().__str__()
        return f"{self.code}: {msg}" if msg else self.code


class JetError(GardnerError):
    """A coefficient-level operation received an expression with jet variables."""

    code = "E_JET"


class CycleError(GardnerError):
    code = "E_CYCLE"


class UnboundError(GardnerError):
    code = "E_UNBOUND"

    def __init__(self, name):
        super().__init__(f"unbound symbol {name!r}")
        self.name = name


class DomainError(GardnerError):
    code = "E_DOMAIN"


class ParseError(GardnerError):
    """Syntax error with a 1-based line/column and the set of expected tokens."""

    code = "E_SYNTAX"

    def __init__(self, message, line=1, column=1, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        where = f"line {line}, column {column}"
        if self.expected:
            message = f"{message} at {where}; expected one of {', '.join(self.expected)}"
        else:
            message = f"{message} at {where}"
        super().__init__(message)


class BadDerivativeError(ParseError):
    code = "E_BADDERIV"


class OrderError(GardnerError):
    code = "E_ORDER"


class NotExactError(GardnerError):
    """Raised by the inverse total derivative; ``obstruction`` is the nonzero Euler image."""

    code = "E_NOTEXACT"

    def __init__(self, message, obstruction=None):
        super().__init__(message)
        self.obstruction = obstruction


class ResidueError(GardnerError):
    code = "E_RESIDUE"


class ParamError(GardnerError):
    code = "E_PARAM"


class NoMatchError(GardnerError):
    code = "E_NOMATCH"


class NotSelfAdjointError(GardnerError):
    code = "E_NOTSELFADJ"


class NonPolynomialError(GardnerError):
    code = "E_NONPOLY"


class NotAssociatedError(GardnerError):
    code = "E_NOTASSOC"


class ExplicitSError(GardnerError):
    code = "E_EXPLICIT_S"


class BlowupError(GardnerError):
    code = "E_BLOWUP"

    def __init__(self, message, last_time=None):
        super().__init__(message)
        self.last_time = last_time


class TimeStepError(GardnerError):
    code = "E_DT"
