"""Exception hierarchy. Every error carries a machine-readable ``code``."""


class InternalityError(Exception):
    code = "error"


class DomainError(InternalityError, ValueError):
    """An operation received a value outside its mathematical domain."""

    code = "domain-error"


class DivisionByZeroError(DomainError, ZeroDivisionError):
    code = "division-by-zero"


class UnsupportedInputError(InternalityError, ValueError):
    """Input is well formed but outside the class the procedure decides."""

    code = "unsupported-input"


class PreconditionError(InternalityError, ValueError):
    code = "precondition"


class HypothesisViolation(InternalityError, ValueError):
    """A theorem hypothesis (e.g. ``f != 0``) does not hold."""

    code = "hypothesis-violation"


class ContextError(InternalityError, KeyError):
    """An expression refers to a name the differential context does not declare."""

    code = "context-error"

    def __str__(self):
        return Exception.__str__(self)


class ParseError(InternalityError, SyntaxError):
    code = "syntax-error"

    def __init__(self, message, position=None, source=None):
        self.position = position
        self.source = source
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class UndeclaredIdentifierError(ParseError):
    code = "undeclared-identifier"


class VerificationError(InternalityError, AssertionError):
    """A certificate failed exact re-verification."""

    code = "verification-failed"
