"""Exception types shared across the toolkit."""


class UnboundVariable(LookupError):
    def __init__(self, name):
        super().__init__(f"variable {name!r} is not bound by the assignment")
        self.name = name


class BoundOrder(ValueError):
    pass


class ConstantOutOfRange(ValueError):
    pass


class FormulaSyntaxError(ValueError):
    """Raised by the formula/instance parser; carries 1-based line and column."""

    def __init__(self, message, line=1, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class MalformedDimacs(ValueError):
    def __init__(self, message, line):
        super().__init__(f"line {line}: {message}")
        self.line = line


class UnsupportedRelation(ValueError):
    pass


class BoundRange(ValueError):
    pass


class DomainBlowup(ValueError):
    pass


class TooLarge(ValueError):
    pass


class NotSimpleForm(ValueError):
    pass


class InconsistentDecode(RuntimeError):
    pass


class WitnessMismatch(AssertionError):
    """A solver returned a witness that does not re-verify. Never expected."""
