"""Exception hierarchy shared by all modules."""


class GcError(Exception):
    """Base class for every error raised by gccodes."""


# field construction / arithmetic
class BadDegree(GcError, ValueError):
    pass


class NonPrimitivePolynomial(GcError, ValueError):
    pass


class DivideByZero(GcError, ZeroDivisionError):
    pass


# matrices
class BadDimensions(GcError, ValueError):
    pass


class FieldMismatch(GcError, ValueError):
    pass


class RankDeficient(GcError, ArithmeticError):
    pass


class Singular(RankDeficient):
    pass


# code definition
class NotNonDecreasing(GcError, ValueError):
    pass


class OutOfRange(GcError, ValueError):
    pass


class LengthExceedsField(GcError, ValueError):
    pass


class ProfileTooTall(GcError, ValueError):
    pass


class ShapeMismatch(GcError, ValueError):
    pass


# codec
class Uncorrectable(GcError):
    """The erasure pattern (or the result) is outside what the decoder handles."""


class InvalidPlacement(GcError, ValueError):
    pass


# oracle
class BudgetExceeded(GcError):
    pass


# text formats
class ParseError(GcError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
