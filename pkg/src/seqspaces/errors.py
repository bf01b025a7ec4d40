"""Exception hierarchy shared by every module."""


class SeqSpaceError(Exception):
    """Base class for all errors raised by this package."""


class LiteralError(SeqSpaceError, ValueError):
    """A sequence, operator or space literal failed to parse."""

    def __init__(self, token, grammar):
        self.token = token
        self.grammar = grammar
        super().__init__(f"cannot parse {token!r}; expected {grammar}")


class NonComputableRow(SeqSpaceError):
    """A row sum would need infinitely many terms with no closed form."""


class InfiniteRowSupport(SeqSpaceError):
    """A tail sum was requested on a row with unbounded support."""


class SingularDiagonal(SeqSpaceError, ZeroDivisionError):
    """Forward substitution hit a zero diagonal entry."""


class NotSummable(SeqSpaceError):
    """The requested series has no exact rational value in this kit."""


class NotNormable(SeqSpaceError):
    """The sequence is not in the space, or the space has no norm here."""


class RowNotInDual(SeqSpaceError):
    """Some row of a matrix fails the beta-dual precondition."""


class UnknownSuite(SeqSpaceError, KeyError):
    pass
