"""Exception hierarchy shared by every module of the package."""


class SeifertError(Exception):
    """Base class for all errors raised by sseq."""


class NonSquare(SeifertError, ValueError):
    pass


class DimensionMismatch(SeifertError, ValueError):
    pass


class NotSymmetric(SeifertError, ValueError):
    pass


class InvalidMatrix(SeifertError, ValueError):
    """An ordered Seifert matrix failed strict validation."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotAConwayPolynomial(SeifertError, ValueError):
    pass


class ComponentCountMismatch(SeifertError, ValueError):
    pass


# -- move preconditions ---------------------------------------------------

class MoveError(SeifertError, ValueError):
    """A move was not applicable to the matrix it was applied to."""


class NotUnimodular(MoveError):
    pass


class NotBlockShaped(MoveError):
    """A congruence does not fix the boundary block; it is classical only."""


class VectorLengthMismatch(MoveError):
    pass


class BoundaryEntriesDiffer(MoveError):
    pass


class PatternMismatch(MoveError):
    pass


class SizeUnderflow(MoveError):
    pass


class ReplayError(SeifertError):
    """Replaying a move sequence failed at ``index``."""

    def __init__(self, index, cause):
        super().__init__(f"move {index} failed: {type(cause).__name__}: {cause}")
        self.index = index
        self.cause = cause


# -- normalization / factorization ----------------------------------------

class NotNormalized(SeifertError, ValueError):
    pass


class RewriteError(SeifertError):
    """A rewritten move triple did not replay to the expected matrix."""


class NotBlockForm(SeifertError, ValueError):
    pass


class SNotSymplectic(SeifertError, ValueError):
    pass


# -- documents -------------------------------------------------------------

class ParseError(SeifertError, ValueError):
    def __init__(self, message, field=None, line=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.field = field
        self.line = line


class ValidationError(SeifertError, ValueError):
    def __init__(self, message, invariant=None):
        super().__init__(message)
        self.invariant = invariant


class ReportIOError(SeifertError, OSError):
    pass
