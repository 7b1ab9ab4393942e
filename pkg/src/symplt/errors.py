"""Exception hierarchy shared by every module."""


class SympltError(Exception):
    """Base class for library errors."""


class DimensionError(SympltError, ValueError):
    pass


class SymmetryError(SympltError, ValueError):
    pass


class StructureError(SympltError, ValueError):
    pass


class SingularMatrixError(SympltError, ArithmeticError):
    """A pivot or triangular diagonal entry is exactly zero (or non-finite)."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class NotPositiveDefiniteError(SympltError, ArithmeticError):
    """Cholesky met a nonpositive pivot. ``index`` is 0-based."""

    def __init__(self, message, index):
        super().__init__(message)
        self.index = index


class DegenerateInputError(SympltError, ValueError):
    pass


class BoundInapplicableError(SympltError, ValueError):
    pass


class MatrixFormatError(SympltError, ValueError):
    pass
