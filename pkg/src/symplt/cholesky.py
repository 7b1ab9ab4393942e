"""Cholesky and Reverse Cholesky decompositions of SPD matrices."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import NotPositiveDefiniteError, StructureError, SymmetryError
from .linalg import Matrix, _require_square, as_matrix, forward_substitution, reversal_permute

SYMMETRY_RTOL = 1e-12


class Orientation(enum.Enum):
    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True)
class TriangularFactor:
    matrix: Matrix
    orientation: Orientation

    def __post_init__(self):
        m = self.matrix
        _require_square(m, "triangular factor")
        off = np.triu(m, 1) if self.orientation is Orientation.LOWER else np.tril(m, -1)
        if np.any(off != 0.0):
            raise StructureError(f"{self.orientation.value} factor has nonzero entries in its zero triangle")
        if not np.all(np.diag(m) > 0.0):
            raise StructureError("triangular factor must have a positive diagonal")

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def symmetrize(m: Matrix, rtol: float = SYMMETRY_RTOL) -> Matrix:
    """Check ``m`` is symmetric to relative ``rtol`` and return (m + m^T)/2."""
    m = as_matrix(m)
    _require_square(m)
    scale = float(np.max(np.abs(m)))
    asym = float(np.max(np.abs(m - m.T)))
    if asym > rtol * scale:
        raise SymmetryError(f"matrix is not symmetric: max|M - M^T| = {asym:.3e}, max|M| = {scale:.3e}")
    return (m + m.T) / 2.0


def cholesky_lower(m: Matrix) -> TriangularFactor:
    """M = L L^T by the right-looking (outer-product) algorithm.

    Raises NotPositiveDefiniteError with the 0-based index of the first
    pivot that is not strictly positive (NaN included).
    """
    a = symmetrize(m)
    n = a.shape[0]
    l = np.zeros_like(a)
    for k in range(n):
        pivot = a[k, k]
        if not pivot > 0.0:
            raise NotPositiveDefiniteError(f"nonpositive pivot {pivot:.6g} at index {k}", k)
        d = math.sqrt(pivot)
        l[k, k] = d
        col = a[k + 1 :, k] / d
        l[k + 1 :, k] = col
        a[k + 1 :, k + 1 :] -= np.outer(col, col)
    return TriangularFactor(l, Orientation.LOWER)


def reverse_cholesky(m: Matrix) -> TriangularFactor:
    """M = U U^T with U upper triangular, via Cholesky of the reversed matrix."""
    try:
        low = cholesky_lower(reversal_permute(as_matrix(m)))
    except NotPositiveDefiniteError as exc:
        n = np.shape(m)[0]
        raise NotPositiveDefiniteError(
            f"reverse Cholesky: nonpositive pivot at index {n - 1 - exc.index}", n - 1 - exc.index
        ) from None
    return TriangularFactor(reversal_permute(low.matrix), Orientation.UPPER)


def invert_lower_transpose(l: TriangularFactor) -> Matrix:
    """Return L^{-T}: solve L X = I column by column, then transpose."""
    if l.orientation is not Orientation.LOWER:
        raise StructureError("invert_lower_transpose expects a lower factor")
    x = forward_substitution(l.matrix, np.eye(l.n))
    return np.triu(x.T)
