"""Dense real matrix kernels: products, triangular and LU solves, spectral
norms, condition numbers, and the complex Householder QR used by the
orthogonal-symplectic generator.

Matrices are plain ``numpy.ndarray`` objects of dtype float64 (complex128
for the QR input). Every routine here is a pure function of its inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numpy.typing import NDArray

from .errors import DimensionError, MatrixFormatError, SingularMatrixError

Matrix = NDArray[np.float64]
ComplexMatrix = NDArray[np.complex128]

NORM_TOL = 1e-12
NORM_MAX_ITER = 5000


def as_matrix(a, *, name: str = "matrix") -> Matrix:
    """Coerce to a 2-D float64 array and reject NaN/Inf entries."""
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise DimensionError(f"{name} must be a nonempty 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise MatrixFormatError(f"{name} has non-finite entries")
    return arr


def _require_square(a: np.ndarray, name: str = "matrix") -> int:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {a.shape}")
    return a.shape[0]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def transpose(a: Matrix) -> Matrix:
    return np.ascontiguousarray(a.T)


def forward_substitution(l: Matrix, b: Matrix) -> Matrix:
    """Solve ``l @ X = b`` for lower-triangular ``l``.

    ``b`` may hold several right-hand sides; each column is solved
    independently (the row sweep below just advances all columns at once).
    Only the lower triangle of ``l`` is read.
    """
    n = _require_square(l, "l")
    b = np.asarray(b, dtype=np.float64)
    vector = b.ndim == 1
    if vector:
        b = b.reshape(-1, 1)
    if b.shape[0] != n:
        raise DimensionError(f"right-hand side has {b.shape[0]} rows, expected {n}")
    diag = np.diag(l)
    bad = np.flatnonzero(~np.isfinite(diag) | (diag == 0.0))
    if bad.size:
        raise SingularMatrixError(
            f"triangular matrix has zero or non-finite diagonal at index {bad[0]}", int(bad[0])
        )
    x = np.empty_like(b)
    for i in range(n):
        x[i] = (b[i] - l[i, :i] @ x[:i]) / diag[i]
    return x[:, 0] if vector else x


@dataclass(frozen=True)
class NormReport:
    value: float
    iterations: int
    converged: bool

    def __float__(self) -> float:
        return self.value


def two_norm(a: Matrix) -> NormReport:
    """Spectral norm: the largest singular value (LAPACK SVD, values only)."""
    a = np.asarray(a, dtype=np.float64)
    if not np.all(np.isfinite(a)):
        raise MatrixFormatError("two_norm: matrix has non-finite entries")
    if a.size == 0 or not np.any(a):
        return NormReport(0.0, 0, True)
    return NormReport(float(np.linalg.svd(a, compute_uv=False)[0]), 0, True)


def power_iteration_norm(a: Matrix, tol: float = NORM_TOL, max_iter: int = NORM_MAX_ITER) -> NormReport:
    """Spectral norm by power iteration on ``a.T @ a``.

    ``a.T @ a`` is never formed; each step costs two matrix-vector
    products. The start vector is all ones, normalized, and the iteration
    stops once successive Rayleigh quotients agree to relative ``tol``.
    Estimates approach the norm from below. With clustered top singular
    values the stopping test fires early, so this is kept as a cheap
    independent check on :func:`two_norm` rather than the default.
    """
    a = np.asarray(a, dtype=np.float64)
    if not np.all(np.isfinite(a)):
        raise MatrixFormatError("power_iteration_norm: matrix has non-finite entries")
    if a.size == 0 or not np.any(a):
        return NormReport(0.0, 0, True)
    ncols = a.shape[1]
    x = np.full(ncols, 1.0 / math.sqrt(ncols))
    y = a @ x
    if not np.any(y):
        # all-ones start lies in the null space; restart on the heaviest column
        x = np.zeros(ncols)
        x[int(np.argmax(np.einsum("ij,ij->j", a, a)))] = 1.0
        y = a @ x
    lam_prev = float(y @ y)
    for it in range(1, max_iter + 1):
        z = a.T @ y
        x = z / np.linalg.norm(z)
        y = a @ x
        lam = float(y @ y)
        if abs(lam - lam_prev) <= tol * lam:
            return NormReport(math.sqrt(lam), it, True)
        lam_prev = lam
    return NormReport(math.sqrt(lam_prev), max_iter, False)


def lu_factor(a: Matrix) -> tuple[Matrix, NDArray[np.intp]]:
    """LU with partial pivoting. Returns the packed factors and row order."""
    n = _require_square(a, "a")
    lu = np.array(a, dtype=np.float64, copy=True)
    perm = np.arange(n)
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if lu[p, k] == 0.0:
            raise SingularMatrixError(f"exact zero pivot in column {k}", k)
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
        lu[k + 1 :, k] /= lu[k, k]
        lu[k + 1 :, k + 1 :] -= np.outer(lu[k + 1 :, k], lu[k, k + 1 :])
    return lu, perm


def lu_solve(a: Matrix, b: Matrix) -> Matrix:
    lu, perm = lu_factor(a)
    n = lu.shape[0]
    b = np.asarray(b, dtype=np.float64)
    vector = b.ndim == 1
    if vector:
        b = b.reshape(-1, 1)
    if b.shape[0] != n:
        raise DimensionError(f"right-hand side has {b.shape[0]} rows, expected {n}")
    y = b[perm].copy()
    for i in range(1, n):
        y[i] -= lu[i, :i] @ y[:i]
    for i in range(n - 1, -1, -1):
        y[i] = (y[i] - lu[i, i + 1 :] @ y[i + 1 :]) / lu[i, i]
    return y[:, 0] if vector else y


def inverse(a: Matrix) -> Matrix:
    return lu_solve(a, np.eye(a.shape[0]))


def condition_number(a: Matrix) -> float:
    """kappa_2(a) = ||a||_2 * ||a^{-1}||_2, with the inverse from LU."""
    _require_square(a, "a")
    return two_norm(a).value * two_norm(inverse(a)).value


def complex_qr_q(m: ComplexMatrix) -> ComplexMatrix:
    """Unitary factor of a Householder QR of a square complex matrix.

    Reflectors follow the LAPACK sign convention (the new diagonal entry
    of R is ``-phase(x0) * ||x||``); Q is not column-normalized.
    """
    a = np.array(m, dtype=np.complex128, copy=True)
    n = _require_square(a, "m")
    q = np.eye(n, dtype=np.complex128)
    for j in range(n - 1):
        x = a[j:, j]
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x.copy()
        v[0] += phase * alpha
        v /= np.linalg.norm(v)
        a[j:, j:] -= 2.0 * np.outer(v, v.conj() @ a[j:, j:])
        q[:, j:] -= 2.0 * np.outer(q[:, j:] @ v, v.conj())
    return q


def reversal_permute(m: Matrix) -> Matrix:
    """P^T M P with P the index-reversal permutation."""
    _require_square(m, "m")
    return np.ascontiguousarray(m[::-1, ::-1])


def read_matrix_csv(path) -> Matrix:
    """Read a header-less comma-separated matrix, one row per line."""
    text = Path(path).read_text(encoding="utf-8")
    rows = [line for line in text.splitlines() if line.strip()]
    if not rows:
        raise MatrixFormatError(f"{path}: empty matrix file")
    try:
        data = [[float(tok) for tok in line.split(",")] for line in rows]
    except ValueError as exc:
        raise MatrixFormatError(f"{path}: {exc}") from None
    width = len(data[0])
    if any(len(r) != width for r in data):
        raise MatrixFormatError(f"{path}: ragged rows")
    return as_matrix(data, name=str(path))


def format_matrix_csv(a: Matrix) -> str:
    return "".join(",".join(format(float(v), ".17g") for v in row) + "\n" for row in a)


def write_matrix_csv(path, a: Matrix) -> None:
    Path(path).write_text(format_matrix_csv(np.atleast_2d(a)), encoding="utf-8")
