"""Symplectic structure: the J operator, loss-of-symplecticity metrics,
the residual blocks of a block lower-triangular factor, and the analytic
bounds that accompany them.

J = [[0, I], [-I, 0]] is never stored. Products with J are row-block swaps
with a sign flip, so they introduce no rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .errors import BoundInapplicableError, DegenerateInputError, DimensionError, StructureError
from .linalg import Matrix, as_matrix, matmul, transpose, two_norm

if TYPE_CHECKING:
    from .factor import BlockFactor

DEFAULT_TOL = 1e-10


def half_dim(x: Matrix) -> int:
    rows = x.shape[0]
    if rows % 2:
        raise DimensionError(f"expected an even number of rows, got {rows}")
    return rows // 2


@dataclass(frozen=True)
class BlockView:
    """2x2 block partition of a 2n x 2n matrix, conformal with J."""

    a11: Matrix
    a12: Matrix
    a21: Matrix
    a22: Matrix
    n: int

    @classmethod
    def of(cls, a: Matrix) -> "BlockView":
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionError(f"expected a square matrix, got shape {a.shape}")
        n = half_dim(a)
        return cls(a[:n, :n], a[:n, n:], a[n:, :n], a[n:, n:], n)

    def assemble(self) -> Matrix:
        return np.block([[self.a11, self.a12], [self.a21, self.a22]])


@dataclass(frozen=True)
class SymplecticDefect:
    delta: float
    symp_rel: float
    norm_x: float


@dataclass(frozen=True)
class FactorResidual:
    f11_norm: float
    f12_norm: float
    delta_l: float
    # (2,2) block of L^T J L - J is bit-exact zero
    f22_exact_zero: bool = True

    def sandwich_violation(self, rel_slack: float = 1e-12) -> float:
        """Amount by which max(|F11|,|F12|) <= Delta(L) <= 2 max(...) fails.

        Returns 0.0 when both sides hold with additive slack
        ``rel_slack * (1 + delta_l)``.
        """
        m = max(self.f11_norm, self.f12_norm)
        slack = rel_slack * (1.0 + self.delta_l)
        return max(0.0, m - self.delta_l - slack, self.delta_l - 2.0 * m - slack)


def apply_j(x: Matrix) -> Matrix:
    """J @ x = [x_bottom; -x_top]."""
    n = half_dim(x)
    return np.concatenate([x[n:], -x[:n]])


def residual_matrix(x: Matrix) -> Matrix:
    """x^T J x - J, with J subtracted entrywise on its two identity blocks."""
    n = half_dim(x)
    if x.shape[1] != 2 * n:
        raise DimensionError(f"expected a square matrix, got shape {x.shape}")
    r = matmul(transpose(x), apply_j(x))
    idx = np.arange(n)
    r[idx, idx + n] -= 1.0
    r[idx + n, idx] += 1.0
    return r


def loss_of_symplecticity(x: Matrix) -> float:
    """Delta(x) = ||x^T J x - J||_2 (absolute)."""
    return two_norm(residual_matrix(np.asarray(x, dtype=np.float64))).value


def symplecticity_defect(x: Matrix) -> SymplecticDefect:
    x = as_matrix(x)
    norm_x = two_norm(x).value
    if norm_x == 0.0:
        raise DegenerateInputError("relative loss of symplecticity is undefined for the zero matrix")
    delta = loss_of_symplecticity(x)
    return SymplecticDefect(delta=delta, symp_rel=delta / norm_x**2, norm_x=norm_x)


def is_symplectic(x: Matrix, tol: float = DEFAULT_TOL) -> bool:
    """x^T J x = J to within ``tol`` relative to ||x||^2."""
    return symplecticity_defect(x).symp_rel <= tol


def is_symplectic_blocklower(l: BlockView, tol: float) -> bool:
    """Block lower-triangular symplecticity: L22^T L11 = I and L21^T L11 symmetric."""
    if np.any(l.a12 != 0.0):
        raise StructureError("block (1,2) of a block lower-triangular matrix must be zero")
    eye = np.eye(l.n)
    inv_err = two_norm(l.a22.T @ l.a11 - eye).value
    sym_err = two_norm(l.a21.T @ l.a11 - l.a11.T @ l.a21).value
    return inv_err <= tol and sym_err <= tol


def is_orthogonal_symplectic(q: Matrix, tol: float) -> bool:
    """Block form [[C, S], [-S, C]] plus orthogonality."""
    b = BlockView.of(q)
    if two_norm(b.a11 - b.a22).value > tol or two_norm(b.a12 + b.a21).value > tol:
        return False
    return two_norm(q.T @ q - np.eye(q.shape[0])).value <= tol


def symplectic_inverse(a: Matrix) -> Matrix:
    """J^T a^T J, the inverse of a symplectic matrix (no symplecticity check).

    With M = J a^T, J^T a^T J = -M J = (J M^T)^T.
    """
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    m = apply_j(transpose(a))
    return transpose(apply_j(transpose(m)))


def residual_blocks(l11: Matrix, l21: Matrix, l22: Matrix) -> tuple[Matrix, Matrix]:
    """F11 = L11^T L21 - L21^T L11 and F12 = L11^T L22 - I."""
    f11 = l11.T @ l21 - l21.T @ l11
    f12 = l11.T @ l22 - np.eye(l11.shape[0])
    return f11, f12


def factor_residual(l: "BlockFactor") -> FactorResidual:
    l11, l21, l22 = l.l11.matrix, l.l21, l.l22.matrix
    f11, f12 = residual_blocks(l11, l21, l22)
    n = l11.shape[0]
    full = residual_matrix(l.assemble())
    return FactorResidual(
        f11_norm=two_norm(f11).value,
        f12_norm=two_norm(f12).value,
        delta_l=two_norm(full).value,
        f22_exact_zero=bool(np.all(full[n:, n:] == 0.0)),
    )


def kappa_bound(x: Matrix) -> float:
    """Upper bound ||x||^2 / (1 - Delta(x)) on kappa_2(x), valid when Delta(x) < 1."""
    d = symplecticity_defect(x)
    if not d.delta < 1.0:
        raise BoundInapplicableError(f"bound needs Delta(x) < 1, got {d.delta:.6g}")
    return d.norm_x**2 / (1.0 - d.delta)


def singular_with_defect(t: float, n: int) -> Matrix:
    """Singular X = diag(D, -D), D = sqrt(t-1) e1 e1^T, with Delta(X) = t.

    For n = 1 every 2x2 X satisfies X^T J X = det(X) J, so a singular X
    always has Delta(X) = 1; only t = 1 can be met there.
    """
    if not t >= 1.0:
        raise ValueError(f"t must be >= 1, got {t}")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n == 1 and t != 1.0:
        raise BoundInapplicableError(f"no singular 2x2 matrix has Delta = {t:g}; every singular 2x2 X has Delta(X) = 1")
    x = np.zeros((2 * n, 2 * n))
    d = math.sqrt(t - 1.0)
    x[0, 0] = d
    x[n, n] = -d
    return x


def perturbation_bound(norm_a: float, eps: float) -> float:
    """||A||^2 (2 eps + eps^2): bound on Delta(A + E) when A is symplectic and ||E|| <= eps ||A||."""
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    if not norm_a > 0.0:
        raise ValueError(f"norm_a must be positive, got {norm_a}")
    return norm_a**2 * (2.0 * eps + eps**2)


def inverse_residual(a: Matrix) -> float:
    """||A J^T A^T J - I||_2, small iff the symplectic inverse formula applies."""
    return two_norm(a @ symplectic_inverse(a) - np.eye(a.shape[0])).value

