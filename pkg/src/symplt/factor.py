"""Symplectic LL^T factorization of SPD symplectic matrices.

Both algorithms share the first two steps,

    A11 = L11 L11^T                  (Cholesky)
    L11 L21^T = A12                  (forward substitution)

and differ only in L22:

    W1:  L22 = L11^{-T}              ~ 5/3 n^3 flops
    W2:  S = A22 - L21 L21^T,  S = L22 L22^T (Reverse Cholesky)
                                     ~ 8/3 n^3 flops

For a symplectic SPD input both give the same L in exact arithmetic.
In floating point W2 keeps the decomposition error at roundoff level while
W1 loses accuracy as A11 becomes ill-conditioned; W1 in exchange tends to
keep the computed factor closer to symplectic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .cholesky import (
    Orientation,
    TriangularFactor,
    cholesky_lower,
    invert_lower_transpose,
    reverse_cholesky,
    symmetrize,
)
from .linalg import Matrix, condition_number, forward_substitution, matmul, transpose, two_norm
from .symplectic import BlockView, FactorResidual, factor_residual


class Algorithm(enum.Enum):
    W1 = "w1"
    W2 = "w2"


@dataclass(frozen=True)
class BlockFactor:
    l11: TriangularFactor
    l21: Matrix
    l22: TriangularFactor

    def __post_init__(self):
        if self.l11.orientation is not Orientation.LOWER:
            raise ValueError("l11 must be a lower factor")
        if self.l22.orientation is not Orientation.UPPER:
            raise ValueError("l22 must be an upper factor")

    @property
    def n(self) -> int:
        return self.l11.n

    def assemble(self) -> Matrix:
        n = self.n
        return np.block([[self.l11.matrix, np.zeros((n, n))], [self.l21, self.l22.matrix]])

    def blocks(self) -> BlockView:
        n = self.n
        return BlockView(self.l11.matrix, np.zeros((n, n)), self.l21, self.l22.matrix, n)


@dataclass(frozen=True)
class FactorizationOutput:
    factor: BlockFactor
    algorithm: Algorithm
    dec: float
    residual: FactorResidual


def decomposition_error(a: Matrix, l: Matrix) -> float:
    """dec = ||A - L L^T||_2 / ||A||_2."""
    return two_norm(a - matmul(l, transpose(l))).value / two_norm(a).value


def _leading_blocks(a: Matrix) -> tuple[BlockView, TriangularFactor, Matrix]:
    blocks = BlockView.of(symmetrize(a))
    l11 = cholesky_lower(blocks.a11)
    l21 = transpose(forward_substitution(l11.matrix, blocks.a12))
    return blocks, l11, l21


def _schur(a22: Matrix, l21: Matrix) -> Matrix:
    s = a22 - matmul(l21, transpose(l21))
    return (s + s.T) / 2.0


def schur_complement(a: BlockView) -> Matrix:
    """S = A22 - A12^T A11^{-1} A12, evaluated as A22 - L21 L21^T."""
    l11 = cholesky_lower(a.a11)
    l21 = transpose(forward_substitution(l11.matrix, a.a12))
    return _schur(a.a22, l21)


def _finish(a: Matrix, factor: BlockFactor, algorithm: Algorithm) -> FactorizationOutput:
    return FactorizationOutput(
        factor=factor,
        algorithm=algorithm,
        dec=decomposition_error(a, factor.assemble()),
        residual=factor_residual(factor),
    )


def factor_w1(a: Matrix) -> FactorizationOutput:
    _, l11, l21 = _leading_blocks(a)
    l22 = TriangularFactor(invert_lower_transpose(l11), Orientation.UPPER)
    return _finish(a, BlockFactor(l11, l21, l22), Algorithm.W1)


def factor_w2(a: Matrix) -> FactorizationOutput:
    blocks, l11, l21 = _leading_blocks(a)
    l22 = reverse_cholesky(_schur(blocks.a22, l21))
    return _finish(a, BlockFactor(l11, l21, l22), Algorithm.W2)


def factorize(a: Matrix, algorithm: Algorithm | str) -> FactorizationOutput:
    algorithm = Algorithm(algorithm.lower()) if isinstance(algorithm, str) else algorithm
    return factor_w1(a) if algorithm is Algorithm.W1 else factor_w2(a)


def verify_theorem2(a: Matrix, out: FactorizationOutput, tol: float) -> bool:
    """Check L22 = L11^{-T} to within ``tol * kappa_2(A11)``."""
    l11 = out.factor.l11
    gap = two_norm(out.factor.l22.matrix - invert_lower_transpose(l11)).value
    n = l11.n
    return gap <= tol * condition_number(np.asarray(a)[:n, :n])
