"""Test-matrix families for the symplectic factorization experiments.

Random families draw from :class:`RngStream`, a PCG64 bit stream with
Box-Muller normals, so results are reproducible from an integer seed.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .cholesky import cholesky_lower, symmetrize
from .linalg import ComplexMatrix, Matrix, complex_qr_q, inverse

BETA_MAX_ORDER = 60
_TWO_POW_M53 = 2.0**-53


class RngStream:
    """Seeded stream of uniform (0, 1) and standard normal doubles.

    Uniforms take the top 53 bits of each PCG64 output and are shifted by
    half an ulp so 0 and 1 are never produced. Normals are Box-Muller
    pairs; an odd leftover is cached for the next call.
    """

    def __init__(self, seed: int | tuple[int, ...] = 0):
        self.seed = seed
        entropy = list(seed) if isinstance(seed, tuple) else seed
        self._bits = np.random.PCG64(np.random.SeedSequence(entropy))
        self._cached_normal: float | None = None

    @classmethod
    def derive(cls, master_seed: int, index: int) -> "RngStream":
        """Independent stream for row ``index`` of a sweep seeded by ``master_seed``."""
        return cls((master_seed, index))

    def uniform(self, size: int) -> np.ndarray:
        raw = self._bits.random_raw(size)
        return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * _TWO_POW_M53

    def normal(self, size: int) -> np.ndarray:
        out = np.empty(size)
        start = 0
        if size and self._cached_normal is not None:
            out[0] = self._cached_normal
            self._cached_normal = None
            start = 1
        remaining = size - start
        if remaining <= 0:
            return out
        pairs = (remaining + 1) // 2
        u = self.uniform(2 * pairs)
        radius = np.sqrt(-2.0 * np.log(u[0::2]))
        angle = 2.0 * np.pi * u[1::2]
        z = np.empty(2 * pairs)
        z[0::2] = radius * np.cos(angle)
        z[1::2] = radius * np.sin(angle)
        out[start:] = z[:remaining]
        if 2 * pairs > remaining:
            self._cached_normal = float(z[-1])
        return out

    def complex_normal(self, n: int) -> ComplexMatrix:
        """n x n matrix with independent N(0,1) real and imaginary parts (real drawn first)."""
        re = self.normal(n * n).reshape(n, n)
        im = self.normal(n * n).reshape(n, n)
        return re + 1j * im


def s_of_t(t: float) -> Matrix:
    """The 4x4 symplectic matrix S(t) built from cosh t and sinh t."""
    try:
        c, s = math.cosh(t), math.sinh(t)
    except OverflowError:
        raise OverflowError(f"cosh({t}) overflows double precision") from None
    return np.array(
        [
            [c, s, 0.0, s],
            [s, c, s, 0.0],
            [0.0, 0.0, c, -s],
            [0.0, 0.0, -s, c],
        ]
    )


def hilbert(m: int) -> Matrix:
    if m < 1:
        raise ValueError(f"order must be positive, got {m}")
    i = np.arange(m)
    return 1.0 / (i[:, None] + i[None, :] + 1.0)


def beta_matrix(m: int) -> Matrix:
    """B[i, j] = 1 / beta(i, j) = (i+j-1)! / ((i-1)! (j-1)!), 1-based.

    Entries come from the exact integer recurrence
    B[i, j] = B[i, j-1] (i+j-1) / (j-1) and are rounded once to float.
    """
    if not 1 <= m <= BETA_MAX_ORDER:
        raise ValueError(f"beta matrix order must be in [1, {BETA_MAX_ORDER}], got {m}")
    rows = []
    for i in range(1, m + 1):
        row = [i]
        for j in range(2, m + 1):
            row.append(row[-1] * (i + j - 1) // (j - 1))
        rows.append(row)
    return np.array([[float(v) for v in row] for row in rows])


def orth_symp(n: int, rng: RngStream) -> Matrix:
    """Random orthogonal symplectic [[C, S], [-S, C]] from the QR of a complex Gaussian."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    u = complex_qr_q(rng.complex_normal(n))
    c, s = u.real, u.imag
    return np.block([[c, s], [-s, c]])


def _spectral_symplectic(d: np.ndarray, rng: RngStream) -> Matrix:
    g = np.concatenate([d, 1.0 / d])
    u = orth_symp(d.size, rng)
    a = (u * g) @ u.T
    return (a + a.T) / 2.0


def log_spectrum(n: int, s: float) -> np.ndarray:
    """n values from 10**s down to 1, log-spaced; a single value is 10**s."""
    if n == 1:
        return np.array([10.0**s])
    return np.logspace(0.0, s, n)[::-1].copy()


def gener_symp2(n: int, s: float, rng: RngStream) -> Matrix:
    """SPD symplectic U diag(d, 1/d) U^T with kappa_2 = 10**(2 s)."""
    if n < 1 or s < 0:
        raise ValueError(f"need n >= 1 and s >= 0, got n={n}, s={s}")
    return _spectral_symplectic(log_spectrum(n, s), rng)


def random_spectrum_symplectic(n: int, rng: RngStream) -> Matrix:
    """SPD symplectic U diag(d, 1/d) U^T with d uniform on (0, 1)."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    d = rng.uniform(n)
    return _spectral_symplectic(d, rng)


def lemma4_construct(g: Matrix, c: Matrix) -> Matrix:
    """A = P diag(G, G^{-1}) P^T with P = [[I, 0], [C, I]].

    G must be SPD and C symmetric; A is then SPD and symplectic.
    """
    g = symmetrize(g)
    c = symmetrize(c)
    if g.shape != c.shape:
        raise ValueError(f"G and C shapes differ: {g.shape} vs {c.shape}")
    cholesky_lower(g)
    n = g.shape[0]
    g_inv = inverse(g)
    g_inv = (g_inv + g_inv.T) / 2.0
    eye, zero = np.eye(n), np.zeros((n, n))
    p = np.block([[eye, zero], [c, eye]])
    d = np.block([[g, zero], [zero, g_inv]])
    a = p @ d @ p.T
    return (a + a.T) / 2.0


def beta_hilbert_symplectic(n: int, swap_roles: bool = False) -> Matrix:
    """Block-congruence matrix with G = beta_matrix(n), C = hilbert(n) (or swapped)."""
    g, c = beta_matrix(n), hilbert(n)
    if swap_roles:
        g, c = c, g
    return lemma4_construct(g, c)


def perturbed_symplectic(n: int, s: float, t: float, rng: RngStream) -> Matrix:
    """gener_symp2(n, s) + t * hilbert(2n): SPD but not symplectic for t > 0."""
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    a = gener_symp2(n, s, rng)
    if t == 0:
        return a
    return a + t * hilbert(2 * n)


FAMILIES = ("s_of_t", "gener_symp2", "lemma4", "spectrum", "perturbed")


@dataclass
class GeneratorSpec:
    """Replayable description of one generated matrix."""

    family: str
    n: int | None = None
    s: float | None = None
    t: float | None = None
    seed: int = 0
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        need = {
            "s_of_t": ("t",),
            "gener_symp2": ("n", "s"),
            "lemma4": ("n",),
            "spectrum": ("n",),
            "perturbed": ("n", "s", "t"),
        }[self.family]
        missing = [k for k in need if getattr(self, k) is None]
        if missing:
            raise ValueError(f"family {self.family!r} needs parameters {missing}")

    def build(self) -> Matrix:
        rng = RngStream(self.seed)
        if self.family == "s_of_t":
            m = s_of_t(self.t)
            return m.T @ m if self.options.get("gram") else m
        if self.family == "gener_symp2":
            return gener_symp2(self.n, self.s, rng)
        if self.family == "lemma4":
            return beta_hilbert_symplectic(self.n, bool(self.options.get("swap_roles", False)))
        if self.family == "spectrum":
            return random_spectrum_symplectic(self.n, rng)
        return perturbed_symplectic(self.n, self.s, self.t, rng)

    def to_json(self) -> str:
        d = {k: v for k, v in asdict(self).items() if v is not None and k != "options"}
        d.update(self.options)
        return json.dumps(d, sort_keys=True)

    @classmethod
    def from_json(cls, text: str, family: str | None = None) -> "GeneratorSpec":
        d = json.loads(text) if text else {}
        if family is not None:
            d["family"] = family
        known = {"family", "n", "s", "t", "seed"}
        opts = {k: v for k, v in d.items() if k not in known}
        return cls(
            family=d["family"],
            n=None if d.get("n") is None else int(d["n"]),
            s=None if d.get("s") is None else float(d["s"]),
            t=None if d.get("t") is None else float(d["t"]),
            seed=int(d.get("seed", 0)),
            options=opts,
        )
