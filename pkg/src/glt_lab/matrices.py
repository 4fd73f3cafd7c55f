"""Generators for every structured matrix family used in the laboratory.

All generators return dense complex n x n arrays and are pure: the same size
always yields the same matrix.  The locally-structured operators split n into
m = floor(sqrt(n)) blocks of size floor(n/m) plus a trailing zero block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import DomainError, EvalError, UnknownNameError
from .symbols import FuncExpr, GltExpr, TrigPoly

__all__ = [
    "BlockLayout",
    "MatrixSeq",
    "block_layout",
    "toeplitz",
    "diag_sampling",
    "circulant",
    "circulant_spectrum",
    "fourier_matrix",
    "lt_op",
    "lc_op",
    "q_block",
    "d_af",
    "d_grid",
    "counterexample",
    "COUNTEREXAMPLES",
    "toeplitz_seq",
    "diag_seq",
    "circulant_seq",
    "lt_seq",
    "lc_seq",
    "glt_product_seq",
    "counterexample_seq",
    "identity_seq",
    "zero_seq",
]


@dataclass(frozen=True)
class BlockLayout:
    """Block partition n = m * block + t with m = floor(sqrt(n))."""

    n: int
    m: int
    block: int
    t: int

    def __post_init__(self):
        assert self.m == math.isqrt(self.n)
        assert self.block == self.n // self.m
        assert self.t == self.n - self.m * self.block


def block_layout(n: int) -> BlockLayout:
    if n < 1:
        raise DomainError("size must be positive")
    m = math.isqrt(n)
    return BlockLayout(n, m, n // m, n - m * (n // m))


@dataclass(frozen=True)
class MatrixSeq:
    """A named matrix sequence: a pure map from size n to a dense n x n matrix.

    `symbol` optionally attaches the symbol the sequence is expected to
    distribute like (a GltExpr, TrigPoly, FuncExpr or sampled grid).
    """

    name: str
    generator: object
    symbol: object = None
    info: dict = field(default_factory=dict)

    def __call__(self, n: int) -> np.ndarray:
        A = np.asarray(self.generator(n), dtype=complex)
        if A.shape != (n, n):
            raise ValueError(f"{self.name}: generator returned shape {A.shape} for n={n}")
        return A

    def shifted(self, c: complex) -> "MatrixSeq":
        """The sequence A_n - c*I_n."""
        c = complex(c)
        return MatrixSeq(
            name=f"{self.name} - ({c})*I",
            generator=lambda n: self(n) - c * np.eye(n, dtype=complex),
            symbol=None,
            info=dict(self.info),
        )


def toeplitz(f: TrigPoly, n: int) -> np.ndarray:
    """Toeplitz matrix [f_{i-j}]: banded with bandwidth = degree of f."""
    if n < 1:
        raise DomainError("size must be positive")
    d = f.degree
    col = np.zeros(n, dtype=complex)
    row = np.zeros(n, dtype=complex)
    for s in range(min(d, n - 1) + 1):
        col[s] = f.coeff(s)
        row[s] = f.coeff(-s)
    return scipy.linalg.toeplitz(col, row)


def diag_sampling(a: FuncExpr, n: int) -> np.ndarray:
    """Diagonal matrix diag(a(1/n), a(2/n), ..., a(1))."""
    if n < 1:
        raise DomainError("size must be positive")
    nodes = np.arange(1, n + 1) / n
    vals = np.broadcast_to(a(x=nodes), nodes.shape)
    if not np.isfinite(vals).all():
        bad = nodes[~np.isfinite(vals)][0]
        raise EvalError(f"{a.source!r} is non-finite at x={bad}")
    return np.diag(vals.astype(complex))


def _cycle_power(n: int, k: int) -> np.ndarray:
    """Permutation matrix with ones at (i, i-k mod n)."""
    P = np.zeros((n, n))
    P[np.arange(n), (np.arange(n) - k) % n] = 1.0
    return P


def circulant(f: TrigPoly, n: int) -> np.ndarray:
    """Circulant matrix sum_k f_k C^k, C the downward cyclic shift.

    C places f_k on the same diagonals as the Toeplitz matrix (entry (i,j)
    carries f_{i-j} whenever |i-j| <= degree), so the two differ only in the
    wrapped corner entries.  Requires n > 2*degree so the band wraps without
    aliasing.
    """
    d = f.degree
    if n <= 2 * d:
        raise DomainError(f"circulant needs n > 2*degree, got n={n}, degree={d}")
    M = np.zeros((n, n), dtype=complex)
    for k in range(-d, d + 1):
        c = f.coeff(k)
        if c != 0:
            M += c * _cycle_power(n, k)
    return M


def circulant_spectrum(f: TrigPoly, n: int) -> np.ndarray:
    """Diagonal of circulant eigenvalues: diag(f(2*pi*k/n)), k = 0..n-1."""
    if n < 1:
        raise DomainError("size must be positive")
    theta = 2 * np.pi * np.arange(n) / n
    return np.diag(f(theta))


def fourier_matrix(n: int) -> np.ndarray:
    """Unitary Fourier matrix F with F^H diag(f(2 pi k/n)) F = circulant(f).

    Entry (j, k) is omega^(jk)/sqrt(n) with omega = e^(2 pi i/n).
    """
    if n < 1:
        raise DomainError("size must be positive")
    j = np.arange(n)
    return np.exp(2j * np.pi * np.outer(j, j) / n) / math.sqrt(n)


def _block_values(a: FuncExpr, m: int) -> np.ndarray:
    nodes = np.arange(1, m + 1) / m
    vals = np.broadcast_to(a(x=nodes), nodes.shape)
    if not np.isfinite(vals).all():
        bad = nodes[~np.isfinite(vals)][0]
        raise EvalError(f"{a.source!r} is non-finite at x={bad}")
    return vals.astype(complex)


def _assemble_blocks(blocks, n: int) -> np.ndarray:
    M = np.zeros((n, n), dtype=complex)
    pos = 0
    for B in blocks:
        p = B.shape[0]
        M[pos : pos + p, pos : pos + p] = B
        pos += p
    return M


def lt_op(a: FuncExpr, f: TrigPoly, n: int) -> np.ndarray:
    """Locally Toeplitz operator: blocks a(i/m) T_block(f), then a zero block."""
    if n < 4:
        raise DomainError("locally Toeplitz operator needs n >= 4")
    lay = block_layout(n)
    T = toeplitz(f, lay.block)
    vals = _block_values(a, lay.m)
    return _assemble_blocks([v * T for v in vals], n)


def lc_op(a: FuncExpr, f: TrigPoly, n: int) -> np.ndarray:
    """Locally circulant operator: blocks a(i/m) C_block(f), then a zero block.

    Normal by construction (each block is circulant).
    """
    if n < 4:
        raise DomainError("locally circulant operator needs n >= 4")
    lay = block_layout(n)
    if lay.block <= 2 * f.degree:
        raise DomainError(
            f"block size {lay.block} must exceed 2*degree={2 * f.degree} at n={n}"
        )
    C = circulant(f, lay.block)
    vals = _block_values(a, lay.m)
    return _assemble_blocks([v * C for v in vals], n)


def q_block(n: int) -> np.ndarray:
    """Block unitary diag(F_block, ..., F_block, I_t): independent of a and f."""
    if n < 4:
        raise DomainError("block Fourier matrix needs n >= 4")
    lay = block_layout(n)
    F = fourier_matrix(lay.block)
    Q = np.zeros((n, n), dtype=complex)
    for i in range(lay.m):
        Q[i * lay.block : (i + 1) * lay.block, i * lay.block : (i + 1) * lay.block] = F
    for i in range(lay.m * lay.block, n):
        Q[i, i] = 1.0
    return Q


def d_af(a: FuncExpr, f: TrigPoly, n: int) -> np.ndarray:
    """Diagonal factor of the locally circulant operator.

    Entries are a(i/m) * f(j*2pi/block) in block order, then t zeros: a
    uniform sampling of a(x) f(theta) over the rectangle domain.
    """
    if n < 4:
        raise DomainError("needs n >= 4")
    lay = block_layout(n)
    if lay.block <= 2 * f.degree:
        raise DomainError(
            f"block size {lay.block} must exceed 2*degree={2 * f.degree} at n={n}"
        )
    spectrum = f(2 * np.pi * np.arange(lay.block) / lay.block)
    vals = _block_values(a, lay.m)
    diag = np.concatenate([v * spectrum for v in vals] + [np.zeros(lay.t, dtype=complex)])
    return np.diag(diag)


def _theta_grid(block: int) -> np.ndarray:
    """Per-block theta nodes: uniform on [-pi,pi) for even block size, and
    0, +h, -h, +2h, -2h, ... for odd block size (h = 2pi/block)."""
    if block % 2 == 0:
        return -np.pi + 2 * np.pi * np.arange(block) / block
    half = block // 2
    js = [0]
    for j in range(1, half + 1):
        js.extend([j, -j])
    return 2 * np.pi * np.asarray(js, dtype=float) / block


def d_grid(k: FuncExpr, n: int) -> np.ndarray:
    """Diagonal sampling of k(x, theta) over the regular block grid.

    Block i holds k(i/m, theta_j) for the per-block theta nodes, followed by
    t trailing zeros.
    """
    if n < 4:
        raise DomainError("needs n >= 4")
    lay = block_layout(n)
    theta = _theta_grid(lay.block)
    xs = np.arange(1, lay.m + 1) / lay.m
    vals = k(x=xs[:, None], theta=theta[None, :])
    vals = np.broadcast_to(vals, (lay.m, lay.block))
    if not np.isfinite(vals).all():
        raise EvalError(f"{k.source!r} is non-finite on the sampling grid")
    diag = np.concatenate([vals.ravel(), np.zeros(lay.t, dtype=complex)])
    return np.diag(diag)


def _half_shift(n: int) -> np.ndarray:
    q = n // 2
    A = np.zeros((n, n), dtype=complex)
    # top-right rectangular identity: q x (n - q)
    for i in range(q):
        A[i, q + i] = 1.0
    return A


SCALED_CYCLE_CAP_SIZE = 12
SCALED_CYCLE_CAP_VALUE = 1e3


def _scaled_cycle(n: int) -> np.ndarray:
    E = np.zeros((n, n), dtype=complex)
    E[np.arange(n - 1), np.arange(1, n)] = 1.0 / n
    corner = float(n) ** (n - 1) if n <= SCALED_CYCLE_CAP_SIZE else SCALED_CYCLE_CAP_VALUE
    E[n - 1, 0] = corner
    return E


_SHIFT_POLY = TrigPoly.from_coeff_map({1: 1.0})

COUNTEREXAMPLES = ("alt_identity", "half_shift", "scaled_cycle", "jordan_shift")


def counterexample(name: str, n: int) -> np.ndarray:
    """Pathological sequences: alternating +-I, nilpotent half shift, the
    zero-distributed scaled cycle, and the Jordan-type shift."""
    if n < 2:
        raise DomainError("counterexamples need n >= 2")
    if name == "alt_identity":
        return (-1.0) ** n * np.eye(n, dtype=complex)
    if name == "half_shift":
        return _half_shift(n)
    if name == "scaled_cycle":
        return _scaled_cycle(n)
    if name == "jordan_shift":
        return toeplitz(_SHIFT_POLY, n)
    raise UnknownNameError(f"unknown counterexample {name!r}; choose from {COUNTEREXAMPLES}")


def toeplitz_seq(f: TrigPoly, label: str = "f") -> MatrixSeq:
    return MatrixSeq(f"T({label})", lambda n: toeplitz(f, n), symbol=f)


def diag_seq(a: FuncExpr) -> MatrixSeq:
    return MatrixSeq(f"D({a.source})", lambda n: diag_sampling(a, n), symbol=a)


def circulant_seq(f: TrigPoly, label: str = "f") -> MatrixSeq:
    return MatrixSeq(f"C({label})", lambda n: circulant(f, n), symbol=f)


def lt_seq(a: FuncExpr, f: TrigPoly, label: str = "f") -> MatrixSeq:
    return MatrixSeq(f"LT({a.source},{label})", lambda n: lt_op(a, f, n))


def lc_seq(a: FuncExpr, f: TrigPoly, label: str = "f") -> MatrixSeq:
    return MatrixSeq(f"LC({a.source},{label})", lambda n: lc_op(a, f, n))


def glt_product_seq(expr: GltExpr) -> MatrixSeq:
    """The sequence sum_i D_n(a_i) T_n(f_i) generated by a separable symbol."""

    def gen(n):
        M = np.zeros((n, n), dtype=complex)
        for a, f in expr.terms:
            M += diag_sampling(a, n) @ toeplitz(f, n)
        return M

    label = " + ".join(f"D({a.source})T(deg{f.degree})" for a, f in expr.terms)
    return MatrixSeq(label, gen, symbol=expr)


def counterexample_seq(name: str) -> MatrixSeq:
    if name not in COUNTEREXAMPLES:
        raise UnknownNameError(f"unknown counterexample {name!r}; choose from {COUNTEREXAMPLES}")
    info = {}
    if name == "scaled_cycle":
        info["corner_capped_above"] = SCALED_CYCLE_CAP_SIZE
        info["corner_cap_value"] = SCALED_CYCLE_CAP_VALUE
    return MatrixSeq(name, lambda n: counterexample(name, n), info=info)


def identity_seq() -> MatrixSeq:
    return MatrixSeq("I", lambda n: np.eye(n, dtype=complex))


def zero_seq() -> MatrixSeq:
    return MatrixSeq("0", lambda n: np.zeros((n, n), dtype=complex))
