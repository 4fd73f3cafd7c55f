"""Normal forms of separable-symbol sequences and related constructions.

A normal form replaces sum_i D_n(a_i) T_n(f_i) by the acs-equivalent normal
sequence Q^H D Q, where Q is the fixed block-Fourier unitary (independent of
the symbol) and D is diagonal with entries sampling the symbol on a regular
grid.  Also provides the sorting permutation for diagonal sequences, the
Hermitian function calculus, the affine-shift spectral test and the SVD
embedding of one sequence onto another.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .acs import acs_equivalent, p_metric
from .errors import DomainError, HermitianError, NumericalError
from .matrices import MatrixSeq, d_af, glt_product_seq, q_block
from .spectra import (
    ResidualTable,
    as_symbol_grid,
    convergence_tolerance,
    default_family,
    eig_symbol_residual,
    sv_symbol_residual,
)
from .symbols import FuncExpr, GltExpr, SymbolGrid

__all__ = [
    "NormalForm",
    "EmbeddingPair",
    "NormalFormReport",
    "HermitianFnReport",
    "AffineShiftReport",
    "normal_form",
    "normal_form_seq",
    "diagonal_factor_seq",
    "verify_normal_form",
    "sort_perm",
    "hermitian_function",
    "affine_shift_test",
    "group_embed",
    "DEFAULT_SHIFTS",
]

DEFAULT_SHIFTS = (0, 1, -1, 1j, -1j, 0.5 + 0.5j)

NORMALITY_TOL = 1e-10


@dataclass(frozen=True)
class NormalForm:
    """Unitary Q and diagonal D with Q^H D Q normal and acs-close to the
    generating diagonal-times-Toeplitz sum."""

    q: np.ndarray
    d: np.ndarray
    source: GltExpr
    n: int

    def matrix(self) -> np.ndarray:
        return self.q.conj().T @ self.d @ self.q

    def diagonal(self) -> np.ndarray:
        return np.diag(self.d)


def normal_form(expr: GltExpr, n: int) -> NormalForm:
    """Build Q = block Fourier and D = sum_i d_af(a_i, f_i, n)."""
    if n < 4:
        raise DomainError("normal form needs n >= 4")
    D = np.zeros((n, n), dtype=complex)
    for a, f in expr.terms:
        D += d_af(a, f, n)
    return NormalForm(q_block(n), D, expr, n)


def normal_form_seq(expr: GltExpr) -> MatrixSeq:
    """The normal sequence n -> Q^H D Q for a separable symbol."""
    return MatrixSeq("normal-form", lambda n: normal_form(expr, n).matrix(), symbol=expr)


def diagonal_factor_seq(expr: GltExpr) -> MatrixSeq:
    """The diagonal sequence n -> D carrying the sampled symbol."""
    return MatrixSeq("normal-form-diagonal", lambda n: normal_form(expr, n).d, symbol=expr)


@dataclass(frozen=True)
class NormalFormReport:
    """acs closeness of the generating sum to its normal form, plus the
    eigenvalue distribution of the diagonal factor against the symbol."""

    expr: GltExpr
    sizes: tuple
    acs_pass: bool
    acs_p_values: tuple
    acs_rho: float
    eig_table: ResidualTable
    eig_tolerances: tuple
    eig_pass: bool


def verify_normal_form(expr: GltExpr, sizes, family=None, resolution=None,
                       acs_tol: float = 0.5) -> NormalFormReport:
    """Check both halves of the normal-form construction on a size ladder."""
    sizes = tuple(int(n) for n in sizes)
    seq_gen = glt_product_seq(expr)
    seq_nf = normal_form_seq(expr)
    acs_ok, est = acs_equivalent(seq_gen, seq_nf, sizes, acs_tol)

    grid = as_symbol_grid(expr, resolution)
    if family is None:
        family = default_family(grid.max_abs())
    table = eig_symbol_residual(diagonal_factor_seq(expr), grid, sizes, family)
    tols = tuple(convergence_tolerance(n, grid) for n in sizes)
    eig_ok = bool(all(table.max_per_size()[i] <= tols[i] for i in range(len(sizes))))
    return NormalFormReport(
        expr, sizes, acs_ok, est.p_values, est.rho_estimate, table, tols, eig_ok
    )


def sort_perm(D: np.ndarray) -> np.ndarray:
    """Permutation matrix P with P D P^T having nondecreasing diagonal.

    D must be diagonal (off-diagonal mass below 1e-12) with real entries.
    The eigenvalue multiset is preserved exactly.
    """
    D = np.asarray(D, dtype=complex)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise DomainError("matrix must be square")
    off = D - np.diag(np.diag(D))
    if D.size and np.abs(off).max() > 1e-12:
        raise DomainError("matrix is not diagonal")
    d = np.diag(D)
    if np.abs(d.imag).max(initial=0.0) > 1e-12 * max(1.0, np.abs(d).max(initial=0.0)):
        raise DomainError("diagonal entries must be real; pass their absolute values")
    order = np.argsort(d.real, kind="stable")
    n = D.shape[0]
    P = np.zeros((n, n))
    P[np.arange(n), order] = 1.0
    return P


@dataclass(frozen=True)
class HermitianFnReport:
    sizes: tuple
    sv_table: ResidualTable
    eig_table: ResidualTable
    tolerances: tuple


def _matrix_function(A: np.ndarray, g: FuncExpr) -> np.ndarray:
    lam, V = np.linalg.eigh(A)
    gv = g(t=lam)
    return (V * gv) @ V.conj().T


def hermitian_function(seq: MatrixSeq, g: FuncExpr, sizes, family=None,
                       resolution=None) -> HermitianFnReport:
    """Distribution test for {g(A_n)} against the pushed symbol g(k).

    A_n must be Hermitian (checked to 1e-10); g is applied through the
    eigendecomposition, never a series expansion.  The attached symbol of
    `seq` supplies k.
    """
    if seq.symbol is None:
        raise DomainError("sequence needs an attached symbol")
    sizes = tuple(int(n) for n in sizes)

    def gen(n):
        A = seq(n)
        if np.abs(A - A.conj().T).max() > 1e-10:
            raise HermitianError(f"{seq.name} is not Hermitian at n={n}")
        return _matrix_function(A, g)

    pushed_seq = MatrixSeq(f"g({seq.name})", gen)
    base = as_symbol_grid(seq.symbol, resolution)
    if np.abs(base.samples.imag).max(initial=0.0) > 1e-10:
        raise HermitianError("symbol of a Hermitian sequence must be real-valued")
    pushed = SymbolGrid(base.domain, base.resolution, g(t=base.samples.real))
    if family is None:
        family = default_family(pushed.max_abs())
    sv_table = sv_symbol_residual(pushed_seq, pushed, sizes, family)
    eig_table = eig_symbol_residual(pushed_seq, pushed, sizes, family)
    tols = tuple(convergence_tolerance(n, pushed) for n in sizes)
    return HermitianFnReport(sizes, sv_table, eig_table, tols)


@dataclass(frozen=True)
class AffineShiftReport:
    """Per-shift singular value tests of {A_n - cI} against k - c.

    If every shift passes and the sequence is normal, the spectral symbol is
    confirmed; for a non-normal sequence the eigenvalue conclusion is NOT
    licensed and `conclusion` says so.
    """

    shifts: tuple
    tables: tuple
    shift_pass: tuple
    normality_residuals: tuple
    is_normal: bool
    all_pass: bool
    conclusion: str


def affine_shift_test(seq: MatrixSeq, k, sizes, shifts=DEFAULT_SHIFTS,
                      family=None, resolution=None) -> AffineShiftReport:
    """Test {A_n - cI} ~sigma k - c for each shift c."""
    sizes = tuple(int(n) for n in sizes)
    grid = as_symbol_grid(k, resolution)
    normality = []
    for n in sizes:
        A = seq(n)
        normality.append(float(np.linalg.norm(A.conj().T @ A - A @ A.conj().T, "fro")))
    is_normal = bool(max(normality) <= NORMALITY_TOL)

    tables = []
    verdicts = []
    for c in shifts:
        shifted_grid = SymbolGrid(grid.domain, grid.resolution, grid.samples - complex(c))
        fam = family if family is not None else default_family(shifted_grid.max_abs())
        table = sv_symbol_residual(seq.shifted(c), shifted_grid, sizes, fam)
        tol = convergence_tolerance(sizes[-1], shifted_grid)
        verdicts.append(bool(table.max_per_size()[-1] <= tol))
        tables.append(table)
    all_pass = bool(all(verdicts))
    if not all_pass:
        conclusion = "singular value tests failed for some shift"
    elif is_normal:
        conclusion = "spectral symbol confirmed (sequence normal, all shifts pass)"
    else:
        conclusion = (
            "all shifts pass but the sequence is not normal: "
            "the eigenvalue conclusion is not licensed"
        )
    return AffineShiftReport(
        tuple(complex(c) for c in shifts),
        tuple(tables),
        tuple(verdicts),
        tuple(normality),
        is_normal,
        all_pass,
        conclusion,
    )


@dataclass(frozen=True)
class EmbeddingPair:
    """Unitary pair (U, V) aligning one sequence onto another, with the
    p value of the misfit B - U A V."""

    u: np.ndarray
    v: np.ndarray
    residual_p: float


def _canonical_svd(A: np.ndarray):
    """SVD with descending singular values and each left singular vector's
    largest component made real positive (fixes phase ambiguity)."""
    try:
        U, s, Vh = np.linalg.svd(A)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD failed: {exc}") from exc
    U = U.copy()
    Vh = Vh.copy()
    for j in range(U.shape[1]):
        col = U[:, j]
        idx = int(np.argmax(np.abs(col)))
        v = col[idx]
        if v != 0:
            phase = v / abs(v)
            U[:, j] = col / phase
            if j < Vh.shape[0]:
                Vh[j, :] = Vh[j, :] * phase
    return U, s, Vh


def _ascending_perm(values: np.ndarray) -> np.ndarray:
    order = np.argsort(values, kind="stable")
    n = values.size
    P = np.zeros((n, n))
    P[np.arange(n), order] = 1.0
    return P


def group_embed(seqA: MatrixSeq, seqB: MatrixSeq, n: int) -> EmbeddingPair:
    """Unitaries U, V with B_n ~ U A_n V built from sorted SVDs.

    With B = Q S W and A = Q' S' W' (descending singular values) and P, P'
    the permutations sorting each S ascending, U = Q P^T P' Q'^H and
    V = W'^H P'^T P W.  When the two sequences share a singular value
    distribution the misfit B - UAV has small p.
    """
    A = seqA(n)
    B = seqB(n)
    if A.shape != B.shape:
        raise DomainError("sequences must produce matrices of the same size")
    Q, S, W = _canonical_svd(B)
    Qp, Sp, Wp = _canonical_svd(A)
    P = _ascending_perm(S)
    Pp = _ascending_perm(Sp)
    U = Q @ P.T @ Pp @ Qp.conj().T
    V = Wp.conj().T @ Pp.T @ P @ W
    return EmbeddingPair(U, V, p_metric(B - U @ A @ V))
