"""Singular value / eigenvalue distributions and their comparison to symbols.

The Weyl-style test: a sequence {A_n} distributes like a symbol k when the
empirical means (1/n) sum F(sigma_i) (or F(lambda_i)) converge to the
normalized integral of F(|k|) (or F(k)) for compactly supported continuous F.
Here F ranges over a finite family of radial hat functions and the integral
is a fine midpoint-grid mean, so every verdict carries an explicit tolerance.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalError
from .matrices import MatrixSeq
from .symbols import (
    FuncExpr,
    GltExpr,
    SymbolGrid,
    TrigPoly,
    _num_literal,
    parse_expr,
    sample_symbol,
)

__all__ = [
    "EmpiricalDist",
    "TestFamily",
    "ResidualTable",
    "singular_values",
    "eigenvalues",
    "empirical_functional",
    "symbol_functional",
    "sv_symbol_residual",
    "eig_symbol_residual",
    "zero_distributed_test",
    "default_family",
    "hat_function",
    "as_symbol_grid",
    "convergence_tolerance",
]

DEFAULT_RECT_RESOLUTION = (64, 256)
DEFAULT_UNIT_RESOLUTION = (4096,)


def _ladder_map(fn, items):
    """Apply fn over a size ladder, optionally in parallel (GLT_LAB_THREADS),
    always returning results in input order."""
    items = list(items)
    workers = os.environ.get("GLT_LAB_THREADS")
    workers = int(workers) if workers else (os.cpu_count() or 1)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class EmpiricalDist:
    """Multiset of spectral samples; kind 'sv' keeps them sorted descending."""

    samples: np.ndarray
    kind: str

    def __post_init__(self):
        s = np.asarray(self.samples)
        if self.kind == "sv":
            s = np.sort(np.abs(s.real))[::-1]
        elif self.kind != "eig":
            raise ValueError("kind must be 'sv' or 'eig'")
        s = s.copy()
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    def __len__(self):
        return self.samples.size


def singular_values(A: np.ndarray) -> EmpiricalDist:
    """Full singular value spectrum, sorted non-increasing."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DomainError("matrix must be square")
    if not np.isfinite(A).all():
        raise DomainError("matrix has non-finite entries")
    try:
        s = np.linalg.svd(A, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD failed: {exc}") from exc
    return EmpiricalDist(s, "sv")


def eigenvalues(A: np.ndarray) -> EmpiricalDist:
    """Full eigenvalue spectrum (dense solver, no symmetry assumptions)."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DomainError("matrix must be square")
    if not np.isfinite(A).all():
        raise DomainError("matrix has non-finite entries")
    try:
        lam = np.linalg.eigvals(A)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigendecomposition failed: {exc}") from exc
    return EmpiricalDist(lam, "eig")


def hat_function(center: complex, width: float) -> FuncExpr:
    """Radial hat max(0, 1 - |t - c|/w), compactly supported on |t-c| <= w."""
    c = complex(center)
    if c.imag == 0:
        shift = f"t-{_num_literal(c.real)}" if c.real >= 0 else f"t+{_num_literal(-c.real)}"
    else:
        re = _num_literal(c.real)
        im = _num_literal(c.imag)
        shift = f"t-({re}+{im}*i)"
    g = f"1-abs({shift})/{_num_literal(width)}"
    return parse_expr(f"(({g})+abs({g}))/2", "F")


@dataclass(frozen=True)
class TestFamily:
    """Finite family of compactly supported test functions.

    Each member is a radial hat with a recorded center and support radius;
    reports always name the family members they used.
    """

    funcs: tuple
    centers: tuple
    radii: tuple

    def __post_init__(self):
        if not (len(self.funcs) == len(self.centers) == len(self.radii)):
            raise ValueError("funcs, centers and radii must align")

    def __len__(self):
        return len(self.funcs)

    @property
    def labels(self):
        def cfmt(c):
            return format(c.real, "g") if c.imag == 0 else format(c, "g")

        return tuple(f"hat(c={cfmt(c)},w={w:g})" for c, w in zip(self.centers, self.radii))


def default_family(max_abs_symbol: float) -> TestFamily:
    """Eight hats with centers spanning [-R, R], R = 1 + max |k|, width R/4,
    plus one hat at 0."""
    R = 1.0 + float(max_abs_symbol)
    w = R / 4.0
    centers = list(np.linspace(-R, R, 8)) + [0.0]
    funcs = tuple(hat_function(c, w) for c in centers)
    return TestFamily(funcs, tuple(complex(c) for c in centers), tuple(w for _ in centers))


def family_with_extra_centers(base: TestFamily, centers, width: float) -> TestFamily:
    funcs = base.funcs + tuple(hat_function(c, width) for c in centers)
    return TestFamily(
        funcs,
        base.centers + tuple(complex(c) for c in centers),
        base.radii + tuple(width for _ in centers),
    )


def empirical_functional(dist: EmpiricalDist, F: FuncExpr) -> complex:
    """(1/n) sum_i F(s_i) over the distribution samples."""
    return complex(np.mean(F(t=dist.samples)))


def symbol_functional(k: SymbolGrid, F: FuncExpr, mode: str = "abs") -> complex:
    """Grid mean of F(|k|) (mode 'abs') or F(k) (mode 'plain')."""
    if mode not in ("abs", "plain"):
        raise ValueError("mode must be 'abs' or 'plain'")
    if len(k.samples) == 0:
        raise DomainError("empty symbol grid")
    vals = np.abs(k.samples) if mode == "abs" else k.samples
    return complex(np.mean(F(t=vals)))


def as_symbol_grid(k, resolution=None) -> SymbolGrid:
    """Coerce a symbol of any supported type to a sampled grid."""
    if isinstance(k, SymbolGrid):
        return k
    if isinstance(k, (GltExpr, TrigPoly)):
        return sample_symbol(k, "RECT", resolution or DEFAULT_RECT_RESOLUTION)
    if isinstance(k, FuncExpr):
        if k.free_vars <= {"x"} and "theta" not in k.free_vars:
            return sample_symbol(k, "UNIT", resolution or DEFAULT_UNIT_RESOLUTION)
        return sample_symbol(k, "RECT", resolution or DEFAULT_RECT_RESOLUTION)
    raise TypeError(f"cannot interpret {type(k).__name__} as a symbol")


def convergence_tolerance(n: int, grid: SymbolGrid | None = None) -> float:
    """Verdict tolerance 10 * max(grid resolution error, 1/sqrt(n))."""
    grid_err = 1.0 / grid.min_resolution() if grid is not None else 0.0
    return 10.0 * max(grid_err, 1.0 / math.sqrt(n))


@dataclass(frozen=True)
class ResidualTable:
    """Per-size, per-test-function residuals of empirical vs symbol means."""

    kind: str
    sizes: tuple
    labels: tuple
    residuals: np.ndarray  # shape (len(sizes), len(labels))

    def max_per_size(self) -> np.ndarray:
        return self.residuals.max(axis=1)

    def row(self, n: int) -> np.ndarray:
        return self.residuals[self.sizes.index(n)]


def _residual_table(seq, grid, family, sizes, kind, mode):
    sizes = tuple(int(n) for n in sizes)
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise DomainError("sizes must be strictly ascending")
    sym_means = np.array([symbol_functional(grid, F, mode) for F in family.funcs])

    def one_size(n):
        dist = singular_values(seq(n)) if kind == "sv" else eigenvalues(seq(n))
        emp = np.array([empirical_functional(dist, F) for F in family.funcs])
        return np.abs(emp - sym_means)

    rows = _ladder_map(one_size, sizes)
    return ResidualTable(kind, sizes, family.labels, np.vstack(rows))


def sv_symbol_residual(seq: MatrixSeq, k, sizes, family: TestFamily | None = None,
                       resolution=None) -> ResidualTable:
    """Residuals |(1/n) sum F(sigma_i(A_n)) - mean F(|k|)| per size and F."""
    grid = as_symbol_grid(k, resolution)
    if family is None:
        family = default_family(grid.max_abs())
    return _residual_table(seq, grid, family, sizes, "sv", "abs")


def eig_symbol_residual(seq: MatrixSeq, k, sizes, family: TestFamily | None = None,
                        resolution=None) -> ResidualTable:
    """Residuals |(1/n) sum F(lambda_i(A_n)) - mean F(k)| per size and F."""
    grid = as_symbol_grid(k, resolution)
    if family is None:
        family = default_family(grid.max_abs())
    return _residual_table(seq, grid, family, sizes, "eig", "plain")


def zero_distributed_test(seq: MatrixSeq, sizes, family: TestFamily | None = None):
    """Test {A_n} ~ 0 in singular values: (1/n) sum F(sigma_i) -> F(0).

    Returns (verdict, table): PASS when the residuals at the largest size all
    stay below the 10/sqrt(n) noise scale.
    """
    sizes = tuple(int(n) for n in sizes)
    if len(sizes) < 3:
        raise DomainError("need at least 3 sizes")
    if family is None:
        family = default_family(0.0)
    zero_grid = SymbolGrid("UNIT", (2,), np.zeros(2, dtype=complex))
    table = _residual_table(seq, zero_grid, family, sizes, "sv", "abs")
    tol = 10.0 / math.sqrt(sizes[-1])
    verdict = bool(table.residuals[-1].max() < tol)
    return verdict, table
