"""Symbol specifications: parsed scalar expressions, trigonometric polynomials,
separable GLT expressions, sampling grids and rearrangement comparison.

A symbol is a measurable function on the unit interval (UNIT domain) or on
[0,1] x [-pi,pi] (RECT domain).  Two symbols count as equal when they have the
same distribution, which is decided here by comparing empirical sample
fractions over a fixed finite family of closed disks.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ExprSyntaxError, VariableError

__all__ = [
    "FuncExpr",
    "TrigPoly",
    "GltExpr",
    "SymbolGrid",
    "parse_expr",
    "fourier_coeff",
    "trig_poly_from_expr",
    "symbol_add",
    "symbol_mul",
    "symbol_scale",
    "sample_symbol",
    "rearrangement_distance",
    "monotone_rearrangement",
    "symbols_equal_in_distribution",
]

ROLE_VARS = {"a": ("x",), "F": ("t",), "k": ("x", "theta")}

_FUNCS = {"sin": np.sin, "cos": np.cos, "exp": np.exp, "abs": np.abs}

_TOKEN_RE = re.compile(r"\s*(?:(\d+\.\d+|\d+)|([a-zA-Z]+)|([()+\-*/^]))")


def _tokenize(source):
    """Yield (kind, text, position) tokens; kinds: num, name, op, end."""
    pos = 0
    tokens = []
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            # nothing matched: skip whitespace manually, then report
            stripped = source[pos:].lstrip()
            at = len(source) - len(stripped)
            if not stripped:
                break
            raise ExprSyntaxError(f"unexpected character {stripped[0]!r}", at)
        num, name, op = m.groups()
        start = m.end() - len(num or name or op)
        if num is not None:
            tokens.append(("num", num, start))
        elif name is not None:
            tokens.append(("name", name, start))
        else:
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", "", len(source)))
    return tokens


class _Parser:
    """Recursive descent parser for the expression grammar:

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' integer)?
    base   := number | 'i' | var | func '(' expr ')' | '(' expr ')'
    """

    def __init__(self, source, allowed_vars):
        self.source = source
        self.tokens = _tokenize(source)
        self.idx = 0
        self.allowed = allowed_vars
        self.free_vars = set()

    def peek(self):
        return self.tokens[self.idx]

    def advance(self):
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def expect_op(self, op):
        kind, text, pos = self.peek()
        if kind != "op" or text != op:
            raise ExprSyntaxError(f"expected {op!r}", pos)
        return self.advance()

    def parse(self):
        ast = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected {text!r}", pos)
        return ast

    def expr(self):
        node = self.term()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.advance()
                node = ("bin", text, node, self.term())
            else:
                return node

    def term(self):
        node = self.factor()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "*/":
                self.advance()
                node = ("bin", text, node, self.factor())
            else:
                return node

    def factor(self):
        node = self.base()
        kind, text, _ = self.peek()
        if kind == "op" and text == "^":
            self.advance()
            kind, text, pos = self.peek()
            if kind != "num" or "." in text:
                raise ExprSyntaxError("exponent must be an integer", pos)
            self.advance()
            node = ("pow", node, int(text))
        return node

    def base(self):
        kind, text, pos = self.advance()
        if kind == "num":
            return ("const", complex(float(text)))
        if kind == "op" and text == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        if kind == "name":
            if text == "i":
                return ("const", 1j)
            if text in _FUNCS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return ("call", text, arg)
            if text in ("x", "theta", "t"):
                if text not in self.allowed:
                    raise VariableError(
                        f"variable {text!r} not allowed here (allowed: {', '.join(self.allowed)})"
                    )
                self.free_vars.add(text)
                return ("var", text)
            raise ExprSyntaxError(f"unknown name {text!r}", pos)
        raise ExprSyntaxError(f"unexpected {text!r}" if text else "unexpected end of input", pos)


def _eval_ast(node, env):
    tag = node[0]
    if tag == "const":
        return node[1]
    if tag == "var":
        return env[node[1]]
    if tag == "bin":
        _, op, left, right = node
        a = _eval_ast(left, env)
        b = _eval_ast(right, env)
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        return a / b
    if tag == "pow":
        return _eval_ast(node[1], env) ** node[2]
    _, fname, arg = node
    return _FUNCS[fname](_eval_ast(arg, env))


@dataclass(frozen=True)
class FuncExpr:
    """A parsed scalar expression, evaluable pointwise over numpy arrays."""

    source: str
    ast: tuple
    role: str
    free_vars: frozenset = field(default_factory=frozenset)

    def __call__(self, **values):
        missing = self.free_vars - set(values)
        if missing:
            raise VariableError(f"missing values for {sorted(missing)}")
        env = {name: np.asarray(v, dtype=complex) for name, v in values.items()}
        with np.errstate(all="ignore"):
            out = _eval_ast(self.ast, env)
        return np.asarray(out, dtype=complex)

    def __repr__(self):
        return f"FuncExpr({self.source!r}, role={self.role!r})"


def parse_expr(source: str, role: str) -> FuncExpr:
    """Parse `source` as an expression for the given role.

    Roles fix the allowed variables: 'a' may use x, 'F' may use t, and 'k'
    may use x and theta.  Raises ExprSyntaxError (with position) on malformed
    input and VariableError when a disallowed variable appears.
    """
    if role not in ROLE_VARS:
        raise ValueError(f"role must be one of {sorted(ROLE_VARS)}, got {role!r}")
    if not source or not source.strip():
        raise ExprSyntaxError("empty expression", 0)
    parser = _Parser(source, ROLE_VARS[role])
    ast = parser.parse()
    return FuncExpr(source, ast, role, frozenset(parser.free_vars))


def _parse_any(source: str) -> FuncExpr:
    """Parse with every variable allowed (used by the CLI ast printer)."""
    parser = _Parser(source, ("x", "theta", "t"))
    ast = parser.parse()
    return FuncExpr(source, ast, "k", frozenset(parser.free_vars))


def _num_literal(v: float) -> str:
    """Render a float as a grammar-compatible literal (no sign, no exponent)."""
    if v < 0:
        return f"(0-{_num_literal(-v)})"
    text = repr(float(v))
    if "e" in text or "E" in text:
        text = format(v, ".17f").rstrip("0")
        if text.endswith("."):
            text += "0"
    return text


def _complex_literal(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return _num_literal(z.real)
    return f"({_num_literal(z.real)}+{_num_literal(z.imag)}*i)"


def _expr_product(e1: FuncExpr, e2: FuncExpr) -> FuncExpr:
    ast = ("bin", "*", e1.ast, e2.ast)
    return FuncExpr(f"({e1.source})*({e2.source})", ast, e1.role, e1.free_vars | e2.free_vars)


def _expr_scale(e: FuncExpr, lam: complex) -> FuncExpr:
    lit = _complex_literal(lam)
    ast = ("bin", "*", ("const", complex(lam)), e.ast)
    return FuncExpr(f"{lit}*({e.source})", ast, e.role, e.free_vars)


CONST_ONE = parse_expr("1", "a")


@dataclass(frozen=True)
class TrigPoly:
    """Trigonometric polynomial sum_{k=-d}^{d} f_k e^{ik theta}.

    coeffs holds f_{-d}, ..., f_0, ..., f_d (exactly 2d+1 entries).
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size % 2 == 0:
            raise ValueError("coeffs must be a flat array with an odd number of entries")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return (self.coeffs.size - 1) // 2

    def coeff(self, k: int) -> complex:
        d = self.degree
        if abs(k) > d:
            return 0j
        return complex(self.coeffs[k + d])

    @classmethod
    def from_coeff_map(cls, mapping) -> "TrigPoly":
        d = max((abs(k) for k in mapping), default=0)
        c = np.zeros(2 * d + 1, dtype=complex)
        for k, v in mapping.items():
            c[k + d] = v
        return cls(c)

    @classmethod
    def constant(cls, value) -> "TrigPoly":
        return cls(np.array([value], dtype=complex))

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        d = self.degree
        ks = np.arange(-d, d + 1)
        phases = np.exp(1j * np.multiply.outer(theta, ks))
        return phases @ self.coeffs

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        d = max(self.degree, other.degree)
        c = np.zeros(2 * d + 1, dtype=complex)
        c[d - self.degree : d + self.degree + 1] += self.coeffs
        c[d - other.degree : d + other.degree + 1] += other.coeffs
        return TrigPoly(c)

    def __mul__(self, other) -> "TrigPoly":
        if isinstance(other, TrigPoly):
            # full coefficient convolution, degrees add, no truncation
            return TrigPoly(np.convolve(self.coeffs, other.coeffs))
        return TrigPoly(self.coeffs * complex(other))

    __rmul__ = __mul__

    def max_abs_coeff(self) -> float:
        return float(np.abs(self.coeffs).max())

    def has_real_values(self, tol: float = 1e-12) -> bool:
        """True when f_{-k} = conj(f_k) for all k, so evaluation is real."""
        return bool(np.abs(self.coeffs - np.conj(self.coeffs[::-1])).max() <= tol)


def fourier_coeff(f, k: int, quad_points: int) -> complex:
    """Fourier coefficient (1/2pi) int_{-pi}^{pi} f(theta) e^{-ik theta} dtheta.

    Uses the midpoint rule on `quad_points` uniform nodes, which by discrete
    orthogonality is exact (to roundoff) for trig polynomials of degree
    < quad_points/2.
    """
    if quad_points < 4 * (abs(k) + 1):
        raise DomainError(
            f"quad_points={quad_points} below minimum {4 * (abs(k) + 1)} for k={k}"
        )
    theta = -np.pi + (np.arange(quad_points) + 0.5) * (2 * np.pi / quad_points)
    if isinstance(f, TrigPoly):
        vals = f(theta)
    else:
        if not f.free_vars <= {"theta"}:
            raise VariableError("fourier_coeff needs an expression in theta only")
        vals = f(theta=theta)
    return complex(np.mean(vals * np.exp(-1j * k * theta)))


def trig_poly_from_expr(f: FuncExpr, max_degree: int = 8, tol: float = 1e-12) -> TrigPoly:
    """Extract the coefficient table of a trig-polynomial expression.

    Scans k = -max_degree..max_degree and trims the outermost coefficients
    that vanish to `tol`.
    """
    quad = max(4 * (max_degree + 1), 64)
    d = max_degree
    c = np.array([fourier_coeff(f, k, quad) for k in range(-d, d + 1)])
    re = np.where(np.abs(c.real) <= tol, 0.0, c.real)
    im = np.where(np.abs(c.imag) <= tol, 0.0, c.imag)
    c = re + 1j * im
    while d > 0 and c[0] == 0 and c[-1] == 0:
        c = c[1:-1]
        d -= 1
    return TrigPoly(c)


@dataclass(frozen=True)
class GltExpr:
    """Finite sum of separable terms sum_i a_i(x) f_i(theta).

    Each term pairs an expression in x with a trigonometric polynomial; this
    is the canonical input format for building diagonal-times-Toeplitz
    sequences and their normal forms.
    """

    terms: tuple

    def __post_init__(self):
        if not self.terms:
            raise ValueError("GltExpr needs at least one term")
        object.__setattr__(self, "terms", tuple(self.terms))
        for a, f in self.terms:
            if not isinstance(a, FuncExpr) or not isinstance(f, TrigPoly):
                raise TypeError("terms must be (FuncExpr, TrigPoly) pairs")
            if not a.free_vars <= {"x"}:
                raise VariableError("coefficient expressions may only use x")

    def __call__(self, x, theta):
        x = np.asarray(x, dtype=complex)
        theta = np.asarray(theta, dtype=float)
        out = np.zeros(np.broadcast(x, theta).shape, dtype=complex)
        for a, f in self.terms:
            out = out + a(x=x) * f(theta)
        return out

    def __add__(self, other):
        return symbol_add(self, other)

    def __mul__(self, other):
        if isinstance(other, GltExpr):
            return symbol_mul(self, other)
        return symbol_scale(self, other)

    __rmul__ = __mul__

    def max_degree(self) -> int:
        return max(f.degree for _, f in self.terms)


def glt_term(a_source: str, f_coeffs) -> GltExpr:
    """Convenience single-term builder from an x-expression and coefficient map."""
    a = parse_expr(a_source, "a")
    f = TrigPoly.from_coeff_map(f_coeffs) if isinstance(f_coeffs, dict) else TrigPoly(np.asarray(f_coeffs, dtype=complex))
    return GltExpr(((a, f),))


def symbol_add(p: GltExpr, q: GltExpr) -> GltExpr:
    """Sum of two separable-term symbols: term lists concatenate."""
    return GltExpr(p.terms + q.terms)


def symbol_mul(p: GltExpr, q: GltExpr) -> GltExpr:
    """Product: all pairwise products, trig parts convolved so degrees add."""
    terms = []
    for a1, f1 in p.terms:
        for a2, f2 in q.terms:
            terms.append((_expr_product(a1, a2), f1 * f2))
    return GltExpr(tuple(terms))


def symbol_scale(p: GltExpr, lam: complex) -> GltExpr:
    """Scalar multiple: each coefficient expression is scaled by lam."""
    return GltExpr(tuple((_expr_scale(a, lam), f) for a, f in p.terms))


@dataclass(frozen=True)
class SymbolGrid:
    """Uniform midpoint tensor grid of symbol samples.

    domain 'UNIT' is [0,1]; 'RECT' is [0,1] x [-pi,pi].  The mean of the
    samples approximates the normalized integral over the domain.
    """

    domain: str
    resolution: tuple
    samples: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=complex).ravel()
        s = s.copy()
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)
        object.__setattr__(self, "resolution", tuple(int(r) for r in self.resolution))
        if self.domain not in ("UNIT", "RECT"):
            raise DomainError(f"unknown domain tag {self.domain!r}")
        if int(np.prod(self.resolution)) != s.size:
            raise ValueError("sample count must equal the product of resolutions")

    @property
    def nonfinite_count(self) -> int:
        return int(np.count_nonzero(~np.isfinite(self.samples)))

    def max_abs(self) -> float:
        finite = self.samples[np.isfinite(self.samples)]
        return float(np.abs(finite).max()) if finite.size else 0.0

    def min_resolution(self) -> int:
        return min(self.resolution)


def _unit_axis(n: int) -> np.ndarray:
    return (np.arange(n) + 0.5) / n


def _theta_axis(n: int) -> np.ndarray:
    return -np.pi + (np.arange(n) + 0.5) * (2 * np.pi / n)


def sample_symbol(k, domain: str, resolution) -> SymbolGrid:
    """Sample a symbol at the cell midpoints of the uniform tensor grid.

    `k` may be a FuncExpr (role 'a' for UNIT, role 'k' for RECT), a TrigPoly
    (theta only) or a GltExpr.  Singular points propagate as non-finite
    samples rather than raising.
    """
    if isinstance(resolution, int):
        resolution = (resolution,)
    resolution = tuple(int(r) for r in resolution)
    if domain == "UNIT":
        # allow a trailing trivial axis, e.g. (4, 1)
        if len(resolution) == 2 and resolution[1] == 1:
            resolution = (resolution[0],)
        if len(resolution) != 1:
            raise DomainError("UNIT grids take one resolution")
        if resolution[0] < 2:
            raise DomainError("resolution must be at least 2 per axis")
        x = _unit_axis(resolution[0])
        if isinstance(k, FuncExpr):
            if not k.free_vars <= {"x"}:
                raise VariableError("UNIT symbols may only use x")
            vals = np.broadcast_to(k(x=x), x.shape)
        else:
            raise TypeError("UNIT grids need an expression in x")
        return SymbolGrid("UNIT", resolution, np.asarray(vals, dtype=complex))
    if domain != "RECT":
        raise DomainError(f"unknown domain tag {domain!r}")
    if len(resolution) != 2:
        raise DomainError("RECT grids take a resolution per axis")
    if min(resolution) < 1 or max(resolution) < 2:
        raise DomainError("resolution must be at least 2 per axis")
    nx, nt = resolution
    x = _unit_axis(nx)[:, None]
    theta = _theta_axis(nt)[None, :]
    if isinstance(k, TrigPoly):
        vals = np.broadcast_to(k(theta), (nx, nt))
    elif isinstance(k, GltExpr):
        vals = k(x, theta)
    elif isinstance(k, FuncExpr):
        kwargs = {}
        if "x" in k.free_vars:
            kwargs["x"] = x
        if "theta" in k.free_vars:
            kwargs["theta"] = theta
        vals = np.broadcast_to(k(**kwargs) if kwargs else k(), (nx, nt))
    else:
        raise TypeError(f"cannot sample object of type {type(k).__name__}")
    return SymbolGrid("RECT", resolution, np.asarray(vals, dtype=complex))


def _grid_samples(obj) -> np.ndarray:
    if isinstance(obj, SymbolGrid):
        return obj.samples
    return np.asarray(obj, dtype=complex).ravel()


def rearrangement_distance(h, k) -> float:
    """Discrepancy between two empirical sample distributions.

    Maximum, over a fixed family of closed disks, of the difference between
    the fractions of samples of each grid falling in the disk.  The family
    puts centers on a 32x32 lattice over the joint bounding box and uses
    radii 2^j * (box diagonal) for j = -5..2.  Symmetric, permutation
    invariant, and 0 when the two sample multisets coincide.
    """
    if isinstance(h, SymbolGrid) and isinstance(k, SymbolGrid) and h.domain != k.domain:
        raise DomainError(f"domain tags differ: {h.domain} vs {k.domain}")
    hs = _grid_samples(h)
    ks = _grid_samples(k)
    if hs.size == 0 or ks.size == 0:
        raise DomainError("empty sample set")
    if not (np.isfinite(hs).all() and np.isfinite(ks).all()):
        raise DomainError("non-finite samples cannot be compared")
    allsamp = np.concatenate([hs, ks])
    re_lo, re_hi = allsamp.real.min(), allsamp.real.max()
    im_lo, im_hi = allsamp.imag.min(), allsamp.imag.max()
    diag = math.hypot(re_hi - re_lo, im_hi - im_lo)
    if diag == 0.0:
        return 0.0
    centers = (
        np.linspace(re_lo, re_hi, 32)[:, None] + 1j * np.linspace(im_lo, im_hi, 32)[None, :]
    ).ravel()
    radii = diag * 2.0 ** np.arange(-5, 3, dtype=float)
    worst = 0.0
    for start in range(0, centers.size, 64):
        c = centers[start : start + 64, None]
        dh = np.abs(hs[None, :] - c)
        dk = np.abs(ks[None, :] - c)
        for r in radii:
            fh = np.count_nonzero(dh <= r, axis=1) / hs.size
            fk = np.count_nonzero(dk <= r, axis=1) / ks.size
            gap = float(np.abs(fh - fk).max())
            if gap > worst:
                worst = gap
    return worst


def symbols_equal_in_distribution(h, k) -> bool:
    """Statistical-noise-floor test: distance below 0.5/sqrt(min sample count)."""
    n = min(_grid_samples(h).size, _grid_samples(k).size)
    return rearrangement_distance(h, k) < 0.5 / math.sqrt(n)


def monotone_rearrangement(k) -> np.ndarray:
    """Sorted (ascending) sample vector: the discrete quantile function.

    Input samples must be real; pass abs(samples) for complex data.  The
    result has the same empirical distribution as the input.
    """
    s = _grid_samples(k)
    if np.abs(s.imag).max(initial=0.0) > 1e-12 * max(1.0, np.abs(s).max(initial=0.0)):
        raise DomainError("samples must be real; pass their absolute values")
    return np.sort(s.real)
