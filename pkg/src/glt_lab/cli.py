"""Configuration-driven experiment runner with deterministic CSV reports.

Usage:
    glt-lab run <config-file> [--dump-matrices]
    glt-lab demo <name>
    glt-lab parse <expr>

Config files are flat INI: one section per experiment, a mandatory `seed`
key, and an optional global `output` path for the CSV report (stdout when
absent).  Exit code 0 when every verdict is PASS or N/A, 1 when any row
FAILs, 2 on configuration errors.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import math
import re
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import matrices, spectra
from .acs import acs_equivalent, p_metric
from .errors import ConfigError, ExprSyntaxError, GltLabError, VariableError
from .matrices import MatrixSeq, counterexample_seq
from .normal_form import affine_shift_test, group_embed, hermitian_function, verify_normal_form
from .spectra import (
    convergence_tolerance,
    default_family,
    eig_symbol_residual,
    eigenvalues,
    empirical_functional,
    family_with_extra_centers,
    singular_values,
    sv_symbol_residual,
    zero_distributed_test,
)
from .symbols import (
    GltExpr,
    SymbolGrid,
    TrigPoly,
    _parse_any,
    parse_expr,
    trig_poly_from_expr,
)

CSV_HEADER = ("experiment", "n", "metric", "value", "bound", "verdict")

KINDS = (
    "symbol-check",
    "acs",
    "normal-form",
    "embed",
    "counterexample",
    "hermitian-fn",
    "shift-test",
)


@dataclass(frozen=True)
class ReportRow:
    experiment: str
    n: int
    metric: str
    value: float
    bound: float | None
    verdict: str  # PASS | FAIL | N/A

    def __post_init__(self):
        if self.verdict not in ("PASS", "FAIL", "N/A"):
            raise ValueError(f"bad verdict {self.verdict!r}")
        if not math.isfinite(self.value):
            raise ValueError("row values must be finite")


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow(
            [r.experiment, r.n, r.metric, _fmt(r.value), "" if r.bound is None else _fmt(r.bound), r.verdict]
        )
    return buf.getvalue()


# ---------------------------------------------------------------------------
# config parsing


def _parse_sizes(text: str):
    try:
        sizes = tuple(int(s) for s in text.replace(" ", "").split(",") if s)
    except ValueError as exc:
        raise ConfigError(f"bad sizes {text!r}: {exc}") from exc
    if len(sizes) < 1:
        raise ConfigError("sizes must be non-empty")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ConfigError(f"sizes must be strictly ascending, got {sizes}")
    return sizes


def _parse_grid(text: str):
    parts = text.lower().replace(" ", "").split("x")
    try:
        res = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"bad grid {text!r}") from exc
    if len(res) not in (1, 2):
        raise ConfigError(f"grid needs 1 or 2 axes, got {text!r}")
    return res


def _parse_complex(text: str) -> complex:
    s = text.strip().replace(" ", "").replace("i", "j")
    s = re.sub(r"(?<![\d.])j", "1j", s)
    try:
        return complex(s)
    except ValueError as exc:
        raise ConfigError(f"bad complex literal {text!r}") from exc


def _parse_expr_cfg(text: str, role: str):
    try:
        return parse_expr(text, role)
    except (ExprSyntaxError, VariableError) as exc:
        raise ConfigError(f"bad expression {text!r}: {exc}") from exc


def _parse_terms(text: str, max_degree: int) -> GltExpr:
    """Parse 'a1 | f1 ; a2 | f2' into a separable symbol expression."""
    terms = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        parts = chunk.split("|")
        if len(parts) != 2:
            raise ConfigError(f"term {chunk.strip()!r} must look like 'a-expr | f-expr'")
        a = _parse_expr_cfg(parts[0].strip(), "a")
        f_expr = _parse_expr_cfg(parts[1].strip(), "k")
        if not f_expr.free_vars <= {"theta"}:
            raise ConfigError(f"trig factor {parts[1].strip()!r} may only use theta")
        terms.append((a, trig_poly_from_expr(f_expr, max_degree)))
    if not terms:
        raise ConfigError("term list is empty")
    return GltExpr(tuple(terms))


_SEQ_RE = re.compile(r"^([a-z-]+)(?:\((.*)\))?$", re.S)


def build_sequence(spec: str, max_degree: int = 8) -> MatrixSeq:
    """Build a matrix sequence from a spec like 'toeplitz(2*cos(theta))'.

    Supported heads: toeplitz(f), circulant(f), diag(a), lt(a | f),
    lc(a | f), glt(a1 | f1 ; ...), normal-form(a1 | f1 ; ...),
    counterexample(name), identity, zero.
    """
    m = _SEQ_RE.match(spec.strip())
    if m is None:
        raise ConfigError(f"bad sequence spec {spec!r}")
    head, inner = m.group(1), (m.group(2) or "").strip()
    if head in ("identity", "zero"):
        return matrices.identity_seq() if head == "identity" else matrices.zero_seq()
    if not inner:
        raise ConfigError(f"sequence {head!r} needs arguments")
    if head == "counterexample":
        if inner not in matrices.COUNTEREXAMPLES:
            raise ConfigError(
                f"unknown counterexample {inner!r}; choose from {matrices.COUNTEREXAMPLES}"
            )
        return counterexample_seq(inner)
    if head in ("toeplitz", "circulant"):
        f_expr = _parse_expr_cfg(inner, "k")
        if not f_expr.free_vars <= {"theta"}:
            raise ConfigError(f"{head} symbol may only use theta")
        f = trig_poly_from_expr(f_expr, max_degree)
        seq = matrices.toeplitz_seq(f, inner) if head == "toeplitz" else matrices.circulant_seq(f, inner)
        return seq
    if head == "diag":
        return matrices.diag_seq(_parse_expr_cfg(inner, "a"))
    if head in ("lt", "lc"):
        expr = _parse_terms(inner, max_degree)
        if len(expr.terms) != 1:
            raise ConfigError(f"{head} takes a single 'a | f' term")
        a, f = expr.terms[0]
        return matrices.lt_seq(a, f, inner) if head == "lt" else matrices.lc_seq(a, f, inner)
    if head == "glt":
        return matrices.glt_product_seq(_parse_terms(inner, max_degree))
    if head == "normal-form":
        from .normal_form import normal_form_seq

        return normal_form_seq(_parse_terms(inner, max_degree))
    raise ConfigError(f"unknown sequence head {head!r}")


def build_symbol(text: str, max_degree: int = 8):
    """A symbol config value: an expression in x and/or theta."""
    expr = _parse_expr_cfg(text, "k")
    return expr


@dataclass
class Experiment:
    name: str
    kind: str
    options: dict


@dataclass
class RunConfig:
    seed: int
    output: str | None
    experiments: list


def load_config(path: str) -> RunConfig:
    parser = configparser.ConfigParser(delimiters=("=",), inline_comment_prefixes=("#",))
    parser.optionxform = str.lower
    try:
        with open(path, "r", encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config {path!r}: {exc}") from exc
    defaults = parser.defaults()
    experiments = []
    seed = None
    output = defaults.get("output")
    if "seed" in defaults:
        seed = defaults["seed"]
    for section in parser.sections():
        opts = dict(parser.items(section))
        if section.lower() == "global":
            seed = opts.get("seed", seed)
            output = opts.get("output", output)
            continue
        kind = opts.pop("kind", None)
        if kind is None:
            raise ConfigError(f"experiment [{section}] is missing a kind")
        if kind not in KINDS:
            raise ConfigError(f"experiment [{section}] has unknown kind {kind!r}")
        experiments.append(Experiment(section, kind, opts))
    if seed is None:
        raise ConfigError("config must define a seed key (global section)")
    try:
        seed = int(seed)
    except ValueError as exc:
        raise ConfigError(f"seed must be an integer, got {seed!r}") from exc
    if not experiments:
        raise ConfigError("config defines no experiments")
    return RunConfig(seed, output, experiments)


def _require(opts: dict, key: str, section: str) -> str:
    if key not in opts:
        raise ConfigError(f"experiment [{section}] is missing the {key!r} key")
    return opts[key]


# ---------------------------------------------------------------------------
# experiment execution


def _residual_rows(name, table, sizes, grid, mode, tol_override=None):
    rows = []
    for i, n in enumerate(sizes):
        tol = tol_override if tol_override is not None else convergence_tolerance(n, grid)
        for label, res in zip(table.labels, table.residuals[i]):
            rows.append(ReportRow(name, n, f"{mode}_residual[{label}]", float(res), None, "N/A"))
        worst = float(table.residuals[i].max())
        rows.append(
            ReportRow(
                name, n, f"{mode}_residual_max", worst, tol, "PASS" if worst <= tol else "FAIL"
            )
        )
    return rows


def run_symbol_check(exp: Experiment) -> list:
    opts = exp.options
    max_degree = int(opts.get("max_degree", 8))
    seq = build_sequence(_require(opts, "sequence", exp.name), max_degree)
    symbol = build_symbol(_require(opts, "symbol", exp.name), max_degree)
    mode = opts.get("mode", "sv")
    if mode not in ("sv", "eig"):
        raise ConfigError(f"mode must be sv or eig, got {mode!r}")
    sizes = _parse_sizes(_require(opts, "sizes", exp.name))
    resolution = _parse_grid(opts["grid"]) if "grid" in opts else None
    grid = spectra.as_symbol_grid(symbol, resolution)
    tol = float(opts["tolerance"]) if "tolerance" in opts else None
    fn = sv_symbol_residual if mode == "sv" else eig_symbol_residual
    table = fn(seq, grid, sizes)
    return _residual_rows(exp.name, table, sizes, grid, mode, tol)


def run_acs(exp: Experiment) -> list:
    opts = exp.options
    max_degree = int(opts.get("max_degree", 8))
    seq_a = build_sequence(_require(opts, "sequence_a", exp.name), max_degree)
    seq_b = build_sequence(_require(opts, "sequence_b", exp.name), max_degree)
    sizes = _parse_sizes(_require(opts, "sizes", exp.name))
    tol = float(opts.get("tolerance", 0.5))
    verdict, est = acs_equivalent(seq_a, seq_b, sizes, tol)
    rows = [
        ReportRow(exp.name, n, "p", float(p), None, "N/A")
        for n, p in zip(est.sizes, est.p_values)
    ]
    rows.append(
        ReportRow(
            exp.name,
            sizes[-1],
            "rho_estimate",
            est.rho_estimate,
            tol,
            "PASS" if verdict else "FAIL",
        )
    )
    return rows


def run_normal_form(exp: Experiment) -> list:
    opts = exp.options
    max_degree = int(opts.get("max_degree", 8))
    expr = _parse_terms(_require(opts, "terms", exp.name), max_degree)
    sizes = _parse_sizes(_require(opts, "sizes", exp.name))
    resolution = _parse_grid(opts["grid"]) if "grid" in opts else None
    acs_tol = float(opts.get("acs_tolerance", 0.5))
    report = verify_normal_form(expr, sizes, resolution=resolution, acs_tol=acs_tol)
    rows = [
        ReportRow(exp.name, n, "acs_p", float(p), None, "N/A")
        for n, p in zip(sizes, report.acs_p_values)
    ]
    rows.append(
        ReportRow(
            exp.name,
            sizes[-1],
            "acs_rho",
            report.acs_rho,
            acs_tol,
            "PASS" if report.acs_pass else "FAIL",
        )
    )
    worst = report.eig_table.max_per_size()
    for i, n in enumerate(sizes):
        rows.append(
            ReportRow(
                exp.name,
                n,
                "eig_residual_max",
                float(worst[i]),
                report.eig_tolerances[i],
                "PASS" if worst[i] <= report.eig_tolerances[i] else "FAIL",
            )
        )
    return rows


def run_embed(exp: Experiment) -> list:
    opts = exp.options
    max_degree = int(opts.get("max_degree", 8))
    seq_a = build_sequence(_require(opts, "sequence_a", exp.name), max_degree)
    seq_b = build_sequence(_require(opts, "sequence_b", exp.name), max_degree)
    sizes = _parse_sizes(_require(opts, "sizes", exp.name))
    rows = []
    for n in sizes:
        pair = group_embed(seq_a, seq_b, n)
        rows.append(ReportRow(exp.name, n, "embed_residual_p", pair.residual_p, None, "N/A"))
    return rows


def run_hermitian_fn(exp: Experiment) -> list:
    opts = exp.options
    max_degree = int(opts.get("max_degree", 8))
    seq = build_sequence(_require(opts, "sequence", exp.name), max_degree)
    g = _parse_expr_cfg(_require(opts, "function", exp.name), "F")
    sizes = _parse_sizes(_require(opts, "sizes", exp.name))
    resolution = _parse_grid(opts["grid"]) if "grid" in opts else None
    report = hermitian_function(seq, g, sizes, resolution=resolution)
    rows = []
    for kind, table in (("sv", report.sv_table), ("eig", report.eig_table)):
        worst = table.max_per_size()
        for i, n in enumerate(sizes):
            tol = report.tolerances[i]
            rows.append(
                ReportRow(
                    exp.name,
                    n,
                    f"{kind}_residual_max",
                    float(worst[i]),
                    tol,
                    "PASS" if worst[i] <= tol else "FAIL",
                )
            )
    return rows


def run_shift_test(exp: Experiment) -> list:
    opts = exp.options
    max_degree = int(opts.get("max_degree", 8))
    seq = build_sequence(_require(opts, "sequence", exp.name), max_degree)
    symbol = build_symbol(_require(opts, "symbol", exp.name), max_degree)
    sizes = _parse_sizes(_require(opts, "sizes", exp.name))
    resolution = _parse_grid(opts["grid"]) if "grid" in opts else None
    if "shifts" in opts:
        shifts = tuple(_parse_complex(s) for s in opts["shifts"].split(","))
    else:
        from .normal_form import DEFAULT_SHIFTS as shifts
    report = affine_shift_test(seq, symbol, sizes, shifts, resolution=resolution)
    rows = []
    for c, table, ok in zip(report.shifts, report.tables, report.shift_pass):
        worst = table.max_per_size()
        for i, n in enumerate(sizes):
            rows.append(
                ReportRow(exp.name, n, f"sv_residual_max[shift={c:g}]", float(worst[i]), None, "N/A")
            )
        rows.append(
            ReportRow(
                exp.name,
                sizes[-1],
                f"shift_verdict[shift={c:g}]",
                float(worst[-1]),
                None,
                "PASS" if ok else "FAIL",
            )
        )
    for n, r in zip(sizes, report.normality_residuals):
        rows.append(ReportRow(exp.name, n, "normality_residual", r, None, "N/A"))
    rows.append(
        ReportRow(
            exp.name,
            sizes[-1],
            "eig_conclusion_licensed",
            1.0 if (report.all_pass and report.is_normal) else 0.0,
            None,
            "N/A",
        )
    )
    return rows


# ---------------------------------------------------------------------------
# counterexample demos


def _constant_unit_grid(value: complex, res: int = 4096) -> SymbolGrid:
    return SymbolGrid("UNIT", (res,), np.full(res, complex(value)))


def demo_alt_identity(name="alt_identity") -> list:
    sizes = (128, 129, 256, 257)
    seq = counterexample_seq("alt_identity")
    one = _constant_unit_grid(1.0)
    family = family_with_extra_centers(default_family(1.0), (1.0, -1.0), 0.5)
    table = eig_symbol_residual(seq, one, sizes, family)
    rows = _residual_rows(name, table, sizes, one, "eig")
    even_emp = np.array([empirical_functional(eigenvalues(seq(256)), F) for F in family.funcs])
    odd_emp = np.array([empirical_functional(eigenvalues(seq(257)), F) for F in family.funcs])
    gap = float(np.abs(even_emp - odd_emp).max())
    rows.append(
        ReportRow(name, 257, "even_odd_gap", gap, 0.9, "FAIL" if gap >= 0.9 else "PASS")
    )
    return rows


def demo_half_shift(name="half_shift") -> list:
    sizes = (32, 64, 128, 256)
    seq = counterexample_seq("half_shift")
    x = (np.arange(4096) + 0.5) / 4096
    step = SymbolGrid("UNIT", (4096,), (x < 0.5).astype(complex))
    table = sv_symbol_residual(seq, step, sizes)
    rows = _residual_rows(name, table, sizes, step, "sv")
    for n in sizes:
        A = seq(n)
        sq = float(np.abs(A @ A).max())
        rows.append(ReportRow(name, n, "square_norm", sq, 0.0, "PASS" if sq == 0.0 else "FAIL"))
    return rows


def demo_scaled_cycle(name="scaled_cycle") -> list:
    sizes = (8, 16, 32, 64)
    seq = counterexample_seq("scaled_cycle")
    verdict, table = zero_distributed_test(seq, sizes)
    zero = _constant_unit_grid(0.0)
    rows = _residual_rows(name, table, sizes, zero, "sv", tol_override=10.0 / math.sqrt(sizes[-1]))
    rows.append(
        ReportRow(
            name,
            sizes[-1],
            "zero_distributed",
            float(table.residuals[-1].max()),
            10.0 / math.sqrt(sizes[-1]),
            "PASS" if verdict else "FAIL",
        )
    )
    for n in sizes:
        p = p_metric(seq(n))
        bound = 2.0 / n + 1e-10
        rows.append(ReportRow(name, n, "p", p, bound, "PASS" if p <= bound else "FAIL"))
    # the function t + 1 - |t|^2 fixes every eigenvalue on the unit circle,
    # so applying it leaves the matrix alone while moving 0 to 1: the
    # singular value functionals stay near F(0), far from F(1)
    n_fn = 12
    E = seq(n_fn)
    lam, S = np.linalg.eig(E)
    f_lam = lam + 1.0 - np.abs(lam) ** 2
    fE = S @ np.diag(f_lam) @ np.linalg.inv(S)
    fixed_err = float(np.abs(fE - E).max())
    rows.append(ReportRow(name, n_fn, "fn_fixed_point_error", fixed_err, None, "N/A"))
    family = default_family(1.0)
    sv_fE = singular_values(fE)
    gap = max(
        abs(empirical_functional(sv_fE, F) - complex(F(t=np.array([1.0]))[0]))
        for F in family.funcs
    )
    rows.append(ReportRow(name, n_fn, "fn_pathology_gap", float(gap), None, "N/A"))
    return rows


def demo_jordan_shift(name="jordan_shift") -> list:
    sizes = (32, 64, 128, 256)
    seq = counterexample_seq("jordan_shift")
    shift_poly = TrigPoly.from_coeff_map({1: 1.0})
    report = affine_shift_test(seq, shift_poly, sizes, shifts=(0, 1))
    rows = []
    for c, table, ok in zip(report.shifts, report.tables, report.shift_pass):
        worst = table.max_per_size()
        for i, n in enumerate(sizes):
            rows.append(
                ReportRow(name, n, f"sv_residual_max[shift={c:g}]", float(worst[i]), None, "N/A")
            )
        rows.append(
            ReportRow(
                name,
                sizes[-1],
                f"shift_verdict[shift={c:g}]",
                float(worst[-1]),
                None,
                "PASS" if ok else "FAIL",
            )
        )
    for n, r in zip(sizes, report.normality_residuals):
        rows.append(ReportRow(name, n, "normality_residual", r, None, "N/A"))
    rows.append(ReportRow(name, sizes[-1], "eig_conclusion_licensed", 0.0, None, "N/A"))
    zero = _constant_unit_grid(0.0)
    eig_table = eig_symbol_residual(seq, zero, sizes)
    for i, n in enumerate(sizes):
        worst = float(eig_table.residuals[i].max())
        tol = convergence_tolerance(n, zero)
        rows.append(
            ReportRow(
                name, n, "eig_residual_vs_zero", worst, tol, "PASS" if worst <= tol else "FAIL"
            )
        )
    return rows


DEMOS = {
    "alt_identity": demo_alt_identity,
    "half_shift": demo_half_shift,
    "scaled_cycle": demo_scaled_cycle,
    "jordan_shift": demo_jordan_shift,
}

RUNNERS = {
    "symbol-check": run_symbol_check,
    "acs": run_acs,
    "normal-form": run_normal_form,
    "embed": run_embed,
    "hermitian-fn": run_hermitian_fn,
    "shift-test": run_shift_test,
}


def run_counterexample(exp: Experiment) -> list:
    name = _require(exp.options, "name", exp.name)
    if name not in DEMOS:
        raise ConfigError(f"unknown counterexample {name!r}; choose from {tuple(DEMOS)}")
    rows = DEMOS[name](name=exp.name)
    return rows


RUNNERS["counterexample"] = run_counterexample


def _dump_matrices(exp: Experiment, out_dir: Path) -> None:
    opts = exp.options
    spec = opts.get("sequence") or opts.get("sequence_a")
    if spec is None and exp.kind == "counterexample":
        spec = f"counterexample({opts.get('name', '')})"
    if spec is None and exp.kind == "normal-form" and "terms" in opts:
        spec = f"glt({opts['terms']})"
    if spec is None or "sizes" not in opts:
        return
    seq = build_sequence(spec, int(opts.get("max_degree", 8)))
    for n in _parse_sizes(opts["sizes"]):
        A = seq(n)
        path = out_dir / f"{exp.name}_{n}.csv"
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            for i, j in zip(*np.nonzero(A)):
                z = A[i, j]
                writer.writerow([i + 1, j + 1, _fmt(z.real), _fmt(z.imag)])


def run_config(path: str, dump_matrices: bool = False) -> int:
    """Run every experiment in a config file; returns the process exit code."""
    try:
        config = load_config(path)
        rows = []
        for exp in config.experiments:
            try:
                rows.extend(RUNNERS[exp.kind](exp))
                if dump_matrices:
                    out_dir = Path(config.output).parent if config.output else Path.cwd()
                    _dump_matrices(exp, out_dir)
            except ConfigError:
                raise
            except GltLabError as exc:
                # numerical failures become FAIL rows, not crashes
                rows.append(ReportRow(exp.name, 0, f"error[{exc}]", 0.0, None, "FAIL"))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    text = rows_to_csv(rows)
    if config.output:
        with open(config.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 1 if any(r.verdict == "FAIL" for r in rows) else 0


def run_demo(name: str) -> int:
    if name not in DEMOS:
        print(
            f"unknown demo {name!r}; available: {', '.join(sorted(DEMOS))}",
            file=sys.stderr,
        )
        return 2
    rows = DEMOS[name]()
    sys.stdout.write(rows_to_csv(rows))
    return 1 if any(r.verdict == "FAIL" for r in rows) else 0


def _ast_to_sexpr(node) -> str:
    tag = node[0]
    if tag == "const":
        z = node[1]
        return format(z.real, "g") if z.imag == 0 else f"{z:g}"
    if tag == "var":
        return node[1]
    if tag == "bin":
        return f"({node[1]} {_ast_to_sexpr(node[2])} {_ast_to_sexpr(node[3])})"
    if tag == "pow":
        return f"(^ {_ast_to_sexpr(node[1])} {node[2]})"
    return f"({node[1]} {_ast_to_sexpr(node[2])})"


def run_parse(source: str) -> int:
    try:
        expr = _parse_any(source)
    except (ExprSyntaxError, VariableError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    print(_ast_to_sexpr(expr.ast))
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="glt-lab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", help="run the experiments in a config file")
    p_run.add_argument("config")
    p_run.add_argument("--dump-matrices", action="store_true")
    p_demo = sub.add_parser("demo", help="run a canned counterexample experiment")
    p_demo.add_argument("name")
    p_parse = sub.add_parser("parse", help="print the ast of an expression")
    p_parse.add_argument("expr")
    args = parser.parse_args(argv)
    if args.command == "run":
        return run_config(args.config, args.dump_matrices)
    if args.command == "demo":
        return run_demo(args.name)
    return run_parse(args.expr)


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
