import csv
import io
from contextlib import redirect_stderr, redirect_stdout

import numpy as np
import pytest

from glt_lab.cli import (
    CSV_HEADER,
    ReportRow,
    build_sequence,
    load_config,
    main,
    rows_to_csv,
)
from glt_lab.errors import ConfigError


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def write_config(tmp_path, body, name="exp.ini"):
    path = tmp_path / name
    path.write_text(body, encoding="utf-8")
    return str(path)


GOOD_CONFIG = """
[global]
seed = 7

[szego]
kind = symbol-check
sequence = toeplitz(2*cos(theta))
symbol = 2*cos(theta)
mode = sv
sizes = 32, 64, 128, 256
grid = 4x512
"""


class TestParseCommand:
    def test_prints_ast(self):
        code, out, _ = run_cli(["parse", "x^2 + sin(theta)"])
        assert code == 0
        assert out.strip() == "(+ (^ x 2) (sin theta))"

    def test_malformed_expression_exits_2_with_position(self):
        code, _, err = run_cli(["parse", "x^2 +* 3"])
        assert code == 2
        assert "position 5" in err

    def test_unknown_variable_exits_2(self):
        code, _, err = run_cli(["parse", "y + 1"])
        assert code == 2
        assert "y" in err


class TestSequenceSpecs:
    def test_toeplitz_spec(self):
        seq = build_sequence("toeplitz(2*cos(theta))")
        T = seq(5)
        np.testing.assert_allclose(T, np.eye(5, k=1) + np.eye(5, k=-1), atol=1e-12)

    def test_glt_spec(self):
        seq = build_sequence("glt(x | 1)")
        np.testing.assert_allclose(seq(4), np.diag([0.25, 0.5, 0.75, 1.0]), atol=1e-12)

    def test_counterexample_spec(self):
        seq = build_sequence("counterexample(alt_identity)")
        np.testing.assert_array_equal(seq(3), -np.eye(3))

    def test_identity_zero(self):
        np.testing.assert_array_equal(build_sequence("identity")(3), np.eye(3))
        np.testing.assert_array_equal(build_sequence("zero")(3), np.zeros((3, 3)))

    def test_lc_spec(self):
        seq = build_sequence("lc(x | exp(i*theta))")
        A = seq(16)
        assert np.linalg.norm(A.conj().T @ A - A @ A.conj().T, "fro") <= 1e-10

    def test_lt_spec(self):
        seq = build_sequence("lt(x | 1)")
        np.testing.assert_allclose(
            seq(9), np.diag([1 / 3] * 3 + [2 / 3] * 3 + [1.0] * 3), atol=1e-12
        )

    def test_normal_form_spec(self):
        seq = build_sequence("normal-form(x | 2*cos(theta))")
        A = seq(16)
        assert np.linalg.norm(A.conj().T @ A - A @ A.conj().T, "fro") <= 1e-10

    def test_multi_term_glt_spec(self):
        seq = build_sequence("glt(x | 2*cos(theta) ; 1 | 1)")
        A = seq(8)
        expect = np.diag(np.arange(1, 9) / 8) @ (np.eye(8, k=1) + np.eye(8, k=-1)) + np.eye(8)
        np.testing.assert_allclose(A, expect, atol=1e-12)

    def test_bad_spec_raises_config_error(self):
        with pytest.raises(ConfigError):
            build_sequence("frobnicate(x)")
        with pytest.raises(ConfigError):
            build_sequence("toeplitz(x)")  # x not allowed in a theta symbol


class TestConfigValidation:
    def test_missing_seed(self, tmp_path):
        cfg = write_config(
            tmp_path,
            "[exp]\nkind = symbol-check\nsequence = identity\nsymbol = 1\nsizes = 8,16\n",
        )
        code, _, err = run_cli(["run", cfg])
        assert code == 2
        assert "seed" in err

    def test_unknown_kind(self, tmp_path):
        cfg = write_config(tmp_path, "[global]\nseed = 1\n\n[exp]\nkind = nonsense\n")
        code, _, err = run_cli(["run", cfg])
        assert code == 2

    def test_malformed_expression_reports_position(self, tmp_path):
        cfg = write_config(
            tmp_path,
            "[global]\nseed = 1\n\n[exp]\nkind = symbol-check\n"
            "sequence = toeplitz(2**cos(theta))\nsymbol = 1\nsizes = 8,16\n",
        )
        code, _, err = run_cli(["run", cfg])
        assert code == 2
        assert "position" in err

    def test_descending_sizes_rejected(self, tmp_path):
        cfg = write_config(
            tmp_path,
            "[global]\nseed = 1\n\n[exp]\nkind = symbol-check\n"
            "sequence = identity\nsymbol = 1\nsizes = 16,8\n",
        )
        code, _, err = run_cli(["run", cfg])
        assert code == 2

    def test_load_config_roundtrip(self, tmp_path):
        cfg = write_config(tmp_path, GOOD_CONFIG)
        rc = load_config(cfg)
        assert rc.seed == 7
        assert len(rc.experiments) == 1
        assert rc.experiments[0].kind == "symbol-check"


class TestRunCommand:
    def test_szego_ladder_exits_zero(self, tmp_path):
        cfg = write_config(tmp_path, GOOD_CONFIG)
        code, out, _ = run_cli(["run", cfg])
        assert code == 0
        reader = csv.reader(io.StringIO(out))
        header = next(reader)
        assert tuple(header) == CSV_HEADER
        rows = list(reader)
        assert all(r[5] in ("PASS", "FAIL", "N/A") for r in rows)
        assert any(r[5] == "PASS" for r in rows)

    def test_alt_identity_eig_check_exits_one(self, tmp_path):
        cfg = write_config(
            tmp_path,
            "[global]\nseed = 1\n\n[alt]\nkind = symbol-check\n"
            "sequence = counterexample(alt_identity)\nsymbol = 1\nmode = eig\n"
            "sizes = 128, 129, 256, 257\n",
        )
        code, out, _ = run_cli(["run", cfg])
        assert code == 1
        assert "FAIL" in out

    def test_output_file_and_determinism(self, tmp_path):
        out_path = tmp_path / "report.csv"
        cfg = write_config(
            tmp_path,
            f"[global]\nseed = 3\noutput = {out_path}\n\n[t_vs_c]\nkind = acs\n"
            "sequence_a = toeplitz(2*cos(theta))\nsequence_b = circulant(2*cos(theta))\n"
            "sizes = 8, 16, 32, 64\n",
        )
        code1, _, _ = run_cli(["run", cfg])
        first = out_path.read_bytes()
        code2, _, _ = run_cli(["run", cfg])
        second = out_path.read_bytes()
        assert code1 == code2 == 0
        assert first == second
        assert b"\r" not in first

    def test_dump_matrices(self, tmp_path):
        out_path = tmp_path / "report.csv"
        cfg = write_config(
            tmp_path,
            f"[global]\nseed = 3\noutput = {out_path}\n\n[shift]\nkind = symbol-check\n"
            "sequence = toeplitz(exp(i*theta))\nsymbol = exp(i*theta)\nsizes = 8, 16\n",
        )
        code, _, _ = run_cli(["run", cfg, "--dump-matrices"])
        assert code == 0
        dump = tmp_path / "shift_8.csv"
        assert dump.exists()
        rows = list(csv.reader(dump.open()))
        # the shift Toeplitz has n-1 subdiagonal entries
        assert len(rows) == 7
        i, j, re, im = rows[0]
        assert int(i) == int(j) + 1
        assert float(re) == 1.0 and float(im) == 0.0

    def test_shift_test_kind(self, tmp_path):
        cfg = write_config(
            tmp_path,
            "[global]\nseed = 1\n\n[jordan]\nkind = shift-test\n"
            "sequence = counterexample(jordan_shift)\nsymbol = exp(i*theta)\n"
            "shifts = 0, 1\nsizes = 16, 32, 64\n",
        )
        code, out, _ = run_cli(["run", cfg])
        assert code == 0
        assert "eig_conclusion_licensed,0" in out

    def test_hermitian_fn_kind(self, tmp_path):
        cfg = write_config(
            tmp_path,
            "[global]\nseed = 1\n\n[sq]\nkind = hermitian-fn\n"
            "sequence = toeplitz(2*cos(theta))\nfunction = t^2\nsizes = 16, 32, 64\n",
        )
        code, out, _ = run_cli(["run", cfg])
        assert code == 0

    def test_normal_form_kind(self, tmp_path):
        cfg = write_config(
            tmp_path,
            "[global]\nseed = 1\n\n[nf]\nkind = normal-form\n"
            "terms = x | 2*cos(theta)\nsizes = 16, 36, 64\n",
        )
        code, out, _ = run_cli(["run", cfg])
        assert code == 0
        assert "acs_rho" in out

    def test_embed_kind(self, tmp_path):
        cfg = write_config(
            tmp_path,
            "[global]\nseed = 1\n\n[emb]\nkind = embed\n"
            "sequence_a = circulant(exp(i*theta))\nsequence_b = toeplitz(exp(i*theta))\n"
            "sizes = 16, 32\n",
        )
        code, out, _ = run_cli(["run", cfg])
        assert code == 0
        assert "embed_residual_p" in out

    def test_counterexample_kind_routes_to_demo(self, tmp_path):
        cfg = write_config(
            tmp_path,
            "[global]\nseed = 1\n\n[hs]\nkind = counterexample\nname = half_shift\n",
        )
        code, out, _ = run_cli(["run", cfg])
        assert code == 0
        assert "square_norm" in out


class TestDemoCommand:
    def test_unknown_demo(self):
        code, _, err = run_cli(["demo", "nope"])
        assert code == 2

    def test_alt_identity_fails(self):
        code, out, _ = run_cli(["demo", "alt_identity"])
        assert code == 1
        reader = csv.reader(io.StringIO(out))
        next(reader)
        gap_rows = [r for r in reader if r[2] == "even_odd_gap"]
        assert len(gap_rows) == 1
        assert float(gap_rows[0][3]) >= 0.9

    def test_half_shift_passes(self):
        code, out, _ = run_cli(["demo", "half_shift"])
        assert code == 0
        reader = csv.reader(io.StringIO(out))
        next(reader)
        rows = list(reader)
        squares = [r for r in rows if r[2] == "square_norm"]
        assert squares and all(float(r[3]) == 0.0 for r in squares)
        assert all(r[5] != "FAIL" for r in rows)

    def test_scaled_cycle_passes_with_p_bound(self):
        code, out, _ = run_cli(["demo", "scaled_cycle"])
        assert code == 0
        reader = csv.reader(io.StringIO(out))
        next(reader)
        rows = list(reader)
        p_rows = [r for r in rows if r[2] == "p"]
        assert p_rows
        for r in p_rows:
            assert float(r[3]) <= 2.0 / int(r[1]) + 1e-9
        assert any(r[2] == "zero_distributed" and r[5] == "PASS" for r in rows)
        assert any(r[2] == "fn_pathology_gap" for r in rows)

    def test_jordan_shift_flags_unlicensed_conclusion(self):
        code, out, _ = run_cli(["demo", "jordan_shift"])
        assert code == 0
        assert "eig_conclusion_licensed,0" in out

    def test_demo_determinism(self):
        _, out1, _ = run_cli(["demo", "scaled_cycle"])
        _, out2, _ = run_cli(["demo", "scaled_cycle"])
        assert out1 == out2


class TestNumericalFailureRows:
    def test_hermitian_violation_becomes_fail_row(self, tmp_path):
        # the shift Toeplitz is not Hermitian: the experiment must record a
        # FAIL row and exit 1 instead of crashing
        cfg = write_config(
            tmp_path,
            "[global]\nseed = 1\n\n[bad]\nkind = hermitian-fn\n"
            "sequence = toeplitz(exp(i*theta))\nfunction = t\nsizes = 8, 16\n",
        )
        code, out, _ = run_cli(["run", cfg])
        assert code == 1
        assert "error[" in out and "FAIL" in out


class TestThreadCap:
    def test_thread_env_var_preserves_results(self, tmp_path, monkeypatch):
        cfg = write_config(tmp_path, GOOD_CONFIG)
        _, serial, _ = run_cli(["run", cfg])
        monkeypatch.setenv("GLT_LAB_THREADS", "2")
        _, threaded, _ = run_cli(["run", cfg])
        monkeypatch.setenv("GLT_LAB_THREADS", "1")
        _, capped, _ = run_cli(["run", cfg])
        assert serial == threaded == capped


class TestToleranceOverride:
    def test_override_can_force_failure(self, tmp_path):
        cfg = write_config(
            tmp_path,
            "[global]\nseed = 1\n\n[strict]\nkind = symbol-check\n"
            "sequence = toeplitz(2*cos(theta))\nsymbol = 2*cos(theta)\n"
            "sizes = 16, 32\ntolerance = 1e-12\n",
        )
        code, out, _ = run_cli(["run", cfg])
        assert code == 1
        assert "FAIL" in out


class TestReportRows:
    def test_verdict_validation(self):
        with pytest.raises(ValueError):
            ReportRow("e", 1, "m", 0.0, None, "MAYBE")

    def test_nonfinite_value_rejected(self):
        with pytest.raises(ValueError):
            ReportRow("e", 1, "m", float("nan"), None, "PASS")

    def test_csv_format_17_digits(self):
        rows = [ReportRow("e", 4, "m", 1 / 3, 2 / 3, "PASS")]
        text = rows_to_csv(rows)
        assert "0.33333333333333331" in text
        assert "0.66666666666666663" in text
        assert text.endswith("\n")
        assert "\r" not in text
