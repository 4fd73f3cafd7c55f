import numpy as np
import pytest

from glt_lab import (
    DomainError,
    EvalError,
    TrigPoly,
    UnknownNameError,
    block_layout,
    circulant,
    circulant_spectrum,
    counterexample,
    counterexample_seq,
    d_af,
    d_grid,
    diag_sampling,
    fourier_matrix,
    lc_op,
    lt_op,
    parse_expr,
    q_block,
    toeplitz,
)

ONE = parse_expr("1", "a")
X = parse_expr("x", "a")
CONST1 = TrigPoly.constant(1)
TWO_COS = TrigPoly.from_coeff_map({1: 1, -1: 1})
SHIFT = TrigPoly.from_coeff_map({1: 1})


class TestBlockLayout:
    @pytest.mark.parametrize("n", range(4, 150))
    def test_partition_identities(self, n):
        lay = block_layout(n)
        assert lay.m**2 <= n < (lay.m + 1) ** 2
        assert lay.t == n % lay.m
        assert lay.m * lay.block + lay.t == n


class TestToeplitz:
    def test_constant_gives_identity(self):
        np.testing.assert_array_equal(toeplitz(CONST1, 5), np.eye(5))

    def test_shift_polynomial_fills_subdiagonal(self):
        T = toeplitz(SHIFT, 4)
        np.testing.assert_array_equal(T, np.eye(4, k=-1))

    def test_two_cos_tridiagonal(self):
        T = toeplitz(TWO_COS, 5)
        np.testing.assert_array_equal(T, np.eye(5, k=1) + np.eye(5, k=-1))

    def test_bandwidth_equals_degree(self):
        f = TrigPoly.from_coeff_map({-2: 1j, 0: 3, 2: 2})
        T = toeplitz(f, 8)
        for i in range(8):
            for j in range(8):
                if abs(i - j) > 2:
                    assert T[i, j] == 0
                else:
                    assert T[i, j] == f.coeff(i - j)


class TestDiagSampling:
    def test_constant(self):
        np.testing.assert_array_equal(diag_sampling(ONE, 3), np.eye(3))

    def test_linear(self):
        np.testing.assert_allclose(diag_sampling(X, 4), np.diag([0.25, 0.5, 0.75, 1.0]))

    def test_square(self):
        np.testing.assert_allclose(diag_sampling(parse_expr("x^2", "a"), 2), np.diag([0.25, 1.0]))

    def test_singular_node_raises(self):
        with pytest.raises(EvalError):
            diag_sampling(parse_expr("1/(x-1)", "a"), 4)


class TestCirculant:
    def test_shift_matches_cyclic_matrix(self):
        # downward cyclic shift: subdiagonal ones and a top-right corner one,
        # sharing the band of toeplitz(SHIFT, 4)
        expect = np.array(
            [[0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]], dtype=float
        )
        np.testing.assert_array_equal(circulant(SHIFT, 4).real, expect)

    def test_band_agrees_with_toeplitz(self):
        f = TrigPoly.from_coeff_map({-2: 1j, -1: 2, 1: 3, 2: 0.5})
        C = circulant(f, 9)
        T = toeplitz(f, 9)
        for i in range(9):
            for j in range(9):
                if abs(i - j) <= 2:
                    assert C[i, j] == T[i, j]

    def test_constant_identity(self):
        np.testing.assert_array_equal(circulant(CONST1, 5), np.eye(5))

    def test_two_cos_adds_corners(self):
        C = circulant(TWO_COS, 5)
        expect = np.eye(5, k=1) + np.eye(5, k=-1)
        expect[0, 4] = expect[4, 0] = 1
        np.testing.assert_array_equal(C.real, expect)

    def test_rows_are_cyclic_shifts(self):
        f = TrigPoly.from_coeff_map({-1: 2j, 0: 1, 1: 3})
        C = circulant(f, 7)
        for i in range(1, 7):
            np.testing.assert_array_equal(C[i], np.roll(C[i - 1], 1))

    def test_size_precondition(self):
        with pytest.raises(DomainError):
            circulant(TWO_COS, 2)


class TestCirculantSpectrum:
    def test_constant(self):
        np.testing.assert_array_equal(circulant_spectrum(CONST1, 4), np.eye(4))

    def test_fourth_roots(self):
        D = circulant_spectrum(SHIFT, 4)
        np.testing.assert_allclose(np.diag(D), [1, 1j, -1, -1j], atol=1e-14)

    def test_two_cos_values(self):
        D = circulant_spectrum(TWO_COS, 4)
        np.testing.assert_allclose(np.diag(D), [2, 0, -2, 0], atol=1e-14)


class TestFourierMatrix:
    def test_size_one(self):
        np.testing.assert_allclose(fourier_matrix(1), [[1]], atol=1e-15)

    def test_size_two(self):
        np.testing.assert_allclose(
            fourier_matrix(2), np.array([[1, 1], [1, -1]]) / np.sqrt(2), atol=1e-15
        )

    @pytest.mark.parametrize("n", [1, 2, 3, 8, 17, 64])
    def test_unitary(self, n):
        F = fourier_matrix(n)
        assert np.abs(F.conj().T @ F - np.eye(n)).max() <= 1e-12

    def test_diagonalizes_cyclic_shift(self):
        # independent oracle: direct triple product against the shift matrix
        F = fourier_matrix(4)
        D = circulant_spectrum(SHIFT, 4)
        C = circulant(SHIFT, 4)
        assert np.abs(F.conj().T @ D @ F - C).max() <= 1e-12

    @pytest.mark.parametrize("n", [8, 21])
    def test_diagonalizes_general_circulant(self, n):
        f = TrigPoly.from_coeff_map({-2: 1 + 2j, 0: 0.5, 1: -1j})
        F = fourier_matrix(n)
        D = circulant_spectrum(f, n)
        assert np.abs(F.conj().T @ D @ F - circulant(f, n)).max() <= 1e-10


def kron_block_oracle(block_vals, B, n):
    """Independent assembly: kron(diag(values), B) padded with zeros."""
    core = np.kron(np.diag(block_vals), B)
    M = np.zeros((n, n), dtype=complex)
    M[: core.shape[0], : core.shape[1]] = core
    return M


class TestLocallyToeplitz:
    def test_identity_case(self):
        np.testing.assert_array_equal(lt_op(ONE, CONST1, 9), np.eye(9))

    def test_step_diagonal(self):
        expect = np.diag([1 / 3] * 3 + [2 / 3] * 3 + [1.0] * 3)
        np.testing.assert_allclose(lt_op(X, CONST1, 9), expect, atol=1e-15)

    def test_matches_kronecker_oracle(self):
        n = 10  # m=3, block=3, t=1
        got = lt_op(ONE, TWO_COS, n)
        oracle = kron_block_oracle(np.ones(3), toeplitz(TWO_COS, 3), n)
        np.testing.assert_allclose(got, oracle, atol=1e-15)
        assert np.abs(got[9, :]).max() == 0 and np.abs(got[:, 9]).max() == 0

    def test_size_precondition(self):
        with pytest.raises(DomainError):
            lt_op(ONE, CONST1, 3)


class TestLocallyCirculant:
    def test_identity_case(self):
        np.testing.assert_array_equal(lc_op(ONE, CONST1, 9), np.eye(9))

    def test_matches_definition_oracle(self):
        n = 16  # m=4, block=4
        got = lc_op(X, SHIFT, n)
        oracle = kron_block_oracle(np.arange(1, 5) / 4, circulant(SHIFT, 4), n)
        np.testing.assert_allclose(got, oracle, atol=1e-15)

    @pytest.mark.parametrize("n", [16, 25, 40, 100])
    def test_normality(self, n):
        A = lc_op(X, TWO_COS, n)
        assert np.linalg.norm(A.conj().T @ A - A @ A.conj().T, "fro") <= 1e-10

    def test_block_circulant_precondition(self):
        # n=9 gives block=3 which cannot hold a degree-2 circulant
        with pytest.raises(DomainError):
            lc_op(ONE, TrigPoly.from_coeff_map({2: 1, -2: 1}), 9)


class TestQBlockAndDiagFactors:
    def test_block_structure_n9(self):
        Q = q_block(9)
        F3 = fourier_matrix(3)
        for i in range(3):
            np.testing.assert_array_equal(Q[3 * i : 3 * i + 3, 3 * i : 3 * i + 3], F3)
        assert np.abs(Q.conj().T @ Q - np.eye(9)).max() <= 1e-12

    def test_trailing_identity_n10(self):
        Q = q_block(10)
        assert Q[9, 9] == 1
        assert np.abs(Q[9, :9]).max() == 0

    @pytest.mark.parametrize("af", [(ONE, CONST1), (X, SHIFT), (X, TWO_COS)])
    def test_conjugation_identity(self, af):
        a, f = af
        n = 16
        lhs = lc_op(a, f, n)
        Q = q_block(n)
        D = d_af(a, f, n)
        assert np.abs(lhs - Q.conj().T @ D @ Q).max() <= 1e-10

    def test_d_af_identity(self):
        np.testing.assert_array_equal(d_af(ONE, CONST1, 9), np.eye(9))

    def test_d_af_step(self):
        expect = np.diag([1 / 3] * 3 + [2 / 3] * 3 + [1.0] * 3)
        np.testing.assert_allclose(d_af(X, CONST1, 9), expect, atol=1e-15)

    def test_d_af_roots_of_unity(self):
        D = d_af(ONE, SHIFT, 16)
        np.testing.assert_allclose(np.diag(D), np.tile([1, 1j, -1, -1j], 4), atol=1e-12)


class TestDGrid:
    def test_constant_with_padding(self):
        D = d_grid(parse_expr("1+x-x", "k"), 10)
        np.testing.assert_allclose(np.diag(D), [1] * 9 + [0], atol=1e-15)

    def test_multiset_matches_separable_diagonal_for_even_block(self):
        # even block size: the theta grids agree modulo 2*pi, so the sampled
        # multisets coincide even though the listed order differs
        k = parse_expr("x*(2*cos(theta))", "k")
        got = np.sort(np.diag(d_grid(k, 16)).real)
        ref = np.sort(np.diag(d_af(X, TWO_COS, 16)).real)
        np.testing.assert_allclose(got, ref, atol=1e-12)

    def test_constant_in_theta_blocks(self):
        D = d_grid(parse_expr("x+theta-theta", "k"), 16)
        expect = np.repeat(np.arange(1, 5) / 4, 4)
        np.testing.assert_allclose(np.diag(D), expect, atol=1e-15)

    def test_even_block_nodes_start_at_minus_pi(self):
        # block=4: theta nodes run -pi + j*pi/2 for j = 0..3, in that order
        D = d_grid(parse_expr("theta+x-x", "k"), 16)
        expect_block = np.array([-np.pi, -np.pi / 2, 0.0, np.pi / 2])
        np.testing.assert_allclose(np.diag(D)[:4], expect_block, atol=1e-14)

    def test_odd_block_alternating_order(self):
        # block=5: theta nodes run 0, +h, -h, +2h, -2h with h = 2pi/5
        D = d_grid(parse_expr("theta+x-x", "k"), 25)
        h = 2 * np.pi / 5
        expect_block = np.array([0, h, -h, 2 * h, -2 * h])
        np.testing.assert_allclose(np.diag(D)[:5], expect_block, atol=1e-12)

    def test_singularity_raises(self):
        with pytest.raises(EvalError):
            d_grid(parse_expr("1/(x-1)", "k"), 16)


class TestCounterexamples:
    def test_alt_identity(self):
        np.testing.assert_array_equal(counterexample("alt_identity", 3), -np.eye(3))
        np.testing.assert_array_equal(counterexample("alt_identity", 4), np.eye(4))

    def test_half_shift_even(self):
        A = counterexample("half_shift", 4)
        expect = np.zeros((4, 4))
        expect[0, 2] = expect[1, 3] = 1
        np.testing.assert_array_equal(A.real, expect)
        assert np.abs(A @ A).max() == 0

    @pytest.mark.parametrize("n", [2, 5, 8, 13])
    def test_half_shift_square_vanishes(self, n):
        A = counterexample("half_shift", n)
        assert np.abs(A @ A).max() == 0

    def test_scaled_cycle_small(self):
        E = counterexample("scaled_cycle", 3)
        assert E[0, 1] == pytest.approx(1 / 3)
        assert E[1, 2] == pytest.approx(1 / 3)
        assert E[2, 0] == 9
        # oracle: E^H E is diagonal, so singular values are the column norms
        col_norms = np.sqrt(np.diag(E.conj().T @ E).real)
        np.testing.assert_allclose(np.sort(col_norms), [1 / 3, 1 / 3, 9], atol=1e-14)
        sv = np.linalg.svd(E, compute_uv=False)
        np.testing.assert_allclose(sv, [9, 1 / 3, 1 / 3], atol=1e-12)

    def test_scaled_cycle_cap(self):
        E = counterexample("scaled_cycle", 13)
        assert E[12, 0] == 1e3
        assert counterexample("scaled_cycle", 12)[11, 0] == pytest.approx(12.0**11)
        seq = counterexample_seq("scaled_cycle")
        assert seq.info["corner_capped_above"] == 12

    def test_jordan_shift_is_shift_toeplitz(self):
        np.testing.assert_array_equal(
            counterexample("jordan_shift", 6), toeplitz(SHIFT, 6)
        )

    def test_unknown_name(self):
        with pytest.raises(UnknownNameError):
            counterexample("not_a_thing", 4)


class TestCornerRank:
    @pytest.mark.parametrize("seed", range(6))
    def test_toeplitz_circulant_difference_rank(self, seed):
        rng = np.random.default_rng(seed)
        d = int(rng.integers(0, 5))
        f = TrigPoly(rng.standard_normal(2 * d + 1) + 1j * rng.standard_normal(2 * d + 1))
        n = 32
        diff = toeplitz(f, n) - circulant(f, n)
        s = np.linalg.svd(diff, compute_uv=False)
        if s[0] == 0:
            rank = 0
        else:
            rank = int(np.count_nonzero(s > 1e-10 * s[0]))
        assert rank <= 2 * d * d


class TestDeterminism:
    def test_generators_are_pure(self):
        seq = counterexample_seq("scaled_cycle")
        assert seq(9).tobytes() == seq(9).tobytes()
        a = parse_expr("sin(x)", "a")
        assert lt_op(a, TWO_COS, 20).tobytes() == lt_op(a, TWO_COS, 20).tobytes()
