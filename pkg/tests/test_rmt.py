"""Haar sampling, secular coefficients, Monte Carlo moments, exact constants."""

from fractions import Fraction as F
from math import comb, factorial

import numpy as np
import pytest

from pseudomagic.rmt import (
    full_poly_moment_exact,
    g_factor,
    haar_unitary,
    mixed_moment_mc,
    secular_abs_moment_mc,
    secular_coefficients,
    truncated_poly_moment_mc,
)


class TestHaarSampling:
    @pytest.mark.parametrize("n", [1, 2, 5, 16])
    def test_unitarity(self, n):
        m = haar_unitary(n, seed=3)
        assert np.max(np.abs(m @ m.conj().T - np.eye(n))) < 1e-12

    def test_n1_is_a_phase(self):
        m = haar_unitary(1, seed=9)
        assert abs(abs(m[0, 0]) - 1.0) < 1e-14

    def test_reproducible(self):
        assert np.array_equal(haar_unitary(4, seed=7), haar_unitary(4, seed=7))

    def test_seeds_differ(self):
        assert not np.array_equal(haar_unitary(4, seed=7), haar_unitary(4, seed=8))

    def test_validation(self):
        with pytest.raises(ValueError):
            haar_unitary(0, seed=1)


class TestSecularCoefficients:
    def test_identity_gives_binomials(self):
        e = secular_coefficients(np.eye(4))
        assert np.allclose(e, [comb(4, j) for j in range(5)])

    def test_first_is_trace_last_is_unit_modulus(self):
        m = haar_unitary(6, seed=11)
        e = secular_coefficients(m)
        assert e[0] == 1
        assert abs(e[1] - np.trace(m)) < 1e-10
        assert abs(abs(e[6]) - 1.0) < 1e-10

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_matches_eigenvalue_expansion(self, n):
        # independent route: char poly coefficients from an eigensolver
        m = haar_unitary(n, seed=n)
        e = secular_coefficients(m)
        cp = np.poly(np.linalg.eigvals(m))  # z^n + c_1 z^(n-1) + ... ; c_j = (-1)^j e_j
        expected = [(-1) ** j * cp[j] for j in range(n + 1)]
        assert np.max(np.abs(e - expected)) < 1e-8

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            secular_coefficients(np.ones((2, 3)))


class TestExactConstants:
    @pytest.mark.parametrize("n", range(1, 21))
    def test_second_moment_law(self, n):
        assert full_poly_moment_exact(n, 1) == n + 1

    def test_k0_is_one(self):
        assert full_poly_moment_exact(7, 0) == 1

    def test_g_anchors(self):
        assert g_factor(1) == 1
        assert g_factor(2) == F(1, 12)
        assert g_factor(3) * factorial(9) == 42
        assert g_factor(4) * factorial(16) == 24024

    def test_limit_ratio(self):
        g2 = g_factor(2)
        r50 = full_poly_moment_exact(50, 2) / 50**4
        r200 = full_poly_moment_exact(200, 2) / 200**4
        assert abs(r50 / g2 - 1) < 0.20
        assert abs(r200 / g2 - 1) < 0.10

    def test_validation(self):
        with pytest.raises(ValueError):
            full_poly_moment_exact(0, 1)
        with pytest.raises(ValueError):
            g_factor(0)


class TestMonteCarloDriver:
    def test_reproducible_for_fixed_seed_and_threads(self):
        a = secular_abs_moment_mc(2, 1, 5, 4000, seed=5, threads=2)
        b = secular_abs_moment_mc(2, 1, 5, 4000, seed=5, threads=2)
        assert a.mean == b.mean and a.stderr == b.stderr

    def test_worker_counts_statistically_equivalent(self):
        a = secular_abs_moment_mc(2, 1, 5, 20000, seed=5, threads=1)
        b = secular_abs_moment_mc(2, 1, 5, 20000, seed=5, threads=3)
        assert abs(a.mean - b.mean) < 5 * (a.stderr + b.stderr)

    def test_more_threads_than_samples(self):
        est = secular_abs_moment_mc(1, 1, 3, 2, seed=0, threads=8)
        assert est.samples == 2


class TestSecularMoments:
    def test_second_moment_is_one(self):
        est = secular_abs_moment_mc(2, 1, 5, 30000, seed=101)
        assert est.target == 1
        assert est.z_score() < 4

    def test_fourth_moment_against_count(self):
        est = secular_abs_moment_mc(2, 2, 8, 30000, seed=102)
        assert est.target == 3
        assert est.z_score() < 4

    def test_first_coefficient_fourth_moment(self):
        est = secular_abs_moment_mc(1, 2, 4, 30000, seed=103)
        assert est.target == 2
        assert est.z_score() < 4

    def test_below_threshold_has_no_target(self):
        est = secular_abs_moment_mc(2, 2, 3, 100, seed=1)
        assert est.target is None
        assert est.z_score() is None

    def test_validation(self):
        with pytest.raises(ValueError):
            secular_abs_moment_mc(0, 1, 4, 10, seed=1)
        with pytest.raises(ValueError):
            secular_abs_moment_mc(5, 1, 4, 10, seed=1)
        with pytest.raises(ValueError):
            secular_abs_moment_mc(1, 1, 4, 0, seed=1)


class TestMixedMoments:
    def test_square_against_contingency(self):
        est = mixed_moment_mc((2, 0), (0, 1), 4, 30000, seed=104)
        assert est.target == 1
        assert est.z_score() < 4

    def test_plain_mean_vanishes(self):
        est = mixed_moment_mc((1,), (0,), 5, 30000, seed=105)
        assert est.target == 0
        assert abs(est.mean) < 4 * est.stderr

    def test_weight_obstruction_target_zero(self):
        est = mixed_moment_mc((2,), (1,), 4, 20000, seed=106)
        assert est.target == 0
        assert abs(est.mean) < 4 * est.stderr

    def test_validation(self):
        with pytest.raises(ValueError):
            mixed_moment_mc((1, 2), (1,), 4, 10, seed=1)
        with pytest.raises(ValueError):
            mixed_moment_mc((), (), 4, 10, seed=1)
        with pytest.raises(ValueError):
            mixed_moment_mc((1, 0, 0, 0, 0), (1, 0, 0, 0, 0), 4, 10, seed=1)
        with pytest.raises(ValueError):
            mixed_moment_mc((-1,), (1,), 4, 10, seed=1)


class TestTruncatedMoments:
    def test_l0_is_exactly_one(self):
        est = truncated_poly_moment_mc(0, 3, 5, 1.0, 500, seed=1)
        assert est.mean == pytest.approx(1.0)
        assert est.stderr == pytest.approx(0.0)
        assert est.target == 1

    def test_l1_against_count(self):
        est = truncated_poly_moment_mc(1, 1, 4, 1.0, 30000, seed=107)
        assert est.target == 2
        assert est.z_score() < 4

    def test_off_axis_point(self):
        z = np.exp(0.7j)
        est = truncated_poly_moment_mc(1, 1, 4, z, 30000, seed=108)
        assert est.target == 2
        assert est.z_score() < 4

    def test_below_threshold_has_no_target(self):
        est = truncated_poly_moment_mc(3, 2, 4, 1.0, 100, seed=1)
        assert est.target is None

    def test_non_unit_z_rejected(self):
        with pytest.raises(ValueError):
            truncated_poly_moment_mc(1, 1, 4, 1.5, 10, seed=1)

    def test_l_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            truncated_poly_moment_mc(5, 1, 4, 1.0, 10, seed=1)
