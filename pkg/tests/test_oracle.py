"""Exact DP and renewal oracles for the weak-record count."""

import math

import numpy as np
import pytest

from recordwalk import (
    IncrementLaw,
    Provenance,
    build_kernel,
    exact_An_distribution,
    renewal_tail,
    renewal_tail_table,
    return_prob_partial_sums,
    tau_pmf,
)

SYM = IncrementLaw.explicit("right", 0.5, [0.0, 0.5])
SYM_LEFT = IncrementLaw.explicit("left", 0.5, [0.0, 0.5])
ASYM = IncrementLaw.explicit("right", 0.4, [0.35, 0.1, 0.15])
STABLE = IncrementLaw.stable("right", 0.5, 0.5)
STABLE_LEFT = IncrementLaw.stable("left", 0.5, 0.5)

ALL_LAWS = [SYM, SYM_LEFT, ASYM, STABLE, STABLE_LEFT]


class TestKernel:
    @pytest.mark.parametrize("law", ALL_LAWS)
    def test_rows_are_stochastic(self, law):
        K = build_kernel(law, 12).matrix
        assert np.allclose(K.sum(axis=1), 1.0, atol=1e-12)
        assert np.all(K >= 0.0)

    def test_symmetric_right_rows(self):
        K = build_kernel(SYM, 4).matrix
        assert K[0, 0] == 0.5 and K[0, 1] == 0.5
        assert K[1, 0] == 0.5 and K[1, 2] == 0.5
        assert K[1, 1] == 0.0

    def test_left_rows_lump_deep_jumps(self):
        K = build_kernel(IncrementLaw.explicit("left", ASYM.q, ASYM.p), 5).matrix
        # from level 0: up with q, stay with p_0 + p_1 + p_2
        assert K[0, 1] == pytest.approx(0.4)
        assert K[0, 0] == pytest.approx(0.6)
        # from level 2: land on 0 with p_2 + tail, on 1 with p_1, on 2 with p_0
        assert K[2, 2] == pytest.approx(0.35)
        assert K[2, 1] == pytest.approx(0.1)
        assert K[2, 0] == pytest.approx(0.15)

    def test_overflow_absorbs(self):
        kernel = build_kernel(SYM, 3)
        K = kernel.matrix
        i = kernel.overflow_index
        assert K[i, i] == 1.0
        assert K[3, i] == 0.5  # level 3 jumping above the cap

    def test_cap_check(self):
        with pytest.raises(ValueError):
            build_kernel(SYM, 0)


class TestExactDistribution:
    def test_shape_and_monotone(self):
        table = exact_An_distribution(build_kernel(SYM, 10), 10)
        assert table.provenance is Provenance.DP
        assert table.tail[0] == 1.0
        assert np.all(np.diff(table.tail) <= 1e-15)
        assert table.error_bound == 0.0

    def test_all_records_boundary(self):
        # A_n = n forces every step to stay at the running maximum
        for n in (5, 20):
            table = exact_An_distribution(build_kernel(SYM, n), n)
            assert table.tail[n] == pytest.approx(0.5**n, abs=1e-15)

    def test_kmax_lumps(self):
        full = exact_An_distribution(build_kernel(SYM, 12), 12)
        capped = exact_An_distribution(build_kernel(SYM, 12), 12, kmax=4)
        assert np.allclose(full.tail[:5], capped.tail, atol=1e-15)

    def test_short_cap_reports_error(self):
        table = exact_An_distribution(build_kernel(SYM, 5), 30)
        assert table.error_bound > 0.0

    def test_n_check(self):
        with pytest.raises(ValueError):
            exact_An_distribution(build_kernel(SYM, 5), 0)

    def test_prob_at_least(self):
        table = exact_An_distribution(build_kernel(SYM, 8), 8)
        assert table.prob_at_least(0) == 1.0
        assert table.prob_at_least(99) == 0.0
        with pytest.raises(ValueError):
            table.prob_at_least(-1)


class TestTauPmf:
    def test_symmetric_coefficients(self):
        c = tau_pmf(SYM, 6).coeffs
        assert np.allclose(c, [0.0, 0.5, 0.25, 0.0, 0.0625, 0.0, 0.03125],
                           atol=1e-15)

    @pytest.mark.parametrize("law", ALL_LAWS)
    def test_proper(self, law):
        c = tau_pmf(law, 300).coeffs
        assert np.all(c >= -1e-10)
        assert np.all(np.cumsum(c) <= 1.0 + 1e-10)

    def test_order_check(self):
        with pytest.raises(ValueError):
            tau_pmf(SYM, 0)


class TestRenewal:
    def test_single_convolution_is_cdf(self):
        f = tau_pmf(SYM, 20).coeffs
        assert renewal_tail(tau_pmf(SYM, 20), 20, 1) == pytest.approx(
            float(f[:21].sum()), abs=1e-15
        )

    def test_argument_checks(self):
        tau = tau_pmf(SYM, 10)
        with pytest.raises(ValueError):
            renewal_tail(tau, 10, 0)
        with pytest.raises(ValueError):
            renewal_tail(tau, 10, 11)
        with pytest.raises(ValueError):
            renewal_tail(tau, 50, 2)  # pmf truncated too short

    @pytest.mark.parametrize("law", ALL_LAWS)
    def test_dp_equals_renewal(self, law):
        n = 20
        dp = exact_An_distribution(build_kernel(law, n), n)
        rn = renewal_tail_table(law, n)
        assert rn.provenance is Provenance.RENEWAL
        assert np.max(np.abs(dp.tail - rn.tail)) <= 1e-13

    def test_table_matches_pointwise(self):
        tab = renewal_tail_table(ASYM, 15)
        tau = tau_pmf(ASYM, 15)
        for k in (1, 5, 15):
            assert tab.tail[k] == pytest.approx(
                renewal_tail(tau, 15, k), abs=1e-14
            )


class TestReturnProbabilities:
    def test_symmetric_closed_form(self):
        # the reflected symmetric walk sits at 0 at step m with probability
        # binom(m, floor(m/2)) / 2^m
        u, U = return_prob_partial_sums(SYM, 30)
        for m in range(31):
            expected = math.comb(m, m // 2) / 2.0**m
            assert u[m] == pytest.approx(expected, abs=1e-14)
        assert U[30] == pytest.approx(float(u.sum()), abs=1e-13)

    def test_n_check(self):
        with pytest.raises(ValueError):
            return_prob_partial_sums(SYM, 0)

    @pytest.mark.parametrize("law", [ASYM, STABLE, STABLE_LEFT])
    def test_nonnegative_and_increasing(self, law):
        u, U = return_prob_partial_sums(law, 200)
        assert u[0] == 1.0
        assert np.all(u >= 0.0)
        assert np.all(np.diff(U) >= 0.0)


def test_stable_truncation_surfaces_error_bound():
    kernel = build_kernel(STABLE, 20)
    assert kernel.truncation_mass > 0.0
    table = exact_An_distribution(kernel, 20)
    assert table.error_bound >= 20 * kernel.truncation_mass
