"""Monte Carlo sampling, record counting, and reproducibility."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from recordwalk import (
    IncrementLaw,
    Provenance,
    SimConfig,
    build_kernel,
    count_weak_records,
    empirical_tail,
    exact_An_distribution,
    reflected_zero_visits,
    sample_increment,
)
from recordwalk.montecarlo import _wilson

SYM = IncrementLaw.explicit("right", 0.5, [0.0, 0.5])
SYM_LEFT = IncrementLaw.explicit("left", 0.5, [0.0, 0.5])
ASYM = IncrementLaw.explicit("right", 0.4, [0.35, 0.1, 0.15])
STABLE = IncrementLaw.stable("right", 0.5, 0.5)


class TestConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            SimConfig(SYM, 0, 1000, 1)
        with pytest.raises(ValueError):
            SimConfig(SYM, 10, 0, 1)
        with pytest.raises(ValueError):
            SimConfig(SYM, 10, 1000, 1, workers=0)


class TestSampling:
    def test_symmetric_inverse_cdf(self):
        # CDF order is [unit jump (mass q), jump sizes 0, 1, ...]
        assert sample_increment(SYM, 0.2) == 1
        assert sample_increment(SYM, 0.49) == 1
        assert sample_increment(SYM, 0.6) == -1
        assert sample_increment(SYM, 0.999) == -1

    def test_left_orientation_mirrors(self):
        assert sample_increment(SYM_LEFT, 0.2) == -1
        assert sample_increment(SYM_LEFT, 0.6) == 1

    def test_asym_jump_sizes(self):
        # CDF breakpoints 0.4 | 0.75 | 0.85 | 1.0
        assert sample_increment(ASYM, 0.39) == 1
        assert sample_increment(ASYM, 0.5) == 0
        assert sample_increment(ASYM, 0.8) == -1
        assert sample_increment(ASYM, 0.9) == -2

    def test_uniform_domain(self):
        with pytest.raises(ValueError):
            sample_increment(SYM, 1.0)

    def test_stable_sampling_moments(self):
        rng = np.random.default_rng(3)
        draws = np.array(
            [sample_increment(STABLE, float(u)) for u in rng.random(4000)]
        )
        assert abs(draws.mean()) < 0.1  # critical: zero drift


class TestRecordCounting:
    def test_manual_path(self):
        # S = 1, 0, -1, 0; only the first step is a weak record
        assert count_weak_records([1, -1, -1, 1]) == 1

    def test_all_records(self):
        assert count_weak_records([0, 0, 1, 0]) == 4

    def test_empty_path(self):
        with pytest.raises(ValueError):
            count_weak_records([])

    @given(st.lists(st.sampled_from([-3, -2, -1, 0, 1]), min_size=1,
                    max_size=60))
    @settings(max_examples=200, deadline=None)
    def test_equals_reflected_zero_visits(self, path):
        assert count_weak_records(path) == reflected_zero_visits(path)


class TestEmpiricalTail:
    def test_minimum_paths(self):
        with pytest.raises(ValueError):
            empirical_tail(SimConfig(SYM, 10, 500, 1))

    def test_basic_shape(self):
        table = empirical_tail(SimConfig(SYM, 10, 5000, 42))
        assert table.provenance is Provenance.MONTE_CARLO
        assert table.tail[0] == 1.0
        assert np.all(np.diff(table.tail) <= 0.0)
        assert np.all(table.ci_lo <= table.tail)
        assert np.all(table.tail <= table.ci_hi)

    def test_deterministic_rerun(self):
        a = empirical_tail(SimConfig(SYM, 12, 20000, 7))
        b = empirical_tail(SimConfig(SYM, 12, 20000, 7))
        assert np.array_equal(a.tail, b.tail)

    def test_worker_count_invariance(self):
        one = empirical_tail(SimConfig(ASYM, 12, 30000, 11, workers=1))
        four = empirical_tail(SimConfig(ASYM, 12, 30000, 11, workers=4))
        assert np.array_equal(one.tail, four.tail)
        assert np.array_equal(one.ci_lo, four.ci_lo)

    def test_seed_changes_output(self):
        a = empirical_tail(SimConfig(SYM, 12, 20000, 1))
        b = empirical_tail(SimConfig(SYM, 12, 20000, 2))
        assert not np.array_equal(a.tail, b.tail)

    def test_matches_dp_roughly(self):
        n = 12
        mc = empirical_tail(SimConfig(SYM, n, 200000, 5))
        dp = exact_An_distribution(build_kernel(SYM, n), n)
        hw = (mc.ci_hi - mc.ci_lo) / 2.0
        assert np.all(np.abs(mc.tail - dp.tail) <= 5.0 * hw + 1e-12)


def test_wilson_interval_sanity():
    lo, hi, hw = _wilson(np.array([0.0, 50.0, 100.0]), 100)
    assert lo[0] == pytest.approx(0.0, abs=1e-12)
    assert hi[2] == pytest.approx(1.0, abs=1e-12)
    assert np.all(hw > 0.0)
    assert lo[1] < 0.5 < hi[1]
