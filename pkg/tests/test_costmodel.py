"""Tests for the per-iteration cost model and the timing harness."""

import math

import numpy as np
import pytest

from snmfkit.costmodel import CostEstimate, flops_admm, measure_seconds_per_iteration
from snmfkit.linalg import SparseSymMatrix

from oracles import block_indicator


class TestFlopsAdmm:
    def test_smallest_instance(self):
        est = flops_admm(2, 1)
        # 2/3 + 6*2 + 4*2*1 + 22*2 with log2(2) = 1
        assert est.flops_admm == pytest.approx(64.667, abs=1e-3)
        assert est.flops_admm == pytest.approx(2.0 / 3.0 + 12.0 + 8.0 + 44.0, rel=1e-12)
        assert est.flops_per_update_split == pytest.approx(
            1.0 / 3.0 + 6.0 + 4.0 + 10.0, rel=1e-12
        )
        assert est.q == 2

    def test_power_of_two_instance(self):
        est = flops_admm(1024, 1)
        assert est.flops_admm == pytest.approx(69632.667, abs=1e-3)
        assert est.flops_admm == pytest.approx(
            2.0 / 3.0 + 6144.0 + 40960.0 + 22528.0, rel=1e-12
        )
        assert est.q == 11

    def test_reports_both_exact_and_approximation(self):
        est = flops_admm(1024, 4)
        assert est.flops_admm == pytest.approx(352298.667, abs=1e-3)
        assert est.approx_flops == pytest.approx(262144.0, rel=1e-12)
        assert est.n == 1024 and est.k == 4

    def test_doubling_ratio_in_n_log_n_band(self):
        for n in (256, 512, 1024, 2048, 4096):
            ratio = flops_admm(2 * n, 5).flops_admm / flops_admm(n, 5).flops_admm
            assert 2.0 < ratio < 2.5

    def test_approximation_tracks_exact_at_scale(self):
        # the approximation drops the K^3 and 22nK terms, so it always
        # undershoots, but stays within a factor of two on large problems
        for n in (1000, 2048, 10000):
            for k in (1, 4, 16, n // 10):
                est = flops_admm(n, k)
                assert est.approx_flops < est.flops_admm < 2.0 * est.approx_flops

    def test_matches_direct_formula_on_random_sizes(self):
        rng = np.random.default_rng(0)
        for _ in range(25):
            n = int(rng.integers(2, 5000))
            k = int(rng.integers(1, min(n, 64)))
            est = flops_admm(n, k)
            log2n = math.log2(n)
            total = (
                2.0 / 3.0 * k**3
                + 6.0 * n * k * k
                + 4.0 * n * log2n * k
                + 22.0 * n * k
            )
            assert est.flops_admm == pytest.approx(total, rel=1e-12)
            assert est.flops_admm > 0.0

    def test_validation(self):
        with pytest.raises(ValueError, match="n must be >= 2"):
            flops_admm(1, 1)
        with pytest.raises(ValueError, match="k must satisfy"):
            flops_admm(10, 0)
        with pytest.raises(ValueError, match="k must satisfy"):
            flops_admm(10, 10)

    def test_as_dict_round_trip(self):
        est = flops_admm(100, 3)
        d = est.as_dict()
        assert d["n"] == 100 and d["k"] == 3 and d["q"] == 7
        assert CostEstimate(**d) == est


class TestMeasureSecondsPerIteration:
    def test_positive_and_iteration_normalized(self):
        l = block_indicator(60, 3)
        a = SparseSymMatrix.from_dense(l @ l.T)
        per_iter = measure_seconds_per_iteration(a, 3, iterations=5)
        assert per_iter > 0.0
        # five sweeps of a 60-point problem are far below a second each
        assert per_iter < 1.0
