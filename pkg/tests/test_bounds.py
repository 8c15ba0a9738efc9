import math
from fractions import Fraction

import numpy as np
import pytest

from bkcolor import bounds as b


class TestGenericInequalities:
    def test_azuma(self):
        assert b.azuma_tail(0, 1) == 1.0
        assert b.azuma_tail(2, 2) == pytest.approx(2 * math.exp(-1))
        assert b.azuma_tail(10, 1) == pytest.approx(2 * math.exp(-50), rel=1e-12)

    @pytest.mark.parametrize("t,s", [(-1, 1), (1, 0)])
    def test_azuma_domain(self, t, s):
        with pytest.raises(ValueError):
            b.azuma_tail(t, s)

    def test_lll(self):
        assert b.lll_check(0, 10**9)
        assert not b.lll_check(1, 0)
        assert b.lll_check(0.01, 10)
        assert not b.lll_check(0.1, 10)
        with pytest.raises(ValueError):
            b.lll_check(1.5, 1)


class TestAv:
    def test_mu(self):
        expected = (1e12 / 50 - 1e5) / (1e6 - 1) * math.exp(-3 - 3 / (1e6 - 1))
        assert b.mu_lower_Av(1e6) == pytest.approx(expected, rel=1e-12)
        assert b.mu_lower_Av(1e6) == pytest.approx(995.76, rel=1e-4)  # the rounded figure; exact value 995.7344
        assert b.mu_lower_Av(5) == 0.0

    def test_budget(self):
        assert b.ci2_budget_Av(1) == pytest.approx(4 + 16 / math.e**2)
        assert b.ci2_budget_Av(1) == pytest.approx(6.1654, abs=1e-4)
        assert b.ci2_budget_Av(0) == 0
        assert b.ci2_budget_Av(1e9) == pytest.approx(6.1654e9, rel=1e-4)

    def test_pAv(self):
        assert b.pAv_upper(10) == 1.0
        assert 0 < b.pAv_upper(1e9) < 1
        assert b.pAv_upper(2e9) < b.pAv_upper(1e9)

    def test_threshold(self):
        t = b.threshold_Av()
        assert abs(t - b.REFERENCE_THRESHOLD_AV) <= 0.05 * b.REFERENCE_THRESHOLD_AV
        assert b.log_lll_check(b.log_pAv_upper(t), t**4 + 1)
        assert not b.log_lll_check(b.log_pAv_upper(t - 1), (t - 1) ** 4 + 1)
        assert b.log_lll_check(b.log_pAv_upper(2 * t), (2 * t) ** 4 + 1)

    def test_pair_contrib(self):
        assert b.pair_contrib_lower(4) == pytest.approx(math.exp(-4) / 3)
        assert b.pair_contrib_lower(100) <= b.pair_contrib_exact(100)
        assert b.pair_contrib_lower(1e7) * 1e7 == pytest.approx(math.exp(-3), rel=1e-5)

    @pytest.mark.parametrize("delta", [1e4, 1e6, 1e9])
    def test_linearised_log_is_a_lower_bound(self, delta):
        assert b.pair_contrib_lower(delta) <= b.pair_contrib_exact(delta)


class TestEi:
    def test_vacuous_for_small_delta(self):
        assert b.ei_deviation(5) < 0 and b.pEi_upper(5) == 1.0

    def test_large_delta(self):
        assert b.pEi_upper(1e6) < 1e-12
        lp = b.log_pEi_upper(1e9)
        assert math.isfinite(lp) and lp < -1e7
        assert b.pEi_upper(1e9) == 0.0  # underflows; the log form carries the value

    def test_exponent_report(self):
        rep = b.ei_exponent_report(1e6)
        assert rep["below_delta_pow_minus_2"] and rep["below_delta_pow_minus_6"]
        rep = b.ei_exponent_report(100)
        assert not rep["below_delta_pow_minus_6"]


class TestFi:
    def test_B_exact(self):
        assert b.B_of_k(Fraction(1, 9)) == Fraction(4, 9) + Fraction(169, 243)

    def test_a_vanishes(self):
        assert b.a_of_k(1e-9) < 1e-9

    def test_a_at_reference_k(self):
        k = b.REFERENCE_K_STAR
        assert b.a_of_k(k) == pytest.approx(k * (0.6 - k) ** 2 * (1 - 3 * k) * math.exp(-5), rel=1e-15)

    @pytest.mark.parametrize("k", [0, -0.1, 0.2])
    def test_k_range(self, k):
        with pytest.raises(ValueError):
            b.a_of_k(k)
        with pytest.raises(ValueError):
            b.delta_min_Fi(k)

    def test_delta_min_at_reference_k(self):
        d = b.delta_min_Fi(b.REFERENCE_K_STAR)
        assert d == b.REFERENCE_DELTA_MIN
        assert b.fi_ok(d, b.REFERENCE_K_STAR) and not b.fi_ok(d - 1, b.REFERENCE_K_STAR)

    def test_small_k_is_much_worse(self):
        assert b.delta_min_Fi(1e-7) > 1000 * b.delta_min_Fi(b.REFERENCE_K_STAR)

    def test_margin_guard(self):
        assert b.fi_margin(10, 0.05) == -math.inf

    def test_optimize(self):
        k, d = b.optimize_k()
        assert abs(k - b.REFERENCE_K_STAR) <= 0.001
        assert abs(d - b.REFERENCE_DELTA_MIN) <= 0.005 * b.REFERENCE_DELTA_MIN
        assert b.delta_min_Fi(k - 0.01) > d and b.delta_min_Fi(k + 0.01) > d
        assert b.fi_ok(d, k) and not b.fi_ok(d - 1, k)

    def test_optimize_grid_only(self):
        k, d = b.optimize_k(refine=False)
        assert abs(k - b.REFERENCE_K_STAR) <= 0.001

    def test_resolution_floor(self):
        with pytest.raises(ValueError):
            b.optimize_k(resolution=10)

    def test_sweep(self):
        rows = b.k_sweep(100)
        assert len(rows) == 100 and rows[0][0] == pytest.approx(1e-7) and rows[-1][0] == pytest.approx(1 / 9)
        for k, d in rows[::7]:
            assert b.fi_ok(d, k) and not b.fi_ok(d - 1, k)


class TestProperties:
    grid = np.geomspace(1e4, 1e12, 40)

    def test_monotone_tails(self):
        av = [b.log_pAv_upper(d) for d in self.grid]
        ei = [b.log_pEi_upper(d) for d in self.grid]
        assert all(x >= y for x, y in zip(av, av[1:]))
        assert all(x >= y for x, y in zip(ei, ei[1:]))

    def test_log_and_direct_agree(self):
        for d in (1e4, 3e4, 1e5):
            direct, logged = b.pEi_upper(d), b.log_pEi_upper(d)
            if direct > 0:
                assert abs(math.log(direct) - logged) <= 1e-10 * abs(logged)
        for d in (2e8, 5e8, 1e9):
            assert math.log(b.pAv_upper(d)) == pytest.approx(b.log_pAv_upper(d), rel=1e-10)
        assert math.log(b.azuma_tail(7, 3)) == pytest.approx(b.log_azuma_tail(7, 3), rel=1e-10)

    def test_lll_log_matches_direct(self):
        for p, d in [(1e-3, 100), (0.05, 6), (0.2, 0), (1e-5, 36787)]:
            assert b.lll_check(p, d) == (math.e * p * (d + 1) <= 1)

    def test_bound_params(self):
        assert b.BoundParams(10).k == pytest.approx(1 / 9)
        with pytest.raises(ValueError):
            b.BoundParams(2)
