import numpy as np
import pytest
from hypothesis import given, strategies as st

from cyberalloc import EUTParams, PTParams, crra_utility, pt_value, pt_weight, pt_weight_pair


class TestPTValue:
    def test_zero(self, pt_base):
        assert pt_value(0.0, pt_base) == 0.0

    def test_unit_loss(self, pt_base):
        assert pt_value(-1.0, pt_base) == pytest.approx(-2.25, rel=1e-15)

    def test_hundred_loss(self, pt_base):
        # oracle: high-precision -2.25 * 100**0.88
        assert pt_value(-100.0, pt_base) == pytest.approx(-129.47398590086031, rel=1e-12)

    def test_loss_aversion_antisymmetry(self, pt_base):
        for x in (0.5, 3.0, 250.0):
            assert pt_value(-x, pt_base) == pytest.approx(-pt_base.lam * pt_value(x, pt_base), rel=1e-12)

    @given(st.floats(1e-6, 1e6), st.floats(1e-6, 1e6))
    def test_strictly_increasing(self, a, b):
        params = PTParams()
        lo, hi = sorted((a, b))
        if lo < hi:
            assert pt_value(lo, params) < pt_value(hi, params)
            assert pt_value(-hi, params) < pt_value(-lo, params)


class TestPTWeight:
    def test_endpoints_exact(self, pt_base):
        assert pt_weight(0.0, pt_base) == 0.0
        assert pt_weight(1.0, pt_base) == 1.0

    def test_linear_at_beta_one(self):
        params = PTParams(beta=1.0)
        for p in np.linspace(0.0, 1.0, 101):
            assert abs(pt_weight(float(p), params) - p) <= 1e-12

    def test_small_probability_value(self, pt_base):
        # oracle: direct high-precision evaluation at p=0.1, beta=0.65
        assert pt_weight(0.1, pt_base) == pytest.approx(0.17871926720611956, rel=1e-12)

    def test_half_probability_value(self, pt_base):
        w_half = pt_weight(0.5, pt_base)
        assert w_half == pytest.approx(0.43877050748468022, rel=1e-12)
        assert 2.0 * w_half < 1.0  # subcertainty at the midpoint

    def test_inverse_s_shape(self, pt_base):
        assert pt_weight(0.01, pt_base) > 0.01
        assert pt_weight(0.9, pt_base) < 0.9

    def test_domain_error(self, pt_base):
        with pytest.raises(ValueError):
            pt_weight(-0.1, pt_base)
        with pytest.raises(ValueError):
            pt_weight(1.1, pt_base)

    @pytest.mark.parametrize("beta", [0.5, 0.65, 0.9])
    def test_weight_sum_monotone_decreasing(self, beta):
        # w(p) + w(1-p) strictly falls on (0, 0.5] when beta < 1
        params = PTParams(beta=beta)
        grid = np.linspace(0.0, 0.5, 501)[1:]
        sums = np.array([pt_weight(float(p), params) + pt_weight(float(1.0 - p), params) for p in grid])
        assert np.all(sums[:-1] - sums[1:] > 1e-9)

    @given(st.floats(1e-9, 1.0 - 1e-9), st.floats(1e-9, 1.0 - 1e-9))
    def test_strictly_increasing(self, p1, p2):
        params = PTParams()
        lo, hi = sorted((p1, p2))
        if hi - lo > 1e-12:
            assert pt_weight(lo, params) < pt_weight(hi, params)


class TestPTWeightPair:
    def test_endpoints(self, pt_base):
        assert pt_weight_pair(0.0, pt_base) == (0.0, 1.0)
        assert pt_weight_pair(1.0, pt_base) == (1.0, 0.0)

    @given(st.floats(1e-6, 1.0 - 1e-6))
    def test_matches_single_calls_at_moderate_p(self, p):
        params = PTParams()
        w_p, w_q = pt_weight_pair(p, params)
        assert w_p == pytest.approx(pt_weight(p, params), rel=1e-12)
        assert w_q == pytest.approx(pt_weight(1.0 - p, params), rel=1e-11)

    def test_keeps_small_probability_term(self, pt_base):
        # at tiny p the naive second call collapses to exactly 1; the pair
        # keeps the p**beta correction in the complement weight
        _, w_q = pt_weight_pair(1e-18, pt_base)
        assert w_q < 1.0


class TestCRRA:
    def test_identity_at_r_one(self):
        params = EUTParams(r=1.0, wealth=10_000.0)
        assert crra_utility(0.0, params) == 10_000.0
        assert crra_utility(1_000.0, params) == 9_000.0

    def test_risk_averse_value(self):
        # oracle: high-precision 9000**0.88
        params = EUTParams(r=0.88, wealth=10_000.0)
        assert crra_utility(1_000.0, params) == pytest.approx(3018.0984917203529, rel=1e-12)

    def test_cost_exceeding_wealth(self):
        with pytest.raises(ValueError):
            crra_utility(10_001.0, EUTParams(r=1.0, wealth=10_000.0))

    def test_wealth_required(self):
        with pytest.raises(ValueError):
            crra_utility(1.0, EUTParams(r=1.0))

    @given(st.floats(0.0, 9_000.0), st.floats(0.0, 9_000.0))
    def test_strictly_decreasing(self, x1, x2):
        params = EUTParams(r=0.88, wealth=10_000.0)
        lo, hi = sorted((x1, x2))
        if hi - lo > 1e-9:
            assert crra_utility(hi, params) < crra_utility(lo, params)


class TestParamBounds:
    def test_hard_bounds(self):
        with pytest.raises(ValueError):
            PTParams(alpha=0.0)
        with pytest.raises(ValueError):
            PTParams(alpha=1.2)
        with pytest.raises(ValueError):
            PTParams(lam=0.5)
        with pytest.raises(ValueError):
            PTParams(beta=0.0)
        with pytest.raises(ValueError):
            EUTParams(r=0.0)

    def test_soft_bounds_warn_only(self):
        with pytest.warns(UserWarning):
            PTParams(alpha=0.3)
        with pytest.warns(UserWarning):
            PTParams(beta=0.4)
        with pytest.warns(UserWarning):
            PTParams(lam=3.0)

    def test_values_above_empirical_median_are_silent(self, recwarn):
        PTParams(alpha=0.97, beta=0.97)
        assert not recwarn.list
