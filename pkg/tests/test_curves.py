import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cyberalloc import (
    ExponentialCurve,
    Segment,
    SteppedCurve,
    TabulatedCurve,
    calibrate_exponential,
    eval_prob,
    eval_prob_array,
    scale_currency,
    template,
    validate_curve,
)
from cyberalloc.curves import TEMPLATE_NAMES, left_limit


class TestEvalProb:
    def test_exponential_at_zero(self):
        assert eval_prob(ExponentialCurve(0.2, 0.294), 0.0) == 0.2

    def test_exponential_hand_value(self):
        # oracle: high-precision evaluation of 0.2 * exp(-0.294 * 14.75)
        got = eval_prob(ExponentialCurve(0.2, 0.294), 14.75)
        assert got == pytest.approx(0.0026164471988246878, rel=1e-12)

    def test_tabulated_midpoint(self):
        curve = TabulatedCurve([(0.0, 0.3), (10.0, 0.1)])
        assert eval_prob(curve, 5.0) == pytest.approx(0.2, rel=1e-12)

    def test_flat_beyond_domain(self):
        curve = ExponentialCurve(0.2, 0.294, domain_max=10.0)
        assert eval_prob(curve, 25.0) == eval_prob(curve, 10.0)

    def test_negative_spend_rejected(self):
        with pytest.raises(ValueError):
            eval_prob(ExponentialCurve(0.2, 0.294), -1.0)
        with pytest.raises(ValueError):
            eval_prob_array(ExponentialCurve(0.2, 0.294), np.array([1.0, -0.5]))

    def test_array_matches_scalar(self, any_template):
        c = np.linspace(0.0, any_template.domain_max + 5.0, 400)
        got = eval_prob_array(any_template, c)
        expected = np.array([eval_prob(any_template, x) for x in c])
        np.testing.assert_allclose(got, expected, rtol=1e-14)

    def test_stepped_right_continuous(self):
        curve = template("pi5")
        for b in curve.breakpoints():
            seg = curve._segment_at(b)
            assert eval_prob(curve, b) == seg.baseline
            assert eval_prob(curve, b + 1e-12) == pytest.approx(eval_prob(curve, b), rel=1e-9)

    def test_left_limit_at_jump(self):
        curve = SteppedCurve([Segment(0.0, 0.4), Segment(10.0, 0.1)])
        assert eval_prob(curve, 10.0) == 0.1
        assert left_limit(curve, 10.0) == pytest.approx(0.4, rel=1e-12)


class TestValidation:
    def test_exponential_all_flags(self):
        report = validate_curve(ExponentialCurve(0.2, 0.294))
        assert report.monotone and report.strictly_positive and report.baseline_below_one
        assert report.theorem_precondition_ok
        assert report.max_probability == pytest.approx(0.2)

    def test_increasing_tabulated_flagged(self):
        report = validate_curve(TabulatedCurve([(0.0, 0.1), (5.0, 0.2)]))
        assert not report.monotone
        assert report.strictly_positive

    def test_high_baseline_fails_theorem_precondition(self):
        report = validate_curve(ExponentialCurve(0.7, 0.1))
        assert report.monotone
        assert not report.theorem_precondition_ok
        assert report.max_probability > 0.5

    def test_report_invariant(self, any_template):
        report = validate_curve(any_template)
        if report.theorem_precondition_ok:
            assert report.max_probability <= 0.5

    def test_resolution_precondition(self):
        with pytest.raises(ValueError):
            validate_curve(ExponentialCurve(0.2, 0.294), sample_resolution=1)


class TestCalibration:
    def test_table_anchor(self):
        # oracle: ln(0.2 / 0.002562) / 14.82
        rho = calibrate_exponential(0.2, 14.82, 0.002562)
        assert rho == pytest.approx(0.29403030789969596, rel=1e-12)

    def test_halving_over_unit_spend(self):
        assert calibrate_exponential(0.5, 1.0, 0.25) == pytest.approx(math.log(2.0), rel=1e-12)

    def test_definitional(self):
        assert calibrate_exponential(0.2, 10.0, 0.2 * math.exp(-1.0)) == pytest.approx(0.1, rel=1e-12)

    def test_ordering_enforced(self):
        with pytest.raises(ValueError):
            calibrate_exponential(0.2, 10.0, 0.3)
        with pytest.raises(ValueError):
            calibrate_exponential(0.2, -1.0, 0.1)

    @given(
        baseline=st.floats(0.05, 0.95),
        anchor_c=st.floats(0.1, 100.0),
        ratio=st.floats(1e-6, 0.999),
    )
    def test_round_trip(self, baseline, anchor_c, ratio):
        anchor_prob = baseline * ratio
        rho = calibrate_exponential(baseline, anchor_c, anchor_prob)
        curve = ExponentialCurve(baseline, rho, domain_max=max(50.0, anchor_c * 2))
        assert eval_prob(curve, anchor_c) == pytest.approx(anchor_prob, rel=1e-12)


class TestTemplates:
    def test_names(self):
        assert TEMPLATE_NAMES == ("pi1", "pi2", "pi3", "pi4", "pi5")

    def test_baselines(self):
        assert eval_prob(template("pi1"), 0.0) == 0.2
        assert eval_prob(template("pi2"), 0.0) == 0.2
        assert eval_prob(template("pi3"), 0.0) == 0.3

    def test_pi3_shares_pi1_rate(self):
        assert template("pi3").rate == template("pi1").rate

    def test_pi2_decays_faster_than_pi1(self):
        assert template("pi2").rate > template("pi1").rate

    def test_pi5_plateau_edges(self):
        # the optimizer must be able to land exactly on these edges
        assert {15.0, 25.0} <= set(template("pi5").breakpoints())

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            template("pi9")

    def test_all_templates_pass_validation(self, any_template):
        report = validate_curve(any_template)
        assert report.monotone and report.strictly_positive and report.baseline_below_one
        assert report.theorem_precondition_ok

    def test_monotone_on_pairs(self, any_template):
        grid = np.linspace(0.0, any_template.domain_max, 800)
        probs = eval_prob_array(any_template, grid)
        assert np.all(np.diff(probs) <= 0.0)

    @given(st.floats(0.0, 50.0), st.floats(0.0, 50.0))
    def test_monotone_property_pi4(self, c1, c2):
        lo, hi = sorted((c1, c2))
        curve = template("pi4")
        assert eval_prob(curve, lo) >= eval_prob(curve, hi)


class TestConstruction:
    def test_exponential_bounds(self):
        with pytest.raises(ValueError):
            ExponentialCurve(0.0, 0.3)
        with pytest.raises(ValueError):
            ExponentialCurve(1.0, 0.3)
        with pytest.raises(ValueError):
            ExponentialCurve(0.2, 0.0)

    def test_stepped_requires_zero_start(self):
        with pytest.raises(ValueError):
            SteppedCurve([Segment(1.0, 0.2)])

    def test_stepped_strictly_increasing_starts(self):
        with pytest.raises(ValueError):
            SteppedCurve([Segment(0.0, 0.2), Segment(0.0, 0.1)])

    def test_tabulated_needs_two_knots(self):
        with pytest.raises(ValueError):
            TabulatedCurve([(0.0, 0.2)])

    def test_curves_hashable(self, any_template):
        assert hash(any_template) == hash(any_template)


class TestCurrencyScaling:
    def test_scaling_identity(self, any_template):
        scaled = scale_currency(any_template, 2.0)
        for c in np.linspace(0.0, any_template.domain_max, 50):
            assert eval_prob(scaled, 2.0 * c) == pytest.approx(eval_prob(any_template, c), rel=1e-12)

    def test_bad_factor(self):
        with pytest.raises(ValueError):
            scale_currency(template("pi1"), 0.0)
