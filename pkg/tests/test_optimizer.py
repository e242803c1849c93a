import math
from dataclasses import replace

import numpy as np
import pytest

from cyberalloc import (
    EUTParams,
    ExponentialCurve,
    Scenario,
    TabulatedCurve,
    eut_expected_utility,
    eut_expected_utility_grid,
    optimize_allocation,
    premium,
    pt_overall_value,
    pt_overall_value_grid,
    rank_insurance_options,
    template,
)

RHO = 0.294
CURVE = ExponentialCurve(0.2, RHO)


class TestOptimizeAllocation:
    def test_constant_curve_spends_nothing(self, pt_base, eut_neutral):
        flat = TabulatedCurve([(0.0, 0.2), (50.0, 0.2)])
        scenario = Scenario(i_r=0.0)
        for model in (pt_base, eut_neutral):
            res = optimize_allocation(scenario, flat, model)
            assert res.c_cs_star == 0.0

    def test_risk_neutral_full_cover_closed_form(self, base_scenario):
        # stationary point of W - 1.3*1000*0.2*exp(-rho c) - c is ln(260 rho)/rho
        res = optimize_allocation(base_scenario, CURVE, EUTParams(r=1.0))
        expected_c = math.log(260.0 * RHO) / RHO
        assert res.c_cs_star == pytest.approx(expected_c, abs=1e-5)
        assert res.c_cs_star == pytest.approx(14.7500208, abs=1e-4)
        assert res.c_i_star == pytest.approx(3.4013605, abs=1e-4)

    def test_result_invariants(self, base_scenario, pt_base, any_template):
        res = optimize_allocation(base_scenario, any_template, pt_base)
        assert res.c_tot == pytest.approx(res.c_cs_star + res.c_i_star, rel=1e-12)
        assert res.c_i_star == pytest.approx(premium(base_scenario, res.residual_prob), rel=1e-12)
        from cyberalloc import eval_prob

        assert res.residual_prob == eval_prob(any_template, res.c_cs_star)
        assert res.model_tag == "PT"
        assert res.diagnostics.grid_points >= 10_001

    def test_plateau_edge_exact(self, pt_base, eut_neutral):
        pi5 = template("pi5")
        for ir in (0.0, 0.8, 1.0):
            for model in (pt_base, eut_neutral, EUTParams(r=0.88)):
                res = optimize_allocation(Scenario(i_r=ir), pi5, model)
                assert res.c_cs_star in (15.0, 25.0)

    def test_brute_force_agreement(self, base_scenario, pt_base):
        res = optimize_allocation(base_scenario, CURVE, pt_base)
        c = np.arange(0.0, 1000.0 + 5e-4, 1e-3)
        values = pt_overall_value_grid(base_scenario, CURVE, pt_base, c)
        brute = float(c[int(np.argmax(values))])
        assert abs(res.c_cs_star - brute) <= 5e-3

    def test_interior_stationarity(self, base_scenario, pt_base):
        res = optimize_allocation(base_scenario, CURVE, pt_base)
        h = 1e-4
        f = lambda x: pt_overall_value(base_scenario, CURVE, pt_base, x)  # noqa: E731
        deriv = (f(res.c_cs_star + h) - f(res.c_cs_star - h)) / (2.0 * h)
        assert abs(deriv) <= 1e-4

    @pytest.mark.filterwarnings("ignore::UserWarning")
    def test_lambda_invariance(self, base_scenario, pt_base):
        res1 = optimize_allocation(base_scenario, CURVE, pt_base)
        res2 = optimize_allocation(base_scenario, CURVE, replace(pt_base, lam=2.5 * pt_base.lam))
        assert abs(res1.c_cs_star - res2.c_cs_star) <= 1e-5

    def test_domain_configuration_errors(self, base_scenario, pt_base):
        with pytest.raises(ValueError):
            optimize_allocation(base_scenario, CURVE, pt_base, c_max=0.0)
        with pytest.raises(ValueError):
            optimize_allocation(base_scenario, CURVE, pt_base, c_max=math.inf)
        tight = Scenario(wealth=100.0, loss=100.0, q=0.3, i_r=0.0)
        with pytest.raises(ValueError):
            optimize_allocation(tight, CURVE, pt_base, c_max=100.0)

    def test_objective_value_matches_scalar(self, base_scenario, pt_base):
        res = optimize_allocation(base_scenario, CURVE, pt_base)
        assert res.objective_value == pytest.approx(
            pt_overall_value(base_scenario, CURVE, pt_base, res.c_cs_star), rel=1e-12
        )


class TestGridScalarConsistency:
    def test_pt_grid_matches_scalar(self, base_scenario, pt_base, any_template):
        c = np.linspace(0.0, 45.0, 301)
        grid = pt_overall_value_grid(base_scenario, any_template, pt_base, c)
        scalar = np.array([pt_overall_value(base_scenario, any_template, pt_base, float(x)) for x in c])
        np.testing.assert_allclose(grid, scalar, rtol=1e-12)

    def test_eut_grid_matches_scalar(self, any_template):
        scenario = Scenario(i_r=0.8)
        params = EUTParams(r=0.88)
        c = np.linspace(0.0, 45.0, 301)
        grid = eut_expected_utility_grid(scenario, any_template, params, c)
        scalar = np.array([eut_expected_utility(scenario, any_template, params, float(x)) for x in c])
        np.testing.assert_allclose(grid, scalar, rtol=1e-12)


class TestRankInsuranceOptions:
    def test_pt_prefers_full_cover(self, base_scenario, pt_base):
        ranked = rank_insurance_options(base_scenario, template("pi1"), pt_base, [0.0, 0.8, 1.0])
        assert ranked[0][0] == 1.0

    def test_eut_prefers_no_cover(self, base_scenario):
        ranked = rank_insurance_options(base_scenario, template("pi1"), EUTParams(r=1.0), [0.0, 0.8, 1.0])
        assert ranked[0][0] == 0.0

    def test_singleton(self, base_scenario, pt_base):
        ranked = rank_insurance_options(base_scenario, template("pi1"), pt_base, [0.8])
        assert len(ranked) == 1 and ranked[0][0] == 0.8

    def test_objective_descending(self, base_scenario, pt_base):
        ranked = rank_insurance_options(base_scenario, template("pi2"), pt_base, [0.0, 0.5, 0.8, 1.0])
        values = [res.objective_value for _, res in ranked]
        assert values == sorted(values, reverse=True)

    def test_input_validation(self, base_scenario, pt_base):
        with pytest.raises(ValueError):
            rank_insurance_options(base_scenario, CURVE, pt_base, [])
        with pytest.raises(ValueError):
            rank_insurance_options(base_scenario, CURVE, pt_base, [1.2])
