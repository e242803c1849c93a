"""Decision objectives: premium pricing, prospect value and expected utility.

The insurance premium embeds the attack probability at the chosen controls
spend, so the premium is never a free variable: picking the controls spend
fixes everything else. Outcomes are framed two ways -- as losses relative to
initial wealth (the prospect-theory frame, always in the loss domain) and as
net wealth (the expected-utility frame).

Closed-form specializations for full insurance, no insurance and the
risk-neutral case are provided separately; they must agree pointwise with
the general forms and serve as cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .curves import RiskCurve, eval_prob, eval_prob_array
from .preferences import EUTParams, PTParams, pt_value, pt_weight_pair

__all__ = [
    "Scenario",
    "OutcomeMatrix",
    "premium",
    "outcome_matrix",
    "pt_overall_value",
    "pt_overall_value_full",
    "pt_overall_value_uninsured",
    "eut_expected_utility",
    "eut_expected_utility_full",
    "eut_expected_utility_uninsured",
    "eut_expected_utility_linear",
    "pt_overall_value_grid",
    "eut_expected_utility_grid",
]


@dataclass(frozen=True)
class Scenario:
    """Market and organization context.

    ``wealth`` and ``loss`` are in the same (arbitrary) currency unit,
    ``q`` is the insurer's loading on the fair premium and ``i_r`` the
    coverage ratio (indemnity / loss); over-insurance ``i_r > 1`` is out of
    scope.
    """

    wealth: float = 10_000.0
    loss: float = 1_000.0
    q: float = 0.3
    i_r: float = 1.0

    def __post_init__(self) -> None:
        if self.wealth < 0.0:
            raise ValueError(f"wealth must be >= 0, got {self.wealth}")
        if not 0.0 <= self.loss <= self.wealth:
            raise ValueError(f"loss must be in [0, wealth], got {self.loss}")
        if self.q < 0.0:
            raise ValueError(f"q must be >= 0, got {self.q}")
        if not 0.0 <= self.i_r <= 1.0:
            raise ValueError(f"coverage ratio must be in [0, 1], got {self.i_r}")


@dataclass(frozen=True)
class OutcomeMatrix:
    """The two possible outcomes in both frames.

    Losses are signed and relative to initial wealth; the wealth fields are
    always ``wealth + loss`` of the matching branch.
    """

    loss_if_attack: float
    loss_if_no_attack: float
    wealth_if_attack: float
    wealth_if_no_attack: float


def premium(scenario: Scenario, pi: float) -> float:
    """Loaded premium ``(1 + q) * pi * i_r * loss``; fair when ``q == 0``."""
    if not 0.0 <= pi <= 1.0:
        raise ValueError(f"probability must be in [0, 1], got {pi}")
    return (1.0 + scenario.q) * pi * scenario.i_r * scenario.loss


def outcome_matrix(scenario: Scenario, c_cs: float, pi: float) -> OutcomeMatrix:
    """Outcomes when spending ``c_cs`` on controls with attack probability ``pi``.

    The premium is derived from ``pi`` (zero when uninsured). Raises when
    the worst-case branch would leave negative wealth.
    """
    if c_cs < 0.0:
        raise ValueError(f"controls spend must be >= 0, got {c_cs}")
    c_i = premium(scenario, pi)
    loss_attack = -((1.0 - scenario.i_r) * scenario.loss + c_i + c_cs)
    loss_quiet = -(c_i + c_cs)
    wealth_attack = scenario.wealth + loss_attack
    if wealth_attack < 0.0:
        raise ValueError(
            f"outlays exceed wealth: spend {c_cs} plus premium {c_i} plus retained loss "
            f"leave negative wealth {wealth_attack}"
        )
    return OutcomeMatrix(loss_attack, loss_quiet, wealth_attack, scenario.wealth + loss_quiet)


def pt_overall_value(scenario: Scenario, curve: RiskCurve, params: PTParams, c_cs: float) -> float:
    """Probability-weighted prospect value of the two outcomes (always <= 0)."""
    pi = eval_prob(curve, c_cs)
    outcomes = outcome_matrix(scenario, c_cs, pi)
    w_attack, w_quiet = pt_weight_pair(pi, params)
    return w_attack * pt_value(outcomes.loss_if_attack, params) + w_quiet * pt_value(
        outcomes.loss_if_no_attack, params
    )


def pt_overall_value_full(scenario: Scenario, curve: RiskCurve, params: PTParams, c_cs: float) -> float:
    """Full-insurance closed form: both outcomes collapse to the same certain loss."""
    if scenario.i_r != 1.0:
        raise ValueError("full-insurance form requires i_r == 1")
    pi = eval_prob(curve, c_cs)
    certain = (1.0 + scenario.q) * pi * scenario.loss + c_cs
    w_attack, w_quiet = pt_weight_pair(pi, params)
    return pt_value(-certain, params) * (w_attack + w_quiet)


def pt_overall_value_uninsured(scenario: Scenario, curve: RiskCurve, params: PTParams, c_cs: float) -> float:
    """No-insurance closed form: bear the full loss, pay no premium."""
    if scenario.i_r != 0.0:
        raise ValueError("no-insurance form requires i_r == 0")
    pi = eval_prob(curve, c_cs)
    w_attack, w_quiet = pt_weight_pair(pi, params)
    return w_attack * pt_value(-(scenario.loss + c_cs), params) + w_quiet * pt_value(-c_cs, params)


def _check_wealth_param(scenario: Scenario, params: EUTParams) -> None:
    if params.wealth is not None and params.wealth != scenario.wealth:
        raise ValueError(
            f"EUTParams.wealth={params.wealth} conflicts with scenario wealth {scenario.wealth}"
        )


def eut_expected_utility(scenario: Scenario, curve: RiskCurve, params: EUTParams, c_cs: float) -> float:
    """Two-outcome expected CRRA utility of net wealth."""
    _check_wealth_param(scenario, params)
    pi = eval_prob(curve, c_cs)
    outcomes = outcome_matrix(scenario, c_cs, pi)
    return pi * outcomes.wealth_if_attack**params.r + (1.0 - pi) * outcomes.wealth_if_no_attack**params.r


def eut_expected_utility_full(scenario: Scenario, curve: RiskCurve, params: EUTParams, c_cs: float) -> float:
    """Full-insurance closed form: a certain outlay, no residual risk term."""
    if scenario.i_r != 1.0:
        raise ValueError("full-insurance form requires i_r == 1")
    _check_wealth_param(scenario, params)
    pi = eval_prob(curve, c_cs)
    return (scenario.wealth - (1.0 + scenario.q) * pi * scenario.loss - c_cs) ** params.r


def eut_expected_utility_uninsured(
    scenario: Scenario, curve: RiskCurve, params: EUTParams, c_cs: float
) -> float:
    """No-insurance closed form."""
    if scenario.i_r != 0.0:
        raise ValueError("no-insurance form requires i_r == 0")
    _check_wealth_param(scenario, params)
    pi = eval_prob(curve, c_cs)
    w = scenario.wealth
    return pi * (w - scenario.loss - c_cs) ** params.r + (1.0 - pi) * (w - c_cs) ** params.r


def eut_expected_utility_linear(scenario: Scenario, curve: RiskCurve, c_cs: float) -> float:
    """Risk-neutral closed form ``W - pi * L * (1 + q * i_r) - c``.

    Fast path for ``r == 1``; any discrepancy with the two-outcome
    expectation beyond rounding noise is a defect, which the test suite
    enforces. With fair premiums (``q == 0``) this is the same for every
    coverage ratio.
    """
    pi = eval_prob(curve, c_cs)
    return scenario.wealth - pi * scenario.loss * (1.0 + scenario.q * scenario.i_r) - c_cs


def pt_overall_value_grid(
    scenario: Scenario, curve: RiskCurve, params: PTParams, c: np.ndarray
) -> np.ndarray:
    """Vectorized :func:`pt_overall_value` over a spend grid (kernel-backed)."""
    c = np.asarray(c, dtype=float)
    pi = eval_prob_array(curve, c)
    return _kernels.pt_objective(
        c, pi, scenario.loss, scenario.q, scenario.i_r, params.alpha, params.lam, params.beta
    )


def eut_expected_utility_grid(
    scenario: Scenario, curve: RiskCurve, params: EUTParams, c: np.ndarray
) -> np.ndarray:
    """Vectorized :func:`eut_expected_utility` over a spend grid (kernel-backed)."""
    _check_wealth_param(scenario, params)
    c = np.asarray(c, dtype=float)
    pi = eval_prob_array(curve, c)
    return _kernels.eut_objective(
        c, pi, scenario.wealth, scenario.loss, scenario.q, scenario.i_r, params.r
    )
