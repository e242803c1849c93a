"""Behavioral primitives: prospect-theory value and weighting, CRRA utility.

All three are stateless scalar functions. Powers are evaluated in log space
with an explicit zero guard so values near zero losses keep full precision.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

__all__ = ["PTParams", "EUTParams", "PT_BASE", "pt_value", "pt_weight", "pt_weight_pair", "crra_utility"]


@dataclass(frozen=True)
class PTParams:
    """Prospect-theory parameters.

    ``alpha`` bends the value function (diminishing sensitivity), ``lam``
    scales losses relative to gains (loss aversion) and ``beta`` bends the
    probability weights (inverse-S distortion). Hard bounds are enforced;
    values outside the empirically observed ranges (alpha, beta in [0.5, 1],
    lam in [1, 2.5]) only warn, since such values are legitimately explored.
    """

    alpha: float = 0.88
    lam: float = 2.25
    beta: float = 0.65

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must be in (0, 1], got {self.alpha}")
        if self.lam < 1.0:
            raise ValueError(f"lam must be >= 1, got {self.lam}")
        if not 0.0 < self.beta <= 1.0:
            raise ValueError(f"beta must be in (0, 1], got {self.beta}")
        if self.alpha < 0.5:
            warnings.warn(f"alpha={self.alpha} is below the empirical range [0.5, 1]", stacklevel=2)
        if self.lam > 2.5:
            warnings.warn(f"lam={self.lam} is above the empirical range [1, 2.5]", stacklevel=2)
        if self.beta < 0.5:
            # the weighting function can lose monotonicity for very small beta
            warnings.warn(f"beta={self.beta} is below the empirical range [0.5, 1]", stacklevel=2)


@dataclass(frozen=True)
class EUTParams:
    """CRRA parameters: exponent ``r`` (risk-averse iff r < 1, neutral at r = 1).

    ``wealth`` is only needed when :func:`crra_utility` is used standalone;
    objective-level code supplies the scenario wealth instead.
    """

    r: float = 1.0
    wealth: float | None = None

    def __post_init__(self) -> None:
        if self.r <= 0.0:
            raise ValueError(f"r must be positive, got {self.r}")
        if self.wealth is not None and self.wealth < 0.0:
            raise ValueError(f"wealth must be >= 0, got {self.wealth}")


PT_BASE = PTParams()


def pt_value(x: float, params: PTParams) -> float:
    """Value of a gain or loss ``x`` relative to the reference point.

    ``x**alpha`` for gains, ``-lam * |x|**alpha`` for losses, 0 at 0.
    """
    if x == 0.0:
        return 0.0
    if x > 0.0:
        return math.exp(params.alpha * math.log(x))
    return -params.lam * math.exp(params.alpha * math.log(-x))


def pt_weight(p: float, params: PTParams) -> float:
    """Decision weight ``p**b / (p**b + (1-p)**b)**(1/b)`` with ``b = beta``.

    Continuous limits 0 and 1 are returned exactly at the endpoints; at
    ``beta == 1`` the weights are linear in ``p``.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must be in [0, 1], got {p}")
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0
    beta = params.beta
    pb = math.exp(beta * math.log(p))
    qb = math.exp(beta * math.log(1.0 - p))
    return pb / math.exp(math.log(pb + qb) / beta)


def pt_weight_pair(p: float, params: PTParams) -> tuple[float, float]:
    """Decision weights ``(w(p), w(1 - p))`` of a two-outcome lottery.

    The two weights share their powers and normalizer, which keeps the
    ``p**beta`` contribution alive even when ``1 - p`` rounds to 1; two
    independent :func:`pt_weight` calls would drop it for tiny ``p``.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must be in [0, 1], got {p}")
    if p == 0.0:
        return 0.0, 1.0
    if p == 1.0:
        return 1.0, 0.0
    beta = params.beta
    pb = math.exp(beta * math.log(p))
    qb = math.exp(beta * math.log(1.0 - p))
    denom = math.exp(math.log(pb + qb) / beta)
    return pb / denom, qb / denom


def crra_utility(x: float, params: EUTParams) -> float:
    """CRRA utility ``(wealth - x)**r`` of bearing a cost ``x``."""
    if params.wealth is None:
        raise ValueError("EUTParams.wealth must be set to evaluate the utility directly")
    base = params.wealth - x
    if base < 0.0:
        raise ValueError(f"cost {x} exceeds wealth {params.wealth}")
    return base**params.r
