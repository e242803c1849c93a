"""Comparative experiments: overspend vs. risk reduction, parameter sweeps,
bespoke parameter search, theorem verification and sensitivity analysis.

Percentages are always computed from solver outputs, never from rounded
report values. Sweeps fan out independent optimizations and aggregate in
input order, so results are deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Mapping, Sequence

import numpy as np

from .curves import RiskCurve, validate_curve
from .objectives import Scenario
from .optimizer import AllocationResult, optimize_allocation, rank_insurance_options
from .preferences import EUTParams, PTParams, pt_weight

__all__ = [
    "ComparisonReport",
    "compare_models",
    "SweepReport",
    "conjecture_sweep",
    "BespokeResult",
    "bespoke_search",
    "TheoremReport",
    "verify_theorems",
    "SensitivityRecord",
    "SensitivityReport",
    "sensitivity_sweep",
]

EQUAL_COST_REL_TOL = 1e-6
# solver refinement is 1e-6, so spends closer than this are a tie, not an ordering
SPEND_TIE_TOL = 5e-6


@dataclass(frozen=True)
class ComparisonReport:
    """How a PT allocation stacks up against an EUT allocation on one curve."""

    c_cs_overspend_pct: float
    risk_reduction_pct: float
    c_tot_delta: float
    equal_total_cost: bool


def compare_models(
    pt_result: AllocationResult, eut_result: AllocationResult, curve: RiskCurve
) -> ComparisonReport:
    """Percentage overspend and risk reduction of PT relative to EUT.

    Both results must come from the same scenario and curve; mixing runs is
    a usage error.
    """
    if pt_result.model_tag != "PT" or eut_result.model_tag != "EUT":
        raise ValueError(
            f"expected a PT and an EUT result, got {pt_result.model_tag} vs {eut_result.model_tag}"
        )
    if pt_result.scenario != eut_result.scenario:
        raise ValueError("results come from different scenarios")
    if pt_result.curve != curve or eut_result.curve != curve:
        raise ValueError("results come from a different curve")

    c_pt, c_eut = pt_result.c_cs_star, eut_result.c_cs_star
    if c_eut == 0.0:
        overspend = 0.0 if c_pt == 0.0 else math.inf
    else:
        overspend = 100.0 * (c_pt - c_eut) / c_eut
    risk_reduction = 100.0 * (eut_result.residual_prob - pt_result.residual_prob) / eut_result.residual_prob
    delta = pt_result.c_tot - eut_result.c_tot
    tol = EQUAL_COST_REL_TOL * max(abs(pt_result.c_tot), abs(eut_result.c_tot))
    return ComparisonReport(
        c_cs_overspend_pct=overspend,
        risk_reduction_pct=risk_reduction,
        c_tot_delta=delta,
        equal_total_cost=abs(delta) <= tol,
    )


@dataclass(frozen=True)
class SweepReport:
    """Optimal spends along one parameter axis, with trend verdicts."""

    axis: str
    values: tuple[float, ...]
    results: tuple[AllocationResult, ...]
    c_cs_stars: tuple[float, ...]
    max_abs_delta: float
    strictly_increasing: bool
    strictly_decreasing: bool


def conjecture_sweep(
    scenario: Scenario,
    curve: RiskCurve,
    axis: str,
    values: Sequence[float],
    *,
    pt_base: PTParams | None = None,
    **solver_kwargs,
) -> SweepReport:
    """Re-solve along one behavioral axis (``r``, ``alpha`` or ``beta``).

    Trend verdicts back the three conjectures: ``r`` should barely move the
    optimum, ``alpha`` should raise it (more so at low coverage), and
    pushing ``beta`` to 1 should lower it.
    """
    if axis not in ("r", "alpha", "beta"):
        raise ValueError(f"axis must be one of r, alpha, beta; got {axis!r}")
    values = tuple(float(v) for v in values)
    if not values:
        raise ValueError("values must be non-empty")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValueError("values must be sorted strictly ascending")
    base = pt_base if pt_base is not None else PTParams()

    results = []
    for v in values:
        if axis == "r":
            model: PTParams | EUTParams = EUTParams(r=v)
        elif axis == "alpha":
            model = replace(base, alpha=v)
        else:
            model = replace(base, beta=v)
        results.append(optimize_allocation(scenario, curve, model, **solver_kwargs))

    stars = tuple(res.c_cs_star for res in results)
    deltas = [b - a for a, b in zip(stars, stars[1:])]
    return SweepReport(
        axis=axis,
        values=values,
        results=tuple(results),
        c_cs_stars=stars,
        max_abs_delta=max((abs(d) for d in deltas), default=0.0),
        strictly_increasing=all(d > 0.0 for d in deltas),
        strictly_decreasing=all(d < 0.0 for d in deltas),
    )


@dataclass(frozen=True)
class BespokeResult:
    """A PT parameterization matching the EUT total cost with better risk."""

    alpha_star: float
    beta_star: float
    allocation: AllocationResult
    eut_reference: AllocationResult
    cost_gap: float
    risk_gain_pct: float
    qualifying: tuple[tuple[float, float], ...]


_DEFAULT_BESPOKE_GRID = tuple(i / 100.0 for i in range(50, 101))


def bespoke_search(
    scenario: Scenario,
    curve: RiskCurve,
    eut_reference: AllocationResult,
    alpha_grid: Sequence[float] | None = None,
    beta_grid: Sequence[float] | None = None,
    cost_tolerance: float | None = None,
    *,
    lam: float = 2.25,
    **solver_kwargs,
) -> BespokeResult | None:
    """Grid-search (alpha, beta) for risk reduction at the EUT price tag.

    A grid point qualifies when its PT optimum keeps the total cost within
    ``cost_tolerance`` of the EUT reference (default 0.1% of it) while
    strictly lowering the residual probability. Returns the qualifying
    point with the largest risk gain, or None when nothing qualifies.
    """
    alphas = tuple(float(a) for a in (alpha_grid if alpha_grid is not None else _DEFAULT_BESPOKE_GRID))
    betas = tuple(float(b) for b in (beta_grid if beta_grid is not None else _DEFAULT_BESPOKE_GRID))
    if any(not 0.0 < v <= 1.0 for v in alphas + betas):
        raise ValueError("alpha and beta grids must lie in (0, 1]")
    if eut_reference.model_tag != "EUT" or eut_reference.scenario != scenario or eut_reference.curve != curve:
        raise ValueError("eut_reference must be an EUT solution of the same scenario and curve")
    tol = 0.001 * eut_reference.c_tot if cost_tolerance is None else float(cost_tolerance)

    pi_ref = eut_reference.residual_prob
    best: tuple[float, float, AllocationResult, float, float] | None = None
    qualifying: list[tuple[float, float]] = []
    for alpha in alphas:
        for beta in betas:
            result = optimize_allocation(
                scenario, curve, PTParams(alpha=alpha, lam=lam, beta=beta), **solver_kwargs
            )
            gap = abs(result.c_tot - eut_reference.c_tot)
            gain = 100.0 * (pi_ref - result.residual_prob) / pi_ref
            if gap <= tol and gain > 0.0:
                qualifying.append((alpha, beta))
                if best is None or gain > best[4]:
                    best = (alpha, beta, result, gap, gain)
    if best is None:
        return None
    return BespokeResult(
        alpha_star=best[0],
        beta_star=best[1],
        allocation=best[2],
        eut_reference=eut_reference,
        cost_gap=best[3],
        risk_gain_pct=best[4],
        qualifying=tuple(qualifying),
    )


@dataclass(frozen=True)
class TheoremReport:
    """Numerical verdicts for the full-insurance ordering results.

    Statuses are ``pass``, ``fail``, ``tie`` (spends within solver
    tolerance, possible on plateau edges) or ``n/a`` (hypotheses unmet:
    linear weights, or the curve exceeds probability 0.5 somewhere).
    """

    applicable: bool
    prop1_status: str
    prop1_min_margin: float | None
    thm1_status: str
    thm2_status: str
    c_pt: float | None
    c_eut: float | None
    c_i_pt: float | None
    c_i_eut: float | None
    equal_cost_residual: float | None


def verify_theorems(
    curve: RiskCurve,
    scenario: Scenario,
    pt: PTParams,
    eut: EUTParams,
    *,
    prop1_points: int = 500,
    prop1_margin: float = 1e-9,
    **solver_kwargs,
) -> TheoremReport:
    """Check the weighting-sum monotonicity and the full-insurance orderings.

    Coverage is forced to 1. A curve that exceeds probability 0.5 anywhere
    is reported as not applicable rather than failing.
    """
    if not validate_curve(curve).theorem_precondition_ok:
        return TheoremReport(
            applicable=False,
            prop1_status="n/a",
            prop1_min_margin=None,
            thm1_status="n/a",
            thm2_status="n/a",
            c_pt=None,
            c_eut=None,
            c_i_pt=None,
            c_i_eut=None,
            equal_cost_residual=None,
        )

    if pt.beta == 1.0:
        prop1_status, margin = "n/a", None
    else:
        grid = np.linspace(0.0, 0.5, prop1_points + 1)[1:]
        sums = np.array([pt_weight(p, pt) + pt_weight(1.0 - p, pt) for p in grid])
        margin = float(np.min(sums[:-1] - sums[1:]))
        prop1_status = "pass" if margin > prop1_margin else "fail"

    full = replace(scenario, i_r=1.0)
    pt_result = optimize_allocation(full, curve, pt, **solver_kwargs)
    eut_result = optimize_allocation(full, curve, eut, **solver_kwargs)

    if pt.beta == 1.0:
        thm1 = thm2 = "n/a"
    else:
        if abs(pt_result.c_cs_star - eut_result.c_cs_star) <= SPEND_TIE_TOL:
            thm1 = thm2 = "tie"
        else:
            thm1 = "pass" if pt_result.c_cs_star < eut_result.c_cs_star else "fail"
            thm2 = "pass" if pt_result.c_i_star > eut_result.c_i_star else "fail"

    return TheoremReport(
        applicable=True,
        prop1_status=prop1_status,
        prop1_min_margin=margin,
        thm1_status=thm1,
        thm2_status=thm2,
        c_pt=pt_result.c_cs_star,
        c_eut=eut_result.c_cs_star,
        c_i_pt=pt_result.c_i_star,
        c_i_eut=eut_result.c_i_star,
        equal_cost_residual=eut_result.c_tot - pt_result.c_tot,
    )


@dataclass(frozen=True)
class SensitivityRecord:
    """Findings for one (wealth, loss, loading) combination."""

    wealth: float
    loss: float
    q: float
    fair_premium: bool
    spend_gap_sign: Mapping[float, int]  # sign of C_PT - C_EUT(r=1) per coverage ratio
    pt_best_ir: float
    eut_best_ir: Mapping[float, float]  # per r value
    thm1_ok: Mapping[float, bool]  # per r value, at full insurance
    thm2_ok: Mapping[float, bool]


@dataclass(frozen=True)
class SensitivityReport:
    records: tuple[SensitivityRecord, ...]

    def all_theorems_hold(self) -> bool:
        return all(all(r.thm1_ok.values()) and all(r.thm2_ok.values()) for r in self.records)

    def pt_always_prefers_full(self) -> bool:
        return all(r.pt_best_ir == 1.0 for r in self.records)

    def eut_prefers_none_when_loaded(self) -> bool:
        # fair premiums make the EUT ranking degenerate (flat at r = 1,
        # full-insurance-first for r < 1), so only loaded combos count
        loaded = [r for r in self.records if not r.fair_premium]
        return all(ir == 0.0 for r in loaded for ir in r.eut_best_ir.values())


def sensitivity_sweep(
    base: Scenario,
    curve: RiskCurve,
    pt: PTParams,
    eut_models: Sequence[EUTParams],
    *,
    w_multipliers: Sequence[float] = (0.5, 1.0, 2.0),
    lw_ratios: Sequence[float] = (0.04, 0.1),
    q_values: Sequence[float] = (0.0, 0.3),
    coverage_options: Sequence[float] = (0.0, 0.8, 1.0),
    **solver_kwargs,
) -> SensitivityReport:
    """Re-solve everything across wealth, loss-ratio and loading axes.

    Each record reports whether the qualitative findings survive: the sign
    of the PT-EUT spend gap per coverage ratio, the preferred coverage of
    each model, and the full-insurance orderings. Fair-premium (q = 0)
    combinations are flagged; their EUT ranking carries no information.
    """
    if any(m <= 0.0 for m in w_multipliers) or any(rho <= 0.0 for rho in lw_ratios):
        raise ValueError("wealth multipliers and loss ratios must be positive")
    records = []
    for mult in w_multipliers:
        for ratio in lw_ratios:
            for q in q_values:
                wealth = base.wealth * mult
                scenario = Scenario(wealth=wealth, loss=wealth * ratio, q=q, i_r=base.i_r)
                pt_by_ir = {
                    ir: optimize_allocation(replace(scenario, i_r=ir), curve, pt, **solver_kwargs)
                    for ir in coverage_options
                }
                eut_neutral = {
                    ir: optimize_allocation(replace(scenario, i_r=ir), curve, EUTParams(r=1.0), **solver_kwargs)
                    for ir in coverage_options
                }
                gap_sign = {
                    ir: int(np.sign(pt_by_ir[ir].c_cs_star - eut_neutral[ir].c_cs_star))
                    for ir in coverage_options
                }
                pt_rank = max(pt_by_ir, key=lambda ir: pt_by_ir[ir].objective_value)
                eut_best = {}
                thm1_ok = {}
                thm2_ok = {}
                for model in eut_models:
                    ranked = rank_insurance_options(scenario, curve, model, coverage_options, **solver_kwargs)
                    eut_best[model.r] = ranked[0][0]
                    full = replace(scenario, i_r=1.0)
                    eut_full = optimize_allocation(full, curve, model, **solver_kwargs)
                    pt_full = pt_by_ir[1.0] if 1.0 in pt_by_ir else optimize_allocation(full, curve, pt, **solver_kwargs)
                    thm1_ok[model.r] = pt_full.c_cs_star < eut_full.c_cs_star
                    thm2_ok[model.r] = pt_full.c_i_star > eut_full.c_i_star
                records.append(
                    SensitivityRecord(
                        wealth=wealth,
                        loss=scenario.loss,
                        q=q,
                        fair_premium=(q == 0.0),
                        spend_gap_sign=gap_sign,
                        pt_best_ir=pt_rank,
                        eut_best_ir=eut_best,
                        thm1_ok=thm1_ok,
                        thm2_ok=thm2_ok,
                    )
                )
    return SensitivityReport(records=tuple(records))
