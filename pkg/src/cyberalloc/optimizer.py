"""Global search for the optimal controls spend.

The objectives are smooth between curve breakpoints but may be multimodal
across them (a plateau makes spending locally worthless), so the solver
runs an exhaustive coarse grid -- with every breakpoint probed from both
sides -- and then refines the winning bracket by golden-section search,
never refining across a breakpoint. Ties within an absolute objective
tolerance resolve to the smallest spend: never pay more for equal value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence, Union

import numpy as np

from .curves import RiskCurve, eval_prob
from .objectives import (
    Scenario,
    eut_expected_utility,
    eut_expected_utility_grid,
    premium,
    pt_overall_value,
    pt_overall_value_grid,
)
from .preferences import EUTParams, PTParams

__all__ = ["ModelParams", "SolverDiagnostics", "AllocationResult", "optimize_allocation", "rank_insurance_options"]

ModelParams = Union[PTParams, EUTParams]

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
DEFAULT_GRID_POINTS = 10_000
DEFAULT_REFINE_TOL = 1e-6
DEFAULT_TIE_TOL = 1e-10


@dataclass(frozen=True)
class SolverDiagnostics:
    grid_points: int
    refinement_iterations: int
    tie_detected: bool


@dataclass(frozen=True)
class AllocationResult:
    """Optimal allocation plus everything needed to audit it."""

    c_cs_star: float
    c_i_star: float
    c_tot: float
    residual_prob: float
    objective_value: float
    model_tag: str
    scenario: Scenario
    curve: RiskCurve
    params: ModelParams
    diagnostics: SolverDiagnostics


def _golden_max(f: Callable[[float], float], lo: float, hi: float, tol: float) -> tuple[float, float, int]:
    """Golden-section maximization on [lo, hi]; returns (x, f(x), iterations)."""
    a, b = lo, hi
    h = b - a
    c = b - _INV_PHI * h
    d = a + _INV_PHI * h
    fc, fd = f(c), f(d)
    iters = 0
    while h > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            h = b - a
            c = b - _INV_PHI * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INV_PHI * h
            fd = f(d)
        iters += 1
    if fc > fd:
        return c, fc, iters
    return d, fd, iters


def _scalar_objective(scenario: Scenario, curve: RiskCurve, model: ModelParams) -> Callable[[float], float]:
    if isinstance(model, PTParams):
        return lambda c: pt_overall_value(scenario, curve, model, c)
    return lambda c: eut_expected_utility(scenario, curve, model, c)


def _grid_objective(scenario: Scenario, curve: RiskCurve, model: ModelParams, c: np.ndarray) -> np.ndarray:
    if isinstance(model, PTParams):
        return pt_overall_value_grid(scenario, curve, model, c)
    return eut_expected_utility_grid(scenario, curve, model, c)


def optimize_allocation(
    scenario: Scenario,
    curve: RiskCurve,
    model: ModelParams,
    *,
    c_max: float | None = None,
    grid_points: int = DEFAULT_GRID_POINTS,
    refine_tol: float = DEFAULT_REFINE_TOL,
    tie_tol: float = DEFAULT_TIE_TOL,
) -> AllocationResult:
    """Globally maximize the model's objective over spends in [0, c_max].

    ``c_max`` defaults to the scenario loss: spending more on controls than
    the loss they avert can never pay off here. ``grid_points`` is the
    number of coarse-grid intervals.
    """
    if c_max is None:
        c_max = scenario.loss
    if not (c_max > 0.0 and math.isfinite(c_max)):
        raise ValueError(f"search domain must be a positive finite c_max, got {c_max}")
    if grid_points < 2:
        raise ValueError(f"grid_points must be >= 2, got {grid_points}")
    # worst-case outlay over the whole domain must stay within wealth
    worst = (1.0 - scenario.i_r) * scenario.loss + premium(scenario, eval_prob(curve, 0.0)) + c_max
    if worst > scenario.wealth:
        raise ValueError(
            f"search domain invalid: worst-case outlay {worst} exceeds wealth {scenario.wealth}; "
            "reduce c_max"
        )

    breaks = [b for b in curve.breakpoints() if 0.0 < b < c_max]
    probes = np.linspace(0.0, c_max, grid_points + 1)
    if breaks:
        # probe both sides of each breakpoint; the left probe sits a full
        # refinement tolerance below so an edge optimum resolves to the
        # edge itself rather than to an epsilon-cheaper neighbor
        sides = np.array(breaks + [max(0.0, b - refine_tol) for b in breaks])
        probes = np.unique(np.concatenate([probes, sides]))
    values = _grid_objective(scenario, curve, model, probes)

    v_best = float(values.max())
    qualifying = np.flatnonzero(values >= v_best - tie_tol)
    tie_detected = len(qualifying) > 1
    i_best = int(qualifying[0])  # probes are sorted, so this is the smallest spend

    f = _scalar_objective(scenario, curve, model)
    lo = float(probes[i_best - 1]) if i_best > 0 else float(probes[0])
    hi = float(probes[i_best + 1]) if i_best + 1 < len(probes) else float(probes[-1])
    pieces = [lo] + [b for b in breaks if lo < b < hi] + [hi]

    candidates = [(float(probes[i_best]), f(float(probes[i_best])))]
    iterations = 0
    for a, b in zip(pieces, pieces[1:]):
        if b - a <= refine_tol:
            continue
        x, fx, iters = _golden_max(f, a, b, refine_tol)
        iterations += iters
        candidates.append((x, fx))

    top = max(v for _, v in candidates)
    c_star = min(c for c, v in candidates if v >= top - tie_tol)

    pi_star = eval_prob(curve, c_star)
    c_i_star = premium(scenario, pi_star)
    return AllocationResult(
        c_cs_star=c_star,
        c_i_star=c_i_star,
        c_tot=c_star + c_i_star,
        residual_prob=pi_star,
        objective_value=f(c_star),
        model_tag="PT" if isinstance(model, PTParams) else "EUT",
        scenario=scenario,
        curve=curve,
        params=model,
        diagnostics=SolverDiagnostics(
            grid_points=len(probes),
            refinement_iterations=iterations,
            tie_detected=tie_detected,
        ),
    )


def rank_insurance_options(
    scenario: Scenario,
    curve: RiskCurve,
    model: ModelParams,
    options: Sequence[float],
    **solver_kwargs,
) -> list[tuple[float, AllocationResult]]:
    """Solve each coverage ratio independently and sort best-first.

    The scenario's own coverage ratio is ignored; each option replaces it.
    Equal objective values break toward the larger coverage ratio.
    """
    if not options:
        raise ValueError("options must be non-empty")
    if any(not 0.0 <= o <= 1.0 for o in options):
        raise ValueError(f"coverage options must lie in [0, 1], got {list(options)}")
    solved = [
        (float(ir), optimize_allocation(replace(scenario, i_r=float(ir)), curve, model, **solver_kwargs))
        for ir in options
    ]
    return sorted(solved, key=lambda pair: (-pair[1].objective_value, -pair[0]))
