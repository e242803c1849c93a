"""Risk curves: how the probability of a successful attack falls with controls spend.

A risk curve maps a cybersecurity-controls budget ``c`` to the probability
``pi(c)`` that at least one attack succeeds. Three variants are supported:

* :class:`ExponentialCurve` -- ``pi(c) = baseline * exp(-rate * c)``
* :class:`SteppedCurve` -- piecewise segments, each a plateau or a local
  exponential decline; right-continuous at the segment starts
* :class:`TabulatedCurve` -- linear interpolation through knots

Every curve is flat beyond ``domain_max`` so objectives stay well defined
wherever a solver probes.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

__all__ = [
    "ExponentialCurve",
    "Segment",
    "SteppedCurve",
    "TabulatedCurve",
    "RiskCurve",
    "CurveValidationReport",
    "eval_prob",
    "eval_prob_array",
    "left_limit",
    "validate_curve",
    "calibrate_exponential",
    "template",
    "scale_currency",
    "TEMPLATE_NAMES",
]

DEFAULT_DOMAIN_MAX = 50.0


@dataclass(frozen=True)
class ExponentialCurve:
    """Smooth decay ``baseline * exp(-rate * c)``, flat beyond ``domain_max``."""

    baseline: float
    rate: float
    domain_max: float = DEFAULT_DOMAIN_MAX

    def __post_init__(self) -> None:
        if not 0.0 < self.baseline < 1.0:
            raise ValueError(f"baseline must be in (0, 1), got {self.baseline}")
        if self.rate <= 0.0:
            raise ValueError(f"rate must be positive, got {self.rate}")
        if self.domain_max <= 0.0:
            raise ValueError(f"domain_max must be positive, got {self.domain_max}")

    @property
    def variant(self) -> str:
        return "exponential"

    def breakpoints(self) -> tuple[float, ...]:
        return ()

    def _eval(self, c: float) -> float:
        return self.baseline * math.exp(-self.rate * c)


@dataclass(frozen=True)
class Segment:
    """One piece of a stepped curve starting at ``start``.

    Within the segment the probability is ``baseline * exp(-rate * (c - start))``;
    ``rate == 0`` makes it a plateau.
    """

    start: float
    baseline: float
    rate: float = 0.0

    def __post_init__(self) -> None:
        if self.start < 0.0:
            raise ValueError(f"segment start must be >= 0, got {self.start}")
        if not 0.0 < self.baseline < 1.0:
            raise ValueError(f"segment baseline must be in (0, 1), got {self.baseline}")
        if self.rate < 0.0:
            raise ValueError(f"segment rate must be >= 0, got {self.rate}")


@dataclass(frozen=True)
class SteppedCurve:
    """Plateaus joined by exponential declines, right-continuous at breakpoints.

    The value at a breakpoint belongs to the segment that starts there; an
    optimizer therefore has to probe both sides of every breakpoint.
    """

    segments: tuple[Segment, ...]
    domain_max: float = DEFAULT_DOMAIN_MAX

    def __init__(self, segments: Sequence[Segment | tuple], domain_max: float = DEFAULT_DOMAIN_MAX):
        segs = tuple(s if isinstance(s, Segment) else Segment(*s) for s in segments)
        if not segs:
            raise ValueError("a stepped curve needs at least one segment")
        if segs[0].start != 0.0:
            raise ValueError("the first segment must start at 0")
        starts = [s.start for s in segs]
        if any(b <= a for a, b in zip(starts, starts[1:])):
            raise ValueError("segment starts must be strictly increasing")
        if domain_max <= starts[-1] and len(segs) > 1:
            raise ValueError("domain_max must exceed the last segment start")
        object.__setattr__(self, "segments", segs)
        object.__setattr__(self, "domain_max", float(domain_max))

    @property
    def variant(self) -> str:
        return "stepped"

    def breakpoints(self) -> tuple[float, ...]:
        return tuple(s.start for s in self.segments[1:])

    def _segment_at(self, c: float) -> Segment:
        starts = [s.start for s in self.segments]
        return self.segments[bisect_right(starts, c) - 1]

    def _eval(self, c: float) -> float:
        seg = self._segment_at(c)
        return seg.baseline * math.exp(-seg.rate * (c - seg.start))


@dataclass(frozen=True)
class TabulatedCurve:
    """Linear interpolation through ``(c, pi)`` knots; flat after the last knot."""

    knots: tuple[tuple[float, float], ...]
    domain_max: float

    def __init__(self, knots: Sequence[tuple[float, float]], domain_max: float | None = None):
        pts = tuple((float(c), float(p)) for c, p in knots)
        if len(pts) < 2:
            raise ValueError("a tabulated curve needs at least two knots")
        if pts[0][0] != 0.0:
            raise ValueError("the first knot must be at c = 0")
        cs = [c for c, _ in pts]
        if any(b <= a for a, b in zip(cs, cs[1:])):
            raise ValueError("knot positions must be strictly increasing")
        object.__setattr__(self, "knots", pts)
        object.__setattr__(self, "domain_max", float(domain_max) if domain_max is not None else pts[-1][0])

    @property
    def variant(self) -> str:
        return "tabulated"

    def breakpoints(self) -> tuple[float, ...]:
        # interpolation kinks; the optimizer treats them like step edges
        return tuple(c for c, _ in self.knots[1:-1])

    def _eval(self, c: float) -> float:
        cs = [k[0] for k in self.knots]
        if c >= cs[-1]:
            return self.knots[-1][1]
        i = bisect_right(cs, c) - 1
        (c0, p0), (c1, p1) = self.knots[i], self.knots[i + 1]
        t = (c - c0) / (c1 - c0)
        return p0 + (p1 - p0) * t


RiskCurve = Union[ExponentialCurve, SteppedCurve, TabulatedCurve]


@dataclass(frozen=True)
class CurveValidationReport:
    """Per-assumption verdicts for a risk curve; always produced, never raised."""

    monotone: bool
    strictly_positive: bool
    baseline_below_one: bool
    max_probability: float
    theorem_precondition_ok: bool

    @property
    def assumptions_ok(self) -> bool:
        return self.monotone and self.strictly_positive and self.baseline_below_one

    def violations(self) -> list[str]:
        out = []
        if not self.monotone:
            out.append("curve is not monotone non-increasing")
        if not self.strictly_positive:
            out.append("curve is not strictly positive everywhere")
        if not self.baseline_below_one:
            out.append("baseline probability is not below 1")
        return out


def eval_prob(curve: RiskCurve, c_cs: float) -> float:
    """Probability of a successful attack at controls spend ``c_cs``.

    Flat beyond the curve's ``domain_max``; negative spend is a domain error.
    """
    if c_cs < 0.0:
        raise ValueError(f"controls spend must be >= 0, got {c_cs}")
    return curve._eval(min(float(c_cs), curve.domain_max))


def eval_prob_array(curve: RiskCurve, c: np.ndarray) -> np.ndarray:
    """Vectorized :func:`eval_prob` over an array of spends."""
    c = np.asarray(c, dtype=float)
    if c.size and float(c.min()) < 0.0:
        raise ValueError("controls spend must be >= 0")
    cc = np.minimum(c, curve.domain_max)
    if isinstance(curve, ExponentialCurve):
        return curve.baseline * np.exp(-curve.rate * cc)
    if isinstance(curve, SteppedCurve):
        starts = np.array([s.start for s in curve.segments])
        bases = np.array([s.baseline for s in curve.segments])
        rates = np.array([s.rate for s in curve.segments])
        idx = np.searchsorted(starts, cc, side="right") - 1
        return bases[idx] * np.exp(-rates[idx] * (cc - starts[idx]))
    if isinstance(curve, TabulatedCurve):
        xs = np.array([k[0] for k in curve.knots])
        ys = np.array([k[1] for k in curve.knots])
        return np.interp(cc, xs, ys)
    raise TypeError(f"unknown curve type {type(curve)!r}")


def left_limit(curve: RiskCurve, c: float) -> float:
    """Limit of the curve from below at ``c`` (differs from eval only at jumps)."""
    if c <= 0.0:
        return eval_prob(curve, 0.0)
    return eval_prob(curve, min(np.nextafter(c, -np.inf), curve.domain_max))


def validate_curve(curve: RiskCurve, sample_resolution: int = 1001) -> CurveValidationReport:
    """Check the modelling assumptions on a dense grid plus every breakpoint."""
    if sample_resolution < 2:
        raise ValueError(f"sample_resolution must be >= 2, got {sample_resolution}")
    grid = np.linspace(0.0, curve.domain_max, sample_resolution)
    extra = [b for b in curve.breakpoints() if 0.0 < b <= curve.domain_max]
    both_sides = [np.nextafter(b, -np.inf) for b in extra]
    points = np.unique(np.concatenate([grid, np.array(extra + both_sides, dtype=float)]))
    probs = eval_prob_array(curve, points)
    return CurveValidationReport(
        monotone=bool(np.all(np.diff(probs) <= 0.0)),
        strictly_positive=bool(np.all(probs > 0.0)),
        baseline_below_one=bool(probs[0] < 1.0),
        max_probability=float(probs.max()),
        theorem_precondition_ok=bool(probs.max() <= 0.5),
    )


def calibrate_exponential(baseline: float, anchor_c: float, anchor_prob: float) -> float:
    """Decay rate making ``ExponentialCurve(baseline, rate)`` pass through an anchor.

    Solves ``baseline * exp(-rate * anchor_c) == anchor_prob`` for ``rate``.
    """
    if not 0.0 < anchor_prob < baseline < 1.0:
        raise ValueError(
            f"need 0 < anchor_prob < baseline < 1, got anchor_prob={anchor_prob}, baseline={baseline}"
        )
    if anchor_c <= 0.0:
        raise ValueError(f"anchor_c must be positive, got {anchor_c}")
    return math.log(baseline / anchor_prob) / anchor_c


# Default templates. The published tables pin each curve only through the
# spend/premium pair of the risk-neutral full-insurance optimum (premium
# pi * 1.3 * 1000 at the tabulated optimal spend), so the decay rates are
# back-solved from those anchors; step placement for pi4/pi5 is chosen so
# every decline that the tables show being bought stays worth buying across
# the sensitivity ranges of wealth, loss and loading.
_P4_PLATEAU = (6.25 / 1300.0) * math.exp(0.16 * (23.85 - 5.0))
_P5_STEP1 = 0.0233
_P5_STEP2 = 17.06 / 1300.0

_TEMPLATES: dict[str, RiskCurve] = {
    # slow decay, baseline 0.2
    "pi1": ExponentialCurve(0.2, calibrate_exponential(0.2, 14.82, 3.33 / 1300.0)),
    # rapid decay, baseline 0.2
    "pi2": ExponentialCurve(0.2, calibrate_exponential(0.2, 6.20, 1.11 / 1300.0)),
    # slow decay, higher baseline 0.3, same rate as pi1
    "pi3": ExponentialCurve(0.3, calibrate_exponential(0.2, 14.82, 3.33 / 1300.0)),
    # two declines separated by a plateau
    "pi4": SteppedCurve(
        (
            Segment(0.0, 0.2, math.log(0.2 / _P4_PLATEAU) / 2.0),
            Segment(2.0, _P4_PLATEAU),
            Segment(5.0, _P4_PLATEAU, 0.16),
        )
    ),
    # three declines; plateaus begin at 15 and 25, the third decline is
    # too shallow to ever pay for itself
    "pi5": SteppedCurve(
        (
            Segment(0.0, 0.2, math.log(0.2 / _P5_STEP1) / 15.0),
            Segment(15.0, _P5_STEP1),
            Segment(20.0, _P5_STEP1, math.log(_P5_STEP1 / _P5_STEP2) / 5.0),
            Segment(25.0, _P5_STEP2),
            Segment(32.0, _P5_STEP2, 0.005),
            Segment(36.0, _P5_STEP2 * math.exp(-0.02)),
        )
    ),
}

TEMPLATE_NAMES = tuple(sorted(_TEMPLATES))


def template(name: str) -> RiskCurve:
    """Return one of the built-in calibrated templates (``pi1`` .. ``pi5``)."""
    try:
        return _TEMPLATES[name]
    except KeyError:
        raise KeyError(f"unknown template {name!r}; choose from {', '.join(TEMPLATE_NAMES)}") from None


def scale_currency(curve: RiskCurve, factor: float) -> RiskCurve:
    """Stretch the spend axis by ``factor`` (probabilities unchanged).

    ``eval_prob(scaled, factor * c) == eval_prob(curve, c)``, which is the
    rescaling used to check that reports are invariant to the currency unit.
    """
    if factor <= 0.0:
        raise ValueError(f"factor must be positive, got {factor}")
    if isinstance(curve, ExponentialCurve):
        return ExponentialCurve(curve.baseline, curve.rate / factor, curve.domain_max * factor)
    if isinstance(curve, SteppedCurve):
        segs = tuple(Segment(s.start * factor, s.baseline, s.rate / factor) for s in curve.segments)
        return SteppedCurve(segs, curve.domain_max * factor)
    if isinstance(curve, TabulatedCurve):
        return TabulatedCurve(tuple((c * factor, p) for c, p in curve.knots), curve.domain_max * factor)
    raise TypeError(f"unknown curve type {type(curve)!r}")
