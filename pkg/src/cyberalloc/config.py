"""Configuration files for curves and scenarios (YAML; JSON parses too).

Curve files carry ``type`` (exponential | stepped | tabulated) plus the
fields of that variant; scenario files carry ``wealth``, ``loss``, ``q``
and optionally ``ir``. The README documents the full grammar. Parse and
validation problems raise :class:`ConfigError` with the file (and line,
when the parser knows it) in the message.
"""

from __future__ import annotations

from dataclasses import dataclass

import yaml

from .curves import (
    DEFAULT_DOMAIN_MAX,
    ExponentialCurve,
    RiskCurve,
    Segment,
    SteppedCurve,
    TabulatedCurve,
    TEMPLATE_NAMES,
    template,
)
from .objectives import Scenario
from .preferences import EUTParams, PTParams
from .reporting import FORMATS

__all__ = [
    "ConfigError",
    "ModelDefaults",
    "RunConfig",
    "load_curve",
    "load_scenario",
    "parse_model_spec",
]


class ConfigError(ValueError):
    """A configuration file or flag could not be interpreted."""


@dataclass(frozen=True)
class RunConfig:
    """A fully resolved run: scenario, curve, models, coverages, output.

    ``seedless`` documents that nothing in the toolchain draws random
    numbers; it exists so configs can assert it and must stay True.
    """

    scenario: Scenario
    curve_ref: str
    curve: RiskCurve
    models: tuple
    coverage_options: tuple[float, ...]
    fmt: str = "markdown"
    out: str | None = None
    decimals: int | None = 2
    seedless: bool = True

    def __post_init__(self) -> None:
        if not self.models:
            raise ConfigError("at least one model is required")
        if not self.coverage_options:
            raise ConfigError("at least one coverage option is required")
        if any(not 0.0 <= ir <= 1.0 for ir in self.coverage_options):
            raise ConfigError(f"coverage options must lie in [0, 1], got {self.coverage_options}")
        if self.fmt not in FORMATS:
            raise ConfigError(f"output format must be one of {FORMATS}, got {self.fmt!r}")
        if not self.seedless:
            raise ConfigError("runs are deterministic by contract; seedless cannot be disabled")


@dataclass(frozen=True)
class ModelDefaults:
    """Fallback parameters for bare ``pt`` / ``eut`` model specs."""

    alpha: float = 0.88
    lam: float = 2.25
    beta: float = 0.65
    r: float = 1.0


def _load_yaml(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror or exc}") from exc
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"{path}:{mark.line + 1}" if mark is not None else path
        problem = getattr(exc, "problem", None) or str(exc)
        raise ConfigError(f"{where}: {problem}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected a mapping at the top level")
    return data


def _require(data: dict, key: str, path: str):
    if key not in data:
        raise ConfigError(f"{path}: missing required key {key!r}")
    return data[key]


def load_curve(ref: str) -> RiskCurve:
    """Build a curve from a template name or a config file path."""
    if ref in TEMPLATE_NAMES:
        return template(ref)
    data = _load_yaml(ref)
    kind = str(_require(data, "type", ref)).lower()
    try:
        if kind == "exponential":
            return ExponentialCurve(
                baseline=float(_require(data, "baseline", ref)),
                rate=float(_require(data, "rate", ref)),
                domain_max=float(data.get("domain_max", DEFAULT_DOMAIN_MAX)),
            )
        if kind == "stepped":
            raw = _require(data, "segments", ref)
            if not isinstance(raw, list) or not raw:
                raise ConfigError(f"{ref}: 'segments' must be a non-empty list")
            segments = tuple(
                Segment(
                    start=float(_require(seg, "start", ref)),
                    baseline=float(_require(seg, "baseline", ref)),
                    rate=float(seg.get("rate", 0.0)),
                )
                for seg in raw
            )
            return SteppedCurve(segments, domain_max=float(data.get("domain_max", DEFAULT_DOMAIN_MAX)))
        if kind == "tabulated":
            raw = _require(data, "knots", ref)
            if not isinstance(raw, list) or not raw:
                raise ConfigError(f"{ref}: 'knots' must be a non-empty list")
            knots = tuple(
                (float(_require(k, "c", ref)), float(_require(k, "p", ref))) for k in raw
            )
            dmax = data.get("domain_max")
            return TabulatedCurve(knots, domain_max=float(dmax) if dmax is not None else None)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{ref}: {exc}") from exc
    raise ConfigError(f"{ref}: unknown curve type {kind!r}")


def load_scenario(
    path: str | None,
    *,
    wealth: float | None = None,
    loss: float | None = None,
    q: float | None = None,
    i_r: float | None = None,
) -> Scenario:
    """Scenario from an optional file, with flag overrides taking precedence."""
    data = _load_yaml(path) if path else {}
    for key in data:
        if key not in ("wealth", "loss", "q", "ir"):
            raise ConfigError(f"{path}: unknown scenario key {key!r}")
    try:
        return Scenario(
            wealth=float(wealth if wealth is not None else data.get("wealth", 10_000.0)),
            loss=float(loss if loss is not None else data.get("loss", 1_000.0)),
            q=float(q if q is not None else data.get("q", 0.3)),
            i_r=float(i_r if i_r is not None else data.get("ir", 1.0)),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path or 'scenario flags'}: {exc}") from exc


def parse_model_spec(spec: str, defaults: ModelDefaults) -> PTParams | EUTParams:
    """Parse ``pt``, ``eut`` or parameterized forms like ``pt:alpha=0.95,beta=1``."""
    head, _, tail = spec.partition(":")
    head = head.strip().lower()
    overrides = {}
    if tail:
        for item in tail.split(","):
            key, eq, value = item.partition("=")
            if not eq:
                raise ConfigError(f"model spec {spec!r}: expected key=value, got {item!r}")
            overrides[key.strip().lower()] = value.strip()
    try:
        if head == "pt":
            allowed = {"alpha", "lambda", "beta"}
            if not set(overrides) <= allowed:
                raise ConfigError(f"model spec {spec!r}: pt accepts {sorted(allowed)}")
            return PTParams(
                alpha=float(overrides.get("alpha", defaults.alpha)),
                lam=float(overrides.get("lambda", defaults.lam)),
                beta=float(overrides.get("beta", defaults.beta)),
            )
        if head == "eut":
            if not set(overrides) <= {"r"}:
                raise ConfigError(f"model spec {spec!r}: eut accepts only 'r'")
            return EUTParams(r=float(overrides.get("r", defaults.r)))
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"model spec {spec!r}: {exc}") from exc
    raise ConfigError(f"model spec {spec!r}: model must be 'pt' or 'eut'")
