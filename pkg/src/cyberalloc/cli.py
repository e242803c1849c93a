"""Command-line interface.

Subcommands: solve, compare, rank, bespoke, sweep, verify, validate,
templates, emit-curve. Exit codes: 0 success, 1 configuration error,
2 curve validation failure, 3 internal assertion. All output is
deterministic: identical configurations produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

import numpy as np

from .analysis import (
    bespoke_search,
    compare_models,
    conjecture_sweep,
    sensitivity_sweep,
    verify_theorems,
)
from .config import ConfigError, ModelDefaults, RunConfig, load_curve, load_scenario, parse_model_spec
from .curves import TEMPLATE_NAMES, eval_prob, left_limit, template, validate_curve
from .objectives import Scenario
from .optimizer import optimize_allocation, rank_insurance_options
from .preferences import EUTParams, PTParams
from .reporting import FORMATS, render_report

__all__ = ["main"]

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_VALIDATION = 2
EXIT_INTERNAL = 3

DEFAULT_COVERAGE = (0.0, 0.8, 1.0)


class ValidationFailure(Exception):
    """The curve violates the modelling assumptions."""

    def __init__(self, violations):
        super().__init__("; ".join(violations))
        self.violations = violations


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; route them to the
    # configuration-error exit code instead
    def error(self, message):
        raise ConfigError(message)


def _add_common(p: argparse.ArgumentParser, *, curve_required: bool = True) -> None:
    p.add_argument("--curve", required=curve_required, help="template name (pi1..pi5) or curve config file")
    p.add_argument("--scenario", help="scenario config file")
    p.add_argument("--wealth", type=float, help="initial wealth override")
    p.add_argument("--loss", type=float, help="attack loss override")
    p.add_argument("--q", type=float, help="premium loading override")
    p.add_argument("--ir", type=float, action="append", help="coverage ratio (repeatable)")
    p.add_argument("--model", action="append", help="pt | eut | pt:alpha=..,beta=..,lambda=.. | eut:r=..")
    p.add_argument("--alpha", type=float, default=0.88, help="default PT alpha (0.88)")
    p.add_argument("--beta", type=float, default=0.65, help="default PT beta (0.65)")
    p.add_argument("--lambda", dest="lam", type=float, default=2.25, help="default PT loss aversion (2.25)")
    p.add_argument("--r", type=float, default=1.0, help="default EUT exponent (1.0)")
    p.add_argument("--out", help="output file (stdout when omitted)")
    p.add_argument("--format", choices=FORMATS, default="markdown")
    p.add_argument("--decimals", default="2", help="decimal places, or 'full' for exact round-trip")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cyberalloc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    _add_common(sub.add_parser("solve", help="optimal allocation per model and coverage ratio"))
    _add_common(sub.add_parser("compare", help="PT vs EUT overspend and risk reduction"))
    _add_common(sub.add_parser("rank", help="order coverage ratios by optimal objective"))

    p = sub.add_parser("bespoke", help="grid-search PT parameters matching the EUT total cost")
    _add_common(p)
    p.add_argument("--cost-tolerance", type=float, help="absolute total-cost tolerance (default 0.1%% of EUT total)")

    p = sub.add_parser("sweep", help="conjecture or sensitivity sweep")
    _add_common(p)
    p.add_argument("--axis", required=True, choices=("r", "alpha", "beta", "sensitivity"))
    p.add_argument("--values", help="comma-separated axis values (conjecture axes)")
    p.add_argument("--w-multipliers", default="0.5,1,2", help="sensitivity wealth multipliers")
    p.add_argument("--lw-ratios", default="0.04,0.1", help="sensitivity loss/wealth ratios")
    p.add_argument("--q-values", default="0,0.3", help="sensitivity loadings")

    _add_common(sub.add_parser("verify", help="check the ordering theorems and weighting monotonicity"))

    p = sub.add_parser("validate", help="check curve assumptions")
    _add_common(p)
    p.add_argument("--resolution", type=int, default=1001)

    sub.add_parser("templates", help="list built-in curve templates").add_argument(
        "--format", choices=FORMATS, default="markdown"
    )

    p = sub.add_parser("emit-curve", help="tabulate (spend, probability) for plotting")
    _add_common(p)
    p.add_argument("--resolution", type=int, default=101)
    return parser


def _decimals(raw: str) -> int | None:
    if raw.strip().lower() == "full":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"--decimals must be an integer or 'full', got {raw!r}") from None
    if value < 0:
        raise ConfigError("--decimals must be >= 0")
    return value


def _scenario(args, i_r: float | None = None) -> Scenario:
    return load_scenario(args.scenario, wealth=args.wealth, loss=args.loss, q=args.q, i_r=i_r)


def _models(args, default=("pt", "eut")):
    defaults = ModelDefaults(alpha=args.alpha, lam=args.lam, beta=args.beta, r=args.r)
    specs = args.model if args.model else list(default)
    return tuple(parse_model_spec(spec, defaults) for spec in specs)


def _checked_curve(args):
    curve = load_curve(args.curve)
    report = validate_curve(curve)
    if not report.assumptions_ok:
        raise ValidationFailure(report.violations())
    return curve


def _run_config(args, default_models=("pt", "eut")) -> RunConfig:
    return RunConfig(
        scenario=_scenario(args),
        curve_ref=args.curve,
        curve=_checked_curve(args),
        models=_models(args, default=default_models),
        coverage_options=tuple(args.ir) if args.ir else DEFAULT_COVERAGE,
        fmt=args.format,
        out=args.out,
        decimals=_decimals(args.decimals),
    )


def _model_label(model) -> str:
    if isinstance(model, PTParams):
        return f"alpha={model.alpha:g},lambda={model.lam:g},beta={model.beta:g}"
    return f"r={model.r:g}"


# probability-scale columns get four extra digits so they survive the
# currency-oriented default of two decimals
_PROB_COLUMNS = ("residual_prob", "pi", "max_probability")


def _emit(fmt: str, out: str | None, decimals: int | None, columns, rows) -> None:
    overrides = {}
    if decimals is not None:
        overrides = {col: decimals + 4 for col in columns if col in _PROB_COLUMNS}
        if "prop1_min_margin" in columns:
            overrides["prop1_min_margin"] = None  # diagnostic, keep exact
    text = render_report(columns, rows, fmt, decimals, overrides)
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_solve(args) -> int:
    cfg = _run_config(args)
    columns = ["curve", "model", "params", "ir", "c_cs", "c_i", "c_tot", "residual_prob", "objective"]
    rows = []
    for model in cfg.models:
        for ir in cfg.coverage_options:
            res = optimize_allocation(replace(cfg.scenario, i_r=ir), cfg.curve, model)
            rows.append(
                {
                    "curve": cfg.curve_ref,
                    "model": res.model_tag,
                    "params": _model_label(model),
                    "ir": ir,
                    "c_cs": res.c_cs_star,
                    "c_i": res.c_i_star,
                    "c_tot": res.c_tot,
                    "residual_prob": res.residual_prob,
                    "objective": res.objective_value,
                }
            )
    _emit(cfg.fmt, cfg.out, cfg.decimals, columns, rows)
    return EXIT_OK


def _pt_and_eut(cfg: RunConfig):
    pt = next((m for m in cfg.models if isinstance(m, PTParams)), None)
    eut = next((m for m in cfg.models if isinstance(m, EUTParams)), None)
    if pt is None or eut is None:
        raise ConfigError("this command needs one pt and one eut model")
    return pt, eut


def _cmd_compare(args) -> int:
    cfg = _run_config(args)
    pt, eut = _pt_and_eut(cfg)
    columns = [
        "curve",
        "ir",
        "c_cs_pt",
        "c_cs_eut",
        "c_cs_overspend_pct",
        "risk_reduction_pct",
        "c_tot_delta",
        "equal_total_cost",
    ]
    rows = []
    for ir in cfg.coverage_options:
        scenario = replace(cfg.scenario, i_r=ir)
        pt_res = optimize_allocation(scenario, cfg.curve, pt)
        eut_res = optimize_allocation(scenario, cfg.curve, eut)
        rep = compare_models(pt_res, eut_res, cfg.curve)
        rows.append(
            {
                "curve": cfg.curve_ref,
                "ir": ir,
                "c_cs_pt": pt_res.c_cs_star,
                "c_cs_eut": eut_res.c_cs_star,
                "c_cs_overspend_pct": rep.c_cs_overspend_pct,
                "risk_reduction_pct": rep.risk_reduction_pct,
                "c_tot_delta": rep.c_tot_delta,
                "equal_total_cost": rep.equal_total_cost,
            }
        )
    _emit(cfg.fmt, cfg.out, cfg.decimals, columns, rows)
    return EXIT_OK


def _cmd_rank(args) -> int:
    cfg = _run_config(args, default_models=("pt",))
    model = cfg.models[0]
    ranked = rank_insurance_options(cfg.scenario, cfg.curve, model, cfg.coverage_options)
    columns = ["rank", "ir", "model", "params", "c_cs", "c_i", "c_tot", "residual_prob", "objective"]
    rows = [
        {
            "rank": pos + 1,
            "ir": ir,
            "model": res.model_tag,
            "params": _model_label(model),
            "c_cs": res.c_cs_star,
            "c_i": res.c_i_star,
            "c_tot": res.c_tot,
            "residual_prob": res.residual_prob,
            "objective": res.objective_value,
        }
        for pos, (ir, res) in enumerate(ranked)
    ]
    _emit(cfg.fmt, cfg.out, cfg.decimals, columns, rows)
    return EXIT_OK


def _cmd_bespoke(args) -> int:
    cfg = _run_config(args)
    scenario = replace(cfg.scenario, i_r=cfg.coverage_options[0] if args.ir else 0.8)
    reference = optimize_allocation(scenario, cfg.curve, EUTParams(r=args.r))
    found = bespoke_search(scenario, cfg.curve, reference, cost_tolerance=args.cost_tolerance, lam=args.lam)
    columns = [
        "status",
        "alpha",
        "beta",
        "c_cs",
        "c_i",
        "c_tot",
        "eut_c_tot",
        "cost_gap",
        "risk_gain_pct",
        "qualifying_points",
    ]
    if found is None:
        rows = [
            {
                "status": "none",
                "alpha": "",
                "beta": "",
                "c_cs": "",
                "c_i": "",
                "c_tot": "",
                "eut_c_tot": reference.c_tot,
                "cost_gap": "",
                "risk_gain_pct": "",
                "qualifying_points": 0,
            }
        ]
    else:
        rows = [
            {
                "status": "found",
                "alpha": found.alpha_star,
                "beta": found.beta_star,
                "c_cs": found.allocation.c_cs_star,
                "c_i": found.allocation.c_i_star,
                "c_tot": found.allocation.c_tot,
                "eut_c_tot": reference.c_tot,
                "cost_gap": found.cost_gap,
                "risk_gain_pct": found.risk_gain_pct,
                "qualifying_points": len(found.qualifying),
            }
        ]
    _emit(cfg.fmt, cfg.out, cfg.decimals, columns, rows)
    return EXIT_OK


def _floats(raw: str, flag: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in raw.split(",") if v.strip())
    except ValueError:
        raise ConfigError(f"{flag} expects comma-separated numbers, got {raw!r}") from None


def _cmd_sweep(args) -> int:
    cfg = _run_config(args, default_models=("pt",))
    if args.axis == "sensitivity":
        report = sensitivity_sweep(
            cfg.scenario,
            cfg.curve,
            PTParams(alpha=args.alpha, lam=args.lam, beta=args.beta),
            [EUTParams(r=0.88), EUTParams(r=1.0)],
            w_multipliers=_floats(args.w_multipliers, "--w-multipliers"),
            lw_ratios=_floats(args.lw_ratios, "--lw-ratios"),
            q_values=_floats(args.q_values, "--q-values"),
            coverage_options=cfg.coverage_options,
        )
        columns = [
            "wealth",
            "loss",
            "q",
            "fair_premium",
            "r",
            "pt_best_ir",
            "eut_best_ir",
            "thm1_ok",
            "thm2_ok",
            "spend_gap_signs",
        ]
        rows = []
        for rec in report.records:
            signs = ";".join(f"ir={ir:g}:{sign:+d}" for ir, sign in rec.spend_gap_sign.items())
            for r_value in sorted(rec.eut_best_ir):
                rows.append(
                    {
                        "wealth": rec.wealth,
                        "loss": rec.loss,
                        "q": rec.q,
                        "fair_premium": rec.fair_premium,
                        "r": r_value,
                        "pt_best_ir": rec.pt_best_ir,
                        "eut_best_ir": rec.eut_best_ir[r_value],
                        "thm1_ok": rec.thm1_ok[r_value],
                        "thm2_ok": rec.thm2_ok[r_value],
                        "spend_gap_signs": signs,
                    }
                )
        _emit(cfg.fmt, cfg.out, cfg.decimals, columns, rows)
        return EXIT_OK

    if not args.values:
        raise ConfigError("--values is required for conjecture axes")
    values = _floats(args.values, "--values")
    scenario = replace(cfg.scenario, i_r=cfg.coverage_options[0]) if args.ir else cfg.scenario
    report = conjecture_sweep(
        scenario,
        cfg.curve,
        args.axis,
        values,
        pt_base=PTParams(alpha=args.alpha, lam=args.lam, beta=args.beta),
    )
    columns = [
        "axis",
        "value",
        "ir",
        "c_cs",
        "c_i",
        "c_tot",
        "residual_prob",
        "objective",
        "strictly_increasing",
        "strictly_decreasing",
        "max_abs_delta",
    ]
    rows = [
        {
            "axis": report.axis,
            "value": value,
            "ir": scenario.i_r,
            "c_cs": res.c_cs_star,
            "c_i": res.c_i_star,
            "c_tot": res.c_tot,
            "residual_prob": res.residual_prob,
            "objective": res.objective_value,
            "strictly_increasing": report.strictly_increasing,
            "strictly_decreasing": report.strictly_decreasing,
            "max_abs_delta": report.max_abs_delta,
        }
        for value, res in zip(report.values, report.results)
    ]
    _emit(cfg.fmt, cfg.out, cfg.decimals, columns, rows)
    return EXIT_OK


def _cmd_verify(args) -> int:
    cfg = _run_config(args, default_models=("pt",))
    pt = PTParams(alpha=args.alpha, lam=args.lam, beta=args.beta)
    report = verify_theorems(cfg.curve, cfg.scenario, pt, EUTParams(r=args.r))
    columns = [
        "curve",
        "applicable",
        "prop1",
        "prop1_min_margin",
        "thm1",
        "thm2",
        "c_pt",
        "c_eut",
        "c_i_pt",
        "c_i_eut",
        "equal_cost_residual",
    ]
    blank = lambda v: "" if v is None else v  # noqa: E731
    rows = [
        {
            "curve": cfg.curve_ref,
            "applicable": report.applicable,
            "prop1": report.prop1_status,
            "prop1_min_margin": blank(report.prop1_min_margin),
            "thm1": report.thm1_status,
            "thm2": report.thm2_status,
            "c_pt": blank(report.c_pt),
            "c_eut": blank(report.c_eut),
            "c_i_pt": blank(report.c_i_pt),
            "c_i_eut": blank(report.c_i_eut),
            "equal_cost_residual": blank(report.equal_cost_residual),
        }
    ]
    _emit(cfg.fmt, cfg.out, cfg.decimals, columns, rows)
    return EXIT_OK


def _cmd_validate(args) -> int:
    curve = load_curve(args.curve)
    report = validate_curve(curve, sample_resolution=args.resolution)
    columns = [
        "curve",
        "monotone",
        "strictly_positive",
        "baseline_below_one",
        "max_probability",
        "theorem_precondition_ok",
    ]
    rows = [
        {
            "curve": args.curve,
            "monotone": report.monotone,
            "strictly_positive": report.strictly_positive,
            "baseline_below_one": report.baseline_below_one,
            "max_probability": report.max_probability,
            "theorem_precondition_ok": report.theorem_precondition_ok,
        }
    ]
    _emit(args.format, args.out, _decimals(args.decimals), columns, rows)
    if not report.assumptions_ok:
        for line in report.violations():
            print(f"violation: {line}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def _cmd_templates(args) -> int:
    columns = ["name", "variant", "baseline", "domain_max", "breakpoints"]
    rows = []
    for name in TEMPLATE_NAMES:
        curve = template(name)
        rows.append(
            {
                "name": name,
                "variant": curve.variant,
                "baseline": eval_prob(curve, 0.0),
                "domain_max": curve.domain_max,
                "breakpoints": ";".join(f"{b:g}" for b in curve.breakpoints()),
            }
        )
    text = render_report(columns, rows, args.format, decimals=4)
    sys.stdout.write(text)
    return EXIT_OK


def _cmd_emit_curve(args) -> int:
    curve = load_curve(args.curve)
    if args.resolution < 2:
        raise ConfigError(f"--resolution must be >= 2, got {args.resolution}")
    grid = [float(c) for c in np.linspace(0.0, curve.domain_max, args.resolution)]
    rows = []
    breakpoints = set(b for b in curve.breakpoints() if 0.0 < b <= curve.domain_max)
    points = sorted(set(grid) | breakpoints)
    for c in points:
        if c in breakpoints:
            # render the jump: left limit first, then the right-continuous value
            rows.append({"c_cs": c, "pi": left_limit(curve, c)})
        rows.append({"c_cs": c, "pi": eval_prob(curve, c)})
    _emit(args.format, args.out, _decimals(args.decimals), ["c_cs", "pi"], rows)
    return EXIT_OK


_COMMANDS = {
    "solve": _cmd_solve,
    "compare": _cmd_compare,
    "rank": _cmd_rank,
    "bespoke": _cmd_bespoke,
    "sweep": _cmd_sweep,
    "verify": _cmd_verify,
    "validate": _cmd_validate,
    "templates": _cmd_templates,
    "emit-curve": _cmd_emit_curve,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValidationFailure as exc:
        print("curve validation failed:", file=sys.stderr)
        for line in exc.violations:
            print(f"  {line}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001 -- anything else is an internal defect
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
