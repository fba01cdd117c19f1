"""Command-line interface: fit, compare, curve, summary, report.

Exit codes: 0 success, 2 usage/config error, 3 data error, 4 numeric
failure.  All randomness is seeded, so identical inputs and flags give
byte-identical outputs.
"""

import argparse
import dataclasses
import sys

import numpy as np
import yaml

from .bootstrap import fit_weighted
from .dominance import (
    CurveKind,
    DominanceGrid,
    dominance_probabilities,
    probability_curve,
    randomized_bounds,
)
from .errors import ConvergenceError, DataError, UsageError
from .io import PreprocessConfig, atomic_write, load_draws, load_sample, save_draws
from .sampler import SamplerConfig
from .summaries import posterior_functional, weighted_stats

_SAMPLER_KEYS = {f.name for f in dataclasses.fields(SamplerConfig)}
_PREPROCESS_KEYS = {f.name for f in dataclasses.fields(PreprocessConfig)}


def _load_config_file(path):
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            data = yaml.safe_load(fh) or {}
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("config file must contain a key-value mapping")
    unknown = set(data) - _SAMPLER_KEYS - _PREPROCESS_KEYS - {"replications"}
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    return data


def _sampler_config(args, filecfg):
    values = {k: v for k, v in filecfg.items() if k in _SAMPLER_KEYS}
    for key in ("seed", "iterations", "burn_in", "thin"):
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    try:
        return SamplerConfig(**values)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad sampler configuration: {exc}") from None


def _preprocess_config(args, filecfg):
    values = {k: v for k, v in filecfg.items() if k in _PREPROCESS_KEYS}
    for key in ("income_column", "weight_column", "household_size_column", "deflator"):
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    if getattr(args, "equivalise", False):
        values["equivalise"] = True
    if getattr(args, "group", None) is not None:
        if "=" not in args.group:
            raise UsageError("--group expects column=value")
        col, _, val = args.group.partition("=")
        values["group_column"] = col
        values["group_value"] = val
    try:
        return PreprocessConfig(**values)
    except TypeError as exc:
        raise UsageError(f"bad preprocessing configuration: {exc}") from None


def _grid_from_args(args):
    grid = DominanceGrid.default()
    u_min = getattr(args, "u_min", None)
    u_max = getattr(args, "u_max", None)
    if u_min is None and u_max is None:
        return grid
    lo = 0.001 if u_min is None else u_min
    hi = 0.999 if u_max is None else u_max
    try:
        return grid.restricted(lo, hi)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _kind_from_args(args):
    try:
        return CurveKind(args.curve)
    except ValueError:
        raise UsageError(f"unknown curve kind {args.curve!r}") from None


# -- subcommands ----------------------------------------------------------


def _cmd_fit(args):
    filecfg = _load_config_file(args.config)
    pre = _preprocess_config(args, filecfg)
    cfg = _sampler_config(args, filecfg)
    replications = args.replications
    if replications is None:
        replications = int(filecfg.get("replications", 10))
    sample, stats = load_sample(args.input, pre)
    print(
        f"loaded {sample.n} observations from {args.input} "
        f"(dropped {stats.n_dropped} non-positive incomes, {stats.pct_dropped:.2f}%)"
    )
    posterior = fit_weighted(sample, cfg, replications=replications)
    save_draws(posterior, args.output)
    print(f"wrote {posterior.m} draws to {args.output}")
    return 0


def _format_result(result, title, kind, grid, reorderings, bounds=None):
    lines = [title, f"curve: {kind.value.upper()}"]
    active = grid.active
    lines.append(f"u range: {active[0]:g}..{active[-1]:g} ({active.size} points)")
    lines.append(f"M = {result.m_used}, reorderings = {reorderings}")
    if bounds is None:
        lines.append(f"Pr(X over Y): {result.p_x_over_y:.6f}")
        lines.append(f"Pr(Y over X): {result.p_y_over_x:.6f}")
        lines.append(f"Pr(neither):  {result.p_neither:.6f}")
    else:
        bx, by = bounds
        p_neither = max(1.0 - bx.average - by.average, 0.0)
        lines.append(
            f"Pr(X over Y): {bx.average:.6f} (min {bx.minimum:.6f}, max {bx.maximum:.6f})"
        )
        lines.append(
            f"Pr(Y over X): {by.average:.6f} (min {by.minimum:.6f}, max {by.maximum:.6f})"
        )
        lines.append(f"Pr(neither):  {p_neither:.6f}")
    lines.append(f"exactly tied draw pairs: {result.ties}")
    return "\n".join(lines) + "\n"


def _cmd_compare(args):
    x = load_draws(args.draws_x)
    y = load_draws(args.draws_y)
    kind = _kind_from_args(args)
    grid = _grid_from_args(args)
    result = dominance_probabilities(x, y, kind, grid)
    bounds = None
    if args.reorderings > 1:
        bx = randomized_bounds(x, y, kind, grid, reorderings=args.reorderings, seed=args.seed or 0)
        by = randomized_bounds(y, x, kind, grid, reorderings=args.reorderings, seed=args.seed or 0)
        bounds = (bx, by)
    title = f"Dominance comparison: X={args.draws_x} Y={args.draws_y}"
    text = _format_result(result, title, kind, grid, args.reorderings, bounds)
    if args.output:
        atomic_write(args.output, text)
    else:
        sys.stdout.write(text)
    if args.curve_output:
        _write_curve(result.curve_x_over_y, args.curve_output)
    return 0


def _write_curve(curve, path):
    lines = ["u,probability"]
    for u, p in zip(curve.grid.active, curve.values):
        lines.append(f"{u:g},{p:.6f}")
    atomic_write(path, "\n".join(lines) + "\n")


def _cmd_curve(args):
    x = load_draws(args.draws_x)
    y = load_draws(args.draws_y)
    curve = probability_curve(x, y, _kind_from_args(args), _grid_from_args(args))
    _write_curve(curve, args.output)
    print(f"wrote probability curve to {args.output}")
    return 0


def _cmd_summary(args):
    posterior = load_draws(args.draws)
    mean_summary = posterior_functional(posterior, "mean")
    gini_summary = posterior_functional(posterior, "gini")
    lines = [
        f"draws: {posterior.m} (sd convention: population)",
        f"posterior mean income: {mean_summary.mean:.6f} (sd {mean_summary.sd:.6f})",
        f"posterior Gini:        {gini_summary.mean:.6f} (sd {gini_summary.sd:.6f})",
    ]
    if args.input:
        pre = _preprocess_config(args, _load_config_file(args.config))
        sample, stats = load_sample(args.input, pre)
        ws = weighted_stats(sample)
        lines.append(
            f"raw sample: n={ws.n} mean={ws.mean:.6f} sd={ws.sd:.6f} gini={ws.gini:.6f} "
            f"(dropped {stats.n_dropped} rows, {stats.pct_dropped:.2f}%)"
        )
    text = "\n".join(lines) + "\n"
    if args.output:
        atomic_write(args.output, text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_report(args):
    if len(args.draw_files) < 2:
        raise UsageError("report needs at least two draw files")
    samples = [load_draws(p) for p in args.draw_files]
    grid = _grid_from_args(args)
    names = args.draw_files
    rows = []
    blocks = []
    for kind in CurveKind:
        width = max(len(n) for n in names) + 2
        header = " " * width + "".join(f"{n:>{width}}" for n in names)
        block = [f"{kind.value.upper()} dominance probabilities Pr(row over column)", header]
        for i, x in enumerate(samples):
            cells = []
            for j, y in enumerate(samples):
                if i == j:
                    cells.append(f"{'-':>{width}}")
                    continue
                res = dominance_probabilities(x, y, kind, grid)
                cells.append(f"{res.p_x_over_y:{width}.6f}")
                rows.append(
                    f"{names[i]},{names[j]},{kind.value},{res.p_x_over_y:.6f},"
                    f"{res.p_y_over_x:.6f},{res.p_neither:.6f},{res.ties},{res.m_used}"
                )
            block.append(f"{names[i]:>{width}}" + "".join(cells))
        blocks.append("\n".join(block))
    text = "\n\n".join(blocks) + "\n"
    sys.stdout.write(text)
    if args.output:
        csv_text = (
            "x,y,kind,p_x_over_y,p_y_over_x,p_neither,ties,m_used\n" + "\n".join(rows) + "\n"
        )
        atomic_write(args.output, csv_text)
    return 0


# -- argument parsing -----------------------------------------------------


def _add_preprocess_flags(p):
    p.add_argument("--config", help="YAML key-value configuration file")
    p.add_argument("--income-column", dest="income_column")
    p.add_argument("--weight-column", dest="weight_column")
    p.add_argument("--household-size-column", dest="household_size_column")
    p.add_argument("--group", help="column=value subgroup filter")
    p.add_argument("--deflator", type=float, help="CPI index ratio to the base year")
    p.add_argument("--equivalise", action="store_true", default=False)


def _add_range_flags(p):
    p.add_argument("--curve", default="gld", choices=[k.value for k in CurveKind])
    p.add_argument("--u-min", dest="u_min", type=float)
    p.add_argument("--u-max", dest="u_max", type=float)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gammadom",
        description="Bayesian dominance analysis of income distributions "
        "via infinite gamma mixtures",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="fit a weighted sample and save posterior draws")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--iterations", type=int)
    p.add_argument("--burn-in", dest="burn_in", type=int)
    p.add_argument("--thin", type=int)
    p.add_argument("--replications", type=int)
    _add_preprocess_flags(p)
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("compare", help="dominance probabilities between two draw files")
    p.add_argument("draws_x")
    p.add_argument("draws_y")
    _add_range_flags(p)
    p.add_argument("--reorderings", type=int, default=1)
    p.add_argument("--seed", type=int)
    p.add_argument("--output")
    p.add_argument("--curve-output", dest="curve_output")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("curve", help="write the probability curve for a pair")
    p.add_argument("draws_x")
    p.add_argument("draws_y")
    _add_range_flags(p)
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_curve)

    p = sub.add_parser("summary", help="posterior mean income and Gini summaries")
    p.add_argument("draws")
    p.add_argument("--input", help="optional raw CSV for weighted descriptive stats")
    p.add_argument("--output")
    _add_preprocess_flags(p)
    p.set_defaults(func=_cmd_summary)

    p = sub.add_parser("report", help="all pairwise comparisons among draw files")
    p.add_argument("draw_files", nargs="+")
    p.add_argument("--u-min", dest="u_min", type=float)
    p.add_argument("--u-max", dest="u_max", type=float)
    p.add_argument("--output", help="CSV output path")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    except (ConvergenceError, FloatingPointError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
