"""Command-line interface: ``greedy-lebesgue <command> ...``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

from . import spaces as sp
from .chebyshev import ctga
from .coeffspace import format_vector, parse_vector
from .greedy import canonical_greedy_set
from .params import ParamKind, SearchConfig, estimate, windowed_exact
from .verify import (SUITES, ConfigError, SuiteSpec, _json_value, emit_report,
                     ratio_series, run_suite)


def _text(x):
    return format(x, ".17g") if isinstance(x, float) else str(x)


def _emit(data: dict, fmt: str) -> str:
    if fmt == "json":
        return _json_value(data) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])
    for k, v in data.items():
        w.writerow([k, v if isinstance(v, str) else _json_value(v)])
    return buf.getvalue()


def _load_config(path):
    if path is None:
        return {}
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e


def _cmd_norm(args):
    space = sp.parse_space(args.space, exact=args.exact)
    v = parse_vector(args.vector, exact=args.exact)
    val = sp.norm(space, v)
    return {"space": space.label(), "vector": format_vector(v), "norm": _text(val),
            "norm_float": float(val)}, 0


def _cmd_greedy(args):
    space = sp.parse_space(args.space, exact=args.exact)
    v = parse_vector(args.vector, exact=args.exact)
    res = canonical_greedy_set(v, args.m)
    rn = sp.norm(space, res.residual)
    return {"space": space.label(), "m": args.m, "order": list(res.order),
            "greedy_sum": format_vector(res.greedy_sum), "residual": format_vector(res.residual),
            "residual_norm": _text(rn), "residual_norm_float": float(rn)}, 0


def _cmd_chebyshev(args):
    space = sp.parse_space(args.space, exact=args.exact)
    v = parse_vector(args.vector, exact=args.exact)
    fit = ctga(space, v, args.m)
    return {"space": space.label(), "m": args.m, "A": list(fit.support),
            "coefficients": {str(n): _text(c) for n, c in sorted(fit.coeffs.items())},
            "residual": _text(fit.residual), "residual_float": float(fit.residual),
            "method": fit.method}, 0


def _search_config(args) -> SearchConfig:
    d = _load_config(args.config).get("search", {})
    cfg = SearchConfig.from_dict(d)
    return replace(cfg, random_seed=args.seed)


def _grid(text):
    return tuple(Fraction(g) for g in text.split(","))


def _cmd_param(args):
    space = sp.parse_space(args.space, exact=args.exact)
    if args.mode == "witness":
        est = estimate(space, args.kind, args.m, _search_config(args))
    else:
        est = windowed_exact(space, args.kind, args.m, args.window, _grid(args.grid))
    return {"space": space.label()} | est.to_dict(), 0


def _cmd_verify(args):
    d = _load_config(args.config)
    d.setdefault("suite", args.suite)
    if d["suite"] != args.suite:
        raise ConfigError(f"config names suite {d['suite']!r}, command line {args.suite!r}")
    if args.seed is not None:
        d["seed"] = args.seed
    if args.exact:
        d["exact"] = True
    spec = SuiteSpec.from_dict(d)
    report = run_suite(spec)
    text = emit_report(report, args.format, path=args.output)
    return text, (0 if report.ok else 1)


def _cmd_ratio(args):
    space = sp.parse_space(args.space, exact=args.exact)
    series = ratio_series(space, args.num, args.den, args.R, (args.m_lo, args.m_hi),
                          _search_config(args), mode=args.mode, N=args.window,
                          grid=_grid(args.grid))
    return {"space": space.label()} | series.to_dict(), 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--exact", action="store_true", default=argparse.SUPPRESS,
                        help="rational (with square roots) arithmetic")

    p = argparse.ArgumentParser(prog="greedy-lebesgue", parents=[common],
                                description="Lebesgue-type parameters of greedy algorithms.")
    sub = p.add_subparsers(dest="command", required=True)
    kinds = [k.value for k in ParamKind]

    s = sub.add_parser("norm", parents=[common], help="norm of a coefficient vector")
    s.add_argument("space")
    s.add_argument("vector", help="e.g. '1:1 2:-1/2'")
    s.set_defaults(run=_cmd_norm)

    s = sub.add_parser("greedy", parents=[common], help="TGA step")
    s.add_argument("space")
    s.add_argument("vector")
    s.add_argument("--m", type=int, required=True)
    s.set_defaults(run=_cmd_greedy)

    s = sub.add_parser("chebyshev", parents=[common], help="CTGA step")
    s.add_argument("space")
    s.add_argument("vector")
    s.add_argument("--m", type=int, required=True)
    s.set_defaults(run=_cmd_chebyshev)

    s = sub.add_parser("param", parents=[common], help="parameter estimate")
    s.add_argument("space")
    s.add_argument("kind", choices=kinds)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--mode", choices=("witness", "windowed"), default="witness")
    s.add_argument("--window", type=int, default=5)
    s.add_argument("--grid", default="0,1,-1,2,-2")
    s.add_argument("--config", default=None, help="JSON file with a 'search' section")
    s.set_defaults(run=_cmd_param)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("suite", choices=SUITES)
    s.add_argument("--config", default=None, help="JSON suite configuration")
    s.add_argument("--output", default=None, help="write the report here as well")
    s.set_defaults(run=_cmd_verify)

    s = sub.add_parser("ratio", parents=[common], help="ratio series est(num)/est(den)^R")
    s.add_argument("space")
    s.add_argument("num", choices=kinds)
    s.add_argument("den", choices=kinds)
    s.add_argument("--R", type=float, required=True)
    s.add_argument("--m-lo", type=int, default=1)
    s.add_argument("--m-hi", type=int, default=6)
    s.add_argument("--mode", choices=("witness", "windowed"), default="witness")
    s.add_argument("--window", type=int, default=5)
    s.add_argument("--grid", default="0,1,-1,2,-2")
    s.add_argument("--config", default=None)
    s.set_defaults(run=_cmd_ratio)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("seed", None), ("format", "json"), ("exact", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    if args.command != "verify" and args.seed is None:
        args.seed = 0
    try:
        out, code = args.run(args)
    except (ConfigError, sp.SpaceError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(out if isinstance(out, str) else _emit(out, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
