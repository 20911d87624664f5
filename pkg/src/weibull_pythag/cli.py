"""Command line interface: ``weibull-pythag {fit,multi,verify,convert,tests}``.

Exit status is 0 on success, 1 on invalid input (or an oracle mismatch in
``verify``), 2 when a fit fails.
"""

import argparse
import json
import logging
import sys

import numpy as np

from .baselines import PYTHWL_EXPONENT
from .errors import FitError, ValidationError
from .fitting import FitConfig
from .ingestion import DEFAULT_NUM_BINS, convert_public_log
from .report import (
    ReportConfig,
    format_multi,
    format_season,
    run_multi_season,
    run_season,
    write_plot_data,
)
from .simulator import SimConfig, estimate_win_pct, random_mixture
from .weibull import MixtureParams, mixture_win_pct

EXIT_OK, EXIT_INVALID, EXIT_FIT = 0, 1, 2


def _fit_options(p):
    p.add_argument("--bins", type=int, default=DEFAULT_NUM_BINS,
                   help="run bins incl. overflow (default %(default)s)")
    p.add_argument("--starts", type=int, default=16, help="optimizer starts per fit")
    p.add_argument("--max-iter", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exponent", type=float, default=PYTHWL_EXPONENT,
                   help="pythWL baseline exponent (default %(default)s)")
    p.add_argument("--workers", type=int, default=1, help="parallel team fits")
    p.add_argument("--json", metavar="PATH", help="write the machine-readable report")
    p.add_argument("--plots", metavar="DIR", help="write plot-ready CSV series")


def _report_config(args):
    return ReportConfig(
        fit=FitConfig(num_bins=args.bins, multistart_count=args.starts,
                      max_iterations=args.max_iter, seed=args.seed),
        exponent=args.exponent,
        workers=args.workers,
    )


def _write_json(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text + "\n")


def cmd_fit(args):
    report = run_season(args.input, _report_config(args), season=args.season)
    print(format_season(report))
    if args.json:
        _write_json(args.json, report.to_json())
    if args.plots:
        write_plot_data([report], args.plots)
    return EXIT_OK


def cmd_multi(args):
    seasons = None
    if args.first is not None or args.last is not None:
        lo = args.first if args.first is not None else -10**9
        hi = args.last if args.last is not None else 10**9
        seasons = range(lo, hi + 1)
    report = run_multi_season(args.inputs, _report_config(args), seasons=seasons)
    print(format_multi(report))
    if args.json:
        _write_json(args.json, report.to_json())
    if args.plots:
        write_plot_data(report.seasons, args.plots)
    return EXIT_OK


def cmd_tests(args):
    report = run_season(args.input, _report_config(args), season=args.season)
    print(f"Season {report.season}: chi-square tests")
    print(f"{'team':<6}{'GOF':>9}{'df':>4}{'95%':>5}{'99%':>5}{'indep':>9}{'df':>5}{'95%':>5}{'99%':>5}")
    for r in report.rows:
        gp = r.gof_passes
        line = f"{r.team:<6}{r.gof_statistic:>9.2f}{r.gof_df:>4}{_yn(gp['95']):>5}{_yn(gp['99']):>5}"
        if r.independence_statistic is None:
            line += f"{'n/a':>9}   {r.independence_note}"
        else:
            ip = r.independence_passes
            line += (f"{r.independence_statistic:>9.2f}{r.independence_df:>5}"
                     f"{_yn(ip['95']):>5}{_yn(ip['99']):>5}")
        print(line)
    if args.json:
        out = {
            "season": report.season,
            "teams": [{
                "team": r.team,
                "gof": {"statistic": r.gof_statistic, "df": r.gof_df, "passes": r.gof_passes},
                "independence": {"statistic": r.independence_statistic, "df": r.independence_df,
                                 "passes": r.independence_passes, "note": r.independence_note},
            } for r in report.rows],
        }
        _write_json(args.json, json.dumps(out, indent=2, sort_keys=True))
    return EXIT_OK


def _yn(flag):
    return "ok" if flag else "FAIL"


def cmd_verify(args):
    rng = np.random.default_rng(args.seed)
    if args.params:
        values = [float(v) for v in args.params.split(",")]
        if len(values) != 7:
            raise ValidationError("--params needs a_rs1,a_rs2,a_ra1,a_ra2,gamma,c1,c1p")
        sets = [MixtureParams.from_vector(*values)]
    else:
        sets = [random_mixture(rng) for _ in range(args.sets)]
    hits = 0
    results = []
    for i, m in enumerate(sets):
        est = estimate_win_pct(m, SimConfig(num_samples=args.mc_samples, seed=args.seed + i))
        w = mixture_win_pct(m)
        bound = 3.0 * (w * (1.0 - w) / args.mc_samples) ** 0.5
        ok = abs(est.p_win - w) <= bound
        hits += ok
        results.append({"closed_form": w, "simulated": est.p_win, "bound": bound, "ok": bool(ok)})
        print(f"set {i:2d}: closed form {w:.6f}  simulated {est.p_win:.6f}  "
              f"|diff| {abs(est.p_win - w):.2e}  bound {bound:.2e}  {'ok' if ok else 'MISS'}")
    need = len(sets) - len(sets) // 20
    print(f"{hits}/{len(sets)} within 3 standard errors (need {need})")
    if args.json:
        _write_json(args.json, json.dumps({"sets": results, "hits": hits}, indent=2))
    return EXIT_OK if hits >= need else EXIT_INVALID


def cmd_convert(args):
    with open(args.input, newline="", encoding="utf-8") as src, \
            open(args.output, "w", newline="", encoding="utf-8") as dst:
        n = convert_public_log(src, dst, fmt=args.format, skip_ties=not args.keep_ties)
    print(f"wrote {2 * n} team-game rows for {n} games to {args.output}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="weibull-pythag",
        description="Weibull-mixture win expectation from per-game run data.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="fit and report one season")
    p.add_argument("input")
    p.add_argument("--season", type=int)
    _fit_options(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("multi", help="fit several seasons and compare methods")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--from", dest="first", type=int)
    p.add_argument("--to", dest="last", type=int)
    _fit_options(p)
    p.set_defaults(func=cmd_multi)

    p = sub.add_parser("tests", help="chi-square goodness of fit and independence only")
    p.add_argument("input")
    p.add_argument("--season", type=int)
    _fit_options(p)
    p.set_defaults(func=cmd_tests)

    p = sub.add_parser("verify", help="Monte Carlo check of the closed-form win pct")
    p.add_argument("--sets", type=int, default=20)
    p.add_argument("--mc-samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--params", help="a_rs1,a_rs2,a_ra1,a_ra2,gamma,c1,c1p")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("convert", help="home/away game log to canonical CSV")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--format", choices=("public", "retrosheet"), default="public")
    p.add_argument("--keep-ties", action="store_true",
                   help="reject tied games instead of dropping them")
    p.set_defaults(func=cmd_convert)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except FitError as exc:
        print(f"fit failed: {exc}", file=sys.stderr)
        return EXIT_FIT
    except (ValidationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
