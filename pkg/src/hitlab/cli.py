"""Command line entry point: ``hitlab {sample,solve,predict,diagnose,experiment}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import analysis
from .harness import ExperimentAborted, ExperimentConfig, asymptotic_prediction, regime_to_dict, run_experiment, summary_json
from .sampler import Dense, ExplicitLgP, InstanceTooLarge, Sparse, lg_p_of, sample_system
from .setsystem import SetSystemError, format_text, read_text
from .solver import DEFAULT_NODE_BUDGET, solve_min_hitting


def seed_arg(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _add_regime(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--beta", type=float, help="dense family, p = 2^(-beta n)")
    group.add_argument("--alpha", type=float, help="sparse family, p = n^alpha / 2^n")
    group.add_argument("--lg-p", type=float, help="explicit log2 of p")


def _regime(args):
    if args.beta is not None:
        return Dense(args.beta)
    if args.alpha is not None:
        return Sparse(args.alpha)
    return ExplicitLgP(args.lg_p)


def _print_json(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def cmd_sample(args) -> int:
    system = sample_system(args.n, _regime(args), args.seed, method=args.method)
    text = format_text(system)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_solve(args) -> int:
    system = read_text(args.path)
    res = solve_min_hitting(system, args.node_budget)
    doc = {"n": system.n, "edges": len(system.edges)}
    doc.update(res.to_dict())
    _print_json(doc)
    if not res.optimal:
        print(f"hitlab: node budget of {args.node_budget} exhausted; size is an upper bound",
              file=sys.stderr)
        return 3
    return 0


def cmd_predict(args) -> int:
    regime = _regime(args)
    lg_p = lg_p_of(regime, args.n)
    c = analysis.curve(args.n, lg_p)
    doc = {
        "n": args.n,
        "regime": regime_to_dict(regime),
        "lg_p": lg_p,
        "curve": [{"m": m, "lg_lambda": v} for m, v in enumerate(c.values)],
        "window_finite": analysis.finite_window(c).to_dict(),
    }
    pred = asymptotic_prediction(args.n, regime)
    doc["prediction_asymptotic"] = None if pred is None else pred.to_dict()
    if isinstance(regime, Dense) and pred is not None:
        doc["prediction_asymptotic"]["i"] = analysis.dense_i(args.n, regime.beta)
    _print_json(doc)
    return 0


def cmd_diagnose(args) -> int:
    regime = _regime(args)
    lg_p = lg_p_of(regime, args.n)
    lg_lam = analysis.lg_lambda(args.n, args.m, lg_p)
    diag = analysis.second_moment(args.n, args.m, lg_lam)
    doc = {"n": args.n, "regime": regime_to_dict(regime), "lg_p": lg_p, "lg_lambda": lg_lam}
    doc.update(diag.to_dict())
    _print_json(doc)
    return 0


def cmd_experiment(args) -> int:
    config = ExperimentConfig(
        n=args.n,
        regime=_regime(args),
        trials=args.trials,
        master_seed=args.seed,
        node_budget=args.node_budget,
        workers=args.workers,
        output_path=args.out,
        count_xm=args.count_xm,
        timing=not args.no_timing,
    )
    _, summary = run_experiment(config)
    sys.stdout.write(summary_json(config, summary))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hitlab", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw one R(n,p) instance as a system file")
    p.add_argument("--n", type=positive_int, required=True)
    _add_regime(p)
    p.add_argument("--seed", type=seed_arg, default=0, help="64-bit seed, hex or decimal")
    p.add_argument("--method", choices=["skip", "poisson"], default=None)
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("solve", help="exact minimum hitting set of a system file")
    p.add_argument("path")
    p.add_argument("--node-budget", type=positive_int, default=DEFAULT_NODE_BUDGET)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("predict", help="expectation curve, finite window, asymptotic h and i")
    p.add_argument("--n", type=positive_int, required=True)
    _add_regime(p)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("diagnose", help="second-moment diagnostics for one m")
    p.add_argument("--n", type=positive_int, required=True)
    p.add_argument("--m", type=int, required=True)
    _add_regime(p)
    p.set_defaults(func=cmd_diagnose)

    p = sub.add_parser("experiment", help="seeded Monte Carlo run, CSV + JSON summary")
    p.add_argument("--n", type=positive_int, required=True)
    _add_regime(p)
    p.add_argument("--trials", type=positive_int, required=True)
    p.add_argument("--seed", type=seed_arg, default=0, help="64-bit master seed, hex or decimal")
    p.add_argument("--workers", type=positive_int, default=1)
    p.add_argument("--node-budget", type=positive_int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--out", help="CSV path; the JSON summary goes next to it with a .json suffix")
    p.add_argument("--count-xm", type=int, default=None, metavar="M",
                   help="also count size-M hitting sets per trial (C(n,M) <= 1e6)")
    p.add_argument("--no-timing", action="store_true",
                   help="leave the ms column blank so the CSV is byte-reproducible")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ValueError, SetSystemError, InstanceTooLarge, ExperimentAborted, OSError) as exc:
        print(f"hitlab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
