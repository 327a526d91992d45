"""Command line front end.

    graphbandits run --config cfg.json [--seeds 0 1 2] [--out DIR] [--workers N]
    graphbandits sweep --config cfg.json [--horizons 1000 2000 4000] [--out DIR]
    graphbandits check-sampler --k 10 --s 3 --samples 200000 [--sampler swap] [--seed 0]
    graphbandits graph-info (--graph file.json | --generator name --params k=v ...)
    graphbandits separation --cliques 8 --budget 4 --horizon 20000 [--seeds 0 1 2]

Output directory resolution: --out flag, else the GRAPHBANDITS_OUTPUT_DIR
environment variable, else no files are written (results still print).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import harness
from .errors import GraphBanditsError
from .feedback_graph import graph_profile, load_graph, make_graph
from .polytope import PolytopeSpec, initial_point
from .rng import derived_rng
from .sampling import certify_sampler, make_sampler


def _parse_params(pairs) -> dict:
    params = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise SystemExit(f"expected key=value, got {pair!r}")
        key, value = pair.split("=", 1)
        try:
            params[key] = int(value)
        except ValueError:
            try:
                params[key] = float(value)
            except ValueError:
                params[key] = value
    return params


def cmd_run(args) -> int:
    config = harness.load_config(args.config)
    if args.seeds is not None:
        raw = dict(config.raw, seeds=list(args.seeds))
        config = harness.parse_config(raw)
    traces = harness.run(config, output_dir=args.out, max_workers=args.workers)
    finals = [t.final_regret for t in traces]
    print(f"config {config.config_hash}  policy {config.policy['id']}")
    for trace in traces:
        print(f"  seed {trace.seed}: final regret {trace.final_regret:.3f}")
    print(f"mean final regret {np.mean(finals):.3f} (std {np.std(finals):.3f})")
    return 0


def cmd_sweep(args) -> int:
    config = harness.load_config(args.config)
    raw = dict(config.raw)
    if args.horizons is not None:
        raw["horizons"] = list(args.horizons)
    if args.seeds is not None:
        raw["seeds"] = list(args.seeds)
    config = harness.parse_config(raw)
    result = harness.sweep_and_fit(config, output_dir=args.out)
    for horizon, mean, stderr in zip(result.horizons, result.mean_regret, result.stderr_regret):
        print(f"  T={horizon}: mean final regret {mean:.3f} (stderr {stderr:.3f})")
    print(f"log-log slope {result.slope:.4f} +/- {result.slope_stderr:.4f}")
    return 0


def cmd_check_sampler(args) -> int:
    if args.sampler == "clique-aligned":
        if args.k % args.s != 0:
            raise SystemExit("clique-aligned check needs s | k")
        cliques = [tuple(range(i, i + args.s)) for i in range(0, args.k, args.s)]
        sampler = make_sampler(args.sampler, cliques=cliques)
    else:
        sampler = make_sampler(args.sampler)
    spec = PolytopeSpec(args.k, args.s, min(0.01, args.s / args.k))
    rng = derived_rng(args.seed, 2, 0)
    x = np.clip(
        initial_point(spec) + 0.5 * (rng.random(args.k) - 0.5) * spec.budget / args.k,
        spec.epsilon,
        1.0,
    )
    x *= args.s / x.sum()
    if args.sampler == "clique-aligned":
        # averaging within equal-size cliques keeps the total at s
        for clique in cliques:
            x[list(clique)] = x[list(clique)].mean()
    report = certify_sampler(sampler, x, args.s, args.samples, derived_rng(args.seed, 2, 1))
    print(json.dumps(report.to_dict(), indent=2))
    failed = report.worst_mean_z > 4.0 or (
        args.sampler == "swap" and report.flagged_pairs
    )
    print(
        f"{'FAIL' if failed else 'ok'}: worst mean z {report.worst_mean_z:.2f}, "
        f"{len(report.flagged_pairs)} positively correlated pair(s) flagged"
    )
    return 1 if failed else 0


def cmd_graph_info(args) -> int:
    if args.graph is not None:
        graph = load_graph(args.graph)
    else:
        graph = make_graph(args.generator, **_parse_params(args.params))
    profile = graph_profile(graph)
    print(json.dumps(profile.to_dict(), indent=2))
    return 0


def cmd_separation(args) -> int:
    report = harness.separation_experiment(
        args.cliques, args.budget, args.horizon, args.seeds
    )
    print(json.dumps(report.to_dict(), indent=2))
    print(
        f"aligned/swap regret ratio {report.regret_ratio:.3f} "
        f"(swap mixed on {100 * report.swap_mixing_fraction:.1f}% of rounds)"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphbandits",
        description="Combinatorial semi-bandits with graph feedback",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a config at its configured horizon")
    p_run.add_argument("--config", required=True, help="JSON experiment config")
    p_run.add_argument("--seeds", type=int, nargs="+", help="override config seeds")
    p_run.add_argument("--out", help="output directory for traces and summary")
    p_run.add_argument("--workers", type=int, default=1, help="process pool size")
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="run over a horizon grid and fit the growth rate")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--horizons", type=int, nargs="+", help="override config horizons")
    p_sweep.add_argument("--seeds", type=int, nargs="+", help="override config seeds")
    p_sweep.add_argument("--out", help="output directory")
    p_sweep.set_defaults(func=cmd_sweep)

    p_check = sub.add_parser("check-sampler", help="statistically certify a sampler")
    p_check.add_argument("--k", type=int, required=True, help="number of arms")
    p_check.add_argument("--s", type=int, required=True, help="budget")
    p_check.add_argument("--samples", type=int, default=200000)
    p_check.add_argument(
        "--sampler", default="swap", choices=["swap", "mean-only", "clique-aligned"]
    )
    p_check.add_argument("--seed", type=int, default=0)
    p_check.set_defaults(func=cmd_check_sampler)

    p_info = sub.add_parser("graph-info", help="observability and structural numbers")
    group = p_info.add_mutually_exclusive_group(required=True)
    group.add_argument("--graph", help="graph JSON file")
    group.add_argument("--generator", help="generator name")
    p_info.add_argument("--params", nargs="*", help="generator key=value parameters")
    p_info.set_defaults(func=cmd_graph_info)

    p_sep = sub.add_parser(
        "separation", help="swap rounding vs clique-aligned sampling, paired rewards"
    )
    p_sep.add_argument("--cliques", type=int, required=True)
    p_sep.add_argument("--budget", type=int, required=True)
    p_sep.add_argument("--horizon", type=int, required=True)
    p_sep.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2, 3, 4])
    p_sep.set_defaults(func=cmd_separation)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GraphBanditsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
