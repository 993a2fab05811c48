"""Command line front end.

Three subcommands: run sweeps the scenarios in a JSON config and writes
results.csv plus loglog.txt into an output directory, oracle prints the
dense-solve PageRank vector for a graph and preference file, spectral
prints the second-eigenvalue report for a graph.  Exit codes: 0 on
success, 1 for configuration or input problems, 2 for failures during
computation, 3 when --check finds a scenario cell below the success
threshold.
"""

import argparse
import sys
from pathlib import Path

from .errors import PrlabError, ScenarioError
from .experiments import (
    emit_csv,
    emit_loglog,
    load_config,
    run_scenario,
    success_fraction,
)
from .generators import Seed
from .graph_core import read_edge_list
from .pagerank import pagerank_dense_oracle, read_vector
from .spectral import second_eigenvalue_magnitude

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2
EXIT_THRESHOLD = 3

SUCCESS_THRESHOLD = 0.9


def _fail(err, code):
    print(f"error: {err}", file=sys.stderr)
    return code


def _cmd_run(args):
    try:
        if args.threads < 1:
            raise ScenarioError(f"--threads must be >= 1, got {args.threads}")
        scenarios = load_config(args.config)
        if args.scenario is not None:
            scenarios = [s for s in scenarios if s.name == args.scenario]
            if not scenarios:
                raise ScenarioError(f"no scenario named {args.scenario!r} in config")
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
    except (PrlabError, OSError) as err:
        return _fail(err, EXIT_CONFIG)
    try:
        records = []
        for scenario in scenarios:
            records.extend(run_scenario(scenario, threads=args.threads))
        emit_csv(records, out_dir / "results.csv")
        emit_loglog(records, out_dir / "loglog.txt")
    except (PrlabError, OSError) as err:
        return _fail(err, EXIT_RUNTIME)
    if args.check:
        shortfall = {
            key: rate
            for key, rate in success_fraction(records).items()
            if rate < SUCCESS_THRESHOLD
        }
        if shortfall:
            for (name, n), rate in sorted(shortfall.items()):
                print(
                    f"success rate {rate:.3f} below {SUCCESS_THRESHOLD} "
                    f"for {name} at n={n}",
                    file=sys.stderr,
                )
            return EXIT_THRESHOLD
    return EXIT_OK


def _cmd_oracle(args):
    try:
        graph = read_edge_list(args.graph)
        v = read_vector(args.v)
    except (PrlabError, OSError) as err:
        return _fail(err, EXIT_CONFIG)
    try:
        vector = pagerank_dense_oracle(graph, v, args.alpha)
    except PrlabError as err:
        return _fail(err, EXIT_RUNTIME)
    for value in vector:
        print(repr(float(value)))
    return EXIT_OK


def _cmd_spectral(args):
    try:
        graph = read_edge_list(args.graph)
    except (PrlabError, OSError) as err:
        return _fail(err, EXIT_CONFIG)
    try:
        report = second_eigenvalue_magnitude(
            graph, tol=args.tol, seed=Seed(args.seed)
        )
    except PrlabError as err:
        return _fail(err, EXIT_RUNTIME)
    print(f"lambda2_abs {report.lambda2_abs!r}")
    print(f"gap {report.gap!r}")
    print(f"iterations {report.iterations}")
    print(f"residual {report.residual!r}")
    print(f"degree_ratio {report.degree_ratio!r}")
    print(f"converged {'true' if report.converged else 'false'}")
    return EXIT_OK


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="prlab",
        description="PageRank asymptotics laboratory for sparse random graphs",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="sweep the scenarios in a config file")
    run.add_argument("--config", required=True, help="JSON scenario config")
    run.add_argument("--out-dir", required=True, help="directory for results")
    run.add_argument("--threads", type=int, default=1, help="worker threads per scenario")
    run.add_argument("--scenario", default=None, help="run only the named scenario")
    run.add_argument(
        "--check",
        action="store_true",
        help=f"exit 3 when any (scenario, n) success rate drops below {SUCCESS_THRESHOLD}",
    )
    run.set_defaults(handler=_cmd_run)

    oracle = commands.add_parser(
        "oracle", help="print the dense-solve PageRank vector, one entry per line"
    )
    oracle.add_argument("--graph", required=True, help="edge list file")
    oracle.add_argument("--v", required=True, help="preference vector file")
    oracle.add_argument("--alpha", type=float, required=True, help="damping factor")
    oracle.set_defaults(handler=_cmd_oracle)

    spectral = commands.add_parser(
        "spectral", help="print the second-eigenvalue report for a graph"
    )
    spectral.add_argument("--graph", required=True, help="edge list file")
    spectral.add_argument("--tol", type=float, default=1e-8, help="stopping tolerance")
    spectral.add_argument("--seed", type=int, default=0, help="start-vector seed")
    spectral.set_defaults(handler=_cmd_spectral)
    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_info:
        # argparse exits 0 for --help and 2 for usage errors; fold the
        # latter into the config-error code
        return EXIT_OK if exit_info.code == 0 else EXIT_CONFIG
    try:
        return args.handler(args)
    except Exception as err:
        return _fail(err, EXIT_RUNTIME)


if __name__ == "__main__":
    sys.exit(main())
