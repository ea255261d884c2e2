"""Command-line interface: ``busfactor generate | estimate | study``.

Machine-readable CSV goes to stdout, human-oriented messages to stderr.
Exit codes: 0 success, 2 usage or input error, 3 exact-solver guard refusal.
"""

from __future__ import annotations

import argparse
import csv
import logging
import math
import os
import sys

from . import experiments as ex
from .errors import BusFactorError, DomainError, GenerationError, GuardError, ParseError
from .generator import GeneratorParams, generate_power_law_bipartite
from .graph import is_connected, load, save
from .heuristics import AVELINO_HEURISTICS, PICCOLO_HEURISTICS, combined_estimate, removal_order
from .measures import evaluate, exact_avelino, exact_piccolo, score_curve

EXIT_OK, EXIT_USAGE, EXIT_GUARD = 0, 2, 3

ESTIMATE_HEURISTICS = ("min_cov", "max_cov", "greedy_I", "greedy_tau", "degree", "combined")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _tau_group(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--tau-threshold", type=int, default=None,
                   help="absolute greedy tau threshold (default 10; 0 disables)")
    g.add_argument("--tau-frac", type=float, default=None,
                   help="threshold as a fraction of the number of tasks, e.g. 0.01")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="busfactor", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("generate", help="generate a power-law bipartite graph")
    gen.add_argument("--people", type=int, required=True)
    gen.add_argument("--tasks", type=int, required=True)
    gen.add_argument("--lambda-p", type=float, required=True)
    gen.add_argument("--lambda-t", type=float, required=True)
    gen.add_argument("--kp", type=int, required=True)
    gen.add_argument("--kt", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)

    est = sub.add_parser("estimate", help="estimate the bus-factor of an edge-list graph")
    est.add_argument("graph")
    est.add_argument("--measure", choices=("avelino", "piccolo", "both"), default="both")
    est.add_argument("--heuristic", choices=ESTIMATE_HEURISTICS + ("all",), default="combined")
    est.add_argument("--t", type=float, default=0.5, help="coverage threshold fraction")
    _tau_group(est)
    est.add_argument("--curve-out", help="write the decay curve CSV here")
    est.add_argument("--exact", action="store_true", help="also run the exact solver")

    study = sub.add_parser("study", help="run an experiment")
    kinds = study.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    acc = kinds.add_parser("accuracy")
    acc.add_argument("--graphs", type=int, default=100)
    acc.add_argument("--seed", type=int, default=0)
    acc.add_argument("--out", required=True)
    acc.add_argument("--full-scale", action="store_true",
                     help="|P|,|T| in [1000,2000] and k in [50,300]")
    acc.add_argument("--t", type=float, default=0.5)
    acc.add_argument("--tau-threshold", type=int, default=10)
    acc.add_argument("--jobs", type=int, default=1)

    tim = kinds.add_parser("timing")
    tim.add_argument("--sizes", default="1000,10000,100000")
    tim.add_argument("--seed", type=int, default=0)
    tim.add_argument("--repeats", type=int, default=3)
    tim.add_argument("--tau-threshold", type=int, default=10)
    tim.add_argument("--out", required=True)

    sens = kinds.add_parser("sensitivity")
    sens.add_argument("--reports", required=True, help="per_graph.csv from an accuracy study")
    sens.add_argument("--out", default=None, help="output directory (default: next to reports)")
    return parser


def _tau_threshold(args, n_tasks):
    if args.tau_frac is not None:
        return max(0, math.ceil(args.tau_frac * n_tasks))
    return 10 if args.tau_threshold is None else args.tau_threshold


def cmd_generate(args) -> int:
    params = GeneratorParams(args.people, args.tasks, args.lambda_p, args.lambda_t,
                             args.kp, args.kt, args.seed)
    try:
        g = generate_power_law_bipartite(params)
    except (DomainError, GenerationError) as exc:
        print(f"busfactor generate: {exc}", file=sys.stderr)
        return EXIT_USAGE
    save(g, args.out)
    c = g.compact()
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["people", "tasks", "edges", "max_person_degree", "max_task_degree", "connected"])
    w.writerow([c.n_people, c.n_tasks, c.n_edges, max(map(len, c.p_adj)),
                max(map(len, c.t_adj)), int(is_connected(g))])
    return EXIT_OK


def _estimate_names(measure, heuristic):
    if heuristic == "all":
        return list(AVELINO_HEURISTICS if measure == "avelino" else PICCOLO_HEURISTICS)
    if measure == "piccolo" and heuristic in ("min_cov", "max_cov"):
        return [heuristic + "_tau"]
    return [heuristic]


def cmd_estimate(args) -> int:
    try:
        g = load(args.graph)
    except (OSError, ParseError) as exc:
        print(f"busfactor estimate: {exc}", file=sys.stderr)
        return EXIT_USAGE
    c = g.compact()
    if c.n_people == 0 or c.n_tasks == 0:
        print("busfactor estimate: graph needs people and tasks", file=sys.stderr)
        return EXIT_USAGE
    tau = _tau_threshold(args, c.n_tasks)
    measures = ["avelino", "piccolo"] if args.measure == "both" else [args.measure]
    rows, curves = [], []
    try:
        for measure in measures:
            for name in _estimate_names(measure, args.heuristic):
                if name == "combined":
                    score = combined_estimate(c, measure, args.t, tau)
                    order = score.order
                else:
                    order = removal_order(c, name, tau)
                    score = evaluate(c, order, measure, args.t)
                label = name if args.heuristic == "all" else args.heuristic
                rows.append((measure, label, score.value))
                curves.append((measure, label, order))
            if args.exact:
                exact = exact_avelino(c, args.t) if measure == "avelino" else exact_piccolo(c)
                rows.append((measure, "exact", exact))
    except GuardError as exc:
        print(f"busfactor estimate: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except DomainError as exc:
        print(f"busfactor estimate: {exc}", file=sys.stderr)
        return EXIT_USAGE
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["measure", "heuristic", "score"])
    for measure, name, value in rows:
        w.writerow([measure, name, repr(value) if isinstance(value, float) else value])
    if args.curve_out:
        for measure, name, order in curves:
            path = args.curve_out
            if len(curves) > 1:
                stem, ext = os.path.splitext(path)
                path = f"{stem}_{measure}_{name}{ext or '.csv'}"
            with open(path, "w", newline="") as fh:
                score_curve(c, order, measure).write_csv(fh)
    return EXIT_OK


def _print_rows(rows, header):
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(r[k]) if isinstance(r[k], float) else r[k] for k in header])


def cmd_study(args) -> int:
    try:
        if args.kind == "accuracy":
            ranges = ex.FULL_RANGES if args.full_scale else ex.DESK_RANGES
            result = ex.run_accuracy_study(args.graphs, ranges, args.seed, args.t,
                                           args.tau_threshold, args.jobs, args.out)
            print(f"{len(result.reports)} graphs, {result.retries} resampled draws; "
                  f"wrote {args.out}", file=sys.stderr)
            _print_rows(result.summary, ex.SUMMARY_HEADER)
        elif args.kind == "timing":
            sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
            rows = ex.run_timing_study(sizes, args.seed, args.repeats, args.tau_threshold,
                                       out_dir=args.out)
            _print_rows(rows, ("n", "edges", "heuristic", "seconds"))
        else:
            try:
                with open(args.reports, newline="") as fh:
                    rows = ex.read_per_graph_csv(fh)
            except OSError as exc:
                print(f"busfactor study: {exc}", file=sys.stderr)
                return EXIT_USAGE
            table = ex.run_sensitivity_study(rows)
            out = args.out or os.path.dirname(os.path.abspath(args.reports))
            os.makedirs(out, exist_ok=True)
            with open(os.path.join(out, "correlations.csv"), "w", newline="") as fh:
                ex.write_correlations_csv(table, fh)
            ex.write_correlations_csv(table, sys.stdout)
    except (DomainError, GenerationError, ValueError) as exc:
        print(f"busfactor study: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    handler = {"generate": cmd_generate, "estimate": cmd_estimate, "study": cmd_study}
    try:
        return handler[args.command](args)
    except BusFactorError as exc:
        print(f"busfactor: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
