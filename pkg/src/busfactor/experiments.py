"""Accuracy, runtime and structural-sensitivity studies with CSV reports."""

from __future__ import annotations

import csv
import logging
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .errors import DomainError, GenerationError
from .generator import GeneratorParams, generate_power_law_bipartite, generate_random_bipartite, make_rng
from .graph import StructuralFeatures, pearson, structural_features
from .heuristics import AVELINO_HEURISTICS, PICCOLO_HEURISTICS, removal_order
from .measures import evaluate

log = logging.getLogger(__name__)

__all__ = [
    "ParamRanges", "DESK_RANGES", "FULL_RANGES", "HeuristicResult", "HeuristicReport",
    "CorrelationTable", "pearson", "sample_params", "evaluate_graph", "summarize",
    "run_accuracy_study", "run_timing_study", "run_sensitivity_study",
    "write_per_graph_csv", "read_per_graph_csv", "write_summary_csv", "read_summary_csv",
    "write_correlations_csv", "write_timings_csv", "row_count",
]

MEASURES = ("avelino", "piccolo")
HEURISTICS = {"avelino": AVELINO_HEURISTICS, "piccolo": PICCOLO_HEURISTICS}
# members of the min() ensemble per measure
_COMBINED = {"avelino": ("min_cov", "max_cov"), "piccolo": ("min_cov_tau", "max_cov_tau")}

FEATURES = ("n_people", "n_tasks", "lambda_p", "lambda_t", "k_p", "k_t",
            "density", "assortativity", "leaf_people", "leaf_tasks")
PER_GRAPH_HEADER = ("graph_id", "heuristic", "measure", "score", "gap_ratio", "seconds") + FEATURES
SUMMARY_HEADER = ("measure", "heuristic", "pct_first", "gap_avg", "gap_min", "gap_max")
TIMING_HEURISTICS = ("min_cov", "max_cov", "min_cov_tau", "max_cov_tau")
SENSITIVITY_FLOOR = 30
UNDEFINED = "undefined"


@dataclass(frozen=True)
class ParamRanges:
    """Inclusive ranges that generator parameters are drawn from uniformly."""

    n_people: tuple = (200, 400)
    n_tasks: tuple = (200, 400)
    lambda_p: tuple = (0.3, 0.7)
    lambda_t: tuple = (0.3, 0.7)
    k_p: tuple = (20, 60)
    k_t: tuple = (20, 60)


DESK_RANGES = ParamRanges()
FULL_RANGES = ParamRanges((1000, 2000), (1000, 2000), (0.3, 0.7), (0.3, 0.7), (50, 300), (50, 300))


def sample_params(ranges: ParamRanges, rng) -> GeneratorParams:
    def integer(lo_hi):
        return int(rng.integers(lo_hi[0], lo_hi[1] + 1))

    def real(lo_hi):
        return float(rng.uniform(lo_hi[0], lo_hi[1]))

    n_people, n_tasks = integer(ranges.n_people), integer(ranges.n_tasks)
    lambda_p, lambda_t = real(ranges.lambda_p), real(ranges.lambda_t)
    k_p = min(integer(ranges.k_p), n_tasks)
    k_t = min(integer(ranges.k_t), n_people)
    seed = int(rng.integers(2**63))
    return GeneratorParams(n_people, n_tasks, lambda_p, lambda_t, k_p, k_t, seed).validate()


@dataclass
class HeuristicResult:
    score: float
    seconds: float
    gap_ratio: float = math.nan
    best: bool = False


@dataclass
class HeuristicReport:
    graph_id: int
    params: Optional[GeneratorParams]
    features: StructuralFeatures
    # (measure, heuristic) -> result
    results: dict = field(default_factory=dict)
    retries: int = 0

    def rows(self):
        feats = _feature_values(self.features)
        for (measure, heuristic), r in self.results.items():
            yield dict(graph_id=self.graph_id, heuristic=heuristic, measure=measure,
                       score=r.score, gap_ratio=r.gap_ratio, seconds=r.seconds, **feats)


def _feature_values(f: StructuralFeatures) -> dict:
    return {name: getattr(f, name) for name in FEATURES}


def _gap(score, best):
    if best == 0:
        return 1.0 if score == 0 else math.inf
    return score / best


def evaluate_graph(graph, graph_id=0, params=None, t=0.5, tau_threshold=10) -> HeuristicReport:
    """Score every configured heuristic on both measures for one graph."""
    c = graph.compact()
    report = HeuristicReport(graph_id, params, structural_features(graph, params))
    for measure in MEASURES:
        for name in HEURISTICS[measure]:
            if name == "combined":
                members = [report.results[(measure, m)] for m in _COMBINED[measure]]
                report.results[(measure, name)] = HeuristicResult(
                    min(r.score for r in members), sum(r.seconds for r in members))
                continue
            start = time.perf_counter()
            order = removal_order(c, name, tau_threshold)
            score = evaluate(c, order, measure, t).value
            report.results[(measure, name)] = HeuristicResult(score, time.perf_counter() - start)
        best = min(r.score for (m, _), r in report.results.items() if m == measure)
        for (m, _), r in report.results.items():
            if m == measure:
                r.gap_ratio = _gap(r.score, best)
                r.best = r.score == best
    return report


def _accuracy_task(args):
    index, seed, ranges, t, tau_threshold, max_retries = args
    rng = make_rng(seed + index)
    for attempt in range(max_retries + 1):
        params = sample_params(ranges, rng)
        try:
            graph = generate_power_law_bipartite(params)
        except GenerationError as exc:
            log.info("graph %d attempt %d rejected: %s", index, attempt, exc)
            continue
        report = evaluate_graph(graph, index, params, t, tau_threshold)
        report.retries = attempt
        return report
    raise GenerationError(f"graph {index}: no feasible parameters after {max_retries} retries")


def summarize(rows) -> list[dict]:
    """Ranking statistics from per-graph rows (dicts with parsed values).

    A heuristic is credited as first whenever its gap ratio is exactly 1, so
    ties credit every tied heuristic.
    """
    groups: dict = {}
    graphs: dict = {}
    for r in rows:
        groups.setdefault((r["measure"], r["heuristic"]), []).append(r["gap_ratio"])
        graphs.setdefault(r["measure"], set()).add(r["graph_id"])
    out = []
    for measure in MEASURES:
        for heuristic in HEURISTICS[measure]:
            gaps = groups.get((measure, heuristic))
            if not gaps:
                continue
            n_graphs = len(graphs[measure])
            out.append(dict(
                measure=measure, heuristic=heuristic,
                pct_first=100.0 * sum(1 for g in gaps if g == 1.0) / n_graphs,
                gap_avg=math.fsum(gaps) / len(gaps),
                gap_min=min(gaps), gap_max=max(gaps)))
    return out


@dataclass
class AccuracyResult:
    reports: list
    summary: list
    retries: int = 0

    def rows(self):
        return [row for rep in self.reports for row in rep.rows()]


def run_accuracy_study(k_graphs=100, ranges: ParamRanges = DESK_RANGES, seed=0, t=0.5,
                       tau_threshold=10, jobs=1, out_dir=None, max_retries=20) -> AccuracyResult:
    """Generate ``k_graphs`` power-law graphs and rank the heuristics on each.

    Graph ``i`` draws its parameters from a generator seeded with
    ``seed + i``; infeasible draws are resampled up to ``max_retries`` times.
    With ``out_dir`` the per-graph and summary CSV files are written there.
    """
    tasks = [(i, seed, ranges, t, tau_threshold, max_retries) for i in range(k_graphs)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_accuracy_task, tasks))
    else:
        reports = [_accuracy_task(a) for a in tasks]
    retries = sum(r.retries for r in reports)
    if retries:
        log.info("resampled %d infeasible parameter draws", retries)
    result = AccuracyResult(reports, [], retries)
    result.summary = summarize(result.rows())
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        with open(os.path.join(out_dir, "per_graph.csv"), "w", newline="") as fh:
            write_per_graph_csv(result.rows(), fh)
        with open(os.path.join(out_dir, "summary.csv"), "w", newline="") as fh:
            write_summary_csv(result.summary, fh)
    return result


def run_timing_study(sizes=(1000, 10000, 100000), seed=0, repeats=3, tau_threshold=10,
                     heuristics=TIMING_HEURISTICS, out_dir=None) -> list[dict]:
    """Time heuristics on random bipartite graphs with ``p = log(5N)/N``.

    Each cell is the minimum wall-clock time over ``repeats`` runs; graph
    generation is not timed.
    """
    sizes = list(sizes)
    if sizes != sorted(sizes):
        raise DomainError("sizes must be sorted ascending")
    rows = []
    for idx, n in enumerate(sizes):
        g = generate_random_bipartite(n, min(1.0, math.log(5 * n) / n), make_rng(seed + idx))
        c = g.compact()
        for name in heuristics:
            best = math.inf
            for _ in range(max(1, repeats)):
                start = time.perf_counter()
                removal_order(c, name, tau_threshold)
                best = min(best, time.perf_counter() - start)
            rows.append(dict(n=n, edges=c.n_edges, heuristic=name, seconds=best))
            log.info("N=%d %s %.3fs", n, name, best)
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        with open(os.path.join(out_dir, "timings.csv"), "w", newline="") as fh:
            write_timings_csv(rows, fh)
    return rows


@dataclass
class CorrelationTable:
    features: tuple
    columns: tuple  # (measure, heuristic) pairs
    # (feature, (measure, heuristic)) -> coefficient, None when undefined
    values: dict

    def get(self, feature, measure, heuristic):
        return self.values[(feature, (measure, heuristic))]


def run_sensitivity_study(reports) -> CorrelationTable:
    """Pearson correlation of each structural feature with each gap ratio.

    ``reports`` are :class:`HeuristicReport` objects or per-graph CSV rows.
    The ensemble column is left out; it is a function of its members.
    """
    rows = []
    for rep in reports:
        rows.extend(rep.rows() if isinstance(rep, HeuristicReport) else [rep])
    feats: dict = {}
    gaps: dict = {}
    for r in rows:
        feats[r["graph_id"]] = {f: r[f] for f in FEATURES}
        gaps.setdefault((r["measure"], r["heuristic"]), {})[r["graph_id"]] = r["gap_ratio"]
    if len(feats) < SENSITIVITY_FLOOR:
        raise DomainError(
            f"sensitivity study needs at least {SENSITIVITY_FLOOR} graphs, got {len(feats)}")
    columns = tuple((m, h) for m in MEASURES for h in HEURISTICS[m]
                    if h != "combined" and (m, h) in gaps)
    ids = sorted(feats)
    values = {}
    for f in FEATURES:
        for col in columns:
            pairs = [(feats[i][f], gaps[col][i]) for i in ids
                     if feats[i][f] is not None and i in gaps[col]]
            pairs = [(x, y) for x, y in pairs if math.isfinite(y)]
            values[(f, col)] = pearson(*zip(*pairs)) if len(pairs) >= 2 else None
    return CorrelationTable(FEATURES, columns, values)


# CSV I/O

def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_per_graph_csv(rows, stream):
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(PER_GRAPH_HEADER)
    for r in rows:
        w.writerow([_fmt(r[k]) for k in PER_GRAPH_HEADER])


def _parse_num(s):
    if s == "":
        return None
    try:
        return int(s)
    except ValueError:
        return float(s)


def read_per_graph_csv(stream) -> list[dict]:
    reader = csv.DictReader(stream)
    missing = set(PER_GRAPH_HEADER) - set(reader.fieldnames or ())
    if missing:
        raise DomainError(f"per-graph CSV lacks columns {sorted(missing)}")
    rows = []
    for rec in reader:
        row = {k: _parse_num(rec[k]) for k in PER_GRAPH_HEADER
               if k not in ("heuristic", "measure")}
        row["heuristic"] = rec["heuristic"]
        row["measure"] = rec["measure"]
        for k in ("score", "gap_ratio", "seconds"):
            row[k] = float(row[k])
        rows.append(row)
    return rows


def write_summary_csv(summary, stream):
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(SUMMARY_HEADER)
    for r in summary:
        w.writerow([_fmt(r[k]) for k in SUMMARY_HEADER])


def read_summary_csv(stream) -> list[dict]:
    out = []
    for rec in csv.DictReader(stream):
        row = dict(rec)
        for k in ("pct_first", "gap_avg", "gap_min", "gap_max"):
            row[k] = float(row[k])
        out.append(row)
    return out


def write_correlations_csv(table: CorrelationTable, stream):
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(["feature"] + [f"{m}:{h}" for m, h in table.columns])
    for f in table.features:
        cells = []
        for col in table.columns:
            v = table.values[(f, col)]
            cells.append(UNDEFINED if v is None else repr(v))
        w.writerow([f] + cells)


def write_timings_csv(rows, stream):
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(["n", "edges", "heuristic", "seconds"])
    for r in rows:
        w.writerow([r["n"], r["edges"], r["heuristic"], repr(r["seconds"])])


def row_count(k_graphs) -> int:
    return k_graphs * sum(len(HEURISTICS[m]) for m in MEASURES)
