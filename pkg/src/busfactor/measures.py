"""Decay curves, bus-factor scores and exact solvers for small graphs."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .errors import DomainError, GuardError
from .graph import CompactGraph, as_compact
from .unionfind import TaskUnionFind

EXACT_AVELINO_GUARD = 20
EXACT_PICCOLO_GUARD = 16


@dataclass(frozen=True)
class DecayCurve:
    kind: str  # "coverage" or "tau"
    values: tuple

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def write_csv(self, stream):
        w = csv.writer(stream, lineterminator="\n")
        w.writerow(["removed", "value"])
        for i, v in enumerate(self.values):
            w.writerow([i, v])


@dataclass(frozen=True)
class BusFactorScore:
    measure: str
    value: float
    order: Optional[tuple] = None


def _indices(c: CompactGraph, order) -> list[int]:
    index = c.person_index()
    try:
        idx = [index[p] for p in order]
    except KeyError as exc:
        raise DomainError(f"{exc.args[0]!r} is not a person of the graph") from None
    if len(idx) != c.n_people or len(set(idx)) != c.n_people:
        raise DomainError("a decay curve needs a full permutation of the people")
    return idx


def coverage_curve(g, order) -> DecayCurve:
    """Covered-task counts after removing each prefix of ``order``."""
    c = as_compact(g)
    idx = _indices(c, order)
    t_deg = [len(ps) for ps in c.t_adj]
    cov = sum(1 for d in t_deg if d > 0)
    values = [cov]
    for p in idx:
        for t in c.p_adj[p]:
            t_deg[t] -= 1
            if t_deg[t] == 0:
                cov -= 1
        values.append(cov)
    return DecayCurve("coverage", tuple(values))


def tau_curve(g, order) -> DecayCurve:
    """Largest connected task count after removing each prefix of ``order``.

    Built backwards: starting from the task-only graph, people are added in
    reverse order to a union-find over tasks.  The last value is the literal
    one for a graph without people (1 when there is at least one task).
    """
    c = as_compact(g)
    idx = _indices(c, order)
    uf = TaskUnionFind(c.n_tasks)
    rev = [uf.tau]
    for p in reversed(idx):
        ts = c.p_adj[p]
        if ts:
            uf.union_all(ts)
        rev.append(uf.tau)
    rev.reverse()
    return DecayCurve("tau", tuple(rev))


def _check_t(t):
    if not 0.0 < t < 1.0:
        raise DomainError(f"coverage threshold t={t} must lie in (0, 1)")


def _first_below(values, limit) -> int:
    for k, v in enumerate(values):
        if v < limit:
            return k
    raise DomainError("coverage never drops below the threshold")


def estimate_avelino(g, order, t=0.5) -> BusFactorScore:
    """Length of the shortest prefix leaving fewer than ``t * |T|`` covered tasks."""
    _check_t(t)
    c = as_compact(g)
    if c.n_tasks == 0:
        raise DomainError("graph has no tasks")
    curve = coverage_curve(c, order)
    return BusFactorScore("avelino", _first_below(curve.values, t * c.n_tasks), tuple(order))


def estimate_zazworka(g, order, t=0.5) -> BusFactorScore:
    a = estimate_avelino(g, order, t)
    return BusFactorScore("zazworka", a.value - 1, a.order)


def piccolo_area(values, n_people, n_tasks) -> float:
    """Normalized trapezoid area of a tau curve, last value taken as 0."""
    vals = list(values)
    vals[-1] = 0
    total = sum(vals[i - 1] + vals[i] for i in range(1, len(vals)))
    return total / (n_tasks * (2 * n_people - 1))


def estimate_piccolo(g, order) -> BusFactorScore:
    """Normalized area under the tau decay curve of ``order``.

    The curve is closed with 0 once every person is gone, which makes a
    complete bipartite graph score exactly 1.
    """
    c = as_compact(g)
    if c.n_people == 0 or c.n_tasks == 0:
        raise DomainError("the area measure needs people and tasks")
    curve = tau_curve(c, order)
    return BusFactorScore("piccolo", piccolo_area(curve.values, c.n_people, c.n_tasks),
                          tuple(order))


def evaluate(g, order, measure, t=0.5) -> BusFactorScore:
    if measure == "avelino":
        return estimate_avelino(g, order, t)
    if measure == "zazworka":
        return estimate_zazworka(g, order, t)
    if measure == "piccolo":
        return estimate_piccolo(g, order)
    raise DomainError(f"unknown measure {measure!r}")


def score_curve(g, order, measure) -> DecayCurve:
    """The curve a score is read from (tau curves closed with 0)."""
    if measure == "piccolo":
        vals = list(tau_curve(g, order).values)
        vals[-1] = 0
        return DecayCurve("tau", tuple(vals))
    return coverage_curve(g, order)


# exact solvers

def _residual_coverage(c: CompactGraph, removed_mask: int) -> int:
    count = 0
    for ps in c.t_adj:
        for p in ps:
            if not removed_mask >> p & 1:
                count += 1
                break
    return count


def _residual_tau(c: CompactGraph, removed_mask: int) -> int:
    uf = TaskUnionFind(c.n_tasks)
    for p, ts in enumerate(c.p_adj):
        if ts and not removed_mask >> p & 1:
            uf.union_all(ts)
    return uf.tau


def exact_avelino(g, t=0.5) -> int:
    """Smallest number of people whose removal leaves fewer than ``t * |T|`` covered."""
    _check_t(t)
    c = as_compact(g)
    n = c.n_people
    if n > EXACT_AVELINO_GUARD:
        raise GuardError(f"exact solver refuses {n} people (limit {EXACT_AVELINO_GUARD})")
    if c.n_tasks == 0:
        raise DomainError("graph has no tasks")
    limit = t * c.n_tasks
    for k in range(n + 1):
        for subset in combinations(range(n), k):
            mask = 0
            for p in subset:
                mask |= 1 << p
            if _residual_coverage(c, mask) < limit:
                return k
    raise DomainError("coverage never drops below the threshold")


def exact_piccolo(g) -> float:
    """Minimum normalized tau area over all removal orders.

    Dynamic programming over removed sets: the curve value after removing
    ``S`` depends on ``S`` only, so the best prefix cost for every subset
    follows from its one-smaller subsets.
    """
    c = as_compact(g)
    n, m = c.n_people, c.n_tasks
    if n > EXACT_PICCOLO_GUARD:
        raise GuardError(f"exact solver refuses {n} people (limit {EXACT_PICCOLO_GUARD})")
    if n == 0 or m == 0:
        raise DomainError("the area measure needs people and tasks")
    full = (1 << n) - 1
    value = [_residual_tau(c, mask) for mask in range(full + 1)]
    value[full] = 0
    inf = float("inf")
    best = [inf] * (full + 1)
    best[0] = 0
    for mask in range(full + 1):
        b = best[mask]
        if b == inf:
            continue
        v = value[mask]
        for p in range(n):
            bit = 1 << p
            if mask & bit:
                continue
            nxt = mask | bit
            cost = b + v + value[nxt]
            if cost < best[nxt]:
                best[nxt] = cost
    return best[full] / (m * (2 * n - 1))
