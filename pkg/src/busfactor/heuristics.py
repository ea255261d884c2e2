"""People removal orders for bus-factor estimation.

Every heuristic works on a :class:`~busfactor.graph.CompactGraph`, where
person index order equals identifier order.  Heap entries are
``(priority, person_index)`` tuples, so ties always go to the smaller
identifier.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Sequence

from .errors import DomainError
from .graph import CompactGraph, as_compact
from .unionfind import TaskUnionFind


@dataclass(frozen=True)
class RemovalOrder(Sequence):
    """Ordered person identifiers; ``partial`` when not every person appears."""

    people: tuple
    partial: bool = False
    # greedy tau heuristic: merged component size accepted at each insertion
    insertion_sizes: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "people", tuple(self.people))
        if len(set(self.people)) != len(self.people):
            raise DomainError("a removal order cannot repeat a person")

    def __len__(self):
        return len(self.people)

    def __getitem__(self, i):
        return self.people[i]

    def __iter__(self):
        return iter(self.people)

    def __add__(self, other):
        return RemovalOrder(self.people + tuple(other))


def _order(c: CompactGraph, indices, partial=False, sizes=()) -> RemovalOrder:
    return RemovalOrder(tuple(c.people[i] for i in indices), partial, tuple(sizes))


# Minimum Coverage

def _min_cov_insertion(c: CompactGraph) -> list[int]:
    p_deg = [len(ts) for ts in c.p_adj]
    t_alive = [True] * c.n_tasks
    p_adj, t_adj = c.p_adj, c.t_adj
    inserted = [False] * c.n_people
    heap = [(d, i) for i, d in enumerate(p_deg)]
    heapq.heapify(heap)
    pop, push = heapq.heappop, heapq.heappush
    seq = []
    while heap:
        _, p = pop(heap)
        if inserted[p]:
            continue
        seq.append(p)
        inserted[p] = True
        affected = set()
        for t in p_adj[p]:
            if not t_alive[t]:
                continue
            t_alive[t] = False
            for q in t_adj[t]:
                p_deg[q] -= 1
                if q != p and not inserted[q]:
                    affected.add(q)
        for q in affected:
            push(heap, (p_deg[q], q))
    return seq


def minimum_coverage_order(g) -> RemovalOrder:
    """Reverse of the least-coverage-first insertion sequence.

    People are inserted one at a time, always picking the person covering
    the fewest still-uncovered tasks; the removal order is that sequence
    reversed, so the most covering people are removed first.
    """
    c = as_compact(g)
    seq = _min_cov_insertion(c)
    seq.reverse()
    return _order(c, seq)


# Maximum Coverage

def _max_cov_sequence(c: CompactGraph) -> list[int]:
    n = c.n_people
    p_adj, t_adj = c.p_adj, c.t_adj
    init_deg = [len(ts) for ts in p_adj]
    p_alive = [True] * n
    t_deg = [len(ps) for ps in t_adj]
    # current neighbour lists, pruned to live tasks at the start of each round
    cur = [list(ts) for ts in p_adj]
    pi: list[int] = []
    pop, push = heapq.heappop, heapq.heappush
    while len(pi) < n:
        num_tasks = sum(1 for d in t_deg if d > 0)
        if num_tasks == 0:
            rest = [i for i in range(n) if p_alive[i]]
            rest.sort(key=lambda i: (-init_deg[i], i))
            pi.extend(rest)
            break
        covered = bytearray(c.n_tasks)
        heap = []
        for i in range(n):
            if p_alive[i]:
                ts = [t for t in cur[i] if t_deg[t] > 0]
                cur[i] = ts
                heap.append((-len(ts), i))
        heapq.heapify(heap)
        num_covered = 0
        layer = []
        while num_covered < num_tasks:
            prio, p = pop(heap)
            ts = cur[p]
            cov = 0
            for t in ts:
                if not covered[t]:
                    cov += 1
            if -prio != cov:
                push(heap, (-cov, p))
                continue
            layer.append(p)
            for t in ts:
                covered[t] = 1
            num_covered += cov
        for p in layer:
            p_alive[p] = False
            for t in cur[p]:
                t_deg[t] -= 1
            cur[p] = []
        pi.extend(layer)
    return pi


def maximum_coverage_order(g) -> RemovalOrder:
    """Concatenated greedy set-cover layers, most covering person first.

    Each round covers every task that still has a person attached, then
    deletes the chosen people. Once no task is covered, the leftover people
    follow by decreasing initial degree.
    """
    c = as_compact(g)
    return _order(c, _max_cov_sequence(c))


# Greedy tau minimization

def _greedy_tau_insertion(c: CompactGraph, threshold) -> tuple[list[int], list[int]]:
    uf = TaskUnionFind(c.n_tasks)
    gamma: list[list[int]] = []
    heap = []
    for i, ts in enumerate(c.p_adj):
        if ts:
            roots, size = uf.resulting_size(ts)
        else:
            roots, size = [], 0
        gamma.append(roots)
        heap.append((size, i))
    heapq.heapify(heap)
    pop, push = heapq.heappop, heapq.heappush
    seq, sizes = [], []
    while heap:
        prio, p = pop(heap)
        old_roots = gamma[p]
        if old_roots:
            new_roots, size = uf.resulting_size(old_roots)
        else:
            new_roots, size = [], 0
        if size > prio:
            push(heap, (size, p))
            gamma[p] = new_roots
            continue
        if prio > threshold:
            break
        if old_roots:
            uf.union_all(old_roots)
        seq.append(p)
        sizes.append(prio)
    return seq, sizes


def greedy_tau_order(g, threshold) -> RemovalOrder:
    """Reverse of the insertion sequence that grows the largest component slowest.

    Insertion stops as soon as the cheapest remaining person would create a
    component with more than ``threshold`` tasks; the result is then flagged
    ``partial``.  ``insertion_sizes`` records the accepted component sizes
    in insertion order.
    """
    c = as_compact(g)
    seq, sizes = _greedy_tau_insertion(c, threshold)
    partial = len(seq) < c.n_people
    seq.reverse()
    return _order(c, seq, partial, sizes)


BASES = ("min_cov", "max_cov")


def mixed_order(g, base="min_cov", threshold=10) -> RemovalOrder:
    """Coverage-peeling head followed by the greedy tau tail.

    A threshold of 0 skips the greedy tau step entirely.
    """
    if base not in BASES:
        raise DomainError(f"unknown base heuristic {base!r}")
    c = as_compact(g)
    if threshold > 0:
        seq, sizes = _greedy_tau_insertion(c, threshold)
    else:
        seq, sizes = [], []
    right = seq[::-1]
    rest = c.without_people(seq) if seq else c
    head = minimum_coverage_order(rest) if base == "min_cov" else maximum_coverage_order(rest)
    order = RemovalOrder(head.people + tuple(c.people[i] for i in right), False, tuple(sizes))
    return order


def degree_order(g) -> RemovalOrder:
    c = as_compact(g)
    idx = sorted(range(c.n_people), key=lambda i: (-len(c.p_adj[i]), i))
    return _order(c, idx)


def greedy_isolation_order(g) -> RemovalOrder:
    """Repeatedly remove the person who is the sole contact of the most tasks."""
    c = as_compact(g)
    p_adj, t_adj = c.p_adj, c.t_adj
    t_deg = [len(ps) for ps in t_adj]
    removed = [False] * c.n_people
    iso = [0] * c.n_people
    for t, ps in enumerate(t_adj):
        if len(ps) == 1:
            iso[ps[0]] += 1
    heap = [(-k, i) for i, k in enumerate(iso)]
    heapq.heapify(heap)
    seq = []
    while heap:
        prio, p = heapq.heappop(heap)
        if removed[p] or -prio != iso[p]:
            continue
        removed[p] = True
        seq.append(p)
        for t in p_adj[p]:
            t_deg[t] -= 1
            if t_deg[t] == 1:
                for q in t_adj[t]:
                    if not removed[q]:
                        iso[q] += 1
                        heapq.heappush(heap, (-iso[q], q))
                        break
    return _order(c, seq)


AVELINO_HEURISTICS = ("min_cov", "max_cov", "greedy_I", "degree", "combined")
PICCOLO_HEURISTICS = ("min_cov_tau", "max_cov_tau", "greedy_tau", "degree", "combined")


def removal_order(g, name, tau_threshold=10) -> RemovalOrder:
    """Look up a single-order heuristic by its report name."""
    c = as_compact(g)
    if name == "min_cov":
        return minimum_coverage_order(c)
    if name == "max_cov":
        return maximum_coverage_order(c)
    if name == "min_cov_tau":
        return mixed_order(c, "min_cov", tau_threshold)
    if name == "max_cov_tau":
        return mixed_order(c, "max_cov", tau_threshold)
    if name == "greedy_tau":
        # unbounded: every person is processed
        return greedy_tau_order(c, c.n_tasks)
    if name == "greedy_I":
        return greedy_isolation_order(c)
    if name == "degree":
        return degree_order(c)
    raise DomainError(f"unknown heuristic {name!r}")


def combined_estimate(g, measure="avelino", t=0.5, tau_threshold=10):
    """Best of Minimum and Maximum Coverage under ``measure``.

    For ``piccolo`` both orders are the mixed variants with ``tau_threshold``.
    Returns the winning :class:`~busfactor.measures.BusFactorScore`.
    """
    from .measures import evaluate

    c = as_compact(g)
    if measure == "avelino":
        names = ("min_cov", "max_cov")
    elif measure == "piccolo":
        names = ("min_cov_tau", "max_cov_tau")
    else:
        raise DomainError(f"unknown measure {measure!r}")
    scores = [evaluate(c, removal_order(c, n, tau_threshold), measure, t) for n in names]
    return min(scores, key=lambda s: s.value)
