"""Synthetic bipartite graphs: power-law configuration model and random graphs.

All randomness flows through :class:`numpy.random.Generator` backed by
PCG64, so an integer seed reproduces the same graph on every platform.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, asdict

import numpy as np

from .errors import DomainError, GenerationError
from .graph import BipartiteGraph, CompactGraph

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GeneratorParams:
    n_people: int
    n_tasks: int
    lambda_p: float
    lambda_t: float
    k_p: int
    k_t: int
    seed: int = 0

    def validate(self):
        if self.n_people < 1 or self.n_tasks < 1:
            raise DomainError("both sides need at least one node")
        for name in ("lambda_p", "lambda_t"):
            lam = getattr(self, name)
            if not 0.0 < lam < 1.0:
                raise DomainError(f"{name}={lam} must lie in (0, 1)")
        if self.k_p < 2 or self.k_t < 2:
            raise DomainError("maximum degrees must be at least 2")
        if self.k_p > self.n_tasks:
            raise DomainError(f"k_p={self.k_p} exceeds the number of tasks {self.n_tasks}")
        if self.k_t > self.n_people:
            raise DomainError(f"k_t={self.k_t} exceeds the number of people {self.n_people}")
        return self

    def as_dict(self):
        return asdict(self)


def make_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def _ids(prefix, count):
    width = len(str(max(count - 1, 0)))
    return [f"{prefix}{i:0{width}d}" for i in range(count)]


def sample_power_law(lam, k_min, k_max, count, rng) -> np.ndarray:
    """Continuous draws from ``f(x) = lam/k_max * ((x - k_min)/k_max)**(lam - 1)``.

    Inverse-CDF sampling: ``x = k_min + k_max * U**(1/lam)``.
    """
    if not 0.0 < lam < 1.0:
        raise DomainError(f"lambda={lam} must lie in (0, 1)")
    if k_min < 1 or k_max < 1:
        raise DomainError("k_min and k_max must be at least 1")
    u = rng.random(count)
    return k_min + k_max * u ** (1.0 / lam)


def sample_power_law_degrees(lam, k_min, k_max, count, rng) -> list[int]:
    """Integer degrees in ``[k_min, k_min + k_max]``: floor of the continuous draw."""
    x = sample_power_law(lam, k_min, k_max, count, rng)
    deg = np.clip(np.floor(x), k_min, k_min + k_max).astype(np.int64)
    return deg.tolist()


def balance_degree_sums(deg_p, deg_t, rng) -> tuple[list[int], list[int]]:
    """Decrement random entries > 1 of the larger-sum side until the sums match."""
    if not deg_p or not deg_t:
        raise DomainError("degree lists must be non-empty")
    if min(deg_p) < 1 or min(deg_t) < 1:
        raise DomainError("degrees must be at least 1")
    deg_p, deg_t = list(deg_p), list(deg_t)
    diff = sum(deg_p) - sum(deg_t)
    if diff == 0:
        return deg_p, deg_t
    big = deg_p if diff > 0 else deg_t
    diff = abs(diff)
    if sum(big) - len(big) < diff:
        raise GenerationError(
            "cannot equalize degree sums without creating degree-0 nodes; "
            "try larger maximum degrees or a less skewed lambda")
    candidates = [i for i, d in enumerate(big) if d > 1]
    while diff:
        pos = int(rng.integers(len(candidates)))
        i = candidates[pos]
        big[i] -= 1
        diff -= 1
        if big[i] == 1:
            candidates[pos] = candidates[-1]
            candidates.pop()
    return deg_p, deg_t


def gale_ryser(deg_p, deg_t) -> bool:
    """True when a simple bipartite graph with these degree sequences exists."""
    if sum(deg_p) != sum(deg_t):
        return False
    a = sorted(deg_p, reverse=True)
    b = np.asarray(deg_t, dtype=np.int64)
    lhs = 0
    for k, ak in enumerate(a, 1):
        lhs += ak
        if lhs > int(np.minimum(b, k).sum()):
            return False
    return True


def configuration_model(deg_p, deg_t, rng, people=None, tasks=None) -> BipartiteGraph:
    """Random simple bipartite graph realizing the two degree sequences exactly.

    Stubs are shuffled and paired; each duplicate pair is then repaired by a
    degree-preserving swap with a uniformly random edge, with at most
    ``100 * |E|`` attempts in total.
    """
    deg_p, deg_t = list(deg_p), list(deg_t)
    if sum(deg_p) != sum(deg_t):
        raise DomainError("degree sums differ")
    if not gale_ryser(deg_p, deg_t):
        raise GenerationError("degree sequences have no simple bipartite realization")
    people = people or _ids("p", len(deg_p))
    tasks = tasks or _ids("t", len(deg_t))
    p_stubs = np.repeat(np.arange(len(deg_p)), deg_p)
    t_stubs = np.repeat(np.arange(len(deg_t)), deg_t)
    rng.shuffle(t_stubs)
    ep = p_stubs.tolist()
    et = t_stubs.tolist()
    n_edges = len(ep)

    count: dict[tuple[int, int], int] = {}
    for e in zip(ep, et):
        count[e] = count.get(e, 0) + 1
    dups = [k for k, e in enumerate(zip(ep, et)) if count[e] > 1]
    # keep one copy of each duplicated pair in place
    keep: set = set()
    pending = []
    for k in dups:
        e = (ep[k], et[k])
        if e in keep:
            pending.append(k)
        else:
            keep.add(e)

    budget = 100 * max(n_edges, 1)
    attempts = 0
    while pending:
        if attempts >= budget:
            raise GenerationError(
                "could not remove duplicate edges; try different degree parameters")
        attempts += 1
        k = pending[-1]
        p1, t1 = ep[k], et[k]
        if count[(p1, t1)] < 2:
            # an earlier swap already moved the other copy away
            pending.pop()
            continue
        j = int(rng.integers(n_edges))
        p2, t2 = ep[j], et[j]
        if p1 == p2 or t1 == t2:
            continue
        if (p1, t2) in count or (p2, t1) in count:
            continue
        for e in ((p1, t1), (p2, t2)):
            count[e] -= 1
            if not count[e]:
                del count[e]
        et[k], et[j] = t2, t1
        count[(p1, t2)] = 1
        count[(p2, t1)] = 1

    p_adj: list[list[int]] = [[] for _ in deg_p]
    for p, t in count:
        p_adj[p].append(t)
    for ts in p_adj:
        ts.sort()
    return CompactGraph.from_adjacency(people, tasks, p_adj).to_graph()


class _Components:
    """Union of node labels for incremental component merging."""

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x


def _path_avoiding(adj_p, adj_t, p, t):
    """Is ``t`` reachable from ``p`` without using the edge ``(p, t)``?"""
    seen_p = {p}
    seen_t = set()
    stack = [(p, True)]
    while stack:
        node, is_person = stack.pop()
        if is_person:
            for x in adj_p[node]:
                if node == p and x == t:
                    continue
                if x == t:
                    return True
                if x not in seen_t:
                    seen_t.add(x)
                    stack.append((x, False))
        else:
            for x in adj_t[node]:
                if x not in seen_p:
                    seen_p.add(x)
                    stack.append((x, True))
    return False


def connect_components(g: BipartiteGraph, rng, max_attempts=None) -> BipartiteGraph:
    """Rewire ``g`` into a connected graph with the same degree sequence.

    Each step draws two components and one edge from each, ``(p1, t1)`` and
    ``(p2, t2)``, and replaces them by ``(p1, t2), (p2, t1)``.  The first
    component is drawn among those containing a cycle and its edge among
    the non-bridge edges, which guarantees that every swap merges the pair.
    """
    c = g.compact()
    n, m = c.n_people, c.n_tasks
    adj_p = [set(ts) for ts in c.p_adj]
    adj_t = [set(ps) for ps in c.t_adj]
    edges = [(i, j) for i, ts in enumerate(c.p_adj) for j in ts]
    # nodes: people 0..n-1, tasks n..n+m-1
    comps = _Components(n + m)
    for i, j in edges:
        a, b = comps.find(i), comps.find(n + j)
        if a != b:
            comps.parent[max(a, b)] = min(a, b)
    members: dict[int, list[int]] = {}
    for k, (i, _) in enumerate(edges):
        members.setdefault(comps.find(i), []).append(k)
    n_nodes: dict[int, int] = {}
    for x in range(n + m):
        r = comps.find(x)
        n_nodes[r] = n_nodes.get(r, 0) + 1
    roots = sorted(n_nodes)
    if len(roots) <= 1:
        return g
    if any(n_nodes[r] == 1 for r in roots):
        raise GenerationError("graph has isolated nodes and cannot be connected by rewiring")

    def cycle_rank(r):
        return len(members[r]) - n_nodes[r] + 1

    budget = max_attempts or 100 * max(len(edges), 1)
    attempts = 0
    while len(roots) > 1:
        cyclic = [r for r in roots if cycle_rank(r) > 0]
        if not cyclic:
            raise GenerationError(
                "not enough edges to connect the graph without changing degrees; "
                "increase maximum degrees")
        r1 = cyclic[int(rng.integers(len(cyclic)))]
        others = [r for r in roots if r != r1]
        r2 = others[int(rng.integers(len(others)))]
        while True:
            attempts += 1
            if attempts > budget:
                raise GenerationError("rewiring did not converge; try different parameters")
            k1 = members[r1][int(rng.integers(len(members[r1])))]
            p1, t1 = edges[k1]
            if len(adj_p[p1]) > 1 and len(adj_t[t1]) > 1 and _path_avoiding(adj_p, adj_t, p1, t1):
                break
        k2 = members[r2][int(rng.integers(len(members[r2])))]
        p2, t2 = edges[k2]
        adj_p[p1].discard(t1)
        adj_t[t1].discard(p1)
        adj_p[p2].discard(t2)
        adj_t[t2].discard(p2)
        adj_p[p1].add(t2)
        adj_t[t2].add(p1)
        adj_p[p2].add(t1)
        adj_t[t1].add(p2)
        edges[k1] = (p1, t2)
        edges[k2] = (p2, t1)
        keep, drop = (r1, r2) if len(members[r1]) >= len(members[r2]) else (r2, r1)
        comps.parent[drop] = keep
        members[keep].extend(members.pop(drop))
        n_nodes[keep] += n_nodes.pop(drop)
        roots = sorted(n_nodes)

    p_adj = [sorted(ts) for ts in adj_p]
    return CompactGraph.from_adjacency(c.people, c.tasks, p_adj).to_graph()


def generate_power_law_bipartite(params: GeneratorParams) -> BipartiteGraph:
    """Connected power-law bipartite graph, deterministic in ``params.seed``.

    Person degrees are drawn on ``[1, k_p]`` and task degrees on ``[1, k_t]``
    before balancing, configuration-model wiring and rewiring.
    """
    params.validate()
    rng = make_rng(params.seed)
    deg_p = sample_power_law_degrees(params.lambda_p, 1, params.k_p - 1, params.n_people, rng)
    deg_t = sample_power_law_degrees(params.lambda_t, 1, params.k_t - 1, params.n_tasks, rng)
    deg_p, deg_t = balance_degree_sums(deg_p, deg_t, rng)
    g = configuration_model(deg_p, deg_t, rng)
    return connect_components(g, rng)


def generate_random_bipartite(n: int, p: float, rng) -> BipartiteGraph:
    """Bipartite graph on ``n + n`` nodes; each pair is an edge with probability ``p``."""
    if n < 1:
        raise DomainError("n must be at least 1")
    if not 0.0 < p <= 1.0:
        raise DomainError("p must lie in (0, 1]")
    rng = make_rng(rng)
    people, tasks = _ids("p", n), _ids("t", n)
    if p == 1.0:
        p_adj = [list(range(n)) for _ in range(n)]
    else:
        # row sizes are binomial; each row is then a uniform subset of that size
        sizes = rng.binomial(n, p, size=n)
        flat = rng.integers(0, n, size=int(sizes.sum()))
        p_adj = []
        start = 0
        for k in sizes.tolist():
            row = flat[start:start + k]
            start += k
            uniq = np.unique(row)
            while len(uniq) < k:
                uniq = np.unique(np.concatenate([uniq, rng.integers(0, n, size=k - len(uniq))]))
            p_adj.append(uniq.tolist())
    return CompactGraph.from_adjacency(people, tasks, p_adj).to_graph()
