"""Bipartite people/task graphs and the queries built on top of them.

A :class:`BipartiteGraph` keeps one adjacency map per side, so person and
task identifiers live in separate namespaces even when they are plain
strings.  Heuristics and measures work on :class:`CompactGraph`, an
index-based snapshot in which index order equals identifier order; that is
what makes every tie-break in the package deterministic.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, TextIO

from .errors import DomainError, NotFoundError, ParseError

PERSON_RE = re.compile(r"p[A-Za-z0-9_]+")
TASK_RE = re.compile(r"t[A-Za-z0-9_]+")
_HEADER_RE = re.compile(r"#\s*people:\s*(\d+)\s+tasks:\s*(\d+)\s*")
_NODE_RE = re.compile(r"#\s*node:\s*(\S+)\s*")


class BipartiteGraph:
    """Mutable bipartite graph ``G = (P, T, E)`` of people and tasks."""

    def __init__(self, people=(), tasks=(), edges=()):
        self._p_adj: dict[str, set[str]] = {}
        self._t_adj: dict[str, set[str]] = {}
        self._compact: Optional[CompactGraph] = None
        for p in people:
            self.add_person(p)
        for t in tasks:
            self.add_task(t)
        for p, t in edges:
            self.add_edge(p, t)

    # construction / mutation

    def add_person(self, p):
        if p in self._t_adj:
            raise DomainError(f"{p!r} is already a task")
        self._p_adj.setdefault(p, set())
        self._compact = None

    def add_task(self, t):
        if t in self._p_adj:
            raise DomainError(f"{t!r} is already a person")
        self._t_adj.setdefault(t, set())
        self._compact = None

    def add_edge(self, p, t):
        """Add ``(p, t)``, creating either endpoint if needed.

        Adding an edge that already exists raises :class:`DomainError`.
        """
        self.add_person(p)
        self.add_task(t)
        if t in self._p_adj[p]:
            raise DomainError(f"duplicate edge ({p}, {t})")
        self._p_adj[p].add(t)
        self._t_adj[t].add(p)

    def remove_person(self, p):
        if p not in self._p_adj:
            raise DomainError(f"{p!r} is not a person")
        for t in self._p_adj.pop(p):
            self._t_adj[t].discard(p)
        self._compact = None

    def copy(self) -> "BipartiteGraph":
        g = BipartiteGraph()
        g._p_adj = {p: set(ts) for p, ts in self._p_adj.items()}
        g._t_adj = {t: set(ps) for t, ps in self._t_adj.items()}
        g._compact = self._compact
        return g

    # queries

    @property
    def people(self):
        return self._p_adj.keys()

    @property
    def tasks(self):
        return self._t_adj.keys()

    @property
    def edges(self) -> set[tuple[str, str]]:
        return {(p, t) for p, ts in self._p_adj.items() for t in ts}

    @property
    def n_people(self) -> int:
        return len(self._p_adj)

    @property
    def n_tasks(self) -> int:
        return len(self._t_adj)

    @property
    def n_edges(self) -> int:
        return sum(len(ts) for ts in self._p_adj.values())

    def is_person(self, node) -> bool:
        return node in self._p_adj

    def is_task(self, node) -> bool:
        return node in self._t_adj

    def neighbors(self, node) -> set:
        if node in self._p_adj:
            return self._p_adj[node]
        if node in self._t_adj:
            return self._t_adj[node]
        raise NotFoundError(f"unknown node {node!r}")

    def degree(self, node) -> int:
        return len(self.neighbors(node))

    def compact(self) -> "CompactGraph":
        """Index-based snapshot, cached until the next mutation."""
        if self._compact is None:
            self._compact = CompactGraph.from_graph(self)
        return self._compact

    def __eq__(self, other):
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return self._p_adj == other._p_adj and self._t_adj == other._t_adj

    def __repr__(self):
        return (f"BipartiteGraph(people={self.n_people}, tasks={self.n_tasks}, "
                f"edges={self.n_edges})")


@dataclass(frozen=True, eq=False)
class CompactGraph:
    """Integer-indexed view of a bipartite graph.

    ``people`` and ``tasks`` are sorted identifier lists; ``p_adj[i]`` holds
    the task indices adjacent to person ``i`` and ``t_adj[j]`` the person
    indices adjacent to task ``j``.
    """

    people: list
    tasks: list
    p_adj: list[list[int]]
    t_adj: list[list[int]]

    @classmethod
    def from_graph(cls, g: BipartiteGraph) -> "CompactGraph":
        people = sorted(g._p_adj)
        tasks = sorted(g._t_adj)
        t_index = {t: j for j, t in enumerate(tasks)}
        p_adj = [sorted(t_index[t] for t in g._p_adj[p]) for p in people]
        t_adj: list[list[int]] = [[] for _ in tasks]
        for i, ts in enumerate(p_adj):
            for j in ts:
                t_adj[j].append(i)
        return cls(people, tasks, p_adj, t_adj)

    @classmethod
    def from_adjacency(cls, people, tasks, p_adj) -> "CompactGraph":
        """Build from person adjacency lists; ids must already be sorted."""
        t_adj: list[list[int]] = [[] for _ in tasks]
        for i, ts in enumerate(p_adj):
            for j in ts:
                t_adj[j].append(i)
        return cls(list(people), list(tasks), [list(ts) for ts in p_adj], t_adj)

    @property
    def n_people(self) -> int:
        return len(self.people)

    @property
    def n_tasks(self) -> int:
        return len(self.tasks)

    @property
    def n_edges(self) -> int:
        return sum(map(len, self.p_adj))

    def person_index(self) -> dict:
        return {p: i for i, p in enumerate(self.people)}

    def without_people(self, removed: Iterable[int]) -> "CompactGraph":
        """Drop the given person indices; all tasks are kept."""
        gone = set(removed)
        keep = [i for i in range(len(self.people)) if i not in gone]
        return CompactGraph.from_adjacency(
            [self.people[i] for i in keep], self.tasks, [self.p_adj[i] for i in keep])

    def to_graph(self) -> BipartiteGraph:
        g = BipartiteGraph()
        for p in self.people:
            g._p_adj[p] = set()
        for t in self.tasks:
            g._t_adj[t] = set()
        for i, ts in enumerate(self.p_adj):
            p = self.people[i]
            for j in ts:
                t = self.tasks[j]
                g._p_adj[p].add(t)
                g._t_adj[t].add(p)
        g._compact = self
        return g


def as_compact(g) -> CompactGraph:
    return g if isinstance(g, CompactGraph) else g.compact()


def degree(g: BipartiteGraph, node) -> int:
    return g.degree(node)


def coverage(g: BipartiteGraph) -> int:
    """Number of tasks with at least one adjacent person."""
    return sum(1 for ps in g._t_adj.values() if ps)


def max_connected_tasks(g: BipartiteGraph) -> int:
    """Largest number of task nodes inside a single connected component."""
    seen_p: set = set()
    seen_t: set = set()
    best = 0
    for start in g._t_adj:
        if start in seen_t:
            continue
        seen_t.add(start)
        n_tasks = 0
        queue = deque([(start, False)])
        while queue:
            node, is_person = queue.popleft()
            if is_person:
                for t in g._p_adj[node]:
                    if t not in seen_t:
                        seen_t.add(t)
                        queue.append((t, False))
            else:
                n_tasks += 1
                for p in g._t_adj[node]:
                    if p not in seen_p:
                        seen_p.add(p)
                        queue.append((p, True))
        best = max(best, n_tasks)
    return best


def connected_components(g: BipartiteGraph) -> list[set]:
    """Components over the mixed node set, as sets of node identifiers."""
    comps = []
    seen: set = set()
    for start in list(g._p_adj) + list(g._t_adj):
        if start in seen:
            continue
        seen.add(start)
        comp = {start}
        queue = deque([start])
        while queue:
            node = queue.popleft()
            for nb in g.neighbors(node):
                if nb not in seen:
                    seen.add(nb)
                    comp.add(nb)
                    queue.append(nb)
        comps.append(comp)
    return comps


def is_connected(g: BipartiteGraph) -> bool:
    return len(connected_components(g)) <= 1


def remove_people(g: BipartiteGraph, order_prefix: Iterable) -> BipartiteGraph:
    """Residual graph with the listed people and their edges deleted.

    Tasks are never deleted; they may end up isolated.
    """
    h = g.copy()
    for p in order_prefix:
        if not h.is_person(p):
            raise DomainError(f"{p!r} is not a person of the graph")
        h.remove_person(p)
    return h


@dataclass(frozen=True)
class StructuralFeatures:
    n_people: int
    n_tasks: int
    n_edges: int
    density: float
    leaf_people: int
    leaf_tasks: int
    # None when either endpoint-degree sequence is constant
    assortativity: Optional[float]
    lambda_p: Optional[float] = None
    lambda_t: Optional[float] = None
    k_p: Optional[int] = None
    k_t: Optional[int] = None

    @property
    def assortativity_defined(self) -> bool:
        return self.assortativity is not None


def pearson(xs, ys) -> Optional[float]:
    """Sample Pearson correlation; ``None`` when either side has zero variance."""
    if len(xs) != len(ys):
        raise DomainError("pearson needs sequences of equal length")
    n = len(xs)
    if n < 2:
        raise DomainError("pearson needs at least two observations")
    mx = math.fsum(xs) / n
    my = math.fsum(ys) / n
    sxy = math.fsum((x - mx) * (y - my) for x, y in zip(xs, ys))
    sxx = math.fsum((x - mx) ** 2 for x in xs)
    syy = math.fsum((y - my) ** 2 for y in ys)
    if sxx == 0.0 or syy == 0.0:
        return None
    r = sxy / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def structural_features(g: BipartiteGraph, params=None) -> StructuralFeatures:
    """Density, leaf counts and degree assortativity of ``g``.

    ``params`` (a :class:`~busfactor.generator.GeneratorParams`) fills in the
    generator fields when the graph is synthetic.
    """
    n, m = g.n_people, g.n_tasks
    if n < 1 or m < 1:
        raise DomainError("structural features need at least one person and one task")
    c = as_compact(g)
    p_deg = [len(ts) for ts in c.p_adj]
    t_deg = [len(ps) for ps in c.t_adj]
    n_edges = sum(p_deg)
    xs, ys = [], []
    for i, ts in enumerate(c.p_adj):
        for j in ts:
            xs.append(p_deg[i])
            ys.append(t_deg[j])
    assort = pearson(xs, ys) if len(xs) >= 2 else None
    kwargs = {}
    if params is not None:
        kwargs = dict(lambda_p=params.lambda_p, lambda_t=params.lambda_t,
                      k_p=params.k_p, k_t=params.k_t)
    return StructuralFeatures(
        n_people=n, n_tasks=m, n_edges=n_edges,
        density=n_edges / (n * m),
        leaf_people=sum(1 for d in p_deg if d == 1),
        leaf_tasks=sum(1 for d in t_deg if d == 1),
        assortativity=assort, **kwargs)


# edge-list serialization

def read_edge_list(stream: TextIO) -> BipartiteGraph:
    """Parse the line-oriented edge-list format.

    Data lines are ``<person> <task>``; ``#`` lines are comments, except for
    the optional ``# people: N tasks: M`` header and ``# node: <id>``
    declarations of isolated nodes.
    """
    g = BipartiteGraph()
    header = None
    for lineno, raw in enumerate(stream, 1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line.strip():
            continue
        if line.startswith("#"):
            mh = _HEADER_RE.fullmatch(line)
            if mh:
                if header is not None:
                    raise ParseError("repeated header", lineno)
                header = (int(mh.group(1)), int(mh.group(2)), lineno)
                continue
            mn = _NODE_RE.fullmatch(line)
            if mn:
                node = mn.group(1)
                if PERSON_RE.fullmatch(node):
                    g.add_person(node)
                elif TASK_RE.fullmatch(node):
                    g.add_task(node)
                else:
                    raise ParseError(f"bad node identifier {node!r}", lineno)
            continue
        parts = line.split(" ")
        if len(parts) != 2:
            raise ParseError(f"expected '<person> <task>', got {line!r}", lineno)
        p, t = parts
        if not PERSON_RE.fullmatch(p):
            raise ParseError(f"bad person identifier {p!r}", lineno)
        if not TASK_RE.fullmatch(t):
            raise ParseError(f"bad task identifier {t!r}", lineno)
        if g.is_person(p) and t in g._p_adj[p]:
            raise ParseError(f"duplicate edge ({p}, {t})", lineno)
        g.add_edge(p, t)
    if header is not None:
        n, m, lineno = header
        if (n, m) != (g.n_people, g.n_tasks):
            raise ParseError(
                f"header declares {n} people and {m} tasks, found "
                f"{g.n_people} and {g.n_tasks}", lineno)
    return g


def write_edge_list(g: BipartiteGraph, stream: TextIO) -> None:
    for p in g.people:
        if not PERSON_RE.fullmatch(str(p)):
            raise DomainError(f"person id {p!r} cannot be written")
    for t in g.tasks:
        if not TASK_RE.fullmatch(str(t)):
            raise DomainError(f"task id {t!r} cannot be written")
    stream.write(f"# people: {g.n_people} tasks: {g.n_tasks}\n")
    for p in sorted(g.people):
        if not g._p_adj[p]:
            stream.write(f"# node: {p}\n")
    for t in sorted(g.tasks):
        if not g._t_adj[t]:
            stream.write(f"# node: {t}\n")
    for p in sorted(g.people):
        for t in sorted(g._p_adj[p]):
            stream.write(f"{p} {t}\n")


def load(path) -> BipartiteGraph:
    with open(path, encoding="utf-8") as fh:
        return read_edge_list(fh)


def save(g: BipartiteGraph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        write_edge_list(g, fh)
