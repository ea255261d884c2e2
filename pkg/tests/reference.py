"""Slow recompute-everything versions of the heuristics, used as oracles."""

from busfactor.graph import as_compact, max_connected_tasks, remove_people


def min_cov(g):
    c = as_compact(g)
    remaining = set(range(c.n_people))
    covered = set()
    seq = []
    while remaining:
        p = min(remaining, key=lambda i: (len(set(c.p_adj[i]) - covered), i))
        seq.append(p)
        remaining.discard(p)
        covered |= set(c.p_adj[p])
    return [c.people[i] for i in reversed(seq)]


def max_cov(g):
    c = as_compact(g)
    remaining = set(range(c.n_people))
    init_deg = [len(ts) for ts in c.p_adj]
    pi = []
    accepted_cov = []
    while remaining:
        live = {t for i in remaining for t in c.p_adj[i]}
        if not live:
            pi.extend(sorted(remaining, key=lambda i: (-init_deg[i], i)))
            break
        covered = set()
        layer = []
        while covered != live:
            cand = [i for i in remaining if i not in layer]
            gains = {i: len(set(c.p_adj[i]) - covered) for i in cand}
            p = min(cand, key=lambda i: (-gains[i], i))
            accepted_cov.append((gains[p], max(gains.values())))
            layer.append(p)
            covered |= set(c.p_adj[p])
        remaining -= set(layer)
        pi.extend(layer)
    return [c.people[i] for i in pi], accepted_cov


def _merged_size(c, inserted, p):
    """Tasks in p's component after adding p to the graph of ``inserted`` people."""
    if not c.p_adj[p]:
        return 0
    people = set(inserted) | {p}
    seen_t = set(c.p_adj[p])
    seen_p = {p}
    stack = list(seen_t)
    while stack:
        t = stack.pop()
        for q in c.t_adj[t]:
            if q in people and q not in seen_p:
                seen_p.add(q)
                for t2 in c.p_adj[q]:
                    if t2 not in seen_t:
                        seen_t.add(t2)
                        stack.append(t2)
    return len(seen_t)


def greedy_tau(g, threshold):
    c = as_compact(g)
    inserted = []
    sizes = []
    remaining = set(range(c.n_people))
    while remaining:
        cost = {p: _merged_size(c, inserted, p) for p in remaining}
        p = min(remaining, key=lambda i: (cost[i], i))
        if cost[p] > threshold:
            break
        inserted.append(p)
        sizes.append(cost[p])
        remaining.discard(p)
    return [c.people[i] for i in reversed(inserted)], sizes


def greedy_isolation(g):
    c = as_compact(g)
    remaining = set(range(c.n_people))
    seq = []
    while remaining:
        def isolated(p):
            return sum(1 for t in c.p_adj[p]
                       if [q for q in c.t_adj[t] if q in remaining] == [p])
        p = min(remaining, key=lambda i: (-isolated(i), i))
        seq.append(p)
        remaining.discard(p)
    return [c.people[i] for i in seq]


def forward_tau_curve(g, order):
    return [max_connected_tasks(remove_people(g, order[:i])) for i in range(len(order) + 1)]


def forward_coverage_curve(g, order):
    vals = []
    for i in range(len(order) + 1):
        h = remove_people(g, order[:i])
        vals.append(sum(1 for t in h.tasks if h.degree(t) > 0))
    return vals
