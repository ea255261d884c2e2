"""Union-find over task indices, tracking the largest component size."""

from __future__ import annotations

from .errors import DomainError, NotFoundError


class TaskUnionFind:
    """Disjoint sets over tasks ``0..n-1`` with path compression and union by rank.

    Task indices are expected to follow identifier order, so breaking rank
    ties toward the smaller root index is the same as breaking them toward
    the lexicographically smaller task.  ``tau`` is the size of the largest
    component.
    """

    __slots__ = ("parent", "rank", "comp_size", "tau")

    def __init__(self, n_tasks: int):
        self.parent = list(range(n_tasks))
        self.rank = [0] * n_tasks
        self.comp_size = [1] * n_tasks
        self.tau = 1 if n_tasks else 0

    def __len__(self):
        return len(self.parent)

    def find(self, x: int) -> int:
        parent = self.parent
        if not 0 <= x < len(parent):
            raise NotFoundError(f"unknown task index {x!r}")
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def roots_of(self, tasks) -> list[int]:
        """Distinct roots of ``tasks`` in order of first appearance."""
        seen = []
        for x in tasks:
            r = self.find(x)
            if r not in seen:
                seen.append(r)
        return seen

    def resulting_size(self, tasks) -> tuple[list[int], int]:
        """Simulate merging the components of ``tasks``.

        Returns the distinct roots involved and the size the merged component
        would have.  Component membership is left untouched.
        """
        if not tasks:
            raise DomainError("resulting_size needs at least one task")
        roots = self.roots_of(tasks)
        size = self.comp_size
        return roots, sum(size[r] for r in roots)

    def union_all(self, tasks) -> int:
        """Merge the components of all ``tasks`` into one and return ``tau``."""
        if not tasks:
            raise DomainError("union_all needs at least one task")
        roots = self.roots_of(tasks)
        rank, size, parent = self.rank, self.comp_size, self.parent
        root = roots[0]
        for other in roots[1:]:
            a, b = root, other
            if rank[a] < rank[b] or (rank[a] == rank[b] and b < a):
                a, b = b, a
            parent[b] = a
            if rank[a] == rank[b]:
                rank[a] += 1
            size[a] += size[b]
            size[b] = 0
            root = a
        if size[root] > self.tau:
            self.tau = size[root]
        return self.tau

    def component_sizes(self) -> dict[int, int]:
        """Recompute ``root -> size`` by walking every parent chain."""
        sizes: dict[int, int] = {}
        for x in range(len(self.parent)):
            r = x
            while self.parent[r] != r:
                r = self.parent[r]
            sizes[r] = sizes.get(r, 0) + 1
        return sizes
