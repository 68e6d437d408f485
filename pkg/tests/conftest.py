"""Shared graph builders and the small-graph isomorphism-class enumeration."""

from functools import lru_cache
from itertools import combinations, permutations

from makerbreaker.graphs import Graph


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph(10, outer + inner + spokes)


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def two_triangles_shared_vertex() -> Graph:
    return Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


def all_labeled_graphs(n: int):
    """Every labeled simple graph on n vertices."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


def _canonical_form(n: int, edges: frozenset) -> frozenset:
    best = None
    for perm in permutations(range(n)):
        mapped = frozenset(
            (min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in edges
        )
        key = tuple(sorted(mapped))
        if best is None or key < best[0]:
            best = (key, mapped)
    return best[1]


@lru_cache(maxsize=None)
def iso_classes(n: int) -> tuple:
    """One representative per isomorphism class of graphs on exactly n vertices."""
    seen = {}
    for g in all_labeled_graphs(n):
        canon = _canonical_form(n, g.edges)
        if canon not in seen:
            seen[canon] = Graph(n, canon)
    return tuple(seen.values())
