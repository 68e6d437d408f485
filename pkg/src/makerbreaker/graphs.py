"""Simple undirected graphs on dense integer labels and the basic primitives.

Vertices are always 0..n-1.  Graphs are immutable after construction and safe
to share; every operation here is a pure function of its inputs.  Operations
that derive a smaller graph return an explicit relabeling map back to the
parent so callers can translate moves across decomposition layers.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError


def frac_ceil(x) -> int:
    """Ceiling of a Fraction/int as an int, exactly."""
    f = Fraction(x)
    return -((-f.numerator) // f.denominator)


class Graph:
    """Immutable simple undirected graph; no loops, no multi-edges."""

    __slots__ = ("n", "_edges", "_adj")

    def __init__(self, n: int, edges=()):
        if n < 0:
            raise DomainError(f"vertex count must be nonnegative, got {n}")
        adj = [set() for _ in range(n)]
        eset = set()
        for pair in edges:
            u, v = pair
            if u == v:
                raise DomainError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge {pair} out of range for n={n}")
            if u > v:
                u, v = v, u
            eset.add((u, v))
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self._edges = frozenset(eset)
        self._adj = tuple(frozenset(s) for s in adj)

    @property
    def edges(self) -> frozenset:
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    def neighbors(self, v: int) -> frozenset:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degree_into(self, v: int, members) -> int:
        """Number of neighbors of v inside the vertex set ``members``."""
        nbrs = self._adj[v]
        if len(nbrs) < len(members):
            return sum(1 for u in nbrs if u in members)
        return sum(1 for u in members if u in nbrs)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u] if 0 <= u < self.n else False

    def average_degree(self) -> Fraction:
        if self.n == 0:
            return Fraction(0)
        return Fraction(2 * self.m, self.n)

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self._edges == other._edges

    def __hash__(self):
        return hash((self.n, self._edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    # -- common constructions -------------------------------------------------

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, [(i, j) for i in range(n) for j in range(i + 1, n)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise DomainError("cycle needs at least 3 vertices")
        return cls(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n)

    def fingerprint(self) -> str:
        """Stable hash of the canonical text encoding, for transcripts and caches."""
        digest = hashlib.sha256(format_graph(self).encode("ascii")).hexdigest()
        return digest[:16]


@dataclass(frozen=True)
class OddCycleWitness:
    """A cyclic vertex sequence of odd length whose consecutive pairs are edges."""

    vertices: tuple

    def __len__(self):
        return len(self.vertices)

    def relabeled(self, mapping) -> "OddCycleWitness":
        return OddCycleWitness(tuple(mapping[v] for v in self.vertices))


def verify_odd_cycle(g: Graph, witness: OddCycleWitness) -> bool:
    """Independent check: odd length >= 3, distinct vertices, all edges present."""
    vs = witness.vertices
    if len(vs) < 3 or len(vs) % 2 == 0 or len(set(vs)) != len(vs):
        return False
    return all(g.has_edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))


def verify_coloring(g: Graph, coloring, k: int | None = None) -> bool:
    if len(coloring) != g.n:
        return False
    if k is not None and any(not (0 <= c < k) for c in coloring):
        return False
    return all(coloring[u] != coloring[v] for u, v in g.edges)


def _check_vertex_set(g: Graph, members) -> frozenset:
    s = frozenset(members)
    for v in s:
        if not (0 <= v < g.n):
            raise DomainError(f"vertex {v} out of range for n={g.n}")
    return s


def min_degree(g: Graph) -> int:
    if g.n == 0:
        raise DomainError("min_degree of the empty graph is undefined")
    return min(len(g.neighbors(v)) for v in range(g.n))


def induced_subgraph(g: Graph, members) -> tuple[Graph, tuple]:
    """Subgraph on ``members``; returns (subgraph, to_parent) with to_parent[new] = old."""
    s = _check_vertex_set(g, members)
    order = tuple(sorted(s))
    index = {old: new for new, old in enumerate(order)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in s and v in s]
    return Graph(len(order), edges), order


def cut_edges(g: Graph, a, b) -> list:
    """Edges of g with one endpoint in a and the other in b (a, b disjoint)."""
    sa = _check_vertex_set(g, a)
    sb = _check_vertex_set(g, b)
    if sa & sb:
        raise DomainError("cut sides must be disjoint")
    out = []
    for u, v in g.edges:
        if (u in sa and v in sb) or (u in sb and v in sa):
            out.append((u, v))
    return sorted(out)


def find_odd_cycle(g: Graph):
    """Either an OddCycleWitness or a proper 2-coloring of every component.

    Exactly one of the two is returned: a witness when some component is not
    bipartite, otherwise a list of 0/1 colors indexed by vertex.
    """
    color = [-1] * g.n
    parent = [-1] * g.n
    depth = [0] * g.n
    for root in range(g.n):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = [root]
        while queue:
            nxt = []
            for u in queue:
                for v in sorted(g.neighbors(u)):
                    if color[v] == -1:
                        color[v] = 1 - color[u]
                        parent[v] = u
                        depth[v] = depth[u] + 1
                        nxt.append(v)
                    elif color[v] == color[u] and v != parent[u]:
                        return _tree_cycle(u, v, parent, depth)
            queue = nxt
    return color


def _tree_cycle(u, v, parent, depth) -> OddCycleWitness:
    # Walk both endpoints up to their lowest common ancestor; the two tree
    # paths plus the conflict edge form a cycle, odd because the endpoints
    # share a BFS parity.
    pu, pv = [u], [v]
    while depth[pu[-1]] > depth[pv[-1]]:
        pu.append(parent[pu[-1]])
    while depth[pv[-1]] > depth[pu[-1]]:
        pv.append(parent[pv[-1]])
    while pu[-1] != pv[-1]:
        pu.append(parent[pu[-1]])
        pv.append(parent[pv[-1]])
    cycle = pu + pv[-2::-1]
    return OddCycleWitness(tuple(cycle))


def shortest_path(g: Graph, u: int, v: int):
    """BFS shortest path from u to v as a vertex list, or None when disconnected."""
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise DomainError(f"path endpoints {u},{v} out of range")
    if u == v:
        return [u]
    prev = {u: None}
    queue = [u]
    while queue:
        nxt = []
        for x in queue:
            for y in sorted(g.neighbors(x)):
                if y not in prev:
                    prev[y] = x
                    if y == v:
                        path = [v]
                        while prev[path[-1]] is not None:
                            path.append(prev[path[-1]])
                        return path[::-1]
                    nxt.append(y)
        queue = nxt
    return None


def connected_components(g: Graph) -> list[frozenset]:
    """Components as frozensets, ordered by smallest member."""
    seen = [False] * g.n
    comps = []
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        comp = {root}
        queue = [root]
        while queue:
            x = queue.pop()
            for y in g.neighbors(x):
                if not seen[y]:
                    seen[y] = True
                    comp.add(y)
                    queue.append(y)
        comps.append(frozenset(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


# -- text format --------------------------------------------------------------
#
# First line `p <n> <m>`, then m lines `e <u> <v>` with 0-based endpoints.
# Duplicate or loop lines are a parse error.


def format_graph(g: Graph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"e {u} {v}" for u, v in sorted(g.edges))
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("p "):
        raise DomainError("graph text must start with a 'p <n> <m>' line")
    head = lines[0].split()
    if len(head) != 3:
        raise DomainError(f"malformed header: {lines[0]!r}")
    try:
        n, m = int(head[1]), int(head[2])
    except ValueError:
        raise DomainError(f"malformed header: {lines[0]!r}") from None
    if len(lines) - 1 != m:
        raise DomainError(f"header promises {m} edges, found {len(lines) - 1}")
    seen = set()
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3 or parts[0] != "e":
            raise DomainError(f"malformed edge line: {ln!r}")
        u, v = int(parts[1]), int(parts[2])
        if u == v:
            raise DomainError(f"loop line: {ln!r}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DomainError(f"duplicate edge line: {ln!r}")
        seen.add(key)
        edges.append(key)
    return Graph(n, edges)
