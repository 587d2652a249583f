"""Labelled graphs on vertex IDs ``1..n``.

Holds the graph value type, elimination orders, exact property oracles
(square, triangle, diameter), seeded generators and the edge-list format.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np

__all__ = [
    "INFINITE",
    "GraphError",
    "EdgeListError",
    "MalformedLineError",
    "VertexRangeError",
    "DuplicateEdgeError",
    "SelfLoopError",
    "LabelledGraph",
    "EliminationOrder",
    "degeneracy_order",
    "degeneracy",
    "generalized_degeneracy_order",
    "has_square",
    "has_triangle",
    "diameter",
    "is_bipartite_with_parts",
    "gen_k_degenerate",
    "gen_planar",
    "gen_gnp",
    "gen_square_free",
    "gen_fixed_bipartite",
    "all_graphs",
    "parse_edge_list",
    "write_edge_list",
    "read_edge_list",
]

#: Diameter of a disconnected graph; compares greater than every integer.
INFINITE = math.inf


class GraphError(ValueError):
    pass


class EdgeListError(GraphError):
    """Base class for edge-list parse failures; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MalformedLineError(EdgeListError):
    pass


class VertexRangeError(EdgeListError):
    pass


class DuplicateEdgeError(EdgeListError):
    pass


class SelfLoopError(EdgeListError):
    pass


class LabelledGraph:
    """Simple undirected graph with vertex set ``{1, ..., n}``.

    Immutable. Edges are stored as sorted pairs ``(u, v)`` with ``u < v``.
    """

    __slots__ = ("_n", "_edges", "_adj", "_masks")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 1:
            raise GraphError(f"vertex count must be positive, got {n}")
        adj: list[set[int]] = [set() for _ in range(n + 1)]
        canon = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphError(f"edge {{{u}, {v}}} has an endpoint outside 1..{n}")
            if u > v:
                u, v = v, u
            canon.add((u, v))
            adj[u].add(v)
            adj[v].add(u)
        self._n = n
        self._edges = frozenset(canon)
        self._adj = tuple(frozenset(a) for a in adj)
        self._masks = None

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    def vertices(self) -> range:
        return range(1, self._n + 1)

    def neighbors(self, v: int) -> frozenset[int]:
        """N(v): the IDs adjacent to ``v``."""
        if not 1 <= v <= self._n:
            raise GraphError(f"vertex {v} outside 1..{self._n}")
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return 1 <= u <= self._n and v in self._adj[u]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self._edges)

    def masks(self) -> tuple[int, ...]:
        """Adjacency as bitmasks: bit ``w`` of ``masks()[v]`` is set iff ``{v, w}`` is an edge."""
        if self._masks is None:
            self._masks = tuple(sum(1 << w for w in nb) for nb in self._adj)
        return self._masks

    def induced(self, keep: Iterable[int]) -> "LabelledGraph":
        """Induced subgraph, relabelled to ``1..len(keep)`` in increasing ID order."""
        keep = sorted(set(keep))
        relabel = {v: i for i, v in enumerate(keep, 1)}
        return LabelledGraph(
            len(keep),
            ((relabel[u], relabel[v]) for u, v in self._edges if u in relabel and v in relabel),
        )

    def complement(self) -> "LabelledGraph":
        return LabelledGraph(
            self._n,
            (e for e in combinations(range(1, self._n + 1), 2) if e not in self._edges),
        )

    def with_edges(self, extra: Iterable[tuple[int, int]], n: int | None = None) -> "LabelledGraph":
        """Copy with additional edges, optionally enlarging the vertex set to ``n``."""
        return LabelledGraph(self._n if n is None else n, [*self._edges, *extra])

    def __eq__(self, other):
        if not isinstance(other, LabelledGraph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self):
        return hash((self._n, self._edges))

    def __repr__(self):
        shown = ", ".join(f"{u}-{v}" for u, v in self.sorted_edges()[:12])
        more = ", ..." if self.m > 12 else ""
        return f"LabelledGraph(n={self._n}, edges=[{shown}{more}])"

    # convenience constructors used throughout tests and demos

    @classmethod
    def path(cls, n: int) -> "LabelledGraph":
        return cls(n, ((i, i + 1) for i in range(1, n)))

    @classmethod
    def cycle(cls, n: int) -> "LabelledGraph":
        if n < 3:
            raise GraphError("a simple cycle needs at least 3 vertices")
        return cls(n, [*((i, i + 1) for i in range(1, n)), (1, n)])

    @classmethod
    def complete(cls, n: int) -> "LabelledGraph":
        return cls(n, combinations(range(1, n + 1), 2))

    @classmethod
    def star(cls, n: int) -> "LabelledGraph":
        return cls(n, ((1, i) for i in range(2, n + 1)))

    @classmethod
    def empty(cls, n: int) -> "LabelledGraph":
        return cls(n)


# ---------------------------------------------------------------------------
# elimination orders


@dataclass(frozen=True)
class EliminationOrder:
    """A permutation ``(r_1, ..., r_n)`` in which every ``r_i`` has at most ``k``
    neighbours among ``r_1, ..., r_{i-1}``.

    Peeling removes vertices in the reverse of this order; see
    :attr:`removal_sequence`.
    """

    order: tuple[int, ...]
    k: int

    @property
    def removal_sequence(self) -> tuple[int, ...]:
        return self.order[::-1]

    def is_valid_for(self, g: LabelledGraph) -> bool:
        if sorted(self.order) != list(g.vertices()):
            return False
        seen: set[int] = set()
        for r in self.order:
            if len(g.neighbors(r) & seen) > self.k:
                return False
            seen.add(r)
        return True


def _peel(g: LabelledGraph, k: int) -> list[int] | None:
    """Repeatedly remove the lowest-ID vertex of current degree <= k."""
    deg = [0] + [len(g.neighbors(v)) for v in g.vertices()]
    alive = [False] + [True] * g.n
    ready = [v for v in g.vertices() if deg[v] <= k]
    heapq.heapify(ready)
    removed = []
    while ready:
        v = heapq.heappop(ready)
        alive[v] = False
        removed.append(v)
        for w in g.neighbors(v):
            if alive[w]:
                deg[w] -= 1
                if deg[w] == k:
                    heapq.heappush(ready, w)
    return removed if len(removed) == g.n else None


def degeneracy_order(g: LabelledGraph, k: int) -> EliminationOrder | None:
    """Elimination order witnessing degeneracy <= ``k``, or ``None`` if there is none."""
    if k < 0:
        raise ValueError("k must be non-negative")
    removed = _peel(g, k)
    if removed is None:
        return None
    return EliminationOrder(tuple(reversed(removed)), k)


def degeneracy(g: LabelledGraph) -> int:
    """Smallest k admitting an elimination order (min-degree peeling with buckets)."""
    n = g.n
    deg = [0] + [len(g.neighbors(v)) for v in g.vertices()]
    buckets: list[set[int]] = [set() for _ in range(n)]
    for v in g.vertices():
        buckets[deg[v]].add(v)
    alive = [False] + [True] * n
    best = 0
    low = 0
    for _ in range(n):
        while not buckets[low]:
            low += 1
        v = buckets[low].pop()
        alive[v] = False
        best = max(best, low)
        for w in g.neighbors(v):
            if alive[w]:
                buckets[deg[w]].discard(w)
                deg[w] -= 1
                buckets[deg[w]].add(w)
        low = max(low - 1, 0)
    return best


def generalized_degeneracy_order(g: LabelledGraph, k: int) -> EliminationOrder | None:
    """Like :func:`degeneracy_order` but a vertex may also be removed when its
    degree in the complement of the remaining graph is at most ``k``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    deg = [0] + [len(g.neighbors(v)) for v in g.vertices()]
    alive = [False] + [True] * g.n
    live = g.n
    removed = []
    while live:
        pick = next(
            (v for v in g.vertices() if alive[v] and (deg[v] <= k or live - 1 - deg[v] <= k)),
            None,
        )
        if pick is None:
            return None
        alive[pick] = False
        live -= 1
        removed.append(pick)
        for w in g.neighbors(pick):
            if alive[w]:
                deg[w] -= 1
    return EliminationOrder(tuple(reversed(removed)), k)


# ---------------------------------------------------------------------------
# exact property oracles


def has_square(g: LabelledGraph) -> bool:
    """True iff ``g`` contains a 4-cycle as a (not necessarily induced) subgraph.

    Two distinct vertices with two common neighbours form a square, so it is
    enough to look for a repeated pair among the neighbour pairs of each vertex.
    """
    seen = set()
    for v in g.vertices():
        for pair in combinations(sorted(g.neighbors(v)), 2):
            if pair in seen:
                return True
            seen.add(pair)
    return False


def has_triangle(g: LabelledGraph) -> bool:
    masks = g.masks()
    return any(masks[u] & masks[v] for u, v in g.edges)


def diameter(g: LabelledGraph) -> float | int:
    """Largest shortest-path distance; :data:`INFINITE` when ``g`` is disconnected.

    Level-synchronous BFS from every source at once: row ``s`` of ``reach``
    holds the vertices within the current radius of ``s``.
    """
    n = g.n
    adj = np.zeros((n, n), dtype=np.float32)
    for u, v in g.edges:
        adj[u - 1, v - 1] = adj[v - 1, u - 1] = 1.0
    reach = np.eye(n, dtype=bool)
    radius = 0
    while not reach.all():
        grown = reach | ((reach.astype(np.float32) @ adj) > 0)
        if (grown == reach).all():
            return INFINITE
        reach = grown
        radius += 1
    return radius


def is_bipartite_with_parts(g: LabelledGraph) -> bool:
    """True iff every edge joins ``{1..n//2}`` to ``{n//2+1..n}``."""
    half = g.n // 2
    return all(u <= half < v for u, v in g.edges)


# ---------------------------------------------------------------------------
# generators


def gen_k_degenerate(n: int, k: int, seed: int) -> LabelledGraph:
    """Random graph of degeneracy <= ``k``.

    Vertices are inserted in a random order and each is joined to
    ``min(k, #earlier)`` distinct earlier vertices chosen uniformly.
    """
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    rng = np.random.default_rng(seed)
    order = [int(v) for v in rng.permutation(np.arange(1, n + 1))]
    edges = []
    for i, v in enumerate(order):
        take = min(k, i)
        if take:
            for j in rng.choice(i, size=take, replace=False):
                edges.append((v, order[int(j)]))
    return LabelledGraph(n, edges)


def gen_planar(n: int, seed: int, keep: float = 1.0) -> LabelledGraph:
    """Random planar graph: Delaunay triangulation of random points, each edge kept
    with probability ``keep``; the vertex labelling is a random permutation."""
    from scipy.spatial import Delaunay

    rng = np.random.default_rng(seed)
    if n < 3:
        edges = [(1, 2)] if n == 2 and rng.random() < keep else []
        return LabelledGraph(n, edges)
    pts = rng.random((n, 2))
    label = rng.permutation(np.arange(1, n + 1))
    tri = Delaunay(pts)
    edges = set()
    for a, b, c in tri.simplices:
        for u, v in ((a, b), (b, c), (a, c)):
            u, v = int(label[u]), int(label[v])
            edges.add((min(u, v), max(u, v)))
    kept = [e for e in sorted(edges) if rng.random() < keep]
    return LabelledGraph(n, kept)


def gen_gnp(n: int, p: float, seed: int) -> LabelledGraph:
    rng = np.random.default_rng(seed)
    pairs = list(combinations(range(1, n + 1), 2))
    coins = rng.random(len(pairs))
    return LabelledGraph(n, (e for e, c in zip(pairs, coins) if c < p))


def gen_square_free(n: int, seed: int) -> LabelledGraph:
    """Random square-free graph: scan vertex pairs in random order and add each
    edge unless it would close a 4-cycle (i.e. its endpoints are already joined
    by a path of length 3)."""
    rng = np.random.default_rng(seed)
    pairs = list(combinations(range(1, n + 1), 2))
    adj: list[set[int]] = [set() for _ in range(n + 1)]
    edges = []
    for idx in rng.permutation(len(pairs)):
        u, v = pairs[int(idx)]
        if any(adj[a] & adj[v] for a in adj[u] if a != v):
            continue
        adj[u].add(v)
        adj[v].add(u)
        edges.append((u, v))
    return LabelledGraph(n, edges)


def gen_fixed_bipartite(n: int, p: float, seed: int) -> LabelledGraph:
    """Random bipartite graph with parts ``{1..n//2}`` and ``{n//2+1..n}``."""
    rng = np.random.default_rng(seed)
    half = n // 2
    pairs = [(u, v) for u in range(1, half + 1) for v in range(half + 1, n + 1)]
    coins = rng.random(len(pairs))
    return LabelledGraph(n, (e for e, c in zip(pairs, coins) if c < p))


def all_graphs(n: int, pairs: list[tuple[int, int]] | None = None) -> Iterator[LabelledGraph]:
    """Every labelled graph on ``1..n`` whose edges are drawn from ``pairs``
    (all vertex pairs by default), in bitmask order."""
    if pairs is None:
        pairs = list(combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield LabelledGraph(n, (pairs[i] for i in range(len(pairs)) if mask >> i & 1))


# ---------------------------------------------------------------------------
# edge-list format


def parse_edge_list(text: str) -> LabelledGraph:
    """Parse ``n <count>`` followed by one ``u v`` line per edge (``u < v``)."""
    lines = text.split("\n")
    header = lines[0].split(" ")
    if len(header) != 2 or header[0] != "n" or not header[1].isdigit():
        raise MalformedLineError(f"expected header 'n <count>', got {lines[0]!r}", 1)
    n = int(header[1])
    if n < 1:
        raise MalformedLineError("vertex count must be positive", 1)
    seen: set[tuple[int, int]] = set()
    for lineno, line in enumerate(lines[1:], 2):
        if not line:
            continue
        parts = line.split(" ")
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise MalformedLineError(f"expected 'u v', got {line!r}", lineno)
        u, v = int(parts[0]), int(parts[1])
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}", lineno)
        if not (1 <= u <= n and 1 <= v <= n):
            raise VertexRangeError(f"vertex ID outside 1..{n} in {line!r}", lineno)
        if u > v:
            raise MalformedLineError(f"endpoints must be increasing, got {line!r}", lineno)
        if (u, v) in seen:
            raise DuplicateEdgeError(f"edge {u} {v} listed twice", lineno)
        seen.add((u, v))
    return LabelledGraph(n, seen)


def write_edge_list(g: LabelledGraph) -> str:
    out = [f"n {g.n}\n"]
    out.extend(f"{u} {v}\n" for u, v in g.sorted_edges())
    return "".join(out)


def read_edge_list(path) -> LabelledGraph:
    with open(path, encoding="ascii") as fh:
        return parse_edge_list(fh.read())
