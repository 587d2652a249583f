"""Gadget reductions from graph reconstruction to one-bit decision problems.

Given any one-round protocol ``gamma`` deciding a property P (contains a
square, diameter <= 3, contains a triangle), each ``delta_*`` builds a
one-round protocol that reconstructs a whole graph family: for every pair
``s < t`` the referee assembles the messages ``gamma`` would see on a gadget
``G'_{s,t}`` that has P iff ``{s, t}`` is an edge, and asks gamma's global
function.  Node messages never depend on ``(s, t)``; the extra gadget
vertices have neighbourhoods the referee knows and simulates itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable

from .graph import (
    LabelledGraph,
    all_graphs,
    diameter,
    has_square,
    has_triangle,
    is_bipartite_with_parts,
)
from .model import (
    Message,
    OneRoundProtocol,
    Reconstruction,
    Verdict,
    decode_id_list,
    encode_id_list,
)

__all__ = [
    "KINDS",
    "PROPERTIES",
    "PreconditionError",
    "GadgetGraph",
    "build_gadget",
    "gadget_iff_check",
    "check_precondition",
    "DeciderProtocol",
    "InstrumentedDecider",
    "oracle_decider",
    "SquareReduction",
    "DiameterReduction",
    "TriangleReduction",
    "delta_square",
    "delta_diameter",
    "delta_triangle",
    "delta_for",
    "message_multiplier",
    "gamma_size",
    "count_square_free",
    "count_square_free_bruteforce",
]

KINDS = ("square", "diameter", "triangle")

PROPERTIES: dict[str, Callable[[LabelledGraph], bool]] = {
    "square": has_square,
    "diameter": lambda g: diameter(g) <= 3,
    "triangle": has_triangle,
}


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class GadgetGraph:
    base_n: int
    kind: str
    s: int
    t: int
    graph: LabelledGraph


def build_gadget(g: LabelledGraph, kind: str, s: int, t: int) -> GadgetGraph:
    """``G'_{s,t}`` for the given reduction kind.

    square:   n pendant vertices ``n+i`` on each ``i`` plus the edge ``{n+s, n+t}``
    diameter: ``n+1`` on ``s``, ``n+2`` on ``t``, ``n+3`` universal to ``1..n``
    triangle: ``n+1`` adjacent to ``s`` and ``t``
    """
    n = g.n
    if not (1 <= s <= n and 1 <= t <= n) or s == t:
        raise ValueError(f"need distinct s, t in 1..{n}, got {s}, {t}")
    if kind == "square":
        extra = [(i, n + i) for i in g.vertices()] + [(n + s, n + t)]
        big = g.with_edges(extra, 2 * n)
    elif kind == "diameter":
        extra = [(s, n + 1), (t, n + 2)] + [(v, n + 3) for v in g.vertices()]
        big = g.with_edges(extra, n + 3)
    elif kind == "triangle":
        big = g.with_edges([(s, n + 1), (t, n + 1)], n + 1)
    else:
        raise ValueError(f"unknown gadget kind {kind!r}")
    return GadgetGraph(n, kind, s, t, big)


def check_precondition(g: LabelledGraph, kind: str) -> None:
    """Raise :class:`PreconditionError` when ``g`` is outside the family the
    reduction of ``kind`` reconstructs."""
    if kind == "square" and has_square(g):
        raise PreconditionError("square reduction needs a square-free graph")
    if kind == "triangle" and not is_bipartite_with_parts(g):
        raise PreconditionError(
            f"triangle reduction needs a bipartite graph with parts 1..{g.n // 2} "
            f"and {g.n // 2 + 1}..{g.n}"
        )
    if kind not in KINDS:
        raise ValueError(f"unknown gadget kind {kind!r}")


def gadget_iff_check(g: LabelledGraph, kind: str) -> bool:
    """True iff, for every pair ``s < t``, the gadget has the property exactly
    when ``{s, t}`` is an edge of ``g``."""
    check_precondition(g, kind)
    prop = PROPERTIES[kind]
    return all(
        prop(build_gadget(g, kind, s, t).graph) == g.has_edge(s, t)
        for s, t in combinations(g.vertices(), 2)
    )


# ---------------------------------------------------------------------------
# deciders


class DeciderProtocol(OneRoundProtocol):
    """A one-round protocol answering a yes/no property.

    Reductions split concatenated messages, so deciders have fixed-width
    messages: ``message_bits(N)`` is the length of every message on graphs of
    ``N`` vertices.
    """

    property: str = ""

    def message_bits(self, n: int) -> int:
        raise NotImplementedError


class _OracleDecider(DeciderProtocol):
    """Nodes send their full adjacency list; the referee rebuilds the graph and
    evaluates the property exactly.  Correct on every graph, not frugal."""

    def __init__(self, prop: str):
        if prop not in PROPERTIES:
            raise ValueError(f"unknown property {prop!r}")
        self.property = prop
        self.name = f"oracle:{prop}"
        self._test = PROPERTIES[prop]
        # the reduction referees hand the same node messages over and over
        self._parse = lru_cache(maxsize=1 << 16)(decode_id_list)

    def message_bits(self, n):
        return n * n.bit_length()

    def local_fn(self, n, id, neighborhood):
        return encode_id_list(neighborhood, n)

    def global_fn(self, n, messages):
        edges = []
        for i, msg in enumerate(messages, 1):
            edges.extend((i, w) for w in self._parse(msg, n) if i < w)
        return Verdict(self._test(LabelledGraph(n, edges)))


def oracle_decider(prop: str) -> DeciderProtocol:
    return _OracleDecider(prop)


class InstrumentedDecider(DeciderProtocol):
    """Wraps a decider and records the length of every message its local
    function produces, keyed by graph size."""

    def __init__(self, inner: DeciderProtocol):
        self.inner = inner
        self.property = inner.property
        self.name = inner.name
        self.sizes: dict[int, set[int]] = {}
        self.global_calls = 0

    def message_bits(self, n):
        return self.inner.message_bits(n)

    def local_fn(self, n, id, neighborhood):
        msg = self.inner.local_fn(n, id, neighborhood)
        self.sizes.setdefault(n, set()).add(len(msg))
        return msg

    def global_fn(self, n, messages):
        self.global_calls += 1
        return self.inner.global_fn(n, messages)

    def measured(self, n: int) -> int:
        """|Γ^l| at size ``n``: the largest message length observed."""
        return max(self.sizes[n])


# ---------------------------------------------------------------------------
# reduction protocols


class _Reduction(OneRoundProtocol):
    kind = ""
    parts = 1

    def __init__(self, gamma: DeciderProtocol):
        if gamma.property and gamma.property != self.kind:
            raise ValueError(f"{self.kind} reduction needs a {self.kind} decider, got {gamma.property}")
        self.gamma = gamma
        self.name = f"delta:{self.kind}({gamma.name})"

    def gamma_n(self, n: int) -> int:
        raise NotImplementedError

    def message_bits(self, n: int) -> int:
        return self.parts * self.gamma.message_bits(self.gamma_n(n))

    def _split(self, n, messages) -> list[list[Message]]:
        w = self.gamma.message_bits(self.gamma_n(n))
        return [m.split([w] * self.parts) for m in messages]

    def _ask(self, big_n, messages) -> bool:
        out = self.gamma.global_fn(big_n, messages)
        if not isinstance(out, Verdict):
            raise TypeError(f"decider returned {out!r}, expected a verdict")
        return out.value


class SquareReduction(_Reduction):
    """Reconstructs square-free graphs from a square decider on ``2n`` vertices."""

    kind = "square"
    parts = 1

    def gamma_n(self, n):
        return 2 * n

    def local_fn(self, n, id, neighborhood):
        return self.gamma.local_fn(2 * n, id, frozenset(neighborhood) | {id + n})

    def global_fn(self, n, messages):
        gl = self.gamma.local_fn
        N = 2 * n
        # pendant messages for the pairs not involved; independent of G
        pendant = [gl(N, j, frozenset((j - n,))) for j in range(n + 1, N + 1)]
        base = [p[0] for p in self._split(n, messages)]
        edges = []
        for s, t in combinations(range(1, n + 1), 2):
            tail = pendant[:]
            tail[s - 1] = gl(N, n + s, frozenset((s, n + t)))
            tail[t - 1] = gl(N, n + t, frozenset((t, n + s)))
            if self._ask(N, base + tail):
                edges.append((s, t))
        return Reconstruction(LabelledGraph(n, edges))


class DiameterReduction(_Reduction):
    """Reconstructs any graph from a diameter-<=3 decider on ``n + 3`` vertices.

    Node ``i`` sends three decider messages, for ``N(i)`` plus ``{n+3}``,
    ``{n+1, n+3}`` and ``{n+2, n+3}``: the only neighbourhoods ``i`` can have
    in any gadget.
    """

    kind = "diameter"
    parts = 3

    def gamma_n(self, n):
        return n + 3

    def local_fn(self, n, id, neighborhood):
        N = n + 3
        nb = frozenset(neighborhood)
        gl = self.gamma.local_fn
        return gl(N, id, nb | {n + 3}) + gl(N, id, nb | {n + 1, n + 3}) + gl(N, id, nb | {n + 2, n + 3})

    def global_fn(self, n, messages):
        N = n + 3
        gl = self.gamma.local_fn
        parts = self._split(n, messages)
        plain = [p[0] for p in parts]
        hub = gl(N, n + 3, frozenset(range(1, n + 1)))
        edges = []
        for s, t in combinations(range(1, n + 1), 2):
            msgs = plain[:]
            msgs[s - 1] = parts[s - 1][1]
            msgs[t - 1] = parts[t - 1][2]
            msgs += [gl(N, n + 1, frozenset((s,))), gl(N, n + 2, frozenset((t,))), hub]
            if self._ask(N, msgs):
                edges.append((s, t))
        return Reconstruction(LabelledGraph(n, edges))


class TriangleReduction(_Reduction):
    """Reconstructs bipartite graphs with parts ``1..n//2`` / ``n//2+1..n`` from a
    triangle decider on ``n + 1`` vertices."""

    kind = "triangle"
    parts = 2

    def gamma_n(self, n):
        return n + 1

    def local_fn(self, n, id, neighborhood):
        N = n + 1
        nb = frozenset(neighborhood)
        return self.gamma.local_fn(N, id, nb) + self.gamma.local_fn(N, id, nb | {n + 1})

    def global_fn(self, n, messages):
        N = n + 1
        gl = self.gamma.local_fn
        parts = self._split(n, messages)
        plain = [p[0] for p in parts]
        edges = []
        for s, t in combinations(range(1, n + 1), 2):
            msgs = plain[:]
            msgs[s - 1] = parts[s - 1][1]
            msgs[t - 1] = parts[t - 1][1]
            msgs.append(gl(N, n + 1, frozenset((s, t))))
            if self._ask(N, msgs):
                edges.append((s, t))
        return Reconstruction(LabelledGraph(n, edges))


def delta_square(gamma: DeciderProtocol) -> SquareReduction:
    return SquareReduction(gamma)


def delta_diameter(gamma: DeciderProtocol) -> DiameterReduction:
    return DiameterReduction(gamma)


def delta_triangle(gamma: DeciderProtocol) -> TriangleReduction:
    return TriangleReduction(gamma)


def delta_for(kind: str, gamma: DeciderProtocol) -> _Reduction:
    return {"square": SquareReduction, "diameter": DiameterReduction, "triangle": TriangleReduction}[
        kind
    ](gamma)


def gamma_size(kind: str, n: int) -> int:
    """Size of the gadget graphs the decider sees for base size ``n``."""
    return {"square": 2 * n, "diameter": n + 3, "triangle": n + 1}[kind]


def message_multiplier(kind: str) -> int:
    """How many decider messages make up one reduction message."""
    return {"square": 1, "diameter": 3, "triangle": 2}[kind]


# ---------------------------------------------------------------------------
# counting square-free graphs


MAX_COUNT_N = 7


def count_square_free(n: int) -> int:
    """Number of labelled square-free graphs on ``1..n``.

    Adds candidate edges one at a time and abandons a branch as soon as it
    closes a 4-cycle; every subgraph of a square-free graph is square-free, so
    no counted graph is missed.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_COUNT_N:
        raise ValueError(f"exhaustive count refused for n > {MAX_COUNT_N}")
    pairs = list(combinations(range(1, n + 1), 2))
    adj = [0] * (n + 1)

    def closes_square(u, v):
        # some a ~ u and b ~ v with a ~ b, all four distinct
        au = adj[u] & ~(1 << v)
        a = au
        while a:
            low = a & -a
            x = low.bit_length() - 1
            if adj[x] & adj[v] & ~(1 << u):
                return True
            a ^= low
        return False

    def walk(i):
        if i == len(pairs):
            return 1
        total = walk(i + 1)
        u, v = pairs[i]
        if not closes_square(u, v):
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            total += walk(i + 1)
            adj[u] ^= 1 << v
            adj[v] ^= 1 << u
        return total

    return walk(0)


def count_square_free_bruteforce(n: int) -> int:
    """Enumerate all ``2**(n choose 2)`` graphs and test each; small ``n`` only."""
    return sum(1 for g in all_graphs(n) if not has_square(g))
