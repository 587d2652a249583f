"""Frugal one-round reconstruction of graphs of degeneracy at most ``k``.

Each node sends its power-sum summary ``(id, degree, b_1..b_k)``.  The
referee repeatedly picks a live vertex of live degree <= k, decodes its live
neighbourhood, records those edges and deletes the vertex from the summaries
of its neighbours (``degree - 1``, ``b_p - id**p``).  If the graph has
degeneracy <= k this never gets stuck and recovers the graph exactly; if the
referee gets stuck the degeneracy exceeds ``k``.

In generalized mode each node also sends the summary of its non-neighbours,
and a live vertex may be retired when either its live degree or its live
co-degree is at most ``k``.
"""

from __future__ import annotations

import heapq
from functools import lru_cache
from typing import Callable, Sequence

from .graph import LabelledGraph
from .model import Message, OneRoundProtocol, Reconstruction, Rejection, Verdict
from .powersum import (
    CodecError,
    PowerSumSummary,
    decode,
    deserialize,
    encode,
    message_width,
    power_sums,
    serialize,
)

__all__ = [
    "DEGENERACY_EXCEEDED",
    "GENERALIZED_EXCEEDED",
    "INCONSISTENT",
    "DegeneracyProtocol",
    "Inconsistent",
    "Stuck",
]

DEGENERACY_EXCEEDED = "degeneracy exceeds k"
GENERALIZED_EXCEEDED = "generalized degeneracy exceeds k"
INCONSISTENT = "inconsistent messages"


class Stuck(Exception):
    pass


class Inconsistent(Exception):
    pass


class _PlainState:
    """Live summaries during pruning, stored as mutable parallel lists."""

    def __init__(self, n: int, k: int, summaries: Sequence[PowerSumSummary]):
        self.n = n
        self.k = k
        self.deg = [0] * (n + 1)
        self.b = [[] for _ in range(n + 1)]
        self.alive = [False] * (n + 1)
        for v, s in enumerate(summaries, 1):
            if s.id != v:
                raise Inconsistent(f"message {v} carries id {s.id}")
            if s.degree > n - 1:
                raise Inconsistent(f"degree {s.degree} impossible for n={n}")
            self.deg[v] = s.degree
            self.b[v] = list(s.b)
            self.alive[v] = True
        self.live = n

    def summary(self, v: int) -> PowerSumSummary:
        return PowerSumSummary(v, self.deg[v], tuple(self.b[v]))

    def decode_neighbors(self, v: int) -> frozenset[int]:
        d = self.deg[v]
        b = self.b[v]
        # degrees 0 and 1 need no algebra: the first power sum is the neighbour
        if d == 0:
            if any(b):
                raise Inconsistent(f"vertex {v}: no live neighbours but non-zero power sums")
            return frozenset()
        if d == 1:
            w = b[0]
            if any(bp != w ** p for p, bp in enumerate(b, 1)):
                raise Inconsistent(f"vertex {v}: power sums are not those of a single ID")
            nb = frozenset((w,))
        else:
            try:
                nb = decode(self.summary(v), self.n, self.k)
            except CodecError as exc:
                raise Inconsistent(f"vertex {v}: {exc}") from exc
        for w in nb:
            if w == v or not 1 <= w <= self.n or not self.alive[w]:
                raise Inconsistent(f"vertex {v}: decoded neighbour {w} is not live")
        return nb

    def retire(self, v: int, nb) -> None:
        powers = [v ** p for p in range(1, self.k + 1)]
        for w in nb:
            self.deg[w] -= 1
            if self.deg[w] < 0:
                raise Inconsistent(f"vertex {w}: degree dropped below zero")
            bw = self.b[w]
            for i, vp in enumerate(powers):
                bw[i] -= vp
        self.alive[v] = False
        self.live -= 1


@lru_cache(maxsize=64)
def _range_power_sums(n: int, k: int) -> tuple[int, ...]:
    return power_sums(range(1, n + 1), k)


class DegeneracyProtocol(OneRoundProtocol):
    """Power-sum protocol for graphs of (generalized) degeneracy <= ``k``.

    ``mode="reconstruct"`` answers with the graph or a rejection;
    ``mode="recognize"`` answers with a boolean verdict.  ``k`` is shared
    configuration and never transmitted.
    """

    def __init__(self, k: int, mode: str = "reconstruct", generalized: bool = False):
        if k < 0:
            raise ValueError("k must be non-negative")
        if mode not in ("reconstruct", "recognize"):
            raise ValueError(f"unknown mode {mode!r}")
        self.k = k
        self.mode = mode
        self.generalized = generalized

    @property
    def name(self) -> str:
        return f"degen:k={self.k}" + (",generalized" if self.generalized else "")

    def message_bits(self, n: int) -> int:
        w = message_width(n, self.k)
        return 2 * w if self.generalized else w

    # -- node side ---------------------------------------------------------

    def local_fn(self, n, id, neighborhood) -> Message:
        s = encode(id, neighborhood, n, self.k)
        bits = serialize(s, n, self.k)
        if self.generalized:
            # non-neighbour sums = sums over 1..n minus own ID minus neighbours
            totals = _range_power_sums(n, self.k)
            comp = PowerSumSummary(
                id,
                n - 1 - s.degree,
                tuple(t - id ** p - bp for p, (t, bp) in enumerate(zip(totals, s.b), 1)),
            )
            bits += serialize(comp, n, self.k)
        return Message(bits)

    # -- referee side ------------------------------------------------------

    def _summaries(self, n, messages):
        if len(messages) != n:
            raise Inconsistent(f"expected {n} messages, got {len(messages)}")
        w = message_width(n, self.k)
        nbs, comps = [], []
        for msg in messages:
            bits = msg.bits
            try:
                if self.generalized:
                    if len(bits) != 2 * w:
                        raise Inconsistent(f"expected {2 * w} bits, got {len(bits)}")
                    nbs.append(deserialize(bits[:w], n, self.k))
                    comps.append(deserialize(bits[w:], n, self.k))
                else:
                    nbs.append(deserialize(bits, n, self.k))
            except CodecError as exc:
                raise Inconsistent(str(exc)) from exc
        return nbs, comps

    def reconstruct(self, n: int, messages: Sequence[Message], trace: Callable | None = None):
        """Run the pruning loop; returns the graph or raises :class:`Stuck` /
        :class:`Inconsistent`.

        ``trace(v, state)`` is called after each retirement, for instrumentation.
        """
        return LabelledGraph(n, self._edges(n, messages, trace))

    def _edges(self, n, messages, trace=None):
        nbs, comps = self._summaries(n, messages)
        if self.generalized:
            return self._prune_generalized(n, nbs, comps, trace)
        return self._prune(n, nbs, trace)

    def _prune(self, n, summaries, trace):
        k = self.k
        st = _PlainState(n, k, summaries)
        ready = [v for v in range(1, n + 1) if st.deg[v] <= k]
        heapq.heapify(ready)
        edges = []
        while st.live:
            if not ready:
                raise Stuck(DEGENERACY_EXCEEDED)
            v = heapq.heappop(ready)
            nb = st.decode_neighbors(v)
            edges.extend((v, w) for w in nb)
            st.retire(v, nb)
            for w in nb:
                if st.deg[w] == k:
                    heapq.heappush(ready, w)
            if trace is not None:
                trace(v, st)
        return edges

    def _prune_generalized(self, n, summaries, comps, trace):
        k = self.k
        st = _PlainState(n, k, summaries)
        comp_deg0 = [0] * (n + 1)
        comp_b0 = [()] * (n + 1)
        deg0 = st.deg[:]
        b0 = [tuple(b) for b in st.b]
        for v, c in enumerate(comps, 1):
            if c.id != v:
                raise Inconsistent(f"complement message {v} carries id {c.id}")
            if c.degree + deg0[v] != n - 1:
                raise Inconsistent(f"vertex {v}: degree and co-degree do not add up to n - 1")
            comp_deg0[v] = c.degree
            comp_b0[v] = c.b
        removed_count = 0
        removed_sums = [0] * k
        live_set = set(range(1, n + 1))

        # by_deg[d] = live vertices of live degree d, to find those whose
        # co-degree reaches k when the live count drops
        by_deg: list[set[int]] = [set() for _ in range(n)]
        for v in range(1, n + 1):
            by_deg[st.deg[v]].add(v)
        queued = [False] * (n + 1)
        ready: list[int] = []

        def push(v):
            if not queued[v]:
                queued[v] = True
                heapq.heappush(ready, v)

        for v in range(1, n + 1):
            if st.deg[v] <= k or n - 1 - st.deg[v] <= k:
                push(v)

        def complement_summary(v):
            # non-neighbours removed so far = all removed minus removed neighbours
            gone_nb = deg0[v] - st.deg[v]
            gone_nb_sums = [x - y for x, y in zip(b0[v], st.b[v])]
            return PowerSumSummary(
                v,
                comp_deg0[v] - (removed_count - gone_nb),
                tuple(c - (r - g) for c, r, g in zip(comp_b0[v], removed_sums, gone_nb_sums)),
            )

        edges = []
        while st.live:
            if not ready:
                raise Stuck(GENERALIZED_EXCEEDED)
            v = heapq.heappop(ready)
            if st.deg[v] <= k:
                nb = st.decode_neighbors(v)
            else:
                cs = complement_summary(v)
                if cs.degree != st.live - 1 - st.deg[v]:
                    raise Inconsistent(f"vertex {v}: live co-degree mismatch")
                try:
                    non = decode(cs, n, k)
                except CodecError as exc:
                    raise Inconsistent(f"vertex {v}: {exc}") from exc
                if v in non or not non <= live_set:
                    raise Inconsistent(f"vertex {v}: decoded non-neighbour is not live")
                nb = frozenset(live_set - non - {v})
                if len(nb) != st.deg[v] or st.summary(v) != encode(v, nb, n, k):
                    raise Inconsistent(f"vertex {v}: complement disagrees with neighbourhood")
            edges.extend((v, w) for w in nb)
            for w in nb:
                by_deg[st.deg[w]].discard(w)
            by_deg[st.deg[v]].discard(v)
            st.retire(v, nb)
            live_set.discard(v)
            removed_count += 1
            for i in range(k):
                removed_sums[i] += v ** (i + 1)
            for w in nb:
                by_deg[st.deg[w]].add(w)
                if st.deg[w] <= k:
                    push(w)
            target = st.live - 1 - k
            if 0 <= target < n:
                for w in by_deg[target]:
                    push(w)
            if trace is not None:
                trace(v, st)
        return edges

    def global_fn(self, n, messages):
        if self.mode == "recognize":
            return Verdict(self.recognize(n, messages))
        try:
            g = self.reconstruct(n, messages)
        except (Stuck, Inconsistent) as exc:
            reason = INCONSISTENT if isinstance(exc, Inconsistent) else str(exc)
            return Rejection(reason)
        return Reconstruction(g)

    def recognize(self, n: int, messages: Sequence[Message]) -> bool:
        """True iff the pruning loop retires every vertex without rejection."""
        try:
            self._edges(n, messages)
        except (Stuck, Inconsistent):
            return False
        return True

    def explain(self, n: int, messages: Sequence[Message]) -> str | None:
        """Rejection detail for diagnostics, or ``None`` when reconstruction succeeds."""
        try:
            self.reconstruct(n, messages)
        except (Stuck, Inconsistent) as exc:
            return str(exc)
        return None
