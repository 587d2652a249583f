"""One-round referee model.

Every node ``i`` of an ``n``-vertex graph computes a message from
``(n, i, N(i))`` alone; the referee sees the ``n`` messages and nothing else.
A protocol is the pair (local function, global function); :func:`run`
evaluates it on a graph and records a :class:`Transcript`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, Union

from .graph import LabelledGraph

__all__ = [
    "Message",
    "Verdict",
    "Reconstruction",
    "Rejection",
    "RawOutput",
    "Output",
    "OneRoundProtocol",
    "FunctionProtocol",
    "EmptyProtocol",
    "FullNeighborhoodProtocol",
    "encode_id_list",
    "decode_id_list",
    "Transcript",
    "ProtocolRunError",
    "run",
    "FrugalityReport",
    "frugality_report",
]


class Message:
    """A bit string sent by one node; content is opaque to the framework."""

    __slots__ = ("bits",)

    def __init__(self, bits: str = ""):
        if bits.strip("01"):
            raise ValueError("message bits must be '0'/'1' characters")
        self.bits = bits

    def __len__(self):
        return len(self.bits)

    def __eq__(self, other):
        if not isinstance(other, Message):
            return NotImplemented
        return self.bits == other.bits

    def __hash__(self):
        return hash(self.bits)

    def __repr__(self):
        return f"Message({self.bits!r})"

    def __add__(self, other: "Message") -> "Message":
        return Message(self.bits + other.bits)

    def hex(self) -> str:
        """Hex digits of the bit string left-padded with zeros to a multiple of 4; ``-`` if empty."""
        if not self.bits:
            return "-"
        digits = (len(self.bits) + 3) // 4
        return format(int(self.bits, 2), f"0{digits}x")

    def split(self, widths: Sequence[int]) -> list["Message"]:
        if sum(widths) != len(self.bits):
            raise ValueError(f"cannot split {len(self.bits)} bits into {list(widths)}")
        out, pos = [], 0
        for w in widths:
            out.append(Message(self.bits[pos : pos + w]))
            pos += w
        return out


# ---------------------------------------------------------------------------
# referee outputs


@dataclass(frozen=True)
class Verdict:
    value: bool

    def render(self) -> str:
        return f"verdict {str(self.value).lower()}"


@dataclass(frozen=True)
class Reconstruction:
    graph: LabelledGraph

    def render(self) -> str:
        edges = ",".join(f"{u}-{v}" for u, v in self.graph.sorted_edges())
        return f"graph n={self.graph.n} edges={edges or '-'}"


@dataclass(frozen=True)
class Rejection:
    reason: str

    def render(self) -> str:
        return f"reject {self.reason}"


@dataclass(frozen=True)
class RawOutput:
    """Escape hatch for protocols whose answer is an arbitrary bit string."""

    message: Message

    def render(self) -> str:
        return f"raw bits={len(self.message)} hex={self.message.hex()}"


Output = Union[Verdict, Reconstruction, Rejection, RawOutput]


# ---------------------------------------------------------------------------
# protocols


class OneRoundProtocol:
    """Base class: subclasses provide ``local_fn`` and ``global_fn``.

    ``local_fn`` must depend only on its arguments, so it can be evaluated on
    any ``(i, N)`` with ``N`` a subset of ``1..n``, including neighbourhoods
    the referee invents for itself.
    """

    name = "protocol"

    def local_fn(self, n: int, id: int, neighborhood: frozenset[int]) -> Message:
        raise NotImplementedError

    def global_fn(self, n: int, messages: Sequence[Message]) -> Output:
        """``messages[i - 1]`` is the message of node ``i``."""
        raise NotImplementedError


class FunctionProtocol(OneRoundProtocol):
    def __init__(self, local_fn: Callable, global_fn: Callable, name: str = "custom"):
        self._local = local_fn
        self._global = global_fn
        self.name = name

    def local_fn(self, n, id, neighborhood):
        return self._local(n, id, neighborhood)

    def global_fn(self, n, messages):
        return self._global(n, messages)


class EmptyProtocol(OneRoundProtocol):
    """Every node stays silent and the referee answers ``True``."""

    name = "empty"

    def local_fn(self, n, id, neighborhood):
        return Message()

    def global_fn(self, n, messages):
        return Verdict(True)


def encode_id_list(ids: Iterable[int], n: int) -> Message:
    """Fixed-width adjacency list: a count field then ``n - 1`` ID slots, each
    ``ceil(log2(n+1))`` bits, unused slots zero.  Always ``n * L`` bits."""
    L = n.bit_length()
    ids = sorted(ids)
    if len(ids) > n - 1:
        raise ValueError(f"{len(ids)} neighbours impossible for n={n}")
    slots = ids + [0] * (n - 1 - len(ids))
    return Message("".join(format(v, f"0{L}b") for v in [len(ids), *slots]))


def decode_id_list(msg: Message, n: int) -> frozenset[int]:
    L = n.bit_length()
    if len(msg) != n * L:
        raise ValueError(f"expected {n * L} bits, got {len(msg)}")
    bits = msg.bits
    count = int(bits[:L], 2)
    if count > n - 1:
        raise ValueError(f"neighbour count {count} impossible for n={n}")
    return frozenset(int(bits[(j + 1) * L : (j + 2) * L], 2) for j in range(count))


class FullNeighborhoodProtocol(OneRoundProtocol):
    """Each node ships its whole adjacency list; the referee rebuilds the graph.
    Deliberately not frugal: messages are ``n * ceil(log2(n+1))`` bits."""

    name = "full"

    def local_fn(self, n, id, neighborhood):
        return encode_id_list(neighborhood, n)

    def global_fn(self, n, messages):
        edges = []
        for i, msg in enumerate(messages, 1):
            edges.extend((i, w) for w in decode_id_list(msg, n) if i < w)
        return Reconstruction(LabelledGraph(n, edges))


# ---------------------------------------------------------------------------
# running


class ProtocolRunError(RuntimeError):
    """A local or global function failed; ``node`` is the vertex ID or ``"referee"``."""

    def __init__(self, node, cause: BaseException):
        self.node = node
        self.cause = cause
        where = "referee" if node == "referee" else f"node {node}"
        super().__init__(f"{where}: {type(cause).__name__}: {cause}")


@dataclass(frozen=True)
class Transcript:
    n: int
    messages: tuple[Message, ...]
    output: Output
    protocol: str = ""

    @property
    def max_bits(self) -> int:
        return max((len(m) for m in self.messages), default=0)

    def export(self) -> str:
        """One ``id <i> bits <len> hex <payload>`` line per node, then ``output ...``."""
        lines = [f"id {i} bits {len(m)} hex {m.hex()}" for i, m in enumerate(self.messages, 1)]
        lines.append(f"output {self.output.render()}")
        return "\n".join(lines) + "\n"


def run(protocol: OneRoundProtocol, g: LabelledGraph) -> Transcript:
    """Evaluate ``protocol`` on ``g``: one message per node, then the referee."""
    n = g.n
    messages = []
    for i in g.vertices():
        try:
            messages.append(protocol.local_fn(n, i, g.neighbors(i)))
        except Exception as exc:
            raise ProtocolRunError(i, exc) from exc
    try:
        output = protocol.global_fn(n, messages)
    except Exception as exc:
        raise ProtocolRunError("referee", exc) from exc
    return Transcript(n, tuple(messages), output, getattr(protocol, "name", ""))


# ---------------------------------------------------------------------------
# frugality


@dataclass
class FrugalityReport:
    """Observed message sizes.

    ``max_bits_by_n[n]`` is the largest message seen on any sampled graph of
    ``n`` vertices, and ``constant`` the smallest ``c`` with
    ``max_bits <= c * log2(n + 1)`` over the sample.
    """

    max_bits_by_n: dict[int, int]
    constant: float
    bound_holds: bool | None = None
    violations: list[int] = field(default_factory=list)

    def ratios(self) -> dict[int, float]:
        return {n: b / math.log2(n + 1) for n, b in sorted(self.max_bits_by_n.items())}


def frugality_report(
    protocol: OneRoundProtocol,
    graphs: Iterable[LabelledGraph],
    bound: Callable[[int], float] | None = None,
) -> FrugalityReport:
    """Measure ``max_bits`` by graph size; if ``bound`` is given, check it dominates."""
    by_n: dict[int, int] = {}
    for g in graphs:
        t = run(protocol, g)
        by_n[g.n] = max(by_n.get(g.n, 0), t.max_bits)
    if not by_n:
        raise ValueError("need at least one graph")
    by_n = dict(sorted(by_n.items()))
    constant = max(b / math.log2(n + 1) for n, b in by_n.items())
    report = FrugalityReport(by_n, constant)
    if bound is not None:
        report.violations = [n for n, b in by_n.items() if b > bound(n)]
        report.bound_holds = not report.violations
    return report
