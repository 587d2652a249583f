"""Power-sum neighbourhood summaries.

A vertex ``v`` with neighbourhood ``N`` is summarised by
``(id, |N|, b_1, ..., b_k)`` with ``b_p = sum(w**p for w in N)``.  Any set of at
most ``k`` IDs is the only set of its size with those power sums, so the
summary of a vertex of degree <= k determines its neighbourhood exactly.

Decoding goes power sums -> elementary symmetric values (Newton's identities)
-> monic polynomial -> its integer roots in ``1..n``.

Wire layout, all fields big-endian and unpadded, with ``L = ceil(log2(n+1))``::

    id      L bits
    degree  L bits
    b_1     (k+1)*L bits
    ...
    b_k     (k+1)*L bits

for a total of ``W(n, k) = (2 + k*(k+1)) * L`` bits.
"""

from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "CodecError",
    "DecodeError",
    "DegreeOutOfRangeError",
    "SerializationError",
    "DeserializationError",
    "PowerSumSummary",
    "id_width",
    "entry_width",
    "message_width",
    "encode",
    "power_sums",
    "decode",
    "decode_bruteforce",
    "power_sums_to_elementary",
    "integer_roots",
    "integer_roots_scan",
    "serialize",
    "deserialize",
]


class CodecError(ValueError):
    pass


class DecodeError(CodecError):
    """The summary is not the power-sum signature of any admissible set."""


class DegreeOutOfRangeError(CodecError):
    pass


class SerializationError(CodecError):
    pass


class DeserializationError(CodecError):
    pass


class PowerSumSummary(NamedTuple):
    id: int
    degree: int
    b: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.b)

    def without(self, w: int) -> "PowerSumSummary":
        """Summary after deleting neighbour ``w``: degree - 1 and ``b_p - w**p``."""
        return PowerSumSummary(
            self.id, self.degree - 1, tuple(bp - w ** p for p, bp in enumerate(self.b, 1))
        )


def id_width(n: int) -> int:
    """``ceil(log2(n + 1))``, the bits needed for any value in ``0..n``."""
    return n.bit_length()


def entry_width(n: int, k: int) -> int:
    return (k + 1) * id_width(n)


def message_width(n: int, k: int) -> int:
    """W(n, k): exact length of a serialized summary."""
    return (2 + k * (k + 1)) * id_width(n)


def power_sums(ids: Iterable[int], k: int) -> tuple[int, ...]:
    sums = [0] * k
    for w in ids:
        acc = 1
        for p in range(k):
            acc *= w
            sums[p] += acc
    return tuple(sums)


def encode(id: int, neighborhood: Iterable[int], n: int, k: int) -> PowerSumSummary:
    nb = neighborhood if isinstance(neighborhood, (set, frozenset)) else set(neighborhood)
    if id in nb:
        raise CodecError(f"vertex {id} lists itself as a neighbour")
    if not 1 <= id <= n:
        raise CodecError(f"id {id} outside 1..{n}")
    if nb and (min(nb) < 1 or max(nb) > n):
        raise CodecError(f"neighbourhood of {id} has IDs outside 1..{n}")
    return PowerSumSummary(id, len(nb), power_sums(nb, k))


# ---------------------------------------------------------------------------
# algebra


def power_sums_to_elementary(p: Sequence[int]) -> tuple[int, ...]:
    """Newton's identities: ``i*e_i = sum_{j=1..i} (-1)**(j-1) * e_{i-j} * p_j``.

    Raises DecodeError if some division by ``i`` is inexact, in which case ``p``
    is not the power-sum vector of any integer multiset.
    """
    e = [1]
    for i in range(1, len(p) + 1):
        acc = 0
        for j in range(1, i + 1):
            term = e[i - j] * p[j - 1]
            acc += term if j % 2 else -term
        q, r = divmod(acc, i)
        if r:
            raise DecodeError(f"power sums are not integral at order {i}")
        e.append(q)
    return tuple(e[1:])


def _coefficients(e: Sequence[int]) -> list[int]:
    # x^d - e1 x^{d-1} + e2 x^{d-2} - ..., highest degree first
    return [1] + [-c if i % 2 == 0 else c for i, c in enumerate(e)]


def _horner(coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def _deflate(coeffs: Sequence[int], r: int) -> list[int]:
    """Synthetic division by ``(x - r)``; the caller guarantees ``r`` is a root."""
    out = [coeffs[0]]
    for c in coeffs[1:-1]:
        out.append(c + out[-1] * r)
    return out


def integer_roots(e: Sequence[int], n: int) -> frozenset[int]:
    """The ``d = len(e)`` distinct roots in ``1..n`` of
    ``x^d - e_1 x^{d-1} + e_2 x^{d-2} - ...``.

    Uses exact integer Newton steps from above: beyond its largest root a
    real-rooted polynomial is positive and convex, so ``x - floor(f(x)/f'(x))``
    never overshoots an integer largest root.  Each root found is divided out
    and the search continues strictly below it, which also rejects repeated
    roots.  Anything off that path (negative value or slope, dropping below 1)
    means the polynomial does not split into distinct roots in range.
    """
    coeffs = _coefficients(e)
    roots = []
    x = n
    while len(coeffs) > 1:
        d = len(coeffs) - 1
        deriv = [c * (d - i) for i, c in enumerate(coeffs[:-1])]
        while True:
            if x < 1:
                raise DecodeError("fewer distinct roots in range than the degree")
            fx = _horner(coeffs, x)
            if fx == 0:
                break
            dfx = _horner(deriv, x)
            if fx < 0 or dfx <= 0:
                raise DecodeError("polynomial does not split into distinct roots in range")
            # a step below 1 still leaves the largest root <= x - 1
            x -= max(fx // dfx, 1)
        roots.append(x)
        coeffs = _deflate(coeffs, x)
        x -= 1
    return frozenset(roots)


def integer_roots_scan(e: Sequence[int], n: int) -> frozenset[int]:
    """Same contract as :func:`integer_roots`, by evaluating every candidate
    ``1..n`` and dividing out each root as it is found.  O(n*d)."""
    coeffs = _coefficients(e)
    roots = []
    for x in range(1, n + 1):
        if len(coeffs) == 1:
            break
        if _horner(coeffs, x) == 0:
            roots.append(x)
            coeffs = _deflate(coeffs, x)
            if _horner(coeffs, x) == 0:
                raise DecodeError(f"repeated root {x}")
    if len(coeffs) > 1:
        raise DecodeError("fewer distinct roots in range than the degree")
    return frozenset(roots)


def _check(summary: PowerSumSummary, n: int, k: int | None) -> None:
    if k is not None and summary.degree > k:
        raise DegreeOutOfRangeError(f"degree {summary.degree} exceeds k={k}")
    if summary.degree > summary.k:
        raise DegreeOutOfRangeError(
            f"degree {summary.degree} exceeds the {summary.k} power sums carried"
        )
    if summary.degree < 0 or summary.degree > n:
        raise DecodeError(f"degree {summary.degree} impossible for n={n}")


def decode(summary: PowerSumSummary, n: int, k: int | None = None) -> frozenset[int]:
    """The unique set ``S`` of ``summary.degree`` IDs in ``1..n`` with power sums
    ``summary.b``.

    Only the first ``degree`` sums drive the decoding; the rest must agree or
    the summary is rejected.
    """
    _check(summary, n, k)
    d = summary.degree
    e = power_sums_to_elementary(summary.b[:d])
    roots = integer_roots(e, n)
    if power_sums(roots, summary.k) != summary.b:
        raise DecodeError("higher power sums disagree with the decoded set")
    return roots


def decode_bruteforce(summary: PowerSumSummary, n: int, k: int | None = None) -> frozenset[int]:
    """Exhaustive search: try every ``(degree-1)``-subset of ``1..n`` and complete
    it with the one ID that fixes the first power sum.  Test oracle only."""
    _check(summary, n, k)
    d = summary.degree
    if d == 0:
        if any(summary.b):
            raise DecodeError("empty neighbourhood with non-zero power sums")
        return frozenset()
    found = None
    for head in combinations(range(1, n + 1), d - 1):
        last = summary.b[0] - sum(head)
        if head and last <= head[-1]:
            continue
        if not 1 <= last <= n:
            continue
        cand = (*head, last)
        if power_sums(cand, summary.k) == summary.b:
            if found is not None:
                raise DecodeError("power sums match more than one set")
            found = frozenset(cand)
    if found is None:
        raise DecodeError("no set matches the power sums")
    return found


def bruteforce_cost(n: int, degree: int) -> int:
    """Number of candidate sets :func:`decode_bruteforce` examines."""
    return comb(n, max(degree - 1, 0))


# ---------------------------------------------------------------------------
# wire format


def serialize(summary: PowerSumSummary, n: int, k: int) -> str:
    """Bit string of exactly ``message_width(n, k)`` characters."""
    if summary.k != k:
        raise SerializationError(f"summary carries {summary.k} power sums, expected {k}")
    L = n.bit_length()
    wide = (k + 1) * L
    id_, degree, b = summary
    if id_ < 0 or degree < 0 or id_ >> L or degree >> L:
        raise SerializationError(f"id={id_} or degree={degree} does not fit in {L} bits")
    word = (id_ << L) | degree
    for p, bp in enumerate(b, 1):
        if bp < 0 or bp >> wide:
            raise SerializationError(f"b_{p}={bp} does not fit in {wide} bits")
        word = (word << wide) | bp
    return format(word, f"0{(2 + k * (k + 1)) * L}b")


def deserialize(bits: str, n: int, k: int) -> PowerSumSummary:
    L = n.bit_length()
    want = (2 + k * (k + 1)) * L
    if len(bits) != want:
        raise DeserializationError(f"expected {want} bits, got {len(bits)}")
    if bits.strip("01"):
        raise DeserializationError("message contains characters other than 0 and 1")
    word = int(bits, 2) if bits else 0
    wide = (k + 1) * L
    mask = (1 << wide) - 1
    b = []
    for _ in range(k):
        b.append(word & mask)
        word >>= wide
    degree = word & ((1 << L) - 1)
    id_ = word >> L
    return PowerSumSummary(id_, degree, tuple(reversed(b)))
