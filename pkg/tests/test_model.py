import math

import pytest

from oneround.degeneracy import DegeneracyProtocol
from oneround.graph import LabelledGraph, gen_k_degenerate
from oneround.model import (
    EmptyProtocol,
    FullNeighborhoodProtocol,
    FunctionProtocol,
    Message,
    ProtocolRunError,
    RawOutput,
    Reconstruction,
    Rejection,
    Verdict,
    decode_id_list,
    encode_id_list,
    frugality_report,
    run,
)


def test_message_basics():
    m = Message("0110")
    assert len(m) == 4
    assert m.hex() == "6"
    assert Message().hex() == "-"
    assert Message("10001").hex() == "11"
    assert Message("10") + Message("1") == Message("101")
    assert Message("110011").split([2, 4]) == [Message("11"), Message("0011")]
    with pytest.raises(ValueError):
        Message("012")
    with pytest.raises(ValueError):
        Message("101").split([1, 1])


def test_output_rendering():
    assert Verdict(True).render() == "verdict true"
    assert Reconstruction(LabelledGraph.path(3)).render() == "graph n=3 edges=1-2,2-3"
    assert Reconstruction(LabelledGraph(2)).render() == "graph n=2 edges=-"
    assert Rejection("x").render() == "reject x"
    assert RawOutput(Message("1111")).render() == "raw bits=4 hex=f"


def test_trivial_protocol():
    t = run(EmptyProtocol(), gen_k_degenerate(12, 2, 0))
    assert t.output == Verdict(True)
    assert t.max_bits == 0


def test_degeneracy_protocol_on_path():
    g = LabelledGraph.path(3)
    assert run(DegeneracyProtocol(1), g).output == Reconstruction(g)


def test_full_neighbourhood_round_trip_and_size():
    g = LabelledGraph.complete(3)
    t = run(FullNeighborhoodProtocol(), g)
    assert t.output == Reconstruction(g)
    assert t.max_bits == 3 * 2
    for n in (1, 2, 9, 40):
        ids = set(range(2, n + 1))
        assert decode_id_list(encode_id_list(ids, n), n) == ids


def test_max_bits_is_the_recounted_maximum():
    t = run(FullNeighborhoodProtocol(), LabelledGraph.star(9))
    assert t.max_bits == max(len(m.bits) for m in t.messages) == 9 * 4
    rejected = run(DegeneracyProtocol(1), LabelledGraph.complete(5)).output
    assert isinstance(rejected, Rejection)


def test_runs_are_deterministic():
    g = gen_k_degenerate(40, 3, 5)
    proto = DegeneracyProtocol(3)
    assert run(proto, g) == run(proto, g)
    assert run(proto, g).export() == run(DegeneracyProtocol(3), g).export()


def test_local_function_sees_only_its_arguments():
    seen = []

    def local(n, i, nb):
        seen.append((n, i, nb))
        return Message("1" if nb else "0")

    proto = FunctionProtocol(local, lambda n, msgs: RawOutput(sum(msgs, Message())))
    g = LabelledGraph(4, [(1, 2)])
    t = run(proto, g)
    assert seen == [(4, 1, {2}), (4, 2, {1}), (4, 3, frozenset()), (4, 4, frozenset())]
    assert t.output == RawOutput(Message("1100"))


def test_local_messages_depend_only_on_own_neighbourhood():
    # changing edges away from node 1 leaves node 1's message untouched
    proto = DegeneracyProtocol(2)
    a = LabelledGraph(6, [(1, 2), (3, 4), (4, 5)])
    b = LabelledGraph(6, [(1, 2), (3, 6), (5, 6), (2, 4)])
    assert run(proto, a).messages[0] == run(proto, b).messages[0]


def test_failures_name_the_culprit():
    def local(n, i, nb):
        if i == 3:
            raise KeyError("boom")
        return Message()

    with pytest.raises(ProtocolRunError) as info:
        run(FunctionProtocol(local, lambda n, m: Verdict(True)), LabelledGraph(4))
    assert info.value.node == 3

    def referee(n, m):
        raise ZeroDivisionError

    with pytest.raises(ProtocolRunError) as info:
        run(FunctionProtocol(lambda n, i, nb: Message(), referee), LabelledGraph(2))
    assert info.value.node == "referee"


def test_transcript_export_golden():
    t = run(DegeneracyProtocol(1), LabelledGraph.path(3))
    # (1,1,(2)), (2,2,(4)), (3,1,(2)) at L=2, entry width 4
    assert t.export() == (
        "id 1 bits 8 hex 52\n"
        "id 2 bits 8 hex a4\n"
        "id 3 bits 8 hex d2\n"
        "output graph n=3 edges=1-2,2-3\n"
    )


def test_frugality_of_degeneracy_protocol():
    k = 2
    proto = DegeneracyProtocol(k)
    graphs = [gen_k_degenerate(n, k, s) for n in (8, 16, 32) for s in range(3)]
    report = frugality_report(proto, graphs, proto.message_bits)
    assert report.bound_holds
    for n, bits in report.max_bits_by_n.items():
        assert bits == (2 + k * (k + 1)) * math.ceil(math.log2(n + 1))
    # ceil(log2 9) / log2 9 is the worst rounding in the sample
    assert report.constant == pytest.approx(8 * 4 / math.log2(9))


def test_frugality_of_empty_protocol():
    report = frugality_report(EmptyProtocol(), [LabelledGraph(5)], lambda n: 0)
    assert report.bound_holds and report.constant == 0


def test_full_protocol_is_not_frugal_on_stars():
    stars = [LabelledGraph.star(n) for n in (4, 16, 64, 256)]
    report = frugality_report(FullNeighborhoodProtocol(), stars)
    ratios = list(report.ratios().values())
    assert ratios == sorted(ratios) and ratios[-1] > 4 * ratios[0]
    for c in (10, 50):
        bad = frugality_report(
            FullNeighborhoodProtocol(), stars, lambda n, c=c: c * math.log2(n + 1)
        )
        assert not bad.bound_holds
        assert bad.violations[-1] == 256


def test_frugality_needs_graphs():
    with pytest.raises(ValueError):
        frugality_report(EmptyProtocol(), [])
