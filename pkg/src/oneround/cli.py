"""Command-line entry point: ``oneround <subcommand> ...``.

Exit status is 0 on success, 1 when the referee rejects or a reduction's
input is outside its family, and 2 for usage errors and malformed input.
"""

from __future__ import annotations

import argparse
import sys

from .degeneracy import DegeneracyProtocol
from .graph import EdgeListError, gen_k_degenerate, read_edge_list, write_edge_list
from .model import (
    EmptyProtocol,
    FullNeighborhoodProtocol,
    Message,
    Reconstruction,
    Rejection,
    frugality_report,
    run,
)
from .reductions import (
    KINDS,
    PreconditionError,
    InstrumentedDecider,
    check_precondition,
    count_square_free,
    delta_for,
    gamma_size,
    message_multiplier,
    oracle_decider,
)


class UsageError(Exception):
    pass


def parse_protocol(spec: str, mode: str = "reconstruct"):
    """Build a protocol from ``degen:k=<K>[,generalized]``, ``full``, ``empty``
    or ``oracle:<square|diameter|triangle>``."""
    head, _, rest = spec.partition(":")
    if head == "degen":
        k = None
        generalized = False
        for item in filter(None, rest.split(",")):
            if item == "generalized":
                generalized = True
            elif item.startswith("k=") and item[2:].isdigit():
                k = int(item[2:])
            else:
                raise UsageError(f"bad protocol option {item!r} in {spec!r}")
        if k is None:
            raise UsageError(f"protocol {spec!r} needs k=<int>")
        return DegeneracyProtocol(k, mode=mode, generalized=generalized)
    if head == "full" and not rest:
        return FullNeighborhoodProtocol()
    if head == "empty" and not rest:
        return EmptyProtocol()
    if head == "oracle" and rest in KINDS:
        return oracle_decider(rest)
    raise UsageError(f"unknown protocol {spec!r}")


def _load(path):
    if path is None:
        raise UsageError("--graph is required")
    try:
        return read_edge_list(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_output(output) -> tuple[str, int]:
    if isinstance(output, Reconstruction):
        return write_edge_list(output.graph), 0
    if isinstance(output, Rejection):
        return f"reject {output.reason}\n", 1
    return output.render() + "\n", 0


def cmd_gen(args):
    for flag in ("n", "k", "seed"):
        if getattr(args, flag) is None:
            raise UsageError(f"gen requires --{flag}")
    g = gen_k_degenerate(args.n, args.k, args.seed)
    _emit(write_edge_list(g), args.out)
    return 0


def cmd_encode(args):
    if args.k is None:
        raise UsageError("encode requires --k")
    g = _load(args.graph)
    proto = DegeneracyProtocol(args.k)
    t = run(proto, g)
    lines = [line for line in t.export().splitlines() if line.startswith("id ")]
    _emit(f"n {g.n}\nk {args.k}\n" + "\n".join(lines) + "\n", args.out)
    return 0


def _read_messages(path):
    try:
        with open(path, encoding="ascii") as fh:
            rows = fh.read().split("\n")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    head = {}
    messages = []
    for lineno, row in enumerate(rows, 1):
        parts = row.split()
        if not parts:
            continue
        if len(parts) == 2 and parts[0] in ("n", "k") and parts[1].isdigit():
            head[parts[0]] = int(parts[1])
        elif len(parts) == 6 and parts[0] == "id" and parts[2] == "bits" and parts[4] == "hex":
            try:
                i, length = int(parts[1]), int(parts[3])
                value = 0 if parts[5] == "-" else int(parts[5], 16)
            except ValueError:
                raise UsageError(f"line {lineno}: malformed message line") from None
            if i != len(messages) + 1 or value.bit_length() > length:
                raise UsageError(f"line {lineno}: malformed message line")
            messages.append(Message(format(value, f"0{length}b") if length else ""))
        else:
            raise UsageError(f"line {lineno}: malformed message line")
    if "n" not in head or "k" not in head:
        raise UsageError("message file needs 'n <count>' and 'k <int>' header lines")
    return head["n"], head["k"], messages


def cmd_decode(args):
    if args.messages is None:
        raise UsageError("decode requires --messages")
    n, k, messages = _read_messages(args.messages)
    if args.k is not None and args.k != k:
        raise UsageError(f"--k {args.k} disagrees with the message file (k {k})")
    if len(messages) != n:
        raise UsageError(f"expected {n} messages, found {len(messages)}")
    proto = DegeneracyProtocol(k)
    text, code = _render_output(proto.global_fn(n, messages))
    _emit(text, args.out)
    return code


def cmd_run(args):
    if args.protocol is None:
        raise UsageError("run requires --protocol")
    proto = parse_protocol(args.protocol)
    g = _load(args.graph)
    t = run(proto, g)
    text, code = _render_output(t.output)
    if args.out:
        _emit(t.export(), args.out)
    sys.stdout.write(text + f"max_bits {t.max_bits}\n")
    return code


def cmd_recognize(args):
    if args.protocol is None:
        raise UsageError("recognize requires --protocol")
    proto = parse_protocol(args.protocol, mode="recognize")
    if not isinstance(proto, DegeneracyProtocol):
        raise UsageError("recognize needs a degen:... protocol")
    g = _load(args.graph)
    t = run(proto, g)
    messages = list(t.messages)
    lines = [f"recognized {str(t.output.value).lower()}"]
    reason = proto.explain(g.n, messages)
    if reason is not None:
        lines.append(f"reason {reason}")
    lines.append(f"max_bits {t.max_bits}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_reduce(args):
    if args.kind is None:
        raise UsageError("reduce requires --kind")
    if args.oracle != "exact":
        raise UsageError("only --oracle exact is available")
    g = _load(args.graph)
    try:
        check_precondition(g, args.kind)
    except PreconditionError as exc:
        sys.stderr.write(f"precondition violated: {exc}\n")
        return 1
    gamma = InstrumentedDecider(oracle_decider(args.kind))
    delta = delta_for(args.kind, gamma)
    t = run(delta, g)
    text, code = _render_output(t.output)
    big = gamma_size(args.kind, g.n)
    report = [
        f"kind {args.kind}",
        f"gamma_n {big}",
        f"gamma_bits {gamma.measured(big)}",
        f"multiplier {message_multiplier(args.kind)}",
        f"delta_bits {t.max_bits}",
        f"gamma_calls {gamma.global_calls}",
        f"exact {str(t.output.graph == g).lower()}",
    ]
    _emit(text, args.out)
    sys.stdout.write("\n".join(report) + "\n")
    return code


def cmd_frugality(args):
    if args.protocol is None or not args.n:
        raise UsageError("frugality requires --protocol and at least one --n")
    if args.seed is None:
        raise UsageError("frugality requires --seed")
    proto = parse_protocol(args.protocol)
    k_gen = args.k if args.k is not None else getattr(proto, "k", 2)
    graphs = [
        gen_k_degenerate(n, k_gen, args.seed + rep) for n in args.n for rep in range(args.samples)
    ]
    bound = None
    if isinstance(proto, DegeneracyProtocol):
        bound = proto.message_bits
    report = frugality_report(proto, graphs, bound)
    lines = [f"n {n} max_bits {b}" for n, b in report.max_bits_by_n.items()]
    lines.append(f"constant {report.constant:.6f}")
    if bound is not None:
        lines.append(f"bound_holds {str(report.bound_holds).lower()}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_count_square_free(args):
    if args.n is None:
        raise UsageError("count-square-free requires --n")
    try:
        value = count_square_free(args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(f"{value}\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oneround", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, flags):
        p = sub.add_parser(name, help=help, description=help)
        p.set_defaults(func=func)
        if "graph" in flags:
            p.add_argument("--graph", metavar="PATH", help="input graph in edge-list format")
        if "protocol" in flags:
            p.add_argument(
                "--protocol",
                metavar="SPEC",
                help="degen:k=<K>[,generalized] | full | empty | oracle:<kind>",
            )
        if "k" in flags:
            p.add_argument("--k", type=int, help="degeneracy bound")
        if "kind" in flags:
            p.add_argument("--kind", choices=KINDS, help="gadget kind")
        if "n" in flags:
            p.add_argument("--n", type=int, help="number of vertices")
        if "n*" in flags:
            p.add_argument("--n", type=int, action="append", help="graph size (repeatable)")
        if "seed" in flags:
            p.add_argument("--seed", type=int, help="random seed")
        if "oracle" in flags:
            p.add_argument("--oracle", choices=["exact"], default="exact", help="decider to wrap")
        if "messages" in flags:
            p.add_argument("--messages", metavar="PATH", help="message file written by 'encode'")
        if "samples" in flags:
            p.add_argument("--samples", type=int, default=5, help="graphs per size")
        p.add_argument("--out", metavar="PATH", help="write the main output here instead of stdout")
        return p

    add("gen", cmd_gen, "generate a random graph of degeneracy <= k", {"n", "k", "seed"})
    add("encode", cmd_encode, "write every node's power-sum message", {"graph", "k"})
    add("decode", cmd_decode, "reconstruct a graph from a message file", {"messages", "k"})
    add("run", cmd_run, "run a protocol on a graph", {"graph", "protocol"})
    add("recognize", cmd_recognize, "decide degeneracy <= k from the messages", {"graph", "protocol"})
    add(
        "reduce",
        cmd_reduce,
        "reconstruct a graph through a gadget reduction",
        {"graph", "kind", "oracle"},
    )
    add(
        "frugality",
        cmd_frugality,
        "measure message sizes on random graphs",
        {"protocol", "n*", "k", "seed", "samples"},
    )
    add("count-square-free", cmd_count_square_free, "count labelled square-free graphs", {"n"})
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, EdgeListError) as exc:
        sys.stderr.write(f"oneround {args.command}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
