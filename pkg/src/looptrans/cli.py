"""Command-line surface.

Exit codes: 0 on success, 1 on a negative verdict (e.g. ``check`` deciding
no), 2 on malformed input or resource caps.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import CATALOG_NAMES, catalog as load_catalog
from .enumeration import census, enumerate_classes
from .formats import (
    GraphFormatError,
    dumps_cycles,
    dumps_json,
    dumps_witness,
    export_dot,
    parse_graph,
    parse_witness,
)
from .graph import LoopSignedGraph, validate
from .invariants import (
    DEFAULT_KRON_DIM,
    DEFAULT_MAX_WORD,
    det_probe,
    kron_probe,
    spectral_report,
    trace_profile,
)
from .reps import (
    GroupCapExceeded,
    NoBipartiteSystem,
    closure,
    pair_from_words,
    schreier_graph,
)
from .transform import (
    NoSignPartition,
    NotNormalizable,
    SubstitutionPlan,
    add_colour,
    braid,
    copy_colour,
    cross,
    dualize,
    omit_colour,
    substitute,
    swap_loop_signs,
)
from .transplant import ClosureCapExceeded, decide, verify_witness


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_graph(path: str) -> LoopSignedGraph:
    try:
        return parse_graph(_read(path))
    except GraphFormatError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _emit_graph(g: LoopSignedGraph, fmt: str = "json") -> None:
    sys.stdout.write(dumps_json(g) if fmt == "json" else dumps_cycles(g))


def _cmd_check(args: argparse.Namespace) -> int:
    g1 = _load_graph(args.first)
    g2 = _load_graph(args.second)
    decision = decide(g1, g2, method=args.method, seed=args.seed)
    if decision.verdict:
        print("transplantable: yes")
        if decision.witness is not None and args.witness:
            Path(args.witness).write_text(dumps_witness(decision.witness))
            print(f"witness written to {args.witness}")
        return 0
    print("transplantable: no")
    if decision.certificate is not None:
        cert = decision.certificate
        word = ",".join(map(str, cert.word)) or "(empty)"
        print(f"certificate: word {word} has differing traces")
    return 1


def _cmd_invariants(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    profile = trace_profile(g, args.max_word)
    report = spectral_report(g)
    out = {
        "block_count": report.block_count,
        "boundary_balance": list(report.boundary_balance),
        "corner_traces": {
            f"{c1},{c2}": list(t) for (c1, c2), t in report.corner_traces
        },
        "loopless_edges": report.loopless_edges,
        "word_traces": {
            ",".join(map(str, w)): t for w, t in sorted(profile.items())
        },
        "kron_probe": list(
            kron_probe(g, args.kron_dim, args.kron_pow, args.seed)
        ),
        "det_probe": det_probe(g, args.seed),
    }
    json.dump(out, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def _cmd_census(args: argparse.Namespace) -> int:
    row = census(
        args.vertices,
        args.colors,
        regime=args.loops,
        quilts=args.quilts,
        threads=args.threads,
    )
    if args.treelike:
        print(
            f"V={row.vertices} C={row.colors} [{row.regime}] "
            f"treelike classes={row.treelike_count} "
            f"pairs={row.treelike_pair_count} "
            f"colour-classes={row.treelike_class_pair_count}"
        )
    else:
        line = (
            f"V={row.vertices} C={row.colors} [{row.regime}] "
            f"classes={row.class_count} ({row.treelike_count}) "
            f"pairs={row.pair_count} ({row.treelike_pair_count}) "
            f"colour-classes={row.class_pair_count} ({row.treelike_class_pair_count})"
        )
        if row.quilt_count is not None:
            line += f" quilts={row.quilt_count}"
        print(line)
    return 0


def _cmd_enumerate(args: argparse.Namespace) -> int:
    stream = enumerate_classes(
        args.vertices, args.colors, args.loops, treelike_only=args.treelike
    )
    if args.count_only:
        print(sum(1 for _ in stream))
        return 0
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    count = 0
    for i, g in enumerate(stream, start=1):
        (outdir / f"graph_{i:07d}.json").write_text(dumps_json(g))
        count = i
    print(f"wrote {count} graphs to {outdir}")
    return 0


def _cmd_transform(args: argparse.Namespace) -> int:
    op = args.operation
    if op == "substitute":
        plan_doc = json.loads(_read(args.plan))
        host = _load_graph(plan_doc["host"])
        substituent = _load_graph(plan_doc["substituent"])
        assignment = {
            int(chi): {int(c): vs for c, vs in per_host.items()}
            for chi, per_host in plan_doc["assignment"].items()
        }
        plan = SubstitutionPlan.create(host, substituent, assignment)
        _emit_graph(substitute(plan), args.format)
        return 0
    g = _load_graph(args.graph)
    if op == "dual":
        out = dualize(g)
    elif op == "swap-signs":
        out = swap_loop_signs(g, args.colors_list)
    elif op == "braid":
        out = braid(g, args.color, args.conjugator)
    elif op == "copy-color":
        out = copy_colour(g, args.color)
    elif op == "add-color":
        out = add_colour(g, args.sign)
    elif op == "omit-color":
        out = omit_colour(g, args.color)
    elif op == "cross":
        out = cross(g, _load_graph(args.second))
    else:
        raise InputError(f"unknown transform {op!r}")
    _emit_graph(out, args.format)
    return 0


def _cmd_schreier(args: argparse.Namespace) -> int:
    gens_graph = _load_graph(args.generators)
    generators = list(gens_graph.adjacency)
    group = closure(generators)
    words = []
    for token in args.subgroup.split(","):
        token = token.strip()
        if token in ("e", ""):
            words.append(())
        else:
            words.append(tuple(int(ch) for ch in token))
    values = []
    for token in args.character.split(","):
        token = token.strip()
        values.append(1 if token in ("+", "1", "+1", "N") else -1)
    pair = pair_from_words(group, words, values)
    _emit_graph(schreier_graph(group, generators, pair), args.format)
    return 0


def _cmd_export(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    if args.format == "dot":
        sys.stdout.write(export_dot(g))
    else:
        _emit_graph(g, args.format)
    return 0


def _cmd_catalog(args: argparse.Namespace) -> int:
    try:
        entry = load_catalog(args.name)
    except KeyError as exc:
        raise InputError(str(exc)) from exc
    for i, g in enumerate(entry.graphs, start=1):
        assert validate(g) is None
        print(f"# graph {i}")
        sys.stdout.write(dumps_cycles(g))
    if entry.witness is not None:
        print("# witness")
        sys.stdout.write(dumps_witness(entry.witness))
        ok = verify_witness(entry.graphs[0], entry.graphs[1], entry.witness)
        print(f"# witness verifies: {ok}")
    if entry.group_data is not None:
        data = entry.group_data
        print("# generators")
        for gen in data.generators:
            print(f"#   {gen.encode()}")
        print(f"# subgroup words: {[list(w) for w in data.subgroup_words]}")
        print(f"# character:      {list(data.character)}")
        print(f"# hat words:      {[list(w) for w in data.hat_subgroup_words]}")
        print(f"# hat character:  {list(data.hat_character)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="looptrans",
        description="Transplantability toolkit for loop-signed edge-coloured graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide transplantability of two graphs")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--witness", help="write the witness matrix to this file")
    p.add_argument("--method", choices=("auto", "group", "orbit"), default="auto")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("invariants", help="fingerprint and spectral report")
    p.add_argument("graph")
    p.add_argument("--max-word", type=int, default=DEFAULT_MAX_WORD)
    p.add_argument("--kron-dim", type=int, default=DEFAULT_KRON_DIM)
    p.add_argument("--kron-pow", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("census", help="class and pair counts for one table row")
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--colors", type=int, required=True)
    p.add_argument("--loops", choices=("mixed", "dirichlet", "neumann"), default="mixed")
    p.add_argument("--treelike", action="store_true")
    p.add_argument("--quilts", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("enumerate", help="stream canonical isomorphism classes")
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--colors", type=int, required=True)
    p.add_argument("--loops", choices=("mixed", "dirichlet", "neumann", "signless"), default="mixed")
    p.add_argument("--treelike", action="store_true")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--out", help="directory for one JSON file per class")
    group.add_argument("--count-only", action="store_true")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("transform", help="apply a generating transform")
    op = p.add_subparsers(dest="operation", required=True)
    for name in ("dual", "copy-color", "omit-color"):
        q = op.add_parser(name)
        q.add_argument("graph")
        if name != "dual":
            q.add_argument("--color", type=int, required=True)
        q.add_argument("--format", choices=("json", "cycles"), default="json")
        q.set_defaults(func=_cmd_transform)
    q = op.add_parser("swap-signs")
    q.add_argument("graph")
    q.add_argument("--colors-list", type=int, nargs="+", required=True)
    q.add_argument("--format", choices=("json", "cycles"), default="json")
    q.set_defaults(func=_cmd_transform)
    q = op.add_parser("braid")
    q.add_argument("graph")
    q.add_argument("--color", type=int, required=True)
    q.add_argument("--conjugator", type=int, required=True)
    q.add_argument("--format", choices=("json", "cycles"), default="json")
    q.set_defaults(func=_cmd_transform)
    q = op.add_parser("add-color")
    q.add_argument("graph")
    q.add_argument("--sign", choices=("D", "N"), required=True)
    q.add_argument("--format", choices=("json", "cycles"), default="json")
    q.set_defaults(func=_cmd_transform)
    q = op.add_parser("cross")
    q.add_argument("graph")
    q.add_argument("second")
    q.add_argument("--format", choices=("json", "cycles"), default="json")
    q.set_defaults(func=_cmd_transform)
    q = op.add_parser("substitute")
    q.add_argument("plan", help="JSON plan: host, substituent, assignment")
    q.add_argument("--format", choices=("json", "cycles"), default="json")
    q.set_defaults(func=_cmd_transform)

    p = sub.add_parser("schreier", help="Schreier coset graph from group data")
    p.add_argument("--generators", required=True, help="graph file; colours are the generators")
    p.add_argument("--subgroup", required=True, help="comma-separated words, e.g. 'e,1,21211,2121'")
    p.add_argument("--character", required=True, help="comma-separated +-1 values")
    p.add_argument("--format", choices=("json", "cycles"), default="json")
    p.set_defaults(func=_cmd_schreier)

    p = sub.add_parser("export", help="write a graph in dot or json form")
    p.add_argument("graph")
    p.add_argument("--format", choices=("dot", "json", "cycles"), default="dot")
    p.set_defaults(func=_cmd_export)

    p = sub.add_parser("catalog", help="print an embedded fixture")
    p.add_argument("name", choices=CATALOG_NAMES)
    p.set_defaults(func=_cmd_catalog)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        InputError,
        GraphFormatError,
        NoSignPartition,
        NotNormalizable,
        NoBipartiteSystem,
        ClosureCapExceeded,
        GroupCapExceeded,
        ValueError,
        KeyError,
        json.JSONDecodeError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
