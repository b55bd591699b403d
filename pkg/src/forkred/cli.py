"""
Command line entry point.

Exit codes: 0 success, 1 a violation or counterexample was found, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import __version__
from .dot import to_dot
from .errors import ParseError, QuiverError
from .formats import dumps_text, extended_to_json, loads, parse_inline_matrix, parse_sequence
from .generators import random_abundant_acyclic, random_cyclic_rank3, random_fork, random_reduced_sequence
from .quiver import ExtendedQuiver, coframe, frame, mutate_seq, sign_of
from .reddening import DEFAULT_DEPTH, compute_ured, general_reddening_fork
from .structure import classify, detect_fork, descent_path, find_fork
from .verifier import (
    bfs_sign_coherence,
    check_no_all_red,
    max_red_search,
    trajectory_precondition,
    verify_trajectory,
)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


def default_depth() -> int:
    raw = os.environ.get("FORKRED_DEPTH_DEFAULT")
    if raw is None:
        return DEFAULT_DEPTH
    try:
        value = int(raw)
    except ValueError:
        raise ParseError(f"FORKRED_DEPTH_DEFAULT must be an integer, got {raw!r}") from None
    if value < 0:
        raise ParseError("FORKRED_DEPTH_DEFAULT must be non-negative")
    return value


def _weights(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None


def _read_input(args) -> ExtendedQuiver:
    if args.matrix is not None:
        q = parse_inline_matrix(args.matrix)
        ext = ExtendedQuiver(q.b, tuple(() for _ in q.b))
    elif args.input is not None:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            try:
                with open(args.input, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise ParseError(f"cannot read {args.input}: {exc.strerror}") from None
        ext = loads(text)
    else:
        raise ParseError("no quiver given; use --input PATH or --matrix 'ROWS'")
    framing = getattr(args, "framing", None)
    if framing == "framed":
        ext = frame(ext.mutable)
    elif framing == "coframed":
        ext = coframe(ext.mutable)
    return ext


def _framed_default(ext: ExtendedQuiver) -> ExtendedQuiver:
    return ext if ext.m else frame(ext.mutable)


def _emit(args, payload: dict, text: str | None = None) -> None:
    if args.format == "text" and text is not None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")


def _color_names(q: ExtendedQuiver) -> dict[str, str]:
    names = {1: "green", -1: "red", 0: "blue", None: "mixed"}
    return {str(v): names[sign_of(q.c[v - 1])] for v in q.vertices}


def cmd_mutate(args) -> int:
    q = _read_input(args)
    w = parse_sequence(args.seq or "")
    out = mutate_seq(q, w)
    if args.format == "dot":
        sys.stdout.write(to_dot(out))
        return EXIT_OK
    cols = _color_names(out)
    text = dumps_text(out) + "# colors: " + " ".join(f"{v}:{c}" for v, c in cols.items())
    _emit(args, {"sequence": list(w), "quiver": extended_to_json(out), "colors": cols}, text)
    return EXIT_OK


def cmd_classify(args) -> int:
    q = _read_input(args).mutable
    cls = classify(q)
    payload = cls.to_json()
    if q.n == 3 and cls.kind == "other":
        path, cyclic = descent_path(q)
        payload["rank3"] = "mutation-cyclic" if cyclic else "mutation-acyclic"
        payload["descent"] = list(path)
    lines = [f"class: {cls.kind}"]
    if cls.ordering is not None:
        lines.append("ordering: " + " ".join(map(str, cls.ordering)))
    if cls.certificate is not None:
        cert = cls.certificate
        lines.append(f"point of return: {cert.r}")
        lines.append("ordering without return: " + " ".join(map(str, cert.ordering)))
        for w in cert.witnesses:
            lines.append(f"  f_{w.j}{w.i} = {w.f_ji} > f_{w.i}{cert.r} = {w.f_ir}, f_{cert.r}{w.j} = {w.f_rj}")
    if "rank3" in payload:
        lines.append(f"rank 3: {payload['rank3']}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_find_fork(args) -> int:
    q = _read_input(args).mutable
    found = find_fork(q, budget=args.budget, seed=args.seed)
    if found is None:
        _emit(args, {"found": False, "budget": args.budget}, f"exhausted after {args.budget} mutations")
        return EXIT_VIOLATION
    payload = {"found": True, "sequence": list(found.sequence), "fork": found.certificate.to_json()}
    text = f"sequence: {' '.join(map(str, found.sequence)) or '(empty)'}\npoint of return: {found.certificate.r}"
    _emit(args, payload, text)
    return EXIT_OK


def _ured_text(report) -> str:
    lines = [f"uRed = {report.ured_value}" + ("" if report.certified else " (lower bound)")]
    for comp in report.components:
        detail = comp.reason or (" ".join(map(str, comp.sequence)) if comp.sequence else f"undecided at depth {comp.depth}")
        lines.append(f"  {{{', '.join(map(str, comp.vertices))}}}: {comp.status}  {detail}")
    return "\n".join(lines)


def cmd_redden(args) -> int:
    ext = _read_input(args)
    if detect_fork(ext.mutable) is not None:
        res = general_reddening_fork(_framed_default(ext))
        text = (
            f"sequence: {' '.join(map(str, res.sequence))}\n"
            f"length: {len(res.sequence)} (bound {res.length_bound})\n"
            f"red vertices: {res.red_count} of {res.final.n}"
        )
        _emit(args, {"kind": "fork", **res.to_json()}, text)
        return EXIT_OK
    report = compute_ured(ext.mutable, depth=args.depth)
    _emit(args, {"kind": "ured", **report.to_json()}, _ured_text(report))
    return EXIT_OK


def cmd_ured(args) -> int:
    report = compute_ured(_read_input(args).mutable, depth=args.depth, seed=args.seed)
    _emit(args, report.to_json(), _ured_text(report))
    return EXIT_OK


def cmd_verify(args) -> int:
    q = _framed_default(_read_input(args))
    rng = random.Random(args.seed)
    if args.seq:
        w = parse_sequence(args.seq)
        if not w:
            raise ParseError("--seq must not be empty for verify")
        runs = [(w[0], w)]
    else:
        starts = [v for v in q.vertices if trajectory_precondition(q, v, args.mode) is None]
        if not starts:
            raise QuiverError(f"no vertex of the input satisfies the {args.mode} preconditions")
        runs = []
        for _ in range(args.samples):
            v = rng.choice(starts)
            runs.append((v, random_reduced_sequence(q.vertices, rng.randint(1, args.length), rng, first=v)))
    reports = [verify_trajectory(q, v, w, args.mode) for v, w in runs]
    bad = [r for r in reports if not r.ok]
    if args.format == "jsonl":
        for rep in reports:
            for rec in rep.records:
                sys.stdout.write(json.dumps({"sequence": list(rep.sequence), **rec.to_json()}) + "\n")
    else:
        summary = {
            "mode": args.mode,
            "trajectories": len(reports),
            "prefixes": sum(len(r.records) for r in reports),
            "violations": sum(len(r.violations) for r in reports),
            "failing": [r.to_json() for r in bad[:5]],
        }
        text = f"{summary['trajectories']} trajectories, {summary['prefixes']} prefixes, {summary['violations']} violations"
        _emit(args, summary, text)
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_explore(args) -> int:
    ext = _read_input(args)
    if args.mode == "rank3":
        verdict = check_no_all_red(ext.mutable, args.depth)
        payload = verdict.to_json()
        text = f"{verdict.kind} at depth {verdict.depth}: {verdict.nodes} nodes, {len(verdict.violations)} violations"
        _emit(args, payload, text)
        return EXIT_VIOLATION if verdict.kind == "all-red" or verdict.violations else EXIT_OK
    q = _framed_default(ext)
    verdict = bfs_sign_coherence(q, args.depth, snapshot=args.snapshot, resume=args.resume, max_nodes=args.max_nodes)
    payload = verdict.to_json()
    if args.max_red:
        best, witness, _ = max_red_search(q, args.depth, max_nodes=args.max_nodes)
        payload["max_red"] = best
        payload["max_red_witness"] = list(witness)
    text = f"{verdict.kind}: depth {verdict.depth}, {verdict.nodes} nodes, {verdict.edges} edges"
    if args.max_red:
        text += f", max red {payload['max_red']}"
    _emit(args, payload, text)
    return EXIT_VIOLATION if verdict.kind == "violated" else EXIT_OK


def cmd_dot(args) -> int:
    sys.stdout.write(to_dot(_read_input(args)))
    return EXIT_OK


def cmd_gen(args) -> int:
    lo, hi = args.weights
    if args.mode == "rank3":
        q = random_cyclic_rank3(lo, hi, args.seed)
    elif args.mode == "fork":
        q = random_fork(args.n, lo, hi, args.seed)
    else:
        q = random_abundant_acyclic(args.n, lo, hi, args.seed)
    ext = ExtendedQuiver(q.b, tuple(() for _ in q.b))
    if args.format == "text":
        sys.stdout.write(dumps_text(ext))
    elif args.format == "dot":
        sys.stdout.write(to_dot(q))
    else:
        sys.stdout.write(json.dumps(extended_to_json(ext)) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="forkred", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--input", "-i", help="quiver file (JSON or text), '-' for stdin")
    source.add_argument("--matrix", help="inline exchange matrix, rows separated by ';'")
    group = source.add_mutually_exclusive_group()
    group.add_argument("--frame", dest="framing", action="store_const", const="framed", help="replace C by the identity")
    group.add_argument("--coframe", dest="framing", action="store_const", const="coframed", help="replace C by minus the identity")

    def add(name, func, help_, formats=("json", "text"), **kw):
        p = sub.add_parser(name, parents=[source], help=help_, **kw)
        p.add_argument("--format", choices=formats, default=formats[0])
        p.set_defaults(func=func)
        return p

    p = add("mutate", cmd_mutate, "apply a mutation sequence", formats=("text", "json", "dot"))
    p.add_argument("--seq", default="", help="comma separated 1-based vertices")

    add("classify", cmd_classify, "acyclic / abundant / fork classification", formats=("text", "json"))

    p = add("find-fork", cmd_find_fork, "search for a mutation sequence reaching a fork", formats=("text", "json"))
    p.add_argument("--budget", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)

    p = add("redden", cmd_redden, "general reddening sequence for a fork (uRed table otherwise)", formats=("text", "json"))
    p.add_argument("--depth", type=int, default=None)

    p = add("ured", cmd_ured, "unrestricted red size from connected components", formats=("text", "json"))
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)

    p = add("verify", cmd_verify, "check the sign conditions along trajectories", formats=("text", "json", "jsonl"))
    p.add_argument("--mode", choices=("fork", "acyclic", "rank3"), default="fork")
    p.add_argument("--seq", default=None, help="single sequence (its first entry is the start vertex)")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--length", type=int, default=15)
    p.add_argument("--seed", type=int, default=0)

    p = add("explore", cmd_explore, "bounded breadth-first search of the labelled class", formats=("text", "json"))
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--mode", choices=("fork", "acyclic", "rank3"), default=None,
                   help="rank3: search the framing for all-red states")
    p.add_argument("--snapshot", default=None, help="JSONL file recording visited nodes")
    p.add_argument("--resume", action="store_true", help="continue from --snapshot")
    p.add_argument("--max-nodes", type=int, default=None)
    p.add_argument("--max-red", action="store_true", help="also report the largest red count found")
    p.add_argument("--seed", type=int, default=0)

    add("dot", cmd_dot, "Graphviz rendering", formats=("dot",))

    p = sub.add_parser("gen", help="random quiver")
    p.add_argument("--mode", choices=("acyclic", "rank3", "fork"), default="acyclic")
    p.add_argument("-n", type=int, default=4)
    p.add_argument("--weights", type=_weights, default=(2, 5), metavar="LO..HI")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "text", "dot"), default="json")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "depth", 0) is None:
            args.depth = default_depth()
        if getattr(args, "depth", 0) < 0:
            raise ParseError("--depth must be non-negative")
        if getattr(args, "resume", False) and not args.snapshot:
            raise ParseError("--resume requires --snapshot")
        return args.func(args)
    except (ParseError, QuiverError) as exc:
        print(f"forkred {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
