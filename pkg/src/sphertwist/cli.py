"""Command-line entry point: ``sphertwist <command> ...``.

Exit codes: 0 ok, 1 soundness violation, 2 usage or schema error,
3 invariant failure, 4 objects not distinct, 5 precondition failed.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .dg import iso_up_to_shift
from .dualnum import ADModule, decompose
from .errors import InvalidParameter, SchemaError, SphertwistError, ZeroPower
from .fuzz import DEFAULT_EXPONENTS, SweepConfig, sweep
from .groups import DEFAULT_SIZE_CAP, DEFAULT_WORD_LENGTH, classify_pair, pingpong_verify
from .linalg import parse_field
from .spherical import intersection_number, twist, twist_power
from .zigzag import MultiGraph, build_zigzag, projective_spherical

TARGET = re.compile(r"^\s*(?:P(?P<p>[^()\s]+)|T(?P<v>[^()\s]+)\(P(?P<w>[^()\s]+)\))\s*$")


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON: {exc}") from exc
    except OSError as exc:
        raise InvalidParameter(f"cannot read {path}: {exc.strerror}") from exc


def _field(args):
    if args.field is None:
        return None
    try:
        return parse_field(args.field)
    except ValueError as exc:
        raise InvalidParameter(str(exc)) from exc


def _vertex(g: MultiGraph, label: str):
    for v in g.vertices:
        if str(v) == str(label):
            return v
    raise InvalidParameter(f"unknown vertex {label!r}; the graph has {[str(v) for v in g.vertices]}")


def _load_graph(args):
    g = MultiGraph.from_json(_read_json(args.graph))
    if not g.vertices:
        raise SchemaError("the graph has no vertices")
    return g, build_zigzag(g, _field(args))


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True)


# -- commands ----------------------------------------------------------------


def cmd_decompose(args) -> int:
    m = ADModule.from_json(_read_json(args.module), _field(args))
    report = decompose(m)
    _emit(args, _dump(report.to_json()) if args.format == "json" else report.format())
    return 0


def _parse_target(g, alg, text, spheres):
    match = TARGET.match(text)
    if not match:
        raise InvalidParameter(f"target must look like P2 or T1(P2), got {text!r}")
    if match["p"] is not None:
        return spheres[_vertex(g, match["p"])].obj
    return twist(spheres[_vertex(g, match["v"])], spheres[_vertex(g, match["w"])].obj)


def cmd_twist(args) -> int:
    if args.k == 0:
        raise ZeroPower("k must be nonzero")
    g, alg = _load_graph(args)
    v = _vertex(g, args.vertex)
    spheres = {w: projective_spherical(alg, w) for w in g.vertices}
    target_text = args.target or f"P{v}"
    target = _parse_target(g, alg, target_text, spheres)
    out = twist_power(spheres[v], args.k, target)
    iso = iso_up_to_shift(target, out)
    profiles = {f"P{w}": intersection_number(out, spheres[w].obj) for w in g.vertices}
    if args.format == "json":
        _emit(
            args,
            _dump(
                {
                    "vertex": str(v),
                    "k": args.k,
                    "target": target_text,
                    "object": out.to_json(),
                    "shift": None if iso is None else iso.shift,
                    "profiles": {name: {"total": p.total, "per_degree": p.to_json()} for name, p in profiles.items()},
                }
            ),
        )
        return 0
    lines = [f"T_P{v}^{args.k}({target_text}): {out.size} summands"]
    lines += [f"  P{alg.vertex_labels[w]}[{t}]" for w, t in out.summands()]
    lines.append("shift report: " + ("none" if iso is None else f"[{iso.shift}]"))
    lines.append("intersection profiles:")
    for name, p in profiles.items():
        per = ", ".join(f"{deg}:{dim}" for deg, dim in p.to_json())
        lines.append(f"  i(-, {name}) = {p.total}  {{{per}}}")
    _emit(args, "\n".join(lines))
    return 0


def cmd_classify(args) -> int:
    g, alg = _load_graph(args)
    e1 = projective_spherical(alg, _vertex(g, args.v))
    e2 = projective_spherical(alg, _vertex(g, args.w))
    result = classify_pair(e1, e2, args.max_word_len, args.size_cap)
    _emit(args, _dump(result.to_json()) if args.format == "json" else result.summary())
    if result.kind == "Free" and not result.witness["certificate"].certified:
        return 1
    return 0


def cmd_fuzz(args) -> int:
    cfg = SweepConfig(
        max_vertices=args.max_vertices,
        max_edges=args.max_edges,
        exponents=tuple(args.exponents),
        seed=args.seed,
        twisted_sources=args.twisted_sources,
        only_disjoint=args.only_disjoint,
    )
    if any(k == 0 for k in cfg.exponents):
        raise ZeroPower("exponents must be nonzero")
    if cfg.max_vertices < 1 or cfg.max_edges < 0:
        raise InvalidParameter("need at least one vertex and a non-negative edge bound")
    summary = sweep(cfg, _field(args))
    _emit(args, _dump(summary.to_json()) if args.format == "json" else summary.line())
    return 0 if summary.ok else 1


def cmd_pingpong(args) -> int:
    if args.max_word_len < 1:
        raise InvalidParameter("the maximal word length must be at least 1")
    g, alg = _load_graph(args)
    e1 = projective_spherical(alg, _vertex(g, args.v))
    e2 = projective_spherical(alg, _vertex(g, args.w))
    cert = pingpong_verify(e1, args.k1, e2, args.k2, args.max_word_len, args.size_cap)
    if args.out or args.format == "json":
        _emit(args, cert.dumps())
    if not args.out and args.format == "table":
        verdict = "certified" if cert.certified else "not certified"
        print(f"{cert.word_count} words up to length {cert.max_word_length}: {verdict}")
    return 0 if cert.certified else 1


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="'Q' or 'GF:p' (default GF:32003, or the field named in the input)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-word-len", type=int, default=DEFAULT_WORD_LENGTH)
    common.add_argument("--size-cap", type=int, default=DEFAULT_SIZE_CAP, help="abort words whose objects exceed this many summands")
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--out", help="write the result here instead of stdout")

    parser = argparse.ArgumentParser(prog="sphertwist", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[common], help="split a dual-numbers module into B_n[s] summands")
    p.add_argument("module", help="module JSON file")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("twist", parents=[common], help="apply a power of the twist along a vertex projective")
    p.add_argument("graph", help="graph JSON file")
    p.add_argument("vertex")
    p.add_argument("k", type=int)
    p.add_argument("target", nargs="?", help="P<w> or T<v>(P<w>); defaults to the twisting projective")
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("classify", parents=[common], help="commuting, braid or free pair of vertex twists")
    p.add_argument("graph")
    p.add_argument("v")
    p.add_argument("w")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("fuzz-inequality", parents=[common], help="sweep the intersection inequality over all small graphs")
    p.add_argument("--max-vertices", type=int, default=4)
    p.add_argument("--max-edges", type=int, default=5)
    p.add_argument("--exponents", type=int, nargs="+", default=list(DEFAULT_EXPONENTS))
    p.add_argument("--twisted-sources", action="store_true", help="also twist along the single-twist objects")
    p.add_argument("--only-disjoint", action="store_true", help="keep only triples with i(E, M) = 0")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("pingpong", parents=[common], help="write a ping-pong certificate for two vertex twists")
    p.add_argument("graph")
    p.add_argument("v")
    p.add_argument("w")
    p.add_argument("--k1", type=int, default=1)
    p.add_argument("--k2", type=int, default=1)
    p.set_defaults(func=cmd_pingpong)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SphertwistError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
