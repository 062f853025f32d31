"""Command-line interface: ``gkm <command> ...``.

Exit codes: 0 on success, 1 when a computation or validation fails, 2 for
unreadable or malformed input.  Failures print ``{"error": ..., "detail": ...}``.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import canon, cutspace, gkm, localindex
from .charring import CohPolynomial, parse_element

PIPELINES = ("global-xi", "vertex-circles", "cohomology")


class InputError(Exception):
    """Bad input; maps to exit code 2."""


class DomainError(Exception):
    """Well-formed input the computation rejects; maps to exit code 1."""


def _xi_arg(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _load_json(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _load_graph(args) -> tuple[gkm.GkmGraph, gkm.Polarization | None]:
    try:
        g, pol = gkm.graph_from_json(_load_json(args.graph))
    except gkm.GraphFormatError as exc:
        raise InputError(str(exc)) from exc
    if getattr(args, "xi", None) is not None:
        pol = gkm.Polarization(args.xi, pol.vertex_circles if pol else None)
    return g, pol


def _orientation(args) -> tuple[gkm.GkmGraph, gkm.MorseOrientation]:
    g, pol = _load_graph(args)
    report = gkm.validate_graph(g)
    if not report:
        raise DomainError("InvalidGraph", report.summary())
    if pol is None:
        raise DomainError("MissingPolarization", "the graph has no xi and none was given with --xi")
    pipeline = args.pipeline or ("vertex-circles" if pol.vertex_circles else "global-xi")
    if pipeline == "global-xi":
        pol = pol.global_only()
    elif pipeline == "vertex-circles" and not pol.vertex_circles:
        raise DomainError("MissingVertexCircles", "the graph carries no vertex circles")
    args.pipeline = pipeline
    return g, gkm.orient(g, pol)


def _load_class(args, g: gkm.GkmGraph):
    if not args.class_file:
        raise InputError("this command needs --class")
    doc = _load_json(args.class_file)
    if args.pipeline != "cohomology":
        try:
            return gkm.class_from_json(doc, g)
        except gkm.GraphFormatError as exc:
            raise InputError(str(exc)) from exc
    if not isinstance(doc, dict) or set(doc) != set(g.vertices):
        raise InputError("a class document must map every vertex name to a value")
    try:
        return {v: parse_element(str(doc[v]), g.rank, CohPolynomial) for v in g.vertices}
    except (ValueError, TypeError) as exc:
        raise InputError(f"bad cohomology class: {exc}") from exc


def _text(chi) -> dict[str, str]:
    return {v: str(c) for v, c in chi.items()}


def _need_k(args, what: str):
    if args.pipeline == "cohomology":
        raise DomainError("UnsupportedPipeline", f"{what} is available for the K-theory pipelines only")


# ------------------------------------------------------------------ commands


def cmd_validate(args):
    g, pol = _load_graph(args)
    report = gkm.validate_graph(g)
    out = report.to_json()
    out["summary"] = report.summary()
    if not report:
        return out, 1
    if pol is not None:
        try:
            gkm.orient(g, pol)
            out["orientable"] = True
        except (gkm.GenericityViolation, gkm.CyclicAscent, gkm.BadVertexCircle) as exc:
            out["orientable"] = False
            out["violations"].append({"code": type(exc).__name__, "detail": str(exc)})
            return out, 1
    return out, 0


def cmd_orient(args):
    _, o = _orientation(args)
    return o.to_json(), 0


def cmd_index(args):
    g, o = _orientation(args)
    a = _load_class(args, g)
    if args.pipeline == "cohomology":
        return _text(localindex.coh_total_index(g, o, a)), 0
    return _text(localindex.total_index(g, o, a)), 0


def cmd_tau(args):
    g, o = _orientation(args)
    if args.vertex not in g.vertices:
        raise DomainError("UnknownVertex", args.vertex)
    if args.pipeline == "cohomology":
        return _text(canon.coh_tau(g, o, args.vertex)), 0
    return _text(canon.tau(g, o, args.vertex)), 0


def cmd_basis(args):
    g, o = _orientation(args)
    b = canon.coh_basis(g, o) if args.pipeline == "cohomology" else canon.basis(g, o)
    return {p: _text(b.classes[p]) for p in o.order}, 0


def cmd_decompose(args):
    g, o = _orientation(args)
    _need_k(args, "decompose")
    a = _load_class(args, g)
    return _text(canon.decompose(g, o, canon.basis(g, o), a)), 0


def cmd_paths(args):
    g, o = _orientation(args)
    _need_k(args, "paths")
    if o.polarization.vertex_circles:
        raise DomainError("UnsupportedPipeline", "the path formula uses the global circle; pass --pipeline global-xi")
    p = args.vertex
    if p not in g.vertices:
        raise DomainError("UnknownVertex", p)
    targets = [args.to] if args.to else [q for q in o.order if q in o.reachable(p)]
    out = {}
    for q in targets:
        if q not in g.vertices:
            raise DomainError("UnknownVertex", q)
        paths = gkm.ascending_paths(g, o, p, q, args.cap)
        out[q] = {
            "count": len(paths),
            "paths": [[p] + [e.target for e in path] for path in paths],
            "value": str(canon.tau_via_paths(g, o, p, q, args.cap)),
        }
    return out, 0


def cmd_cutindex(args):
    g, o = _orientation(args)
    _need_k(args, "cutindex")
    a = _load_class(args, g)
    return {p: str(cutspace.cut_index(g, o, a, p)) for p in o.order}, 0


def cmd_gen(args):
    if args.model == "cpn":
        if len(args.params) != 1:
            raise DomainError("BadParameters", "cpn takes one parameter m")
        m = args.params[0]
        g = gkm.gen_cpn(m)
        doc = gkm.graph_to_json(g, gkm.cpn_polarization(m))
    else:
        if len(args.params) != 2:
            raise DomainError("BadParameters", "grassmannian takes two parameters k n")
        k, n = args.params
        g, circles = gkm.gen_grassmannian(k, n)
        doc = gkm.graph_to_json(g, gkm.grassmannian_polarization(n, circles))
    return doc, 0


COMMANDS = {
    "validate": cmd_validate,
    "orient": cmd_orient,
    "index": cmd_index,
    "tau": cmd_tau,
    "basis": cmd_basis,
    "decompose": cmd_decompose,
    "paths": cmd_paths,
    "cutindex": cmd_cutindex,
    "gen": cmd_gen,
}


# ------------------------------------------------------------------- output


def _table(doc: Any) -> str:
    rows: list[tuple[str, str]] = []

    def walk(prefix: str, x):
        if isinstance(x, dict):
            for k in sorted(x):
                walk(f"{prefix} {k}".strip(), x[k])
        elif isinstance(x, list) and x and all(isinstance(y, (dict, list)) for y in x):
            for i, y in enumerate(x):
                walk(f"{prefix}[{i}]", y)
        else:
            rows.append((prefix, json.dumps(x) if not isinstance(x, str) else x))

    walk("", doc)
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def render(doc: Any, fmt: str) -> str:
    if fmt == "table":
        return _table(doc)
    return json.dumps(doc, indent=2, sort_keys=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gkm", description="Equivariant K-theory on GKM graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_cmd(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("graph", help="graph JSON file")
        p.add_argument("--xi", type=_xi_arg, help="override the global circle, e.g. 1,2")
        p.add_argument("--pipeline", choices=PIPELINES, help="default: vertex-circles if present, else global-xi")
        p.add_argument("--format", choices=("json", "table"), default="json")
        p.add_argument("--out", help="write output here instead of stdout")
        return p

    graph_cmd("validate", "check the graph axioms and orientability")
    graph_cmd("orient", "topological order and descending data")
    for name, help_ in (("index", "local indices of a class"), ("decompose", "coefficients in the canonical basis"),
                        ("cutindex", "local indices on the weighted projective models")):
        graph_cmd(name, help_).add_argument("--class", dest="class_file", required=True, help="class JSON file")
    graph_cmd("tau", "canonical class at a vertex").add_argument("--vertex", required=True)
    graph_cmd("basis", "all canonical classes")
    p = graph_cmd("paths", "path-formula values of tau_p")
    p.add_argument("--vertex", required=True)
    p.add_argument("--to", help="single target vertex")
    p.add_argument("--cap", type=int, default=10_000, help="maximum number of paths per pair")

    g = sub.add_parser("gen", help="generate a model graph")
    g.add_argument("model", choices=("cpn", "grassmannian"))
    g.add_argument("params", type=int, nargs="+")
    g.add_argument("--format", choices=("json", "table"), default="json")
    g.add_argument("--out")
    return parser


def _error(code: str, detail: str) -> dict:
    return {"error": code, "detail": detail}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "cap", 1) < 1:
        parser.error("--cap must be at least 1")
    try:
        doc, code = COMMANDS[args.command](args)
    except InputError as exc:
        doc, code = _error("ParseError", str(exc)), 2
    except DomainError as exc:
        doc, code = _error(*exc.args), 1
    except (ValueError, ArithmeticError, RuntimeError, KeyError) as exc:
        doc, code = _error(type(exc).__name__, str(exc)), 1
    text = render(doc, args.format) + "\n"
    if code == 0 and args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            sys.stdout.write(render(_error("WriteError", str(exc)), "json") + "\n")
            return 2
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
