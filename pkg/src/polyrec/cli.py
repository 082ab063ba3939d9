"""Command-line interface: ``polyrec info|reconstruct|compare|verify|catalogue``.

File formats (UTF-8 JSON, one document per file):

* graph file: ``{"n": 6, "edges": [[0, 1], ...], "d": 3}`` (``d`` optional)
* incidence file: ``{"d": 3, "n": 6, "facets": [[0, 1, 2], ...]}``

Exit codes: 0 ok/same, 1 different or failed suite, 2 parse or usage
error, 3 graph not covered, 4 validation failed, 5 orientation budget
exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import catalogue
from .core import (
    Graph,
    VertexFacetIncidence,
    are_equivalent,
    balinski_check,
    build_lattice,
    graph_of,
    graphs_isomorphic,
    k_skeleton,
    skeletons_isomorphic,
    stats,
)
from .errors import (
    BudgetExceeded,
    ParseError,
    PolytopeError,
    RankMismatch,
    RankOutOfRange,
    UnknownFixture,
    UnknownSuite,
    ValidationFailed,
    BadDimension,
    BadIndex,
)
from .reconstruct import DEFAULT_MAX_ORIENTATIONS, CoverageVerdict, reconstruct
from .structure import pyramid_decompose
from .verify import SUITES, run_suite

EXIT_OK, EXIT_DIFFERENT, EXIT_PARSE, EXIT_NOT_COVERED, EXIT_VALIDATION, EXIT_BUDGET = range(6)


# ---------------------------------------------------------------------------
# file formats

def _int(x, what) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(f"{what} must be an integer, got {x!r}")
    return x


def _int_list(x, what) -> list:
    if not isinstance(x, list):
        raise ParseError(f"{what} must be a list, got {x!r}")
    return [_int(v, what) for v in x]


def parse_document(text: str):
    """Parse a graph or incidence document.

    Returns ``("graph", Graph, d_or_None)`` or ``("incidence", vfi, d)``.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top-level JSON value must be an object")
    if "facets" in doc:
        d, n = _int(doc.get("d"), "d"), _int(doc.get("n"), "n")
        if not isinstance(doc["facets"], list):
            raise ParseError("facets must be a list")
        facets = [_int_list(f, "facet") for f in doc["facets"]]
        for f in facets:
            if any(not 0 <= v < n for v in f) or len(set(f)) != len(f):
                raise ParseError(f"facet {f} has repeated or out-of-range vertices")
        return "incidence", VertexFacetIncidence(d, n, tuple(frozenset(f) for f in facets)), d
    if "edges" in doc:
        n = _int(doc.get("n"), "n")
        d = _int(doc["d"], "d") if doc.get("d") is not None else None
        if not isinstance(doc["edges"], list):
            raise ParseError("edges must be a list")
        edges = [tuple(_int_list(e, "edge")) for e in doc["edges"]]
        for e in edges:
            if len(e) != 2 or not 0 <= e[0] < e[1] < n:
                raise ParseError(f"edge {list(e)} must be [i, j] with 0 <= i < j < n")
        if len(set(edges)) != len(edges):
            raise ParseError("duplicate edges")
        return "graph", Graph(n, edges), d
    raise ParseError("document has neither 'facets' nor 'edges'")


def load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_document(text)


def _rows(key: str, rows) -> str:
    body = ",\n".join("    " + json.dumps(list(r)) for r in rows)
    return f'  "{key}": [\n{body}\n  ]' if rows else f'  "{key}": []'


def dump_incidence(vfi: VertexFacetIncidence) -> str:
    facets = sorted(sorted(f) for f in vfi.facets)
    return "{\n" + f'  "d": {vfi.d},\n  "n": {vfi.n},\n' + _rows("facets", facets) + "\n}\n"


def dump_graph(g: Graph, d=None) -> str:
    head = f'  "n": {g.n},\n'
    if d is not None:
        head += f'  "d": {d},\n'
    return "{\n" + head + _rows("edges", g.sorted_edges()) + "\n}\n"


def _as_graph(kind, obj):
    return obj if kind == "graph" else graph_of(build_lattice(obj))


def _dimension(args_d, file_d):
    d = args_d if args_d is not None else file_d
    if d is None:
        raise ParseError("dimension unknown: pass --d or include \"d\" in the graph file")
    return d


def _fmt_set(s) -> str:
    return "{" + ", ".join(str(v) for v in sorted(s)) + "}"


# ---------------------------------------------------------------------------
# commands

def cmd_info(args, out) -> int:
    kind, obj, file_d = load(args.path)
    d = _dimension(args.d, file_d)
    g = _as_graph(kind, obj)
    s = stats(g, d)
    head = f"f₀={g.n}"
    if kind == "incidence":
        head += f", facets={len(obj.facets)}"
    out.write(f"{head}, ξ={s.xi}, nonsimple={_fmt_set(s.nonsimple)}\n")
    out.write(f"d: {d}\n")
    if kind == "incidence":
        f = build_lattice(obj).f_vector
        out.write("f-vector: (" + ", ".join(map(str, f)) + ")\n")
    else:
        out.write(f"f-vector: ({s.f[0]}, {s.f[1]}, ...)\n")
    out.write("degrees: " + " ".join(map(str, sorted(g.degrees))) + "\n")
    if kind == "incidence":
        dec = pyramid_decompose(obj)
        if dec.fold:
            apexes = ", ".join(map(str, dec.apexes))
            out.write(f"pyramid: fold ≥ {dec.fold} (apexes {apexes}; base has {dec.base.n} vertices)\n")
        else:
            out.write("pyramid: not a pyramid\n")
    else:
        out.write(f"pyramid: {_graph_pyramid(g, d)}\n")
    out.write(f"balinski: {'ok' if balinski_check(g, d) else 'fails'} ({d}-connected)\n")
    return EXIT_OK


def _graph_pyramid(g: Graph, d: int) -> str:
    if len(stats(g, d).nonsimple) >= d:
        return "undetermined from the graph (nonsimple count ≥ d)"
    fold, current, dim = 0, g, d
    while dim >= 3:
        apex = next((v for v, deg in enumerate(current.degrees) if deg == current.n - 1), None)
        if apex is None:
            break
        current, dim, fold = current.remove_vertex(apex), dim - 1, fold + 1
    return f"fold ≥ {fold}" if fold else "not a pyramid"


def cmd_reconstruct(args, out) -> int:
    kind, obj, file_d = load(args.path)
    d = _dimension(args.d, file_d)
    g = _as_graph(kind, obj)
    res = reconstruct(g, d, max_orientations=args.max_orientations)
    if isinstance(res, CoverageVerdict):
        out.write(json.dumps({"covered": False, "reason": res.reason}, ensure_ascii=False,
                             indent=2) + "\n")
        return EXIT_NOT_COVERED
    out.write(dump_incidence(res.to_incidence()))
    return EXIT_OK


def cmd_compare(args, out) -> int:
    ka, a, da = load(args.path_a)
    kb, b, db = load(args.path_b)
    mode = args.mode
    if mode == "graph":
        same = graphs_isomorphic(_as_graph(ka, a), _as_graph(kb, b)) is not None
        word = "isomorphic"
    elif mode == "lattice" or mode.startswith("skeleton:"):
        if ka != "incidence" or kb != "incidence":
            raise ParseError(f"mode {mode} needs two incidence files")
        if mode == "lattice":
            same = are_equivalent(a, b) is not None
            word = "equivalent"
        else:
            try:
                k = int(mode.split(":", 1)[1])
            except ValueError as exc:
                raise ParseError(f"bad skeleton rank in {mode!r}") from exc
            sa = k_skeleton(build_lattice(a), k)
            sb = k_skeleton(build_lattice(b), k)
            same = skeletons_isomorphic(sa, sb)
            word = f"{k}-skeletons isomorphic"
    else:
        raise ParseError(f"unknown mode {mode!r}")
    out.write(f"{'same' if same else 'different'}: {word if same else 'not ' + word}\n")
    return EXIT_OK if same else EXIT_DIFFERENT


def cmd_verify(args, out) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    ok = True
    for name in names:
        rep = run_suite(name)
        out.write(f"== {name}: {'PASS' if rep.passed else 'FAIL'} ({len(rep.checks)} checks)\n")
        for line in rep.lines():
            out.write(line + "\n")
        ok &= rep.passed
    return EXIT_OK if ok else EXIT_DIFFERENT


def cmd_catalogue(args, out) -> int:
    if args.list:
        for name, (_, arity) in sorted(catalogue.CONSTRUCTORS.items()):
            out.write(f"{name} ({arity} parameter{'s' if arity != 1 else ''})\n")
        return EXIT_OK
    if not args.name:
        raise ParseError("catalogue needs a fixture name (or --list)")
    vfi = catalogue.by_name(args.name, *args.params, pyramids=args.pyramids)
    if args.graph:
        out.write(dump_graph(graph_of(build_lattice(vfi)), vfi.d))
    else:
        out.write(dump_incidence(vfi))
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polyrec", description="Polytope reconstruction from graphs.")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", help="summary of a graph or incidence file")
    s.add_argument("path")
    s.add_argument("--d", type=int)
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("reconstruct", help="facets from a graph file")
    s.add_argument("path")
    s.add_argument("--d", type=int)
    s.add_argument("--max-orientations", type=int, default=DEFAULT_MAX_ORIENTATIONS,
                   help=f"search step budget (default {DEFAULT_MAX_ORIENTATIONS})")
    s.set_defaults(func=cmd_reconstruct)

    s = sub.add_parser("compare", help="compare two files")
    s.add_argument("path_a")
    s.add_argument("path_b")
    s.add_argument("--mode", default="graph", help="graph, lattice or skeleton:k")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("verify", help="run a property suite")
    s.add_argument("--suite", required=True, help=f"one of: {', '.join(SUITES)}, all")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("catalogue", help="emit a catalogue fixture")
    s.add_argument("name", nargs="?")
    s.add_argument("params", nargs="*", type=int)
    s.add_argument("--pyramids", type=int, default=0, help="take r-fold pyramid")
    s.add_argument("--graph", action="store_true", help="emit the graph file instead")
    s.add_argument("--list", action="store_true", help="list constructor names")
    s.set_defaults(func=cmd_catalogue)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, out)
    except (ParseError, UnknownSuite, UnknownFixture, BadDimension, BadIndex,
            RankMismatch, RankOutOfRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"error: orientation budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValidationFailed, PolytopeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
