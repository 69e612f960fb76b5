"""Command-line front end.

Graphs are read as edge lists: one ``u v [w]`` per line, ``#`` starts a
comment, ``w`` is an integer or ``p/q`` and defaults to 1. With no path the
graph is read from stdin, so ``diricci gen --name triforce | diricci ricci``
works. Exit codes: 0 success, 1 a check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Iterable, Iterator, Optional, TextIO

from .curvature import Geometry, curvature_report, ricci_bruteforce, ricci_eps_limit
from .errors import DiricciError, GraphError, ParseError
from .generators import from_name
from .graph import DiGraph, build_graph, is_eulerian
from .products import (
    cartesian_product,
    make_spec,
    maxdiam_product_equivalence,
    predicted_constants,
    predicted_distance,
    predicted_mean_curvatures,
    predicted_ricci,
)
from .rigidity import bonnet_myers, cheng_verify, is_spherically_suspended, pairwise_diameter_violations
from .spectral import spectrum

EXIT_OK, EXIT_CHECK_FAILED, EXIT_BAD_INPUT = 0, 1, 2

_WEIGHT = re.compile(r"^\d+(/\d+)?$")


class UsageError(Exception):
    pass


def parse_weight(token: str, line: int) -> Fraction:
    if not _WEIGHT.match(token):
        raise ParseError(line, f"weight must be a positive integer or p/q, got {token!r}")
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise ParseError(line, f"zero denominator in {token!r}") from None


def _edges(lines: Iterable[str], where: list[int]) -> Iterator[tuple]:
    for number, raw in enumerate(lines, start=1):
        where[0] = number
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        tokens = text.split()
        if len(tokens) == 2:
            yield tokens[0], tokens[1]
        elif len(tokens) == 3:
            yield tokens[0], tokens[1], parse_weight(tokens[2], number)
        else:
            raise ParseError(number, f"expected 'u v [w]', got {text!r}")
    where[0] = None


def parse_graph_text(text: str) -> DiGraph:
    """Build a graph from edge-list text.

    Errors raised by graph validation while a line is being consumed
    (self-loop, duplicate edge, bad weight) carry that line number in a
    ``line`` attribute; whole-graph errors such as missing strong
    connectivity have ``line = None``.
    """
    where: list[Optional[int]] = [None]
    try:
        return build_graph(_edges(text.splitlines(), where))
    except ParseError:
        raise
    except GraphError as exc:
        exc.line = where[0]
        raise


def parse_graph_file(path: Optional[str] = None) -> DiGraph:
    """Read an edge-list file, or stdin when ``path`` is None or ``-``."""
    if path in (None, "-"):
        return parse_graph_text(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_graph_text(fh.read())


def format_graph(g: DiGraph) -> str:
    """Edge-list text for ``g``; unit weights are left implicit.

    Edges are grouped by their later endpoint, so re-parsing keeps the
    vertex order whenever each vertex is adjacent to an earlier one (true
    for every connected labelling produced by the generators).
    """
    edges = sorted(g.edges(), key=lambda e: (max(e), e))
    lines = []
    for i, j in edges:
        u, v, w = g.vertices[i], g.vertices[j], g.weights[i][j]
        lines.append(f"{u} {v}\n" if w == 1 else f"{u} {v} {w}\n")
    return "".join(lines)


def rational(q) -> dict:
    """JSON form of an exact value: the ``p/q`` string and a float derived from it."""
    q = Fraction(q)
    return {"exact": f"{q.numerator}/{q.denominator}", "float": float(q)}


def rederive_floats(obj):
    """Recompute every ``float`` field from its ``exact`` sibling (JSON round-trip check)."""
    if isinstance(obj, dict):
        if set(obj) == {"exact", "float"}:
            return {"exact": obj["exact"], "float": float(Fraction(obj["exact"]))}
        return {k: rederive_floats(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [rederive_floats(v) for v in obj]
    return obj


def _dump(report: dict, as_json: bool, text: str, out: TextIO) -> None:
    if as_json:
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        out.write(text)


def cmd_info(args, out: TextIO) -> int:
    geo = Geometry(parse_graph_file(args.graph))
    g = geo.graph
    report = {
        "vertices": list(g.vertices),
        "n": g.n,
        "edges": g.edge_count,
        "eulerian": g.is_unweighted() and is_eulerian(g),
        "diameter": geo.diam,
    }
    text = (
        f"vertices: {' '.join(g.vertices)}\n"
        f"n: {g.n}\nedges: {g.edge_count}\n"
        f"eulerian: {str(report['eulerian']).lower()}\ndiameter: {geo.diam}\n"
    )
    _dump(report, args.json, text, out)
    return EXIT_OK


def _kappa_table(geo: Geometry, pairs: str, method: str) -> list[tuple[int, int, Fraction]]:
    if pairs == "edges":
        todo = list(geo.graph.edges())
    else:
        todo = [(x, y) for x in range(geo.n) for y in range(geo.n) if x != y]
    solver = {"lp": geo.kappa, "eps": lambda x, y: ricci_eps_limit(geo, x, y),
              "brute": lambda x, y: ricci_bruteforce(geo, x, y)}[method]
    return [(x, y, solver(x, y)) for x, y in todo]


def cmd_ricci(args, out: TextIO) -> int:
    geo = Geometry(parse_graph_file(args.graph))
    table = _kappa_table(geo, args.pairs, args.method)
    edges = set(geo.graph.edges())
    K = min(k for x, y, k in table if (x, y) in edges)
    report = {
        "method": args.method,
        "pairs": args.pairs,
        "kappa": [{"x": geo.name(x), "y": geo.name(y), "kappa": rational(k)} for x, y, k in table],
        "K": rational(K),
    }
    text = "".join(f"{geo.name(x)} {geo.name(y)} {str(k)}\n" for x, y, k in table) + f"K = {str(K)}\n"
    _dump(report, args.json, text, out)
    return EXIT_OK


def cmd_mean(args, out: TextIO) -> int:
    geo = Geometry(parse_graph_file(args.graph))
    mean = geo.mean
    report = {
        "mean": [
            {"vertex": geo.name(i), "H": rational(h), "H_rev": rational(hr)}
            for i, (h, hr) in enumerate(zip(mean.H, mean.H_rev))
        ],
        "Lambda": rational(mean.Lambda),
    }
    text = "vertex H H_rev\n" + "".join(
        f"{geo.name(i)} {str(h)} {str(hr)}\n" for i, (h, hr) in enumerate(zip(mean.H, mean.H_rev))
    ) + f"Lambda = {str(mean.Lambda)}\n"
    _dump(report, args.json, text, out)
    return EXIT_OK


def cmd_bounds(args, out: TextIO) -> int:
    geo = Geometry(parse_graph_file(args.graph))
    report_k = curvature_report(geo)
    K, Lambda, diam = geo.K(), geo.Lambda, geo.diam
    violations = pairwise_diameter_violations(report_k)
    report = {"K": rational(K), "Lambda": rational(Lambda), "diameter": diam}
    lines = [f"K = {str(K)}", f"Lambda = {str(Lambda)}"]
    ok = not violations
    if K > 0:
        bm = bonnet_myers(K, Lambda, diam)
        ok &= bm.holds
        report.update(bound=rational(bm.bound), holds=bm.holds, equality=bm.equality)
        lines += [f"Lambda/K = {str(bm.bound)}", f"diameter = {diam}",
                  f"holds: {str(bm.holds).lower()}", f"equality: {str(bm.equality).lower()}"]
    else:
        report.update(bound=None, holds=None, equality=None)
        lines += ["Lambda/K = n/a (K <= 0)", f"diameter = {diam}"]
    report["pairwise_check"] = not violations
    report["pairwise_violations"] = [[geo.name(x), geo.name(y)] for x, y in violations]
    lines.append(f"pairwise diameter check: {'pass' if not violations else 'FAIL'}")
    lines += [f"  violated at {geo.name(x)} {geo.name(y)}" for x, y in violations]
    _dump(report, args.json, "\n".join(lines) + "\n", out)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_maximal(args, out: TextIO) -> int:
    geo = Geometry(parse_graph_file(args.graph))
    v = cheng_verify(geo)
    report = {
        "K": rational(v.K),
        "Lambda": rational(v.Lambda),
        "diameter": v.diam,
        "bound": rational(v.bound) if v.bound is not None else None,
        "is_maximal": v.is_maximal,
        "lambda1": v.lambda1,
        "poles": [list(p) for p in v.poles],
        "suspension": [
            {"poles": list(s.poles), "covered": s.covered, "constant_curvature": s.constant_curvature,
             "extremal_mean": s.extremal_mean}
            for s in v.suspension
        ],
        "checks": v.checks,
        "passed": v.passed,
    }
    lines = [
        f"K = {str(v.K)}", f"Lambda = {str(v.Lambda)}", f"diameter = {v.diam}",
        f"is_maximal: {str(v.is_maximal).lower()}", f"lambda1 = {v.lambda1:.12g}",
    ]
    lines += [f"{name}: {'pass' if ok else 'FAIL'}" for name, ok in v.checks.items()]
    _dump(report, args.json, "\n".join(lines) + "\n", out)
    return EXIT_OK if v.passed else EXIT_CHECK_FAILED


def cmd_suspension(args, out: TextIO) -> int:
    geo = Geometry(parse_graph_file(args.graph))
    poles = args.poles.split(",")
    if len(poles) != 2:
        raise UsageError(f"--poles needs two comma-separated vertices, got {args.poles!r}")
    for p in poles:
        if p not in geo.graph.vertices:
            raise UsageError(f"unknown vertex {p!r}")
    s = is_spherically_suspended(geo, *poles)
    report = {
        "poles": list(s.poles),
        "covered": s.covered,
        "constant_curvature": s.constant_curvature,
        "extremal_mean": s.extremal_mean,
        "suspended": s.passed,
    }
    text = "".join(f"{k}: {str(v).lower()}\n" for k, v in report.items() if k != "poles")
    _dump(report, args.json, text, out)
    return EXIT_OK


def cmd_spectrum(args, out: TextIO) -> int:
    geo = Geometry(parse_graph_file(args.graph))
    s = spectrum(geo.Pm, geo.m)
    K = geo.K()
    report = {
        "eigenvalues": list(s.eigenvalues),
        "lambda1": s.lambda1,
        "K": rational(K),
        "lichnerowicz_margin": s.lambda1 - float(K),
    }
    text = (
        "eigenvalues: " + " ".join(f"{v:.12g}" for v in s.eigenvalues) + "\n"
        f"lambda1 = {s.lambda1:.12g}\nK = {str(K)}\nlambda1 - K = {s.lambda1 - float(K):.3g}\n"
    )
    _dump(report, args.json, text, out)
    return EXIT_OK


def _parse_ratio(token: str, flag: str) -> Fraction:
    try:
        value = Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{flag} must be a positive rational, got {token!r}") from None
    if value <= 0 or "." in token or "e" in token.lower():
        raise UsageError(f"{flag} must be a positive integer or p/q, got {token!r}")
    return value


def product_comparison(spec, left: Geometry, right: Geometry, prod: Geometry) -> dict:
    """Closed-form predictions against direct computation on the product graph."""
    n2 = right.n
    mismatches = []
    for a in range(prod.n):
        for b in range(prod.n):
            if a == b:
                continue
            x, y = divmod(a, n2), divmod(b, n2)
            if prod.dist.rows[a][b] != predicted_distance(left, right, x, y):
                mismatches.append(f"distance {prod.name(a)} {prod.name(b)}")
            if prod.kappa(a, b) != predicted_ricci(spec, left, right, x, y):
                mismatches.append(f"kappa {prod.name(a)} {prod.name(b)}")
    mean = predicted_mean_curvatures(spec, left.mean, right.mean)
    if mean != prod.mean:
        mismatches.append("mean curvatures")
    pred = predicted_constants(spec, left, right)
    direct = (prod.diam, prod.Lambda, prod.K())
    if (pred.diam, pred.Lambda, pred.K) != direct:
        mismatches.append("constants")
    report = {
        "predicted": {"diameter": pred.diam, "Lambda": rational(pred.Lambda), "K": rational(pred.K)},
        "direct": {"diameter": direct[0], "Lambda": rational(direct[1]), "K": rational(direct[2])},
        "mismatches": mismatches,
        "maximal_equivalence": None,
    }
    if left.K() > 0 and right.K() > 0:
        eq = maxdiam_product_equivalence(spec, left, right, prod)
        report["maximal_equivalence"] = {"factors_balanced": eq.lhs, "product_maximal": eq.rhs}
        if not eq.agree:
            mismatches.append("maximal-diameter equivalence")
    report["agree"] = not mismatches
    return report


def cmd_product(args, out: TextIO) -> int:
    left_g, right_g = parse_graph_file(args.left), parse_graph_file(args.right)
    spec = make_spec(left_g, right_g, _parse_ratio(args.alpha, "--alpha"), _parse_ratio(args.beta, "--beta"))
    prod_g = cartesian_product(spec)
    text = format_graph(prod_g)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    if not args.verify:
        if not args.output:
            out.write(text)
        return EXIT_OK
    report = product_comparison(spec, Geometry(left_g), Geometry(right_g), Geometry(prod_g))
    pred, direct = report["predicted"], report["direct"]
    lines = [
        f"{label} (diam, Lambda, K) = ({r['diameter']}, {Fraction(r['Lambda']['exact'])}, {Fraction(r['K']['exact'])})"
        for label, r in (("predicted", pred), ("direct   ", direct))
    ]
    if report["maximal_equivalence"] is not None:
        eq = report["maximal_equivalence"]
        lines.append(f"factors balanced: {str(eq['factors_balanced']).lower()}, "
                     f"product maximal: {str(eq['product_maximal']).lower()}")
    lines.append("agree" if report["agree"] else "MISMATCH: " + ", ".join(report["mismatches"]))
    _dump(report, args.json, "\n".join(lines) + "\n", out)
    return EXIT_OK if report["agree"] else EXIT_CHECK_FAILED


def cmd_gen(args, out: TextIO) -> int:
    out.write(format_graph(from_name(args.name)))
    return EXIT_OK


def cmd_selfcheck(args, out: TextIO) -> int:
    from .selfcheck import run_all

    results = run_all()
    if args.json:
        out.write(json.dumps(
            [{"criterion": r.number, "title": r.title, "passed": r.passed, "detail": r.detail} for r in results],
            indent=2,
        ) + "\n")
    else:
        out.write("".join(r.line() + "\n" for r in results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diricci", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_cmd(name: str, help_: str):
        p = sub.add_parser(name, help=help_)
        p.add_argument("graph", nargs="?", help="edge-list file (default: stdin)")
        p.add_argument("--json", action="store_true", help="emit JSON")
        return p

    graph_cmd("info", "size, Eulerian flag, diameter").set_defaults(func=cmd_info)
    p = graph_cmd("ricci", "Ricci curvature table")
    p.add_argument("--pairs", choices=("all", "edges"), default="all")
    p.add_argument("--method", choices=("lp", "eps", "brute"), default="lp")
    p.set_defaults(func=cmd_ricci)
    graph_cmd("mean", "mean curvatures and Lambda").set_defaults(func=cmd_mean)
    graph_cmd("bounds", "diameter bound and per-pair comparison").set_defaults(func=cmd_bounds)
    graph_cmd("maximal", "maximal-diameter rigidity verdict").set_defaults(func=cmd_maximal)
    p = graph_cmd("suspension", "spherical suspension conditions for given poles")
    p.add_argument("--poles", required=True, help="x,y")
    p.set_defaults(func=cmd_suspension)
    graph_cmd("spectrum", "Laplacian eigenvalues").set_defaults(func=cmd_spectrum)

    p = sub.add_parser("product", help="weighted Cartesian product of two graph files")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--alpha", default="1")
    p.add_argument("--beta", default="1")
    p.add_argument("--verify", action="store_true", help="compare closed forms with direct computation")
    p.add_argument("-o", "--output", help="write the product edge list here")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("gen", help="emit a generated graph as an edge list")
    p.add_argument("--name", required=True, help="kn:5 | triforce | cycle:4 | random:n,density,seed")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("selfcheck", help="run the embedded fixture suite")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_selfcheck)
    return parser


def run(argv: Optional[list[str]] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_BAD_INPUT
    try:
        return args.func(args, out)
    except (DiricciError, UsageError, OSError) as exc:
        line = getattr(exc, "line", None)
        where = f"line {line}: " if line is not None and not isinstance(exc, ParseError) else ""
        err.write(f"diricci {args.command}: {where}{exc}\n")
        return EXIT_BAD_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
