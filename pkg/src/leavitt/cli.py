"""Command-line front end.

Subcommands: analyze (graph combinatorics and the ideal chain), calc (an
element calculator over a graph), and toeplitz (matrix units, the
non-splitting probe, automorphism and involution utilities).

Exit codes: 0 ok, 2 parse error, 3 polynomial-growth violation,
4 algebra/field mismatch, 5 field-capability failure (no square root or a
stuck alternating block).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import algebra as alg
from . import automorphisms as au
from . import graphs as gr
from . import jacobson as jb
from . import structure as st
from .fields import FieldError, make_field

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_GROWTH = 3
EXIT_ALGEBRA = 4
EXIT_CAPABILITY = 5


def _emit(args, text, doc):
    if getattr(args, "json", False):
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_analyze(args):
    g = gr.load_graph(args.graph)
    an = gr.analyze(g)
    lines = []
    doc = {}
    lines.append("vertices: %s" % " ".join(g.vertices))
    lines.append("sinks: %s" % (" ".join(an.sinks) or "(none)"))
    doc["sinks"] = an.sinks
    cyc_strs = [" ".join(c.edges) for c in an.cycles]
    lines.append("cycles: %s" % ("; ".join(cyc_strs) or "(none)"))
    doc["cycles"] = [list(c.edges) for c in an.cycles]
    ne_strs = [" ".join(c.edges) for c in an.ne_cycles]
    lines.append("NE cycles: %s" % ("; ".join(ne_strs) or "(none)"))
    doc["ne_cycles"] = [list(c.edges) for c in an.ne_cycles]
    for c in an.cycles:
        lines.append(
            "exits(%s): %s" % (" ".join(c.edges), " ".join(an.exits[c]) or "(none)")
        )
    doc["exits"] = {" ".join(c.edges): an.exits[c] for c in an.cycles}
    lines.append("polynomial growth: %s" % an.polynomial_growth)
    doc["polynomial_growth"] = an.polynomial_growth
    v0 = sorted(gr.compute_V0(g), key=g.vertex_index)
    lines.append("V0: %s" % (" ".join(v0) or "(empty)"))
    doc["V0"] = v0
    if args.chain:
        report = st.ideal_chain(g)
        doc["chain"] = report.to_dict()
        lines.append("ideal chain (s = %d):" % report.s)
        for depth, layer in enumerate(report.layers):
            descr = ", ".join(_factor_str(f) for f in layer) or "(empty)"
            lines.append("  layer %d: %s" % (depth, descr))
    _emit(args, "\n".join(lines), doc)
    return EXIT_OK


def _factor_str(f):
    if f.kind == st.MAT_F:
        return "M_%d(F) at sink %s" % (f.size, f.anchor)
    if f.kind == st.MAT_INF_F:
        return "M_inf(F) at sink %s" % f.anchor
    if f.kind == st.MAT_LAURENT:
        return "M_%d(F[t,t^-1]) at cycle %s" % (f.size, f.anchor)
    return "M_inf(F[t,t^-1]) at cycle %s" % f.anchor


def cmd_calc(args):
    g = gr.load_graph(args.graph)
    field = make_field(args.field)
    bindings = {}
    lines = []
    results = []
    for expr in args.expressions:
        name = None
        body = expr
        if "=" in expr:
            name, body = expr.split("=", 1)
            name = name.strip()
        el = alg.parse_element(body, g, field, bindings)
        if args.star:
            el = el.star()
        if name:
            bindings[name] = el
            lines.append("%s = %s" % (name, el.format()))
        else:
            lines.append(el.format())
        results.append({"input": expr, "normal_form": el.format()})
    _emit(args, "\n".join(lines), {"field": args.field, "results": results})
    return EXIT_OK


def cmd_toeplitz_units(args):
    field = make_field(args.field)
    i, j = args.i, args.j
    el = jb.jac_matrix_unit(field, i, j)
    factored = " ".join(["y"] * (i - 1) + ["(1 - y x)"] + ["x"] * (j - 1))
    _emit(
        args,
        "e_%d%d = %s = %s" % (i, j, factored, el.format()),
        {"i": i, "j": j, "factored": factored, "normal_form": el.format()},
    )
    return EXIT_OK


def cmd_toeplitz_probe(args):
    field = make_field(args.field)
    b1 = jb.jac_parse(args.b1, field)
    bm1 = jb.jac_parse(args.bm1, field)
    b0 = jb.jac_parse(args.b0, field)
    cert = jb.splitting_probe(b1, bm1, b0, args.truncation)
    doc = cert.to_dict()
    lines = ["refutation: %s" % cert.kind]
    lines.append("dim rho/\\sigma = %d" % cert.dim_rho_cap_sigma)
    lines.append(
        "corner dims (1-yx)A by degree: %s"
        % " ".join(str(d) for d in cert.corner_dims)
    )
    if cert.witness is not None:
        lines.append("closure defect: %s" % cert.witness.format())
    _emit(args, "\n".join(lines), doc)
    return EXIT_OK


def _load_matrix(field, doc):
    fin = {(int(i), int(j)): field.parse(c) for i, j, c in doc.get("finitary", [])}
    band = {int(k): field.parse(c) for k, c in doc.get("band", [])}
    return jb.AlmostToeplitzMatrix(field, fin, band)


def _load_automorphism(field, path):
    with open(path) as fh:
        doc = json.load(fh)
    alpha = field.parse(doc["alpha"])
    gdoc = dict(doc["g"])
    gdoc.setdefault("band", [[0, "1"]])
    g = _load_matrix(field, gdoc)
    return au.ToeplitzAutomorphism(alpha, g)


def _parse_target(field, text):
    if text == "c":
        return jb.AlmostToeplitzMatrix.shift_down(field)
    if text in ("c*", "c'"):
        return jb.AlmostToeplitzMatrix.shift_up(field)
    parts = text.split()
    if len(parts) == 3 and parts[0] == "e":
        return jb.AlmostToeplitzMatrix.unit(field, int(parts[1]), int(parts[2]))
    raise FieldError("unknown target %r (use c, c*, or 'e i j')" % text)


def cmd_toeplitz_aut(args):
    field = make_field(args.field)
    phi = _load_automorphism(field, args.files[0])
    if args.compose:
        psi = _load_automorphism(field, args.files[1])
        out = au.aut_compose(phi, psi)
        _emit(args, json.dumps(out.to_dict()), out.to_dict())
        return EXIT_OK
    target = _parse_target(field, args.apply)
    image = au.aut_apply(phi, target)
    _emit(args, repr(image), image.to_json())
    return EXIT_OK


def cmd_toeplitz_involution(args):
    field = make_field(args.field)
    with open(args.T) as fh:
        doc = json.load(fh)
    T = _load_matrix(field, doc["T"] if "T" in doc else doc)
    iota = au.Involution(T)
    Q = au.involution_equivalence(iota)
    doc = {"T": T.to_json(), "Q": Q.to_json()}
    _emit(args, "Q = %r\nQ^t Q = T holds" % Q, doc)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="leavitt",
        description="Exact computer algebra for Leavitt path algebras "
        "of polynomial growth",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="graph combinatorics and ideal chain")
    p.add_argument("graph", help="graph JSON file")
    p.add_argument("--chain", action="store_true", help="compute the ideal chain")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("calc", help="element calculator")
    p.add_argument("graph", help="graph JSON file")
    p.add_argument("expressions", nargs="+", help="expressions; 'name = expr' binds")
    p.add_argument("--field", default="Q")
    p.add_argument("--star", action="store_true", help="apply the involution")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_calc)

    p = sub.add_parser("toeplitz", help="Toeplitz algebra utilities")
    tsub = p.add_subparsers(dest="subcommand", required=True)

    q = tsub.add_parser("units", help="matrix unit normal forms")
    q.add_argument("i", type=int)
    q.add_argument("j", type=int)
    q.add_argument("--field", default="Q")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_toeplitz_units)

    q = tsub.add_parser("probe", help="non-splitting refutation probe")
    q.add_argument("--b1", default="x", help="candidate mapping to t^-1")
    q.add_argument("--bm1", default="y", help="candidate mapping to t")
    q.add_argument("--b0", default="1", help="candidate identity")
    q.add_argument("-n", "--truncation", type=int, default=8)
    q.add_argument("--field", default="Q")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_toeplitz_probe)

    q = tsub.add_parser("aut", help="compose or apply automorphisms")
    q.add_argument("files", nargs="+", help="automorphism JSON file(s)")
    q.add_argument("--compose", action="store_true")
    q.add_argument("--apply", metavar="TARGET", help="c, c*, or 'e i j'")
    q.add_argument("--field", default="Q")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_toeplitz_aut)

    q = tsub.add_parser("involution", help="classify an involution")
    q.add_argument("T", help="JSON file with the symmetric matrix T")
    q.add_argument("--field", default="gf2")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_toeplitz_involution)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except gr.NotPolynomialGrowth as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_GROWTH
    except (au.NoSquareRootError, au.StuckAlternatingBlock) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_CAPABILITY
    except (alg.ParseError, gr.GraphError, json.JSONDecodeError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE
    except (alg.AlgebraError, jb.JacobsonError, au.AutomorphismError, FieldError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_ALGEBRA


if __name__ == "__main__":
    sys.exit(main())
