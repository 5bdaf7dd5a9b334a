"""coexpand command line: homology, tu, xi, cover, verify, waist.

Reports go to stdout as JSON. ``--pretty`` indents the JSON and adds a
human table on stderr. Exit codes: 0 ok, 1 failed verification,
2 bad input, 3 infeasible, 4 size guard.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import io
from .complexes import boundary_matrix, coboundary_matrix, homology, manifold_check
from .covers import build_cover, cover_expansion_sweep, cyclic_voltages
from .errors import CoexpandError, FormatError
from .expansion import (L1Problem, combine_constants, l1_min_int, l1_min_real, waist_constant,
                        xi_int_global, xi_int_probe, xi_real_global)
from .linalg_exact import l1_norm
from .tu import hk_vertex_integrality, is_totally_unimodular, tu_report
from .verify import COMPLEX_SUITES, SUITES, run_suite


def _emit(obj, args, table: str | None = None):
    print(io.dumps(obj, pretty=args.pretty))
    if args.pretty and table:
        print(table, file=sys.stderr)


def _rational(text: str) -> Fraction:
    v = io.parse_rational(text)
    return Fraction(v)


# ---------------------------------------------------------------- matrix selection

def _select_matrix(args, allow_problem=True):
    """Matrix (and optional target and predecessor) named by the input and flags."""
    kind, obj = io.load_input(args.input)
    if kind == "complex":
        X = obj
        if (args.boundary is None) == (args.coboundary is None):
            raise FormatError("a complex input needs exactly one of --boundary K or --coboundary K")
        if args.boundary is not None:
            k = args.boundary
            pred = boundary_matrix(X, k + 1) if k + 1 <= X.dim else None
            return boundary_matrix(X, k), None, pred, f"boundary_{k}"
        k = args.coboundary
        pred = coboundary_matrix(X, k - 1) if k >= 0 else None
        return coboundary_matrix(X, k), None, pred, f"coboundary_{k}"
    if args.boundary is not None or args.coboundary is not None:
        raise FormatError("--boundary/--coboundary apply to complex inputs only")
    if kind == "problem":
        if not allow_problem:
            return obj[0], None, None, "matrix"
        A, v = obj
    else:
        A, v = obj, None
    pred = io.load_matrix(args.predecessor) if getattr(args, "predecessor", None) else None
    return A, v, pred, "matrix"


# ---------------------------------------------------------------- commands

def cmd_homology(args) -> int:
    X = io.load_complex(args.input)
    dims = [args.k] if args.k is not None else list(range(X.dim + 1))
    reports = [homology(X, k).to_json() for k in dims]
    out = {"f_vector": list(X.f_vector), "euler_characteristic": X.euler_characteristic(),
           "homology": reports[0] if args.k is not None else reports}
    if args.manifold:
        out["manifold"] = manifold_check(X).to_json()
    table = "\n".join(f"H_{r['dim']}: Z^{r['betti']}"
                      + "".join(f" + Z/{t}" for t in r["torsion"]) for r in reports)
    _emit(out, args, table)
    return 0


def cmd_tu(args) -> int:
    A, _, _, what = _select_matrix(args, allow_problem=False)
    rep = is_totally_unimodular(A, args.guard) if args.exhaustive else tu_report(A, args.guard)
    out = {"input": what, "shape": list(A.shape), "tu": rep.to_json()}
    if args.bounds:
        box = io.bounds_from_obj(io.load_json(args.bounds))
        out["vertices"] = hk_vertex_integrality(A, box).to_json()
    table = f"{what} {A.rows}x{A.cols}: {'TU' if rep.is_tu else 'not TU'} ({rep.method})"
    if rep.witness:
        table += f", minor det {rep.witness[2]} at rows {rep.witness[0]} cols {rep.witness[1]}"
    _emit(out, args, table)
    return 0


def cmd_xi(args) -> int:
    A, v, pred, what = _select_matrix(args)
    modes = sum(x is not None and x is not False for x in (args.at, args.glob, args.probe))
    if modes > 1:
        raise FormatError("choose one of --at, --global, --probe")
    if modes == 0 and v is None:
        raise FormatError("choose one of --at, --global, --probe")
    if args.at is not None:
        v = io.parse_vector(args.at)
    if args.probe is not None:
        if args.ring != "int":
            raise FormatError("--probe is an integer lower bound; use --ring int")
        res = xi_int_probe(A, args.probe, args.guard)
        out = res.to_json()
    elif args.glob:
        res = xi_int_global(A, pred, args.guard) if args.ring == "int" else xi_real_global(A, args.guard)
        out = res.to_json()
    else:
        if len(v) != A.rows:
            raise FormatError(f"vector has {len(v)} entries, the map has {A.rows} rows")
        nv = l1_norm(v)
        solver = l1_min_int if args.ring == "int" else l1_min_real
        res = solver(L1Problem(A, v))
        out = res.to_json()
        out["min_norm"] = out["value"]
        out["value"] = str(Fraction(res.value) / nv) if nv else None
    out["input"] = what
    _emit(out, args, f"Xi_{args.ring}({what}) = {out['value']}")
    return 0


def cmd_cover(args) -> int:
    X = io.load_complex(args.input)
    assignments = [io.voltage_from_obj(io.load_json(p), X) for p in args.voltages]
    if args.cyclic:
        assignments += [cyclic_voltages(X, d) for d in range(1, args.cyclic + 1)]
    if not assignments:
        raise FormatError("give voltage files or --cyclic N")
    if args.sweep:
        rows = cover_expansion_sweep(X, assignments, args.guard)
        out = {"sweep": [r.to_json() for r in rows],
               "note": "sampled covers only; no statement about other covers"}
        table = "\n".join(f"degree {r.degree}: xi_top={r.xi_top} xi_next={r.xi_next} "
                          f"connected={r.connected}" for r in rows)
        _emit(out, args, table)
        return 0
    covers = []
    for va in assignments:
        Y = build_cover(X, va)
        covers.append({"degree": va.degree, "f_vector": list(Y.f_vector),
                       "euler_characteristic": Y.euler_characteristic(),
                       "components": len(Y.components()), "complex": io.complex_to_obj(Y)})
    out = covers[0] if len(covers) == 1 else covers
    table = "\n".join(f"degree {c['degree']}: f={c['f_vector']} chi={c['euler_characteristic']}"
                      for c in covers)
    _emit(out, args, table)
    return 0


def cmd_verify(args) -> int:
    inputs = []
    for path in args.inputs:
        if args.suite in COMPLEX_SUITES:
            inputs.append((path, io.load_complex(path)))
        else:
            kind, obj = io.load_input(path)
            if kind == "complex":
                raise FormatError(f"suite {args.suite} takes matrix files")
            inputs.append((path, obj[0] if kind == "problem" else obj))
    rep = run_suite(args.suite, inputs or None, args.seed, args.trials)
    _emit(rep.to_json(), args, rep.table())
    if not rep.passed:
        for c in rep.checks:
            if c.status == "fail":
                print(io.dumps({"failed": c.claim, "witness": c.witness}), file=sys.stderr)
        return 1
    return 0


def cmd_waist(args) -> int:
    C = combine_constants(_rational(args.xi), _rational(args.D), _rational(args.E), args.m)
    w = waist_constant(C)
    _emit({"C": str(C), "waist_constant": str(w)}, args, f"C = {C}\nwaist constant = {w}")
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indent JSON, table on stderr")

    def maps(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--boundary", type=int, metavar="K", help="use the boundary map in degree K")
        g.add_argument("--coboundary", type=int, metavar="K", help="use the coboundary map d^K")
        p.add_argument("--guard", type=int, help="override the enumeration guard")

    parser = argparse.ArgumentParser(prog="coexpand", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homology", parents=[common], help="integral homology of a complex")
    p.add_argument("input", help="complex JSON file or builtin:NAME")
    p.add_argument("-k", type=int, help="single degree (default: all)")
    p.add_argument("--manifold", action="store_true", help="add the pseudomanifold report")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("tu", parents=[common], help="total unimodularity test")
    p.add_argument("input", help="matrix file, or complex with --boundary/--coboundary")
    maps(p)
    p.add_argument("--exhaustive", action="store_true", help="skip the row criterion shortcut")
    p.add_argument("--bounds", help="BoundsBox JSON: also enumerate polyhedron vertices")
    p.set_defaults(func=cmd_tu)

    p = sub.add_parser("xi", parents=[common], help="expansion constants")
    p.add_argument("input", help="matrix, problem {A, v}, or complex file")
    maps(p)
    p.add_argument("--ring", choices=("real", "int"), default="real")
    p.add_argument("--at", metavar="V", help="JSON vector, e.g. [1,0]")
    p.add_argument("--global", dest="glob", action="store_true", help="supremum over the image")
    p.add_argument("--probe", type=int, metavar="R", help="integer lower bound over |v|_inf <= R")
    p.add_argument("--predecessor", help="matrix file P with im P = ker A (for --ring int --global)")
    p.set_defaults(func=cmd_xi)

    p = sub.add_parser("cover", parents=[common], help="finite covers from voltages")
    p.add_argument("input", help="base complex file or builtin:NAME")
    p.add_argument("voltages", nargs="*", help="voltage JSON files")
    p.add_argument("--cyclic", type=int, metavar="N", help="add cyclic voltages of degree 1..N")
    p.add_argument("--sweep", action="store_true", help="top two boundary expansion per cover")
    p.add_argument("--guard", type=int)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("inputs", nargs="*", help="complex or matrix files (default: bundled)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("waist", parents=[common], help="constant chain Xi -> C -> waist")
    p.add_argument("--xi", required=True)
    p.add_argument("--D", required=True)
    p.add_argument("--E", required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_waist)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except CoexpandError as exc:
        print(io.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
