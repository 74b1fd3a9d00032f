"""Command line front end.

Every subcommand prints one JSON document on stdout (or a plain table with
``--pretty``). Exit codes: 0 success or pass, 1 negative verdict, 2 input
error, 3 internal invariant failure.
"""
import argparse
import sys

from . import io
from .ehrhart import (ehrhart_poly, necessary_condition, theorem1_check, width,
                      width_boundary_formula)
from .equidecomp import verify_equidecomposition
from .errors import InputError, InvariantError, NotUniversallyEqual
from .generate import random_polygon, random_polytope, rng_from_seed
from .geometry import Polygon2, as_intvec
from .lattice import Superlattice, budget_from_env, count_points, dilation, sweep
from .universal import decompose, edge_profile, equal_universal_2d, synth

OK, NEGATIVE, USAGE, INTERNAL = 0, 1, 2, 3


def _int_list(text):
    try:
        return as_intvec(int(t) for t in text.split(","))
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _matrix(text):
    rows = [_int_list(r) for r in text.split(";")]
    return rows


def _planar(body, what="this command"):
    if not isinstance(body, Polygon2):
        raise InputError(f"{what} works only in dimension 2")
    return body


def _emit(doc, pretty):
    if not pretty:
        print(io.dumps(doc))
        return
    if isinstance(doc, dict):
        width_ = max((len(k) for k in doc), default=0)
        for k in sorted(doc):
            v = doc[k]
            shown = v if isinstance(v, (str, int, bool)) or v is None else io.dumps(v)
            print(f"{k:<{width_}}  {shown}")
    else:
        for item in doc:
            print(io.dumps(item))


def cmd_count(args):
    body = io.load_body(args.file)
    if args.dilate is not None:
        s = dilation(_int_list(args.dilate))
    elif args.lattice is not None:
        s = Superlattice.from_matrix(_matrix(args.lattice))
    else:
        s = dilation([1] * body.ambient_dim)
    return OK, {"count": count_points(body, s), "H": s.to_json(), "index": s.index}


def _sweep_report(p, q, args):
    return sweep(p, q, args.max_index, budget=budget_from_env(), jobs=args.jobs)


def cmd_check_equal(args):
    p, q = io.load_body(args.p), io.load_body(args.q)
    if args.mode == "exact2d":
        if not (isinstance(p, Polygon2) and isinstance(q, Polygon2)):
            raise InputError("exact decision only in dimension 2")
        d = equal_universal_2d(p, q)
        return (OK if d.equal else NEGATIVE), d.to_json()
    if args.mode == "necessary":
        r = necessary_condition(p, q)
        return (OK if r.passed else NEGATIVE), r.to_json()
    r = _sweep_report(p, q, args)
    return (OK if r.ok else NEGATIVE), r.to_json()


def cmd_sweep(args):
    r = _sweep_report(io.load_body(args.p), io.load_body(args.q), args)
    return (OK if r.ok else NEGATIVE), r.to_json()


def cmd_decompose(args):
    p = _planar(io.load_body(args.p), "decompose")
    q = _planar(io.load_body(args.q), "decompose")
    try:
        w = decompose(p, q)
    except NotUniversallyEqual:
        return NEGATIVE, equal_universal_2d(p, q).to_json()
    if not w.reconstructs(p, q):
        raise InvariantError("witness fails its own reconstruction check")
    doc = io.witness_to_doc(w)
    doc["reconstructs"] = True
    return OK, doc


def cmd_synth(args):
    x = _planar(io.load_body(args.x), "synth")
    y = _planar(io.load_body(args.y), "synth")
    r = synth(x, y)
    return (OK if r.equal else NEGATIVE), r.to_json()


def cmd_ehrhart(args):
    body = io.load_body(args.file)
    doc = ehrhart_poly(body).to_json()
    if args.check:
        report = theorem1_check(body)
        doc["theorem1"] = report.to_json()
        if not report.passed:
            raise InvariantError("Ehrhart coefficient identities failed")
    return OK, doc


def cmd_profile(args):
    p = _planar(io.load_body(args.file), "profile")
    return OK, {"profile": edge_profile(p).to_json()}


def cmd_width(args):
    body = io.load_body(args.file)
    z = _int_list(args.z)
    doc = {"width": width(body, z)}
    if isinstance(body, Polygon2):
        doc["boundary_formula"] = width_boundary_formula(body, z)
        if doc["boundary_formula"] != doc["width"]:
            raise InvariantError("boundary width formula disagrees with the vertex width")
    return OK, doc


def cmd_verify_equidecomp(args):
    p = _planar(io.load_body(args.p), "verify-equidecomp")
    q = _planar(io.load_body(args.q), "verify-equidecomp")
    cert = io.cert_from_doc(io.read_json(args.cert))
    r = verify_equidecomposition(p, q, cert)
    return (OK if r.passed else NEGATIVE), r.to_json()


def cmd_fuzz(args):
    if args.points < max(3, args.dim + 1) or args.box < 1 or args.count < 0:
        raise InputError("fuzz needs --points >= dim+1, --box >= 1, --count >= 0")
    rng = rng_from_seed(args.seed)
    if args.dim == 2:
        bodies = [random_polygon(rng, args.box, args.points) for _ in range(args.count)]
    else:
        bodies = [random_polytope(rng, args.dim, args.box, args.points)
                  for _ in range(args.count)]
    return OK, [io.body_to_doc(b) for b in bodies]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="unicount", description="Universal counting functions of lattice polytopes.")
    parser.add_argument("--pretty", action="store_true", help="human-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
        sp.set_defaults(func=func)
        return sp

    sp = add("count", cmd_count, "count |P ∩ L'| for one superlattice")
    sp.add_argument("file")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--lattice", help="integer matrix, rows separated by ';' (e.g. '2,1;0,3')")
    g.add_argument("--dilate", help="diagonal factors k1,k2,...")

    sp = add("check-equal", cmd_check_equal, "compare the counting functions of two bodies")
    sp.add_argument("p")
    sp.add_argument("q")
    sp.add_argument("--mode", choices=["exact2d", "necessary", "sweep"], default="exact2d")
    sp.add_argument("--max-index", type=int, default=20)
    sp.add_argument("--jobs", type=int, default=1)

    sp = add("sweep", cmd_sweep, "compare counts on all superlattices up to an index")
    sp.add_argument("p")
    sp.add_argument("q")
    sp.add_argument("--max-index", type=int, default=20)
    sp.add_argument("--jobs", type=int, default=1)

    sp = add("decompose", cmd_decompose, "find X, Y with P = X+Y and Q = X-Y")
    sp.add_argument("p")
    sp.add_argument("q")

    sp = add("synth", cmd_synth, "build P = X+Y, Q = X-Y and decide U_P = U_Q")
    sp.add_argument("x")
    sp.add_argument("y")

    sp = add("ehrhart", cmd_ehrhart, "exact Ehrhart polynomial")
    sp.add_argument("file")
    sp.add_argument("--check", action="store_true", help="also verify the coefficient identities")

    sp = add("profile", cmd_profile, "edge-length profile by direction class")
    sp.add_argument("file")

    sp = add("width", cmd_width, "lattice width in a primitive direction")
    sp.add_argument("file")
    sp.add_argument("--z", required=True, help="primitive direction, e.g. 1,0")

    sp = add("verify-equidecomp", cmd_verify_equidecomp, "check an equidecomposition certificate")
    sp.add_argument("p")
    sp.add_argument("q")
    sp.add_argument("cert")

    sp = add("fuzz", cmd_fuzz, "emit random lattice bodies as JSON")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--dim", type=int, default=2, choices=[2, 3, 4])
    sp.add_argument("--box", type=int, default=8)
    sp.add_argument("--points", type=int, default=12)
    sp.add_argument("--count", type=int, default=10)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        code, doc = args.func(args)
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return INTERNAL
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    _emit(doc, args.pretty)
    return code


if __name__ == "__main__":
    sys.exit(main())
