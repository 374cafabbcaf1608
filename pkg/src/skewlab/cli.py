"""Command-line front end.

    skewlab mul --ring weyl1 "d" "x"            ->  {"result": "x*d + 1"}
    skewlab gkdim --ring weyl1 --ideal "d"       ->  {"gkdim": 1, "grade": 1}

Output is JSON with sorted keys unless --pretty is given.  Exit status is 0 on
success, 1 when the request is refused mathematically and 2 on bad input.
"""

import argparse
import json
import os
import sys

from . import gkdim as gk
from . import groebner as gbm
from . import orefactor, orematrix, orepoly
from . import presentations as pres
from .coeffs import (QQ, CustomDerivation, DtDerivation, IdentityTwist, QQt, ShiftTwist, TableTwist,
                     ZeroDerivation, field_from_spec, frobenius)
from .errors import MathError, ParseError, SkewlabError
from .matrix import Matrix, parse_matrix
from .orepoly import OreRing
from .pbw import PBWAlgebra, TermOrder, algebra_from_json, quantum_plane, validate, weight_vector, weyl


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


# ---------------------------------------------------------------------------
# rings

def ore_ring_from_json(doc):
    F = field_from_spec(doc.get("field", "QQ"))
    s = doc.get("sigma") or {"type": "identity"}
    if isinstance(s, str):
        s = {"type": s}
    kind = s.get("type", "identity")
    if kind == "identity":
        sigma = IdentityTwist(F)
    elif kind == "frobenius":
        sigma = frobenius(F, int(s.get("power", 1)))
    elif kind == "shift":
        sigma = ShiftTwist(F, QQ.parse(str(s.get("offset", "1"))))
    elif kind == "table":
        sigma = TableTwist(F, F.parse(str(s["image"])))
    else:
        raise ParseError(f"unknown twist {kind!r}")
    d = doc.get("delta") or {"type": "zero"}
    if isinstance(d, str):
        d = {"type": d}
    kind = d.get("type", "zero")
    if kind == "zero":
        delta = ZeroDerivation(F, sigma)
    elif kind in ("d/dt", "dt"):
        delta = DtDerivation(F, sigma)
    elif kind == "custom":
        delta = CustomDerivation(F, sigma, F.parse(str(d["value"])))
    else:
        raise ParseError(f"unknown derivation {kind!r}")
    return OreRing(F, sigma, delta, doc.get("var", "x"))


def ring_from_json(doc):
    family = doc.get("family") or ("pbw" if "vars" in doc else "ore")
    if family == "ore":
        return ore_ring_from_json(doc)
    if family == "pbw":
        return algebra_from_json(doc)
    raise ParseError(f"unknown ring family {family!r}")


def builtin_ring(name, n=1, q="2"):
    if name == "weyl1":
        return weyl(1, QQ)
    if name == "weyln":
        return weyl(int(n), QQ)
    if name == "qplane":
        return quantum_plane(QQ.parse(str(q)), QQ)
    if name == "f4frob":
        F = field_from_spec("GF(4)")
        return OreRing(F, frobenius(F))
    if name == "qt-diff":
        F = QQt()
        return OreRing(F, IdentityTwist(F), DtDerivation(F, IdentityTwist(F)))
    raise ParseError(f"unknown ring {name!r}")


def load_ring(spec, n=1, q="2"):
    if os.path.isfile(spec):
        try:
            with open(spec) as fh:
                doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{spec}: {exc}") from None
        return ring_from_json(doc)
    if spec.lstrip().startswith("{"):
        try:
            return ring_from_json(json.loads(spec))
        except json.JSONDecodeError as exc:
            raise ParseError(f"ring spec: {exc}") from None
    name = os.path.basename(spec)
    if name.endswith(".json"):
        name = name[:-5]
    return builtin_ring(name, n, q)


def _require(ring, cls, what):
    if not isinstance(ring, cls):
        kind = "an Ore ring" if cls is OreRing else "a PBW algebra"
        raise MathError(f"{what} needs {kind}")


# ---------------------------------------------------------------------------
# helpers

def _deg(d):
    return "-inf" if d == gk.NEG_INF else d


def _mat(M):
    return [[str(a) for a in row] for row in M.rows]


def _matrix(ring, text, ncols=None):
    return parse_matrix(ring, text, ncols)


def _module_order(args, A):
    order = A.order if not getattr(args, "order", None) else TermOrder.from_spec(_order_spec(args.order))
    return gbm.ModuleOrder(order, args.module_order)


def _order_spec(text):
    if text.startswith("weighted"):
        _, _, ws = text.partition(":")
        return {"type": "weighted", "weights": [int(x) for x in ws.split(",") if x]}
    return text


def _elements(A, texts, rank=None):
    out = [gbm.parse_module_element(A, t, rank) for t in texts]
    ranks = {e.rank for e in out}
    if len(ranks) > 1:
        raise ParseError("generators have different ranks")
    return out


def _relations(args, A):
    """Relation matrix from --matrix or from --ideal generators."""
    if args.matrix:
        return _matrix(A, args.matrix, args.rank)
    if args.ideal:
        elems = _elements(A, args.ideal, args.rank)
        return Matrix(A, [e.to_row() for e in elems], elems[0].rank)
    return Matrix(A, [], args.rank or 1)


# ---------------------------------------------------------------------------
# commands

def cmd_mul(args, R):
    return {"result": str(R(args.f) * R(args.g))}


def cmd_divmod(args, R):
    _require(R, OreRing, "divmod")
    q, r = orepoly.divide(R(args.f), R(args.g), args.side)
    return {"quotient": str(q), "remainder": str(r), "side": args.side}


def cmd_pseudodiv(args, R):
    _require(R, OreRing, "pseudodiv")
    a, q, r = orepoly.pseudo_divide(R(args.f), R(args.g))
    return {"multiplier": str(a), "quotient": str(q), "remainder": str(r)}


def cmd_gcd(args, R):
    _require(R, OreRing, "gcd")
    d, u, v, _ = orepoly.extended_euclid(R(args.f), R(args.g))
    return {"gcd": str(d), "u": str(u), "v": str(v)}


def cmd_lcm(args, R):
    _require(R, OreRing, "lcm")
    return {"lcm": str(orepoly.llcm(R(args.f), R(args.g)))}


def cmd_eigenring(args, R):
    _require(R, OreRing, "eigenring")
    E = orefactor.eigenring(R(args.f))
    return {"dimension": E.dim, "basis": [str(b) for b in E.basis], "commutative": E.is_commutative()}


def cmd_factor(args, R):
    _require(R, OreRing, "factor")
    f = R(args.f)
    fs = orefactor.factorize(f)
    return {"factors": [str(g) for g in fs], "leading": R.field.format(f.lc())}


def cmd_similar(args, R):
    _require(R, OreRing, "similar")
    u = orefactor.similar(R(args.f), R(args.g))
    return {"similar": u is not None, "witness": None if u is None else str(u)}


def cmd_verify_similar(args, R):
    _require(R, OreRing, "verify-similar")
    return {"result": orefactor.verify_similarity(R(args.f), R(args.g), R(args.u))}


def cmd_echelon(args, R):
    _require(R, OreRing, "echelon")
    res = orematrix.row_echelon(_matrix(R, args.matrix))
    return {"P": _mat(res.P), "B": _mat(res.B), "rank": res.rank,
            "kernel": [[str(a) for a in row] for row in res.kernel_rows], "log": res.log.to_json()}


def cmd_diag(args, R):
    _require(R, OreRing, "diag")
    res = orematrix.diagonalize(_matrix(R, args.matrix))
    return {"P": _mat(res.P), "D": _mat(res.D), "Q": _mat(res.Q), "diagonal": [str(d) for d in res.diagonal()]}


def cmd_jacobson(args, R):
    _require(R, OreRing, "jacobson")
    res = orematrix.jacobson(_matrix(R, args.matrix))
    return {"P": _mat(res.P), "J": _mat(res.D), "Q": _mat(res.Q), "diagonal": [str(d) for d in res.diagonal()]}


def cmd_bound(args, R):
    _require(R, OreRing, "bound")
    return {"bound": str(orematrix.bound(R(args.f)))}


def cmd_ann(args, R):
    if args.matrix:
        P = pres.Presentation(R, _matrix(R, args.matrix))
        v = _matrix(R, args.vector, P.t) if args.vector else Matrix(R, [[R.one] + [R.zero] * (P.t - 1)], P.t)
        out = pres.element_annihilator(P, v)
        return {"annihilator": [str(row[0]) for row in out.A.rows]}
    _require(R, OreRing, "ann q f")
    if len(args.polys) != 2:
        raise ParseError("ann needs q and f, or --matrix")
    q, f = (R(p) for p in args.polys)
    return {"annihilator": [str(orematrix.annihilator(q, f))]}


def cmd_gb(args, R):
    _require(R, PBWAlgebra, "gb")
    F = _elements(R, args.gens, args.rank)
    gb = gbm.groebner(F, _module_order(args, R))
    return {"basis": [str(g) for g in gb.G], "order": gb.order.descriptor()}


def cmd_reduce(args, R):
    _require(R, PBWAlgebra, "reduce")
    F = _elements(R, args.by, args.rank)
    f = gbm.parse_module_element(R, args.f, F[0].rank)
    order = _module_order(args, R)
    gb = gbm.groebner(F, order) if not args.no_gb else None
    G = gb.G if gb else F
    quo, rem = gbm.divide_module(f, G, order)
    return {"remainder": str(rem), "quotients": [str(q) for q in quo], "divisors": [str(g) for g in G]}


def cmd_syz(args, R):
    if isinstance(R, PBWAlgebra) and not args.matrix:
        F = _elements(R, args.gens, args.rank)
        rows = gbm.syzygy_basis(F, _module_order(args, R))
        return {"syzygies": [[str(c) for c in r.to_row()] for r in rows]}
    A = _matrix(R, args.matrix) if args.matrix else Matrix(R, [[R(g)] for g in args.gens], 1)
    S = pres.syzygy(A)
    return {"syzygies": _mat(S)}


def _morphism(args, R):
    src = pres.Presentation(R, _matrix(R, args.source, args.source_cols) if args.source else Matrix(R, [], args.source_cols or 1))
    Q = _matrix(R, args.map)
    tgt = pres.Presentation(R, _matrix(R, args.target, Q.ncols) if args.target else Matrix(R, [], Q.ncols))
    return pres.MorphismData(src, tgt, Q)


def cmd_kernel(args, R):
    if args.map:
        K = pres.kernel_presentation(_morphism(args, R))
        return {"relations": _mat(K.A), "generators": K.t}
    return {"kernel": _mat(pres.syzygy(_matrix(R, args.source)))}


def cmd_image(args, R):
    if not args.map:
        raise ParseError("image needs --map")
    I = pres.image_presentation(_morphism(args, R))
    return {"relations": _mat(I.A), "generators": I.t}


def cmd_resolve(args, R):
    P = pres.Presentation(R, _matrix(R, args.matrix))
    chain = pres.free_resolution(P, args.max_len)
    return {"maps": [_mat(M) for M in chain], "length": len(chain)}


def _weights(args):
    return [int(x) for x in args.weights.split(",")] if args.weights else None


def cmd_gkdim(args, R):
    _require(R, PBWAlgebra, "gkdim")
    M = _relations(args, R)
    d = gk.gk_dimension(M, _weights(args))
    return {"gkdim": _deg(d), "grade": None if d == gk.NEG_INF else R.n - d}


def cmd_grade(args, R):
    _require(R, PBWAlgebra, "grade")
    return {"grade": gk.grade_number(_relations(args, R), _weights(args))}


def cmd_hilbert(args, R):
    if args.stable:
        try:
            data = json.loads(args.stable)
        except json.JSONDecodeError as exc:
            raise ParseError(f"--stable: {exc}") from None
        if data and data[0] and isinstance(data[0][0], int):
            data = [data]
        n = args.n if args.n else (len(data[0][0]) if data and data[0] else R.n if R else None)
        if n is None:
            raise ParseError("--n is needed for an empty basis")
        E = gk.StableSet(n, [[tuple(b) for b in B] for B in data])
    else:
        _require(R, PBWAlgebra, "hilbert")
        E = gk.exp_set(_relations(args, R), None, _weights(args))
    out = gk.hilbert_polynomial(E).to_json()
    out["stable_set"] = E.to_json()
    return out


def cmd_weights(args, R):
    _require(R, PBWAlgebra, "weights")
    return {"weights": list(weight_vector(R))}


def cmd_validate(args, R):
    _require(R, PBWAlgebra, "validate")
    return validate(R).to_json()


# ---------------------------------------------------------------------------
# parser

def build_parser():
    p = _ArgParser(prog="skewlab", description="Exact computations in Ore extensions and PBW algebras.")
    p.add_argument("--pretty", action="store_true", help="human-readable output")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_ArgParser)

    def cmd(name, func, *positional, ring=True, help=None):
        sp = sub.add_parser(name, help=help)
        if ring:
            sp.add_argument("--ring", required=name not in ("hilbert",), help="JSON file or builtin name")
            sp.add_argument("--n", type=int, default=None, help="number of Weyl pairs for weyln")
            sp.add_argument("--q", default="2", help="parameter of qplane")
        sp.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
        for arg in positional:
            sp.add_argument(arg)
        sp.set_defaults(func=func)
        return sp

    cmd("mul", cmd_mul, "f", "g", help="product f*g")
    cmd("divmod", cmd_divmod, "f", "g").add_argument("--side", choices=["left", "right"], default="left")
    cmd("pseudodiv", cmd_pseudodiv, "f", "g")
    cmd("gcd", cmd_gcd, "f", "g")
    cmd("lcm", cmd_lcm, "f", "g")
    cmd("eigenring", cmd_eigenring, "f")
    cmd("factor", cmd_factor, "f")
    cmd("similar", cmd_similar, "f", "g")
    cmd("verify-similar", cmd_verify_similar, "f", "g", "u")
    cmd("echelon", cmd_echelon, "matrix")
    cmd("diag", cmd_diag, "matrix")
    cmd("jacobson", cmd_jacobson, "matrix")
    cmd("bound", cmd_bound, "f")
    sp = cmd("ann", cmd_ann)
    sp.add_argument("polys", nargs="*")
    sp.add_argument("--matrix")
    sp.add_argument("--vector")

    def module_opts(sp):
        sp.add_argument("--rank", type=int, default=None)
        sp.add_argument("--order", default=None, help="lex, deglex or weighted:w1,w2,...")
        sp.add_argument("--module-order", choices=["TOP", "POT"], default="TOP")

    sp = cmd("gb", cmd_gb)
    sp.add_argument("gens", nargs="+")
    module_opts(sp)
    sp = cmd("reduce", cmd_reduce, "f")
    sp.add_argument("--by", nargs="+", required=True)
    sp.add_argument("--no-gb", action="store_true", help="divide by the given elements as they are")
    module_opts(sp)
    sp = cmd("syz", cmd_syz)
    sp.add_argument("gens", nargs="*")
    sp.add_argument("--matrix")
    module_opts(sp)

    for name, func in (("kernel", cmd_kernel), ("image", cmd_image)):
        sp = cmd(name, func)
        sp.add_argument("--source")
        sp.add_argument("--source-cols", type=int, default=None)
        sp.add_argument("--target")
        sp.add_argument("--map")
    sp = cmd("resolve", cmd_resolve, "matrix")
    sp.add_argument("--max-len", type=int, default=None)

    for name, func in (("gkdim", cmd_gkdim), ("grade", cmd_grade), ("hilbert", cmd_hilbert)):
        sp = cmd(name, func)
        sp.add_argument("--ideal", nargs="+")
        sp.add_argument("--matrix")
        sp.add_argument("--rank", type=int, default=None)
        sp.add_argument("--weights", default=None, help="comma-separated weight vector")
        if name == "hilbert":
            sp.add_argument("--stable", help="JSON list of bases, one per level")
    cmd("weights", cmd_weights)
    cmd("validate", cmd_validate)
    return p


def _pretty(doc, indent=""):
    lines = []
    for k in sorted(doc):
        v = doc[k]
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.extend(_pretty(v, indent + "  "))
        elif isinstance(v, list) and v and isinstance(v[0], list):
            lines.append(f"{indent}{k}:")
            lines.extend(f"{indent}  [" + ", ".join(str(x) for x in row) + "]" for row in v)
        elif isinstance(v, list):
            lines.append(f"{indent}{k}: " + ", ".join(str(x) for x in v))
        else:
            lines.append(f"{indent}{k}: {v}")
    return lines


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        R = None
        if getattr(args, "ring", None):
            R = load_ring(args.ring, args.n or 1, args.q)
        doc = args.func(args, R)
    except ParseError as exc:
        print(json.dumps({"error": str(exc), "kind": "parse"}), file=err)
        return 2
    except (MathError, ZeroDivisionError, ValueError) as exc:
        print(json.dumps({"error": str(exc), "kind": "math"}), file=err)
        return 1
    except SkewlabError as exc:
        print(json.dumps({"error": str(exc), "kind": "other"}), file=err)
        return 1
    if args.pretty:
        print("\n".join(_pretty(doc)), file=out)
    else:
        print(json.dumps(doc, sort_keys=True), file=out)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
