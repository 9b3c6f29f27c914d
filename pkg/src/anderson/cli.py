"""Command-line workbench: ``anderson <command> [options]``.

Every command is a pure function of its arguments and ``--seed``; the
structured output is a line-oriented key=value report headed by a schema
version, so identical invocations give identical bytes.

Exit codes: 0 success, 2 parse/input error, 3 degenerate mathematics,
4 failed internal verification.
"""

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import elimination as el
from . import motives as mo
from . import solver as so
from .errors import (AndersonError, FieldError, MathDegenerate, MultidimensionalKernel, ParseError,
                     UnsupportedShape, VerificationFailed)
from .fieldspec import field_make, spec_of
from .gf import FiniteField
from .grammar import parse_anderson, parse_ore, render
from .holonomic import HolonomicWitness, Shape, random_witness, sum_annihilator, plan_dimensions
from .ore import AffineSystem, p_resultant, right_gcd

SCHEMA = "anderson-report/1"


class Report:
    """Ordered key/value pairs."""

    def __init__(self, command, argv):
        self.items = [("schema", SCHEMA), ("command", command), ("argv", json.dumps(argv))]

    def add(self, key, value):
        self.items.append((key, _flat(value)))

    def render(self, fmt="structured"):
        if fmt == "human":
            width = max(len(k) for k, _ in self.items)
            return "".join(f"{k.ljust(width)}  {v}\n" for k, v in self.items if k != "argv")
        return "".join(f"{k}={v}\n" for k, v in self.items)


def _flat(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_flat(x) for x in v) + "]"
    if isinstance(v, AffineSystem):
        return render(v)
    return str(v).replace("\n", "\\n")


def parse_report(text):
    out = {}
    for line in text.splitlines():
        if "=" in line:
            k, v = line.split("=", 1)
            out.setdefault(k, v)
    return out


# ------------------------------------------------------------------ helpers

def _field(args):
    return field_make(args.field)


def _bindings(args, K):
    out = {}
    for b in args.bind or []:
        if "=" not in b:
            raise ParseError(f"binding {b!r} is not NAME=EXPR")
        name, expr = b.split("=", 1)
        out[name.strip()] = parse_anderson(expr, K, out)
    return out


def _system(text, K, binds):
    S = parse_anderson(text, K, binds)
    if not isinstance(S, AffineSystem):
        S = AffineSystem(S.ring, [[S]])
    return S


def _scalar(text, K, binds):
    P = parse_anderson(text, K, binds)
    if isinstance(P, AffineSystem) or P.tau_degree > 0 or P.t_degree > 0:
        raise ParseError(f"{text!r} is not a field element")
    return P.coeff(0, 0)


def _theta(args, K, binds):
    if args.theta is not None:
        return _scalar(args.theta, K, binds)
    th = getattr(K, "theta", None)
    if th is None:
        raise FieldError("this field has no theta; pass --theta")
    return th


def _profile(text):
    if not text:
        return None
    return [[int(x) for x in part.split(",") if x.strip()] for part in text.split(";")]


def _motive(args, K, binds):
    th = _theta(args, K, binds)
    fam = args.family
    if fam == "carlitz":
        spec = mo.drinfeld(K, [], th)
    elif fam in ("drinfeld", "dual-drinfeld"):
        a = [_scalar(x, K, binds) for x in (args.coeffs.split(";") if args.coeffs else [])]
        spec = (mo.drinfeld if fam == "drinfeld" else mo.dual_drinfeld)(K, a, th)
    elif fam == "elementary":
        A = parse_anderson(args.coeffs or "", K, binds)
        if not isinstance(A, AffineSystem):
            raise ParseError("elementary needs --coeffs as a matrix [[..],[..]]")
        spec = mo.elementary(K, [[x.coeff(0, 0) for x in row] for row in A.rows], th)
    else:
        raise ParseError(f"unknown family {fam!r}")
    if args.twist:
        spec = mo.carlitz_twist(spec, args.twist)
    if args.zero_dual:
        spec = mo.zero_dual(spec)
    return spec


def _family(spec):
    v = spec.variant
    if isinstance(v, (mo.Drinfeld, mo.DualDrinfeld)):
        name = "drinfeld" if isinstance(v, mo.Drinfeld) else "dual-drinfeld"
        return f"{name} r={v.r} a=[{', '.join(str(x) for x in v.a)}] theta={spec.theta}"
    if isinstance(v, mo.Elementary):
        return f"elementary n={v.n} A={[[str(x) for x in row] for row in v.A]} theta={spec.theta}"
    if isinstance(v, mo.CarlitzTwist):
        return f"carlitz-twist power={v.power} of {_family(mo.MotiveSpec(v.base, spec.K, spec.theta))}"
    if isinstance(v, mo.ZeroDual):
        return f"zero-dual of {_family(mo.MotiveSpec(v.base, spec.K, spec.theta))}"
    return str(v)


def _record_solution(rep, prefix, sol):
    rep.add(prefix, [[str(c) for c in col] for col in sol.X])


# ----------------------------------------------------------------- commands

def cmd_det(args, rep):
    K = _field(args)
    b = _bindings(args, K)
    S = _system(args.matrix, K, b)
    rep.add("field", spec_of(K))
    rep.add("input", S)
    sol = el.solve_cofactors(el.EliminationProblem(S, args.col, _profile(args.profile)), not args.raw)
    d = sol.det
    rep.add("kept_column", args.col)
    rep.add("normalization", sol.normalization)
    rep.add("det", d)
    rep.add("bidegrees", d.bidegree_set())
    rep.add("rank", d.rank())
    rep.add("tail_length", d.tail_length())
    rep.add("cofactor_identity", sol.verify())
    if args.expect:
        E = parse_anderson(args.expect, K, b)
        ok = el.equal_up_to_scalar(d, E)
        rep.add("expected", E)
        rep.add("matches_up_to_scalar", ok)
        if ok:
            rep.add("scalar", el.scalar_ratio(d, E))


def cmd_cofactors(args, rep):
    K = _field(args)
    b = _bindings(args, K)
    S = _system(args.matrix, K, b)
    rep.add("field", spec_of(K))
    rep.add("input", S)
    try:
        sol = el.solve_cofactors(el.EliminationProblem(S, args.col, _profile(args.profile)), not args.raw)
    except MultidimensionalKernel as ex:
        rep.add("kernel_dimension", ex.dim)
        raise
    for j, C in enumerate(sol.cofactors, start=1):
        rep.add(f"C{j}", C)
    for col, r in sorted(sol.annihilation_residues().items()):
        rep.add(f"residue.col{col}", r)
    rep.add("det", sol.det)
    rep.add("cofactor_identity", sol.verify())


def cmd_eliminate(args, rep):
    K = _field(args)
    b = _bindings(args, K)
    S = _system(args.matrix, K, b)
    rep.add("field", spec_of(K))
    rep.add("input", S)
    for i in range(1, S.ncols + 1):
        sol = el.solve_cofactors(el.EliminationProblem(S, i, _profile(args.profile)), not args.raw)
        sol.verify()
        rep.add(f"det.col{i}", sol.det)
        rep.add(f"bidegrees.col{i}", sol.det.bidegree_set())
    rep.add("cofactor_identity", True)


def cmd_presultant(args, rep):
    K = _field(args)
    b = _bindings(args, K)
    f, g = parse_ore(args.f, K, b), parse_ore(args.g, K, b)
    rep.add("field", spec_of(K))
    rep.add("f", f)
    rep.add("g", g)
    R = p_resultant(f, g)
    rep.add("p_resultant", R)
    rep.add("right_coprime", bool(R))


def cmd_rgcd(args, rep):
    K = _field(args)
    b = _bindings(args, K)
    f, g = parse_ore(args.f, K, b), parse_ore(args.g, K, b)
    rep.add("field", spec_of(K))
    rep.add("f", f)
    rep.add("g", g)
    h = right_gcd(f, g)
    rep.add("right_gcd", h)
    rep.add("degree", h.degree)
    R = p_resultant(f, g)
    rep.add("p_resultant", R)
    consistent = (not R) == (h.degree >= 1)
    rep.add("resultant_agrees", consistent)
    if f.c and g.c and f.c[0] and g.c[0] and not consistent:
        raise VerificationFailed("p-resultant and right gcd disagree")


def cmd_rank(args, rep):
    K = _field(args)
    b = _bindings(args, K)
    S = _system(args.matrix, K, b)
    rep.add("field", spec_of(K))
    rep.add("input", S)
    rank, trace = so.head_rank(S)
    rep.add("head_rank", rank)
    rep.add("rounds", len(trace))
    for k, rd in enumerate(trace):
        rep.add(f"round{k}", f"corank={rd.corank} m_before={rd.m_before} m_after={rd.m_after}")


def cmd_solve(args, rep):
    K = _field(args)
    b = _bindings(args, K)
    S = _system(args.matrix, K, b)
    N = args.trunc
    rep.add("field", spec_of(K))
    rep.add("input", S)
    rep.add("N", N)
    B = so.solve_truncated(S, N, cap_ext=args.cap_ext)
    rep.add("solution_field", B.field.spec() if isinstance(B.field, FiniteField) else spec_of(B.field))
    rep.add("generators", len(B))
    for k, g in enumerate(B):
        _record_solution(rep, f"X{k}", g)
    ok = all(so.residual_vanishes(B.system, g) for g in B)
    rep.add("resubstitution", ok)
    if not ok:
        raise VerificationFailed("a generator does not solve the system")
    if S.is_square() and S.nrows > 1 and not args.no_projection:
        d = el.det_column(S, 1)
        emb = so.change_ring(AffineSystem(S.ring, [[d]]), B.field).rows[0][0] if B.system.K is not K else d
        ok = all(so.projection_contained(emb, g, 0) for g in B)
        rep.add("projection_contained", ok)
        if not ok:
            raise VerificationFailed("first coordinate escapes the determinant equation")


def cmd_smallrank(args, rep):
    K = _field(args)
    b = _bindings(args, K)
    S = _system(args.matrix, K, b)
    if S.nrows != 1 or S.ncols != 1:
        raise ParseError("smallrank takes a single equation")
    P = S.rows[0][0]
    N = args.trunc
    thr = Fraction(args.threshold)
    rep.add("field", spec_of(K))
    rep.add("input", P)
    method = args.method
    if method == "auto":
        method = "digits" if hasattr(K, "residue") else "valuations"
    if method == "digits":
        B = so.solve_truncated(S, N, cap_ext=args.cap_ext)
        r = so.small_rank(B, thr)
        for k, g in enumerate(B):
            rep.add(f"valuations{k}", [str(v) for v in g.valuations])
    else:
        B = so.valuation_profiles(P, N)
        r = so.small_rank(B, thr)
        for k, g in enumerate(B):
            rep.add(f"valuations{k}", [str(v) for v in g.valuations])
            rep.add(f"multiplicity{k}", g.multiplicity)
    rep.add("N", N)
    rep.add("threshold", thr)
    rep.add("method", r.method)
    rep.add("small_rank", r.rank)


def cmd_motive(args, rep):
    K = _field(args)
    b = _bindings(args, K)
    spec = _motive(args, K, b)
    rep.add("field", spec_of(K))
    rep.add("family", _family(spec))
    Q = mo.q_matrix(spec)
    rep.add("Q", str(Q))
    S = mo.h1_system(spec) if args.system == "h1" else mo.h_1_system(spec)
    rep.add("system", args.system)
    rep.add("P", S)
    flagged = getattr(S, "flagged_rows", [])
    if flagged:
        rep.add("flagged_rows", flagged)
    col = args.col or (S.ncols if args.family in ("drinfeld", "carlitz") and args.system == "h1" else 1)
    prof = None
    if args.family == "elementary" and args.reduced:
        n = spec.variant.n
        S = mo.elementary_reduced_h1(spec) if args.system == "h1" else mo.elementary_reduced_h_1(spec)
        prof = mo.elementary_profile(n)
        rep.add("reduced", S)
    d = el.det_column(S, col, prof)
    rep.add("kept_column", col)
    rep.add("det", d)
    rep.add("bidegrees", d.bidegree_set())
    rep.add("tail_length", d.tail_length())
    oracle = None
    v = spec.variant
    if isinstance(v, mo.Drinfeld) and args.system == "h1" and not args.twist and not args.zero_dual:
        oracle = mo.drinfeld_affine_equation(K, list(v.a), spec.theta)
    elif isinstance(v, mo.DualDrinfeld) and args.system == "h1":
        oracle = mo.dual_drinfeld_affine_equation(K, list(v.a), spec.theta)
    elif isinstance(v, mo.Elementary) and args.reduced:
        e1, e2 = mo.elementary_expected_dets(K, [list(r) for r in v.A], spec.theta)
        oracle = e1 if args.system == "h1" else e2
    if oracle is not None:
        ok = el.equal_up_to_scalar(d, oracle)
        rep.add("closed_form", oracle)
        rep.add("matches_closed_form", ok)
        if not ok:
            raise VerificationFailed("determinant differs from the closed form")


def _tate_one(payload):
    field, theta, family, coeffs, bind, c_text, N, thr = payload
    ns = argparse.Namespace(field=field, theta=theta, family=family, coeffs=coeffs, bind=bind,
                            twist=0, zero_dual=False)
    K = field_make(field)
    b = _bindings(ns, K)
    spec = _motive(ns, K, b)
    c = _scalar(c_text, K, b)
    ts = mo.tate_system(spec, c)
    op = ts.system.rows[0][0] if ts.system.nrows == 1 else el.det_column(ts.system, 1)
    try:
        r = so.tate_small_rank(spec, c, N, threshold=Fraction(thr), method="valuations")
        sr = (r.rank, r.method)
    except AndersonError as ex:
        sr = (f"unavailable ({type(ex).__name__})", "none")
    return c_text, str(op), sr


def cmd_tate(args, rep):
    K = _field(args)
    b = _bindings(args, K)
    spec = _motive(args, K, b)
    rep.add("field", spec_of(K))
    rep.add("family", _family(spec))
    if args.c == "all":
        consts = K.constants if hasattr(K, "constants") else None
        if consts is None:
            raise ParseError("--c all needs a rational function field")
        cs = [str(x) for x in consts.elements()]
    else:
        cs = [args.c]
    payloads = [(args.field, args.theta, args.family, args.coeffs, args.bind, c, args.trunc, args.threshold)
                for c in cs]
    if args.par and args.par > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=args.par) as ex:
            results = list(ex.map(_tate_one, payloads))
    else:
        results = [_tate_one(p) for p in payloads]
    rep.add("N", args.trunc)
    rep.add("threshold", Fraction(args.threshold))
    ranks = set()
    for c, op, (r, method) in results:
        rep.add(f"c={c}.operator", op)
        rep.add(f"c={c}.small_rank", r)
        rep.add(f"c={c}.method", method)
        ranks.add(r)
    rep.add("ranks_agree", len(ranks) == 1)


def _witness(args, which, K, binds, rng, length):
    op_text = getattr(args, which)
    shape_text = getattr(args, f"shape_{which}")
    if shape_text:
        parts = [int(x) for x in shape_text.split(",")]
        sh = Shape(parts[0], parts[1], tuple(parts[2:]))
        return random_witness(K, sh, length, rng)
    if not op_text:
        raise ParseError(f"give --{which} or --shape-{which}")
    P = parse_anderson(op_text, K, binds)
    pre = getattr(args, f"{which}_prefix")
    if pre:
        xs = [_scalar(t, K, binds) for t in pre.split(";")]
        return HolonomicWitness(P, xs)
    from .holonomic import StateGraph
    G = StateGraph(P, K)
    starts = sorted(k for k in G.alive if any(k))
    if not starts:
        raise MathDegenerate("no nonzero sequence of this operator stays in the field")
    st = G.states[starts[rng.randrange(len(starts))]]
    return HolonomicWitness(P, G.walk(list(st), length))


def cmd_holo_sum(args, rep):
    K = _field(args)
    if not isinstance(K, FiniteField):
        raise FieldError("holo-sum builds witnesses over a finite field")
    b = _bindings(args, K)
    rng = random.Random(args.seed)
    L = args.length
    wx = _witness(args, "x", K, b, rng, L)
    wy = _witness(args, "y", K, b, rng, L)
    rep.add("field", spec_of(K))
    rep.add("seed", args.seed)
    rep.add("x.operator", wx.operator)
    rep.add("y.operator", wy.operator)
    rep.add("x.prefix", [str(x) for x in wx.prefix])
    rep.add("y.prefix", [str(x) for x in wy.prefix])
    plan = plan_dimensions(wx.shape(), wy.shape(), args.target, args.lam)
    rep.add("profile", plan.profile)
    rep.add("lambda", plan.lam)
    rep.add("min_lambda", plan.min_lambda)
    rep.add("dim_V", plan.dim_V)
    rep.add("dim_V0", plan.dim_V0)
    rep.add("dim_V1", plan.dim_V1)
    for k, f in sorted(plan.formula.items()):
        rep.add(f"formula.{k}", f)
    res = sum_annihilator(wx, wy, plan)
    rep.add("rank_V0", res.rank_V0)
    rep.add("intersection_dim", res.intersection_dim)
    rep.add("operator", res.operator)
    rep.add("shape", f"(n={res.shape[0]}, r0={res.shape[1]})")
    rep.add("annihilates_prefix", True)


def cmd_verify(args, rep):
    with open(args.report, encoding="utf-8") as fh:
        saved = fh.read()
    meta = parse_report(saved)
    if meta.get("schema") != SCHEMA:
        raise ParseError(f"not a {SCHEMA} report")
    argv = json.loads(meta["argv"])
    fresh = run(argv)
    same = fresh == saved
    rep.add("report", args.report)
    rep.add("replayed_command", meta.get("command"))
    rep.add("identical", same)
    if not same:
        raise VerificationFailed("replayed report differs from the saved one")


COMMANDS = {
    "det": cmd_det, "cofactors": cmd_cofactors, "eliminate": cmd_eliminate,
    "presultant": cmd_presultant, "rgcd": cmd_rgcd, "rank": cmd_rank, "solve": cmd_solve,
    "smallrank": cmd_smallrank, "motive": cmd_motive, "tate": cmd_tate,
    "holo-sum": cmd_holo_sum, "verify": cmd_verify,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="GF(3)(th)", help="GF(q^m[,q=..]), GF(q)(th) or Laurent(GF(..), e=, prec=)")
    common.add_argument("--trunc", type=int, default=10, metavar="N", help="truncation order T^N")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("human", "structured"), default="structured")
    common.add_argument("--cap-ext", type=int, default=None,
                        help="largest extension degree over F_q (1024 exact, 16 Laurent)")
    common.add_argument("--par", type=int, default=1, help="worker processes for independent batches")
    common.add_argument("--bind", action="append", metavar="NAME=EXPR", help="bind a name used in expressions")
    common.add_argument("--theta", help="theta for finite coefficient fields")

    p = argparse.ArgumentParser(prog="anderson", description="Anderson-ring elimination workbench")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    for name, help_ in (("det", "column determinant det_{i,c}"), ("cofactors", "cofactors of det_{i,c}"),
                        ("eliminate", "det_{i,c} for every column")):
        s = add(name, help_)
        s.add_argument("matrix")
        s.add_argument("--col", type=int, default=1, help="kept column (1-based)")
        s.add_argument("--profile", help="cofactor supports, e.g. '0,1,2;1'")
        s.add_argument("--raw", action="store_true", help="skip primitive normalization")
        if name == "det":
            s.add_argument("--expect", help="expression to compare up to a scalar")
    for name, help_ in (("presultant", "p-resultant of two twisted polynomials"),
                        ("rgcd", "right gcd of two twisted polynomials")):
        s = add(name, help_)
        s.add_argument("f")
        s.add_argument("g")
    s = add("rank", "head rank with the reduction trace")
    s.add_argument("matrix")
    s = add("solve", "truncated solutions modulo T^N")
    s.add_argument("matrix")
    s.add_argument("--no-projection", action="store_true")
    s = add("smallrank", "small rank of one equation")
    s.add_argument("matrix")
    s.add_argument("--method", choices=("auto", "digits", "valuations"), default="auto")
    s.add_argument("--threshold", default="1/2")
    for name in ("motive", "tate"):
        s = add(name, "motive systems and determinants" if name == "motive" else "Tate recursions and small ranks")
        s.add_argument("family", choices=("drinfeld", "dual-drinfeld", "elementary", "carlitz"))
        s.add_argument("--coeffs", help="a_1;...;a_(r-1) or a matrix for elementary")
        s.add_argument("--twist", type=int, default=0, help="Carlitz twist power")
        s.add_argument("--zero-dual", action="store_true")
        if name == "motive":
            s.add_argument("--system", choices=("h1", "h_1"), default="h1")
            s.add_argument("--col", type=int)
            s.add_argument("--reduced", action="store_true", help="elementary: use the reduced n x n system")
        else:
            s.add_argument("--c", default="0", help="the prime is T + c; 'all' sweeps F_q")
            s.add_argument("--threshold", default="1/2")
    s = add("holo-sum", "annihilator of the memberwise sum of two sequences")
    for w in ("x", "y"):
        s.add_argument(f"--{w}", help="operator")
        s.add_argument(f"--shape-{w}", help="random operator of shape r0,n,kappa_1,..")
        s.add_argument(f"--{w}-prefix", help="x_0;x_1;...")
    s.add_argument("--target", type=int, default=2, help="target tail length")
    s.add_argument("--lam", type=int, help="head degree (default: minimal)")
    s.add_argument("--length", type=int, default=50)
    s = add("verify", "replay a saved structured report")
    s.add_argument("report")
    return p


def run(argv):
    """Execute a command and return the structured report text (raises on errors)."""
    args = build_parser().parse_args(argv)
    rep = Report(args.command, list(argv))
    COMMANDS[args.command](args, rep)
    return rep.render("structured")


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as ex:
        return ex.code if isinstance(ex.code, int) else 2
    rep = Report(args.command, argv)
    try:
        COMMANDS[args.command](args, rep)
    except (ParseError, FieldError, UnsupportedShape) as ex:
        print(f"error={type(ex).__name__}: {ex}", file=sys.stderr)
        return 2
    except MathDegenerate as ex:
        print(f"error={type(ex).__name__}: {ex}", file=sys.stderr)
        return 3
    except VerificationFailed as ex:
        sys.stdout.write(rep.render(args.format))
        print(f"error=VerificationFailed: {ex}", file=sys.stderr)
        return 4
    except OSError as ex:
        print(f"error={type(ex).__name__}: {ex}", file=sys.stderr)
        return 2
    except AndersonError as ex:
        print(f"error={type(ex).__name__}: {ex}", file=sys.stderr)
        return 3
    except Exception as ex:  # a bug: surface it as an internal failure
        print(f"error=internal {type(ex).__name__}: {ex}", file=sys.stderr)
        return 4
    sys.stdout.write(rep.render(args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
