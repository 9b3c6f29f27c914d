"""Holonomic sequences and closure under memberwise sum.

A sequence x_0, x_1, ... is holonomic when X = sum x_i T^i solves P X = 0
for a nonzero P in K[T]{t}.  Coefficient m of P X is

    sum_beta P_beta(x_(m - beta)),     P_beta = sum_gamma b_(beta gamma) t^gamma,

with x_i = 0 for i < 0.  The sum of two holonomic sequences is annihilated by
an operator found with indeterminate coefficients: the relations of both
inputs, shifted and twisted, span V0 inside the space V of formal symbols
x_(i+a)^(q^b), y_(i+a)^(q^b); the sum symbols span V1; any nonzero vector of
V0 /\\ V1 gives the coefficients of the new operator.
"""

from dataclasses import dataclass, field as dc_field
from itertools import product
from math import ceil
from typing import List, Optional, Tuple

from .additive import AdditiveMap, extension
from .errors import EmptyIntersection, FieldError, NoExtension, UnsupportedShape, VerificationFailed
from .gf import FiniteField
from .linalg import nullspace_field, rank_field, rref_field
from .ore import AndersonPoly, anderson_ring


# ------------------------------------------------------------------ shapes

@dataclass(frozen=True)
class Shape:
    """(r0, n, kappa_1..kappa_n): head rank, tail length, tail t-degrees (-1 when absent)."""
    r0: int
    n: int
    kappas: Tuple[int, ...] = ()

    @classmethod
    def of(cls, P):
        if not P:
            raise FieldError("the zero operator has no shape")
        n = P.tail_length()
        kap = [-1] * n
        for b, g, _ in P.bidegrees():
            if b >= 1:
                kap[b - 1] = max(kap[b - 1], g)
        return cls(P.rank(), n, tuple(kap))

    def terms(self):
        """(beta, gamma) pairs a generic operator of this shape carries."""
        out = [(0, g) for g in range(self.r0 + 1)]
        for b, k in enumerate(self.kappas, start=1):
            out += [(b, g) for g in range(k + 1)]
        return out

    def __str__(self):
        return f"(r0={self.r0}, n={self.n}, kappa={list(self.kappas)})"


# --------------------------------------------------------------- witnesses

class HolonomicWitness:
    """An operator P with a prefix x_0..x_L satisfying every checkable relation of P X = 0.

    Coefficient m of P X involves x_(m-n)..x_m.  A relation is checkable when that
    window lies inside the prefix (n <= m <= L); the initial terms x_0..x_(n-1) are
    then free.  With strict=True the low coefficients m < n must vanish as well
    (x_i = 0 for i < 0), i.e. X itself solves P X = 0 modulo T^(L+1).
    """

    def __init__(self, operator, prefix, strict=False, check=True):
        self.operator = operator
        self.prefix = list(prefix)
        self.strict = strict
        if check and not self.holds():
            raise VerificationFailed("prefix violates the operator's relations")

    @property
    def field(self):
        return self.operator.ring.K

    def __len__(self):
        return len(self.prefix)

    def residuals(self):
        """Coefficients 0..L of P X, zero-extending below x_0."""
        return self.operator.apply(self.prefix, len(self.prefix))

    def checked_indices(self):
        lo = 0 if self.strict else self.operator.tail_length()
        return range(lo, len(self.prefix))

    def holds(self):
        res = self.residuals()
        return all(not res[m] for m in self.checked_indices())

    def shape(self):
        return Shape.of(self.operator)

    def __add__(self, other):
        """Memberwise sum of prefixes, carried with no operator check (the operator is unknown)."""
        n = min(len(self), len(other))
        return [a + b for a, b in zip(self.prefix[:n], other.prefix[:n])]

    def __repr__(self):
        return f"HolonomicWitness(P={self.operator}, len={len(self)}, strict={self.strict})"


def change_field(P, L):
    """P with coefficients carried into the finite field L."""
    K = P.ring.K
    if K is L:
        return P
    emb = K.embedding_into(L)
    R = anderson_ring(L)
    return R.from_terms({(g, b): emb(c) for b, g, c in P.bidegrees()})


def _candidates(H, rhs, L, limit):
    """All x in L with head(x) = rhs, nonzero ones first, or [] when none."""
    part = H.particular([rhs])
    if part is None:
        return []
    x0 = part[0]
    basis = [v[0] for v in H.basis]
    if L.q ** len(basis) > limit:
        basis = basis[: max(0, int(round(_log(limit, L.q))))]
    scal = list(L.constants_field().elements())
    emb = L.constants_field().embedding_into(L)
    scal = [emb(c) for c in scal]
    out = []
    for cs in product(scal, repeat=len(basis)):
        x = x0
        for c, k in zip(cs, basis):
            if c:
                x = x + c * k
        out.append(x)
    out.sort(key=lambda x: (not x, x.v if hasattr(x, "v") else 0))
    return out


def _log(a, b):
    k, acc = 0, 1
    while acc * b <= a:
        acc *= b
        k += 1
    return k


STATE_LIMIT = 4096


class StateGraph:
    """States are the last n terms; edges are the admissible next terms.

    ``alive`` holds the states with an infinite future (greatest fixed point).
    """

    def __init__(self, P, L):
        n = P.tail_length()
        H = AdditiveMap([[list(P.head().c)]], L)
        slices = [P.t_slice(b) for b in range(1, n + 1)]
        elems = list(L.elements())

        def succ(state):
            rhs = L.zero
            for b, S in enumerate(slices, start=1):
                if S:
                    rhs = rhs - S(state[n - b])
            return _candidates(H, rhs, L, L.order)

        states = list(product(elems, repeat=n))
        self.n, self.L = n, L
        self.states = {self.key(st): st for st in states}
        self.next = {self.key(st): [(y, self.key(st[1:] + (y,))) for y in succ(st)] for st in states}
        alive = set(self.next)
        changed = True
        while changed:
            changed = False
            for k in list(alive):
                if not any(t in alive for _, t in self.next[k]):
                    alive.discard(k)
                    changed = True
        self.alive = alive

    @staticmethod
    def key(st):
        return tuple(x.v for x in st)

    def walk(self, prefix, upto):
        n, L = self.n, self.L
        xs = list(prefix)
        pad = [L.zero] * n + xs
        state = tuple(pad[len(pad) - n:]) if n else ()
        if self.key(state) not in self.alive:
            return None
        while len(xs) < upto:
            for y, t in self.next[self.key(state)]:
                if t in self.alive:
                    xs.append(y)
                    state = state[1:] + (y,) if n else ()
                    break
        return xs


def _extend_graph(P, prefix, upto, L):
    return StateGraph(P, L).walk(prefix, upto)


def _extend_in(P, prefix, upto, L, budget, branch_limit):
    """Prefix of length `upto` over L, or None when every branch dies in L."""
    if L.order ** P.tail_length() <= STATE_LIMIT:
        return _extend_graph(P, prefix, upto, L)
    return _extend_dfs(P, prefix, upto, L, budget, branch_limit)


def _extend_dfs(P, prefix, upto, L, budget, branch_limit):
    """Depth-first search for a prefix of length `upto` over L; None when stuck."""
    H = AdditiveMap([[list(P.head().c)]], L)
    slices = [P.t_slice(b) for b in range(1, P.tail_length() + 1)]
    xs = list(prefix)

    def rhs_at(m):
        acc = L.zero
        for b, S in enumerate(slices, start=1):
            if m - b >= 0 and S:
                acc = acc - S(xs[m - b])
        return acc

    start = len(xs)
    if start >= upto:
        return xs[:upto]
    stack = [_candidates(H, rhs_at(start), L, branch_limit)]
    nodes = 0
    while stack:
        if not stack[-1]:
            stack.pop()
            if len(xs) > start:
                xs.pop()
            continue
        nodes += 1
        if nodes > budget:
            return None
        x = stack[-1].pop(0)
        xs.append(x)
        if len(xs) == upto:
            return xs
        stack.append(_candidates(H, rhs_at(len(xs)), L, branch_limit))
        if not stack[-1]:
            stack.pop()
            xs.pop()
    return None


def extend_sequence(w, upto, cap_ext=16, budget=20000, branch_limit=64):
    """Extend the witness prefix to length `upto` by solving for the top term.

    Level m requires head(x_m) = -sum_(beta>=1) P_beta(x_(m-beta)).  Over a
    finite field every root in the current field is a branch; a depth-first
    search backtracks out of dead ends.  When no branch survives, the field is
    enlarged (degree doubling, total degree <= cap_ext over F_q).  A head of
    t-degree 0 is a plain linear recurrence and needs no search.
    """
    P = w.operator
    K = P.ring.K
    head = P.head()
    if not head:
        raise NoExtension("the head vanishes: the top term is not determined")
    if head.degree == 0:
        xs = list(w.prefix)
        inv = head.c[0].inverse() if hasattr(head.c[0], "inverse") else 1 / head.c[0]
        slices = [P.t_slice(b) for b in range(1, P.tail_length() + 1)]
        while len(xs) < upto:
            m = len(xs)
            acc = K.zero
            for b, S in enumerate(slices, start=1):
                if m - b >= 0 and S:
                    acc = acc - S(xs[m - b])
            xs.append(acc * inv)
        return HolonomicWitness(P, xs, strict=w.strict)
    if not isinstance(K, FiniteField):
        raise NoExtension("root extraction for the top term needs a finite field")
    L = K
    base = K.n // K.q_exponent
    while True:
        PL = change_field(P, L)
        emb = K.embedding_into(L) if L is not K else (lambda x: x)
        pre = [emb(x) for x in w.prefix]
        xs = _extend_in(PL, pre, upto, L, budget, branch_limit)
        if xs is not None:
            return HolonomicWitness(PL, xs, strict=w.strict)
        d = L.n // L.q_exponent
        if 2 * d > cap_ext * base:
            raise NoExtension(f"no branch of length {upto} within extension degree {cap_ext}")
        L = extension(K, 2 * d // base)


# ------------------------------------------------------------------ planner

def degree_profile(n_target, lam, m):
    """lambda_alpha = lambda - ceil((n_target - alpha) / m), alpha = 0..n_target."""
    return [lam - ceil((n_target - a) / m) for a in range(n_target + 1)]


def admissible(shape, profile):
    """(s, j): relation shifted by s and twisted by j whose symbols all fit the profile."""
    n_t = len(profile) - 1
    out = []
    for s in range(0, n_t - shape.n + 1):
        jmax = None
        for b, g in shape.terms():
            bound = profile[s + shape.n - b] - g
            jmax = bound if jmax is None else min(jmax, bound)
        for j in range(0, (jmax if jmax is not None else -1) + 1):
            out.append((s, j))
    return out


@dataclass
class ClosurePlan:
    shape_x: Shape
    shape_y: Shape
    n_target: int
    lam: int
    profile: List[int]
    symbols: List[Tuple[int, int]]
    rows_x: List[Tuple[int, int]]
    rows_y: List[Tuple[int, int]]
    min_lambda: Optional[int] = None
    formula: dict = dc_field(default_factory=dict)

    @property
    def dim_V1(self):
        return len(self.symbols)

    @property
    def dim_V(self):
        return 2 * len(self.symbols)

    @property
    def dim_V0(self):
        return len(self.rows_x) + len(self.rows_y)

    @property
    def ledger(self):
        return (self.dim_V, self.dim_V0, self.dim_V1)

    @property
    def succeeds(self):
        return self.dim_V0 + self.dim_V1 > self.dim_V

    def __str__(self):
        return (f"n_target={self.n_target} lambda={self.lam} profile={self.profile} "
                f"dim_V={self.dim_V} dim_V0={self.dim_V0} dim_V1={self.dim_V1} "
                f"min_lambda={self.min_lambda}")


def _plan_at(sx, sy, n_target, lam, m):
    prof = degree_profile(n_target, lam, m)
    if min(prof) < 0:
        return None
    symbols = [(a, b) for a in range(n_target + 1) for b in range(prof[a] + 1)]
    return ClosurePlan(sx, sy, n_target, lam, prof, symbols, admissible(sx, prof), admissible(sy, prof))


def _linear(f, lo):
    """f(lam) = a lam + b for large lam, from two far samples; returned as (a, b)."""
    x1, x2 = lo + 64, lo + 128
    y1, y2 = f(x1), f(x2)
    a = (y2 - y1) // (x2 - x1)
    return a, y1 - a * x1


def _fmt(a, b):
    s = f"{a}λ" if a != 1 else "λ"
    if b:
        s += f"{'+' if b > 0 else '-'}{abs(b)}"
    return s


def plan_dimensions(shape_x, shape_y, n_target, lam=None, max_lambda=512):
    """Dimension ledger for a target tail length; minimal lambda when `lam` is None.

    Shapes are Shape instances or (r0, n, kappas) tuples.  The degree profile
    drops by one every m shifts, m the larger input tail length.
    """
    sx = shape_x if isinstance(shape_x, Shape) else Shape(shape_x[0], shape_x[1], tuple(shape_x[2]))
    sy = shape_y if isinstance(shape_y, Shape) else Shape(shape_y[0], shape_y[1], tuple(shape_y[2]))
    m = max(sx.n, sy.n)
    if m < 1 or n_target < m:
        raise UnsupportedShape(f"target tail length {n_target} cannot carry inputs of tail length {m}")
    if len(sx.kappas) != sx.n or len(sy.kappas) != sy.n:
        raise UnsupportedShape("kappas must list one degree per tail coefficient")
    lo = ceil(n_target / m)

    def ledger(l):
        p = _plan_at(sx, sy, n_target, l, m)
        return p.dim_V0 + p.dim_V1 - p.dim_V

    first = None
    for l in range(lo, max_lambda + 1):
        if ledger(l) > 0:
            first = l
            break
    if first is None:
        raise UnsupportedShape(f"no lambda <= {max_lambda} satisfies dim V0 + dim V1 > dim V")
    plan = _plan_at(sx, sy, n_target, first if lam is None else lam, m)
    if plan is None:
        raise UnsupportedShape(f"lambda={lam} gives a negative degree bound")
    plan.min_lambda = first
    plan.formula = {
        "dim_V": _fmt(*_linear(lambda l: _plan_at(sx, sy, n_target, l, m).dim_V, lo)),
        "dim_V0": _fmt(*_linear(lambda l: _plan_at(sx, sy, n_target, l, m).dim_V0, lo)),
        "dim_V1": _fmt(*_linear(lambda l: _plan_at(sx, sy, n_target, l, m).dim_V1, lo)),
    }
    return plan


# ---------------------------------------------------------------- annihilator

def _relation_rows(P, shape, rows, index, K):
    out = []
    for s, j in rows:
        v = [K.zero] * len(index)
        for b, g, c in P.bidegrees():
            v[index[(s + shape.n - b, g + j)]] = c.twist(j)
        out.append(v)
    return out


@dataclass
class ClosureResult:
    operator: AndersonPoly
    plan: ClosurePlan
    rank_V0: int
    intersection_dim: int

    @property
    def shape(self):
        return (self.operator.tail_length(), self.operator.rank())

    def __str__(self):
        return (f"{self.plan} rank_V0={self.rank_V0} intersection={self.intersection_dim} "
                f"shape=(n={self.shape[0]}, r0={self.shape[1]}) P={self.operator}")


def _common(wx, wy):
    Kx, Ky = wx.field, wy.field
    if Kx is Ky:
        return wx, wy
    if isinstance(Kx, FiniteField) and isinstance(Ky, FiniteField) and Kx.p == Ky.p and Kx.q == Ky.q:
        from math import lcm
        L = extension(Kx.constants_field(), lcm(Kx.n, Ky.n) // Kx.q_exponent)

        def lift(w):
            e = w.field.embedding_into(L)
            return HolonomicWitness(change_field(w.operator, L), [e(x) for x in w.prefix], strict=w.strict)
        return lift(wx), lift(wy)
    raise FieldError("witnesses live over incompatible fields")


def sum_annihilator(wx, wy, plan, verify=True):
    """Operator of the plan's shape annihilating x + y, as a ClosureResult.

    Raises EmptyIntersection when V0 /\\ V1 = 0 for this plan.
    """
    wx, wy = _common(wx, wy)
    K = wx.field
    index = {s: k for k, s in enumerate(plan.symbols)}
    Rx = _relation_rows(wx.operator, plan.shape_x, plan.rows_x, index, K)
    Ry = _relation_rows(wy.operator, plan.shape_y, plan.rows_y, index, K)
    rank_V0 = (rank_field(Rx) if Rx else 0) + (rank_field(Ry) if Ry else 0)
    # c in rowspace(Rx) /\ rowspace(Ry): u Rx = w Ry
    stacked = Rx + [[-a for a in r] for r in Ry]
    if not Rx or not Ry:
        raise EmptyIntersection("one input has no admissible relation")
    M = [[stacked[i][c] for i in range(len(stacked))] for c in range(len(index))]
    ker = nullspace_field(M, len(stacked), K.zero, K.one)
    vecs = []
    for u in ker:
        c = [K.zero] * len(index)
        for ui, row in zip(u[: len(Rx)], Rx):
            if ui:
                c = [a + ui * b for a, b in zip(c, row)]
        if any(c):
            vecs.append(c)
    if not vecs:
        raise EmptyIntersection(f"V0 and V1 meet trivially at lambda={plan.lam}")
    # echelon form with symbols ordered from the top shift and top power down,
    # so the first basis vector carries the largest head available
    order = sorted(range(len(plan.symbols)), key=lambda k: plan.symbols[k], reverse=True)
    R, piv = rref_field([[v[k] for k in order] for v in vecs])
    R = [r for r in R if any(r)]
    # keep the full tail length too: when the first vector has no alpha = 0 part,
    # add the first basis vector that has one (the leading symbol is untouched)
    bottom = [pos for pos, k in enumerate(order) if plan.symbols[k][0] == 0]
    v = R[0]
    if not any(v[pos] for pos in bottom):
        extra = next((r for r in R[1:] if any(r[pos] for pos in bottom)), None)
        if extra is not None:
            v = [a + b for a, b in zip(v, extra)]
    c = [K.zero] * len(order)
    for pos, k in enumerate(order):
        c[k] = v[pos]
    terms = {}
    for (a, b), x in zip(plan.symbols, c):
        if x:
            terms[(b, plan.n_target - a)] = x
    P = anderson_ring(K).from_terms(terms)
    result = ClosureResult(P, plan, rank_V0, len(R))
    if verify:
        z = wx + wy
        if not HolonomicWitness(P, z, strict=wx.strict and wy.strict, check=False).holds():
            raise VerificationFailed("closure operator does not annihilate the summed prefix")
    return result


def sum_closure(wx, wy, n_target, extra=8):
    """Plan, then enlarge lambda past rank deficiencies until V0 /\\ V1 != 0."""
    plan = plan_dimensions(wx.shape(), wy.shape(), n_target)
    last = None
    for lam in range(plan.lam, plan.lam + extra + 1):
        p = plan if lam == plan.lam else plan_dimensions(wx.shape(), wy.shape(), n_target, lam)
        try:
            return sum_annihilator(wx, wy, p)
        except EmptyIntersection as ex:
            last = ex
    raise last


def random_witness(K, shape, length, rng, tries=200):
    """A random operator of the given shape over the small finite field K, with a
    prefix of `length` terms that never dies out in K.

    The free initial terms x_0..x_(n-1) are drawn among the nonzero states with an
    infinite future; operators without such a state are redrawn.
    """
    sh = shape if isinstance(shape, Shape) else Shape(shape[0], shape[1], tuple(shape[2]))
    R = anderson_ring(K)
    for _ in range(tries):
        t = {(g, 0): K.random(rng) for g in range(sh.r0)}
        t[(sh.r0, 0)] = K.random(rng, nonzero=True)
        for b, k in enumerate(sh.kappas, start=1):
            for g in range(k):
                t[(g, b)] = K.random(rng)
            if k >= 0:
                t[(k, b)] = K.random(rng, nonzero=True)
        P = R.from_terms(t)
        if P.tail_length() != sh.n:
            continue
        G = StateGraph(P, K)
        starts = sorted(k for k in G.alive if any(k))
        if not starts:
            continue
        st = G.states[starts[rng.randrange(len(starts))]]
        return HolonomicWitness(P, G.walk(list(st), length))
    raise NoExtension(f"no witness of shape {sh} found in {tries} draws")
