"""Coefficientwise solving of affine systems modulo T^N.

Coefficient beta of row i of P X reads

    sum_j sum_(b, g) a_(ij; b g) x_(j, beta-b)^(q^g) = 0,

so x_(*, beta) solves the head system (the b = 0 part) with a right-hand
side built from earlier levels.  At each level the solution set is a coset
of one fixed kernel; solutions are carried as basis + particular, never
enumerated (except by the brute-force oracles at the end).
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional

from .additive import (AdditiveMap, AdditivePoly, FpLinearMap, additive_roots_laurent,
                       extension, solve_laurent)
from .errors import (FieldError, InconsistentLevel, NonterminatingReduction, NoSolution, NotAQthPower,
                     QthRootUnavailable, RamificationRequired, ResidueFieldTooSmall,
                     TruncationTooSmall, VerificationFailed)
from .gf import FiniteField
from .laurent import LaurentField
from .linalg import det_field, nullspace_field
from .ore import AffineSystem, anderson_ring
from .polynomial import Poly


# ------------------------------------------------------------ ring changes

def change_ring(system, L):
    """The same system with coefficients pushed into the field L."""
    K = system.K
    if K is L:
        return system
    if isinstance(K, FiniteField) and isinstance(L, FiniteField):
        emb = K.embedding_into(L)
    else:
        emb = L
    ring = anderson_ring(L)
    Tring = ring.Tring
    rows = []
    for row in system.rows:
        out = []
        for P in row:
            out.append(type(P)(ring, [Poly(Tring, [emb(c) for c in f.c]) for f in P.c]))
        rows.append(out)
    return AffineSystem(ring, rows)


# ------------------------------------------------------------ head systems

class HeadSystem:
    """The level-0 additive system R_i = sum_j f_ij(x_j0)."""

    def __init__(self, rows):
        self.rows = [list(r) for r in rows]  # OrePoly entries
        self.K = self.rows[0][0].ring.K

    @classmethod
    def of(cls, system):
        return cls([[P.head() for P in row] for row in system.rows])

    @property
    def m(self):
        return [max((f.degree for f in row), default=-1) for row in self.rows]

    @property
    def A(self):
        return [[f[0] for f in row] for row in self.rows]

    def A_det(self):
        return det_field(self.A, self.K.zero, self.K.one)

    def coefficient_lists(self, emb=None):
        emb = emb or (lambda x: x)
        width = max(max(self.m), 0) + 1
        return [[[emb(f[g]) for g in range(width)] for f in row] for row in self.rows]

    def __str__(self):
        return "[" + ",".join("[" + ",".join(str(f) for f in r) + "]" for r in self.rows) + "]"


@dataclass
class ReductionRound:
    A: list
    corank: int
    m_before: list
    m_after: list
    rows_replaced: list


def _left_kernel(A, K):
    At = [list(c) for c in zip(*A)]
    return nullspace_field(At, len(A), K.zero, K.one)


def head_rank(system, max_rounds=64):
    """(sum of m_i after the q-th-root reduction, trace of reduction rounds).

    While the linear part A is singular, left-kernel combinations replace
    rows (the row of largest degree in each combination's support), the new
    rows lose their linear terms, and their q-th roots are taken.
    """
    H = HeadSystem.of(system) if isinstance(system, AffineSystem) else system
    K = H.K
    rows = [list(r) for r in H.rows]
    trace = []
    for _ in range(max_rounds):
        cur = HeadSystem(rows)
        A = cur.A
        if not all(not f for r in rows for f in r) and det_field(A, K.zero, K.one):
            return sum(max(mi, 0) for mi in cur.m), trace
        ker = _left_kernel(A, K)
        if not ker:
            return sum(max(mi, 0) for mi in cur.m), trace
        m = cur.m
        # echelonize so that each vector owns a pivot of maximal degree in its support
        vecs = [list(v) for v in ker]
        used, plan = set(), []
        for v in vecs:
            for u, piv in plan:
                if v[piv]:
                    f = v[piv] / u[piv]
                    v = [a - f * b for a, b in zip(v, u)]
            support = [i for i, x in enumerate(v) if x and i not in used]
            if not support:
                continue
            piv = max(support, key=lambda i: (m[i], -i))
            plan.append((v, piv))
            used.add(piv)
        new_rows = [list(r) for r in rows]
        replaced = []
        for v, piv in plan:
            ore = rows[0][0].ring
            comb = [ore([]) for _ in rows[0]]
            for i, c in enumerate(v):
                if c:
                    comb = [a + f.left_scale(c) for a, f in zip(comb, rows[i])]
            rooted = []
            for f in comb:
                if f and f[0]:
                    raise NonterminatingReduction("combination kept a linear term")
                try:
                    rooted.append(ore([c.twist(-1) for c in f.c[1:]]))
                except NotAQthPower as ex:
                    raise QthRootUnavailable(str(ex)) from ex
            new_rows[piv] = rooted
            replaced.append(piv)
        rows = new_rows
        trace.append(ReductionRound(A, len(plan), m, HeadSystem(rows).m, replaced))
        if all(not f for f in rows[replaced[0]]) if replaced else False:
            # a row collapsed to zero: the head is degenerate
            return sum(max(mi, 0) for mi in HeadSystem(rows).m), trace
    raise NonterminatingReduction(f"no stable head after {max_rounds} rounds")


# ------------------------------------------------------------ solutions

@dataclass
class TruncatedSolution:
    X: list                      # mu lists of N coefficients
    N: int
    field: object
    valuations: Optional[list] = None
    small: Optional[bool] = None
    multiplicity: int = 1

    def coordinate(self, j):
        return self.X[j]

    def shift_up(self):
        """T * X re-truncated to N."""
        z = self.field.zero
        return TruncatedSolution([[z] + xs[:-1] for xs in self.X], self.N, self.field)

    def divide_by_T(self):
        if any(xs[0] for xs in self.X):
            raise FieldError("not divisible by T")
        return TruncatedSolution([xs[1:] for xs in self.X], self.N - 1, self.field)

    def __add__(self, other):
        return TruncatedSolution([[a + b for a, b in zip(u, v)] for u, v in zip(self.X, other.X)],
                                 self.N, self.field)

    def scale(self, c):
        return TruncatedSolution([[c * a for a in u] for u in self.X], self.N, self.field)


class SolutionBasis(list):
    """Generators of the truncated solution module, plus solve metadata."""

    def __init__(self, items, system, N, field, head_dimension):
        super().__init__(items)
        self.system = system
        self.N = N
        self.field = field
        self.head_dimension = head_dimension


def _level_rhs(system, X, beta):
    """-(sum over b >= 1 of the T^b part) at coefficient beta, per row."""
    L = system.K
    out = []
    for row in system.rows:
        acc = L.zero
        for j, P in enumerate(row):
            for b, g, c in P.bidegrees():
                if b == 0 or beta - b < 0:
                    continue
                x = X[j][beta - b]
                if x:
                    acc = acc + c * x.twist(g)
        out.append(-acc)
    return out


def _lift_exact(system, H, x0, N):
    """Extend a level-0 solution through N levels; H is a factored AdditiveMap."""
    L = system.K
    mu = system.ncols
    X = [[x0[j]] for j in range(mu)]
    for beta in range(1, N):
        rhs = _level_rhs(system, X, beta)
        if all(not r for r in rhs):
            xs = [L.zero] * mu
        else:
            xs = H.particular(rhs)
            if xs is None:
                raise InconsistentLevel(beta)
        for j in range(mu):
            X[j].append(xs[j])
    return X


def _extension_degrees(d0, p, cap):
    """d0, d0 p, d0 p^2, ...: the unipotent part of the Galois action has p-power order."""
    d = d0
    while d <= cap:
        yield d
        d *= p


def solve_truncated(system, N, mode=None, cap_ext=None, expected_dimension=None):
    """Generators of {X mod T^N : P X = 0 mod T^N}.

    exact mode (finite K): the smallest extension whose level-0 kernel
    reaches the head rank is found first (degree d0); higher levels then
    need degrees d0 p^k.  Total extension degree stays <= cap_ext over F_q
    (default 1024; it grows roughly like p^(log_p N)).
    laurent mode: scalar equations over a Laurent field; generators are the
    Newton-polygon root branches lifted with the dominant-term particular
    solution at each level; cap_ext (default 16) bounds residue extensions.
    """
    K = system.K
    if mode is None:
        mode = "laurent" if isinstance(K, LaurentField) else "exact"
    if N < 1:
        raise TruncationTooSmall("N must be positive")
    if mode == "laurent":
        return _solve_laurent(system, N, 16 if cap_ext is None else cap_ext)
    cap_ext = 1024 if cap_ext is None else cap_ext
    if not isinstance(K, FiniteField):
        raise FieldError("exact mode needs a finite coefficient field")
    target = head_rank(system)[0] if expected_dimension is None else expected_dimension
    base = K.n // K.q_exponent
    dmax = max(cap_ext // base, 1)
    d0 = None
    for d in range(1, dmax + 1):
        L = extension(K, d) if d > 1 else K
        S = change_ring(system, L)
        if AdditiveMap(HeadSystem.of(S).coefficient_lists(), L).map.rank <= S.ncols * L.n - target * L.q_exponent:
            d0 = d
            break
    if d0 is None:
        raise ResidueFieldTooSmall(None)
    last = None
    for d in _extension_degrees(d0, K.p, dmax):
        L = extension(K, d) if d > 1 else K
        S = change_ring(system, L)
        H = AdditiveMap(HeadSystem.of(S).coefficient_lists(), L)
        try:
            gens = [TruncatedSolution(_lift_exact(S, H, k, N), N, L) for k in H.basis]
        except InconsistentLevel as ex:
            last = ex
            continue
        return SolutionBasis(gens, S, N, L, len(H.basis))
    raise last if last is not None else ResidueFieldTooSmall(None)


def solution_space(system, N, L=None):
    """All solutions mod T^N with coefficients in the finite field L.

    Independent of the level-by-level solver: the truncated system is one
    F_p-linear map on the digits of every x_(j, beta), and its kernel is
    computed in a single elimination.  Returns (F_q-basis, dimension).
    """
    from .additive import _fq_reduce, _vec_digits
    from .gf import FFElem
    K = system.K
    L = L or K
    S = change_ring(system, L)
    mu, n, p = S.ncols, L.n, L.p
    cols = []
    for j in range(mu):
        for beta in range(N):
            for k in range(n):
                X = [[L.zero] * N for _ in range(mu)]
                X[j][beta] = FFElem(L, p ** k)
                res = S.apply(X, N)
                cols.append(_vec_digits([y for r in res for y in r], n, p))
    nrows = len(cols[0])
    M = [[col[r] for col in cols] for r in range(nrows)]
    kernel = FpLinearMap(M, len(cols), p).kernel()
    vecs = []
    for v in kernel:
        flat = [FFElem(L, sum(v[(t * n) + k] * p ** k for k in range(n))) for t in range(mu * N)]
        vecs.append(flat)
    basis = _fq_reduce(vecs, L) if vecs else []
    sols = [TruncatedSolution([b[j * N:(j + 1) * N] for j in range(mu)], N, L) for b in basis]
    return sols, len(sols)


def _solve_laurent(system, N, cap):
    if not (system.nrows == 1 and system.ncols == 1):
        raise FieldError("laurent mode solves scalar equations; eliminate the system first")
    F = system.K
    P = system[0, 0]
    head = AdditivePoly(F, [P.coeff(g, 0) for g in range(P.tau_degree + 1)])
    gens = []
    for _, roots in additive_roots_laurent(head, cap):
        for x0 in roots:
            X = [[x0]]
            for beta in range(1, N):
                rhs = _level_rhs(system, X, beta)[0]
                X[0].append(solve_laurent(head, rhs, cap) if rhs.terms else F.zero)
            vals = [x.valuation() if x.terms else None for x in X[0]]
            gens.append(TruncatedSolution(X, N, F, vals))
    return SolutionBasis(gens, system, N, F, len(gens))


# ------------------------------------------------------------ checks

def residual_vanishes(system, sol):
    return system.residual_is_zero(sol.X, sol.N)


def projection_contained(det, sol, j=0):
    """det X_j = 0 mod T^N (det is the column determinant for coordinate j)."""
    L = sol.field
    d = det
    if det.ring.K is not L:
        d = change_ring(AffineSystem(det.ring, [[det]]), L)[0, 0]
    return all(not y for y in d.apply(sol.X[j], sol.N))


def combine(basis, coeffs):
    """sum_s sum_beta c_(s, beta) T^beta X_s for c in F_q (dict {(s, beta): c})."""
    L = basis.field
    N = basis.N
    mu = len(basis[0].X) if basis else 0
    out = [[L.zero] * N for _ in range(mu)]
    for (s, beta), c in coeffs.items():
        if not c:
            continue
        for j in range(mu):
            xs = basis[s].X[j]
            for i in range(N - beta):
                if xs[i]:
                    out[j][i + beta] = out[j][i + beta] + c * xs[i]
    return TruncatedSolution(out, N, L)


def decompose(basis, X, N=None):
    """F_q-coordinates c_(s, beta) with X = sum c T^beta X_s mod T^N, or None."""
    L = basis.field
    N = basis.N if N is None else N
    mu = len(X.X)
    rest = [list(xs[:N]) for xs in X.X]
    coords = {}
    d = len(basis)
    for beta in range(N):
        target = [rest[j][beta] for j in range(mu)]
        if all(not t for t in target):
            continue
        # solve target = sum_s c_s k_s over F_q via digits over F_p (c_s in F_q)
        sol = _fq_combination([[basis[s].X[j][0] for j in range(mu)] for s in range(d)], target, L)
        if sol is None:
            return None
        for s, c in enumerate(sol):
            if not c:
                continue
            coords[(s, beta)] = c
            ce = c
            for j in range(mu):
                xs = basis[s].X[j]
                for i in range(N - beta):
                    if xs[i]:
                        rest[j][i + beta] = rest[j][i + beta] - ce * xs[i]
    return coords


def _fq_combination(vectors, target, L):
    """c in F_q^d with sum c_s v_s = target, by F_p linear algebra, or None."""
    from .additive import _fq_basis_in, _vec_digits
    p, n = L.p, L.n
    scal = _fq_basis_in(L)
    cols = []
    for v in vectors:
        for c in scal:
            cols.append(_vec_digits([c * x for x in v], n, p))
    if not cols:
        return None if any(target) else []
    rows = [[col[r] for col in cols] for r in range(len(cols[0]))]
    part = FpLinearMap(rows, len(cols), p).solve(_vec_digits(target, n, p))
    if part is None:
        return None
    out = []
    k = len(scal)
    for s in range(len(vectors)):
        acc = L.zero
        for t in range(k):
            if part[s * k + t]:
                acc = acc + scal[t] * part[s * k + t]
        out.append(acc)
    return out


# ------------------------------------------------------------ smallness

@dataclass
class SmallRankReport:
    rank: int
    N: int
    threshold: Fraction
    profiles: list
    method: str = "digits"

    def __int__(self):
        return self.rank

    def __eq__(self, other):
        if isinstance(other, int):
            return self.rank == other
        return NotImplemented

    def __str__(self):
        return f"small_rank={self.rank} N={self.N} threshold={self.threshold} method={self.method}"


def is_small(valuations, threshold=Fraction(1, 2), min_levels=3):
    """Strictly increasing valuations whose last increments all reach the threshold."""
    vals = [v for v in valuations]
    if len(vals) < min_levels:
        raise TruncationTooSmall(f"need at least {min_levels} levels, have {len(vals)}")
    if any(v is None for v in vals[1:]):
        return False
    if vals[0] is None:
        vals = vals[1:]
    steps = [b - a for a, b in zip(vals, vals[1:])]
    if any(s <= 0 for s in steps):
        return False
    tail = steps[len(steps) // 2:]
    return all(s >= threshold for s in tail)


def small_rank(solutions, threshold=Fraction(1, 2), min_levels=3):
    """Estimator: number of generator branches whose valuations grow past the threshold.

    Reported with N and the threshold because smallness is an asymptotic
    property that a truncation can only suggest.
    """
    if solutions.N < min_levels:
        raise TruncationTooSmall(f"N={solutions.N} below {min_levels}")
    profiles = []
    count = 0
    for s in solutions:
        vals = s.valuations
        ok = is_small(vals, threshold, min_levels)
        s.small = ok
        profiles.append(vals)
        count += ok * s.multiplicity
    method = "valuations" if solutions.field is None else "digits"
    return SmallRankReport(count, solutions.N, threshold, profiles, method)


def _coefficient_valuation(c):
    if hasattr(c, "valuation"):
        v = c.valuation()
        return v if isinstance(v, Fraction) else Fraction(v)
    raise FieldError("coefficients need a valuation (Laurent or F_q(th))")


def _val_at_infinity(c):
    """v(c) with v(th) = -1: -deg for polynomials, deg den - deg num for fractions."""
    if hasattr(c, "num"):
        return Fraction(c.den.degree - c.num.degree)
    return _coefficient_valuation(c)


def valuation_profiles(P, N, threshold=None):
    """Valuation-only solve of a scalar equation P X = 0.

    Level 0: the Newton polygon of the head gives the root valuations and
    their F_q-dimensions.  Level beta: the right-hand side has the valuation
    of its unique dominant term, and the largest-valuation solution of
    head(y) = c has valuation phi^(-1)(v(c)).  Levels where two tail terms tie
    are marked uncertain (cancellation cannot be excluded).  This route needs
    no digits, so wildly ramified branches are handled too.
    """
    q = P.ring.K.q
    vals = {}
    tail = {}
    for b, g, c in P.bidegrees():
        v = _val_at_infinity(c)
        if b == 0:
            vals[g] = v
        else:
            tail[(b, g)] = v
    if not vals:
        raise FieldError("operator without head")
    hull = []
    for i in sorted(vals):
        pt = (i, vals[i])
        while len(hull) >= 2:
            (i1, v1), (i2, v2) = hull[-2], hull[-1]
            x1, x2, x3 = q ** i1, q ** i2, q ** pt[0]
            if (v2 - v1) * (x3 - x1) >= (pt[1] - v1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    out = []
    for (i, vi), (j, vj) in zip(hull, hull[1:]):
        w = Fraction(vi - vj, q ** j - q ** i)
        prof = [w]
        uncertain = []
        for beta in range(1, N):
            terms = [v + q ** g * prof[beta - b] for (b, g), v in tail.items() if beta - b >= 0]
            if not terms:
                prof.append(None)
                continue
            m = min(terms)
            if terms.count(m) > 1:
                uncertain.append(beta)
            prof.append(max(Fraction(m - v, q ** g) for g, v in vals.items()))
        sol = TruncatedSolution(None, N, None, prof, multiplicity=j - i)
        sol.uncertain = uncertain
        out.append(sol)
    return SolutionBasis(out, None, N, None, sum(s.multiplicity for s in out))


def tate_small_rank(spec, c, N, field=None, threshold=Fraction(1, 2), cap_ext=16, method="auto"):
    """Small-rank estimate of the (T + c)-Tate recursion.

    method "digits" lifts roots in the Laurent field ``field``; "valuations"
    propagates valuations only; "auto" tries digits and falls back when a
    branch needs ramification or residue extensions beyond the field.
    """
    from .motives import tate_system
    ts = tate_system(spec, c)
    if ts.system.nrows != 1:
        raise FieldError("the Laurent estimator handles scalar recursions")
    if method in ("auto", "digits") and field is not None:
        try:
            S = change_ring(ts.system, field)
            rep = small_rank(solve_truncated(S, N, "laurent", cap_ext), threshold)
            rep.method = "digits"
            return rep
        except (RamificationRequired, ResidueFieldTooSmall):
            if method == "digits":
                raise
    rep = small_rank(valuation_profiles(ts.system[0, 0], N), threshold)
    rep.method = "valuations"
    return rep


# ------------------------------------------------------------ back-substitution

def back_substitute(P, Y, N, L=None):
    """One X with P X = Y mod T^N over the finite field L.

    Choosing particular solutions level by level can dead-end when the head
    is not surjective, so all digits of x_0..x_(N-1) are solved for at once.
    """
    from .additive import _vec_digits
    from .gf import FFElem
    K = P.ring.K
    L = L or K
    S = change_ring(AffineSystem(P.ring, [[P]]), L)
    P = S[0, 0]
    emb = K.embedding_into(L) if K is not L else (lambda x: x)
    n, p = L.n, L.p
    cols = []
    for beta in range(N):
        for k in range(n):
            xs = [L.zero] * N
            xs[beta] = FFElem(L, p ** k)
            cols.append(_vec_digits(P.apply(xs, N), n, p))
    M = [[col[r] for col in cols] for r in range(N * n)]
    sol = FpLinearMap(M, N * n, p).solve(_vec_digits([emb(y) for y in Y[:N]], n, p))
    if sol is None:
        raise NoSolution("P X = Y has no solution mod T^N over this field")
    return [FFElem(L, sum(sol[beta * n + k] * p ** k for k in range(n))) for beta in range(N)]


# ------------------------------------------------------------ brute-force oracles

def brute_force_head_count(system, L):
    """Number of x in L^mu solving the level-0 head system (enumeration)."""
    S = change_ring(system, L)
    H = HeadSystem.of(S)
    mu = S.ncols
    elems = list(L.elements())
    count = 0
    for xs in product(elems, repeat=mu):
        ok = True
        for row in H.rows:
            acc = L.zero
            for f, x in zip(row, xs):
                acc = acc + f(x)
            if acc:
                ok = False
                break
        count += ok
    return count


def brute_force_solutions(system, N, L):
    """All solutions mod T^N over L by level-by-level enumeration.

    The head map is tabulated once over all of L^mu; each partial solution
    is then extended by every tuple whose head value cancels its level term.
    """
    S = change_ring(system, L)
    mu = S.ncols
    H = HeadSystem.of(S)
    table = {}
    for xs in product(list(L.elements()), repeat=mu):
        val = []
        for row in H.rows:
            acc = L.zero
            for f, x in zip(row, xs):
                acc = acc + f(x)
            val.append(acc.v)
        table.setdefault(tuple(val), []).append(xs)
    partial = [[[] for _ in range(mu)]]
    for beta in range(N):
        nxt = []
        for X in partial:
            rhs = _level_rhs(S, X, beta) if beta else [L.zero] * S.nrows
            for xs in table.get(tuple(r.v for r in rhs), []):
                nxt.append([X[j] + [xs[j]] for j in range(mu)])
        partial = nxt
    for X in partial:
        if not S.residual_is_zero(X, N):
            raise AssertionError("enumeration produced a non-solution")
    return partial


# ------------------------------------------------- reductions and solution sets

class ReductionCheck:
    """Outcome of comparing truncated solution sets across a block reduction."""

    def __init__(self, N, field, dim_big, dim_small, forward, backward):
        self.N, self.field = N, field
        self.dim_big, self.dim_small = dim_big, dim_small
        self.forward, self.backward = forward, backward

    @property
    def ok(self):
        return self.forward and self.backward and self.dim_big == self.dim_small

    def __str__(self):
        return (f"N={self.N} field={self.field.spec()} dims={self.dim_big}/{self.dim_small} "
                f"forward={self.forward} backward={self.backward}")


def reduction_check(big, script, small, N, cap_ext=1024):
    """Does X = E X' carry (0, sol(small)) onto sol(big) modulo T^N?

    ``script`` must turn ``big`` into diag(-I, small) (checked).  Both inclusions
    are tested on F_q[T]-module generators: E maps the generators of sol(small)
    into sol(big), and E^{-1} maps the generators of sol(big) into
    (0, span of sol(small)).  Since E and E^{-1} are F_q[T]-linear, that and
    equal generator counts give equality of the truncated solution sets.
    """
    from .elimination import apply_change, elementary_transform, inverse_script
    res = elementary_transform(big, script)
    n = big.nrows - small.nrows
    R = res.system.rows
    for i in range(big.nrows):
        for j in range(big.ncols):
            want = (-big.ring.one if i == j else big.ring.zero) if i < n or j < n else small.rows[i - n][j - n]
            if R[i][j] != want:
                raise VerificationFailed(f"reduction script does not reach block form at ({i},{j})")
    col_ops = [op for op in script if op[0] in ("add_col", "swap_cols")]
    Einv = elementary_transform(big, inverse_script(col_ops)).change

    Bs = solve_truncated(small, N, cap_ext=cap_ext)
    L = Bs.field
    Sbig = change_ring(big, L)
    Bb = solve_truncated(Sbig, N, cap_ext=L.n // L.q_exponent)
    Bs_sys = Bs.system
    E = change_ring(AffineSystem(big.ring, res.change), L).rows
    Ei = change_ring(AffineSystem(big.ring, Einv), L).rows
    zero = [L.zero] * N
    forward = all(
        Sbig.residual_is_zero(apply_change(E, [zero] * n + g.X, N), N) for g in Bs)
    backward = True
    for g in Bb:
        Y = apply_change(Ei, g.X, N)
        if any(any(c for c in Y[j]) for j in range(n)):
            backward = False
            break
        if not Bs_sys.residual_is_zero(Y[n:], N) or decompose(Bs, TruncatedSolution(Y[n:], N, L), N) is None:
            backward = False
            break
    return ReductionCheck(N, L, len(Bb), len(Bs), forward, backward)
