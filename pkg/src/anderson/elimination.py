"""Elimination of unknowns in square systems over K[T]{t}.

For a system P X = 0 of size n and a kept column i, left cofactors
C_1..C_n are sought with sum_j C_j P_{j,b} = 0 for every b != i.  Writing
C_j = sum_nu z_{j,nu} t^nu turns this into a linear system M z = 0 over K[T]
whose entries are twisted coefficients of the P_{j,b}; its kernel is
computed by fraction-free elimination and the column determinant is
det_i = sum_j C_j P_{j,i}.
"""

from .errors import (FieldError, MultidimensionalKernel, VerificationFailed,
                     ZeroKernel)
from .linalg import kernel_den
from .ore import AffineSystem, AndersonPoly
from .polynomial import Poly, poly_ring
from .ratfunc import RationalFunctionField


class EliminationProblem:
    """A square system, the kept column (1-based) and the cofactor supports.

    ``profile[j]`` lists the t-exponents allowed in C_{j+1}; the default
    support 0..k(n-1), with k the largest t-degree of an entry, gives one
    more unknown than equations.
    """

    def __init__(self, system, kept_column=1, profile=None, k=None):
        if not system.is_square():
            raise FieldError("elimination needs a square system")
        self.system = system
        self.n = system.nrows
        if not 1 <= kept_column <= self.n:
            raise FieldError(f"kept column {kept_column} out of range 1..{self.n}")
        self.kept = kept_column
        self.k = system.max_tau_degree() if k is None else k
        if profile is None:
            profile = [list(range(self.k * (self.n - 1) + 1))] * self.n
        if len(profile) != self.n:
            raise FieldError("one support per cofactor is required")
        self.profile = [sorted(set(s)) for s in profile]

    def unknowns(self):
        return [(j, nu) for j, supp in enumerate(self.profile) for nu in supp]

    def killed_columns(self):
        return [b for b in range(self.n) if b != self.kept - 1]


class StructuredM:
    """The coefficient matrix of the cofactor unknowns (entries in K[T])."""

    def __init__(self, rows, row_labels, col_labels, Tring):
        self.rows = rows
        self.row_labels = row_labels
        self.col_labels = col_labels
        self.Tring = Tring

    @property
    def shape(self):
        return len(self.rows), len(self.col_labels)

    def dense(self):
        z = self.Tring.zero
        return [[r.get(c, z) for c in range(len(self.col_labels))] for r in self.rows]

    def __str__(self):
        return "\n".join("(" + ", ".join(str(x) for x in row) + ")" for row in self.dense())


def build_M(problem, drop_zero_rows=True):
    """Rows: (killed column b, t-degree d); columns: (cofactor j, exponent nu).

    Entry = (coefficient of t^(d-nu) in P_{j,b}) twisted nu times.
    """
    S = problem.system
    Tring = S.ring.Tring
    top = max((max(s) for s in problem.profile if s), default=0) + problem.k
    unknowns = problem.unknowns()
    rows, labels = [], []
    for b in problem.killed_columns():
        for d in range(top + 1):
            row = {}
            for col, (j, nu) in enumerate(unknowns):
                a = S[j, b].tpoly(d - nu) if d >= nu else Tring.zero
                if a:
                    row[col] = a.twist(nu)
            if row or not drop_zero_rows:
                rows.append(row)
                labels.append((b + 1, d))
    return StructuredM(rows, labels, unknowns, Tring)


class CofactorSolution:
    def __init__(self, problem, cofactors, det, kernel_dimension, normalization):
        self.problem = problem
        self.cofactors = cofactors
        self.det = det
        self.kernel_dimension = kernel_dimension
        self.normalization = normalization

    def annihilation_residues(self):
        S = self.problem.system
        out = {}
        for b in self.problem.killed_columns():
            acc = S.ring.zero
            for j, C in enumerate(self.cofactors):
                acc = acc + C * S[j, b]
            out[b + 1] = acc
        return out

    def verify(self):
        for b, r in self.annihilation_residues().items():
            if r:
                raise VerificationFailed(f"cofactors do not annihilate column {b}: {r}")
        S = self.problem.system
        i = self.problem.kept - 1
        det = S.ring.zero
        for j, C in enumerate(self.cofactors):
            det = det + C * S[j, i]
        if det != self.det:
            raise VerificationFailed("determinant does not match its cofactors")
        return True


# ------------------------------------------------------------ domains

def _clear_to_domain(rows, K):
    """Map sparse rows over K[T] to rows over a polynomial domain.

    For finite K the domain is K[T] itself.  For K = F_q(th) each row is
    multiplied by the lcm of its denominators, landing in F_q[th][T].
    """
    if not isinstance(K, RationalFunctionField):
        Tring = poly_ring(K, "T")
        return rows, Tring.zero, Tring.one, lambda x: x
    D = poly_ring(K.poly, "T")
    out = []
    for r in rows:
        L = K.poly.one
        for x in r.values():
            for c in x.c:
                if not c.den.is_one():
                    L = L * (c.den // c.den.gcd(L))
        new = {}
        for col, x in r.items():
            new[col] = Poly(D, [c.num * (L // c.den) for c in x.c])
        out.append(new)
    Tring = poly_ring(K, "T")

    def back(x):
        return Poly(Tring, [K(c) for c in x.c])

    return out, D.zero, D.one, back


def kernel_of_M(M, K):
    rows, zero, one, back = _clear_to_domain(M.rows, K)
    basis, rank = kernel_den(rows, len(M.col_labels), zero, one)
    return [[back(x) for x in v] for v in basis]


def _cofactors_from_vector(problem, v):
    S = problem.system
    ring = S.ring
    cols = problem.unknowns()
    polys = [dict() for _ in range(problem.n)]
    for (j, nu), x in zip(cols, v):
        if x:
            polys[j][nu] = x
    out = []
    for d in polys:
        if not d:
            out.append(ring.zero)
            continue
        G = max(d) + 1
        out.append(AndersonPoly(ring, [d.get(g, ring.Tring.zero) for g in range(G)]))
    return out


def solve_cofactors(problem, normalize=True):
    """Cofactors and the column determinant; raises on degenerate kernels."""
    if problem.k > problem.system.max_tau_degree():
        # the top row of M has no entries, so every maximal minor vanishes
        full = build_M(problem, drop_zero_rows=False)
        zero_rows = [lab for r, lab in zip(full.rows, full.row_labels) if not r]
        raise ZeroKernel(f"k={problem.k} exceeds the t-degree of the system; "
                         f"rows {zero_rows} of M are zero, so all cofactors vanish")
    M = build_M(problem)
    K = problem.system.K
    basis = kernel_of_M(M, K)
    dim = len(basis)
    if dim == 0:
        raise ZeroKernel("the cofactor system has only the zero solution")
    if dim > 1:
        raise MultidimensionalKernel(dim, [_cofactors_from_vector(problem, v) for v in basis])
    v = basis[0]
    tag = "minors"
    if normalize:
        v, _ = normalize_vector(v, K)
        tag = "primitive"
    cofactors = _cofactors_from_vector(problem, v)
    S = problem.system
    i = problem.kept - 1
    det = S.ring.zero
    for j, C in enumerate(cofactors):
        det = det + C * S[j, i]
    sol = CofactorSolution(problem, cofactors, det, dim, tag)
    sol.verify()
    return sol


def minor_cofactors(problem):
    """Cofactors read off as signed maximal minors of M (one more column than rows).

    z_c = (-1)^c det(M without column c).  No normalization: this is the raw
    determinantal solution, zero when M has rank below its row count.
    """
    from .linalg import det_bareiss
    M = build_M(problem, drop_zero_rows=False)
    rows, cols = M.shape
    if cols != rows + 1:
        raise FieldError(f"M is {rows} x {cols}; minors need exactly one more column than rows")
    dense = M.dense()
    one = problem.system.ring.Tring.one
    z = []
    for c in range(cols):
        minor = [r[:c] + r[c + 1:] for r in dense]
        d = det_bareiss(minor, one)
        z.append(-d if c % 2 else d)
    cofactors = _cofactors_from_vector(problem, z)
    S = problem.system
    i = problem.kept - 1
    det = S.ring.zero
    for j, C in enumerate(cofactors):
        det = det + C * S[j, i]
    return CofactorSolution(problem, cofactors, det, None, "minors")


def det_column(system, i=1, profile=None, normalize=True):
    """det_{i,c}: the column determinant keeping column i (1-based)."""
    return solve_cofactors(EliminationProblem(system, i, profile), normalize).det


# ------------------------------------------------------------ normalization

def _lcm_poly(a, b):
    return a * (b // a.gcd(b))


def normalize_vector(v, K):
    """Primitive representative of a K[T]-vector up to F_q^*.

    Removes the T-content (over K), then for K = F_q(th) clears denominators
    and the th-content, and finally scales the last nonzero entry's leading
    coefficient to 1 (its leading th-coefficient for F_q(th)).  Returns the
    vector and the scalar s in K(T) with v = s * result.
    """
    Tring = poly_ring(K, "T")
    nz = [x for x in v if x]
    if not nz:
        return v, Tring.one
    g = nz[0].monic()
    for x in nz[1:]:
        g = g.gcd(x)
        if g.is_one():
            break
    w = [x // g if x else x for x in v]
    scale = K.one
    if isinstance(K, RationalFunctionField):
        L = K.poly.one
        G = K.poly.zero
        for x in w:
            for c in x.c:
                L = _lcm_poly(L, c.den)
        for x in w:
            for c in x.c:
                n = c.num * (L // c.den)
                G = n if not G else G.gcd(n)
        s = K.fraction(L, G)
        w = [x * s for x in w]
        scale = s.inverse()
        last = [x for x in w if x][-1]
        lead = last.lc.num.lc
        inv = K(lead.inverse())
    else:
        last = [x for x in w if x][-1]
        inv = last.lc.inverse()
    w = [x * inv for x in w]
    return w, g * (scale / inv)


def normalize_anderson(P):
    """Primitive normalization of a single operator (content removed, leading coefficient 1)."""
    K = P.ring.K
    cs, s = normalize_vector(list(P.c), K)
    return AndersonPoly(P.ring, cs), s


def equal_up_to_scalar(P, Q):
    """True when P and Q agree after primitive normalization."""
    if not P or not Q:
        return not P and not Q
    return normalize_anderson(P)[0] == normalize_anderson(Q)[0]


def scalar_ratio(P, Q):
    """The c in K with P = c*Q (left scalar), or None."""
    if not Q:
        return None if P else P.ring.K.one
    for g, f in enumerate(Q.c):
        for b, x in enumerate(f.c):
            if x:
                c = P.coeff(g, b) / x
                return c if Q.left_scale(c) == P else None
    return None


def in_constants(c):
    """Whether a field element lies in F_q (fixed by the twist)."""
    return c.twist(1) == c


# ------------------------------------------------------------ elementary transformations

class TransformResult:
    def __init__(self, system, change_of_variables):
        self.system = system
        self.change = change_of_variables  # X = change * X'


def _identity(ring, n):
    return [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]


def elementary_transform(system, script):
    """Apply row/column operations.

    Operations (0-based indices):
      ("swap_rows", i, j), ("swap_cols", i, j),
      ("scale_row", i, a)        a a nonzero element of K,
      ("add_row", src, dst, P)   row dst += P * row src,
      ("add_col", src, dst, P)   col dst += col src * P.
    Row operations keep the solution set; column operations substitute
    X = E X', and the accumulated E is returned with the new system.
    """
    ring = system.ring
    rows = [list(r) for r in system.rows]
    n = system.ncols
    E = _identity(ring, n)
    for op in script:
        kind = op[0]
        if kind == "swap_rows":
            _, i, j = op
            rows[i], rows[j] = rows[j], rows[i]
        elif kind == "swap_cols":
            _, i, j = op
            for r in rows:
                r[i], r[j] = r[j], r[i]
            for r in E:
                r[i], r[j] = r[j], r[i]
        elif kind == "scale_row":
            _, i, a = op
            a = ring.K(a) if not isinstance(a, AndersonPoly) else a
            if isinstance(a, AndersonPoly):
                if a.tau_degree != 0 or a.t_degree != 0:
                    raise FieldError("row scaling needs a unit of K")
                a = a.coeff(0, 0)
            if not a:
                raise FieldError("row scaling by zero")
            rows[i] = [x.left_scale(a) for x in rows[i]]
        elif kind == "add_row":
            _, src, dst, P = op
            P = ring(P)
            rows[dst] = [x + P * y for x, y in zip(rows[dst], rows[src])]
        elif kind == "add_col":
            _, src, dst, P = op
            P = ring(P)
            for r in rows:
                r[dst] = r[dst] + r[src] * P
            for r in E:
                r[dst] = r[dst] + r[src] * P
        else:
            raise FieldError(f"unknown elementary operation {kind!r}")
    return TransformResult(AffineSystem(ring, rows), E)


def apply_change(E, Xprime, N):
    """X = E X' on truncated series (lists of coefficient lists)."""
    K = E[0][0].ring.K
    out = []
    for row in E:
        acc = [K.zero] * N
        for P, xs in zip(row, Xprime):
            for i, y in enumerate(P.apply(xs, N)):
                if y:
                    acc[i] = acc[i] + y
        out.append(acc)
    return out


def inverse_script(script, K=None):
    """Operations undoing `script` (applied in reverse order)."""
    out = []
    for op in reversed(script):
        kind = op[0]
        if kind in ("swap_rows", "swap_cols"):
            out.append(op)
        elif kind == "scale_row":
            _, i, a = op
            out.append(("scale_row", i, a.inverse()))
        elif kind in ("add_row", "add_col"):
            _, src, dst, P = op
            out.append((kind, src, dst, -P))
        else:
            raise FieldError(f"unknown elementary operation {kind!r}")
    return out
