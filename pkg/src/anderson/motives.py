"""Families of t-motives, their affine systems and closed-form oracles.

A motive is described by the matrix Q of t on a K[T]-basis (t f = Q f).
Its H^1 system is (Q^t t - I) Y = 0 and its H_1 system is (I t - Q) X = 0.
Q may have a denominator in K[T] (0-duals); systems built from such a Q
are cleared row by row, and rows whose clearing factor vanishes at T = 0
are flagged because only units of K[[T]] preserve the solution set.
"""

from dataclasses import dataclass

from .errors import FieldError, MathDegenerate
from .linalg import det_bareiss
from .ore import AffineSystem, AndersonPoly, anderson_ring
from .polynomial import poly_ring


# ------------------------------------------------------------ specs

@dataclass
class Drinfeld:
    r: int
    a: list  # a_1 .. a_{r-1}


@dataclass
class DualDrinfeld:
    r: int
    a: list


@dataclass
class Elementary:
    n: int
    A: list  # n x n


@dataclass
class CarlitzTwist:
    base: object
    power: int = 1


@dataclass
class ZeroDual:
    base: object


@dataclass
class MotiveSpec:
    variant: object
    K: object
    theta: object = None

    def __post_init__(self):
        if self.theta is None:
            th = getattr(self.K, "theta", None)
            if th is None:
                raise FieldError("a finite coefficient field needs an explicit theta")
            self.theta = th
        else:
            self.theta = self.K(self.theta)


def drinfeld(K, a, theta=None):
    """Rank len(a)+1 Drinfeld module T = theta + a_1 t + ... + t^r."""
    return MotiveSpec(Drinfeld(len(a) + 1, [K(x) for x in a]), K, theta)


def dual_drinfeld(K, a, theta=None):
    return MotiveSpec(DualDrinfeld(len(a) + 1, [K(x) for x in a]), K, theta)


def elementary(K, A, theta=None):
    return MotiveSpec(Elementary(len(A), [[K(x) for x in row] for row in A]), K, theta)


def carlitz_twist(spec, power=1):
    return MotiveSpec(CarlitzTwist(spec.variant, power), spec.K, spec.theta)


def zero_dual(spec):
    return MotiveSpec(ZeroDual(spec.variant), spec.K, spec.theta)


def _a(variant, i):
    """a_i with a_r = 1."""
    return variant.a[i - 1] if i < variant.r else None


# ------------------------------------------------------------ Q matrices

class QMatrix:
    """Q = num / den with num an r x r matrix over K[T] and den in K[T] (monic)."""

    def __init__(self, num, den, Tring):
        self.num = num
        self.den = den
        self.Tring = Tring

    @property
    def size(self):
        return len(self.num)

    def is_polynomial(self):
        return self.den.is_one()

    def transpose(self):
        return QMatrix([list(c) for c in zip(*self.num)], self.den, self.Tring)

    def scaled(self, f):
        g = f.gcd(self.den) if not self.den.is_one() else self.Tring.one
        f2, d2 = f // g, self.den // g
        return QMatrix([[x * f2 for x in row] for row in self.num], d2, self.Tring)

    def inverse(self):
        """(num/den)^(-1) = den * adj(num) / det(num)."""
        det = det_bareiss(self.num, self.Tring.one)
        if not det:
            raise MathDegenerate("Q is singular")
        adj = adjugate(self.num, self.Tring)
        num = [[x * self.den for x in row] for row in adj]
        lc = det.lc
        det = det.monic()
        num = [[x.scale(lc.inverse()) for x in row] for row in num]
        g = det
        for row in num:
            for x in row:
                if x:
                    g = g.gcd(x)
        return QMatrix([[x // g for x in row] for row in num], det // g, self.Tring)

    def __eq__(self, other):
        return isinstance(other, QMatrix) and all(
            a * other.den == b * self.den
            for ra, rb in zip(self.num, other.num) for a, b in zip(ra, rb))

    def __str__(self):
        body = "[" + ",".join("[" + ",".join(str(x) for x in r) + "]" for r in self.num) + "]"
        return body if self.den.is_one() else f"{body}/({self.den})"


def adjugate(M, Tring):
    n = len(M)
    if n == 1:
        return [[Tring.one]]
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(M) if k != i]
            d = det_bareiss(minor, Tring.one)
            adj[j][i] = d if (i + j) % 2 == 0 else -d
    return adj


def q_matrix(spec):
    K = spec.K
    Tring = poly_ring(K, "T")
    T = Tring.gen
    th = spec.theta
    return _q_of(spec.variant, K, Tring, T, th)


def _q_of(v, K, Tring, T, th):
    one, zero = Tring.one, Tring.zero
    if isinstance(v, Drinfeld):
        r = v.r
        num = [[zero] * r for _ in range(r)]
        for i in range(r - 1):
            num[i][i + 1] = one
        num[r - 1][0] = T - th
        for j in range(1, r):
            num[r - 1][j] = Tring(-v.a[j - 1])
        return QMatrix(num, one, Tring)
    if isinstance(v, DualDrinfeld):
        r = v.r
        num = [[zero] * r for _ in range(r)]
        for i in range(r - 1):
            num[i][0] = Tring(v.a[i])
            num[i][i + 1] = T - th
        num[r - 1][0] = one
        return QMatrix(num, one, Tring)
    if isinstance(v, Elementary):
        n = v.n
        num = [[zero] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            num[i][n + i] = one
            num[n + i][i] = T - th
            for j in range(n):
                num[n + i][n + j] = Tring(-v.A[i][j])
        return QMatrix(num, one, Tring)
    if isinstance(v, CarlitzTwist):
        base = _q_of(v.base, K, Tring, T, th)
        return base.scaled((T - th) ** v.power)
    if isinstance(v, ZeroDual):
        base = _q_of(v.base, K, Tring, T, th)
        return base.transpose().inverse()
    raise FieldError(f"unknown motive variant {v!r}")


# ------------------------------------------------------------ systems

class MotiveSystem(AffineSystem):
    """An affine system remembering which rows needed non-unit clearing."""

    def __init__(self, ring, rows, clearing=None):
        super().__init__(ring, rows)
        self.clearing = clearing or [ring.Tring.one] * self.nrows

    @property
    def flagged_rows(self):
        return [i for i, c in enumerate(self.clearing) if not c[0]]


def _rows_from(Qm, ring, tau_side):
    """Rows of (Q t - I) [tau_side='Q'] or (I t - Q) [tau_side='I'], row-cleared."""
    Tring = ring.Tring
    n = Qm.size
    rows, clearing = [], []
    for i in range(n):
        g = Qm.den
        for x in Qm.num[i]:
            if x:
                g = g.gcd(x)
        c = Qm.den // g  # clearing factor for this row
        row = []
        for j in range(n):
            qij = Qm.num[i][j] // g
            eye = c if i == j else Tring.zero
            if tau_side == "Q":
                entry = AndersonPoly(ring, [-eye, qij])
            else:
                entry = AndersonPoly(ring, [-qij, eye])
            row.append(entry)
        rows.append(row)
        clearing.append(c)
    return rows, clearing


def h1_system(spec):
    """(Q^t t - I) Y^t = 0."""
    ring = anderson_ring(spec.K)
    Qm = q_matrix(spec).transpose()
    rows, clearing = _rows_from(Qm, ring, "Q")
    return MotiveSystem(ring, rows, clearing)


def h_1_system(spec):
    """(I t - Q) X = 0."""
    ring = anderson_ring(spec.K)
    rows, clearing = _rows_from(q_matrix(spec), ring, "I")
    return MotiveSystem(ring, rows, clearing)


def duality_transform(spec):
    """-Q^t as a matrix over K[T]{t}: left-multiplying h_1(ZeroDual(spec)) by it gives h1(spec)."""
    ring = anderson_ring(spec.K)
    Qm = q_matrix(spec)
    if not Qm.is_polynomial():
        raise FieldError("duality transform needs a polynomial Q")
    return [[ring(-x) for x in row] for row in Qm.transpose().num]


def matmul_left(L, system):
    ring = system.ring
    rows = []
    for lrow in L:
        out = []
        for j in range(system.ncols):
            acc = ring.zero
            for k, x in enumerate(lrow):
                acc = acc + x * system[k, j]
            out.append(acc)
        rows.append(out)
    return AffineSystem(ring, rows)


def duality_check_system(spec):
    """-Q^t times the rational H_1 system of the 0-dual.

    -Q^t (I t - (Q^t)^(-1)) = -(Q^t t - I), so the result equals h1_system(spec)
    entrywise when Q is polynomial.
    """
    ring = anderson_ring(spec.K)
    Qd = q_matrix(zero_dual(spec))
    L = duality_transform(spec)
    n = Qd.size
    Tring = ring.Tring
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            # sum_k L_ik (delta_kj t - Qd_kj); the rational part is exact after division
            const = Tring.zero
            for k in range(n):
                const = const + L[i][k].tpoly(0) * Qd.num[k][j]
            const = const.exquo(Qd.den)
            row.append(AndersonPoly(ring, [-const, L[i][j].tpoly(0)]))
        rows.append(row)
    return AffineSystem(ring, rows)


# ------------------------------------------------------------ closed forms

def n_table(K, theta, r):
    """Coefficients v[k][i] of N_k = prod_{j=1..k} (T - theta^(q^j)), k = 0..r-1."""
    Tring = poly_ring(K, "T")
    T = Tring.gen
    table = []
    N = Tring.one
    for k in range(r):
        if k:
            N = N * (T - theta.twist(k))
        table.append([N[i] for i in range(k + 1)])
    return table


def drinfeld_affine_equation(K, a, theta=None):
    """sum_{i=0}^r a_{r-i}^(q^(i-1)) t^i - t^r T with a_0 = theta, a_r = 1."""
    theta = K.theta if theta is None else K(theta)
    r = len(a) + 1
    coeffs = [theta] + [K(x) for x in a] + [K.one]
    ring = anderson_ring(K)
    terms = {}
    for i in range(r + 1):
        c = coeffs[r - i]
        terms[(i, 0)] = c.twist(i - 1) if i else c.twist(-1)
    terms[(r, 1)] = terms.get((r, 1), K.zero) - K.one
    return ring.from_terms(terms)


def drinfeld_h_1_equation(K, a, theta=None, c=None):
    """x^(q^r) + a_{r-1} x^(q^(r-1)) + ... + (theta + c) x - T, the T+c Tate operator."""
    theta = K.theta if theta is None else K(theta)
    c = K.zero if c is None else K(c)
    ring = anderson_ring(K)
    terms = {(0, 0): theta + c, (0, 1): -K.one, (len(a) + 1, 0): K.one}
    for i, x in enumerate(a, start=1):
        terms[(i, 0)] = K(x)
    return ring.from_terms(terms)


def dual_drinfeld_affine_equation(K, a, theta=None):
    """[sum_{i=0}^{r-1} sum_{j=0}^{r-1-i} a_{r-j} v_{r-1-j,i} t^(r-j) T^i] - 1."""
    theta = K.theta if theta is None else K(theta)
    r = len(a) + 1
    if r < 2:
        raise FieldError("dual Drinfeld modules need r >= 2")
    aa = [None] + [K(x) for x in a] + [K.one]
    v = n_table(K, theta, r)
    terms = {(0, 0): -K.one}
    for i in range(r):
        for j in range(r - i):
            key = (r - j, i)
            terms[key] = terms.get(key, K.zero) + aa[r - j] * v[r - 1 - j][i]
    return anderson_ring(K).from_terms(terms)


def elementary_expected_dets(K, A, theta=None):
    """The closed forms for det_1 of the reduced H^1 system and of the reduced H_1 system (n = 2)."""
    theta = K.theta if theta is None else K(theta)
    (a11, a12), (a21, a22) = [[K(x) for x in row] for row in A]
    q = K.q

    def tw(x, k):
        return x.twist(k)

    th = theta
    # H^1 side
    P = lambda x, e: x ** e  # noqa: E731
    h1 = {
        (4, 0): tw(th, 3) * tw(th, 2) * P(a21, q + 1),
        (3, 0): tw(th, 2) * tw(a11, 2) * P(a21, q + 1) + tw(th, 2) * P(a21, q * q + 1) * tw(a22, 1),
        (2, 0): tw(a11, 1) * P(a21, q * q + 1) * tw(a22, 1) - tw(a12, 1) * P(a21, q * q + q + 1)
        + tw(th, 2) * P(a21, q + 1) + tw(th, 1) * P(a21, q * q + q),
        (1, 0): P(a21, q * q + 1) * tw(a22, 1) + a11 * P(a21, q * q + q),
        (0, 0): P(a21, q * q + q),
        (4, 1): -(tw(th, 3) + tw(th, 2)) * P(a21, q + 1),
        (3, 1): -(tw(a11, 2) * P(a21, q + 1) + P(a21, q * q + 1) * tw(a22, 1)),
        (2, 1): -(P(a21, q * q + q) + P(a21, q + 1)),
        (4, 2): P(a21, q + 1),
    }
    h_1 = {
        (4, 0): P(a12, q + 1),
        (3, 0): tw(a11, 2) * P(a12, q + 1) + P(a12, q * q + 1) * tw(a22, 1),
        (2, 0): tw(a11, 1) * P(a12, q * q + 1) * tw(a22, 1) - tw(a21, 1) * P(a12, q * q + q + 1)
        + tw(th, 2) * P(a12, q + 1) + tw(th, 1) * P(a12, q * q + q),
        (1, 0): tw(th, 1) * P(a12, q * q + 1) * tw(a22, 1) + tw(th, 1) * a11 * P(a12, q * q + q),
        (0, 0): tw(th, 1) * th * P(a12, q * q + q),
        (2, 1): -(P(a12, q * q + q) + P(a12, q + 1)),
        (1, 1): -(a11 * P(a12, q * q + q) + P(a12, q * q + 1) * tw(a22, 1)),
        (0, 1): -(tw(th, 1) + th) * P(a12, q * q + q),
        (0, 2): P(a12, q * q + q),
    }
    ring = anderson_ring(K)
    return ring.from_terms(h1), ring.from_terms(h_1)


def carlitz_xi_equation(K, theta=None):
    """(T - theta) t - 1, whose kernel contains Xi = (T - theta) Xi^(1)."""
    theta = K.theta if theta is None else K(theta)
    ring = anderson_ring(K)
    return ring.from_terms({(1, 1): K.one, (1, 0): -theta, (0, 0): -K.one})


# ------------------------------------------------------------ elementary reduction

def elementary_reduced_h1(spec):
    """((T - theta^q) t^2 - 1) I - A^t t, the reduced H^1 system of M(A)."""
    v = spec.variant
    K = spec.K
    ring = anderson_ring(K)
    n = v.n
    th = spec.theta
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            terms = {(1, 0): -v.A[j][i]}
            if i == j:
                terms.update({(2, 1): K.one, (2, 0): -th.twist(1), (0, 0): -K.one})
            row.append(ring.from_terms(terms))
        rows.append(row)
    return AffineSystem(ring, rows)


def elementary_reduced_h_1(spec):
    """t^2 I + A t - (T - theta) I, the reduced H_1 system of M(A)."""
    v = spec.variant
    K = spec.K
    ring = anderson_ring(K)
    n = v.n
    th = spec.theta
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            terms = {(1, 0): v.A[i][j]}
            if i == j:
                terms.update({(2, 0): K.one, (0, 1): -K.one, (0, 0): th})
            row.append(ring.from_terms(terms))
        rows.append(row)
    return AffineSystem(ring, rows)


def elementary_reduction_script(spec):
    """Row/column operations taking the 2n x 2n H^1 system of M(A) to block form.

    Step 1 adds t * (row i) to row n+i, clearing the lower-left t I block.
    Step 2 adds (column i) * (T - theta) t to column n+i, clearing the
    upper-right block.  The result is diag(-I, P_n) with
    P_n = ((T - theta^q) t^2 - 1) I - A^t t.
    """
    ring = anderson_ring(spec.K)
    n = spec.variant.n
    th = spec.theta
    tau = ring.tau
    shift = ring.from_terms({(1, 1): spec.K.one, (1, 0): -th})
    script = [("add_row", i, n + i, tau) for i in range(n)]
    script += [("add_col", i, n + i, shift) for i in range(n)]
    return script


def elementary_profile(n):
    """Cofactor supports used for the reduced system: C_1 on 0..2n-2, C_i (i > 1) on 1..2n-3."""
    return [list(range(2 * n - 1))] + [list(range(1, 2 * n - 2))] * (n - 1)


# ------------------------------------------------------------ Tate recursions

class TateSystem:
    """The recursion p(x_{i+1}) = x_i, x_0 = 0, for p = T + c.

    ``system`` acts on X = sum_i x_{i+1} T^i: coefficient i of system*X is
    p(x_{i+1}) - x_i (with x_0 = 0).
    """

    def __init__(self, spec, c, system, phi):
        self.spec = spec
        self.c = c
        self.system = system
        self.phi = phi  # rows of Ore polynomials: the t-module action of T + c

    def sequence(self, X):
        """Prepend x_0 = 0 to the coefficient lists of X."""
        K = self.spec.K
        return [[K.zero] + list(xs) for xs in X]


def tate_system(spec, c=0):
    K = spec.K
    c = K(c)
    v = spec.variant
    ring = anderson_ring(K)
    th = spec.theta
    if isinstance(v, Drinfeld):
        P = drinfeld_h_1_equation(K, v.a, th, c)
        phi = [[P + ring.T]]
        return TateSystem(spec, c, AffineSystem(ring, [[P]]), phi)
    if isinstance(v, Elementary):
        n = v.n
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                terms = {(1, 0): v.A[i][j]}
                if i == j:
                    terms.update({(2, 0): K.one, (0, 0): th + c, (0, 1): -K.one})
                row.append(ring.from_terms(terms))
            rows.append(row)
        S = AffineSystem(ring, rows)
        phi = [[S[i, j] + (ring.T if i == j else ring.zero) for j in range(n)] for i in range(n)]
        return TateSystem(spec, c, S, phi)
    raise FieldError("the Tate recursion needs an explicit t-basis (Drinfeld or elementary)")


# ------------------------------------------------------------ tail reduction

class ReducedEquality:
    """A linear form sum c_(j, g) x_j^(q^g) = 0 in the unknowns x_0, x_1, ..."""

    def __init__(self, terms):
        self.terms = {k: c for k, c in terms.items() if c}

    def coefficient(self, j, g):
        return self.terms.get((j, g))

    def tail_length(self, k):
        return k - min(j for j, _ in self.terms)

    def max_tail_degree(self, k):
        return max((g for (j, g) in self.terms if j < k), default=-1)


def tail_reduce(P, upto):
    """Rewrite the k-th equality of P X = 0 (k = 0..upto) so that no earlier unknown
    appears with a q-power exponent >= rank.

    Every x_j^(q^g) with j < k and g >= r is replaced using the already reduced
    j-th equality solved for its head term x_j^(q^r), twisted g - r times.
    Returns the list of reduced equalities; division needs a nonzero head
    coefficient (MathDegenerate otherwise).
    """
    r = P.rank()
    if r < 0:
        raise MathDegenerate("operator without head")
    K = P.ring.K
    lead = P.coeff(r, 0)
    if not lead:
        raise MathDegenerate("vanishing head coefficient")
    reduced = []
    for k in range(upto + 1):
        terms = {}
        for b, g, c in P.bidegrees():
            j = k - b
            if j >= 0:
                terms[(j, g)] = terms.get((j, g), K.zero) + c
        changed = True
        while changed:
            changed = False
            for (j, g) in sorted(terms):
                if j < k and g >= r and terms.get((j, g)):
                    c = terms.pop((j, g))
                    s = g - r
                    E = reduced[j].terms
                    head = E[(j, r)].twist(s)
                    factor = c / head
                    for (jj, gg), cc in E.items():
                        if (jj, gg) == (j, r):
                            continue
                        key = (jj, gg + s)
                        terms[key] = terms.get(key, K.zero) - factor * cc.twist(s)
                    changed = True
                    break
        reduced.append(ReducedEquality(terms))
    return reduced
