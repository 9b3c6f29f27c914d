"""Additive (q-linearized) polynomials and their roots.

Over a finite field L the map x -> sum_i a_i x^(q^i) is F_p-linear, so
kernels and particular solutions come from linear algebra over F_p on the
digit coordinates.  Over Laurent series, root valuations are read off the
Newton polygon of the points (q^i, v(a_i)) and roots are lifted digit by digit.
"""

from fractions import Fraction
from math import lcm

from .errors import FieldError, NoSolution, RamificationRequired, ResidueFieldTooSmall
from .gf import FFElem, _digits, _undigits, finite_field
from .laurent import LaurentField


class ZeroPolynomial(FieldError):
    pass


class AdditivePoly:
    """f(x) = sum_i a_i x^(q^i), optionally with a right-hand side c (f(x) = c)."""

    def __init__(self, field, coeffs, rhs=None):
        self.field = field
        self.coeffs = [field(a) for a in coeffs]
        while self.coeffs and not self.coeffs[-1]:
            self.coeffs.pop()
        self.rhs = None if rhs is None else field(rhs)

    @classmethod
    def from_ore(cls, f, rhs=None, field=None):
        field = field or f.ring.K
        return cls(field, [field(c) for c in f.c], rhs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = self.field.zero
        for i, a in enumerate(self.coeffs):
            if a:
                acc = acc + a * x.twist(i)
        return acc

    def residual(self, x):
        """f(x) - c."""
        y = self(x)
        return y - self.rhs if self.rhs is not None else y

    def __str__(self):
        parts = [f"({a})*x^(q^{i})" for i, a in enumerate(self.coeffs) if a]
        return " + ".join(parts) or "0"


# ------------------------------------------------------------ linear algebra mod p

def _rref_mod_p(rows, ncols, p):
    """Reduced row echelon form of integer rows mod p; returns (rows, pivots)."""
    R = [[x % p for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(R)) if R[i][c]), None)
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        inv = pow(R[r][c], p - 2, p)
        R[r] = [x * inv % p for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [(a - f * b) % p for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R[:r], pivots


def _solve_mod_p(M, b, ncols, p):
    """(particular or None, kernel basis) of M y = b over F_p."""
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    R, pivots = _rref_mod_p(aug, ncols + 1, p)
    part = None
    if ncols not in pivots:
        part = [0] * ncols
        for row, c in zip(R, pivots):
            part[c] = row[ncols]
    kernel = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = [0] * ncols
        v[f] = 1
        for row, c in zip(R, pivots):
            if c < ncols:
                v[c] = -row[f] % p
        kernel.append(v)
    return part, kernel


class FpLinearMap:
    """A matrix over F_p factored once: rref of [M | I] gives kernel and fast solves.

    Rows are packed into Python ints (bit per entry) when p = 2.
    """

    def __init__(self, M, ncols, p):
        self.p = p
        self.ncols = ncols
        self.nrows = len(M)
        if p == 2:
            self._factor_binary(M)
        else:
            self._factor_generic(M)

    def _factor_binary(self, M):
        n, m = self.ncols, self.nrows
        rows = []
        for r, row in enumerate(M):
            bits = 0
            for c, x in enumerate(row):
                if x & 1:
                    bits |= 1 << c
            rows.append(bits | (1 << (n + r)))
        pivots = []
        rank = 0
        for c in range(n):
            bit = 1 << c
            pr = next((i for i in range(rank, m) if rows[i] & bit), None)
            if pr is None:
                continue
            rows[rank], rows[pr] = rows[pr], rows[rank]
            pv = rows[rank]
            for i in range(m):
                if i != rank and rows[i] & bit:
                    rows[i] ^= pv
            pivots.append(c)
            rank += 1
        mask = (1 << n) - 1
        self._R = [r & mask for r in rows]
        self._U = [r >> n for r in rows]
        self.pivots = pivots
        self.rank = rank

    def _factor_generic(self, M):
        p, n, m = self.p, self.ncols, self.nrows
        aug = [[x % p for x in row] + [1 if k == r else 0 for k in range(m)] for r, row in enumerate(M)]
        R, piv = _rref_mod_p_full(aug, n, p)
        self._R = [row[:n] for row in R]
        self._U = [row[n:] for row in R]
        self.pivots = piv
        self.rank = len(piv)

    def _dot_u(self, i, b):
        if self.p == 2:
            return bin(self._U[i] & b).count("1") & 1
        return sum(u * x for u, x in zip(self._U[i], b)) % self.p

    def solve(self, b):
        """A particular solution of M y = b (free variables 0), or None."""
        if self.p == 2:
            bb = 0
            for r, x in enumerate(b):
                if x & 1:
                    bb |= 1 << r
            b = bb
        for i in range(self.rank, self.nrows):
            if self._dot_u(i, b):
                return None
        y = [0] * self.ncols
        for i, c in enumerate(self.pivots):
            y[c] = self._dot_u(i, b)
        return y

    def kernel(self):
        n, p = self.ncols, self.p
        piv = set(self.pivots)
        out = []
        for f in range(n):
            if f in piv:
                continue
            v = [0] * n
            v[f] = 1
            for i, c in enumerate(self.pivots):
                x = (self._R[i] >> f) & 1 if p == 2 else self._R[i][f]
                if x:
                    v[c] = -x % p
            out.append(v)
        return out


def _rref_mod_p_full(rows, ncols, p):
    """Row reduction mod p pivoting only in the first ncols columns; keeps all rows."""
    R = rows
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(R)) if R[i][c]), None)
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        inv = pow(R[r][c], p - 2, p)
        R[r] = [x * inv % p for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [(a - f * b) % p for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def _vec_digits(xs, n, p):
    out = []
    for x in xs:
        out.extend(_digits(x.v, p, n))
    return out


def _vec_from_digits(L, ds, mu):
    n, p = L.n, L.p
    return [FFElem(L, _undigits(ds[j * n:(j + 1) * n], p)) for j in range(mu)]


def _fq_basis_in(L):
    """An F_p-basis of the constants F_q inside L."""
    Fq = L.constants_field()
    emb = Fq.embedding_into(L)
    return [emb(FFElem(Fq, Fq.p ** k)) for k in range(Fq.n)]


def _fq_reduce(vectors, L):
    """Select an F_q-basis from F_p-spanning vectors of an F_q-subspace of L^mu."""
    p, n = L.p, L.n
    scal = _fq_basis_in(L)
    chosen, span = [], []
    for v in vectors:
        trial = span + [_vec_digits(v, n, p)]
        if len(_rref_mod_p(trial, len(trial[0]), p)[1]) == len(span):
            continue
        chosen.append(v)
        for c in scal:
            span.append(_vec_digits([c * x for x in v], n, p))
        span = _rref_mod_p(span, len(span[0]), p)[0]
    return chosen


class AdditiveSolution:
    """particular (or None when inconsistent) + F_q-basis of the kernel."""

    def __init__(self, particular, basis, field):
        self.particular = particular
        self.basis = basis
        self.field = field

    @property
    def dimension(self):
        return len(self.basis)

    @property
    def count(self):
        return self.field.q ** len(self.basis)


class AdditiveMap:
    """x -> (sum_j f_ij(x_j))_i on L^mu, factored once over F_p."""

    def __init__(self, rows, L):
        self.L = L
        self.lam = len(rows)
        self.mu = len(rows[0]) if rows else 0
        n, p = L.n, L.p
        cols = []
        for j in range(self.mu):
            for k in range(n):
                b = FFElem(L, p ** k)
                tw = {}
                img = []
                for i in range(self.lam):
                    acc = L.zero
                    for g, a in enumerate(rows[i][j]):
                        if a:
                            if g not in tw:
                                tw[g] = b.twist(g)
                            acc = acc + a * tw[g]
                    img.append(acc)
                cols.append(_vec_digits(img, n, p))
        M = [[cols[c][r] for c in range(self.mu * n)] for r in range(self.lam * n)]
        self.map = FpLinearMap(M, self.mu * n, p)
        self._basis = None

    @property
    def basis(self):
        if self._basis is None:
            L = self.L
            self._basis = _fq_reduce([_vec_from_digits(L, v, self.mu) for v in self.map.kernel()], L)
        return self._basis

    def particular(self, rhs):
        L = self.L
        y = self.map.solve(_vec_digits(rhs, L.n, L.p))
        return None if y is None else _vec_from_digits(L, y, self.mu)


def solve_additive_system(rows, L, rhs=None):
    """Solve sum_j f_ij(x_j) = c_i over the finite field L.

    ``rows[i][j]`` is the coefficient list of f_ij (entries in L).  Returns an
    AdditiveSolution; ``particular`` is None when the system has no solution in L.
    """
    A = AdditiveMap(rows, L)
    if rhs is None:
        rhs = [L.zero] * A.lam
    return AdditiveSolution(A.particular(rhs), A.basis, L)


def additive_roots(f, field=None):
    """Roots of an additive polynomial over a finite field (exact mode)."""
    L = field or f.field
    if not f.coeffs:
        raise ZeroPolynomial("the zero polynomial has every element as a root")
    emb = f.field.embedding_into(L) if f.field is not L else (lambda x: x)
    coeffs = [emb(a) for a in f.coeffs]
    rhs = None if f.rhs is None else [emb(f.rhs)]
    sol = solve_additive_system([[coeffs]], L, rhs)
    if f.rhs is not None and sol.particular is None:
        raise NoSolution("inhomogeneous additive equation has no root in the field")
    return AdditiveSolution(None if sol.particular is None else sol.particular[0],
                            [v[0] for v in sol.basis], L)


def extension(K, degree):
    """The degree-`degree` extension of the finite field K (same q)."""
    return finite_field(K.p, K.n * degree, K.q)


def roots_over_extension(f, expected_dim, cap=16):
    """Smallest extension of f's field (degree <= cap over F_q) holding expected_dim roots."""
    K = f.field
    base = K.n // K.q_exponent
    for d in range(1, cap // base + 1):
        L = extension(K, d)
        sol = additive_roots(f, L)
        if sol.dimension >= expected_dim:
            return sol
    raise ResidueFieldTooSmall(None)


def brute_force_roots(f, L=None):
    """All roots in L by enumeration (oracle for small fields)."""
    L = L or f.field
    emb = f.field.embedding_into(L) if f.field is not L else (lambda x: x)
    g = AdditivePoly(L, [emb(a) for a in f.coeffs], None if f.rhs is None else emb(f.rhs))
    return [x for x in L.elements() if not g.residual(x)]


# ------------------------------------------------------------ Laurent series

def newton_polygon(f):
    """Lower convex hull of (q^i, index v(a_i)); returns the vertex list [(i, v_i)]."""
    q = f.field.q
    pts = [(i, a.index_valuation()) for i, a in enumerate(f.coeffs) if a]
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (i1, v1), (i2, v2) = hull[-2], hull[-1]
            x1, x2, x3 = q ** i1, q ** i2, q ** pt[0]
            # drop the middle point when it lies on or above the chord
            if (v2 - v1) * (x3 - x1) >= (pt[1] - v1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def root_valuations(f):
    """[(valuation in index units as a Fraction, F_q-dimension)] for nonzero roots."""
    q = f.field.q
    hull = newton_polygon(f)
    out = []
    for (i, vi), (j, vj) in zip(hull, hull[1:]):
        w = Fraction(vi - vj, q ** j - q ** i)
        out.append((w, j - i))
    return out


def ramification_needed(f):
    """Extra ramification factor making every root valuation integral in index units."""
    return lcm(1, *[w.denominator for w, _ in root_valuations(f)])


def _phi(vals, q, w):
    return min(v + q ** i * w for i, v in vals.items())


def _inv_phi(vals, q, target):
    return max(Fraction(target - v, q ** i) for i, v in vals.items())


def _residue_solve(F, lead, rhs, cap):
    """Solve sum_i lead[i] xi^(q^i) = rhs over the residue field F, or report the extension needed."""
    top = max(lead)
    coeffs = [lead.get(i, F.zero) for i in range(top + 1)]
    sol = solve_additive_system([[coeffs]], F, None if rhs is None else [rhs])
    if rhs is None or sol.particular is not None:
        return sol
    base = F.n // F.q_exponent
    for d in range(2, cap // base + 1):
        L = extension(F, d)
        emb = F.embedding_into(L)
        s2 = solve_additive_system([[[emb(c) for c in coeffs]]], L, [emb(rhs)])
        if s2.particular is not None:
            raise ResidueFieldTooSmall(d * base)
    raise ResidueFieldTooSmall(None)


def solve_laurent(f, c, cap=16, limit=None):
    """A root y of f(y) = c over a Laurent field, chosen term by term.

    At each step the dominant terms of f at the valuation fixed by c give
    an additive residue equation; its particular solution (free variables 0)
    becomes the next digit.  The result carries the precision implied by c
    and the field's relative precision.
    """
    F = f.field
    q = F.q
    res = F.residue
    vals = {i: a.index_valuation() for i, a in enumerate(f.coeffs) if a}
    if not vals:
        raise ZeroPolynomial("zero additive polynomial")
    y_terms = {}
    c = F(c)
    start = None
    while True:
        if not c.terms:
            if c.absprec is None:
                return F._make(y_terms, None if limit is None else limit)
            w_stop = _inv_phi(vals, q, c.absprec)
            ap = -((-w_stop.numerator) // w_stop.denominator)
            if limit is not None:
                ap = min(ap, limit)
            return F._make(y_terms, ap)
        vc, lc_c = c.leading()
        w = _inv_phi(vals, q, vc)
        if w.denominator != 1:
            raise RamificationRequired(w.denominator)
        w = int(w)
        if start is None:
            start = w
            if limit is None:
                limit = start + F.prec
        if w >= limit:
            return F._make(y_terms, limit)
        lead = {i: f.coeffs[i].terms.get(vc - q ** i * w) for i in vals
                if vals[i] + q ** i * w == vc}
        lead = {i: x for i, x in lead.items() if x}
        shift = min(lead)
        lead = {i - shift: x for i, x in lead.items()}
        # xi^(q^shift) is the unknown; take the q^shift-th root afterwards
        sol = _residue_solve(res, lead, lc_c, cap)
        xi = sol.particular[0].twist(-shift) if shift else sol.particular[0]
        y_terms[w] = y_terms.get(w, res.zero) + xi
        m = F.monomial(xi, w)
        c = c - f(m)


def additive_roots_laurent(f, cap=16):
    """Root branches by valuation: [(valuation Fraction, [roots forming an F_q-basis])].

    Requires a nonzero linear coefficient for a separable count; the total
    F_q-dimension equals the polygon's span in q-exponents.
    """
    F = f.field
    if not isinstance(F, LaurentField):
        raise FieldError("Laurent root finding needs a Laurent field")
    if not f.coeffs:
        raise ZeroPolynomial("zero additive polynomial")
    q = F.q
    res = F.residue
    out = []
    for w, dim in root_valuations(f):
        if w.denominator != 1:
            raise RamificationRequired(w.denominator)
        w = int(w)
        vals = {i: a.index_valuation() for i, a in enumerate(f.coeffs) if a}
        target = _phi(vals, q, w)
        lead = {i: f.coeffs[i].terms[target - q ** i * w] for i in vals
                if vals[i] + q ** i * w == target}
        top = max(lead)
        coeffs = [lead.get(i, res.zero) for i in range(top + 1)]
        sol = solve_additive_system([[coeffs]], res)
        # the zero root has multiplicity q^(lowest index); drop it from the count
        kernel = [v[0] for v in sol.basis]
        if len(kernel) < dim:
            need = None
            base = res.n // res.q_exponent
            for d in range(2, cap // base + 1):
                L = extension(res, d)
                emb = res.embedding_into(L)
                if solve_additive_system([[[emb(x) for x in coeffs]]], L).dimension >= dim:
                    need = d * base
                    break
            raise ResidueFieldTooSmall(need)
        roots = []
        for xi in kernel:
            m = F.monomial(xi, w)
            y = solve_laurent(f, -f(m), cap, limit=w + F.prec)
            roots.append(m + y)
        out.append((Fraction(w, F.e), roots))
    return out


def verify_laurent_root(f, x):
    """Newton-polygon soundness: f(x) - c has no known nonzero term."""
    r = f.residual(x)
    return not r.terms
