"""Twisted polynomial rings K{t} and the Anderson ring K[T]{t}.

``t`` is the Frobenius twist: t*a = a^(1)*t for a in K, while T is central.
An :class:`AndersonPoly` is stored as the tuple of its T-polynomial
coefficients indexed by t-degree.
"""

import functools

from .errors import FieldError
from .linalg import det_field
from .polynomial import Poly, poly_ring


def _coeff_str(s):
    if s.startswith("(") and s.endswith(")") and s.count("(") == 1:
        return s
    if any(ch in s for ch in "+/") or "-" in s[1:] or " " in s:
        return f"({s})"
    return s


def _monomial(gamma, beta):
    parts = []
    if gamma:
        parts.append("t" if gamma == 1 else f"t^{gamma}")
    if beta:
        parts.append("T" if beta == 1 else f"T^{beta}")
    return "*".join(parts)


# ---------------------------------------------------------------- K{t}

class OreRing:
    def __init__(self, K):
        self.K = K
        self.zero = OrePoly(self, ())
        self.one = OrePoly(self, (K.one,))

    @property
    def tau(self):
        return OrePoly(self, (self.K.zero, self.K.one))

    def __call__(self, x):
        if isinstance(x, OrePoly):
            if x.ring is self:
                return x
            raise FieldError("Ore polynomial over a different field")
        if isinstance(x, (list, tuple)):
            return OrePoly(self, tuple(self.K(c) for c in x))
        return OrePoly(self, (self.K(x),))

    def random(self, rng, degree, const_nonzero=False, monic=False):
        K = self.K
        cs = [K.random(rng) for _ in range(degree + 1)]
        cs[-1] = K.one if monic else K.random(rng, nonzero=True)
        if const_nonzero and degree > 0:
            cs[0] = K.random(rng, nonzero=True)
        elif const_nonzero:
            cs[0] = K.random(rng, nonzero=True) if not monic else K.one
        return OrePoly(self, tuple(cs))

    def __repr__(self):
        return f"{self.K.spec()}{{t}}"


@functools.lru_cache(maxsize=None)
def ore_ring(K):
    return OreRing(K)


def _trim(cs):
    n = len(cs)
    while n and not cs[n - 1]:
        n -= 1
    return tuple(cs[:n])


class OrePoly:
    """sum_i a_i t^i with a_i in K; also read as the additive polynomial sum a_i x^(q^i)."""

    __slots__ = ("ring", "c")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.c = _trim(coeffs)

    @property
    def degree(self):
        return len(self.c) - 1

    @property
    def lc(self):
        return self.c[-1] if self.c else self.ring.K.zero

    def __getitem__(self, i):
        return self.c[i] if 0 <= i < len(self.c) else self.ring.K.zero

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, OrePoly):
            return self.c == other.c
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def _coerce(self, other):
        if isinstance(other, OrePoly):
            if other.ring is not self.ring:
                raise FieldError("Ore polynomials over different fields")
            return other
        try:
            return self.ring(other)
        except (FieldError, TypeError):
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = out[i] + x
        return OrePoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return OrePoly(self.ring, [-x for x in self.c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ore_mul(self, o)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ore_mul(o, self)

    def __pow__(self, e):
        result = self.ring.one
        for _ in range(e):
            result = result * self
        return result

    def left_scale(self, a):
        """a * self for a in K."""
        return OrePoly(self.ring, [a * x for x in self.c])

    def twist(self, k=1):
        return OrePoly(self.ring, [x.twist(k) for x in self.c])

    def monic(self):
        if not self.c:
            return self
        return self.left_scale(self.ring.K.one / self.lc)

    def __call__(self, x):
        """Evaluate as an additive polynomial: sum a_i x^(q^i)."""
        acc = None
        xi = x
        for i, a in enumerate(self.c):
            if i:
                xi = xi.twist(1)
            if a:
                term = a * xi
                acc = term if acc is None else acc + term
        if acc is None:
            return x * 0
        return acc

    def __str__(self):
        terms = []
        for g, a in enumerate(self.c):
            if not a:
                continue
            mono = _monomial(g, 0)
            s = str(a)
            if not mono:
                terms.append(s)
            elif s == "1":
                terms.append(mono)
            else:
                terms.append(f"{_coeff_str(s)}*{mono}")
        return "+".join(terms) if terms else "0"

    def __repr__(self):
        return f"OrePoly({self})"

    def to_anderson(self, ring=None):
        ring = ring or anderson_ring(self.ring.K)
        return AndersonPoly(ring, [ring.Tring((a,)) for a in self.c])


def ore_mul(f, g):
    """Product in the twisted ring (either OrePoly or AndersonPoly operands)."""
    if isinstance(f, AndersonPoly) or isinstance(g, AndersonPoly):
        return _anderson_mul(f, g)
    if f.ring is not g.ring:
        raise FieldError("Ore polynomials over different fields")
    a, b = f.c, g.c
    if not a or not b:
        return f.ring.zero
    K = f.ring.K
    out = [K.zero] * (len(a) + len(b) - 1)
    twists = {}
    for i, x in enumerate(a):
        if not x:
            continue
        if i not in twists:
            twists[i] = [y.twist(i) if y else y for y in b]
        for j, y in enumerate(twists[i]):
            if y:
                out[i + j] = out[i + j] + x * y
    return OrePoly(f.ring, out)


def left_divmod(f, g):
    """f = Q*g + R with deg R < deg g; only forward twists are used."""
    if not g:
        raise ZeroDivisionError("left division by the zero Ore polynomial")
    ring = f.ring
    K = ring.K
    rem = list(f.c)
    m = g.degree
    dq = len(rem) - 1 - m
    if dq < 0:
        return ring.zero, f
    quo = [K.zero] * (dq + 1)
    for k in range(dq, -1, -1):
        top = rem[k + m]
        if not top:
            continue
        coef = top / g.lc.twist(k)
        quo[k] = coef
        for j, y in enumerate(g.c):
            if y:
                rem[k + j] = rem[k + j] - coef * y.twist(k)
    return OrePoly(ring, quo), OrePoly(ring, rem[:m])


def right_gcd(f, g):
    """Monic generator of the left ideal K{t}f + K{t}g."""
    a, b = f, g
    if not a and not b:
        raise ZeroDivisionError("right_gcd of two zero polynomials")
    while b:
        a, b = b, left_divmod(a, b)[1]
    return a.monic()


def p_resultant(f, g):
    """Twisted Sylvester determinant of f (degree n) and g (degree m).

    Columns index t-degrees n+m-1, ..., 0.  The first m rows hold the
    coefficient vectors of t^(m-1)*f, ..., t*f, f and the last n rows those
    of t^(n-1)*g, ..., g, so row s of each block is shifted s places right
    and its coefficients are twisted (block height - 1 - s) times.  The
    determinant vanishes exactly when f and g have a common right factor of
    positive degree.
    """
    K = f.ring.K
    n, m = f.degree, g.degree
    if n < 0 or m < 0:
        raise ZeroDivisionError("p-resultant of a zero polynomial")
    size = n + m
    rows = []
    for poly, deg, height in ((f, n, m), (g, m, n)):
        for s in range(height):
            row = [K.zero] * size
            k = height - 1 - s
            for i in range(deg + 1):
                row[s + deg - i] = poly.c[i].twist(k)
            rows.append(row)
    return det_field(rows, K.zero, K.one)


# ---------------------------------------------------------------- K[T]{t}

class AndersonRing:
    def __init__(self, K):
        self.K = K
        self.Tring = poly_ring(K, "T")
        self.ore = ore_ring(K)
        self.zero = AndersonPoly(self, ())
        self.one = AndersonPoly(self, (self.Tring.one,))

    @property
    def tau(self):
        return AndersonPoly(self, (self.Tring.zero, self.Tring.one))

    @property
    def T(self):
        return AndersonPoly(self, (self.Tring.gen,))

    def __call__(self, x):
        if isinstance(x, AndersonPoly):
            if x.ring is self:
                return x
            raise FieldError("Anderson polynomial over a different field")
        if isinstance(x, OrePoly):
            return x.to_anderson(self)
        if isinstance(x, Poly):
            return AndersonPoly(self, (self.Tring(x),))
        return AndersonPoly(self, (self.Tring(self.K(x)),))

    def from_terms(self, terms):
        """Build sum c * t^gamma * T^beta from {(gamma, beta): c}."""
        K = self.K
        if not terms:
            return self.zero
        G = max(g for g, _ in terms) + 1
        cols = [dict() for _ in range(G)]
        for (g, b), c in terms.items():
            cols[g][b] = cols[g].get(b, K.zero) + K(c)
        coeffs = []
        for d in cols:
            if not d:
                coeffs.append(self.Tring.zero)
                continue
            B = max(d) + 1
            coeffs.append(Poly(self.Tring, [d.get(b, K.zero) for b in range(B)]))
        return AndersonPoly(self, coeffs)

    def from_tpolys(self, polys):
        return AndersonPoly(self, [self.Tring(p) for p in polys])

    def monomial(self, gamma, beta=0, coeff=None):
        K = self.K
        c = K.one if coeff is None else K(coeff)
        return self.from_terms({(gamma, beta): c})

    def __repr__(self):
        return f"{self.K.spec()}[T]{{t}}"


@functools.lru_cache(maxsize=None)
def anderson_ring(K):
    return AndersonRing(K)


class AndersonPoly:
    """sum_gamma f_gamma(T) t^gamma, with f_gamma in K[T]."""

    __slots__ = ("ring", "c")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.c = _trim(tuple(coeffs))

    # -- normal form accessors --

    @property
    def tau_degree(self):
        return len(self.c) - 1

    def coeff(self, gamma, beta=0):
        if 0 <= gamma < len(self.c):
            return self.c[gamma][beta]
        return self.ring.K.zero

    def tpoly(self, gamma):
        return self.c[gamma] if 0 <= gamma < len(self.c) else self.ring.Tring.zero

    def bidegrees(self):
        """Iterate (beta, gamma, b_{beta gamma}) over the nonzero normal-form terms."""
        for g, f in enumerate(self.c):
            for b, x in enumerate(f.c):
                if x:
                    yield b, g, x

    def bidegree_set(self):
        return sorted((b, g) for b, g, _ in self.bidegrees())

    @property
    def t_degree(self):
        return max((f.degree for f in self.c), default=-1)

    def head(self):
        return OrePoly(self.ring.ore, [f[0] for f in self.c])

    def tail(self):
        return AndersonPoly(self.ring, [f - f[0] for f in self.c])

    def tail_length(self):
        return max(0, self.t_degree)

    def rank(self):
        return self.head().degree

    def t_slice(self, beta):
        """The Ore polynomial sum_gamma b_{beta gamma} t^gamma."""
        return OrePoly(self.ring.ore, [f[beta] for f in self.c])

    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, AndersonPoly):
            return self.c == other.c
        if isinstance(other, int):
            return self == self.ring(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    # -- arithmetic --

    def _coerce(self, other):
        if isinstance(other, AndersonPoly):
            if other.ring is not self.ring:
                raise FieldError("Anderson polynomials over different fields")
            return other
        try:
            return self.ring(other)
        except (FieldError, TypeError):
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = out[i] + x
        return AndersonPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return AndersonPoly(self.ring, [-f for f in self.c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _anderson_mul(self, o)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _anderson_mul(o, self)

    def __pow__(self, e):
        result = self.ring.one
        for _ in range(e):
            result = result * self
        return result

    def left_scale(self, a):
        """a * self for a in K or K[T] (both commute past nothing on the left)."""
        return AndersonPoly(self.ring, [f * a for f in self.c])

    def twist(self, k=1):
        """Apply the twist to every K-coefficient (T fixed)."""
        return AndersonPoly(self.ring, [f.twist(k) for f in self.c])

    # -- action on T-power series --

    def apply(self, xs, N=None):
        """Coefficients of P*X mod T^N, X = sum xs[i] T^i (i < len(xs))."""
        N = len(xs) if N is None else N
        K = self.ring.K
        out = [K.zero] * N
        tw = {}
        for b, g, c in self.bidegrees():
            if g not in tw:
                tw[g] = [x.twist(g) for x in xs]
            xg = tw[g]
            for i in range(b, min(N, len(xs) + b)):
                y = xg[i - b]
                if y:
                    out[i] = out[i] + c * y
        return out

    # -- rendering --

    def __str__(self):
        terms = []
        for g, f in enumerate(self.c):
            for b, x in enumerate(f.c):
                if not x:
                    continue
                mono = _monomial(g, b)
                s = str(x)
                if not mono:
                    terms.append(s)
                elif s == "1":
                    terms.append(mono)
                else:
                    terms.append(f"{_coeff_str(s)}*{mono}")
        return "+".join(terms) if terms else "0"

    def __repr__(self):
        return f"AndersonPoly({self})"


def _anderson_mul(f, g):
    ring = f.ring if isinstance(f, AndersonPoly) else g.ring
    if isinstance(f, OrePoly):
        f = f.to_anderson(ring)
    if isinstance(g, OrePoly):
        g = g.to_anderson(ring)
    if f.ring is not g.ring:
        raise FieldError("Anderson polynomials over different fields")
    a, b = f.c, g.c
    if not a or not b:
        return ring.zero
    out = [ring.Tring.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = out[i + j] + x * y.twist(i)
    return AndersonPoly(ring, out)


def head_of(P):
    return P.head()


def tail_length(P):
    return P.tail_length()


def rank_of(P):
    return P.rank()


# ---------------------------------------------------------------- systems

class AffineSystem:
    """A lambda x mu matrix over K[T]{t}; encodes sum_j P_ij X_j = 0."""

    def __init__(self, ring, rows):
        self.ring = ring
        self.rows = [[ring(x) for x in row] for row in rows]
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise FieldError("ragged system")
        self.nrows = len(self.rows)
        self.ncols = widths.pop() if widths else 0

    @property
    def K(self):
        return self.ring.K

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def is_square(self):
        return self.nrows == self.ncols

    def max_tau_degree(self):
        return max((x.tau_degree for row in self.rows for x in row), default=0)

    def column(self, j):
        return [row[j] for row in self.rows]

    def transpose(self):
        return AffineSystem(self.ring, [list(c) for c in zip(*self.rows)])

    def apply(self, X, N):
        """Residuals of the system on X = list of coefficient lists, mod T^N."""
        K = self.ring.K
        out = []
        for row in self.rows:
            acc = [K.zero] * N
            for P, xs in zip(row, X):
                for i, y in enumerate(P.apply(xs, N)):
                    if y:
                        acc[i] = acc[i] + y
            out.append(acc)
        return out

    def residual_is_zero(self, X, N):
        return all(not y for r in self.apply(X, N) for y in r)

    def __eq__(self, other):
        return isinstance(other, AffineSystem) and self.rows == other.rows

    def __str__(self):
        return "[" + ",".join("[" + ",".join(str(x) for x in row) + "]" for row in self.rows) + "]"

    def __repr__(self):
        return f"AffineSystem({self})"
