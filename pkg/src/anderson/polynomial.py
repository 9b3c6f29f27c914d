"""Dense univariate polynomials over an exact coefficient ring.

The same class serves two roles with different twists:

* K[T] (``subst_twist=False``): the twist acts on coefficients and fixes T.
* F_q[th] (``subst_twist=True``): the twist substitutes th -> th^q, the
  coefficients being constants of the twist.
"""

import functools

from .errors import FieldError, NotAQthPower


def _exquo_elem(a, b):
    if hasattr(a, "exquo"):
        return a.exquo(b)
    return a / b


class PolyRing:
    is_field = False
    is_exact = True

    def __init__(self, base, var="T", subst_twist=False):
        self.base = base
        self.var = var
        self.subst_twist = subst_twist
        self.zero = Poly(self, ())
        self.one = Poly(self, (base.one,))

    @property
    def gen(self):
        return Poly(self, (self.base.zero, self.base.one))

    @property
    def q(self):
        return self.base.q

    @property
    def p(self):
        return self.base.p

    def __call__(self, x):
        if isinstance(x, Poly):
            if x.ring is self:
                return x
            if x.ring.base is self.base and x.ring.var == self.var:
                return Poly(self, x.c)
            return Poly(self, (self.base(x),))
        if isinstance(x, (list, tuple)):
            return Poly(self, tuple(self.base(c) for c in x))
        return Poly(self, (self.base(x),))

    def from_coeffs(self, coeffs):
        return Poly(self, tuple(self.base(c) for c in coeffs))

    def monomial(self, deg, coeff=None):
        b = self.base
        coeff = b.one if coeff is None else b(coeff)
        return Poly(self, (b.zero,) * deg + (coeff,))

    def random(self, rng, degree, monic=False):
        cs = [self.base.random(rng) for _ in range(degree + 1)]
        if monic:
            cs[-1] = self.base.one
        elif degree >= 0 and not cs[-1]:
            cs[-1] = self.base.random(rng, nonzero=True)
        return Poly(self, tuple(cs))

    def spec(self):
        return f"{self.base.spec()}[{self.var}]"

    def __repr__(self):
        return self.spec()


@functools.lru_cache(maxsize=None)
def poly_ring(base, var="T", subst_twist=False):
    return PolyRing(base, var, subst_twist)


def _trim(cs):
    n = len(cs)
    while n and not cs[n - 1]:
        n -= 1
    return tuple(cs[:n])


class Poly:
    __slots__ = ("ring", "c")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.c = _trim(coeffs)

    # -- basic structure --

    @property
    def degree(self):
        return len(self.c) - 1

    @property
    def lc(self):
        return self.c[-1] if self.c else self.ring.base.zero

    def __getitem__(self, i):
        if 0 <= i < len(self.c):
            return self.c[i]
        return self.ring.base.zero

    def __bool__(self):
        return bool(self.c)

    def is_zero(self):
        return not self.c

    def is_one(self):
        return len(self.c) == 1 and self.c[0] == self.ring.base.one

    def is_constant(self):
        return len(self.c) <= 1

    def __len__(self):
        return len(self.c)

    def __iter__(self):
        return iter(self.c)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.c == other.c
        if isinstance(other, int) or getattr(other, "field", None) is self.ring.base:
            return self.c == Poly(self.ring, (self.ring.base(other),)).c
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring is self.ring:
                return other
            if other.ring.base is self.ring.base and other.ring.var == self.ring.var:
                return Poly(self.ring, other.c)
            try:
                return Poly(self.ring, (self.ring.base(other),))
            except FieldError:
                return None
        try:
            return Poly(self.ring, (self.ring.base(other),))
        except (FieldError, TypeError):
            return None

    # -- arithmetic --

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
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, [-x for x in self.c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, Poly) and other.ring is self.ring:
            o = other
        else:
            if not isinstance(other, Poly):
                try:
                    s = self.ring.base(other)
                except (FieldError, TypeError):
                    return NotImplemented
                return self.scale(s)
            o = self._coerce(other)
            if o is None:
                return NotImplemented
        a, b = self.c, o.c
        if not a or not b:
            return self.ring.zero
        if len(a) == 1:
            return o.scale(a[0])
        if len(b) == 1:
            return self.scale(b[0])
        out = [self.ring.base.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
        return Poly(self.ring, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def scale(self, s):
        if not s:
            return self.ring.zero
        return Poly(self.ring, [x * s for x in self.c])

    def __pow__(self, e):
        result, base = self.ring.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, k):
        """Multiply by var^k (k >= 0) or drop the lowest -k coefficients."""
        if k >= 0:
            return Poly(self.ring, (self.ring.base.zero,) * k + self.c)
        return Poly(self.ring, self.c[-k:])

    def truncate(self, n):
        return Poly(self.ring, self.c[:n])

    # -- division --

    def divmod(self, other):
        """Euclidean division; the divisor's leading coefficient must be invertible."""
        o = self._coerce(other)
        if not o:
            raise ZeroDivisionError("polynomial division by zero")
        inv = self.ring.base.one / o.lc
        rem = list(self.c)
        dq = len(rem) - len(o.c)
        if dq < 0:
            return self.ring.zero, self
        quo = [self.ring.base.zero] * (dq + 1)
        db = len(o.c) - 1
        for k in range(dq, -1, -1):
            coef = rem[k + db] * inv
            quo[k] = coef
            if coef:
                for j, y in enumerate(o.c):
                    rem[k + j] = rem[k + j] - coef * y
        return Poly(self.ring, quo), Poly(self.ring, rem[:db])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exquo(self, other):
        """Exact division over a domain; raises if a remainder appears."""
        o = self._coerce(other)
        if not o:
            raise ZeroDivisionError("polynomial division by zero")
        if not self.c:
            return self
        if len(o.c) == 1:
            return Poly(self.ring, [_exquo_elem(x, o.c[0]) for x in self.c])
        rem = list(self.c)
        dq = len(rem) - len(o.c)
        if dq < 0:
            raise ArithmeticError("inexact polynomial division")
        quo = [self.ring.base.zero] * (dq + 1)
        db = len(o.c) - 1
        lc = o.c[-1]
        for k in range(dq, -1, -1):
            top = rem[k + db]
            if not top:
                continue
            coef = _exquo_elem(top, lc)
            quo[k] = coef
            for j, y in enumerate(o.c):
                rem[k + j] = rem[k + j] - coef * y
        if any(rem[:db]):
            raise ArithmeticError("inexact polynomial division")
        return Poly(self.ring, quo)

    def __truediv__(self, other):
        return self.exquo(other)

    def monic(self):
        if not self.c:
            return self
        return self.scale(self.ring.base.one / self.lc)

    def gcd(self, other):
        """Monic gcd (coefficient field) or primitive gcd up to units (domains)."""
        a, b = self, self._coerce(other)
        if getattr(self.ring.base, "is_field", False):
            while b:
                a, b = b, a % b
            return a.monic()
        # polynomials over a gcd domain: via content and pseudo-remainders
        ca, cb = a.content(), b.content()
        if not a:
            return b
        if not b:
            return a
        g = ca.gcd(cb)
        a, b = a.primitive(), b.primitive()
        while b:
            r = a.pseudo_rem(b)
            a, b = b, (r.primitive() if r else r)
        return a.primitive() * g

    def pseudo_rem(self, other):
        d = self.degree - other.degree
        if d < 0:
            return self
        r = self.scale(other.lc ** (d + 1)) if hasattr(other.lc, "__pow__") else self
        return r.divmod_domain(other)

    def divmod_domain(self, other):
        rem = list(self.c)
        db = other.degree
        for k in range(len(rem) - 1 - db, -1, -1):
            top = rem[k + db]
            if not top:
                continue
            coef = _exquo_elem(top, other.lc)
            for j, y in enumerate(other.c):
                rem[k + j] = rem[k + j] - coef * y
        return Poly(self.ring, rem[:db])

    def content(self):
        """gcd of the coefficients (only meaningful over a gcd domain)."""
        base = self.ring.base
        g = base.zero
        for x in self.c:
            g = x if not g else g.gcd(x)
            if hasattr(g, "is_one") and g.is_one():
                break
        return g

    def primitive(self):
        if not self.c:
            return self
        g = self.content()
        if not g or (hasattr(g, "is_one") and g.is_one()):
            return self
        return Poly(self.ring, [_exquo_elem(x, g) for x in self.c])

    # -- evaluation and twists --

    def __call__(self, x):
        acc = None
        for cf in reversed(self.c):
            acc = cf if acc is None else acc * x + cf
        if acc is None:
            return x * 0 if hasattr(x, "__mul__") else self.ring.base.zero
        return acc

    def twist(self, k=1):
        if k == 0 or not self.c:
            return self
        ring = self.ring
        if not ring.subst_twist:
            return Poly(ring, [x.twist(k) for x in self.c])
        q = ring.base.q
        if k > 0:
            step = q ** k
            out = [ring.base.zero] * ((len(self.c) - 1) * step + 1)
            for i, x in enumerate(self.c):
                if x:
                    out[i * step] = x.twist(k)
            return Poly(ring, out)
        step = q ** (-k)
        out = []
        for i, x in enumerate(self.c):
            if x and i % step:
                raise NotAQthPower(f"{self} is not a q^{-k}-th power")
            if i % step == 0:
                out.append(x.twist(k))
        return Poly(ring, out)

    def derivative(self):
        return Poly(self.ring, [x * i for i, x in enumerate(self.c)][1:])

    # -- rendering --

    def __str__(self):
        if not self.c:
            return "0"
        var = self.ring.var
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            x = self.c[i]
            if not x:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            s = str(x)
            if not mono:
                terms.append(s)
            elif s == "1":
                terms.append(mono)
            else:
                if "+" in s or "-" in s[1:]:
                    s = f"({s})"
                terms.append(f"{s}*{mono}")
        return "+".join(terms)

    def __repr__(self):
        return f"Poly({self})"
