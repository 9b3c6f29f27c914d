"""Truncated Laurent (Puiseux) series in u = th^(-1/e) over a finite residue field.

An element is a finite set of known terms plus an absolute precision: the
value is known modulo u^absprec.  Exact elements (finitely many terms, all
known) carry ``absprec = None``.  Every result keeps at most ``prec`` terms
beyond its valuation.
"""

import functools
import random
from fractions import Fraction

from .errors import FieldError, NotAQthPower, PrecisionExhausted
from .gf import FFElem

INFINITY = float("inf")


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class LaurentField:
    is_field = True
    is_exact = False

    def __init__(self, residue, e=1, prec=20):
        if e < 1 or prec < 1:
            raise FieldError("ramification index and precision must be positive")
        self.residue = residue
        self.e = e
        self.prec = prec
        self.q = residue.q
        self.p = residue.p
        self.zero = LaurentElem(self, {}, None)
        self.one = LaurentElem(self, {0: residue.one}, None)

    @property
    def theta(self):
        return LaurentElem(self, {-self.e: self.residue.one}, None)

    @property
    def uniformizer(self):
        return LaurentElem(self, {1: self.residue.one}, None)

    def monomial(self, coeff, index):
        coeff = self.residue(coeff)
        if not coeff:
            return self.zero
        return LaurentElem(self, {index: coeff}, None)

    def from_terms(self, terms, absprec=None):
        return self._make({i: self.residue(c) for i, c in terms.items()}, absprec)

    def O(self, index):
        """The unknown quantity O(u^index)."""
        return LaurentElem(self, {}, index)

    def _make(self, terms, absprec):
        terms = {i: c for i, c in terms.items() if c and (absprec is None or i < absprec)}
        if terms:
            v = min(terms)
            cap = v + self.prec
            if absprec is None and max(terms) >= cap or absprec is not None and absprec > cap:
                absprec = cap
                terms = {i: c for i, c in terms.items() if i < cap}
        return LaurentElem(self, terms, absprec)

    def __call__(self, x):
        from .ratfunc import RatFunc
        from .polynomial import Poly
        if isinstance(x, LaurentElem):
            if x.field is self:
                return x
            return self.embed_from(x)
        if isinstance(x, int):
            return self.monomial(x, 0)
        if isinstance(x, FFElem):
            if x.field is self.residue:
                return self.monomial(x, 0)
            return self.monomial(x.field.embedding_into(self.residue)(x), 0)
        if isinstance(x, Poly):
            return self._from_poly(x)
        if isinstance(x, RatFunc):
            return self._from_poly(x.num) / self._from_poly(x.den)
        raise FieldError(f"cannot coerce {x!r} into {self.spec()}")

    def _from_poly(self, f):
        terms = {}
        for i, c in enumerate(f.c):
            if c:
                terms[-i * self.e] = self._residue_coerce(c)
        return self._make(terms, None)

    def _residue_coerce(self, c):
        if c.field is self.residue:
            return c
        return c.field.embedding_into(self.residue)(c)

    def embed_from(self, x):
        """Re-embed an element of another Laurent field with compatible ramification."""
        src = x.field
        if self.e % src.e:
            raise FieldError(f"cannot embed e={src.e} into e={self.e}")
        r = self.e // src.e
        terms = {i * r: self._residue_coerce(c) for i, c in x.terms.items()}
        absprec = None if x.absprec is None else x.absprec * r
        return self._make(terms, absprec)

    def random(self, rng=None, nonzero=False, span=4, low=-2):
        rng = rng or random
        while True:
            terms = {low + j: self.residue.random(rng) for j in range(span)}
            x = self._make(terms, None)
            if x or not nonzero:
                return x

    def spec(self):
        return f"Laurent({self.residue.spec()}, e={self.e}, prec={self.prec})"

    def __repr__(self):
        return self.spec()


@functools.lru_cache(maxsize=None)
def laurent_field(residue, e=1, prec=20):
    return LaurentField(residue, e, prec)


class LaurentElem:
    __slots__ = ("field", "terms", "absprec")

    def __init__(self, field, terms, absprec):
        self.field = field
        self.terms = terms
        self.absprec = absprec

    # -- structure --

    @property
    def is_exact(self):
        return self.absprec is None

    def index_valuation(self):
        """Lowest known index, or the precision bound for an inexact zero."""
        if self.terms:
            return min(self.terms)
        return INFINITY if self.absprec is None else self.absprec

    def valuation(self):
        if self.terms:
            return Fraction(min(self.terms), self.field.e)
        if self.absprec is None:
            return INFINITY
        raise PrecisionExhausted("valuation of a series with no known nonzero term")

    def leading(self):
        i = min(self.terms)
        return i, self.terms[i]

    def coeff(self, i):
        if self.absprec is not None and i >= self.absprec:
            raise PrecisionExhausted(f"coefficient u^{i} beyond precision {self.absprec}")
        return self.terms.get(i, self.field.residue.zero)

    def _coerce(self, other):
        if isinstance(other, LaurentElem):
            if other.field is not self.field:
                raise FieldError(f"field mismatch: {self.field.spec()} vs {other.field.spec()}")
            return other
        try:
            return self.field(other)
        except FieldError:
            return None

    # -- arithmetic --

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for i, c in o.terms.items():
            terms[i] = terms[i] + c if i in terms else c
        return self.field._make(terms, _min_prec(self.absprec, o.absprec))

    __radd__ = __add__

    def __neg__(self):
        return LaurentElem(self.field, {i: -c for i, c in self.terms.items()}, self.absprec)

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
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.field
        if not self.terms and self.absprec is None or not o.terms and o.absprec is None:
            return F.zero
        va, vb = self.index_valuation(), o.index_valuation()
        absprec = None
        if self.absprec is not None:
            absprec = vb + self.absprec
        if o.absprec is not None:
            absprec = _min_prec(absprec, va + o.absprec)
        cap = va + vb + F.prec
        if absprec is None and self.terms and o.terms and max(self.terms) + max(o.terms) >= cap:
            absprec = cap
        limit = cap if absprec is None else min(absprec, cap)
        terms = {}
        for i, x in self.terms.items():
            for j, y in o.terms.items():
                k = i + j
                if k < limit:
                    terms[k] = terms[k] + x * y if k in terms else x * y
        return F._make(terms, absprec)

    __rmul__ = __mul__

    def inverse(self):
        if not self.terms:
            if self.absprec is None:
                raise ZeroDivisionError("inverse of zero")
            raise PrecisionExhausted("inverse of a series with no known nonzero term")
        F = self.field
        v, c = self.leading()
        cinv = c.inverse()
        if len(self.terms) == 1 and self.absprec is None:
            return LaurentElem(F, {-v: cinv}, None)
        rel = F.prec if self.absprec is None else min(F.prec, self.absprec - v)
        s = [self.terms.get(v + j, F.residue.zero) for j in range(rel)]
        t = [cinv]
        for n in range(1, rel):
            acc = F.residue.zero
            for j in range(1, n + 1):
                if s[j]:
                    acc = acc + s[j] * t[n - j]
            t.append(-(acc * cinv))
        return F._make({-v + n: x for n, x in enumerate(t)}, -v + rel)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def twist(self, k=1):
        if k == 0:
            return self
        F = self.field
        if k > 0:
            m = F.q ** k
            terms = {i * m: c.twist(k) for i, c in self.terms.items()}
            absprec = None if self.absprec is None else self.absprec * m
            return F._make(terms, absprec)
        m = F.q ** (-k)
        terms = {}
        for i, c in self.terms.items():
            if i % m:
                raise NotAQthPower(f"term u^{i} has no q^{-k}-th root without further ramification")
            terms[i // m] = c.twist(k)
        absprec = None if self.absprec is None else -((-self.absprec) // m)
        return F._make(terms, absprec)

    def truncate(self, index):
        """Forget all terms at u^index and beyond."""
        return self.field._make(dict(self.terms), _min_prec(self.absprec, index))

    def __eq__(self, other):
        """Equality on the commonly known range."""
        if isinstance(other, LaurentElem) and other.field is not self.field:
            same = other.field.residue is self.field.residue and other.field.e == self.field.e
            o = other if same else None
        else:
            o = self._coerce(other) if isinstance(other, (int, FFElem)) else None
        if o is None:
            return NotImplemented
        bound = _min_prec(self.absprec, o.absprec)
        keys = set(self.terms) | set(o.terms)
        zero = self.field.residue.zero
        for i in keys:
            if bound is not None and i >= bound:
                continue
            if self.terms.get(i, zero) != o.terms.get(i, zero):
                return False
        return True

    def __hash__(self):
        return hash(tuple(sorted((i, c.v) for i, c in self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.absprec is None and self.terms == {0: self.field.residue.one}

    # -- rendering --

    def __str__(self):
        e = self.field.e
        parts = []
        for i in sorted(self.terms):
            c = self.terms[i]
            x = Fraction(-i, e)
            s = str(c)
            if "+" in s:
                s = f"({s})"
            if x == 0:
                parts.append(s)
                continue
            mono = "th" if x == 1 else f"th^({x})"
            parts.append(mono if s == "1" else f"{s}*{mono}")
        if self.absprec is not None:
            x = Fraction(-self.absprec, e)
            parts.append("O(1)" if x == 0 else f"O(th^({x}))")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"LaurentElem({self})"
