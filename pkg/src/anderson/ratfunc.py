"""The rational function field F_q(th) with twist a(th) -> a(th^q)."""

import functools
import random
from fractions import Fraction

from .errors import FieldError
from .gf import FFElem
from .polynomial import Poly, poly_ring

INFINITY = float("inf")


class RationalFunctionField:
    is_field = True
    is_exact = True

    def __init__(self, constants, var="th"):
        self.constants = constants
        self.var = var
        self.q = constants.q
        self.p = constants.p
        self.poly = poly_ring(constants, var, True)
        self.zero = RatFunc(self, self.poly.zero, self.poly.one)
        self.one = RatFunc(self, self.poly.one, self.poly.one)

    @property
    def theta(self):
        return RatFunc(self, self.poly.gen, self.poly.one)

    def __call__(self, x):
        if isinstance(x, RatFunc):
            if x.field is self:
                return x
            raise FieldError(f"element of {x.field.spec()} is not in {self.spec()}")
        if isinstance(x, Poly):
            return RatFunc(self, self.poly(x), self.poly.one)
        if isinstance(x, (int, FFElem)):
            return RatFunc(self, self.poly(x), self.poly.one)
        raise FieldError(f"cannot coerce {x!r} into {self.spec()}")

    def fraction(self, num, den):
        num, den = self.poly(num), self.poly(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        g = num.gcd(den)
        if not g.is_one():
            num, den = num // g, den // g
        lc = den.lc
        if not lc == self.constants.one:
            inv = self.constants.one / lc
            num, den = num.scale(inv), den.scale(inv)
        return RatFunc(self, num, den)

    def random(self, rng=None, nonzero=False, degree=2, den_degree=0):
        rng = rng or random
        while True:
            num = self.poly.random(rng, degree)
            den = self.poly.random(rng, den_degree, monic=True) if den_degree else self.poly.one
            if num or not nonzero:
                return self.fraction(num, den)

    def spec(self):
        return f"{self.constants.spec()}({self.var})"

    def __repr__(self):
        return self.spec()


@functools.lru_cache(maxsize=None)
def rational_function_field(constants, var="th"):
    return RationalFunctionField(constants, var)


def Fq_theta(q):
    """F_q(th) with the twist x -> x^q."""
    from .gf import GF
    F = GF(q, q)
    return rational_function_field(F)


class RatFunc:
    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den):
        self.field = field
        self.num = num
        self.den = den

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.field is not self.field:
                raise FieldError("field mismatch")
            return other
        try:
            return self.field(other)
        except FieldError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return self.field.fraction(self.num + o.num, self.den)
        return self.field.fraction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, -self.num, self.den)

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
        if not self.num or not o.num:
            return self.field.zero
        if self.den.is_one() and o.den.is_one():
            return RatFunc(self.field, self.num * o.num, self.den)
        return self.field.fraction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return self.field.fraction(self.den, self.num)

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
        return RatFunc(self.field, self.num ** e, self.den ** e)

    def twist(self, k=1):
        if k == 0:
            return self
        return RatFunc(self.field, self.num.twist(k), self.den.twist(k))

    def valuation(self):
        if not self.num:
            return INFINITY
        return Fraction(self.den.degree - self.num.degree)

    def is_polynomial(self):
        return self.den.is_one()

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.field is other.field and self.num == other.num and self.den == other.den
        o = self._coerce(other) if isinstance(other, (int, FFElem, Poly)) else None
        if o is None:
            return NotImplemented
        return self == o

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def __str__(self):
        n = str(self.num)
        if self.den.is_one():
            return n
        d = str(self.den)
        if "+" in n or "*" in n:
            n = f"({n})"
        if "+" in d or "*" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RatFunc({self})"

