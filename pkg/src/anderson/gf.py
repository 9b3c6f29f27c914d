"""Finite fields GF(p^n) carrying a q-power Frobenius twist.

Elements are stored as integers whose base-p digits are the coordinates in
the power basis 1, z, z^2, ... of the defining modulus.  Small fields
(at most 2^16 elements) are backed by exponential/logarithm tables built
from the smallest primitive modulus; larger fields use the smallest
irreducible modulus and direct polynomial arithmetic (carry-less integer
arithmetic when p = 2).
"""

import functools
import random

from .errors import FieldError

TABLE_LIMIT = 1 << 16


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_prime(n):
    return n >= 2 and _prime_factors(n) == [n]


def _digits(v, p, n):
    out = []
    for _ in range(n):
        v, d = divmod(v, p)
        out.append(d)
    return out


def _undigits(ds, p):
    v = 0
    for d in reversed(ds):
        v = v * p + d
    return v


# --- dense polynomials over F_p as coefficient lists (low degree first) ---

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _pmod(a, f, p):
    a = list(a)
    n = len(f) - 1
    inv = pow(f[-1], p - 2, p)
    while len(a) > n:
        c = a[-1] * inv % p
        if c:
            shift = len(a) - 1 - n
            for i, fi in enumerate(f):
                a[shift + i] = (a[shift + i] - c * fi) % p
        a.pop()
        _ptrim(a)
    return _ptrim(a)


def _psub(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x
    for i, y in enumerate(b):
        out[i] = (out[i] - y) % p
    return _ptrim(out)


def _pgcd(a, b, p):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(a, e, f, p):
    result, base = [1], _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def _is_primitive(f, p):
    n = len(f) - 1
    order = p ** n - 1
    x = [0, 1]
    if _ppowmod(x, order, f, p) != [1]:
        return False
    return all(_ppowmod(x, order // r, f, p) != [1] for r in _prime_factors(order))


def _is_irreducible(f, p):
    # Rabin's test
    n = len(f) - 1
    x = [0, 1]
    for r in _prime_factors(n):
        h = _psub(_ppowmod(x, p ** (n // r), f, p), x, p)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return _psub(_ppowmod(x, p ** n, f, p), x, p) == []


# --- GF(2) polynomials packed in ints ---

def _clmul(a, b):
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def _clmod(a, f):
    df = f.bit_length() - 1
    while a and a.bit_length() - 1 >= df:
        a ^= f << (a.bit_length() - 1 - df)
    return a


def _clgcd(a, b):
    while b:
        a, b = b, _clmod(a, b)
    return a


def _cl_is_irreducible(f):
    n = f.bit_length() - 1
    x = 2

    def frob_power(k):
        y = x
        for _ in range(k):
            y = _clmod(_clmul(y, y), f)
        return y

    for r in _prime_factors(n):
        if _clgcd(f, frob_power(n // r) ^ x) != 1:
            return False
    return frob_power(n) == x


@functools.lru_cache(maxsize=None)
def _find_modulus(p, n, primitive):
    """Smallest lexicographic monic modulus of degree n over F_p."""
    for lower in range(1, p ** n):
        if lower % p == 0:
            continue
        if p == 2 and not primitive:
            f = (1 << n) | lower
            if _cl_is_irreducible(f):
                return tuple(_digits(f, 2, n + 1))
            continue
        f = _digits(lower, p, n) + [1]
        if primitive and _is_primitive(f, p):
            return tuple(f)
        if not primitive and _is_irreducible(f, p):
            return tuple(f)
    raise FieldError(f"no modulus of degree {n} over F_{p}")


class FiniteField:
    """The field with p**n elements; `q` (a power of p) sets the twist x -> x^q."""

    is_field = True
    is_exact = True

    def __init__(self, p, n=1, q=None):
        if not _is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if n < 1:
            raise FieldError("extension degree must be positive")
        q = p if q is None else q
        s = 0
        qq = q
        while qq % p == 0:
            qq //= p
            s += 1
        if qq != 1 or s == 0 or n % s:
            raise FieldError(f"q={q} is not a power of {p} dividing the field degree")
        self.p, self.n, self.q = p, n, q
        self.q_exponent = s
        self.order = p ** n
        self.zero = FFElem(self, 0)
        self.one = FFElem(self, 1)
        if n == 1:
            self.modulus = (0, 1)
            self._mode = "prime"
        elif self.order <= TABLE_LIMIT:
            self.modulus = _find_modulus(p, n, True)
            self._mode = "table"
            self._build_tables()
        else:
            self.modulus = _find_modulus(p, n, False)
            self._mode = "binary" if p == 2 else "poly"
            if p == 2:
                self._fint = _undigits(list(self.modulus), 2)

    # -- construction helpers --

    def _build_tables(self):
        p, n, Q = self.p, self.n, self.order
        f = self.modulus
        exp = [0] * (2 * (Q - 1))
        log = [0] * Q
        d = [1] + [0] * (n - 1)
        for i in range(Q - 1):
            v = _undigits(d, p)
            exp[i] = exp[i + Q - 1] = v
            log[v] = i
            top = d[-1]
            d = [0] + d[:-1]
            if top:
                d = [(d[j] - top * f[j]) % p for j in range(n)]
        self._exp, self._log = exp, log
        if p != 2:
            zech = [0] * (Q - 1)
            for i in range(Q - 1):
                v = exp[i]
                w = v - v % p + (v % p + 1) % p
                zech[i] = -1 if w == 0 else log[w]
            self._zech = zech
            self._half = (Q - 1) // 2

    # -- raw integer arithmetic --

    def _add(self, a, b):
        mode = self._mode
        if mode == "prime":
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if not a:
            return b
        if not b:
            return a
        if mode == "table":
            la, lb = self._log[a], self._log[b]
            z = self._zech[(lb - la) % (self.order - 1)]
            return 0 if z < 0 else self._exp[la + z]
        p = self.p
        da, db = _digits(a, p, self.n), _digits(b, p, self.n)
        return _undigits([(x + y) % p for x, y in zip(da, db)], p)

    def _neg(self, a):
        mode = self._mode
        if not a or self.p == 2:
            return a
        if mode == "prime":
            return self.p - a
        if mode == "table":
            return self._exp[self._log[a] + self._half]
        p = self.p
        return _undigits([(-x) % p for x in _digits(a, p, self.n)], p)

    def _sub(self, a, b):
        return self._add(a, self._neg(b))

    def _mul(self, a, b):
        if not a or not b:
            return 0
        mode = self._mode
        if mode == "prime":
            return a * b % self.p
        if mode == "table":
            return self._exp[self._log[a] + self._log[b]]
        if mode == "binary":
            return _clmod(_clmul(a, b), self._fint)
        p = self.p
        prod = _pmul(_digits(a, p, self.n), _digits(b, p, self.n), p)
        return _undigits(_pmod(prod, list(self.modulus), p), p)

    def _pow(self, a, e):
        if e == 0:
            return 1
        if not a:
            return 0
        if self._mode == "prime":
            return pow(a, e % (self.p - 1), self.p)
        if self._mode == "table":
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        e %= self.order - 1
        result = 1
        while e:
            if e & 1:
                result = self._mul(result, a)
            a = self._mul(a, a)
            e >>= 1
        return result

    def _inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero in " + self.spec())
        if self._mode == "table":
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self._pow(a, self.order - 2)

    def _frob(self, a, k):
        """a^(q^k); negative k wraps around the cycle x^(q^(n/s)) = x."""
        cycle = self.n // self.q_exponent
        k %= cycle
        if not k or not a:
            return a
        if self._mode == "prime":
            return a
        if self._mode == "table":
            return self._pow(a, pow(self.q, k, self.order - 1))
        for _ in range(k * self.q_exponent):
            a = self._pow_p(a)
        return a

    def _pow_p(self, a):
        if self.p == 2:
            return self._mul(a, a)
        return self._pow(a, self.p)

    # -- element constructors --

    def __call__(self, x):
        if isinstance(x, FFElem):
            if x.field is self:
                return x
            raise FieldError(f"element of {x.field.spec()} is not in {self.spec()}")
        if isinstance(x, int):
            return FFElem(self, x % self.p)
        raise FieldError(f"cannot coerce {x!r} into {self.spec()}")

    def from_int(self, v):
        if not 0 <= v < self.order:
            raise FieldError(f"encoding {v} out of range for {self.spec()}")
        return FFElem(self, v)

    @property
    def gen(self):
        return FFElem(self, self.p if self.n > 1 else 1)

    def elements(self):
        return (FFElem(self, v) for v in range(self.order))

    def random(self, rng=None, nonzero=False):
        rng = rng or random
        lo = 1 if nonzero else 0
        return FFElem(self, rng.randrange(lo, self.order))

    def spec(self):
        if self.q == self.p:
            return f"GF({self.order})"
        return f"GF({self.order},q={self.q})"

    def __repr__(self):
        return self.spec()

    def is_subfield_element(self, x, degree):
        """True when x lies in the subfield of p**degree elements."""
        return self._pow(x.v, self.p ** degree) == x.v

    def prime_subfield(self):
        return finite_field(self.p)

    def constants_field(self):
        """The field F_q of twist-invariant constants."""
        return finite_field(self.p, self.q_exponent, self.q)

    def embedding_into(self, big):
        return _embedding(self, big)


def finite_field(p, n=1, q=None):
    return _finite_field(p, n, p if q is None else q)


@functools.lru_cache(maxsize=None)
def _finite_field(p, n, q):
    return FiniteField(p, n, q)


def GF(order, q=None):
    """Field with `order` elements; the twist uses q (default the characteristic)."""
    fs = _prime_factors(order)
    if len(fs) != 1:
        raise FieldError(f"{order} is not a prime power")
    p = fs[0]
    n = 0
    while order > 1:
        order //= p
        n += 1
    return finite_field(p, n, q)


@functools.lru_cache(maxsize=None)
def _embedding(small, big):
    if small is big:
        return lambda x: x
    if small.p != big.p or big.n % small.n:
        raise FieldError(f"{small.spec()} does not embed into {big.spec()}")
    if small.n == 1:
        return lambda x: FFElem(big, x.v)
    f = small.modulus
    N = (big.order - 1) // (small.order - 1)
    image = None
    for y in range(2, big.order):
        w = big._pow(y, N)
        acc = 0
        for c in reversed(f):
            acc = big._add(big._mul(acc, w), c % big.p)
        if acc == 0:
            image = w
            break
    if image is None:
        raise FieldError("no embedding found")
    powers = [1]
    for _ in range(small.n - 1):
        powers.append(big._mul(powers[-1], image))
    p = small.p

    def embed(x):
        acc = 0
        for d, pw in zip(_digits(x.v, p, small.n), powers):
            if d:
                acc = big._add(acc, big._mul(d % p, pw))
        return FFElem(big, acc)

    return embed


class FFElem:
    __slots__ = ("field", "v")

    def __init__(self, field, v):
        self.field = field
        self.v = v

    def _coerce(self, other):
        if isinstance(other, FFElem):
            if other.field is not self.field:
                raise FieldError(f"field mismatch: {self.field.spec()} vs {other.field.spec()}")
            return other.v
        if isinstance(other, int):
            return other % self.field.p
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field._add(self.v, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field._sub(self.v, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field._sub(o, self.v))

    def __neg__(self):
        return FFElem(self.field, self.field._neg(self.v))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field._mul(self.v, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field._mul(self.v, self.field._inv(o)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field._mul(o, self.field._inv(self.v)))

    def __pow__(self, e):
        if e < 0:
            return FFElem(self.field, self.field._pow(self.field._inv(self.v), -e))
        return FFElem(self.field, self.field._pow(self.v, e))

    def inverse(self):
        return FFElem(self.field, self.field._inv(self.v))

    def twist(self, k=1):
        return FFElem(self.field, self.field._frob(self.v, k))

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (FFElem, int)) else None
        if o is None:
            return NotImplemented if not isinstance(other, FFElem) else False
        return self.v == o

    def __hash__(self):
        return hash((id(self.field), self.v))

    def __bool__(self):
        return self.v != 0

    def is_zero(self):
        return self.v == 0

    def is_one(self):
        return self.v == 1

    def digits(self):
        return _digits(self.v, self.field.p, self.field.n)

    def __str__(self):
        F = self.field
        if F.n == 1:
            return str(self.v)
        terms = []
        for i, d in reversed(list(enumerate(self.digits()))):
            if not d:
                continue
            if i == 0:
                terms.append(str(d))
            else:
                mono = "z" if i == 1 else f"z^{i}"
                terms.append(mono if d == 1 else f"{d}*{mono}")
        return "+".join(terms) if terms else "0"

    def __repr__(self):
        return f"{self.field.spec()}({self})"
