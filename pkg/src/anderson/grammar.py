"""Text syntax for Anderson-ring elements and systems.

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" INT)?
    atom   := INT | "z" | "th" | "t" | "T" | NAME | "(" expr ")"
    matrix := "[" row ("," row)* "]"      row := "[" expr ("," expr)* "]"

``t`` is the twist, ``T`` the central variable, ``th`` the field's theta and
``z`` the generator of a finite field.  Products keep their written order, so
``t*th`` becomes th^q*t.  Division is only by nonzero scalars.  Names are
looked up in a bindings dict (field elements or Anderson polynomials).
"""

import re

from .errors import FieldError, ParseError
from .gf import FiniteField
from .ore import AffineSystem, AndersonPoly, OrePoly, anderson_ring

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def tokenize(src):
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            out.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()[],":
                raise ParseError(f"unexpected character {ch!r}", start)
            out.append(("op", ch, start))
        pos = m.end()
    out.append(("end", "", len(src)))
    return out


class _Parser:
    def __init__(self, src, K, bindings):
        self.src = src
        self.K = K
        self.R = anderson_ring(K)
        self.toks = tokenize(src)
        self.i = 0
        self.bindings = bindings or {}

    # -- token helpers --

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, v, pos = self.take()
        if v != value or kind == "end":
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", pos)

    def at(self, value):
        kind, v, _ = self.peek()
        return kind == "op" and v == value

    # -- grammar --

    def expr(self):
        acc = self.term()
        while self.at("+") or self.at("-"):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.at("*") or self.at("/"):
            _, op, pos = self.take()
            rhs = self.unary()
            if op == "*":
                acc = acc * rhs
            else:
                c = self._scalar(rhs, pos)
                if not c:
                    raise ParseError("division by zero", pos)
                acc = acc * self.R(c.inverse() if hasattr(c, "inverse") else self.K.one / c)
        return acc

    def unary(self):
        if self.at("-"):
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.at("^"):
            self.take()
            kind, v, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer", pos)
            e = int(v)
            acc = self.R.one
            for _ in range(e):
                acc = acc * base
            return acc
        return base

    def atom(self):
        kind, v, pos = self.take()
        R, K = self.R, self.K
        if kind == "int":
            n = int(v)
            if n >= K.p:
                raise ParseError(f"integer literal {n} is not a digit of characteristic {K.p}", pos)
            return R(K(n))
        if kind == "name":
            if v in self.bindings:
                return self._bound(self.bindings[v], pos)
            if v == "t":
                return R.tau
            if v == "T":
                return R.T
            if v == "th":
                th = getattr(K, "theta", None)
                if th is None:
                    raise ParseError("th is not available in this field (bind it explicitly)", pos)
                return R(th)
            if v == "z":
                return R(self._generator(pos))
            raise ParseError(f"unknown name {v!r}", pos)
        if kind == "op" and v == "(":
            e = self.expr()
            self.expect(")")
            return e
        raise ParseError(f"unexpected {v or 'end of input'!r}", pos)

    def _generator(self, pos):
        K = self.K
        if isinstance(K, FiniteField):
            if K.n == 1:
                raise ParseError("z is not a literal of a prime field", pos)
            return K.gen
        base = getattr(K, "constants", None) or getattr(K, "residue", None)
        if isinstance(base, FiniteField) and base.n > 1:
            return K(base.gen)
        raise ParseError("z is not a literal of this field", pos)

    def _bound(self, x, pos):
        try:
            if isinstance(x, AndersonPoly):
                return x
            if isinstance(x, OrePoly):
                return x.to_anderson(self.R)
            if isinstance(x, str):
                return parse_anderson(x, self.K, self.bindings)
            return self.R(self.K(x))
        except FieldError as ex:
            raise ParseError(f"binding does not fit the field: {ex}", pos) from None

    def _scalar(self, P, pos):
        if P.tau_degree > 0 or P.t_degree > 0:
            raise ParseError("division only by nonzero field elements", pos)
        return P.coeff(0, 0)

    def matrix(self):
        self.expect("[")
        rows = []
        while True:
            self.expect("[")
            row = [self.expr()]
            while self.at(","):
                self.take()
                row.append(self.expr())
            self.expect("]")
            rows.append(row)
            if self.at(","):
                self.take()
                continue
            break
        self.expect("]")
        if len({len(r) for r in rows}) != 1:
            raise ParseError("matrix rows have different lengths", 0)
        return AffineSystem(self.R, rows)

    def finish(self):
        kind, v, pos = self.peek()
        if kind != "end":
            raise ParseError(f"trailing input {v!r}", pos)


def parse_anderson(src, field, bindings=None):
    """Parse an Anderson polynomial, or a matrix ``[[..],[..]]`` into an AffineSystem."""
    p = _Parser(src, field, bindings)
    if p.at("["):
        out = p.matrix()
    else:
        out = p.expr()
    p.finish()
    return out


def parse_ore(src, field, bindings=None):
    """Parse a T-free expression into an Ore polynomial in K{t}."""
    P = parse_anderson(src, field, bindings)
    if isinstance(P, AffineSystem):
        raise ParseError("expected a single twisted polynomial, found a matrix", 0)
    if P.t_degree > 0:
        raise ParseError("T does not belong to K{t}", 0)
    return P.head()


def render(obj):
    """Canonical text; parse(render(x)) == x."""
    if isinstance(obj, AffineSystem):
        return "[" + ", ".join("[" + ", ".join(render(x) for x in row) + "]" for row in obj.rows) + "]"
    return str(obj)


def canonical(src, field, bindings=None):
    return render(parse_anderson(src, field, bindings))
