"""Textual field specifications and the field factory.

Accepted forms::

    GF(9)                  finite field, twist x -> x^p
    GF(16, q=4)            finite field, twist x -> x^4
    GF(3)(th)              rational functions F_3(th)
    Laurent(GF(4), e=2, prec=40)
"""

import re
from dataclasses import dataclass

from .errors import FieldError, ParseError
from .gf import GF, _prime_factors
from .laurent import laurent_field
from .ratfunc import rational_function_field


@dataclass(frozen=True)
class FieldSpec:
    p: int
    q: int
    kind: str  # "finite" | "rational" | "laurent"
    m: int = 1
    e: int = 1
    prec: int = 20

    def __post_init__(self):
        if _prime_factors(self.p) != [self.p]:
            raise FieldError(f"{self.p} is not prime")
        qq, s = self.q, 0
        while qq % self.p == 0:
            qq //= self.p
            s += 1
        if qq != 1 or s == 0:
            raise FieldError(f"q={self.q} is not a positive power of p={self.p}")
        if self.kind not in ("finite", "rational", "laurent"):
            raise FieldError(f"unknown field kind {self.kind!r}")
        if self.m < 1 or self.e < 1 or self.prec < 1:
            raise FieldError("m, e and prec must be positive")
        if self.kind == "rational" and self.m != 1:
            raise FieldError("rational function fields have constants F_q")

    @property
    def residue_order(self):
        return self.q ** self.m

    def text(self):
        base = f"GF({self.residue_order})" if self.q == self.p else f"GF({self.residue_order},q={self.q})"
        if self.kind == "finite":
            return base
        if self.kind == "rational":
            return f"{base}(th)"
        return f"Laurent({base}, e={self.e}, prec={self.prec})"

    def __str__(self):
        return self.text()


_GF = r"GF\(\s*(\d+)\s*(?:,\s*q\s*=\s*(\d+)\s*)?\)"


def _orders(order, q):
    fs = _prime_factors(order)
    if len(fs) != 1:
        raise FieldError(f"{order} is not a prime power")
    p = fs[0]
    q = p if q is None else q
    m, o = 0, 1
    while o < order:
        o *= q
        m += 1
    if o != order:
        raise FieldError(f"{order} is not a power of q={q}")
    return p, q, m


def parse_field_spec(text):
    s = text.strip()
    mt = re.fullmatch(_GF, s)
    if mt:
        p, q, m = _orders(int(mt.group(1)), mt.group(2) and int(mt.group(2)))
        return FieldSpec(p, q, "finite", m)
    mt = re.fullmatch(_GF + r"\(\s*th\s*\)", s)
    if mt:
        p, q, m = _orders(int(mt.group(1)), mt.group(2) and int(mt.group(2)))
        if m != 1:
            q = q ** m
        return FieldSpec(p, q, "rational", 1)
    mt = re.fullmatch(r"Laurent\(\s*" + _GF + r"\s*((?:,\s*\w+\s*=\s*\d+\s*)*)\)", s)
    if mt:
        p, q, m = _orders(int(mt.group(1)), mt.group(2) and int(mt.group(2)))
        opts = dict(re.findall(r"(\w+)\s*=\s*(\d+)", mt.group(3)))
        unknown = set(opts) - {"e", "prec"}
        if unknown:
            raise ParseError(f"unknown Laurent option(s) {sorted(unknown)}")
        return FieldSpec(p, q, "laurent", m, int(opts.get("e", 1)), int(opts.get("prec", 20)))
    raise ParseError(f"unrecognised field specification {text!r}", 0)


def field_make(spec):
    """Build the field handle described by a FieldSpec or its text form."""
    if isinstance(spec, str):
        spec = parse_field_spec(spec)
    residue = GF(spec.residue_order, spec.q)
    if spec.kind == "finite":
        return residue
    if spec.kind == "rational":
        return rational_function_field(residue)
    return laurent_field(residue, spec.e, spec.prec)


def spec_of(field):
    """Inverse of field_make: recover the FieldSpec of a handle."""
    from .gf import FiniteField
    from .laurent import LaurentField
    from .ratfunc import RationalFunctionField
    if isinstance(field, FiniteField):
        return FieldSpec(field.p, field.q, "finite", field.n // field.q_exponent)
    if isinstance(field, RationalFunctionField):
        return FieldSpec(field.p, field.q, "rational")
    if isinstance(field, LaurentField):
        r = field.residue
        return FieldSpec(r.p, r.q, "laurent", r.n // r.q_exponent, field.e, field.prec)
    raise FieldError(f"no specification for {field!r}")
