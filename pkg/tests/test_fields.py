import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from anderson import (FieldError, GF, ParseError, field_make, finite_field, laurent_field, parse_field_spec, PrecisionExhausted,
                      poly_ring, rational_function_field, spec_of)
from anderson.ratfunc import Fq_theta


FIELDS = [GF(2), GF(3), GF(4), GF(8), GF(9), GF(16, q=4), GF(27), GF(2 ** 20), GF(3 ** 12)]


def elems(K):
    return st.integers(min_value=0, max_value=K.order - 1).map(K.from_int)


@pytest.mark.parametrize("K", FIELDS, ids=lambda K: K.spec())
def test_field_axioms(K):
    rng = random.Random(K.order)
    for _ in range(60):
        a, b, c = K.random(rng), K.random(rng), K.random(rng)
        assert (a + b) * c == a * c + b * c
        assert a * (b * c) == (a * b) * c
        assert a - a == K.zero
        if a:
            assert a * a.inverse() == K.one


@pytest.mark.parametrize("K", FIELDS, ids=lambda K: K.spec())
def test_twist_is_q_power_and_additive(K):
    rng = random.Random(7)
    for _ in range(30):
        a, b = K.random(rng), K.random(rng)
        assert a.twist(1) == a ** K.q
        assert (a + b).twist(2) == a.twist(2) + b.twist(2)
        assert (a * b).twist(1) == a.twist(1) * b.twist(1)
        # the twist has order [K : F_q]
        assert a.twist(K.n // K.q_exponent) == a


def test_frobenius_fixes_exactly_the_constants():
    K = GF(16, q=4)
    fixed = [x for x in K.elements() if x.twist(1) == x]
    assert len(fixed) == 4


def test_generator_is_primitive_in_table_fields():
    K = GF(9)
    g = K.gen
    seen = {(g ** k).v for k in range(8)}
    assert len(seen) == 8


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_embedding_is_a_ring_map(data):
    small = GF(4)
    big = GF(64)
    emb = small.embedding_into(big)
    a = data.draw(elems(small))
    b = data.draw(elems(small))
    assert emb(a + b) == emb(a) + emb(b)
    assert emb(a * b) == emb(a) * emb(b)
    assert emb(a.twist(1)) == emb(a).twist(1)


def test_constants_field_and_subfield_test():
    K = GF(64, q=4)
    assert K.constants_field().order == 4
    assert sum(1 for x in K.elements() if K.is_subfield_element(x, 2)) == 4


def test_bad_orders_rejected():
    with pytest.raises(FieldError):
        GF(6)
    with pytest.raises(FieldError):
        GF(8, q=4)


def test_polynomials_divmod_and_gcd():
    R = poly_ring(GF(5), "T")
    rng = random.Random(3)
    for _ in range(30):
        a = R.random(rng, 5)
        b = R.random(rng, 3)
        if not b:
            continue
        qq, r = a.divmod(b)
        assert qq * b + r == a
        assert r.degree < b.degree
        g = a.gcd(b)
        assert a.divmod(g)[1] == R.zero and b.divmod(g)[1] == R.zero


def test_rational_functions_reduce_and_twist():
    K = Fq_theta(3)
    th = K.theta
    x = (th ** 2 - K.one) / (th - K.one)
    assert x == th + K.one
    assert th.twist(1) == th ** 3
    assert (x * x.inverse()) == K.one
    assert x.valuation() == -1


def test_laurent_theta_has_valuation_minus_one():
    L = laurent_field(GF(3), e=2, prec=30)
    th = L.theta
    assert th.valuation() == -1
    assert (th * th.inverse()).valuation() == 0
    u = L.uniformizer
    assert u.valuation() == Fraction(1, 2)
    assert th.twist(1).valuation() == -3


def test_laurent_precision_is_tracked():
    L = laurent_field(GF(2), e=1, prec=10)
    x = (L.one - L.theta.inverse()).inverse()  # 1 + 1/th + 1/th^2 + ...
    assert not x.is_exact
    assert x.coeff(0) == GF(2).one and x.coeff(5) == GF(2).one
    with pytest.raises(PrecisionExhausted):
        x.coeff(x.absprec)


@pytest.mark.parametrize("text", ["GF(9)", "GF(16,q=4)", "GF(3)(th)", "GF(4)(th)",
                                  "Laurent(GF(4), e=2, prec=40)"])
def test_field_spec_round_trip(text):
    spec = parse_field_spec(text)
    K = field_make(spec)
    assert spec_of(K) == spec
    assert field_make(spec.text()) is K or spec_of(field_make(spec.text())) == spec


def test_field_spec_errors():
    with pytest.raises(ParseError):
        parse_field_spec("QQ")
    with pytest.raises(ParseError):
        parse_field_spec("Laurent(GF(4), bogus=2)")
    with pytest.raises(FieldError):
        parse_field_spec("GF(12)")


def test_rational_function_field_caching():
    assert rational_function_field(GF(3)) is rational_function_field(GF(3))
    assert finite_field(2, 3) == GF(8)
    assert finite_field(2, 3) is finite_field(2, 3)
