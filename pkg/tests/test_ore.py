import random

import pytest
from hypothesis import given, settings, strategies as st

from anderson import GF, anderson_ring, left_divmod, ore_ring, p_resultant, right_gcd
from anderson.ratfunc import Fq_theta

K8 = GF(8)
K9 = GF(9)
R8 = ore_ring(K8)
R9 = ore_ring(K9)


def ore_polys(R, max_deg=4):
    K = R.K
    coeff = st.integers(0, K.order - 1).map(K.from_int)
    return st.lists(coeff, min_size=0, max_size=max_deg + 1).map(R)


@settings(max_examples=60, deadline=None)
@given(ore_polys(R9), ore_polys(R9), ore_polys(R9))
def test_ore_ring_axioms(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert (f + g) * h == f * h + g * h


@settings(max_examples=60, deadline=None)
@given(ore_polys(R8), ore_polys(R8), st.integers(0, 7))
def test_product_is_composition(f, g, x):
    x = K8.from_int(x)
    assert (f * g)(x) == f(g(x))


def test_commutation_rule():
    t = R9.tau
    for a in K9.elements():
        assert t * R9(a) == R9(a ** 3) * t


@settings(max_examples=60, deadline=None)
@given(ore_polys(R9, 6), ore_polys(R9, 3))
def test_left_division(f, g):
    if not g:
        return
    Q, Rm = left_divmod(f, g)
    assert Q * g + Rm == f
    assert Rm.degree < g.degree


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        left_divmod(R9.tau, R9.zero)
    with pytest.raises(ZeroDivisionError):
        right_gcd(R9.zero, R9.zero)


def test_right_gcd_of_products():
    rng = random.Random(11)
    for _ in range(25):
        d = R8.random(rng, 2, monic=True)
        a = R8.random(rng, 2)
        b = R8.random(rng, 3)
        f, g = a * d, b * d
        if not f or not g:
            continue
        r = right_gcd(f, g)
        assert left_divmod(r, d)[1] == R8.zero
        assert left_divmod(f, r)[1] == R8.zero and left_divmod(g, r)[1] == R8.zero
        assert r.lc == K8.one


def test_p_resultant_detects_common_factor():
    rng = random.Random(5)
    hits = 0
    for _ in range(40):
        d = R8.random(rng, 1, monic=True, const_nonzero=True)
        f = R8.random(rng, 2, const_nonzero=True) * d
        g = R8.random(rng, 1, const_nonzero=True) * d
        if f.degree < 1 or g.degree < 1:
            continue
        assert not p_resultant(f, g)
        hits += 1
    assert hits > 20


def test_p_resultant_generic_pairs_are_nonzero():
    rng = random.Random(6)
    agree = 0
    for _ in range(40):
        f = R8.random(rng, 2, const_nonzero=True)
        g = R8.random(rng, 2, const_nonzero=True)
        if f.degree < 1 or g.degree < 1:
            continue
        coprime = right_gcd(f, g).degree == 0
        assert coprime == bool(p_resultant(f, g))
        agree += 1
    assert agree > 20


def test_anderson_ring_center_and_twist():
    K = Fq_theta(3)
    A = anderson_ring(K)
    t, T, th = A.tau, A.T, A(K.theta)
    assert t * T == T * t
    assert t * th == A(K.theta ** 3) * t
    P = (T - th) * t - A.one
    assert P.tau_degree == 1 and P.t_degree == 1
    assert P.head() == ore_ring(K)([-K.one, -K.theta])


def test_anderson_action_is_multiplicative():
    K = GF(9)
    A = anderson_ring(K)
    rng = random.Random(2)
    for _ in range(15):
        P = A.from_terms({(rng.randrange(3), rng.randrange(3)): K.random(rng) for _ in range(4)})
        Q = A.from_terms({(rng.randrange(3), rng.randrange(3)): K.random(rng) for _ in range(4)})
        xs = [K.random(rng) for _ in range(12)]
        assert (P * Q).apply(xs, 12) == P.apply(Q.apply(xs, 12), 12)


def test_apply_shifts_by_T():
    K = GF(4)
    A = anderson_ring(K)
    xs = [K.from_int(i % 4) for i in range(8)]
    out = A.T.apply(xs, 8)
    assert out[0] == K.zero and out[1:] == xs[:7]
