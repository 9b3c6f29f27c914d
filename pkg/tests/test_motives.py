import random

import pytest

from anderson import (GF, AffineSystem, FieldError, carlitz_twist, carlitz_xi_equation, det_column, drinfeld,
                      drinfeld_affine_equation, drinfeld_h_1_equation, dual_drinfeld,
                      dual_drinfeld_affine_equation, elementary, elementary_expected_dets, elementary_reduced_h1,
                      elementary_reduced_h_1, elementary_reduction_script, elementary_transform,
                      equal_up_to_scalar, h1_system, h_1_system, q_matrix, tail_reduce, tate_system, zero_dual)
from anderson.motives import duality_check_system, elementary_profile, n_table
from anderson.ratfunc import Fq_theta

K3 = Fq_theta(3)


def rand_a(rng, m, degree=1):
    return [K3.random(rng, nonzero=True, degree=degree, den_degree=0) for _ in range(m)]


def test_drinfeld_rank_two_determinant():
    rng = random.Random(1)
    a = rand_a(rng, 1)
    d = det_column(h1_system(drinfeld(K3, a)), 2)
    assert equal_up_to_scalar(d, drinfeld_affine_equation(K3, a))
    assert d.tail_length() == 1


def test_dual_drinfeld_rank_two_determinant():
    rng = random.Random(2)
    a = rand_a(rng, 1)
    d = det_column(h1_system(dual_drinfeld(K3, a)), 1)
    assert equal_up_to_scalar(d, dual_drinfeld_affine_equation(K3, a))


def test_dual_drinfeld_needs_rank_two():
    with pytest.raises(FieldError):
        dual_drinfeld_affine_equation(K3, [])


def test_q_matrix_of_drinfeld_is_companion():
    a1 = K3.theta + K3.one
    Q = q_matrix(drinfeld(K3, [a1]))
    assert Q.is_polynomial() and Q.size == 2


def test_zero_dual_duality_identity():
    rng = random.Random(3)
    spec = drinfeld(K3, rand_a(rng, 2))
    S = h1_system(spec)
    neg = AffineSystem(S.ring, [[-x for x in row] for row in S.rows])
    assert duality_check_system(spec) == neg


def test_zero_dual_clearing_factor_is_a_unit():
    spec = drinfeld(K3, [K3.theta])
    zd = h_1_system(zero_dual(spec))
    # Q^(-1) has denominator T - theta, a unit of K[[T]], so no row is flagged
    T = zd.ring.Tring.gen
    assert zd.clearing == [T - K3.theta] * 2
    assert zd.flagged_rows == []


def test_carlitz_twist_system_builds():
    spec = carlitz_twist(drinfeld(K3, [K3.theta]))
    S = h1_system(spec)
    assert S.is_square() and S.nrows == 2


def test_elementary_reduced_systems_match_closed_forms():
    rng = random.Random(4)
    A = [rand_a(rng, 2) for _ in range(2)]
    spec = elementary(K3, A)
    e1, e2 = elementary_expected_dets(K3, A)
    prof = elementary_profile(2)
    assert equal_up_to_scalar(det_column(elementary_reduced_h1(spec), 1, prof), e1)
    assert equal_up_to_scalar(det_column(elementary_reduced_h_1(spec), 1, prof), e2)


def test_elementary_script_reaches_block_form():
    F = GF(4)
    rng = random.Random(5)
    A = [[F.random(rng, nonzero=True) for _ in range(2)] for _ in range(2)]
    spec = elementary(F, A, theta=F.gen)
    out = elementary_transform(h1_system(spec), elementary_reduction_script(spec)).system
    R = out.ring
    small = elementary_reduced_h1(spec)
    for i in range(4):
        for j in range(4):
            x = out[i, j]
            if i < 2 and j < 2:
                assert x == (-R.one if i == j else R.zero)
            elif i >= 2 and j >= 2:
                assert x == small[i - 2, j - 2]
            else:
                assert not x


def test_finite_field_needs_theta():
    with pytest.raises(FieldError):
        drinfeld(GF(4), [GF(4).one])


def test_n_table():
    th = K3.theta
    v = n_table(K3, th, 3)
    assert v[0] == [K3.one]
    assert v[1] == [-th.twist(1), K3.one]
    assert v[2][2] == K3.one and v[2][0] == th.twist(1) * th.twist(2)


def test_tate_system_is_the_h_1_operator_shifted():
    a1 = K3.theta ** 2
    spec = drinfeld(K3, [a1])
    ts = tate_system(spec, 1)
    assert ts.system.rows[0][0] == drinfeld_h_1_equation(K3, [a1], c=1)
    assert ts.sequence([[K3.one]]) == [[K3.zero, K3.one]]


def test_tate_needs_a_basis():
    with pytest.raises(FieldError):
        tate_system(dual_drinfeld(K3, [K3.theta]))


def test_xi_equation_shape():
    P = carlitz_xi_equation(K3)
    assert P.rank() == 1 and P.tail_length() == 1


def test_tail_reduction_removes_high_powers():
    rng = random.Random(6)
    a = rand_a(rng, 2)
    P = dual_drinfeld_affine_equation(K3, a)
    red = tail_reduce(P, 2)
    r = P.rank()
    for k, E in enumerate(red):
        assert E.max_tail_degree(k) < r
