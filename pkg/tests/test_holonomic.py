import random

import pytest

from anderson import (GF, HolonomicWitness, Shape, UnsupportedShape, VerificationFailed, anderson_ring,
                      extend_sequence, plan_dimensions, random_witness, sum_closure)
from anderson.holonomic import StateGraph, admissible, degree_profile

F4 = GF(4, q=2)
R4 = anderson_ring(F4)


def test_shape_of_operator():
    P = R4.from_terms({(2, 0): F4.one, (0, 0): F4.gen, (1, 1): F4.one, (0, 2): F4.one})
    s = Shape.of(P)
    assert (s.r0, s.n, s.kappas) == (2, 2, (1, 0))
    assert set(s.terms()) == {(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)}


def test_window_and_strict_semantics():
    P = R4.from_terms({(1, 0): F4.one, (0, 0): F4.one, (0, 1): -F4.one})  # x_i^2 + x_i = x_(i-1)
    # x_0 is free in window mode; x_1 must solve x^2 + x = x_0
    w = HolonomicWitness(P, [F4.one, F4.gen])
    assert list(w.checked_indices()) == [1] and w.holds()
    with pytest.raises(VerificationFailed):
        HolonomicWitness(P, [F4.one, F4.zero])
    strict = HolonomicWitness(P, [F4.zero, F4.zero], strict=True)
    assert list(strict.checked_indices()) == [0, 1] and strict.holds()
    with pytest.raises(VerificationFailed):
        HolonomicWitness(P, [F4.gen], strict=True)  # z^2 + z = 1


def test_strict_extension_enlarges_the_field():
    P = R4.from_terms({(1, 0): F4.one, (0, 0): F4.one, (0, 1): -F4.one})
    w = extend_sequence(HolonomicWitness(P, [F4.one], strict=True), 10)
    assert w.holds() and len(w) == 10 and w.field.order > F4.order


def test_linear_recurrence_head():
    P = R4.from_terms({(0, 0): F4.gen, (0, 1): F4.one})
    w = extend_sequence(HolonomicWitness(P, [F4.one]), 6)
    assert w.holds()
    assert w.prefix[1] == F4.gen.inverse()  # z x_1 + x_0 = 0 in characteristic 2


def test_state_graph_alive_states_have_infinite_futures():
    P = R4.from_terms({(1, 0): F4.one, (0, 0): F4.gen, (0, 1): F4.one})
    G = StateGraph(P, F4)
    for k in G.alive:
        st = list(G.states[k])
        w = HolonomicWitness(P, G.walk(st, 30))
        assert w.holds() and len(w) == 30


def test_degree_profile_and_admissibility():
    prof = degree_profile(2, 5, 1)
    assert prof == [3, 4, 5]
    assert admissible(Shape(1, 1, (0,)), prof)


def test_simplest_case_ledger():
    plan = plan_dimensions((1, 1, [0]), (1, 1, [0]), 2)
    assert (plan.dim_V, plan.dim_V0, plan.dim_V1) == (18, 10, 9)
    assert plan.succeeds


def test_unsupported_target():
    with pytest.raises(UnsupportedShape):
        plan_dimensions((1, 2, [0, 0]), (1, 1, [0]), 1)
    with pytest.raises(UnsupportedShape):
        plan_dimensions((1, 2, [0]), (1, 1, [0]), 3)


@pytest.mark.parametrize("K", [GF(4, q=2), GF(8, q=2)], ids=["F4", "F8"])
def test_sum_closure_annihilates_the_sum(K):
    rng = random.Random(K.order)
    wx = random_witness(K, (1, 1, [0]), 40, rng)
    wy = random_witness(K, (1, 1, [0]), 40, rng)
    res = sum_closure(wx, wy, 2)
    assert res.shape == (2, 3)
    z = HolonomicWitness(res.operator, wx + wy)
    assert z.holds()
    assert any(wx.prefix) and any(wy.prefix)


def test_witness_sum_needs_a_shared_prefix_length():
    rng = random.Random(2)
    wx = random_witness(F4, (1, 1, [0]), 10, rng)
    wy = random_witness(F4, (1, 1, [0]), 7, rng)
    assert len(wx + wy) == 7
