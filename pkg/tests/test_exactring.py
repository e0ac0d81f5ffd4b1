from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings

from ggsr.exactring import (
    ONE,
    Q,
    QHAT,
    ZERO,
    Scalar,
    add,
    as_rational,
    d_dh_at_zero,
    eval_at_one,
    invert_q,
    monomial,
    mul,
    neg,
)

from conftest import scalars

F = Fraction
MANY = settings(max_examples=1000)


def test_monomial_basics():
    assert monomial(1, 1) == Q
    assert monomial(1, F(1, 5)).terms == {F(1, 5): F(1)}
    assert monomial(0, 7).is_zero()
    assert monomial(0, 7) == ZERO


def test_products_and_sums():
    assert mul(monomial(1, F(1, 5)), monomial(1, F(2, 5))) == monomial(1, F(3, 5))
    assert add(Q, neg(monomial(1, -1))) == QHAT
    assert mul(QHAT, Q) == Scalar({2: 1, 0: -1})


def test_invert_q_examples():
    assert invert_q(Q) == monomial(1, -1)
    assert invert_q(QHAT) == -QHAT
    assert invert_q(monomial(1, F(3, 5)) + 2) == monomial(1, F(-3, 5)) + 2


def test_eval_at_one_examples():
    assert eval_at_one(QHAT) == 0
    assert eval_at_one(monomial(1, F(3, 5))) == 1
    assert eval_at_one(3 * Q - monomial(1, -1)) == 2


def test_d_dh_at_zero_examples():
    assert d_dh_at_zero(QHAT) == 2
    assert d_dh_at_zero(monomial(1, F(-7, 3))) == F(-7, 3)
    assert d_dh_at_zero(Scalar.const(5)) == 0


def test_as_rational_rejects_floats():
    assert as_rational("-3/5") == F(-3, 5)
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(TypeError):
        as_rational(True)


def test_canonical_storage():
    s = Scalar({1: 0, 2: F(3, 6)})
    assert s.terms == {F(2): F(1, 2)}
    assert (Q - Q).terms == {}
    assert not ZERO and ONE


def test_equality_with_numbers_and_hash():
    assert Scalar.const(3) == 3
    assert Scalar.const(F(1, 2)) == F(1, 2)
    assert hash(monomial(2, F(1, 3))) == hash(Scalar({F(1, 3): 2}))


def test_integer_power():
    assert QHAT ** 2 == Scalar({2: 1, 0: -2, -2: 1})
    assert Q ** 0 == ONE


def test_json_is_sorted_and_round_trips():
    s = Scalar({F(1, 5): 2, F(-3, 5): F(-1, 2)})
    assert s.to_json() == [[-1, 2, -3, 5], [2, 1, 1, 5]]
    assert Scalar.from_json(s.to_json()) == s
    with pytest.raises(ValueError):
        Scalar.from_json([[1, 1, 1, 1], [2, 1, 1, 1]])


def test_str():
    assert str(QHAT) == "-q^(-1) + q"
    assert str(ZERO) == "0"


@MANY
@given(scalars(), scalars(), scalars())
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a and a * ONE == a


@MANY
@given(scalars())
def test_additive_inverse_is_empty(a):
    assert add(a, neg(a)).terms == {}


@MANY
@given(scalars())
def test_invert_q_involution(a):
    assert invert_q(invert_q(a)) == a
    assert eval_at_one(invert_q(a)) == eval_at_one(a)


@MANY
@given(scalars(), scalars())
def test_leibniz(a, b):
    lhs = d_dh_at_zero(mul(a, b))
    rhs = eval_at_one(a) * d_dh_at_zero(b) + d_dh_at_zero(a) * eval_at_one(b)
    assert lhs == rhs


@MANY
@given(scalars(), scalars())
def test_eval_and_invert_are_ring_maps(a, b):
    assert eval_at_one(a * b) == eval_at_one(a) * eval_at_one(b)
    assert invert_q(a * b) == invert_q(a) * invert_q(b)


@settings(max_examples=300)
@given(scalars(), scalars())
def test_mul_matches_naive_convolution(a, b):
    expected: dict = {}
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            expected[ea + eb] = expected.get(ea + eb, 0) + ca * cb
    assert (a * b).terms == {e: c for e, c in expected.items() if c}
