import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusionkit.steenrod import (Algebra, GradedElement, det_mod, gl_action, operations_up_to,
                                power_p, steenrod)

A2 = Algebra(2, 2)
A3 = Algebra(3, 2)


def test_defining_relations():
    A = Algebra(3, 1)
    assert steenrod("beta", A.y(0)) == A.x(0)
    assert steenrod("beta", A.x(0)) == A.zero(3)
    assert steenrod("P", A.x(0), 1) == A.x(0) ** 3
    assert steenrod("P", A.x(0), 2) == A.zero(10)
    assert steenrod("P", A.y(0), 0) == A.y(0)


def test_sq1_of_product():
    x, y = A2.x(0), A2.x(1)
    assert steenrod("Sq", x * y, 1) == x * x * y + x * y * y


def test_monomial_counts():
    # F_2[x, y]: d + 1 monomials; at p = 3 with one y, one x: degree d has 1 monomial
    assert [len(A2.monomials(d)) for d in range(5)] == [1, 2, 3, 4, 5]
    assert [len(Algebra(3, 1).monomials(d)) for d in range(5)] == [1, 1, 1, 1, 1]


def test_exterior_signs():
    y1, y2 = A3.y(0), A3.y(1)
    assert y1 * y2 == -(y2 * y1)
    assert y1 * y1 == A3.zero(2)


def test_gl_action_substitution():
    w = ((0, 1), (1, 1))
    x, y = A2.x(0), A2.x(1)
    assert gl_action(w, x) == y
    assert gl_action(w, y) == x + y
    q = x * x + x * y + y * y
    assert gl_action(w, q) == q
    assert gl_action(((1, 0), (0, 1)), q) == q
    with pytest.raises(ValueError):
        gl_action(((1, 1), (1, 1)), q)


def test_det():
    assert det_mod(((0, 1), (1, 1)), 2) == 1
    assert det_mod(((2, 0), (0, 2)), 3) == 1
    assert det_mod(((1, 2), (2, 1)), 3) == 0


def elements(A, d):
    monos = A.monomials(d)
    return st.lists(st.integers(0, A.p - 1), min_size=len(monos), max_size=len(monos)).map(
        lambda cs: GradedElement(A, dict(zip(monos, cs)), d))


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_cartan_formula(data):
    for A in (A2, A3, Algebra(3, 1)):
        da = data.draw(st.integers(0, 4))
        db = data.draw(st.integers(0, 4))
        a, b = data.draw(elements(A, da)), data.draw(elements(A, db))
        op = "Sq" if not A.odd else "P"
        for k in range(4):
            lhs = steenrod(op, a * b, k)
            rhs = A.zero(lhs.degree)
            for i in range(k + 1):
                rhs = rhs + steenrod(op, a, i) * steenrod(op, b, k - i)
            assert lhs == rhs
        if A.odd:
            sign = -1 if da % 2 else 1
            assert steenrod("beta", a * b) == steenrod("beta", a) * b + (a * steenrod("beta", b)).scale(sign)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_instability_and_top_operation(data):
    for A in (A2, A3):
        d = data.draw(st.integers(0, 6))
        e = data.draw(elements(A, d))
        if A.odd:
            for i in range(4):
                if 2 * i > d:
                    assert not steenrod("P", e, i)
            if d % 2 == 0:
                assert steenrod("P", e, d // 2) == power_p(e)
        else:
            for i in range(d + 1, d + 3):
                assert not steenrod("Sq", e, i)
            assert steenrod("Sq", e, d) == e * e


def test_beta_squares_to_zero():
    for d in range(6):
        for m in A3.monomials(d):
            e = A3.monomial(m)
            assert not steenrod("beta", steenrod("beta", e))


@pytest.mark.parametrize("A", [A2, A3])
def test_gl_action_commutes_with_operations(A):
    mats = [w for w in itertools.product(range(A.p), repeat=4)
            if det_mod(((w[0], w[1]), (w[2], w[3])), A.p)]
    for flat in mats[:6]:
        w = ((flat[0], flat[1]), (flat[2], flat[3]))
        for d in range(5):
            for m in A.monomials(d):
                e = A.monomial(m)
                for op, i in operations_up_to(A, d, 8):
                    assert gl_action(w, steenrod(op, e, i)) == steenrod(op, gl_action(w, e), i)


def test_json_shape():
    e = A3.y(0) * A3.x(1)
    (item,) = e.to_json()
    assert item == {"exterior_mask": 1, "exponents": [0, 1], "coeff": 1}
