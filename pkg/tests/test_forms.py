import random
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from contactlab.expr import Chart, ChartMismatch, Expr, parse
from contactlab.forms import (KForm, VectorField, apply, d, d0, interior, lie_bracket, sort_sign,
                              wedge)
from helpers import (CHART3, CHART4, any_forms, central_difference, fd_close, fields, forms,
                     random_form, random_point)

C = CHART3
C5 = Chart(("x", "y1", "y2", "z1", "z2"))


def E(text, chart=C):
    return parse(text, chart)


def dx(*names, chart=C):
    return KForm.dx(chart, *names)


def inversions(seq):
    return sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])


def test_sort_sign_matches_inversion_count():
    for n in range(1, 6):
        for perm in permutations(range(n)):
            key, sign = sort_sign(perm)
            assert key == tuple(range(n))
            assert sign == (-1) ** inversions(perm)
    assert sort_sign((2, 0, 2)) == (None, 0)


def test_wedge_examples():
    assert wedge(dx("x"), E("exp(x)") * dx("z")) == E("exp(x)") * dx("x", "z")
    eta = KForm.one_form(C, {"x": E("y"), "z": E("exp(x)")})
    assert wedge(eta, eta).is_zero()
    # indices (0,1,4,2) carry one inversion, so the sorted coefficient is -1
    # while reading back in the original order gives +1
    a = dx("x", "y1", chart=C5)
    b = dx("z2", "y2", chart=C5)
    w = wedge(a, b)
    assert w.coeff(("x", "y1", "z2", "y2")) == Expr.const(C5, 1)
    assert inversions([0, 1, 4, 2]) == 1
    assert w.coeff(("x", "y1", "y2", "z2")) == Expr.const(C5, -1)


def test_wedge_overflow_degree_is_zero():
    w = wedge(dx("x", "y"), dx("x", "z"))
    assert w.is_zero() and w.degree == 4


def test_d_examples():
    assert d(E("exp(x)") * dx("z")) == E("exp(x)") * dx("x", "z")
    Phi = -E("exp(z)") * dx("x", "y")
    assert d(Phi) == -E("exp(z)") * KForm(C, 3, {(2, 0, 1): 1})
    assert d(Phi).coeff(("z", "x", "y")) == -E("exp(z)")
    assert d0(E("x*y")) == KForm.one_form(C, {"x": E("y"), "y": E("x")})


def test_interior_examples():
    xi = VectorField.from_map(C, {"z": E("exp(-x)")})
    dPhi = -E("exp(z)") * KForm(C, 3, {(2, 0, 1): 1})
    assert interior(xi, dPhi) == -E("exp(z - x)") * dx("x", "y")
    assert interior(VectorField.coordinate(C, "x"), dx("x")).unwrap() == Expr.const(C, 1)
    with pytest.raises(ValueError):
        interior(xi, KForm.scalar(E("x")))


def test_bracket_examples():
    X = VectorField.from_map(C, {"z": E("exp(-x)")})
    dxf = VectorField.coordinate(C, "x")
    assert lie_bracket(dxf, VectorField.coordinate(C, "y")).is_zero()
    assert lie_bracket(X, dxf) == X
    assert lie_bracket(X, X).is_zero()


def test_apply_examples():
    Phi = -E("exp(z)") * dx("x", "y")
    ex, ey = VectorField.coordinate(C, "x"), VectorField.coordinate(C, "y")
    assert apply(Phi, ex, ey) == -E("exp(z)")
    assert apply(Phi, ey, ex) == E("exp(z)")
    assert apply(dx("x", "y"), ex, ey) == Expr.const(C, 1)
    with pytest.raises(ValueError):
        apply(Phi, ex)


def test_chart_mismatch():
    with pytest.raises(ChartMismatch):
        wedge(dx("x"), KForm.dx(CHART4, "x"))


def test_printing():
    assert str(-E("exp(z)") * dx("x", "y")) == "-exp(z) dx^dy"
    assert str(KForm.one_form(C, {"x": E("x + 1")})) == "(1 + x) dx"
    assert str(KForm.zero(C, 2)) == "0"


# property suite

@given(any_forms(CHART4))
@settings(max_examples=120)
def test_d_squared_zero(a):
    assert d(d(a)).is_zero()


@given(st.integers(0, 2).flatmap(lambda k: st.tuples(forms(CHART4, k), any_forms(CHART4, 2))))
@settings(max_examples=120)
def test_leibniz(pair):
    a, b = pair
    lhs = d(wedge(a, b))
    rhs = wedge(d(a), b) + (-1) ** a.degree * wedge(a, d(b))
    assert lhs == rhs


@given(any_forms(C), any_forms(C), any_forms(C))
def test_wedge_graded_commutative_and_associative(a, b, c):
    assert wedge(a, b) == (-1) ** (a.degree * b.degree) * wedge(b, a)
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@given(fields(CHART4), st.integers(1, 2).flatmap(lambda k: forms(CHART4, k)),
       st.integers(1, 2).flatmap(lambda k: forms(CHART4, k)))
@settings(max_examples=120)
def test_interior_antiderivation(X, a, b):
    lhs = interior(X, wedge(a, b))
    rhs = wedge(interior(X, a), b) + (-1) ** a.degree * wedge(a, interior(X, b))
    assert lhs == rhs


@given(fields(C), st.integers(2, 3).flatmap(lambda k: forms(C, k)))
def test_interior_squared_zero(X, a):
    assert interior(X, interior(X, a)).is_zero()


@given(fields(C), fields(C), fields(C))
@settings(max_examples=120)
def test_jacobi(X, Y, Z):
    total = (lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X))
             + lie_bracket(Z, lie_bracket(X, Y)))
    assert total.is_zero()
    assert lie_bracket(X, Y) == -lie_bracket(Y, X)


@given(forms(C, 1), fields(C), fields(C))
def test_d_of_one_form_coordinate_free(a, X, Y):
    lhs = apply(d(a), X, Y)
    rhs = X(apply(a, Y)) - Y(apply(a, X)) - apply(a, lie_bracket(X, Y))
    assert lhs == rhs


@given(forms(C, 2), fields(C))
def test_apply_antisymmetric(a, X):
    assert apply(a, X, X).is_zero()


def test_d_matches_finite_differences():
    rng = random.Random(11)
    for _ in range(20):
        a = random_form(rng, C, rng.randint(0, 2))
        da = d(a)
        for _ in range(10):
            pt = random_point(rng, 3)
            for idx, coeff in da.items():
                # d(c dx^I) coefficient on dx^J is a signed sum of partials of c
                num = 0.0
                for r, i in enumerate(idx):
                    rest = idx[:r] + idx[r + 1:]
                    num += (-1) ** r * central_difference(a.coeff(rest), i, pt)
                assert fd_close(coeff.eval(pt), num, max(abs(c.eval(pt)) for _, c in a.items()))
