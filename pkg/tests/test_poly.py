from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from arithinv.matgroup import mat_mul
from arithinv.poly import (
    GREVLEX,
    LEX,
    Polynomial,
    arith,
    block_order,
    compose,
    derivative,
    determinant,
    format_poly,
    homogeneous_component,
    linear_substitute,
    map_coefficients,
    monomials_of_degree,
    parse_poly,
)
from arithinv.rings import QQ, ZZ, Domain, DomainError

L3 = Domain.localized(3)


def P(text, dom=QQ, n=2):
    return parse_poly(text, dom, n)


def polynomials(dom=QQ, n=2, coeffs=st.integers(-3, 3), deg=3):
    mono = st.tuples(*[st.integers(0, deg)] * n)
    return st.dictionaries(mono, coeffs, max_size=5).map(lambda t: Polynomial(dom, n, t))


matrices = st.lists(st.lists(st.integers(-2, 2), min_size=2, max_size=2), min_size=2, max_size=2)


def test_arith_examples():
    x, y = P("x"), P("y")
    assert arith(x + y, x - y, "add") == P("2*x")
    assert arith(x + y, x - y, "mul") == P("x^2 - y^2")
    assert arith(P("x^2+1"), Polynomial.zero(QQ, 2), "mul").is_zero()
    with pytest.raises(ValueError):
        x + P("x", QQ, 3)


def test_linear_substitute_examples():
    assert linear_substitute(P("x^2"), [[1, 0], [0, 1]]) == P("x^2")
    assert linear_substitute(P("x"), [[1, 3], [0, -1]]) == P("x + 3*y")
    assert linear_substitute(P("x+y"), [[2, 0], [0, 2]]) == P("2*x + 2*y")


def test_homogeneous_component_examples():
    f = P("x^2+3*x*y+3*y^2+x")
    assert homogeneous_component(f, 2) == P("x^2+3*x*y+3*y^2")
    assert homogeneous_component(P("7"), 0) == P("7")


def test_map_coefficients_examples():
    F3 = Domain.prime_field(3)
    assert map_coefficients(P("x^2+3*x*y+3*y^2", L3)) == P("x^2", F3)
    assert map_coefficients(P("2*x^3+9*x^2*y+9*x*y^2", L3)) == P("2*x^3", F3)
    assert map_coefficients(Polynomial.zero(L3, 2)).is_zero()
    assert map_coefficients(P("1/2*x + y", QQ), 3) == P("2*x + y", F3)
    with pytest.raises(DomainError):
        map_coefficients(P("1/3*x"), 3)


def test_text_format_round_trip():
    for text in ["x^2 + 3*x*y + 3*y^2", "-x^4*y^2 + 1/2*y", "0", "-7"]:
        f = P(text)
        assert format_poly(f) == text
        assert parse_poly(format_poly(f), QQ, 2) == f
    assert P("3y^2 x") == P("3*x*y^2")
    assert P("(x+y)^2") == P("x^2+2*x*y+y^2")
    assert format_poly(P("x4 + z", QQ, 4)) == "z + x4"


def test_json_round_trip():
    f = P("1/3*x^2 - 5*x*y", L3.fraction_field())
    assert Polynomial.from_json(f.to_json()) == f


def test_orders():
    assert LEX.key((1, 0)) > LEX.key((0, 5))
    assert GREVLEX.key((0, 2)) > GREVLEX.key((1, 0))
    # grevlex tie break: x*z < y^2 in three variables
    assert GREVLEX.key((0, 2, 0)) > GREVLEX.key((1, 0, 1))
    blk = block_order(1)
    # any monomial with an x-part dominates a pure tag monomial
    assert blk.key((1, 0, 0)) > blk.key((0, 5, 5))
    assert monomials_of_degree(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert len(monomials_of_degree(3, 4)) == 15


def test_parse_rejects_bad_input():
    for bad in ["x^", "x +* y", "(x", "w"]:
        with pytest.raises(ValueError):
            P(bad)


def test_domain_checks():
    with pytest.raises(DomainError):
        P("1/3*x", L3)
    with pytest.raises(DomainError):
        P("1/2*x", ZZ)


def test_calculus_helpers():
    f = P("x^3 + x*y^2")
    assert derivative(f, 0) == P("3*x^2 + y^2")
    assert derivative(f, 1) == P("2*x*y")
    J = determinant([[P("x"), P("y")], [P("y"), P("x")]])
    assert J == P("x^2 - y^2")
    assert compose(P("x^2 - y", QQ), [P("x+y"), P("x*y")]) == P("x^2 + x*y + y^2")


@given(polynomials(), matrices, matrices)
def test_linear_substitution_composes(f, A, B):
    # f(Ax) evaluated at Bx is f(ABx)
    lhs = linear_substitute(linear_substitute(f, A), B)
    assert lhs == linear_substitute(f, mat_mul(A, B))


@given(polynomials(L3), polynomials(L3))
def test_map_coefficients_is_a_homomorphism(f, g):
    assert map_coefficients(f + g) == map_coefficients(f) + map_coefficients(g)
    assert map_coefficients(f * g) == map_coefficients(f) * map_coefficients(g)


mono3 = st.tuples(*[st.integers(0, 4)] * 3)


@given(mono3, mono3, mono3, st.sampled_from([LEX, GREVLEX, block_order(1), block_order(2)]))
def test_orders_are_multiplicative(m, a, b, order):
    if order.key(a) < order.key(b):
        ma = tuple(x + y for x, y in zip(m, a))
        mb = tuple(x + y for x, y in zip(m, b))
        assert order.key(ma) < order.key(mb)


@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert (f * g) * h == f * (g * h)
    assert f - f == Polynomial.zero(QQ, 2)


def test_primitive_and_monic():
    f = P("6*x^2 - 4*x*y")
    g = f.primitive()
    assert g == P("3*x^2 - 2*x*y")
    assert P("-6*x^2").primitive() == P("x^2")
    assert P("2*x + 4*y").monic() == P("x + 2*y")
    assert P("1/2*x + 1/3*y").primitive() == P("3*x + 2*y")
    assert f.scale(Fraction(1, 2)) == P("3*x^2 - 2*x*y")
