import itertools
import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from arithinv.dedekind import (
    QuadIdeal,
    QuadraticRing,
    blowup_grading_check,
    certify_local_generator,
    elements_of_norm,
    hnf,
    ideal_from_generators,
    ideal_mul,
    ideal_pow,
    is_principal,
    local_principal_generator,
    primes_above,
    unit_ideal,
)

R5 = QuadraticRing(-5)
P2 = ideal_from_generators(R5, [(2, 0), (1, 1)])

RINGS = st.sampled_from([-1, -2, -5, -6, -10, -13, -14])
elements = st.tuples(st.integers(-6, 6), st.integers(-6, 6)).filter(lambda e: e != (0, 0))


def index_oracle(vectors):
    """Lattice index in ZZ^2: gcd of all 2x2 minors of a spanning set."""
    g = 0
    for u, v in itertools.combinations(vectors, 2):
        g = math.gcd(g, u[0] * v[1] - u[1] * v[0])
    return g


def spanning(ring, gens):
    out = []
    for a, b in gens:
        out += [(a, b), (ring.d * b, a)]
    return out


def test_ring_validation():
    for bad in (5, -3, -4, -7, 0):
        with pytest.raises(ValueError):
            QuadraticRing(bad)
    assert str(QuadraticRing(-2)) == "ZZ[sqrt(-2)]"


def test_parse_and_format():
    assert R5.parse("1+sqrt(-5)") == (1, 1)
    assert R5.parse("3-2s") == (3, -2)
    assert R5.parse("s^2") == (-5, 0)
    assert R5.format((1, -1)) == "1 - sqrt(-5)"
    assert R5.format((0, 2)) == "2*sqrt(-5)"


def test_construction_examples():
    assert ideal_from_generators(R5, [(1, 0)]) == unit_ideal(R5)
    assert unit_ideal(R5).basis == ((1, 0), (0, 1))
    assert P2.norm() == 2 and P2.is_ideal()
    with pytest.raises(ValueError):
        ideal_from_generators(R5, [(0, 0)])


def test_products_and_powers():
    assert P2 * unit_ideal(R5) == P2
    assert ideal_mul(P2, P2) == ideal_from_generators(R5, [(2, 0)])
    assert ideal_pow(P2, 2) == ideal_mul(P2, P2)
    assert ideal_pow(P2, 0) == unit_ideal(R5)
    with pytest.raises(ValueError):
        ideal_mul(P2, unit_ideal(QuadraticRing(-1)))
    with pytest.raises(ValueError):
        ideal_pow(P2, -1)


def test_principality_examples():
    two = ideal_from_generators(R5, [(2, 0)])
    pr = is_principal(two)
    assert pr.principal and pr.generator in ((2, 0), (-2, 0))
    assert not is_principal(P2)
    assert elements_of_norm(R5, 2) == []
    assert is_principal(unit_ideal(R5)).generator == (1, 0)


def test_primes_above():
    # 2 ramifies, 3 and 7 split since -5 is a square mod 3 and 7, 11 is inert
    assert primes_above(R5, 2) == [P2]
    assert len(primes_above(R5, 3)) == 2
    assert len(primes_above(R5, 7)) == 2
    [inert] = primes_above(R5, 11)
    assert inert.norm() == 121
    for q in (2, 3, 7, 11):
        prod = unit_ideal(R5)
        for P in primes_above(R5, q):
            assert P.is_ideal()
            prod = prod * P
        # the product of the primes above q (with ramification) is (q)
        e = 2 if q == 2 else 1
        assert prod ** e == ideal_from_generators(R5, [(q, 0)])


def test_local_generators():
    two = ideal_from_generators(R5, [(2, 0)])
    assert local_principal_generator(two, 3).generator in ((2, 0), (-2, 0))
    for q, expect in ((3, (2, 0)), (7, (2, 0)), (2, (1, 1))):
        loc = local_principal_generator(P2, q)
        assert loc.certified
        assert certify_local_generator(P2, loc.generator, q)
        assert loc.generator == expect
    # 2 does not generate P2 locally at 2
    assert not certify_local_generator(P2, (2, 0), 2)
    with pytest.raises(ValueError):
        local_principal_generator(P2, 4)


def test_grading_check():
    rep = blowup_grading_check(P2, 4)
    assert rep["products_consistent"] and rep["norms_multiplicative"]
    assert [r["principal"] for r in rep["powers"]] == [True, False, True, False, True]
    assert rep["powers"][2]["generator"] in ("2", "-2")
    assert rep["powers"][4]["generator"] in ("4", "-4")
    rep = blowup_grading_check(unit_ideal(R5), 3)
    assert all(r["principal"] for r in rep["powers"])
    three = ideal_from_generators(R5, [(3, 0)])
    rep = blowup_grading_check(three, 4)
    assert [abs(int(r["generator"])) for r in rep["powers"]] == [3 ** m for m in range(5)]
    with pytest.raises(ValueError):
        blowup_grading_check(P2, 1)


def test_hnf_is_canonical():
    assert hnf([(4, 2), (2, 2), (0, 6)]) == ((2, 0), (0, 2))
    with pytest.raises(ValueError):
        hnf([(1, 1), (2, 2)])


@given(RINGS, st.lists(elements, min_size=1, max_size=3))
def test_norm_matches_index_oracle(d, gens):
    ring = QuadraticRing(d)
    A = ideal_from_generators(ring, gens)
    assert A.norm() == index_oracle(spanning(ring, gens))
    assert A.is_ideal()
    assert all(A.contains(g) for g in gens)
    (a, b), (z, c) = A.basis
    assert z == 0 and a > 0 and c > 0 and 0 <= b < c


@given(RINGS, st.lists(elements, min_size=1, max_size=2), st.lists(elements, min_size=1, max_size=2))
def test_norm_is_multiplicative(d, g1, g2):
    ring = QuadraticRing(d)
    A, B = ideal_from_generators(ring, g1), ideal_from_generators(ring, g2)
    assert (A * B).norm() == A.norm() * B.norm()
    assert A * B == B * A


@given(RINGS, st.lists(elements, min_size=1, max_size=2), elements, elements)
def test_generator_lists_give_the_same_hnf(d, gens, r, s):
    ring = QuadraticRing(d)
    A = ideal_from_generators(ring, gens)
    extra = ring.add(ring.mul(r, gens[0]), ring.mul(s, gens[-1]))
    assume(extra != (0, 0))
    assert ideal_from_generators(ring, list(reversed(gens)) + [extra]) == A


@given(RINGS, st.lists(elements, min_size=1, max_size=2))
def test_principal_generators_regenerate(d, gens):
    ring = QuadraticRing(d)
    A = ideal_from_generators(ring, gens)
    pr = is_principal(A)
    if pr.principal:
        assert ideal_from_generators(ring, [pr.generator]) == A
    if len(gens) == 1:
        assert pr.principal


@given(RINGS, st.lists(elements, min_size=1, max_size=2), st.sampled_from([2, 3, 5, 7]))
def test_local_certificates_reverify(d, gens, q):
    ring = QuadraticRing(d)
    A = ideal_from_generators(ring, gens)
    loc = local_principal_generator(A, q)
    assert loc.certified and certify_local_generator(A, loc.generator, q)


def test_class_pattern_has_period_two():
    pattern = [is_principal(P2 ** m).principal for m in range(9)]
    assert pattern == [m % 2 == 0 for m in range(9)]
