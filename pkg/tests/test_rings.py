import math
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from arithinv.rings import (
    QQ,
    ZZ,
    Domain,
    DomainError,
    Scalar,
    decode_value,
    encode_value,
    is_prime,
    prime_factors,
    reduce_mod_p,
    valuation,
)

PRIMES = st.sampled_from([2, 3, 5, 7, 11])
rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 10 ** 6)


def local_values(p):
    return st.builds(
        lambda a, b: Fraction(a, b),
        st.integers(-500, 500),
        st.integers(1, 60).filter(lambda b: b % p),
    )


def test_valuation_examples():
    assert valuation(0, 3) == math.inf
    assert valuation(Fraction(9, 2), 3) == 2
    assert valuation(Fraction(1, 3), 3) == -1


def test_reduce_examples():
    assert reduce_mod_p(5, 3).value == 2
    assert reduce_mod_p(Fraction(1, 2), 3).value == 2
    assert reduce_mod_p(0, 3).value == 0
    with pytest.raises(DomainError):
        reduce_mod_p(Fraction(1, 3), 3)


def test_reduce_uses_scalar_domain():
    s = Scalar(Domain.localized(5), Fraction(3, 2))
    assert reduce_mod_p(s) == Scalar(Domain.prime_field(5), 4)
    with pytest.raises(ValueError):
        reduce_mod_p(Scalar(ZZ, 4))


def test_domain_membership():
    loc = Domain.localized(3)
    assert loc.contains(Fraction(1, 2))
    assert not loc.contains(Fraction(1, 6))
    assert not ZZ.contains(Fraction(1, 2))
    assert QQ.contains(Fraction(1, 6))
    with pytest.raises(DomainError):
        QQ.normalize(0.5)
    assert Domain.prime_field(7).normalize(Fraction(1, 2)) == 4


def test_domain_descriptors():
    assert loc_str() == "ZZ_(3)"
    for d in (ZZ, QQ, Domain.prime_field(5), Domain.localized(3)):
        assert Domain.from_json(d.to_json()) == d
    assert Domain.localized(3).residue_field() == Domain.prime_field(3)
    assert Domain.localized(3).fraction_field() == QQ
    with pytest.raises(ValueError):
        Domain.prime_field(6)


def loc_str():
    return str(Domain.localized(3))


def test_primes():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert prime_factors(360) == [2, 3, 5]
    assert prime_factors(1) == []


def test_json_round_trip():
    for v in (0, 7, -3, Fraction(3, 4), Fraction(-5, 2)):
        assert decode_value(encode_value(v)) == v
    assert encode_value(Fraction(6, 3)) == "2"
    s = Scalar(QQ, Fraction(-1, 3))
    assert Scalar.from_json(QQ, s.to_json()) == s


@given(rationals, rationals, rationals)
def test_rational_field_axioms(a, b, c):
    A, B, C = (Scalar(QQ, v) for v in (a, b, c))
    assert (A + B) + C == A + (B + C)
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C
    if a:
        assert A * A.inverse() == Scalar(QQ, 1)


@given(PRIMES, st.integers(), st.integers(), st.integers())
def test_prime_field_axioms(p, a, b, c):
    F = Domain.prime_field(p)
    A, B, C = (Scalar(F, v) for v in (a, b, c))
    assert (A + B) + C == A + (B + C)
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C
    if a % p:
        assert A * A.inverse() == Scalar(F, 1)


@given(st.data(), PRIMES)
def test_reduction_is_a_ring_homomorphism(data, p):
    loc = Domain.localized(p)
    a = data.draw(local_values(p))
    b = data.draw(local_values(p))
    A, B = Scalar(loc, a), Scalar(loc, b)
    assert reduce_mod_p(A + B) == reduce_mod_p(A) + reduce_mod_p(B)
    assert reduce_mod_p(A * B) == reduce_mod_p(A) * reduce_mod_p(B)
    assert reduce_mod_p(Scalar(loc, 1)) == Scalar(Domain.prime_field(p), 1)


@given(rationals, rationals, PRIMES)
def test_valuation_is_additive(a, b, p):
    assume(a and b)
    assert valuation(a * b, p) == valuation(a, p) + valuation(b, p)
    assert valuation(a + b, p) >= min(valuation(a, p), valuation(b, p))
