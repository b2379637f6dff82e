import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from arithinv.groups import S3_GENERATORS, dihedral4, lattice_s3, s3_permutation, trivial
from arithinv.matgroup import (
    GroupError,
    act,
    close_group,
    identity,
    is_pseudoreflection,
    load_representation,
    mat_inverse,
    mat_mul,
    reduce_group,
)
from arithinv.poly import Polynomial, parse_poly
from arithinv.rings import QQ, ZZ, Domain, DomainError

L3 = Domain.localized(3)


def P(text, dom=QQ, n=2):
    return parse_poly(text, dom, n)


def test_closure_examples():
    assert close_group([[[-1, 0], [0, -1]]]).order == 2
    assert close_group(S3_GENERATORS, L3).order == 6
    assert close_group([[[0, -1], [1, 0]]], QQ).order == 4
    assert dihedral4().order == 8


def test_closure_errors():
    with pytest.raises(GroupError):
        close_group([[[2, 0], [0, 1]]], QQ, max_order=50)
    with pytest.raises(GroupError):
        close_group([[[2, 0], [0, 1]]], ZZ)
    with pytest.raises(GroupError):
        close_group([[[1, 1], [1, 1]]], QQ)
    with pytest.raises(GroupError):
        close_group([])


def test_action_examples():
    G = lattice_s3(L3)
    f = P("x^2 + 3*x*y + 3*y^2", L3)
    assert act(G.identity(), f) == f
    for g in G.generators:
        assert G.act(g, f) == f
    assert act(((-1, 0), (0, -1)), P("x")) == P("-x")
    with pytest.raises(ValueError):
        act(identity(3), P("x"))


def test_pseudoreflection_examples():
    assert not is_pseudoreflection(identity(2))
    assert is_pseudoreflection(((1, 3), (0, -1)))
    assert not is_pseudoreflection(((-1, 0), (0, -1)))
    G = lattice_s3()
    assert len(G.pseudoreflections()) == 3
    assert G.generated_by_pseudoreflections()
    assert not close_group([[[0, -1], [1, 0]]]).generated_by_pseudoreflections()


def test_reduction_examples():
    H, rep = reduce_group(lattice_s3(L3), 3)
    assert (rep.image_order, rep.injective) == (6, True)
    H, rep = reduce_group(trivial(2), 7)
    assert (H.order, rep.injective) == (1, True)
    H, rep = reduce_group(close_group([[[1, 0], [0, -1]]], ZZ), 2)
    assert (rep.image_order, rep.injective) == (1, False)
    with pytest.raises(DomainError):
        reduce_group(lattice_s3(L3), 2)
    with pytest.raises(DomainError):
        reduce_group(lattice_s3(QQ), 3)


def test_representation_round_trip(tmp_path):
    G = lattice_s3(L3)
    path = tmp_path / "rep.json"
    path.write_text(json.dumps(G.to_json()))
    H = load_representation(path)
    assert H.domain == L3 and H.order == 6
    data = {"n": 2, "domain": {"kind": "Rationals"},
            "generators": [[["1/2", "0"], ["0", "2"]]]}
    with pytest.raises(GroupError):
        load_representation(data)
    with pytest.raises(ValueError):
        load_representation({"n": 3, "domain": "Integers", "generators": [[[1, 0], [0, 1]]]})
    with pytest.raises(ValueError):
        load_representation({"domain": "Integers"})


def test_inverse():
    m = ((1, 3), (0, -1))
    assert mat_mul(m, mat_inverse(m)) == identity(2)
    assert mat_inverse(((1, 1), (1, 1))) is None
    assert mat_inverse(((2, 0), (0, 1)), 5) == ((3, 0), (0, 1))


GROUPS = [lattice_s3(QQ), s3_permutation(QQ), dihedral4(QQ)]
group_and_elements = st.sampled_from(GROUPS).flatmap(
    lambda G: st.tuples(st.just(G), st.sampled_from(G.elements), st.sampled_from(G.elements)))


def random_poly(n):
    mono = st.tuples(*[st.integers(0, 3)] * n)
    return st.dictionaries(mono, st.integers(-3, 3), max_size=4).map(lambda t: Polynomial(QQ, n, t))


@given(group_and_elements, st.data())
def test_left_action_axiom(gst, data):
    G, s, t = gst
    f = data.draw(random_poly(G.n))
    assert G.act(G.mul(s, t), f) == G.act(s, G.act(t, f))
    assert G.act(s, f).degree() == f.degree()


@given(group_and_elements, st.data())
def test_invariance_is_checked_on_generators(gst, data):
    G, s, _ = gst
    f = data.draw(random_poly(G.n))
    averaged = Polynomial.zero(QQ, G.n)
    for g in G.elements:
        averaged = averaged + G.act(g, f)
    full = lambda h: all(G.act(g, h) == h for g in G.elements)
    assert G.is_invariant(averaged) and full(averaged)
    assert G.is_invariant(f) == full(f)


@given(group_and_elements)
def test_pseudoreflections_are_conjugation_invariant(gst):
    G, s, h = gst
    conj = G.mul(G.mul(h, s), G.inverse(h))
    assert is_pseudoreflection(conj) == is_pseudoreflection(s)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("make", [lattice_s3, s3_permutation, dihedral4])
def test_image_order_divides(make, p):
    G = make(ZZ)
    H, rep = reduce_group(G, p)
    assert G.order % rep.image_order == 0
    assert rep.injective == (rep.image_order == G.order)


def test_infinite_order_fails_fast():
    from arithinv.matgroup import max_element_order
    # GL_n(QQ) holds finite orders 2, 6, 6, 12, 12, 30 for n = 1..6
    assert [max_element_order(n) for n in range(1, 7)] == [2, 6, 6, 12, 12, 30]
    with pytest.raises(GroupError, match="infinite order"):
        close_group([[[1, 1], [0, 1]]], ZZ)
