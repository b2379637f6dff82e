"""Buchberger's algorithm over QQ and GF(p), plus the elimination-based
tools built on it: subalgebra membership via tag variables, algebraic
(in)dependence, and the ideal of relations among a list of polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .poly import (
    GREVLEX,
    MonomialOrder,
    Polynomial,
    block_order,
    compose,
    mono_div,
    mono_divides,
    mono_lcm,
    tag_names,
)
from .rings import QQ, Domain, DomainError


def _field_of(polys: Sequence[Polynomial], embed: bool = True) -> Domain | None:
    doms = {f.domain for f in polys}
    if not doms:
        return None
    if len(doms) > 1:
        # an integral domain embeds into QQ alongside QQ itself
        if embed and all(not d.modulus for d in doms):
            return QQ
        raise DomainError(f"mixed coefficient domains {sorted(map(str, doms))}")
    (dom,) = doms
    if dom.is_field:
        return dom
    if not embed:
        raise DomainError(f"Groebner bases need field coefficients, got {dom}")
    return QQ


def _to_field(f: Polynomial, dom: Domain) -> Polynomial:
    return f if f.domain == dom else Polynomial._raw(dom, f.n, dict(f.terms))


@dataclass
class GroebnerBasis:
    order: MonomialOrder
    generators: list[Polynomial]
    reduced: bool = True
    n: int | None = None
    domain: Domain | None = None

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def is_zero_ideal(self) -> bool:
        return not self.generators

    def leading_monomials(self) -> list[tuple]:
        return [g.leading_monomial(self.order) for g in self.generators]

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()


# -- reduction ---------------------------------------------------------------

def _reduce(terms: dict, basis: list[tuple], key, p: int | None, n: int):
    """Fully reduce ``terms`` by ``basis`` = [(lm, lc_inv, terms), ...]."""
    terms = dict(terms)
    rem = {}
    while terms:
        lm = max(terms, key=key)
        c = terms[lm]
        for glm, ginv, gterms in basis:
            if mono_divides(glm, lm):
                q = mono_div(lm, glm)
                a = c * ginv
                if p:
                    a %= p
                for e, v in gterms.items():
                    e2 = tuple(x + y for x, y in zip(e, q))
                    s = terms.get(e2, 0) - a * v
                    if p:
                        s %= p
                    elif isinstance(s, Fraction) and s.denominator == 1:
                        s = s.numerator
                    if s:
                        terms[e2] = s
                    else:
                        terms.pop(e2, None)
                break
        else:
            rem[lm] = c
            del terms[lm]
    return rem


def _entry(terms: dict, key, dom: Domain):
    lm = max(terms, key=key)
    return (lm, dom.inv(terms[lm]), terms)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Remainder of ``f`` on full division by ``G``."""
    if not G.generators:
        return f
    dom = G.generators[0].domain
    if f.n != G.generators[0].n:
        raise ValueError("arity mismatch between polynomial and basis")
    f = _to_field(f, dom) if not f.domain.is_field or f.domain != dom else f
    key = G.order.key
    basis = [_entry(g.terms, key, dom) for g in G.generators]
    rem = _reduce(f.terms, basis, key, dom.modulus, f.n)
    return Polynomial._raw(dom, f.n, rem)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    dom = f.domain
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    lcm = mono_lcm(lf, lg)
    a = Polynomial.monomial(dom, mono_div(lcm, lf), dom.inv(f.terms[lf]))
    b = Polynomial.monomial(dom, mono_div(lcm, lg), dom.inv(g.terms[lg]))
    return a * f - b * g


# -- Buchberger ------------------------------------------------------------------

def buchberger(gens: Sequence[Polynomial], order: MonomialOrder = GREVLEX,
               embed: bool = True) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are processed by the normal strategy (smallest lcm first, ties
    broken by the order itself) and pruned by the coprime and chain
    criteria.  Integral inputs are embedded into QQ unless ``embed`` is off.
    """
    gens = [f for f in gens]
    dom = _field_of(gens, embed)
    nz = [_to_field(f, dom) for f in gens if f]
    if not nz:
        n = gens[0].n if gens else None
        return GroebnerBasis(order, [], True, n, dom)
    n = nz[0].n
    if any(f.n != n for f in nz):
        raise ValueError("arity mismatch among generators")
    key = order.key
    p = dom.modulus

    basis: list[tuple] = []          # (lm, inv lc, terms)
    pairs: set[tuple[int, int]] = set()

    def insert(terms):
        entry = _entry(terms, key, dom)
        k = len(basis)
        basis.append(entry)
        for i in range(k):
            if basis[i] is not None:
                pairs.add((i, k))

    for f in nz:
        r = _reduce(f.terms, [b for b in basis if b is not None], key, p, n)
        if r:
            insert(r)

    while pairs:
        def pair_key(ij):
            lcm = mono_lcm(basis[ij[0]][0], basis[ij[1]][0])
            return (sum(lcm), key(lcm), ij)
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        li, lj = basis[i][0], basis[j][0]
        lcm = mono_lcm(li, lj)
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        if _chain_skip(i, j, lcm, basis, pairs):
            continue
        qi, qj = mono_div(lcm, li), mono_div(lcm, lj)
        s: dict = {}
        for (q, entry, sign) in ((qi, basis[i], 1), (qj, basis[j], -1)):
            _, inv, terms = entry
            for e, v in terms.items():
                e2 = tuple(x + y for x, y in zip(e, q))
                s[e2] = s.get(e2, 0) + sign * inv * v
        if p:
            s = {e: v % p for e, v in s.items() if v % p}
        else:
            s = {e: v for e, v in s.items() if v}
        r = _reduce(s, [b for b in basis if b is not None], key, p, n)
        if r:
            insert(r)

    polys = [Polynomial._raw(dom, n, _clean(t, p)) for (_, _, t) in basis]
    return GroebnerBasis(order, _interreduce(polys, order), True, n, dom)


def _clean(terms, p):
    if p:
        return terms
    return {e: (c.numerator if isinstance(c, Fraction) and c.denominator == 1 else c)
            for e, c in terms.items()}


def _chain_skip(i, j, lcm, basis, pairs) -> bool:
    for k, entry in enumerate(basis):
        if k in (i, j) or entry is None:
            continue
        if mono_divides(entry[0], lcm):
            a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
            if a not in pairs and b not in pairs:
                return True
    return False


def _interreduce(polys: list[Polynomial], order: MonomialOrder) -> list[Polynomial]:
    key = order.key
    lms = [f.leading_monomial(order) for f in polys]
    keep = []
    for i, f in enumerate(polys):
        redundant = False
        for j, g in enumerate(polys):
            if i == j:
                continue
            if mono_divides(lms[j], lms[i]) and (lms[j] != lms[i] or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(f)
    out = []
    for i, f in enumerate(keep):
        others = [_entry(g.terms, key, g.domain) for j, g in enumerate(keep) if j != i]
        lm = f.leading_monomial(order)
        tail = {e: c for e, c in f.terms.items() if e != lm}
        rem = _reduce(tail, others, key, f.domain.modulus, f.n)
        rem[lm] = f.terms[lm]
        out.append(Polynomial._raw(f.domain, f.n, _clean(rem, f.domain.modulus)).monic(order))
    out.sort(key=lambda g: key(g.leading_monomial(order)))
    return out


def is_groebner(G: GroebnerBasis) -> bool:
    """Buchberger criterion: all S-polynomials reduce to zero."""
    gs = G.generators
    for i in range(len(gs)):
        for j in range(i + 1, len(gs)):
            if normal_form(s_polynomial(gs[i], gs[j], G.order), G):
                return False
    return True


# -- elimination tools ---------------------------------------------------------------

def _tagged_ideal(gens: Sequence[Polynomial]) -> tuple[GroebnerBasis, int, int, Domain]:
    """GB of ``(y_i - f_i)`` in ``x_1..x_n, y_1..y_m`` eliminating the x-block."""
    dom = _field_of(gens)
    n = gens[0].n
    m = len(gens)
    tagged = []
    for i, f in enumerate(gens):
        f = _to_field(f, dom)
        terms = {e + (0,) * m: c for e, c in f.terms.items()}
        y = (0,) * n + tuple(int(k == i) for k in range(m))
        terms[y] = dom.normalize(terms.get(y, 0) - 1)
        tagged.append(Polynomial(dom, n + m, terms))
    return buchberger(tagged, block_order(n)), n, m, dom


@dataclass
class Membership:
    member: bool
    expression: Polynomial | None = None

    def __bool__(self):
        return self.member


class Subalgebra:
    """The subalgebra ``k[f_1, ..., f_m]`` with a cached tag-variable basis."""

    def __init__(self, gens: Sequence[Polynomial]):
        gens = [g for g in gens]
        if not gens:
            raise ValueError("need at least one generator")
        self.gens = gens
        self.basis, self.n, self.m, self.domain = _tagged_ideal(gens)

    def membership(self, f: Polynomial) -> Membership:
        if f.n != self.n:
            raise ValueError("arity mismatch")
        lifted = Polynomial(self.domain, self.n + self.m,
                            {e + (0,) * self.m: c for e, c in f.terms.items()})
        r = normal_form(lifted, self.basis)
        if any(any(e[:self.n]) for e in r.terms):
            return Membership(False)
        expr = Polynomial._raw(self.domain, self.m, {e[self.n:]: c for e, c in r.terms.items()})
        target = _to_field(f, self.domain)
        images = [_to_field(g, self.domain) for g in self.gens]
        if compose(expr, images) != target:
            raise ArithmeticError("subalgebra expression failed its evaluation check")
        return Membership(True, expr)


def subalgebra_membership(f: Polynomial, gens: Sequence[Polynomial]) -> Membership:
    """Decide ``f in k[gens]``; a member comes with ``p`` such that ``p(gens) = f``."""
    if not gens:
        ok = f.degree() <= 0
        return Membership(ok, Polynomial(f.domain.fraction_field(), 0, {(): c for c in f.terms.values()}) if ok else None)
    return Subalgebra(gens).membership(f)


@dataclass
class RelationWitness:
    relation: Polynomial | None = None

    def verify(self, fs: Sequence[Polynomial]) -> bool:
        if self.relation is None:
            return True
        dom = self.relation.domain
        return compose(self.relation, [_to_field(f, dom) for f in fs]).is_zero()


@dataclass
class Independence:
    independent: bool
    witness: RelationWitness = field(default_factory=RelationWitness)

    def __bool__(self):
        return self.independent


def relations_ideal(fs: Sequence[Polynomial]) -> GroebnerBasis:
    """Groebner basis (grevlex in the tags) of the kernel of ``y_i -> f_i``."""
    fs = list(fs)
    if not fs:
        return GroebnerBasis(GREVLEX, [], True, 0, None)
    G, n, m, dom = _tagged_ideal(fs)
    rel = [Polynomial._raw(dom, m, {e[n:]: c for e, c in g.terms.items()})
           for g in G.generators if not any(any(e[:n]) for e in g.terms)]
    rel.sort(key=lambda g: GREVLEX.key(g.leading_monomial()))
    return GroebnerBasis(GREVLEX, rel, True, m, dom)


def algebraically_independent(fs: Sequence[Polynomial]) -> Independence:
    rel = relations_ideal(fs)
    if rel.is_zero_ideal():
        return Independence(True)
    return Independence(False, RelationWitness(rel.generators[0]))


def format_relation(rel: Polynomial) -> str:
    return rel.to_text(tag_names(rel.n))
