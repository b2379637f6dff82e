"""Graded invariants of finite matrix groups.

Degree slices are computed as kernels of ``f -> g.f - f`` on the monomial
basis.  Over ``ZZ_(p)`` the rational kernel is saturated at ``p`` so the
returned basis spans the full lattice of p-integral invariants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .groebner import algebraically_independent
from .linalg import EchelonSpace, axpy, kernel, scale
from .matgroup import MatrixGroup
from .poly import GREVLEX, Polynomial, monomials_of_degree
from .rings import INTEGERS, LOCALIZED, PRIME_FIELD, QQ, Domain, DomainError, valuation


@dataclass
class InvariantBasis:
    degree: int
    domain: Domain
    basis: list[Polynomial]
    pivots: list[tuple] = field(default_factory=list)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    @property
    def rank(self) -> int:
        return len(self.basis)


@dataclass
class GeneratorSet:
    generators: list[Polynomial]
    degrees: list[int]
    degree_bound_used: int
    domain: Domain
    complete: bool = False
    certificate: str | None = None
    still_growing: bool = False
    dimensions: list[int] = field(default_factory=list)

    def __len__(self):
        return len(self.generators)


def _monomial_grevlex_ascending(n, d):
    return list(reversed(monomials_of_degree(n, d)))


def _field_group(G: MatrixGroup) -> MatrixGroup:
    if G.domain.is_field:
        return G
    if G.domain.kind in (INTEGERS, LOCALIZED):
        return G.embed(QQ)
    raise DomainError(f"no field for {G.domain}")


def invariant_space(G: MatrixGroup, d: int) -> InvariantBasis:
    """Echelon basis of the degree-``d`` invariants of a group over a field.

    Each basis element has coefficient 1 on its leading (grevlex) monomial
    and 0 on every other basis element's leading monomial.
    """
    if not G.domain.is_field:
        raise DomainError(f"invariant_space needs a field, got {G.domain}; "
                          "use invariant_lattice or embed the group")
    if d < 0:
        raise ValueError("negative degree")
    dom = G.domain
    p = dom.modulus
    cols = _monomial_grevlex_ascending(G.n, d)
    rows: dict = {}
    for gi, g in enumerate(G.generators):
        sub = G.substitution(g)
        for m in cols:
            img = sub.monomial_image(m)
            for e, c in img.terms.items():
                r = rows.setdefault((gi, e), {})
                r[m] = r.get(m, 0) + c
            r = rows.setdefault((gi, m), {})
            r[m] = r.get(m, 0) - 1
    clean = []
    for r in rows.values():
        if p:
            r = {k: v % p for k, v in r.items() if v % p}
        else:
            r = {k: v for k, v in r.items() if v}
        if r:
            clean.append(r)
    vecs = kernel(clean, cols, p)
    basis = [Polynomial(dom, G.n, v) for v in vecs]
    pivots = [b.leading_monomial() for b in basis]
    return InvariantBasis(d, dom, basis, pivots)


def _p_primitive(v: dict, p: int) -> dict:
    m = min(valuation(c, p) for c in v.values())
    return scale(v, Fraction(p) ** (-m), None)


def saturate(vectors: list[dict], p: int, key=GREVLEX.key) -> tuple[list[dict], list]:
    """A ``ZZ_(p)``-basis of ``span_QQ(vectors) cap ZZ_(p)^N``.

    The input must be QQ-linearly independent.  Returns the basis in local
    Hermite form (identity on the pivot columns of its reduction mod p,
    leading column descending) together with those pivot columns.
    """
    vs = [_p_primitive(v, p) for v in vectors if v]
    while True:
        # find an F_p-dependency among the reductions; fold it into one vector
        tagged = []
        dep = None
        for i, v in enumerate(vs):
            red = {c: Fraction(x).numerator * pow(Fraction(x).denominator, -1, p) % p
                   for c, x in v.items()}
            red = {c: x for c, x in red.items() if x}
            red[("__tag__", i)] = 1
            tagged.append(red)
        space = EchelonSpace(p, key=lambda c: (0, -c[1]) if _is_tag(c) else (1, key(c)))
        for i, t in enumerate(tagged):
            r = space.reduce(t)
            if all(_is_tag(c) for c in r):
                dep = {c[1]: x for c, x in r.items()}
                break
            space.add(t)
        if dep is None:
            break
        j = max(dep)
        coef = dep[j]
        combo = {}
        for i, a in dep.items():
            combo = axpy(combo, Fraction(a * pow(coef, -1, p) % p), vs[i], None)
        vs[j] = _p_primitive(scale(combo, Fraction(1, p), None), p)
    # local Hermite form: invert the block on the mod-p pivot columns
    space = EchelonSpace(p, key)
    for v in vs:
        space.add({c: _reduce_frac(x, p) for c, x in v.items() if _reduce_frac(x, p)})
    pivots = sorted(space.rows, key=key, reverse=True)
    if len(pivots) != len(vs):
        raise ArithmeticError("saturation left dependent reductions")
    # over QQ, combine the vs so they restrict to unit vectors on the pivots
    res = EchelonSpace(None, key=lambda c: _pivot_rank(c, pivots))
    for v in vs:
        res.add(v)
    out = [res.rows[c] for c in pivots]
    for r in out:
        for x in r.values():
            if valuation(x, p) < 0:
                raise ArithmeticError("local Hermite form is not p-integral")
    return out, pivots


def _pivot_rank(c, pivots):
    # pivot columns first, in their order, then everything else
    if c in pivots:
        return (1, -pivots.index(c))
    return (0, 0)


def _is_tag(c):
    return isinstance(c, tuple) and len(c) == 2 and c[0] == "__tag__"


def _reduce_frac(x, p):
    x = Fraction(x)
    return x.numerator * pow(x.denominator, -1, p) % p


def invariant_lattice(G: MatrixGroup, d: int) -> InvariantBasis:
    """Free ``ZZ_(p)``-basis of the p-integral degree-``d`` invariants."""
    if G.domain.kind != LOCALIZED:
        raise DomainError(f"invariant_lattice needs ZZ_(p), got {G.domain}")
    p = G.domain.p
    space = invariant_space(G.embed(QQ), d)
    vecs, pivots = saturate([b.terms for b in space.basis], p)
    basis = [Polynomial(G.domain, G.n, v) for v in vecs]
    return InvariantBasis(d, G.domain, basis, pivots)


def reynolds(G: MatrixGroup, f: Polynomial) -> Polynomial:
    """Average of ``sigma . f`` over the group; needs ``|G|`` invertible."""
    order = G.order
    dom = f.domain
    if dom.kind == PRIME_FIELD and order % dom.p == 0:
        raise DomainError(f"|G| = {order} is not invertible in {dom}")
    if dom.kind == LOCALIZED and order % dom.p == 0:
        raise DomainError(f"|G| = {order} is not invertible in {dom}")
    if dom.kind == INTEGERS and order != 1:
        raise DomainError(f"|G| = {order} is not invertible in {dom}")
    total = Polynomial.zero(dom, f.n)
    for sigma in G.elements:
        total = total + G.act(sigma, f)
    return total.scale(dom.inv(dom.normalize(order)))


def _charpoly(m) -> list[Fraction]:
    """Coefficients ``[1, c1, ..., cn]`` of ``det(1 - t m)`` (Faddeev-LeVerrier)."""
    n = len(m)
    A = [[Fraction(x) for x in row] for row in m]
    coeffs = [Fraction(1)]
    M = [[Fraction(0)] * n for _ in range(n)]
    c = Fraction(1)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I ; c_k = -tr(A M_k)/k
        M = [[sum(A[i][t] * M[t][j] for t in range(n)) + (c if i == j else 0)
              for j in range(n)] for i in range(n)]
        AM = [[sum(A[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c = -sum(AM[i][i] for i in range(n)) / k
        coeffs.append(c)
    # det(lambda - A) = sum c_k lambda^(n-k); det(1 - tA) = sum c_k t^k
    return coeffs


def molien_dimensions(G: MatrixGroup, D: int) -> list[int]:
    """Coefficients of the Molien series up to ``t^D`` (characteristic 0)."""
    if G.domain.characteristic:
        raise DomainError("the Molien series needs characteristic zero")
    counts: dict = {}
    for sigma in G.elements:
        key = tuple(_charpoly(sigma))
        counts[key] = counts.get(key, 0) + 1
    total = [Fraction(0)] * (D + 1)
    for q, mult in counts.items():
        a = [Fraction(0)] * (D + 1)
        a[0] = Fraction(1)
        for k in range(1, D + 1):
            a[k] = -sum(q[j] * a[k - j] for j in range(1, min(k, len(q) - 1) + 1))
        for k in range(D + 1):
            total[k] += mult * a[k]
    out = []
    for x in total:
        x /= G.order
        if x.denominator != 1:
            raise ArithmeticError("Molien coefficient is not an integer")
        out.append(int(x))
    return out


# -- generators ------------------------------------------------------------------

def default_degree_bound(G: MatrixGroup, p: int | None = None) -> int:
    """``|G|`` when nonmodular, ``n(|G|-1)`` when the characteristic divides ``|G|``."""
    char = p if p is not None else G.domain.characteristic
    if G.domain.kind == LOCALIZED and p is None:
        char = G.domain.p
    if char and G.order % char == 0:
        return max(G.n * (G.order - 1), 1)
    return max(G.order, 1)


def _bound_is_sufficient(G: MatrixGroup, D: int, char: int, over_field: bool) -> bool:
    if G.order == 1:
        return D >= 1
    if not char or G.order % char:
        return D >= G.order
    # Symonds' bound n(|G|-1), n >= 2, is a statement about fields only
    return over_field and G.n >= 2 and D >= G.n * (G.order - 1)


class _ProductCache:
    def __init__(self, gens, dom, n):
        self.gens = gens
        self.cache = {(): Polynomial.constant(dom, n, 1)}

    def products(self, d: int):
        """Products of the current generators with total degree ``d``."""
        degs = [g.degree() for g in self.gens]
        out = []

        def rec(i, remaining, expo):
            if remaining == 0:
                out.append(self.get(tuple(expo)))
                return
            if i == len(degs):
                return
            k = 0
            while k * degs[i] <= remaining:
                rec(i + 1, remaining - k * degs[i], expo + [k])
                k += 1

        rec(0, d, [])
        return out

    def get(self, expo):
        expo = tuple(expo)
        while expo and expo[-1] == 0:
            expo = expo[:-1]
        if expo not in self.cache:
            i = next(k for k, a in enumerate(expo) if a)
            rest = list(expo)
            rest[i] -= 1
            self.cache[expo] = self.get(tuple(rest)) * self.gens[i]
        return self.cache[expo]


def _kemper_certificate(gens: list[Polynomial], group_order: int, n: int) -> bool:
    if len(gens) != n:
        return False
    if math.prod(g.degree() for g in gens) != group_order:
        return False
    return algebraically_independent(gens).independent


def minimal_generators(G: MatrixGroup, D: int | None = None,
                       stop_when_certified: bool = True) -> GeneratorSet:
    """Homogeneous minimal generators of the invariant ring in degrees ``<= D``.

    Over a field a candidate is kept when it is not in the span of products
    of earlier generators.  Over ``ZZ_(p)`` the test is taken modulo ``p``:
    a lattice basis vector is kept when its class is not in the image of
    those products in ``L_d / p L_d``, which by Nakayama gives a minimal
    system.  The loop stops early once ``n`` algebraically independent
    generators with degree product ``|G|`` are found.
    """
    if D is None:
        D = default_degree_bound(G)
    if D < 1:
        raise ValueError("degree bound must be at least 1")
    local = G.domain.kind == LOCALIZED
    if G.domain.kind == INTEGERS:
        raise DomainError("minimal generators over ZZ: localize at a prime or embed in QQ")
    p = G.domain.p if local else G.domain.modulus
    dom = G.domain
    gens: list[Polynomial] = []
    cache = _ProductCache(gens, dom, G.n)
    dims = [1]
    used = D
    certificate = None
    last_growth = 0
    for d in range(1, D + 1):
        if local:
            sl = invariant_lattice(G, d)
        else:
            sl = invariant_space(G, d)
        dims.append(sl.rank)
        prods = cache.products(d) if gens else []
        if local:
            piv = sl.pivots
            space = EchelonSpace(p)
            for f in prods:
                coords = {c: _reduce_frac(f.terms.get(c, 0), p) for c in piv}
                space.add({c: v for c, v in coords.items() if v})
            for b, c in zip(sl.basis, piv):
                if space.add({c: 1}):
                    gens.append(b)
                    last_growth = d
        else:
            space = EchelonSpace(dom.modulus, GREVLEX.key)
            for f in prods:
                space.add(f.terms)
            for b in sl.basis:
                if space.add(b.terms):
                    gens.append(b.primitive() if not dom.modulus else b)
                    last_growth = d
        if last_growth == d and stop_when_certified and len(gens) == G.n:
            ok = _kemper_certificate(
                [g if dom.is_field else g.change_domain(QQ) for g in gens], G.order, G.n)
            if ok and local:
                from .poly import map_coefficients
                ok = algebraically_independent([map_coefficients(g) for g in gens]).independent
            if ok:
                certificate = "kemper"
                used = d
                break
    complete = certificate is not None or _bound_is_sufficient(G, D, p or 0, not local)
    if complete and certificate is None:
        certificate = "degree-bound"
    return GeneratorSet(
        generators=gens,
        degrees=[g.degree() for g in gens],
        degree_bound_used=used,
        domain=dom,
        complete=complete,
        certificate=certificate,
        still_growing=(not complete) and last_growth == used,
        dimensions=dims,
    )
