"""Decide whether the invariant ring over ``ZZ_(p)`` or ``ZZ`` is a
polynomial ring, by comparing the invariants over the fraction field QQ
with those over the residue field GF(p).

Every conclusion carries witnesses, and :func:`verify_verdict` re-checks
them along code paths that the deciding pipeline does not use.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .groebner import Subalgebra, algebraically_independent, format_relation
from .invariants import (
    GeneratorSet,
    default_degree_bound,
    invariant_lattice,
    minimal_generators,
    reynolds,
    _ProductCache,
    _reduce_frac,
)
from .linalg import EchelonSpace
from .matgroup import MatrixGroup, ReductionReport, close_group, reduce_group
from .poly import Polynomial, derivative, determinant, map_coefficients
from .rings import INTEGERS, LOCALIZED, QQ, Domain, DomainError, prime_factors, valuation

POLYNOMIAL = "PolynomialRing"
NOT_POLYNOMIAL = "NotPolynomialRing"
BLOWUP_ONLY = "BlowupTensorOnly"
INCONCLUSIVE = "Inconclusive"

SCHEMA = "1"


class CriterionError(ValueError):
    """The hypotheses of a criterion are not met by the given data."""


# -- the basic checks ---------------------------------------------------------------

def _over_field(fs):
    return [f if f.domain.is_field else f.change_domain(QQ) for f in fs]


def check_kemper(fs: Sequence[Polynomial], G: MatrixGroup) -> bool:
    """``n`` algebraically independent invariants whose degrees multiply to ``|G|``.

    For a faithful representation over a field this is equivalent to the
    invariants generating the whole invariant ring.
    """
    if len(fs) != G.n:
        raise CriterionError(f"need exactly {G.n} candidates, got {len(fs)}")
    if math.prod(f.degree() for f in fs) != G.order:
        return False
    fs = _over_field(fs)
    Gf = G if G.domain.is_field else G.embed(QQ)
    if not all(Gf.is_invariant(f.change_domain(Gf.domain)) for f in fs):
        return False
    return algebraically_independent(fs).independent


def check_deg_product_bound(fs: Sequence[Polynomial], G: MatrixGroup) -> bool:
    """``prod deg f_i <= |G|``; promotes independent invariants to generators
    when the invariant ring is already known to be polynomial."""
    return math.prod(f.degree() for f in fs) <= G.order


@dataclass
class AInvResult:
    equals_R_algebra: bool
    relation: Polynomial | None = None
    reductions: list[Polynomial] = field(default_factory=list)

    def __bool__(self):
        return self.equals_R_algebra


def ainv_modulo(fs: Sequence[Polynomial], G: MatrixGroup, p: int | None = None) -> AInvResult:
    """Is ``ZZ_(p)[x]^G = ZZ_(p)[fs]``?  Holds iff the classes mod p are independent.

    ``fs`` must be p-integral invariants that generate the invariant ring
    over QQ; the Kemper certificate over QQ is used to check the latter.
    """
    if p is None:
        if G.domain.kind != LOCALIZED:
            raise CriterionError("give the prime explicitly")
        p = G.domain.p
    loc = Domain.localized(p)
    fs = [f.change_domain(loc) for f in fs]
    for f in fs:
        if not G.is_invariant(f.change_domain(G.domain) if G.domain != loc else f):
            raise CriterionError(f"{f} is not invariant")
    GQ = G.embed(QQ) if not G.domain.is_field else G
    if len(fs) != G.n or not check_kemper(_over_field(fs), GQ):
        raise CriterionError("candidates do not certifiably generate the invariants over QQ")
    reds = [map_coefficients(f) for f in fs]
    ind = algebraically_independent(reds)
    return AInvResult(ind.independent, ind.witness.relation, reds)


# -- verdicts --------------------------------------------------------------------------

@dataclass
class LocalVerdict:
    p: int
    verdict: str
    k_degrees: list[int]
    f_degrees: list[int]
    injective: bool | None
    obstruction: Polynomial | None = None
    k_generators: list[Polynomial] = field(default_factory=list)
    f_generators: list[Polynomial] = field(default_factory=list)
    r_generators: list[Polynomial] = field(default_factory=list)
    relation: Polynomial | None = None
    image_order: int | None = None
    reason: str = ""
    settled_by_theorem: bool = False

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "verdict": self.verdict,
            "k_degrees": list(self.k_degrees),
            "f_degrees": list(self.f_degrees),
            "injective": self.injective,
            "obstruction": None if self.obstruction is None else self.obstruction.to_text(),
        }


@dataclass
class Verdict:
    conclusion: str
    primes: list[LocalVerdict]
    degree_bound_used: int
    group_order: int
    certificates_verified: bool = False
    notes: list[str] = field(default_factory=list)
    group: MatrixGroup | None = field(default=None, repr=False, compare=False)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "conclusion": self.conclusion,
            "primes": [lv.to_json() for lv in self.primes],
            "degree_bound": self.degree_bound_used,
            "certificates_verified": self.certificates_verified,
        }

    def dumps(self) -> str:
        return dump_report(self.to_json())


def dump_report(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False)


# -- helpers -----------------------------------------------------------------------------

def _status(gs: GeneratorSet, n: int, order: int) -> tuple[str, str]:
    """Classify the ring from its minimal generators in degrees ``<= D``.

    Minimal generator counts per degree are invariants of the ring, so more
    than ``n`` of them rule out a polynomial ring, and exactly ``n`` of them
    form a polynomial system precisely when the Kemper certificate holds.
    """
    k = len(gs.generators)
    if k > n:
        return "not_polynomial", f"{k} > {n} minimal generators"
    if k == n:
        if math.prod(gs.degrees) == order and algebraically_independent(
                _over_field(gs.generators)).independent:
            return "polynomial", "Kemper certificate"
        return "not_polynomial", "n minimal generators fail the Kemper certificate"
    if gs.complete:
        raise ArithmeticError("complete generator set with fewer than n elements")
    return "unknown", f"only {k} generators up to degree {gs.degree_bound_used}"


def _localize(G: MatrixGroup, p: int) -> MatrixGroup:
    if G.domain.kind == LOCALIZED:
        if G.domain.p != p:
            raise DomainError(f"group over {G.domain} cannot be studied at {p}")
        return G
    if G.domain.kind != INTEGERS:
        raise DomainError(f"decision procedures need an integral representation, got {G.domain}")
    return close_group(G.generators, Domain.localized(p))


def _lift_to_lattice(G_loc: MatrixGroup, target: Polynomial) -> Polynomial:
    """A p-integral invariant of the same degree reducing to ``target``."""
    p = G_loc.domain.p
    d = target.degree()
    L = invariant_lattice(G_loc, d)
    # the local Hermite basis is the identity on its pivots, so the
    # coordinates of a class are its pivot coefficients
    coords = [target.terms.get(c, 0) for c in L.pivots]
    lift = Polynomial.zero(G_loc.domain, G_loc.n)
    for a, b in zip(coords, L.basis):
        if a:
            lift = lift + b.scale(a)
    if map_coefficients(lift) != target:
        raise ArithmeticError(f"{target} is not the reduction of a p-integral invariant")
    return lift


def find_obstruction(G_loc: MatrixGroup, gens: Sequence[Polynomial], D: int):
    """Lowest-degree p-integral invariant outside ``ZZ_(p)[gens]``, or ``None``.

    At each degree the products of ``gens`` are compared with the invariant
    lattice ``L_d`` inside ``L_d / p L_d``; the first lattice basis vector whose
    class is missed lies outside the generated ``ZZ_(p)``-module.
    """
    p = G_loc.domain.p
    gens = [g.change_domain(G_loc.domain) for g in gens]
    cache = _ProductCache(gens, G_loc.domain, G_loc.n)
    for d in range(1, D + 1):
        L = invariant_lattice(G_loc, d)
        space = EchelonSpace(p)
        for f in cache.products(d):
            v = {c: _reduce_frac(f.terms.get(c, 0), p) for c in L.pivots}
            space.add({c: x for c, x in v.items() if x})
        if len(space) < L.rank:
            for b, c in zip(L.basis, L.pivots):
                if {c: 1} not in space:
                    return b
    return None


# -- per-prime decision --------------------------------------------------------------------

def decide_dvr(G: MatrixGroup, p: int, D: int | None = None, verify: bool = True,
               k_generators: GeneratorSet | None = None) -> Verdict:
    """Decide whether ``ZZ_(p)[x]^G`` is a polynomial ring.

    Polynomial over QQ and over GF(p) with equal generator degrees gives a
    polynomial ring; an injective reduction with differing degrees (or a
    non-polynomial ring over GF(p)) rules one out.  Anything else is
    reported as inconclusive.
    """
    G_loc = _localize(G, p)
    GQ = G_loc.embed(QQ)
    H, report = reduce_group(G_loc, p)
    n = G.n
    if D is None:
        D = default_degree_bound(H)
    if k_generators is None:
        k_generators = minimal_generators(GQ)
    k_status, k_reason = _status(k_generators, n, GQ.order)
    k_gens = [g.primitive() for g in k_generators.generators]
    lv = LocalVerdict(p, INCONCLUSIVE, list(k_generators.degrees), [], report.injective,
                      k_generators=k_gens, image_order=report.image_order)

    if k_status == "not_polynomial":
        lv.verdict = NOT_POLYNOMIAL
        lv.reason = f"not polynomial over QQ ({k_reason})"
        return _finish(Verdict(NOT_POLYNOMIAL, [lv], D, G.order), G_loc, verify)
    if k_status == "unknown":
        lv.reason = f"invariants over QQ undetermined ({k_reason})"
        return _finish(Verdict(INCONCLUSIVE, [lv], D, G.order), G_loc, verify)

    f_set = minimal_generators(H, D)
    f_status, f_reason = _status(f_set, n, H.order)
    lv.f_degrees = list(f_set.degrees)
    lv.f_generators = list(f_set.generators)

    same = sorted(lv.k_degrees) == sorted(lv.f_degrees)
    if f_status == "polynomial" and same:
        lv.verdict = POLYNOMIAL
        lv.reason = "polynomial over QQ and GF(p) with equal degrees"
        lv.r_generators = [_lift_to_lattice(G_loc, f) for f in f_set.generators]
    elif report.injective and f_status in ("polynomial", "not_polynomial"):
        lv.verdict = NOT_POLYNOMIAL
        lv.reason = ("injective reduction, " + (
            "degrees differ" if f_status == "polynomial" else f"GF(p) ring not polynomial ({f_reason})"))
        lv.obstruction = find_obstruction(G_loc, k_gens, max(D, max(lv.k_degrees, default=1)))
        ind = algebraically_independent([map_coefficients(g.change_domain(G_loc.domain)) for g in k_gens])
        lv.relation = ind.witness.relation
    else:
        lv.reason = (f"GF(p) invariants {f_status} ({f_reason}); "
                     f"reduction {'injective' if report.injective else 'not injective'}")
    return _finish(Verdict(lv.verdict, [lv], D, G.order), G_loc, verify)


def _finish(v: Verdict, G_loc: MatrixGroup, verify: bool) -> Verdict:
    v.group = G_loc
    if verify and v.conclusion in (POLYNOMIAL, NOT_POLYNOMIAL):
        ok = verify_verdict(v, G_loc)
        if not ok:
            raise ArithmeticError("verdict failed certificate re-verification")
        v.certificates_verified = True
    return v


def reynolds_lift(G: MatrixGroup, p: int, f_generators: Sequence[Polynomial]) -> GeneratorSet:
    """Average coefficient-wise preimages of GF(p)-generators over the group."""
    G_loc = _localize(G, p)
    if G_loc.order % p == 0:
        raise CriterionError(f"p = {p} divides |G| = {G_loc.order}")
    out = []
    for f in f_generators:
        pre = Polynomial(G_loc.domain, f.n, dict(f.terms))
        g = reynolds(G_loc, pre)
        if not G_loc.is_invariant(g) or map_coefficients(g) != f:
            raise ArithmeticError(f"Reynolds lift of {f} is not an invariant preimage")
        out.append(g)
    if not check_deg_product_bound(out, G_loc):
        raise ArithmeticError("Reynolds lifts exceed the degree product bound")
    return GeneratorSet(out, [g.degree() for g in out], max((g.degree() for g in out), default=0),
                        G_loc.domain, complete=True, certificate="reynolds")


# -- over the integers ------------------------------------------------------------------------

def decide_over_integers(G: MatrixGroup, D: int | None = None, verify: bool = True) -> Verdict:
    """Aggregate the local verdicts at every prime dividing ``|G|``.

    Primes not dividing ``|G|`` are covered by the nonmodular case, once the
    invariants over QQ are known to form a polynomial ring.
    """
    if G.domain.kind != INTEGERS:
        raise DomainError(f"expected a representation over ZZ, got {G.domain}")
    GQ = G.embed(QQ)
    kset = minimal_generators(GQ)
    k_status, k_reason = _status(kset, G.n, G.order)
    notes = []
    if k_status == "not_polynomial":
        lv = LocalVerdict(0, NOT_POLYNOMIAL, kset.degrees, [], None,
                          k_generators=[g.primitive() for g in kset.generators],
                          reason=f"not polynomial over QQ ({k_reason})")
        v = Verdict(NOT_POLYNOMIAL, [lv], kset.degree_bound_used, G.order, notes=notes, group=G)
        if verify:
            if not verify_verdict(v, G):
                raise ArithmeticError("verdict failed certificate re-verification")
            v.certificates_verified = True
        return v
    if k_status == "unknown":
        return Verdict(INCONCLUSIVE, [], kset.degree_bound_used, G.order, notes=[k_reason], group=G)
    notes.append("primes not dividing |G| give polynomial rings (|G| invertible, "
                 "QQ-invariants polynomial)")
    locals_ = []
    bound = 0
    verified = True
    for p in prime_factors(G.order):
        v = decide_dvr(G, p, D, verify, k_generators=kset)
        locals_.extend(v.primes)
        bound = max(bound, v.degree_bound_used)
        verified = verified and (v.certificates_verified or v.conclusion == INCONCLUSIVE)
    verdicts = [lv.verdict for lv in locals_]
    if any(x == NOT_POLYNOMIAL for x in verdicts):
        conclusion = NOT_POLYNOMIAL
    elif all(x == POLYNOMIAL for x in verdicts):
        conclusion = POLYNOMIAL
    else:
        conclusion = INCONCLUSIVE
    return Verdict(conclusion, locals_, bound or kset.degree_bound_used, G.order, group=G,
                   certificates_verified=verify and verified, notes=notes)


def freeness_check(G: MatrixGroup, p: int, D: int) -> list[int]:
    """Ranks of the free ``ZZ_(p)``-modules of degree-``d`` invariants, ``d <= D``.

    Over a principal ideal domain every degree slice is free, so this is a
    consistency check of the lattice bases rather than an open test.
    """
    G_loc = _localize(G, p)
    ranks = []
    for d in range(D + 1):
        L = invariant_lattice(G_loc, d)
        reds = [map_coefficients(b) for b in L.basis]
        space = EchelonSpace(p)
        if not all(space.add(r.terms) for r in reds):
            raise ArithmeticError(f"lattice basis in degree {d} is not saturated")
        ranks.append(L.rank)
    return ranks


# -- independent re-verification ------------------------------------------------------------

def _invariant_under_all(G: MatrixGroup, f: Polynomial) -> bool:
    f = f.change_domain(G.domain) if f.domain != G.domain else f
    return all(G.act(s, f) == f for s in G.elements)


def _independent_by_jacobian(fs: Sequence[Polynomial]) -> bool | None:
    """Jacobian criterion: decisive in characteristic 0, sufficient in char p."""
    if not fs:
        return True
    n = fs[0].n
    if len(fs) != n:
        return None
    J = determinant([[derivative(f, i) for i in range(n)] for f in fs])
    if not J.is_zero():
        return True
    if fs[0].domain.characteristic == 0:
        return False
    return None


def _independent(fs: Sequence[Polynomial]) -> bool:
    j = _independent_by_jacobian(fs)
    if j is not None:
        return j
    return algebraically_independent(fs).independent


def _r_member(f: Polynomial, gens: Sequence[Polynomial], p: int) -> bool:
    """Membership in ``ZZ_(p)[gens]`` for QQ-independent ``gens``: the unique
    QQ-expression must have p-integral coefficients."""
    m = Subalgebra(_over_field(gens)).membership(f.change_domain(QQ))
    if not m.member:
        return False
    return all(valuation(c, p) >= 0 for c in m.expression.terms.values())


def _minimal_by_groebner(gens: Sequence[Polynomial]) -> bool:
    gens = sorted(_over_field(gens), key=lambda g: g.degree())
    for i, g in enumerate(gens):
        others = [h for j, h in enumerate(gens) if j != i and h.degree() <= g.degree()]
        if others and Subalgebra(others).membership(g).member:
            return False
    return True


def verify_verdict(v: Verdict, G: MatrixGroup | None = None) -> bool:
    """Re-check every witness of a local verdict from scratch."""
    G = G if G is not None else v.group
    if G is None:
        raise CriterionError("the verdict does not record its group")
    for lv in v.primes:
        p = lv.p
        if lv.verdict == NOT_POLYNOMIAL and not lv.f_degrees:
            # decided over QQ: the generators must be minimal and either too
            # many or failing the Kemper certificate
            if not _minimal_by_groebner(lv.k_generators):
                return False
            ks = [g.change_domain(QQ) for g in lv.k_generators]
            if len(ks) == G.n and _independent(ks) and math.prod(lv.k_degrees) == G.order:
                return False
            continue
        if p == 0:
            return False
        G_loc = _localize(G, p)
        if lv.verdict == POLYNOMIAL:
            gens = lv.r_generators
            if len(gens) != G.n:
                return False
            if not all(_invariant_under_all(G_loc, g) for g in gens):
                return False
            if not all(valuation(c, p) >= 0 for g in gens for c in g.terms.values()):
                return False
            if not _independent([g.change_domain(QQ) for g in gens]):
                return False
            if math.prod(g.degree() for g in gens) != G_loc.order:
                return False
            if not _independent([map_coefficients(g.change_domain(G_loc.domain)) for g in gens]):
                return False
        elif lv.verdict == NOT_POLYNOMIAL:
            if sorted(lv.k_degrees) == sorted(lv.f_degrees) and len(lv.f_degrees) == G.n:
                # equal degrees: only a non-polynomial GF(p) ring can justify this
                if _independent(lv.f_generators) and math.prod(lv.f_degrees) == lv.image_order:
                    return False
            h = lv.obstruction
            if h is not None:
                if not _invariant_under_all(G_loc, h):
                    return False
                if not all(valuation(c, p) >= 0 for c in h.terms.values()):
                    return False
                if _r_member(h, lv.k_generators, p):
                    return False
    return True
