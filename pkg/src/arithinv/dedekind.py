"""Ideals of imaginary quadratic rings ``ZZ[sqrt(d)]`` in Hermite normal form.

An element ``a + b*sqrt(d)`` is the pair ``(a, b)``.  An ideal is stored as
the HNF ``[[a, b], [0, c]]`` of its ZZ-lattice: it is spanned by
``a + b*sqrt(d)`` and ``c*sqrt(d)``, with ``a, c > 0`` and ``0 <= b < c``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .rings import is_prime, valuation

Element = tuple  # (a, b) meaning a + b*sqrt(d)


def _squarefree(n: int) -> bool:
    n = abs(n)
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class QuadraticRing:
    d: int

    def __post_init__(self):
        if self.d >= 0:
            raise ValueError("only imaginary quadratic rings (d < 0) are supported")
        if not _squarefree(self.d):
            raise ValueError(f"{self.d} is not squarefree")
        if self.d % 4 == 1:
            raise ValueError(f"ZZ[sqrt({self.d})] is not the maximal order (d = 1 mod 4)")

    def mul(self, x: Element, y: Element) -> Element:
        a, b = x
        c, e = y
        return (a * c + self.d * b * e, a * e + b * c)

    def add(self, x: Element, y: Element) -> Element:
        return (x[0] + y[0], x[1] + y[1])

    def norm(self, x: Element) -> int:
        return x[0] * x[0] - self.d * x[1] * x[1]

    def conj(self, x: Element) -> Element:
        return (x[0], -x[1])

    def divide(self, x: Element, y: Element) -> tuple[Fraction, Fraction]:
        """Coordinates of ``x / y`` in the basis ``1, sqrt(d)``."""
        num = self.mul(x, self.conj(y))
        n = self.norm(y)
        return (Fraction(num[0], n), Fraction(num[1], n))

    def format(self, x: Element) -> str:
        a, b = x
        root = f"sqrt({self.d})"
        if b == 0:
            return str(a)
        bs = root if abs(b) == 1 else f"{abs(b)}*{root}"
        if a == 0:
            return ("-" if b < 0 else "") + bs
        return f"{a} {'-' if b < 0 else '+'} {bs}"

    def parse(self, text: str) -> Element:
        """Parse ``"1+sqrt(-5)"``, ``"3-2s"`` or ``"2"`` (``s`` = sqrt(d))."""
        from .poly import parse_poly
        from .rings import ZZ
        t = re.sub(r"sqrt\(\s*-?\d+\s*\)", "s", text.replace(" ", ""))
        f = parse_poly(t, ZZ, names=["s"])
        a = b = 0
        for (k,), c in f.terms.items():
            v = c * self.d ** (k // 2)
            if k % 2:
                b += v
            else:
                a += v
        return (int(a), int(b))

    def __str__(self):
        return f"ZZ[sqrt({self.d})]"


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf(vectors: Iterable[Element]) -> tuple[tuple[int, int], tuple[int, int]]:
    """Hermite normal form of a full-rank sublattice of ZZ^2."""
    lead = None  # row carrying the gcd of first coordinates
    second = 0   # gcd of second coordinates of rows with first coordinate 0
    for v in vectors:
        v = (int(v[0]), int(v[1]))
        if lead is None:
            if v[0]:
                lead = v
            else:
                second = math.gcd(second, v[1])
            continue
        if v[0] == 0:
            second = math.gcd(second, v[1])
            continue
        g, u, w = _xgcd(lead[0], v[0])
        new = (u * lead[0] + w * v[0], u * lead[1] + w * v[1])
        rest = ((v[0] // g) * lead[1] - (lead[0] // g) * v[1])
        second = math.gcd(second, rest)
        lead = new
    if lead is None or second == 0:
        raise ValueError("vectors do not span a full-rank lattice")
    if lead[0] < 0:
        lead = (-lead[0], -lead[1])
    return ((lead[0], lead[1] % second), (0, second))


@dataclass(frozen=True)
class QuadIdeal:
    ring: QuadraticRing
    basis: tuple[tuple[int, int], tuple[int, int]]

    @property
    def elements(self) -> tuple[Element, Element]:
        (a, b), (_, c) = self.basis
        return ((a, b), (0, c))

    def norm(self) -> int:
        return self.basis[0][0] * self.basis[1][1]

    def is_unit(self) -> bool:
        return self.norm() == 1

    def contains(self, x: Element) -> bool:
        (a, b), (_, c) = self.basis
        if x[0] % a:
            return False
        k = x[0] // a
        return (x[1] - k * b) % c == 0

    def is_ideal(self) -> bool:
        s = (0, 1)
        return all(self.contains(self.ring.mul(s, e)) for e in self.elements)

    def __mul__(self, other: QuadIdeal) -> QuadIdeal:
        return ideal_mul(self, other)

    def __pow__(self, m: int) -> QuadIdeal:
        return ideal_pow(self, m)

    def __str__(self):
        g1, g2 = self.elements
        return f"<{self.ring.format(g1)}, {self.ring.format(g2)}>"

    def to_json(self) -> dict:
        return {"d": self.ring.d, "hnf": [list(r) for r in self.basis], "norm": self.norm()}


def ideal_from_generators(ring: QuadraticRing, gens: Sequence[Element]) -> QuadIdeal:
    """The ideal generated by ``gens``: HNF of ``{g, g*sqrt(d)}``."""
    gens = [tuple(int(x) for x in g) for g in gens]
    if not any(a or b for a, b in gens):
        raise ValueError("the zero ideal is excluded")
    vecs = []
    for g in gens:
        vecs.append(g)
        vecs.append(ring.mul(g, (0, 1)))
    return QuadIdeal(ring, hnf(vecs))


def unit_ideal(ring: QuadraticRing) -> QuadIdeal:
    return QuadIdeal(ring, ((1, 0), (0, 1)))


def ideal_mul(A: QuadIdeal, B: QuadIdeal) -> QuadIdeal:
    if A.ring != B.ring:
        raise ValueError("ideals live in different rings")
    r = A.ring
    return QuadIdeal(r, hnf(r.mul(x, y) for x in A.elements for y in B.elements))


def ideal_pow(A: QuadIdeal, m: int) -> QuadIdeal:
    if m < 0:
        raise ValueError("negative ideal power")
    out = unit_ideal(A.ring)
    for _ in range(m):
        out = ideal_mul(out, A)
    return out


@dataclass(frozen=True)
class Principality:
    principal: bool
    generator: Element | None = None

    def __bool__(self):
        return self.principal


def elements_of_norm(ring: QuadraticRing, N: int) -> list[Element]:
    """All ``a + b sqrt(d)`` with ``a^2 - d b^2 = N`` (finite: the form is definite)."""
    out = []
    b = 0
    while -ring.d * b * b <= N:
        rest = N + ring.d * b * b
        a = math.isqrt(rest)
        if a * a == rest:
            for sa in {a, -a}:
                for sb in {b, -b}:
                    out.append((sa, sb))
        b += 1
    return sorted(set(out), key=lambda x: (abs(x[0]), abs(x[1]), -x[0], -x[1]))


def is_principal(A: QuadIdeal) -> Principality:
    for g in elements_of_norm(A.ring, A.norm()):
        if ideal_from_generators(A.ring, [g]) == A:
            return Principality(True, g)
    return Principality(False)


def primes_above(ring: QuadraticRing, q: int) -> list[QuadIdeal]:
    """Primes over ``q`` from the factorization of ``x^2 - d`` modulo ``q``."""
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    roots = [r for r in range(q) if (r * r - ring.d) % q == 0]
    if not roots:
        return [ideal_from_generators(ring, [(q, 0)])]
    return sorted({ideal_from_generators(ring, [(q, 0), (-r, 1)]) for r in roots},
                  key=lambda I: I.basis)


@dataclass
class LocalGenerator:
    ideal: QuadIdeal
    q: int
    generator: Element
    primes: list[QuadIdeal]
    certified: bool

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "generator": self.ideal.ring.format(self.generator),
            "primes_above": [str(P) for P in self.primes],
            "certified": self.certified,
        }


def certify_local_generator(A: QuadIdeal, g: Element, q: int) -> bool:
    """``A`` and ``g`` generate the same ideal after inverting integers prime to ``q``.

    ``g`` must lie in ``A``, and every HNF basis element divided by ``g`` must
    have coordinates without ``q`` in the denominator.  Since ZZ[sqrt(d)]
    is the maximal order this holds at every prime above ``q`` at once.
    """
    if not A.contains(g):
        return False
    for b in A.elements:
        x, y = A.ring.divide(b, g)
        if valuation(x, q) < 0 or valuation(y, q) < 0:
            return False
    return True


def local_principal_generator(A: QuadIdeal, q: int, search: int = 50) -> LocalGenerator:
    """An element of ``A`` that generates it locally at the primes above ``q``.

    Candidates are small combinations of the HNF basis in order of norm; the
    first whose norm has the same ``q``-valuation as ``N(A)`` works, because
    then ``(g) = A*J`` with ``J`` prime to ``q``.
    """
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    r = A.ring
    e1, e2 = A.elements
    cands = set()
    for i in range(-search, search + 1):
        for j in range(-search, search + 1):
            if i or j:
                cands.add((i * e1[0] + j * e2[0], i * e1[1] + j * e2[1]))
    target = valuation(A.norm(), q)
    for g in sorted(cands, key=lambda x: (r.norm(x), abs(x[0]), abs(x[1]), -x[0], -x[1])):
        if valuation(r.norm(g), q) == target:
            return LocalGenerator(A, q, g, primes_above(r, q), certify_local_generator(A, g, q))
    raise ArithmeticError(f"no local generator of {A} at {q} within the search box")


def blowup_grading_check(A: QuadIdeal, m_max: int) -> dict:
    """Multiplicativity ``I^a I^b = I^(a+b)``, norms ``N(I^m) = N(I)^m`` and
    the principality pattern of the powers up to ``m_max``."""
    if m_max < 2:
        raise ValueError("m_max must be at least 2")
    powers = [unit_ideal(A.ring)]
    for _ in range(m_max):
        powers.append(ideal_mul(powers[-1], A))
    products_ok = all(
        ideal_mul(powers[a], powers[b]) == powers[a + b]
        for a in range(1, m_max) for b in range(1, m_max - a + 1)
    )
    norms_ok = all(powers[m].norm() == A.norm() ** m for m in range(m_max + 1))
    pattern = []
    for m in range(m_max + 1):
        pr = is_principal(powers[m])
        pattern.append({
            "m": m,
            "hnf": [list(r) for r in powers[m].basis],
            "norm": powers[m].norm(),
            "principal": pr.principal,
            "generator": A.ring.format(pr.generator) if pr.principal else None,
        })
    return {
        "ideal": str(A),
        "m_max": m_max,
        "products_consistent": products_ok,
        "norms_multiplicative": norms_ok,
        "powers": pattern,
    }
