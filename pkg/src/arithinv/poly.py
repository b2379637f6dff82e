"""Sparse multivariate polynomials over the domains of :mod:`arithinv.rings`.

A polynomial is a dict from exponent tuples to nonzero raw coefficients.
The engine only knows variable indices; names appear in text I/O only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from .rings import (
    LOCALIZED,
    PRIME_FIELD,
    QQ,
    Domain,
    DomainError,
    Scalar,
    decode_value,
    encode_value,
)

Monomial = tuple


# -- monomial orders --------------------------------------------------------

def _grevlex_key(e):
    return (sum(e), tuple(-a for a in reversed(e)))


@dataclass(frozen=True)
class MonomialOrder:
    """Lex, GrevLex, or a two-block elimination order.

    ``BlockElimination(k)`` compares the first ``k`` exponents by grevlex
    first and breaks ties by grevlex on the rest, so any monomial involving
    the first block beats every monomial free of it.
    """

    kind: str = "GrevLex"
    block_split: int | None = None

    def __post_init__(self):
        if self.kind not in ("Lex", "GrevLex", "BlockElimination"):
            raise ValueError(f"unknown order {self.kind!r}")
        if (self.kind == "BlockElimination") != (self.block_split is not None):
            raise ValueError("block_split is required exactly for BlockElimination")

    def key(self, e: Monomial):
        if self.kind == "GrevLex":
            return _grevlex_key(e)
        if self.kind == "Lex":
            return e
        k = self.block_split
        return (_grevlex_key(e[:k]), _grevlex_key(e[k:]))

    def __str__(self):
        if self.kind == "BlockElimination":
            return f"BlockElimination({self.block_split})"
        return self.kind


LEX = MonomialOrder("Lex")
GREVLEX = MonomialOrder("GrevLex")


def block_order(k: int) -> MonomialOrder:
    return MonomialOrder("BlockElimination", k)


def monomials_of_degree(n: int, d: int) -> list[Monomial]:
    """All exponent vectors of total degree ``d``, grevlex-descending."""
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=_grevlex_key, reverse=True)
    return out


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


# -- polynomials -------------------------------------------------------------

class Polynomial:
    """Immutable sparse polynomial in ``n`` variables."""

    __slots__ = ("domain", "n", "terms", "_hash")

    def __init__(self, domain: Domain, n: int, terms: Mapping | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(a) for a in e)
            if len(e) != n or min(e, default=0) < 0:
                raise ValueError(f"bad exponent vector {e} for {n} variables")
            c = domain.normalize(c)
            if c:
                clean[e] = domain.normalize(clean.get(e, 0) + c)
                if not clean[e]:
                    del clean[e]
        self.domain = domain
        self.n = n
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, domain: Domain, n: int, terms: dict) -> Polynomial:
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj.domain = domain
        obj.n = n
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, domain: Domain, n: int) -> Polynomial:
        return cls._raw(domain, n, {})

    @classmethod
    def constant(cls, domain: Domain, n: int, c) -> Polynomial:
        return cls(domain, n, {(0,) * n: c})

    @classmethod
    def variable(cls, domain: Domain, n: int, i: int) -> Polynomial:
        e = [0] * n
        e[i] = 1
        return cls._raw(domain, n, {tuple(e): 1})

    @classmethod
    def monomial(cls, domain: Domain, e: Monomial, c=1) -> Polynomial:
        return cls(domain, len(e), {tuple(e): c})

    # -- basic queries ----------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return (self.domain == other.domain and self.n == other.n
                    and self.terms == other.terms)
        if isinstance(other, (int, Fraction, Scalar)):
            return self == Polynomial.constant(self.domain, self.n, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.domain, self.n, frozenset(self.terms.items())))
        return self._hash

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coefficient(self, e: Monomial) -> Scalar:
        return Scalar(self.domain, self.terms.get(tuple(e), 0))

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Monomial:
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX):
        return self.terms[self.leading_monomial(order)]

    def variables_used(self) -> set[int]:
        return {i for e in self.terms for i, a in enumerate(e) if a}

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: Polynomial):
        if self.domain != other.domain:
            raise DomainError(f"domain mismatch: {self.domain} vs {other.domain}")
        if self.n != other.n:
            raise ValueError(f"arity mismatch: {self.n} vs {other.n}")

    def _lift(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.domain, self.n, other)

    def __add__(self, other):
        other = self._lift(other)
        p = self.domain.modulus
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if p:
                v %= p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.domain, self.n, _canon(out, self.domain))

    __radd__ = __add__

    def __neg__(self):
        p = self.domain.modulus
        if p:
            return Polynomial._raw(self.domain, self.n, {e: (-c) % p for e, c in self.terms.items()})
        return Polynomial._raw(self.domain, self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        p = self.domain.modulus
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        return Polynomial._raw(self.domain, self.n, _canon(out, self.domain))

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> Polynomial:
        c = self.domain.normalize(c)
        if not c:
            return Polynomial.zero(self.domain, self.n)
        p = self.domain.modulus
        if p:
            out = {e: v * c % p for e, v in self.terms.items()}
        else:
            out = {e: v * c for e, v in self.terms.items()}
        return Polynomial._raw(self.domain, self.n, _canon(out, self.domain))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.domain, self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def monic(self, order: MonomialOrder = GREVLEX) -> Polynomial:
        if not self.terms:
            return self
        return self.scale(self.domain.inv(self.leading_coefficient(order)))

    # -- domain changes ---------------------------------------------------
    def change_domain(self, domain: Domain) -> Polynomial:
        return Polynomial(domain, self.n, self.terms)

    def primitive(self, order: MonomialOrder = GREVLEX) -> Polynomial:
        """Integer-coefficient primitive multiple with positive leading term."""
        if self.domain.modulus or not self.terms:
            return self
        from math import gcd, lcm
        den = 1
        for c in self.terms.values():
            den = lcm(den, Fraction(c).denominator)
        ints = {e: int(Fraction(c) * den) for e, c in self.terms.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        if ints[max(ints, key=order.key)] < 0:
            g = -g
        return Polynomial(self.domain, self.n, {e: Fraction(v, g) for e, v in ints.items()})

    # -- presentation -----------------------------------------------------
    def to_text(self, names: Sequence[str] | None = None) -> str:
        return format_poly(self, names)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Polynomial({self.domain}, {self.n}, {self.to_text()!r})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "domain": self.domain.to_json(),
            "terms": [[list(e), encode_value(c)] for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: dict) -> Polynomial:
        dom = Domain.from_json(data["domain"])
        return cls(dom, data["n"], {tuple(e): decode_value(c) for e, c in data["terms"]})


def _canon(terms: dict, domain: Domain) -> dict:
    if domain.modulus:
        return terms
    # Fractions with unit denominator collapse to int so equality is structural
    return {e: (c.numerator if isinstance(c, Fraction) and c.denominator == 1 else c)
            for e, c in terms.items()}


# -- operations ----------------------------------------------------------------

def arith(f: Polynomial, g: Polynomial, which: str) -> Polynomial:
    if which == "add":
        return f + g
    if which == "sub":
        return f - g
    if which == "mul":
        return f * g
    raise ValueError(f"unknown operation {which!r}")


class LinearSubstitution:
    """Memoized map ``f(x) -> f(M x)`` for a fixed square matrix ``M``.

    Variable ``x_i`` becomes the linear form given by row ``i`` of ``M``.
    Images of monomials are cached, so mapping a whole degree slice costs one
    linear-form multiplication per monomial.
    """

    def __init__(self, matrix: Sequence[Sequence], domain: Domain):
        n = len(matrix)
        if any(len(row) != n for row in matrix):
            raise ValueError("substitution matrix must be square")
        self.n = n
        self.domain = domain
        self.forms = [
            Polynomial(domain, n, {tuple(int(i == j) for i in range(n)): c
                                   for j, c in enumerate(row)})
            for row in matrix
        ]
        self._cache = {(0,) * n: Polynomial.constant(domain, n, 1)}

    def monomial_image(self, e: Monomial) -> Polynomial:
        img = self._cache.get(e)
        if img is None:
            i = next(k for k, a in enumerate(e) if a)
            rest = list(e)
            rest[i] -= 1
            img = self.monomial_image(tuple(rest)) * self.forms[i]
            self._cache[e] = img
        return img

    def __call__(self, f: Polynomial) -> Polynomial:
        if f.n != self.n:
            raise ValueError(f"arity mismatch: polynomial has {f.n} variables, matrix {self.n}")
        p = f.domain.modulus
        out: dict = {}
        for e, c in f.terms.items():
            for e2, c2 in self.monomial_image(e).terms.items():
                out[e2] = out.get(e2, 0) + c * c2
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        return Polynomial._raw(f.domain, f.n, _canon(out, f.domain))


def linear_substitute(f: Polynomial, matrix: Sequence[Sequence]) -> Polynomial:
    """Return ``f(M x)``: each ``x_i`` replaced by ``sum_j M[i][j] x_j``."""
    if len(matrix) != f.n:
        raise ValueError(f"matrix size {len(matrix)} does not match {f.n} variables")
    return LinearSubstitution(matrix, f.domain)(f)


def compose(f: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Substitute ``images[i]`` for variable ``i`` of ``f``."""
    if len(images) != f.n:
        raise ValueError("need one image per variable")
    if not images:
        raise ValueError("cannot compose a polynomial in zero variables")
    target = images[0]
    powers: dict = {}

    def power(i, k):
        key = (i, k)
        if key not in powers:
            powers[key] = images[i] ** k
        return powers[key]

    total = Polynomial.zero(target.domain, target.n)
    for e, c in f.terms.items():
        term = Polynomial.constant(target.domain, target.n, c)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        total = total + term
    return total


def derivative(f: Polynomial, i: int) -> Polynomial:
    out = {}
    for e, c in f.terms.items():
        if e[i]:
            e2 = list(e)
            e2[i] -= 1
            out[tuple(e2)] = f.domain.normalize(c * e[i])
    return Polynomial._raw(f.domain, f.n, {e: c for e, c in out.items() if c})


def determinant(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Laplace expansion; intended for the small Jacobians used here."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * determinant(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def homogeneous_component(f: Polynomial, d: int) -> Polynomial:
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return Polynomial._raw(f.domain, f.n, {e: c for e, c in f.terms.items() if sum(e) == d})


def map_coefficients(f: Polynomial, p: int | None = None) -> Polynomial:
    """Coefficient-wise reduction of a p-integral polynomial into GF(p)."""
    if p is None:
        if f.domain.kind != LOCALIZED:
            raise DomainError(f"need a prime to reduce a polynomial over {f.domain}")
        p = f.domain.p
    elif f.domain.kind == LOCALIZED and f.domain.p != p:
        raise DomainError(f"cannot reduce {f.domain} modulo {p}")
    if f.domain.kind == PRIME_FIELD:
        raise DomainError("polynomial is already over a prime field")
    return Polynomial(Domain.prime_field(p), f.n, f.terms)


def embed_rationals(f: Polynomial) -> Polynomial:
    if f.domain.kind == PRIME_FIELD:
        raise DomainError("a prime field does not embed into QQ")
    return Polynomial._raw(QQ, f.n, f.terms)


# -- text format ---------------------------------------------------------------

def default_names(n: int) -> list[str]:
    base = ["x", "y", "z"]
    if n <= 3:
        return base[:n]
    return base + [f"x{i}" for i in range(4, n + 1)]


def tag_names(m: int) -> list[str]:
    return [f"y{i}" for i in range(1, m + 1)]


def format_poly(f: Polynomial, names: Sequence[str] | None = None) -> str:
    if not f.terms:
        return "0"
    names = list(names) if names is not None else default_names(f.n)
    p = f.domain.modulus
    parts = []
    for e, c in f.sorted_terms():
        if p and c > p // 2 and p > 2:
            c = c - p
        factors = []
        for name, a in zip(names, e):
            if a == 1:
                factors.append(name)
            elif a > 1:
                factors.append(f"{name}^{a}")
        mono = "*".join(factors)
        neg = c < 0
        mag = -c if neg else c
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{encode_value(mag)}*{mono}"
        else:
            body = encode_value(mag)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()]))")


class _Parser:
    def __init__(self, text, domain, names):
        self.domain = domain
        self.names = list(names)
        self.n = len(self.names)
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text):
        out = []
        pos = 0
        text = text.strip()
        by_len = sorted(self.names, key=len, reverse=True)
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
            num, ident, op = m.groups()
            if num is not None:
                out.append(("num", num))
            elif op is not None:
                out.append(("op", "^" if op == "**" else op))
            else:
                # split run-together identifiers such as "xy" into known names
                word = ident
                while word:
                    for name in by_len:
                        if word.startswith(name):
                            out.append(("var", name))
                            word = word[len(name):]
                            break
                    else:
                        raise ValueError(f"unknown variable in {ident!r}")
            pos = m.end()
            while pos < len(text) and text[pos].isspace():
                pos += 1
        return out

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self):
        f = self.expr()
        if self.pos != len(self.tokens):
            raise ValueError(f"unexpected token {self.peek()[1]!r}")
        return f

    def expr(self):
        kind, val = self.peek()
        sign = 1
        if (kind, val) in (("op", "-"), ("op", "+")):
            self.take()
            sign = -1 if val == "-" else 1
        f = self.term().scale(sign)
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            t = self.term()
            f = f + t if op == "+" else f - t
        return f

    def term(self):
        f = self.factor()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                f = f * self.factor()
            elif kind in ("num", "var") or (kind, val) == ("op", "("):
                f = f * self.factor()
            else:
                return f

    def factor(self):
        base = self.base()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or "/" in val:
                raise ValueError("exponent must be a nonnegative integer")
            base = base ** int(val)
        return base

    def base(self):
        kind, val = self.take()
        if kind == "num":
            return Polynomial.constant(self.domain, self.n, Fraction(val))
        if kind == "var":
            return Polynomial.variable(self.domain, self.n, self.names.index(val))
        if (kind, val) == ("op", "("):
            f = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return f
        if (kind, val) == ("op", "-"):
            return -self.factor()
        raise ValueError(f"unexpected token {val!r}")


def parse_poly(text: str, domain: Domain, n: int | None = None,
               names: Iterable[str] | None = None) -> Polynomial:
    """Parse e.g. ``"x^2+3*x*y+3y^2"``; ``*`` is optional between factors."""
    if names is None:
        if n is None:
            raise ValueError("give either n or names")
        names = default_names(n)
    return _Parser(text, domain, names).parse()
