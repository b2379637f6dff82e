"""Exact coefficient domains: the integers, the rationals, prime fields and
the localization of the integers at a prime.

Coefficients are carried around as plain Python values so the polynomial
kernels stay fast: characteristic-zero domains use ``int`` (when integral)
or ``Fraction``; a prime field uses an ``int`` in ``[0, p)``.  The
:class:`Scalar` wrapper is the checked, user-facing form of such a value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Number = Union[int, Fraction]

INTEGERS = "Integers"
RATIONALS = "Rationals"
PRIME_FIELD = "PrimeField"
LOCALIZED = "LocalizedIntegers"

_KINDS = (INTEGERS, RATIONALS, PRIME_FIELD, LOCALIZED)


class DomainError(ValueError):
    """A value does not belong to the domain it was attached to."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``|n|`` in increasing order."""
    n = abs(n)
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def _vp_int(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(c, p: int) -> float | int:
    """p-adic valuation of a rational number; ``math.inf`` for zero."""
    if isinstance(c, Scalar):
        if c.domain.kind == PRIME_FIELD:
            raise DomainError("valuation is undefined on a prime field")
        c = c.value
    c = Fraction(c)
    if c == 0:
        return math.inf
    return _vp_int(c.numerator, p) - _vp_int(c.denominator, p)


@dataclass(frozen=True)
class Domain:
    """Descriptor of a coefficient domain."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown domain kind {self.kind!r}")
        needs_p = self.kind in (PRIME_FIELD, LOCALIZED)
        if needs_p != (self.p is not None):
            raise ValueError(f"{self.kind} {'needs' if needs_p else 'takes no'} prime")
        if needs_p and not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    # -- constructors ---------------------------------------------------
    @classmethod
    def integers(cls) -> Domain:
        return cls(INTEGERS)

    @classmethod
    def rationals(cls) -> Domain:
        return cls(RATIONALS)

    @classmethod
    def prime_field(cls, p: int) -> Domain:
        return cls(PRIME_FIELD, p)

    @classmethod
    def localized(cls, p: int) -> Domain:
        return cls(LOCALIZED, p)

    # -- properties -----------------------------------------------------
    @property
    def is_field(self) -> bool:
        return self.kind in (RATIONALS, PRIME_FIELD)

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == PRIME_FIELD else 0

    @property
    def modulus(self) -> int | None:
        """The prime modulus of a prime field, ``None`` otherwise."""
        return self.p if self.kind == PRIME_FIELD else None

    def fraction_field(self) -> Domain:
        if self.kind == PRIME_FIELD:
            return self
        return Domain.rationals()

    def residue_field(self, p: int | None = None) -> Domain:
        q = self.p if p is None else p
        if self.kind == LOCALIZED and q != self.p:
            raise DomainError(f"{self} has no residue field at {q}")
        if self.kind not in (LOCALIZED, INTEGERS):
            raise DomainError(f"{self} has no residue field")
        return Domain.prime_field(q)

    # -- raw value handling ---------------------------------------------
    def normalize(self, v) -> Number:
        """Canonical raw value of ``v`` in this domain, with membership check."""
        if isinstance(v, Scalar):
            v = v.value
        if self.kind == PRIME_FIELD:
            if isinstance(v, Fraction):
                if v.denominator % self.p == 0:
                    raise DomainError(f"{v} is not defined modulo {self.p}")
                return v.numerator * pow(v.denominator, -1, self.p) % self.p
            return int(v) % self.p
        if isinstance(v, float):
            raise DomainError("floating point coefficients are not exact")
        if isinstance(v, str):
            v = Fraction(v)
        v = Fraction(v) if not isinstance(v, int) else v
        if isinstance(v, Fraction):
            if v.denominator == 1:
                v = v.numerator
            elif self.kind == INTEGERS:
                raise DomainError(f"{v} is not an integer")
            elif self.kind == LOCALIZED and v.denominator % self.p == 0:
                raise DomainError(f"{v} is not {self.p}-integral")
        return v

    def contains(self, v) -> bool:
        try:
            self.normalize(v)
        except DomainError:
            return False
        return True

    def inv(self, v: Number) -> Number:
        if v == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.kind == PRIME_FIELD:
            return pow(v, -1, self.p)
        return self.normalize(Fraction(1) / v)

    def __str__(self) -> str:
        return {
            INTEGERS: "ZZ",
            RATIONALS: "QQ",
            PRIME_FIELD: f"GF({self.p})",
            LOCALIZED: f"ZZ_({self.p})",
        }[self.kind]

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.p is not None:
            out["p"] = self.p
        return out

    @classmethod
    def from_json(cls, data) -> Domain:
        if isinstance(data, str):
            data = {"kind": data}
        return cls(data["kind"], data.get("p"))


QQ = Domain.rationals()
ZZ = Domain.integers()


class Scalar:
    """An immutable, normalized element of a coefficient domain."""

    __slots__ = ("domain", "value")

    def __init__(self, domain: Domain, value):
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "value", domain.normalize(value))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _coerce(self, other) -> Number:
        if isinstance(other, Scalar):
            if other.domain != self.domain:
                raise DomainError(f"cannot mix {self.domain} and {other.domain}")
            return other.value
        return self.domain.normalize(other)

    def __add__(self, other):
        return Scalar(self.domain, self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.domain, self.value - self._coerce(other))

    def __rsub__(self, other):
        return Scalar(self.domain, self._coerce(other) - self.value)

    def __mul__(self, other):
        return Scalar(self.domain, self.value * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.domain, -self.value)

    def inverse(self) -> Scalar:
        return Scalar(self.domain, self.domain.inv(self.value))

    def __truediv__(self, other):
        return self * Scalar(self.domain, self._coerce(other)).inverse()

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.domain == other.domain and self.value == other.value
        try:
            return self.value == self.domain.normalize(other)
        except (DomainError, TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.domain, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Scalar({self.domain}, {self.value})"

    def __str__(self):
        return str(self.value)

    def to_json(self) -> str:
        return encode_value(self.value)

    @classmethod
    def from_json(cls, domain: Domain, text: str) -> Scalar:
        return cls(domain, decode_value(text))


def reduce_mod_p(c, p: int | None = None) -> Scalar:
    """Image of a p-integral rational under the projection onto GF(p)."""
    if isinstance(c, Scalar):
        if c.domain.kind == INTEGERS:
            if p is None:
                raise ValueError("a prime is needed to reduce an integer")
        elif c.domain.kind != LOCALIZED:
            raise DomainError(f"cannot reduce an element of {c.domain}")
        p = c.domain.p if p is None else p
        value = c.value
    else:
        value = c
    value = Fraction(value)
    if value.denominator % p == 0:
        raise DomainError(f"{value} has a denominator divisible by {p}")
    return Scalar(Domain.prime_field(p), value)


def encode_value(v: Number) -> str:
    """Text encoding: ``"7"`` for integers and ``"3/4"`` for rationals."""
    v = Fraction(v)
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def decode_value(text) -> Number:
    if isinstance(text, int):
        return text
    v = Fraction(str(text).strip())
    return v.numerator if v.denominator == 1 else v
