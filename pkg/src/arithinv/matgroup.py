"""Finite matrix groups materialized by closure, their action on
polynomials, and reduction of an integral representation modulo a prime."""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .linalg import rank as _rank
from .poly import LinearSubstitution, Polynomial
from .rings import INTEGERS, LOCALIZED, QQ, Domain, DomainError

Matrix = tuple  # tuple of row tuples of raw domain values


class GroupError(ValueError):
    """Closure failed, or a matrix is not invertible over its domain."""


def as_matrix(rows, domain: Domain) -> Matrix:
    m = tuple(tuple(domain.normalize(c) for c in row) for row in rows)
    if any(len(r) != len(m) for r in m):
        raise GroupError("matrices must be square")
    return m


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix, p: int | None = None) -> Matrix:
    n = len(a)
    cols = list(zip(*b))
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            s = sum(x * y for x, y in zip(a[i], cols[j]))
            if p:
                s %= p
            elif isinstance(s, Fraction) and s.denominator == 1:
                s = s.numerator
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def mat_inverse(a: Matrix, p: int | None = None) -> Matrix | None:
    """Gauss-Jordan inverse over QQ (or GF(p)); ``None`` if singular."""
    n = len(a)
    norm = (lambda v: v % p) if p else (lambda v: v)
    inv = (lambda v: pow(v, -1, p)) if p else (lambda v: Fraction(1) / v)
    aug = [[x if p else Fraction(x) for x in row] + [int(i == j) for j in range(n)]
           for i, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if norm(aug[r][c])), None)
        if piv is None:
            return None
        aug[c], aug[piv] = aug[piv], aug[c]
        s = inv(aug[c][c])
        aug[c] = [norm(v * s) for v in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                t = aug[r][c]
                aug[r] = [norm(x - t * y) for x, y in zip(aug[r], aug[c])]
    out = []
    for row in aug:
        vals = []
        for v in row[n:]:
            if not p and isinstance(v, Fraction) and v.denominator == 1:
                v = v.numerator
            vals.append(v)
        out.append(tuple(vals))
    return tuple(out)


def mat_rank(a: Matrix, p: int | None = None) -> int:
    return _rank([{j: v for j, v in enumerate(row) if v} for row in a], p)


def mat_sub_identity(a: Matrix, p: int | None = None) -> Matrix:
    n = len(a)
    return tuple(
        tuple(((a[i][j] - int(i == j)) % p) if p else a[i][j] - int(i == j) for j in range(n))
        for i in range(n)
    )


@dataclass(frozen=True)
class ReductionReport:
    p: int
    image_order: int
    injective: bool

    def to_json(self) -> dict:
        return {"p": self.p, "image_order": self.image_order, "injective": self.injective}


@dataclass
class MatrixGroup:
    n: int
    domain: Domain
    generators: list[Matrix]
    elements: list[Matrix]
    _index: dict = field(default_factory=dict, repr=False)
    _inverses: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {g: i for i, g in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, m) -> bool:
        return as_matrix(m, self.domain) in self._index

    @property
    def modulus(self) -> int | None:
        return self.domain.modulus

    def mul(self, a: Matrix, b: Matrix) -> Matrix:
        return mat_mul(a, b, self.modulus)

    def inverse(self, a: Matrix) -> Matrix:
        inv = self._inverses.get(a)
        if inv is None:
            inv = mat_inverse(a, self.modulus)
            self._inverses[a] = inv
        return inv

    def identity(self) -> Matrix:
        return identity(self.n)

    # -- action ------------------------------------------------------------
    def substitution(self, sigma: Matrix) -> LinearSubstitution:
        """The map ``f -> sigma . f``, i.e. ``f(x) -> f(sigma^-1 x)``."""
        return LinearSubstitution(self.inverse(sigma), self.domain)

    def act(self, sigma: Matrix, f: Polynomial) -> Polynomial:
        return act(sigma, f, self)

    def is_invariant(self, f: Polynomial) -> bool:
        return all(self.act(g, f) == f for g in self.generators)

    # -- structure ------------------------------------------------------------
    def pseudoreflections(self) -> list[Matrix]:
        return [g for g in self.elements if is_pseudoreflection(g, self.modulus)]

    def generated_by_pseudoreflections(self) -> bool:
        refl = self.pseudoreflections()
        if not refl:
            return self.order == 1
        return close_group(refl, self.domain).order == self.order

    def embed(self, domain: Domain) -> MatrixGroup:
        """The same matrices viewed over a larger characteristic-zero domain."""
        if self.modulus or domain.modulus:
            raise DomainError("can only re-embed characteristic zero groups")
        gens = [as_matrix(g, domain) for g in self.generators]
        els = [as_matrix(g, domain) for g in self.elements]
        return MatrixGroup(self.n, domain, gens, els)

    def to_json(self) -> dict:
        from .rings import encode_value
        return {
            "n": self.n,
            "domain": self.domain.to_json(),
            "generators": [[[encode_value(c) for c in row] for row in g] for g in self.generators],
        }


def close_group(generators: Sequence, domain: Domain | None = None,
                max_order: int = 100000) -> MatrixGroup:
    """Breadth-first closure of the generated matrix group."""
    domain = domain or QQ
    gens = [as_matrix(g, domain) for g in generators]
    if not gens:
        raise GroupError("need at least one generator")
    n = len(gens[0])
    if any(len(g) != n for g in gens):
        raise GroupError("generators have different sizes")
    p = domain.modulus
    for g in gens:
        inv = mat_inverse(g, p)
        if inv is None:
            raise GroupError(f"generator {g} is singular")
        if not all(domain.contains(c) for row in inv for c in row):
            raise GroupError(f"generator {g} is not invertible over {domain}")
    one = identity(n)
    if not p:
        limit = max_element_order(n)
        for g in gens:
            if not _has_order_at_most(g, limit):
                raise GroupError(f"generator {g} has infinite order")
    seen = {one}
    elements = [one]
    queue = deque([one])
    while queue:
        a = queue.popleft()
        for g in gens:
            b = mat_mul(a, g, p)
            if b not in seen:
                seen.add(b)
                elements.append(b)
                if len(elements) > max_order:
                    raise GroupError(f"closure exceeds {max_order} elements")
                queue.append(b)
    return MatrixGroup(n, domain, gens, elements)


def _phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)


def max_element_order(n: int) -> int:
    """Largest order of a finite-order element of GL_n(QQ).

    Such an element is a block sum of cyclotomic companions of sizes
    ``phi(m_i)``, so its order is the largest lcm of the ``m_i`` with
    ``sum phi(m_i) <= n``.
    """
    sizes = [(m, _phi(m)) for m in range(1, 4 * n * n + 3) if _phi(m) <= n]
    best = {0: 1}
    for m, w in sizes:
        for used, order in list(best.items()):
            if used + w <= n:
                cand = math.lcm(order, m)
                if cand > best.get(used + w, 0):
                    best[used + w] = cand
    return max(best.values())


def _has_order_at_most(g: Matrix, limit: int) -> bool:
    one = identity(len(g))
    a = g
    for _ in range(limit):
        if a == one:
            return True
        a = mat_mul(a, g)
    return False


def act(sigma: Matrix, f: Polynomial, group: MatrixGroup | None = None) -> Polynomial:
    """``(sigma . f)(a) = f(sigma^-1 a)``."""
    if len(sigma) != f.n:
        raise ValueError(f"{len(sigma)}x{len(sigma)} matrix cannot act on {f.n} variables")
    p = f.domain.modulus
    inv = group.inverse(sigma) if group is not None else mat_inverse(sigma, p)
    return LinearSubstitution(inv, f.domain)(f)


def is_pseudoreflection(sigma: Matrix, p: int | None = None) -> bool:
    """``rank(sigma - 1) == 1`` over the fraction field."""
    return mat_rank(mat_sub_identity(sigma, p), p) == 1


def reduce_matrix(m: Matrix, p: int) -> Matrix:
    f = Domain.prime_field(p)
    return tuple(tuple(f.normalize(c) for c in row) for row in m)


def reduce_group(G: MatrixGroup, p: int) -> tuple[MatrixGroup, ReductionReport]:
    """Entry-wise reduction of an integral representation modulo ``p``."""
    if G.domain.kind not in (INTEGERS, LOCALIZED):
        raise DomainError(f"cannot reduce a group over {G.domain}")
    if G.domain.kind == LOCALIZED and G.domain.p != p:
        raise DomainError(f"group over {G.domain} does not reduce modulo {p}")
    F = Domain.prime_field(p)
    image = {}
    for g in G.elements:
        r = reduce_matrix(g, p)
        if mat_inverse(r, p) is None:
            raise GroupError(f"element {g} reduces to a singular matrix modulo {p}")
        image.setdefault(r, None)
    red = close_group([reduce_matrix(g, p) for g in G.generators], F)
    if set(red.elements) != set(image):
        raise ArithmeticError("reduced closure differs from the image set")
    return red, ReductionReport(p, red.order, red.order == G.order)


def load_representation(source) -> MatrixGroup:
    """Read ``{"n", "domain", "generators"}`` from a path, JSON text or dict."""
    from .rings import decode_value
    if isinstance(source, (str, Path)) and Path(source).exists():
        data = json.loads(Path(source).read_text())
    elif isinstance(source, str):
        data = json.loads(source)
    else:
        data = source
    try:
        n = int(data["n"])
        domain = Domain.from_json(data["domain"])
        gens = [[[decode_value(c) for c in row] for row in g] for g in data["generators"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed representation: {exc}") from exc
    if any(len(g) != n or any(len(row) != n for row in g) for g in gens):
        raise ValueError(f"generators must be {n}x{n}")
    return close_group(gens, domain)
