"""Sparse exact linear algebra over QQ, GF(p) and the local ring ZZ_(p).

Vectors are dicts ``{column: value}`` with no zero entries.  Columns are any
hashable, totally ordered keys (monomials in practice); a ``key`` function
fixes which column counts as leading.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Hashable, Iterable

from .rings import valuation


def _norm(v, p):
    if p:
        return v % p
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


def _inv(v, p):
    return pow(v, -1, p) if p else Fraction(1) / v


def axpy(y: dict, a, x: dict, p: int | None) -> dict:
    """Return ``y + a*x`` as a new sparse vector."""
    out = dict(y)
    for k, v in x.items():
        s = _norm(out.get(k, 0) + a * v, p)
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def scale(x: dict, a, p: int | None) -> dict:
    return {k: _norm(a * v, p) for k, v in x.items()} if a else {}


class EchelonSpace:
    """Incrementally built subspace of a coordinate space over a field.

    Rows are kept fully reduced with monic pivots, so the stored basis is
    the canonical reduced echelon basis of the span.  ``p=None`` means QQ.
    """

    def __init__(self, p: int | None = None, key: Callable = lambda c: c):
        self.p = p
        self.key = key
        self.rows: dict[Hashable, dict] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        v = dict(v)
        for piv in [c for c in v if c in self.rows]:
            a = v.get(piv, 0)
            if a:
                v = axpy(v, -a, self.rows[piv], self.p)
        return v

    def coordinates(self, v: dict) -> dict | None:
        """Express ``v`` in the stored basis (keyed by pivot), or ``None``."""
        r = dict(v)
        coords = {}
        for piv in [c for c in r if c in self.rows]:
            a = r.get(piv, 0)
            if a:
                coords[piv] = a
                r = axpy(r, -a, self.rows[piv], self.p)
        return None if r else coords

    def __contains__(self, v: dict) -> bool:
        return not self.reduce(v)

    def add(self, v: dict) -> bool:
        """Insert ``v``; report whether the dimension grew."""
        r = self.reduce(v)
        if not r:
            return False
        piv = max(r, key=self.key)
        r = scale(r, _inv(r[piv], self.p), self.p)
        for k, row in list(self.rows.items()):
            a = row.get(piv, 0)
            if a:
                self.rows[k] = axpy(row, -a, r, self.p)
        self.rows[piv] = r
        return True

    def basis(self) -> list[dict]:
        """Reduced echelon basis, leading column descending."""
        return [self.rows[k] for k in sorted(self.rows, key=self.key, reverse=True)]


def rank(vectors: Iterable[dict], p: int | None = None) -> int:
    space = EchelonSpace(p)
    for v in vectors:
        space.add(v)
    return len(space)


def kernel(rows: Iterable[dict], columns: list, p: int | None = None) -> list[dict]:
    """Basis of ``{c : sum_j row[j] c[j] = 0 for all rows}``.

    ``columns`` lists the unknowns in increasing leading order.  The result
    is reduced echelon with respect to the *last* column being leading:
    each vector has coefficient 1 at its own free column and 0 at the
    other free columns.
    """
    position = {c: i for i, c in enumerate(columns)}
    rows = [r for r in rows if r]
    # pivots are chosen at the smallest column index so the free columns
    # sit at the top of the order
    if not p and all(type(v) is int for r in rows for v in r.values()):
        pivots = _integer_echelon(rows, position)
    else:
        space = EchelonSpace(p, key=lambda c: -position[c])
        for r in rows:
            space.add(r)
        pivots = space.rows
    out = []
    for c in columns:
        if c in pivots:
            continue
        vec = {c: 1}
        for piv, row in pivots.items():
            a = row.get(c, 0)
            if a:
                vec[piv] = _norm(Fraction(-a, row[piv]) if row[piv] != 1 else -a, p)
        out.append(vec)
    out.sort(key=lambda v: position[max(v, key=position.__getitem__)], reverse=True)
    return out


def _primitive_row(r: dict) -> dict:
    g = 0
    for v in r.values():
        g = math.gcd(g, v)
        if g == 1:
            return r
    return {k: v // g for k, v in r.items()}


def _integer_echelon(rows: list[dict], position: dict) -> dict:
    """Fraction-free reduced echelon form of integer rows over QQ.

    Rows stay primitive integer vectors; pivot entries need not be 1.
    """
    piv_rows: dict = {}
    for r in rows:
        r = dict(r)
        for c in sorted((c for c in r if c in piv_rows), key=position.__getitem__):
            a = r.get(c, 0)
            if not a:
                continue
            R = piv_rows[c]
            b = R[c]
            g = math.gcd(a, b)
            ma, mb = b // g, a // g
            new = {k: v * ma for k, v in r.items()}
            for k, v in R.items():
                s = new.get(k, 0) - mb * v
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
            r = new
        if not r:
            continue
        r = _primitive_row(r)
        piv = min(r, key=position.__getitem__)
        if r[piv] < 0:
            r = {k: -v for k, v in r.items()}
        b = r[piv]
        for c, R in list(piv_rows.items()):
            a = R.get(piv, 0)
            if a:
                g = math.gcd(a, b)
                ma, mb = b // g, a // g
                new = {k: v * ma for k, v in R.items()}
                for k, v in r.items():
                    s = new.get(k, 0) - mb * v
                    if s:
                        new[k] = s
                    else:
                        new.pop(k, None)
                piv_rows[c] = _primitive_row(new)
        piv_rows[piv] = r
    return piv_rows


def solve_in_span(basis: list[dict], target: dict, p: int | None = None) -> list | None:
    """Coefficients ``a`` with ``sum a_i basis[i] = target`` (or ``None``)."""
    tagged = []
    for i, b in enumerate(basis):
        v = dict(b)
        v[("__coef__", i)] = 1
        tagged.append(v)
    tag = lambda c: isinstance(c, tuple) and len(c) == 2 and c[0] == "__coef__"
    space = EchelonSpace(p, key=lambda c: (0, c[1]) if tag(c) else (1, c))
    for v in tagged:
        space.add(v)
    r = space.reduce(target)
    if any(not tag(c) for c in r):
        return None
    return [_norm(-r.get(("__coef__", i), 0), p) for i in range(len(basis))]


class LocalSpan:
    """A ``ZZ_(p)``-submodule of ``QQ^N`` given by spanning vectors.

    Elimination only ever divides by a pivot of minimal valuation, so every
    row operation is invertible over ``ZZ_(p)`` and the span is preserved.
    """

    def __init__(self, p: int, vectors: Iterable[dict], key: Callable = lambda c: c):
        self.p = p
        self.key = key
        rows = [dict(v) for v in vectors if v]
        columns = sorted({c for r in rows for c in r}, key=key, reverse=True)
        self.pivots: list[tuple[Hashable, dict]] = []
        for col in columns:
            live = [r for r in rows if r.get(col, 0)]
            if not live:
                continue
            piv = min(live, key=lambda r: valuation(r[col], p))
            rows.remove(piv)
            rest = []
            for r in rows:
                a = r.get(col, 0)
                if a:
                    r = axpy(r, -Fraction(a) / piv[col], piv, None)
                if r:
                    rest.append(r)
            rows = rest
            self.pivots.append((col, piv))

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def coordinates(self, target: dict) -> list | None:
        """Integral coefficients on the echelon rows, or ``None``."""
        t = dict(target)
        coeffs = []
        for col, row in self.pivots:
            q = Fraction(t.get(col, 0)) / row[col]
            if valuation(q, self.p) < 0:
                return None
            coeffs.append(q)
            if q:
                t = axpy(t, -q, row, None)
        return None if t else coeffs

    def __contains__(self, target: dict) -> bool:
        return self.coordinates(target) is not None
