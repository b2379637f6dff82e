"""Named integral representations used by the CLI, the tests and the demos."""

from __future__ import annotations

from .matgroup import MatrixGroup, close_group, identity
from .rings import ZZ, Domain

# S3 acting on a rank-2 lattice, modular at 3 and not polynomial there
S3_GENERATORS = [[[1, 3], [0, -1]], [[-2, -3], [1, 2]]]


def lattice_s3(domain: Domain = ZZ) -> MatrixGroup:
    return close_group(S3_GENERATORS, domain)


def s3_permutation(domain: Domain = ZZ) -> MatrixGroup:
    return symmetric_permutation(3, domain)


def symmetric_permutation(n: int, domain: Domain = ZZ) -> MatrixGroup:
    """Permutation matrices of S_n, generated by a transposition and an n-cycle."""
    swap = [list(r) for r in identity(n)]
    swap[0], swap[1] = swap[1], swap[0]
    cycle = [[int(j == (i + 1) % n) for j in range(n)] for i in range(n)]
    gens = [swap] if n == 2 else [swap, cycle]
    return close_group(gens, domain)


def _companion(coeffs: list[int]) -> list[list[int]]:
    """Companion matrix of the monic polynomial ``x^k + c_{k-1} x^{k-1} + ... + c_0``."""
    k = len(coeffs)
    m = [[0] * k for _ in range(k)]
    for i in range(1, k):
        m[i][i - 1] = 1
    for i, c in enumerate(coeffs):
        m[i][k - 1] = -c
    return m


# faithful integral representations of minimal rank
_CYCLIC = {
    1: [[1]],
    2: [[-1, 0], [0, -1]],
    3: [[0, -1], [1, -1]],
    4: [[0, -1], [1, 0]],
    5: _companion([1, 1, 1, 1]),
    6: [[1, -1], [1, 0]],
}


def cyclic(k: int, domain: Domain = ZZ) -> MatrixGroup:
    if k not in _CYCLIC:
        raise ValueError(f"no built-in integral representation of C{k}")
    return close_group([_CYCLIC[k]], domain)


def dihedral4(domain: Domain = ZZ) -> MatrixGroup:
    """Symmetries of the square, order 8."""
    return close_group([[[0, -1], [1, 0]], [[1, 0], [0, -1]]], domain)


def trivial(n: int, domain: Domain = ZZ) -> MatrixGroup:
    return close_group([identity(n)], domain)


FIXTURES = {
    "lattice-s3": lattice_s3,
    "s3-permutation": s3_permutation,
    "c2": lambda dom=ZZ: cyclic(2, dom),
    "c3": lambda dom=ZZ: cyclic(3, dom),
    "c4": lambda dom=ZZ: cyclic(4, dom),
    "c5": lambda dom=ZZ: cyclic(5, dom),
    "c6": lambda dom=ZZ: cyclic(6, dom),
    "d4": dihedral4,
}
