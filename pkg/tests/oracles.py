"""Brute-force reference computations, independent of the package internals."""

from __future__ import annotations

import itertools
import math

import numpy as np


def clmul_mod(a: int, b: int, poly: int, m: int) -> int:
    """Schoolbook GF(2)[x] product reduced modulo ``poly`` (no tables)."""
    prod = 0
    for i in range(m):
        if b >> i & 1:
            prod ^= a << i
    for d in range(2 * m - 2, m - 1, -1):
        if prod >> d & 1:
            prod ^= poly << (d - m)
    return prod


def power_iter(poly: int, m: int) -> list[int]:
    """alpha^0 .. alpha^(2^m - 2) by repeated multiplication by x."""
    out, x = [], 1
    for _ in range((1 << m) - 1):
        out.append(x)
        x = clmul_mod(x, 2, poly, m)
    return out


def long_division_remainder(dividend: int, divisor: int) -> int:
    while dividend.bit_length() >= divisor.bit_length():
        dividend ^= divisor << (dividend.bit_length() - divisor.bit_length())
    return dividend


def eval_poly(coeffs, x, poly, m) -> int:
    """sum(coeffs[i] x^i) using only clmul_mod."""
    acc, xp = 0, 1
    for c in coeffs:
        term = clmul_mod(c, xp, poly, m)
        acc ^= term
        xp = clmul_mod(xp, x, poly, m)
    return acc


def root_set(coeffs, poly, m) -> set[int]:
    return {x for x in range(1 << m) if eval_poly(coeffs, x, poly, m) == 0}


def min_weight_table(poly: int, m: int, max_weight: int = 3) -> dict[tuple[int, int], int]:
    """Minimum number of columns (alpha^j, alpha^3j) summing to each syndrome."""
    powers = power_iter(poly, m)
    n = len(powers)
    cols = [(powers[j], powers[(3 * j) % n]) for j in range(n)]
    best: dict[tuple[int, int], int] = {}
    for w in range(max_weight + 1):
        for combo in itertools.combinations(range(n), w):
            s1 = s3 = 0
            for j in combo:
                s1 ^= cols[j][0]
                s3 ^= cols[j][1]
            best.setdefault((s1, s3), w)
    return best


def dct_matrix(size: int = 8) -> np.ndarray:
    """Orthonormal DCT-II basis written out from its definition."""
    mat = np.empty((size, size))
    for k in range(size):
        scale = math.sqrt(1 / size) if k == 0 else math.sqrt(2 / size)
        for i in range(size):
            mat[k, i] = scale * math.cos(math.pi * (2 * i + 1) * k / (2 * size))
    return mat
