"""Syndrome coding with the double-error-correcting BCH parity check.

A block of n = 2^m - 1 cover bits carries the 2m-bit chunk (I1, I3), where
I1 = sum b_j alpha^j and I3 = sum b_j alpha^(3j).  Embedding toggles the
fewest bits whose columns of H sum to the required syndrome change
S = I + bits.H^T.  With beta_k = alpha^(j_k) the flipped positions satisfy

    S1 = beta_1 + ... + beta_v,    S3 = beta_1^3 + ... + beta_v^3,

and at most three flips are ever needed (covering radius 3).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bch import chien_positions
from .galois import GF2m
from .root_lut import RootTables

FlipPattern = tuple[int, ...]


class EmbeddingInvariantError(AssertionError):
    """A flip pattern failed the e.H^T = S re-check."""


@dataclass(frozen=True)
class ParityCheck:
    """Rows alpha^j and alpha^(3j) of the t = 2 BCH parity-check matrix.

    Even rows are squares of odd ones in characteristic 2 and carry no
    information, so only rows 1 and 3 are materialised.
    """

    gf: GF2m
    H: np.ndarray

    rows = (1, 3)

    @property
    def n(self) -> int:
        return self.gf.n


def build_parity_check(gf: GF2m) -> ParityCheck:
    H = np.array([[gf.alpha(r * j) for j in range(gf.n)] for r in ParityCheck.rows], dtype=np.int64)
    H.setflags(write=False)
    return ParityCheck(gf, H)


def extract_syndrome(pc: ParityCheck, bits) -> tuple[int, int]:
    """(I1, I3) = bits.H^T; the blind extraction function for one block."""
    bits = np.asarray(bits)
    if bits.shape != (pc.n,):
        raise ValueError(f"expected {pc.n} bits, got shape {bits.shape}")
    cols = pc.H[:, bits.astype(bool)]
    if cols.shape[1] == 0:
        return 0, 0
    s1, s3 = np.bitwise_xor.reduce(cols, axis=1)
    return int(s1), int(s3)


def target_syndrome(pc: ParityCheck, cover, chunk: tuple[int, int]) -> tuple[int, int]:
    v1, v3 = extract_syndrome(pc, cover)
    return chunk[0] ^ v1, chunk[1] ^ v3


def apply_flips(bits, flips: FlipPattern) -> np.ndarray:
    out = np.array(bits, dtype=np.uint8)
    for j in flips:
        out[j] ^= 1
    return out


def pattern_syndrome(gf: GF2m, flips: FlipPattern) -> tuple[int, int]:
    s1 = s3 = 0
    for j in flips:
        s1 ^= gf.alpha(j)
        s3 ^= gf.alpha(3 * j)
    return s1, s3


def _verified(gf: GF2m, flips: FlipPattern, s: tuple[int, int]) -> FlipPattern:
    flips = tuple(sorted(flips))
    if len(set(flips)) != len(flips) or pattern_syndrome(gf, flips) != s:
        raise EmbeddingInvariantError(f"pattern {flips} does not realise syndrome {s}")
    return flips


def find_flip_pattern_lut(pc: ParityCheck, lut: RootTables, s: tuple[int, int]) -> FlipPattern | None:
    """Minimum-weight flip pattern for syndrome ``s`` using the root tables.

    Returns None when no pattern of weight <= 3 exists.
    """
    gf = pc.gf
    log = gf.log
    s1, s3 = s
    if s1 == 0 and s3 == 0:
        return ()
    cube = gf.mul(gf.mul(s1, s1), s1)
    b = s3 ^ cube
    if s1 and b == 0:
        return (log[s1],)

    if s1:
        # x^2 + s1 x + b/s1 holds beta_1, beta_2; index u = b / s1^3
        y0 = lut.quad_root(gf.div(b, cube))
        if y0 is not None:
            beta = gf.mul(s1, y0)
            return _verified(gf, (log[beta], log[beta ^ s1]), s)

    # Weight 3: x^3 + s1 x^2 + s2 x + s3' has free s2, and b = s1 s2 + s3' is
    # fixed at S3 + S1^3.  Each three-root row o of the cubic table fixes
    # sqrt(a) = (b / o)^(1/3); the roots are sqrt(a) y + s1.
    for o in lut.k:
        row = lut.cubic_roots(o)
        for rho in gf.cbrt(gf.div(b, o)):
            betas = [gf.mul(rho, y) ^ s1 for y in row]
            if all(betas):
                return _verified(gf, tuple(log[x] for x in betas), s)
    # a = 0: (x + s1)^3 = b, three distinct roots only when 3 | 2^m - 1
    roots = gf.cbrt(b)
    if len(roots) == 3:
        betas = [z ^ s1 for z in roots]
        if all(betas):
            return _verified(gf, tuple(log[x] for x in betas), s)
    return None


def find_flip_pattern_chien(pc: ParityCheck, s: tuple[int, int]) -> FlipPattern | None:
    """Same contract as :func:`find_flip_pattern_lut`, by exhaustive root search.

    Candidate locator polynomials sigma(X) = prod(1 + beta_k X) are scanned at
    every alpha^i; for weight 3 the free coefficient is swept over the field.
    """
    gf = pc.gf
    log = gf.log
    s1, s3 = s
    if s1 == 0 and s3 == 0:
        return ()
    b = s3 ^ gf.mul(gf.mul(s1, s1), s1)
    if s1 and b == 0:
        return (log[s1],)
    if s1:
        positions = chien_positions(gf, (1, s1, gf.div(b, s1)))
        if len(positions) == 2:
            return _verified(gf, tuple(positions), s)
    for s2 in gf.elements():
        positions = chien_positions(gf, (1, s1, s2, b ^ gf.mul(s1, s2)))
        if len(positions) == 3:
            return _verified(gf, tuple(positions), s)
    return None
