"""Binary narrow-sense BCH codes: systematic encoding and hard-decision decoding.

Bit ``j`` of a word is the coefficient of ``x^j``.  Codewords are laid out
systematically: the ``n - k`` parity bits occupy positions ``0 .. n-k-1`` and
the message occupies positions ``n-k .. n-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .galois import GF2m, poly_degree, poly_mod

# (n, k, t) rows of the parameter table the watermarking experiments use.
STANDARD_CODES: tuple[tuple[int, int, int], ...] = (
    (15, 11, 1),
    (15, 7, 2),
    (15, 5, 3),
    (31, 26, 1),
    (31, 21, 2),
    (31, 16, 3),
)


class DecodeError(Exception):
    """The received word holds more errors than the code can correct."""


def bits_to_int(bits) -> int:
    return int(sum(int(b) << i for i, b in enumerate(bits)))


def int_to_bits(value: int, length: int) -> np.ndarray:
    return np.array([(value >> i) & 1 for i in range(length)], dtype=np.uint8)


def chien_positions(gf: GF2m, sigma: list[int] | tuple[int, ...]) -> list[int]:
    """Positions j with sigma(alpha^-j) = 0, scanning every nonzero element.

    ``sigma`` is the locator 1 + s1 X + ... + sv X^v, whose roots are the
    reciprocals of the locators alpha^j.  Terms are stepped incrementally in
    the log domain, the usual Chien register arrangement.
    """
    n = gf.n
    log, antilog = gf.log, gf.antilog
    terms = [(log[c], k) for k, c in enumerate(sigma) if c and k]
    const = sigma[0]
    positions = []
    for i in range(n):
        # evaluate at X = alpha^i
        acc = const
        for lc, k in terms:
            acc ^= antilog[(lc + k * i) % n]
        if acc == 0:
            positions.append(-i % n)
    return sorted(positions)


@dataclass(frozen=True)
class BchCode:
    """A t-error-correcting binary BCH code of length n = 2^m - 1."""

    gf: GF2m
    t: int
    g: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "g", self.gf.generator_polynomial(self.t))

    @classmethod
    def from_params(cls, n: int, k: int, t: int) -> "BchCode":
        """Build a code from its (n, k, t) triple, checking consistency."""
        m = (n + 1).bit_length() - 1
        if (1 << m) - 1 != n:
            raise ValueError(f"n={n} is not of the form 2^m - 1")
        code = cls(GF2m(m), t)
        if code.k != k:
            raise ValueError(f"BCH({n}, {k}, {t}) does not exist: t={t} gives k={code.k}")
        return code

    @property
    def n(self) -> int:
        return self.gf.n

    @property
    def k(self) -> int:
        return self.n - poly_degree(self.g)

    @property
    def rate(self) -> float:
        return self.k / self.n

    def __str__(self) -> str:
        return f"BCH({self.n}, {self.k}, {self.t})"

    def encode(self, message) -> np.ndarray:
        message = np.asarray(message, dtype=np.uint8)
        if message.shape != (self.k,):
            raise ValueError(f"message must have {self.k} bits, got shape {message.shape}")
        shifted = bits_to_int(message) << (self.n - self.k)
        return int_to_bits(shifted ^ poly_mod(shifted, self.g), self.n)

    def syndromes(self, received) -> list[int]:
        """S_1 .. S_2t with S_i = r(alpha^i)."""
        received = np.asarray(received)
        if received.shape != (self.n,):
            raise ValueError(f"received word must have {self.n} bits, got shape {received.shape}")
        ones = np.flatnonzero(received).tolist()
        n, antilog = self.n, self.gf.antilog
        out = []
        for i in range(1, 2 * self.t + 1):
            s = 0
            for j in ones:
                s ^= antilog[(i * j) % n]
            out.append(s)
        return out

    def berlekamp_massey(self, s: list[int]) -> list[int]:
        """Minimal error locator [1, s1, ..., sv] for the syndrome sequence.

        Raises DecodeError when the locator degree exceeds t.
        """
        gf = self.gf
        size = len(s) + 2
        sigma = [1] + [0] * size
        prev = [1] + [0] * size
        length, gap, prev_disc = 0, 1, 1
        for r in range(len(s)):
            disc = s[r]
            for i in range(1, length + 1):
                disc ^= gf.mul(sigma[i], s[r - i])
            if disc == 0:
                gap += 1
                continue
            coef = gf.div(disc, prev_disc)
            updated = sigma[:]
            for i in range(size + 1 - gap):
                updated[i + gap] ^= gf.mul(coef, prev[i])
            if 2 * length <= r:
                prev, prev_disc = sigma, disc
                length = r + 1 - length
                gap = 1
            else:
                gap += 1
            sigma = updated
        if length > self.t or any(sigma[length + 1:]):
            raise DecodeError(f"locator degree {length} exceeds t={self.t}")
        return sigma[:length + 1]

    def chien_search(self, sigma: list[int]) -> list[int]:
        positions = chien_positions(self.gf, sigma)
        if len(positions) != len(sigma) - 1:
            raise DecodeError(f"locator of degree {len(sigma) - 1} has {len(positions)} roots")
        return positions

    def decode(self, received) -> tuple[np.ndarray, int]:
        """Correct up to t errors and return (message bits, corrected count).

        The corrected word is re-checked; any residual nonzero syndrome is
        reported as DecodeError instead of a silently wrong message.
        """
        word = np.array(received, dtype=np.uint8)
        s = self.syndromes(word)
        if not any(s):
            return word[self.n - self.k:].copy(), 0
        sigma = self.berlekamp_massey(s)
        positions = self.chien_search(sigma)
        word[positions] ^= 1
        if any(self.syndromes(word)):
            raise DecodeError("residual syndromes after correction")
        return word[self.n - self.k:].copy(), len(positions)
