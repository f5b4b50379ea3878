"""Fidelity and robustness measures: MSE, PSNR, NCC and BER."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

PEAK = 255.0
INFINITE = "infinite"


def _pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return a, b


def mse(a, b) -> float:
    a, b = _pair(a, b)
    return float(np.mean((a - b) ** 2))


def psnr(a, b) -> float:
    """PSNR in dB with an 8-bit peak; ``math.inf`` for identical images."""
    err = mse(a, b)
    if err == 0:
        return math.inf
    return 10.0 * math.log10(PEAK ** 2 / err)


def format_db(value: float) -> str:
    """Text form used in reports; never writes a float special value."""
    return INFINITE if math.isinf(value) else f"{value:.4f}"


def ncc(w, w_prime) -> float:
    """sum(w * w') / sum(w^2), the asymmetric normalised correlation.

    Note ncc(w, all_ones) == 1 for any w, so BER should be read alongside.
    """
    w, w_prime = _pair(w, w_prime)
    denom = float(np.sum(w * w))
    if denom == 0:
        raise ValueError("NCC undefined for an all-zero reference watermark")
    return float(np.sum(w * w_prime)) / denom


def ber(bits, bits_ref) -> float:
    a = np.asarray(bits).astype(bool).ravel()
    b = np.asarray(bits_ref).astype(bool).ravel()
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.size} vs {b.size}")
    if a.size == 0:
        return 0.0
    return float(np.count_nonzero(a != b)) / a.size


@dataclass(frozen=True)
class QualityReport:
    mse: float
    psnr_db: float
    ncc: float | None
    ber: float | None

    @classmethod
    def measure(cls, image, reference, mark=None, mark_ref=None) -> "QualityReport":
        if mark is None:
            return cls(mse(image, reference), psnr(image, reference), None, None)
        return cls(mse(image, reference), psnr(image, reference), ncc(mark_ref, mark), ber(mark, mark_ref))
