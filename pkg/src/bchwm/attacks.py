"""Image attacks used to probe watermark robustness.

All attacks take and return 2-D uint8 images of unchanged size.  Spec strings
have the form ``kind[:key=value[:key=value...]]``, e.g. ``noise:var=0.01``,
``rotate:deg=2:realign=1``, ``jpeg:q=70`` or ``resize:half``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage
from scipy.fft import dctn, idctn

# ITU-T T.81 Annex K luminance quantisation table
JPEG_LUMA = np.array([
    [16, 11, 10, 16, 24, 40, 51, 61],
    [12, 12, 14, 19, 26, 58, 60, 55],
    [14, 13, 16, 24, 40, 57, 69, 56],
    [14, 17, 22, 29, 51, 87, 80, 62],
    [18, 22, 37, 56, 68, 109, 103, 77],
    [24, 35, 55, 64, 81, 104, 113, 92],
    [49, 64, 78, 87, 103, 121, 120, 101],
    [72, 92, 95, 98, 112, 100, 103, 99],
], dtype=np.float64)


def _to_uint8(img) -> np.ndarray:
    return np.clip(np.rint(img), 0, 255).astype(np.uint8)


def wiener3x3(img) -> np.ndarray:
    """Adaptive local Wiener filter; noise power = mean of the local variances."""
    x = np.asarray(img, dtype=np.float64)
    mean = ndimage.uniform_filter(x, size=3, mode="reflect")
    var = np.maximum(ndimage.uniform_filter(x * x, size=3, mode="reflect") - mean * mean, 0.0)
    noise = var.mean()
    gain = np.where(var > noise, (var - noise) / np.where(var > 0, var, 1.0), 0.0)
    return _to_uint8(mean + gain * (x - mean))


def median3x3(img) -> np.ndarray:
    return ndimage.median_filter(np.asarray(img), size=3, mode="reflect")


def gaussian_noise(img, variance: float = 0.01, seed: int = 0) -> np.ndarray:
    """Additive N(0, variance) noise on the [0, 1] intensity scale."""
    if variance < 0:
        raise ValueError("variance must be non-negative")
    x = np.asarray(img, dtype=np.float64)
    noise = np.random.default_rng(seed).normal(0.0, np.sqrt(variance) * 255.0, size=x.shape)
    return _to_uint8(x + noise)


def gaussian_kernel(sigma: float = 0.5, size: int = 3) -> np.ndarray:
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    r = np.arange(size) - size // 2
    k = np.exp(-(r * r) / (2.0 * sigma * sigma))
    return k / k.sum()


def gaussian_filter(img, sigma: float = 0.5) -> np.ndarray:
    k = gaussian_kernel(sigma)
    x = np.asarray(img, dtype=np.float64)
    x = ndimage.correlate1d(x, k, axis=0, mode="reflect")
    x = ndimage.correlate1d(x, k, axis=1, mode="reflect")
    return _to_uint8(x)


def rotate(img, degrees: float) -> np.ndarray:
    """Bilinear rotation about the image centre; uncovered pixels become 0."""
    if abs(degrees) >= 45:
        raise ValueError("rotation limited to |degrees| < 45")
    x = np.asarray(img, dtype=np.float64)
    return _to_uint8(ndimage.rotate(x, degrees, reshape=False, order=1, mode="constant", cval=0.0))


def rotate_realigned(img, degrees: float) -> np.ndarray:
    """Rotate, then undo the rotation: the interpolation loss of a realigned attack."""
    return rotate(rotate(img, degrees), -degrees)


def jpeg_quant_table(quality: int) -> np.ndarray:
    if not 1 <= quality <= 100:
        raise ValueError("quality must be in 1..100")
    scale = 5000 / quality if quality < 50 else 200 - 2 * quality
    return np.clip(np.floor((JPEG_LUMA * scale + 50) / 100), 1, 255)


def jpeg_like(img, quality: int = 70) -> np.ndarray:
    """Baseline-JPEG distortion: 8x8 DCT quantisation round trip, no entropy coding.

    Partial edge blocks are left as they are.
    """
    x = np.asarray(img, dtype=np.float64)
    table = jpeg_quant_table(quality)
    h, w = x.shape
    hb, wb = h // 8 * 8, w // 8 * 8
    out = x.copy()
    blocks = x[:hb, :wb].reshape(hb // 8, 8, wb // 8, 8).swapaxes(1, 2) - 128.0
    coeffs = dctn(blocks, axes=(-2, -1), norm="ortho")
    coeffs = np.rint(coeffs / table) * table
    rec = idctn(coeffs, axes=(-2, -1), norm="ortho") + 128.0
    out[:hb, :wb] = rec.swapaxes(1, 2).reshape(hb, wb)
    return _to_uint8(out)


def resize_halfback(img) -> np.ndarray:
    """Bilinear downscale by 2 and back up to the original size."""
    x = np.asarray(img, dtype=np.float64)
    if x.shape[0] % 2 or x.shape[1] % 2:
        raise ValueError("resize_halfback needs even dimensions")
    small = ndimage.zoom(x, 0.5, order=1, mode="nearest", grid_mode=True)
    return _to_uint8(ndimage.zoom(small, 2.0, order=1, mode="nearest", grid_mode=True))


KINDS = ("wiener3x3", "median3x3", "gaussian_noise", "gaussian_filter", "rotate", "jpeg_like", "resize_halfback")

_ALIASES = {
    "wiener": "wiener3x3",
    "median": "median3x3",
    "noise": "gaussian_noise",
    "gfilter": "gaussian_filter",
    "blur": "gaussian_filter",
    "jpeg": "jpeg_like",
    "resize": "resize_halfback",
}

_SHORT = {v: k for k, v in _ALIASES.items() if k not in ("wiener", "median", "blur")}

# parameter name -> (spec key, type, default)
_PARAMS = {
    "wiener3x3": {},
    "median3x3": {},
    "gaussian_noise": {"var": (float, 0.01)},
    "gaussian_filter": {"sigma": (float, 0.5)},
    "rotate": {"deg": (float, 2.0), "realign": (int, 0)},
    "jpeg_like": {"q": (int, 70)},
    "resize_halfback": {"half": (int, 1)},
}


@dataclass(frozen=True)
class AttackSpec:
    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in _PARAMS:
            raise ValueError(f"unknown attack {self.kind!r}; expected one of {KINDS}")
        allowed = _PARAMS[self.kind]
        unknown = set(self.params) - set(allowed)
        if unknown:
            raise ValueError(f"attack {self.kind} has no parameter(s) {sorted(unknown)}")
        resolved = {name: typ(self.params.get(name, default)) for name, (typ, default) in allowed.items()}
        if self.kind == "gaussian_noise" and resolved["var"] < 0:
            raise ValueError("noise variance must be non-negative")
        if self.kind == "gaussian_filter" and resolved["sigma"] <= 0:
            raise ValueError("sigma must be positive")
        if self.kind == "rotate" and abs(resolved["deg"]) >= 45:
            raise ValueError("rotation limited to |deg| < 45")
        if self.kind == "jpeg_like" and not 1 <= resolved["q"] <= 100:
            raise ValueError("jpeg quality must be in 1..100")
        object.__setattr__(self, "params", resolved)

    @classmethod
    def parse(cls, text: str) -> "AttackSpec":
        kind, *rest = text.strip().split(":")
        kind = _ALIASES.get(kind, kind)
        params = {}
        for item in rest:
            key, sep, value = item.partition("=")
            params[key] = value if sep else 1
        return cls(kind, params)

    def __str__(self) -> str:
        if self.kind == "resize_halfback":
            return "resize:half"
        name = _SHORT.get(self.kind, self.kind)
        parts = [name] + [f"{k}={_fmt(v)}" for k, v in self.params.items()
                          if not (self.kind == "rotate" and k == "realign" and v == 0)]
        return ":".join(parts)

    def apply(self, img, seed: int = 0) -> np.ndarray:
        p = self.params
        if self.kind == "wiener3x3":
            return wiener3x3(img)
        if self.kind == "median3x3":
            return median3x3(img)
        if self.kind == "gaussian_noise":
            return gaussian_noise(img, p["var"], seed=seed)
        if self.kind == "gaussian_filter":
            return gaussian_filter(img, p["sigma"])
        if self.kind == "rotate":
            return rotate_realigned(img, p["deg"]) if p["realign"] else rotate(img, p["deg"])
        if self.kind == "jpeg_like":
            return jpeg_like(img, p["q"])
        return resize_halfback(img)


def _fmt(v) -> str:
    return f"{v:g}" if isinstance(v, float) else str(v)


def parse_attack_list(texts) -> list[AttackSpec]:
    """Parse one or more comma-separated attack lists."""
    if isinstance(texts, str):
        texts = [texts]
    specs = []
    for text in texts:
        specs.extend(AttackSpec.parse(t) for t in text.split(",") if t.strip())
    return specs


# default evaluation grid: the reference robustness attacks, unaligned and re-aligned rotation
DEFAULT_GRID = (
    "wiener3x3",
    "noise:var=0.01",
    "gfilter:sigma=0.5",
    "rotate:deg=2",
    "rotate:deg=2:realign=1",
    "jpeg:q=70",
    "resize:half",
)
