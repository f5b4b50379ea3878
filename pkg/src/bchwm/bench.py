"""Latency comparison of table-driven and exhaustive flip-pattern search."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .dct_pipeline import EmbeddingParams, embed_image
from .embedder import build_parity_check, find_flip_pattern_chien, find_flip_pattern_lut
from .galois import GF2m
from .root_lut import build_tables
from .synthetic import synthetic_cover, synthetic_mark

MIN_TRIALS = 10_000

HEADER = ("method", "m", "trials", "median_us", "p99_us", "mean_us", "agreement", "table_build_ms", "embed_blocks_per_s")


@dataclass
class BenchRow:
    method: str
    m: int
    trials: int
    median_us: float
    p99_us: float
    mean_us: float
    agreement: float
    table_build_ms: float
    embed_blocks_per_s: float

    def as_tuple(self) -> tuple:
        return (self.method, self.m, self.trials, f"{self.median_us:.3f}", f"{self.p99_us:.3f}",
                f"{self.mean_us:.3f}", f"{self.agreement:.6f}", f"{self.table_build_ms:.3f}",
                f"{self.embed_blocks_per_s:.1f}")


def _time_calls(fn, syndromes) -> tuple[np.ndarray, list]:
    clock = time.perf_counter_ns
    out = []
    lat = np.empty(len(syndromes))
    for i, s in enumerate(syndromes):
        t0 = clock()
        out.append(fn(s))
        lat[i] = clock() - t0
    return lat / 1e3, out


def _embed_rate(m: int, method: str, seed: int) -> float:
    params = EmbeddingParams(m=m, ecc=(31, 16, 3) if m == 5 else (15, 7, 2))
    cover = synthetic_cover(256, seed)
    mark = synthetic_mark(32, seed)
    t0 = time.perf_counter()
    _, report = embed_image(cover, mark, params, method=method)
    return report.blocks_used / (time.perf_counter() - t0)


def run_bench(m: int = 5, trials: int = 100_000, seed: int = 0, embed: bool = True) -> list[BenchRow]:
    """Time both searches on the same uniformly random syndromes."""
    if trials < MIN_TRIALS:
        raise ValueError(f"trials must be at least {MIN_TRIALS}")
    gf = GF2m(m)
    t0 = time.perf_counter()
    tables = build_tables(gf)
    build_ms = (time.perf_counter() - t0) * 1e3
    pc = build_parity_check(gf)
    rng = np.random.default_rng(seed)
    syndromes = [tuple(map(int, s)) for s in rng.integers(0, gf.order, size=(trials, 2))]

    lut_lat, lut_out = _time_calls(lambda s: find_flip_pattern_lut(pc, tables, s), syndromes)
    chien_lat, chien_out = _time_calls(lambda s: find_flip_pattern_chien(pc, s), syndromes)
    agree = sum(a is not None and b is not None and len(a) == len(b) for a, b in zip(lut_out, chien_out)) / trials

    rows = []
    for method, lat, build in (("lut", lut_lat, build_ms), ("chien", chien_lat, 0.0)):
        rate = _embed_rate(m, method, seed) if embed else float("nan")
        rows.append(BenchRow(method, m, trials, float(np.median(lat)), float(np.percentile(lat, 99)),
                             float(lat.mean()), agree, build, rate))
    return rows
