import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bchwm.galois import GF2m  # noqa: E402
from bchwm.root_lut import build_tables  # noqa: E402
from bchwm.synthetic import synthetic_cover, synthetic_mark  # noqa: E402


@pytest.fixture(scope="session")
def gf16():
    return GF2m(4)


@pytest.fixture(scope="session")
def gf32():
    return GF2m(5)


@pytest.fixture(scope="session", params=[4, 5], ids=["gf16", "gf32"])
def field(request):
    return GF2m(request.param)


@pytest.fixture(scope="session")
def tables16(gf16):
    return build_tables(gf16)


@pytest.fixture(scope="session")
def tables32(gf32):
    return build_tables(gf32)


@pytest.fixture(scope="session")
def natural_cover():
    skdata = pytest.importorskip("skimage.data")
    return skdata.camera()


@pytest.fixture(scope="session")
def synth_cover():
    return synthetic_cover(512, seed=7)


@pytest.fixture(scope="session")
def mark64():
    return synthetic_mark(64, seed=3)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# --- acceptance verdict lines ----------------------------------------------------

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def verdict():
    """Record and print one PASS/FAIL line for an acceptance criterion, then assert it."""

    def record(number: int, title: str, ok: bool, detail: str) -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title} -- {detail}"
        ACCEPTANCE_LINES[number] = line
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
