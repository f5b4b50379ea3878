import numpy as np
import pytest

from bchwm.pnm import PnmError, read_pbm, read_pgm, write_pbm, write_pgm


def test_pgm_round_trip(tmp_path, rng):
    img = rng.integers(0, 256, (13, 21), dtype=np.uint8)
    path = tmp_path / "a.pgm"
    write_pgm(path, img)
    assert path.read_bytes().startswith(b"P5\n21 13\n255\n")
    assert np.array_equal(read_pgm(path), img)


def test_pgm_with_comment(tmp_path):
    path = tmp_path / "c.pgm"
    path.write_bytes(b"P5\n# made by hand\n2 1\n255\n\x00\xff")
    assert read_pgm(path).tolist() == [[0, 255]]


def test_pbm_round_trip(tmp_path, rng):
    bits = rng.integers(0, 2, (5, 11), dtype=np.uint8)
    path = tmp_path / "m.pbm"
    write_pbm(path, bits)
    assert len(path.read_bytes()) == len(b"P4\n11 5\n") + 5 * 2
    assert np.array_equal(read_pbm(path), bits)


def test_pbm_bit_order(tmp_path):
    path = tmp_path / "b.pbm"
    path.write_bytes(b"P4\n3 1\n\xa0")  # 101xxxxx, MSB first
    assert read_pbm(path).tolist() == [[1, 0, 1]]


@pytest.mark.parametrize("data", [b"P6\n1 1\n255\n\x00\x00\x00", b"P5\n2 2\n255\n\x00", b"P5\n1 1\n65535\n\x00\x00"])
def test_bad_pgm(tmp_path, data):
    path = tmp_path / "bad.pgm"
    path.write_bytes(data)
    with pytest.raises(PnmError):
        read_pgm(path)


def test_write_rejects_wrong_dtype(tmp_path):
    with pytest.raises(PnmError):
        write_pgm(tmp_path / "x.pgm", np.zeros((2, 2), np.float64))
