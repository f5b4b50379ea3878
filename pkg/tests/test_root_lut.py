import numpy as np

from bchwm.root_lut import build_tables, solve_cubic, solve_quadratic
from oracles import root_set


def test_quadratic_examples(tables16):
    # y^2 + y + 1 has roots alpha^5 = 6 and alpha^10 = 7; the table keeps the smaller
    assert tables16.quad_root(1) == 6
    assert tables16.quad_root(8) is None
    assert solve_quadratic(tables16, 1, 1) == (6, 7)
    assert solve_quadratic(tables16, 1, 8) == ()


def test_cubic_examples(tables16):
    assert set(tables16.cubic_roots(6)) == {7, 9, 14}
    assert tables16.cubic_roots(10) is None
    assert tables16.c_single[10 - 1] == 2
    assert solve_cubic(tables16, 0, 1, 6) == (7, 9, 14)
    assert solve_cubic(tables16, 0, 1, 10) == (2,)


def test_k_lists(tables16, tables32):
    assert tables16.k == (6, 7)
    assert tables32.k == (3, 5, 12, 17, 26)


def test_tables_against_exhaustive_scan(field):
    tables = build_tables(field)
    poly, m = field.primitive_poly, field.m
    for i in range(1, field.order):
        quad = root_set([i, 1, 1], poly, m)
        assert (tables.quad_root(i) is None) == (not quad)
        if quad:
            assert tables.quad_root(i) == min(quad)
        cub = root_set([i, 1, 0, 1], poly, m)
        row = tables.cubic_roots(i)
        if len(cub) == 3:
            assert set(row) == cub and i in tables.k
        else:
            assert row is None and i not in tables.k
            assert (tables.c_single[i - 1] is None) == (len(cub) != 1)


def test_all_quadratics(field):
    tables = build_tables(field)
    poly, m = field.primitive_poly, field.m
    for s1 in field.elements():
        for s2 in field.elements():
            assert set(solve_quadratic(tables, s1, s2)) == root_set([s2, s1, 1], poly, m)


def test_all_cubics_gf16(tables16):
    gf = tables16.gf
    for s1 in gf.elements():
        for s2 in gf.elements():
            for s3 in gf.elements():
                got = solve_cubic(tables16, s1, s2, s3)
                assert set(got) == root_set([s3, s2, s1, 1], gf.primitive_poly, 4)
                assert list(got) == sorted(got)


def test_sampled_cubics_gf32(tables32):
    gf = tables32.gf
    rng = np.random.default_rng(99)
    for s1, s2, s3 in rng.integers(0, 32, size=(3000, 3)).tolist():
        assert set(solve_cubic(tables32, s1, s2, s3)) == root_set([s3, s2, s1, 1], gf.primitive_poly, 5)


def test_degenerate_cases(tables16, tables32):
    # a = s1^2 + s2 = 0 with b = 0: (x + s1)^3, a triple root at s1
    gf = tables32.gf
    s1 = 9
    assert solve_cubic(tables32, s1, gf.mul(s1, s1), gf.mul(gf.mul(s1, s1), s1)) == (s1,)
    assert solve_quadratic(tables32, 0, 4) == (2,)
    assert solve_quadratic(tables32, 7, 0) == (0, 7)


def test_dump(tables16):
    text = tables16.dump()
    assert text.startswith("# index")
    assert "1 6 -" in text
    assert text.strip().endswith("# k 6 7")


def test_rows_count(field):
    tables = build_tables(field)
    assert len(tables.q) == len(tables.c) == len(tables.c_single) == field.n
