import pytest
from hypothesis import given
from hypothesis import strategies as st

from bchwm.galois import (
    FieldError,
    GF2m,
    build_field,
    poly_divmod,
    poly_mod,
    poly_mul,
    poly_to_str,
)
from oracles import clmul_mod, long_division_remainder, power_iter

GF16_ANTILOG = [1, 2, 4, 8, 3, 6, 12, 11, 5, 10, 7, 14, 15, 13, 9]
G_15_7 = 0b111010001            # x^8 + x^7 + x^6 + x^4 + 1
G_31_16 = 0b1000111110101111    # frozen from the minimal-polynomial oracle


def test_antilog_gf16(gf16):
    assert list(gf16.antilog) == GF16_ANTILOG
    assert gf16.antilog[0] == 1


@pytest.mark.parametrize("m, poly", [(4, 0b10011), (5, 0b100101)])
def test_tables_match_iterated_powers(m, poly):
    gf = build_field(m, poly)
    assert list(gf.antilog) == power_iter(poly, m)
    assert gf.log[0] is None
    assert all(gf.log[gf.antilog[i]] == i for i in range(gf.n))
    assert len(set(gf.antilog)) == gf.n and 0 not in gf.antilog
    assert gf.alpha(gf.n) == 1


def test_non_primitive_rejected():
    with pytest.raises(FieldError, match="not primitive"):
        GF2m(4, 0b10101)  # (x^2 + x + 1)^2


def test_wrong_degree_rejected():
    with pytest.raises(FieldError):
        GF2m(5, 0b10011)
    with pytest.raises(FieldError):
        GF2m(6)


def test_add(gf16):
    assert gf16.add(8, 12) == 4
    assert gf16.add(7, 7) == 0
    assert gf16.add(7, 0) == 7


def test_mul_examples(gf16):
    assert gf16.mul(8, 6) == 5
    assert gf16.mul(11, 1) == 11
    assert gf16.mul(11, 0) == 0


def test_inv_examples(gf16):
    assert gf16.inv(1) == 1
    assert gf16.inv(2) == 9
    with pytest.raises(FieldError):
        gf16.inv(0)


def test_pow_examples(gf16):
    assert gf16.pow(2, 15) == 1
    assert gf16.pow(2, 3) == 8
    assert gf16.pow(13, 0) == 1
    assert gf16.pow(0, 0) == 1
    assert gf16.pow(0, 4) == 0


def test_sqrt_examples(gf16):
    assert gf16.sqrt(1) == 1
    assert gf16.sqrt(0) == 0
    assert gf16.sqrt(8) == 10


def test_cbrt(gf16, gf32):
    assert gf32.cbrt(1) == (1,)
    assert gf32.cbrt(gf32.alpha(3)) == (gf32.alpha(1),)
    assert gf16.cbrt(2) == ()
    assert set(gf16.cbrt(1)) == {1, gf16.alpha(5), gf16.alpha(10)}
    assert gf16.cbrt(0) == (0,)


def test_cbrt_exhaustive(field):
    cubes = {}
    for x in field.elements():
        cubes.setdefault(field.pow(x, 3) if x else 0, set()).add(x)
    for a in field.elements():
        assert set(field.cbrt(a)) == cubes.get(a, set())


def test_mul_inv_exhaustive_against_schoolbook(field):
    for a in field.elements():
        for b in field.elements():
            assert field.mul(a, b) == clmul_mod(a, b, field.primitive_poly, field.m)
        if a:
            assert field.mul(a, field.inv(a)) == 1


def test_sqrt_inverts_square(field):
    for a in field.elements():
        assert field.sqrt(field.mul(a, a)) == a


@given(st.integers(1, 31), st.integers(1, 31), st.integers(-40, 40))
def test_div_pow_consistency(a, b, e):
    gf = GF2m(5)
    assert gf.mul(gf.div(a, b), b) == a
    assert gf.pow(a, e) == gf.mul(gf.pow(a, e - 1), a)


@pytest.mark.parametrize("i, expected", [(1, 0b10011), (3, 0b11111), (5, 0b111)])
def test_minimal_polynomials_gf16(gf16, i, expected):
    assert gf16.minimal_polynomial(i) == expected


def test_minimal_polynomial_has_its_root(field):
    for i in range(1, field.n):
        p = field.minimal_polynomial(i)
        assert field.eval_binary_poly(p, field.alpha(i)) == 0


@pytest.mark.parametrize("m, t, g, k", [
    (4, 1, 0b10011, 11),
    (4, 2, G_15_7, 7),
    (5, 3, G_31_16, 16),
])
def test_generator_polynomial(m, t, g, k):
    gf = GF2m(m)
    got = gf.generator_polynomial(t)
    assert got == g
    assert gf.n - (got.bit_length() - 1) == k


@pytest.mark.parametrize("m", [4, 5])
@pytest.mark.parametrize("t", [1, 2, 3])
def test_generator_divides_xn_plus_1_and_has_roots(m, t):
    gf = GF2m(m)
    g = gf.generator_polynomial(t)
    assert long_division_remainder((1 << gf.n) | 1, g) == 0
    for i in range(1, 2 * t + 1):
        assert gf.eval_binary_poly(g, gf.alpha(i)) == 0


def test_generator_t_too_large(gf16):
    with pytest.raises(FieldError):
        gf16.generator_polynomial(8)
    with pytest.raises(FieldError):
        gf16.generator_polynomial(0)


def test_poly_helpers():
    assert poly_mul(0b10011, 0b11111) == G_15_7
    q, r = poly_divmod(G_15_7 ^ 0b101, 0b10011)
    assert poly_mul(q, 0b10011) ^ r == G_15_7 ^ 0b101
    assert poly_mod(1 << 8, G_15_7) == 0b11010001
    assert poly_to_str(0b10011) == "x^4 + x + 1"
    assert poly_to_str(0) == "0"
