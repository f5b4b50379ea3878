"""Arithmetic in GF(2^m) and binary polynomial helpers.

Field elements are integers whose bits are the coefficients of a polynomial
over GF(2) (polynomial basis).  Binary polynomials use the same encoding:
bit ``i`` is the coefficient of ``x^i``.
"""

from __future__ import annotations

from functools import reduce

DEFAULT_PRIMITIVE_POLYS: dict[int, int] = {
    4: 0b10011,   # x^4 + x + 1
    5: 0b100101,  # x^5 + x^2 + 1
}

SUPPORTED_DEGREES = (4, 5)


class FieldError(ValueError):
    """Raised for invalid field construction or undefined field operations."""


def poly_degree(p: int) -> int:
    """Degree of a binary polynomial; -1 for the zero polynomial."""
    return p.bit_length() - 1


def poly_mul(a: int, b: int) -> int:
    """Carry-less product of two binary polynomials."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def poly_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    db = poly_degree(b)
    quot = 0
    while a and poly_degree(a) >= db:
        shift = poly_degree(a) - db
        quot |= 1 << shift
        a ^= b << shift
    return quot, a


def poly_mod(a: int, b: int) -> int:
    return poly_divmod(a, b)[1]


def poly_to_str(p: int) -> str:
    """Human-readable form, highest degree first, e.g. ``x^4 + x + 1``."""
    if p == 0:
        return "0"
    terms = []
    for i in range(poly_degree(p), -1, -1):
        if p >> i & 1:
            terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
    return " + ".join(terms)


class GF2m:
    """The field GF(2^m) with eagerly built log/antilog tables.

    ``antilog[i]`` is alpha^i for ``0 <= i < 2^m - 1``; ``log[a]`` is the
    discrete log of nonzero ``a`` and ``None`` for zero.  Instances are
    treated as immutable once built.
    """

    def __init__(self, m: int, primitive_poly: int | None = None) -> None:
        if m not in SUPPORTED_DEGREES:
            raise FieldError(f"unsupported extension degree m={m}; expected one of {SUPPORTED_DEGREES}")
        if primitive_poly is None:
            primitive_poly = DEFAULT_PRIMITIVE_POLYS[m]
        if poly_degree(primitive_poly) != m:
            raise FieldError(
                f"polynomial {poly_to_str(primitive_poly)} has degree {poly_degree(primitive_poly)}, expected {m}"
            )
        self.m = m
        self.primitive_poly = primitive_poly
        self.order = 1 << m
        self.n = self.order - 1

        antilog = []
        log: list[int | None] = [None] * self.order
        x = 1
        for i in range(self.n):
            if log[x] is not None:
                raise FieldError(
                    f"{poly_to_str(primitive_poly)} is not primitive: alpha^{i} repeats alpha^{log[x]}"
                )
            antilog.append(x)
            log[x] = i
            x <<= 1
            if x & self.order:
                x ^= primitive_poly
        if x != 1:
            raise FieldError(f"{poly_to_str(primitive_poly)} is not primitive")
        self.antilog: tuple[int, ...] = tuple(antilog)
        self.log: tuple[int | None, ...] = tuple(log)
        # unique cube roots exist iff gcd(3, n) == 1
        self._cube_exp = pow(3, -1, self.n) if self.n % 3 else None

    def __repr__(self) -> str:
        return f"GF2m(m={self.m}, primitive_poly={poly_to_str(self.primitive_poly)})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF2m) and (self.m, self.primitive_poly) == (other.m, other.primitive_poly)

    def __hash__(self) -> int:
        return hash((self.m, self.primitive_poly))

    def elements(self) -> range:
        return range(self.order)

    def alpha(self, i: int) -> int:
        """alpha^i for any integer exponent."""
        return self.antilog[i % self.n]

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.antilog[(self.log[a] + self.log[b]) % self.n]

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative inverse")
        return self.antilog[-self.log[a] % self.n]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise FieldError("division by zero")
        if a == 0:
            return 0
        return self.antilog[(self.log[a] - self.log[b]) % self.n]

    def pow(self, a: int, e: int) -> int:
        """a^e; by convention 0^0 = 1 and 0^e = 0 for e > 0."""
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise FieldError("zero raised to a negative power")
            return 0
        return self.antilog[(self.log[a] * e) % self.n]

    def sqrt(self, a: int) -> int:
        """The unique square root, a^(2^(m-1))."""
        if a == 0:
            return 0
        return self.antilog[(self.log[a] * (self.order >> 1)) % self.n]

    def cbrt(self, a: int) -> tuple[int, ...]:
        """All cube roots of ``a`` in ascending order.

        For m = 5 cubing is a bijection and exactly one root is returned.  For
        m = 4 the result has 0 or 3 roots (only 0 has the single root 0).
        """
        if a == 0:
            return (0,)
        if self._cube_exp is not None:
            return (self.antilog[(self.log[a] * self._cube_exp) % self.n],)
        la = self.log[a]
        if la % 3:
            return ()
        step = self.n // 3
        return tuple(sorted(self.antilog[la // 3 + j * step] for j in range(3)))

    def eval_poly(self, coeffs: list[int] | tuple[int, ...], x: int) -> int:
        """Horner evaluation of sum(coeffs[i] * x^i) with field coefficients."""
        acc = 0
        for c in reversed(coeffs):
            acc = self.mul(acc, x) ^ c
        return acc

    def eval_binary_poly(self, p: int, x: int) -> int:
        """Evaluate a binary polynomial (bitmask) at field element ``x``."""
        acc = 0
        for i in range(poly_degree(p), -1, -1):
            acc = self.mul(acc, x) ^ (p >> i & 1)
        return acc

    def cyclotomic_coset(self, i: int) -> tuple[int, ...]:
        coset = []
        e = i % self.n
        while e not in coset:
            coset.append(e)
            e = (e * 2) % self.n
        return tuple(coset)

    def minimal_polynomial(self, i: int) -> int:
        """Binary minimal polynomial of alpha^i, as a bitmask."""
        if not 1 <= i <= self.n - 1:
            raise FieldError(f"exponent {i} outside [1, {self.n - 1}]")
        # field-coefficient product of (x + alpha^e) over the conjugacy class
        coeffs = [1]
        for e in self.cyclotomic_coset(i):
            root = self.antilog[e]
            shifted = [0] + coeffs
            for j, c in enumerate(coeffs):
                shifted[j] ^= self.mul(c, root)
            coeffs = shifted
        if any(c not in (0, 1) for c in coeffs):
            raise AssertionError(f"minimal polynomial of alpha^{i} has non-binary coefficients {coeffs}")
        return sum(c << j for j, c in enumerate(coeffs))

    def generator_polynomial(self, t: int) -> int:
        """LCM of the minimal polynomials of alpha^1 .. alpha^(2t)."""
        if t < 1:
            raise FieldError("error capability t must be >= 1")
        if 2 * t > self.n - 1:
            raise FieldError(f"t={t} too large for GF(2^{self.m})")
        leaders = {min(self.cyclotomic_coset(i)) for i in range(1, 2 * t + 1)}
        g = reduce(poly_mul, (self.minimal_polynomial(i) for i in sorted(leaders)), 1)
        if poly_degree(g) >= self.n:
            raise FieldError(f"t={t} too large for GF(2^{self.m}): generator degree {poly_degree(g)}")
        return g


def build_field(m: int, primitive_poly: int | None = None) -> GF2m:
    return GF2m(m, primitive_poly)
