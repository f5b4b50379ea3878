"""Lookup tables for roots of quadratics and cubics over GF(2^m).

Every quadratic x^2 + s1 x + s2 with s1 != 0 maps onto the canonical family
y^2 + y + u (u = s2 / s1^2) by x = s1 y.  Every cubic x^3 + s1 x^2 + s2 x + s3
with a = s1^2 + s2 != 0 maps onto y^3 + y + o (o = b / a^(3/2),
b = s1 s2 + s3) by x = sqrt(a) y + s1.  The canonical families are solved
once by exhaustive scan and stored.

Absent rows are ``None``.  Index ``i`` of a family lives at position
``i - 1`` of its table, so each table has 2^m - 1 rows.
"""

from __future__ import annotations

from dataclasses import dataclass

from .galois import GF2m


class LutInvariantError(AssertionError):
    """A table answer failed substitution; indicates a bug, never bad input."""


@dataclass(frozen=True)
class RootTables:
    gf: GF2m
    q: tuple[int | None, ...]
    c: tuple[tuple[int, int, int] | None, ...]
    k: tuple[int, ...]
    # single real root of y^3 + y + i when the cubic does not split
    c_single: tuple[int | None, ...]

    def quad_root(self, i: int) -> int | None:
        return self.q[i - 1]

    def cubic_roots(self, i: int) -> tuple[int, int, int] | None:
        return self.c[i - 1]

    def dump(self) -> str:
        """Plain-text listing, one index per line (debugging aid)."""
        lines = ["# index quad_root cubic_roots"]
        for i in range(1, self.gf.order):
            q = self.q[i - 1]
            c = self.c[i - 1]
            lines.append(f"{i} {'-' if q is None else q} {'-' if c is None else ','.join(map(str, c))}")
        lines.append("# k " + " ".join(map(str, self.k)))
        return "\n".join(lines) + "\n"


def build_quadratic_table(gf: GF2m) -> tuple[int | None, ...]:
    table: list[int | None] = [None] * gf.n
    # y and y + 1 share an image; keep the smaller root
    for y in reversed(range(gf.order)):
        i = gf.mul(y, y) ^ y
        if i:
            table[i - 1] = y
    return tuple(table)


def build_cubic_table(gf: GF2m) -> tuple[tuple, tuple[int, ...], tuple]:
    """Return (c, k, c_single) for the family y^3 + y + i."""
    roots: list[list[int]] = [[] for _ in range(gf.n)]
    for y in gf.elements():
        i = gf.mul(gf.mul(y, y), y) ^ y
        if i:
            roots[i - 1].append(y)
    c = tuple(tuple(r) if len(r) == 3 else None for r in roots)
    k = tuple(i + 1 for i, r in enumerate(roots) if len(r) == 3)
    c_single = tuple(r[0] if len(r) == 1 else None for r in roots)
    return c, k, c_single


def build_tables(gf: GF2m) -> RootTables:
    c, k, c_single = build_cubic_table(gf)
    return RootTables(gf, build_quadratic_table(gf), c, k, c_single)


def _check(gf: GF2m, coeffs: tuple[int, ...], roots: tuple[int, ...]) -> tuple[int, ...]:
    for x in roots:
        if gf.eval_poly(coeffs, x):
            raise LutInvariantError(f"{x} is not a root of polynomial with coefficients {coeffs}")
    return roots


def solve_quadratic(tables: RootTables, s1: int, s2: int) -> tuple[int, ...]:
    """Distinct roots of x^2 + s1 x + s2, ascending.

    A double root (s1 = 0) is reported once.
    """
    gf = tables.gf
    if s1 == 0:
        return (gf.sqrt(s2),)
    u = gf.div(s2, gf.mul(s1, s1))
    if u == 0:
        roots = (0, s1)
    else:
        y0 = tables.quad_root(u)
        if y0 is None:
            return ()
        x0 = gf.mul(s1, y0)
        roots = (x0, x0 ^ s1)
    return _check(gf, (s2, s1, 1), tuple(sorted(roots)))


def solve_cubic(tables: RootTables, s1: int, s2: int, s3: int) -> tuple[int, ...]:
    """Distinct roots of x^3 + s1 x^2 + s2 x + s3, ascending."""
    gf = tables.gf
    a = gf.mul(s1, s1) ^ s2
    b = gf.mul(s1, s2) ^ s3
    if a == 0:
        # (x + s1)^3 = b
        roots = tuple(z ^ s1 for z in gf.cbrt(b))
    else:
        ra = gf.sqrt(a)
        if b == 0:
            # y^3 + y = y (y + 1)^2
            ys: tuple[int, ...] = (0, 1)
        else:
            o = gf.div(b, gf.mul(a, ra))
            row = tables.cubic_roots(o)
            if row is not None:
                ys = row
            else:
                single = tables.c_single[o - 1]
                ys = () if single is None else (single,)
        roots = tuple(gf.mul(ra, y) ^ s1 for y in ys)
    return _check(gf, (s3, s2, s1, 1), tuple(sorted(roots)))
