"""Decomposition of n as k^2 or k^2 + 2c + 1, and packings that reach k + c/k.

Every nonsquare n sits an odd distance from a neighbouring square, so it can
be written uniquely as ``k*k + 2*c + 1`` with ``|c| <= k - 1``.  The lower-bound
packings here are all built from grids and one grid-substitution step: tile
the unit square with a b x b grid, empty an a x a block of cells and drop a
copy of another packing, scaled by a/b, into the hole.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .geometry import Packing, Square, as_rational, scale_translate, verify


@dataclass(frozen=True)
class Decomposition:
    n: int
    k: int
    c: int | None = None  # None for a perfect square

    @property
    def is_square(self) -> bool:
        return self.c is None

    def recompose(self) -> int:
        return self.k * self.k if self.c is None else self.k * self.k + 2 * self.c + 1


def _check_positive(name: str, value: int) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or value <= 0:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")


def decompose(n: int) -> Decomposition:
    _check_positive("n", n)
    k0 = math.isqrt(n)
    if k0 * k0 == n:
        return Decomposition(n, k0)
    k = k0 if (n - k0 * k0) % 2 == 1 else k0 + 1
    c = (n - k * k - 1) // 2
    return Decomposition(n, k, c)


def conjectured_value(n: int) -> Fraction:
    """k for n = k^2, else k + c/k for n = k^2 + 2c + 1."""
    d = decompose(n)
    if d.is_square:
        return Fraction(d.k)
    return d.k + Fraction(d.c, d.k)


def grid(b: int) -> Packing:
    _check_positive("b", b)
    side = Fraction(1, b)
    squares = [Square(Fraction(i, b), Fraction(j, b), side) for j in range(b) for i in range(b)]
    return Packing(tuple(squares), label=f"grid({b})")


def substitute(b: int, a: int, block_col: int | None = None, block_row: int | None = None,
               inner: Packing = Packing(), check_inner: bool = True) -> Packing:
    """Replace an a x a block of the b x b grid by ``inner`` scaled by a/b.

    The block defaults to the top-right corner.  The result has
    ``b*b - a*a + len(inner)`` squares and side sum ``(a*S + b*b - a*a)/b``
    where S is the side sum of ``inner``.
    """
    _check_positive("b", b)
    _check_positive("a", a)
    if a > b:
        raise ValueError(f"block size a={a} exceeds grid size b={b}")
    col = b - a if block_col is None else block_col
    row = b - a if block_row is None else block_row
    if not (0 <= col <= b - a and 0 <= row <= b - a):
        raise ValueError(f"{a}x{a} block at ({col}, {row}) does not fit in a {b}x{b} grid")
    if check_inner and not verify(inner).valid:
        raise ValueError("inner packing is not valid")

    side = Fraction(1, b)
    kept = [
        Square(Fraction(i, b), Fraction(j, b), side)
        for j in range(b) for i in range(b)
        if not (col <= i < col + a and row <= j < row + a)
    ]
    placed = scale_translate(inner, Fraction(a, b), Fraction(col, b), Fraction(row, b))
    label = f"substitute(b={b}, a={a}, block=({col},{row}), inner={inner.label or len(inner)})"
    return Packing(tuple(kept + placed), label=label)


def construct_conjectured(n: int, slack=None) -> Packing:
    """Explicit packing of n squares with side sum k + c/k (or k for n = k^2).

    For c >= 1 a c x c block of the k-grid becomes a (c+1)-grid; for c = -d <= -1
    a d x d block becomes a (d-1)-grid.  The c = 0 case (n = k^2 + 1) needs a
    positive ``slack`` < 1/k: one grid cell is split into a square of side
    1/k - slack and a square of side slack/2 in the freed strip, giving sum
    k - slack/2.
    """
    d = decompose(n)
    k, c = d.k, d.c
    if slack is not None and c != 0:
        raise ValueError(f"slack only applies to n = k^2 + 1; n={n} does not take one")
    if d.is_square:
        p = grid(k)
    elif c >= 1:
        p = substitute(k, c, inner=grid(c + 1), check_inner=False)
    elif c <= -1:
        m = -c
        inner = grid(m - 1) if m > 1 else Packing()
        p = substitute(k, m, inner=inner, check_inner=False)
    else:
        if slack is None:
            raise ValueError(f"n={n} = {k}^2 + 1 needs a positive slack")
        slack = as_rational(slack)
        if not 0 < slack < Fraction(1, k):
            raise ValueError(f"slack must lie in (0, 1/{k}), got {slack}")
        cell = Fraction(1, k)
        squares = [
            Square(Fraction(i, k), Fraction(j, k), cell)
            for j in range(k) for i in range(k)
            if (i, j) != (k - 1, k - 1)
        ]
        corner = Fraction(k - 1, k)
        big = cell - slack
        squares.append(Square(corner, corner, big))
        squares.append(Square(corner + big, corner, slack / 2))
        p = Packing(tuple(squares))
    return Packing(p.squares, label=f"conjectured n={n}")
