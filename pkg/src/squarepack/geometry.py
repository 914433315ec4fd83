"""Exact-rational model of axis-parallel squares packed in the unit square.

All quantities are :class:`fractions.Fraction`.  A square is open: two squares
overlap only when their interiors meet, so squares sharing an edge or a corner
are a legal packing.  Containment is checked against the closed unit square.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

Rational = Fraction

SWEEP_THRESHOLD = 256

ZERO = Fraction(0)
ONE = Fraction(1)


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and rational strings ("10/3") to Fraction.

    Floats are refused: silently turning 0.1 into 3602879701896397/2**55 is
    exactly the kind of drift this module exists to avoid.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}: {value!r}")


@dataclass(frozen=True)
class Square:
    x: Fraction
    y: Fraction
    side: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", as_rational(self.x))
        object.__setattr__(self, "y", as_rational(self.y))
        object.__setattr__(self, "side", as_rational(self.side))

    @property
    def right(self) -> Fraction:
        return self.x + self.side

    @property
    def top(self) -> Fraction:
        return self.y + self.side

    def contained(self) -> bool:
        return self.x >= 0 and self.y >= 0 and self.right <= 1 and self.top <= 1


@dataclass(frozen=True)
class Packing:
    squares: tuple[Square, ...] = ()
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "squares", tuple(self.squares))

    def __len__(self) -> int:
        return len(self.squares)

    def __iter__(self):
        return iter(self.squares)


@dataclass(frozen=True)
class Violation:
    kind: str  # "containment" | "overlap" | "nonpositive-side"
    indices: tuple[int, ...]
    witness: tuple[Fraction, ...]


@dataclass(frozen=True)
class VerificationReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid

    def of_kind(self, kind: str) -> list[Violation]:
        return [v for v in self.violations if v.kind == kind]

    @property
    def overlap_pairs(self) -> list[tuple[int, ...]]:
        return [v.indices for v in self.of_kind("overlap")]


def side_sum(p: Packing | Iterable[Square]) -> Fraction:
    return sum((s.side for s in p), ZERO)


def area_sum(p: Packing | Iterable[Square]) -> Fraction:
    return sum((s.side * s.side for s in p), ZERO)


def squares_overlap(s1: Square, s2: Square) -> bool:
    """True iff the open interiors intersect (touching edges do not count)."""
    return (
        max(s1.x, s2.x) < min(s1.right, s2.right)
        and max(s1.y, s2.y) < min(s1.top, s2.top)
    )


def _scaled_integers(squares: Sequence[Square]) -> tuple[int, list[tuple[int, int, int]]]:
    # common denominator so the hot loops compare machine-friendly ints
    denom = 1
    for s in squares:
        denom = math.lcm(denom, s.x.denominator, s.y.denominator, s.side.denominator)
    out = []
    for s in squares:
        x = s.x.numerator * (denom // s.x.denominator)
        y = s.y.numerator * (denom // s.y.denominator)
        e = s.side.numerator * (denom // s.side.denominator)
        out.append((x, y, e))
    return denom, out


def _pairs_pairwise(boxes, live):
    for a in range(len(live)):
        i = live[a]
        xi, yi, ei = boxes[i]
        for j in live[a + 1:]:
            xj, yj, ej = boxes[j]
            if max(xi, xj) < min(xi + ei, xj + ej) and max(yi, yj) < min(yi + ei, yj + ej):
                yield i, j


def _pairs_sweep(boxes, live):
    # sort by left edge; a square stays active until the sweep reaches its right edge
    order = sorted(live, key=lambda i: boxes[i][0])
    active: list[int] = []
    for i in order:
        xi, yi, ei = boxes[i]
        active = [j for j in active if boxes[j][0] + boxes[j][2] > xi]
        for j in active:
            _, yj, ej = boxes[j]
            if max(yi, yj) < min(yi + ei, yj + ej):
                yield (j, i) if j < i else (i, j)
        active.append(i)


def overlapping_pairs(squares: Sequence[Square], sweep_threshold: int = SWEEP_THRESHOLD) -> list[tuple[int, int]]:
    """Index pairs (i < j) of squares whose open interiors intersect.

    Squares with nonpositive side have empty interior and never overlap.
    """
    squares = list(squares)
    denom, boxes = _scaled_integers(squares)
    live = [i for i, (_, _, e) in enumerate(boxes) if e > 0]
    finder = _pairs_sweep if len(live) > sweep_threshold else _pairs_pairwise
    return sorted(finder(boxes, live))


def _overlap_witness(s1: Square, s2: Square) -> tuple[Fraction, Fraction]:
    # centre of the intersection rectangle lies in both open interiors
    x0, x1 = max(s1.x, s2.x), min(s1.right, s2.right)
    y0, y1 = max(s1.y, s2.y), min(s1.top, s2.top)
    return (x0 + x1) / 2, (y0 + y1) / 2


def verify(p: Packing | Sequence[Square], sweep_threshold: int = SWEEP_THRESHOLD) -> VerificationReport:
    """Check every square for positivity and containment, and every pair for overlap.

    Violations are returned as data.  Witnesses are exact: the offending
    square's (x, y, side) for containment and side problems, and a point in
    both open interiors for an overlap.
    """
    squares = list(p)
    violations: list[Violation] = []
    for i, s in enumerate(squares):
        if s.side <= 0:
            violations.append(Violation("nonpositive-side", (i,), (s.x, s.y, s.side)))
        if not s.contained():
            violations.append(Violation("containment", (i,), (s.x, s.y, s.side)))
    for i, j in overlapping_pairs(squares, sweep_threshold):
        violations.append(Violation("overlap", (i, j), _overlap_witness(squares[i], squares[j])))
    return VerificationReport(tuple(violations))


def scale_translate(p: Packing | Iterable[Square], factor, dx=0, dy=0) -> list[Square]:
    factor, dx, dy = as_rational(factor), as_rational(dx), as_rational(dy)
    if factor <= 0:
        raise ValueError(f"scale factor must be positive, got {factor}")
    return [Square(factor * s.x + dx, factor * s.y + dy, factor * s.side) for s in p]
