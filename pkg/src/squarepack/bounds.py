"""Exact upper-bound transport between the statements P(c).

P(c) is the claim f(k^2 + 2c + 1) = k + c/k for every k >= |c|.  The engine
is the substitution inequality

    f(n) <= a - b^2/a + (b/a) * f(b^2 - a^2 + n),      1 <= a <= b,

applied twice.  Going up (P(c-1) => P(c), ``Direction.FROM_BELOW``) the first
application uses a = k-1, b = k; going down (P(c+1) => P(c),
``Direction.FROM_ABOVE``) it uses a = k+1, b = k+2.  Either way the excess over
k + c/k is then pushed to zero by a second application with a = k and b
growing.

Closed forms for the residuals are kept alongside, but every bound handed out
is the value obtained by replaying the inequality; the closed form is only
used as a cross-check.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .geometry import as_rational

DEFAULT_SCHEDULE = tuple(10 ** e for e in range(1, 7))


class Direction(str, enum.Enum):
    FROM_BELOW = "below"  # P(c-1) => P(c)
    FROM_ABOVE = "above"  # P(c+1) => P(c)

    @property
    def source_offset(self) -> int:
        return -1 if self is Direction.FROM_BELOW else 1


def _direction(d) -> Direction:
    return d if isinstance(d, Direction) else Direction(d)


def statement_n(k: int, c: int) -> int:
    return k * k + 2 * c + 1


@dataclass(frozen=True)
class Premise:
    """An assumed statement P(c)."""

    c: int

    @property
    def description(self) -> str:
        return f"f(k^2 + 2*({self.c}) + 1) = k + ({self.c})/k assumed for all k >= {abs(self.c)}"

    def applies_at(self, k: int) -> bool:
        return k >= 1 and k >= abs(self.c) and statement_n(k, self.c) >= 1

    def value(self, k: int) -> Fraction:
        if not self.applies_at(k):
            raise ValueError(f"P({self.c}) does not apply at stage k={k}")
        return k + Fraction(self.c, k)

    def stage_for(self, n: int) -> int | None:
        """The stage k with n = k^2 + 2c + 1, if there is one."""
        sq = n - 2 * self.c - 1
        if sq < 1:
            return None
        k = math.isqrt(sq)
        return k if k * k == sq and self.applies_at(k) else None


@dataclass(frozen=True)
class BoundStep:
    n: int
    a: int
    b: int
    premise_n: int
    premise_value: Fraction
    resulting_bound: Fraction

    def replay(self) -> Fraction:
        return self.a - Fraction(self.b * self.b, self.a) + Fraction(self.b, self.a) * self.premise_value

    def problems(self) -> list[str]:
        out = []
        if not 1 <= self.a <= self.b:
            out.append(f"need 1 <= a <= b, got a={self.a}, b={self.b}")
            return out
        if self.premise_n != self.b * self.b - self.a * self.a + self.n:
            out.append(f"premise_n {self.premise_n} != b^2 - a^2 + n")
        if self.resulting_bound != self.replay():
            out.append(f"resulting bound {self.resulting_bound} != replayed {self.replay()}")
        return out


@dataclass(frozen=True)
class Hop:
    """One transport P(premise) => P(target c), evidenced at stage k."""

    k: int
    c: int
    premise: int
    steps: tuple[BoundStep, ...]
    witness: tuple[tuple[int, Fraction], ...]
    limit_claim: Fraction

    @property
    def direction(self) -> Direction:
        return Direction.FROM_BELOW if self.premise == self.c - 1 else Direction.FROM_ABOVE

    @property
    def final_bound(self) -> Fraction:
        return self.witness[-1][1]


@dataclass(frozen=True)
class BoundCertificate:
    target: tuple[int, int]
    premise: int
    hops: tuple[Hop, ...]
    final_bound: Fraction
    limit_claim: Fraction | None

    @property
    def steps(self) -> tuple[BoundStep, ...]:
        return tuple(s for h in self.hops for s in h.steps)

    @property
    def witness(self) -> tuple[tuple[int, Fraction], ...]:
        return self.hops[-1].witness if self.hops else ()

    @property
    def residual(self) -> Fraction:
        k, c = self.target
        return self.final_bound - (k + Fraction(c, k))


def substitution_bound(n: int, a: int, b: int, premise_value) -> BoundStep:
    """Upper bound on f(n) from a bound ``premise_value`` on f(b^2 - a^2 + n)."""
    premise_value = as_rational(premise_value)
    if a <= 0:
        raise ValueError(f"a must be positive, got {a}")
    if a > b:
        raise ValueError(f"need a <= b, got a={a}, b={b}")
    if n <= 0:
        raise ValueError(f"n must be positive, got {n}")
    if premise_value < 0:
        raise ValueError("premise value must be nonnegative")
    bound = a - Fraction(b * b, a) + Fraction(b, a) * premise_value
    return BoundStep(n, a, b, b * b - a * a + n, premise_value, bound)


def step_one_residual(k: int, c: int, direction) -> Fraction:
    """Closed-form excess of the first substitution over k + c/k."""
    if _direction(direction) is Direction.FROM_BELOW:
        return Fraction(k + c, k * (k * k - 1))
    return Fraction(k - c, k * (k + 1) ** 2)


def step_two_residual(k: int, c: int, b: int, direction) -> Fraction:
    if _direction(direction) is Direction.FROM_BELOW:
        return Fraction(b + c, k * (b * b - 1))
    return Fraction(b - c, k * (b + 1) ** 2)


def _check_stage(k: int, c: int) -> None:
    if k < 1 or k < abs(c):
        raise ValueError(f"P({c}) is only stated for k >= |c|; got k={k}")
    if statement_n(k, c) < 1:
        raise ValueError(f"k={k}, c={c} names n = {statement_n(k, c)}, not a packing size")


def step_one_bound(k: int, c: int, direction) -> tuple[Fraction, BoundStep]:
    direction = _direction(direction)
    _check_stage(k, c)
    source = Premise(c + direction.source_offset)
    if direction is Direction.FROM_BELOW:
        if k < 2:
            raise ValueError("the step from below uses a = k - 1 and needs k >= 2")
        a, b, stage = k - 1, k, k + 1
    else:
        a, b, stage = k + 1, k + 2, k + 1
    if not source.applies_at(stage):
        raise ValueError(f"premise P({source.c}) does not apply at stage {stage}")
    step = substitution_bound(statement_n(k, c), a, b, source.value(stage))
    assert step.premise_n == statement_n(stage, source.c)
    closed = k + Fraction(c, k) + step_one_residual(k, c, direction)
    if step.resulting_bound != closed:
        raise ArithmeticError(f"closed form {closed} disagrees with replay {step.resulting_bound}")
    return step.resulting_bound, step


def min_schedule_b(k: int, c: int) -> int:
    """Smallest b accepted by the second step.

    b >= k keeps a = k <= b, b >= |c| + 1 keeps the inner first step legal at
    stage b, and b >= 2|c| + 2 is where both residuals are strictly
    decreasing in b.
    """
    return max(2, k, abs(c) + 1, 2 * abs(c) + 2)


def _step_two(k: int, c: int, b: int, direction: Direction) -> tuple[BoundStep, BoundStep]:
    _check_stage(k, c)
    if b < max(2, abs(c) + 1, k):
        raise ValueError(f"b={b} too small for k={k}, c={c}; need b >= {max(2, abs(c) + 1, k)}")
    inner_bound, inner = step_one_bound(b, c, direction)
    outer = substitution_bound(statement_n(k, c), k, b, inner_bound)
    assert outer.premise_n == inner.n
    closed = k + Fraction(c, k) + step_two_residual(k, c, b, direction)
    if outer.resulting_bound != closed:
        raise ArithmeticError(f"closed form {closed} disagrees with replay {outer.resulting_bound}")
    return inner, outer


def step_two_bound(k: int, c: int, b: int, direction) -> tuple[Fraction, BoundStep]:
    _, outer = _step_two(k, c, b, _direction(direction))
    return outer.resulting_bound, outer


def default_schedule(k: int, c: int) -> list[int]:
    lo = min_schedule_b(k, c)
    sched = [b for b in DEFAULT_SCHEDULE if b >= lo]
    nxt = 10 ** 7
    while len(sched) < 3:
        if nxt >= lo:
            sched.append(nxt)
        nxt *= 10
    return sched


def limit_bound(k: int, c: int, direction, b_schedule: Sequence[int] | None = None) -> BoundCertificate:
    direction = _direction(direction)
    _check_stage(k, c)
    sched = list(default_schedule(k, c) if b_schedule is None else b_schedule)
    if len(sched) < 2:
        raise ValueError("schedule needs at least two values of b")
    if any(b2 <= b1 for b1, b2 in zip(sched, sched[1:])):
        raise ValueError(f"schedule must be strictly increasing: {sched}")
    lo = min_schedule_b(k, c)
    if sched[0] < lo:
        raise ValueError(f"schedule starts below b={lo} for k={k}, c={c}")
    steps: list[BoundStep] = []
    witness: list[tuple[int, Fraction]] = []
    for b in sched:
        inner, outer = _step_two(k, c, b, direction)
        steps += [inner, outer]
        witness.append((b, outer.resulting_bound))
    if any(w2[1] >= w1[1] for w1, w2 in zip(witness, witness[1:])):
        raise ArithmeticError(f"bounds failed to decrease along the schedule: {witness}")
    limit = k + Fraction(c, k)
    hop = Hop(k, c, c + direction.source_offset, tuple(steps), tuple(witness), limit)
    return BoundCertificate((k, c), hop.premise, (hop,), hop.final_bound, limit)


def chain_derive(c_start: int, c_target: int, k: int, b_schedule: Sequence[int] | None = None) -> BoundCertificate:
    """Certificate for f(k^2 + 2*c_target + 1) <= ... conditional on P(c_start).

    Walks c_start -> c_target in unit hops.  Each intermediate statement is
    evidenced at stage max(k, |c|), or the next stage naming a positive n; the final hop lands on stage k.
    """
    _check_stage(k, c_target)
    target_value = k + Fraction(c_target, k)
    if c_start == c_target:
        return BoundCertificate((k, c_target), c_start, (), target_value, target_value)
    step = 1 if c_target > c_start else -1
    direction = Direction.FROM_BELOW if step == 1 else Direction.FROM_ABOVE
    hops = []
    for c in range(c_start + step, c_target + step, step):
        stage = max(k, abs(c))
        while statement_n(stage, c) < 1:
            stage += 1
        lo = min_schedule_b(stage, c)
        sched = default_schedule(stage, c) if b_schedule is None else [b for b in b_schedule if b >= lo]
        hops.append(limit_bound(stage, c, direction, sched).hops[0])
    last = hops[-1]
    return BoundCertificate((k, c_target), c_start, tuple(hops), last.final_bound, last.limit_claim)


def certificate_violations(cert: BoundCertificate) -> list[str]:
    """Every broken invariant of ``cert``; empty when it checks."""
    out: list[str] = []
    k, c = cert.target
    if k < 1 or k < abs(c):
        out.append(f"target stage k={k} < |c|={abs(c)}")
    if not cert.hops:
        if cert.premise != c:
            out.append("empty chain but premise differs from target")
        expected = k + Fraction(c, k) if k else None
        if cert.final_bound != expected:
            out.append(f"empty chain final bound {cert.final_bound} != {expected}")
        if cert.limit_claim is not None and cert.limit_claim != cert.final_bound:
            out.append("empty chain limit claim differs from final bound")
        return out

    available = cert.premise
    for h_i, hop in enumerate(cert.hops):
        tag = f"hop {h_i}"
        if hop.premise != available:
            out.append(f"{tag}: premise P({hop.premise}) is neither assumed nor established")
        if abs(hop.c - hop.premise) != 1:
            out.append(f"{tag}: P({hop.premise}) => P({hop.c}) is not a unit hop")
        if hop.k < 1 or hop.k < abs(hop.c):
            out.append(f"{tag}: stage k={hop.k} < |c|={abs(hop.c)}")
        source = Premise(hop.premise)
        seen: set[tuple[int, Fraction]] = set()
        for s_i, st in enumerate(hop.steps):
            for problem in st.problems():
                out.append(f"{tag} step {s_i}: {problem}")
            if (st.premise_n, st.premise_value) not in seen:
                stage = source.stage_for(st.premise_n)
                if stage is None or source.value(stage) != st.premise_value:
                    out.append(f"{tag} step {s_i}: premise f({st.premise_n}) <= {st.premise_value} "
                               f"follows neither from P({hop.premise}) nor from an earlier step")
            seen.add((st.n, st.resulting_bound))
        target_n = statement_n(hop.k, hop.c)
        if len(hop.witness) < 2:
            out.append(f"{tag}: monotonicity witness needs at least two points")
        for b, bound in hop.witness:
            if not any(st.n == target_n and st.a == hop.k and st.b == b and st.resulting_bound == bound
                       for st in hop.steps):
                out.append(f"{tag}: witness (b={b}, {bound}) is not backed by a step")
            if bound <= hop.limit_claim:
                out.append(f"{tag}: witness bound {bound} not above limit claim")
        for (b1, v1), (b2, v2) in zip(hop.witness, hop.witness[1:]):
            if not (b2 > b1 and v2 < v1):
                out.append(f"{tag}: witness not strictly decreasing at b={b1}->{b2}")
        if hop.limit_claim != hop.k + Fraction(hop.c, hop.k):
            out.append(f"{tag}: limit claim {hop.limit_claim} != k + c/k")
        available = hop.c

    last = cert.hops[-1]
    if (last.k, last.c) != (k, c):
        out.append(f"last hop targets {(last.k, last.c)}, certificate targets {(k, c)}")
    if cert.final_bound != last.final_bound and cert.final_bound != last.limit_claim:
        out.append(f"final bound {cert.final_bound} matches neither last step nor limit claim")
    if cert.limit_claim is not None and cert.limit_claim != last.limit_claim:
        out.append("certificate limit claim differs from last hop")
    return out


def check_certificate(cert: BoundCertificate) -> bool:
    return not certificate_violations(cert)


@dataclass(frozen=True)
class EpsilonRecord:
    k: int
    c: int
    estimate: Fraction

    @property
    def epsilon(self) -> Fraction:
        return self.estimate - (self.k + Fraction(self.c, self.k))

    @property
    def k_epsilon(self) -> Fraction:
        return self.k * self.epsilon

    @property
    def above_conjecture(self) -> bool:
        return self.epsilon > 0


def _estimate(value) -> Fraction:
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"estimate must be finite, got {value}")
        # shortest repr, so 1.98 becomes 99/50 rather than the binary expansion
        return Fraction(repr(value))
    return as_rational(value)


def epsilon_diagnostic(records: Iterable[tuple[int, int, object]]) -> list[EpsilonRecord]:
    out = [EpsilonRecord(k, c, _estimate(est)) for k, c, est in records]
    return sorted(out, key=lambda r: r.k)
