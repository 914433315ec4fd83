"""Multi-start annealing for packings of n squares with a large side sum.

The hot loop works in floats with a soft quadratic overlap penalty.  Each
restart's end state is polished by a linear program that keeps the pairwise
left/right/above/below relations of the annealed layout and maximises the
side sum; both the raw and the polished layouts are then snapped to rationals
and repaired by shrinking every side by the smallest exact amount that
restores a valid packing.  Only exact sums are compared or reported.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from .constructions import conjectured_value
from .geometry import Packing, Square, side_sum, verify

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchConfig:
    n: int
    seed: int = 0
    restarts: int = 8
    iterations_per_restart: int = 6000
    initial_temperature: float = 0.05
    cooling_rate: float = 0.999
    move_scale: float = 0.1
    snap_denominator_limit: int = 10 ** 6
    penalty_start: float = 5.0
    penalty_end: float = 5000.0
    polish: bool = True
    workers: int = 1

    def __post_init__(self):
        for name in ("n", "restarts", "iterations_per_restart", "snap_denominator_limit", "workers"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
        if not -(2 ** 63) <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")
        if not self.initial_temperature > 0:
            raise ValueError("initial_temperature must be positive")
        if not 0 < self.cooling_rate < 1:
            raise ValueError("cooling_rate must lie in (0, 1)")
        if not self.move_scale > 0:
            raise ValueError("move_scale must be positive")
        if not 0 < self.penalty_start <= self.penalty_end:
            raise ValueError("need 0 < penalty_start <= penalty_end")


@dataclass(frozen=True)
class SearchResult:
    n: int
    best_float_sum: float
    best_packing: Packing | None
    conjecture_gap: Fraction | None
    counterexample_flag: bool
    restart_sums: tuple[Fraction | None, ...] = ()

    @property
    def exact_sum(self) -> Fraction | None:
        return None if self.best_packing is None else side_sum(self.best_packing)


# ---------------------------------------------------------------- snapping

def _pair_separation(s: Square, t: Square) -> Fraction:
    # smallest uniform side reduction (corners fixed) that separates s and t
    return min(s.right - t.x, t.right - s.x, s.top - t.y, t.top - s.y)


def repair_shrink(squares: Sequence[Square]) -> Fraction:
    """Minimal delta >= 0 such that shrinking every side by delta gives a valid packing.

    Lower-left corners stay put, so a reduction only ever removes overlap.
    """
    delta = Fraction(0)
    for s in squares:
        delta = max(delta, s.right - 1, s.top - 1)
    for i, s in enumerate(squares):
        for t in squares[i + 1:]:
            need = _pair_separation(s, t)
            if need > 0:
                delta = max(delta, need)
    return delta


def snap_to_rational(candidate, denominator_limit: int = 10 ** 6, label: str = "") -> Packing | None:
    """Exact packing near a float candidate of (x, y, side) triples, or None.

    Each number is replaced by its best rational approximation with
    denominator <= ``denominator_limit``; sides are then reduced uniformly by
    the least amount that makes the packing valid.
    """
    if denominator_limit < 1:
        raise ValueError("denominator_limit must be >= 1")
    snapped = []
    for x, y, e in candidate:
        x, y, e = (Fraction(float(v)).limit_denominator(denominator_limit) for v in (x, y, e))
        snapped.append(Square(min(max(x, Fraction(0)), Fraction(1)),
                              min(max(y, Fraction(0)), Fraction(1)), e))
    if not snapped:
        return Packing((), label)
    delta = repair_shrink(snapped)
    if delta > 0:
        snapped = [Square(s.x, s.y, s.side - delta) for s in snapped]
    if any(s.side <= 0 for s in snapped):
        return None
    p = Packing(tuple(snapped), label)
    return p if verify(p).valid else None


# ---------------------------------------------------------------- annealing

def _pair_penalty(xi, yi, si, xj, yj, sj) -> float:
    ox = min(xi + si, xj + sj) - max(xi, xj)
    if ox <= 0:
        return 0.0
    oy = min(yi + si, yj + sj) - max(yi, yj)
    if oy <= 0:
        return 0.0
    m = min(ox, oy)
    return m * m


def anneal(config: SearchConfig, rng: np.random.Generator) -> np.ndarray:
    """One annealing run; returns an (n, 3) array of x, y, side."""
    n = config.n
    iters = config.iterations_per_restart
    cells = math.ceil(math.sqrt(n))
    s = (rng.uniform(0.3, 1.0, n) / cells).tolist()
    x = (rng.uniform(0, 1, n) * (1 - np.array(s))).tolist()
    y = (rng.uniform(0, 1, n) * (1 - np.array(s))).tolist()
    # all randomness drawn up front: one stream per restart, fixed consumption
    picks = rng.integers(n, size=iters).tolist()
    kinds = rng.random(iters).tolist()
    gauss = rng.normal(size=(iters, 2)).tolist()
    flips = rng.random((iters, 2)).tolist()
    accept = rng.random(iters).tolist()

    pair = [[_pair_penalty(x[i], y[i], s[i], x[j], y[j], s[j]) if i != j else 0.0
             for j in range(n)] for i in range(n)]
    temp = config.initial_temperature
    lam_ratio = config.penalty_end / config.penalty_start
    for t in range(iters):
        lam = config.penalty_start * lam_ratio ** (t / max(iters - 1, 1))
        step = config.move_scale * max(temp / config.initial_temperature, 0.02)
        i = picks[t]
        ox, oy, os_ = x[i], y[i], s[i]
        g0, g1 = gauss[t]
        if kinds[t] < 0.4:
            x[i] += g0 * step
            y[i] += g1 * step
        elif kinds[t] < 0.8:
            s[i] = min(max(s[i] + g0 * step, 1e-6), 1.0)
        else:
            # resize anchored at a random corner
            s[i] = min(max(s[i] + g0 * step, 1e-6), 1.0)
            if flips[t][0] < 0.5:
                x[i] -= s[i] - os_
            if flips[t][1] < 0.5:
                y[i] -= s[i] - os_
        x[i] = min(max(x[i], 0.0), 1.0 - s[i])
        y[i] = min(max(y[i], 0.0), 1.0 - s[i])
        row = [_pair_penalty(x[i], y[i], s[i], x[j], y[j], s[j]) if j != i else 0.0 for j in range(n)]
        d_energy = -(s[i] - os_) + lam * (sum(row) - sum(pair[i]))
        if d_energy <= 0 or accept[t] < math.exp(-d_energy / temp):
            pair[i] = row
            for j in range(n):
                pair[j][i] = row[j]
        else:
            x[i], y[i], s[i] = ox, oy, os_
        temp *= config.cooling_rate
    return np.column_stack([x, y, s])


def polish_lp(state: np.ndarray, min_side: float = 1e-4) -> np.ndarray | None:
    """Maximise the side sum with the annealed pairwise relations held fixed.

    For every pair the relation (left of, right of, below, above) needing the
    least movement is imposed as a linear constraint; None if infeasible.
    """
    n = len(state)
    x, y, s = state[:, 0], state[:, 1], state[:, 2]
    # variables: x_0..x_{n-1}, y_0..y_{n-1}, s_0..s_{n-1}
    rows, rhs = [], []

    def add(coeffs):
        row = np.zeros(3 * n)
        for idx, v in coeffs:
            row[idx] += v
        rows.append(row)
        rhs.append(0.0)

    X, Y, S = 0, n, 2 * n
    for i in range(n):
        for j in range(i + 1, n):
            options = [
                (x[i] + s[i] - x[j], [(X + i, 1), (S + i, 1), (X + j, -1)]),
                (x[j] + s[j] - x[i], [(X + j, 1), (S + j, 1), (X + i, -1)]),
                (y[i] + s[i] - y[j], [(Y + i, 1), (S + i, 1), (Y + j, -1)]),
                (y[j] + s[j] - y[i], [(Y + j, 1), (S + j, 1), (Y + i, -1)]),
            ]
            add(min(options, key=lambda o: o[0])[1])
    for i in range(n):
        for axis in (X, Y):
            row = np.zeros(3 * n)
            row[axis + i] = 1
            row[S + i] = 1
            rows.append(row)
            rhs.append(1.0)
    cost = np.concatenate([np.zeros(2 * n), -np.ones(n)])
    bounds = [(0, 1)] * (2 * n) + [(min_side, 1)] * n
    res = linprog(cost, A_ub=np.array(rows) if rows else None, b_ub=np.array(rhs) if rhs else None,
                  bounds=bounds, method="highs")
    if res.status != 0:
        return None
    v = res.x
    return np.column_stack([v[X:X + n], v[Y:Y + n], v[S:S + n]])


def _float_sum(state: np.ndarray) -> float:
    return float(np.sum(state[:, 2]))


def run_restart(config: SearchConfig, index: int) -> tuple[float, Packing | None]:
    rng = np.random.default_rng(np.random.SeedSequence([config.seed % 2 ** 64, index]))
    state = anneal(config, rng)
    candidates = [state]
    if config.polish:
        polished = polish_lp(state)
        if polished is not None:
            candidates.insert(0, polished)
    best: tuple[float, Packing | None] = (_float_sum(state), None)
    best_exact = None
    for cand in candidates:
        p = snap_to_rational(cand, config.snap_denominator_limit, label=f"search n={config.n}")
        if p is None:
            continue
        total = side_sum(p)
        if best_exact is None or total > best_exact:
            best_exact = total
            best = (_float_sum(cand), p)
    return best


def search(config: SearchConfig) -> SearchResult:
    """Run all restarts and keep the largest exact snapped sum.

    Ties go to the lowest restart index, so the result depends only on the
    config and never on completion order when ``workers > 1``.
    """
    if config.workers > 1:
        with ProcessPoolExecutor(config.workers) as pool:
            outcomes = list(pool.map(run_restart, [config] * config.restarts, range(config.restarts)))
    else:
        outcomes = [run_restart(config, i) for i in range(config.restarts)]

    best_i, best_sum = None, None
    for i, (_, p) in enumerate(outcomes):
        if p is not None and (best_sum is None or side_sum(p) > best_sum):
            best_i, best_sum = i, side_sum(p)
    target = conjectured_value(config.n)
    restart_sums = tuple(None if p is None else side_sum(p) for _, p in outcomes)
    if best_i is None:
        float_best = max(f for f, _ in outcomes)
        log.warning("n=%d: no restart survived exact snapping", config.n)
        return SearchResult(config.n, float_best, None, None, False, restart_sums)
    float_sum, packing = outcomes[best_i]
    return SearchResult(config.n, float_sum, packing, target - best_sum, best_sum > target, restart_sums)


def counterexample_check(result: SearchResult, n: int) -> bool:
    """True iff the result's exact packing beats the conjectured value for n."""
    if result.best_packing is None:
        raise ValueError("result carries no exact packing")
    return side_sum(result.best_packing) > conjectured_value(n)
