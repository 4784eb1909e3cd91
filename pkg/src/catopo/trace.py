"""Orbits and column traces of spatially periodic points.

A spatially periodic point of period ``L`` stays in the finite set of
period-``L`` points, so its orbit is eventually periodic. The column trace
``F^n(x)[i1 .. i2]`` inherits this, with a period dividing the orbit's.
Comparing two traces up to ``max preperiod + lcm of periods`` decides the
column-trace (Gilman) relation exactly on such points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .core import (
    BudgetExceeded,
    CyclicConfiguration,
    LocalRule,
    PreconditionError,
    Word,
    _as_word,
    _step_word,
    step_cyclic,
)

ORBIT_STEP_CAP = 10**6


@dataclass(frozen=True)
class OrbitSummary:
    preperiod: int
    period: int
    snapshots: tuple  # CyclicConfigurations at steps 0 .. preperiod + period - 1

    def at(self, n: int) -> CyclicConfiguration:
        m, p = self.preperiod, self.period
        if n >= m:
            n = m + (n - m) % p
        return self.snapshots[n]


@dataclass(frozen=True)
class ColumnTrace:
    i1: int
    i2: int
    words: tuple  # words[n] for n in 0 .. preperiod + period - 1
    preperiod: int
    period: int

    def at(self, n: int) -> Word:
        m, p = self.preperiod, self.period
        if n >= m:
            n = m + (n - m) % p
        return self.words[n]

    @property
    def periodic_words(self) -> tuple:
        return self.words[self.preperiod :]


def orbit_cycle(rule: LocalRule, x: CyclicConfiguration, max_steps: Optional[int] = None) -> OrbitSummary:
    """Exact preperiod and period of ``x`` under the global map."""
    if max_steps is None:
        max_steps = min(rule.k**x.period, ORBIT_STEP_CAP)
    phase = x.phase
    word = x.word
    seen = {}
    order = []
    for n in range(max_steps + 1):
        if word in seen:
            m = seen[word]
            snaps = tuple(CyclicConfiguration(w, phase) for w in order)
            return OrbitSummary(m, n - m, snaps)
        seen[word] = n
        order.append(word)
        word = _step_word(rule, word)
    raise BudgetExceeded(f"orbit did not close within {max_steps} steps")


def _minimal_eventual_period(seq: list, m: int, p: int) -> tuple:
    """Minimal ``(m', p')`` of a sequence known to satisfy ``seq[n+p] = seq[n]`` for ``n >= m``."""
    cycle = seq[m : m + p]
    q = next(
        q for q in range(1, p + 1)
        if p % q == 0 and all(cycle[i] == cycle[(i + q) % p] for i in range(p))
    )

    def at(n):
        return seq[n] if n < m else cycle[(n - m) % p]

    start = m
    while start > 0 and at(start - 1) == at(start - 1 + q):
        start -= 1
    return start, q


def column_trace(
    rule: LocalRule, x: CyclicConfiguration, i1: int, i2: int, max_steps: Optional[int] = None
) -> ColumnTrace:
    if i1 > i2:
        raise PreconditionError("window must satisfy i1 <= i2")
    orbit = orbit_cycle(rule, x, max_steps)
    seq = [snap.window(i1, i2) for snap in orbit.snapshots]
    m2, p2 = _minimal_eventual_period(seq, orbit.preperiod, orbit.period)
    return ColumnTrace(i1, i2, tuple(seq[: m2 + p2]), m2, p2)


def same_gilman_class(rule: LocalRule, x, y, i1: int, i2: int, max_steps=None) -> bool:
    """Whether ``F^j(x)[i1..i2] == F^j(y)[i1..i2]`` for every ``j >= 0``."""
    tx = column_trace(rule, x, i1, i2, max_steps)
    ty = column_trace(rule, y, i1, i2, max_steps)
    return traces_agree(tx, ty)


def traces_agree(tx: ColumnTrace, ty: ColumnTrace) -> bool:
    horizon = max(tx.preperiod, ty.preperiod) + math.lcm(tx.period, ty.period)
    return all(tx.at(n) == ty.at(n) for n in range(horizon))


def class_forward_consistency(rule: LocalRule, x, y, i1: int, i2: int) -> bool:
    """For ``x ~ y``, report whether ``F(x) ~ F(y)`` (always true for a CA)."""
    if not same_gilman_class(rule, x, y, i1, i2):
        raise PreconditionError("x and y are not in the same class on this window")
    return same_gilman_class(rule, step_cyclic(rule, x), step_cyclic(rule, y), i1, i2)


def embed_periodic(x_center, y_center, alphabet=None) -> CyclicConfiguration:
    """The point ``(x_center y_center x_center)^∞`` with ``y_center``'s middle at 0.

    For even ``|y_center|`` the left of the two middle letters is used.
    """
    if alphabet is not None:
        x_center = _as_word(alphabet, x_center)
        y_center = _as_word(alphabet, y_center)
    x_center, y_center = tuple(x_center), tuple(y_center)
    if not x_center or not y_center:
        raise PreconditionError("both words must be non-empty")
    word = x_center + y_center + x_center
    return CyclicConfiguration(word, len(x_center) + (len(y_center) - 1) // 2)
