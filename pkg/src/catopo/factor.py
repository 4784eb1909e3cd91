"""Periodic factors onto ``Z/pZ`` built from column traces.

The factor map sends a configuration to the residue of the phase word it
carries on the window. It is well defined only when the phase words are
pairwise distinct; :func:`build_factor` checks this instead of assuming it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import (
    BudgetExceeded,
    CyclicConfiguration,
    LocalRule,
    Word,
    _as_word,
    step_cyclic,
)
from .trace import ColumnTrace, column_trace, embed_periodic


class IllDefinedFactor(ValueError):
    """Two phases share a window word without a consistent sub-period."""

    def __init__(self, message, phases=()):
        super().__init__(message)
        self.phases = phases


@dataclass(frozen=True)
class PeriodicFactor:
    """``pi(y) = residues[k]`` when ``y[i1..i2] == phase_words[k]``.

    The target system is ``Z/period Z`` with ``n -> n + 1``.
    """

    period: int
    preperiod: int
    i1: int
    i2: int
    phase_words: tuple
    residues: tuple = ()
    source: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.residues:
            object.__setattr__(self, "residues", tuple(range(len(self.phase_words))))
        if len(set(self.phase_words)) != len(self.phase_words):
            raise IllDefinedFactor("phase words must be pairwise distinct")

    def pi(self, y: CyclicConfiguration) -> Optional[int]:
        word = y.window(self.i1, self.i2)
        try:
            return self.residues[self.phase_words.index(word)]
        except ValueError:
            return None

    def quotient(self, q: int) -> "PeriodicFactor":
        """Compose with ``Z/pZ -> Z/qZ`` for a divisor ``q`` of the period."""
        if self.period % q:
            raise ValueError(f"{q} does not divide {self.period}")
        return PeriodicFactor(
            q, self.preperiod, self.i1, self.i2, self.phase_words,
            tuple(r % q for r in self.residues), self.source,
        )


def _reduce_phases(words: Sequence[Word]) -> int:
    """Smallest sub-period consistent with repeated phase words."""
    p = len(words)
    first = {}
    for k, w in enumerate(words):
        first.setdefault(w, k)
    if len(first) == p:
        return p
    for q in range(1, p):
        if p % q == 0 and all(words[k] == words[k % q] for k in range(p)):
            if len(set(words[:q])) == q:
                return q
    clash = [(first[w], k) for k, w in enumerate(words) if first[w] != k]
    raise IllDefinedFactor(f"phases {clash[0]} carry the same window word", clash)


def factor_from_trace(trace: ColumnTrace, source: str = "") -> PeriodicFactor:
    words = trace.periodic_words
    q = _reduce_phases(words)
    return PeriodicFactor(q, trace.preperiod, trace.i1, trace.i2, tuple(words[:q]), (), source)


def build_factor(
    rule: LocalRule, x: CyclicConfiguration, i1: int, i2: int, max_steps: Optional[int] = None
) -> PeriodicFactor:
    trace = column_trace(rule, x, i1, i2, max_steps)
    src = f"{rule.name or 'rule'} @ {rule.alphabet.format(x.anchored())}"
    return factor_from_trace(trace, src)


@dataclass(frozen=True)
class Violation:
    y: CyclicConfiguration
    phase: int
    image_word: Word
    image_phase: Optional[int]


@dataclass(frozen=True)
class FactorVerification:
    checked: int
    in_domain: int
    violations: tuple

    @property
    def passed(self) -> bool:
        return not self.violations


def cyclic_configurations(k: int, max_period: int):
    """Every spatially periodic point with period at most ``max_period``, once."""
    from itertools import product

    seen = set()
    for L in range(1, max_period + 1):
        for word in product(range(k), repeat=L):
            x = CyclicConfiguration(word)
            if x.key not in seen:
                seen.add(x.key)
                yield x


def verify_factor(rule: LocalRule, factor: PeriodicFactor, test_period_bound: int = 6) -> FactorVerification:
    """Check ``pi(F(y)) = pi(y) + 1 mod p`` on every periodic ``y`` in the domain."""
    checked = in_domain = 0
    bad = []
    for y in cyclic_configurations(rule.k, test_period_bound):
        checked += 1
        k = factor.pi(y)
        if k is None:
            continue
        in_domain += 1
        fy = step_cyclic(rule, y)
        k2 = factor.pi(fy)
        if k2 != (k + 1) % factor.period:
            bad.append(Violation(y, k, fy.window(factor.i1, factor.i2), k2))
    return FactorVerification(checked, in_domain, tuple(bad))


def divisor_check(system_period: int, factor_period: int) -> bool:
    if system_period < 1 or factor_period < 1:
        raise ValueError("periods must be >= 1")
    return system_period % factor_period == 0


@dataclass(frozen=True)
class SpectrumRecord:
    y: Word
    trace_preperiod: Optional[int]
    trace_period: Optional[int]
    factor_period: Optional[int]
    running_lcm: int
    error: str = ""


@dataclass(frozen=True)
class SpectrumReport:
    records: tuple
    periods: tuple  # sorted distinct factor periods
    lcm: int
    lcm_grew: bool
    x_center_blocking: Optional[bool] = None

    @property
    def errors(self) -> tuple:
        return tuple(r for r in self.records if r.error)


def period_spectrum(
    rule: LocalRule,
    x_center,
    y_windows,
    window: tuple = (-1, 1),
    max_steps: Optional[int] = None,
    check_blocking: bool = True,
) -> SpectrumReport:
    """Factor periods of ``(x_center y x_center)^∞`` for each ``y`` in ``y_windows``.

    ``lcm_grew`` is true when the running lcm strictly increases at some
    point after the first successful record.
    """
    x_center = _as_word(rule, x_center)
    i1, i2 = window
    records = []
    periods = set()
    running = 1
    grew = False
    started = False
    for y in y_windows:
        y = _as_word(rule, y)
        trace = None
        try:
            x = embed_periodic(x_center, y)
            trace = column_trace(rule, x, i1, i2, max_steps)
            f = factor_from_trace(trace)
        except (BudgetExceeded, IllDefinedFactor) as exc:
            m, p = (trace.preperiod, trace.period) if trace else (None, None)
            records.append(SpectrumRecord(y, m, p, None, running, str(exc)))
            continue
        new = math.lcm(running, f.period)
        if started and new > running:
            grew = True
        started = True
        running = new
        periods.add(f.period)
        records.append(SpectrumRecord(y, trace.preperiod, trace.period, f.period, running))

    blocking = None
    if check_blocking:
        from .blocking import BlockingQuery, Certified, verify_blocking

        s = max(rule.radius, 1)
        if len(x_center) >= s:
            blocking = any(
                isinstance(verify_blocking(rule, BlockingQuery(x_center, s, p), 200), Certified)
                for p in range(len(x_center) - s + 1)
            )
        else:
            blocking = False
    return SpectrumReport(tuple(records), tuple(sorted(periods)), running, grew, blocking)


def format_spectrum(rule: LocalRule, report: SpectrumReport) -> list:
    """Line-oriented records: y-word, trace preperiod, trace period, factor period, running lcm."""
    lines = []
    for r in report.records:
        fields = [rule.alphabet.format(r.y), r.trace_preperiod, r.trace_period, r.factor_period, r.running_lcm]
        line = "\t".join("-" if v is None else str(v) for v in fields)
        if r.error:
            line += f"\terror: {r.error}"
        lines.append(line)
    return lines
