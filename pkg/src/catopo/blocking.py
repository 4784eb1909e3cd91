"""Blocking words: certification by a three-valued abstract run, exact refutation.

A word ``w`` is ``s``-blocking at offset ``p`` when every configuration
carrying ``w`` at coordinates ``0 .. |w|-1`` has the same column
``F^n(x)[p .. p+s]`` (``s+1`` cells) for every ``n >= 0``.

Certification runs the rule on words over ``A ∪ {UNKNOWN}``: a cell is known
only when all completions of the unknown cells around it give the same
output. Unknown cells never become wrongly known, so a column that stays
known through one full cycle of the (finite) abstract run is blocked forever.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Optional, Union

import numpy as np

from .core import (
    TABLE_BUDGET,
    BudgetExceeded,
    LocalRule,
    PreconditionError,
    Word,
    apply_rule_word,
    is_identity_rule,
    iterate_rule,
    compose,
)
from .decision import is_surjective

#: the unknown cell value in abstract words
UNKNOWN = -1


@dataclass(frozen=True)
class BlockingQuery:
    word: Word
    s: int
    offset: int = 0

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        if self.s < 1:
            raise PreconditionError("blocking width s must be >= 1")
        if len(self.word) < self.s:
            raise PreconditionError("blocking word must have length >= s")
        if not 0 <= self.offset <= len(self.word) - self.s:
            raise PreconditionError(f"offset must lie in [0, {len(self.word) - self.s}]")

    @property
    def column(self) -> tuple:
        return self.offset, self.offset + self.s


@dataclass(frozen=True)
class Certified:
    preperiod: int
    period: int
    column_words: tuple


@dataclass(frozen=True)
class Refuted:
    """Two extensions of the word whose columns differ after ``step`` steps.

    ``extensions`` cover the word and the dependence cone of the column;
    ``word_start`` indexes the word's first cell and ``cone`` the inclusive
    cone bounds inside each extension.
    """

    step: int
    extensions: tuple
    differing_columns: tuple
    word_start: int
    cone: tuple


@dataclass(frozen=True)
class Inconclusive:
    steps_used: int
    budget: int
    reason: str = ""


BlockingVerdict = Union[Certified, Refuted, Inconclusive]


@lru_cache(maxsize=256)
def _lifted_table(rule: LocalRule) -> np.ndarray:
    """Table over ``k+1`` values (index ``k`` is unknown); ``-1`` marks undetermined."""
    k, n = rule.k, rule.diameter + 1
    size = (k + 1) ** n
    if size > TABLE_BUDGET:
        raise BudgetExceeded(f"lifted table of {size} entries exceeds budget")
    out = np.empty(size, dtype=np.int16)
    table = rule.table
    for idx, nb in enumerate(product(range(k + 1), repeat=n)):
        unknown = [j for j, c in enumerate(nb) if c == k]
        if not unknown:
            out[idx] = table[_base(nb, k)]
            continue
        vals = set()
        cells = list(nb)
        for fill in product(range(k), repeat=len(unknown)):
            for j, c in zip(unknown, fill):
                cells[j] = c
            vals.add(int(table[_base(cells, k)]))
            if len(vals) > 1:
                break
        out[idx] = vals.pop() if len(vals) == 1 else UNKNOWN
    return out


def _base(cells, k) -> int:
    idx = 0
    for c in cells:
        idx = idx * k + c
    return idx


def abstract_step(rule: LocalRule, cells: tuple) -> tuple:
    """One step of the lifted rule on a fixed window; outside cells are unknown."""
    k, m, d = rule.k, rule.memory, rule.diameter
    lifted = _lifted_table(rule)
    n = len(cells)
    code = [k if c == UNKNOWN else c for c in cells]
    out = []
    for i in range(n):
        idx = 0
        for j in range(i + m, i + m + d + 1):
            idx = idx * (k + 1) + (code[j] if 0 <= j < n else k)
        out.append(int(lifted[idx]))
    return tuple(out)


def _initial_state(q: BlockingQuery, margin: int) -> tuple:
    # The window covers the word and the column, plus `margin` cells per side.
    right = max(0, q.offset + q.s - len(q.word) + 1)
    state = (UNKNOWN,) * margin + tuple(q.word) + (UNKNOWN,) * (right + margin)
    return state, q.offset + margin, q.offset + q.s + margin


def verify_blocking(
    rule: LocalRule,
    q: BlockingQuery,
    max_steps: int = 200,
    margin: int = 0,
    refute_steps: Optional[int] = None,
    **refute_budgets,
) -> BlockingVerdict:
    """Certify, refute, or give up on a blocking query."""
    if max_steps < 1:
        raise PreconditionError("max_steps must be >= 1")
    state, lo, hi = _initial_state(q, margin)
    seen = {}
    history = []
    for n in range(max_steps + 1):
        col = state[lo : hi + 1]
        if UNKNOWN in col:
            return _try_refute(rule, q, refute_steps or max_steps, n, refute_budgets)
        if state in seen:
            pre = seen[state]
            return Certified(pre, n - pre, tuple(history))
        seen[state] = n
        history.append(col)
        state = abstract_step(rule, state)
    return Inconclusive(max_steps, max_steps, "abstract run did not close a cycle")


def _try_refute(rule, q, steps, undetermined_at, budgets) -> BlockingVerdict:
    try:
        witness = refute_blocking(rule, q, max(steps, undetermined_at), start=undetermined_at, **budgets)
    except BudgetExceeded as exc:
        return Inconclusive(undetermined_at, steps, str(exc))
    if witness is None:
        return Inconclusive(steps, steps, "column undetermined in the abstraction, no witness found")
    return witness


def refute_blocking(
    rule: LocalRule,
    q: BlockingQuery,
    max_steps: int = 50,
    start: Optional[int] = None,
    set_budget: int = 4096,
    cone_budget: int = 64,
) -> Optional[Refuted]:
    """Exact bounded search for two extensions of ``w`` whose columns differ.

    For each step ``n`` the column depends only on the cone
    ``[p + n*m, p + s + n*a]``; every completion of the cone cells outside
    ``w`` is pushed through ``n`` applications of the rule, deduplicating
    the intermediate words at every level. The first step with two distinct
    columns gives the witness. Steps at which the three-valued run already
    fixes the column are skipped, since the exact set is then a singleton.
    """
    if max_steps < 1:
        raise PreconditionError("max_steps must be >= 1")
    if start is None:
        start = _first_undetermined(rule, q, max_steps)
        if start is None:
            return None
    m, a = rule.memory, rule.anticipation
    p, s = q.offset, q.s
    w = q.word
    for n in range(start, max_steps + 1):
        c_lo, c_hi = p + n * m, p + s + n * a
        width = c_hi - c_lo + 1
        if width > cone_budget:
            raise BudgetExceeded(f"cone of width {width} exceeds budget {cone_budget}")
        free = [i for i in range(c_lo, c_hi + 1) if not 0 <= i < len(w)]
        if rule.k ** len(free) > set_budget:
            raise BudgetExceeded(
                f"{rule.k ** len(free)} completions at step {n} exceed budget {set_budget}"
            )
        base = [w[i] if 0 <= i < len(w) else 0 for i in range(c_lo, c_hi + 1)]
        level = {}
        for fill in product(range(rule.k), repeat=len(free)):
            cells = list(base)
            for i, c in zip(free, fill):
                cells[i - c_lo] = c
            cells = tuple(cells)
            level.setdefault(cells, cells)
        for _ in range(n):
            nxt = {}
            for word, origin in level.items():
                nxt.setdefault(apply_rule_word(rule, word), origin)
            level = nxt
            if len(level) > set_budget:
                raise BudgetExceeded(f"achievable set exceeded {set_budget}")
        if len(level) >= 2:
            (c1, o1), (c2, o2) = sorted(level.items())[:2]
            return _witness(q, n, c_lo, (o1, o2), (c1, c2))
    return None


def _witness(q, n, c_lo, cones, columns) -> Refuted:
    # Extend both cone words to cover the blocking word too; cells of the
    # word outside the cone are copied from it.
    w = q.word
    c_hi = c_lo + len(cones[0]) - 1
    lo, hi = min(0, c_lo), max(len(w) - 1, c_hi)
    exts = []
    for cone in cones:
        cells = [cone[i - c_lo] if c_lo <= i <= c_hi else w[i] for i in range(lo, hi + 1)]
        exts.append(tuple(cells))
    return Refuted(n, tuple(exts), columns, -lo, (c_lo - lo, c_hi - lo))


def _first_undetermined(rule, q, max_steps) -> Optional[int]:
    state, lo, hi = _initial_state(q, 0)
    for n in range(max_steps + 1):
        if UNKNOWN in state[lo : hi + 1]:
            return n
        state = abstract_step(rule, state)
    return None


def replay_witness(rule: LocalRule, witness: Refuted) -> tuple:
    """Columns obtained by simulating both recorded extensions exactly."""
    cols = []
    lo, hi = witness.cone
    for ext in witness.extensions:
        ext = ext[lo : hi + 1]
        for _ in range(witness.step):
            ext = apply_rule_word(rule, ext)
        cols.append(ext)
    return tuple(cols)


def find_blocking_words(
    rule: LocalRule,
    s: int,
    max_len: int,
    max_steps: int = 200,
    margin: int = 0,
    limit: Optional[int] = None,
) -> list:
    """All certified ``(word, offset, verdict)`` with ``s <= |word| <= max_len``.

    Words come in length-then-lexicographic order; each is reported once,
    with its smallest certified offset. ``limit`` stops after that many hits.
    """
    if s < 1:
        raise PreconditionError("s must be >= 1")
    found = []
    for length in range(s, max_len + 1):
        for w in rule.alphabet.words(length):
            for p in range(0, length - s + 1):
                v = _certify_only(rule, BlockingQuery(w, s, p), max_steps, margin)
                if v is not None:
                    found.append((w, p, v))
                    if limit is not None and len(found) >= limit:
                        return found
                    break
    return found


def _certify_only(rule, q, max_steps, margin) -> Optional[Certified]:
    state, lo, hi = _initial_state(q, margin)
    seen = {}
    history = []
    for n in range(max_steps + 1):
        col = state[lo : hi + 1]
        if UNKNOWN in col:
            return None
        if state in seen:
            return Certified(seen[state], n - seen[state], tuple(history))
        seen[state] = n
        history.append(col)
        state = abstract_step(rule, state)
    return None


# --- classification ---------------------------------------------------------


@dataclass(frozen=True)
class Budgets:
    max_len: int = 4
    max_steps: int = 100
    max_period: int = 12
    table_budget: int = 10**6


@dataclass(frozen=True)
class EquicontinuousCertified:
    """``F^(m+p) = F^m`` holds exactly, so the map is eventually periodic."""

    m: int
    p: int


@dataclass(frozen=True)
class AlmostEquicontinuousEvidence:
    word: Word
    offset: int
    verdict: Certified


@dataclass(frozen=True)
class SensitiveEvidence:
    """No certified word up to the length budget and a refutation at every length."""

    refuted_lengths: tuple


@dataclass(frozen=True)
class Unknown:
    reason: str = ""


def map_period(rule: LocalRule, max_period: int, table_budget: int = 10**6) -> Optional[tuple]:
    """Least ``(m, p)`` with ``F^(m+p) = F^m`` and ``m + p <= max_period``, if any.

    Powers are kept in minimized form, so eventually periodic maps stay small.
    Returns ``None`` when no repeat is found within either budget.
    """
    from .core import identity_rule

    seen = {identity_rule(rule.alphabet).minimized(): 0}
    power = rule.minimized()
    for j in range(1, max_period + 1):
        if power in seen:
            m = seen[power]
            return m, j - m
        seen[power] = j
        if j == max_period:
            break
        try:
            power = compose(rule, power, table_budget).minimized()
        except BudgetExceeded:
            return None
    return None


def classify_kurka(rule: LocalRule, budgets: Budgets = Budgets()):
    """Place a rule on the equicontinuity axis at bounded budgets.

    Returns :class:`EquicontinuousCertified`, :class:`AlmostEquicontinuousEvidence`,
    :class:`SensitiveEvidence` or :class:`Unknown`. Only the first is a proof;
    sensitivity is never claimed beyond evidence.
    """
    mp = map_period(rule, budgets.max_period, budgets.table_budget)
    if mp is not None:
        return EquicontinuousCertified(*mp)
    s = max(rule.radius, 1)
    refuted_lengths = []
    for length in range(s, budgets.max_len + 1):
        refuted_here = False
        for w in rule.alphabet.words(length):
            for p in range(0, length - s + 1):
                v = verify_blocking(rule, BlockingQuery(w, s, p), budgets.max_steps)
                if isinstance(v, Certified):
                    return AlmostEquicontinuousEvidence(w, p, v)
                if isinstance(v, Refuted):
                    refuted_here = True
        if refuted_here:
            refuted_lengths.append(length)
    if budgets.max_len >= s and len(refuted_lengths) == budgets.max_len - s + 1:
        return SensitiveEvidence(tuple(refuted_lengths))
    return Unknown("no certificate, no blocking word, refutations incomplete")


def bt_certificate_holds(rule: LocalRule, p: int) -> bool:
    """A surjective rule with ``F^p = Id``: both facts checked exactly."""
    return is_surjective(rule).verdict and is_identity_rule(iterate_rule(rule, p))
