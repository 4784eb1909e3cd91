"""Enumerate or sample rule spaces and filter them by decidable predicates.

Spaces:

``eca``
    all 256 elementary rules, in Wolfram order.
``random:K:R``
    uniform tables over ``K`` symbols with neighborhood ``[-R, R]`` (sampled).
``walled:K``
    radius-1 rules over ``K`` symbols where symbol 0 is a permanent wall
    (``f(a, 0, c) = 0``) and non-wall cells never become walls (sampled).
    Every such rule has ``ww`` as a certified blocking word, which makes
    the almost-equicontinuous, surjective corner reachable by sampling.
"""

from __future__ import annotations

import random
import string
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from .blocking import find_blocking_words, map_period
from .core import Alphabet, LocalRule, eca
from .decision import is_injective, is_surjective


@dataclass(frozen=True)
class Predicates:
    surjective: Optional[bool] = None
    injective: Optional[bool] = None
    blocking: Optional[tuple] = None  # (s, max_len)
    not_eventually_periodic: Optional[int] = None  # max map period tried
    blocking_steps: int = 100


@dataclass(frozen=True)
class ScanHit:
    name: str
    rule: LocalRule
    blocking_word: Optional[tuple] = None
    facts: dict = field(default_factory=dict, compare=False)


def _symbols(k: int) -> tuple:
    return tuple(string.digits[:k]) if k <= 10 else tuple(f"s{i}" for i in range(k))


def rule_space(space: str, count: int = 1000, seed: int = 0) -> Iterator[tuple]:
    """Yield ``(name, rule)`` pairs for a space description."""
    kind, _, rest = space.partition(":")
    if kind == "eca":
        for n in range(256):
            yield f"eca:{n}", eca(n)
        return
    rng = random.Random(seed)
    if kind == "random":
        k, r = (int(v) for v in rest.split(":"))
        alphabet = Alphabet(_symbols(k))
        n = k ** (2 * r + 1)
        for i in range(count):
            table = [rng.randrange(k) for _ in range(n)]
            yield f"{space}#{seed}.{i}", LocalRule(alphabet, -r, r, table, f"{space}#{seed}.{i}")
        return
    if kind == "walled":
        k = int(rest or 3)
        symbols = ("w",) + _symbols(k - 1)
        alphabet = Alphabet(symbols)
        idx = np.arange(k**3)
        center = (idx // k) % k
        for i in range(count):
            table = np.array([rng.randrange(1, k) for _ in range(k**3)])
            table[center == 0] = 0
            name = f"{space}#{seed}.{i}"
            yield name, LocalRule(alphabet, -1, 1, table, name)
        return
    raise ValueError(f"unknown rule space {space!r}")


def check(rule: LocalRule, preds: Predicates, name: str = "") -> Optional[ScanHit]:
    """Return a hit when ``rule`` satisfies every requested predicate."""
    facts = {}
    if preds.surjective is not None:
        facts["surjective"] = is_surjective(rule, balance_length=0).verdict
        if facts["surjective"] != preds.surjective:
            return None
    if preds.injective is not None:
        facts["injective"] = is_injective(rule).verdict
        if facts["injective"] != preds.injective:
            return None
    word = None
    if preds.blocking is not None:
        s, max_len = preds.blocking
        found = find_blocking_words(rule, s, max_len, preds.blocking_steps, limit=1)
        if not found:
            return None
        word = found[0][0]
        facts["blocking_offset"] = found[0][1]
    if preds.not_eventually_periodic is not None:
        mp = map_period(rule, preds.not_eventually_periodic)
        facts["map_period"] = mp
        if mp is not None:
            return None
    return ScanHit(name or rule.name, rule, word, facts)


def scan(space: str, preds: Predicates, count: int = 1000, seed: int = 0) -> Iterator[ScanHit]:
    for name, rule in rule_space(space, count, seed):
        hit = check(rule, preds, name)
        if hit is not None:
            yield hit
