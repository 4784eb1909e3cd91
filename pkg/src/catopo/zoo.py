"""Named rules with their documented properties.

Every property listed here is re-derived by the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .core import Alphabet, LocalRule, eca, rule_from_function

PAPER3_TABLE = {
    "wr": "r", "w0": "0", "ww": "w",
    "rr": "0", "r0": "r", "rw": "w",
    "0r": "0", "00": "0", "0w": "w",
}


def paper3() -> LocalRule:
    """The three-symbol wall rule on ``{w, 0, r}``; the cell reads ``x[i-1] x[i]``."""
    doc = {"alphabet": ["w", "0", "r"], "memory": -1, "anticipation": 0, "table": PAPER3_TABLE}
    return LocalRule.from_json(doc, "zoo:paper3")


def identity() -> LocalRule:
    return rule_from_function(("0", "1"), 0, 0, lambda b: b, "zoo:identity")


def shift() -> LocalRule:
    """``sigma``: ``F(x)_i = x_{i+1}``."""
    return rule_from_function(("0", "1"), 1, 1, lambda b: b, "zoo:shift")


def rot3() -> LocalRule:
    return rule_from_function(("0", "1", "2"), 0, 0, lambda b: (b + 1) % 3, "zoo:rot3")


def wallxor() -> LocalRule:
    """Walls ``w`` never move; between walls a cell becomes ``x_i xor x_{i+1}``,
    except next to a wall on its right, where it keeps its value.

    On a segment of length ``n`` this is a unipotent map of order the least
    power of two ``>= n``, so the map is surjective, has blocking words, and
    is not eventually periodic.
    """

    def f(a, b, c):
        if b == 0:
            return 0
        if c == 0:
            return b
        return 1 + ((b - 1) ^ (c - 1))

    return rule_from_function(("w", "0", "1"), -1, 1, f, "zoo:wallxor")


@dataclass(frozen=True)
class ZooEntry:
    name: str
    rule: LocalRule
    surjective: bool
    injective: bool
    orphan: Optional[str] = None
    blocking_word: Optional[str] = None
    classification: str = ""
    map_period: Optional[tuple] = None
    notes: str = field(default="", compare=False)


def _entries() -> dict:
    entries = [
        ZooEntry("paper3", paper3(), False, False, orphan="w0r", blocking_word="ww",
                 classification="AlmostEquicontinuousEvidence",
                 notes="non-injective via the diamond w000w / w00rw"),
        ZooEntry("identity", identity(), True, True, classification="EquicontinuousCertified",
                 map_period=(0, 1)),
        ZooEntry("shift", shift(), True, True, classification="SensitiveEvidence"),
        ZooEntry("rot3", rot3(), True, True, classification="EquicontinuousCertified",
                 map_period=(0, 3)),
        ZooEntry("eca90", eca(90), True, False, classification="SensitiveEvidence"),
        ZooEntry("wallxor", wallxor(), True, False, blocking_word="ww",
                 classification="AlmostEquicontinuousEvidence"),
    ]
    return {e.name: e for e in entries}


ZOO = _entries()


def load_rule(spec: str) -> LocalRule:
    """Resolve ``eca:N``, ``zoo:NAME`` or a path to a JSON rule file."""
    if spec.startswith("eca:"):
        return eca(int(spec[4:]))
    if spec.startswith("zoo:"):
        name = spec[4:]
        if name.startswith("eca"):
            return eca(int(name[3:].lstrip(":")))
        try:
            return ZOO[name].rule
        except KeyError:
            raise ValueError(f"unknown zoo rule {name!r}; known: {', '.join(ZOO)}") from None
    path = Path(spec)
    return LocalRule.loads(path.read_text(), spec)
