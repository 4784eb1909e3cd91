"""Alphabets, local rules, words and spatially periodic configurations.

Words are tuples of symbol indices into an :class:`Alphabet`. Most public
functions also accept a string, which is parsed with the rule's alphabet
(one character per symbol, or ``|``-separated tokens for multi-character
symbols).

The neighborhood convention is ``F(x)_i = f(x[i+memory] ... x[i+anticipation])``.
Rule tables are stored as flat ``uint8`` arrays indexed by the big-endian
base-``k`` value of the neighborhood word.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Sequence

import numpy as np

Word = tuple  # tuple[int, ...]

#: default cap on the number of table entries materialized by compose/iterate
TABLE_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    """A computation would exceed an explicit resource budget."""


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple

    def __post_init__(self):
        symbols = tuple(str(s) for s in self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if len(symbols) < 2:
            raise ValueError("an alphabet needs at least two symbols")
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"duplicate symbols in {symbols!r}")
        if any(not s or "|" in s for s in symbols):
            raise ValueError("symbols must be non-empty and must not contain '|'")

    @property
    def size(self) -> int:
        return len(self.symbols)

    def __len__(self):
        return len(self.symbols)

    @cached_property
    def _index(self) -> dict:
        return {s: i for i, s in enumerate(self.symbols)}

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise ValueError(f"symbol {symbol!r} not in alphabet {self.symbols}") from None

    @property
    def single_char(self) -> bool:
        return all(len(s) == 1 for s in self.symbols)

    def parse(self, text) -> Word:
        """Turn ``text`` (a string or a sequence of indices/tokens) into a word."""
        if isinstance(text, str):
            if "|" in text:
                tokens = text.split("|")
            elif self.single_char:
                tokens = list(text)
            elif text == "":
                tokens = []
            else:
                tokens = [text]
            return tuple(self.index(t) for t in tokens)
        out = []
        for t in text:
            if isinstance(t, str):
                out.append(self.index(t))
            else:
                t = int(t)
                if not 0 <= t < self.size:
                    raise ValueError(f"symbol index {t} out of range")
                out.append(t)
        return tuple(out)

    def format(self, word: Iterable[int]) -> str:
        tokens = [self.symbols[i] for i in word]
        return "".join(tokens) if self.single_char else "|".join(tokens)

    def words(self, length: int) -> Iterator[Word]:
        """All words of ``length`` in lexicographic order of the declared symbols."""
        return product(range(self.size), repeat=length)


def _word_index(word: Sequence[int], k: int) -> int:
    idx = 0
    for s in word:
        idx = idx * k + s
    return idx


def _index_word(idx: int, k: int, length: int) -> Word:
    out = [0] * length
    for j in range(length - 1, -1, -1):
        idx, out[j] = divmod(idx, k)
    return tuple(out)


@dataclass(frozen=True, eq=False)
class LocalRule:
    """A local rule ``f: A^(d+1) -> A`` with explicit memory and anticipation."""

    alphabet: Alphabet
    memory: int
    anticipation: int
    table: np.ndarray
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.memory > self.anticipation:
            raise ValueError("memory must not exceed anticipation")
        k = self.alphabet.size
        table = np.asarray(self.table, dtype=np.uint8).ravel()
        expected = k ** (self.anticipation - self.memory + 1)
        if table.size != expected:
            raise ValueError(f"table has {table.size} entries, expected {expected}")
        if table.size and int(table.max()) >= k:
            raise ValueError("table output outside the alphabet")
        table = table.copy()
        table.flags.writeable = False
        object.__setattr__(self, "table", table)

    @property
    def k(self) -> int:
        return self.alphabet.size

    @property
    def diameter(self) -> int:
        return self.anticipation - self.memory

    @property
    def radius(self) -> int:
        return max(-self.memory, self.anticipation)

    def __call__(self, neighborhood: Sequence[int]) -> int:
        return int(self.table[_word_index(neighborhood, self.k)])

    def word(self, text) -> Word:
        return self.alphabet.parse(text)

    def __eq__(self, other):
        if not isinstance(other, LocalRule):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.memory == other.memory
            and self.anticipation == other.anticipation
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self):
        return hash((self.alphabet, self.memory, self.anticipation, self.table.tobytes()))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return (
            f"<LocalRule{label} k={self.k} m={self.memory} a={self.anticipation}>"
        )

    def widen(self, memory: int, anticipation: int) -> "LocalRule":
        """Same global map on the larger neighborhood ``[memory, anticipation]``."""
        if memory > self.memory or anticipation < self.anticipation:
            raise ValueError("widen can only enlarge the neighborhood")
        k, d = self.k, self.diameter
        new_len = anticipation - memory + 1
        _check_budget(k**new_len)
        idx = np.arange(k**new_len, dtype=np.int64)
        inner = (idx // k ** (anticipation - self.anticipation)) % k ** (d + 1)
        return LocalRule(self.alphabet, memory, anticipation, self.table[inner], self.name)

    def minimized(self) -> "LocalRule":
        """Drop neighborhood cells the table does not depend on.

        Two rules define the same global map iff their minimized forms are
        equal. A constant rule minimizes to ``memory = anticipation = 0``.
        """
        k = self.k
        m, a, table = self.memory, self.anticipation, self.table
        while a > m:
            t = table.reshape(k, -1)
            if (t == t[0]).all():
                table, m = t[0], m + 1
                continue
            t = table.reshape(-1, k)
            if (t == t[:, :1]).all():
                table, a = t[:, 0], a - 1
                continue
            break
        if m == a and (table == table[0]).all():
            m = a = 0
        if m == self.memory and a == self.anticipation:
            return self
        return LocalRule(self.alphabet, m, a, table, self.name)

    def to_json(self) -> dict:
        sym = self.alphabet.symbols
        joiner = "" if self.alphabet.single_char else "|"
        n = self.diameter + 1
        table = {
            joiner.join(sym[s] for s in _index_word(i, self.k, n)): sym[int(v)]
            for i, v in enumerate(self.table)
        }
        return {
            "alphabet": list(sym),
            "memory": self.memory,
            "anticipation": self.anticipation,
            "table": table,
        }

    @classmethod
    def from_json(cls, doc: dict, name: str = "") -> "LocalRule":
        alphabet = Alphabet(tuple(doc["alphabet"]))
        m, a = int(doc["memory"]), int(doc["anticipation"])
        n = a - m + 1
        k = alphabet.size
        raw = doc["table"]
        table = np.full(k**n, 255, dtype=np.uint8)
        for key, out in raw.items():
            nb = alphabet.parse(key)
            if len(nb) != n:
                raise ValueError(f"neighborhood {key!r} does not have length {n}")
            table[_word_index(nb, k)] = alphabet.index(out)
        if (table == 255).any():
            missing = _index_word(int(np.argmax(table == 255)), k, n)
            raise ValueError(f"table is not total: missing {alphabet.format(missing)!r}")
        return cls(alphabet, m, a, table, name)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def loads(cls, text: str, name: str = "") -> "LocalRule":
        return cls.from_json(json.loads(text), name)


def rule_from_function(alphabet, memory: int, anticipation: int, fn, name="") -> LocalRule:
    """Tabulate ``fn(*neighborhood_indices)`` into a :class:`LocalRule`."""
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet(tuple(alphabet))
    n = anticipation - memory + 1
    table = [fn(*nb) for nb in alphabet.words(n)]
    return LocalRule(alphabet, memory, anticipation, table, name)


def eca(number: int) -> LocalRule:
    """Elementary CA with Wolfram number ``number``.

    Neighborhood ``b2 b1 b0`` (left, center, right) selects bit ``4*b2+2*b1+b0``.
    """
    if not 0 <= number <= 255:
        raise ValueError("Wolfram number must be in [0, 255]")
    table = [(number >> i) & 1 for i in range(8)]
    return LocalRule(Alphabet(("0", "1")), -1, 1, table, f"eca:{number}")


def _check_budget(entries: int, budget: int = TABLE_BUDGET):
    if entries > budget:
        raise BudgetExceeded(f"table of {entries} entries exceeds budget {budget}")


def _as_word(rule_or_alphabet, u) -> Word:
    alphabet = rule_or_alphabet.alphabet if isinstance(rule_or_alphabet, LocalRule) else rule_or_alphabet
    if isinstance(u, tuple) and all(isinstance(s, int) for s in u):
        return u
    return alphabet.parse(u)


def apply_rule_word(rule: LocalRule, u) -> Word:
    """Slide the neighborhood over ``u``; the result is ``d`` cells shorter."""
    u = _as_word(rule, u)
    d, k = rule.diameter, rule.k
    if len(u) < d + 1:
        raise PreconditionError(f"word of length {len(u)} shorter than neighborhood {d + 1}")
    table = rule.table
    mod = k ** (d + 1)
    idx = _word_index(u[:d], k)
    out = []
    for s in u[d:]:
        idx = (idx * k + s) % mod
        out.append(int(table[idx]))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class CyclicConfiguration:
    """The spatially periodic point ``x_i = word[(i + phase) mod L]``."""

    word: Word
    phase: int = 0

    def __post_init__(self):
        word = tuple(int(s) for s in self.word)
        if not word:
            raise ValueError("period word must be non-empty")
        object.__setattr__(self, "word", word)
        object.__setattr__(self, "phase", self.phase % len(word))

    @classmethod
    def parse(cls, alphabet, text, phase: int = 0) -> "CyclicConfiguration":
        if isinstance(alphabet, LocalRule):
            alphabet = alphabet.alphabet
        return cls(alphabet.parse(text), phase)

    @property
    def period(self) -> int:
        """The period as supplied, possibly imprimitive."""
        return len(self.word)

    def __getitem__(self, i: int) -> int:
        return self.word[(i + self.phase) % len(self.word)]

    def window(self, i1: int, i2: int) -> Word:
        L, ph = len(self.word), self.phase
        return tuple(self.word[(i + ph) % L] for i in range(i1, i2 + 1))

    def anchored(self) -> Word:
        """Period word rotated so that coordinate 0 comes first."""
        return self.word[self.phase:] + self.word[: self.phase]

    @cached_property
    def key(self) -> Word:
        """Primitive root read from coordinate 0; equal iff the points are equal."""
        w = self.anchored()
        L = len(w)
        for q in range(1, L + 1):
            if L % q == 0 and w == w[q:] + w[:q]:
                return w[:q]
        raise AssertionError("unreachable")

    def __eq__(self, other):
        if not isinstance(other, CyclicConfiguration):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def shift(self, n: int = 1) -> "CyclicConfiguration":
        """``sigma^n``, with ``sigma(x)_i = x_{i+1}``."""
        return CyclicConfiguration(self.word, self.phase + n)

    def format(self, alphabet) -> str:
        if isinstance(alphabet, LocalRule):
            alphabet = alphabet.alphabet
        return alphabet.format(self.anchored())


def _step_word(rule: LocalRule, word: Word) -> Word:
    L = len(word)
    m, d, k = rule.memory, rule.diameter, rule.k
    ext = [word[(j + m) % L] for j in range(L + d)]
    table = rule.table
    mod = k ** (d + 1)
    idx = _word_index(ext[:d], k)
    out = []
    for s in ext[d:]:
        idx = (idx * k + s) % mod
        out.append(int(table[idx]))
    return tuple(out)


def step_cyclic(rule: LocalRule, x: CyclicConfiguration) -> CyclicConfiguration:
    """Global map on a spatially periodic point; period and phase are kept."""
    return CyclicConfiguration(_step_word(rule, x.word), x.phase)


def iterate_cyclic(rule: LocalRule, x: CyclicConfiguration, n: int) -> CyclicConfiguration:
    word = x.word
    for _ in range(n):
        word = _step_word(rule, word)
    return CyclicConfiguration(word, x.phase)


def compose(outer: LocalRule, inner: LocalRule, budget: int = TABLE_BUDGET) -> LocalRule:
    """Local rule of ``outer ∘ inner`` (apply ``inner`` first)."""
    if outer.alphabet != inner.alphabet:
        raise ValueError("cannot compose rules over different alphabets")
    k = outer.k
    d_in, d_out = inner.diameter, outer.diameter
    D = d_in + d_out
    _check_budget(k ** (D + 1), budget)
    idx = np.arange(k ** (D + 1), dtype=np.int64)
    inner_mod = k ** (d_in + 1)
    inner_table = inner.table.astype(np.int64)
    outer_idx = np.zeros_like(idx)
    for j in range(d_out + 1):
        window = (idx // k ** (d_out - j)) % inner_mod
        outer_idx = outer_idx * k + inner_table[window]
    return LocalRule(
        outer.alphabet,
        outer.memory + inner.memory,
        outer.anticipation + inner.anticipation,
        outer.table[outer_idx],
    )


def identity_rule(alphabet) -> LocalRule:
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet(tuple(alphabet))
    return LocalRule(alphabet, 0, 0, np.arange(alphabet.size), "identity")


def iterate_rule(rule: LocalRule, p: int, budget: int = TABLE_BUDGET) -> LocalRule:
    """Local rule of ``F^p`` on the neighborhood ``[p*m, p*a]``.

    The full table has ``k^(p*d+1)`` entries; exceeding ``budget`` raises
    :class:`BudgetExceeded` before any work is done.
    """
    if p < 1:
        raise PreconditionError("p must be >= 1")
    _check_budget(rule.k ** (p * rule.diameter + 1), budget)
    acc = rule
    for _ in range(p - 1):
        acc = compose(rule, acc, budget)
    return acc


def same_map(r1: LocalRule, r2: LocalRule) -> bool:
    """Whether two local rules induce the same global map."""
    return r1.alphabet == r2.alphabet and r1.minimized() == r2.minimized()


def is_identity_rule(rule: LocalRule) -> bool:
    if not rule.memory <= 0 <= rule.anticipation:
        return False
    k, d, m = rule.k, rule.diameter, rule.memory
    idx = np.arange(k ** (d + 1), dtype=np.int64)
    center = (idx // k ** (d + m)) % k
    return bool(np.array_equal(rule.table, center))


def distance(x: CyclicConfiguration, y: CyclicConfiguration) -> Fraction:
    """``2^-n`` for the least ``n >= 0`` with ``x_n != y_n`` or ``x_-n != y_-n``."""
    horizon = math.lcm(x.period, y.period)
    for n in range(horizon + 1):
        if x[n] != y[n] or x[-n] != y[-n]:
            return Fraction(1, 2**n)
    return Fraction(0)


@dataclass(frozen=True)
class SpaceTimeBlock:
    """Rows ``F^t(x)`` restricted to coordinates ``i1 .. i2``."""

    rows: tuple
    i1: int
    i2: int

    @property
    def width(self) -> int:
        return self.i2 - self.i1 + 1

    def format(self, alphabet) -> list:
        return [alphabet.format(r) for r in self.rows]


def spacetime(rule: LocalRule, x: CyclicConfiguration, steps: int, i1: int, i2: int) -> SpaceTimeBlock:
    if i1 > i2:
        raise PreconditionError("window must satisfy i1 <= i2")
    rows = [x.window(i1, i2)]
    word = x.word
    for _ in range(steps):
        word = _step_word(rule, word)
        rows.append(CyclicConfiguration(word, x.phase).window(i1, i2))
    return SpaceTimeBlock(tuple(rows), i1, i2)
