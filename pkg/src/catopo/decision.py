"""Surjectivity and injectivity of the global map via de Bruijn graphs.

Nodes of the de Bruijn graph of a rule with diameter ``d`` are the words of
length ``d`` (encoded as integers); edge ``e`` is a word of length ``d+1``
going from its prefix ``e // k`` to its suffix ``e % k^d`` and labeled with
``table[e]``. Bi-infinite label sequences of bi-infinite paths are exactly
the images of the global map.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import (
    BudgetExceeded,
    CyclicConfiguration,
    LocalRule,
    PreconditionError,
    Word,
    _as_word,
    _index_word,
    apply_rule_word,
    step_cyclic,
)

NODE_BUDGET = 4096
SUBSET_BUDGET = 10**6


@dataclass(frozen=True)
class DeBruijnGraph:
    k: int
    d: int
    labels: np.ndarray

    @property
    def n_nodes(self) -> int:
        return self.k**self.d

    @property
    def n_edges(self) -> int:
        return self.labels.size

    def source(self, e: int) -> int:
        return e // self.k

    def target(self, e: int) -> int:
        return e % self.n_nodes

    def out_edges(self, node: int) -> range:
        return range(node * self.k, node * self.k + self.k)

    def edges(self):
        """Yield ``(source, target, label)`` for every edge."""
        n = self.n_nodes
        for e, lab in enumerate(self.labels):
            yield e // self.k, e % n, int(lab)

    def in_degrees(self) -> np.ndarray:
        deg = np.zeros(self.n_nodes, dtype=np.int64)
        np.add.at(deg, np.arange(self.n_edges) % self.n_nodes, 1)
        return deg

    def successor_masks(self) -> list:
        """``masks[node][label]``: bitmask of targets reachable by that label."""
        k, n = self.k, self.n_nodes
        masks = [[0] * k for _ in range(n)]
        for e, lab in enumerate(self.labels):
            masks[e // k][lab] |= 1 << (e % n)
        return masks


def build_debruijn(rule: LocalRule, node_budget: int = NODE_BUDGET) -> DeBruijnGraph:
    nodes = rule.k**rule.diameter
    if nodes > node_budget:
        raise BudgetExceeded(f"de Bruijn graph with {nodes} nodes exceeds budget {node_budget}")
    return DeBruijnGraph(rule.k, rule.diameter, rule.table.astype(np.int64))


def count_preimages(rule: LocalRule, u) -> int:
    """Number of words ``v`` of length ``|u| + d`` with ``apply_rule_word(rule, v) == u``."""
    u = _as_word(rule, u)
    if not u:
        raise PreconditionError("count_preimages needs a non-empty word")
    g = build_debruijn(rule)
    k, n = g.k, g.n_nodes
    by_label = [[] for _ in range(k)]
    for e, lab in enumerate(g.labels):
        by_label[lab].append((e // k, e % n))
    counts = [1] * n
    for s in u:
        new = [0] * n
        for src, dst in by_label[s]:
            if counts[src]:
                new[dst] += counts[src]
        counts = new
    return sum(counts)


@dataclass(frozen=True)
class SurjectivityReport:
    verdict: bool
    orphan: Optional[Word] = None
    checked_balance_lengths: tuple = ()


def _balance_holds(rule: LocalRule, length: int) -> bool:
    want = rule.k**rule.diameter
    return all(count_preimages(rule, u) == want for u in rule.alphabet.words(length))


def is_surjective(
    rule: LocalRule, balance_length: int = 3, subset_budget: int = SUBSET_BUDGET
) -> SurjectivityReport:
    """Decide surjectivity; a shortest, lexicographically least orphan is the witness.

    Runs the subset construction on the de Bruijn graph from the full node set;
    the empty set is reachable exactly when some finite word has no preimage.
    For surjective rules the balance count ``k^d`` is then re-checked on all
    words of length ``1 .. balance_length``.
    """
    k = rule.k
    if rule.diameter == 0:
        image = set(int(v) for v in rule.table)
        missing = [s for s in range(k) if s not in image]
        verdict = not missing
        orphan = None if verdict else (missing[0],)
    else:
        g = build_debruijn(rule)
        masks = g.successor_masks()
        full = (1 << g.n_nodes) - 1
        parent = {full: None}
        queue = deque([full])
        orphan = None
        while queue and orphan is None:
            S = queue.popleft()
            nodes = [v for v in range(g.n_nodes) if S >> v & 1]
            for lab in range(k):
                T = 0
                for v in nodes:
                    T |= masks[v][lab]
                if T in parent:
                    continue
                parent[T] = (S, lab)
                if T == 0:
                    orphan = _trace_back(parent, T)
                    break
                if len(parent) > subset_budget:
                    raise BudgetExceeded(f"subset construction exceeded {subset_budget} states")
                queue.append(T)
        verdict = orphan is None

    checked = ()
    if verdict and balance_length > 0:
        checked = tuple(range(1, balance_length + 1))
        for L in checked:
            if not _balance_holds(rule, L):
                raise AssertionError(f"balance fails at length {L} for a surjective verdict")
    return SurjectivityReport(verdict, orphan, checked)


def _trace_back(parent: dict, state) -> Word:
    out = []
    while parent[state] is not None:
        state, lab = parent[state]
        out.append(lab)
    return tuple(reversed(out))


def is_diamond(rule: LocalRule, w, u, v) -> bool:
    """Check ``|w| = d``, ``u != v``, ``|u| = |v|`` and equal images of ``wuw`` and ``wvw``."""
    w, u, v = (_as_word(rule, z) for z in (w, u, v))
    if len(w) != rule.diameter or len(u) != len(v) or u == v or not u:
        return False
    return apply_rule_word(rule, w + u + w) == apply_rule_word(rule, w + v + w)


def default_diamond_bound(rule: LocalRule) -> int:
    return rule.k ** (2 * rule.diameter) + rule.diameter


def find_diamond(rule: LocalRule, max_len: Optional[int] = None) -> Optional[tuple]:
    """Shortest diamond ``(w, u, v)`` with ``|u| <= max_len``, or ``None``.

    Among the shortest the result is deterministic but not necessarily the
    lexicographic least; ``u < v`` always holds. With the default bound
    ``k^(2d) + d`` absence is a proof that no diamond exists at all.
    """
    if max_len is None:
        max_len = default_diamond_bound(rule)
    if max_len < 1:
        raise PreconditionError("max_len must be >= 1")
    k, d = rule.k, rule.diameter
    if d == 0:
        for b in range(k):
            for a in range(b):
                if rule.table[a] == rule.table[b]:
                    return ((), (a,), (b,))
        return None

    best = None
    for w in rule.alphabet.words(d):
        found = _diamond_from(rule, w, max_len if best is None else len(best[1]) - 1)
        if found is not None:
            best = (w,) + found
            if len(best[1]) == 1:
                break
    return best


def _diamond_from(rule: LocalRule, w: Word, max_len: int) -> Optional[tuple]:
    # BFS over (p, q, diverged) where p, q are the last d cells read on each side.
    k, d = rule.k, rule.diameter
    table = rule.table
    mod = k**d
    start_node = 0
    for s in w:
        start_node = start_node * k + s
    start = (start_node, start_node, False)
    parent = {start: None}
    layer = [start]
    for _ in range(max_len):
        nxt = []
        for state in layer:
            p, q, div = state
            for a in range(k):
                la = table[p * k + a]
                for b in range(k):
                    if table[q * k + b] != la:
                        continue
                    if not div and b < a:
                        continue
                    st = ((p * k + a) % mod, (q * k + b) % mod, div or a != b)
                    if st in parent:
                        continue
                    parent[st] = (state, a, b)
                    nxt.append(st)
        hits = []
        for st in nxt:
            if st[2] and _closes(rule, st[0], st[1], w):
                u, v = _unwind(parent, st)
                hits.append((u, v))
        if hits:
            return min(hits)
        layer = nxt
    return None


def _closes(rule: LocalRule, p: int, q: int, w: Word) -> bool:
    k, mod, table = rule.k, rule.k**rule.diameter, rule.table
    for s in w:
        if table[p * k + s] != table[q * k + s]:
            return False
        p, q = (p * k + s) % mod, (q * k + s) % mod
    return True


def _unwind(parent: dict, state) -> tuple:
    u, v = [], []
    while parent[state] is not None:
        state, a, b = parent[state]
        u.append(a)
        v.append(b)
    return tuple(reversed(u)), tuple(reversed(v))


@dataclass(frozen=True)
class InjectivityReport:
    """Verdict plus a witness of non-injectivity.

    ``diamond`` is present when the rule has a diamond (equivalently, when it
    is not surjective). Surjective non-injective rules have no diamond; for
    them ``periodic_pair`` holds two distinct spatially periodic points with
    the same image.
    """

    verdict: bool
    diamond: Optional[tuple] = None
    periodic_pair: Optional[tuple] = None
    survivors: int = field(default=0, compare=False)


def _pair_graph(rule: LocalRule):
    g = build_debruijn(rule)
    k, n = g.k, g.n_nodes
    by_label = [[] for _ in range(k)]
    for e, lab in enumerate(g.labels):
        by_label[lab].append(e)
    succ = {}
    for lab in range(k):
        es = by_label[lab]
        for e1 in es:
            for e2 in es:
                succ.setdefault((e1 // k, e2 // k), []).append((e1, e2, (e1 % n, e2 % n)))
    return g, succ


def _bi_infinite_core(nodes, succ) -> set:
    alive = set(nodes)
    while True:
        has_pred = set()
        for v in alive:
            for _, _, t in succ.get(v, ()):
                if t in alive:
                    has_pred.add(t)
        keep = {v for v in alive if v in has_pred and any(t in alive for _, _, t in succ.get(v, ()))}
        if keep == alive:
            return alive
        alive = keep


def is_injective(rule: LocalRule) -> InjectivityReport:
    """Decide injectivity of the global map with the pair-graph criterion.

    The map is injective iff every node of the pair graph lying on a
    bi-infinite path is diagonal.
    """
    k = rule.k
    if rule.diameter == 0:
        if len(set(int(v) for v in rule.table)) == k:
            return InjectivityReport(True)
        diamond = find_diamond(rule, 1)
        a, b = diamond[1][0], diamond[2][0]
        pair = (CyclicConfiguration((a,)), CyclicConfiguration((b,)))
        return InjectivityReport(False, diamond, pair)

    g, succ = _pair_graph(rule)
    n = g.n_nodes
    nodes = [(p, q) for p in range(n) for q in range(n)]
    core = _bi_infinite_core(nodes, succ)
    off_diag = sorted(v for v in core if v[0] != v[1])
    if not off_diag:
        return InjectivityReport(True, survivors=len(core))
    diamond = find_diamond(rule)
    pair = _periodic_pair(rule, succ, core, off_diag)
    return InjectivityReport(False, diamond, pair, len(core))


def _periodic_pair(rule, succ, core, off_diag) -> Optional[tuple]:
    # Follow surviving edges from an off-diagonal node until a state repeats;
    # then search for a cycle through an off-diagonal node.
    k, d = rule.k, rule.diameter
    for start in off_diag:
        # BFS back to start inside the core gives a cycle through it.
        parent = {}
        queue = deque()
        for e1, e2, t in succ.get(start, ()):
            if t in core and t not in parent:
                parent[t] = (start, e1, e2)
                queue.append(t)
        while queue:
            v = queue.popleft()
            if v == start:
                break
            for e1, e2, t in succ.get(v, ()):
                if t in core and t not in parent:
                    parent[t] = (v, e1, e2)
                    queue.append(t)
        if start not in parent:
            continue
        e1s, e2s = [], []
        v = start
        while True:
            prev, e1, e2 = parent[v]
            e1s.append(e1)
            e2s.append(e2)
            v = prev
            if v == start:
                break
        e1s.reverse()
        e2s.reverse()
        # The cell under edge j is the first letter of the edge word.
        x = tuple(_index_word(e, k, d + 1)[0] for e in e1s)
        y = tuple(_index_word(e, k, d + 1)[0] for e in e2s)
        cx, cy = CyclicConfiguration(x), CyclicConfiguration(y)
        if cx != cy and step_cyclic(rule, cx) == step_cyclic(rule, cy):
            return cx, cy
    return None
