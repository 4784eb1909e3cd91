from itertools import permutations, product

import pytest

from catopo.core import Alphabet, CyclicConfiguration, LocalRule, apply_rule_word, eca, step_cyclic
from catopo.decision import (
    build_debruijn,
    count_preimages,
    find_diamond,
    is_diamond,
    is_injective,
    is_surjective,
)
from oracles import balanced, naive_apply, preimage_counts


def test_debruijn_identity(identity):
    g = build_debruijn(identity)
    assert g.n_nodes == 1
    assert sorted(g.edges()) == [(0, 0, 0), (0, 0, 1)]


def test_debruijn_paper(paper3):
    g = build_debruijn(paper3)
    assert g.n_nodes == 3 and g.n_edges == 9
    fmt = paper3.alphabet.format
    labels = {fmt((src, dst)): fmt((lab,)) for src, dst, lab in g.edges()}
    assert labels == {"wr": "r", "w0": "0", "ww": "w", "rr": "0", "r0": "r",
                      "rw": "w", "0r": "0", "00": "0", "0w": "w"}


def test_debruijn_rule90_degrees():
    g = build_debruijn(eca(90))
    assert g.n_nodes == 4 and g.n_edges == 8
    assert list(g.in_degrees()) == [2, 2, 2, 2]
    for src, dst, lab in g.edges():
        left, right = src >> 1, dst & 1
        assert lab == left ^ right


class TestCountPreimages:
    def test_wall_rule_rr(self, paper3):
        # brute force: exactly one length-3 word maps onto "rr"
        want = preimage_counts(paper3, 2).get(paper3.word("rr"), 0)
        assert want == 1
        assert count_preimages(paper3, "rr") == want

    def test_identity(self, identity):
        assert count_preimages(identity, "0110") == 1

    def test_rule90_zero(self):
        assert count_preimages(eca(90), "0") == 4

    @pytest.mark.parametrize("n", [30, 90, 110, 12, 0])
    def test_matches_enumeration(self, n):
        rule = eca(n)
        for L in range(1, 5):
            counts = preimage_counts(rule, L)
            for u in rule.alphabet.words(L):
                assert count_preimages(rule, u) == counts.get(u, 0)


class TestSurjective:
    def test_wall_rule_orphan(self, paper3):
        rep = is_surjective(paper3)
        assert not rep.verdict
        assert paper3.alphabet.format(rep.orphan) == "w0r"
        assert count_preimages(paper3, rep.orphan) == 0
        # no shorter orphan and nothing lexicographically smaller of that length
        imgs = set(preimage_counts(paper3, 2)) | set(preimage_counts(paper3, 1))
        assert all(u in imgs for L in (1, 2) for u in paper3.alphabet.words(L))
        imgs3 = set(preimage_counts(paper3, 3))
        first = next(u for u in paper3.alphabet.words(3) if u not in imgs3)
        assert first == rep.orphan

    def test_identity(self, identity):
        rep = is_surjective(identity)
        assert rep.verdict and rep.orphan is None

    def test_rule90(self):
        rep = is_surjective(eca(90))
        assert rep.verdict
        assert balanced(eca(90), 5)

    def test_all_eca_against_balance(self):
        surjective = 0
        for n in range(256):
            rule = eca(n)
            rep = is_surjective(rule)
            ok = balanced(rule, 4)
            if not ok:
                assert not rep.verdict
            if rep.verdict:
                assert ok
                surjective += 1
            else:
                assert count_preimages(rule, rep.orphan) == 0
        assert surjective == 30

    def test_permutations_surjective_constants_not(self):
        alphabet = Alphabet(("a", "b", "c"))
        for perm in permutations(range(3)):
            assert is_surjective(LocalRule(alphabet, 0, 0, perm)).verdict
        for c in range(3):
            assert not is_surjective(LocalRule(alphabet, -1, 1, [c] * 27)).verdict

    def test_shift(self, shift):
        assert is_surjective(shift).verdict


class TestDiamonds:
    def test_wall_rule_diamond_words(self, paper3):
        assert is_diamond(paper3, "w", "000", "00r")

    def test_wall_rule_shortest(self, paper3):
        w, u, v = find_diamond(paper3, 3)
        assert is_diamond(paper3, w, u, v)
        assert len(u) == 2
        # exhaustive: no diamond with |u| = 1
        for w1 in paper3.alphabet.words(1):
            for a, b in product(range(3), repeat=2):
                if a != b:
                    assert not is_diamond(paper3, w1, (a,), (b,))

    def test_identity_none(self, identity):
        assert find_diamond(identity, 4) is None

    def test_rule90_none(self):
        # rule 90 is surjective, so no diamond exists; exhaustive check at |u| = 1
        rule = eca(90)
        assert find_diamond(rule, 1) is None
        for w in rule.alphabet.words(2):
            for a, b in ((0, 1), (1, 0)):
                assert naive_apply(rule, w + (a,) + w) != naive_apply(rule, w + (b,) + w)

    def test_default_bound_agrees_with_surjectivity(self):
        for n in range(0, 256, 7):
            rule = eca(n)
            assert (find_diamond(rule) is None) == is_surjective(rule).verdict


class TestInjective:
    def test_shift(self, shift):
        assert is_injective(shift).verdict

    def test_wall_rule(self, paper3):
        rep = is_injective(paper3)
        assert not rep.verdict
        assert is_diamond(paper3, *rep.diamond)

    def test_rule90_periodic_pair(self):
        rule = eca(90)
        rep = is_injective(rule)
        assert not rep.verdict and rep.diamond is None
        x, y = rep.periodic_pair
        assert x != y and step_cyclic(rule, x) == step_cyclic(rule, y)
        zeros, ones = CyclicConfiguration((0,)), CyclicConfiguration((1,))
        assert step_cyclic(rule, zeros) == step_cyclic(rule, ones) == zeros

    def test_eca_injective_set(self):
        injective = {n for n in range(256) if is_injective(eca(n)).verdict}
        assert injective == {15, 51, 85, 170, 204, 240}

    def test_injective_implies_surjective(self, paper3, identity, shift, rot3, wallxor):
        for rule in [paper3, identity, shift, rot3, wallxor] + [eca(n) for n in range(256)]:
            if is_injective(rule).verdict:
                assert is_surjective(rule).verdict

    def test_witnesses_are_valid(self):
        for n in range(256):
            rule = eca(n)
            rep = is_injective(rule)
            if rep.diamond is not None:
                assert is_diamond(rule, *rep.diamond)
            if rep.periodic_pair is not None:
                x, y = rep.periodic_pair
                assert x != y and step_cyclic(rule, x) == step_cyclic(rule, y)
            if not rep.verdict:
                assert rep.diamond is not None or rep.periodic_pair is not None

    def test_radius_zero(self, rot3):
        assert is_injective(rot3).verdict
        collapse = LocalRule(rot3.alphabet, 0, 0, [0, 0, 1])
        rep = is_injective(collapse)
        assert not rep.verdict and rep.diamond == ((), (0,), (1,))
