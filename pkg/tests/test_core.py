import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from catopo.core import (
    Alphabet,
    BudgetExceeded,
    CyclicConfiguration,
    LocalRule,
    PreconditionError,
    apply_rule_word,
    compose,
    distance,
    eca,
    identity_rule,
    is_identity_rule,
    iterate_cyclic,
    iterate_rule,
    rule_from_function,
    same_map,
    spacetime,
    step_cyclic,
)
from oracles import naive_apply, naive_image_point


def random_rule(rng, k=None, m=None, a=None):
    k = k or rng.choice([2, 3])
    if m is None:
        m = rng.randint(-1, 1)
        a = rng.randint(m, 1)
    alphabet = Alphabet(tuple(str(i) for i in range(k)))
    table = [rng.randrange(k) for _ in range(k ** (a - m + 1))]
    return LocalRule(alphabet, m, a, table)


def all_configs(k, max_period):
    for L in range(1, max_period + 1):
        for w in product(range(k), repeat=L):
            yield CyclicConfiguration(w)


class TestAlphabet:
    def test_parse_and_format(self):
        a = Alphabet(("w", "0", "r"))
        assert a.parse("w0r") == (0, 1, 2)
        assert a.format((2, 2)) == "rr"

    def test_multichar_tokens(self):
        a = Alphabet(("ab", "c"))
        assert a.parse("ab|c|ab") == (0, 1, 0)
        assert a.format((0, 1)) == "ab|c"

    @pytest.mark.parametrize("symbols", [("a",), ("a", "a"), ("a", "b|c")])
    def test_invalid(self, symbols):
        with pytest.raises(ValueError):
            Alphabet(symbols)

    def test_unknown_symbol(self):
        with pytest.raises(ValueError):
            Alphabet(("0", "1")).parse("012")


class TestLocalRule:
    def test_derived_sizes(self, paper3):
        assert (paper3.memory, paper3.anticipation) == (-1, 0)
        assert paper3.radius == 1 and paper3.diameter == 1

    def test_table_must_be_total(self):
        with pytest.raises(ValueError):
            LocalRule(Alphabet(("0", "1")), -1, 1, [0] * 7)

    def test_json_round_trip(self, paper3):
        again = LocalRule.loads(paper3.dumps())
        assert again == paper3
        assert again.to_json() == paper3.to_json()

    def test_json_missing_entry(self, paper3):
        doc = paper3.to_json()
        del doc["table"]["rr"]
        with pytest.raises(ValueError, match="not total"):
            LocalRule.from_json(doc)

    def test_eca_bit_order(self):
        r = eca(30)
        # 30 = 0b00011110: 100, 011, 010, 001 map to 1
        assert [r(nb) for nb in product((0, 1), repeat=3)] == [0, 1, 1, 1, 1, 0, 0, 0]


class TestApplyRuleWord:
    def test_wall_rule_room(self, paper3):
        assert paper3.alphabet.format(apply_rule_word(paper3, "w000w")) == "000w"
        assert apply_rule_word(paper3, "w00rw") == apply_rule_word(paper3, "w000w")

    def test_identity(self, identity):
        assert apply_rule_word(identity, "0110") == (0, 1, 1, 0)

    def test_rule90_zero(self):
        assert apply_rule_word(eca(90), "000") == (0,)

    def test_too_short(self):
        with pytest.raises(PreconditionError):
            apply_rule_word(eca(90), "01")

    def test_matches_oracle(self):
        rng = random.Random(3)
        for _ in range(200):
            rule = random_rule(rng)
            u = tuple(rng.randrange(rule.k) for _ in range(rng.randint(rule.diameter + 1, 9)))
            out = apply_rule_word(rule, u)
            assert len(out) == len(u) - rule.diameter
            assert out == naive_apply(rule, u)


class TestStepCyclic:
    def test_wall_rule_orbit_rows(self, paper3):
        a = paper3.alphabet
        x = CyclicConfiguration.parse(a, "wr000")
        assert step_cyclic(paper3, x).format(a) == "wrr00"
        assert iterate_cyclic(paper3, x, 2).format(a) == "wr0r0"

    def test_identity(self, identity):
        x = CyclicConfiguration((0, 1, 1), 2)
        assert step_cyclic(identity, x) == x

    def test_matches_oracle(self):
        rng = random.Random(5)
        for _ in range(300):
            rule = random_rule(rng)
            L = rng.randint(1, 7)
            word = tuple(rng.randrange(rule.k) for _ in range(L))
            phase = rng.randrange(L)
            got = step_cyclic(rule, CyclicConfiguration(word, phase))
            assert got.anchored() == naive_image_point(rule, word, phase)

    @pytest.mark.parametrize("k", [2, 3])
    def test_commutes_with_shift(self, k):
        rng = random.Random(k)
        rules = [random_rule(rng, k=k) for _ in range(4)]
        max_period = 8 if k == 2 else 6
        for rule in rules:
            for x in all_configs(k, max_period):
                assert step_cyclic(rule, x.shift()) == step_cyclic(rule, x).shift()


class TestCyclicConfiguration:
    def test_equality_is_pointwise(self):
        assert CyclicConfiguration((0, 1)) == CyclicConfiguration((0, 1, 0, 1))
        assert CyclicConfiguration((0, 1)) != CyclicConfiguration((0, 1), 1)
        assert CyclicConfiguration((0, 1), 1) == CyclicConfiguration((1, 0))

    def test_indexing(self):
        x = CyclicConfiguration((0, 1, 2), 1)
        assert [x[i] for i in range(-2, 3)] == [2, 0, 1, 2, 0]
        assert x.window(-1, 1) == (0, 1, 2)

    def test_shift_direction(self):
        x = CyclicConfiguration((0, 1, 2))
        assert x.shift()[0] == x[1]


class TestCompose:
    def test_identity_outer(self, paper3):
        assert compose(identity_rule(paper3.alphabet), paper3) == paper3

    def test_shift_twice(self, shift):
        s2 = compose(shift, shift)
        assert (s2.memory, s2.anticipation) == (2, 2)
        for x in all_configs(2, 6):
            assert step_cyclic(s2, x) == x.shift(2)

    def test_rule90_twice(self):
        r = eca(90)
        rr = compose(r, r)
        for x in all_configs(2, 6):
            assert step_cyclic(rr, x) == step_cyclic(r, step_cyclic(r, x))

    def test_alphabet_mismatch(self, paper3):
        with pytest.raises(ValueError):
            compose(paper3, eca(90))


class TestIterate:
    def test_identity(self, identity):
        assert is_identity_rule(iterate_rule(identity, 5))

    def test_rotation_order(self, rot3):
        assert not is_identity_rule(iterate_rule(rot3, 2))
        assert is_identity_rule(iterate_rule(rot3, 3))

    def test_wall_rule_square(self, paper3):
        sq = iterate_rule(paper3, 2)
        assert (sq.memory, sq.anticipation) == (-2, 0)
        for u in paper3.alphabet.words(3):
            assert apply_rule_word(sq, u) == naive_apply(paper3, naive_apply(paper3, u))

    def test_budget(self, paper3):
        with pytest.raises(BudgetExceeded):
            iterate_rule(paper3, 30)
        with pytest.raises(BudgetExceeded):
            iterate_rule(paper3, 5, budget=100)

    def test_consistency_random(self):
        rng = random.Random(11)
        for _ in range(30):
            rule = random_rule(rng)
            for p in range(1, 5):
                it = iterate_rule(rule, p)
                for _ in range(5):
                    u = tuple(rng.randrange(rule.k) for _ in range(p * rule.diameter + 3))
                    want = u
                    for _ in range(p):
                        want = naive_apply(rule, want)
                    assert apply_rule_word(it, u) == want


class TestIdentityAndMaps:
    def test_shift_not_identity(self, shift):
        assert not is_identity_rule(shift)

    def test_padded_identity(self):
        padded = rule_from_function(("0", "1"), -1, 1, lambda a, b, c: b)
        assert is_identity_rule(padded)
        assert same_map(padded, identity_rule(padded.alphabet))
        assert padded.minimized() == identity_rule(padded.alphabet)

    def test_same_map_after_widen(self, paper3):
        assert same_map(paper3, paper3.widen(-3, 2))
        assert not same_map(paper3, iterate_rule(paper3, 2))

    def test_constant_minimizes_to_radius_zero(self):
        const = rule_from_function(("0", "1"), -1, 1, lambda a, b, c: 1)
        mini = const.minimized()
        assert (mini.memory, mini.anticipation) == (0, 0)


class TestDistance:
    def test_equal(self):
        x = CyclicConfiguration((0, 1))
        assert distance(x, CyclicConfiguration((0, 1, 0, 1))) == 0

    def test_first_cell(self):
        assert distance(CyclicConfiguration((0,)), CyclicConfiguration((1,))) == 1

    def test_half(self):
        x, y = CyclicConfiguration((0, 1)), CyclicConfiguration((0, 0))
        assert distance(x, y) == Fraction(1, 2)

    def test_negative_side(self):
        x = CyclicConfiguration((0, 0, 0, 1))  # x_-1 = 1
        y = CyclicConfiguration((0,))
        assert distance(x, y) == Fraction(1, 2)

    @settings(max_examples=200, deadline=None)
    @given(
        st.lists(st.integers(0, 1), min_size=1, max_size=6),
        st.lists(st.integers(0, 1), min_size=1, max_size=6),
        st.lists(st.integers(0, 1), min_size=1, max_size=6),
    )
    def test_ultrametric(self, a, b, c):
        x, y, z = (CyclicConfiguration(tuple(w)) for w in (a, b, c))
        assert distance(x, y) <= max(distance(x, z), distance(z, y))
        assert distance(x, y) == distance(y, x)


def test_spacetime_rows(paper3):
    x = CyclicConfiguration.parse(paper3, "wr000")
    block = spacetime(paper3, x, 4, 0, 4)
    assert block.format(paper3.alphabet) == ["wr000", "wrr00", "wr0r0", "wrr0r", "wr0r0"]
    assert all(len(r) == block.width for r in block.rows)
