import itertools
import random
from fractions import Fraction

import pytest

from freeness.algebra import FpWord, Generator, LinComb, TildeWord, Word, element_from_word
from freeness.states import (
    DegreeOverflowError,
    MissingMomentError,
    PointState,
    State,
    StatePair,
    boolean_extend_eval,
    boolean_pairs,
    boolean_product_eval,
    cfree_eval,
    cfree_eval_word,
    elements_of,
    free_eval,
)
from freeness.verify import (
    alternating_patterns,
    block_word,
    pattern_words,
    random_pair,
    random_pairs,
    random_state,
)

A = Generator(1, "a")
B = Generator(2, "b")
F = Fraction


def simple_state(algebra, symbol, *moments):
    g = Generator(algebra, symbol)
    table = {Word((g,) * (k + 1)): F(v) for k, v in enumerate(moments)}
    return State(algebra, len(moments), table)


class TestState:
    def test_unit_normalized(self):
        st = simple_state(1, "a", "1/2")
        assert st.value(Word()) == 1

    def test_degree_overflow_is_loud(self):
        st = simple_state(1, "a", "1/2")
        with pytest.raises(DegreeOverflowError):
            st.value(Word((A, A)))

    def test_missing_moment_is_loud(self):
        st = State(1, 2, {Word((A,)): F(1, 2)})
        with pytest.raises(MissingMomentError):
            st.value(Word((A, A)))

    def test_wrong_algebra_rejected(self):
        st = simple_state(1, "a", "1/2")
        with pytest.raises(ValueError):
            st.value(Word((B,)))

    def test_bad_unit_moment_rejected(self):
        with pytest.raises(ValueError):
            State(1, 1, {Word(): F(2)})

    def test_hermitian_fill_and_conflict(self):
        w = Word((A,))
        ws = Word((A.star(),))
        st = State(1, 1, {w: F(1, 3)}, hermitian=True)
        assert st.value(ws) == F(1, 3)
        with pytest.raises(ValueError):
            State(1, 1, {w: F(1), ws: F(2)}, hermitian=True)

    def test_point_state(self):
        pi = PointState(2)
        assert pi.value(Word()) == 1
        assert pi.value(Word((B, B, B, B, B))) == 0

    def test_value_of_is_linear(self):
        st = simple_state(1, "a", "1/2", "3")
        el = element_from_word(Word((A,)), F(2)) + element_from_word(Word((A, A)), F(-1))
        assert st.value_of(el) == 2 * F(1, 2) - F(3)


class TestBooleanExtension:
    def test_spec_examples(self):
        st = simple_state(1, "a", "1/2", "5/7")
        w = Word((A, A))
        assert boolean_extend_eval(st, TildeWord.unit()) == 1
        assert boolean_extend_eval(st, TildeWord((1, 1), (w,))) == F(5, 7)
        two = TildeWord((0, 1, 0), (Word((A,)), w))
        assert boolean_extend_eval(st, two) == F(1, 2) * F(5, 7)

    def test_separators_invisible(self):
        st = simple_state(1, "a", "-2/3")
        w = Word((A,))
        for exps in [(0, 0), (3, 0), (0, 2), (1, 4)]:
            assert boolean_extend_eval(st, TildeWord(exps, (w,))) == F(-2, 3)

    def test_degree_overflow_propagates(self):
        st = simple_state(1, "a", "1/2")
        with pytest.raises(DegreeOverflowError):
            boolean_extend_eval(st, TildeWord((0, 0), (Word((A, A)),)))


class TestBooleanProduct:
    def test_spec_examples(self):
        s1 = simple_state(1, "a", "1/2")
        s2 = simple_state(2, "b", "1/3")
        states = {1: s1, 2: s2}
        u = FpWord.from_letters([A, B])
        assert boolean_product_eval(states, u) == F(1, 6)
        assert boolean_product_eval(states, FpWord()) == 1
        u3 = FpWord.from_letters([A, B, A])
        assert boolean_product_eval(states, u3) == F(1, 2) * F(1, 3) * F(1, 2)


class TestCfree:
    def test_two_blocks_factorize(self):
        # expanding the 4-term centering by hand collapses to phi1*phi2
        rng = random.Random(11)
        for _ in range(50):
            pairs = random_pairs(rng, (1, 2), degree=2)
            u = FpWord.from_letters([A, B])
            want = pairs[1].phi.value(Word((A,))) * pairs[2].phi.value(Word((B,)))
            assert cfree_eval_word(pairs, u) == want

    def test_three_block_formula(self):
        # a1 b a2 with one generator: phi1(a)^2 phi2(b) + phi1(aa) psi2(b)
        #                              - phi1(a)^2 psi2(b)
        rng = random.Random(12)
        for _ in range(100):
            pairs = random_pairs(rng, (1, 2), degree=2)
            u = FpWord.from_letters([A, B, A])
            p = pairs[1].phi.value(Word((A,)))
            P = pairs[1].phi.value(Word((A, A)))
            q = pairs[2].phi.value(Word((B,)))
            r = pairs[2].psi.value(Word((B,)))
            assert cfree_eval_word(pairs, u) == p * p * q + P * r - p * p * r

    def test_four_block_formula(self):
        rng = random.Random(13)
        for _ in range(100):
            pairs = random_pairs(rng, (1, 2), degree=2)
            u = FpWord.from_letters([A, B, A, B])
            p = pairs[1].phi.value(Word((A,)))
            s = pairs[1].psi.value(Word((A,)))
            q = pairs[2].phi.value(Word((B,)))
            r = pairs[2].psi.value(Word((B,)))
            P = pairs[1].phi.value(Word((A, A)))
            Q = pairs[2].phi.value(Word((B, B)))
            want = p * p * q * q + p * s * (Q - q * q) + (P - p * p) * q * r
            assert cfree_eval_word(pairs, u) == want

    def test_not_alternating_rejected(self):
        rng = random.Random(14)
        pairs = random_pairs(rng, (1, 2), degree=2)
        seq = [(1, element_from_word(Word((A,)))), (1, element_from_word(Word((A,))))]
        with pytest.raises(ValueError):
            cfree_eval(pairs, seq)

    def test_point_psi_is_boolean(self):
        rng = random.Random(15)
        for _ in range(5):
            states = {1: random_state(rng, 1, "a", 6), 2: random_state(rng, 2, "b", 6)}
            pairs = boolean_pairs(states)
            for n in range(0, 5):
                for pattern in alternating_patterns((1, 2), n):
                    for u in pattern_words(pattern, 2):
                        assert cfree_eval_word(pairs, u) == boolean_product_eval(states, u)

    def test_centered_blocks_factorize(self):
        rng = random.Random(16)
        pairs = random_pairs(rng, (1, 2), degree=4)
        for pattern in alternating_patterns((1, 2), 4):
            seq = []
            want = Fraction(1)
            for alg in pattern:
                w = block_word(alg, 2)
                el = element_from_word(w) - LinComb.term(Word(), pairs[alg].psi.value(w))
                seq.append((alg, el))
                want *= pairs[alg].phi.value_of(el)
            assert cfree_eval(pairs, seq) == want

    def test_unit_and_single_block(self):
        rng = random.Random(17)
        pairs = random_pairs(rng, (1, 2), degree=3)
        assert cfree_eval(pairs, []) == 1
        w = Word((A, A, A))
        assert cfree_eval(pairs, [(1, element_from_word(w))]) == pairs[1].phi.value(w)


class TestFree:
    def test_alternating_two_blocks(self):
        rng = random.Random(18)
        states = {1: random_state(rng, 1, "a", 2), 2: random_state(rng, 2, "b", 2)}
        u = FpWord.from_letters([A, B])
        want = states[1].value(Word((A,))) * states[2].value(Word((B,)))
        assert free_eval(states, u) == want

    def test_centered_alternating_vanishes(self):
        # all blocks with zero mean: the free moment of the alternating word is 0
        states = {
            1: simple_state(1, "a", 0, 1, 0, 0),
            2: simple_state(2, "b", 0, 1, 0, 0),
        }
        for n in range(1, 5):
            letters = [A if i % 2 == 0 else B for i in range(n)]
            assert free_eval(states, FpWord.from_letters(letters)) == 0

    def test_abab_with_unit_variance_letters(self):
        states = {
            1: simple_state(1, "a", 0, 1, 0, 0),
            2: simple_state(2, "b", 0, 1, 0, 0),
        }
        u = FpWord.from_letters([A, B, A, B])
        assert free_eval(states, u) == 0
        # contrast: the tensor-independent value of the same word would be 1,
        # and aabb (merged blocks) gives phi(aa) phi(bb) = 1
        assert free_eval(states, FpWord.from_letters([A, A, B, B])) == 1
