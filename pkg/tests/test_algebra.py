from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from freeness.algebra import (
    EMPTY_WORD,
    FP_UNIT,
    FpWord,
    Generator,
    LinComb,
    TildeWord,
    Word,
    clamp_t,
    element_from_word,
    element_mul,
    fp_mul,
    tilde_mul,
    word_star,
)

A = Generator(1, "a")
B = Generator(2, "b")
A2 = Generator(1, "a2")


def gens(algebra):
    return st.builds(
        Generator,
        st.just(algebra),
        st.sampled_from(["x", "y"]),
        st.booleans(),
    )


def words(algebra, min_size=0, max_size=4):
    return st.builds(Word, st.lists(gens(algebra), min_size=min_size, max_size=max_size))


@st.composite
def fpwords(draw, algebras=(1, 2, 3), max_blocks=4):
    blocks = []
    for _ in range(draw(st.integers(0, max_blocks))):
        alg = draw(st.sampled_from(algebras))
        blocks.append((alg, draw(words(alg, min_size=1, max_size=3))))
    return FpWord(blocks)


@st.composite
def tildewords(draw, algebra=1, max_words=3):
    n = draw(st.integers(0, max_words))
    ws = [draw(words(algebra, min_size=1, max_size=2)) for _ in range(n)]
    exps = [draw(st.integers(0, 3))]
    for i in range(n):
        lo = 0 if i == n - 1 else 1
        exps.append(draw(st.integers(lo, 3)))
    return TildeWord(exps, ws)


class TestGenerator:
    def test_star_is_involution(self):
        assert A.star().star() == A
        assert A.star().starred and not A.starred

    def test_ordering(self):
        assert Generator(1, "a") < Generator(1, "a", True) < Generator(1, "b") < Generator(2, "a")


class TestWord:
    def test_mixed_algebra_rejected(self):
        with pytest.raises(ValueError):
            Word((A, B))

    def test_star_examples(self):
        a, b = Generator(1, "a"), Generator(1, "b")
        assert word_star(Word((a, b))) == Word((b.star(), a.star()))
        assert word_star(EMPTY_WORD) == EMPTY_WORD
        w = Word((a, b.star(), Generator(1, "c")))
        assert word_star(word_star(w)) == w

    @given(words(1), words(1))
    def test_star_antihomomorphism(self, w1, w2):
        assert word_star(w1 * w2) == word_star(w2) * word_star(w1)

    def test_unit_is_algebra_free(self):
        assert Word().algebra is None
        assert Word() * Word((A,)) == Word((A,))


class TestFpWord:
    def test_normal_form_merges(self):
        u = FpWord([(1, Word((A,))), (1, Word((A2,))), (2, Word((B,)))])
        assert len(u) == 2
        assert u.blocks[0] == (1, Word((A, A2)))

    def test_mul_examples(self):
        u = FpWord([(1, Word((A,)))])
        v = FpWord([(2, Word((B,)))])
        w = FpWord([(1, Word((A2,)))])
        assert fp_mul(u, v).blocks == ((1, Word((A,))), (2, Word((B,))))
        assert fp_mul(u, w).blocks == ((1, Word((A, A2))),)
        assert fp_mul(u, FP_UNIT) == u
        assert fp_mul(FP_UNIT, u) == u

    def test_mislabeled_block_rejected(self):
        with pytest.raises(ValueError):
            FpWord([(2, Word((A,)))])

    @settings(max_examples=60)
    @given(fpwords(), fpwords(), fpwords())
    def test_associative(self, u, v, z):
        assert fp_mul(fp_mul(u, v), z) == fp_mul(u, fp_mul(v, z))

    @given(fpwords())
    def test_star_involution(self, u):
        assert u.star().star() == u


class TestTildeWord:
    def test_invariants(self):
        with pytest.raises(ValueError):
            TildeWord((0, 0, 0), (Word((A,)), Word((A2,))))  # inner zero power
        with pytest.raises(ValueError):
            TildeWord((0, -1), (Word((A,)),))
        with pytest.raises(ValueError):
            TildeWord((0, 0), (Word(),))

    def test_mul_examples(self):
        w1 = TildeWord((0, 1), (Word((A,)),))  # a t
        w2 = TildeWord((1, 0), (Word((A2,)),))  # t a2
        prod = tilde_mul(w1, w2)
        assert prod == TildeWord((0, 2, 0), (Word((A,)), Word((A2,))))
        bare1 = TildeWord.from_word(Word((A,)))
        bare2 = TildeWord.from_word(Word((A2,)))
        assert tilde_mul(bare1, bare2) == TildeWord.from_word(Word((A, A2)))
        assert tilde_mul(TildeWord.t(), TildeWord.unit()) == TildeWord.t()

    def test_star_example(self):
        u = TildeWord((1, 2, 0), (Word((A,)), Word((A2,))))
        assert u.star() == TildeWord((0, 2, 1), (Word((A2.star(),)), Word((A.star(),))))

    @settings(max_examples=60)
    @given(tildewords(), tildewords(), tildewords())
    def test_associative(self, u, v, z):
        assert tilde_mul(tilde_mul(u, v), z) == tilde_mul(u, tilde_mul(v, z))

    @given(tildewords(), tildewords())
    def test_star_antihomomorphism(self, u, v):
        assert tilde_mul(u, v).star() == tilde_mul(v.star(), u.star())

    def test_clamp_examples(self):
        w = Word((A,))
        u = TildeWord((3, 2), (w,))
        assert clamp_t(u) == TildeWord((1, 1), (w,))
        v = TildeWord((0, 1, 0), (w, Word((A2,))))
        assert clamp_t(v) == v
        assert clamp_t(TildeWord.unit()) == TildeWord.unit()

    @given(tildewords())
    def test_clamp_idempotent(self, u):
        assert clamp_t(clamp_t(u)) == clamp_t(u)

    @given(tildewords(), tildewords())
    def test_clamp_congruence(self, u, v):
        assert clamp_t(tilde_mul(u, v)) == clamp_t(tilde_mul(clamp_t(u), clamp_t(v)))


class TestLinComb:
    def test_zero_coefficients_dropped(self):
        e = LinComb([(Word((A,)), Fraction(1)), (Word((A,)), Fraction(-1))])
        assert not e
        assert e == LinComb.zero()

    def test_insertion_order_invariance(self):
        entries = [
            (Word((A,)), Fraction(1, 2)),
            (Word((A2,)), Fraction(-2)),
            (Word((A,)), Fraction(1, 3)),
        ]
        assert LinComb(entries) == LinComb(reversed(entries))

    def test_vector_ops(self):
        x = element_from_word(Word((A,)))
        y = element_from_word(Word((A2,)), Fraction(3))
        assert (x + y) - y == x
        assert -(x - x) == LinComb.zero()
        assert x.scale(Fraction(0)) == LinComb.zero()
        assert (x + y).coeff(Word((A2,))) == Fraction(3)

    def test_element_mul_bilinear(self):
        x = element_from_word(Word((A,))) + element_from_word(Word((A2,)))
        y = element_from_word(Word((A,)), Fraction(2))
        prod = element_mul(x, y)
        assert prod.coeff(Word((A, A))) == Fraction(2)
        assert prod.coeff(Word((A2, A))) == Fraction(2)
        assert len(prod) == 2
