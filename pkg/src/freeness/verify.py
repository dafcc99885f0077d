"""Seed-reproducible verification suites over random rational states.

Each suite draws pseudo-random moment tables with small numerators and
denominators, runs the identity checks of one engine layer, and reports
counts plus the first counterexample if any. The same seed always yields
the same report.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .algebra import (
    FP_UNIT,
    FpWord,
    Generator,
    LinComb,
    ONE,
    TildeWord,
    Word,
    clamp_t,
    element_from_word,
    fp_mul,
    tilde_mul,
    word_star,
)
from .bialgebra import (
    FpmWord,
    antipode_element,
    cfree_convolution,
    convolve,
    coproduct,
    coproduct_iter,
    counit,
    counit_element,
    delta_word,
    eta,
    fpm_element_mul,
    hat_j,
    i_hat1,
    t_run,
    t_sorted_element,
    t_sorted_tensor,
    tensor_legs_mul,
    tensor_unit,
)
from .mfree import (
    MContext,
    TENSOR_UNIT,
    d_element,
    g_element,
    h_element,
    j_block,
    j_eval,
    j_word_letters,
    lower_context,
    make_slots,
    mfree_eval,
    phi_m_eval,
    psi_condition,
    tensor_mul,
)
from .ncmoments import nc_free_moment
from .states import (
    PointState,
    State,
    StatePair,
    boolean_pairs,
    boolean_product_eval,
    cfree_eval,
    cfree_eval_word,
    elements_of,
    free_eval,
)

SUITE_NAMES = ("algebra", "states", "mfree", "bialgebra")


class Check:
    def __init__(self, name: str):
        self.name = name
        self.cases = 0
        self.failures = 0
        self.first = None

    def case(self, ok: bool, describe: str):
        self.cases += 1
        if not ok:
            self.failures += 1
            if self.first is None:
                self.first = describe

    def report(self) -> dict:
        return {
            "name": self.name,
            "cases": self.cases,
            "failures": self.failures,
            "first_counterexample": self.first,
        }


def random_moment(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 9))


def random_state(
    rng: random.Random, algebra: int, symbol: str, degree: int
) -> State:
    g = Generator(algebra, symbol)
    moments = {
        Word((g,) * k): random_moment(rng) for k in range(1, degree + 1)
    }
    return State(algebra, degree, moments)


def random_pair(rng: random.Random, algebra: int, symbol: str, degree: int) -> StatePair:
    return StatePair(
        random_state(rng, algebra, symbol, degree),
        random_state(rng, algebra, symbol, degree),
    )


_SYMBOLS = {1: "a", 2: "b", 3: "c"}


def random_pairs(rng, algebras, degree=6):
    return {alg: random_pair(rng, alg, _SYMBOLS[alg], degree) for alg in algebras}


def block_word(alg: int, length: int) -> Word:
    return Word((Generator(alg, _SYMBOLS[alg]),) * length)


def alternating_patterns(algebras, n):
    """All length-n sequences over the algebras with distinct neighbours."""
    for pattern in itertools.product(algebras, repeat=n):
        if all(x != y for x, y in zip(pattern, pattern[1:])):
            yield pattern


def pattern_words(pattern, max_block_len):
    for lens in itertools.product(range(1, max_block_len + 1), repeat=len(pattern)):
        yield FpWord((alg, block_word(alg, ln)) for alg, ln in zip(pattern, lens))


# -------------------------------------------------------------- algebra


def _random_word(rng, algebra, n_gens=2, max_len=4, allow_empty=True):
    length = rng.randint(0 if allow_empty else 1, max_len)
    letters = [
        Generator(algebra, f"g{rng.randint(1, n_gens)}", rng.random() < 0.5)
        for _ in range(length)
    ]
    return Word(letters)


def _random_fpword(rng, algebras=(1, 2, 3), max_blocks=4):
    blocks = []
    for _ in range(rng.randint(0, max_blocks)):
        alg = rng.choice(algebras)
        blocks.append((alg, _random_word(rng, alg, max_len=3, allow_empty=False)))
    return FpWord(blocks)


def _random_tilde(rng, algebra=1, max_words=3):
    n = rng.randint(0, max_words)
    words = [_random_word(rng, algebra, max_len=2, allow_empty=False) for _ in range(n)]
    exps = [rng.randint(0, 3)]
    for _ in range(n):
        exps.append(rng.randint(1, 3))
    if n:
        exps[0] = rng.randint(0, 3)
        exps[-1] = rng.randint(0, 3)
    else:
        exps = [rng.randint(0, 3)]
    return TildeWord(exps, words)


def _random_state_tilde(rng, algebra, max_words=2, max_word_len=2):
    """Random separator word over the single declared generator, so the
    random moment tables can evaluate it."""
    n = rng.randint(0, max_words)
    words = [block_word(algebra, rng.randint(1, max_word_len)) for _ in range(n)]
    exps = [rng.randint(0, 2)] + [rng.randint(1, 2) for _ in range(n)]
    if n:
        exps[-1] = rng.randint(0, 2)
    return TildeWord(exps, words)


def suite_algebra(rng: random.Random, trials: int, **_) -> list[Check]:
    assoc = Check("free_product_associative_unital")
    for _ in range(trials * 40):
        u, v, z = (_random_fpword(rng) for _ in range(3))
        ok = fp_mul(fp_mul(u, v), z) == fp_mul(u, fp_mul(v, z))
        ok = ok and fp_mul(u, FP_UNIT) == u and fp_mul(FP_UNIT, u) == u
        assoc.case(ok, f"u={u!r} v={v!r} z={z!r}")

    star = Check("word_star_involution_antihomomorphism")
    for _ in range(trials * 40):
        w1 = _random_word(rng, 1)
        w2 = _random_word(rng, 1)
        ok = word_star(word_star(w1)) == w1
        ok = ok and word_star(w1 * w2) == word_star(w2) * word_star(w1)
        star.case(ok, f"w1={w1!r} w2={w2!r}")

    tilde = Check("separator_word_associative_star_clamp")
    for _ in range(trials * 40):
        u, v, z = (_random_tilde(rng) for _ in range(3))
        ok = tilde_mul(tilde_mul(u, v), z) == tilde_mul(u, tilde_mul(v, z))
        ok = ok and tilde_mul(u, v).star() == tilde_mul(v.star(), u.star())
        ok = ok and clamp_t(clamp_t(u)) == clamp_t(u)
        ok = ok and clamp_t(tilde_mul(u, v)) == clamp_t(
            tilde_mul(clamp_t(u), clamp_t(v))
        )
        tilde.case(ok, f"u={u!r} v={v!r} z={z!r}")

    lin = Check("lincomb_insertion_order_canonical")
    for _ in range(trials * 20):
        entries = [
            (_random_word(rng, 1, max_len=2), random_moment(rng)) for _ in range(6)
        ]
        shuffled = entries[:]
        rng.shuffle(shuffled)
        lin.case(LinComb(entries) == LinComb(shuffled), f"entries={entries!r}")

    return [assoc, star, tilde, lin]


# --------------------------------------------------------------- states


def suite_states(rng: random.Random, trials: int, n_max: int = 4, **_) -> list[Check]:
    checks = []

    bool_eq = Check("boolean_equals_cfree_with_point_psi")
    for _ in range(trials):
        states = {alg: random_state(rng, alg, _SYMBOLS[alg], 6) for alg in (1, 2)}
        pairs = boolean_pairs(states)
        for n in range(0, min(n_max, 4) + 1):
            for pattern in alternating_patterns((1, 2), n):
                for u in pattern_words(pattern, 2):
                    lhs = cfree_eval_word(pairs, u)
                    rhs = boolean_product_eval(states, u)
                    bool_eq.case(lhs == rhs, f"u={u!r} lhs={lhs} rhs={rhs}")
    checks.append(bool_eq)

    factor = Check("centered_alternating_factorizes")
    for _ in range(trials * 4):
        pairs = random_pairs(rng, (1, 2))
        n = rng.randint(1, n_max)
        pattern = [rng.choice((1, 2))]
        while len(pattern) < n:
            pattern.append(3 - pattern[-1])
        seq = []
        expected = ONE
        for alg in pattern:
            w = block_word(alg, rng.randint(1, 2))
            el = element_from_word(w) - LinComb.term(
                Word(), pairs[alg].psi.value(w)
            )
            seq.append((alg, el))
            expected *= pairs[alg].phi.value_of(el)
        got = cfree_eval(pairs, seq)
        factor.case(got == expected, f"pattern={pattern} got={got} want={expected}")
    checks.append(factor)

    multi = Check("cfree_multilinear_per_block")
    for _ in range(trials * 4):
        pairs = random_pairs(rng, (1, 2))
        n = rng.randint(1, 4)
        pattern = [rng.choice((1, 2))]
        while len(pattern) < n:
            pattern.append(3 - pattern[-1])
        seq = [(alg, element_from_word(block_word(alg, rng.randint(1, 2)))) for alg in pattern]
        slot = rng.randrange(n)
        alg = seq[slot][0]
        x = element_from_word(block_word(alg, 1))
        y = element_from_word(block_word(alg, 2))
        c1, c2 = random_moment(rng), random_moment(rng)
        mixed = list(seq)
        mixed[slot] = (alg, x.scale(c1) + y.scale(c2))
        with_x = list(seq)
        with_x[slot] = (alg, x)
        with_y = list(seq)
        with_y[slot] = (alg, y)
        lhs = cfree_eval(pairs, mixed)
        rhs = c1 * cfree_eval(pairs, with_x) + c2 * cfree_eval(pairs, with_y)
        multi.case(lhs == rhs, f"pattern={pattern} slot={slot} lhs={lhs} rhs={rhs}")
    checks.append(multi)

    units = Check("unit_and_single_block_values")
    for _ in range(trials):
        pairs = random_pairs(rng, (1, 2))
        units.case(cfree_eval(pairs, []) == 1, "empty sequence")
        for alg in (1, 2):
            for ln in (1, 2, 3):
                w = block_word(alg, ln)
                got = cfree_eval(pairs, [(alg, element_from_word(w))])
                want = pairs[alg].phi.value(w)
                units.case(got == want, f"w={w!r} got={got} want={want}")
    checks.append(units)

    nc = Check("free_product_matches_noncrossing_oracle")
    for _ in range(trials):
        states = {alg: random_state(rng, alg, _SYMBOLS[alg], 6) for alg in (1, 2)}
        for n in range(1, 7):
            for colors in itertools.product((1, 2), repeat=n):
                letters = [Generator(alg, _SYMBOLS[alg]) for alg in colors]
                u = FpWord.from_letters(letters)
                lhs = free_eval(states, u)
                rhs = nc_free_moment(states, letters)
                nc.case(lhs == rhs, f"colors={colors} lhs={lhs} rhs={rhs}")
    checks.append(nc)

    return checks


# ---------------------------------------------------------------- mfree


def suite_mfree(
    rng: random.Random, trials: int, n_max: int = 6, m_max: int = 3, **_
) -> list[Check]:
    checks = []

    marginals = Check("marginals_preserved")
    for _ in range(trials):
        pairs = random_pairs(rng, (1, 2), degree=4)
        for m in range(1, m_max + 2):
            ctx = MContext(m, pairs)
            for alg in (1, 2):
                for ln in range(1, 5):
                    u = FpWord([(alg, block_word(alg, ln))])
                    got = mfree_eval(ctx, u)
                    want = pairs[alg].phi.value(block_word(alg, ln))
                    marginals.case(got == want, f"m={m} u={u!r} got={got} want={want}")
    checks.append(marginals)

    boolean_base = Check("level_1_is_boolean")
    for _ in range(trials):
        pairs = random_pairs(rng, (1, 2))
        states = {alg: p.phi for alg, p in pairs.items()}
        ctx = MContext(1, pairs)
        for n in range(0, 5):
            for pattern in alternating_patterns((1, 2), n):
                for u in pattern_words(pattern, 2):
                    got = mfree_eval(ctx, u)
                    want = boolean_product_eval(states, u)
                    boolean_base.case(got == want, f"u={u!r} got={got} want={want}")
    checks.append(boolean_base)

    agreement = Check("level_m_matches_cfree_up_to_2m_blocks")
    for _ in range(trials):
        pairs = random_pairs(rng, (1, 2))
        for m in range(1, m_max + 1):
            ctx = MContext(m, pairs)
            for n in range(1, min(2 * m, n_max) + 1):
                for pattern in alternating_patterns((1, 2), n):
                    for u in pattern_words(pattern, 2):
                        got = mfree_eval(ctx, u, strategy="pyramid")
                        want = cfree_eval_word(pairs, u)
                        agreement.case(
                            got == want, f"m={m} u={u!r} got={got} want={want}"
                        )
    checks.append(agreement)

    three = Check("three_algebras_match_cfree")
    for _ in range(max(1, trials // 2)):
        pairs = random_pairs(rng, (1, 2, 3))
        for m in (1, 2):
            ctx = MContext(m, pairs)
            for n in range(1, 2 * m + 1):
                for pattern in alternating_patterns((1, 2, 3), n):
                    u = FpWord((alg, block_word(alg, 1)) for alg in pattern)
                    got = mfree_eval(ctx, u)
                    want = cfree_eval_word(pairs, u)
                    three.case(got == want, f"m={m} u={u!r} got={got} want={want}")
    checks.append(three)

    stabil = Check("values_stabilize_once_2m_reaches_block_count")
    for _ in range(trials):
        pairs = random_pairs(rng, (1, 2))
        for n in range(1, n_max + 1):
            pattern = [1 if i % 2 == 0 else 2 for i in range(n)]
            u = FpWord((alg, block_word(alg, 1 + (i % 2))) for i, alg in enumerate(pattern))
            target = cfree_eval_word(pairs, u)
            for m in range(1, m_max + 1):
                value = mfree_eval(MContext(m, pairs), u, strategy="pyramid")
                if 2 * m >= n:
                    stabil.case(
                        value == target, f"m={m} u={u!r} value={value} target={target}"
                    )
    checks.append(stabil)

    block_letters = Check("block_image_equals_letter_product")
    for _ in range(trials * 2):
        pairs = random_pairs(rng, (1, 2))
        for m in range(1, m_max + 1):
            ctx = MContext(m, pairs)
            for alg in (1, 2):
                for ln in range(1, 4):
                    w = block_word(alg, ln)
                    block_letters.case(
                        j_block(ctx, alg, w) == j_word_letters(ctx, alg, w),
                        f"m={m} w={w!r}",
                    )
    checks.append(block_letters)

    pyramid = Check("pyramid_pruning_is_exact")
    for _ in range(trials):
        pairs = random_pairs(rng, (1, 2))
        for m in range(1, m_max + 1):
            ctx = MContext(m, pairs)
            for n in range(1, n_max + 1):
                for pattern in alternating_patterns((1, 2), n):
                    u = FpWord(
                        (alg, block_word(alg, 1 + (i % 2)))
                        for i, alg in enumerate(pattern)
                    )
                    full = mfree_eval(ctx, u, strategy="block")
                    pruned = mfree_eval(ctx, u, strategy="pyramid")
                    pyramid.case(
                        full == pruned, f"m={m} u={u!r} full={full} pruned={pruned}"
                    )
    checks.append(pyramid)

    conditioning = Check("state_factors_through_conditioning")
    for _ in range(trials * 2):
        pairs = random_pairs(rng, (1, 2))
        for m in range(2, m_max + 1):
            ctx = MContext(m, pairs)
            lower = lower_context(ctx)
            element = TENSOR_UNIT
            for _ in range(rng.randint(1, 3)):
                alg = rng.choice((1, 2))
                entries = {}
                for p in range(1, m + 1):
                    if rng.random() < 0.6:
                        entries[(alg, p)] = _random_state_tilde(rng, alg)
                element = tensor_mul(
                    element, LinComb.term(make_slots(entries), random_moment(rng))
                )
            lhs = phi_m_eval(ctx, element)
            rhs = phi_m_eval(lower, psi_condition(ctx, element))
            conditioning.case(lhs == rhs, f"m={m} lhs={lhs} rhs={rhs}")
    checks.append(conditioning)

    reduction = Check("conditioning_of_block_images")
    for _ in range(trials):
        pairs = random_pairs(rng, (1, 2))
        for m in range(2, m_max + 1):
            ctx = MContext(m, pairs)
            lower = lower_context(ctx)
            for alg in (1, 2):
                for ln in (1, 2):
                    w = block_word(alg, ln)
                    lhs = psi_condition(ctx, j_block(ctx, alg, w))
                    rhs = j_block(lower, alg, w) + g_element(lower, alg, w)
                    reduction.case(lhs == rhs, f"m={m} w={w!r}")
    checks.append(reduction)

    merge = Check("conditioning_multiplicative_on_word_images")
    for _ in range(trials):
        pairs = random_pairs(rng, (1, 2))
        for m in range(2, m_max + 1):
            ctx = MContext(m, pairs)
            for n in range(1, min(4, n_max) + 1):
                for pattern in alternating_patterns((1, 2), n):
                    u = FpWord((alg, block_word(alg, 1)) for alg in pattern)
                    lhs = psi_condition(ctx, j_eval(ctx, u, strategy="block"))
                    rhs = TENSOR_UNIT
                    for alg, w in u.blocks:
                        rhs = tensor_mul(
                            rhs, psi_condition(ctx, j_block(ctx, alg, w))
                        )
                    merge.case(lhs == rhs, f"m={m} u={u!r}")
    checks.append(merge)

    centered = Check("centered_images_factorize")
    for _ in range(trials):
        pairs = random_pairs(rng, (1, 2))
        for m in range(1, m_max + 1):
            ctx = MContext(m, pairs)
            for n in range(1, 2 * m + 1):
                for pattern in alternating_patterns((1, 2), n):
                    u = FpWord((alg, block_word(alg, 2 - (i % 2))) for i, alg in enumerate(pattern))
                    element = TENSOR_UNIT
                    expected = ONE
                    for alg, w in u.blocks:
                        element = tensor_mul(
                            element, j_block(ctx, alg, w) - d_element(ctx, alg, w)
                        )
                        expected *= pairs[alg].phi.value(w) - pairs[alg].psi.value(w)
                    got = phi_m_eval(ctx, element)
                    centered.case(
                        got == expected, f"m={m} u={u!r} got={got} want={expected}"
                    )
    checks.append(centered)

    helpers = Check("conditioning_helper_identities")
    for _ in range(trials):
        pairs = random_pairs(rng, (1, 2))
        for m in range(2, m_max + 1):
            ctx = MContext(m, pairs)
            for alg in (1, 2):
                w = block_word(alg, rng.randint(1, 3))
                psi_w = pairs[alg].psi.value(w)
                got = psi_condition(ctx, d_element(ctx, alg, w))
                helpers.case(
                    got == TENSOR_UNIT.scale(psi_w), f"cond(d) m={m} w={w!r}"
                )
                gh = g_element(ctx, alg, w) + h_element(ctx, alg, w)
                helpers.case(gh == TENSOR_UNIT.scale(psi_w), f"g+h m={m} w={w!r}")
                diff = h_element(ctx, alg, w) - d_element(ctx, alg, w)
                helpers.case(
                    not psi_condition(ctx, diff), f"cond(h-d) m={m} w={w!r}"
                )
    checks.append(helpers)

    inert = Check("inert_algebra_changes_nothing")
    for _ in range(trials):
        pairs = random_pairs(rng, (1, 2))
        wide = dict(pairs)
        wide[3] = random_pair(rng, 3, _SYMBOLS[3], 6)
        for m in range(1, m_max + 1):
            for n in range(1, min(4, 2 * m) + 1):
                for pattern in alternating_patterns((1, 2), n):
                    u = FpWord((alg, block_word(alg, 1)) for alg in pattern)
                    narrow_val = mfree_eval(MContext(m, pairs), u)
                    wide_val = mfree_eval(MContext(m, wide), u)
                    inert.case(
                        narrow_val == wide_val,
                        f"m={m} u={u!r} narrow={narrow_val} wide={wide_val}",
                    )
    checks.append(inert)

    return checks


# ------------------------------------------------------------ bialgebra


def _hat_j_of_element(m, n_factors, combo: LinComb) -> LinComb:
    out = LinComb.zero()
    for u, c in combo.items():
        out = out + hat_j(m, n_factors, u).scale(c)
    return out


def _star_fpm_element(e: LinComb) -> LinComb:
    return e.map_basis(lambda w: w.star())


def suite_bialgebra(rng: random.Random, trials: int, m_max: int = 3, **_) -> list[Check]:
    checks = []
    base_word = lambda length: Word(tuple(Generator(1, "a") for _ in range(length)))

    compat = Check("doubling_compatibility_with_coproduct")
    for m in range(1, m_max + 1):
        for length in range(0, 5):
            w = base_word(length)
            lhs = _hat_j_of_element(m, 2, delta_word(w, 2))
            rhs = coproduct(m, i_hat1(w))
            compat.case(lhs == rhs, f"m={m} length={length}")
    checks.append(compat)

    compat3 = Check("triple_doubling_compatibility")
    for m in range(1, m_max + 1):
        for length in range(0, 4):
            w = base_word(length)
            lhs = _hat_j_of_element(m, 3, delta_word(w, 3))
            rhs = coproduct_iter(m, i_hat1(w), 3)
            compat3.case(lhs == rhs, f"m={m} length={length}")
    checks.append(compat3)

    coassoc = Check("coassociativity_on_generators")
    for m in range(1, m_max + 1):
        gens = [FpmWord.t(i) for i in range(1, m + 1)]
        gens += [FpmWord.gen(k, "a") for k in range(1, m + 1)]
        for x in gens:
            left = LinComb.zero()
            for legs, c in coproduct(m, x).items():
                for inner, c2 in coproduct(m, legs[0]).items():
                    left = left + LinComb.term(inner + legs[1:], c * c2)
            right = coproduct_iter(m, x, 3)
            coassoc.case(left == right, f"m={m} x={x!r}")
    checks.append(coassoc)

    counit_laws = Check("counit_laws_on_generators")
    for m in range(1, m_max + 1):
        gens = [FpmWord.t(i) for i in range(1, m + 1)]
        gens += [FpmWord.gen(k, "a") for k in range(1, m + 1)]
        for x in gens:
            left = LinComb.zero()
            right = LinComb.zero()
            for (l1, l2), c in coproduct(m, x).items():
                left = left + LinComb.term(l2, c * counit(m, l1))
                right = right + LinComb.term(l1, c * counit(m, l2))
            want = LinComb.term(x, ONE)
            counit_laws.case(left == want and right == want, f"m={m} x={x!r}")
    checks.append(counit_laws)

    counit_mult = Check("counit_multiplicative")
    for _ in range(trials * 10):
        m = rng.randint(1, m_max)
        x = _random_fpm_word(rng, m)
        y = _random_fpm_word(rng, m)
        counit_mult.case(
            counit(m, x * y) == counit(m, x) * counit(m, y), f"x={x!r} y={y!r}"
        )
    checks.append(counit_mult)

    antipode_law = Check("antipode_law_on_generators")
    for m in range(1, m_max + 1):
        gens = [FpmWord.t(i, laurent=True) for i in range(1, m + 1)]
        gens += [FpmWord.t(i, -1, laurent=True) for i in range(1, m + 1)]
        gens += [FpmWord.gen(k, "a", laurent=True) for k in range(1, m + 1)]
        for x in gens:
            left = LinComb.zero()
            right = LinComb.zero()
            for (l1, l2), c in coproduct(m, x).items():
                left = left + fpm_element_mul(
                    antipode_element(m, LinComb.term(l1, c)), LinComb.term(l2, ONE)
                )
                right = right + fpm_element_mul(
                    LinComb.term(l1, c), antipode_element(m, LinComb.term(l2, ONE))
                )
            want = LinComb.term(FpmWord.unit(laurent=True), counit(m, x))
            antipode_law.case(
                left == want and right == want, f"m={m} x={x!r} left={left!r}"
            )
    checks.append(antipode_law)

    invol = Check("antipode_involution_compat_modulo_commuting_separators")
    for m in range(1, m_max + 1):
        gens = [FpmWord.t(i, laurent=True) for i in range(1, m + 1)]
        gens += [FpmWord.gen(k, "a", laurent=True) for k in range(1, m + 1)]
        gens += [FpmWord.gen(k, "a", starred=True, laurent=True) for k in range(1, m + 1)]
        for x in gens:
            e = LinComb.term(x, ONE)
            theta = antipode_element(
                m, _star_fpm_element(antipode_element(m, _star_fpm_element(e)))
            )
            invol.case(
                t_sorted_element(theta) == t_sorted_element(e), f"m={m} x={x!r}"
            )
    checks.append(invol)

    star_coproduct = Check("coproduct_star_compat_modulo_commuting_separators")
    for _ in range(trials * 5):
        m = rng.randint(1, m_max)
        x = _random_fpm_word(rng, m)
        lhs = coproduct(m, x.star())
        rhs = LinComb(
            ((l1.star(), l2.star()), c) for (l1, l2), c in coproduct(m, x).items()
        )
        star_coproduct.case(
            t_sorted_tensor(lhs) == t_sorted_tensor(rhs), f"m={m} x={x!r}"
        )
    checks.append(star_coproduct)

    quotient = Check("quotient_of_free_images_matches_slot_images")
    for _ in range(trials):
        pairs = random_pairs(rng, (1, 2))
        for m in range(1, m_max + 1):
            ctx = MContext(m, pairs)
            for n in range(1, 5):
                for pattern in alternating_patterns((1, 2), n):
                    u = FpWord((alg, block_word(alg, 1)) for alg in pattern)
                    free_image = hat_j(m, 2, u)
                    element = LinComb.zero()
                    for legs, c in free_image.items():
                        entries = {}
                        for leg_index, leg in enumerate(legs, start=1):
                            for p, tw in enumerate(eta(m, leg, leg_index), start=1):
                                if not tw.is_unit():
                                    entries[(leg_index, p)] = tw
                        element = element + LinComb.term(make_slots(entries), c)
                    quotient.case(
                        element == j_eval(ctx, u, strategy="block"),
                        f"m={m} u={u!r}",
                    )
    checks.append(quotient)

    doubling = Check("doubling_expansions")
    w = base_word(2)
    doubling.case(len(delta_word(w, 2)) == 4, "two letters over two copies")
    doubling.case(len(delta_word(base_word(1), 3)) == 3, "one letter over three copies")
    doubling.case(delta_word(Word(), 2) == LinComb.term(FP_UNIT, ONE), "unit")
    checks.append(doubling)

    conv = Check("convolution_matches_direct_conditionally_free_convolution")
    for _ in range(trials):
        p1 = random_pair(rng, 1, "a", 6)
        p2 = random_pair(rng, 1, "a", 6)
        p3 = random_pair(rng, 1, "a", 6)
        for length in range(0, 4):
            w = base_word(length)
            target = cfree_convolution([p1, p2], w)
            stable = None
            for m in range(1, m_max + 1):
                value = convolve(m, [p1, p2], w)
                if 2 * m >= max(length, 1):
                    conv.case(
                        value == target,
                        f"N=2 m={m} len={length} value={value} target={target}",
                    )
                    stable = value
            if length <= 2:
                target3 = cfree_convolution([p1, p2, p3], w)
                value3 = convolve(2, [p1, p2, p3], w)
                conv.case(
                    value3 == target3,
                    f"N=3 len={length} value={value3} target={target3}",
                )
    checks.append(conv)

    mean = Check("level_1_convolution_adds_means")
    for _ in range(trials * 3):
        p1 = random_pair(rng, 1, "a", 2)
        p2 = random_pair(rng, 1, "a", 2)
        w = base_word(1)
        got = convolve(1, [p1, p2], w)
        want = p1.phi.value(w) + p2.phi.value(w)
        mean.case(got == want, f"got={got} want={want}")
    checks.append(mean)

    return checks


def _random_fpm_word(rng, m, max_letters=5, laurent=False):
    letters = []
    for _ in range(rng.randint(0, max_letters)):
        copy = rng.randint(1, m)
        if rng.random() < 0.5:
            exp = rng.randint(-2, 2) if laurent else rng.randint(1, 2)
            letters.append(("t", copy, exp))
        else:
            letters.append(("g", copy, "a", rng.random() < 0.3))
    return FpmWord(letters, laurent)


SUITES = {
    "algebra": suite_algebra,
    "states": suite_states,
    "mfree": suite_mfree,
    "bialgebra": suite_bialgebra,
}


def run_suite(
    name: str, seed: int = 0, trials: int = 3, n_max: int = 6, m_max: int = 3
) -> dict:
    if name != "all" and name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    names = list(SUITES) if name == "all" else [name]
    checks: list[Check] = []
    for suite_name in names:
        rng = random.Random(seed)
        checks.extend(SUITES[suite_name](rng, trials, n_max=n_max, m_max=m_max))
    return {
        "suite": name,
        "seed": seed,
        "trials": trials,
        "n_max": n_max,
        "m_max": m_max,
        "passed": all(c.failures == 0 for c in checks),
        "checks": [c.report() for c in checks],
    }
