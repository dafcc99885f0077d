"""The level-m tensor model of conditional freeness.

Each algebra ``l`` of the context receives ``m`` tensor slots holding
separator words. A free-product word is mapped into the slot algebra by a
unital *-homomorphism assembled from the letter images

    sum over k of [letter at slot (l, k)]
                  x [separators at slots (l', k..m) of every other algebra
                     minus, for k >= 2, separators at slots (l', k-1..m)]

and evaluated by the product state that applies the first state of each
pair to slot 1 and the second state to slots 2..m, through the separator
extension of each.

Separator powers are clamped to 1 after every product. Everything the
evaluation states can see is invariant under that reduction, and it makes
equality of tensor elements canonical.

Terms are stored as ``LinComb`` over sorted slot tuples; absent slots are
units, so contexts may carry algebras a word never touches without
changing any value.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, NamedTuple

from .algebra import (
    FpWord,
    Generator,
    LinComb,
    ONE,
    Scalar,
    TildeWord,
    Word,
    ZERO,
    clamp_t,
    tilde_mul,
)
from .states import PointState, StatePair, boolean_extend_eval

SlotKey = tuple[int, int]  # (algebra_id, position 1..m)
Slots = tuple[tuple[SlotKey, TildeWord], ...]

_T = TildeWord.t()
UNIT_SLOTS: Slots = ()


@dataclass(frozen=True)
class MContext:
    """Level and per-algebra state pairs of one tensor model."""

    m: int
    pairs: Mapping[int, StatePair]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("level must be at least 1")
        if not self.pairs:
            raise ValueError("context needs at least one algebra")

    @property
    def algebras(self) -> tuple[int, ...]:
        return tuple(sorted(self.pairs))

    def pair(self, algebra: int) -> StatePair:
        try:
            return self.pairs[algebra]
        except KeyError:
            raise ValueError(f"algebra {algebra} not in context") from None


def make_slots(entries: Mapping[SlotKey, TildeWord]) -> Slots:
    """Canonical slot tuple: clamped words, units dropped, keys sorted."""
    out = []
    for key, tw in entries.items():
        tw = clamp_t(tw)
        if not tw.is_unit():
            out.append((key, tw))
    out.sort(key=lambda kv: kv[0])
    return tuple(out)


def slots_mul(s1: Slots, s2: Slots) -> Slots:
    if not s1:
        return s2
    if not s2:
        return s1
    table = dict(s1)
    for key, tw in s2:
        prev = table.get(key)
        table[key] = tw if prev is None else clamp_t(tilde_mul(prev, tw))
    return tuple(sorted(table.items()))


class TensorTerm(NamedTuple):
    """One scaled basis tensor: coefficient and occupied slots."""

    coeff: Scalar
    slots: Slots

    def element(self) -> LinComb:
        return LinComb.term(self.slots, self.coeff)


TENSOR_UNIT = LinComb.term(UNIT_SLOTS, ONE)
TENSOR_ZERO = LinComb.zero()


def tensor_mul(e1: LinComb, e2: LinComb) -> LinComb:
    table: dict = {}
    for s1, c1 in e1.items():
        for s2, c2 in e2.items():
            s = slots_mul(s1, s2)
            acc = table.get(s, ZERO) + c1 * c2
            if acc:
                table[s] = acc
            elif s in table:
                del table[s]
    return LinComb._raw(table)


def embed(l: int, k: int, m: int, x: TildeWord) -> TensorTerm:
    """Place one separator word at slot ``(l, k)``, units elsewhere."""
    if not 1 <= k <= m:
        raise ValueError(f"slot position {k} outside 1..{m}")
    return TensorTerm(ONE, make_slots({(l, k): x}))


def t_block(l: int, k: int, m: int) -> LinComb:
    """Separators at slots ``(l, k..m)``; unit for ``k = m + 1``, zero for
    ``k = 0``."""
    if k == 0:
        return TENSOR_ZERO
    if not 1 <= k <= m + 1:
        raise ValueError(f"separator block start {k} outside 0..{m + 1}")
    return LinComb.term(make_slots({(l, p): _T for p in range(k, m + 1)}), ONE)


def _others_t(ctx: MContext, l: int, k: int) -> Slots:
    """Separators at slots ``(l', k..m)`` for every other algebra jointly."""
    entries = {}
    for other in ctx.algebras:
        if other != l:
            for p in range(k, ctx.m + 1):
                entries[(other, p)] = _T
    return tuple(sorted(entries.items()))


def j_block_component(ctx: MContext, l: int, r: int, w: Word) -> LinComb:
    """The r-th summand of the block image: the word at slot ``(l, r)``
    tensored with the difference of consecutive separator blocks."""
    if not 1 <= r <= ctx.m:
        raise ValueError(f"component index {r} outside 1..{ctx.m}")
    word_slot = ((l, r), clamp_t(TildeWord.from_word(w)))
    plus = tuple(sorted((word_slot,) + _others_t(ctx, l, r)))
    if r == 1:
        return LinComb.term(plus, ONE)
    minus = tuple(sorted((word_slot,) + _others_t(ctx, l, r - 1)))
    return LinComb(((plus, ONE), (minus, -ONE)))


def j_block(ctx: MContext, l: int, w: Word) -> LinComb:
    """Block-level image of a nonempty one-algebra word."""
    if not w:
        raise ValueError("block word must be nonempty")
    if w.algebra != l:
        raise ValueError(f"word {w!r} is not in algebra {l}")
    out = LinComb.zero()
    for r in range(1, ctx.m + 1):
        out = out + j_block_component(ctx, l, r, w)
    return out


def j_letter(ctx: MContext, l: int, a: Generator) -> LinComb:
    """Letter-level image of a single generator."""
    if a.algebra != l:
        raise ValueError(f"generator {a!r} is not in algebra {l}")
    ctx.pair(l)
    return j_block(ctx, l, Word((a,)))


def j_word_letters(ctx: MContext, l: int, w: Word) -> LinComb:
    """Letter-by-letter image of a word, clamped after each factor."""
    if not w:
        raise ValueError("block word must be nonempty")
    out = TENSOR_UNIT
    for a in w:
        out = tensor_mul(out, j_letter(ctx, l, a))
    return out


def pyramid_bound(i: int, n: int, m: int) -> int:
    """Summation cap for block ``i`` of ``n``: min(i, n + 1 - i, m)."""
    return min(i, n + 1 - i, m)


def j_eval(ctx: MContext, u: FpWord, strategy: str = "auto") -> LinComb:
    """Image of a free-product word, clamped after each block product.

    Strategies: ``block`` multiplies full block images; ``letters``
    multiplies letter images; ``pyramid`` truncates the block sums by the
    pyramid profile, which is exact under the evaluation state; ``auto``
    uses ``pyramid`` for words of more than 6 blocks, else ``block``.
    """
    for alg in u.algebras():
        ctx.pair(alg)
    return _j_eval_cached(ctx.m, ctx.algebras, u, strategy)


@lru_cache(maxsize=4096)
def _j_eval_cached(m: int, algebras: tuple[int, ...], u: FpWord, strategy: str) -> LinComb:
    # the expansion only depends on the level and algebra set, not the
    # states; rebuild a stateless context for the structural work
    dummy = MContext(
        m, {alg: StatePair(PointState(alg), PointState(alg)) for alg in algebras}
    )
    n = len(u)
    if strategy == "auto":
        strategy = "pyramid" if n > 6 else "block"
    if strategy not in ("block", "letters", "pyramid"):
        raise ValueError(f"unknown strategy {strategy!r}")
    out = TENSOR_UNIT
    for i, (alg, w) in enumerate(u.blocks, start=1):
        if strategy == "letters":
            factor = j_word_letters(dummy, alg, w)
        elif strategy == "pyramid":
            factor = LinComb.zero()
            for r in range(1, pyramid_bound(i, n, m) + 1):
                factor = factor + j_block_component(dummy, alg, r, w)
        else:
            factor = j_block(dummy, alg, w)
        out = tensor_mul(out, factor)
    return out


def phi_m_eval(ctx: MContext, e: LinComb) -> Scalar:
    """Tensor product state: first state on slot 1 of each algebra, the
    second state on slots 2..m, through their separator extensions."""
    memo: dict = {}
    total = ZERO
    for slots, coeff in e.items():
        value = coeff
        for (alg, pos), tw in slots:
            if pos > ctx.m:
                raise ValueError(f"slot position {pos} beyond level {ctx.m}")
            key = (alg, pos == 1, tw)
            cached = memo.get(key)
            if cached is None:
                pair = ctx.pair(alg)
                state = pair.phi if pos == 1 else pair.psi
                cached = boolean_extend_eval(state, tw)
                memo[key] = cached
            value *= cached
            if not value:
                break
        total += value
    return total


def mfree_eval(ctx: MContext, u: FpWord, strategy: str = "auto") -> Scalar:
    """The level-m product state of a free-product word."""
    return phi_m_eval(ctx, j_eval(ctx, u, strategy))


def psi_condition(ctx: MContext, e: LinComb) -> LinComb:
    """Evaluate the last slot of every algebra by its second state and
    drop it, landing in the level ``m - 1`` tensor algebra."""
    if ctx.m < 2:
        raise ValueError("conditioning requires level at least 2")
    table: dict = {}
    for slots, coeff in e.items():
        kept = []
        for (alg, pos), tw in slots:
            if pos > ctx.m:
                raise ValueError(f"slot position {pos} beyond level {ctx.m}")
            if pos == ctx.m:
                coeff = coeff * boolean_extend_eval(ctx.pair(alg).psi, tw)
            else:
                kept.append(((alg, pos), tw))
        if not coeff:
            continue
        key = tuple(kept)
        acc = table.get(key, ZERO) + coeff
        if acc:
            table[key] = acc
        elif key in table:
            del table[key]
    return LinComb._raw(table)


def lower_context(ctx: MContext) -> MContext:
    if ctx.m < 2:
        raise ValueError("no level below 1")
    return MContext(ctx.m - 1, ctx.pairs)


def d_element(ctx: MContext, l: int, w: Word) -> LinComb:
    """The single-separator summand split off the block image.

    At level 1 the split-off term is the scalar ``psi(w)`` times a bare
    separator at every other algebra; at higher levels it is the word in
    the last slot with separators alongside.
    """
    if not w:
        raise ValueError("block word must be nonempty")
    if ctx.m == 1:
        coeff = ctx.pair(l).psi.value(w)
        return LinComb.term(_others_t(ctx, l, 1), coeff) if coeff else LinComb.zero()
    slots = tuple(
        sorted((((l, ctx.m), clamp_t(TildeWord.from_word(w))),) + _others_t(ctx, l, ctx.m))
    )
    return LinComb.term(slots, ONE)


def g_element(ctx: MContext, l: int, w: Word) -> LinComb:
    """Conditioning remainder at the context level: ``psi(w)`` times
    (unit minus separators at the last slot of every other algebra)."""
    if not w:
        raise ValueError("block word must be nonempty")
    coeff = ctx.pair(l).psi.value(w)
    if not coeff:
        return LinComb.zero()
    return LinComb(((UNIT_SLOTS, coeff), (_others_t(ctx, l, ctx.m), -coeff)))


def h_element(ctx: MContext, l: int, w: Word) -> LinComb:
    """``psi(w)`` times separators at the last slot of every other algebra."""
    if not w:
        raise ValueError("block word must be nonempty")
    coeff = ctx.pair(l).psi.value(w)
    if not coeff:
        return LinComb.zero()
    return LinComb.term(_others_t(ctx, l, ctx.m), coeff)
