"""Free-product carrier, coproduct, antipode, and state convolution.

Here the tensor slots of one algebra are replaced by ``m`` free copies of
the separator extension, with nothing commuting across copies. Words are
flat letter strings: generator copies ``a_(i)`` and separator powers
``t_(i)^e``, merged only when two separator letters of the same copy meet.
The Laurent variant (``laurent=True``) admits negative separator powers
and carries the antipode; mixing the two variants in one product is an
error.

The coproduct makes every separator copy group-like and every difference
``a_(k) - a_(k+1)`` primitive relative to the separator block
``t_(k)...t_(m)``; bare generator copies are telescoped into differences.
The quotient onto the slot algebra (``eta``) buckets letters by copy,
preserving order inside each copy, then clamps separator powers.

Convolution of two (or N) state pairs on one algebra embeds a word into
copy 1, applies the (iterated) coproduct, and evaluates every tensor leg
through the quotient followed by the slot product state.
"""

from __future__ import annotations

from typing import Iterable, Sequence

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
    fp_mul,
)
from .states import PointState, State, StatePair, boolean_extend_eval, cfree_eval, elements_of

# letters: ("t", copy, exponent) with exponent != 0, or ("g", copy, symbol, starred)
TLetter = tuple
GLetter = tuple


class HopfModeError(Exception):
    """Raised when Laurent-only and plain words are mixed or misused."""


def _t_letter(copy: int, exp: int) -> TLetter:
    return ("t", copy, exp)


def _g_letter(copy: int, symbol: str, starred: bool) -> GLetter:
    return ("g", copy, symbol, starred)


class FpmWord:
    """Normal-form word in the m-fold free product of separator extensions."""

    __slots__ = ("letters", "laurent", "_hash")

    def __init__(self, letters: Iterable[tuple] = (), laurent: bool = False):
        out: list[tuple] = []
        for let in letters:
            if let[0] == "t":
                _, copy, exp = let
                if exp == 0:
                    continue
                if exp < 0 and not laurent:
                    raise HopfModeError(
                        "negative separator power outside the Laurent variant"
                    )
                if out and out[-1][0] == "t" and out[-1][1] == copy:
                    merged = out[-1][2] + exp
                    out.pop()
                    if merged:
                        out.append(_t_letter(copy, merged))
                else:
                    out.append(_t_letter(copy, exp))
            elif let[0] == "g":
                out.append(let)
            else:
                raise ValueError(f"bad letter {let!r}")
        self.letters = tuple(out)
        self.laurent = laurent
        self._hash = hash((self.letters, laurent))

    @classmethod
    def unit(cls, laurent: bool = False) -> "FpmWord":
        return cls((), laurent)

    @classmethod
    def t(cls, copy: int, exp: int = 1, laurent: bool = False) -> "FpmWord":
        return cls((_t_letter(copy, exp),), laurent)

    @classmethod
    def gen(cls, copy: int, symbol: str, starred: bool = False, laurent: bool = False) -> "FpmWord":
        return cls((_g_letter(copy, symbol, starred),), laurent)

    def is_unit(self) -> bool:
        return not self.letters

    def has_generators(self) -> bool:
        return any(let[0] == "g" for let in self.letters)

    def max_copy(self) -> int:
        return max((let[1] for let in self.letters), default=0)

    def __mul__(self, other: "FpmWord") -> "FpmWord":
        if self.laurent != other.laurent:
            raise HopfModeError("cannot mix Laurent and plain words")
        if not self.letters:
            return other
        if not other.letters:
            return self
        left = list(self.letters)
        right = list(other.letters)
        while left and right:
            a, b = left[-1], right[0]
            if a[0] == "t" and b[0] == "t" and a[1] == b[1]:
                merged = a[2] + b[2]
                left.pop()
                right.pop(0)
                if merged:
                    left.append(_t_letter(a[1], merged))
                    break
            else:
                break
        out = FpmWord.__new__(FpmWord)
        out.letters = tuple(left) + tuple(right)
        out.laurent = self.laurent
        out._hash = hash((out.letters, out.laurent))
        return out

    def star(self) -> "FpmWord":
        out = []
        for let in reversed(self.letters):
            if let[0] == "g":
                out.append(_g_letter(let[1], let[2], not let[3]))
            else:
                out.append(let)  # separator letters are hermitian
        return FpmWord(out, self.laurent)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FpmWord)
            and self.letters == other.letters
            and self.laurent == other.laurent
        )

    def __hash__(self) -> int:
        return self._hash

    def text(self) -> str:
        if not self.letters:
            return "1"
        bits = []
        for let in self.letters:
            if let[0] == "t":
                e = let[2]
                bits.append(f"t({let[1]})" if e == 1 else f"t({let[1]})^{e}")
            else:
                bits.append(f"{let[2]}{'*' if let[3] else ''}({let[1]})")
        return " ".join(bits)

    def __repr__(self) -> str:
        return self.text()


def fpm_element_mul(e1: LinComb, e2: LinComb) -> LinComb:
    table: dict = {}
    for w1, c1 in e1.items():
        for w2, c2 in e2.items():
            w = w1 * w2
            acc = table.get(w, ZERO) + c1 * c2
            if acc:
                table[w] = acc
            elif w in table:
                del table[w]
    return LinComb._raw(table)


def t_run(k: int, m: int, laurent: bool = False) -> FpmWord:
    """The separator block ``t_(k) t_(k+1) ... t_(m)``."""
    return FpmWord([_t_letter(c, 1) for c in range(k, m + 1)], laurent)


def t_run_inverse(k: int, m: int) -> FpmWord:
    """True inverse of the separator block: ``t_(m)^-1 ... t_(k)^-1``."""
    return FpmWord([_t_letter(c, -1) for c in range(m, k - 1, -1)], laurent=True)


def tensor_legs_mul(e1: LinComb, e2: LinComb) -> LinComb:
    """Componentwise product of equal-arity word tuples, bilinear."""
    table: dict = {}
    for legs1, c1 in e1.items():
        for legs2, c2 in e2.items():
            legs = tuple(a * b for a, b in zip(legs1, legs2))
            acc = table.get(legs, ZERO) + c1 * c2
            if acc:
                table[legs] = acc
            elif legs in table:
                del table[legs]
    return LinComb._raw(table)


def tensor_unit(arity: int, laurent: bool = False) -> LinComb:
    return LinComb.term(tuple(FpmWord.unit(laurent) for _ in range(arity)), ONE)


# ------------------------------------------------------------------ hat j


def hat_j_letter(m: int, n_factors: int, i: int, g: Generator) -> LinComb:
    """Free-product-valued letter image: the copy difference in leg ``i``,
    separator blocks in every other leg. ``2m - 1`` tuple terms."""
    if not 1 <= i <= n_factors:
        raise ValueError(f"factor index {i} outside 1..{n_factors}")
    table: dict = {}

    def add(copy_word: FpmWord, k: int, sign: Scalar):
        legs = tuple(
            copy_word if j == i else t_run(k, m) for j in range(1, n_factors + 1)
        )
        acc = table.get(legs, ZERO) + sign
        if acc:
            table[legs] = acc
        elif legs in table:
            del table[legs]

    for k in range(1, m + 1):
        add(FpmWord.gen(k, g.symbol, g.starred), k, ONE)
        if k < m:
            add(FpmWord.gen(k + 1, g.symbol, g.starred), k, -ONE)
    return LinComb._raw(table)


def hat_j(m: int, n_factors: int, u: FpWord) -> LinComb:
    """Multiplicative extension of the letter images over a free-product
    word; legs are free, so no reduction is applied."""
    out = tensor_unit(n_factors)
    for g in u.letters():
        if not 1 <= g.algebra <= n_factors:
            raise ValueError(f"letter {g!r} outside factors 1..{n_factors}")
        out = tensor_legs_mul(out, hat_j_letter(m, n_factors, g.algebra, g))
    return out


# ------------------------------------------------------------- doubling


def delta_word(w: Word, n_copies: int = 2) -> LinComb:
    """Send every letter to the sum of its tagged copies and expand."""
    out = LinComb.term(FpWord(), ONE)
    for g in w:
        letter = LinComb(
            (FpWord.from_letters([Generator(i, g.symbol, g.starred)]), ONE)
            for i in range(1, n_copies + 1)
        )
        table: dict = {}
        for u1, c1 in out.items():
            for u2, c2 in letter.items():
                v = fp_mul(u1, u2)
                acc = table.get(v, ZERO) + c1 * c2
                if acc:
                    table[v] = acc
                elif v in table:
                    del table[v]
        out = LinComb._raw(table)
    return out


def i_hat1(w: Word, laurent: bool = False) -> FpmWord:
    """Canonical embedding: every letter into copy 1."""
    return FpmWord([_g_letter(1, g.symbol, g.starred) for g in w], laurent)


# ------------------------------------------------------------ coproduct


def _coproduct_letter(m: int, let: tuple, laurent: bool) -> LinComb:
    if let[0] == "t":
        w = FpmWord((let,), laurent)
        return LinComb.term((w, w), ONE)
    _, k, symbol, starred = let
    if not 1 <= k <= m:
        raise ValueError(f"copy index {k} outside 1..{m}")
    table: dict = {}

    def add(a, b, sign):
        key = (a, b)
        acc = table.get(key, ZERO) + sign
        if acc:
            table[key] = acc
        elif key in table:
            del table[key]

    # telescope the bare copy into separator-primitive differences
    for r in range(k, m + 1):
        run = t_run(r, m, laurent)
        for copy, sign in ((r, ONE), (r + 1, -ONE)):
            if copy > m:
                continue
            gword = FpmWord.gen(copy, symbol, starred, laurent)
            add(gword, run, sign)
            add(run, gword, sign)
    return LinComb._raw(table)


def coproduct(m: int, x: FpmWord) -> LinComb:
    """Coproduct into pairs of words, multiplicative over letters."""
    out = tensor_unit(2, x.laurent)
    for let in x.letters:
        out = tensor_legs_mul(out, _coproduct_letter(m, let, x.laurent))
    return out


def coproduct_iter(m: int, x: FpmWord, arity: int) -> LinComb:
    """Iterated coproduct with ``arity`` output legs, nested through the
    last leg: arity 2 is the plain coproduct."""
    if arity < 2:
        raise ValueError("coproduct arity must be at least 2")
    out = coproduct(m, x)
    while True:
        current = len(next(iter(out))) if out else arity
        if current >= arity:
            return out
        table: dict = {}
        for legs, c in out.items():
            for inner, c2 in coproduct(m, legs[-1]).items():
                key = legs[:-1] + inner
                acc = table.get(key, ZERO) + c * c2
                if acc:
                    table[key] = acc
                elif key in table:
                    del table[key]
        out = LinComb._raw(table)


def counit(m: int, x: FpmWord) -> Scalar:
    """1 on pure separator words, 0 as soon as a generator appears."""
    return ZERO if x.has_generators() else ONE


def counit_element(m: int, e: LinComb) -> Scalar:
    total = ZERO
    for w, c in e.items():
        if not w.has_generators():
            total += c
    return total


# ------------------------------------------------------------- antipode


def _antipode_letter(m: int, let: tuple) -> LinComb:
    if let[0] == "t":
        return LinComb.term(FpmWord.t(let[1], -let[2], laurent=True), ONE)
    _, k, symbol, starred = let
    table: dict = {}
    for r in range(k, m + 1):
        inv = t_run_inverse(r, m)
        for copy, sign in ((r, -ONE), (r + 1, ONE)):
            if copy > m:
                continue
            w = inv * FpmWord.gen(copy, symbol, starred, laurent=True) * inv
            acc = table.get(w, ZERO) + sign
            if acc:
                table[w] = acc
            elif w in table:
                del table[w]
    return LinComb._raw(table)


def antipode(m: int, x: FpmWord) -> LinComb:
    """Antimultiplicative extension of the generator rules; requires the
    Laurent variant since separator copies must invert."""
    if not x.laurent:
        raise HopfModeError("antipode lives on the Laurent variant")
    out = LinComb.term(FpmWord.unit(laurent=True), ONE)
    for let in reversed(x.letters):
        out = fpm_element_mul(out, _antipode_letter(m, let))
    return out


def antipode_element(m: int, e: LinComb) -> LinComb:
    out = LinComb.zero()
    for w, c in e.items():
        out = out + antipode(m, w).scale(c)
    return out


def t_sorted(x: FpmWord) -> FpmWord:
    """Normal form modulo commuting separator copies: inside each maximal
    separator run, collect powers per copy and emit in copy order."""
    out: list[tuple] = []
    run: dict[int, int] = {}

    def flush():
        for copy in sorted(run):
            if run[copy]:
                out.append(_t_letter(copy, run[copy]))
        run.clear()

    for let in x.letters:
        if let[0] == "t":
            run[let[1]] = run.get(let[1], 0) + let[2]
        else:
            flush()
            out.append(let)
    flush()
    return FpmWord(out, x.laurent)


def t_sorted_element(e: LinComb) -> LinComb:
    return e.map_basis(t_sorted)


def t_sorted_tensor(e: LinComb) -> LinComb:
    return e.map_basis(lambda legs: tuple(t_sorted(w) for w in legs))


# ------------------------------------------------------- quotient + eval


def eta(m: int, x: FpmWord, algebra: int = 1) -> tuple[TildeWord, ...]:
    """Stable bucket sort of letters by copy into separator words, one per
    slot, clamped. Rejects Laurent input."""
    if x.laurent:
        raise HopfModeError("quotient onto slots is undefined for Laurent words")
    if x.max_copy() > m:
        raise ValueError(f"copy index {x.max_copy()} beyond level {m}")
    exps = {p: [0] for p in range(1, m + 1)}
    words = {p: [] for p in range(1, m + 1)}
    for let in x.letters:
        p = let[1]
        if let[0] == "t":
            exps[p][-1] += let[2]
        else:
            g = Generator(algebra, let[2], let[3])
            if words[p] and exps[p][-1] == 0:
                words[p][-1] = words[p][-1] * Word((g,))
            else:
                words[p].append(Word((g,)))
                exps[p].append(0)
    return tuple(
        clamp_t(TildeWord(exps[p], words[p])) for p in range(1, m + 1)
    )


def eta_element(m: int, e: LinComb, algebra: int = 1) -> LinComb:
    return LinComb((eta(m, w, algebra), c) for w, c in e.items())


def phi_hat_eval(pair: StatePair, legs: Sequence[TildeWord]) -> Scalar:
    """Slot product state after the quotient: first slot through the first
    state's extension, later slots through the second state's."""
    total = ONE
    for pos, tw in enumerate(legs, start=1):
        state = pair.phi if pos == 1 else pair.psi
        total *= boolean_extend_eval(state, tw)
    return total


def convolve(m: int, pairs: Sequence[StatePair], w: Word) -> Scalar:
    """Level-m convolution of state pairs on one algebra, evaluated on a
    word embedded into copy 1."""
    if len(pairs) < 2:
        raise ValueError("convolution needs at least two state pairs")
    algebras = {p.algebra for p in pairs}
    if len(algebras) != 1:
        raise ValueError("convolution factors must share one algebra")
    if w and w.algebra not in algebras:
        raise ValueError("word does not belong to the factors' algebra")
    x = i_hat1(w)
    tensor = coproduct_iter(m, x, len(pairs))
    total = ZERO
    for legs, coeff in tensor.items():
        value = coeff
        for pair, leg in zip(pairs, legs):
            value *= phi_hat_eval(pair, eta(m, leg, pair.algebra))
            if not value:
                break
        total += value
    return total


# ------------------------------------------------- convolution target


def retag_word(w: Word, algebra: int) -> Word:
    return Word(Generator(algebra, g.symbol, g.starred) for g in w)


def retag_state(state: State, algebra: int) -> State:
    if isinstance(state, PointState):
        return PointState(algebra)
    moments = {retag_word(w, algebra): v for w, v in state.table.items() if w}
    return State(algebra, state.degree, moments, state.hermitian)


def cfree_convolution(pairs: Sequence[StatePair], w: Word) -> Scalar:
    """Conditionally free convolution computed directly: spread the word
    over tagged copies and evaluate the conditionally free product."""
    n = len(pairs)
    tagged = {
        i: StatePair(retag_state(p.phi, i), retag_state(p.psi, i))
        for i, p in enumerate(pairs, start=1)
    }
    total = ZERO
    for u, c in delta_word(w, n).items():
        total += c * cfree_eval(tagged, elements_of(u))
    return total
