"""Word normal forms and exact-rational linear combinations.

Carriers used throughout the engine:

* ``Generator``: a letter of one free *-algebra, optionally starred.
* ``Word``: a finite product of generators of one algebra; the empty word
  is the shared unit of every algebra.
* ``FpWord``: a word in a free product of algebras, stored as alternating
  blocks ``(algebra_id, Word)`` with consecutive block algebras distinct.
* ``TildeWord``: a word in an algebra extended by one extra hermitian
  separator letter ``t``; stored as ``t^e0 w1 t^e1 ... wn t^en`` with
  nonempty inner separator powers.
* ``LinComb``: a finite linear combination of hashable basis objects with
  exact ``Fraction`` coefficients and no stored zeros.

All values are immutable after construction and all operations are pure,
so everything here can be shared freely between threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple

Scalar = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)


class Generator(NamedTuple):
    """A generator letter: algebra index, symbol, star flag."""

    algebra: int
    symbol: str
    starred: bool = False

    def star(self) -> "Generator":
        return self._replace(starred=not self.starred)

    def text(self) -> str:
        return f"{self.symbol}{'*' if self.starred else ''}@{self.algebra}"

    def __repr__(self) -> str:
        return self.text()


class Word:
    """A product of generators of one algebra; ``Word(())`` is the unit."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Generator] = ()):
        letters = tuple(letters)
        if letters:
            alg = letters[0].algebra
            for g in letters:
                if g.algebra != alg:
                    raise ValueError(f"mixed algebras in word: {letters}")
        self.letters = letters

    @property
    def algebra(self) -> int | None:
        return self.letters[0].algebra if self.letters else None

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __iter__(self) -> Iterator[Generator]:
        return iter(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __lt__(self, other: "Word") -> bool:
        return (len(self.letters), self.letters) < (len(other.letters), other.letters)

    def __mul__(self, other: "Word") -> "Word":
        if self.letters and other.letters and self.algebra != other.algebra:
            raise ValueError("cannot concatenate words of different algebras")
        return Word(self.letters + other.letters)

    def star(self) -> "Word":
        return Word(tuple(g.star() for g in reversed(self.letters)))

    def text(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(g.text() for g in self.letters)

    def __repr__(self) -> str:
        return self.text()


EMPTY_WORD = Word()


def word_star(w: Word) -> Word:
    """Involution: reverse the letters and star each one."""
    return w.star()


class FpWord:
    """Normal-form word in a free product: alternating nonempty blocks."""

    __slots__ = ("blocks",)

    def __init__(self, blocks: Iterable[tuple[int, Word]] = ()):
        merged: list[tuple[int, Word]] = []
        for alg, w in blocks:
            if not w:
                continue
            if w.algebra != alg:
                raise ValueError(f"block tagged {alg} holds letters of {w.algebra}")
            if merged and merged[-1][0] == alg:
                merged[-1] = (alg, merged[-1][1] * w)
            else:
                merged.append((alg, w))
        self.blocks = tuple(merged)

    @classmethod
    def from_letters(cls, letters: Iterable[Generator]) -> "FpWord":
        return cls((g.algebra, Word((g,))) for g in letters)

    def letters(self) -> tuple[Generator, ...]:
        return tuple(g for _, w in self.blocks for g in w)

    def algebras(self) -> tuple[int, ...]:
        return tuple(alg for alg, _ in self.blocks)

    def is_unit(self) -> bool:
        return not self.blocks

    def __len__(self) -> int:
        return len(self.blocks)

    def __eq__(self, other) -> bool:
        return isinstance(other, FpWord) and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash(self.blocks)

    def star(self) -> "FpWord":
        return FpWord((alg, w.star()) for alg, w in reversed(self.blocks))

    def text(self) -> str:
        if not self.blocks:
            return "1"
        return " ".join(g.text() for g in self.letters())

    def __repr__(self) -> str:
        return self.text()


FP_UNIT = FpWord()


def fp_mul(u: FpWord, v: FpWord) -> FpWord:
    """Concatenate free-product words, merging the boundary blocks."""
    if not u.blocks:
        return v
    if not v.blocks:
        return u
    if u.blocks[-1][0] == v.blocks[0][0]:
        alg = u.blocks[-1][0]
        mid = (alg, u.blocks[-1][1] * v.blocks[0][1])
        out = FpWord.__new__(FpWord)
        out.blocks = u.blocks[:-1] + (mid,) + v.blocks[1:]
        return out
    out = FpWord.__new__(FpWord)
    out.blocks = u.blocks + v.blocks
    return out


class TildeWord:
    """Word ``t^e0 w1 t^e1 ... wn t^en`` over one algebra plus a separator.

    ``exps`` has length ``n + 1`` and ``words`` length ``n``; inner
    exponents are at least 1, so the representation is a normal form.
    The unit is ``exps == (0,)`` with no words.
    """

    __slots__ = ("exps", "words", "_hash")

    def __init__(self, exps: Iterable[int], words: Iterable[Word]):
        exps = tuple(exps)
        words = tuple(words)
        if len(exps) != len(words) + 1:
            raise ValueError("exponent/word length mismatch")
        if any(e < 0 for e in exps):
            raise ValueError("negative separator power")
        if any(e < 1 for e in exps[1:-1]):
            raise ValueError("inner separator power must be positive")
        alg = None
        for w in words:
            if not w:
                raise ValueError("empty word inside separator form")
            if alg is None:
                alg = w.algebra
            elif w.algebra != alg:
                raise ValueError("mixed algebras in separator form")
        self.exps = exps
        self.words = words
        self._hash = hash((exps, words))

    @classmethod
    def unit(cls) -> "TildeWord":
        return _TILDE_UNIT

    @classmethod
    def t(cls, e: int = 1) -> "TildeWord":
        if e == 0:
            return _TILDE_UNIT
        return cls((e,), ())

    @classmethod
    def from_word(cls, w: Word) -> "TildeWord":
        if not w:
            return _TILDE_UNIT
        return cls((0, 0), (w,))

    @property
    def algebra(self) -> int | None:
        return self.words[0].algebra if self.words else None

    def is_unit(self) -> bool:
        return not self.words and self.exps[0] == 0

    def is_pure_t(self) -> bool:
        return not self.words

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TildeWord)
            and self.exps == other.exps
            and self.words == other.words
        )

    def __hash__(self) -> int:
        return self._hash

    def star(self) -> "TildeWord":
        return TildeWord(
            tuple(reversed(self.exps)),
            tuple(w.star() for w in reversed(self.words)),
        )

    def text(self) -> str:
        if self.is_unit():
            return "1"
        parts = []
        for i, e in enumerate(self.exps):
            if e:
                parts.append("t" if e == 1 else f"t^{e}")
            if i < len(self.words):
                parts.append(self.words[i].text())
        return " ".join(parts)

    def __repr__(self) -> str:
        return self.text()


_TILDE_UNIT = TildeWord((0,), ())


def tilde_mul(u: TildeWord, v: TildeWord) -> TildeWord:
    """Concatenate with boundary fusion of separator powers and words."""
    if u.words and v.words and u.algebra != v.algebra:
        raise ValueError("cannot multiply separator words of different algebras")
    e_mid = u.exps[-1] + v.exps[0]
    if e_mid == 0 and u.words and v.words:
        words = u.words[:-1] + (u.words[-1] * v.words[0],) + v.words[1:]
        exps = u.exps[:-1] + v.exps[1:]
    else:
        words = u.words + v.words
        exps = u.exps[:-1] + (e_mid,) + v.exps[1:]
    out = TildeWord.__new__(TildeWord)
    out.exps = exps
    out.words = words
    out._hash = hash((exps, words))
    return out


def clamp_t(u: TildeWord) -> TildeWord:
    """Reduce every positive separator power to 1.

    Safe under every state evaluation used downstream: the states never
    distinguish positive powers of the separator, so this is the canonical
    form modulo the ideal they all annihilate.
    """
    exps = tuple(1 if e > 0 else 0 for e in u.exps)
    if exps == u.exps:
        return u
    out = TildeWord.__new__(TildeWord)
    out.exps = exps
    out.words = u.words
    out._hash = hash((exps, u.words))
    return out


class LinComb:
    """Finite linear combination over hashable basis objects.

    Zero coefficients are never stored, so equal combinations have equal
    coefficient tables regardless of how they were assembled.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable[tuple] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        table: dict = {}
        for basis, coeff in items:
            if coeff:
                acc = table.get(basis, ZERO) + coeff
                if acc:
                    table[basis] = acc
                elif basis in table:
                    del table[basis]
        self.terms = table

    @classmethod
    def zero(cls) -> "LinComb":
        return cls()

    @classmethod
    def term(cls, basis, coeff: Scalar = ONE) -> "LinComb":
        out = cls.__new__(cls)
        out.terms = {basis: coeff} if coeff else {}
        return out

    @classmethod
    def _raw(cls, table: dict) -> "LinComb":
        out = cls.__new__(cls)
        out.terms = table
        return out

    def items(self):
        return self.terms.items()

    def __iter__(self):
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, LinComb) and self.terms == other.terms

    def coeff(self, basis) -> Scalar:
        return self.terms.get(basis, ZERO)

    def __add__(self, other: "LinComb") -> "LinComb":
        table = dict(self.terms)
        for basis, coeff in other.terms.items():
            acc = table.get(basis, ZERO) + coeff
            if acc:
                table[basis] = acc
            elif basis in table:
                del table[basis]
        return LinComb._raw(table)

    def __sub__(self, other: "LinComb") -> "LinComb":
        table = dict(self.terms)
        for basis, coeff in other.terms.items():
            acc = table.get(basis, ZERO) - coeff
            if acc:
                table[basis] = acc
            elif basis in table:
                del table[basis]
        return LinComb._raw(table)

    def __neg__(self) -> "LinComb":
        return LinComb._raw({b: -c for b, c in self.terms.items()})

    def scale(self, c: Scalar) -> "LinComb":
        if not c:
            return LinComb._raw({})
        return LinComb._raw({b: c * v for b, v in self.terms.items()})

    def map_basis(self, f) -> "LinComb":
        """Apply a basis map ``f(basis) -> basis`` and recollect."""
        return LinComb((f(b), c) for b, c in self.terms.items())

    def sorted_items(self, key=None):
        return sorted(self.terms.items(), key=(lambda kv: key(kv[0])) if key else None)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for b, c in self.terms.items():
            bits.append(f"({c})*{b!r}")
        return " + ".join(bits)


def element_from_word(w: Word, coeff: Scalar = ONE) -> LinComb:
    """A one-algebra algebra element supported on a single word."""
    return LinComb.term(w, coeff)


def element_mul(e1: LinComb, e2: LinComb) -> LinComb:
    """Product of one-algebra elements by word concatenation."""
    table: dict = {}
    for w1, c1 in e1.terms.items():
        for w2, c2 in e2.terms.items():
            w = w1 * w2
            acc = table.get(w, ZERO) + c1 * c2
            if acc:
                table[w] = acc
            elif w in table:
                del table[w]
    return LinComb._raw(table)
