"""Moment functionals and the product-state oracles.

A ``State`` is a degree-bounded moment table on the words of one algebra.
Queries outside the table are hard errors; a missing moment never reads as
a silent zero, because the theorem checks downstream rely on exact values.

The product-state oracles implemented here are the ground truth that the
tensor-model evaluations are compared against:

* ``boolean_product_eval``: blockwise product of the marginal moments.
* ``cfree_eval``: the conditionally free product, computed by centering
  each block with respect to its second state and expanding over subsets
  of positions; the all-centered base case factors into a product of
  ``phi - psi`` values, and every other subset strictly shortens the word,
  so the recursion terminates.
* ``free_eval``: conditionally free with both states equal.
"""

from __future__ import annotations

from typing import Iterable, Mapping, NamedTuple, Sequence

from .algebra import (
    EMPTY_WORD,
    LinComb,
    ONE,
    Scalar,
    Word,
    FpWord,
    ZERO,
    element_from_word,
    element_mul,
)


class MomentError(Exception):
    """Base class for moment-table access failures."""


class DegreeOverflowError(MomentError):
    pass


class MissingMomentError(MomentError):
    pass


class State:
    """A normalized moment functional on one algebra's words."""

    __slots__ = ("algebra", "degree", "table", "hermitian")

    def __init__(
        self,
        algebra: int,
        degree: int,
        moments: Mapping[Word, Scalar],
        hermitian: bool = False,
    ):
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        table: dict[Word, Scalar] = {EMPTY_WORD: ONE}
        for w, v in moments.items():
            if not isinstance(w, Word):
                raise TypeError(f"moment key {w!r} is not a Word")
            if not w:
                if v != ONE:
                    raise ValueError("the empty word must have moment 1")
                continue
            if w.algebra != algebra:
                raise ValueError(f"word {w!r} does not belong to algebra {algebra}")
            if len(w) > degree:
                raise ValueError(f"moment for {w!r} exceeds degree bound {degree}")
            table[w] = Scalar(v)
        if hermitian:
            for w in list(table):
                ws = w.star()
                if ws in table:
                    if table[ws] != table[w]:
                        raise ValueError(f"hermitian table conflict at {w!r}")
                else:
                    table[ws] = table[w]
        self.algebra = algebra
        self.degree = degree
        self.table = table
        self.hermitian = hermitian

    def value(self, w: Word) -> Scalar:
        if not w:
            return ONE
        if w.algebra != self.algebra:
            raise ValueError(f"word {w!r} is not in algebra {self.algebra}")
        if len(w) > self.degree:
            raise DegreeOverflowError(
                f"word {w!r} of length {len(w)} exceeds degree bound {self.degree}"
            )
        try:
            return self.table[w]
        except KeyError:
            raise MissingMomentError(
                f"no moment declared for {w!r} (algebra {self.algebra})"
            ) from None

    def value_of(self, element: LinComb) -> Scalar:
        """Linear extension to one-algebra elements."""
        total = ZERO
        for w, c in element.items():
            total += c * self.value(w)
        return total

    def __repr__(self) -> str:
        return f"State(algebra={self.algebra}, degree={self.degree}, entries={len(self.table) - 1})"


class PointState(State):
    """Value 1 on the unit, 0 on every nonempty word, any degree."""

    def __init__(self, algebra: int):
        super().__init__(algebra, 0, {})

    def value(self, w: Word) -> Scalar:
        if w and w.algebra != self.algebra:
            raise ValueError(f"word {w!r} is not in algebra {self.algebra}")
        return ONE if not w else ZERO

    def __repr__(self) -> str:
        return f"PointState(algebra={self.algebra})"


class StatePair(NamedTuple):
    """The pair of states a conditionally free factor carries."""

    phi: State
    psi: State

    @property
    def algebra(self) -> int:
        if self.phi.algebra != self.psi.algebra:
            raise ValueError("state pair mixes algebras")
        return self.phi.algebra


def boolean_extend_eval(state: State, u) -> Scalar:
    """Evaluate the separator extension: product of moments of the word
    factors, ignoring every separator power."""
    if u.words and u.algebra != state.algebra:
        raise ValueError(f"separator word over algebra {u.algebra}, state over {state.algebra}")
    total = ONE
    for w in u.words:
        total *= state.value(w)
    return total


def boolean_product_eval(states: Mapping[int, State], u: FpWord) -> Scalar:
    """Boolean product state: the product of blockwise marginal moments."""
    total = ONE
    for alg, w in u.blocks:
        total *= states[alg].value(w)
    return total


Element = tuple[int, LinComb]  # (algebra_id, combination of that algebra's words)


def elements_of(u: FpWord) -> list[Element]:
    return [(alg, element_from_word(w)) for alg, w in u.blocks]


def _merge_alternating(seq: Sequence[Element]) -> list[Element]:
    merged: list[Element] = []
    for alg, el in seq:
        if merged and merged[-1][0] == alg:
            merged[-1] = (alg, element_mul(merged[-1][1], el))
        else:
            merged.append((alg, el))
    return merged


def cfree_eval(pairs: Mapping[int, StatePair], seq: Sequence[Element]) -> Scalar:
    """Conditionally free product state on an alternating block sequence.

    Each entry of ``seq`` is ``(algebra_id, element)``; consecutive entries
    must name distinct algebras.
    """
    for (k1, _), (k2, _) in zip(seq, seq[1:]):
        if k1 == k2:
            raise ValueError("block sequence is not alternating")
    return _cfree(pairs, list(seq))


def _cfree(pairs: Mapping[int, StatePair], seq: list[Element]) -> Scalar:
    n = len(seq)
    if n == 0:
        return ONE
    if n == 1:
        alg, el = seq[0]
        return pairs[alg].phi.value_of(el)
    phis = [pairs[alg].phi.value_of(el) for alg, el in seq]
    psis = [pairs[alg].psi.value_of(el) for alg, el in seq]
    centered = [
        (alg, el - LinComb.term(EMPTY_WORD, s)) if s else (alg, el)
        for (alg, el), s in zip(seq, psis)
    ]
    # all-centered base case: the product factorizes exactly
    total = ONE
    for p, s in zip(phis, psis):
        total *= p - s
    # every subset of positions contributing its psi value as a scalar
    for mask in range(1, 1 << n):
        coeff = ONE
        for i in range(n):
            if mask >> i & 1:
                coeff *= psis[i]
                if not coeff:
                    break
        if not coeff:
            continue
        rest = [centered[i] for i in range(n) if not (mask >> i & 1)]
        total += coeff * _cfree(pairs, _merge_alternating(rest))
    return total


def cfree_eval_word(pairs: Mapping[int, StatePair], u: FpWord) -> Scalar:
    return cfree_eval(pairs, elements_of(u))


def free_eval(states: Mapping[int, State], u: FpWord) -> Scalar:
    """Free product state: conditionally free with psi equal to phi."""
    pairs = {alg: StatePair(st, st) for alg, st in states.items()}
    return cfree_eval(pairs, elements_of(u))


def boolean_pairs(states: Mapping[int, State]) -> dict[int, StatePair]:
    """Pairs whose second member is the point state, one per algebra."""
    return {alg: StatePair(st, PointState(alg)) for alg, st in states.items()}
