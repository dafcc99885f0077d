"""Independent free-moment oracle via noncrossing partitions.

This module computes mixed moments of freely independent variables from
scratch: cumulants are extracted from each marginal moment sequence by
the partition recursion, and a mixed moment is the sum over noncrossing
partitions whose blocks stay inside one algebra. It deliberately shares
no evaluation code with the product-state oracles, so agreement between
the two routes is a genuine cross-check.

Scope: one fixed generator per algebra (powers of a single variable per
marginal). That is all the cross-check corpus needs.
"""

from __future__ import annotations

from typing import Iterator, Mapping, Sequence

from .algebra import Generator, ONE, Scalar, Word, ZERO
from .states import State

Partition = tuple[tuple[int, ...], ...]


def noncrossing_partitions(n: int) -> Iterator[Partition]:
    """All noncrossing partitions of ``range(n)``.

    The block of the smallest element is chosen as a subset of the rest;
    the gaps between its members must then be partitioned independently,
    which is exactly the noncrossing condition.
    """
    return _nc(tuple(range(n)))


def _nc(items: tuple[int, ...]) -> Iterator[Partition]:
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    n = len(rest)
    for mask in range(1 << n):
        chosen = [i for i in range(n) if mask >> i & 1]
        block = (first,) + tuple(rest[i] for i in chosen)
        bounds = [-1] + chosen + [n]
        segments = [rest[bounds[j] + 1 : bounds[j + 1]] for j in range(len(bounds) - 1)]
        yield from _nc_product(block, segments, 0, ())
    return


def _nc_product(block, segments, idx, acc) -> Iterator[Partition]:
    if idx == len(segments):
        yield (block,) + acc
        return
    for part in _nc(segments[idx]):
        yield from _nc_product(block, segments, idx + 1, acc + part)


def catalan_count(n: int) -> int:
    return sum(1 for _ in noncrossing_partitions(n))


def free_cumulants(moments: Sequence[Scalar], nmax: int) -> list[Scalar]:
    """Cumulants ``k_1..k_nmax`` of a moment sequence ``m_1..m_nmax``.

    ``moments[i - 1]`` is the i-th moment. Inversion of the partition sum:
    the full-block cumulant is the moment minus all strictly finer terms.
    """
    if len(moments) < nmax:
        raise ValueError("not enough moments for the requested cumulant order")
    kappa: list[Scalar] = []
    for n in range(1, nmax + 1):
        acc = ZERO
        for part in noncrossing_partitions(n):
            if len(part) == 1:
                continue
            term = ONE
            for block in part:
                term *= kappa[len(block) - 1]
            acc += term
        kappa.append(moments[n - 1] - acc)
    return kappa


def moment_from_cumulants(kappa: Sequence[Scalar], n: int) -> Scalar:
    """Partition sum in the forward direction, for round-trip checks."""
    acc = ZERO
    for part in noncrossing_partitions(n):
        term = ONE
        for block in part:
            term *= kappa[len(block) - 1]
        acc += term
    return acc


def nc_free_moment(
    states: Mapping[int, State], letters: Sequence[Generator]
) -> Scalar:
    """Mixed moment of one fixed generator per algebra under freeness.

    ``letters`` is the flat letter sequence of the word; every letter of a
    given algebra must be the same generator. The value is the sum over
    noncrossing partitions with single-algebra blocks of the product of
    the corresponding marginal cumulants.
    """
    n = len(letters)
    if n == 0:
        return ONE
    per_algebra: dict[int, Generator] = {}
    for g in letters:
        if per_algebra.setdefault(g.algebra, g) != g:
            raise ValueError("oracle supports one generator per algebra only")
    kappa: dict[int, list[Scalar]] = {}
    for alg, g in per_algebra.items():
        count = sum(1 for h in letters if h.algebra == alg)
        moms = [states[alg].value(Word((g,) * k)) for k in range(1, count + 1)]
        kappa[alg] = free_cumulants(moms, count)
    colors = [g.algebra for g in letters]
    total = ZERO
    for part in noncrossing_partitions(n):
        term = ONE
        for block in part:
            alg = colors[block[0]]
            if any(colors[i] != alg for i in block[1:]):
                term = ZERO
                break
            term *= kappa[alg][len(block) - 1]
        total += term
    return total
