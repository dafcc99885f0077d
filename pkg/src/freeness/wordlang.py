"""Word expression grammar and exact rational literals.

A word expression is whitespace-separated letters ``sym[*][@k]`` where the
``*`` suffix stars the letter and ``@k`` names the algebra. ``1`` denotes
the unit and contributes nothing. The symbol ``t`` is reserved for the
separator and may not name a generator. Untagged symbols are resolved
against the declared alphabets and must be unambiguous.

Rational literals are ``p`` or ``p/q`` with optional sign; decimal points
are rejected, values stay exact.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping

from .algebra import FpWord, Generator, Word

RESERVED = {"t", "1"}

_LETTER_RE = re.compile(r"^(?P<sym>[A-Za-z_][A-Za-z0-9_]*)(?P<star>\*)?(?:@(?P<alg>\d+))?$")
_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


class WordSyntaxError(ValueError):
    """Parse failure, annotated with the character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"at position {position}: {message}")
        self.position = position


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not an exact rational literal: {text!r}")
    return Fraction(text)


def format_rational(value: Fraction) -> str:
    return str(value)


def _tokens(text: str):
    for match in re.finditer(r"\S+", text):
        yield match.group(), match.start()


def parse_letters(
    text: str, algebras: Mapping[int, tuple[str, ...]]
) -> list[Generator]:
    """Parse a word expression into its letter sequence."""
    letters: list[Generator] = []
    for token, pos in _tokens(text):
        if token == "1":
            continue
        m = _LETTER_RE.match(token)
        if not m:
            raise WordSyntaxError(f"bad letter {token!r}", pos)
        sym = m.group("sym")
        if sym in RESERVED:
            raise WordSyntaxError(f"symbol {sym!r} is reserved", pos)
        starred = bool(m.group("star"))
        tag = m.group("alg")
        if tag is not None:
            alg = int(tag)
            if alg not in algebras:
                raise WordSyntaxError(f"algebra {alg} not declared", pos)
            if sym not in algebras[alg]:
                raise WordSyntaxError(f"generator {sym!r} not in algebra {alg}", pos)
        else:
            homes = [a for a, gens in algebras.items() if sym in gens]
            if not homes:
                raise WordSyntaxError(f"generator {sym!r} not declared", pos)
            if len(homes) > 1:
                raise WordSyntaxError(
                    f"generator {sym!r} is ambiguous, tag it with @k", pos
                )
            alg = homes[0]
        letters.append(Generator(alg, sym, starred))
    return letters


def parse_word(text: str, algebras: Mapping[int, tuple[str, ...]]) -> FpWord:
    return FpWord.from_letters(parse_letters(text, algebras))


def parse_algebra_word(
    text: str, algebra: int, generators: tuple[str, ...]
) -> Word:
    """Parse a word confined to one algebra (used by moment tables)."""
    letters = parse_letters(text, {algebra: generators})
    return Word(letters)


def format_word(u: FpWord) -> str:
    """Canonical text: every letter tagged, so the output re-parses to the
    identical normal form."""
    return u.text()
