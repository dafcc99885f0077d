"""Session spec files: declared algebras, state pairs, default models.

Two equivalent formats are accepted.

Line-oriented text (``#`` starts a comment):

    algebra 1 a b
    algebra 2 c
    pair 1 degree 4
    pair 2 degree 4 hermitian
    phi 1 a = 1/2
    phi 1 a a = -2/3
    psi 1 a = 0
    phi 2 c = 1/7
    mode cfree
    mode mfree:2

JSON (detected by a leading ``{``):

    {"algebras": [{"id": 1, "generators": ["a", "b"]}],
     "pairs": [{"algebra": 1, "degree": 4, "hermitian": false,
                "phi": {"a": "1/2"}, "psi": {"a": "0"}}],
     "modes": ["cfree"]}

Moment values are exact rational literals. Moments may be left out; any
evaluation that needs a missing moment fails loudly at that point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from .algebra import Scalar, Word
from .states import State, StatePair
from .wordlang import parse_algebra_word, parse_rational


class SpecError(ValueError):
    pass


@dataclass
class SessionSpec:
    algebras: dict[int, tuple[str, ...]] = field(default_factory=dict)
    pairs: dict[int, StatePair] = field(default_factory=dict)
    modes: list[str] = field(default_factory=list)

    def phis(self) -> dict[int, State]:
        return {alg: pair.phi for alg, pair in self.pairs.items()}


def load_spec(path: str | Path) -> SessionSpec:
    text = Path(path).read_text()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_spec_json(text)
    return parse_spec_text(text)


def _build_pairs(
    algebras: Mapping[int, tuple[str, ...]],
    decls: dict[int, tuple[int, bool]],
    phi_moments: dict[int, dict[Word, Scalar]],
    psi_moments: dict[int, dict[Word, Scalar]],
) -> dict[int, StatePair]:
    pairs = {}
    for alg, (degree, hermitian) in decls.items():
        phi = State(alg, degree, phi_moments.get(alg, {}), hermitian)
        psi = State(alg, degree, psi_moments.get(alg, {}), hermitian)
        pairs[alg] = StatePair(phi, psi)
    return pairs


def parse_spec_text(text: str) -> SessionSpec:
    algebras: dict[int, tuple[str, ...]] = {}
    decls: dict[int, tuple[int, bool]] = {}
    phi_moments: dict[int, dict[Word, Scalar]] = {}
    psi_moments: dict[int, dict[Word, Scalar]] = {}
    modes: list[str] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        kind = fields[0]
        try:
            if kind == "algebra":
                alg = int(fields[1])
                gens = tuple(fields[2:])
                if not gens:
                    raise SpecError("algebra needs at least one generator")
                for g in gens:
                    if g in ("t", "1"):
                        raise SpecError(f"generator name {g!r} is reserved")
                if alg in algebras:
                    raise SpecError(f"algebra {alg} declared twice")
                algebras[alg] = gens
            elif kind == "pair":
                alg = int(fields[1])
                if alg not in algebras:
                    raise SpecError(f"algebra {alg} not declared")
                if fields[2] != "degree":
                    raise SpecError("expected 'degree'")
                degree = int(fields[3])
                hermitian = len(fields) > 4 and fields[4] == "hermitian"
                decls[alg] = (degree, hermitian)
            elif kind in ("phi", "psi"):
                alg = int(fields[1])
                if alg not in decls:
                    raise SpecError(f"no 'pair {alg} degree D' line before moments")
                if "=" not in fields:
                    raise SpecError("moment line needs '='")
                eq = fields.index("=")
                word = parse_algebra_word(" ".join(fields[2:eq]), alg, algebras[alg])
                value = parse_rational(" ".join(fields[eq + 1 :]))
                if len(word) > decls[alg][0]:
                    raise SpecError(f"word exceeds declared degree {decls[alg][0]}")
                target = phi_moments if kind == "phi" else psi_moments
                table = target.setdefault(alg, {})
                if word in table:
                    raise SpecError(f"duplicate moment for {word.text()!r}")
                table[word] = value
            elif kind == "mode":
                modes.append(fields[1])
            else:
                raise SpecError(f"unknown directive {kind!r}")
        except SpecError as exc:
            raise SpecError(f"line {lineno}: {exc}") from None
        except (IndexError, ValueError) as exc:
            raise SpecError(f"line {lineno}: {exc}") from None

    pairs = _build_pairs(algebras, decls, phi_moments, psi_moments)
    return SessionSpec(algebras, pairs, modes)


def parse_spec_json(text: str) -> SessionSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"bad JSON: {exc}") from None
    algebras: dict[int, tuple[str, ...]] = {}
    for entry in data.get("algebras", []):
        alg = int(entry["id"])
        gens = tuple(entry["generators"])
        if not gens:
            raise SpecError(f"algebra {alg} needs at least one generator")
        for g in gens:
            if g in ("t", "1"):
                raise SpecError(f"generator name {g!r} is reserved")
        if alg in algebras:
            raise SpecError(f"algebra {alg} declared twice")
        algebras[alg] = gens
    decls: dict[int, tuple[int, bool]] = {}
    phi_moments: dict[int, dict[Word, Scalar]] = {}
    psi_moments: dict[int, dict[Word, Scalar]] = {}
    for entry in data.get("pairs", []):
        alg = int(entry["algebra"])
        if alg not in algebras:
            raise SpecError(f"algebra {alg} not declared")
        degree = int(entry["degree"])
        hermitian = bool(entry.get("hermitian", False))
        decls[alg] = (degree, hermitian)
        for key, target in (("phi", phi_moments), ("psi", psi_moments)):
            table = target.setdefault(alg, {})
            for word_text, value_text in entry.get(key, {}).items():
                word = parse_algebra_word(word_text, alg, algebras[alg])
                if len(word) > degree:
                    raise SpecError(f"word {word_text!r} exceeds degree {degree}")
                if word in table:
                    raise SpecError(f"duplicate moment for {word_text!r}")
                table[word] = parse_rational(str(value_text))
    modes = [str(m) for m in data.get("modes", [])]
    pairs = _build_pairs(algebras, decls, phi_moments, psi_moments)
    return SessionSpec(algebras, pairs, modes)
