"""Words, semigroup identities, and their evaluation in matrix monoids.

Words are evaluated either on concrete matrices or on matrices whose entries
are tropical polynomials; substituting a point commutes with evaluation, so
an equivalence of the symbolic products proves the identity for every
matrix of the template's shape.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .matrix import (SCALARS, DimensionError, TropMatrix, mmul, mpow, rows_mul_scalar,
                     substitute)
from .poly import Equivalence, Region, TropPoly, e_equivalent
from .text import ParseError

__all__ = [
    "Word", "Identity", "parse_word", "parse_identity", "evaluate_word",
    "evaluate_word_symbolic", "substitute", "matrices_e_equivalent", "MatrixEquivalence",
    "template_assignment",
]


@dataclass(frozen=True)
class Word:
    """Nonempty sequence of letter names."""

    letters: tuple

    def __post_init__(self):
        letters = tuple(self.letters)
        if not letters:
            raise ValueError("words must be nonempty")
        object.__setattr__(self, "letters", letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def runs(self) -> list:
        """Maximal blocks as ``[(letter, exponent), ...]``."""
        out = []
        for x in self.letters:
            if out and out[-1][0] == x:
                out[-1][1] += 1
            else:
                out.append([x, 1])
        return [tuple(r) for r in out]

    @property
    def alphabet(self) -> frozenset:
        return frozenset(self.letters)

    def count(self, letter) -> int:
        return self.letters.count(letter)

    def substitute(self, mapping: Mapping[str, "Word"]) -> "Word":
        out = []
        for x in self.letters:
            out.extend(mapping[x].letters if x in mapping else (x,))
        return Word(tuple(out))

    def __str__(self):
        return " ".join(x if k == 1 else f"{x}^{k}" for x, k in self.runs())


@dataclass(frozen=True)
class Identity:
    lhs: Word
    rhs: Word

    @property
    def alphabet(self) -> tuple:
        return tuple(sorted(self.lhs.alphabet | self.rhs.alphabet))

    def substitute(self, mapping) -> "Identity":
        return Identity(self.lhs.substitute(mapping), self.rhs.substitute(mapping))

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"


_WORD_TOKEN = re.compile(r"\s*(?:([A-Z][0-9]*)(?:\s*\^\s*(\d+))?)")


def parse_word(text: str, _offset: int = 0, _full: str | None = None) -> Word:
    """``"A B^2 A"`` (whitespace optional) to a :class:`Word`."""
    full = text if _full is None else _full
    pos = 0
    letters = []
    end = len(text.rstrip())
    while pos < end:
        m = _WORD_TOKEN.match(text, pos)
        if not m or m.group(1) is None:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"expected an uppercase letter, got {text[bad:bad + 1]!r}", full, _offset + bad)
        k = int(m.group(2)) if m.group(2) is not None else 1
        if k == 0:
            raise ParseError("exponent 0 is not allowed in semigroup words", full, _offset + m.start(2))
        letters.extend([m.group(1)] * k)
        pos = m.end()
    if not letters:
        raise ParseError("empty word", full, _offset)
    return Word(tuple(letters))


def parse_identity(text: str) -> Identity:
    if text.count("=") != 1:
        raise ParseError("identity needs exactly one '='", text, text.find("=") if "=" in text else len(text))
    left, right = text.split("=")
    return Identity(parse_word(left, 0, text), parse_word(right, len(left) + 1, text))


def _check_bound(word: Word, assignment):
    for x in word.alphabet:
        if x not in assignment:
            raise KeyError(f"letter {x!r} is not bound")


def _power_cache(assignment, mul):
    cache = {}

    def power(x, k):
        key = (x, k)
        if key not in cache:
            if k == 1:
                cache[key] = assignment[x]
            elif k % 2 == 0:
                h = power(x, k // 2)
                cache[key] = mul(h, h)
            else:
                cache[key] = mul(power(x, k - 1), assignment[x])
        return cache[key]
    return power


def eval_rows(word: Word, rows_by_letter, mul=rows_mul_scalar):
    """Evaluate a word on raw row-tuple matrices; powers of a block are cached."""
    power = _power_cache(rows_by_letter, mul)
    result = None
    for x, k in word.runs():
        p = power(x, k)
        result = p if result is None else mul(result, p)
    return result


def evaluate_word(word: Word, assignment: Mapping[str, TropMatrix]) -> TropMatrix:
    """Left-to-right tropical product of the letters' matrices."""
    _check_bound(word, assignment)
    dims = {assignment[x].n for x in word.alphabet}
    if len(dims) != 1:
        raise DimensionError("letter matrices have different dimensions")
    if any(assignment[x].is_symbolic for x in word.alphabet):
        return evaluate_word_symbolic(word, assignment)
    rows = eval_rows(word, {x: assignment[x].rows for x in word.alphabet})
    return TropMatrix._raw(rows, SCALARS)


def evaluate_word_symbolic(word: Word, assignment: Mapping[str, TropMatrix]) -> TropMatrix:
    """Product over the polynomial semiring; entries merged but not essentialised."""
    _check_bound(word, assignment)
    mats = [assignment[x] for x in word.alphabet]
    if len({m.n for m in mats}) != 1 or len({m.arity for m in mats}) != 1:
        raise DimensionError("templates must share dimension and arity")
    power = _power_cache(assignment, mmul)
    result = None
    for x, k in word.runs():
        p = power(x, k)
        result = p if result is None else mmul(result, p)
    return result


@dataclass
class MatrixEquivalence:
    equivalent: bool
    entries: dict = field(default_factory=dict)
    offending: tuple | None = None

    def __bool__(self):
        return self.equivalent

    @property
    def witness(self):
        return self.entries[self.offending].witness if self.offending else None


def matrices_e_equivalent(m: TropMatrix, n: TropMatrix, region: Region | None = None,
                          stop_early: bool = False, probe: bool = True) -> MatrixEquivalence:
    """Entrywise e-equivalence of two polynomial matrices."""
    if m.n != n.n or m.arity != n.arity:
        raise DimensionError("matrices differ in dimension or arity")
    entries = {}
    offending = None
    for i in range(m.n):
        for j in range(m.n):
            verdict = e_equivalent(m[i, j], n[i, j], region, probe)
            entries[i, j] = verdict
            if not verdict and offending is None:
                offending = (i, j)
                if stop_early:
                    return MatrixEquivalence(False, entries, offending)
    return MatrixEquivalence(offending is None, entries, offending)


def template_assignment(letters: Sequence[str], pattern: Sequence[Sequence]) -> dict:
    """Polynomial templates, one per letter, with fresh variables.

    ``pattern`` is a square grid of ``"var"``, ``0`` or ``"-inf"`` cells; each
    ``"var"`` cell of each letter gets its own variable, numbered row-major
    letter by letter.
    """
    n = len(pattern)
    per_letter = sum(1 for r in pattern for c in r if c == "var")
    arity = per_letter * len(letters)
    out = {}
    k = 0
    for x in letters:
        rows = []
        for r in pattern:
            row = []
            for c in r:
                if c == "var":
                    row.append(TropPoly.variable(arity, k))
                    k += 1
                elif c == "-inf":
                    row.append(TropPoly.zero(arity))
                else:
                    row.append(TropPoly.constant(arity, c))
            rows.append(row)
        out[x] = TropMatrix(rows)
    assert k == arity and n
    return out


def substitute_assignment(templates: Mapping[str, TropMatrix], point) -> dict:
    return {x: substitute(t, point) for x, t in templates.items()}
