"""The bicyclic monoid <a, b | ab = 1> and its faithful 2x2 tropical representation."""

from __future__ import annotations

import re
from typing import NamedTuple

from .matrix import TropMatrix
from .scalar import NEG_INF
from .symbolic import Identity, Word

GEN_A = TropMatrix([[-1, 1], [NEG_INF, 1]])
GEN_B = TropMatrix([[1, 1], [NEG_INF, -1]])


class BicyclicElem(NamedTuple):
    """The normal form ``b^i a^j``."""

    i: int
    j: int

    def __str__(self):
        return f"({self.i},{self.j})"

    def word(self) -> str:
        return "b" * self.i + "a" * self.j


IDENTITY = BicyclicElem(0, 0)
ELEM_A = BicyclicElem(0, 1)
ELEM_B = BicyclicElem(1, 0)


def reduce_word(word: str) -> BicyclicElem:
    """Cancel every ``ab`` and read off ``b^i a^j``."""
    # a stack reduction cancels the same pairs as repeated rewriting
    i = j = 0
    for ch in word:
        if ch == "a":
            j += 1
        elif ch == "b":
            if j:
                j -= 1
            else:
                i += 1
        elif not ch.isspace():
            raise ValueError(f"letter {ch!r} is not a bicyclic generator")
    return BicyclicElem(i, j)


def star(x: BicyclicElem, y: BicyclicElem) -> BicyclicElem:
    i, j = x
    h, k = y
    if j <= h:
        return BicyclicElem(i + h - j, k)
    return BicyclicElem(i, j - h + k)


def represent(x: BicyclicElem) -> TropMatrix:
    """``b^i a^j`` maps to ``[[i-j, i+j], [-inf, j-i]]``."""
    i, j = x
    return TropMatrix([[i - j, i + j], [NEG_INF, j - i]])


def evaluate(word: Word, assignment) -> BicyclicElem:
    result = None
    for letter in word:
        x = assignment[letter]
        result = x if result is None else star(result, x)
    return result


def check_identity(identity: Identity, assignment) -> bool:
    return evaluate(identity.lhs, assignment) == evaluate(identity.rhs, assignment)


def check_adjan_on_B(x: BicyclicElem, y: BicyclicElem) -> bool:
    # x y^2 x . x y . x y^2 x  =  x y^2 x . y x . x y^2 x
    p = star(star(star(x, y), y), x)
    lhs = star(star(p, star(x, y)), p)
    rhs = star(star(p, star(y, x)), p)
    return lhs == rhs


_ELEM_RE = re.compile(r"\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")
_NF_RE = re.compile(r"\s*(?:b(?:\^(\d+))?)?\s*(?:a(?:\^(\d+))?)?\s*$")


def parse_elem(text: str) -> BicyclicElem:
    """``(i,j)``, ``b^i a^j`` or any word over {a, b}."""
    m = _ELEM_RE.match(text)
    if m:
        return BicyclicElem(int(m.group(1)), int(m.group(2)))
    t = text.strip()
    if t == "1":
        return IDENTITY
    m = _NF_RE.match(t)
    if m and "^" in t:
        i = int(m.group(1) or 1) if "b" in t else 0
        j = int(m.group(2) or 1) if "a" in t else 0
        return BicyclicElem(i, j)
    if re.fullmatch(r"[ab\s]+", t):
        return reduce_word(t)
    raise ValueError(f"malformed bicyclic element {text!r}")
