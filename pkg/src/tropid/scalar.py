"""Exact arithmetic in the max-plus semiring over the rationals.

Finite scalars are plain :class:`fractions.Fraction` values; the additive
zero is the singleton :data:`NEG_INF`.  Both compare and add with each other
using ordinary Python operators, so ``max`` is tropical addition and ``+`` is
tropical multiplication.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union


class NegInf:
    """Negative infinity: least element, absorbing under ``+``."""

    _instance = None
    __slots__ = ()

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEG_INF"

    def __str__(self):
        return "-inf"

    def __reduce__(self):
        return (NegInf, ())

    def __hash__(self):
        return hash("tropid.NEG_INF")

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __add__(self, other):
        return self

    __radd__ = __add__


NEG_INF = NegInf()
ZERO = Fraction(0)

TropScalar = Union[Fraction, NegInf]

_SCALAR_RE = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def scalar(value) -> TropScalar:
    """Coerce ``value`` (int, Fraction, NEG_INF or text) to a tropical scalar."""
    if value is NEG_INF:
        return NEG_INF
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    if isinstance(value, float):
        if value == float("-inf"):
            return NEG_INF
        raise TypeError("floating-point scalars are not accepted; use Fraction or text")
    raise TypeError(f"cannot interpret {value!r} as a tropical scalar")


def parse_scalar(text: str) -> TropScalar:
    """Parse ``"3"``, ``"-1/3"`` or ``"-inf"``."""
    t = text.strip()
    if t.lower() in ("-inf", "-∞", "neg_inf"):
        return NEG_INF
    m = _SCALAR_RE.match(t)
    if not m:
        raise ValueError(f"not a tropical scalar: {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_scalar(a: TropScalar) -> str:
    if a is NEG_INF:
        return "-inf"
    a = Fraction(a)
    if a.denominator == 1:
        return str(a.numerator)
    return f"{a.numerator}/{a.denominator}"


def is_finite(a: TropScalar) -> bool:
    return a is not NEG_INF


def oplus(a: TropScalar, b: TropScalar) -> TropScalar:
    return a if a >= b else b


def odot(a: TropScalar, b: TropScalar) -> TropScalar:
    return a + b


def opow(a: TropScalar, k: int) -> TropScalar:
    """``a`` tropically raised to ``k``; ``a**0`` is the unit 0 even for -inf."""
    if k < 0:
        raise ValueError("exponent must be nonnegative")
    if k == 0:
        return ZERO
    if a is NEG_INF:
        return NEG_INF
    return a * k


def odiv(a: TropScalar, b: TropScalar) -> TropScalar:
    """Tropical quotient ``a - b``; dividing by -inf is undefined."""
    if b is NEG_INF:
        raise ZeroDivisionError("tropical division by -inf")
    if a is NEG_INF:
        return NEG_INF
    return a - b


def osum(values) -> TropScalar:
    """Tropical sum (max) of an iterable; empty sum is -inf."""
    best = NEG_INF
    for v in values:
        if v > best:
            best = v
    return best


def oprod(values) -> TropScalar:
    """Tropical product (classical sum); empty product is 0."""
    total = ZERO
    for v in values:
        if v is NEG_INF:
            return NEG_INF
        total += v
    return total
