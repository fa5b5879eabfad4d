"""Text grammars: scalars, matrices, polynomials, linear regions, words."""

from __future__ import annotations

import re
from fractions import Fraction

from .lp import LinearInequality
from .poly import Region, TropPoly
from .scalar import NEG_INF, parse_scalar


class ParseError(ValueError):
    """Malformed input; ``line`` and ``column`` are 1-based."""

    def __init__(self, message, text="", pos=0):
        line = text.count("\n", 0, pos) + 1
        column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


def read_arg(text: str) -> str:
    """Inputs prefixed with ``@`` name a file to read."""
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            return fh.read()
    return text


# --- matrices -------------------------------------------------------------

_MATRIX_TOKEN = re.compile(r"\s*(\[|\]|,|-inf|\"-inf\"|[+-]?\d+(?:/\d+)?)")


def parse_matrix(text: str) -> list:
    """``[[0,1],[-inf,2/3]]`` to a list of rows of scalars."""
    pos = 0
    tokens = []
    text = text.strip()
    while pos < len(text):
        m = _MATRIX_TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos]!r} in matrix", text, pos)
        tokens.append((m.group(1), m.start(1)))
        pos = m.end()
    rows, row, depth = [], None, 0
    expect_value = False
    for tok, at in tokens:
        if tok == "[":
            depth += 1
            if depth == 2:
                row = []
            elif depth > 2:
                raise ParseError("matrix nested too deeply", text, at)
        elif tok == "]":
            if depth == 2:
                rows.append(row)
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced ']'", text, at)
        elif tok == ",":
            continue
        else:
            if depth != 2:
                raise ParseError("entry outside a row", text, at)
            row.append(parse_scalar(tok.strip('"')))
    if depth != 0 or not rows:
        raise ParseError("incomplete matrix literal", text, len(text))
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ParseError("matrix must be square", text, 0)
    return rows


# --- polynomials ----------------------------------------------------------

_VAR = re.compile(r"x(\d+)(?:\^(\d+))?$")


def _split_terms(text: str):
    """Split on '+' at top level, keeping offsets."""
    parts, start = [], 0
    for i, ch in enumerate(text):
        if ch == "+" and i > 0 and text[:i].strip() != "":
            prev = text[:i].rstrip()
            # '+' directly after '^' or '*' or '/' belongs to a number
            if prev and prev[-1] in "^*/":
                continue
            parts.append((text[start:i], start))
            start = i + 1
    parts.append((text[start:], start))
    return parts


def _parse_term(term: str, text: str, offset: int):
    coef = Fraction(0)
    exps: dict = {}
    factors = [f.strip() for f in term.split("*")]
    if not term.strip():
        raise ParseError("empty term", text, offset)
    for k, fac in enumerate(factors):
        if not fac:
            raise ParseError("empty factor", text, offset)
        m = _VAR.match(fac)
        if m:
            idx = int(m.group(1))
            if idx < 1:
                raise ParseError("variables are numbered from x1", text, offset)
            exps[idx] = exps.get(idx, 0) + int(m.group(2) or 1)
        elif k == 0:
            try:
                c = parse_scalar(fac)
            except ValueError:
                raise ParseError(f"bad coefficient {fac!r}", text, offset) from None
            coef = c
        else:
            raise ParseError(f"bad factor {fac!r}", text, offset + term.find(fac))
    return exps, coef


def parse_poly(text: str, arity: int | None = None) -> TropPoly:
    """Parse ``2*x1^2*x2 + -1/3*x2 + 0``; ``+`` is tropical addition."""
    stripped = text.strip()
    if stripped in ("-inf", ""):
        if arity is None:
            raise ParseError("arity needed for the -inf polynomial", text, 0)
        return TropPoly.zero(arity)
    terms = []
    for part, offset in _split_terms(text):
        exps, coef = _parse_term(part, text, offset)
        terms.append((exps, coef))
    needed = max((max(e) for e, _ in terms if e), default=0)
    if arity is None:
        arity = needed
    elif needed > arity:
        raise ParseError(f"variable x{needed} exceeds arity {arity}", text, 0)
    return TropPoly(arity, [(tuple(e.get(i + 1, 0) for i in range(arity)), c) for e, c in terms
                            if c is not NEG_INF])


def poly_arity(text: str) -> int:
    found = [int(v) for v in re.findall(r"x(\d+)", text)]
    return max(found, default=0)


# --- regions --------------------------------------------------------------

_LIN_TERM = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*\*?\s*(x(\d+))?\s*")


def _parse_linear(expr: str, arity: int, text: str, offset: int):
    coeffs = [Fraction(0)] * arity
    const = Fraction(0)
    pos = 0
    expr_s = expr.rstrip()
    if not expr_s.strip():
        raise ParseError("empty linear expression", text, offset)
    while pos < len(expr_s):
        m = _LIN_TERM.match(expr_s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ParseError("bad linear expression", text, offset + pos)
        sign = -1 if m.group(1) == "-" else 1
        num = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3):
            idx = int(m.group(4))
            if not 1 <= idx <= arity:
                raise ParseError(f"variable x{idx} outside x1..x{arity}", text, offset + m.start(3))
            coeffs[idx - 1] += sign * num
        else:
            const += sign * num
        pos = m.end()
    return coeffs, const


def parse_region(text: str, arity: int) -> Region:
    """One ``lhs >= rhs`` (or ``<=``) per line over x1..xm; ``#`` starts a comment."""
    rows = []
    offset = 0
    for line in text.splitlines(keepends=True):
        body = line.split("#", 1)[0]
        if body.strip():
            if ">=" in body:
                lhs, rhs = body.split(">=", 1)
                flip = False
            elif "<=" in body:
                lhs, rhs = body.split("<=", 1)
                flip = True
            else:
                raise ParseError("expected '>=' or '<='", text, offset)
            lc, lk = _parse_linear(lhs, arity, text, offset)
            rc, rk = _parse_linear(rhs, arity, text, offset + len(lhs) + 2)
            coeffs = [a - b for a, b in zip(lc, rc)]
            const = lk - rk
            if flip:
                coeffs = [-c for c in coeffs]
                const = -const
            rows.append(LinearInequality(tuple(coeffs), const))
        offset += len(line)
    return Region(arity, rows)


def format_region(region: Region) -> str:
    lines = []
    for q in region.constraints:
        parts = []
        for i, c in enumerate(q.coefficients, start=1):
            if c:
                parts.append(f"{c}*x{i}")
        if q.constant or not parts:
            parts.append(str(q.constant))
        lines.append(" + ".join(parts) + " >= 0")
    return "\n".join(lines)
