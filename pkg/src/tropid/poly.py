"""Multivariate tropical polynomials and their essential parts.

A polynomial is a finite max of affine forms ``coef + <exponents, x>``.  A
monomial is essential when it strictly beats every other monomial somewhere;
that question is a strict linear feasibility problem, so everything here is
decided exactly with :mod:`tropid.lp`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .lp import LinearInequality, solve_strict_feasibility
from .scalar import NEG_INF, ZERO, TropScalar, format_scalar, scalar


class ArityError(ValueError):
    pass


class DegenerateRegionError(ValueError):
    pass


class Monomial(NamedTuple):
    exponents: tuple
    coefficient: Fraction

    def value(self, point: Sequence[TropScalar]) -> TropScalar:
        total = self.coefficient
        for e, x in zip(self.exponents, point):
            if e:
                if x is NEG_INF:
                    return NEG_INF
                total += e * x
        return total

    def __str__(self):
        return _format_term(self.exponents, self.coefficient)


def _format_term(exps, coef) -> str:
    factors = [format_scalar(coef)]
    for i, e in enumerate(exps, start=1):
        if e == 1:
            factors.append(f"x{i}")
        elif e:
            factors.append(f"x{i}^{e}")
    return "*".join(factors)


class TropPoly:
    """Immutable tropical polynomial in ``arity`` variables.

    Monomials are kept sorted by exponent vector; duplicate exponents are
    merged by taking the larger coefficient.  No monomials means -inf.
    """

    __slots__ = ("arity", "monomials", "_coeffs", "_hash")

    def __init__(self, arity: int, terms: Iterable = ()):
        coeffs: dict = {}
        for exps, coef in terms:
            exps = tuple(int(e) for e in exps)
            if len(exps) != arity:
                raise ArityError(f"exponent vector {exps} does not have length {arity}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            coef = scalar(coef)
            if coef is NEG_INF:
                continue
            old = coeffs.get(exps)
            if old is None or coef > old:
                coeffs[exps] = coef
        self.arity = arity
        self._coeffs = coeffs
        self.monomials = tuple(Monomial(e, coeffs[e]) for e in sorted(coeffs))
        self._hash = None

    @classmethod
    def _from_dict(cls, arity, coeffs):
        p = cls.__new__(cls)
        p.arity = arity
        p._coeffs = coeffs
        p.monomials = tuple(Monomial(e, coeffs[e]) for e in sorted(coeffs))
        p._hash = None
        return p

    @classmethod
    def zero(cls, arity: int) -> "TropPoly":
        """The -inf polynomial."""
        return cls._from_dict(arity, {})

    @classmethod
    def constant(cls, arity: int, value=ZERO) -> "TropPoly":
        value = scalar(value)
        if value is NEG_INF:
            return cls.zero(arity)
        return cls._from_dict(arity, {(0,) * arity: value})

    @classmethod
    def one(cls, arity: int) -> "TropPoly":
        return cls.constant(arity, ZERO)

    @classmethod
    def variable(cls, arity: int, index: int, coefficient=ZERO) -> "TropPoly":
        """The monomial ``coefficient * x_{index+1}`` (0-based ``index``)."""
        exps = [0] * arity
        exps[index] = 1
        return cls(arity, [(exps, coefficient)])

    @classmethod
    def monomial(cls, exponents, coefficient=ZERO) -> "TropPoly":
        exponents = tuple(exponents)
        return cls(len(exponents), [(exponents, coefficient)])

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def __contains__(self, item):
        if isinstance(item, Monomial):
            return self._coeffs.get(item.exponents) == item.coefficient
        return tuple(item) in self._coeffs

    def coefficient(self, exponents) -> TropScalar:
        return self._coeffs.get(tuple(exponents), NEG_INF)

    @property
    def is_neg_inf(self) -> bool:
        return not self._coeffs

    def __eq__(self, other):
        if not isinstance(other, TropPoly):
            return NotImplemented
        return self.arity == other.arity and self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, self.monomials))
        return self._hash

    def __repr__(self):
        return f"TropPoly({self.arity}, {str(self)!r})"

    def __str__(self):
        if not self.monomials:
            return "-inf"
        # highest exponent vector first reads naturally: x1^2 + x1 + 0
        return " + ".join(str(m) for m in reversed(self.monomials))

    def without(self, exponents) -> "TropPoly":
        coeffs = dict(self._coeffs)
        coeffs.pop(tuple(exponents), None)
        return TropPoly._from_dict(self.arity, coeffs)

    def __call__(self, point):
        return evaluate(self, point)


def _check_arity(f: TropPoly, g: TropPoly):
    if f.arity != g.arity:
        raise ArityError(f"arity mismatch: {f.arity} vs {g.arity}")


def evaluate(f: TropPoly, point: Sequence) -> TropScalar:
    """Substitute a point of the tropical affine space into ``f``."""
    if len(point) != f.arity:
        raise ArityError(f"point has {len(point)} coordinates, polynomial has arity {f.arity}")
    best = NEG_INF
    for mono in f.monomials:
        v = mono.value(point)
        if v > best:
            best = v
    return best


def padd(f: TropPoly, g: TropPoly) -> TropPoly:
    _check_arity(f, g)
    coeffs = dict(f._coeffs)
    for e, c in g._coeffs.items():
        old = coeffs.get(e)
        if old is None or c > old:
            coeffs[e] = c
    return TropPoly._from_dict(f.arity, coeffs)


def pmul(f: TropPoly, g: TropPoly) -> TropPoly:
    _check_arity(f, g)
    coeffs: dict = {}
    for e1, c1 in f._coeffs.items():
        for e2, c2 in g._coeffs.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            c = c1 + c2
            old = coeffs.get(e)
            if old is None or c > old:
                coeffs[e] = c
    return TropPoly._from_dict(f.arity, coeffs)


def ppow(f: TropPoly, n: int) -> TropPoly:
    if n < 0:
        raise ValueError("exponent must be nonnegative")
    result = TropPoly.one(f.arity)
    base = f
    while n:
        if n & 1:
            result = pmul(result, base)
        n >>= 1
        if n:
            base = pmul(base, base)
    return result


def psum(polys: Iterable[TropPoly], arity: int) -> TropPoly:
    total = TropPoly.zero(arity)
    for p in polys:
        total = padd(total, p)
    return total


@dataclass(frozen=True)
class Region:
    """Closed polyhedral region ``{x : every constraint >= 0}`` with nonempty interior."""

    arity: int
    constraints: tuple
    interior_point: tuple = None

    def __init__(self, arity: int, constraints: Iterable[LinearInequality]):
        constraints = tuple(q.as_weak() for q in constraints)
        for q in constraints:
            if q.dimension != arity:
                raise ArityError(f"region constraint has dimension {q.dimension}, expected {arity}")
        probe = solve_strict_feasibility(constraints, [], arity)
        if not probe:
            raise DegenerateRegionError("region has empty interior")
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "constraints", constraints)
        object.__setattr__(self, "interior_point", probe.witness)

    def contains(self, point: Sequence) -> bool:
        return all(q.holds_at(point) for q in self.constraints)


def _dominance_constraints(target: Monomial, others: Iterable[Monomial]) -> list:
    """Rows ``target(x) - g(x) > 0`` in classical coordinates."""
    rows = []
    for g in others:
        coeffs = tuple(a - b for a, b in zip(target.exponents, g.exponents))
        rows.append(LinearInequality(coeffs, target.coefficient - g.coefficient, True))
    return rows


def _region_rows(region: Region | None, arity: int) -> list:
    if region is None:
        return []
    if region.arity != arity:
        raise ArityError(f"region arity {region.arity} does not match polynomial arity {arity}")
    return list(region.constraints)


def dominates_somewhere(target: Monomial, others: Iterable[Monomial], arity: int,
                        region: Region | None = None):
    """A point (in ``region``) where ``target`` strictly exceeds all ``others``, or None."""
    strict = _dominance_constraints(target, others)
    if any(all(c == 0 for c in q.coefficients) and q.constant <= 0 for q in strict):
        # same exponents, coefficient not larger: can never win
        return None
    out = solve_strict_feasibility(strict, _region_rows(region, arity), arity)
    return out.witness if out else None


@dataclass(frozen=True)
class Essentiality:
    essential: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.essential


def is_essential(f: TropPoly, target, region: Region | None = None) -> Essentiality:
    """Decide whether ``target`` strictly attains the max of ``f`` at some point."""
    if not isinstance(target, Monomial):
        target = Monomial(tuple(target), f.coefficient(target))
    if target.coefficient is NEG_INF or f.coefficient(target.exponents) != target.coefficient:
        raise KeyError(f"{target} is not a monomial of {f}")
    others = [g for g in f.monomials if g.exponents != target.exponents]
    witness = dominates_somewhere(target, others, f.arity, region)
    return Essentiality(witness is not None, witness)


def essential_part(f: TropPoly, region: Region | None = None) -> TropPoly:
    keep = {m.exponents: m.coefficient for m in f.monomials if is_essential(f, m, region)}
    return TropPoly._from_dict(f.arity, keep)


@dataclass(frozen=True)
class Equivalence:
    equivalent: bool
    witness: tuple | None = None
    f_value: TropScalar | None = None
    g_value: TropScalar | None = None

    def __bool__(self):
        return self.equivalent


EQUIVALENT = Equivalence(True)


def _distinct_at(f, g, point):
    return Equivalence(False, tuple(point), evaluate(f, point), evaluate(g, point))


def _one_sided_witness(f: TropPoly, g: TropPoly, region: Region | None):
    """A point where some monomial of ``f`` beats all of ``g``, or None."""
    for h in f.monomials:
        if h in g:
            continue
        w = dominates_somewhere(h, g.monomials, f.arity, region)
        if w is not None:
            return w
    return None


PROBE_POINTS = 8


def _probe(f: TropPoly, g: TropPoly, region: Region | None):
    """Cheap exact search: evaluate at a few fixed pseudo-random points."""
    rng = random.Random(f"probe:{f.arity}")
    base = region.interior_point if region is not None else (ZERO,) * f.arity
    for _ in range(PROBE_POINTS):
        point = tuple(b + Fraction(rng.randint(-12, 12), rng.randint(1, 3)) for b in base)
        if region is not None and not region.contains(point):
            continue
        if evaluate(f, point) != evaluate(g, point):
            return point
    return None


def e_equivalent(f: TropPoly, g: TropPoly, region: Region | None = None,
                 probe: bool = True) -> Equivalence:
    """Decide whether ``f`` and ``g`` define the same function (on ``region``).

    With ``probe`` a few fixed points are tried before any LP is solved; a
    difference found there is already an exact witness.  Without it every
    distinct verdict carries a point produced by the dominance LP.
    """
    _check_arity(f, g)
    if region is not None and region.arity != f.arity:
        raise ArityError("region arity does not match polynomials")
    if f.is_neg_inf or g.is_neg_inf:
        if f.is_neg_inf and g.is_neg_inf:
            return EQUIVALENT
        point = region.interior_point if region is not None else (ZERO,) * f.arity
        return _distinct_at(f, g, point)
    if f == g:
        return EQUIVALENT
    point = _probe(f, g, region) if probe else None
    if point is not None:
        return _distinct_at(f, g, point)
    if region is None:
        if essential_part(f) == essential_part(g):
            return EQUIVALENT
    for a, b in ((f, g), (g, f)):
        w = _one_sided_witness(a, b, region)
        if w is not None:
            return _distinct_at(f, g, w)
    if region is None:
        raise ArithmeticError("essential parts differ but no separating point was found")
    return EQUIVALENT
