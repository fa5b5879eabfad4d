"""Exact rational feasibility for systems of weak and strict linear inequalities.

The main entry point, :func:`solve_strict_feasibility`, maximises a common
margin ``t`` over the strict rows (capped at ``t <= 1``) with a dictionary
simplex using Bland's rule.  :func:`fm_eliminate` decides the same question by
Fourier-Motzkin elimination and exists only as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

FM_MAX_DIMENSION = 8


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class LinearInequality:
    """``coefficients . x + constant >= 0`` (or ``> 0`` when ``strict``)."""

    coefficients: tuple
    constant: Fraction = Fraction(0)
    strict: bool = False

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in self.coefficients))
        object.__setattr__(self, "constant", Fraction(self.constant))

    @property
    def dimension(self) -> int:
        return len(self.coefficients)

    def lhs(self, point: Sequence) -> Fraction:
        return sum((c * x for c, x in zip(self.coefficients, point)), self.constant)

    def holds_at(self, point: Sequence) -> bool:
        v = self.lhs(point)
        return v > 0 if self.strict else v >= 0

    def as_strict(self) -> "LinearInequality":
        return LinearInequality(self.coefficients, self.constant, True)

    def as_weak(self) -> "LinearInequality":
        return LinearInequality(self.coefficients, self.constant, False)


@dataclass(frozen=True)
class LPOutcome:
    feasible: bool
    witness: tuple | None = None
    margin: Fraction | None = None

    def __bool__(self):
        return self.feasible


INFEASIBLE = LPOutcome(False)


class _Dictionary:
    """Chvatal-style simplex dictionary over Fractions.

    Row ``i`` reads ``x[basis[i]] = rhs[i] + sum_j rows[i][j] * x[nonbasis[j]]``
    and the objective is ``value + sum_j obj[j] * x[nonbasis[j]]``.
    """

    def __init__(self, a_rows, b, c):
        n = len(c)
        m = len(b)
        self.nonbasis = list(range(n))
        self.basis = list(range(n, n + m))
        self.rows = [[-v for v in row] for row in a_rows]
        self.rhs = list(b)
        self.obj = list(c)
        self.value = Fraction(0)

    def pivot(self, r: int, s: int) -> None:
        row = self.rows[r]
        piv = row[s]
        leaving = self.basis[r]
        entering = self.nonbasis[s]
        # solve row r for the entering variable
        inv = -1 / piv
        new_row = [v * inv for v in row]
        new_row[s] = 1 / piv
        new_rhs = self.rhs[r] * inv
        self.rows[r] = new_row
        self.rhs[r] = new_rhs
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other[s]
            if f == 0:
                continue
            for j, v in enumerate(new_row):
                if v:
                    other[j] = other[j] + f * v if j != s else f * v
                elif j == s:
                    other[j] = 0
            self.rhs[i] += f * new_rhs
        f = self.obj[s]
        if f != 0:
            for j, v in enumerate(new_row):
                if j == s:
                    self.obj[j] = f * v
                elif v:
                    self.obj[j] += f * v
            self.value += f * new_rhs
        self.basis[r] = entering
        self.nonbasis[s] = leaving

    def optimise(self) -> bool:
        """Run Bland's rule to optimality; False when unbounded."""
        while True:
            s = None
            best = None
            for j, g in enumerate(self.obj):
                if g > 0 and (best is None or self.nonbasis[j] < best):
                    s, best = j, self.nonbasis[j]
            if s is None:
                return True
            r = None
            ratio = None
            for i, row in enumerate(self.rows):
                a = row[s]
                if a < 0:
                    q = self.rhs[i] / -a
                    if ratio is None or q < ratio or (q == ratio and self.basis[i] < self.basis[r]):
                        r, ratio = i, q
            if r is None:
                return False
            self.pivot(r, s)

    def values(self, count: int) -> list:
        out = [Fraction(0)] * count
        for i, var in enumerate(self.basis):
            if var < count:
                out[var] = self.rhs[i]
        return out


def _maximise(a_rows, b, c):
    """max c.x subject to A x <= b, x >= 0.  Returns (value, x) or None if infeasible.

    The objective must be bounded on the feasible set.
    """
    n = len(c)
    m = len(b)
    if m == 0 or min(b) >= 0:
        d = _Dictionary(a_rows, b, c)
        if not d.optimise():
            raise ArithmeticError("objective unbounded")
        return d.value, d.values(n)

    # phase one: auxiliary variable x_aux added to every row, minimise it
    aux = n + m
    d = _Dictionary(a_rows, b, [Fraction(0)] * n)
    for row in d.rows:
        row.append(Fraction(1))
    d.nonbasis.append(aux)
    d.obj = [Fraction(0)] * n + [Fraction(-1)]
    worst = min(range(m), key=lambda i: (d.rhs[i], d.basis[i]))
    d.pivot(worst, n)
    d.optimise()
    if d.value < 0:
        return None
    if aux in d.basis:
        r = d.basis.index(aux)
        s = next((j for j, v in enumerate(d.rows[r]) if v != 0), None)
        if s is None:
            # redundant row: aux is identically zero here
            del d.rows[r], d.rhs[r], d.basis[r]
        else:
            d.pivot(r, s)
    s = d.nonbasis.index(aux)
    for row in d.rows:
        del row[s]
    del d.nonbasis[s]

    # phase two: rewrite the true objective over the current nonbasis
    obj = [Fraction(0)] * len(d.nonbasis)
    value = Fraction(0)
    pos = {var: j for j, var in enumerate(d.nonbasis)}
    for var, coef in enumerate(c):
        if coef == 0:
            continue
        if var in pos:
            obj[pos[var]] += coef
        else:
            i = d.basis.index(var)
            value += coef * d.rhs[i]
            for j, v in enumerate(d.rows[i]):
                if v:
                    obj[j] += coef * v
    d.obj = obj
    d.value = value
    if not d.optimise():
        raise ArithmeticError("objective unbounded")
    return d.value, d.values(n)


def _check_dimension(rows, dimension):
    for q in rows:
        if q.dimension != dimension:
            raise DimensionError(f"inequality has dimension {q.dimension}, expected {dimension}")


def _margin_lp(strict, weak, dimension):
    """max t s.t. strict rows >= t, weak rows >= 0, t <= 1.  (t, x) or None."""
    # variables: x+ (dim), x- (dim), t+, t-
    a_rows, b = [], []
    for q in strict:
        # coef.x + const >= t   <=>   -coef.x + t <= const
        a_rows.append([-c for c in q.coefficients] + list(q.coefficients) + [Fraction(1), Fraction(-1)])
        b.append(q.constant)
    for q in weak:
        a_rows.append([-c for c in q.coefficients] + list(q.coefficients) + [Fraction(0), Fraction(0)])
        b.append(q.constant)
    a_rows.append([Fraction(0)] * (2 * dimension) + [Fraction(1), Fraction(-1)])
    b.append(Fraction(1))
    c = [Fraction(0)] * (2 * dimension) + [Fraction(1), Fraction(-1)]
    result = _maximise(a_rows, b, c)
    if result is None:
        return None
    t, xs = result
    return t, tuple(xs[i] - xs[dimension + i] for i in range(dimension))


ROW_BATCH = 24


def solve_strict_feasibility(strict: Sequence[LinearInequality],
                             weak: Sequence[LinearInequality],
                             dimension: int) -> LPOutcome:
    """Find x with every ``weak`` row >= 0 and every ``strict`` row > 0.

    Maximises the common margin t of the strict rows (capped at 1); the
    system is feasible iff the optimum is positive.  Large systems are solved
    by row generation: the LP is re-solved on a growing subset of strict rows
    until its optimiser meets every row at the subset's margin, at which point
    that margin is the optimum of the full problem.

    The ``strict`` flag stored on the inequalities is ignored; membership in
    the ``strict``/``weak`` list decides how a row is treated.
    """
    strict = list(strict)
    weak = list(weak)
    _check_dimension(strict + weak, dimension)

    active = list(range(min(len(strict), ROW_BATCH)))
    chosen = set(active)
    while True:
        result = _margin_lp([strict[i] for i in active], weak, dimension)
        if result is None:
            return INFEASIBLE
        t, witness = result
        if t <= 0:
            return INFEASIBLE
        short = [(strict[i].lhs(witness), i) for i in range(len(strict))
                 if i not in chosen and strict[i].lhs(witness) < t]
        if not short:
            break
        short.sort()
        for _, i in short[:ROW_BATCH]:
            active.append(i)
            chosen.add(i)

    for q in weak:
        if q.lhs(witness) < 0:
            raise ArithmeticError("simplex witness violates a weak constraint")
    for q in strict:
        if q.lhs(witness) < t:
            raise ArithmeticError("simplex witness violates a strict constraint")
    return LPOutcome(True, witness, t)


def _normalise(coeffs, const):
    scale = max(abs(c) for c in coeffs)
    return tuple(c / scale for c in coeffs), const / scale


def fm_eliminate(weak: Sequence[LinearInequality],
                 strict: Sequence[LinearInequality],
                 dimension: int | None = None) -> bool:
    """Decide strict feasibility by Fourier-Motzkin elimination."""
    rows = [(q.coefficients, q.constant, False) for q in weak]
    rows += [(q.coefficients, q.constant, True) for q in strict]
    if dimension is None:
        dimension = len(rows[0][0]) if rows else 0
    if any(len(r[0]) != dimension for r in rows):
        raise DimensionError("inconsistent inequality dimensions")
    if dimension > FM_MAX_DIMENSION:
        raise DimensionError(f"Fourier-Motzkin limited to dimension {FM_MAX_DIMENSION}")

    def reduce(rows):
        # keep only the tightest row per direction; check constant rows now
        best = {}
        for coeffs, const, is_strict in rows:
            if all(c == 0 for c in coeffs):
                if const < 0 or (is_strict and const == 0):
                    return None
                continue
            key, k = _normalise(coeffs, const)
            old = best.get(key)
            if old is None or k < old[0] or (k == old[0] and is_strict and not old[1]):
                best[key] = (k, is_strict)
        return [(key, k, s) for key, (k, s) in best.items()]

    rows = reduce(rows)
    for var in range(dimension):
        if rows is None:
            return False
        pos = [r for r in rows if r[0][var] > 0]
        neg = [r for r in rows if r[0][var] < 0]
        out = [r for r in rows if r[0][var] == 0]
        for pc, pk, ps in pos:
            for nc, nk, ns in neg:
                a, b = pc[var], -nc[var]
                coeffs = tuple(b * x + a * y for x, y in zip(pc, nc))
                out.append((coeffs, b * pk + a * nk, ps or ns))
        rows = reduce(out)
    return rows is not None
