"""Square matrices over the tropical semiring (or over tropical polynomials)."""

from __future__ import annotations

import itertools
from math import factorial
from typing import Sequence

from .poly import TropPoly, evaluate, padd, pmul
from .scalar import NEG_INF, ZERO, format_scalar, odiv, oprod, scalar

PERMANENT_MAX_N = 8


class DimensionError(ValueError):
    pass


def _scalar_add(a, b):
    return a if a >= b else b


def _scalar_mul(a, b):
    return a + b


class _Ring:
    __slots__ = ("zero", "one", "add", "mul")

    def __init__(self, zero, one, add, mul):
        self.zero, self.one, self.add, self.mul = zero, one, add, mul


SCALARS = _Ring(NEG_INF, ZERO, _scalar_add, _scalar_mul)


def _poly_ring(arity):
    return _Ring(TropPoly.zero(arity), TropPoly.one(arity), padd, pmul)


def rows_mul(x, y, add=_scalar_add, mul=_scalar_mul, zero=NEG_INF):
    """Tropical product of two row-tuple matrices (any compatible entries)."""
    cols = tuple(zip(*y))
    out = []
    for row in x:
        new = []
        for col in cols:
            acc = zero
            for a, b in zip(row, col):
                acc = add(acc, mul(a, b))
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def rows_mul_scalar(x, y):
    """Fast path of :func:`rows_mul` for int/Fraction/-inf entries."""
    cols = tuple(zip(*y))
    return tuple(tuple(max([a + b for a, b in zip(row, col)]) for col in cols) for row in x)


class TropMatrix:
    """Immutable ``n x n`` matrix with tropical scalar or :class:`TropPoly` entries."""

    __slots__ = ("rows", "n", "_ring")

    def __init__(self, rows: Sequence[Sequence]):
        rows = [list(r) for r in rows]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise DimensionError("matrix must be square and nonempty")
        polys = [e for r in rows for e in r if isinstance(e, TropPoly)]
        if polys:
            arity = polys[0].arity
            if len(polys) != n * n or any(p.arity != arity for p in polys):
                raise DimensionError("polynomial matrices need polynomial entries of one arity")
            self._ring = _poly_ring(arity)
            self.rows = tuple(tuple(r) for r in rows)
        else:
            self._ring = SCALARS
            self.rows = tuple(tuple(scalar(e) for e in r) for r in rows)
        self.n = n

    @classmethod
    def _raw(cls, rows, ring):
        m = cls.__new__(cls)
        m.rows = rows
        m.n = len(rows)
        m._ring = ring
        return m

    @classmethod
    def identity(cls, n: int) -> "TropMatrix":
        return cls._raw(tuple(tuple(ZERO if i == j else NEG_INF for j in range(n)) for i in range(n)), SCALARS)

    @classmethod
    def zero(cls, n: int) -> "TropMatrix":
        return cls._raw(tuple((NEG_INF,) * n for _ in range(n)), SCALARS)

    @property
    def is_symbolic(self) -> bool:
        return self._ring is not SCALARS

    @property
    def arity(self) -> int | None:
        return self._ring.zero.arity if self.is_symbolic else None

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, TropMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __matmul__(self, other):
        return mmul(self, other)

    def __pow__(self, k):
        return mpow(self, k)

    def __repr__(self):
        return f"TropMatrix({format_matrix(self)})"

    def __str__(self):
        return format_matrix(self)

    def tolist(self):
        return [list(r) for r in self.rows]


def format_matrix(a: TropMatrix) -> str:
    if a.is_symbolic:
        return "[" + ", ".join("[" + ", ".join(str(e) for e in r) + "]" for r in a.rows) + "]"
    return "[" + ",".join("[" + ",".join(format_scalar(e) for e in r) + "]" for r in a.rows) + "]"


def _same_shape(a: TropMatrix, b: TropMatrix):
    if a.n != b.n:
        raise DimensionError(f"dimension mismatch: {a.n} vs {b.n}")
    if a.is_symbolic != b.is_symbolic or a.arity != b.arity:
        raise DimensionError("cannot mix scalar and polynomial matrices of different arity")


def mmul(a: TropMatrix, b: TropMatrix) -> TropMatrix:
    _same_shape(a, b)
    if a._ring is SCALARS:
        return TropMatrix._raw(rows_mul_scalar(a.rows, b.rows), SCALARS)
    r = a._ring
    return TropMatrix._raw(rows_mul(a.rows, b.rows, r.add, r.mul, r.zero), r)


def madd(a: TropMatrix, b: TropMatrix) -> TropMatrix:
    _same_shape(a, b)
    add = a._ring.add
    return TropMatrix._raw(tuple(tuple(add(x, y) for x, y in zip(p, q)) for p, q in zip(a.rows, b.rows)), a._ring)


def smul(alpha, a: TropMatrix) -> TropMatrix:
    """Scalar multiple: ``alpha`` is added to every entry."""
    alpha = scalar(alpha)
    if a.is_symbolic:
        c = TropPoly.constant(a.arity, alpha)
        return TropMatrix._raw(tuple(tuple(pmul(c, e) for e in r) for r in a.rows), a._ring)
    return TropMatrix._raw(tuple(tuple(e + alpha for e in r) for r in a.rows), SCALARS)


def mpow(a: TropMatrix, k: int) -> TropMatrix:
    if k < 0:
        raise ValueError("matrix power must be nonnegative")
    if a.is_symbolic:
        r = a._ring
        result = TropMatrix._raw(tuple(tuple(r.one if i == j else r.zero for j in range(a.n))
                                       for i in range(a.n)), r)
    else:
        result = TropMatrix.identity(a.n)
    base = a
    while k:
        if k & 1:
            result = mmul(result, base)
        k >>= 1
        if k:
            base = mmul(base, base)
    return result


def transpose(a: TropMatrix) -> TropMatrix:
    return TropMatrix._raw(tuple(zip(*a.rows)), a._ring)


def _guard(a: TropMatrix):
    if a.is_symbolic:
        raise TypeError("operation needs a scalar matrix")
    if a.n > PERMANENT_MAX_N:
        raise DimensionError(f"permutation enumeration limited to n <= {PERMANENT_MAX_N}")


def permanent_with_count(a: TropMatrix):
    """``(|A|, number of permutations attaining it)``."""
    _guard(a)
    best, count = NEG_INF, 0
    rows = a.rows
    for sigma in itertools.permutations(range(a.n)):
        w = oprod(rows[i][j] for i, j in enumerate(sigma))
        if w > best:
            best, count = w, 1
        elif w == best:
            count += 1
    return best, count


def permanent(a: TropMatrix):
    """Tropical determinant: max over permutations of the summed entries."""
    return permanent_with_count(a)[0]


def is_singular(a: TropMatrix) -> bool:
    best, count = permanent_with_count(a)
    return best is NEG_INF or count >= 2


def has_full_rank(a: TropMatrix) -> bool:
    return not is_singular(a)


def minor(a: TropMatrix, i: int, j: int) -> TropMatrix:
    if a.n < 2:
        raise DimensionError("minors need n >= 2")
    rows = tuple(tuple(e for c, e in enumerate(r) if c != j) for k, r in enumerate(a.rows) if k != i)
    return TropMatrix._raw(rows, a._ring)


def adjoint(a: TropMatrix) -> TropMatrix:
    """Transposed matrix of minor permanents."""
    _guard(a)
    if a.n < 2:
        raise DimensionError("adjoint needs n >= 2")
    n = a.n
    return TropMatrix._raw(tuple(tuple(permanent(minor(a, j, i)) for j in range(n)) for i in range(n)), SCALARS)


def nabla(a: TropMatrix) -> TropMatrix:
    """Adjoint tropically divided by the permanent."""
    p = permanent(a)
    if p is NEG_INF:
        raise ZeroDivisionError("permanent is -inf; use generalized_inverse instead")
    adj = adjoint(a)
    return TropMatrix._raw(tuple(tuple(odiv(e, p) for e in r) for r in adj.rows), SCALARS)


def mtrace(a: TropMatrix):
    """Multiplicative trace: tropical product of the diagonal."""
    if a.is_symbolic:
        raise TypeError("operation needs a scalar matrix")
    return oprod(a.rows[i][i] for i in range(a.n))


def _neg(x):
    return NEG_INF if x is NEG_INF else -x


def generalized_inverse(a: TropMatrix) -> TropMatrix:
    """A von Neumann inverse ``g`` (``AgA = A``, ``gAg = g``) of a 2x2 matrix."""
    if a.n != 2 or a.is_symbolic:
        raise DimensionError("generalized_inverse is defined for 2x2 scalar matrices")
    if permanent(a) is not NEG_INF:
        return nabla(a)
    (p, q), (r, s) = a.rows
    N = NEG_INF
    if r is N and s is N:
        rows = ((_neg(p), N), (_neg(q), N))
    elif p is N and q is N:
        rows = ((N, _neg(r)), (N, _neg(s)))
    elif q is N and s is N:
        rows = ((_neg(p), _neg(r)), (N, N))
    else:
        # first column is -inf
        rows = ((N, N), (_neg(q), _neg(s)))
    return TropMatrix._raw(rows, SCALARS)


def is_presymmetric(a: TropMatrix) -> bool:
    n = a.n
    return all(a.rows[i][j] == a.rows[n - 1 - j][n - 1 - i] for i in range(n) for j in range(n))


def is_symmetric(a: TropMatrix) -> bool:
    return a.rows == tuple(zip(*a.rows))


def is_bisymmetric(a: TropMatrix) -> bool:
    return is_symmetric(a) and is_presymmetric(a)


def is_upper_triangular(a: TropMatrix) -> bool:
    return all(a.rows[i][j] is NEG_INF for i in range(a.n) for j in range(i))


def is_lower_triangular(a: TropMatrix) -> bool:
    return all(a.rows[i][j] is NEG_INF for i in range(a.n) for j in range(i + 1, a.n))


def is_permutation_matrix(a: TropMatrix) -> bool:
    finite = [[e is not NEG_INF for e in r] for r in a.rows]
    return all(sum(r) == 1 for r in finite) and all(sum(c) == 1 for c in zip(*finite))


def is_n2_idempotent(a: TropMatrix) -> bool:
    if a.n != 2:
        return False
    (p, q), (r, s) = a.rows
    return p == 0 and s == 0 and q <= 0 and r <= 0


def classify_submonoid(a: TropMatrix) -> set:
    flags = set()
    up, low = is_upper_triangular(a), is_lower_triangular(a)
    if up:
        flags.add("upper_triangular")
    if low:
        flags.add("lower_triangular")
    if up and low:
        flags.add("diagonal")
    if is_permutation_matrix(a):
        flags.add("permutation")
    if is_n2_idempotent(a):
        flags.add("N2_idempotent")
    return flags


def reversal_matrix(n: int) -> TropMatrix:
    """Anti-diagonal permutation matrix; conjugating by it swaps U_n and L_n."""
    return TropMatrix._raw(tuple(tuple(ZERO if i + j == n - 1 else NEG_INF for j in range(n))
                                 for i in range(n)), SCALARS)


def conjugate_by_reversal(a: TropMatrix) -> TropMatrix:
    j = reversal_matrix(a.n)
    return mmul(mmul(j, a), j)


def n_factorial_power(a: TropMatrix) -> TropMatrix:
    return mpow(a, factorial(a.n))


def substitute(m: TropMatrix, point: Sequence) -> TropMatrix:
    """Evaluate every polynomial entry at ``point``."""
    if not m.is_symbolic:
        raise TypeError("substitute needs a polynomial matrix")
    point = tuple(scalar(x) for x in point)
    return TropMatrix._raw(tuple(tuple(evaluate(e, point) for e in r) for r in m.rows), SCALARS)
