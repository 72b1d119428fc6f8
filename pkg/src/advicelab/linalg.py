"""Exact rational linear algebra.

Everything here works on :class:`fractions.Fraction`; no floating point is
ever introduced.  Matrices are tuples of row tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, NotStochastic

Rational = Fraction
Matrix = tuple  # tuple[tuple[Fraction, ...], ...]
Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; decimals are rejected to keep floats out."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str) or "." in text or "e" in text.lower():
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text.strip())


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def as_matrix(rows) -> Matrix:
    m = tuple(tuple(Fraction(v) for v in row) for row in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise DimensionMismatch("ragged matrix")
    return m


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def is_stochastic(a: Matrix) -> bool:
    return all(all(0 <= v <= 1 for v in row) and sum(row) == 1 for row in a)


def check_stochastic(a: Matrix, what: str = "matrix") -> Matrix:
    for i, row in enumerate(a):
        if any(v < 0 or v > 1 for v in row) or sum(row) != 1:
            raise NotStochastic(f"{what}: row {i} = {[format_rational(v) for v in row]}")
    return a


def mat_mul(a: Matrix, b: Matrix, stochastic: bool = True) -> Matrix:
    """Exact product ``a @ b``; with ``stochastic`` the result is re-checked."""
    if not a or not b or len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0]) if a else 0} by {len(b)}x{len(b[0]) if b else 0}")
    cols = list(zip(*b))
    out = tuple(tuple(sum((x * y for x, y in zip(row, col) if x and y), ZERO) for col in cols) for row in a)
    if stochastic:
        check_stochastic(out, "product")
    return out


def vec_mat(v: Vector, a: Matrix) -> Vector:
    if len(v) != len(a):
        raise DimensionMismatch("vector/matrix dimension mismatch")
    n = len(a[0]) if a else 0
    out = [ZERO] * n
    for x, row in zip(v, a):
        if x:
            for j, y in enumerate(row):
                if y:
                    out[j] += x * y
    return tuple(out)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(u, v)), ZERO)


def basis_extract(vectors: Sequence[Sequence[Fraction]]):
    """Greedy maximal linearly independent subset.

    Returns ``(basis, coefficients)``: ``basis`` lists the input indices that
    were kept (first vector outside the current span wins) and
    ``coefficients[k]`` gives, for every input vector ``k``, the exact
    weights over ``basis`` that reproduce it.
    """
    vectors = [tuple(Fraction(x) for x in v) for v in vectors]
    if vectors and any(len(v) != len(vectors[0]) for v in vectors):
        raise DimensionMismatch("vectors of different dimension")
    basis: list[int] = []
    # Each echelon row: (pivot column, reduced vector, expression over basis slots).
    rows: list[tuple[int, list[Fraction], list[Fraction]]] = []
    coefficients = []
    for idx, v in enumerate(vectors):
        r = list(v)
        expr = [ZERO] * len(basis)
        for pivot, row, row_expr in rows:
            f = r[pivot]
            if f:
                f /= row[pivot]
                for j in range(len(r)):
                    if row[j]:
                        r[j] -= f * row[j]
                for j, e in enumerate(row_expr):
                    if e:
                        expr[j] += f * e
        pivot = next((j for j, x in enumerate(r) if x), None)
        if pivot is None:
            coefficients.append(tuple(expr))
            continue
        # v = sum(expr) + r, and r becomes the echelon row of the new basis vector.
        slot = len(basis)
        basis.append(idx)
        for _, _, row_expr in rows:
            row_expr.append(ZERO)
        new_expr = [-e for e in expr] + [ONE]
        rows.append((pivot, r, new_expr))
        coefficients.append(None)
    # Coefficients of basis members themselves, and pad earlier rows.
    out = []
    k = len(basis)
    slot_of = {idx: s for s, idx in enumerate(basis)}
    for idx, c in enumerate(coefficients):
        if c is None:
            unit = [ZERO] * k
            unit[slot_of[idx]] = ONE
            out.append(tuple(unit))
        else:
            out.append(tuple(c) + (ZERO,) * (k - len(c)))
    return basis, out


def combine(coefficients: Sequence[Fraction], vectors: Sequence[Sequence[Fraction]]) -> Vector:
    """``sum_k coefficients[k] * vectors[k]``."""
    if not vectors:
        return ()
    n = len(vectors[0])
    out = [ZERO] * n
    for c, v in zip(coefficients, vectors):
        if c:
            for j in range(n):
                out[j] += c * v[j]
    return tuple(out)


def rank(vectors) -> int:
    return len(basis_extract(vectors)[0])


@dataclass(frozen=True)
class ZeroSumSolution:
    """Exact minimax solution of a matrix game.

    The row player maximizes, the column player minimizes.
    """

    value: Fraction
    row_strategy: tuple
    col_strategy: tuple

    def row_guarantee(self, payoff) -> Fraction:
        """Worst pure column response against the row strategy."""
        return min(sum((p * payoff[i][j] for i, p in enumerate(self.row_strategy)), ZERO) for j in range(len(payoff[0])))

    def col_guarantee(self, payoff) -> Fraction:
        """Best pure row response against the column strategy."""
        return max(sum((q * payoff[i][j] for j, q in enumerate(self.col_strategy)), ZERO) for i in range(len(payoff)))


def _simplex_max(a, b, c):
    """Maximize ``c.x`` s.t. ``a x <= b``, ``x >= 0`` with ``b >= 0``.

    Dense tableau, Bland's rule.  Returns ``(x, y, value)`` where ``y`` are
    the optimal dual multipliers of the constraints.
    """
    m, n = len(a), len(c)
    # Columns 0..n-1 structural, n..n+m-1 slack.
    t = [list(a[i]) + [ONE if k == i else ZERO for k in range(m)] + [b[i]] for i in range(m)]
    # Objective row stores reduced costs c_j - z_j; optimal when all <= 0.
    obj = list(c) + [ZERO] * m + [ZERO]
    basis = [n + i for i in range(m)]
    while True:
        entering = next((j for j in range(n + m) if obj[j] > 0), None)
        if entering is None:
            break
        best = None
        for i in range(m):
            if t[i][entering] > 0:
                ratio = t[i][-1] / t[i][entering]
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            raise ArithmeticError("unbounded game LP")  # cannot happen for positive payoffs
        r = best[1]
        piv = t[r][entering]
        t[r] = [v / piv for v in t[r]]
        for i in range(m):
            if i != r and t[i][entering]:
                f = t[i][entering]
                t[i] = [v - f * w for v, w in zip(t[i], t[r])]
        f = obj[entering]
        obj = [v - f * w for v, w in zip(obj, t[r])]
        basis[r] = entering
    x = [ZERO] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = t[i][-1]
    y = [-obj[n + i] for i in range(m)]
    return x, y, -obj[-1]


def solve_zero_sum(payoff) -> ZeroSumSolution:
    """Exact value and optimal mixed strategies of a finite zero-sum game.

    ``payoff[i][j]`` is what the row player (maximizer) receives when row
    ``i`` meets column ``j``.
    """
    p = as_matrix(payoff)
    if not p or not p[0]:
        raise DimensionMismatch("empty payoff matrix")
    m, n = len(p), len(p[0])
    shift = 1 - min(min(row) for row in p)
    q = [[v + shift for v in row] for row in p]
    # Column player's LP: max sum(w) s.t. q w <= 1, w >= 0; its dual gives the row player.
    w, u, total = _simplex_max(q, [ONE] * m, [ONE] * n)
    col = tuple(v / total for v in w)
    row = tuple(v / total for v in u)
    value = 1 / total - shift
    sol = ZeroSumSolution(value, row, col)
    if sol.row_guarantee(p) != value or sol.col_guarantee(p) != value:
        raise ArithmeticError("minimax certificate failed")  # exact arithmetic: a bug if reached
    return sol
