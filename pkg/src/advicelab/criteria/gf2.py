"""Linear systems over GF(2), with rows packed into Python ints."""

from __future__ import annotations

from ..errors import NoSolution


def _bits(v) -> list:
    out = []
    for b in v:
        if b in (1, "1", True):
            out.append(1)
        elif b in (0, "0", False):
            out.append(0)
        else:
            raise ValueError(f"not a bit: {b!r}")
    return out


def _pack(bits) -> int:
    x = 0
    for j, b in enumerate(bits):
        if b:
            x |= 1 << j
    return x


def _unpack(x: int, n: int) -> tuple:
    return tuple("1" if (x >> j) & 1 else "0" for j in range(n))


def _eliminate(rows, rhs, n):
    """Reduced row echelon form; returns (rows, rhs, pivot columns)."""
    rows, rhs = list(rows), list(rhs)
    pivots = []
    r = 0
    for col in range(n):
        p = next((i for i in range(r, len(rows)) if (rows[i] >> col) & 1), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        rhs[r], rhs[p] = rhs[p], rhs[r]
        for i in range(len(rows)):
            if i != r and (rows[i] >> col) & 1:
                rows[i] ^= rows[r]
                rhs[i] ^= rhs[r]
        pivots.append(col)
        r += 1
    return rows, rhs, pivots


def gf2_solve_rows(rows, rhs, n: int) -> tuple:
    """Solve ``row_i . y = rhs_i`` (mod 2); free variables are set to 0."""
    packed = [_pack(_bits(r)) for r in rows]
    rows_, rhs_, pivots = _eliminate(packed, [int(b) for b in _bits(rhs)], n)
    for i in range(len(pivots), len(rows_)):
        if rhs_[i]:
            raise NoSolution("inconsistent GF(2) system")
    y = 0
    for i, col in enumerate(pivots):
        if rhs_[i]:
            y |= 1 << col
    return _unpack(y, n)


def gf2_solve(words, r) -> tuple:
    """A binary word ``y`` with ``w_i^R . y = r_i (mod 2)`` for every ``i``.

    Raises :class:`NoSolution` when the system is inconsistent.
    """
    words = [tuple(w) for w in words]
    if not words:
        raise ValueError("need at least one equation")
    n = len(words[0])
    if any(len(w) != n for w in words):
        raise ValueError("all words must have one length")
    if len(r) != len(words):
        raise ValueError("right-hand side length must equal the number of equations")
    return gf2_solve_rows([w[::-1] for w in words], r, n)


def gf2_rank(words) -> int:
    words = [tuple(w) for w in words]
    if not words:
        return 0
    n = len(words[0])
    return len(_eliminate([_pack(_bits(w)) for w in words], [0] * len(words), n)[2])


def gf2_nullspace(rows, n: int) -> list:
    """Basis of ``{y : row . y = 0 for all rows}`` as binary words."""
    packed = [_pack(_bits(r)) for r in rows]
    rows_, _, pivots = _eliminate(packed, [0] * len(packed), n)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        y = 1 << f
        for i, col in enumerate(pivots):
            if (rows_[i] >> f) & 1:
                y |= 1 << col
        basis.append(_unpack(y, n))
    return basis


def check_solution(words, r, y) -> bool:
    yb = _bits(y)
    return all(sum(a & b for a, b in zip(_bits(w)[::-1], yb)) % 2 == rb for w, rb in zip(words, _bits(r)))
