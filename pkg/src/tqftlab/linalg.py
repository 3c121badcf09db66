"""Dense exact matrices over Scalars, stored as tuples of row tuples."""

from __future__ import annotations

from typing import Sequence

from .errors import DivisionByZero
from .scalar import ONE, ZERO, Scalar

Matrix = tuple  # tuple[tuple[Scalar, ...], ...]


def as_matrix(rows) -> Matrix:
    return tuple(tuple(Scalar.coerce(x) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def zeros(r: int, c: int) -> Matrix:
    return tuple((ZERO,) * c for _ in range(r))


def shape(m: Matrix, cols: int | None = None) -> tuple[int, int]:
    """(rows, cols); ``cols`` disambiguates matrices with zero rows."""
    if not m:
        return 0, (cols or 0)
    return len(m), len(m[0])


def matmul(a: Matrix, b: Matrix) -> Matrix:
    """Product a*b.  Zero entries of ``a`` are skipped."""
    if not a:
        return ()
    n = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [ZERO] * n
        for k, x in enumerate(row):
            if x:
                for j, y in enumerate(b[k]):
                    if y:
                        acc[j] = acc[j] + x * y
        out.append(tuple(acc))
    return tuple(out)


def scale(c, m: Matrix) -> Matrix:
    c = Scalar.coerce(c)
    return tuple(tuple(c * x for x in row) for row in m)


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def transpose(m: Matrix, cols: int | None = None) -> Matrix:
    r, c = shape(m, cols)
    return tuple(tuple(m[i][j] for i in range(r)) for j in range(c))


def kron(a: Matrix, b: Matrix) -> Matrix:
    out = []
    for ra in a:
        for rb in b:
            out.append(tuple((x * y if x and y else ZERO) for x in ra for y in rb))
    return tuple(out)


def trace(m: Matrix) -> Scalar:
    acc = ZERO
    for i, row in enumerate(m):
        acc = acc + row[i]
    return acc


def _rref(rows: list[list[Scalar]], ncols: int) -> tuple[list[list[Scalar]], list[int]]:
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv if x else ZERO for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(m: Matrix) -> int:
    if not m:
        return 0
    return len(_rref([list(r) for r in m], len(m[0]))[1])


def nullspace(m: Sequence[Sequence[Scalar]], ncols: int) -> list[tuple[Scalar, ...]]:
    """Basis of {x : m x = 0}, one vector per free column."""
    if not m:
        return [tuple(ONE if i == j else ZERO for i in range(ncols)) for j in range(ncols)]
    red, pivots = _rref([list(r) for r in m], ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(tuple(v))
    return basis


def det(m: Matrix) -> Scalar:
    n = len(m)
    rows = [list(r) for r in m]
    result = ONE
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            result = -result
        p = rows[c][c]
        result = result * p
        inv = p.inverse()
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], rows[c])]
    return result


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(m)]
    red, pivots = _rref(aug, n)
    if pivots != list(range(n)):
        raise DivisionByZero("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def solve_vector(m: Matrix, b: Sequence[Scalar]) -> tuple[Scalar, ...] | None:
    """One solution of m x = b, or None when inconsistent."""
    ncols = len(m[0]) if m else 0
    aug = [list(row) + [Scalar.coerce(v)] for row, v in zip(m, b)]
    red, pivots = _rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for i, p in enumerate(pivots):
        x[p] = red[i][ncols]
    return tuple(x)


def scalar_multiple_of_identity(m: Matrix) -> Scalar | None:
    """c when m = c*I, otherwise None."""
    n = len(m)
    if n == 0:
        return None
    c = m[0][0]
    for i, row in enumerate(m):
        for j, x in enumerate(row):
            if (x != c) if i == j else bool(x):
                return None
    return c


def is_identity(m: Matrix) -> bool:
    return all((x == 1) if i == j else not x for i, row in enumerate(m) for j, x in enumerate(row))


def format_matrix(m: Matrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in m]
