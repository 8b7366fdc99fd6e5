"""Exact rational scalars, vectors and matrices.

Scalars are :class:`fractions.Fraction`; vectors are tuples of fractions and
matrices are tuples of row tuples.  Everything here is pure and exact.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction.

    A leading unicode minus sign is accepted.  Raises ``ValueError`` on
    malformed input, including a zero denominator.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    s = text.strip().replace("−", "-")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def vector(entries: Iterable) -> Vector:
    return tuple(parse_rational(x) for x in entries)


def matrix(rows: Iterable[Iterable]) -> Matrix:
    m = tuple(vector(r) for r in rows)
    if m and len({len(r) for r in m}) != 1:
        raise ValueError("matrix rows have different lengths")
    return m


def shape(m: Sequence[Sequence]) -> tuple[int, int]:
    return (len(m), len(m[0]) if m else 0)


def transpose(m: Sequence[Sequence[Fraction]]) -> Matrix:
    return tuple(zip(*m)) if m else ()


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    if shape(a)[1] != len(b):
        raise ValueError(f"shape mismatch {shape(a)} @ {shape(b)}")
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt) for row in a)


def matvec(a: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    if a and len(a[0]) != len(v):
        raise ValueError(f"shape mismatch {shape(a)} @ {len(v)}")
    return tuple(sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a)


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def rref(m: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the pivot column indices."""
    rows = [[Fraction(x) for x in r] for r in m]
    nrows, ncols = shape(rows)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(m: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(m)[1])


def det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    n, c = shape(m)
    if n != c:
        raise ValueError("determinant of a non-square matrix")
    rows = [[Fraction(x) for x in r] for r in m]
    out = Fraction(1)
    for col in range(n):
        p = next((i for i in range(col, n) if rows[i][col] != 0), None)
        if p is None:
            return Fraction(0)
        if p != col:
            rows[col], rows[p] = rows[p], rows[col]
            out = -out
        piv = rows[col][col]
        out *= piv
        for i in range(col + 1, n):
            f = rows[i][col] / piv
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[col])]
    return out


def inverse(m: Sequence[Sequence[Fraction]]) -> Matrix:
    n, c = shape(m)
    if n != c:
        raise ValueError("inverse of a non-square matrix")
    aug = [list(r) + list(e) for r, e in zip(m, identity(n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(r[n:]) for r in red)


def solve_consistent(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> Vector | None:
    """One particular solution of ``a u = b`` or None if the system is inconsistent.

    Free variables are set to zero.
    """
    nrows, ncols = shape(a)
    if nrows != len(b):
        raise ValueError(f"shape mismatch: {nrows} rows but rhs of length {len(b)}")
    if nrows == 0:
        return tuple(Fraction(0) for _ in range(ncols))
    aug = [list(r) + [Fraction(x)] for r, x in zip(a, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    u = [Fraction(0)] * ncols
    for row, c in zip(red, pivots):
        u[c] = row[ncols]
    return tuple(u)


def left_inverse(b: Sequence[Sequence[Fraction]]) -> Matrix:
    """``(B^T B)^{-1} B^T`` for a matrix of full column rank."""
    _, ncols = shape(b)
    if rank(b) != ncols:
        raise ValueError("not full column rank")
    bt = transpose(b)
    return matmul(inverse(matmul(bt, b)), bt)


def nullspace(m: Sequence[Sequence[Fraction]], ncols: int | None = None) -> list[Vector]:
    """Basis of the right null space ``{x : m x = 0}``."""
    if ncols is None:
        ncols = shape(m)[1]
    if not m:
        return list(identity(ncols))
    red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def floor_frac(q: Fraction) -> tuple[int, Fraction]:
    """``(floor(q), {q})`` with ``0 <= {q} < 1``."""
    f = math.floor(q)
    return f, Fraction(q) - f


def ceil_frac(q: Fraction) -> tuple[int, Fraction]:
    """``(ceil(q), <q>)`` with ``-1 < <q> <= 0``."""
    c = math.ceil(q)
    return c, Fraction(q) - c


def rational_lcm(a: Fraction, b: Fraction) -> Fraction:
    """Smallest positive rational that is an integer multiple of both inputs."""
    a, b = Fraction(a), Fraction(b)
    if a <= 0 or b <= 0:
        raise ValueError("rational_lcm needs positive inputs")
    return Fraction(math.lcm(a.numerator, b.numerator), math.gcd(a.denominator, b.denominator))


def lcm_of_denominators(values: Iterable[Fraction]) -> int:
    return math.lcm(1, *(Fraction(v).denominator for v in values))


def integer_scaled(m: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], int]:
    """Return ``(D * m, D)`` with ``D`` the lcm of all entry denominators."""
    scale = lcm_of_denominators(x for row in m for x in row)
    return [[int(x * scale) for x in row] for row in m], scale
