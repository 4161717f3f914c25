"""Exact rational vectors, matrices, and the small linear algebra the
polyhedral machinery needs.

Vectors are tuples of Fraction, matrices tuples of row tuples.  Everything
here is pure and allocation-cheap; callers rely on exactness, not speed.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]

F0 = Fraction(0)
F1 = Fraction(1)


def frac(x) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to Fraction.

    Float input is rejected: the exact path must never silently absorb
    binary rounding from upstream.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected exact rational, got {type(x).__name__}: {x!r}")


def vec(xs: Iterable) -> Vec:
    return tuple(frac(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Mat:
    return tuple(vec(r) for r in rows)


def zeros(n: int) -> Vec:
    return (F0,) * n


def unit(n: int, i: int) -> Vec:
    return tuple(F1 if j == i else F0 for j in range(n))


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return sum((x * y for x, y in zip(a, b)), F0)


def add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def scale(a: Vec, s: Fraction) -> Vec:
    return tuple(x * s for x in a)


def neg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def matvec(m: Mat, x: Sequence[Fraction]) -> Vec:
    return tuple(dot(row, x) for row in m)


def mat_t(m: Mat) -> Mat:
    if not m:
        return ()
    return tuple(zip(*m))


def norm_sq(a: Sequence[Fraction]) -> Fraction:
    return sum((x * x for x in a), F0)


def is_zero(a: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in a)


def to_float(a: Sequence[Fraction]) -> tuple[float, ...]:
    return tuple(float(x) for x in a)


def primitive(a: Vec) -> Vec:
    """Scale a nonzero rational vector to integer entries with gcd 1.

    The positive scaling keeps ray directions; the first nonzero entry's
    sign is preserved.
    """
    if is_zero(a):
        return a
    den = math.lcm(*(x.denominator for x in a))
    ints = [int(x * den) for x in a]
    g = math.gcd(*(abs(v) for v in ints))
    return tuple(Fraction(v, g) for v in ints)


def rref(m: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form; returns (rref, pivot column indices)."""
    rows = [list(r) for r in m]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in rows), pivots


def rank(m: Mat) -> int:
    return len(rref(m)[1])


def nullspace(m: Mat, n: int | None = None) -> list[Vec]:
    """Basis of {x : m x = 0}.  `n` gives the ambient dimension when m
    has no rows."""
    if not m:
        if n is None:
            raise ValueError("nullspace of empty matrix needs explicit dimension")
        return [unit(n, i) for i in range(n)]
    ncols = len(m[0])
    red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [F0] * ncols
        v[fc] = F1
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(tuple(v))
    return basis


def solve(m: Mat, b: Vec) -> Vec | None:
    """One solution of m x = b, or None when inconsistent."""
    if not m:
        return None
    ncols = len(m[0])
    aug = tuple(row + (bi,) for row, bi in zip(m, b))
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [F0] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return tuple(x)


def solve_affine(m: Mat, b: Vec, n: int | None = None) -> tuple[Vec, list[Vec]] | None:
    """Full solution set of m x = b as (particular, nullspace basis)."""
    if not m:
        if n is None:
            raise ValueError("empty system needs explicit dimension")
        return zeros(n), [unit(n, i) for i in range(n)]
    x0 = solve(m, b)
    if x0 is None:
        return None
    return x0, nullspace(m, len(m[0]))


def row_space_basis(rows: Iterable[Vec], n: int) -> list[Vec]:
    m = tuple(r for r in rows if not is_zero(r))
    if not m:
        return []
    red, pivots = rref(m)
    return [red[i] for i in range(len(pivots))]


def inertia(s: Mat) -> tuple[int, int, int]:
    """(n_plus, n_minus, n_zero) of a symmetric rational matrix.

    Symmetric congruence reduction: diagonal pivots when available, else a
    hyperbolic pair is diagonalized by adding one row/column into another.
    Sylvester's law makes the result basis-independent.
    """
    a = [list(r) for r in s]
    n = len(a)
    for i in range(n):
        for j in range(n):
            if a[i][j] != a[j][i]:
                raise ValueError("inertia needs a symmetric matrix")
    pos = neg_count = zero = 0
    idx = list(range(n))
    while idx:
        p = next((i for i in idx if a[i][i] != 0), None)
        if p is None:
            pair = next(((i, j) for i in idx for j in idx if i < j and a[i][j] != 0), None)
            if pair is None:
                zero += len(idx)
                break
            i, j = pair
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            continue
        piv = a[p][p]
        if piv > 0:
            pos += 1
        else:
            neg_count += 1
        idx.remove(p)
        for i in idx:
            if a[i][p] != 0:
                f = a[i][p] / piv
                for k in range(n):
                    a[i][k] -= f * a[p][k]
                for k in range(n):
                    a[k][i] -= f * a[k][p]
    return pos, neg_count, zero


def is_psd(s: Mat) -> bool:
    return inertia(s)[1] == 0


def format_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
