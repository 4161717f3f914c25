"""Exact sign of the minimum of a quadratic form over a polyhedral cone.

Parametrizing the cone by its generators reduces the question to the
nonnegative orthant: with N[i][j] = B(g_i, g_j), the form is negative on
the cone iff t'Nt < 0 for some t >= 0.  By homogeneity that is a minimum
over the standard simplex, and every KKT point there satisfies
2 (N t)_i = lambda on its support with q(t) = lambda / 2, a *rational*
value from a rational linear system.  Enumerating supports therefore
computes the exact simplex minimum, with a rational witness, in pure
Fraction arithmetic: no eigenvalues, no floats.

Zeros of a copositive form on the orthant lie in kernels of principal
submatrices, whose orthant sections are rational cones; enumerating their
generators yields every zero direction up to conic combination.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Iterator

from . import lp
from .cones import PolyCone
from .rational import (F0, F1, Mat, Vec, add, is_zero, mat, nullspace,
                       scale, solve_affine, vec, zeros)

Bilinear = Callable[[Vec, Vec], Fraction]


def gram(gens: list[Vec], bform: Bilinear) -> Mat:
    return mat([[bform(g, h) for h in gens] for g in gens])


def _quad(n: Mat, t: Vec) -> Fraction:
    return sum((t[i] * n[i][j] * t[j] for i in range(len(t)) for j in range(len(t))), F0)


def _submatrix(n: Mat, s: tuple[int, ...]) -> Mat:
    return mat([[n[i][j] for j in s] for i in s])


def _embed(t: Vec, s: tuple[int, ...], k: int) -> Vec:
    out = [F0] * k
    for val, i in zip(t, s):
        out[i] = val
    return tuple(out)


def simplex_min(n: Mat) -> tuple[Fraction, Vec]:
    """Exact (min of t'Nt over the standard simplex, argmin).

    Support enumeration: on the support of a minimizer the KKT system
    2 N_S t = lambda, sum t = 1 holds, and q(t) = lambda/2 there.
    Degenerate KKT systems have affine solution sets along which the
    value is linear, so an exact LP finishes those off.
    """
    k = len(n)
    if k == 0:
        raise ValueError("empty form")
    best: Fraction | None = None
    arg: Vec | None = None
    for size in range(1, k + 1):
        for s in itertools.combinations(range(k), size):
            ns = _submatrix(n, s)
            # rows: 2 (N_S t) - lambda 1 = 0 ; sum t = 1, unknowns (t, lambda)
            rows = [tuple(2 * ns[i][j] for j in range(size)) + (Fraction(-1),)
                    for i in range(size)]
            rows.append((F1,) * size + (F0,))
            rhs = zeros(size) + (F1,)
            sol = solve_affine(mat(rows), rhs, size + 1)
            if sol is None:
                continue
            part, null = sol
            if not null:
                t, lam = part[:size], part[size]
                if all(x >= 0 for x in t):
                    val = lam / 2
                    if best is None or val < best:
                        best, arg = val, _embed(t, s, k)
                continue
            # minimize lambda/2 over {t(theta) >= 0}: exact LP in theta
            m = len(null)
            a_ub = mat([tuple(-null[j][i] for j in range(m)) for i in range(size)])
            b_ub = vec(part[:size])
            c = vec([null[j][size] for j in range(m)])
            status, theta, _ = lp.minimize(c, a_ub, b_ub)
            if status == lp.INFEASIBLE:
                continue
            # boundedness: t-components pin every nullspace direction, so the
            # value is a continuous function on a compact simplex face
            assert status == lp.OPTIMAL, "degenerate KKT branch cannot be unbounded"
            t = list(part[:size])
            lam = part[size]
            for j in range(m):
                lam += null[j][size] * theta[j]
                for i in range(size):
                    t[i] += null[j][i] * theta[j]
            if all(x >= 0 for x in t):
                val = lam / 2
                if best is None or val < best:
                    best, arg = val, _embed(tuple(t), s, k)
    assert best is not None and arg is not None  # singleton supports always qualify
    return best, arg


def orthant_min_sign(n: Mat) -> tuple[int, Vec | None]:
    """Sign of min {t'Nt : t >= 0, t != 0} with a rational witness for
    NEGATIVE (-1) and ZERO (0) answers; +1 certifies strict positivity."""
    k = len(n)
    if k == 0:
        return 1, None
    val, arg = simplex_min(n)
    if val < 0:
        return -1, arg
    if val > 0:
        return 1, None
    for t in orthant_zero_witnesses(n):
        return 0, t
    return 0, arg


def orthant_zero_witnesses(n: Mat) -> Iterator[Vec]:
    """All generators of {t >= 0 : t'Nt = 0} assuming the form is
    copositive on the orthant: zeros are kernel points of principal
    submatrices, a finite union of rational cones."""
    k = len(n)
    seen: set[Vec] = set()
    for size in range(1, k + 1):
        for s in itertools.combinations(range(k), size):
            ns = _submatrix(n, s)
            if not nullspace(ns, size):
                continue
            rows = list(ns) + [tuple(-x for x in row) for row in ns]
            rows += [tuple(-F1 if j == i else F0 for j in range(size))
                     for i in range(size)]
            cone = PolyCone.from_inequalities(mat(rows), size)
            # contained in the orthant, so pointed: rays only, all >= 0
            for g in cone.rays:
                t = _embed(vec(g), s, k)
                if t not in seen and _quad(n, t) == 0:
                    seen.add(t)
                    yield t


def cone_form_min_sign(cone: PolyCone, bform: Bilinear) -> tuple[int, Vec | None]:
    """Sign of min of the form over cone \\ {0}; witness is a cone point."""
    gens = cone.generators()
    if not gens:
        return 1, None
    n = gram(gens, bform)
    sign, t = orthant_min_sign(n)
    if sign < 0:
        return -1, _combine(gens, t)
    if sign > 0:
        return 1, None
    # Zero answers must map to a nonzero cone point to count.
    for t in orthant_zero_witnesses(n):
        v = _combine(gens, t)
        if not is_zero(v):
            return 0, v
    return 1, None


def cone_zero_points(cone: PolyCone, bform: Bilinear) -> Iterator[Vec]:
    """Nonzero cone points where a (cone-)copositive form vanishes."""
    gens = cone.generators()
    if not gens:
        return
    n = gram(gens, bform)
    for t in orthant_zero_witnesses(n):
        v = _combine(gens, t)
        if not is_zero(v):
            yield v


def _combine(gens: list[Vec], t: Vec) -> Vec:
    out = zeros(len(gens[0]))
    for g, w in zip(gens, t):
        if w != 0:
            out = add(out, scale(vec(g), w))
    return out


def cone_form_nonnegative(cone: PolyCone, bform: Bilinear) -> tuple[bool, Vec | None]:
    """(form >= 0 on cone, counterexample point if not)."""
    sign, w = cone_form_min_sign(cone, bform)
    return (sign >= 0), (w if sign < 0 else None)
