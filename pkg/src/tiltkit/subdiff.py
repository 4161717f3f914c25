"""First-order objects: subdifferentials, their inverses, and distances.

For the exact class the limiting subdifferential is gradient + limiting
normal cone of the domain union (the smooth-plus-indicator sum rule is an
identity here), so membership and inverse images are decided exactly.
The analytic 1-D path returns certified interval enclosures built from
derivative limit sampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cells import limiting_normal_cone, regular_normal_cone
from .cones import ConeUnion
from .model import AnalyticFixture1D, FunctionSpec, ValidationError, evaluate_exact
from .polyhedra import ConvexPolyhedron
from .project import distance_to_cone, distance_to_polyhedron
from .rational import Vec, dot, matvec, neg, sub, to_float, vec


class EmptySliceError(ValueError):
    """Inverse image is empty inside the requested box (not distance 0)."""


@dataclass(frozen=True)
class ExactSubdifferential:
    """base + union of polyhedral cones; membership is exact."""
    base: Vec
    cones: ConeUnion

    def contains(self, v) -> bool:
        return self.cones.contains(sub(vec(v), self.base))

    def distance(self, v) -> float:
        w = np.asarray([float(t) for t in v], dtype=float) - \
            np.asarray(to_float(self.base))
        best = math.inf
        for piece in self.cones.pieces:
            if piece.is_trivial():
                best = min(best, float(np.linalg.norm(w)))
            else:
                best = min(best, distance_to_cone(w, piece))
        return best

    def is_singleton(self) -> bool:
        return all(p.is_trivial() for p in self.cones.pieces)


@dataclass(frozen=True)
class Interval1D:
    """Certified enclosure [lo, hi] of a 1-D subdifferential value."""
    lo: float
    hi: float
    tol: float = 1e-9

    def contains(self, v) -> bool:
        t = float(v[0]) if isinstance(v, (tuple, list)) else float(v)
        return self.lo - self.tol <= t <= self.hi + self.tol

    def distance(self, v) -> float:
        t = float(v[0]) if isinstance(v, (tuple, list)) else float(v)
        return max(self.lo - t, t - self.hi, 0.0)


SubdifferentialSet = ExactSubdifferential | Interval1D


def _require_finite(f: FunctionSpec, x) -> None:
    if f.is_exact:
        if evaluate_exact(f, x) is None:
            raise ValidationError("point is outside the domain")
    else:
        t = float(x[0]) if isinstance(x, (tuple, list)) else float(x)
        if not f.fixture.in_domain(t):
            raise ValidationError("point is outside the domain")


def subdifferential(f: FunctionSpec, x) -> SubdifferentialSet:
    """The limiting subdifferential at x."""
    _require_finite(f, x)
    if f.is_exact:
        x = vec(x)
        ks = f.domain.pieces_containing(x)
        if len(ks) == 1:
            # a closed piece alone near x: limiting = convex normal cone
            cone = f.domain.pieces[ks[0]].normal_cone(x)
            cones = ConeUnion([cone], f.dim)
        else:
            cones = limiting_normal_cone(f.domain, x)
        return ExactSubdifferential(f.smooth.gradient(x), cones)
    return _analytic_subdifferential(f.fixture, x, regular=False)


def frechet_subdifferential(f: FunctionSpec, x) -> SubdifferentialSet:
    """The regular subdifferential at x; convex-valued."""
    _require_finite(f, x)
    if f.is_exact:
        x = vec(x)
        cone = regular_normal_cone(f.domain, x)
        return ExactSubdifferential(f.smooth.gradient(x), ConeUnion([cone], f.dim))
    return _analytic_subdifferential(f.fixture, x, regular=True)


def subdifferential_distance(f: FunctionSpec, x, v) -> float:
    """d(v; subdifferential at x), accurate to ~1e-10."""
    sd = subdifferential(f, x)
    if f.is_exact:
        # floats are exact binary rationals, so the zero fast path is exact
        v_exact = tuple(Fraction(t) for t in v)
        if sd.contains(v_exact):
            return 0.0
    return sd.distance(v)


# -- analytic path --------------------------------------------------------------


def _analytic_subdifferential(fx: AnalyticFixture1D, x, regular: bool,
                              n_samples: int = 10_000) -> Interval1D:
    t = float(x[0]) if isinstance(x, (tuple, list)) else float(x)
    if not any(abs(t - e) < 1e-12 for e in fx.exceptional):
        interior_lo = t > fx.lo + 1e-12
        interior_hi = t < fx.hi - 1e-12
        if interior_lo and interior_hi:
            d = float(fx.derivative(t))
            return Interval1D(d, d)
        # domain boundary: one-sided linearizations open the interval
        d = float(fx.derivative(t))
        lo = -math.inf if not interior_lo else d
        hi = math.inf if not interior_hi else d
        return Interval1D(lo, hi)
    return _exceptional_enclosure(fx, t, n_samples)


def _exceptional_enclosure(fx: AnalyticFixture1D, t: float, n_samples: int) -> Interval1D:
    """Hull of derivative cluster values on geometric approach sequences,
    widened by domain-boundary one-sided behavior.  An enclosure, not an
    exact value."""
    ratio = (1e-8) ** (2.0 / n_samples)
    offsets = 0.05 * np.power(ratio, np.arange(n_samples // 2))
    vals = []
    for sgn in (+1.0, -1.0):
        xs = t + sgn * offsets
        mask = (xs > fx.lo + 1e-300) & (xs < fx.hi) & (np.abs(xs - t) > 1e-14)
        if mask.any():
            vals.append(np.asarray(fx.derivative(xs[mask]), dtype=float))
    lo, hi = math.inf, -math.inf
    if vals:
        allv = np.concatenate(vals)
        lo, hi = float(allv.min()), float(allv.max())
    at_left_boundary = abs(t - fx.lo) < 1e-12
    at_right_boundary = abs(t - fx.hi) < 1e-12
    if at_left_boundary:
        lo = -math.inf
    if at_right_boundary:
        hi = math.inf
    return Interval1D(lo, hi, tol=1e-6)


def stationary_points_1d(fixture: AnalyticFixture1D, interval: tuple[float, float],
                         grid_density: int, target: float = 0.0) -> list[float]:
    """Roots of derivative == target inside the interval: sign-change
    bracketing on a uniform grid, then bisection to 1e-12."""
    lo, hi = interval
    xs = np.linspace(lo, hi, grid_density)
    ds = np.asarray(fixture.derivative(xs), dtype=float) - target
    roots: list[float] = []
    sign = np.sign(ds)
    for i in np.nonzero(sign[:-1] * sign[1:] < 0)[0]:
        a, b = float(xs[i]), float(xs[i + 1])
        fa = float(ds[i])
        for _ in range(80):
            m = 0.5 * (a + b)
            fm = float(fixture.derivative(m)) - target
            if fm == 0.0 or (b - a) < 1e-12:
                break
            if (fa < 0) == (fm < 0):
                a, fa = m, fm
            else:
                b = m
        roots.append(0.5 * (a + b))
    for i in np.nonzero(ds == 0.0)[0]:
        roots.append(float(xs[i]))
    return sorted(set(roots))


def analytic_inverse_points(fixture: AnalyticFixture1D, vstar: float,
                            center: float, radius: float,
                            grid_density: int = 20001) -> list[float]:
    """Points x near `center` with vstar in the subdifferential enclosure."""
    lo = max(center - radius, fixture.lo)
    hi = min(center + radius, fixture.hi)
    pts = []
    if hi > lo:
        eps = (hi - lo) * 1e-9
        pts = stationary_points_1d(fixture, (lo + eps, hi - eps), grid_density,
                                   target=vstar)
    for e in fixture.exceptional:
        if lo <= e <= hi and _exceptional_enclosure(fixture, e, 2000).contains(vstar):
            pts.append(e)
    for b in (fixture.lo, fixture.hi):
        if math.isfinite(b) and lo <= b <= hi and b not in pts:
            if _analytic_subdifferential(fixture, b, regular=False).contains(vstar):
                pts.append(b)
    return sorted(set(pts))


# -- inverse images (exact path) -------------------------------------------------


@dataclass(frozen=True)
class InverseSlice:
    """(subdifferential)^{-1}(v) intersected with a bounding box, as an
    exact finite union of polyhedra; `truncated` flags pre-box
    unboundedness."""
    v: Vec
    box: ConvexPolyhedron
    pieces: tuple[ConvexPolyhedron, ...]
    truncated: bool

    def contains(self, x) -> bool:
        return any(p.contains(x) for p in self.pieces)

    def is_empty(self) -> bool:
        return not self.pieces


def inverse_image(f: FunctionSpec, v, box: ConvexPolyhedron) -> InverseSlice:
    """All x in box with v in the subdifferential at x.

    Per signature cell the normal-cone value is a fixed convex cone C and
    the condition v - Qx - c in C is affine-polyhedral in x, so the slice
    is an exact finite union of polyhedra.  Cached per (v, box): the
    estimators revisit the same tilted subgradients many times.
    """
    if not f.is_exact:
        raise ValidationError("inverse_image needs the exact variant "
                              "(use analytic_inverse_points)")
    v = vec(v)
    cache = getattr(f, "_inverse_cache", None)
    if cache is None:
        cache = {}
        f._inverse_cache = cache
    key = (v, box.a, box.b)
    hit = cache.get(key)
    if hit is not None:
        return hit
    q, c = f.smooth.q, f.smooth.c
    pieces: list[ConvexPolyhedron] = []
    truncated = False
    for cell in f.cells():
        rows = []
        rhs = []
        for g in cell.value.ineqs:
            gq = matvec(q, vec(g))  # Q symmetric: row g.Q
            rows.append(neg(gq))
            rhs.append(dot(vec(g), c) - dot(vec(g), v))
        candidate = cell.closure.with_rows(rows, rhs) if rows else cell.closure
        if candidate.is_empty():
            continue
        if not candidate.is_bounded():
            truncated = True
        boxed = candidate.intersect(box)
        if not boxed.is_empty():
            pieces.append(boxed)
    out = InverseSlice(v, box, tuple(pieces), truncated)
    cache[key] = out
    return out


def distance_to_inverse(f: FunctionSpec, v, x, box: ConvexPolyhedron,
                        slice_: InverseSlice | None = None) -> float:
    """min distance from x to the inverse slice; raises EmptySliceError
    when the slice has no pieces (reported distinctly, never as 0)."""
    s = slice_ if slice_ is not None else inverse_image(f, v, box)
    if s.is_empty():
        raise EmptySliceError(f"inverse image of {to_float(vec(v))} misses the box")
    z = np.asarray([float(t) for t in x], dtype=float)
    return min(distance_to_polyhedron(z, p) for p in s.pieces)
