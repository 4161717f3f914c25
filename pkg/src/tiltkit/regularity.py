"""Moduli estimation and inequality checking: metric (sub)regularity,
quadratic growth, prox-type lower estimates, uniform growth, localization
single-valuedness, tilt stability, and the paired norm/pairing conditions
on the regular graph normal cone.

Estimates are deterministic lattice suprema/infima with a refinement
convergence flag (two successive refinements within 2% relative); they
are grid bounds, stated as such, never certified global moduli.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cells import regular_normal_cone
from .copositive import cone_form_nonnegative
from .model import FunctionSpec, ProblemInstance, ValidationError, evaluate_exact
from .polyhedra import ConvexPolyhedron
from .rational import (F0, Vec, add, dot, frac, mat, matvec, neg, norm_sq,
                       scale, sub, to_float, vec, zeros)
from .subdiff import (EmptySliceError, InverseSlice, analytic_inverse_points,
                      distance_to_inverse, inverse_image, subdifferential,
                      subdifferential_distance)

TIE_TOL = 1e-9
DIST_TOL = 1e-10


# -- grids ---------------------------------------------------------------------


def ball_lattice(center: Vec, radius: Fraction, per_axis: int) -> list[Vec]:
    """Rational lattice on the box, filtered to the Euclidean ball (exact)."""
    n = len(center)
    radius = frac(radius)
    steps = [center[i] - radius + Fraction(2 * k, per_axis - 1) * radius
             for i in range(1) for k in range(per_axis)]
    axes = []
    for i in range(n):
        axes.append([center[i] - radius + Fraction(2 * k, per_axis - 1) * radius
                     for k in range(per_axis)])
    rr = radius * radius
    out = []
    for pt in itertools.product(*axes):
        d = sum(((pt[i] - center[i]) ** 2 for i in range(n)), F0)
        if d <= rr:
            out.append(tuple(pt))
    return out


def domain_lattice(f: FunctionSpec, center: Vec, radius: Fraction,
                   per_axis: int) -> list[Vec]:
    pts = ball_lattice(center, radius, per_axis)
    return [p for p in pts if f.domain.contains(p)]


def domain_lattice_zoomed(f: FunctionSpec, center: Vec, radius: Fraction,
                          per_axis: int, scales: int = 13) -> list[Vec]:
    """Lattice plus geometrically shrunken copies toward the center.

    Prox-type inequalities fail asymptotically close to the reference
    point; a fixed-pitch lattice cannot see that, shrunken copies can.
    """
    base = domain_lattice(f, center, radius, per_axis)
    seen = set(base)
    out = list(base)
    for k in range(1, scales + 1):
        w = Fraction(1, 2 ** k)
        for p in base:
            q = tuple(center[i] + (p[i] - center[i]) * w for i in range(len(center)))
            if q not in seen and f.domain.contains(q):
                seen.add(q)
                out.append(q)
    return out


def _refinement_schedule(base: int, levels: int) -> list[int]:
    out = [base]
    for _ in range(levels - 1):
        out.append(out[-1] * 2 - 1)
    return out


# -- graph sampling -------------------------------------------------------------


def graph_point_samples(f: FunctionSpec, xbar: Vec, xstar: Vec,
                        radius: Fraction, max_per_piece: int = 60) -> list[tuple[Vec, Vec]]:
    """Exact points of gph of the subdifferential within the radius ball
    around the reference pair: vertices, midpoints, and centroids of the
    boxed graph pieces."""
    from .hessian import second_order_map

    som = second_order_map(f, xbar, xstar)
    n = f.dim
    base = tuple(xbar) + tuple(xstar)
    box = ConvexPolyhedron.box(base, frac(radius))
    rr = frac(radius) ** 2
    seen: set[Vec] = set()
    out: list[tuple[Vec, Vec]] = []

    def push(p: Vec) -> None:
        if p in seen:
            return
        seen.add(p)
        d = sum(((p[i] - base[i]) ** 2 for i in range(2 * n)), F0)
        if d <= rr:
            out.append((p[:n], p[n:]))

    push(base)
    for piece in som.model.pieces:
        clipped = piece.intersect(box)
        if clipped.is_empty():
            continue
        pts, _, _ = clipped.vrep()
        pts = pts[:max_per_piece]
        for p in pts:
            push(p)
        for p, q in itertools.combinations(pts, 2):
            push(tuple((a + b) / 2 for a, b in zip(p, q)))
        if pts:
            k = len(pts)
            push(tuple(sum(p[i] for p in pts) / k for i in range(2 * n)))
    return out


# -- reports ---------------------------------------------------------------------


@dataclass
class ModulusEstimate:
    value: float
    radius: float
    density: int
    refinement_level: int
    converged: bool
    witness: tuple | None
    history: list[float] = field(default_factory=list)
    failure: str | None = None

    @property
    def failed(self) -> bool:
        return self.failure is not None


@dataclass
class GrowthReport:
    mode: str
    alpha: float
    eta: float
    violations: list
    checked: int
    alpha_hat: float | None = None

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass
class CheckOutcome:
    passed: bool
    violations: list
    worst: float
    checked: int


@dataclass
class LocalizationReport:
    holds_on_grid: bool
    witness_tilt: tuple | None
    witness_points: list
    lipschitz: float | None


@dataclass
class TiltReport:
    verdict: str  # "stable" | "unstable"
    gamma: float
    rho: float
    modulus: float | None
    witness_tilt: tuple | None
    witness_minimizers: list
    argmin_map: list


# -- growth and lower inequalities ------------------------------------------------


def _inverse_box(inst: ProblemInstance) -> ConvexPolyhedron:
    return ConvexPolyhedron.box(inst.xbar, inst.params.box_halfwidth)


def check_growth(inst: ProblemInstance, alpha, mode: str,
                 eta=None, per_axis: int | None = None,
                 n_points: int | None = None) -> GrowthReport:
    """Checks f(x) >= f(xbar) + <xstar, x-xbar> + alpha/2 * D(x)^2 on a grid
    in the eta-ball, D = distance to the solution set ("distance-squared")
    or to the reference point ("norm-squared")."""
    alpha_f = float(alpha)
    eta = inst.params.eta if eta is None else frac(eta) if not isinstance(eta, float) else eta
    if inst.f.is_exact:
        return _check_growth_exact(inst, alpha_f, mode, frac(eta),
                                   per_axis or inst.params.grid)
    return _check_growth_analytic(inst, alpha_f, mode, float(eta),
                                  n_points or 100_001)


def _check_growth_exact(inst, alpha: float, mode: str, eta: Fraction,
                        per_axis: int) -> GrowthReport:
    f = inst.f
    grid = domain_lattice(f, inst.xbar, eta, per_axis)
    fbar = float(evaluate_exact(f, inst.xbar))
    xstar_f = np.array(to_float(inst.xstar))
    xbar_f = np.array(to_float(inst.xbar))
    slice_ = inverse_image(f, inst.xstar, _inverse_box(inst)) \
        if mode == "distance-squared" else None
    violations = []
    for x in grid:
        xf = np.array(to_float(x))
        if mode == "distance-squared":
            d = distance_to_inverse(f, inst.xstar, xf, slice_.box, slice_)
        else:
            d = float(np.linalg.norm(xf - xbar_f))
        lhs = float(evaluate_exact(f, x))
        rhs = fbar + float(xstar_f @ (xf - xbar_f)) + 0.5 * alpha * d * d
        if lhs < rhs - TIE_TOL:
            violations.append((tuple(map(float, xf)), lhs, rhs))
    return GrowthReport(mode, alpha, float(eta), violations, len(grid))


def _check_growth_analytic(inst, alpha: float, mode: str, eta: float,
                           n_points: int) -> GrowthReport:
    fx = inst.f.fixture
    x0, v0 = float(inst.xbar[0]), float(inst.xstar[0])
    lo, hi = max(x0 - eta, fx.lo), min(x0 + eta, fx.hi)
    xs = np.linspace(lo, hi, n_points)
    vals = np.asarray(fx.value(xs), dtype=float)
    if mode == "norm-squared":
        d2 = np.square(xs - x0)
    else:
        pts = analytic_inverse_points(fx, v0, x0, 4 * eta)
        if not pts:
            raise EmptySliceError("no solutions of the stationarity inclusion nearby")
        d2 = np.min(np.square(xs[:, None] - np.array(pts)[None, :]), axis=1)
    f0 = float(fx.value(x0)) if fx.in_domain(x0) else math.inf
    rhs = f0 + v0 * (xs - x0) + 0.5 * alpha * d2
    bad = np.nonzero(vals < rhs - TIE_TOL)[0]
    violations = [((float(xs[i]),), float(vals[i]), float(rhs[i])) for i in bad[:50]]
    return GrowthReport(mode, alpha, eta, violations, n_points)


def growth_alpha_hat(inst: ProblemInstance, mode: str, eta=None,
                     per_axis: int | None = None, hi_cap: float = 2 ** 16) -> float:
    """Largest alpha (bisection, 1e-3 relative) with zero grid violations."""
    def ok(a: float) -> bool:
        return check_growth(inst, a, mode, eta=eta, per_axis=per_axis,
                            n_points=2001).passed

    if not ok(0.0):
        return -math.inf
    lo, hi = 0.0, 1.0
    while ok(hi) and hi < hi_cap:
        lo, hi = hi, hi * 2
    if hi >= hi_cap:
        return hi
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-3 * max(1.0, lo):
            break
    return lo


PROX_MODES = ("3.1", "3.3", "3.10", "2.8", "3.13", "3.15")


def check_lower_prox_inequality(inst: ProblemInstance, beta, mode: str,
                                per_axis: int | None = None) -> CheckOutcome:
    """Lower quadratic estimates along subgradients.

    Modes: "3.1" reference-point lower growth with squared distance to the
    solution set; "3.3" the same along solution/graph pairs; "3.10"
    reference-side estimate along graph pairs; "2.8" the prox-regularity
    inequality; "3.15" its two-sided neighborhood version; "3.13" the
    plain subgradient inequality (r = 0 case of "3.15").
    """
    if mode not in PROX_MODES:
        raise ValidationError(f"unknown mode {mode!r}; options {PROX_MODES}")
    if not inst.f.is_exact:
        raise ValidationError("prox-type checks need the exact variant")
    beta_f = float(beta)
    f = inst.f
    p = inst.params
    per_axis = per_axis or p.grid
    eta = p.eta
    xbar_f = np.array(to_float(inst.xbar))
    fbar = float(evaluate_exact(f, inst.xbar))
    grid = domain_lattice(f, inst.xbar, eta, per_axis)
    grid_f = [np.array(to_float(x)) for x in grid]
    fvals = [float(evaluate_exact(f, x)) for x in grid]
    violations = []
    worst = 0.0
    checked = 0

    def note(vio: float, payload) -> None:
        nonlocal worst
        if vio > TIE_TOL:
            violations.append(payload)
        worst = max(worst, vio)

    if mode == "3.1":
        slice_ = inverse_image(f, inst.xstar, _inverse_box(inst))
        xstar_f = np.array(to_float(inst.xstar))
        for x, xf, fx in zip(grid, grid_f, fvals):
            d = distance_to_inverse(f, inst.xstar, xf, slice_.box, slice_)
            rhs = fbar + float(xstar_f @ (xf - xbar_f)) - 0.5 * beta_f * d * d
            checked += 1
            note(rhs - fx, (tuple(map(float, xf)), fx, rhs))
        return CheckOutcome(not violations, violations, worst, checked)

    pairs = graph_point_samples(f, inst.xbar, inst.xstar, eta)
    if mode == "3.3":
        slice_ = inverse_image(f, inst.xstar, _inverse_box(inst))
        u_points = _slice_points(slice_, inst.xbar, eta)
        for u in u_points:
            fu = float(evaluate_exact(f, u))
            uf = np.array(to_float(u))
            for (x, xs) in pairs:
                xf = np.array(to_float(x))
                d = distance_to_inverse(f, inst.xstar, xf, slice_.box, slice_)
                rhs = float(evaluate_exact(f, x)) + \
                    float(np.array(to_float(xs)) @ (uf - xf)) - 0.5 * beta_f * d * d
                checked += 1
                note(rhs - fu, ((tuple(map(float, uf)), tuple(map(float, xf))), fu, rhs))
        return CheckOutcome(not violations, violations, worst, checked)

    if mode == "3.10":
        for (x, xs) in pairs:
            xf = np.array(to_float(x))
            fx = float(evaluate_exact(f, x))
            nrm2 = float(np.sum((xf - xbar_f) ** 2))
            rhs = fx + float(np.array(to_float(xs)) @ (xbar_f - xf)) - 0.5 * beta_f * nrm2
            checked += 1
            note(rhs - fbar, (tuple(map(float, xf)), fbar, rhs))
        return CheckOutcome(not violations, violations, worst, checked)

    # modes 2.8 / 3.15 / 3.13: full two-point neighborhood inequalities;
    # the x-grid is densified geometrically toward the reference point,
    # where prox failures concentrate
    zoomed = domain_lattice_zoomed(f, inst.xbar, eta, per_axis)
    grid_f = [np.array(to_float(x)) for x in zoomed]
    fvals = [float(evaluate_exact(f, x)) for x in zoomed]
    r = 0.0 if mode == "3.13" else beta_f
    xstar_f = np.array(to_float(inst.xstar))
    for (u, us) in pairs:
        uf = np.array(to_float(u))
        usf = np.array(to_float(us))
        if mode == "2.8":
            if float(np.linalg.norm(usf - xstar_f)) > float(eta):
                continue
            fu_ = float(evaluate_exact(f, u))
            if abs(fu_ - fbar) > float(eta):
                continue
        fu = float(evaluate_exact(f, u))
        for xf, fx in zip(grid_f, fvals):
            rhs = fu + float(usf @ (xf - uf)) - 0.5 * r * float(np.sum((xf - uf) ** 2))
            checked += 1
            note(rhs - fx, ((tuple(map(float, uf)), tuple(map(float, usf)),
                             tuple(map(float, xf))), fx, rhs))
    return CheckOutcome(not violations, violations, worst, checked)


def minimal_prox_r(inst: ProblemInstance, mode: str = "2.8",
                   r_cap: float = 4096.0) -> tuple[float, CheckOutcome]:
    """Smallest r passing the chosen lower inequality on the grid, by
    bisection; math.inf when even r_cap fails (not prox-regular there)."""
    def outcome(r: float) -> CheckOutcome:
        return check_lower_prox_inequality(inst, r, mode, per_axis=7)

    out = outcome(0.0)
    if out.passed:
        return 0.0, out
    lo, hi = 0.0, 1.0
    while not outcome(hi).passed:
        hi *= 4
        if hi > r_cap:
            return math.inf, outcome(r_cap)
    for _ in range(30):
        mid = 0.5 * (lo + hi)
        if outcome(mid).passed:
            hi = mid
        else:
            lo = mid
        if hi - lo < 1e-3 * max(1.0, hi):
            break
    return hi, outcome(hi)


_slice_pts_cache: dict[tuple, list] = {}


def _slice_points(slice_: InverseSlice, center: Vec, radius: Fraction) -> list[Vec]:
    """Rational points of an inverse slice inside the radius ball (cached)."""
    key = (id(slice_), tuple(center), frac(radius))
    hit = _slice_pts_cache.get(key)
    if hit is not None:
        return hit
    rr = frac(radius) ** 2
    pts: list[Vec] = []
    for piece in slice_.pieces:
        clipped = piece.intersect(ConvexPolyhedron.box(center, radius))
        if clipped.is_empty():
            continue
        vs, _, _ = clipped.vrep()
        cand = list(vs)
        for pq in itertools.combinations(vs, 2):
            cand.append(tuple((a + b) / 2 for a, b in zip(*pq)))
        rp = clipped.relint_point()
        if rp is not None:
            cand.append(rp)
        for v in cand:
            if sum(((v[i] - center[i]) ** 2 for i in range(len(center))), F0) <= rr \
                    and v not in pts:
                pts.append(v)
    _slice_pts_cache[key] = pts
    return pts


# -- moduli -----------------------------------------------------------------------


def estimate_subregularity_modulus(inst: ProblemInstance) -> ModulusEstimate:
    """sup over grid x of d(x; solution set) / d(reference subgradient;
    subdifferential at x), with refinement until two levels agree to 2%."""
    p = inst.params
    if not inst.f.is_exact:
        return _subregularity_analytic(inst)
    f = inst.f
    box = _inverse_box(inst)
    try:
        slice_ = inverse_image(f, inst.xstar, box)
    except EmptySliceError:
        raise
    if slice_.is_empty():
        return ModulusEstimate(math.inf, float(p.eta), p.grid, 0, False, None,
                               failure="empty solution slice")
    history = []
    witness = None
    for level, per_axis in enumerate(_refinement_schedule(p.grid, p.refine_max)):
        best = 0.0
        for x in domain_lattice(f, inst.xbar, p.eta, per_axis):
            if slice_.contains(x):
                continue
            xf = np.array(to_float(x))
            num = distance_to_inverse(f, inst.xstar, xf, box, slice_)
            den = subdifferential_distance(f, x, to_float(inst.xstar))
            if den <= DIST_TOL:
                continue
            ratio = num / den
            if ratio > best:
                best, witness = ratio, tuple(map(float, xf))
        history.append(best)
        if level > 0 and abs(history[-1] - history[-2]) <= 0.02 * max(history[-1], 1e-300):
            return ModulusEstimate(history[-1], float(p.eta), per_axis, level, True,
                                   witness, history)
    return ModulusEstimate(history[-1], float(p.eta), per_axis, len(history) - 1,
                           False, witness, history)


def _subregularity_analytic(inst: ProblemInstance) -> ModulusEstimate:
    fx = inst.f.fixture
    p = inst.params
    x0, v0 = float(inst.xbar[0]), float(inst.xstar[0])
    pts = analytic_inverse_points(fx, v0, x0, 4 * float(p.eta))
    if not pts:
        return ModulusEstimate(math.inf, float(p.eta), p.grid, 0, False, None,
                               failure="empty solution slice")
    arr = np.array(pts)
    history = []
    witness = None
    for level, n_pts in enumerate([2001, 4001, 8001][: p.refine_max]):
        lo = max(x0 - float(p.eta), fx.lo)
        hi = min(x0 + float(p.eta), fx.hi)
        xs = np.linspace(lo, hi, n_pts)
        best = 0.0
        for x in xs:
            num = float(np.min(np.abs(arr - x)))
            if num < 1e-12:
                continue
            den = subdifferential_distance(inst.f, (float(x),), (v0,))
            if den <= DIST_TOL:
                continue
            ratio = num / den
            if ratio > best:
                best, witness = ratio, (float(x),)
        history.append(best)
        if level > 0 and abs(history[-1] - history[-2]) <= 0.02 * max(history[-1], 1e-300):
            return ModulusEstimate(best, float(p.eta), n_pts, level, True, witness, history)
    return ModulusEstimate(history[-1], float(p.eta), n_pts, len(history) - 1, False,
                           witness, history)


def estimate_metric_regularity_modulus(inst: ProblemInstance) -> ModulusEstimate:
    """sup over x and y grids of d(x; preimage of y) / d(y; value at x);
    an empty preimage for some y is failure of metric regularity and is
    reported as such (unbounded ratio), never silently skipped."""
    if not inst.f.is_exact:
        raise ValidationError("metric regularity estimation needs the exact variant")
    f = inst.f
    p = inst.params
    box = _inverse_box(inst)
    history = []
    witness = None
    x_schedule = _refinement_schedule(p.grid, p.refine_max)
    y_schedule = _refinement_schedule(max(3, p.grid // 2 + 1), p.refine_max)
    per_axis = x_schedule[0]
    for level, (nx, ny) in enumerate(zip(x_schedule, y_schedule)):
        per_axis = nx
        best = 0.0
        xs = domain_lattice(f, inst.xbar, p.eta, nx)
        ys = ball_lattice(inst.xstar, p.delta, ny)
        slices = {}
        for y in ys:
            slices[y] = inverse_image(f, y, box)
            if slices[y].is_empty():
                return ModulusEstimate(
                    math.inf, float(p.eta), nx, level, False, tuple(map(float, to_float(y))),
                    history, failure=f"empty preimage at y={to_float(y)}")
        for x in xs:
            xf = np.array(to_float(x))
            sd = subdifferential(f, x)
            for y in ys:
                if sd.contains(y):
                    continue
                den = sd.distance(to_float(y))
                if den <= DIST_TOL:
                    continue
                num = distance_to_inverse(f, y, xf, box, slices[y])
                ratio = num / den
                if ratio > best:
                    best, witness = ratio, (tuple(map(float, xf)),
                                            tuple(map(float, to_float(y))))
        history.append(best)
        if level > 0 and abs(history[-1] - history[-2]) <= 0.02 * max(history[-1], 1e-300):
            return ModulusEstimate(best, float(p.eta), per_axis, level, True,
                                   witness, history)
    return ModulusEstimate(history[-1], float(p.eta), per_axis, len(history) - 1,
                           False, witness, history)


def check_uniform_growth(inst: ProblemInstance, kappa) -> CheckOutcome:
    """For each tilted subgradient on the delta-grid, some solution point
    must dominate the 1/(2 kappa) growth inequality against the whole
    x-grid; a grid can only refute, never confirm."""
    if not inst.f.is_exact:
        raise ValidationError("exact variant only")
    f = inst.f
    p = inst.params
    kappa_f = float(kappa)
    box = _inverse_box(inst)
    xs = domain_lattice(f, inst.xbar, p.eta, p.grid)
    xs_f = [np.array(to_float(x)) for x in xs]
    fvals = [float(evaluate_exact(f, x)) for x in xs]
    violations = []
    checked = 0
    for ustar in ball_lattice(inst.xstar, p.delta, max(3, p.grid // 2 + 1)):
        slice_ = inverse_image(f, ustar, box)
        cands = _slice_points(slice_, inst.xbar, p.eta)
        usf = np.array(to_float(ustar))
        ok = False
        for u in cands:
            uf = np.array(to_float(u))
            fu = float(evaluate_exact(f, u))
            good = True
            for xf, fx in zip(xs_f, fvals):
                rhs = fu + float(usf @ (xf - uf)) + \
                    float(np.sum((xf - uf) ** 2)) / (2 * kappa_f)
                if fx < rhs - TIE_TOL:
                    good = False
                    break
            if good:
                ok = True
                break
        checked += 1
        if not ok:
            violations.append(tuple(map(float, usf)))
    return CheckOutcome(not violations, violations,
                        float(len(violations)), checked)


def check_single_valued_localization(inst: ProblemInstance) -> LocalizationReport:
    """Grid refutation of single-valuedness of the localized inverse:
    fails when some tilted subgradient has a solution slice of diameter
    beyond tolerance (or several separated pieces).  All grid failures are
    collected and the most symmetric witness (smallest component-magnitude
    spread) is reported."""
    if not inst.f.is_exact:
        raise ValidationError("exact variant only")
    f = inst.f
    p = inst.params
    box = _inverse_box(inst)
    points: dict[Vec, np.ndarray] = {}
    failures: list[tuple[float, tuple, list]] = []
    for ustar in ball_lattice(inst.xstar, p.delta, max(3, p.grid // 2 + 1)):
        slice_ = inverse_image(f, ustar, box)
        cands = _slice_points(slice_, inst.xbar, p.eta)
        if not cands:
            continue
        arr = np.array([to_float(c) for c in cands], dtype=float)
        dia = 0.0
        pair = None
        for i in range(len(arr)):
            for j in range(i + 1, len(arr)):
                d = float(np.linalg.norm(arr[i] - arr[j]))
                if d > dia:
                    dia, pair = d, (arr[i], arr[j])
        if dia > TIE_TOL:
            uf = tuple(map(float, to_float(ustar)))
            mags = sorted(abs(t) for t in uf)
            spread = mags[-1] - mags[0] if uf else 0.0
            failures.append((spread, uf, [tuple(map(float, q)) for q in pair]))
            continue
        points[ustar] = arr[0]
    if failures:
        failures.sort(key=lambda rec: (rec[0], rec[1]))
        spread, uf, pair = failures[0]
        return LocalizationReport(False, uf, pair, None)
    lip = 0.0
    keys = list(points)
    for i in range(len(keys)):
        for j in range(i + 1, len(keys)):
            du = float(np.linalg.norm(np.array(to_float(keys[i])) -
                                      np.array(to_float(keys[j]))))
            if du > 1e-12:
                lip = max(lip, float(np.linalg.norm(points[keys[i]] -
                                                    points[keys[j]])) / du)
    return LocalizationReport(True, None, [], lip if points else None)


# -- tilt stability ----------------------------------------------------------------


@dataclass
class TiltSolve:
    minimizers: list[tuple[float, ...]]
    value: float
    flat: bool  # argmin contains a nontrivial face


def solve_tilt(inst: ProblemInstance, tilt) -> TiltSolve:
    """Exact-candidate global solve of min f(x) - <tilt, x> over the
    gamma-ball: per domain cell face, interior critical points are exact
    rational solves; ball-boundary candidates come from a secular-equation
    solve on the face's affine hull.  All minimizers within 1e-9 of the
    best value are returned (ties are a verdict, not an error)."""
    if not inst.f.is_exact:
        raise ValidationError("exact variant only")
    f = inst.f
    n = f.dim
    if n > 3:
        raise ValidationError("tilt solves are limited to ambient dimension <= 3")
    p = inst.params
    tilt = vec(tilt)
    gamma = p.gamma
    q, lin = f.smooth.q, sub(f.smooth.c, tilt)
    d0 = f.smooth.d
    xbar = inst.xbar
    gamma_f = float(gamma)
    xbar_f = np.array(to_float(xbar))
    qf = np.array([[float(v) for v in row] for row in q])
    lin_f = np.array(to_float(lin))

    def obj_f(x: np.ndarray) -> float:
        return 0.5 * float(x @ qf @ x) + float(lin_f @ x) + float(d0)

    cand: list[tuple[np.ndarray, float, bool]] = []  # (point, value, flat)

    for piece in f.domain.pieces:
        for _, face in piece.faces():
            try:
                p0, dirs = face.affine_hull()
            except ValueError:
                continue
            cand.extend(_face_candidates(face, p0, dirs, q, lin, d0, piece,
                                         xbar, gamma, obj_f))
            cand.extend(_ball_boundary_candidates(face, p0, dirs, qf, lin_f,
                                                  float(d0), piece, xbar_f,
                                                  gamma_f, obj_f))
    if not cand:
        raise ValidationError("empty feasible region for the tilt problem")
    best = min(v for _, v, _ in cand)
    mins: list[np.ndarray] = []
    flat = False
    for x, v, fl in cand:
        if v <= best + TIE_TOL:
            if not any(np.linalg.norm(x - m) <= 1e-7 for m in mins):
                mins.append(x)
            flat = flat or fl
    return TiltSolve([tuple(map(float, m)) for m in mins], best, flat)


def _face_candidates(face, p0, dirs, q, lin, d0, piece, xbar, gamma, obj_f):
    from .rational import solve_affine, mat as _mat

    out = []
    n = len(p0)
    gamma2 = gamma * gamma
    if not dirs:
        if piece.contains(p0) and norm_sq(sub(p0, xbar)) <= gamma2:
            xf = np.array(to_float(p0))
            out.append((xf, obj_f(xf), False))
        return out
    h = _mat([[dot(bi, matvec(q, bj)) for bj in dirs] for bi in dirs])
    g = vec([dot(bi, add(matvec(q, p0), lin)) for bi in dirs])
    sol = solve_affine(h, neg(g), len(dirs))
    if sol is None:
        return out
    s0, null = sol
    x0 = add(p0, _combine(dirs, s0))
    if not null:
        if piece.contains(x0) and norm_sq(sub(x0, xbar)) <= gamma2:
            xf = np.array(to_float(x0))
            out.append((xf, obj_f(xf), False))
        return out
    # flat critical set: an affine subset with constant objective
    sol_dirs = [_combine(dirs, t) for t in null]
    crit = _affine_in_polyhedron(x0, sol_dirs, piece, xbar, gamma)
    for pt in crit:
        xf = np.array(to_float(pt))
        if norm_sq(sub(pt, xbar)) <= gamma2:
            out.append((xf, obj_f(xf), True))
    # ball clips along the flat set keep witnesses inside the ball
    pts_in = [np.array(to_float(pt)) for pt in crit
              if norm_sq(sub(pt, xbar)) <= gamma2]
    pts_out = [np.array(to_float(pt)) for pt in crit
               if norm_sq(sub(pt, xbar)) > gamma2]
    xbar_f = np.array(to_float(xbar))
    for a in pts_in:
        for b in pts_out:
            t = _ball_clip(a, b, xbar_f, float(gamma))
            if t is not None:
                out.append((t, obj_f(t), True))
    return out


def _combine(dirs, coeffs):
    x = zeros(len(dirs[0])) if dirs else ()
    for d, t in zip(dirs, coeffs):
        x = add(x, scale(d, t))
    return x


def _affine_in_polyhedron(x0, sol_dirs, piece, xbar, gamma):
    """Vertex-style representatives of (x0 + span sol_dirs) inside the piece
    and the gamma box."""
    n = len(x0)
    rows = list(piece.a)
    rhs = list(piece.b)
    box = ConvexPolyhedron.box(xbar, gamma)
    rows += list(box.a)
    rhs += list(box.b)
    # parametrize x = x0 + S t
    m = len(sol_dirs)
    arows = []
    brows = []
    for row, bv in zip(rows, rhs):
        arows.append(tuple(dot(vec(row), s) for s in sol_dirs))
        brows.append(bv - dot(vec(row), x0))
    polyt = ConvexPolyhedron(mat(arows), vec(brows), dim=m)
    if polyt.is_empty():
        return []
    vs, _, _ = polyt.vrep()
    pts = [add(x0, _combine(sol_dirs, t)) for t in vs]
    rp = polyt.relint_point()
    if rp is not None:
        pts.append(add(x0, _combine(sol_dirs, rp)))
    return pts


def _ball_clip(inside: np.ndarray, outside: np.ndarray, center: np.ndarray,
               gamma: float) -> np.ndarray | None:
    d = outside - inside
    a = float(d @ d)
    if a < 1e-30:
        return None
    b = 2 * float((inside - center) @ d)
    c = float((inside - center) @ (inside - center)) - gamma * gamma
    disc = b * b - 4 * a * c
    if disc < 0:
        return None
    t = (-b + math.sqrt(disc)) / (2 * a)
    if 0 <= t <= 1:
        return inside + t * d
    return None


def _ball_boundary_candidates(face, p0, dirs, qf, lin_f, d0, piece, xbar_f,
                              gamma_f, obj_f):
    """Minimize the quadratic on (affine hull of face) x (gamma-sphere)
    through the secular equation in an orthonormal basis of the hull."""
    out = []
    if not dirs:
        return out
    b = np.array([to_float(d) for d in dirs], dtype=float).T  # n x k
    bq, _ = np.linalg.qr(b)
    k = bq.shape[1]
    p0f = np.array(to_float(p0))
    # x = p0 + bq y ; sphere: |x - xbar| = gamma
    v = p0f - xbar_f
    v_par = bq.T @ v
    v_perp2 = float(v @ v) - float(v_par @ v_par)
    rad2 = gamma_f * gamma_f - v_perp2
    if rad2 <= 1e-18:
        return out
    rad = math.sqrt(rad2)
    # objective in y: 1/2 y'Hy + g'y + const, centered so sphere is |y + v_par| = rad
    h = bq.T @ qf @ bq
    g = bq.T @ (qf @ p0f + lin_f)
    # shift z = y + v_par: minimize 1/2 z'Hz + (g - H v_par)'z over |z| = rad
    gg = g - h @ v_par
    w, u = np.linalg.eigh(h)
    beta = u.T @ gg
    lo = -float(w[0])

    def norm2(mu: float) -> float:
        den = w + mu
        return float(np.sum((beta / den) ** 2))

    roots: list[np.ndarray] = []
    # easy case scan on (lo, lo + big]
    mu_hi = lo + 1.0
    for _ in range(200):
        if norm2(mu_hi) < rad2:
            break
        mu_hi = lo + (mu_hi - lo) * 2
    mu_lo = lo + 1e-12
    if norm2(mu_lo) >= rad2:
        a, bb = mu_lo, mu_hi
        for _ in range(120):
            mid = 0.5 * (a + bb)
            if norm2(mid) >= rad2:
                a = mid
            else:
                bb = mid
        mu = 0.5 * (a + bb)
        z = -(u @ (beta / (w + mu)))
        roots.append(z)
    else:
        # hard case: minimum eigenspace component free
        z0 = -(u @ np.where(np.abs(w - w[0]) < 1e-12, 0.0, beta / np.where(
            np.abs(w - w[0]) < 1e-12, 1.0, w + lo)))
        tail = rad2 - float(z0 @ z0)
        if tail > 0:
            emin = u[:, 0]
            for sgn in (+1.0, -1.0):
                roots.append(z0 + sgn * math.sqrt(tail) * emin)
    for z in roots:
        y = z - v_par
        x = p0f + bq @ y
        if _feasible_float(piece, x) and abs(
                float(np.linalg.norm(x - xbar_f)) - gamma_f) < 1e-7:
            out.append((x, obj_f(x), False))
    return out


def _feasible_float(piece, x: np.ndarray, tol: float = 1e-9) -> bool:
    if piece.m == 0:
        return True
    a, b = piece.to_float_rows()
    return bool(np.max(np.array(a) @ x - np.array(b)) <= tol)


def tilt_stability_verdict(inst: ProblemInstance) -> TiltReport:
    """Stable iff every sampled tilt has a unique minimizer, the zero tilt
    recovers the reference point, and difference quotients stay bounded;
    the modulus estimate is their maximum."""
    p = inst.params
    xbar_f = np.array(to_float(inst.xbar))
    tilts = ball_lattice(zeros(inst.f.dim), p.rho, max(3, p.grid // 2 + 1))
    # the zero tilt anchors the verdict; check it first
    tilts.sort(key=lambda t: sum(abs(x) for x in t))
    argmin: list[tuple[tuple, np.ndarray]] = []
    samples = []
    for t in tilts:
        sol = solve_tilt(inst, t)
        samples.append((tuple(map(float, to_float(t))), sol.minimizers, sol.value))
        if len(sol.minimizers) > 1:
            return TiltReport("unstable", float(p.gamma), float(p.rho), None,
                              tuple(map(float, to_float(t))), sol.minimizers, samples)
        argmin.append((t, np.array(sol.minimizers[0])))
        if all(x == 0 for x in t):
            if float(np.linalg.norm(argmin[-1][1] - xbar_f)) > TIE_TOL:
                return TiltReport("unstable", float(p.gamma), float(p.rho), None,
                                  tuple(map(float, to_float(t))), sol.minimizers,
                                  samples)
    lip = 0.0
    for (t1, m1), (t2, m2) in itertools.combinations(argmin, 2):
        dt = float(np.linalg.norm(np.array(to_float(t1)) - np.array(to_float(t2))))
        if dt > 1e-12:
            lip = max(lip, float(np.linalg.norm(m1 - m2)) / dt)
    return TiltReport("stable", float(p.gamma), float(p.rho), lip, None, [], samples)


# -- paired norm/pairing conditions on the regular graph normal cone ---------------


def check_condition_4_1(inst: ProblemInstance, kappa, r) -> CheckOutcome:
    """At sampled graph points near the reference pair, checks exactly that
    every regular graph normal (w, z) satisfies kappa^2|w|^2 >= |z|^2 and
    <w, -z> >= -r |z|^2 (the coderivative norm bound and lower pairing
    bound), via cone copositivity."""
    if not inst.f.is_exact:
        raise ValidationError("exact variant only")
    from .hessian import second_order_map

    f = inst.f
    n = f.dim
    kappa = frac(kappa) if not isinstance(kappa, float) else Fraction(kappa)
    r = frac(r) if not isinstance(r, float) else Fraction(r)
    som = second_order_map(f, inst.xbar, inst.xstar)
    union = som.model.union
    k2 = kappa * kappa

    def b_norm(pt1, pt2):
        w1, z1 = vec(pt1[:n]), vec(pt1[n:])
        w2, z2 = vec(pt2[:n]), vec(pt2[n:])
        return k2 * dot(w1, w2) - dot(z1, z2)

    def b_pair(pt1, pt2):
        w1, z1 = vec(pt1[:n]), vec(pt1[n:])
        w2, z2 = vec(pt2[:n]), vec(pt2[n:])
        return -(dot(w1, z2) + dot(w2, z1)) / 2 + r * dot(z1, z2)

    violations = []
    checked = 0
    for (x, xs) in graph_point_samples(f, inst.xbar, inst.xstar, inst.params.eta):
        point = tuple(x) + tuple(xs)
        cone = regular_normal_cone(union, point)
        for name, bform in (("norm", b_norm), ("pairing", b_pair)):
            ok, wit = cone_form_nonnegative(cone, bform)
            checked += 1
            if not ok:
                violations.append((name, tuple(map(float, to_float(x))),
                                   tuple(map(float, to_float(vec(wit)))) if wit else None))
    return CheckOutcome(not violations, violations, float(len(violations)), checked)
