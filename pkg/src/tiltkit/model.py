"""Representable function classes, evaluation, and problem ingestion.

The exact class is a quadratic smooth part plus the indicator of a finite
union of rational polyhedra; every first- and second-order object it
produces stays polyhedral and is computed in exact arithmetic.  A small
registry of closed-form 1-D fixtures covers the sampling-based analytic
path; its machinery never mixes with the exact one.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .polyhedra import ConvexPolyhedron, PolyUnion
from .rational import (F0, Mat, Vec, add, dot, frac, mat, matvec, norm_sq,
                       scale, sub, vec, zeros)


class ParseError(ValueError):
    """Malformed problem file."""


class ValidationError(ValueError):
    """Well-formed file whose data violates a contract."""


@dataclass(frozen=True)
class QuadraticForm:
    """q(x) = x'Qx/2 + c'x + d with Q symmetric rational."""
    q: Mat
    c: Vec
    d: Fraction

    def __post_init__(self):
        n = len(self.c)
        if len(self.q) != n or any(len(r) != n for r in self.q):
            raise ValidationError("Q must be n x n matching c")
        for i in range(n):
            for j in range(n):
                if self.q[i][j] != self.q[j][i]:
                    raise ValidationError("Q must be symmetric")

    @property
    def dim(self) -> int:
        return len(self.c)

    def value(self, x) -> Fraction:
        x = vec(x)
        return dot(x, matvec(self.q, x)) / 2 + dot(self.c, x) + self.d

    def gradient(self, x) -> Vec:
        return add(matvec(self.q, vec(x)), self.c)

    @classmethod
    def make(cls, q, c, d=0) -> "QuadraticForm":
        return cls(mat(q), vec(c), frac(d))

    @classmethod
    def zero(cls, n: int) -> "QuadraticForm":
        return cls(mat([[F0] * n for _ in range(n)]), zeros(n), F0)


@dataclass(frozen=True)
class AnalyticFixture1D:
    """A 1-D closed-form fixture with a sampling-based subdifferential path.

    `value`/`derivative` accept floats or numpy arrays.  Outside
    [lo, hi] the function is +inf; at `exceptional` points the derivative
    is only available through limit sampling.
    """
    name: str
    lo: float
    hi: float
    value: Callable
    derivative: Callable
    exceptional: tuple[float, ...]
    notes: str = ""

    def in_domain(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def check_derivative(self, n_points: int = 100, rel_tol: float = 1e-6) -> float:
        """Worst relative error of central differences vs `derivative` on an
        interior grid; the construction invariant for fixtures.

        The grid keeps a safety margin around exceptional points, where
        higher derivatives blow up and finite differences are meaningless;
        those points are owned by the limit-sampling machinery instead.
        """
        h = 1e-6
        lo = self.lo if math.isfinite(self.lo) else -1.0
        hi = self.hi if math.isfinite(self.hi) else 1.0
        span = hi - lo
        margin = 0.05 * span
        worst = 0.0
        for i in range(1, n_points + 1):
            x = lo + span * i / (n_points + 1)
            if any(abs(x - e) < margin for e in self.exceptional):
                continue
            if not (self.lo + h < x < self.hi - h):
                continue
            fd = (self.value(x + h) - self.value(x - h)) / (2 * h)
            d = self.derivative(x)
            err = abs(fd - d) / max(1.0, abs(d))
            worst = max(worst, err)
        if worst > rel_tol:
            raise ValidationError(
                f"fixture {self.name}: derivative mismatch {worst:.3g} > {rel_tol}")
        return worst


def _oscillating_value(x):
    x = np.asarray(x, dtype=float)
    out = np.where(x > 0, 0.5 * x - np.square(x) * np.sin(np.divide(
        1.0, np.where(x > 0, x, 1.0))), 0.0)
    return out if out.ndim else float(out)


def _oscillating_derivative(x):
    x = np.asarray(x, dtype=float)
    safe = np.where(x > 0, x, 1.0)
    out = np.where(x > 0, 0.5 - 2.0 * x * np.sin(1.0 / safe) + np.cos(1.0 / safe), 0.5)
    return out if out.ndim else float(out)


ANALYTIC_REGISTRY: dict[str, AnalyticFixture1D] = {
    # Oscillating near-minimizer: quadratic growth holds with rate 1 at the
    # origin while stationary points accumulate at it, so the reference
    # point is not isolated among solutions of the stationarity inclusion.
    # (The usual phrasing transposes the pair; the implemented reading is
    # "the reference point is not isolated in the preimage of the
    # reference subgradient".)
    "sin-inv": AnalyticFixture1D(
        name="sin-inv", lo=0.0, hi=math.inf,
        value=_oscillating_value,
        derivative=_oscillating_derivative,
        exceptional=(0.0,),
        notes="x/2 - x^2 sin(1/x) on (0,inf), 0 at 0, +inf on x<0"),
    "abs": AnalyticFixture1D(
        name="abs", lo=-math.inf, hi=math.inf,
        value=lambda x: np.abs(np.asarray(x, dtype=float)),
        derivative=lambda x: np.sign(np.asarray(x, dtype=float)),
        exceptional=(0.0,),
        notes="|x|; subdifferential at 0 is [-1,1] via limit sampling"),
    "square": AnalyticFixture1D(
        name="square", lo=-math.inf, hi=math.inf,
        value=lambda x: 0.5 * np.square(np.asarray(x, dtype=float)),
        derivative=lambda x: np.asarray(x, dtype=float),
        exceptional=(),
        notes="x^2/2 on the line"),
}


class FunctionSpec:
    """Either Exact (quadratic + polyhedral-union indicator) or a named
    analytic 1-D fixture."""

    def __init__(self, smooth: QuadraticForm | None = None,
                 domain: PolyUnion | None = None,
                 fixture: AnalyticFixture1D | None = None):
        if fixture is not None:
            if smooth is not None or domain is not None:
                raise ValidationError("analytic variant carries no exact data")
            self.variant = "analytic"
            self.fixture = fixture
            self.dim = 1
            self.smooth = None
            self.domain = None
        else:
            if smooth is None or domain is None:
                raise ValidationError("exact variant needs smooth part and domain")
            if smooth.dim != domain.dim:
                raise ValidationError("smooth part and domain dimension mismatch")
            self.variant = "exact"
            self.smooth = smooth
            self.domain = domain
            self.fixture = None
            self.dim = smooth.dim
        self._cells = None
        self._graph_models: dict = {}

    @property
    def is_exact(self) -> bool:
        return self.variant == "exact"

    def cells(self):
        """Global signature cells of the domain union (cached)."""
        from .cells import cell_complex
        if self._cells is None:
            self._cells = cell_complex(self.domain)
        return self._cells

    def __repr__(self) -> str:
        if self.is_exact:
            return f"FunctionSpec(exact, n={self.dim}, pieces={len(self.domain.pieces)})"
        return f"FunctionSpec(analytic:{self.fixture.name})"


def evaluate_exact(f: FunctionSpec, x) -> Fraction | None:
    """Exact value at a rational point; None encodes +inf."""
    if not f.is_exact:
        raise ValidationError("evaluate_exact needs the exact variant")
    x = vec(x)
    if len(x) != f.dim:
        raise ValidationError("dimension mismatch")
    if not f.domain.contains(x):
        return None
    return f.smooth.value(x)


def evaluate(f: FunctionSpec, x) -> float:
    """Extended-real value as a float (+inf outside the domain)."""
    if f.is_exact:
        v = evaluate_exact(f, [frac_from_float(t) if isinstance(t, float) else t for t in x])
        return math.inf if v is None else float(v)
    t = float(x[0]) if isinstance(x, (list, tuple)) else float(x)
    fx = f.fixture
    if not fx.in_domain(t):
        return math.inf
    return float(fx.value(t))


def frac_from_float(t: float) -> Fraction:
    """Exact rational equal to the given float (grids are dyadic)."""
    return Fraction(t)


def regularize(f: FunctionSpec, theta, center) -> FunctionSpec:
    """Add (theta/2)||x - center||^2 to the smooth part; domain unchanged."""
    if not f.is_exact:
        raise ValidationError("regularize supports only the exact variant")
    theta = frac(theta)
    center = vec(center)
    n = f.dim
    q = [list(row) for row in f.smooth.q]
    for i in range(n):
        q[i][i] += theta
    c = sub(f.smooth.c, scale(center, theta))
    d = f.smooth.d + theta * norm_sq(center) / 2
    return FunctionSpec(smooth=QuadraticForm(mat(q), c, d), domain=f.domain)


@dataclass
class Params:
    """Neighborhood radii, grid densities, and tolerances.

    Defaults: eta = delta = 1/10, gamma = 1/2, rho = 1/20; all strictly
    positive by contract.
    """
    eta: Fraction = Fraction(1, 10)
    delta: Fraction = Fraction(1, 10)
    gamma: Fraction = Fraction(1, 2)
    rho: Fraction = Fraction(1, 20)
    grid: int = 9
    box_halfwidth: Fraction = Fraction(1)
    refine_max: int = 3
    tol_growth: float = 1e-9
    tol_tie: float = 1e-9
    tol_distance: float = 1e-10

    def __post_init__(self):
        for name in ("eta", "delta", "gamma", "rho", "box_halfwidth"):
            v = getattr(self, name)
            setattr(self, name, frac(v) if not isinstance(v, Fraction) else v)
            if getattr(self, name) <= 0:
                raise ValidationError(f"param {name} must be positive")
        if self.grid < 2 or self.refine_max < 1:
            raise ValidationError("grid densities must be positive")

    def replace(self, **kw) -> "Params":
        import dataclasses
        return dataclasses.replace(self, **kw)


@dataclass
class ProblemInstance:
    """A function with a validated reference pair on its subgradient graph."""
    f: FunctionSpec
    xbar: Vec
    xstar: Vec
    params: Params = field(default_factory=Params)
    name: str = ""

    def __post_init__(self):
        self.xbar = vec(self.xbar) if self.f.is_exact else self.xbar
        self.xstar = vec(self.xstar) if self.f.is_exact else self.xstar

    def validate(self) -> None:
        from .subdiff import subdifferential
        sd = subdifferential(self.f, self.xbar)
        if not sd.contains(self.xstar):
            raise ValidationError("reference subgradient is not in the subdifferential "
                                  "at the reference point")


# -- problem files -------------------------------------------------------------


def _reject_floats(s: str):
    raise ParseError(f"floating-point literal {s!r} is not allowed; "
                     "write rationals as integers or 'p/q' strings")


def _parse_rational(x) -> Fraction:
    if isinstance(x, bool):
        raise ParseError("booleans are not rational scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"bad rational literal {x!r}: {e}") from None
    raise ParseError(f"expected rational (int or 'p/q'), got {x!r}")


def parse_problem(text: str) -> ProblemInstance:
    """Parse and validate a JSON problem file.

    Exact files must be float-free; the reference pair is membership-checked
    exactly (exact variant) or within 1e-9 (analytic variant).
    """
    try:
        raw = json.loads(text, parse_float=_reject_floats)
    except ParseError:
        raise
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from None
    if not isinstance(raw, dict) or "variant" not in raw:
        raise ParseError("problem file must be an object with a 'variant' field")

    variant = raw["variant"]
    params = _parse_params(raw.get("params", {}))
    if variant == "exact":
        inst = _parse_exact(raw, params)
    elif variant == "analytic":
        inst = _parse_analytic(raw, params)
    else:
        raise ParseError(f"unknown variant {variant!r}")
    inst.validate()
    return inst


def _parse_params(obj) -> Params:
    if not isinstance(obj, dict):
        raise ParseError("'params' must be an object")
    kw = {}
    for key in ("eta", "delta", "gamma", "rho", "box_halfwidth"):
        if key in obj:
            kw[key] = _parse_rational(obj[key])
    for key in ("grid", "refine_max"):
        if key in obj:
            if not isinstance(obj[key], int):
                raise ParseError(f"param {key} must be an integer")
            kw[key] = obj[key]
    try:
        return Params(**kw)
    except ValidationError:
        raise
    except ValueError as e:
        raise ParseError(str(e)) from None


def _parse_exact(raw: dict, params: Params) -> ProblemInstance:
    try:
        smooth_obj = raw["smooth"]
        q = mat([[_parse_rational(v) for v in row] for row in smooth_obj["Q"]])
        c = vec([_parse_rational(v) for v in smooth_obj["c"]])
        d = _parse_rational(smooth_obj.get("d", 0))
        xbar = vec([_parse_rational(v) for v in raw["xbar"]])
        xstar = vec([_parse_rational(v) for v in raw["xstar"]])
    except KeyError as e:
        raise ParseError(f"missing field {e}") from None
    n = len(c)
    if len(xbar) != n or len(xstar) != n:
        raise ParseError("xbar/xstar dimension mismatch")
    pieces = []
    for piece_obj in raw.get("pieces", [{"A": [], "b": []}]):
        a = [[_parse_rational(v) for v in row] for row in piece_obj["A"]]
        b = [_parse_rational(v) for v in piece_obj["b"]]
        for row in a:
            if len(row) != n:
                raise ParseError("piece row dimension mismatch")
        pieces.append(ConvexPolyhedron(mat(a), vec(b), dim=n))
    try:
        smooth = QuadraticForm(q, c, d)
        domain = PolyUnion(pieces)
    except (ValidationError, ValueError) as e:
        raise ParseError(str(e)) from None
    f = FunctionSpec(smooth=smooth, domain=domain)
    return ProblemInstance(f, xbar, xstar, params, name=raw.get("name", ""))


def _parse_analytic(raw: dict, params: Params) -> ProblemInstance:
    name = raw.get("fixture")
    if name not in ANALYTIC_REGISTRY:
        raise ParseError(f"unknown analytic fixture {name!r}; "
                         f"known: {sorted(ANALYTIC_REGISTRY)}")
    fixture = ANALYTIC_REGISTRY[name]
    xbar = [float(_parse_rational(v)) for v in raw["xbar"]]
    xstar = [float(_parse_rational(v)) for v in raw["xstar"]]
    if len(xbar) != 1 or len(xstar) != 1:
        raise ParseError("analytic problems are one-dimensional")
    f = FunctionSpec(fixture=fixture)
    return ProblemInstance(f, tuple(xbar), tuple(xstar), params, name=raw.get("name", ""))
