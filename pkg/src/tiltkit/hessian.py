"""Second-order objects: graph models of the subdifferential, normal cones
to them, generalized Hessians, kernels, and definiteness verdicts.

The subgradient graph of a quadratic-plus-polyhedral function is, near a
reference pair, a finite union of polyhedra {(x, Qx+c+v) : x in cell,
v in value cone}; every second-order construction reduces to exact
polyhedral computations on that union.  Sign conventions follow the
coderivative pairing: w is a Hessian value at direction u exactly when
(w, -u) is normal to the graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cells import Cell, cells_adherent_to, limiting_normal_cone, regular_normal_cone
from .cones import ConeUnion, PolyCone
from .copositive import Bilinear, cone_form_min_sign, cone_zero_points
from .model import FunctionSpec, QuadraticForm, ValidationError
from .polyhedra import ConvexPolyhedron, PolyUnion, poly_union_covers
from .rational import (F0, F1, Vec, add, dot, is_zero, mat, matvec, neg,
                       sub, vec, zeros)
from .subdiff import subdifferential


@dataclass(frozen=True)
class GraphLocalModel:
    """gph of the subdifferential near (xbar, xstar) as a polyhedral union."""
    f: FunctionSpec
    xbar: Vec
    xstar: Vec
    pieces: tuple[ConvexPolyhedron, ...]
    cells: tuple[Cell, ...]

    @property
    def union(self) -> PolyUnion:
        return PolyUnion(list(self.pieces))

    @property
    def basepoint(self) -> Vec:
        return self.xbar + self.xstar


def _graph_piece(f: FunctionSpec, cell: Cell) -> ConvexPolyhedron:
    """{(x, y) : x in closure(cell), y - Qx - c in value(cell)}."""
    n = f.dim
    q, c = f.smooth.q, f.smooth.c
    rows: list[Vec] = []
    rhs: list[Fraction] = []
    for row, bi in zip(cell.closure.a, cell.closure.b):
        rows.append(tuple(row) + zeros(n))
        rhs.append(bi)
    for g in cell.value.ineqs:
        gq = matvec(q, vec(g))
        rows.append(tuple(-x for x in gq) + tuple(g))
        rhs.append(dot(vec(g), c))
    return ConvexPolyhedron(mat(rows), vec(rhs), dim=2 * n)


def build_graph_model(f: FunctionSpec, xbar, xstar) -> GraphLocalModel:
    """Graph pieces from domain cells adherent to xbar, keeping those whose
    closure contains the reference pair."""
    if not f.is_exact:
        raise ValidationError("graph models need the exact variant")
    xbar, xstar = vec(xbar), vec(xstar)
    if not subdifferential(f, xbar).contains(xstar):
        raise ValidationError("reference pair is not on the subdifferential graph")
    base = xbar + xstar
    pieces = []
    kept_cells = []
    for cell in cells_adherent_to(list(f.cells()), xbar):
        piece = _graph_piece(f, cell)
        if piece.contains(base):
            pieces.append(piece)
            kept_cells.append(cell)
    return GraphLocalModel(f, xbar, xstar, tuple(pieces), tuple(kept_cells))


def graph_normal_cone_limiting(model: GraphLocalModel) -> ConeUnion:
    """Limiting normal cone to the graph union at the reference pair."""
    return limiting_normal_cone(model.union, model.basepoint)


def graph_normal_cone_regular(model: GraphLocalModel, point) -> PolyCone:
    """Regular normal cone to the graph union at a given graph point."""
    return regular_normal_cone(model.union, vec(point))


class SecondOrderMap:
    """Queryable generalized Hessian at a fixed reference pair."""

    def __init__(self, model: GraphLocalModel):
        self.model = model
        self.normal_cone = graph_normal_cone_limiting(model)
        self.n = model.f.dim

    def value(self, u) -> list[ConvexPolyhedron]:
        """{w : (w, -u) normal to the graph} as polyhedra in w-space."""
        return _slice_pieces(self.normal_cone.pieces, vec(u), self.n)

    def contains(self, u, w) -> bool:
        u, w = vec(u), vec(w)
        return self.normal_cone.contains(tuple(w) + tuple(neg(u)))


def _slice_pieces(cones: list[PolyCone], u: Vec, n: int) -> list[ConvexPolyhedron]:
    out = []
    for k in cones:
        rows, rhs = [], []
        for g in k.ineqs:
            gw, gz = vec(g[:n]), vec(g[n:])
            rows.append(gw)
            rhs.append(dot(gz, u))
        poly = ConvexPolyhedron(mat(rows), vec(rhs), dim=n)
        if not poly.is_empty():
            out.append(poly)
    return out


def second_order_map(f: FunctionSpec, xbar, xstar) -> SecondOrderMap:
    """Cached generalized-Hessian map at a reference pair."""
    key = (vec(xbar), vec(xstar))
    cached = f._graph_models.get(key)
    if cached is None:
        cached = SecondOrderMap(build_graph_model(f, xbar, xstar))
        f._graph_models[key] = cached
    return cached


def second_order_subdifferential(f: FunctionSpec, xbar, xstar, u) -> list[ConvexPolyhedron]:
    """Value of the generalized Hessian at direction u, as an exact finite
    union of polyhedra in w-space."""
    return second_order_map(f, xbar, xstar).value(u)


def second_order_contains(f: FunctionSpec, xbar, xstar, u, w) -> bool:
    return second_order_map(f, xbar, xstar).contains(u, w)


def combined_second_order(f: FunctionSpec, x, xstar, u) -> ConvexPolyhedron | None:
    """Regular-coderivative value at a graph point: the slice of the regular
    graph normal cone; convex (one polyhedron) or None when empty."""
    model = build_graph_model(f, x, xstar)
    cone = regular_normal_cone(model.union, model.basepoint)
    pieces = _slice_pieces([cone], vec(u), f.dim)
    return pieces[0] if pieces else None


def hessian_sum_rule_check(f: FunctionSpec, xbar, xstar,
                           directions: list | None = None) -> bool:
    """Exact set equality of the Hessian slice against Qu + the slice of the
    pure-indicator Hessian at the shifted pair, over a generator set of
    directions."""
    if not f.is_exact:
        raise ValidationError("exact variant only")
    xbar, xstar = vec(xbar), vec(xstar)
    n = f.dim
    f_ind = FunctionSpec(smooth=QuadraticForm.zero(n), domain=f.domain)
    vbar = sub(xstar, f.smooth.gradient(xbar))
    full = second_order_map(f, xbar, xstar)
    ind = second_order_map(f_ind, xbar, vbar)
    if directions is None:
        directions = _direction_set(n)
    for u in directions:
        u = vec(u)
        qu = add(matvec(f.smooth.q, u), zeros(n))
        lhs = full.value(u)
        rhs = [p.translate(qu) for p in ind.value(u)]
        if not (poly_union_covers(lhs, rhs) and poly_union_covers(rhs, lhs)):
            return False
    return True


def _direction_set(n: int) -> list[Vec]:
    dirs = []
    for i in range(n):
        e = [F0] * n
        e[i] = F1
        dirs.append(tuple(e))
        dirs.append(tuple(-x for x in e))
    dirs.append(tuple([F1] * n))
    dirs.append(tuple([Fraction(1, 2)] + [Fraction(-1)] * (n - 1)) if n > 1 else (Fraction(2),))
    return dirs


@dataclass(frozen=True)
class KernelReport:
    trivial: bool
    basis: tuple[Vec, ...]  # nonzero directions u with 0 in the Hessian value


def kernel(f: FunctionSpec, xbar, xstar) -> KernelReport:
    """Directions u != 0 with 0 in the generalized Hessian value: per normal
    cone piece this is the z-section {z : (0,z) in piece}, a rational cone."""
    som = second_order_map(f, xbar, xstar)
    n = f.dim
    witnesses: list[Vec] = []
    for k in som.normal_cone.pieces:
        zrows = [vec(g[n:]) for g in k.ineqs]
        sect = PolyCone.from_inequalities(mat(zrows), n)
        for g in sect.rays + sect.lineality + [neg(l) for l in sect.lineality]:
            u = neg(vec(g))
            if not is_zero(u) and u not in witnesses:
                witnesses.append(u)
    return KernelReport(trivial=not witnesses, basis=tuple(witnesses))


POSITIVE_DEFINITE = "positive_definite"
SEMIDEFINITE_DEGENERATE = "positive_semidefinite_degenerate"
INDEFINITE = "indefinite"


@dataclass(frozen=True)
class DefinitenessVerdict:
    verdict: str
    witness: tuple[Vec, Vec, Fraction] | None  # (u, ustar, <ustar,u>)
    kernel_basis: tuple[Vec, ...]
    has_direction_free_normals: bool  # pieces with u = 0 but w != 0 exist

    def is_positive_definite(self) -> bool:
        return self.verdict == POSITIVE_DEFINITE


def _pairing_form(n: int) -> Bilinear:
    def b(p: Vec, q: Vec) -> Fraction:
        # symmetric form of <w, -z> on stacked (w, z) vectors
        return -(dot(vec(p[:n]), vec(q[n:])) + dot(vec(q[:n]), vec(p[n:]))) / 2
    return b


def definiteness(f: FunctionSpec, xbar, xstar) -> DefinitenessVerdict:
    """Exact sign analysis of <ustar, u> over the generalized Hessian.

    Per normal-cone piece, minimizes the pairing form over the cone by the
    copositivity engine; zeros are genuine degeneracies only when they
    occur at u != 0,  and pieces supported on u = 0 never affect the
    verdict (the definiteness quantifier ranges over u != 0).
    """
    som = second_order_map(f, xbar, xstar)
    n = f.dim
    form = _pairing_form(n)
    kr = kernel(f, xbar, xstar)
    neg_wit = None
    zero_wit = None
    u0_pieces = False
    for k in som.normal_cone.pieces:
        gens = k.generators()
        if not gens:
            continue
        if all(is_zero(vec(g[n:])) for g in gens):
            if any(not is_zero(vec(g[:n])) for g in gens):
                u0_pieces = True
            continue
        sign, w = cone_form_min_sign(k, form)
        if sign < 0 and neg_wit is None:
            neg_wit = w
        elif sign == 0 and zero_wit is None:
            for v in cone_zero_points(k, form):
                if not is_zero(vec(v[n:])):
                    zero_wit = v
                    break
        if neg_wit is not None:
            break
    if neg_wit is not None:
        u = neg(vec(neg_wit[n:]))
        ustar = vec(neg_wit[:n])
        return DefinitenessVerdict(INDEFINITE, (u, ustar, dot(ustar, u)),
                                   kr.basis, u0_pieces)
    if zero_wit is not None:
        u = neg(vec(zero_wit[n:]))
        ustar = vec(zero_wit[:n])
        return DefinitenessVerdict(SEMIDEFINITE_DEGENERATE, (u, ustar, F0),
                                   kr.basis, u0_pieces)
    return DefinitenessVerdict(POSITIVE_DEFINITE, None, kr.basis, u0_pieces)
