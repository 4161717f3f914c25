from fractions import Fraction as F

import pytest

from tiltkit.hessian import (INDEFINITE, POSITIVE_DEFINITE,
                             SEMIDEFINITE_DEGENERATE, build_graph_model,
                             combined_second_order, definiteness,
                             graph_normal_cone_limiting, hessian_sum_rule_check,
                             kernel, second_order_contains, second_order_map,
                             second_order_subdifferential)
from tiltkit.model import FunctionSpec, QuadraticForm, ValidationError
from tiltkit.polyhedra import ConvexPolyhedron, PolyUnion
from tiltkit.rational import matvec, vec


def full(n):
    return PolyUnion([ConvexPolyhedron.full_space(n)])


def halfline():
    return PolyUnion([ConvexPolyhedron([(-1,)], (0,), dim=1)])


def saddle():
    return FunctionSpec(
        smooth=QuadraticForm.make([[2, 0], [0, -2]], [0, 0]),
        domain=PolyUnion([ConvexPolyhedron([(-1, 1), (-1, -1)], (0, 0))]))


def test_smooth_graph_is_a_line():
    f = FunctionSpec(smooth=QuadraticForm.make([[1]], [0]), domain=full(1))
    m = build_graph_model(f, (0,), (0,))
    assert len(m.pieces) == 1
    assert m.pieces[0].contains((2, 2)) and not m.pieces[0].contains((2, 1))
    n = graph_normal_cone_limiting(m)
    assert len(n.pieces) == 1
    assert n.contains((1, -1)) and not n.contains((1, 1))


def test_indicator_halfline_graph_is_the_complementarity_angle():
    f = FunctionSpec(smooth=QuadraticForm.zero(1), domain=halfline())
    m = build_graph_model(f, (0,), (0,))
    pts = [((2, 0), True), ((0, -3), True), ((1, -1), False), ((0, 1), False)]
    for p, expect in pts:
        assert any(piece.contains(p) for piece in m.pieces) == expect


def test_indicator_halfline_normal_cone_quadrant_and_axes():
    f = FunctionSpec(smooth=QuadraticForm.zero(1), domain=halfline())
    n = graph_normal_cone_limiting(build_graph_model(f, (0,), (0,)))
    # quadrant {w <= 0, z >= 0} plus both coordinate lines
    for p in [(0, 0), (-1, 1), (-1, 0), (0, 1), (0, -1), (1, 0), (-2, 3)]:
        assert n.contains(p), p
    for p in [(1, 1), (1, -1), (-1, -1)]:
        assert not n.contains(p), p


def test_smooth_reduction_diag():
    f = FunctionSpec(smooth=QuadraticForm.make([[1, 0], [0, 2]], [0, 0]), domain=full(2))
    for u in [(1, 1), (2, -1), (F(1, 3), F(5, 7))]:
        qu = matvec(f.smooth.q, vec(u))
        assert second_order_contains(f, (0, 0), (0, 0), u, qu)
        pieces = second_order_subdifferential(f, (0, 0), (0, 0), u)
        assert all(p.poly_dim() == 0 for p in pieces)
    assert not second_order_contains(f, (0, 0), (0, 0), (1, 1), (1, 1))


def test_indicator_at_interior_point_slices_to_zero():
    f = FunctionSpec(smooth=QuadraticForm.zero(1), domain=halfline())
    pieces = second_order_subdifferential(f, (1,), (0,), (5,))
    assert pieces and all(p.contains((0,)) and p.poly_dim() == 0 for p in pieces)


def test_saddle_key_membership_and_homogeneity():
    f = saddle()
    assert second_order_contains(f, (0, 0), (0, 0), (0, 1), (0, -2))
    assert second_order_contains(f, (0, 0), (0, 0), (0, 2), (0, -4))
    assert second_order_contains(f, (0, 0), (0, 0), (0, F(1, 3)), (0, F(-2, 3)))
    assert not second_order_contains(f, (0, 0), (0, 0), (0, 1), (0, 2))


def test_saddle_graph_model_has_four_pieces():
    m = build_graph_model(saddle(), (0, 0), (0, 0))
    assert len(m.pieces) == 4


def test_combined_subset_of_limiting():
    f = FunctionSpec(smooth=QuadraticForm.make([[1]], [0]), domain=halfline())
    som = second_order_map(f, (0,), (0,))
    for u in [(1,), (-1,), (F(1, 2),)]:
        c = combined_second_order(f, (0,), (0,), u)
        if c is None:
            continue
        pts, rays, lin = c.vrep()
        for p in pts:
            assert som.contains(u, p)


def test_combined_equals_limiting_for_smooth():
    f = FunctionSpec(smooth=QuadraticForm.make([[1, 0], [0, 2]], [0, 0]), domain=full(2))
    u = (1, 1)
    c = combined_second_order(f, (0, 0), (0, 0), u)
    assert c is not None and c.contains((1, 2)) and c.poly_dim() == 0


def test_sum_rule_on_three_fixtures():
    assert hessian_sum_rule_check(saddle(), (0, 0), (0, 0))
    f2 = FunctionSpec(smooth=QuadraticForm.make([[1, 0], [0, 2]], [0, 0]), domain=full(2))
    assert hessian_sum_rule_check(f2, (0, 0), (0, 0))
    f3 = FunctionSpec(smooth=QuadraticForm.make([[1]], [0]), domain=halfline())
    assert hessian_sum_rule_check(f3, (0,), (0,))


def test_kernel_examples():
    f = FunctionSpec(smooth=QuadraticForm.make([[1, 0], [0, 2]], [0, 0]), domain=full(2))
    assert kernel(f, (0, 0), (0, 0)).trivial
    kr = kernel(saddle(), (0, 0), (0, 0))
    assert not kr.trivial
    assert any(u in ((1, 1), (-1, -1)) or u in ((1, -1), (-1, 1)) for u in kr.basis)
    f3 = FunctionSpec(smooth=QuadraticForm.make([[1]], [0]), domain=halfline())
    assert kernel(f3, (0,), (0,)).trivial
    f4 = FunctionSpec(smooth=QuadraticForm.zero(1), domain=halfline())
    assert not kernel(f4, (0,), (0,)).trivial


def test_definiteness_verdicts():
    dv = definiteness(saddle(), (0, 0), (0, 0))
    assert dv.verdict == INDEFINITE
    u, ustar, val = dv.witness
    assert val < 0 and second_order_contains(saddle(), (0, 0), (0, 0), u, ustar)

    f = FunctionSpec(smooth=QuadraticForm.make([[1, 0], [0, 2]], [0, 0]), domain=full(2))
    assert definiteness(f, (0, 0), (0, 0)).verdict == POSITIVE_DEFINITE

    neg = FunctionSpec(smooth=QuadraticForm.make([[-1]], [0]), domain=full(1))
    dvn = definiteness(neg, (0,), (0,))
    assert dvn.verdict == INDEFINITE
    u, ustar, val = dvn.witness
    assert val == -(u[0] * u[0])  # pairing equals minus the squared norm

    deg = FunctionSpec(smooth=QuadraticForm.make([[1, 0], [0, 0]], [0, 0]), domain=full(2))
    dvd = definiteness(deg, (0, 0), (0, 0))
    assert dvd.verdict == SEMIDEFINITE_DEGENERATE
    assert not dvd.kernel_basis == ()


def test_definiteness_shift_under_regularization():
    from tiltkit.model import regularize
    for name_f in (saddle(),
                   FunctionSpec(smooth=QuadraticForm.make([[1]], [0]), domain=halfline()),
                   FunctionSpec(smooth=QuadraticForm.make([[-1]], [0]), domain=full(1))):
        dv0 = definiteness(name_f, tuple([F(0)] * name_f.dim), tuple([F(0)] * name_f.dim))
        g = regularize(name_f, 1, tuple([F(0)] * name_f.dim))
        dvg = definiteness(g, tuple([F(0)] * name_f.dim), tuple([F(0)] * name_f.dim))
        order = {INDEFINITE: 0, SEMIDEFINITE_DEGENERATE: 1, POSITIVE_DEFINITE: 2}
        assert order[dvg.verdict] >= order[dv0.verdict]


def test_analytic_variant_rejected():
    from tiltkit.model import ANALYTIC_REGISTRY
    f = FunctionSpec(fixture=ANALYTIC_REGISTRY["square"])
    with pytest.raises(ValidationError):
        build_graph_model(f, (0,), (0,))


def test_graph_model_validates_membership():
    with pytest.raises(ValidationError):
        build_graph_model(saddle(), (0, 0), (0, 5))


def test_graph_pieces_lie_on_the_graph():
    from tiltkit.subdiff import subdifferential
    m = build_graph_model(saddle(), (0, 0), (0, 0))
    for piece in m.pieces:
        clipped = piece.intersect(ConvexPolyhedron.box((0, 0, 0, 0), F(1)))
        pts, _, _ = clipped.vrep()
        for p in pts:
            x, xs = p[:2], p[2:]
            assert subdifferential(m.f, x).contains(xs)


def test_regularize_shifts_hessian_values_exactly():
    from tiltkit.model import regularize

    f = saddle()
    g = regularize(f, 1, (0, 0))
    # every second-order value shifts by exactly theta * u
    cases = [((0, 1), (0, -2)), ((1, 1), (2, -2)), ((0, 2), (0, -4))]
    for u, w in cases:
        assert second_order_contains(f, (0, 0), (0, 0), u, w)
        shifted = tuple(a + b for a, b in zip(w, u))
        assert second_order_contains(g, (0, 0), (0, 0), u, shifted)
    # the indefiniteness gap narrows by exactly theta on the witness pair
    dv_f = definiteness(f, (0, 0), (0, 0))
    dv_g = definiteness(g, (0, 0), (0, 0))
    assert dv_f.verdict == INDEFINITE and dv_g.verdict == INDEFINITE
    u, ustar, val = dv_f.witness
    norm_u = sum(x * x for x in u)
    shifted_pair = tuple(a + b for a, b in zip(ustar, u))
    assert second_order_contains(g, (0, 0), (0, 0), u, shifted_pair)
    assert val + norm_u == sum(a * b for a, b in zip(shifted_pair, u))
