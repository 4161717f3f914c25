import math
import random
from fractions import Fraction as F

import pytest

from tiltkit.model import ANALYTIC_REGISTRY, FunctionSpec, QuadraticForm, ValidationError
from tiltkit.polyhedra import ConvexPolyhedron, PolyUnion
from tiltkit.subdiff import (EmptySliceError, analytic_inverse_points,
                             distance_to_inverse, frechet_subdifferential,
                             inverse_image, stationary_points_1d, subdifferential,
                             subdifferential_distance)


def saddle():
    return FunctionSpec(
        smooth=QuadraticForm.make([[2, 0], [0, -2]], [0, 0]),
        domain=PolyUnion([ConvexPolyhedron([(-1, 1), (-1, -1)], (0, 0))]))


def cross_quad():
    return FunctionSpec(
        smooth=QuadraticForm.make([[2, 0], [0, 2]], [0, 0]),
        domain=PolyUnion([ConvexPolyhedron([(0, 1), (0, -1)], (0, 0)),
                          ConvexPolyhedron([(1, 0), (-1, 0)], (0, 0))]))


def smooth_1d():
    return FunctionSpec(smooth=QuadraticForm.make([[1]], [0]),
                        domain=PolyUnion([ConvexPolyhedron.full_space(1)]))


def test_saddle_subdifferential_at_apex():
    sd = subdifferential(saddle(), (0, 0))
    # gradient zero plus the wedge's normal cone
    assert sd.contains((0, 0)) and sd.contains((-3, 1)) and sd.contains((-1, -1))
    assert not sd.contains((0, 5)) and not sd.contains((1, 0))


def test_cross_subdifferential_at_origin():
    sd = subdifferential(cross_quad(), (0, 0))
    assert sd.contains((0, 7)) and sd.contains((7, 0))
    assert not sd.contains((1, 1))
    fr = frechet_subdifferential(cross_quad(), (0, 0))
    assert fr.is_singleton() and fr.contains((0, 0))


def test_smooth_point_is_gradient_singleton():
    sd = subdifferential(smooth_1d(), (3,))
    assert sd.is_singleton() and sd.contains((3,))
    fr = frechet_subdifferential(smooth_1d(), (3,))
    assert fr.is_singleton() and fr.contains((3,))


def test_frechet_subset_of_limiting():
    for f, pts in [(saddle(), [(0, 0), (1, 1), (2, 0)]),
                   (cross_quad(), [(0, 0), (1, 0), (0, -2)])]:
        for x in pts:
            fr = frechet_subdifferential(f, x)
            sd = subdifferential(f, x)
            for g in fr.cones.pieces[0].generators():
                v = tuple(b + gi for b, gi in zip(fr.base, g))
                assert sd.contains(v)


def test_convex_fixture_frechet_equals_limiting():
    quad = FunctionSpec(
        smooth=QuadraticForm.make([[1, 0], [0, 1]], [0, 0]),
        domain=PolyUnion([ConvexPolyhedron([(-1, 0), (0, -1)], (0, 0))]))
    rng = random.Random(5)
    pts = [(F(0), F(0)), (F(1), F(0)), (F(0), F(2))]
    pts += [(F(rng.randint(0, 5)), F(rng.randint(0, 5))) for _ in range(17)]
    for x in pts:
        fr = frechet_subdifferential(quad, x)
        sd = subdifferential(quad, x)
        assert len(sd.cones.pieces) == 1
        assert sd.cones.pieces[0].equals(fr.cones.pieces[0])


def test_subdifferential_distance_examples():
    assert subdifferential_distance(smooth_1d(), (1,), (0.0,)) == 1.0
    assert abs(subdifferential_distance(saddle(), (0, 0), (1.0, 0.0)) - 1.0) < 1e-12
    assert subdifferential_distance(saddle(), (0, 0), (-1.0, 0.5)) == 0.0


def test_outside_domain_raises():
    with pytest.raises(ValidationError):
        subdifferential(saddle(), (0, 1))


def test_inverse_image_saddle_is_two_segments():
    box = ConvexPolyhedron.box((0, 0), F(1))
    sl = inverse_image(saddle(), (0, 0), box)
    for t in (F(0), F(1, 4), F(1, 2), F(1)):
        assert sl.contains((t, t)) and sl.contains((t, -t))
    assert not sl.contains((F(1, 2), F(0)))
    assert sl.truncated  # the rays escape every box


def test_inverse_image_smooth_singleton():
    fd = FunctionSpec(smooth=QuadraticForm.make([[1, 0], [0, 2]], [0, 0]),
                      domain=PolyUnion([ConvexPolyhedron.full_space(2)]))
    sl = inverse_image(fd, (1, 2), ConvexPolyhedron.box((0, 0), F(2)))
    assert sl.contains((1, 1))
    assert not sl.contains((1, F(9, 8)))


def test_inverse_image_cross_of_zero_is_origin():
    box = ConvexPolyhedron.box((0, 0), F(1))
    sl = inverse_image(cross_quad(), (0, 0), box)
    assert sl.contains((0, 0))
    for bad in [(F(1, 2), F(0)), (F(0), F(1, 2)), (F(1), F(0))]:
        assert not sl.contains(bad)


def test_inverse_adjointness_randomized():
    f = saddle()
    box = ConvexPolyhedron.box((0, 0), F(2))
    rng = random.Random(11)
    for _ in range(25):
        v = (F(rng.randint(-2, 2)), F(rng.randint(-2, 2)))
        x = (F(rng.randint(0, 2)), F(rng.randint(-2, 2)))
        if not f.domain.contains(x):
            continue
        sl = inverse_image(f, v, box)
        member = sl.contains(x)
        direct = subdifferential(f, x).contains(v)
        assert member == direct


def test_distance_to_inverse():
    box = ConvexPolyhedron.box((0, 0), F(1))
    d = distance_to_inverse(saddle(), (0, 0), (1.0, 0.0), box)
    assert abs(d - math.sqrt(2) / 2) < 1e-10
    assert distance_to_inverse(saddle(), (0, 0), (0.5, 0.5), box) <= 1e-10
    f1 = smooth_1d()
    assert abs(distance_to_inverse(f1, (0,), (0.3,),
                                   ConvexPolyhedron.box((0,), F(1))) - 0.3) < 1e-12


def test_distance_to_empty_slice_is_an_error_not_zero():
    f = saddle()
    box = ConvexPolyhedron.box((0, 0), F(1))
    with pytest.raises(EmptySliceError):
        distance_to_inverse(f, (0, F(1, 10)), (0.0, 0.0), box)


def test_stationary_points_oscillating():
    osc = ANALYTIC_REGISTRY["sin-inv"]
    roots = stationary_points_1d(osc, (0.001, 0.1), 100_000)
    assert len(roots) >= 3
    for r in roots[:5]:
        assert abs(float(osc.derivative(r))) < 1e-6


def test_stationary_points_square():
    sq = ANALYTIC_REGISTRY["square"]
    assert stationary_points_1d(sq, (-1, 1), 1001) == [0.0]
    assert stationary_points_1d(sq, (1, 2), 101) == []


def test_analytic_enclosures():
    fo = FunctionSpec(fixture=ANALYTIC_REGISTRY["sin-inv"])
    sd = subdifferential(fo, (0.0,))
    assert sd.contains(0.0) and sd.contains(-5.0)  # open below at the boundary
    assert not sd.contains(2.0)
    fa = FunctionSpec(fixture=ANALYTIC_REGISTRY["abs"])
    sd0 = subdifferential(fa, (0.0,))
    assert sd0.contains(1.0) and sd0.contains(-1.0) and not sd0.contains(1.5)
    assert subdifferential(fa, (2.0,)).contains(1.0)
    assert subdifferential_distance(fa, (2.0,), (0.0,)) == 1.0


def test_analytic_inverse_points_abs():
    pts = analytic_inverse_points(ANALYTIC_REGISTRY["abs"], 0.0, 0.0, 1.0)
    assert pts == [0.0]
