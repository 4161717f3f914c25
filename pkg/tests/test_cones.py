from fractions import Fraction as F

from hypothesis import given
from hypothesis import strategies as st

from tiltkit.cones import ConeUnion, PolyCone, cone_union_covers
from tiltkit.rational import neg, vec

small_ints = st.integers(min_value=-3, max_value=3)
ray2 = st.tuples(small_ints, small_ints).filter(lambda r: any(r))


def test_wedge_normal_cone_duality():
    # cone{(-1,1),(-1,-1)} and the wedge {x1 >= |x2|} are mutually polar
    n = PolyCone.from_generators([(-1, 1), (-1, -1)], 2)
    t = n.polar()
    assert t.contains((1, 0)) and t.contains((2, 2)) and not t.contains((0, 1))
    assert sorted(t.rays) == [vec([1, -1]), vec([1, 1])]


@given(st.lists(ray2, min_size=1, max_size=4))
def test_polar_involution(rays):
    c = PolyCone.from_generators(rays, 2)
    assert c.polar().polar().equals(c)


@given(st.lists(ray2, min_size=1, max_size=3))
def test_polar_pairing_nonpositive(rays):
    c = PolyCone.from_generators(rays, 2)
    p = c.polar()
    for g in c.generators():
        for h in p.generators():
            assert sum(a * b for a, b in zip(g, h)) <= 0


def test_faces_of_pointed_2d_cone():
    c = PolyCone.from_generators([(-1, 1), (-1, -1)], 2)
    faces = c.faces()
    dims = sorted(f.cone_dim() for f in faces)
    assert dims == [0, 1, 1, 2]  # apex, two extreme rays, the cone


def test_faces_trivial_cone():
    assert len(PolyCone.zero(2).faces()) == 1


def test_faces_halfplane_lineality():
    half = PolyCone.from_inequalities([(0, -1)], 2)  # upper halfplane
    faces = half.faces()
    assert len(faces) == 2
    assert sorted(f.cone_dim() for f in faces) == [1, 2]
    line = [f for f in faces if f.cone_dim() == 1][0]
    assert line.contains((1, 0)) and line.contains((-1, 0)) and not line.contains((0, 1))


def test_faces_of_line():
    line = PolyCone.from_inequalities([(0, 1), (0, -1)], 2)
    assert len(line.faces()) == 1


def test_hrep_vrep_roundtrip():
    c = PolyCone.from_inequalities([(1, 1), (-1, 1)], 2)  # {x+y<=0, -x+y<=0}
    assert c.contains((0, -1)) and c.contains((1, -1)) and not c.contains((0, 1))
    d = PolyCone.from_generators(c.rays, 2, lineality=c.lineality)
    assert d.equals(c)


def test_full_and_zero():
    full = PolyCone.full(3)
    assert full.contains((1, -2, 3))
    assert len(full.lineality) == 3
    z = PolyCone.zero(2)
    assert z.is_trivial() and z.contains((0, 0)) and not z.contains((1, 0))


def test_containment_and_union_cover():
    quad = PolyCone.from_generators([(1, 0), (0, 1)], 2)
    ray = PolyCone.from_generators([(1, 1)], 2)
    assert quad.contains_cone(ray)
    assert not ray.contains_cone(quad)
    upper = PolyCone.from_inequalities([(0, -1)], 2)
    lower = PolyCone.from_inequalities([(0, 1)], 2)
    assert cone_union_covers([upper, lower], [PolyCone.full(2)])
    assert not cone_union_covers([upper], [PolyCone.full(2)])


def test_cone_union_dedupe_and_membership():
    quad = PolyCone.from_generators([(1, 0), (0, 1)], 2)
    ray = PolyCone.from_generators([(1, 1)], 2)
    u = ConeUnion([ray, quad, PolyCone.zero(2)]).dedupe()
    assert len(u.pieces) == 1
    assert u.contains((2, 3)) and not u.contains((-1, 0))


def test_intersection():
    a = PolyCone.from_inequalities([(1, 0)], 2)   # x <= 0
    b = PolyCone.from_inequalities([(0, 1)], 2)   # y <= 0
    c = a.intersect(b)
    assert c.contains((-1, -1)) and not c.contains((-1, 1))
