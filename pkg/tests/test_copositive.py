import itertools
from fractions import Fraction as F

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from tiltkit.cones import PolyCone
from tiltkit.copositive import (cone_form_min_sign, cone_form_nonnegative,
                                cone_zero_points, gram, orthant_min_sign,
                                orthant_zero_witnesses, simplex_min, _quad)
from tiltkit.rational import dot, mat, vec

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def sym(rows):
    n = len(rows)
    return mat([[(rows[i][j] + rows[j][i]) / 2 for j in range(n)] for i in range(n)])


def pairing(a, b):
    # the bilinear form of <w, -z> on stacked 2-D vectors (w, z)
    return F(-1, 2) * (a[0] * b[1] + b[0] * a[1])


def test_identity_strictly_copositive():
    assert orthant_min_sign(mat([[1, 0], [0, 1]])) == (1, None)


def test_psd_with_positive_kernel_is_zero():
    s, w = orthant_min_sign(mat([[1, -1], [-1, 1]]))
    assert s == 0 and w is not None and _quad(mat([[1, -1], [-1, 1]]), w) == 0


def test_hyperbolic_negative():
    n = mat([[0, -1], [-1, 0]])
    s, w = orthant_min_sign(n)
    assert s == -1 and _quad(n, w) < 0 and all(x >= 0 for x in w)


def test_indefinite_but_copositive():
    # eigenvalues -1 and 3, yet nonnegative on the orthant
    assert orthant_min_sign(mat([[1, 2], [2, 1]]))[0] == 1


def test_horn_matrix_exactly_zero():
    h = mat([[1, -1, 1, 1, -1], [-1, 1, -1, 1, 1], [1, -1, 1, -1, 1],
             [1, 1, -1, 1, -1], [-1, 1, 1, -1, 1]])
    val, arg = simplex_min(h)
    assert val == 0 and _quad(h, arg) == 0
    assert orthant_min_sign(h)[0] == 0


def test_horn_matrix_perturbed_negative():
    eps = F(1, 100)
    h = [[F(v) for v in row] for row in
         [[1, -1, 1, 1, -1], [-1, 1, -1, 1, 1], [1, -1, 1, -1, 1],
          [1, 1, -1, 1, -1], [-1, 1, 1, -1, 1]]]
    for i in range(5):
        h[i][i] -= eps
    s, w = orthant_min_sign(mat(h))
    assert s == -1 and _quad(mat(h), w) < 0


def test_block_pair_with_irrational_spectrum():
    # two copies of [[0,1/2],[1/2,1]]: negative eigenvalue, but the
    # eigenvector mixes signs, so the orthant minimum is exactly zero
    n = mat([[0, F(1, 2), 0, 0], [F(1, 2), 1, 0, 0],
             [0, 0, 0, F(1, 2)], [0, 0, F(1, 2), 1]])
    s, w = orthant_min_sign(n)
    assert s == 0


@given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=3, max_size=3))
def test_simplex_min_is_a_true_minimum(rows):
    n = sym(rows)
    val, arg = simplex_min(n)
    assert sum(arg) == 1 and all(x >= 0 for x in arg)
    assert _quad(n, arg) == val
    # no sampled simplex point goes below the reported exact minimum
    rng = np.random.default_rng(0)
    nf = np.array([[float(x) for x in r] for r in n])
    for _ in range(200):
        t = rng.dirichlet([1.0, 1.0, 1.0])
        assert t @ nf @ t >= float(val) - 1e-9


def test_zero_witness_enumeration():
    n = mat([[1, -1], [-1, 1]])
    zeros = list(orthant_zero_witnesses(n))
    assert any(w[0] > 0 and w[1] > 0 for w in zeros)
    for w in zeros:
        assert _quad(n, w) == 0


def test_cone_form_quadrant_negative():
    quad = PolyCone.from_generators([(1, 0), (0, 1)], 2)
    s, w = cone_form_min_sign(quad, pairing)
    assert s == -1
    assert dot(vec(w[:1]), vec(w[1:])) > 0  # w and z share sign: pairing < 0


def test_cone_form_zero_spuriousness():
    # q = (a+b)b on cone{(-1,0),(-1,1)}: zero only where the z-part vanishes
    c = PolyCone.from_generators([(-1, 0), (-1, 1)], 2)
    s, w = cone_form_min_sign(c, pairing)
    assert s == 0
    zs = list(cone_zero_points(c, pairing))
    assert zs and all(v[1] == 0 for v in zs)


def test_cone_form_lines():
    anti = PolyCone.from_generators([], 2, lineality=[(1, -1)])
    assert cone_form_min_sign(anti, pairing)[0] == 1
    diag = PolyCone.from_generators([], 2, lineality=[(1, 1)])
    assert cone_form_min_sign(diag, pairing)[0] == -1
    assert cone_form_nonnegative(anti, pairing) == (True, None)


def test_trivial_cone():
    assert cone_form_min_sign(PolyCone.zero(2), pairing) == (1, None)
