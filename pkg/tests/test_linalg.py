from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from tetrapack.linalg import (
    Mat3,
    Vec3,
    affine_rank,
    check_gram,
    det3,
    det_rows,
    gram_dot,
    inverse3,
    orient,
    orient_sign,
    plane_through,
    solve3,
    tetra_volume_lattice,
    vec,
)
from tetrapack.model import DIMER_GRAM, DIMER_R, simple_motif

small = st.fractions(min_value=-6, max_value=6, max_denominator=7)
vecs = st.builds(Vec3, small, small, small)
mats = st.builds(Mat3, vecs, vecs, vecs)


def test_gram_dot_unit_edges():
    assert gram_dot(Mat3.identity(), vec(1, 0, 0), vec(1, 0, 0)) == 1
    r1, r2, r3, r4 = DIMER_R
    assert r1 - r2 == vec(F(5, 7), F(2, 3), F(10, 39))
    assert gram_dot(DIMER_GRAM, r1 - r2, r1 - r2) == 1
    assert r3 - r4 == vec(F(-5, 14), 0, F(10, 13))
    assert gram_dot(DIMER_GRAM, r3 - r4, r3 - r4) == 1


def test_det3_examples():
    assert det3(Mat3.identity()) == 1
    for x in (F(0), F(29, 56), F(4, 7), F(7, 3)):
        assert det_rows(vec(1, 0, 0), vec(0, 1, 0), vec(x, F(1, 2), F(1, 2))) == F(1, 2)
    assert det_rows(vec(1, 2, 3), vec(4, 5, 6), vec(1, 2, 3)) == 0


def test_orient_and_volume_of_table_tetrahedron():
    r1, r2, r3, r4 = DIMER_R
    assert orient(r2, r3, r4, r1) == F(-25, 39)
    assert orient_sign(r2, r3, r4, r1) == -1
    assert tetra_volume_lattice(DIMER_R) == F(25, 234)
    # Cartesian volume squared: (25/234)^2 det G = (sqrt(2)/12)^2
    assert F(25, 234) ** 2 * det3(DIMER_GRAM) == F(1, 72)


def test_simple_volume_in_quadratic_field():
    from tetrapack.exact import QuadExt

    assert tetra_volume_lattice(simple_motif()[0].vertices) == QuadExt(139, 40, 10) / 738


def test_coplanar_points_have_zero_orientation():
    assert orient(vec(0, 0, 0), vec(1, 0, 0), vec(0, 1, 0), vec(F(3, 2), F(-7, 5), 0)) == 0
    assert tetra_volume_lattice([vec(0, 0, 0), vec(1, 0, 0), vec(0, 1, 0), vec(1, 1, 0)]) == 0


@given(vecs, vecs, vecs, vecs)
def test_orient_antisymmetric(p, q, r, s):
    assert orient(p, q, r, s) == -orient(q, p, r, s)
    assert orient(p, q, r, s) == -orient(p, q, s, r)
    assert orient(p, q, r, s) == orient(q, r, p, s)  # even permutation


@given(vecs, vecs, vecs, vecs, mats, vecs)
def test_orient_affine_invariance(p, q, r, s, m, t):
    d = det3(m)
    assume(d != 0)
    f = lambda x: m.apply(x) + t  # noqa: E731
    assert orient(f(p), f(q), f(r), f(s)) == d * orient(p, q, r, s)


@given(vecs, vecs, vecs, vecs, vecs)
def test_volume_translation_and_permutation_invariant(p, q, r, s, t):
    v = tetra_volume_lattice([p, q, r, s])
    assert tetra_volume_lattice([x + t for x in (p, q, r, s)]) == v
    assert tetra_volume_lattice([s, p, r, q]) == v


@given(vecs, vecs, vecs, vecs)
def test_plane_through_matches_orient(p, q, r, x):
    n, h = plane_through(p, q, r)
    assert dot_minus(n, x, h) == orient(p, q, r, x)


def dot_minus(n, x, h):
    return n[0] * x[0] + n[1] * x[1] + n[2] * x[2] - h


@given(mats, vecs)
def test_inverse_and_solve(m, b):
    assume(det3(m) != 0)
    inv = inverse3(m)
    assert inv @ m == Mat3.identity()
    assert m.apply(solve3(m, b)) == b


def test_solve3_singular_returns_none():
    assert solve3(Mat3(vec(1, 2, 3), vec(2, 4, 6), vec(0, 0, 1)), vec(1, 1, 1)) is None


def test_check_gram():
    check_gram(DIMER_GRAM)
    with pytest.raises(ValueError):
        check_gram(Mat3(vec(1, 2, 0), vec(0, 1, 0), vec(0, 0, 1)))  # not symmetric
    with pytest.raises(ValueError):
        check_gram(Mat3(vec(1, 2, 0), vec(2, 1, 0), vec(0, 0, 1)))  # indefinite


@given(vecs)
def test_positive_definite_gram_is_positive(u):
    assume(not u.is_zero())
    assert gram_dot(DIMER_GRAM, u, u) > 0


def test_affine_rank():
    o, a, b, c = vec(0, 0, 0), vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, 1)
    assert affine_rank([]) == -1
    assert affine_rank([a, a]) == 0
    assert affine_rank([o, a, a * 2]) == 1
    assert affine_rank([o, a, b, a + b]) == 2
    assert affine_rank([o, a, b, c]) == 3
