import itertools
import math
from fractions import Fraction as F

import pytest

from tetrapack.export import build_mesh, cartesian_basis, export_mesh, parse_mesh_vertices, round_fixed
from tetrapack.model import build_dimer_packing, build_simple_packing


@pytest.fixture(scope="module")
def dimer():
    return build_dimer_packing(F(4, 7))


def edges(verts, k):
    tet = verts[4 * k : 4 * k + 4]
    return [math.dist(a, b) for a, b in itertools.combinations(tet, 2)]


def test_counts(dimer):
    m = build_mesh(dimer, 1)
    assert (m.tetrahedra, len(m.vertices), len(m.faces)) == (4, 16, 16)
    m3 = build_mesh(dimer, 3)
    assert (m3.tetrahedra, len(m3.faces)) == (108, 432)


@pytest.mark.parametrize("fmt", ["off", "obj"])
def test_text_roundtrip(dimer, fmt):
    m = build_mesh(dimer, 2, 8)
    verts, faces = parse_mesh_vertices(export_mesh(dimer, fmt, 2, 8))
    assert verts == [tuple(map(float, v)) for v in m.vertices]
    assert faces == m.faces


@pytest.mark.parametrize("precision", [4, 8, 12])
def test_edge_lengths(dimer, precision):
    verts, _ = parse_mesh_vertices(export_mesh(dimer, "off", 1, precision))
    tol = 10.0 ** -(precision - 2)
    for k in range(4):
        assert all(abs(e - 1) < max(tol, 1e-12) for e in edges(verts, k))


def test_simple_edges_are_sqrt2():
    verts, _ = parse_mesh_vertices(export_mesh(build_simple_packing(), "obj", 1, 10))
    for k in range(2):
        assert all(abs(e - math.sqrt(2)) < 1e-8 for e in edges(verts, k))


@pytest.mark.parametrize("make", [lambda: build_dimer_packing(F(29, 56)), build_simple_packing])
def test_faces_point_outward(make):
    p = make()
    verts, faces = parse_mesh_vertices(export_mesh(p, "off", 2, 10))
    for i, (a, b, c) in enumerate(faces):
        tet = verts[4 * (i // 4) : 4 * (i // 4) + 4]
        cen = [sum(v[j] for v in tet) / 4 for j in range(3)]
        pa, pb, pc = verts[a], verts[b], verts[c]
        u = [pb[j] - pa[j] for j in range(3)]
        w = [pc[j] - pa[j] for j in range(3)]
        n = (u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0])
        assert sum(n[j] * (pa[j] - cen[j]) for j in range(3)) > 0


def test_matches_exact_coordinates(dimer):
    # the basis reproduces the Gram, so lattice points map to the right distances
    import mpmath

    with mpmath.workdps(40):
        basis, sgn = cartesian_basis(dimer)
        assert sgn == 1
        for i in range(3):
            for j in range(3):
                dot = sum(basis[i, k] * basis[j, k] for k in range(3))
                g = dimer.gram[i][j]
                assert abs(dot - mpmath.mpf(g.numerator) / g.denominator) < mpmath.mpf(10) ** -35


def test_round_fixed():
    import mpmath

    assert round_fixed(mpmath.mpf("0.125"), 2) == "0.13"
    assert round_fixed(mpmath.mpf("-0.125"), 2) == "-0.13"
    assert round_fixed(mpmath.mpf("0.135"), 2) == "0.14"
    assert round_fixed(mpmath.mpf("-0.004"), 2) == "0.00"
    assert round_fixed(mpmath.mpf(2), 3) == "2.000"


@pytest.mark.parametrize("kwargs", [{"shells": 0}, {"precision": 0}, {"precision": 18}])
def test_bad_arguments(dimer, kwargs):
    with pytest.raises(ValueError):
        build_mesh(dimer, **kwargs)


def test_unknown_format(dimer):
    with pytest.raises(ValueError):
        export_mesh(dimer, "stl")
