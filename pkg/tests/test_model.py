from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tetrapack.exact import QuadExt
from tetrapack.linalg import Mat3, vec
from tetrapack.model import (
    DIMER_GRAM,
    DIMER_R,
    IDENTITY,
    INVERSION,
    ROTATION_2,
    NotRegular,
    Packing,
    Tetrahedron,
    apply_isometry,
    build_dimer_packing,
    build_layered_packing,
    build_simple_packing,
    centroid,
    check_metric_preserved,
    check_regularity,
    monoclinic_gram,
)


def _tetra_set(p: Packing, shells=range(-1, 2)):
    out = set()
    for n in ((i, j, k) for i in shells for j in shells for k in shells):
        for m in range(len(p.motif)):
            out.add(frozenset(p.tetrahedron(m, n).vertices))
    return out


def test_dimer_motif_structure(dimer47):
    r1, r2, r3, r4 = DIMER_R
    t0, t1, t2, t3 = dimer47.motif
    apex = (r2 + r3 + r4) * F(2, 3) - r1
    assert t1.vertices == (apex, r2, r3, r4)
    assert ROTATION_2(r1) == vec(F(-13, 28), F(-7, 30), F(-10, 39)) == apex
    assert set(apply_isometry(ROTATION_2, t0).vertices) == set(t1.vertices)
    assert t2.vertices == tuple(-p for p in t0.vertices)
    assert t3.vertices == tuple(-p for p in t1.vertices)
    # R2 fixes r2 and swaps r3 and r4, so T0 and T1 share that face
    assert ROTATION_2(r2) == r2 and ROTATION_2(r3) == r4
    assert set(t0.vertices) & set(t1.vertices) == {r2, r3, r4}


def test_dimer_cell_and_group(dimer47):
    assert dimer47.cell == (vec(1, 0, 0), vec(0, 1, 0), vec(F(4, 7), F(1, 2), F(1, 2)))
    assert dimer47.group.label == "C2/c"
    assert dimer47.gram == DIMER_GRAM
    assert len(dimer47.motif) == 4 and dimer47.transitive


def test_isometry_examples(dimer47):
    t0 = dimer47.motif[0]
    assert apply_isometry(IDENTITY, t0) == t0
    assert apply_isometry(INVERSION, t0).vertices == tuple(-p for p in DIMER_R)
    assert apply_isometry(ROTATION_2, apply_isometry(ROTATION_2, t0)) == t0


def test_metric_preservation():
    assert check_metric_preserved(INVERSION, DIMER_GRAM)
    assert check_metric_preserved(ROTATION_2, DIMER_GRAM)
    assert check_metric_preserved(INVERSION, build_simple_packing().gram)
    # diag(-1, 1, -1) keeps a.c (the sign flips cancel) but negates a.b and b.c
    assert check_metric_preserved(ROTATION_2, monoclinic_gram(1, 1, 1, F(1, 3)))
    skew = Mat3(vec(1, F(1, 3), 0), vec(F(1, 3), 1, 0), vec(0, 0, 1))
    assert not check_metric_preserved(ROTATION_2, skew)


def _cosets(p: Packing):
    reps = {}
    for g in p.motif_elements:
        r = p.group.reduce(g)
        reps[(r.linear, r.translation)] = r
    return reps


@pytest.mark.parametrize("build,order", [(lambda: build_dimer_packing(F(4, 7)), 4), (build_simple_packing, 2)])
def test_group_closure_modulo_translations(build, order):
    p = build()
    reps = _cosets(p)
    assert len(reps) == order
    for g in reps.values():
        for h in reps.values():
            r = p.group.reduce(g.compose(h))
            assert (r.linear, r.translation) in reps


@pytest.mark.parametrize("x", [F(29, 56), F(4, 7), F(9, 14), F(1, 3)])
def test_dimer_generators_map_packing_to_itself(x):
    p = build_dimer_packing(x)
    tets = _tetra_set(p)
    inner = {frozenset(p.tetrahedron(m, (0, 0, 0)).vertices) for m in range(4)}
    for g in (INVERSION, ROTATION_2):
        for t in inner:
            assert frozenset(g(v) for v in t) in tets


def test_regularity():
    assert check_regularity(build_dimer_packing(F(4, 7))) == 1
    assert check_regularity(build_simple_packing()) == 2
    p = build_dimer_packing(F(4, 7))
    bent = Tetrahedron((DIMER_R[0] + vec(F(1, 100), 0, 0), *DIMER_R[1:]), 0)
    with pytest.raises(NotRegular):
        check_regularity(Packing(p.gram, p.group, (bent,), "dimer"))


def test_all_motif_members_congruent(dimer47, simple):
    from tetrapack.model import squared_edge_lengths

    for p, e in ((dimer47, 1), (simple, 2)):
        for t in p.motif:
            assert set(squared_edge_lengths(t, p.gram)) == {e}


def test_centroids():
    t0 = build_dimer_packing(F(4, 7)).motif[0]
    assert centroid(t0) == vec(F(3, 7), F(-7, 30), F(5, 78))
    assert centroid(t0.negated()) == vec(F(-3, 7), F(7, 30), F(-5, 78))


def test_simple_packing_data(simple):
    assert len(simple.motif) == 2
    assert simple.motif[1].vertices == tuple(-p for p in simple.motif[0].vertices)
    assert simple.gram[0][0] == QuadExt(338, -104, 10) / 9
    assert simple.group.label == "P-1"


@given(st.fractions(min_value=0, max_value=1, max_denominator=60).filter(lambda x: x < 1), st.integers(-3, 3))
def test_dimer_x_reduced_mod_one(x, k):
    assert build_dimer_packing(x + k).x == x


def test_dimer_x_and_x_plus_one_same_tetrahedra():
    a, b = build_dimer_packing(F(1, 7)), build_dimer_packing(F(8, 7))
    assert a.cell == b.cell and a.motif == b.motif


def test_layered_single_offset_reproduces_family():
    lay = build_layered_packing([F(4, 7)])
    fam = build_dimer_packing(F(4, 7))
    assert _tetra_set(lay) == _tetra_set(fam)


def test_layered_two_layers():
    p = build_layered_packing([F(29, 56), F(9, 14)])
    assert len(p.motif) == 8 and not p.transitive
    assert p.cell[2] == vec(F(29, 56) + F(9, 14), 1, 1)
    assert p.dimers == ((0, 1), (2, 3), (4, 5), (6, 7))
    # the second layer is the first shifted by d_{x0}
    shift = vec(F(29, 56), F(1, 2), F(1, 2))
    assert all(p.motif[4 + k].vertices == tuple(v + shift for v in p.motif[k].vertices) for k in range(4))


def test_layered_rejects_empty():
    with pytest.raises(ValueError):
        build_layered_packing([])


def test_monoclinic_gram_hook():
    g = monoclinic_gram(2, 3, 5, 1)
    assert g == Mat3(vec(2, 0, 1), vec(0, 3, 0), vec(1, 0, 5))
    with pytest.raises(ValueError):
        monoclinic_gram(1, 1, 1, 2)  # not positive definite
