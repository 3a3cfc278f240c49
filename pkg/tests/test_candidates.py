from fractions import Fraction as F
import itertools

import numpy as np
import pytest

from tetrapack.linalg import vec
from tetrapack.model import INVERSION, ROTATION_2, build_dimer_packing, build_simple_packing, centroid
from tetrapack.verify import contact_census, enumerate_candidates
from tetrapack.verify.candidates import bounding_radius2, default_threshold2

LO, HI = F(29, 56), F(9, 14)


def _float_distances(packing, x=None, box=4):
    """Brute-force squared centroid distances in floating point over a wide offset box."""
    g = np.array([[float(c) for c in row] for row in packing.gram])
    cell = packing.cell if x is None else (vec(1, 0, 0), vec(0, 1, 0), vec(x, F(1, 2), F(1, 2)))
    cell = np.array([[float(c) for c in v] for v in cell])
    ref = np.array([float(c) for c in centroid(packing.motif[0])])
    offsets = list(itertools.product(range(-box, box + 1), repeat=3))
    shifts = np.array(offsets) @ cell
    out = {}
    for k, t in enumerate(packing.motif):
        d = shifts + (np.array([float(v) for v in centroid(t)]) - ref)
        d2 = np.einsum("ij,jk,ik->i", d, g, d)
        for n, v in zip(offsets, d2):
            if not (k == 0 and n == (0, 0, 0)):
                out[(k, n)] = float(v)
    return out


@pytest.mark.parametrize("x", [F(29, 56), F(4, 7), F(3, 5), F(9, 14)])
def test_dimer_candidates_match_float_brute_force(x):
    p = build_dimer_packing(x)
    exact = {c.identity for c in enumerate_candidates(p, inclusive=True)}
    dist = _float_distances(p)
    assert {i for i, d in dist.items() if d < 1.5 - 1e-9} <= exact <= {i for i, d in dist.items() if d < 1.5 + 1e-9}


def test_simple_candidates_match_float_brute_force(simple):
    cands = enumerate_candidates(simple, inclusive=True)
    assert cands.threshold2 == 3
    exact = {c.identity for c in cands}
    dist = _float_distances(simple)
    assert {i for i, d in dist.items() if d < 3 - 1e-9} <= exact <= {i for i, d in dist.items() if d < 3 + 1e-9}


def test_interval_candidates_match_dense_sampling():
    p = build_dimer_packing(LO)
    exact = {c.identity for c in enumerate_candidates(p, (LO, HI))}
    sampled = set()
    for x in np.linspace(float(LO), float(HI), 801):
        sampled |= {i for i, d in _float_distances(p, x, box=3).items() if d < 1.5 - 1e-12}
    assert sampled == exact


def test_candidate_counts_regression():
    # derived baselines (inclusive of exact ties)
    assert len(enumerate_candidates(build_dimer_packing(F(4, 7)), inclusive=True)) == 53
    assert len(enumerate_candidates(build_dimer_packing(LO), inclusive=True)) == 54
    assert len(enumerate_candidates(build_dimer_packing(HI), inclusive=True)) == 48
    assert len(enumerate_candidates(build_dimer_packing(LO), (LO, HI))) == 54
    assert len(enumerate_candidates(build_simple_packing(), inclusive=True)) == 41


def test_zero_threshold_is_empty(dimer47):
    assert len(enumerate_candidates(dimer47, threshold2=0)) == 0


def test_threshold_scales_with_edge_length(dimer47, simple):
    assert bounding_radius2(dimer47.motif[0], dimer47.gram) == F(3, 8)
    assert default_threshold2(dimer47) == F(3, 2)
    assert default_threshold2(simple) == 3


def test_simple_candidates_contain_all_contact_partners(simple):
    census = contact_census(simple)
    partners = {(rec.pair[1][0], rec.pair[1][1]) for rec in census.tetrahedron_contacts[0]}
    assert len(partners) == 19
    assert partners <= {c.identity for c in enumerate_candidates(simple)}


def test_no_duplicates(dimer47):
    ids = [c.identity for c in enumerate_candidates(dimer47, (LO, HI))]
    assert len(ids) == len(set(ids))


@pytest.mark.parametrize("g,target", [(ROTATION_2, 1), (INVERSION, 2)])
def test_candidates_equivariant_under_point_symmetry(dimer47, g, target):
    # g maps T0 onto motif[target], so it must map T0's neighbors onto those of motif[target]
    def neighbor_sets(ref):
        return {
            frozenset(dimer47.tetrahedron(c.motif_index, c.offset).vertices)
            for c in enumerate_candidates(dimer47, reference=ref, inclusive=True)
        }

    mapped = {frozenset(g(v) for v in s) for s in neighbor_sets(0)}
    assert mapped == neighbor_sets(target)
