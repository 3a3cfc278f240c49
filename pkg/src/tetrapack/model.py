"""Packing data model: tetrahedra, isometries, space groups and constructors.

All coordinates are with respect to the lattice basis {a, b, c}. Two packings
are built from published data: the one-parameter dimer double lattice (space
group C2/c, four tetrahedra per cell) and the simple double lattice over
Q(sqrt 10) (space group P-1, two tetrahedra per cell). A layered variant stacks
dimer layers with independent sliding offsets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction as F
from typing import Sequence

from .exact import QuadExt, as_fraction, sign
from .linalg import (
    Mat3,
    Vec3,
    ZERO,
    check_gram,
    det_rows,
    dot,
    gram_dot,
    inverse3,
    mean,
    orient,
    vec,
)

DIMER_X_MIN = F(29, 56)
DIMER_X_MAX = F(9, 14)
DIMER_GRAM = Mat3.diag(F(28, 25), F(3, 4), F(507, 350))

Offset = tuple[int, int, int]


class NotRegular(ValueError):
    def __init__(self, lengths) -> None:
        self.lengths = lengths
        super().__init__(f"edge lengths differ: {sorted(set(map(str, lengths)))}")


@dataclass(frozen=True)
class Tetrahedron:
    vertices: tuple[Vec3, Vec3, Vec3, Vec3]
    motif_index: int = 0
    lattice_offset: Offset = (0, 0, 0)

    @property
    def identity(self) -> tuple[int, Offset]:
        return (self.motif_index, self.lattice_offset)

    def translated(self, t: Vec3, offset: Offset | None = None) -> Tetrahedron:
        return Tetrahedron(
            tuple(p + t for p in self.vertices),
            self.motif_index,
            self.lattice_offset if offset is None else offset,
        )

    def negated(self) -> Tetrahedron:
        return replace(self, vertices=tuple(-p for p in self.vertices))

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(4) for j in range(i + 1, 4)]

    def is_degenerate(self) -> bool:
        return orient(*self.vertices) == 0


def centroid(t: Tetrahedron) -> Vec3:
    return mean(t.vertices)


@dataclass(frozen=True)
class Isometry:
    """Affine map ``x -> linear @ x + translation`` on lattice coordinates."""

    linear: Mat3
    translation: Vec3 = ZERO
    name: str = ""

    def __call__(self, p: Vec3) -> Vec3:
        return self.linear.apply(p) + self.translation

    def compose(self, other: Isometry) -> Isometry:
        """``self after other``."""
        return Isometry(
            self.linear @ other.linear,
            self.linear.apply(other.translation) + self.translation,
            f"{self.name}{other.name}",
        )

    def with_translation(self, t: Vec3) -> Isometry:
        return Isometry(self.linear, self.translation + t, self.name)


IDENTITY = Isometry(Mat3.identity(), ZERO, "E")
INVERSION = Isometry(-Mat3.identity(), ZERO, "I")
ROTATION_2 = Isometry(Mat3.diag(F(-1), F(1), F(-1)), vec(F(1, 2), 0, 0), "R2")


def apply_isometry(iso: Isometry, t: Tetrahedron) -> Tetrahedron:
    return replace(t, vertices=tuple(iso(p) for p in t.vertices))


def check_metric_preserved(iso: Isometry, gram: Mat3) -> bool:
    lin = iso.linear
    return lin.transpose() @ gram @ lin == gram


@dataclass(frozen=True)
class SpaceGroup:
    cell: tuple[Vec3, Vec3, Vec3]
    generators: tuple[Isometry, ...]
    label: str

    def cell_matrix(self) -> Mat3:
        """Matrix whose columns are the cell translations."""
        return Mat3(*self.cell).transpose()

    def translation(self, n: Offset) -> Vec3:
        a, b, c = self.cell
        return a * n[0] + b * n[1] + c * n[2]

    def cell_coordinates(self, p: Vec3) -> Vec3:
        return inverse3(self.cell_matrix()).apply(p)

    def reduce(self, iso: Isometry) -> Isometry:
        """Representative of ``iso`` modulo cell translations (translation in [0,1)^3 cell coords)."""
        frac = self.cell_coordinates(iso.translation)
        n = tuple(-math.floor(c) for c in frac)
        return iso.with_translation(self.translation(n))


@dataclass(frozen=True)
class Packing:
    """Periodic packing: motif tetrahedra repeated by the cell translations."""

    gram: Mat3
    group: SpaceGroup
    motif: tuple[Tetrahedron, ...]
    family: str
    x: F | None = None
    offsets: tuple[F, ...] | None = None
    # element mapping motif[0] onto motif[k] as a set; None for non-transitive assemblies
    motif_elements: tuple[Isometry, ...] | None = None
    dimers: tuple[tuple[int, int], ...] | None = None
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def transitive(self) -> bool:
        return self.motif_elements is not None

    @property
    def cell(self) -> tuple[Vec3, Vec3, Vec3]:
        return self.group.cell

    def tetrahedron(self, k: int, n: Offset) -> Tetrahedron:
        t = self.motif[k]
        if n == (0, 0, 0):
            return t
        return t.translated(self.group.translation(n), n)

    def dimer_of(self, k: int) -> int | None:
        if self.dimers is None:
            return None
        for i, pair in enumerate(self.dimers):
            if k in pair:
                return i
        return None

    def with_gram(self, gram: Mat3) -> Packing:
        check_gram(gram)
        return replace(self, gram=gram)


def squared_edge_lengths(t: Tetrahedron, gram: Mat3) -> list:
    p = t.vertices
    return [gram_dot(gram, p[i] - p[j], p[i] - p[j]) for i, j in t.edges()]


def check_regularity(packing: Packing):
    """Common squared edge length of ``motif[0]``; raises NotRegular otherwise."""
    lengths = squared_edge_lengths(packing.motif[0], packing.gram)
    if any(l != lengths[0] for l in lengths[1:]):
        raise NotRegular(lengths)
    return lengths[0]


def _same_vertex_set(s: Tetrahedron, t: Tetrahedron) -> bool:
    return set(s.vertices) == set(t.vertices)


def _check_transitivity(packing: Packing) -> None:
    base = packing.motif[0]
    for k, (t, g) in enumerate(zip(packing.motif, packing.motif_elements or ())):
        if not _same_vertex_set(apply_isometry(g, base), t):
            raise AssertionError(f"motif[{k}] is not the recorded image of motif[0]")


# Table coordinates of the dimer family's fundamental tetrahedron.
DIMER_R = (
    vec(F(27, 28), F(-7, 30), F(10, 39)),
    vec(F(1, 4), F(-9, 10), 0),
    vec(F(1, 14), F(1, 10), F(5, 13)),
    vec(F(3, 7), F(1, 10), F(-5, 13)),
)


def dimer_motif() -> tuple[Tetrahedron, ...]:
    r1, r2, r3, r4 = DIMER_R
    apex = (r2 + r3 + r4) * F(2, 3) - r1
    t0 = Tetrahedron((r1, r2, r3, r4), 0)
    t1 = Tetrahedron((apex, r2, r3, r4), 1)
    t2 = Tetrahedron(tuple(-p for p in t0.vertices), 2)
    t3 = Tetrahedron(tuple(-p for p in t1.vertices), 3)
    return (t0, t1, t2, t3)


def dimer_cell(x) -> tuple[Vec3, Vec3, Vec3]:
    return (vec(1, 0, 0), vec(0, 1, 0), vec(x, F(1, 2), F(1, 2)))


def reduce_mod_one(x) -> F:
    x = as_fraction(x)
    return x - math.floor(x)


def build_dimer_packing(x, gram: Mat3 | None = None) -> Packing:
    """Dimer double lattice with sliding parameter ``x`` (reduced mod 1).

    ``gram`` may be any monoclinic Gram (a.b = b.c = 0); the default makes the
    tetrahedra regular with unit edge.
    """
    x = reduce_mod_one(x)
    gram = check_gram(DIMER_GRAM if gram is None else gram)
    group = SpaceGroup(dimer_cell(x), (INVERSION, ROTATION_2), "C2/c")
    elements = (IDENTITY, ROTATION_2, INVERSION, INVERSION.compose(ROTATION_2))
    packing = Packing(
        gram=gram,
        group=group,
        motif=dimer_motif(),
        family="dimer",
        x=x,
        motif_elements=elements,
        dimers=((0, 1), (2, 3)),
    )
    _check_transitivity(packing)
    return packing


SQRT10 = QuadExt(0, 1, 10)


def _q(a: int, b: int) -> QuadExt:
    return QuadExt(a, b, 10)


# Cartesian basis vectors for the simple double lattice, entries in Q(sqrt 10).
SIMPLE_BASIS = (
    (_q(1, 0), (_q(-13, 4)) / 3, _q(0, 0)),
    ((_q(-4, 1)) / 3, _q(3, -1), _q(-1, 0)),
    (_q(3, -1), _q(1, 0), (_q(4, -1)) / 3),
)

_SIMPLE_R = (
    ((433, -86), (611, -133), (188, -22)),
    ((111, -30), (93, -75), (-66, -42)),
    ((-85, -28), (13, -29), (4, 10)),
    ((179, -106), (427, -101), (-20, -50)),
)


def simple_gram() -> Mat3:
    rows = [Vec3(*b) for b in SIMPLE_BASIS]
    return Mat3.from_rows([[dot(r, s) for s in rows] for r in rows])


def simple_motif() -> tuple[Tetrahedron, ...]:
    verts = tuple(Vec3(*(_q(a, b) / 246 for a, b in row)) for row in _SIMPLE_R)
    t0 = Tetrahedron(verts, 0)
    t1 = Tetrahedron(tuple(-p for p in verts), 1)
    return (t0, t1)


def build_simple_packing() -> Packing:
    gram = check_gram(simple_gram())
    one, zero = _q(1, 0), _q(0, 0)
    cell = (Vec3(one, zero, zero), Vec3(zero, one, zero), Vec3(zero, zero, one))
    group = SpaceGroup(cell, (INVERSION,), "P-1")
    packing = Packing(
        gram=gram,
        group=group,
        motif=simple_motif(),
        family="simple",
        motif_elements=(IDENTITY, INVERSION),
    )
    _check_transitivity(packing)
    return packing


def build_layered_packing(offsets: Sequence, gram: Mat3 | None = None) -> Packing:
    """Stack ``len(offsets)`` dimer layers; layer j+1 sits at ``d_{offsets[j]}`` from layer j."""
    if not offsets:
        raise ValueError("layered packing needs at least one offset")
    xs = tuple(reduce_mod_one(o) for o in offsets)
    k = len(xs)
    base = dimer_motif()
    motif: list[Tetrahedron] = []
    shift = vec(0, 0, 0)
    for j, xj in enumerate(xs):
        for m, t in enumerate(base):
            moved = t.translated(shift)
            motif.append(Tetrahedron(moved.vertices, 4 * j + m))
        shift = shift + vec(xj, F(1, 2), F(1, 2))
    cell = (vec(1, 0, 0), vec(0, 1, 0), shift)
    gram = check_gram(DIMER_GRAM if gram is None else gram)
    group = SpaceGroup(cell, (), "layered")
    transitive = k == 1
    return Packing(
        gram=gram,
        group=group,
        motif=tuple(motif),
        family="layered",
        x=xs[0] if transitive else None,
        offsets=xs,
        motif_elements=(
            (IDENTITY, ROTATION_2, INVERSION, INVERSION.compose(ROTATION_2)) if transitive else None
        ),
        dimers=tuple(p for j in range(k) for p in ((4 * j, 4 * j + 1), (4 * j + 2, 4 * j + 3))),
    )


def monoclinic_gram(aa, bb, cc, ac=0) -> Mat3:
    """Gram with a.b = b.c = 0; the affine hook for the general monoclinic family."""
    z = F(0)
    aa, bb, cc, ac = (as_fraction(v) for v in (aa, bb, cc, ac))
    return check_gram(Mat3.from_rows([[aa, z, ac], [z, bb, z], [ac, z, cc]]))


def cell_volume_lattice(packing: Packing):
    a, b, c = packing.cell
    v = det_rows(a, b, c)
    return -v if sign(v) < 0 else v
