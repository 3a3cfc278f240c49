"""Inversion centers of a double lattice and their position on the packed body."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..exact import floor_exact, sign
from ..linalg import Vec3, det_rows, dot
from ..model import Packing, cell_volume_lattice
from ..separation import ConvexBody, tetra_body, union_body


class NoInversion(ValueError):
    pass


@dataclass(frozen=True)
class CenterClass:
    parity: tuple[int, int, int]
    center: Vec3  # base representative c0 + (parity . cell) / 2
    on_surface: tuple[Vec3, ...]  # lattice translates lying on the body's boundary


@dataclass(frozen=True)
class InversionCenterReport:
    base_center: Vec3
    classes: tuple[CenterClass, ...]
    edges: tuple[Vec3, Vec3, Vec3]
    volume_ratio: object
    body: str

    @property
    def surface_count(self) -> int:
        return sum(1 for c in self.classes if c.on_surface)


def base_inversion(packing: Packing):
    for g in packing.group.generators:
        if all(
            g.linear[i][j] == (-1 if i == j else 0) for i in range(3) for j in range(3)
        ):
            return g
    raise NoInversion(f"space group {packing.group.label} has no point inversion")


def _on_boundary(body: ConvexBody, p: Vec3) -> bool:
    signs = [sign(dot(f.normal, p) - f.offset) for f in body.facets]
    return max(signs) == 0


def packed_body(packing: Packing) -> tuple[ConvexBody, str]:
    if packing.dimers is not None:
        i, j = packing.dimers[0]
        return union_body(packing.motif[i], packing.motif[j]), "dimer"
    return tetra_body(packing.motif[0]), "tetrahedron"


def inversion_center_report(packing: Packing) -> InversionCenterReport:
    """The eight inversion centers per primitive cell and which touch the body's surface.

    Inversion about c0 composed with translation t is inversion about c0 + t/2,
    so the classes modulo the lattice are c0 + (e . cell)/2 for e in {0,1}^3.
    """
    g = base_inversion(packing)
    c0 = g.translation / 2
    cell = packing.cell
    edges = tuple(v / 2 for v in cell)
    ratio = abs_scalar(det_rows(*edges)) / cell_volume_lattice(packing)
    body, name = packed_body(packing)

    # lattice translates that can reach the body's bounding box, in cell coordinates
    coords = [packing.group.cell_coordinates(v) for v in body.vertices]
    classes = []
    for parity in itertools.product((0, 1), repeat=3):
        base = c0 + sum((cell[i] * parity[i] for i in range(3)), Vec3(0, 0, 0)) / 2
        bc = packing.group.cell_coordinates(base)
        ranges = []
        for i in range(3):
            lo = min(c[i] for c in coords) - bc[i]
            hi = max(c[i] for c in coords) - bc[i]
            ranges.append(range(-floor_exact(-lo), floor_exact(hi) + 1))
        hits = []
        for n in itertools.product(*ranges):
            p = base + packing.group.translation(n)
            if _on_boundary(body, p):
                hits.append(p)
        classes.append(CenterClass(parity, base, tuple(hits)))
    return InversionCenterReport(c0, tuple(classes), edges, ratio, name)


def abs_scalar(v):
    return -v if sign(v) < 0 else v
