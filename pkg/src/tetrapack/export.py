"""Mesh export (OFF, OBJ) of a block of cells in Cartesian coordinates.

Coordinates stay exact until the last step: each vertex is an exact lattice
point, mapped through a Cartesian basis evaluated with mpmath at generous
precision and only then rounded for printing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import mpmath

from .exact import QuadExt, as_fraction, sign
from .linalg import Vec3, det_rows, orient
from .model import SIMPLE_BASIS, Packing, Tetrahedron

FORMATS = ("off", "obj")
# (face, opposite vertex) for the four faces of a tetrahedron
_FACES = (((1, 2, 3), 0), ((0, 2, 3), 1), ((0, 1, 3), 2), ((0, 1, 2), 3))


def _mp(value):
    if isinstance(value, QuadExt):
        return _mp(value.rat) + _mp(value.coef) * mpmath.sqrt(value.d)
    value = as_fraction(value)
    return mpmath.mpf(value.numerator) / value.denominator


def cartesian_basis(packing: Packing) -> tuple[mpmath.matrix, int]:
    """Rows are the Cartesian images of the lattice basis; second value is sign(det)."""
    if packing.family == "simple":
        basis = mpmath.matrix([[_mp(c) for c in r] for r in SIMPLE_BASIS])
        return basis, sign(det_rows(*(Vec3(*r) for r in SIMPLE_BASIS)))
    # G = L L^T, so the rows of L have the right inner products; for a diagonal
    # Gram this is the orthogonal basis with the square-root norms
    g = mpmath.matrix([[_mp(c) for c in row] for row in packing.gram])
    return mpmath.cholesky(g), 1


def round_fixed(v, places: int) -> str:
    """Fixed-point text of an mpmath value, rounded half away from zero."""
    scaled = v * mpmath.mpf(10) ** places
    n = int(mpmath.floor(abs(scaled) + mpmath.mpf(1) / 2))
    if scaled < 0:
        n = -n
    digits = str(abs(n)).rjust(places + 1, "0")
    return ("-" if n < 0 else "") + digits[:-places] + "." + digits[-places:]


@dataclass
class MeshExport:
    vertices: list[tuple[str, str, str]]  # Cartesian, already rounded
    faces: list[tuple[int, int, int]]
    tetrahedra: int
    shells: int
    precision: int

    def to_off(self) -> str:
        lines = ["OFF", f"{len(self.vertices)} {len(self.faces)} 0"]
        lines += [" ".join(p) for p in self.vertices]
        lines += [f"3 {a} {b} {c}" for a, b, c in self.faces]
        return "\n".join(lines) + "\n"

    def to_obj(self) -> str:
        lines = [f"# {self.tetrahedra} tetrahedra, {self.shells}^3 cells"]
        lines += ["v " + " ".join(p) for p in self.vertices]
        lines += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in self.faces]
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "off":
            return self.to_off()
        if fmt == "obj":
            return self.to_obj()
        raise ValueError(f"unknown mesh format {fmt!r}")


def shell_tetrahedra(packing: Packing, shells: int) -> list[Tetrahedron]:
    return [
        packing.tetrahedron(k, n)
        for n in itertools.product(range(shells), repeat=3)
        for k in range(len(packing.motif))
    ]


def build_mesh(packing: Packing, shells: int = 1, precision: int = 6) -> MeshExport:
    if shells < 1:
        raise ValueError("shells must be at least 1")
    if not 1 <= precision <= 17:
        raise ValueError("precision must be between 1 and 17")
    tets = shell_tetrahedra(packing, shells)
    verts, faces = [], []
    with mpmath.workdps(precision + 30):
        basis, det_sign = cartesian_basis(packing)
        for t in tets:
            base = len(verts)
            for p in t.vertices:
                lat = [_mp(c) for c in p]
                cart = [sum(lat[i] * basis[i, j] for i in range(3)) for j in range(3)]
                verts.append(tuple(round_fixed(c, precision) for c in cart))
            for (a, b, c), opp in _FACES:
                # outward iff the opposite vertex lies on the negative side in Cartesian space
                s = sign(orient(t.vertices[a], t.vertices[b], t.vertices[c], t.vertices[opp])) * det_sign
                faces.append((base + a, base + c, base + b) if s > 0 else (base + a, base + b, base + c))
    return MeshExport(verts, faces, len(tets), shells, precision)


def export_mesh(packing: Packing, fmt: str, shells: int = 1, precision: int = 6) -> str:
    if fmt not in FORMATS:
        raise ValueError(f"unknown mesh format {fmt!r}")
    return build_mesh(packing, shells, precision).render(fmt)


def parse_mesh_vertices(text: str) -> tuple[list[tuple[float, ...]], list[tuple[int, ...]]]:
    """Read back an OFF or OBJ produced by ``export_mesh`` (floats, zero-based faces)."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if lines[0] == "OFF":
        nv, nf, _ = map(int, lines[1].split())
        verts = [tuple(map(float, ln.split())) for ln in lines[2 : 2 + nv]]
        faces = [tuple(map(int, ln.split()[1:])) for ln in lines[2 + nv : 2 + nv + nf]]
        return verts, faces
    verts = [tuple(map(float, ln.split()[1:])) for ln in lines if ln.startswith("v ")]
    faces = [tuple(int(i) - 1 for i in ln.split()[1:]) for ln in lines if ln.startswith("f ")]
    return verts, faces


