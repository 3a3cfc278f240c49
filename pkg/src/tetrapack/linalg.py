"""3-vectors and 3x3 matrices over exact scalars, plus affine predicates.

Everything here is scalar-polymorphic: entries may be ``int``, ``Fraction``,
``QuadExt`` or even ``RatPoly`` (for coordinates that depend on a parameter).
Coordinates are lattice coordinates; the metric only enters through a Gram matrix.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Sequence

from .exact import div, sign


class Vec3(NamedTuple):
    u: object
    v: object
    w: object

    def __add__(self, other: Vec3) -> Vec3:  # type: ignore[override]
        return Vec3(self.u + other.u, self.v + other.v, self.w + other.w)

    def __sub__(self, other: Vec3) -> Vec3:
        return Vec3(self.u - other.u, self.v - other.v, self.w - other.w)

    def __neg__(self) -> Vec3:
        return Vec3(-self.u, -self.v, -self.w)

    def __mul__(self, k) -> Vec3:  # type: ignore[override]
        return Vec3(self.u * k, self.v * k, self.w * k)

    __rmul__ = __mul__

    def __truediv__(self, k) -> Vec3:
        return Vec3(div(self.u, k), div(self.v, k), div(self.w, k))

    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0 and self.w == 0


def vec(u, v, w) -> Vec3:
    """Build a Vec3, promoting ints and strings to Fractions."""
    return Vec3(*(Fraction(c) if isinstance(c, (int, str)) else c for c in (u, v, w)))


ZERO = Vec3(Fraction(0), Fraction(0), Fraction(0))


class Mat3(NamedTuple):
    r0: Vec3
    r1: Vec3
    r2: Vec3

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> Mat3:
        return cls(*(Vec3(*row) for row in rows))

    @classmethod
    def diag(cls, a, b, c) -> Mat3:
        z = Fraction(0)
        return cls(Vec3(a, z, z), Vec3(z, b, z), Vec3(z, z, c))

    @classmethod
    def identity(cls) -> Mat3:
        return cls.diag(Fraction(1), Fraction(1), Fraction(1))

    def col(self, j: int) -> Vec3:
        return Vec3(self.r0[j], self.r1[j], self.r2[j])

    def transpose(self) -> Mat3:
        return Mat3(self.col(0), self.col(1), self.col(2))

    def apply(self, x: Vec3) -> Vec3:
        return Vec3(dot(self.r0, x), dot(self.r1, x), dot(self.r2, x))

    def __matmul__(self, other: Mat3) -> Mat3:
        cols = [other.col(j) for j in range(3)]
        return Mat3(*(Vec3(*(dot(row, c) for c in cols)) for row in self))

    def __neg__(self) -> Mat3:
        return Mat3(-self.r0, -self.r1, -self.r2)

    def entries(self) -> list:
        return [e for row in self for e in row]


def dot(x: Vec3, y: Vec3):
    return x.u * y.u + x.v * y.v + x.w * y.w


def cross(x: Vec3, y: Vec3) -> Vec3:
    return Vec3(x.v * y.w - x.w * y.v, x.w * y.u - x.u * y.w, x.u * y.v - x.v * y.u)


def det3(m: Mat3):
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def det_rows(x: Vec3, y: Vec3, z: Vec3):
    return dot(x, cross(y, z))


def inverse3(m: Mat3) -> Mat3:
    d = det3(m)
    if d == 0:
        raise ZeroDivisionError("singular 3x3 matrix")
    r0, r1, r2 = m
    # columns of the adjugate are cross products of row pairs
    c0, c1, c2 = cross(r1, r2), cross(r2, r0), cross(r0, r1)
    return Mat3(
        Vec3(div(c0.u, d), div(c1.u, d), div(c2.u, d)),
        Vec3(div(c0.v, d), div(c1.v, d), div(c2.v, d)),
        Vec3(div(c0.w, d), div(c1.w, d), div(c2.w, d)),
    )


def gram_dot(gram: Mat3, x: Vec3, y: Vec3):
    """``x^T G y`` exactly."""
    return dot(x, gram.apply(y))


def check_gram(gram: Mat3) -> Mat3:
    """Validate symmetry and positive definiteness (leading minors, exact)."""
    for i in range(3):
        for j in range(i + 1, 3):
            if gram[i][j] != gram[j][i]:
                raise ValueError(f"Gram matrix not symmetric at ({i}, {j})")
    m1 = gram[0][0]
    m2 = gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0]
    m3 = det3(gram)
    if not (sign(m1) > 0 and sign(m2) > 0 and sign(m3) > 0):
        raise ValueError("Gram matrix is not positive definite")
    return gram


def orient(p: Vec3, q: Vec3, r: Vec3, s: Vec3):
    """Signed volume ``det[q-p, r-p, s-p]`` (six times the tetrahedron volume)."""
    return det_rows(q - p, r - p, s - p)


def orient_sign(p: Vec3, q: Vec3, r: Vec3, s: Vec3) -> int:
    return sign(orient(p, q, r, s))


def plane_through(p: Vec3, q: Vec3, r: Vec3) -> tuple[Vec3, object]:
    """Covector ``n`` and offset ``h`` with ``n.x - h == orient(p, q, r, x)``."""
    n = cross(q - p, r - p)
    return n, dot(n, p)


def tetra_volume_lattice(vertices: Sequence[Vec3]):
    """Unsigned volume of a tetrahedron in lattice units."""
    p, q, r, s = vertices
    vol = orient(p, q, r, s)
    return div(-vol if sign(vol) < 0 else vol, 6)


def mean(points: Sequence[Vec3]) -> Vec3:
    n = len(points)
    acc = points[0]
    for p in points[1:]:
        acc = acc + p
    return acc / n


def affine_rank(points: Sequence[Vec3]) -> int:
    """Dimension of the affine hull of a finite exact point set (-1 if empty)."""
    if not points:
        return -1
    base = points[0]
    diffs = [p - base for p in points[1:] if not (p - base).is_zero()]
    if not diffs:
        return 0
    first = diffs[0]
    normal = None
    for d in diffs[1:]:
        c = cross(first, d)
        if not c.is_zero():
            normal = c
            break
    if normal is None:
        return 1
    for d in diffs:
        if dot(normal, d) != 0:
            return 3
    return 2


def solve3(m: Mat3, rhs: Vec3) -> Vec3 | None:
    """Solve ``m x = rhs`` by Cramer's rule; None if singular."""
    r0, r1, r2 = m
    c12, c20, c01 = cross(r1, r2), cross(r2, r0), cross(r0, r1)
    d = dot(r0, c12)
    if d == 0:
        return None
    # x = (rhs_0 c12 + rhs_1 c20 + rhs_2 c01) / det
    return Vec3(
        div(rhs.u * c12.u + rhs.v * c20.u + rhs.w * c01.u, d),
        div(rhs.u * c12.v + rhs.v * c20.v + rhs.w * c01.v, d),
        div(rhs.u * c12.w + rhs.v * c20.w + rhs.w * c01.w, d),
    )
