"""Exact disjointness and contact predicates for pairs of tetrahedra.

Two independent routes decide whether closed tetrahedra overlap (share interior
points), touch (share boundary points only) or are disjoint:

* ``separate_by_vertex_plane`` searches the planes through three of the eight
  vertices for one that puts the bodies in opposite closed half-spaces;
* ``halfspace_intersection_oracle`` enumerates the vertices of the intersection
  polytope of the eight facet half-spaces and measures its dimension.

Every predicate is affine (no Gram matrix involved).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exact import RatPoly, div, sign
from .linalg import Mat3, Vec3, affine_rank, cross, dot, mean, plane_through, solve3
from .model import Tetrahedron

DISJOINT = "disjoint"
TOUCHING = "touching"
OVERLAPPING = "overlapping"

CONTACT_TYPES = {
    (2, 2): "face-face",
    (1, 1): "edge-edge",
    (0, 1): "vertex-edge",
    (1, 0): "edge-vertex",
    (0, 2): "vertex-face",
    (2, 0): "face-vertex",
    (0, 0): "vertex-vertex",
    (1, 2): "edge-face",
    (2, 1): "face-edge",
}


class NotTouching(ValueError):
    pass


class DegenerateWitness(ValueError):
    pass


@dataclass(frozen=True)
class SeparationCertificate:
    plane_vertices: tuple[int, int, int]
    orientation: int  # +1: A on the nonpositive side, B on the nonnegative side
    side_signs: tuple[int, ...]
    touching: bool
    on_plane: tuple[int, ...]


@dataclass(frozen=True)
class Overlap:
    """No vertex plane separates the pair; ``witness`` is an interior common point if known."""

    witness: Vec3 | None = None


# --- convex bodies given by vertices and facet half-spaces ------------------------------


@dataclass(frozen=True)
class Facet:
    vertex_ids: frozenset[int]
    normal: Vec3
    offset: object  # points x of the body satisfy normal . x <= offset


@dataclass(frozen=True)
class ConvexBody:
    vertices: tuple[Vec3, ...]
    facets: tuple[Facet, ...]


def tetra_body(t: Tetrahedron) -> ConvexBody:
    p = t.vertices
    facets = []
    for i in range(4):
        others = [j for j in range(4) if j != i]
        n, h = plane_through(*(p[j] for j in others))
        if sign(dot(n, p[i]) - h) > 0:
            n, h = -n, -h
        facets.append(Facet(frozenset(others), n, h))
    return ConvexBody(tuple(p), tuple(facets))


def union_body(s: Tetrahedron, t: Tetrahedron) -> ConvexBody:
    """Convex union of two tetrahedra glued along a common face (a bipyramid)."""
    verts: list[Vec3] = list(s.vertices)
    index = {p: i for i, p in enumerate(verts)}
    for p in t.vertices:
        if p not in index:
            index[p] = len(verts)
            verts.append(p)
    facets = []
    for body in (tetra_body(s), tetra_body(t)):
        for f in body.facets:
            ids = frozenset(index[body.vertices[i]] for i in f.vertex_ids)
            facets.append(Facet(ids, f.normal, f.offset))
    counts: dict[frozenset, int] = {}
    for f in facets:
        counts[f.vertex_ids] = counts.get(f.vertex_ids, 0) + 1
    if len(verts) != 5 or sorted(counts.values()) != [1] * 6 + [2]:
        raise ValueError("tetrahedra do not share exactly one face")
    kept = tuple(f for f in facets if counts[f.vertex_ids] == 1)
    return ConvexBody(tuple(verts), kept)


# --- route 1: vertex-plane certificates --------------------------------------------------


def _orient2(a, b, c) -> int:
    return sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


def _on_segment(p, a, b) -> bool:
    return (
        _orient2(a, b, p) == 0
        and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def _segments_meet(a, b, c, d) -> bool:
    o1, o2, o3, o4 = _orient2(a, b, c), _orient2(a, b, d), _orient2(c, d, a), _orient2(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return _on_segment(c, a, b) or _on_segment(d, a, b) or _on_segment(a, c, d) or _on_segment(b, c, d)


def _in_hull2(p, hull) -> bool:
    if len(hull) == 1:
        return p == hull[0]
    if len(hull) == 2:
        return _on_segment(p, hull[0], hull[1])
    s = {_orient2(hull[i], hull[(i + 1) % 3], p) for i in range(3)}
    return not ({1, -1} <= s)


def coplanar_hulls_intersect(pa: Sequence[Vec3], pb: Sequence[Vec3], normal: Vec3) -> bool:
    """Do the convex hulls of two small coplanar point sets (1-3 points each) meet?"""
    # drop a coordinate along which the plane projects bijectively
    axis = next(i for i in range(3) if normal[i] != 0)
    keep = [i for i in range(3) if i != axis]
    qa = [(p[keep[0]], p[keep[1]]) for p in pa]
    qb = [(p[keep[0]], p[keep[1]]) for p in pb]
    if any(_in_hull2(p, qb) for p in qa) or any(_in_hull2(p, qa) for p in qb):
        return True
    ea = list(combinations(qa, 2))
    eb = list(combinations(qb, 2))
    return any(_segments_meet(a, b, c, d) for a, b in ea for c, d in eb)


def _signs_separate(signs: Sequence[int]) -> int:
    """+1 if A (first four) <= 0 <= B, -1 for the mirror, 0 if neither."""
    a, b = signs[:4], signs[4:]
    if max(a) <= 0 and min(b) >= 0:
        return 1
    if min(a) >= 0 and max(b) <= 0:
        return -1
    return 0


def _integral_points(pts: Sequence[Vec3]) -> tuple[Vec3, ...]:
    """Rational points scaled by a common positive factor to integers; others unchanged.

    Orientation signs are invariant under positive uniform scaling.
    """
    coords = [c for p in pts for c in p]
    if not all(isinstance(c, (int, Fraction)) for c in coords):
        return tuple(pts)
    scale = math.lcm(*(Fraction(c).denominator for c in coords))
    return tuple(Vec3(*(int(c * scale) for c in p)) for p in pts)


def separate_by_vertex_plane(a: Tetrahedron, b: Tetrahedron) -> SeparationCertificate | Overlap:
    """First separating plane through three of the eight vertices, in lexicographic order."""
    pts = _integral_points(a.vertices + b.vertices)
    for tri in combinations(range(8), 3):
        n, h = plane_through(*(pts[i] for i in tri))
        if n.is_zero():
            continue  # collinear triple
        signs = []
        for idx, p in enumerate(pts):
            signs.append(sign(dot(n, p) - h))
            if idx == 3 and min(signs) < 0 < max(signs):
                break  # plane cuts A
        else:
            orientation = _signs_separate(signs)
            if orientation == 0:
                continue
            on_plane = tuple(i for i, s in enumerate(signs) if s == 0)
            on_a = [pts[i] for i in on_plane if i < 4]
            on_b = [pts[i] for i in on_plane if i >= 4]
            touching = bool(on_a and on_b) and coplanar_hulls_intersect(on_a, on_b, n)
            return SeparationCertificate(tri, orientation, tuple(signs), touching, on_plane)
    return Overlap()


def certificate_is_valid(a: Tetrahedron, b: Tetrahedron, cert: SeparationCertificate) -> bool:
    """Independent recheck of a certificate's side ledger."""
    pts = a.vertices + b.vertices
    n, h = plane_through(*(pts[i] for i in cert.plane_vertices))
    if n.is_zero():
        return False
    signs = tuple(sign(dot(n, p) - h) for p in pts)
    return signs == cert.side_signs and _signs_separate(signs) == cert.orientation != 0


# --- route 2: half-space intersection oracle ---------------------------------------------


@dataclass(frozen=True)
class OracleResult:
    verdict: str
    points: tuple[Vec3, ...]
    dimension: int
    witness: Vec3 | None = None


def _integral_plane(n: Vec3, h) -> tuple:
    """Scale a rational half-space to coprime integer coefficients (same half-space)."""
    coeffs = (*n, h)
    if not all(isinstance(c, (int, Fraction)) for c in coeffs):
        return coeffs
    coeffs = tuple(Fraction(c) for c in coeffs)
    scale = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * scale) for c in coeffs]
    g = math.gcd(*ints) or 1
    return tuple(c // g for c in ints)


def intersection_vertices(bodies: Sequence[ConvexBody]) -> list[Vec3]:
    """Vertices of the intersection of the bodies' facet half-spaces.

    Each facet triple is solved in homogeneous form (numerators over the
    determinant) so the containment tests need no division.
    """
    planes = [_integral_plane(f.normal, f.offset) for body in bodies for f in body.facets]
    found: dict[Vec3, None] = {}
    for i, j, k in combinations(range(len(planes)), 3):
        (a0, a1, a2, ah), (b0, b1, b2, bh), (c0, c1, c2, ch) = planes[i], planes[j], planes[k]
        # cofactor columns: rows b x c, c x a, a x b
        x0, x1, x2 = b1 * c2 - b2 * c1, b2 * c0 - b0 * c2, b0 * c1 - b1 * c0
        y0, y1, y2 = c1 * a2 - c2 * a1, c2 * a0 - c0 * a2, c0 * a1 - c1 * a0
        z0, z1, z2 = a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0
        d = a0 * x0 + a1 * x1 + a2 * x2
        if d == 0:
            continue
        p0 = ah * x0 + bh * y0 + ch * z0
        p1 = ah * x1 + bh * y1 + ch * z1
        p2 = ah * x2 + bh * y2 + ch * z2
        sd = sign(d)
        inside = True
        for m, (n0, n1, n2, nh) in enumerate(planes):
            if m in (i, j, k):
                continue
            if sign(n0 * p0 + n1 * p1 + n2 * p2 - nh * d) * sd > 0:
                inside = False
                break
        if inside:
            found.setdefault(Vec3(div(p0, d), div(p1, d), div(p2, d)), None)
    return list(found)


def halfspace_intersection_oracle(a: Tetrahedron, b: Tetrahedron) -> OracleResult:
    return body_intersection(tetra_body(a), tetra_body(b))


def body_intersection(a: ConvexBody, b: ConvexBody) -> OracleResult:
    pts = intersection_vertices((a, b))
    dim = affine_rank(pts)
    if dim < 0:
        return OracleResult(DISJOINT, (), dim)
    if dim == 3:
        return OracleResult(OVERLAPPING, tuple(pts), dim, mean(pts))
    return OracleResult(TOUCHING, tuple(pts), dim)


def verdict_of(result: SeparationCertificate | Overlap) -> str:
    if isinstance(result, Overlap):
        return OVERLAPPING
    return TOUCHING if result.touching else DISJOINT


def overlap_witness(a: Tetrahedron, b: Tetrahedron) -> Vec3 | None:
    return halfspace_intersection_oracle(a, b).witness


# --- contact classification ---------------------------------------------------------------


@dataclass(frozen=True)
class ContactRecord:
    pair: tuple
    contact_type: str
    features_a: tuple[int, ...]
    features_b: tuple[int, ...]
    points: tuple[Vec3, ...]
    dimension: int

    @property
    def point(self) -> Vec3 | None:
        return self.points[0] if self.dimension == 0 else None

    @property
    def center(self) -> Vec3:
        # the vertex mean; equals the symmetry center for inversion-related pairs
        return mean(self.points)


def minimal_face(body: ConvexBody, points: Sequence[Vec3]) -> tuple[int, ...]:
    """Vertex indices of the smallest face of ``body`` containing all ``points``."""
    ids = set(range(len(body.vertices)))
    for f in body.facets:
        if all(dot(f.normal, p) == f.offset for p in points):
            ids &= f.vertex_ids
    return tuple(sorted(ids))


def _face_dim(ids: tuple[int, ...], nverts: int) -> int:
    if len(ids) == nverts:
        return 3
    return min(len(ids) - 1, 2)


def classify_bodies(a: ConvexBody, b: ConvexBody, pair=()) -> ContactRecord:
    res = body_intersection(a, b)
    if res.verdict != TOUCHING:
        raise NotTouching(f"pair {pair} is {res.verdict}")
    fa, fb = minimal_face(a, res.points), minimal_face(b, res.points)
    da, db = _face_dim(fa, len(a.vertices)), _face_dim(fb, len(b.vertices))
    if res.dimension == 2 and (da, db) != (2, 2):
        raise AssertionError("planar contact not bounded by facets")
    return ContactRecord(pair, CONTACT_TYPES[(da, db)], fa, fb, res.points, res.dimension)


def classify_contact(a: Tetrahedron, b: Tetrahedron) -> ContactRecord:
    return classify_bodies(tetra_body(a), tetra_body(b), (a.identity, b.identity))


def polygon_area2_lattice(points: Sequence[Vec3]) -> Vec3:
    """Twice the vector area (lattice-coordinate cross product) of a convex planar polygon."""
    if len(points) < 3:
        return Vec3(0, 0, 0)
    c = mean(points)
    n = None
    for p, q in combinations(points, 2):
        v = cross(p - c, q - c)
        if not v.is_zero():
            n = v
            break
    if n is None:
        return Vec3(0, 0, 0)
    ordered = _angular_sort(points, c, n, points[0] - c)
    total = Vec3(0, 0, 0)
    for i, p in enumerate(ordered):
        total = total + cross(p - c, ordered[(i + 1) % len(ordered)] - c)
    return total


def _angular_sort(points, c, n, ref):
    """Sort coplanar points counterclockwise about ``c`` (seen from ``n``), exactly."""

    def half(v):
        s = sign(dot(n, cross(ref, v)))
        if s > 0 or (s == 0 and sign(dot(ref, v)) > 0):
            return 0
        return 1

    def cmp(p, q):
        vp, vq = p - c, q - c
        hp, hq = half(vp), half(vq)
        if hp != hq:
            return hp - hq
        return -sign(dot(n, cross(vp, vq)))

    return sorted(points, key=functools.cmp_to_key(cmp))


# --- parameter-dependent pairs ----------------------------------------------------------


def separation_poly_in_x(
    a_vertices: Sequence[Vec3], b_vertices: Sequence[Vec3], witness: tuple[int, int, int]
) -> list[RatPoly]:
    """Orient polynomials of the five off-plane vertices against the witness plane.

    Vertex coordinates are RatPoly (affine in x). Returned in vertex-index order.
    """
    pts = list(a_vertices) + list(b_vertices)
    n, h = plane_through(*(pts[i] for i in witness))
    if all(_as_poly(c).is_zero() for c in n):
        raise DegenerateWitness(f"witness {witness} is collinear for every x")
    return [_as_poly(dot(n, p) - h) for i, p in enumerate(pts) if i not in witness]


def witness_normal(a_vertices, b_vertices, witness) -> Vec3:
    pts = list(a_vertices) + list(b_vertices)
    return cross(pts[witness[1]] - pts[witness[0]], pts[witness[2]] - pts[witness[0]])


def _as_poly(v) -> RatPoly:
    return v if isinstance(v, RatPoly) else RatPoly([v])
